"""Command-line front end: ``transccz <group> <action> [options]``.

Exit codes: 0 all checks pass, 1 a verification found a counterexample,
2 usage or input error, 3 a work budget was exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from .codes import (
    DEFAULT_DISTANCE_BUDGET,
    Budget,
    LinearCode,
    contains_all_ones,
    has_mult_property,
    hermitian_code,
    min_distance,
    mult_property_witness,
    rs_code,
)
from .css import QuditCssCode, build_css
from .embed import find_self_dual_basis
from .errors import BudgetExceededError, HypothesisError
from .field import FieldError, make_field
from .linalg import Mat, format_mat, parse_mat
from .msd import estimate, simulate
from .qubitize import CczSchedule, QubitCssCode, q3_distance, run_pipeline, verify_pipeline
from .transversal import PhaseGateSpec, ccz_spec, check_triple_conditions, verify_transversal

OK, COUNTEREXAMPLE, USAGE, BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 already; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


class Report:
    """JSON run report; ``timings`` is dropped with --no-timings."""

    def __init__(self, args: argparse.Namespace, argv: list[str]):
        self.args = args
        self.data: dict = {"command": list(argv), "inputs": {}, "params": {}, "checks": {}}
        if getattr(args, "seed", None) is not None:
            self.data["seed"] = args.seed
        self._t0 = time.perf_counter()

    def input(self, path: Path) -> bytes:
        raw = Path(path).read_bytes()
        self.data["inputs"][str(path)] = hashlib.sha256(raw).hexdigest()
        return raw

    def check(self, name: str, ok: bool, **extra) -> None:
        self.data["checks"][name] = {"ok": bool(ok), **extra}

    @property
    def all_ok(self) -> bool:
        return all(c["ok"] for c in self.data["checks"].values())

    def finish(self) -> dict:
        if not self.args.no_timings:
            self.data["timings"] = {"seconds": round(time.perf_counter() - self._t0, 6)}
        return self.data

    def text(self) -> str:
        return json.dumps(self.finish(), indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Budget):
        return x.value
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not serializable: {type(x).__name__}")


def _num(x):
    return x.value if isinstance(x, Budget) else x


# file helpers


def write_code(path: Path, C: LinearCode) -> None:
    Path(path).write_text(format_mat(C.gen, {"label": C.label or "code"}))


def read_code(report: Report, path: Path) -> LinearCode:
    M, comments = parse_mat(report.input(path).decode())
    return LinearCode(M, comments.get("label", Path(path).stem))


def _write_mat(out: Path, name: str, M: Mat, label: str) -> None:
    (out / name).write_text(format_mat(M, {"label": label}))


def read_css(report: Report, d: Path) -> QuditCssCode:
    H1, c1 = parse_mat(report.input(d / "H1.txt").decode())
    H0, _ = parse_mat(report.input(d / "H0.txt").decode())
    return QuditCssCode.from_blocks(H1, H0, source=c1.get("source", ""))


_QUBIT_FILES = ("x_stab", "z_stab", "logical_x", "logical_z")


def write_qubit_code(out: Path, q: QubitCssCode) -> None:
    for name in _QUBIT_FILES:
        _write_mat(out, f"{name}.txt", getattr(q, name), f"{q.lineage} {name}")


def read_qubit_code(report: Report, d: Path) -> QubitCssCode:
    mats = {name: parse_mat(report.input(d / f"{name}.txt").decode())[0] for name in _QUBIT_FILES}
    N = mats["logical_x"].cols
    return QubitCssCode(N=N, K=mats["logical_x"].rows, lineage="loaded", **mats)


# subcommands


def cmd_field_info(args, report: Report) -> int:
    F = make_field(args.m)
    sdb = find_self_dual_basis(args.m)
    report.data["params"] = {
        "m": F.m,
        "q": F.q,
        "modulus": hex(F.modulus),
        "generator": hex(F.generator),
        "trace_mask": hex(F.trace_mask),
        "self_dual_basis": [hex(e) for e in sdb.elements],
    }
    gram = sdb.trace_gram()
    report.check("self_dual", bool(np.array_equal(gram, np.eye(F.m))))
    return OK


def _build_family(args) -> LinearCode:
    need = {"rs": ("m", "k"), "hermitian": ("q0", "s")}[args.family]
    missing = [f"--{n}" for n in need if getattr(args, n) is None]
    if missing:
        raise ValueError(f"{args.family} needs {' and '.join(missing)}")
    if args.family == "rs":
        return rs_code(make_field(args.m), args.k)
    if args.family == "hermitian":
        return hermitian_code(args.q0, args.s)
    raise ValueError(f"unknown family {args.family!r}")


def _code_record(C: LinearCode, budget: int, with_distance: bool) -> dict:
    rec = {"label": C.label, "n": C.n, "k": C.k, "field": str(C.field)}
    if with_distance and C.k:
        rec["d"] = _num(min_distance(C, budget))
    return rec


def cmd_code_build(args, report: Report) -> int:
    C = _build_family(args)
    if args.out:
        write_code(Path(args.out), C)
    report.data["params"] = _code_record(C, args.budget, args.distance)
    report.data["params"]["mult_property"] = has_mult_property(C) if C.k else True
    report.data["params"]["all_ones"] = contains_all_ones(C)
    return OK


def cmd_code_check(args, report: Report) -> int:
    C = read_code(report, Path(args.code))
    report.data["params"] = _code_record(C, args.budget, False)
    witness = mult_property_witness(C) if C.k else None
    report.data["params"]["mult_property"] = witness is None
    report.data["params"]["all_ones"] = contains_all_ones(C)
    report.check("mult_property", witness is None, witness=list(witness) if witness else None)
    report.check("all_ones", contains_all_ones(C))
    return OK if report.all_ok else COUNTEREXAMPLE


def cmd_code_distance(args, report: Report) -> int:
    C = read_code(report, Path(args.code))
    d = min_distance(C, args.budget)
    report.data["params"] = {"n": C.n, "k": C.k, "d": _num(d)}
    return BUDGET if isinstance(d, Budget) else OK


def _k_values(text: str, k_max: int) -> list[int]:
    if text == "all":
        return list(range(1, k_max + 1))
    if ":" in text:
        lo, hi = (int(t) for t in text.split(":"))
        return list(range(lo, hi + 1))
    return [int(t) for t in text.split(",")]


def cmd_css_build(args, report: Report) -> int:
    C = read_code(report, Path(args.code))
    Ks = _k_values(args.K, C.k)
    out = Path(args.out) if args.out else None
    records = []
    for K in Ks:
        Q = build_css(C, K, args.budget)
        tri = check_triple_conditions(Q.H1, Q.H0)
        rec = {"N": Q.N, "K": Q.K, "dx_bound": _num(Q.dx_bound), "dz": _num(Q.dz), "checks": tri.to_json()}
        records.append(rec)
        for name in ("eq3", "eq4", "eq5"):
            prev = report.data["checks"].get(name, {"ok": True})
            report.check(name, prev["ok"] and rec["checks"][name]["ok"])
        if out is not None:
            d = out / f"K{K}" if len(Ks) > 1 else out
            d.mkdir(parents=True, exist_ok=True)
            meta = {"source": C.label, "K": str(K)}
            (d / "H1.txt").write_text(format_mat(Q.H1, {"label": "H1", **meta}))
            (d / "H0.txt").write_text(format_mat(Q.H0, {"label": "H0", **meta}))
            (d / "z_stab.txt").write_text(format_mat(Q.z_stab, {"label": "z_stab", **meta}))
            (d / "report.json").write_text(json.dumps(rec, indent=2, sort_keys=True) + "\n")
    report.data["params"] = records[0] if len(records) == 1 else {"sweep": records}
    if not report.all_ok:
        return COUNTEREXAMPLE
    if any(isinstance(r["dz"], str) or isinstance(r["dx_bound"], str) for r in records):
        return BUDGET
    return OK


def _parse_mode(text: str) -> tuple[str, int, int | None]:
    if text == "exhaustive":
        return "exhaustive", 0, None
    parts = text.split(":")
    if parts[0] == "sampled" and len(parts) == 3:
        return "sampled", int(parts[1]), int(parts[2])
    raise ValueError(f"mode must be exhaustive or sampled:<n>:<seed>, got {text!r}")


def cmd_transversal_verify(args, report: Report) -> int:
    Q = read_css(report, Path(args.css))
    if args.gate == "ccz":
        spec = ccz_spec(Q.field)
    else:
        spec = PhaseGateSpec.from_json(Q.field, report.input(Path(args.gate)).decode())
    mode, trials, seed = _parse_mode(args.mode)
    verdict = verify_transversal(Q, spec, mode, trials=trials, seed=seed)
    report.data["params"] = {"N": Q.N, "K": Q.K, "gate": spec.to_json(), "mode": mode}
    report.check("transversal", verdict.ok, checks=verdict.checks, witness=verdict.witness)
    tri = check_triple_conditions(Q.H1, Q.H0)
    report.check("eq3", not tri.eq3, violations=[list(t) for t in tri.eq3])
    return OK if report.all_ok else COUNTEREXAMPLE


def cmd_qubitize_run(args, report: Report) -> int:
    C = read_code(report, Path(args.code))
    result = run_pipeline(C, args.K, args.rmfe, seed=args.seed or 0, distance_budget=args.budget)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_qubit_code(out, result.q3)
    (out / "schedule.json").write_text(json.dumps(result.schedule.to_json(), sort_keys=True) + "\n")
    params = dict(result.params)
    report.data["params"] = params
    report.data["embeddings"] = {
        "self_dual_basis": [hex(e) for e in result.sdb.elements],
        "rmfe": result.rmfe.to_json(),
        "mfe": {"m": result.mfe.m, "r": result.mfe.r},
    }
    for name, q in (("q1", result.q1), ("q2", result.q2), ("q3", result.q3)):
        checks = q.check()
        report.check(f"duality_{name}", checks["css_orthogonal"] and checks["logical_pairing"], **checks)
    tri = check_triple_conditions(result.q0.H1, result.q0.H0)
    for name, bad in (("eq3", tri.eq3), ("eq4", tri.eq4), ("eq5", tri.eq5)):
        report.check(name, not bad)
    mode = args.verify
    if mode == "auto":
        gens = result.q3.K + result.q3.x_stab.rows
        mode = "exhaustive" if 2 ** (3 * gens) <= 2**24 else "sampled"
    if mode == "sampled" or mode.startswith("sampled:"):
        trials = int(mode.split(":")[1]) if ":" in mode else 100_000
        if args.seed is None:
            raise ValueError("sampled verification needs --seed")
        verdict = verify_pipeline(result, "sampled", trials=trials, seed=args.seed)
    elif mode == "exhaustive":
        verdict = verify_pipeline(result, "exhaustive")
    else:
        verdict = None
    if verdict is not None:
        report.check("pipeline", verdict.ok, checks=verdict.checks, mode=verdict.mode, witness=verdict.witness)
    if args.distances:
        report.data["distances"] = q3_distance(result, args.budget)
    (out / "report.json").write_text(Report.text(report))
    return OK if report.all_ok else COUNTEREXAMPLE


def cmd_schedule_export(args, report: Report) -> int:
    data = json.loads(report.input(Path(args.pipeline) / "schedule.json"))
    sched = CczSchedule(
        np.array(data["triples"], dtype=np.int64),
        [(p["register"], p["slot"]) for p in data["provenance"]],
        data["N3"],
        data["K3"],
        data["r"],
        np.array([int(c) for c in data["P"]], dtype=np.int64),
    )
    if args.format == "text":
        lines = [f"CCZ {a} {b} {c}" for a, b, c in sched.triples.tolist()]
        body = "\n".join(lines) + ("\n" if lines else "")
    else:
        body = json.dumps(sched.to_json(), sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(body)
    elif not args.json:
        sys.stdout.write(body)
    report.data["params"] = {"triples": len(sched), "N3": sched.N3, "K3": sched.K3}
    return OK


def cmd_msd_estimate(args, report: Report) -> int:
    plan = estimate(args.rate, args.delta, args.c, args.eps)
    report.data["params"] = plan.to_json()
    return OK


def cmd_msd_simulate(args, report: Report) -> int:
    q = read_qubit_code(report, Path(args.pipeline))
    res = simulate(q, args.p, args.trials, args.seed, channel=args.channel)
    report.data["params"] = res.to_json()
    return OK


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--no-timings", action="store_true", help="omit timings from reports")

    p = _Parser(prog="transccz", description="Transversal-CCZ code construction and checks.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def action(group, name, func, help_text):
        sp = group.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    fld = groups.add_parser("field").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(fld, "info", cmd_field_info, "field tables and a self-dual basis")
    sp.add_argument("--m", type=int, required=True)

    code = groups.add_parser("code").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(code, "build", cmd_code_build, "build an RS or Hermitian code")
    sp.add_argument("family", choices=["rs", "hermitian"])
    sp.add_argument("--m", type=int, help="RS field degree")
    sp.add_argument("--k", type=int, help="RS dimension")
    sp.add_argument("--q0", type=int, help="Hermitian base field size (2 or 4)")
    sp.add_argument("--s", type=int, help="Hermitian pole order bound")
    sp.add_argument("--out")
    sp.add_argument("--distance", action="store_true", help="also compute d")
    sp.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    sp = action(code, "check", cmd_code_check, "multiplication property and all-ones word")
    sp.add_argument("--code", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    sp = action(code, "distance", cmd_code_distance, "exact minimum distance")
    sp.add_argument("--code", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)

    css = groups.add_parser("css").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(css, "build", cmd_css_build, "qudit CSS code from a code file")
    sp.add_argument("--code", required=True)
    sp.add_argument("--K", required=True, help="int, comma list, lo:hi range or 'all'")
    sp.add_argument("--out")
    sp.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)

    tv = groups.add_parser("transversal").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(tv, "verify", cmd_transversal_verify, "phase-level transversality check")
    sp.add_argument("--css", required=True, help="directory written by 'css build'")
    sp.add_argument("--gate", default="ccz", help="'ccz' or a gate JSON file")
    sp.add_argument("--mode", default="exhaustive", help="exhaustive | sampled:<n>:<seed>")

    qb = groups.add_parser("qubitize").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(qb, "run", cmd_qubitize_run, "three-step qubit pipeline")
    sp.add_argument("--code", required=True)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--rmfe", default="trivial", help="trivial | search:<s>")
    sp.add_argument("--out", required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--verify", default="auto", help="auto | exhaustive | sampled[:<n>] | none")
    sp.add_argument("--distances", action="store_true", help="exact distances of the final code")
    sp.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)

    sc = groups.add_parser("schedule").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(sc, "export", cmd_schedule_export, "CCZ schedule as text or JSON")
    sp.add_argument("--pipeline", required=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--out")

    msd = groups.add_parser("msd").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = action(msd, "estimate", cmd_msd_estimate, "resource estimate")
    sp.add_argument("--rate", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp = action(msd, "simulate", cmd_msd_simulate, "Monte Carlo logical error rate")
    sp.add_argument("--pipeline", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--channel", choices=["xz", "x", "z"], default="xz")
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = Report(args, argv)
    try:
        code = args.func(args, report)
    except BudgetExceededError as exc:
        report.data["error"] = str(exc)
        code = BUDGET
    except (HypothesisError, FieldError, ValueError, FileNotFoundError, KeyError) as exc:
        report.data["error"] = f"{type(exc).__name__}: {exc}"
        code = USAGE
    report.data["exit_code"] = code
    text = report.text()
    if args.json:
        sys.stdout.write(text)
    else:
        checks = report.data["checks"]
        for name, c in sorted(checks.items()):
            print(f"{name}: {'pass' if c['ok'] else 'FAIL'}")
        if "error" in report.data:
            print(f"error: {report.data['error']}", file=sys.stderr)
        streamed = getattr(args, "func", None) is cmd_schedule_export and not args.out
        if not checks and "error" not in report.data and not streamed:
            print(json.dumps(report.data["params"], sort_keys=True, default=_json_default))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
