"""Magic-state distillation with the transversal-CCZ codes.

``estimate`` turns a code family (rate, relative distance, suppression
constant) and a target error into a resource plan.  ``simulate`` runs a
Monte Carlo of three code blocks under i.i.d. X and Z flips with a
minimum-weight coset-leader decoder; ``exact_low_weight`` brackets the same
failure probability by enumerating all low-weight error patterns.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.stats import binomtest

from .css import QuditCssCode
from .errors import BudgetExceededError
from .linalg import Mat, nullspace, reduce_against, row_basis, rref


@dataclass(frozen=True)
class MsdPlan:
    """Resources for one distillation round.

    ``n_min`` is the unrounded ceil(ln(1/eps) / (c delta)); ``N`` is the
    smallest multiple of rate's denominator at least ``n_min``, so K = rate*N
    exactly.  ``input_noise_bound`` is the relative distance, which the input
    noise rate must sit well below.
    """

    N: int
    K: int
    D: int
    n_min: int
    target_eps: float
    rate: Fraction
    delta: float
    c: float
    blocks: int
    noisy_states: int
    expected_yield: int
    input_noise_bound: float

    @property
    def overhead(self) -> Fraction:
        """Noisy states consumed per output state, 3N/K."""
        return Fraction(self.blocks * self.N, self.K)

    def to_json(self) -> dict:
        out = asdict(self)
        out["rate"] = str(self.rate)
        out["overhead"] = str(self.overhead)
        return out


def estimate(rate: float | Fraction, delta: float, c: float, eps: float) -> MsdPlan:
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not (0 < float(rate) <= 1 and 0 < delta <= 1):
        raise ValueError("rate and delta must lie in (0, 1]")
    if c <= 0:
        raise ValueError("the suppression constant must be positive")
    rho = Fraction(rate).limit_denominator(10**6)
    n_min = math.ceil(math.log(1 / eps) / (c * delta))
    N = -(-n_min // rho.denominator) * rho.denominator
    K = int(rho * N)
    D = max(1, math.floor(delta * N))
    return MsdPlan(
        N=N,
        K=K,
        D=D,
        n_min=n_min,
        target_eps=eps,
        rate=rho,
        delta=delta,
        c=c,
        blocks=3,
        noisy_states=N,
        expected_yield=K,
        input_noise_bound=delta,
    )


# decoding


def _as_qubit_code(code):
    from .embed import find_self_dual_basis
    from .qubitize import PipelineResult, QubitCssCode, step1

    if isinstance(code, PipelineResult):
        return code.q3
    if isinstance(code, QubitCssCode):
        return code
    if isinstance(code, QuditCssCode):
        return step1(code, find_self_dual_basis(code.field.m))
    raise TypeError(f"cannot simulate {type(code).__name__}")


class CosetLeaderDecoder:
    """Minimum-weight coset-leader decoding for one error type.

    ``checks`` detect the errors and ``logicals`` are the opposite-type
    logical operators whose parities define a logical fault.  With few
    syndromes a leader table is built by breadth-first search; otherwise each
    error's coset e + ker(checks) is swept from its canonical representative.
    Either way the correction depends only on the syndrome.
    """

    def __init__(self, checks: Mat, logicals: Mat, table_cap: int = 2**22, kernel_cap: int = 2**16):
        self.n = logicals.cols
        self.checks = row_basis(checks) if checks.rows else checks
        self.logicals = logicals
        r = self.checks.rows
        kernel_dim = self.n - r
        if 2**r <= table_cap and (2**r <= 2**kernel_dim or 2**kernel_dim > kernel_cap):
            self.route = "table"
            self._build_table()
        elif 2**kernel_dim <= kernel_cap:
            self.route = "kernel"
            K = nullspace(self.checks) if r else Mat.identity(logicals.field, self.n)
            self._R, _, self._pivots = rref(K)
            coeffs = (np.arange(2**K.rows)[:, None] >> np.arange(K.rows)) & 1
            self._span = (coeffs @ K.entries) & 1
        else:
            raise BudgetExceededError(
                f"neither 2^{r} syndromes nor a 2^{kernel_dim} kernel fit the decoder budget"
            )

    def _syndromes(self, errors: np.ndarray) -> np.ndarray:
        if not self.checks.rows:
            return np.zeros(len(errors), dtype=np.int64)
        bits = (errors @ self.checks.entries.T) & 1
        return (bits << np.arange(self.checks.rows)).sum(axis=1)

    def _logical_bits(self, errors: np.ndarray) -> np.ndarray:
        bits = (errors @ self.logicals.entries.T) & 1
        return (bits << np.arange(self.logicals.rows)).sum(axis=1)

    def _build_table(self) -> None:
        r = self.checks.rows
        col_syn = self._syndromes(np.eye(self.n, dtype=np.int64))
        col_log = self._logical_bits(np.eye(self.n, dtype=np.int64))
        leader_log = np.full(2**r, -1, dtype=np.int64)
        leader_log[0] = 0
        frontier = np.zeros(1, dtype=np.int64)
        while frontier.size:
            syn = (frontier[:, None] ^ col_syn[None, :]).ravel()
            log = (leader_log[frontier][:, None] ^ col_log[None, :]).ravel()
            fresh = leader_log[syn] < 0
            syn, log = syn[fresh], log[fresh]
            # first occurrence in (frontier, column) order wins
            syn, first = np.unique(syn, return_index=True)
            leader_log[syn] = log[first]
            frontier = syn
        self._leader_log = leader_log

    def correct_logical(self, errors: np.ndarray) -> np.ndarray:
        """Logical parities of the chosen correction for each error row."""
        errors = np.atleast_2d(np.asarray(errors, dtype=np.int64))
        if self.route == "table":
            return self._leader_log[self._syndromes(errors)]
        canon = reduce_against(self._R, self._pivots, errors) & 1
        out = np.empty(len(errors), dtype=np.int64)
        span_log = self._logical_bits(self._span)
        chunk = max(1, 2**22 // (len(self._span) * self.n))
        for start in range(0, len(canon), chunk):
            block = canon[start : start + chunk]
            weights = (block[:, None, :] ^ self._span[None, :, :]).sum(axis=2)
            best = np.argmin(weights, axis=1)  # first minimum, as before
            out[start : start + chunk] = self._logical_bits(block) ^ span_log[best]
        return out

    def fails(self, errors: np.ndarray) -> np.ndarray:
        """True where error + correction acts as a nontrivial logical."""
        errors = np.atleast_2d(np.asarray(errors, dtype=np.int64))
        return self.correct_logical(errors) != self._logical_bits(errors)


def decoders(code) -> tuple[CosetLeaderDecoder, CosetLeaderDecoder]:
    """(X-error decoder, Z-error decoder) for a qubit CSS code."""
    return _channel_decoders(_as_qubit_code(code), "xz")


@dataclass(frozen=True)
class SimResult:
    logical_error_rate: float
    ci: tuple[float, float]
    failures: int
    trials: int
    p: float
    seed: int
    channel: str = "xz"

    def to_json(self) -> dict:
        out = asdict(self)
        out["ci"] = list(self.ci)
        return out


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(failures, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


CHANNELS = ("xz", "x", "z")


def _channel_decoders(q, channel: str):
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}")
    dx = CosetLeaderDecoder(q.z_stab, q.logical_z) if "x" in channel else None
    dz = CosetLeaderDecoder(q.x_stab, q.logical_x) if "z" in channel else None
    return dx, dz


def simulate(
    code,
    p: float,
    trials: int,
    seed: int,
    decoder: str = "brute",
    *,
    channel: str = "xz",
    batch: int = 4096,
) -> SimResult:
    """Logical failure rate of three blocks under i.i.d. X and Z flips at rate p.

    A trial fails when any block is left with an X- or Z-type logical
    error after decoding.  ``channel`` restricts the noise to X or Z flips.
    Batch b draws from ``default_rng([seed, b])``.
    """
    if decoder != "brute":
        raise ValueError(f"unknown decoder {decoder!r}")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    q = _as_qubit_code(code)
    dx, dz = _channel_decoders(q, channel)
    failures = 0
    for b, start in enumerate(range(0, trials, batch)):
        t = min(batch, trials - start)
        rng = np.random.default_rng([seed, b])
        flips = (rng.random((2, 3, t, q.N)) < p).astype(np.int64)
        bad = np.zeros(t, dtype=bool)
        for blk in range(3):
            if dx is not None:
                bad |= dx.fails(flips[0, blk])
            if dz is not None:
                bad |= dz.fails(flips[1, blk])
        failures += int(bad.sum())
    rate = failures / trials if trials else 0.0
    return SimResult(rate, wilson_interval(failures, trials), failures, trials, p, seed, channel)


def _type_failure_bounds(dec: CosetLeaderDecoder, n: int, p: float, max_weight: int) -> tuple[float, float]:
    low = 0.0
    covered = 0.0
    for w in range(max_weight + 1):
        weight_prob = p**w * (1 - p) ** (n - w)
        covered += math.comb(n, w) * weight_prob
        if w == 0:
            continue
        supports = np.array(list(combinations(range(n), w)), dtype=np.int64)
        errors = np.zeros((len(supports), n), dtype=np.int64)
        np.put_along_axis(errors, supports, 1, axis=1)
        low += int(dec.fails(errors).sum()) * weight_prob
    return low, low + max(0.0, 1.0 - covered)


def exact_low_weight(code, p: float, max_weight: int = 3, *, channel: str = "xz") -> tuple[float, float]:
    """Bracket on the three-block failure probability from all patterns of weight <= max_weight.

    Each (block, error type) fails independently; its failure probability is
    summed exactly over low-weight patterns, and the untouched heavier mass
    is added to the upper end.
    """
    q = _as_qubit_code(code)
    dx, dz = _channel_decoders(q, channel)
    fx = _type_failure_bounds(dx, q.N, p, max_weight) if dx else (0.0, 0.0)
    fz = _type_failure_bounds(dz, q.N, p, max_weight) if dz else (0.0, 0.0)
    lower = 1 - ((1 - fx[0]) * (1 - fz[0])) ** 3
    upper = 1 - ((1 - min(1.0, fx[1])) * (1 - min(1.0, fz[1]))) ** 3
    return lower, upper


def empirical_exponent(code, ps, trials: int, seed: int, *, channel: str = "xz") -> dict:
    """Least-squares slope of log P_L against log p over the rates ``ps``.

    Rates with no observed failures are dropped from the fit.  A slope near
    t means failures are dominated by weight-t error patterns.
    """
    runs = [simulate(code, float(p), trials, seed + i, channel=channel) for i, p in enumerate(ps)]
    pts = [(math.log(r.p), math.log(r.logical_error_rate)) for r in runs if r.failures and r.p > 0]
    slope = float(np.polyfit(*zip(*pts), 1)[0]) if len(pts) >= 2 else None
    return {"slope": slope, "runs": [r.to_json() for r in runs]}
