from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from transccz import build_css, hermitian_code, make_field, rs_code, run_pipeline

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def gf4():
    return make_field(2)


@pytest.fixture(scope="session")
def gf16():
    return make_field(4)


@pytest.fixture(scope="session")
def herm22():
    return hermitian_code(2, 2)


@pytest.fixture(scope="session")
def herm_css(herm22):
    return build_css(herm22, 1)


@pytest.fixture(scope="session")
def rs_css():
    return build_css(rs_code(make_field(4), 5), 2)


@pytest.fixture(scope="session")
def rep_css():
    return build_css(rs_code(make_field(2), 1), 1)


@pytest.fixture(scope="session")
def smoke_pipeline():
    return run_pipeline(rs_code(make_field(2), 1), 1)


@pytest.fixture(scope="session")
def herm_pipeline(herm22):
    return run_pipeline(herm22, 1)


@pytest.fixture(scope="session")
def rs_pipeline():
    return run_pipeline(rs_code(make_field(4), 5), 2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k)):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  ({detail})")
