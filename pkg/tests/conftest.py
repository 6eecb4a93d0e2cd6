import functools

import pytest

from centresym import fixtures as F
from centresym.curve import build_curve
from centresym.parallel import decompose
from centresym.pipeline import AnalysisConfig, run_analysis

BUILDERS = {
    "circle": F.circle,
    "ellipse": F.ellipse,
    "two_rosette": F.two_rosette,
    "oval": F.trefoil_oval,
    "two_inflexions": F.two_inflexions,
    "four_inflexions": F.four_inflexions,
}


@functools.lru_cache(maxsize=None)
def analysed(name):
    """(report, geometry) for a named fixture, computed once per session."""
    return run_analysis(BUILDERS[name](), AnalysisConfig())


@functools.lru_cache(maxsize=None)
def structure_of(name):
    return decompose(build_curve(BUILDERS[name]()))


@pytest.fixture(scope="session")
def rosette():
    return analysed("two_rosette")


@pytest.fixture(scope="session")
def oval():
    return analysed("oval")


@pytest.fixture(scope="session")
def nc2():
    return analysed("two_inflexions")


@pytest.fixture(scope="session")
def nc4():
    return analysed("four_inflexions")


# criterion number -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
