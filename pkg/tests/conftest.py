import pytest

from e3geo.parser import parse_theorem
from e3geo.rules import builtin_rules
from e3geo.smt import SolverConfig, SolverNotFound, discover_solver

FIXTURES = __import__("pathlib").Path(__file__).parent / "fixtures"


def _solver_available() -> bool:
    try:
        discover_solver()
        return True
    except SolverNotFound:
        return False


requires_solver = pytest.mark.skipif(
    not _solver_available(), reason="no SMT solver available"
)


@pytest.fixture(scope="session")
def rules():
    return builtin_rules()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture()
def cfg():
    """Default per-query timeout, generous enough for the acceptance runs."""
    return SolverConfig(timeout_secs=60)


@pytest.fixture()
def quick_cfg():
    """Short timeout for tests whose negative queries would otherwise burn
    the full budget."""
    return SolverConfig(timeout_secs=8)


@pytest.fixture(scope="session")
def prop1_statement():
    return parse_theorem(
        "theorem proposition_1 : ∀ (a b : Point) (AB : Line), "
        "distinctPointsOnLine a b AB → "
        "∃ c : Point, |(c--a)| = |(a--b)| ∧ |(c--b)| = |(a--b)|"
    )
