import pytest

from likelihood_station.algebra.ring import PolynomialRing, parse_poly
from likelihood_station.logging_config import setup_logging
from likelihood_station.services.likelihood_service import ImplicitModel


def pytest_addoption(parser):
    parser.addoption("--run-core", action="store_true", default=False, help="run CORE tier tests")
    parser.addoption(
        "--run-extended", action="store_true", default=False, help="run EXTENDED tier tests"
    )


def pytest_collection_modifyitems(config, items):
    """Skip core/extended tests unless requested"""
    run_core = config.getoption("--run-core") or config.getoption("--run-extended")
    run_extended = config.getoption("--run-extended")
    skip_core = pytest.mark.skip(reason="CORE tier: pass --run-core")
    skip_extended = pytest.mark.skip(reason="EXTENDED tier: pass --run-extended")
    for item in items:
        if "extended" in item.keywords and not run_extended:
            item.add_marker(skip_extended)
        elif "core" in item.keywords and not run_core:
            item.add_marker(skip_core)


@pytest.fixture(autouse=True)
def quiet_logging():
    """Structured logs to stderr at WARNING, restored after each test"""
    setup_logging("WARNING", "console")
    yield
    setup_logging("WARNING", "console")


@pytest.fixture(scope="session")
def plane():
    """QQ[p0, p1, p2]"""
    return PolynomialRing(("p0", "p1", "p2"))


def implicit(ring, *texts, name="test", codim=None):
    return ImplicitModel.from_generators(
        ring, [parse_poly(t, ring) for t in texts], name=name, codim=codim
    )


@pytest.fixture(scope="session")
def make_model():
    """Build an ImplicitModel from generator text"""
    return implicit


@pytest.fixture(scope="session")
def circle(plane):
    return implicit(plane, "p0^2 + p1^2 + p2^2 - 2*p0*p1 - 2*p0*p2 - 2*p1*p2", name="circle")


@pytest.fixture(scope="session")
def hardy_weinberg(plane):
    return implicit(plane, "p1^2 - 4*p0*p2", name="hardy_weinberg")


@pytest.fixture(scope="session")
def hw_cousin(plane):
    return implicit(plane, "p1^2 - p0*p2", name="hw_cousin")
