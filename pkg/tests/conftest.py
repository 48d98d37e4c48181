import pytest

from ecdlink.curves import make_curve

# ARP request summary used as the canonical 31-octet workload everywhere.
ARP_TEXT = b"Who has 1.1.0.1? Tell 1.1.0.178"


@pytest.fixture(scope="session")
def toy_curve():
    """y^2 = x^3 + 2x + 2 over F_17, base point (5,1) of order 19.

    Small enough that every group fact can be recomputed by brute force.
    """
    return make_curve("toy-17", p=17, a=2, b=2, gx=5, gy=1, n=19)


def pytest_runtest_logreport(report):
    # One visible PASS/FAIL line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {outcome}", flush=True)
