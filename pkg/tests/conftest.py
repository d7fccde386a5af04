import pytest

from oracle import oracle_suite


@pytest.fixture(scope="session")
def oracles():
    return {name: (pres, G, phi) for name, pres, G, phi in oracle_suite()}


def _built(family, p):
    from plab.suites import lab_for

    if family == "PSU5":
        from plab.constructors.psu5 import build_su5_sylow

        pres = build_su5_sylow(p, 1)[0]
    else:
        from plab.constructors.d4 import build_3d4_sylow

        pres = build_3d4_sylow(p, 1)[0]
    return pres, lab_for(pres, family)


@pytest.fixture(scope="session")
def psu5_2():
    return _built("PSU5", 2)


@pytest.fixture(scope="session")
def psu5_3():
    return _built("PSU5", 3)


@pytest.fixture(scope="session")
def d4_2():
    return _built("3D4", 2)


@pytest.fixture(scope="session")
def d4_3():
    return _built("3D4", 3)


# acceptance criteria record one line each; printed at the end of the session
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(number, status, detail):
        ACCEPTANCE[number] = (status, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status} - {detail}")
