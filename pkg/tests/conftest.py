import pytest

from conductorlab.fields import NumberFieldSpec


@pytest.fixture(scope="session")
def QQ():
    return NumberFieldSpec.rationals()


@pytest.fixture(scope="session")
def gaussian():
    return NumberFieldSpec.parse("Q(sqrt,-1)")


@pytest.fixture(scope="session")
def real_sqrt2():
    return NumberFieldSpec.parse("Q(sqrt,2)")


FIELD_SPECS = ["Q", "Q(sqrt,-1)", "Q(sqrt,2)", "Q(sqrt,-5)", "Q(sqrt,5)", "Q(sqrt,-3)"]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
