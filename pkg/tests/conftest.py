import functools

import pytest

from thompsonf.convexity import ball
from thompsonf.normalform import NormalForm, normal_form_to_pair
from thompsonf.witness import build_witness

REF_NF = "x0^2 x1 x2 x4 x5 x7 x8 x9^-1 x7^-1 x3^-1 x2^-1 x0^-2"
REF_NEG = "11100101001010110011000"
REF_POS = "11101010010100110100100"

# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = {}


@functools.lru_cache(maxsize=None)
def witness(k):
    return build_witness(k)


@pytest.fixture(scope="session")
def ref_elem():
    return normal_form_to_pair(NormalForm.parse(REF_NF))


@pytest.fixture(scope="session")
def ball6():
    return ball(6)


@pytest.fixture(scope="session")
def witnesses():
    return witness


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
