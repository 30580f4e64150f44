import itertools

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from schubcone.roots import RootSystemSpec
from schubcone.weyl import SignedPermutation

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# criterion lines collected by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def elements(draw, family: str, rank: int):
    spec = RootSystemSpec(family, rank)
    perm = draw(st.permutations(range(1, spec.dim + 1)))
    if family == "A":
        return SignedPermutation("A", tuple(perm))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=spec.dim, max_size=spec.dim))
    if family == "D" and signs.count(-1) % 2:
        signs[-1] = -signs[-1]
    return SignedPermutation(family, tuple(p * s for p, s in zip(perm, signs)))


SMALL_SPECS = [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 3), ("D", 4)]


@pytest.fixture(params=SMALL_SPECS, ids=lambda p: f"{p[0]}{p[1]}")
def small_spec(request):
    return RootSystemSpec(*request.param)


def pairs(xs):
    return itertools.product(xs, repeat=2)
