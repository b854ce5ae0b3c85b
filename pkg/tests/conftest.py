import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tiotest.clockspace import ClockSet, Federation, Zone, all_regions, atom
from tiotest.suite import fixture

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CLOCKS = [ClockSet(["x"]), ClockSet(["x", "y"]), ClockSet(["x", "y", "z"])]
OPS = ("<", "<=", "=", ">=", ">")


def random_zone(rng: random.Random, clocks: ClockSet, m: int, k: int | None = None):
    """Conjunction of up to ``k`` random atoms with constants in 0..m."""
    names = clocks.names
    triples = []
    for _ in range(rng.randint(0, k if k is not None else 3)):
        lhs = rng.choice(names)
        rhs = rng.choice([None] + [n for n in names if n != lhs]) if len(names) > 1 else None
        triples += atom(clocks, lhs, rng.choice(OPS), rng.randint(0, m), rhs)
    return Zone.from_constraints(clocks, triples)


def random_fed(rng: random.Random, clocks: ClockSet, m: int = 3, zones: int = 3) -> Federation:
    return Federation.of(clocks, [random_zone(rng, clocks, m) for _ in range(rng.randint(0, zones))])


@st.composite
def federations(draw, clocks=None, m=3):
    cs = clocks or draw(st.sampled_from(CLOCKS))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_fed(random.Random(seed), cs, m)


def grid(clocks: ClockSet, m: int) -> list:
    """One point per region: membership on it decides every m-bounded set."""
    return [r.representative() for r in all_regions(len(clocks), m)]


def members(f: Federation, pts) -> frozenset:
    return frozenset(p for p in pts if f.contains(p))


@pytest.fixture(scope="session")
def conveyor():
    return fixture("conveyor")


@pytest.fixture(scope="session")
def ship2_tp():
    return fixture("ship2_tp")


@pytest.fixture(scope="session")
def conveyor_dp():
    return fixture("conveyor_dp")


@pytest.fixture(scope="session")
def conveyor_det():
    return fixture("conveyor_det")


@pytest.fixture(scope="session")
def game():
    from tiotest.game import GameView, build_hierarchy, synthesize
    from tiotest.model import build_tester

    g = GameView(build_tester(fixture("conveyor_dp")))
    ranks = build_hierarchy(g)
    return g, ranks, synthesize(g, ranks)
