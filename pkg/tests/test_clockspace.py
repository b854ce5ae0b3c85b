from array import array
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CLOCKS, federations, grid, members
from tiotest.clockspace import (
    INF, ClockMismatchError, ClockSet, Federation, SymbolicStateSet, Zone, all_regions, atom, bound,
    region_of, regions_of,
)
from tiotest.clockspace.zone import bound_add, bound_str, zone_to_text

XY = ClockSet(["x", "y"])
M = 3


def fed(*atoms, clocks=XY):
    return Federation.from_atoms(clocks, atoms)


# bounds ---------------------------------------------------------------

def test_bound_encoding_orders_strict_below_weak():
    assert bound(3, False) < bound(3, True) < bound(4, False)
    assert bound_str(bound(2, False)) == "<2"
    assert bound_add(bound(1, True), bound(2, False)) == bound(3, False)
    assert bound_add(INF, bound(0)) == INF


# zones ----------------------------------------------------------------

def test_zone_contains_and_canonical_form():
    z = Zone.from_constraints(XY, atom(XY, "x", "<=", 3) + atom(XY, "x", "=", 1, "y"))
    assert z.contains((2, 1)) and not z.contains((2, 2))
    # y <= 2 is implied by x <= 3 and x - y = 1
    assert z.entry(2, 0) == bound(2)


def test_empty_conjunction_is_none():
    assert Zone.from_constraints(XY, atom(XY, "x", "<", 1) + atom(XY, "x", ">", 1)) is None


def test_up_down_reset():
    z = Zone.from_constraints(XY, atom(XY, "x", "=", 1) + atom(XY, "y", "=", 0))
    assert z.up().contains((5, 4)) and not z.up().contains((5, 5))
    # y = 0 already, so nothing lies strictly in the past
    assert z.down() == z
    w = Zone.from_constraints(XY, atom(XY, "x", "=", 1) + atom(XY, "y", "=", 1))
    assert w.down().contains((Fraction(1, 2), Fraction(1, 2)))
    assert z.reset([1]).contains((0, 0))


def test_delay_window():
    z = Zone.from_constraints(XY, atom(XY, "x", ">", 1) + atom(XY, "x", "<=", 3))
    assert z.delay_window((Fraction(1, 2), 0)) == (Fraction(1, 2), False, Fraction(5, 2), True)
    assert z.delay_window((4, 0)) is None


def test_zone_minus_is_disjoint_cover():
    a = Zone.universe(XY).constrain(1, 0, bound(4))
    b = Zone.from_constraints(XY, atom(XY, "x", ">", 1) + atom(XY, "y", "<", 2))
    parts = a.minus(b)
    pts = grid(XY, 4)
    got = set()
    for p in parts:
        got |= {q for q in pts if p.contains(q)}
    assert got == {q for q in pts if a.contains(q) and not b.contains(q)}


def test_clock_mismatch_is_an_error():
    with pytest.raises(ClockMismatchError):
        fed(("x", "<", 1)) | fed(("x", "<", 1), clocks=ClockSet(["x"]))


def test_zone_text_rendering():
    z = Zone.from_constraints(XY, atom(XY, "x", "<=", 3) + atom(XY, "x", "<", 1, "y"))
    assert zone_to_text(z) == "x <= 3 && x - y < 1"
    assert zone_to_text(z, scale=2) == "x <= 3/2 && x - y < 1/2"


# federations --------------------------------------------------------

def test_complement_of_guard_pair():
    g = fed(("x", ">=", 3), ("x", "<=", 6))
    c = ~g
    assert c == fed(("x", "<", 3)) | fed(("x", ">", 6))
    assert (g | c).is_universe() and (g & c).is_empty()


def test_semantic_equality_ignores_zone_split():
    a = fed(("x", "<=", 2)) | fed(("x", ">", 2), ("x", "<", 5))
    assert a == fed(("x", "<", 5))
    assert a.reduce().zones and len(a.reduce().zones) == 1


def test_preimage_reset():
    g = fed(("x", "<=", 1), ("y", ">", 2))
    pre = g.preimage_reset(["x"])
    assert pre == fed(("y", ">", 2))


def test_normalize_is_classic_extrapolation():
    f = fed(("x", ">", 7), ("x", "<", 9))
    assert f.normalize(5) == fed(("x", ">", 5))


def test_sample_is_member():
    f = fed(("x", ">", 1), ("x", "y", "<", 0))
    assert f.contains(f.sample())


@given(federations())
def test_double_complement(f):
    assert ~~f == f


@given(federations(clocks=XY), federations(clocks=XY))
def test_de_morgan(f, g):
    assert ~(f | g) == (~f & ~g)
    assert ~(f & g) == (~f | ~g)


@given(federations(clocks=XY), federations(clocks=XY))
def test_difference_is_intersection_with_complement(f, g):
    assert f - g == f & ~g


@given(federations())
def test_up_and_down_are_closure_operators(f):
    for op in (Federation.up, Federation.down):
        assert f <= op(f)
        assert op(op(f)) == op(f)


@given(federations(clocks=XY), federations(clocks=XY))
def test_up_is_monotone(f, g):
    assert (f & g).up() <= f.up() & g.up()


@given(federations(m=5))
def test_normalize_idempotent_and_extensive(f):
    n = f.normalize(3)
    assert n.normalize(3) == n
    assert f <= n


@given(federations(), st.data())
def test_grid_membership_matches_operations(f, data):
    g = data.draw(federations(clocks=f.clocks))
    pts = grid(f.clocks, M + 1)
    mf, mg = members(f, pts), members(g, pts)
    assert members(f | g, pts) == mf | mg
    assert members(f & g, pts) == mf & mg
    assert members(f - g, pts) == mf - mg
    assert members(~f, pts) == frozenset(pts) - mf
    assert (f <= g) == (mf <= mg)


@settings(max_examples=50)
@given(federations())
def test_regions_of_covers_bounded_federation(f):
    regs = regions_of(f, M)
    for r in all_regions(len(f.clocks), M):
        inside = f.contains(r.representative())
        assert inside == (r in regs) or not inside


# regions ------------------------------------------------------------

def test_region_count_matches_closed_formula():
    # one clock, m = 2: {0}, (0,1), {1}, (1,2), {2}, (2, inf)
    assert len(all_regions(1, 2)) == 6
    # two clocks, m = 1: the classic 18 regions
    assert len(all_regions(2, 1)) == 18


def test_region_of_and_representative_roundtrip():
    for r in all_regions(2, 2):
        assert region_of(r.representative(), 2) == r
        assert r.zone(XY).contains(r.representative())


def test_time_successors_end_in_final_region():
    r = region_of((Fraction(1, 2), 0), 2)
    succ = r.time_successors()
    assert succ[0] == r and succ[-1].is_final()
    assert all(a.successor() == b for a, b in zip(succ, succ[1:]))


@given(st.sampled_from(CLOCKS), st.integers(0, 3))
def test_regions_partition_the_grid(clocks, m):
    regs = all_regions(len(clocks), m)
    zones = [r.zone(clocks) for r in regs]
    for p in grid(clocks, m):
        assert sum(z.contains(p) for z in zones) == 1


# state sets ---------------------------------------------------------

def test_state_set_algebra():
    a = SymbolicStateSet(XY, 2, {0: fed(("x", "<", 1))})
    b = SymbolicStateSet(XY, 2, {1: Federation.universe(XY)})
    u = a | b
    assert u.contains(0, (0, 5)) and u.contains(1, (9, 9))
    assert (~u)[1].is_empty()
    assert (u - b) == a
