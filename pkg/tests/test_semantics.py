import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiotest.model import parse_model
from tiotest.semantics import (
    DELAY, Config, Delay, Move, RegionGraph, Run, StepError, Trace, after, elapse, enab, in_, out_,
    parse_trace, reach, replay, step, trace_of,
)
from tiotest.semantics.core import can_delay, edge_enabled, trace_of_labels
from tiotest.semantics.symbolic import config_set
from tiotest.suite import fixture, fixture_text


def cfg(a, loc, *val):
    return Config(a.loc(loc), tuple(Fraction(v) for v in val))


# step / replay ------------------------------------------------------

def test_delay_within_invariant(conveyor):
    c = step(conveyor, Config.initial(conveyor), Delay(2))
    assert c == cfg(conveyor, "Start", 2)


def test_delay_past_invariant_is_an_error(conveyor):
    with pytest.raises(StepError) as err:
        step(conveyor, cfg(conveyor, "Start", 2), Delay(Fraction(1, 2)))
    assert err.value.reason == "invariant"


def test_past_move_resets_x(conveyor_dp):
    a = conveyor_dp
    past = next(e for e in a.edges_from(a.loc("St")) if e.action == "past")
    assert step(a, cfg(a, "St", 3, 3), Move(past.id)) == cfg(a, "St", 0, 3)


def test_disabled_guard_is_an_error(conveyor_dp):
    a = conveyor_dp
    past = next(e for e in a.edges_from(a.loc("St")) if e.action == "past")
    with pytest.raises(StepError) as err:
        step(a, cfg(a, "St", 2, 2), Move(past.id))
    assert err.value.reason == "guard"


def test_replay_and_trace(conveyor):
    tau = conveyor.edges[0]
    waste = next(e for e in conveyor.edges if e.action == "waste")
    r = Run(Config.initial(conveyor), (Delay(2), Move(tau.id), Delay(1), Move(waste.id)))
    assert replay(conveyor, r) == cfg(conveyor, "Waste", 0)
    assert str(trace_of(conveyor, r)) == "3 · waste"


def test_trace_canonical_forms():
    assert str(trace_of(fixture("conveyor"), Run(Config.initial(fixture("conveyor")), ()))) == "0"
    t = trace_of_labels([1, Fraction(1, 2), "tau", 0, "waste"], internal=["tau"])
    assert str(t) == "3/2 · waste"
    assert parse_trace("1/2 · ship2 · 1 · end2") == Trace((Fraction(1, 2), 1, 0), ("ship2", "end2"))
    assert parse_trace("ship2") == Trace((0, 0), ("ship2",))
    for text in ("0", "3 · waste", "1/2 · ship2 · 1 · end2 · 2"):
        assert str(parse_trace(text)) == text


# symbolic operators ---------------------------------------------------

def test_after_empty_trace_is_initial_point(conveyor_dp):
    s = after(conveyor_dp, parse_trace("0"))
    st_ = conveyor_dp.loc("St")
    assert s.locations() == [st_]
    assert s.contains(st_, (0, 0)) and not s.contains(st_, (Fraction(1, 2), Fraction(1, 2)))


def test_after_ship2_enters_accept(conveyor_dp):
    a = conveyor_dp
    s = after(a, parse_trace("1 · ship2"))
    assert s.locations() == [a.loc("D2A")]
    assert s.contains(a.loc("D2A"), (0, 1))


def test_after_unspecified_trace_is_empty(conveyor):
    assert after(conveyor, parse_trace("1 · past")).is_empty()
    assert after(conveyor, parse_trace("7")).is_empty()


def test_after_through_internal_moves(conveyor):
    s = after(conveyor, parse_trace("5/2"))
    assert set(s.locations()) == {conveyor.loc("Sort"), conveyor.loc("Boarding")}


def test_out_at_sorting_stage(conveyor_dp):
    outs, delays = out_(conveyor_dp, cfg(conveyor_dp, "St", 4, 4))
    assert outs == {"past"}
    assert 0 in delays and 2 in delays and Fraction(5, 2) not in delays
    assert delays.sup() == 2


def test_in_at_initial_state(conveyor_dp):
    assert in_(conveyor_dp, cfg(conveyor_dp, "St", 0, 0)) == {"ship1", "ship2"}


def test_elapse_from_tester_fail_is_unbounded(conveyor_dp):
    from tiotest.model import FAIL, build_tester

    t = build_tester(conveyor_dp)
    d = elapse(t, Config(t.loc(FAIL), (Fraction(0), Fraction(0))))
    assert d.sup() is None and 10**6 in d


def test_enab_sorted_ids(conveyor_dp):
    ids = enab(conveyor_dp, cfg(conveyor_dp, "St", 3, 3))
    assert ids == sorted(ids) and ids


def test_reach_covers_conveyor(conveyor):
    assert set(reach(conveyor).locations()) == set(range(len(conveyor.locations)))


def test_reach_without_accept_edge(conveyor_dp):
    text = fixture_text("conveyor_dp")
    line = next(l for l in text.splitlines() if "ship2" in l and "D2A" in l.split("->")[-1])
    a = parse_model(text.replace(line + "\n", ""))
    assert a.loc("D2A") not in reach(a).locations()


def test_config_set_is_singleton(conveyor):
    s = config_set(conveyor, cfg(conveyor, "Start", Fraction(1, 3)))
    assert s.contains(conveyor.loc("Start"), (Fraction(1, 3),))
    assert not s.contains(conveyor.loc("Start"), (Fraction(1, 2),))


# random concrete runs agree with the symbolic after ------------------------

def random_run(a, rng, length):
    c = Config.initial(a)
    steps = []
    for _ in range(length):
        moves = [e.id for e in a.edges_from(c.loc) if edge_enabled(a, c, e.id)]
        delays = [d for d in (Fraction(1, 2), Fraction(1), Fraction(3, 2)) if can_delay(a, c, d)]
        if moves and (not delays or rng.random() < 0.5):
            s = Move(rng.choice(moves))
        elif delays:
            s = Delay(rng.choice(delays))
        else:
            break
        c = step(a, c, s)
        steps.append(s)
    return Run(Config.initial(a), tuple(steps)), c


@settings(max_examples=60)
@given(st.sampled_from(["conveyor", "conveyor_dp", "conveyor_det", "mutant_b"]), st.integers(0, 10**6), st.integers(0, 12))
def test_after_contains_end_of_every_run(name, seed, length):
    a = fixture(name)
    run, end = random_run(a, random.Random(seed), length)
    s = after(a, trace_of(a, run))
    assert s.contains(end.loc, end.val)


# region graph -------------------------------------------------------

def test_region_graph_sizes_and_delay_loop(conveyor):
    g = RegionGraph(conveyor)
    assert len(g) == 34
    assert len(g.sccs()) == 1
    fin = [k for k, (loc, r) in enumerate(g.nodes) if r.is_final()]
    for k in fin:
        assert any(s.edge == DELAY and s.dst == k for s in g.succ[k])
