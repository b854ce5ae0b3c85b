import random
from collections import Counter
from fractions import Fraction

import pytest

from tiotest.execution import (
    FAIL, PASS, RUNNING, BlockingImplError, Budget, FairScheduler, campaign, exhaustiveness_tp, make_impl,
    prepare, run_test,
)
from tiotest.execution.impl import add_edge, delete_edge, set_guard, set_invariant
from tiotest.execution.scheduler import Option, Window
from tiotest.model import ModelError, validate_tp
from tiotest.semantics import after, parse_trace, replay, trace_of
from tiotest.suite import TARGETS, conveyor_suite, fixture


@pytest.fixture(scope="module")
def suite():
    return conveyor_suite()


def impl(suite, name):
    return next(i for i in suite.impls if i.name == name)


# scheduler ------------------------------------------------------------

def opts(*edges):
    w = (Window(Fraction(0), True, Fraction(1), True),)
    return [Option(e, ("l", "r", e), w) for e in edges]


def test_scheduler_yields_to_tester_within_bound():
    s = FairScheduler(random.Random(0), bound=3, preempt=1.0)
    streak = 0
    for _ in range(200):
        if s.choose(opts(0, 1), must_move=False) is None:
            s.tester_moved()
            streak = 0
        else:
            streak += 1
        assert streak <= 3


def test_scheduler_starved_edge_fires():
    s = FairScheduler(random.Random(1), bound=2, preempt=0.0)
    fired = Counter()
    for _ in range(300):
        c = s.choose(opts(0, 1, 2), must_move=False)
        if c is None:
            s.tester_moved()
        else:
            fired[c[0].edge] += 1
    # with no voluntary preemption only starvation makes the impl move,
    # and it does so for every edge
    assert set(fired) == {0, 1, 2} and min(fired.values()) >= 20


def test_scheduler_forced_move_and_delay_within_window():
    s = FairScheduler(random.Random(2), bound=3, preempt=0.0)
    w = Window(Fraction(1, 2), False, Fraction(2), True)
    for _ in range(50):
        o, d = s.choose([Option(7, "k", (w,))], must_move=True)
        assert o.edge == 7 and Fraction(1, 2) < d <= 2


def test_window_candidates():
    w = Window(Fraction(0), True, Fraction(3), False)
    assert w.candidates() == [0, 1, Fraction(3, 2), 2]


# single runs ------------------------------------------------------------

def test_conformant_run_passes_and_replays(suite):
    case = prepare(suite.spec, suite.tp, dp=suite.dp)
    for seed in range(10):
        v, beh = run_test(case.view, case.strategy, impl(suite, "conveyor_impl"), Budget(16), seed)
        assert v == PASS
        end = replay(case.tester, beh.tester_run)
        assert case.view.vpass.contains(end.loc, end.val)
        assert trace_of(case.tester, beh.tester_run) == beh.trace
        assert trace_of(impl(suite, "conveyor_impl").automaton, beh.impl_run) == beh.trace


def test_same_seed_same_behaviour(suite):
    case = prepare(suite.spec, exhaustiveness_tp(suite.spec, TARGETS["mutant_b"]), det_spec=suite.det_spec)
    im = impl(suite, "mutant_b")
    a = run_test(case.view, case.strategy, im, Budget(32), 5)
    b = run_test(case.view, case.strategy, im, Budget(32), 5)
    assert a[0] == b[0] and a[1].log == b[1].log and a[1].trace == b[1].trace


def test_event_log_format(suite):
    case = prepare(suite.spec, suite.tp, dp=suite.dp)
    _, beh = run_test(case.view, case.strategy, impl(suite, "conveyor_impl"), Budget(16), 0)
    for line in beh.log:
        t, side, kind, detail = line.split(" ", 3)
        assert t.startswith("t=") and side in ("side=tester", "side=impl")
        assert kind in ("kind=delay", "kind=move", "kind=verdict") and detail.startswith("detail=")
    assert beh.log[-1].endswith("detail=Pass")


def test_zero_budget_is_running(suite):
    case = prepare(suite.spec, suite.tp, dp=suite.dp)
    v, beh = run_test(case.view, case.strategy, impl(suite, "conveyor_impl"), Budget(0, 0), 0)
    assert v == RUNNING and len(beh.trace) == 0 and beh.steps == 0


def test_fail_replays_into_fail_set(suite):
    case = prepare(suite.spec, exhaustiveness_tp(suite.spec, TARGETS["mutant_a"]), det_spec=suite.det_spec)
    im = impl(suite, "mutant_a")
    fails = 0
    for seed in range(20):
        v, beh = run_test(case.view, case.strategy, im, Budget(32), seed)
        if v == FAIL:
            fails += 1
            end = replay(case.tester, beh.tester_run)
            assert case.view.vfail.contains(end.loc, end.val)
            assert beh.trace.actions[-1] == "end1"
            assert after(suite.spec, beh.trace).is_empty()
    assert fails


def test_late_end2_is_caught_with_end2_last(suite):
    im = make_impl(fixture("conveyor_impl"), [add_edge("End2", "x = 2", "end2", (), "End2")], spec=suite.spec)
    case = prepare(suite.spec, exhaustiveness_tp(suite.spec, "0 · ship2 · 1 · end2"), det_spec=suite.det_spec)
    verdicts = [run_test(case.view, case.strategy, im, Budget(32), s) for s in range(20)]
    fails = [beh for v, beh in verdicts if v == FAIL]
    assert fails and all(str(b.trace).endswith("end2") for b in fails)


# implementations ----------------------------------------------------------

def test_mutations_rebuild_fixture_mutants(suite):
    from tiotest.semantics import bounded_trace_equiv

    base = fixture("conveyor_impl")
    a = make_impl(base, [add_edge("End2", "x = 1", "end1", ("x",), "End2")])
    c = make_impl(base, [set_invariant("Boarding", "x <= 2"), set_guard("Boarding", "past", "x = 2")])
    assert bounded_trace_equiv(a.automaton, fixture("mutant_a"), 3).ok
    assert bounded_trace_equiv(c.automaton, fixture("mutant_c"), 3).ok


def test_blocking_mutation_is_rejected():
    with pytest.raises(BlockingImplError) as err:
        make_impl(fixture("conveyor_impl"), [delete_edge("Waste", "tau")])
    assert "Waste" in str(err.value)


def test_fixture_impls_flagged_by_oracle(suite):
    flags = {i.name: i.conformant for i in suite.impls}
    assert flags == {"conveyor_impl": True, "mutant_a": False, "mutant_b": False, "mutant_c": False}


# exhaustiveness test purposes ---------------------------------------------

def test_exhaustiveness_tp_for_waste(conveyor):
    tp = exhaustiveness_tp(conveyor, "3 · waste")
    assert validate_tp(tp, conveyor).ok
    from tiotest.model import product

    p = product(conveyor, tp)
    s = after(p, parse_trace("3 · waste"))
    assert any(not s[l].is_empty() for l in p.accept)
    assert all(s2.is_empty() for l, s2 in after(p, parse_trace("2 · waste")).items() if l in p.accept)


def test_exhaustiveness_tp_single_step(conveyor):
    tp = exhaustiveness_tp(conveyor, parse_trace("0"), 1, "waste")
    assert validate_tp(tp, conveyor).ok


def test_exhaustiveness_tp_rejects_unspecified_trace(conveyor):
    with pytest.raises(ModelError):
        exhaustiveness_tp(conveyor, "1 · past")


def test_exhaustiveness_tp_keeps_suffix_after_restart(conveyor):
    tp = exhaustiveness_tp(conveyor, "3 · waste · 0 · zeta · 3 · past")
    assert len(tp.locations) == 3  # q0, Accept, Sink


# campaigns --------------------------------------------------------------

def test_empty_campaign_is_vacuous(suite):
    rep = campaign(suite.spec, [suite.tp], [], seeds=range(3))
    assert rep.ok and not rep.rows


def test_identity_soundness_stress(suite):
    rep = campaign(suite.spec, [suite.tp], [impl(suite, "conveyor_impl")], Budget(16), range(1, 21), dp=suite.dp)
    assert rep.count(FAIL) == 0 and rep.ok


def test_injected_fail_is_reported_as_soundness(suite):
    rep = campaign(suite.spec, [suite.tp], [impl(suite, "conveyor_impl")], Budget(16), range(2), dp=suite.dp,
                   inject_fail=True)
    assert rep.violated() == ["soundness"]


def test_report_records_and_table(suite):
    rep = campaign(suite.spec, [suite.tp], suite.impls, Budget(16), range(2), dp=suite.dp)
    recs = rep.records()
    assert recs[-1]["kind"] == "summary" and all(recs[-1][p] for p in ("soundness", "precision"))
    assert len(recs) == 1 + 2 * len(suite.impls)
    assert "soundness: ok" in rep.table()
