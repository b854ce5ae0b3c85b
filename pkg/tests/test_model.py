import pytest

from tiotest.clockspace import ClockSet, Federation
from tiotest.model import (
    FAIL, ModelError, ModelSyntaxError, absorb_inputs, build_tester, check_deterministic, complete_tp,
    parse_guard, parse_model, product, to_text, validate_spec, validate_tp,
)
from tiotest.suite import fixture, fixture_names, fixture_text

X = ClockSet(["x"])

SMALL = """\
automaton small
role spec
inputs go
outputs done
restart zeta
clocks x
initial A
location A { x <= 2 }
location B
edge A -- x <= 2 / go? / {x} -> B
edge B -- x = 1 || x > 3 / done! / {} -> B
edge B -- true / zeta / {x} -> A
edge A -- true / zeta / {x} -> A
"""


def edges(a):
    return sorted((a.locations[e.src], a.label(e), e.guard.to_text(), tuple(sorted(e.resets)), a.locations[e.dst]) for e in a.edges)


# parser ---------------------------------------------------------------

def test_parse_small_model():
    a = parse_model(SMALL)
    assert a.locations == ("A", "B")
    assert a.inputs == ("go",) and a.outputs == ("done",) and a.restart == "zeta"
    done = next(e for e in a.edges if e.action == "done")
    assert done.guard == parse_guard("x = 1 || x > 3", X)


@pytest.mark.parametrize("name", fixture_names())
def test_roundtrip_is_isomorphic(name):
    a = fixture(name)
    b = parse_model(to_text(a))
    assert b.locations == a.locations
    assert edges(b) == edges(a)
    assert [e.id for e in b.edges] == [e.id for e in a.edges]
    assert b.accept == a.accept and b.initial == a.initial


@pytest.mark.parametrize(
    "text, line, col",
    [
        (SMALL.replace("x <= 2 / go?", "x <== 2 / go?"), 10, 13),
        (SMALL.replace("go? / {x}", "go! / {x}"), 10, None),
        (SMALL.replace("location B\n", "location B {\n"), 9, None),
    ],
)
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(ModelSyntaxError) as err:
        parse_model(text)
    assert err.value.line == line
    if col is not None:
        assert err.value.col == col


def test_undeclared_names_are_rejected():
    with pytest.raises((ModelError, ModelSyntaxError)):
        parse_model(SMALL.replace("/ done! /", "/ finished! /"))
    with pytest.raises((ModelError, ModelSyntaxError)):
        parse_model(SMALL.replace("-> B\nedge B -- x = 1", "-> C\nedge B -- x = 1"))


def test_guard_chains_and_diagonals():
    xy = ClockSet(["x", "y"])
    assert parse_guard("1 < x <= 3", xy) == Federation.from_atoms(xy, [("x", ">", 1), ("x", "<=", 3)])
    assert parse_guard("x - y >= 2", xy) == Federation.from_atoms(xy, [("x", "y", ">=", 2)])
    assert parse_guard("false", xy).is_empty() and parse_guard("true", xy).is_universe()


# product ------------------------------------------------------------

PRODUCT_EDGES = sorted([
    ("Start.Start", "tau", "x <= 2", ("x",), "Sort.Start"),
    ("Sort.Start", "waste!", "true", ("x",), "Waste.Waste"),
    ("Sort.Start", "tau", "true", ("x",), "Boarding.Start"),
    ("Waste.Waste", "tau", "x = 1", ("x",), "Waste.Waste"),
    ("Waste.Waste", "zeta", "true", ("x", "y"), "Start.Start"),
    ("Boarding.Start", "ship1?", "true", ("x",), "End1.Start"),
    ("Boarding.Start", "ship2?", "y <= 5", ("x",), "End2.Accept"),
    ("Boarding.Start", "ship2?", "y > 5", ("x",), "End2.Start"),
    ("Boarding.Start", "past!", "x = 3", ("x",), "Start.Start"),
    ("End1.Start", "end1!", "x = 1", ("x",), "End1.Start"),
    ("End1.Start", "zeta", "true", ("x", "y"), "Start.Start"),
    ("End2.Start", "end2!", "x = 1", ("x",), "End2.Start"),
    ("End2.Start", "zeta", "true", ("x", "y"), "Start.Start"),
    ("End2.Accept", "end2!", "x = 1", ("x",), "End2.Accept"),
    ("End2.Accept", "zeta", "true", ("x", "y"), "Start.Start"),
])


def test_product_of_conveyor_and_ship2_purpose(conveyor, ship2_tp):
    p = product(conveyor, ship2_tp)
    assert len(p.locations) == 7
    assert {p.locations[l] for l in p.accept} == {"End2.Accept"}
    assert edges(p) == PRODUCT_EDGES


def test_product_without_pruning_keeps_unreachable_pairs(conveyor, ship2_tp):
    full = product(conveyor, ship2_tp, reachable_only=False)
    assert len(full.locations) == len(conveyor.locations) * len(ship2_tp.locations)


# validation ---------------------------------------------------------

def test_bundled_models_validate(conveyor, ship2_tp, conveyor_dp):
    assert validate_spec(conveyor).ok
    assert validate_tp(ship2_tp, conveyor).ok
    assert check_deterministic(conveyor_dp).ok


def test_product_with_internal_moves_is_not_deterministic(conveyor, ship2_tp):
    rep = check_deterministic(product(conveyor, ship2_tp))
    assert not rep.ok and rep.first_failure().name == "no_internal_edges"


def test_overlapping_guards_are_not_deterministic():
    a = parse_model(SMALL.replace("edge B -- true / zeta", "edge B -- x < 2 / done! / {} -> A\nedge B -- true / zeta"))
    rep = check_deterministic(a)
    assert rep.first_failure().name == "disjoint_guards"


def test_unreachable_restart_is_reported(conveyor):
    text = fixture_text("conveyor").replace("edge Waste -- true / zeta / {x} -> Start\n", "")
    rep = validate_spec(parse_model(text))
    assert not rep.get("restart_reachable").ok
    assert "Waste" in rep.get("restart_reachable").witness


def test_zeno_trap_breaks_non_blocking():
    text = SMALL.replace("location B\n", "location B { x <= 0 }\n").replace("x = 1 || x > 3", "x > 3")
    rep = validate_spec(parse_model(text))
    assert not rep.get("non_blocking").ok


def test_incomplete_test_purpose_is_reported(conveyor, ship2_tp):
    text = fixture_text("ship2_tp").replace("edge Start -- y > 5 / ship2? / {} -> Start\n", "")
    tp = parse_model(text)
    rep = validate_tp(tp, conveyor)
    assert rep.first_failure().name == "complete"
    assert "ship2?" in rep.first_failure().witness
    assert validate_tp(complete_tp(tp), conveyor).ok


# tester -------------------------------------------------------------

def fail_guard(t, loc, action):
    cover = Federation.empty(t.clocks)
    for e in t.edges_from(t.loc(loc)):
        if e.action == action and t.locations[e.dst] == FAIL:
            cover = cover | e.guard
    return cover


def test_tester_fail_guards_at_sorting_stage(conveyor_dp):
    t = build_tester(conveyor_dp)
    g = lambda s: parse_guard(s, t.clocks)
    assert fail_guard(t, "St", "waste") == g("x > 3")
    assert fail_guard(t, "St", "past") == g("x < 3 || x > 6")
    assert fail_guard(t, "St", "end1").is_universe()
    assert fail_guard(t, "St", "end2").is_universe()


def test_tester_has_true_invariants_and_verdict_sets(conveyor_dp):
    t = build_tester(conveyor_dp)
    assert all(inv.is_universe() for inv in t.invariants)
    assert t.vfail[t.loc(FAIL)].is_universe()
    st = t.loc("St")
    assert t.vfail.contains(st, (7, 7)) and not t.vfail.contains(st, (6, 6))
    assert t.vpass.contains(t.loc("D2A"), (0, 1))


def test_tester_rejects_nondeterminism(conveyor, ship2_tp):
    with pytest.raises(ModelError):
        build_tester(product(conveyor, ship2_tp))


def test_absorb_inputs_makes_model_input_complete(conveyor):
    a = absorb_inputs(conveyor)
    for l in range(len(a.locations)):
        for act in a.inputs:
            cover = Federation.empty(a.clocks)
            for e in a.edges_from(l):
                if e.action == act:
                    cover = cover | e.guard
            assert (a.invariants[l] - cover).is_empty()
