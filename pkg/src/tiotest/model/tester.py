"""Objective-centered tester construction."""

from __future__ import annotations

from ..clockspace import Federation, SymbolicStateSet
from .analysis import check_deterministic
from .automaton import Automaton, Edge, ModelError


class NondeterministicError(ModelError):
    """The automaton handed to the tester construction is not deterministic."""


FAIL = "Fail"


def build_tester(dp: Automaton) -> Automaton:
    """Complete ``dp`` on outputs towards a Fail sink and drop its invariants.

    The verdict sets are attached to the result: ``vpass`` is the accepting
    locations under their former invariants, ``vfail`` is the Fail location
    together with every configuration violating a former invariant.
    """
    rep = check_deterministic(dp)
    if not rep.ok:
        raise NondeterministicError(f"{dp.name} is not deterministic: {rep.first_failure()}")
    name = FAIL
    while name in dp.locations:
        name += "_"
    fail = len(dp.locations)
    univ = Federation.universe(dp.clocks)
    edges = list(dp.edges)
    for l in range(len(dp.locations)):
        for b in dp.outputs:
            cover = Federation.empty(dp.clocks)
            for e in dp.edges_from(l):
                if e.action == b:
                    cover = cover | e.guard
            g = ~cover
            if not g.is_empty():
                edges.append(Edge(len(edges), l, g, b, frozenset(), fail))
    for b in dp.observable:
        edges.append(Edge(len(edges), fail, univ, b, frozenset(), fail))
    nlocs = fail + 1
    vpass = SymbolicStateSet(dp.clocks, nlocs, {l: dp.invariants[l] for l in dp.accept})
    bad = {l: ~dp.invariants[l] for l in range(len(dp.locations))}
    bad[fail] = univ
    vfail = SymbolicStateSet(dp.clocks, nlocs, bad)
    return Automaton(
        name=f"{dp.name}_tester",
        role="tester",
        locations=dp.locations + (name,),
        initial=dp.initial,
        actions=dp.actions,
        proper=dp.proper,
        observed=dp.observed,
        invariants=tuple(univ for _ in range(nlocs)),
        edges=tuple(edges),
        accept=dp.accept,
        fail=fail,
        vpass=vpass,
        vfail=vfail,
        source_invariants=dp.invariants + (univ,),
    )
