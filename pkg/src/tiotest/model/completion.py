"""Completion of test purposes and implementations."""

from __future__ import annotations

from ..clockspace import Federation
from .automaton import Automaton, Edge


def _uncovered(a: Automaton, loc: int, action: str) -> Federation:
    cover = Federation.empty(a.clocks)
    for e in a.edges_from(loc):
        if e.action == action:
            cover = cover | e.guard
    return ~cover


def complete_tp(tp: Automaton) -> Automaton:
    """Add the "otherwise" edges making a test purpose complete.

    Missing restarts return to the initial location resetting every proper
    clock; any other missing action loops without resets.
    """
    edges = list(tp.edges)
    univ = Federation.universe(tp.clocks)
    invariants = tuple(univ for _ in tp.locations)
    for l in range(len(tp.locations)):
        for x in tp.actions:
            g = _uncovered(tp, l, x.name)
            if g.is_empty():
                continue
            if x.kind == "restart":
                edges.append(Edge(0, l, g, x.name, frozenset(tp.proper), tp.initial))
            else:
                edges.append(Edge(0, l, g, x.name, frozenset(), l))
    return tp.evolve(edges=edges, invariants=invariants)


def absorb_inputs(a: Automaton, role: str = "impl") -> Automaton:
    """Input-complete ``a`` with reset-free self-loops on missing inputs."""
    edges = list(a.edges)
    for l in range(len(a.locations)):
        for x in a.actions:
            if not x.controllable:
                continue
            g = _uncovered(a, l, x.name) & a.invariants[l]
            if not g.is_empty():
                edges.append(Edge(0, l, g, x.name, frozenset(), l))
    return a.evolve(edges=edges, role=role)
