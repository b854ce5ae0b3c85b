"""One automaton record for every role in the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from ..clockspace import ClockSet, Federation, SymbolicStateSet

KINDS = ("input", "output", "internal", "restart")
ROLES = ("otaio", "spec", "test_purpose", "product", "tester", "game", "impl")


class ModelError(ValueError):
    """Structurally invalid automaton."""


@dataclass(frozen=True)
class ActionDecl:
    name: str
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ModelError(f"unknown action kind {self.kind!r}")

    @property
    def observable(self) -> bool:
        return self.kind != "internal"

    @property
    def controllable(self) -> bool:
        # inputs and the restart are proposed by the tester
        return self.kind in ("input", "restart")

    @property
    def mark(self) -> str:
        return {"input": "?", "output": "!", "internal": "", "restart": ""}[self.kind]


@dataclass(frozen=True, eq=False)
class Edge:
    id: int
    src: int
    guard: Federation
    action: str
    resets: frozenset
    dst: int


@dataclass(eq=False)
class Automaton:
    """An OTAIO in one of the roles of :data:`ROLES`.

    Locations are referred to by index.  ``invariants[l]`` and edge guards
    are federations over ``clocks`` (proper clocks first, then observed).
    Tester automata also carry ``vpass``/``vfail`` and the invariants of the
    automaton they were built from in ``source_invariants``.
    """

    name: str
    role: str
    locations: tuple
    initial: int
    actions: tuple
    proper: tuple
    observed: tuple
    invariants: tuple
    edges: tuple
    accept: frozenset = frozenset()
    fail: int | None = None
    vpass: SymbolicStateSet | None = None
    vfail: SymbolicStateSet | None = None
    source_invariants: tuple | None = None
    clocks: ClockSet = field(init=False)

    def __post_init__(self):
        if self.role not in ROLES:
            raise ModelError(f"unknown role {self.role!r}")
        self.locations = tuple(self.locations)
        self.actions = tuple(self.actions)
        self.proper = tuple(self.proper)
        self.observed = tuple(self.observed)
        self.clocks = ClockSet(self.proper + self.observed)
        self.invariants = tuple(self.invariants)
        self.edges = tuple(self.edges)
        self.accept = frozenset(self.accept)
        if len(set(self.locations)) != len(self.locations):
            raise ModelError("duplicate location names")
        if len(self.invariants) != len(self.locations):
            raise ModelError("one invariant per location is required")
        if not 0 <= self.initial < len(self.locations):
            raise ModelError("initial location out of range")
        names = [a.name for a in self.actions]
        if len(set(names)) != len(names):
            raise ModelError("duplicate action declarations")
        if sum(1 for a in self.actions if a.kind == "restart") > 1:
            raise ModelError("at most one restart action")
        self._action = {a.name: a for a in self.actions}
        self._loc = {n: i for i, n in enumerate(self.locations)}
        self._out = [[] for _ in self.locations]
        proper = set(self.proper)
        for k, e in enumerate(self.edges):
            if e.id != k:
                raise ModelError("edge ids must be their positions")
            if e.action not in self._action:
                raise ModelError(f"edge {k} uses undeclared action {e.action!r}")
            if not e.resets <= proper:
                raise ModelError(f"edge {k} resets non-proper clocks {sorted(e.resets - proper)}")
            if e.guard.clocks != self.clocks:
                raise ModelError(f"edge {k} guard over the wrong clocks")
            self._out[e.src].append(e)
        for l, inv in enumerate(self.invariants):
            if inv.clocks != self.clocks:
                raise ModelError("invariant over the wrong clocks")
            if len(inv.zones) > 1:
                raise ModelError(f"invariant of {self.locations[l]!r} must be a conjunction")

    # lookups ----------------------------------------------------------
    def loc(self, name: str) -> int:
        try:
            return self._loc[name]
        except KeyError:
            raise KeyError(f"unknown location {name!r}") from None

    def action(self, name: str) -> ActionDecl:
        try:
            return self._action[name]
        except KeyError:
            raise KeyError(f"unknown action {name!r}") from None

    def has_action(self, name: str) -> bool:
        return name in self._action

    def edges_from(self, loc: int) -> list:
        return self._out[loc]

    def _names(self, pred) -> tuple:
        return tuple(a.name for a in self.actions if pred(a))

    @property
    def inputs(self) -> tuple:
        return self._names(lambda a: a.kind == "input")

    @property
    def outputs(self) -> tuple:
        return self._names(lambda a: a.kind == "output")

    @property
    def internals(self) -> tuple:
        return self._names(lambda a: a.kind == "internal")

    @property
    def restart(self) -> str | None:
        r = self._names(lambda a: a.kind == "restart")
        return r[0] if r else None

    @property
    def observable(self) -> tuple:
        return self._names(lambda a: a.observable)

    @property
    def controllable(self) -> tuple:
        return self._names(lambda a: a.controllable)

    @property
    def uncontrollable(self) -> tuple:
        return self.outputs

    def is_taio(self) -> bool:
        return not self.observed

    def max_constant(self) -> int:
        m = max((f.max_constant() for f in self.invariants), default=0)
        return max([m] + [e.guard.max_constant() for e in self.edges])

    def label(self, e: Edge) -> str:
        return self.label_of(e.action)

    def label_of(self, action: str) -> str:
        return action + self.action(action).mark

    def universe(self) -> Federation:
        return Federation.universe(self.clocks)

    def states(self, sets=None) -> SymbolicStateSet:
        return SymbolicStateSet(self.clocks, len(self.locations), sets or {})

    def invariant_set(self) -> SymbolicStateSet:
        return self.states({l: f for l, f in enumerate(self.invariants)})

    def evolve(self, **changes) -> "Automaton":
        """Copy with fields replaced (edges are renumbered when given)."""
        if "edges" in changes:
            changes["edges"] = renumber(changes["edges"])
        return replace(self, **changes)

    def __repr__(self) -> str:
        return f"Automaton({self.name!r}, role={self.role}, {len(self.locations)} locations, {len(self.edges)} edges)"


def renumber(edges: Iterable[Edge]) -> tuple:
    return tuple(replace(e, id=k) for k, e in enumerate(edges))


def make_edge(k: int, src: int, guard: Federation, action: str, resets: Sequence[str], dst: int) -> Edge:
    return Edge(k, src, guard, action, frozenset(resets), dst)
