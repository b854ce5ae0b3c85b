"""Concrete semantics: configurations, steps, runs and traces."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..model.automaton import Automaton


class StepError(ValueError):
    """A step that is not enabled; ``reason`` is guard, invariant or edge."""

    def __init__(self, reason: str, msg: str):
        self.reason = reason
        super().__init__(f"{reason}: {msg}")


@dataclass(frozen=True)
class Config:
    loc: int
    val: tuple  # Fractions in clock order

    @classmethod
    def initial(cls, a: Automaton) -> "Config":
        return cls(a.initial, tuple(Fraction(0) for _ in a.clocks.names))

    def valuation(self, a: Automaton) -> dict:
        return dict(zip(a.clocks.names, self.val))

    def shifted(self, d) -> "Config":
        return Config(self.loc, tuple(v + d for v in self.val))

    def render(self, a: Automaton) -> str:
        vals = ", ".join(f"{c}={_fmt(v)}" for c, v in zip(a.clocks.names, self.val))
        return f"({a.locations[self.loc]}, {vals})"


@dataclass(frozen=True)
class Delay:
    d: Fraction


@dataclass(frozen=True)
class Move:
    edge: int
    observed_resets: frozenset = frozenset()


@dataclass
class Run:
    start: Config
    steps: list = field(default_factory=list)

    def duration(self) -> Fraction:
        return sum((s.d for s in self.steps if isinstance(s, Delay)), Fraction(0))


def _fmt(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def invariant_holds(a: Automaton, loc: int, val: Sequence) -> bool:
    return a.invariants[loc].contains(tuple(val))


def can_delay(a: Automaton, c: Config, d) -> bool:
    """True when every intermediate point of the delay satisfies the invariant."""
    d = Fraction(d)
    if d < 0:
        return False
    inv = a.invariants[c.loc]
    # invariants are convex, so both end points suffice
    return inv.contains(c.val) and inv.contains(tuple(v + d for v in c.val))


def edge_enabled(a: Automaton, c: Config, edge_id: int, observed_resets=frozenset()) -> bool:
    try:
        step(a, c, Move(edge_id, frozenset(observed_resets)))
    except StepError:
        return False
    return True


def step(a: Automaton, c: Config, s) -> Config:
    """Successor of ``c`` by a delay or a discrete move; raise :class:`StepError`."""
    if isinstance(s, Delay):
        d = Fraction(s.d)
        if d < 0:
            raise StepError("invariant", "negative delay")
        if not can_delay(a, c, d):
            raise StepError("invariant", f"delay {_fmt(d)} leaves the invariant of {a.locations[c.loc]}")
        return c.shifted(d)
    if not 0 <= s.edge < len(a.edges):
        raise StepError("edge", f"unknown edge {s.edge}")
    e = a.edges[s.edge]
    if e.src != c.loc:
        raise StepError("edge", f"edge {s.edge} does not leave {a.locations[c.loc]}")
    if not set(s.observed_resets) <= set(a.observed):
        raise StepError("edge", "only observed clocks may be reset by the environment")
    if not e.guard.contains(c.val):
        raise StepError("guard", f"guard of edge {s.edge} is false at {c.render(a)}")
    resets = e.resets | frozenset(s.observed_resets)
    val = tuple(Fraction(0) if n in resets else v for n, v in zip(a.clocks.names, c.val))
    if not invariant_holds(a, e.dst, val):
        raise StepError("invariant", f"target invariant of {a.locations[e.dst]} violated")
    return Config(e.dst, val)


def replay(a: Automaton, r: Run) -> Config:
    c = r.start
    for s in r.steps:
        c = step(a, c, s)
    return c


@dataclass(frozen=True)
class Trace:
    """Canonical trace ``d0 · a1 · d1 · … · an · dn`` (``len(delays) == n + 1``)."""

    delays: tuple
    actions: tuple

    def __post_init__(self):
        if len(self.delays) != len(self.actions) + 1:
            raise ValueError("a trace alternates delays and actions, starting and ending with a delay")
        object.__setattr__(self, "delays", tuple(Fraction(d) for d in self.delays))
        if any(d < 0 for d in self.delays):
            raise ValueError("negative delay in trace")

    @classmethod
    def empty(cls) -> "Trace":
        return cls((Fraction(0),), ())

    def __len__(self) -> int:
        return len(self.actions)

    def then_delay(self, d) -> "Trace":
        return Trace(self.delays[:-1] + (self.delays[-1] + Fraction(d),), self.actions)

    def then_action(self, a: str) -> "Trace":
        return Trace(self.delays + (Fraction(0),), self.actions + (a,))

    def concat(self, other: "Trace") -> "Trace":
        t = self.then_delay(other.delays[0])
        for a, d in zip(other.actions, other.delays[1:]):
            t = t.then_action(a).then_delay(d)
        return t

    def prefix(self, k: int) -> "Trace":
        """First ``k`` actions, followed by the delay after the ``k``-th."""
        return Trace(self.delays[: k + 1], self.actions[:k])

    def duration(self) -> Fraction:
        return sum(self.delays, Fraction(0))

    def denominator(self) -> int:
        return math.lcm(*(d.denominator for d in self.delays))

    def after_last(self, action: str) -> "Trace":
        """Suffix following the last occurrence of ``action`` (whole trace if absent)."""
        idx = [k for k, a in enumerate(self.actions) if a == action]
        if not idx:
            return self
        k = idx[-1] + 1
        return Trace(self.delays[k:], self.actions[k:])

    def __str__(self) -> str:
        parts = [_fmt(self.delays[0])]
        for a, d in zip(self.actions, self.delays[1:]):
            parts += [a, _fmt(d)]
        if self.actions and not self.delays[-1]:
            parts.pop()  # a trailing zero delay is implicit
        return " · ".join(parts)


def parse_trace(text: str) -> Trace:
    """Read ``1/2 · ship2 · 1 · end2``; ``.`` and ``*`` also separate items.

    Adjacent delays are summed, a missing leading or trailing delay is 0.
    """
    norm = text.replace("·", " ").replace("*", " ")
    items = norm.split()
    t = Trace.empty()
    for it in items:
        if it in (".",):
            continue
        try:
            d = Fraction(it)
        except ValueError:
            t = t.then_action(it.rstrip("?!"))
        else:
            t = t.then_delay(d)
    return t


def trace_of(a: Automaton, r: Run) -> Trace:
    """Observable trace of a run: delays summed, internal actions erased."""
    t = Trace.empty()
    for s in r.steps:
        if isinstance(s, Delay):
            t = t.then_delay(s.d)
        else:
            act = a.edges[s.edge].action
            if a.action(act).observable:
                t = t.then_action(act)
    return t


def trace_of_labels(labels: Iterable, internal: Iterable[str] = ()) -> Trace:
    """Trace of a raw label sequence (numbers are delays, strings actions)."""
    internal = set(internal)
    t = Trace.empty()
    for x in labels:
        if isinstance(x, str):
            if x not in internal:
                t = t.then_action(x)
        else:
            t = t.then_delay(x)
    return t
