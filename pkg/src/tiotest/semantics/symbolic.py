"""Symbolic semantics over zones: reach, after, enab/elapse/out/in."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations
from typing import Iterable, Sequence

from ..clockspace import ClockSet, Federation, SymbolicStateSet, Zone, atom, bound
from ..model.automaton import Automaton
from .core import Config, Trace

T_CLOCK = "@t"


class ReachError(ValueError):
    """The initial configuration violates the initial invariant."""


class ZoneView:
    """Zone-level view of an automaton, possibly over extra clocks and scaled.

    ``scale`` multiplies every model constant so that delays that are
    multiples of ``1/scale`` become integers.
    """

    def __init__(self, a: Automaton, extra: Sequence[str] = (), scale: int = 1):
        self.a = a
        self.scale = scale
        self.clocks = ClockSet(a.clocks.names + tuple(extra))
        self.inv = []
        for f in a.invariants:
            f = f.scaled(scale).embed(self.clocks)
            self.inv.append(f.zones[0] if f.zones else None)
        self.guard = [e.guard.scaled(scale).embed(self.clocks) for e in a.edges]
        self.reset_idx = [[self.clocks.index(c) for c in sorted(e.resets)] for e in a.edges]
        self.observed_idx = [self.clocks.index(c) for c in a.observed]

    def within_inv(self, loc: int, z: Zone | None) -> Zone | None:
        inv = self.inv[loc]
        if z is None or inv is None:
            return None
        return z.intersect(inv)

    def delayed(self, loc: int, z: Zone, cap: Zone | None = None) -> Zone | None:
        """Time closure of ``z`` inside the (convex) invariant and ``cap``."""
        w = self.within_inv(loc, z.up())
        if w is not None and cap is not None:
            w = w.intersect(cap)
        return w

    def fire(self, edge_id: int, z: Zone, extra_resets: Iterable[int] = ()) -> list:
        """Zones reached by taking the edge from ``z`` (target invariant applied)."""
        e = self.a.edges[edge_id]
        out = []
        for g in self.guard[edge_id].zones:
            w = z.intersect(g)
            if w is None:
                continue
            w = w.reset(list(self.reset_idx[edge_id]) + list(extra_resets))
            w = self.within_inv(e.dst, w)
            if w is not None:
                out.append(w)
        return out


class _Passed:
    """Per-location zone lists with inclusion checking."""

    def __init__(self):
        self.zones = {}

    def add(self, loc: int, z: Zone) -> bool:
        lst = self.zones.setdefault(loc, [])
        if any(z.is_subset(w) for w in lst):
            return False
        lst[:] = [w for w in lst if not w.is_subset(z)]
        lst.append(z)
        return True

    def items(self):
        for loc, lst in self.zones.items():
            for z in lst:
                yield loc, z

    def to_states(self, clocks: ClockSet, nlocs: int, scale: int = 1) -> SymbolicStateSet:
        return SymbolicStateSet(clocks, nlocs, {l: Federation.of(clocks, zs) for l, zs in self.zones.items()}, scale)


def _observed_subsets(view: ZoneView):
    idx = view.observed_idx
    return chain.from_iterable(combinations(idx, k) for k in range(len(idx) + 1))


def closure(view: ZoneView, start: Iterable, actions: set, cap: Zone | None = None, m: int | None = None) -> _Passed:
    """Close ``(loc, zone)`` pairs under delays and edges labelled in ``actions``."""
    passed = _Passed()
    work = []
    for loc, z in start:
        w = view.delayed(loc, z, cap)
        if w is not None:
            if m is not None:
                w = w.extrapolate(m)
            work.append((loc, w))
    while work:
        loc, z = work.pop()
        if not passed.add(loc, z):
            continue
        for e in view.a.edges_from(loc):
            if e.action not in actions:
                continue
            for obs in _observed_subsets(view):
                for w in view.fire(e.id, z, obs):
                    w = view.delayed(e.dst, w, cap)
                    if w is None:
                        continue
                    if m is not None:
                        w = w.extrapolate(m)
                    work.append((e.dst, w))
    return passed


def initial_zone(view: ZoneView) -> Zone:
    z = view.within_inv(view.a.initial, Zone.zero(view.clocks))
    if z is None:
        raise ReachError(f"initial invariant of {view.a.name!r} excludes the zero valuation")
    return z


def reach(a: Automaton, m: int | None = None) -> SymbolicStateSet:
    """Reachable configurations (forward zone graph with M-extrapolation)."""
    view = ZoneView(a)
    m = a.max_constant() if m is None else m
    passed = closure(view, [(a.initial, initial_zone(view))], set(x.name for x in a.actions), m=m)
    return passed.to_states(a.clocks, len(a.locations))


def reachable_locations(a: Automaton) -> set:
    return set(reach(a).locations())


def after(a: Automaton, sigma: Trace) -> SymbolicStateSet:
    """Configurations reachable by runs whose trace is ``sigma``.

    The result carries ``scale = lcm`` of the trace's delay denominators.
    """
    D = sigma.denominator()
    view = ZoneView(a, (T_CLOCK,), D)
    t = view.clocks.index(T_CLOCK)
    internal = set(a.internals)
    try:
        frontier = [(a.initial, initial_zone(view))]
    except ReachError:
        return SymbolicStateSet(a.clocks, len(a.locations), {}, D)
    for k, d in enumerate(sigma.delays):
        dk = int(d * D)
        cap = Zone.from_constraints(view.clocks, [(t, 0, bound(dk))])
        passed = closure(view, frontier, internal, cap)
        exact = []
        for loc, z in passed.items():
            w = z.constrain(0, t, bound(-dk))
            if w is not None:
                exact.append((loc, w))
        if k == len(sigma.actions):
            frontier = exact
            break
        act = sigma.actions[k]
        frontier = []
        for loc, z in exact:
            for e in a.edges_from(loc):
                if e.action != act:
                    continue
                for obs in _observed_subsets(view):
                    for w in view.fire(e.id, z, list(obs) + [t]):
                        frontier.append((e.dst, w))
        if not frontier:
            break
    sets = {}
    for loc, z in frontier:
        sets.setdefault(loc, []).append(z.project(a.clocks))
    return SymbolicStateSet(a.clocks, len(a.locations), {l: Federation.of(a.clocks, zs) for l, zs in sets.items()}, D)


def config_set(a: Automaton, c: Config) -> SymbolicStateSet:
    """The singleton ``{c}`` as a scaled symbolic set."""
    D = math.lcm(*(Fraction(v).denominator for v in c.val)) if c.val else 1
    cons = []
    for name, v in zip(a.clocks.names, c.val):
        cons += atom(a.clocks, name, "=", int(Fraction(v) * D))
    z = Zone.from_constraints(a.clocks, cons)
    return SymbolicStateSet(a.clocks, len(a.locations), {c.loc: Federation.of(a.clocks, [z])}, D)


# delay sets ---------------------------------------------------------------
@dataclass(frozen=True)
class Interval:
    lo: Fraction
    lo_closed: bool
    hi: Fraction | None  # None: unbounded
    hi_closed: bool

    def contains(self, d) -> bool:
        d = Fraction(d)
        if d < self.lo or (d == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return d < self.hi or (d == self.hi and self.hi_closed)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        if self.hi is None:
            return f"{left}{_q(self.lo)}, inf)"
        right = "]" if self.hi_closed else ")"
        if self.lo == self.hi:
            return f"{{{_q(self.lo)}}}"
        return f"{left}{_q(self.lo)}, {_q(self.hi)}{right}"


def _q(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class DelaySet:
    """Finite union of intervals of nonnegative rationals."""

    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals = _merge(list(intervals))

    def contains(self, d) -> bool:
        return any(i.contains(d) for i in self.intervals)

    __contains__ = contains

    def is_empty(self) -> bool:
        return not self.intervals

    def union(self, other: "DelaySet") -> "DelaySet":
        return DelaySet(self.intervals + other.intervals)

    def sup(self):
        """Least upper bound (``None`` when unbounded)."""
        if not self.intervals:
            return Fraction(0)
        return self.intervals[-1].hi

    def __eq__(self, other) -> bool:
        return isinstance(other, DelaySet) and self.intervals == other.intervals

    def __str__(self) -> str:
        return " u ".join(str(i) for i in self.intervals) if self.intervals else "{}"

    __repr__ = __str__


def _merge(items: list) -> list:
    def key(i):
        return (i.lo, not i.lo_closed)

    items.sort(key=key)
    out = []
    for i in items:
        if out:
            p = out[-1]
            touches = p.hi is None or i.lo < p.hi or (i.lo == p.hi and (p.hi_closed or i.lo_closed))
            if touches:
                if p.hi is None or (i.hi is not None and (i.hi < p.hi or (i.hi == p.hi and p.hi_closed))):
                    continue
                out[-1] = Interval(p.lo, p.lo_closed, i.hi, i.hi_closed if i.hi != p.hi else (i.hi_closed or p.hi_closed))
                continue
        out.append(i)
    return out


def _zone_interval(z: Zone, k: int, scale: int) -> Interval:
    n = z.dim
    hi_raw = z.d[k * n]
    lo_raw = z.d[k]
    lo = Fraction(-(lo_raw >> 1), scale)
    if hi_raw >= (1 << 59):
        return Interval(lo, bool(lo_raw & 1), None, False)
    return Interval(lo, bool(lo_raw & 1), Fraction(hi_raw >> 1, scale), bool(hi_raw & 1))


def _start_of(a: Automaton, states: SymbolicStateSet | Config) -> SymbolicStateSet:
    return config_set(a, states) if isinstance(states, Config) else states


def elapse(a: Automaton, states) -> DelaySet:
    """Delays observable (through internal moves) from a configuration or set.

    Delays beyond the largest relevant constant are summarized as one
    unbounded interval once that constant can be exceeded.
    """
    s = _start_of(a, states)
    D = s.scale
    view = ZoneView(a, (T_CLOCK,), D)
    t = view.clocks.index(T_CLOCK)
    start = []
    for loc, fed in s.items():
        for z in fed.embed(view.clocks).reset([T_CLOCK]).zones:
            start.append((loc, z))
    m = max(a.max_constant() * D, max((f.max_constant() for _, f in s.items()), default=0)) + D
    passed = closure(view, start, set(a.internals), m=m)
    return DelaySet(_zone_interval(z, t, D) for _, z in passed.items())


def enab(a: Automaton, states) -> list:
    """Edges enabled from some configuration of ``states`` (ids, sorted)."""
    s = _start_of(a, states)
    view = ZoneView(a, (), s.scale)
    out = []
    for loc, fed in s.items():
        for e in a.edges_from(loc):
            if any(view.fire(e.id, z) for z in fed.zones):
                out.append(e.id)
    return sorted(out)


def out_(a: Automaton, states):
    """Enabled outputs and observable delays: ``(set of actions, DelaySet)``."""
    acts = {a.edges[k].action for k in enab(a, states)}
    return {x for x in acts if a.action(x).kind == "output"}, elapse(a, states)


def in_(a: Automaton, states) -> set:
    """Inputs (and the restart) that can be proposed."""
    acts = {a.edges[k].action for k in enab(a, states)}
    return {x for x in acts if a.action(x).controllable}
