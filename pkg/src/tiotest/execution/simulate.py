"""Playing a strategy against a simulated implementation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..clockspace import region_of
from ..clockspace.federation import _simple_between
from ..game.strategy import PLAY, WAIT_MAX, Strategy
from ..game.view import GameView
from ..model.automaton import Automaton
from ..semantics.core import Config, Delay, Move, Run, Trace
from .impl import ImplModel
from .scheduler import FairScheduler, Option, Window

PASS, FAIL, RUNNING = "Pass", "Fail", "Running"


class SimulationError(RuntimeError):
    """The implementation misbehaved outside the conformance relation."""


@dataclass(frozen=True)
class Budget:
    restarts: int = 32
    steps: int = 10_000
    fairness: int = 3


@dataclass
class Behaviour:
    trace: Trace
    tester_run: Run
    impl_run: Run
    log: list
    restarts: int = 0
    steps: int = 0
    fired: dict = field(default_factory=dict)


def _q(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _pick(lo, lo_closed, hi, hi_closed) -> Fraction:
    """Simplest delay in a window, preferring its lower end."""
    if lo_closed:
        return Fraction(lo)
    if hi is None:
        return _simple_between(Fraction(lo), Fraction(lo) + 1)
    if hi == lo:
        return Fraction(lo)
    return _simple_between(Fraction(lo), Fraction(hi))


def _shift(val, d):
    return tuple(v + d for v in val)


def _reset(a: Automaton, val, resets):
    return tuple(Fraction(0) if c in resets else v for c, v in zip(a.clocks.names, val))


class _Side:
    def __init__(self, a: Automaton):
        self.a = a
        self.loc = a.initial
        self.val = tuple(Fraction(0) for _ in a.clocks.names)
        self.start = Config(self.loc, self.val)
        self.steps = []

    def delay(self, d: Fraction) -> None:
        if d:
            self.val = _shift(self.val, d)
            if self.steps and isinstance(self.steps[-1], Delay):
                self.steps[-1] = Delay(self.steps[-1].d + d)
            else:
                self.steps.append(Delay(d))

    def fire(self, edge_id: int) -> None:
        e = self.a.edges[edge_id]
        self.val = _reset(self.a, self.val, e.resets)
        self.loc = e.dst
        self.steps.append(Move(edge_id, frozenset()))

    def run(self) -> Run:
        return Run(self.start, tuple(self.steps))


def _enabled_now(a: Automaton, loc, val, action) -> list:
    out = []
    for e in a.edges_from(loc):
        if e.action == action and e.guard.contains(val):
            if a.invariants[e.dst].contains(_reset(a, val, e.resets)):
                out.append(e.id)
    return out


def _impl_options(a: Automaton, loc, val, limit: Fraction, m: int) -> list:
    region = region_of(val, m)
    inv = a.invariants[loc]
    out = []
    for e in a.edges_from(loc):
        if a.action(e.action).controllable:
            continue
        fed = e.guard & inv & a.invariants[e.dst].preimage_reset(e.resets)
        wins = []
        for z in fed.zones:
            w = z.delay_window(val)
            if w is None:
                continue
            lo, lo_c, hi, hi_c = w
            if hi is None or hi > limit:
                hi, hi_c = limit, True
            if lo > hi or (lo == hi and not (lo_c and hi_c)):
                continue
            wins.append(Window(lo, lo_c, hi, hi_c))
        if wins:
            out.append(Option(e.id, (loc, region, e.id), tuple(wins)))
    return out


def _max_delay(a: Automaton, loc, val):
    """Largest delay allowed by the invariant (``None`` when unbounded)."""
    inv = a.invariants[loc]
    if not inv.zones:
        return Fraction(0)
    w = inv.zones[0].delay_window(val)
    if w is None:
        return Fraction(0)
    return w[2]


def _first_fail(g: GameView, loc, val, d: Fraction):
    """Earliest delay in ``[0, d]`` entering the fail set, or ``None``."""
    best = None
    for z in g.vfail[loc].zones:
        w = z.delay_window(val)
        if w is None:
            continue
        lo, lo_c, hi, hi_c = w
        if lo > d or (lo == d and not lo_c):
            continue
        if lo_c:
            t = lo
        else:
            top = d if hi is None else min(d, hi)
            t = top if top == d and (hi is None or d < hi or hi_c) and top > lo else _simple_between(lo, top)
        if best is None or t < best:
            best = t
    return best


def run_test(g: GameView, f: Strategy, impl, budget: Budget = Budget(), seed: int = 0):
    """Execute the test case ``(g, f)`` against ``impl``; return ``(verdict, behaviour)``."""
    ia = impl.automaton if isinstance(impl, ImplModel) else impl
    ta = g.a
    shared = set(ta.observable)
    for x in ia.observable:
        if x not in shared:
            raise SimulationError(f"implementation action {x!r} is outside the shared alphabet")
    rng = random.Random(seed)
    sched = FairScheduler(rng, budget.fairness)
    tester, im = _Side(ta), _Side(ia)
    m_impl = max(ia.max_constant(), 1)
    trace = Trace.empty()
    log = []
    now = Fraction(0)
    restarts = 0
    steps = 0

    def emit(side, kind, detail):
        log.append(f"t={_q(now)} side={side} kind={kind} detail={detail}")

    def finish(verdict):
        emit("tester", "verdict", verdict)
        beh = Behaviour(trace, tester.run(), im.run(), log, restarts, steps, dict(sched.fired))
        return verdict, beh

    def verdict_now():
        if g.vfail.contains(tester.loc, tester.val):
            return FAIL
        if g.vpass.contains(tester.loc, tester.val):
            return PASS
        return None

    while True:
        v = verdict_now()
        if v:
            return finish(v)
        if steps >= budget.steps or restarts > budget.restarts:
            return finish(RUNNING)
        mv = f.decide(tester.loc, tester.val)
        if mv is None:
            raise SimulationError(f"strategy undefined at {ta.locations[tester.loc]} {tester.val}")
        if mv.kind == WAIT_MAX and mv.steps == 0:
            delay = Fraction(1)
        else:
            w = mv.target.zone(ta.clocks).delay_window(tester.val)
            if w is None:
                raise SimulationError("target region not reachable by delay")
            delay = _pick(*w)
        limit = delay
        fail_at = _first_fail(g, tester.loc, tester.val, delay)
        if fail_at is not None:
            limit = fail_at
        inv_max = _max_delay(ia, im.loc, im.val)
        must = inv_max is not None and inv_max < limit
        if must:
            limit = inv_max
        opts = _impl_options(ia, im.loc, im.val, limit, m_impl)
        choice = sched.choose(opts, must)
        steps += 1
        if choice is None and must:
            raise SimulationError(f"implementation blocks at {ia.locations[im.loc]} {im.val}")
        if choice is not None:
            opt, d = choice
            now += d
            tester.delay(d)
            im.delay(d)
            trace = trace.then_delay(d)
            if d:
                emit("impl", "delay", _q(d))
            e = ia.edges[opt.edge]
            im.fire(e.id)
            emit("impl", "move", f"{ia.label(e)} edge={e.id} loc={ia.locations[e.dst]}")
            if ia.action(e.action).observable:
                trace = trace.then_action(e.action)
                te = _enabled_now(ta, tester.loc, tester.val, e.action)
                if len(te) != 1:
                    raise SimulationError(f"tester has {len(te)} edges for {e.action} at {ta.locations[tester.loc]}")
                tester.fire(te[0])
            continue
        sched.tester_moved()
        if fail_at is not None:
            now += fail_at
            tester.delay(fail_at)
            im.delay(fail_at)
            trace = trace.then_delay(fail_at)
            emit("tester", "delay", _q(fail_at))
            continue
        now += delay
        tester.delay(delay)
        im.delay(delay)
        trace = trace.then_delay(delay)
        if delay:
            emit("tester", "delay", _q(delay))
        if mv.kind != PLAY:
            continue
        e = ta.edges[mv.edge]
        if not e.guard.contains(tester.val):
            raise SimulationError(f"strategy edge {e.id} disabled at {tester.val}")
        tester.fire(e.id)
        trace = trace.then_action(e.action)
        emit("tester", "move", f"{ta.label(e)} edge={e.id} loc={ta.locations[e.dst]}")
        ie = _enabled_now(ia, im.loc, im.val, e.action)
        if not ie:
            raise SimulationError(f"implementation refuses input {e.action} at {ia.locations[im.loc]}")
        k = ie[rng.randrange(len(ie))] if len(ie) > 1 else ie[0]
        im.fire(k)
        emit("impl", "move", f"{ia.label(ia.edges[k])} edge={k} loc={ia.locations[ia.edges[k].dst]}")
        if ta.action(e.action).kind == "restart":
            restarts += 1
