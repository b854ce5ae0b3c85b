"""Bounded trace oracles: trace equivalence and tioco.

Traces are explored one observable action at a time.  Alongside the
automaton clocks, trace clocks ``@z0 .. @zk`` record the time since the
start and since each observed action, so the timings compatible with an
action word form a federation over the trace clocks.  A point of that
federation maps back to a trace through ``d_j = z_j - z_{j+1}`` and
``d_k = z_k``.  Total time is bounded by ``@z0 <= T``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from ..clockspace import ClockSet, Federation, Zone, bound
from ..model.automaton import Automaton
from .core import Trace
from .symbolic import ReachError, ZoneView, closure, initial_zone


def zclocks(k: int) -> ClockSet:
    return ClockSet(tuple(f"@z{j}" for j in range(k + 1)))


def point_trace(point: dict, actions) -> Trace:
    """Trace encoded by a trace-clock valuation for the given action word."""
    k = len(actions)
    z = [Fraction(point[f"@z{j}"]) for j in range(k + 1)]
    delays = [z[j] - z[j + 1] for j in range(k)] + [z[k]]
    return Trace(tuple(delays), tuple(actions))


def restarts_are_fresh(a: Automaton) -> bool:
    """Every restart edge resets all proper clocks and returns to the start."""
    r = a.restart
    if r is None:
        return True
    return all(e.dst == a.initial and e.resets == frozenset(a.proper) for e in a.edges if e.action == r)


class _Explorer:
    """Symbolic after-sets of one automaton along action words."""

    def __init__(self, a: Automaton, T: int, horizon: int):
        self.a = a
        self.T = T
        self.internal = set(a.internals)
        self.views = [ZoneView(a, zclocks(k).names) for k in range(horizon + 1)]

    def _cap(self, k: int) -> Zone:
        v = self.views[k]
        return Zone.from_constraints(v.clocks, [(v.clocks.index("@z0"), 0, bound(self.T))])

    def _close(self, k: int, states) -> list:
        return list(closure(self.views[k], states, self.internal, self._cap(k)).items())

    def start(self) -> list:
        try:
            z = initial_zone(self.views[0])
        except ReachError:
            return []
        return self._close(0, [(self.a.initial, z)])

    def fire(self, k: int, states, b: str) -> list:
        """States right after ``b`` (at the same instant), over level ``k``."""
        v = self.views[k]
        out = []
        for loc, z in states:
            for e in self.a.edges_from(loc):
                if e.action != b:
                    continue
                for obs in _subsets(v.observed_idx):
                    for w in v.fire(e.id, z, obs):
                        out.append((e.dst, w))
        return out

    def advance(self, k: int, fired) -> list:
        nxt = self.views[k + 1]
        zk = nxt.clocks.index(f"@z{k + 1}")
        start = [(l, z.embed(nxt.clocks).reset([zk])) for l, z in fired]
        return self._close(k + 1, start)

    def timings(self, k: int, states, locs=None) -> Federation:
        zc = zclocks(k)
        return Federation.of(zc, [z.project(zc) for l, z in states if locs is None or l in locs])


def _subsets(idx):
    from itertools import chain, combinations

    return chain.from_iterable(combinations(idx, r) for r in range(len(idx) + 1))


@dataclass
class OracleReport:
    ok: bool
    witness: Trace | None = None
    action: str | None = None
    reason: str = ""
    explored: int = 0
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"ok ({self.explored} action words explored)"
        what = f" then {self.action}" if self.action else ""
        return f"violation: {self.reason} at {self.witness}{what}"


def _default_T(a: Automaton, b: Automaton, horizon: int) -> int:
    return max(a.max_constant(), b.max_constant()) + horizon + 1


def _alphabet(a: Automaton) -> list:
    return sorted(a.observable)


def bounded_trace_equiv(a: Automaton, b: Automaton, horizon: int = 8, T: int | None = None, compare_accept: bool = False) -> OracleReport:
    """Compare timed traces of ``a`` and ``b`` with at most ``horizon`` actions.

    With ``compare_accept`` the traces ending in accepting locations are
    compared as well.  Words are not extended past a restart when both
    automata restart freshly (the continuation is then history-free).
    """
    if set(a.observable) != set(b.observable):
        diff = sorted(set(a.observable) ^ set(b.observable))
        return OracleReport(False, Trace.empty(), None, f"observable alphabets differ on {diff}")
    T = _default_T(a, b, horizon) if T is None else T
    xa, xb = _Explorer(a, T, horizon), _Explorer(b, T, horizon)
    prune = restarts_are_fresh(a) and restarts_are_fresh(b)
    restart = a.restart
    report = OracleReport(True)
    queue = deque([((), xa.start(), xb.start())])
    while queue:
        word, sa, sb = queue.popleft()
        k = len(word)
        report.explored += 1
        pa, pb = xa.timings(k, sa), xb.timings(k, sb)
        bad = (pa - pb) | (pb - pa)
        if compare_accept and bad.is_empty():
            qa, qb = xa.timings(k, sa, a.accept), xb.timings(k, sb, b.accept)
            bad = (qa - qb) | (qb - qa)
            if not bad.is_empty():
                return OracleReport(False, point_trace(bad.sample(), word), None, "accepting traces differ", report.explored)
        if not bad.is_empty():
            return OracleReport(False, point_trace(bad.sample(), word), None, "traces differ", report.explored)
        if pa.is_empty() or k == horizon or (prune and word and word[-1] == restart):
            continue
        for act in _alphabet(a):
            fa, fb = xa.fire(k, sa, act), xb.fire(k, sb, act)
            if fa or fb:
                queue.append((word + (act,), xa.advance(k, fa), xb.advance(k, fb)))
    return report


def bounded_tioco(impl: Automaton, spec: Automaton, horizon: int = 8, T: int | None = None) -> OracleReport:
    """Check ``out(impl after s) <= out(spec after s)`` for bounded spec traces.

    On failure the witness is the spec trace ``s`` and ``action`` names the
    unexpected output, or is ``"delay"`` when ``s`` extended by its final
    delay is not a spec trace.
    """
    T = _default_T(impl, spec, horizon) if T is None else T
    xi, xs = _Explorer(impl, T, horizon), _Explorer(spec, T, horizon)
    prune = restarts_are_fresh(impl) and restarts_are_fresh(spec)
    restart = spec.restart
    outputs = set(impl.outputs)
    report = OracleReport(True)
    if set(impl.outputs) - set(spec.outputs):
        report.notes.append("impl outputs outside the spec alphabet are checked as unspecified")
    queue = deque([((), xi.start(), xs.start())])
    while queue:
        word, si, ss = queue.popleft()
        k = len(word)
        report.explored += 1
        ps = xs.timings(k, ss)
        if ps.is_empty():
            continue
        pi = xi.timings(k, si)
        late = (pi & ps.up()) - ps
        if not late.is_empty():
            return OracleReport(False, point_trace(late.sample(), word), "delay", "unspecified delay", report.explored)
        for b in sorted(outputs):
            fi = xi.fire(k, si, b)
            if not fi:
                continue
            fs = xs.fire(k, ss, b) if spec.has_action(b) else []
            zc = zclocks(k)
            oi = Federation.of(zc, [z.project(zc) for _, z in fi]) & ps
            os_ = Federation.of(zc, [z.project(zc) for _, z in fs])
            bad = oi - os_
            if not bad.is_empty():
                return OracleReport(False, point_trace(bad.sample(), word), b, "unspecified output", report.explored)
        if k == horizon or (prune and word and word[-1] == restart):
            continue
        for act in sorted(spec.observable):
            fs = xs.fire(k, ss, act)
            if not fs:
                continue
            fi = xi.fire(k, si, act) if impl.has_action(act) else []
            queue.append((word + (act,), xi.advance(k, fi), xs.advance(k, fs)))
    return report
