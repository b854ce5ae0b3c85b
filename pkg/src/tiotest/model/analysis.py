"""Structural analyses: specification and test-purpose validity, determinism."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..clockspace import Federation
from .automaton import Automaton


@dataclass
class Check:
    name: str
    ok: bool
    witness: str | None = None
    detail: str = ""

    def __str__(self) -> str:
        status = "pass" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        wit = f" witness {self.witness}" if self.witness else ""
        return f"{status} {self.name}{extra}{wit}"


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, ok: bool, witness=None, detail: str = "") -> Check:
        c = Check(name, bool(ok), witness, detail)
        self.checks.append(c)
        return c

    def __str__(self) -> str:
        return "\n".join([f"{self.subject}:"] + [f"  {c}" for c in self.checks])


def _restart_shape(a: Automaton, report: Report) -> None:
    r = a.restart
    bad = [e for e in a.edges if e.action == r and (e.dst != a.initial or e.resets != frozenset(a.proper))]
    wit = None
    if bad:
        e = bad[0]
        wit = f"edge {e.id} from {a.locations[e.src]}"
    report.add("restart_shape", not bad, wit, "restart edges reset all proper clocks and reach the initial location")


def _non_blocking(g, a: Automaton) -> str | None:
    """Witness node from which time cannot diverge without inputs, if any."""
    from ..semantics.regiongraph import DELAY

    inputs = set(a.controllable)

    def input_free(s):
        return s.edge == DELAY or a.edges[s.edge].action not in inputs

    divergent = set()
    for comp in g.sccs(input_free):
        members = set(comp)
        for k in comp:
            for s in g.succ[k]:
                if s.edge == DELAY and s.dst in members and (s.tick or s.dst == k):
                    divergent |= members
    ok = g.backward(divergent, input_free)
    miss = [k for k in range(len(g)) if k not in ok]
    return g.describe(miss[0]) if miss else None


def non_blocking_witness(a: Automaton, m: int | None = None) -> str | None:
    from ..semantics.regiongraph import RegionGraph

    return _non_blocking(RegionGraph(a, m), a)


def validate_spec(a: Automaton, m: int | None = None) -> Report:
    """Specification checks on the region graph of ``a``."""
    from ..semantics.regiongraph import DELAY, RegionGraph

    report = Report(f"specification {a.name}")
    report.add("role", a.role == "spec", None if a.role == "spec" else a.role)
    report.add("taio", a.is_taio(), ", ".join(a.observed) or None, "no observed clocks")
    report.add("restart_declared", a.restart is not None)
    _restart_shape(a, report)
    g = RegionGraph(a, m)
    if not len(g):
        report.add("initial_invariant", False, a.locations[a.initial])
        return report
    reachable = range(len(g))
    observable = set(a.observable)

    def input_free(s):
        return s.edge == DELAY or a.edges[s.edge].action not in inputs

    w = _non_blocking(g, a)
    report.add("non_blocking", w is None, w)

    seen_obs = [k for k in reachable if any(s.edge != DELAY and a.edges[s.edge].action in observable for s in g.succ[k])]
    ok_obs = g.backward(seen_obs)
    miss = [k for k in reachable if k not in ok_obs]
    report.add("repeatedly_observable", not miss, g.describe(miss[0]) if miss else None)

    r = a.restart
    with_r = [k for k in reachable if any(s.edge != DELAY and a.edges[s.edge].action == r for s in g.succ[k])]
    ok_r = g.backward(with_r)
    miss = [k for k in reachable if k not in ok_r]
    report.add("restart_reachable", not miss, g.describe(miss[0]) if miss else None)

    comps = g.sccs()
    root = next(c for c in comps if 0 in c)
    miss = [k for k in reachable if k not in set(root)]
    report.add("strongly_connected", not miss, g.describe(miss[0]) if miss else None, f"{len(comps)} components")
    return report


def validate_tp(tp: Automaton, spec: Automaton) -> Report:
    report = Report(f"test purpose {tp.name}")
    report.add("role", tp.role == "test_purpose", None if tp.role == "test_purpose" else tp.role)
    sig = lambda a: {(x.name, x.kind) for x in a.actions}
    diff = sorted(sig(tp) ^ sig(spec))
    report.add("alphabet", not diff, str(diff) if diff else None, "same actions as the specification")
    same = set(tp.observed) == set(spec.proper)
    report.add("observed_clocks", same, None if same else f"{sorted(tp.observed)} vs {sorted(spec.proper)}")
    witness = None
    for l, inv in enumerate(tp.invariants):
        if not inv.is_universe():
            witness = tp.locations[l]
            break
    report.add("invariants_true", witness is None, witness)
    witness = None
    for l in range(len(tp.locations)):
        for act in (x.name for x in tp.actions):
            cover = Federation.empty(tp.clocks)
            for e in tp.edges_from(l):
                if e.action == act:
                    cover = cover | e.guard
            hole = ~cover
            if not hole.is_empty():
                v = hole.sample()
                pt = ", ".join(f"{c}={v[c]}" for c in tp.clocks.names)
                witness = f"({tp.locations[l]}, {tp.label_of(act)}, {pt})"
                break
        if witness:
            break
    report.add("complete", witness is None, witness)
    _restart_shape(tp, report)
    return report


def check_deterministic(a: Automaton) -> Report:
    """Sufficient determinism check: no internal edges, disjoint same-action guards."""
    report = Report(f"determinism of {a.name}")
    internal = set(a.internals)
    bad = [e for e in a.edges if e.action in internal]
    report.add("no_internal_edges", not bad, f"edge {bad[0].id} {a.locations[bad[0].src]} -- {bad[0].action}" if bad else None)
    witness = None
    for l in range(len(a.locations)):
        out = a.edges_from(l)
        for i, e in enumerate(out):
            for f in out[i + 1:]:
                if e.action != f.action:
                    continue
                both = e.guard & f.guard & a.invariants[l]
                if not both.is_empty():
                    witness = f"edges {e.id} and {f.id} on {a.label(e)} at {a.locations[l]} overlap on {both.to_text()}"
                    break
            if witness:
                break
        if witness:
            break
    report.add("disjoint_guards", witness is None, witness)
    return report
