"""Test-case preparation and conformance campaigns."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..game.hierarchy import RankMap, build_hierarchy
from ..game.strategy import Strategy, Unsatisfiable, synthesize
from ..game.view import GameView
from ..model.analysis import check_deterministic
from ..model.automaton import Automaton, ModelError
from ..model.parser import parse_model
from ..model.product import product
from ..model.tester import NondeterministicError, build_tester
from ..semantics.core import Trace, parse_trace
from ..semantics.oracles import bounded_trace_equiv
from ..semantics.symbolic import after
from .impl import ImplModel
from .simulate import FAIL, PASS, RUNNING, Budget, run_test

PROPERTIES = ("soundness", "strictness", "precision", "exhaustiveness")


@dataclass
class TestCase:
    name: str
    spec: Automaton
    tp: Automaton
    dp: Automaton
    tester: Automaton
    view: GameView
    ranks: RankMap
    strategy: Strategy
    notes: list = field(default_factory=list)

    __test__ = False


def prepare(spec: Automaton, tp: Automaton, dp: Automaton | None = None,
            det_spec: Automaton | None = None, horizon: int = 6) -> TestCase:
    """Build the tester, rank hierarchy and strategy for ``spec`` and ``tp``.

    A supplied ``dp`` (or ``det_spec``, whose product with ``tp`` is used)
    must be deterministic and trace equivalent, accept sets included, to
    the product of ``spec`` and ``tp`` up to ``horizon`` actions.
    """
    p = product(spec, tp)
    notes = []
    cand = dp
    if cand is None and det_spec is not None:
        cand = product(det_spec, tp)
    if cand is None:
        if not check_deterministic(p).ok:
            raise NondeterministicError(f"{p.name}: product is not deterministic; supply a deterministic product")
        cand = p
    else:
        rep = check_deterministic(cand)
        if not rep.ok:
            raise NondeterministicError(f"{cand.name}: {rep.first_failure()}")
        eq = bounded_trace_equiv(p, cand, horizon, compare_accept=True)
        if not eq.ok:
            raise ModelError(f"{cand.name} differs from {p.name}: {eq}")
        notes.append(f"deterministic product checked equivalent up to {horizon} actions")
    tester = build_tester(cand)
    g = GameView(tester)
    ranks = build_hierarchy(g)
    if not ranks.satisfiable:
        raise Unsatisfiable(f"{tp.name}: accepting states not forceable from every reachable state")
    f = synthesize(g, ranks)
    return TestCase(f"{spec.name}/{tp.name}", spec, tp, cand, tester, g, ranks, f, notes)


def exhaustiveness_tp(spec: Automaton, sigma: Trace | str, delta=None, b: str | None = None) -> Automaton:
    """Test purpose accepting exactly the trace ``sigma · delta · b``.

    ``sigma`` may already end with the output (pass ``delta=None``).  Only
    the part after the last restart is kept.  Delays must be integers; a
    fresh proper clock measures each one and every deviation falls into a
    sink.
    """
    t = parse_trace(sigma) if isinstance(sigma, str) else sigma
    if b is not None:
        t = t.then_delay(Fraction(delta or 0)).then_action(b)
    full = t
    if not t.actions:
        raise ValueError("the trace must end with an output")
    if after(spec, full).is_empty():
        raise ModelError(f"{full} is not a trace of {spec.name}")
    last = t.actions[-1]
    if not spec.has_action(last) or spec.action(last).kind != "output":
        raise ModelError(f"{last!r} is not an output of {spec.name}")
    if spec.restart:
        t = t.after_last(spec.restart)
    if any(d.denominator != 1 for d in t.delays):
        raise ValueError("exhaustiveness test purposes need integer delays")
    n = len(t.actions)
    label = [str(int(t.delays[0]))]
    for a, d in zip(t.actions, t.delays[1:]):
        label += [a, str(int(d))] if d else [a]
    lines = [
        f"automaton exh_{spec.name}_{'_'.join(label)}",
        "role test_purpose",
    ]
    for kind in ("inputs", "outputs", "internals"):
        names = [x for x in getattr(spec, kind) if x != spec.restart]
        if names:
            lines.append(f"{kind} {', '.join(names)}")
    if spec.restart:
        lines.append(f"restart {spec.restart}")
    ck = "tp"
    while ck in spec.clocks:
        ck += "_"
    lines.append(f"clocks {ck}")
    if spec.proper:
        lines.append(f"observed {', '.join(spec.proper)}")
    lines += ["initial q0", ""]
    locs = [f"q{k}" for k in range(n)] + ["Accept", "Sink"]
    lines += [f"location {q} {{ true }}" for q in locs]
    lines.append("")
    obs = [x for x in spec.observable if x != spec.restart]
    for k in range(n):
        q, nxt = locs[k], locs[k + 1]
        d, a = int(t.delays[k]), t.actions[k]
        for x in obs:
            if x == a:
                lines.append(f"edge {q} -- {ck} = {d} / {spec.label_of(x)} / {{{ck}}} -> {nxt}")
                dev = f"{ck} < {d} || {ck} > {d}" if d else f"{ck} > 0"
                lines.append(f"edge {q} -- {dev} / {spec.label_of(x)} / {{}} -> Sink")
            else:
                lines.append(f"edge {q} -- true / {spec.label_of(x)} / {{}} -> Sink")
    for q in ("Accept", "Sink"):
        for x in obs:
            lines.append(f"edge {q} -- true / {spec.label_of(x)} / {{}} -> {q}")
    for q in locs:
        for x in spec.internals:
            lines.append(f"edge {q} -- true / {x} / {{}} -> {q}")
        if spec.restart:
            lines.append(f"edge {q} -- true / {spec.restart} / {{{ck}}} -> q0")
    lines += ["", "accept Accept", ""]
    return parse_model("\n".join(lines))


@dataclass
class Row:
    case: str
    impl: str
    seed: int
    verdict: str
    restarts: int
    steps: int
    trace: str
    target: str | None = None

    def record(self) -> dict:
        return {"kind": "run", "case": self.case, "impl": self.impl, "seed": self.seed,
                "verdict": self.verdict, "restarts": self.restarts, "steps": self.steps,
                "trace": self.trace, "target": self.target}


@dataclass
class CampaignReport:
    rows: list = field(default_factory=list)
    flags: dict = field(default_factory=lambda: dict.fromkeys(PROPERTIES, True))
    violations: list = field(default_factory=list)
    behaviours: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    @property
    def inconclusive(self) -> bool:
        return bool(self.rows) and all(r.verdict == RUNNING for r in self.rows)

    def violated(self) -> list:
        return [p for p in PROPERTIES if not self.flags[p]]

    def flag(self, prop: str, detail: str) -> None:
        self.flags[prop] = False
        self.violations.append((prop, detail))

    def count(self, verdict: str, impl: str | None = None) -> int:
        return sum(1 for r in self.rows if r.verdict == verdict and (impl is None or r.impl == impl))

    def table(self) -> str:
        keys = sorted({(r.case, r.impl, r.target) for r in self.rows}, key=str)
        wc = max([len("case")] + [len(k[0]) for k in keys])
        wi = max([len("impl")] + [len(k[1]) for k in keys])
        out = [f"{'case':<{wc}}  {'impl':<{wi}}  {'Pass':>5} {'Fail':>5} {'Running':>8}"]
        for case, impl, target in keys:
            sel = [r for r in self.rows if (r.case, r.impl, r.target) == (case, impl, target)]
            c = {v: sum(1 for r in sel if r.verdict == v) for v in (PASS, FAIL, RUNNING)}
            out.append(f"{case:<{wc}}  {impl:<{wi}}  {c[PASS]:>5} {c[FAIL]:>5} {c[RUNNING]:>8}")
        for p in PROPERTIES:
            out.append(f"{p}: {'ok' if self.flags[p] else 'VIOLATED'}")
        for p, d in self.violations:
            out.append(f"  {p}: {d}")
        if self.inconclusive:
            out.append("inconclusive budget: every run is still Running")
        return "\n".join(out)

    def records(self) -> list:
        recs = [r.record() for r in self.rows]
        recs.append({"kind": "summary", **{p: self.flags[p] for p in PROPERTIES},
                     "violations": [list(v) for v in self.violations],
                     "inconclusive": self.inconclusive})
        return recs


def _accepts(dp: Automaton, t: Trace) -> bool:
    s = after(dp, t)
    return any(not s[l].is_empty() for l in dp.accept)


def _execute(report, case: TestCase, impl: ImplModel, seeds, budget, target=None, inject_fail=False):
    for seed in seeds:
        verdict, beh = run_test(case.view, case.strategy, impl, budget, seed)
        if inject_fail and impl.conformant:
            verdict, inject_fail = FAIL, False
        report.rows.append(Row(case.name, impl.name, seed, verdict, beh.restarts, beh.steps, str(beh.trace), target))
        report.behaviours.append((case, impl, seed, verdict, beh))
        in_spec = not after(case.spec, beh.trace).is_empty()
        if verdict == FAIL and impl.conformant:
            report.flag("soundness", f"{impl.name} seed {seed}: Fail on a conformant implementation ({beh.trace})")
        if verdict != FAIL and not in_spec:
            report.flag("strictness", f"{impl.name} seed {seed}: {beh.trace} is not a specified trace")
        if verdict == PASS and not (in_spec and _accepts(case.dp, beh.trace)):
            report.flag("precision", f"{impl.name} seed {seed}: Pass on {beh.trace}")


def campaign(spec: Automaton, tps, impls, budget: Budget = Budget(), seeds=range(1, 21), *,
             dp: Automaton | None = None, det_spec: Automaton | None = None,
             targets=(), inject_fail: bool = False) -> CampaignReport:
    """Run every implementation against every test purpose for every seed.

    ``targets`` lists ``(impl, trace)`` pairs: each trace ends with the
    output that exposes the implementation, and the campaign checks that
    the matching exhaustiveness test purpose yields at least one Fail.
    ``inject_fail`` turns the first run of a conformant implementation into
    a Fail, as a self-test of the soundness check.
    """
    report = CampaignReport()
    impls = list(impls)
    if not impls:
        return report
    seeds = list(seeds)
    for tp in tps:
        case = prepare(spec, tp, dp=dp, det_spec=det_spec)
        for impl in impls:
            _execute(report, case, impl, seeds, budget, inject_fail=inject_fail)
            inject_fail = inject_fail and not impl.conformant
    for impl, trace in targets:
        xtp = exhaustiveness_tp(spec, trace)
        case = prepare(spec, xtp, det_spec=det_spec)
        before = len(report.rows)
        _execute(report, case, impl, seeds, budget, target=str(trace))
        if not any(r.verdict == FAIL for r in report.rows[before:]):
            report.flag("exhaustiveness", f"{impl.name}: no Fail with the test purpose for {trace}")
    return report
