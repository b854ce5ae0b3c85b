"""Implementation models and the mutation harness."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..clockspace import Federation
from ..model.analysis import Report
from ..model.automaton import Automaton, Edge, ModelError
from ..model.completion import absorb_inputs
from ..model.parser import parse_guard


class BlockingImplError(ModelError):
    """The mutated implementation can block time."""


@dataclass(frozen=True)
class Mutation:
    """One edit of an implementation.

    ``kind`` is one of ``add_edge``, ``delete_edge``, ``set_guard``,
    ``set_resets`` and ``set_invariant``.  Edges are selected by source
    location and action, optionally narrowed by target location.
    """

    kind: str
    src: str
    action: str | None = None
    dst: str | None = None
    guard: str | None = None
    resets: tuple | None = None

    def __str__(self) -> str:
        parts = [self.kind, self.src]
        for k in ("action", "dst", "guard", "resets"):
            v = getattr(self, k)
            if v is not None:
                parts.append(f"{k}={v}")
        return " ".join(parts)


def add_edge(src, guard, action, resets, dst) -> Mutation:
    return Mutation("add_edge", src, action, dst, guard, tuple(resets))


def delete_edge(src, action, dst=None) -> Mutation:
    return Mutation("delete_edge", src, action, dst)


def set_guard(src, action, guard, dst=None) -> Mutation:
    return Mutation("set_guard", src, action, dst, guard)


def set_resets(src, action, resets, dst=None) -> Mutation:
    return Mutation("set_resets", src, action, dst, None, tuple(resets))


def set_invariant(loc, guard) -> Mutation:
    return Mutation("set_invariant", loc, guard=guard)


@dataclass
class ImplModel:
    automaton: Automaton
    policy: str = "explicit"
    mutations: tuple = ()
    check: Report | None = None
    conformant: bool | None = None
    witness: str | None = None
    notes: list = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.automaton.name


def _select(a: Automaton, m: Mutation) -> list:
    src = a.loc(m.src)
    out = [e for e in a.edges_from(src) if e.action == m.action and (m.dst is None or a.locations[e.dst] == m.dst)]
    if not out:
        raise ModelError(f"mutation {m} matches no edge")
    return out


def apply_mutation(a: Automaton, m: Mutation) -> Automaton:
    edges = list(a.edges)
    if m.kind == "add_edge":
        g = parse_guard(m.guard or "true", a.clocks)
        edges.append(Edge(0, a.loc(m.src), g, m.action, frozenset(m.resets or ()), a.loc(m.dst)))
        if not a.has_action(m.action):
            raise ModelError(f"unknown action {m.action!r}")
        return a.evolve(edges=edges)
    if m.kind == "set_invariant":
        invs = list(a.invariants)
        invs[a.loc(m.src)] = parse_guard(m.guard or "true", a.clocks)
        return a.evolve(invariants=tuple(invs))
    chosen = {e.id for e in _select(a, m)}
    if m.kind == "delete_edge":
        edges = [e for e in edges if e.id not in chosen]
    elif m.kind == "set_guard":
        g = parse_guard(m.guard or "true", a.clocks)
        edges = [Edge(e.id, e.src, g, e.action, e.resets, e.dst) if e.id in chosen else e for e in edges]
    elif m.kind == "set_resets":
        edges = [Edge(e.id, e.src, e.guard, e.action, frozenset(m.resets), e.dst) if e.id in chosen else e for e in edges]
    else:
        raise ModelError(f"unknown mutation kind {m.kind!r}")
    return a.evolve(edges=edges)


def check_impl(a: Automaton) -> Report:
    """Input-completeness and non-blocking (time divergence without inputs)."""
    from ..model.analysis import non_blocking_witness

    report = Report(f"implementation {a.name}")
    report.add("taio", a.is_taio())
    witness = None
    for l, inv in enumerate(a.invariants):
        for x in a.controllable:
            cover = Federation.empty(a.clocks)
            for e in a.edges_from(l):
                if e.action == x:
                    cover = cover | e.guard
            hole = inv - cover
            if not hole.is_empty():
                witness = f"({a.locations[l]}, {a.label_of(x)}, {hole.to_text()})"
                break
        if witness:
            break
    report.add("input_complete", witness is None, witness)
    w = non_blocking_witness(a)
    report.add("non_blocking", w is None, w)
    return report


def make_impl(base: Automaton, mutations=(), policy: str = "explicit", spec: Automaton | None = None, horizon: int = 8) -> ImplModel:
    """Apply ``mutations`` to ``base`` and input-complete the result.

    With ``policy="absorb"`` missing inputs are absorbed by self-loops; with
    ``"explicit"`` the model must already be input-complete.  A blocking
    result raises :class:`BlockingImplError`.  When ``spec`` is given the
    bounded tioco oracle is run and its verdict recorded.
    """
    a = base
    for m in mutations:
        a = apply_mutation(a, m)
    if policy == "absorb":
        a = absorb_inputs(a)
    elif policy != "explicit":
        raise ValueError(f"unknown completion policy {policy!r}")
    if a.role != "impl":
        a = a.evolve(role="impl")
    rep = check_impl(a)
    nb = rep.get("non_blocking")
    if not nb.ok:
        raise BlockingImplError(f"{a.name} blocks at {nb.witness}")
    model = ImplModel(a, policy, tuple(mutations), rep)
    if not rep.get("input_complete").ok:
        model.notes.append(f"not input-complete: {rep.get('input_complete').witness}")
    if spec is not None:
        from ..semantics.oracles import bounded_tioco

        r = bounded_tioco(a, spec, horizon)
        model.conformant = r.ok
        model.witness = None if r.ok else f"{r.witness} then {r.action}"
    return model
