"""Synchronized product of OTAIOs."""

from __future__ import annotations

from ..clockspace import ClockSet
from .automaton import Automaton, Edge, ModelError


def _signature(a: Automaton) -> set:
    return {(x.name, x.kind) for x in a.actions}


def product(a: Automaton, b: Automaton, reachable_only: bool = True) -> Automaton:
    """Product ``a x b`` with locations named ``"la.lb"``.

    Edges synchronize on every action (internal ones included), guards and
    invariants are conjoined and resets united.  A product location is
    accepting when its ``b`` component is.  Unless ``reachable_only`` is
    false, only locations reached by the forward zone graph are kept.
    """
    if _signature(a) != _signature(b):
        diff = sorted(_signature(a) ^ _signature(b))
        raise ModelError(f"action alphabets differ: {diff}")
    proper = tuple(a.proper) + tuple(c for c in b.proper if c not in a.proper)
    observed = tuple(c for c in a.observed + b.observed if c not in proper)
    observed = tuple(dict.fromkeys(observed))
    clocks = ClockSet(proper + observed)
    for c in b.observed + a.observed:
        if c not in clocks:
            raise ModelError(f"observed clock {c!r} missing from the product")

    pairs = [(la, lb) for la in range(len(a.locations)) for lb in range(len(b.locations))]
    index = {p: k for k, p in enumerate(pairs)}
    inv = [a.invariants[la].embed(clocks) & b.invariants[lb].embed(clocks) for la, lb in pairs]
    edges = []
    for (la, lb), k in index.items():
        for ea in a.edges_from(la):
            for eb in b.edges_from(lb):
                if ea.action != eb.action:
                    continue
                g = ea.guard.embed(clocks) & eb.guard.embed(clocks)
                if g.is_empty():
                    continue
                dst = index[(ea.dst, eb.dst)]
                edges.append(Edge(len(edges), k, g, ea.action, ea.resets | eb.resets, dst))
    init = index[(a.initial, b.initial)]
    names = tuple(f"{a.locations[la]}.{b.locations[lb]}" for la, lb in pairs)
    accept = frozenset(k for k, (la, lb) in enumerate(pairs) if lb in b.accept)
    p = Automaton(
        name=f"{a.name}_x_{b.name}",
        role="product",
        locations=names,
        initial=init,
        actions=a.actions,
        proper=proper,
        observed=observed,
        invariants=tuple(inv),
        edges=tuple(edges),
        accept=accept,
    )
    return restrict_reachable(p) if reachable_only else p


def restrict_reachable(a: Automaton) -> Automaton:
    """Drop locations and edges that the forward zone graph never reaches."""
    from ..semantics.symbolic import reach

    r = reach(a)
    keep = [l for l in range(len(a.locations)) if not r[l].is_empty()]
    new = {l: k for k, l in enumerate(keep)}
    edges = []
    for e in a.edges:
        if e.src not in new or e.dst not in new:
            continue
        if (r[e.src] & e.guard).is_empty():
            continue
        edges.append(Edge(len(edges), new[e.src], e.guard, e.action, e.resets, new[e.dst]))
    return Automaton(
        name=a.name,
        role=a.role,
        locations=tuple(a.locations[l] for l in keep),
        initial=new[a.initial],
        actions=a.actions,
        proper=a.proper,
        observed=a.observed,
        invariants=tuple(a.invariants[l] for l in keep),
        edges=tuple(edges),
        accept=frozenset(new[l] for l in a.accept if l in new),
    )
