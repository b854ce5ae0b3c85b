"""Discrete, timed and final timed predecessors."""

from __future__ import annotations

from ..clockspace import Federation, SymbolicStateSet
from .view import GameView


def pred_discrete(g: GameView, s: SymbolicStateSet, actions) -> SymbolicStateSet:
    """Configurations with an ``actions``-edge into ``s``."""
    actions = set(actions)
    acc = {}
    for e in g.a.edges:
        if e.action not in actions:
            continue
        target = s[e.dst]
        if target.is_empty():
            continue
        pre = target.preimage_reset(e.resets) & e.guard
        if not pre.is_empty():
            acc[e.src] = acc[e.src] | pre if e.src in acc else pre
    return g.states(acc)


def _timed_convex(gz, bz) -> Federation:
    """Safe timed predecessors of zone ``gz`` avoiding zone ``bz``."""
    G = Federation.from_zone(gz)
    B = Federation.from_zone(bz)
    Bd = B.down()
    return (G.down() - Bd) | ((G & Bd) - B).down()


def timed_fed(G: Federation, B: Federation) -> Federation:
    if B.is_empty():
        return G.down()
    out = Federation.empty(G.clocks)
    for gz in G.zones:
        acc = None
        for bz in B.zones:
            part = _timed_convex(gz, bz)
            acc = part if acc is None else acc & part
            if acc.is_empty():
                break
        out = out | acc
    return out


def pred_timed(g: GameView, s: SymbolicStateSet, avoid: SymbolicStateSet | None = None) -> SymbolicStateSet:
    """Configurations that can let time pass into ``s`` without touching ``avoid``.

    The avoided set is checked over the whole closed delay interval,
    endpoints included.
    """
    if avoid is None:
        return s.down()
    return g.states({l: timed_fed(f, avoid[l]) for l, f in s.items()})


def pred_final(g: GameView, s: SymbolicStateSet) -> SymbolicStateSet:
    """States where every way out of ``s`` goes through failure.

    Either failure is reached before any output can leave ``s``, or no
    action can leave ``s`` at any future time.
    """
    bad = g.bad(s)
    cornered = pred_timed(g, g.vfail, pred_discrete(g, bad, g.uncontrollable))
    stuck = ~pred_timed(g, pred_discrete(g, bad, g.sigma))
    return cornered | stuck


def pi(g: GameView, s: SymbolicStateSet) -> SymbolicStateSet:
    """One controlled step towards ``s``."""
    reach = s | pred_discrete(g, s, g.controllable)
    leak = pred_discrete(g, g.bad(s), g.uncontrollable)
    return pred_timed(g, reach, leak) | pred_final(g, s)


def control_loss(g: GameView, s: SymbolicStateSet) -> SymbolicStateSet:
    """Predecessors through any action, uncontrollable ones included."""
    return pred_timed(g, s | pred_discrete(g, s, g.sigma))
