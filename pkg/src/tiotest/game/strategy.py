"""Rank-lowering strategy extraction over regions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..clockspace import Region, region_of
from ..semantics.regiongraph import DELAY, RegionGraph
from .hierarchy import RankMap
from .view import GameView

PLAY, WAIT, WAIT_MAX = "play", "wait", "wait_max"


class Unsatisfiable(Exception):
    """The hierarchy does not cover every reachable non-failing configuration."""


@dataclass(frozen=True)
class Move:
    """Delay ``steps`` region successors (to ``target``), then maybe fire ``edge``."""

    kind: str
    steps: int
    target: Region
    edge: int | None = None
    action: str | None = None
    clause: int = 3

    def render(self, a) -> str:
        if self.kind == PLAY:
            return f"play({self.steps}, {a.label_of(self.action)})"
        if self.kind == WAIT:
            return f"wait({self.steps})"
        return "wait-max"


@dataclass
class Strategy:
    view: GameView
    ranks: RankMap
    moves: dict
    rank_of: dict
    m: int

    def move(self, loc: int, region: Region) -> Move | None:
        return self.moves.get((loc, region))

    def decide(self, loc: int, point) -> Move | None:
        return self.moves.get((loc, region_of(point, self.m)))

    def table(self) -> str:
        a = self.view.a
        rows = []
        for (loc, r), mv in sorted(self.moves.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            zone = r.zone(a.clocks).__str__()
            j, i = self.rank_of[(loc, r)]
            rows.append(f"{a.locations[loc]} | {zone} | {mv.render(a)} | rank ({j},{i})")
        return "\n".join(rows)

    def records(self) -> list:
        """Machine-readable rows, one dict per decision."""
        a = self.view.a
        out = []
        for (loc, r), mv in sorted(self.moves.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            out.append(
                {
                    "location": a.locations[loc],
                    "region": str(r.zone(a.clocks)),
                    "move": mv.kind,
                    "delay_steps": mv.steps,
                    "action": mv.action,
                    "edge": mv.edge,
                    "rank": list(self.rank_of[(loc, r)]),
                }
            )
        return out


def _discrete(graph: RegionGraph, k: int) -> list:
    return [s for s in graph.succ[k] if s.edge != DELAY]


def _chain(graph: RegionGraph, k: int) -> list:
    """Node indices along the time successors of node ``k``, ``k`` first."""
    out = [k]
    while True:
        nxt = [s.dst for s in graph.succ[out[-1]] if s.edge == DELAY and s.dst != out[-1]]
        if not nxt:
            return out
        out.append(nxt[0])


def synthesize(g: GameView, ranks: RankMap) -> Strategy:
    """Rank-lowering strategy on every reachable non-failing region.

    Clause 1 (controllable edge into the next lower set) is chosen at the
    earliest delay region, then the lowest target rank, then the lowest
    edge id; clause 2 waits for the earliest region inside that set; clause
    3 waits into the maximal delay region.  When clauses 1 and 2 apply at
    the same delay region clause 1 wins.
    """
    a = g.a
    graph = RegionGraph(a, g.m)
    rank_of = {}
    fails = set()
    for k, (loc, r) in enumerate(graph.nodes):
        rep = r.representative()
        if g.vfail.contains(loc, rep):
            fails.add(k)
            continue
        rk = ranks.rank(loc, rep)
        if rk is None:
            raise Unsatisfiable(f"no rank for reachable region {graph.describe(k)}")
        rank_of[k] = rk
    moves = {}
    for k in rank_of:
        loc, r = graph.nodes[k]
        prev = ranks.previous(rank_of[k])
        chain = _chain(graph, k)
        move = None
        if prev is not None:
            lower = ranks.W(*prev)
            inside = lambda n: n not in fails and lower.contains(graph.nodes[n][0], graph.nodes[n][1].representative())
            for steps, n in enumerate(chain):
                best = None
                for s in _discrete(graph, n):
                    e = a.edges[s.edge]
                    if e.action not in g.controllable or not inside(s.dst):
                        continue
                    key = (rank_of[s.dst], e.id)
                    if best is None or key < best[0]:
                        best = (key, e)
                if best is not None:
                    e = best[1]
                    move = Move(PLAY, steps, graph.nodes[n][1], e.id, e.action, 1)
                    break
                if inside(n) and n != k:
                    move = Move(WAIT, steps, graph.nodes[n][1], clause=2)
                    break
        if move is None:
            move = Move(WAIT_MAX, len(chain) - 1, graph.nodes[chain[-1]][1])
        moves[(loc, r)] = move
    return Strategy(g, ranks, moves, {graph.nodes[k]: v for k, v in rank_of.items()}, g.m)


def outcomes_bounded(g: GameView, f: Strategy, horizon: int) -> set:
    """Region-level outcome runs of ``f`` with at most ``horizon`` steps.

    A run is a tuple of ``(location, region, label)`` triples where
    ``label`` names the step leaving that node (``None`` on the last one).
    At each node the environment may fire any enabled output at a region
    no later than the strategy's target, or the strategy's move happens.
    """
    a = g.a
    graph = RegionGraph(a, f.m)
    out = set()
    stack = [(0, ())]
    while stack:
        k, path = stack.pop()
        loc, r = graph.nodes[k]
        mv = f.move(loc, r)
        if len(path) == horizon or mv is None:
            out.add(path + ((a.locations[loc], r, None),))
            continue
        chain = _chain(graph, k)[: mv.steps + 1]
        for steps, n in enumerate(chain):
            for s in _discrete(graph, n):
                e = a.edges[s.edge]
                if e.action in g.uncontrollable:
                    label = f"{steps}·{a.label(e)}"
                    stack.append((s.dst, path + ((a.locations[loc], r, label),)))
        last = chain[-1]
        if mv.kind == PLAY:
            for s in _discrete(graph, last):
                if s.edge == mv.edge:
                    label = f"{mv.steps}·{a.label(a.edges[mv.edge])}"
                    stack.append((s.dst, path + ((a.locations[loc], r, label),)))
        elif last != k or mv.kind == WAIT_MAX:
            stack.append((last, path + ((a.locations[loc], r, f"{mv.steps}·delay"),)))
    return out
