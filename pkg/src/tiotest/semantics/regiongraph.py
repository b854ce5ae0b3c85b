"""Explicit region graph of an automaton (independent of zone algebra)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import chain, combinations

from ..clockspace import Region, region_of
from ..model.automaton import Automaton

DELAY = -1


@dataclass(frozen=True)
class RStep:
    """Region-graph edge: ``edge == DELAY`` for a time-successor step."""

    edge: int
    dst: int
    tick: bool = False  # delay step raising some integer part to a new integer


def _ticks(r: Region) -> bool:
    return not r.zero and bool(r.classes)


class RegionGraph:
    """Reachable ``(location, region)`` nodes with delay and discrete steps.

    Membership of a region in guards and invariants is read off its
    representative point, which is exact for diagonal-free constraints
    with constants at most ``m``.
    """

    def __init__(self, a: Automaton, m: int | None = None, start=None, max_nodes: int = 200_000):
        self.a = a
        self.m = a.max_constant() if m is None else m
        self.nodes: list = []
        self.index: dict = {}
        self.succ: list = []
        n = len(a.clocks)
        if start is None:
            start = [(a.initial, region_of((0,) * n, self.m))]
        obs = [a.clocks.index(c) - 1 for c in a.observed]
        self._obs_subsets = list(chain.from_iterable(combinations(obs, k) for k in range(len(obs) + 1)))
        work = deque()
        for node in start:
            if self._inv(*node):
                self._add(node, work)
        while work:
            k = work.popleft()
            loc, r = self.nodes[k]
            steps = []
            nxt = r.successor()
            if nxt is None:
                steps.append(RStep(DELAY, k))
            elif self._inv(loc, nxt):
                steps.append(RStep(DELAY, self._add((loc, nxt), work), _ticks(r)))
            rep = r.representative()
            for e in a.edges_from(loc):
                if not e.guard.contains(rep):
                    continue
                resets = [a.clocks.index(c) - 1 for c in e.resets]
                seen = set()
                for extra in self._obs_subsets:
                    r2 = r.reset(resets + list(extra))
                    if r2 in seen or not self._inv(e.dst, r2):
                        continue
                    seen.add(r2)
                    steps.append(RStep(e.id, self._add((e.dst, r2), work)))
            self.succ.append(steps)
            if len(self.nodes) > max_nodes:
                raise RuntimeError(f"region graph exceeds {max_nodes} nodes")

    def _inv(self, loc: int, r: Region) -> bool:
        return self.a.invariants[loc].contains(r.representative())

    def _add(self, node, work) -> int:
        k = self.index.get(node)
        if k is None:
            k = len(self.nodes)
            self.index[node] = k
            self.nodes.append(node)
            work.append(k)
        return k

    def __len__(self) -> int:
        return len(self.nodes)

    def label(self, step: RStep) -> str | None:
        return None if step.edge == DELAY else self.a.edges[step.edge].action

    def describe(self, k: int) -> str:
        loc, r = self.nodes[k]
        return f"({self.a.locations[loc]}, {r.describe(self.a.clocks.names)})"

    def predecessors(self) -> list:
        pred = [[] for _ in self.nodes]
        for k, steps in enumerate(self.succ):
            for s in steps:
                pred[s.dst].append((k, s))
        return pred

    def backward(self, targets, allowed=lambda step: True) -> set:
        """Nodes reaching ``targets`` through steps satisfying ``allowed``."""
        pred = self.predecessors()
        seen = set(targets)
        work = list(seen)
        while work:
            k = work.pop()
            for p, s in pred[k]:
                if p not in seen and allowed(s):
                    seen.add(p)
                    work.append(p)
        return seen

    def sccs(self, allowed=lambda step: True) -> list:
        """Strongly connected components (iterative Tarjan)."""
        index = {}
        low = {}
        on = set()
        stack = []
        out = []
        counter = 0
        for root in range(len(self.nodes)):
            if root in index:
                continue
            call = [(root, 0)]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on.add(root)
            while call:
                v, i = call[-1]
                steps = [s for s in self.succ[v] if allowed(s)]
                if i < len(steps):
                    call[-1] = (v, i + 1)
                    w = steps[i].dst
                    if w not in index:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on.add(w)
                        call.append((w, 0))
                    elif w in on:
                        low[v] = min(low[v], index[w])
                    continue
                call.pop()
                if call:
                    u = call[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(sorted(comp))
        return out
