"""The ranked hierarchy of winning sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..clockspace import SymbolicStateSet
from .preds import control_loss, pi
from .view import GameView


@dataclass
class RankMap:
    """``levels[j][i]`` is the set of rank at most ``(j, i)``."""

    view: GameView
    levels: list
    uncovered: SymbolicStateSet | None = None
    iterations: int = 0
    ranks: list = field(default_factory=list)

    def __post_init__(self):
        self.ranks = [(j, i) for j, row in enumerate(self.levels) for i in range(len(row))]

    @property
    def satisfiable(self) -> bool:
        return self.uncovered is not None and self.uncovered.is_empty()

    @property
    def limit(self) -> SymbolicStateSet:
        return self.levels[-1][-1]

    def W(self, j: int, i: int) -> SymbolicStateSet:
        row = self.levels[j]
        return row[min(i, len(row) - 1)]

    def rank(self, loc: int, point) -> tuple | None:
        """Lexicographically least ``(j, i)`` whose set holds the configuration."""
        for j, row in enumerate(self.levels):
            if row[-1].contains(loc, point):
                for i, w in enumerate(row):
                    if w.contains(loc, point):
                        return (j, i)
        return None

    def previous(self, r: tuple) -> tuple | None:
        """Largest realized rank strictly below ``r``."""
        k = self.ranks.index(r)
        return self.ranks[k - 1] if k else None

    def table(self, names=None) -> str:
        out = []
        for j, row in enumerate(self.levels):
            for i, w in enumerate(row):
                new = w - row[i - 1] if i else (w - self.levels[j - 1][-1] if j else w)
                out.append(f"W[{j}][{i}] adds:")
                body = new.render(names or self.view.a.locations)
                out.extend("  " + line for line in body.splitlines())
        return "\n".join(out)


def build_hierarchy(g: GameView, max_iterations: int = 10_000) -> RankMap:
    """Iterate the controlled step to its fixpoint, then a control loss, and so on.

    Iterates grow monotonically (each one contains the previous) and never
    contain failing configurations.  Every set is normalized, so the
    iteration stops after finitely many steps.
    """
    vfail = g.vfail
    w = g.normalize(g.vpass - vfail)
    levels = [[w]]
    steps = 0
    while True:
        while True:
            steps += 1
            nxt = g.normalize((w | pi(g, w)) - vfail)
            if nxt <= w:
                break
            w = nxt
            levels[-1].append(w)
            if steps > max_iterations:
                raise RuntimeError("hierarchy did not converge")
        steps += 1
        nxt = g.normalize((w | control_loss(g, w)) - vfail)
        if nxt <= w:
            break
        w = nxt
        levels.append([w])
    from ..semantics.symbolic import reach

    reachable = reach(g.a, g.m)
    uncovered = (reachable - vfail) - w
    return RankMap(g, levels, uncovered, steps)


def rank(m: RankMap, config) -> tuple | None:
    """Rank of a :class:`~tiotest.semantics.core.Config`, ``None`` when not covered."""
    return m.rank(config.loc, tuple(Fraction(v) for v in config.val))
