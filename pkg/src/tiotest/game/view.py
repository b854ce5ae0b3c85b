"""Game view of an objective-centered tester."""

from __future__ import annotations

from ..clockspace import Federation, SymbolicStateSet
from ..model.automaton import Automaton, ModelError


class GameView:
    """Tester seen as a timed game: inputs and restart are controllable.

    ``m`` is the maximal constant used for normalization; it covers the
    tester guards and the verdict sets.
    """

    def __init__(self, tester: Automaton, m: int | None = None):
        if tester.vpass is None or tester.vfail is None:
            raise ModelError("game view needs a tester with verdict sets")
        if any(not inv.is_universe() for inv in tester.invariants):
            raise ModelError("tester invariants must be true")
        self.a = tester
        self.clocks = tester.clocks
        self.nlocs = len(tester.locations)
        self.controllable = frozenset(tester.controllable)
        self.uncontrollable = frozenset(tester.outputs)
        self.sigma = self.controllable | self.uncontrollable
        self.vpass = tester.vpass
        self.vfail = tester.vfail
        auto = max(
            [tester.max_constant()]
            + [f.max_constant() for _, f in self.vpass.items()]
            + [f.max_constant() for _, f in self.vfail.items()]
        )
        self.m = auto if m is None else m

    def empty(self) -> SymbolicStateSet:
        return SymbolicStateSet.empty(self.clocks, self.nlocs)

    def universe(self) -> SymbolicStateSet:
        return SymbolicStateSet.universe(self.clocks, self.nlocs)

    def states(self, sets) -> SymbolicStateSet:
        return SymbolicStateSet(self.clocks, self.nlocs, sets)

    def bad(self, s: SymbolicStateSet) -> SymbolicStateSet:
        """Configurations that are neither in ``s`` nor failing."""
        return ~(s | self.vfail)

    def initial(self) -> tuple:
        return self.a.initial, tuple(0 for _ in self.clocks.names)

    def normalize(self, s: SymbolicStateSet) -> SymbolicStateSet:
        return s.normalize(self.m)

    def fed(self, loc: int, s: SymbolicStateSet) -> Federation:
        return s[loc]
