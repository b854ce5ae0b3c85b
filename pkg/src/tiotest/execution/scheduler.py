"""Bounded strong-fairness scheduler for implementation moves."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Window:
    """Delays ``lo..hi`` (``hi`` finite) at which an impl edge may fire."""

    lo: Fraction
    lo_closed: bool
    hi: Fraction
    hi_closed: bool

    def candidates(self) -> list:
        """Endpoints when attainable, the midpoint and integer crossings."""
        out = []
        if self.lo_closed:
            out.append(self.lo)
        if self.hi_closed and self.hi != self.lo:
            out.append(self.hi)
        if self.hi > self.lo:
            out.append((self.lo + self.hi) / 2)
            k = math.floor(self.lo) + 1
            while k < self.hi and len(out) < 8:
                out.append(Fraction(k))
                k += 1
        return sorted(set(out))


@dataclass(frozen=True)
class Option:
    edge: int
    key: tuple
    windows: tuple


class FairScheduler:
    """Decides, each step, whether the implementation preempts the tester.

    An enabled implementation edge passed over ``bound`` times in the same
    (location, region) fires next; after ``bound`` consecutive
    implementation events the tester is let through.  Other choices are
    drawn from the seeded generator.
    """

    def __init__(self, rng: random.Random, bound: int = 3, preempt: float = 0.5):
        if bound < 1:
            raise ValueError("fairness bound must be positive")
        self.rng = rng
        self.bound = bound
        self.preempt = preempt
        self.counters: dict = {}
        self.streak = 0
        self.fired: dict = {}
        self.forced = 0

    def _pass_over(self, options, chosen=None) -> None:
        for o in options:
            if o is chosen:
                self.counters[o.key] = 0
            else:
                self.counters[o.key] = self.counters.get(o.key, 0) + 1

    def choose(self, options: list, must_move: bool):
        """Return ``(option, delay)`` for an implementation event, or ``None``."""
        if not options:
            return None
        starving = [o for o in options if self.counters.get(o.key, 0) >= self.bound]
        impl_turn = must_move
        if not impl_turn and self.streak < self.bound:
            impl_turn = bool(starving) or self.rng.random() < self.preempt
        if not impl_turn:
            self._pass_over(options)
            self.streak = 0
            return None
        if starving:
            chosen = max(starving, key=lambda o: (self.counters.get(o.key, 0), -o.edge))
            self.forced += 1
        else:
            chosen = options[self.rng.randrange(len(options))]
        cands = sorted({c for w in chosen.windows for c in w.candidates()})
        delay = cands[self.rng.randrange(len(cands))]
        self._pass_over(options, chosen)
        self.streak += 1
        self.fired[chosen.key] = self.fired.get(chosen.key, 0) + 1
        return chosen, delay

    def tester_moved(self) -> None:
        self.streak = 0
