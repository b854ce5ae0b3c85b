"""Location-indexed symbolic state sets."""

from __future__ import annotations

from typing import Iterable, Mapping

from .federation import Federation
from .zone import ClockMismatchError, ClockSet


class SymbolicStateSet:
    """Map from location index to a federation over one clock set.

    Missing locations denote the empty set.  Instances are immutable.
    ``scale`` is the time unit: constants are multiples of ``1/scale``, which
    lets sets reached through rational delays keep integer bounds.
    """

    __slots__ = ("clocks", "nlocs", "_sets", "scale")

    def __init__(self, clocks: ClockSet, nlocs: int, sets: Mapping[int, Federation] | None = None, scale: int = 1):
        self.clocks = clocks
        self.nlocs = nlocs
        self.scale = scale
        self._sets = {}
        for loc, fed in (sets or {}).items():
            if fed.clocks != clocks:
                raise ClockMismatchError(f"{fed.clocks!r} vs {clocks!r}")
            if not 0 <= loc < nlocs:
                raise IndexError(f"location {loc} out of range")
            if fed.zones:
                self._sets[loc] = fed

    @classmethod
    def empty(cls, clocks: ClockSet, nlocs: int) -> "SymbolicStateSet":
        return cls(clocks, nlocs)

    @classmethod
    def universe(cls, clocks: ClockSet, nlocs: int) -> "SymbolicStateSet":
        u = Federation.universe(clocks)
        return cls(clocks, nlocs, {l: u for l in range(nlocs)})

    def __getitem__(self, loc: int) -> Federation:
        return self._sets.get(loc) or Federation.empty(self.clocks)

    def locations(self) -> list:
        return sorted(self._sets)

    def items(self):
        return sorted(self._sets.items())

    def is_empty(self) -> bool:
        return not self._sets

    def __bool__(self) -> bool:
        return bool(self._sets)

    def contains(self, loc: int, point) -> bool:
        fed = self._sets.get(loc)
        if fed is None:
            return False
        if self.scale != 1:
            if isinstance(point, Mapping):
                point = tuple(point[c] for c in self.clocks.names)
            point = tuple(v * self.scale for v in point)
        return fed.contains(point)

    def rescaled(self, scale: int) -> "SymbolicStateSet":
        """Same set expressed with time unit ``1/scale`` (a multiple of ours)."""
        if scale == self.scale:
            return self
        if scale % self.scale:
            raise ValueError("new scale must be a multiple of the current one")
        k = scale // self.scale
        return SymbolicStateSet(self.clocks, self.nlocs, {l: f.scaled(k) for l, f in self._sets.items()}, scale)

    def _check(self, other: "SymbolicStateSet") -> None:
        if self.clocks != other.clocks or self.nlocs != other.nlocs:
            raise ClockMismatchError("state sets over different automata")
        if self.scale != other.scale:
            raise ValueError("state sets with different time scales")

    def _new(self, sets) -> "SymbolicStateSet":
        return SymbolicStateSet(self.clocks, self.nlocs, sets, self.scale)

    def _lift(self, other, op, locs: Iterable[int]) -> "SymbolicStateSet":
        self._check(other)
        return self._new({l: op(self[l], other[l]) for l in locs})

    def union(self, other: "SymbolicStateSet") -> "SymbolicStateSet":
        return self._lift(other, Federation.union, set(self._sets) | set(other._sets))

    __or__ = union

    def intersect(self, other: "SymbolicStateSet") -> "SymbolicStateSet":
        return self._lift(other, Federation.intersect, set(self._sets) & set(other._sets))

    __and__ = intersect

    def minus(self, other: "SymbolicStateSet") -> "SymbolicStateSet":
        return self._lift(other, Federation.minus, set(self._sets))

    __sub__ = minus

    def complement(self) -> "SymbolicStateSet":
        u = Federation.universe(self.clocks)
        return self._new({l: u.minus(self[l]) for l in range(self.nlocs)})

    __invert__ = complement

    def map(self, fn) -> "SymbolicStateSet":
        return self._new({l: fn(f) for l, f in self._sets.items()})

    def up(self) -> "SymbolicStateSet":
        return self.map(Federation.up)

    def down(self) -> "SymbolicStateSet":
        return self.map(Federation.down)

    def normalize(self, m: int) -> "SymbolicStateSet":
        return self.map(lambda f: f.normalize(m))

    def is_subset(self, other: "SymbolicStateSet") -> bool:
        self._check(other)
        return all(f.is_subset(other[l]) for l, f in self._sets.items())

    __le__ = is_subset

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicStateSet):
            return NotImplemented
        return self.is_subset(other) and other.is_subset(self)

    def __hash__(self):
        raise TypeError("SymbolicStateSet is unhashable")

    def render(self, names=None) -> str:
        rows = []
        for l, f in self.items():
            label = names[l] if names else str(l)
            rows.append(f"{label}: {f.to_text(self.scale)}")
        return "\n".join(rows) if rows else "empty"

    def __repr__(self) -> str:
        return f"SymbolicStateSet({self.render()!r})"
