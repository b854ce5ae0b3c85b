"""Finite unions of zones."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .zone import ClockMismatchError, ClockSet, Zone, atom, zone_to_text

_REDUCE_LIMIT = 48


class Federation:
    """A finite union of canonical non-empty zones over one clock set.

    Equality (``==``) is semantic: two federations are equal when they
    denote the same set of valuations.
    """

    __slots__ = ("clocks", "zones")

    def __init__(self, clocks: ClockSet, zones: Iterable[Zone] = ()):
        self.clocks = clocks
        self.zones = tuple(zones)

    # construction -------------------------------------------------------
    @classmethod
    def empty(cls, clocks: ClockSet) -> "Federation":
        return cls(clocks, ())

    @classmethod
    def universe(cls, clocks: ClockSet) -> "Federation":
        return cls(clocks, (Zone.universe(clocks),))

    @classmethod
    def zero(cls, clocks: ClockSet) -> "Federation":
        return cls(clocks, (Zone.zero(clocks),))

    @classmethod
    def from_zone(cls, zone: Zone | None) -> "Federation":
        if zone is None:
            raise ValueError("from_zone needs a zone; use Federation.empty for the empty set")
        return cls(zone.clocks, (zone,))

    @classmethod
    def from_atoms(cls, clocks: ClockSet, atoms) -> "Federation":
        """Conjunction of ``(lhs, op, value)`` or ``(lhs, rhs, op, value)`` atoms."""
        triples = []
        for a in atoms:
            if len(a) == 3:
                triples += atom(clocks, a[0], a[1], a[2])
            else:
                triples += atom(clocks, a[0], a[2], a[3], rhs=a[1])
        z = Zone.from_constraints(clocks, triples)
        return cls(clocks, () if z is None else (z,))

    @classmethod
    def of(cls, clocks: ClockSet, zones) -> "Federation":
        return cls(clocks, (z for z in zones if z is not None))._pruned()

    # queries ------------------------------------------------------------
    def is_empty(self) -> bool:
        return not self.zones

    def __bool__(self) -> bool:
        return bool(self.zones)

    def __len__(self) -> int:
        return len(self.zones)

    def __iter__(self):
        return iter(self.zones)

    def contains(self, point) -> bool:
        if isinstance(point, Mapping):
            point = tuple(Fraction(point[c]) for c in self.clocks.names)
        return any(z.contains(point) for z in self.zones)

    __contains__ = contains

    def _check(self, other: "Federation") -> None:
        if self.clocks != other.clocks:
            raise ClockMismatchError(f"{self.clocks!r} vs {other.clocks!r}")

    def is_subset(self, other: "Federation") -> bool:
        self._check(other)
        rest = []
        for z in self.zones:
            if not any(z.is_subset(w) for w in other.zones):
                rest.append(z)
        if not rest:
            return True
        return Federation(self.clocks, rest).minus(other).is_empty()

    def __le__(self, other: "Federation") -> bool:
        return self.is_subset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Federation):
            return NotImplemented
        return self.is_subset(other) and other.is_subset(self)

    def __hash__(self):  # semantic equality makes hashing unsound
        raise TypeError("Federation is unhashable")

    def is_universe(self) -> bool:
        return self.complement().is_empty()

    def max_constant(self) -> int:
        return max((z.max_constant() for z in self.zones), default=0)

    # set algebra --------------------------------------------------------
    def _pruned(self) -> "Federation":
        zs = list(self.zones)
        if len(zs) < 2:
            return self
        seen = {}
        for z in zs:
            seen.setdefault(z.key(), z)
        zs = sorted(seen.values(), key=lambda z: -sum(1 for r in z.d if r >= 0))
        kept = []
        for z in zs:
            if any(z.is_subset(w) for w in kept):
                continue
            kept = [w for w in kept if not w.is_subset(z)]
            kept.append(z)
        return Federation(self.clocks, kept)

    def union(self, other: "Federation") -> "Federation":
        self._check(other)
        if not other.zones:
            return self
        if not self.zones:
            return other
        return Federation(self.clocks, self.zones + other.zones)._pruned()

    __or__ = union

    def intersect(self, other: "Federation") -> "Federation":
        self._check(other)
        out = []
        for a in self.zones:
            for b in other.zones:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return Federation(self.clocks, out)._pruned()

    __and__ = intersect

    def minus(self, other: "Federation") -> "Federation":
        self._check(other)
        cur = list(self.zones)
        for b in other.zones:
            nxt = []
            for a in cur:
                nxt.extend(a.minus(b))
            cur = nxt
            if not cur:
                break
        return Federation(self.clocks, cur)._pruned()

    __sub__ = minus

    def complement(self) -> "Federation":
        return Federation.universe(self.clocks).minus(self)

    def __invert__(self) -> "Federation":
        return self.complement()

    def up(self) -> "Federation":
        return Federation(self.clocks, [z.up() for z in self.zones])._pruned()

    def down(self) -> "Federation":
        return Federation(self.clocks, [z.down() for z in self.zones])._pruned()

    def _indices(self, names) -> list:
        return [self.clocks.index(c) for c in names]

    def reset(self, names: Iterable[str]) -> "Federation":
        idx = self._indices(names)
        if not idx:
            return self
        return Federation(self.clocks, [z.reset(idx) for z in self.zones])._pruned()

    def free(self, names: Iterable[str]) -> "Federation":
        idx = self._indices(names)
        if not idx:
            return self
        return Federation(self.clocks, [z.free(idx) for z in self.zones])._pruned()

    def preimage_reset(self, names: Iterable[str]) -> "Federation":
        """Valuations whose reset of ``names`` lands in the federation."""
        names = list(names)
        if not names:
            return self
        zero = Federation.from_atoms(self.clocks, [(c, "=", 0) for c in names])
        return self.intersect(zero).free(names)

    def normalize(self, m: int) -> "Federation":
        return Federation(self.clocks, [z.extrapolate(m) for z in self.zones])._pruned().reduce()

    def reduce(self) -> "Federation":
        """Merge zones whose union is convex; semantics unchanged."""
        zs = list(self.zones)
        if len(zs) < 2 or len(zs) > _REDUCE_LIMIT:
            return self
        merged = True
        while merged:
            merged = False
            for a_i in range(len(zs)):
                for b_i in range(a_i + 1, len(zs)):
                    a, b = zs[a_i], zs[b_i]
                    h = a.hull(b)
                    rest = [p for q in h.minus(a) for p in q.minus(b)]
                    if not rest:
                        zs[a_i] = h
                        del zs[b_i]
                        merged = True
                        break
                if merged:
                    break
        return Federation(self.clocks, zs)._pruned()

    def embed(self, clocks: ClockSet) -> "Federation":
        if clocks == self.clocks:
            return self
        return Federation(clocks, [z.embed(clocks) for z in self.zones])

    def project(self, clocks: ClockSet) -> "Federation":
        return Federation(clocks, [z.project(clocks) for z in self.zones])._pruned()

    def scaled(self, factor: int) -> "Federation":
        if factor == 1:
            return self
        return Federation(self.clocks, [z.scaled(factor) for z in self.zones])

    def sample(self):
        """A rational point of the federation (dict), or ``None`` if empty."""
        for z in self.zones:
            return sample_zone(z)
        return None

    # rendering --------------------------------------------------------
    def to_text(self, scale: int = 1) -> str:
        if not self.zones:
            return "false"
        parts = [zone_to_text(z, scale) for z in sorted(self.zones, key=lambda z: z.key())]
        if len(parts) == 1:
            return parts[0]
        return " || ".join(f"({p})" if "&&" in p else p for p in parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Federation({self.to_text()})"


def _rat_close(m, n):
    for k in range(n):
        for i in range(n):
            if m[i][k] is None:
                continue
            for j in range(n):
                if m[k][j] is None:
                    continue
                c = (m[i][k][0] + m[k][j][0], m[i][k][1] and m[k][j][1])
                if m[i][j] is None or c[0] < m[i][j][0] or (c[0] == m[i][j][0] and not c[1]):
                    m[i][j] = c


def sample_zone(z: Zone) -> dict:
    """Pick a point of ``z`` with small-denominator rational coordinates."""
    n = z.dim
    m = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            raw = z.entry(i, j)
            if raw < (1 << 59):
                m[i][j] = (Fraction(raw >> 1), bool(raw & 1))
    vals = {}
    for i in range(1, n):
        _rat_close(m, n)
        hi = m[i][0]
        lo = m[0][i]
        lo_v, lo_c = -lo[0], lo[1]
        if hi is None:
            v = lo_v if lo_c else lo_v + Fraction(1, 2)
        else:
            hi_v, hi_c = hi
            if lo_c:
                v = lo_v
            elif hi_c and hi_v == lo_v:
                v = lo_v
            else:
                v = _simple_between(lo_v, hi_v)
        vals[z.clocks.names[i - 1]] = v
        m[i][0] = (v, True)
        m[0][i] = (-v, True)
    return vals


def _simple_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic rational strictly between ``lo`` and ``hi``, small denominator."""
    den = 2
    while True:
        cand = Fraction(int(lo * den) + 1, den)
        if lo < cand < hi:
            return cand
        den *= 2
        if den > 1 << 40:
            return (lo + hi) / 2
