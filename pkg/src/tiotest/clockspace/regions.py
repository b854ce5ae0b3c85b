"""Classic clock regions for a single global maximal constant."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

from .zone import ClockSet, Zone, bound


@dataclass(frozen=True, order=True)
class Region:
    """Region over ``n`` clocks for maximal constant ``m``.

    ``ints[k]`` is the integer part of clock ``k`` or ``m + 1`` when the
    clock exceeds ``m``.  ``zero`` lists the bounded clocks with zero
    fractional part; ``classes`` lists the remaining bounded clocks grouped
    by equal fractional part, in increasing order of that fraction.
    """

    m: int
    ints: tuple
    zero: tuple
    classes: tuple

    @property
    def n(self) -> int:
        return len(self.ints)

    def is_bounded(self, k: int) -> bool:
        return self.ints[k] <= self.m

    def is_final(self) -> bool:
        return all(c > self.m for c in self.ints)

    def representative(self) -> tuple:
        """A point of the region with fractions ``k / (len(classes) + 1)``."""
        den = len(self.classes) + 1
        vals = [Fraction(c) for c in self.ints]
        for pos, cls in enumerate(self.classes, start=1):
            for k in cls:
                vals[k] += Fraction(pos, den)
        return tuple(vals)

    def zone(self, clocks: ClockSet) -> Zone:
        if len(clocks) != self.n:
            raise ValueError("clock count does not match region")
        frac_rank = {}
        for k in self.zero:
            frac_rank[k] = 0
        for pos, cls in enumerate(self.classes, start=1):
            for k in cls:
                frac_rank[k] = pos
        cons = []
        for k, c in enumerate(self.ints):
            i = k + 1
            if c > self.m:
                cons.append((0, i, bound(-self.m, False)))
            elif frac_rank[k] == 0:
                cons.append((i, 0, bound(c)))
                cons.append((0, i, bound(-c)))
            else:
                cons.append((i, 0, bound(c + 1, False)))
                cons.append((0, i, bound(-c, False)))
        bounded = [k for k in range(self.n) if self.ints[k] <= self.m]
        for a in bounded:
            for b in bounded:
                if a == b:
                    continue
                diff = self.ints[a] - self.ints[b]
                ra, rb = frac_rank[a], frac_rank[b]
                if ra == rb:
                    cons.append((a + 1, b + 1, bound(diff)))
                elif ra < rb:
                    cons.append((a + 1, b + 1, bound(diff, False)))
                else:
                    cons.append((a + 1, b + 1, bound(diff + 1, False)))
        z = Zone.from_constraints(clocks, cons)
        assert z is not None
        return z

    def successor(self) -> "Region | None":
        """Immediate time-successor, or ``None`` for the final region."""
        if self.zero:
            ints = list(self.ints)
            moving = []
            for k in self.zero:
                if ints[k] == self.m:
                    ints[k] = self.m + 1
                else:
                    moving.append(k)
            classes = ((tuple(moving),) if moving else ()) + self.classes
            return Region(self.m, tuple(ints), (), classes)
        if self.classes:
            top = self.classes[-1]
            ints = list(self.ints)
            for k in top:
                ints[k] += 1
            return Region(self.m, tuple(ints), top, self.classes[:-1])
        return None

    def time_successors(self) -> list:
        """This region followed by all its strict time successors."""
        out = [self]
        r = self.successor()
        while r is not None:
            out.append(r)
            r = r.successor()
        return out

    def reset(self, ks) -> "Region":
        ks = set(ks)
        ints = tuple(0 if k in ks else c for k, c in enumerate(self.ints))
        zero = tuple(sorted(set(self.zero) | ks))
        classes = tuple(c for c in (tuple(k for k in cls if k not in ks) for cls in self.classes) if c)
        return Region(self.m, ints, zero, classes)

    def describe(self, names: Sequence[str]) -> str:
        parts = []
        for k, c in enumerate(self.ints):
            if c > self.m:
                parts.append(f"{names[k]}>{self.m}")
            elif k in self.zero:
                parts.append(f"{names[k]}={c}")
            else:
                parts.append(f"{c}<{names[k]}<{c + 1}")
        if self.classes:
            order = " < ".join("=".join(names[k] for k in cls) for cls in self.classes)
            parts.append(f"frac: {order}")
        return ", ".join(parts) if parts else "true"


def region_of(point, m: int, clocks: ClockSet | None = None) -> Region:
    """Region of a valuation (tuple in clock order, or mapping with ``clocks``)."""
    if isinstance(point, Mapping):
        if clocks is None:
            raise ValueError("a mapping valuation needs its clock set")
        point = tuple(point[c] for c in clocks.names)
    vals = [Fraction(v) for v in point]
    if any(v < 0 for v in vals):
        raise ValueError("valuations are nonnegative")
    ints = []
    zero = []
    by_frac = {}
    for k, v in enumerate(vals):
        if v > m:
            ints.append(m + 1)
            continue
        c = math.floor(v)
        ints.append(c)
        f = v - c
        if f == 0:
            zero.append(k)
        else:
            by_frac.setdefault(f, []).append(k)
    classes = tuple(tuple(by_frac[f]) for f in sorted(by_frac))
    return Region(m, tuple(ints), tuple(zero), classes)


def _ordered_partitions(items: list) -> Iterator[list]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _ordered_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        for i in range(len(part) + 1):
            yield part[:i] + [[first]] + part[i:]


def all_regions(n: int, m: int) -> list:
    """Every region over ``n`` clocks for maximal constant ``m`` (sorted)."""
    out = []
    for ints in product(range(m + 2), repeat=n):
        bounded = [k for k in range(n) if ints[k] <= m]
        for part in _ordered_partitions(bounded):
            blocks = [tuple(sorted(b)) for b in part]
            out.append(Region(m, ints, (), tuple(blocks)))
            if blocks:
                out.append(Region(m, ints, blocks[0], tuple(blocks[1:])))
    # a clock with integer part m and nonzero fraction lies above m
    out = [r for r in out if all(r.ints[k] < m for cls in r.classes for k in cls)]
    return sorted(set(out))


def regions_of(fed, m: int) -> list:
    """Regions meeting the federation (its exact cover when it is M-bounded)."""
    n = len(fed.clocks)
    out = []
    for r in all_regions(n, m):
        z = r.zone(fed.clocks)
        if any(z.intersect(w) is not None for w in fed.zones):
            out.append(r)
    return out
