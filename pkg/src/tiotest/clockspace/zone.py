"""Clock sets, bounds and canonical difference-bound zones."""

from __future__ import annotations

from array import array
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .kernel import impl as _k

INF = _k.INF
LE_ZERO = _k.LE_ZERO

_OPS = ("<", "<=", "=", ">=", ">")


class ClockMismatchError(ValueError):
    """Raised when combining symbolic sets over different clock sets."""


def bound(value: int, weak: bool = True) -> int:
    """Encode ``(value, weak)`` as a raw bound."""
    return (int(value) << 1) | (1 if weak else 0)


def bound_value(raw: int) -> int:
    return raw >> 1


def bound_is_weak(raw: int) -> bool:
    return bool(raw & 1)


def bound_add(a: int, b: int) -> int:
    return _k.add(a, b)


def bound_negate(raw: int) -> int:
    """Raw bound of the complementary half-space read from the other side."""
    return 1 - raw


def bound_str(raw: int) -> str:
    if raw >= INF:
        return "<inf"
    return ("<=" if raw & 1 else "<") + str(raw >> 1)


class ClockSet:
    """Ordered clock universe; index 0 is the implicit reference clock."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate clock names in {names}")
        self.names = names
        self._index = {n: i + 1 for i, n in enumerate(names)}

    @property
    def dim(self) -> int:
        return len(self.names) + 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown clock {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClockSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ClockSet({list(self.names)!r})"

    def union(self, other: "ClockSet") -> "ClockSet":
        return ClockSet(self.names + tuple(n for n in other.names if n not in self))


class Zone:
    """A non-empty canonical DBM over a :class:`ClockSet`.

    Instances are immutable; every operation returns a new zone, or ``None``
    when the result is empty.
    """

    __slots__ = ("clocks", "d", "_key")

    def __init__(self, clocks: ClockSet, d: array):
        self.clocks = clocks
        self.d = d
        self._key = None

    # construction -----------------------------------------------------
    @classmethod
    def universe(cls, clocks: ClockSet) -> "Zone":
        n = clocks.dim
        d = array("q", [INF]) * (n * n)
        for i in range(n):
            d[i * n + i] = LE_ZERO
            d[i] = LE_ZERO
        return cls(clocks, d)

    @classmethod
    def zero(cls, clocks: ClockSet) -> "Zone":
        n = clocks.dim
        return cls(clocks, array("q", [LE_ZERO]) * (n * n))

    @classmethod
    def from_constraints(cls, clocks: ClockSet, constraints) -> "Zone | None":
        """Build from ``(i, j, raw)`` triples meaning ``x_i - x_j <raw>``."""
        z = cls.universe(clocks)
        d = z.d
        n = clocks.dim
        for i, j, raw in constraints:
            if not _k.tighten(d, n, i, j, raw):
                return None
        return z

    # basic queries ----------------------------------------------------
    @property
    def dim(self) -> int:
        return self.clocks.dim

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.d.tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Zone) and self.clocks == other.clocks and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def entry(self, i: int, j: int) -> int:
        return self.d[i * self.dim + j]

    def is_subset(self, other: "Zone") -> bool:
        return _k.is_subset(self.d, other.d, self.dim)

    def is_universe(self) -> bool:
        return self.d == Zone.universe(self.clocks).d

    def contains(self, point: Sequence) -> bool:
        """``point`` lists clock values in clock-set order (no reference)."""
        n = self.dim
        d = self.d
        vals = (0,) + tuple(point)
        for i in range(n):
            vi = vals[i]
            row = i * n
            for j in range(n):
                if i == j:
                    continue
                raw = d[row + j]
                if raw >= INF:
                    continue
                diff = vi - vals[j]
                c = raw >> 1
                if raw & 1:
                    if diff > c:
                        return False
                elif diff >= c:
                    return False
        return True

    # operators ----------------------------------------------------------
    def _copy(self) -> array:
        return array("q", self.d)

    def intersect(self, other: "Zone") -> "Zone | None":
        d = self._copy()
        if not _k.intersect(d, other.d, self.dim):
            return None
        return Zone(self.clocks, d)

    def constrain(self, i: int, j: int, raw: int) -> "Zone | None":
        d = self._copy()
        if not _k.tighten(d, self.dim, i, j, raw):
            return None
        return Zone(self.clocks, d)

    def up(self) -> "Zone":
        d = self._copy()
        _k.up(d, self.dim)
        return Zone(self.clocks, d)

    def down(self) -> "Zone":
        d = self._copy()
        _k.down(d, self.dim)
        return Zone(self.clocks, d)

    def reset(self, indices: Iterable[int]) -> "Zone":
        d = self._copy()
        for k in indices:
            _k.reset(d, self.dim, k)
        return Zone(self.clocks, d)

    def free(self, indices: Iterable[int]) -> "Zone":
        d = self._copy()
        for k in indices:
            _k.free(d, self.dim, k)
        return Zone(self.clocks, d)

    def extrapolate(self, m: int) -> "Zone":
        d = self._copy()
        _k.extrapolate(d, self.dim, m)
        return Zone(self.clocks, d)

    def hull(self, other: "Zone") -> "Zone":
        d = self._copy()
        _k.hull(d, other.d, self.dim)
        return Zone(self.clocks, d)

    def minus(self, other: "Zone") -> list:
        """Disjoint zones covering ``self \\ other``."""
        if self.intersect(other) is None:
            return [self]
        n = self.dim
        od = other.d
        pieces = []
        cur = self
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                raw = od[i * n + j]
                if raw >= INF or cur.d[i * n + j] <= raw:
                    continue
                out = cur.constrain(j, i, bound_negate(raw))
                if out is not None:
                    pieces.append(out)
                cur = cur.constrain(i, j, raw)
                if cur is None:
                    return pieces
        return pieces

    def max_constant(self) -> int:
        m = 0
        for raw in self.d:
            if raw < INF:
                m = max(m, abs(raw >> 1))
        return m

    def scaled(self, factor: int) -> "Zone":
        d = array("q", (raw if raw >= INF else bound((raw >> 1) * factor, raw & 1) for raw in self.d))
        return Zone(self.clocks, d)

    def embed(self, clocks: ClockSet) -> "Zone":
        """Re-express over a clock superset; new clocks are unconstrained."""
        if clocks == self.clocks:
            return self
        src = [0] + [clocks.index(c) for c in self.clocks.names]
        n = clocks.dim
        m = self.dim
        z = Zone.universe(clocks)
        d = z.d
        for a in range(m):
            for b in range(m):
                d[src[a] * n + src[b]] = self.d[a * m + b]
        _k.close(d, n)
        return z

    def project(self, clocks: ClockSet) -> "Zone":
        """Existentially eliminate clocks not in ``clocks`` (a subset)."""
        idx = [0] + [self.clocks.index(c) for c in clocks.names]
        m = self.dim
        n = clocks.dim
        d = array("q", [0]) * (n * n)
        for a in range(n):
            for b in range(n):
                d[a * n + b] = self.d[idx[a] * m + idx[b]]
        return Zone(clocks, d)

    def delay_window(self, point: Sequence):
        """Delays ``t >= 0`` with ``point + t`` in the zone.

        Returns ``(lo, lo_closed, hi, hi_closed)`` with ``hi`` possibly
        ``None`` for unbounded, or ``None`` when no delay works.
        """
        n = self.dim
        d = self.d
        vals = (0,) + tuple(point)
        for i in range(1, n):
            for j in range(1, n):
                if i == j:
                    continue
                raw = d[i * n + j]
                if raw >= INF:
                    continue
                diff = vals[i] - vals[j]
                c = raw >> 1
                if (raw & 1 and diff > c) or (not raw & 1 and diff >= c):
                    return None
        lo, lo_closed = Fraction(0), True
        hi, hi_closed = None, True
        for i in range(1, n):
            raw = d[i * n]  # x_i + t <= c
            if raw < INF:
                c = Fraction(raw >> 1) - vals[i]
                closed = bool(raw & 1)
                if hi is None or c < hi or (c == hi and not closed):
                    hi, hi_closed = c, closed
            raw = d[i]  # -(x_i + t) <= c
            c = Fraction(-(raw >> 1)) - vals[i]
            closed = bool(raw & 1)
            if c > lo or (c == lo and not closed):
                lo, lo_closed = c, closed
        if hi is not None:
            if hi < lo or (hi == lo and not (lo_closed and hi_closed)):
                return None
        return lo, lo_closed, hi, hi_closed

    # rendering --------------------------------------------------------
    def constraints(self):
        """Non-redundant-ish constraint list ``(i, j, raw)`` for display."""
        n = self.dim
        d = self.d
        out = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                raw = d[i * n + j]
                if raw >= INF:
                    continue
                if i == 0 and raw == LE_ZERO:
                    continue
                if i != 0 and j != 0:
                    via = bound_add(d[i * n], d[j])
                    if raw >= via:
                        continue
                out.append((i, j, raw))
        return out

    def __str__(self) -> str:
        return zone_to_text(self)

    def __repr__(self) -> str:
        return f"Zone({zone_to_text(self)})"


def _num(c: int, scale: int = 1) -> str:
    q = Fraction(c, scale)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_const(i, j, raw, names, scale=1):
    c = raw >> 1
    op = "<=" if raw & 1 else "<"
    if j == 0:
        return f"{names[i]} {op} {_num(c, scale)}"
    if i == 0:
        op = ">=" if raw & 1 else ">"
        return f"{names[j]} {op} {_num(-c, scale)}"
    return f"{names[i]} - {names[j]} {op} {_num(c, scale)}"


def zone_to_text(z: Zone, scale: int = 1) -> str:
    """Render as a conjunction such as ``1 <= x && x - y < 2``.

    Constants are divided by ``scale`` (for zones over scaled time).
    """
    names = ("0",) + z.clocks.names
    n = z.dim
    d = z.d
    parts = []
    done = set()
    for i, j, raw in z.constraints():
        if (i, j) in done:
            continue
        back = d[j * n + i]
        if back < INF and (back >> 1) == -(raw >> 1) and raw & 1 and back & 1:
            done.add((j, i))
            if j == 0:
                parts.append(f"{names[i]} = {_num(raw >> 1, scale)}")
            elif i == 0:
                parts.append(f"{names[j]} = {_num(-(raw >> 1), scale)}")
            else:
                parts.append(f"{names[i]} - {names[j]} = {_num(raw >> 1, scale)}")
            continue
        parts.append(_fmt_const(i, j, raw, names, scale))
    return " && ".join(parts) if parts else "true"


def atom(clocks: ClockSet, lhs: str, op: str, value: int, rhs: str | None = None):
    """Constraint triples for ``lhs [- rhs] op value``."""
    if op not in _OPS:
        raise ValueError(f"bad relation {op!r}")
    i = clocks.index(lhs)
    j = clocks.index(rhs) if rhs is not None else 0
    v = int(value)
    out = []
    if op in ("<", "<="):
        out.append((i, j, bound(v, op == "<=")))
    elif op in (">", ">="):
        out.append((j, i, bound(-v, op == ">=")))
    else:
        out.append((i, j, bound(v, True)))
        out.append((j, i, bound(-v, True)))
    return out


def valuation_vector(clocks: ClockSet, valuation: Mapping[str, object]) -> tuple:
    return tuple(Fraction(valuation[c]) for c in clocks.names)
