"""Dense point and interval matrices.

Both matrix types are immutable, row-major and tagged with the scalar mode
their entries belong to. Point products use round-to-nearest (exact in the
rational mode); interval products round every endpoint outward.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import interval as iv
from .errors import DimensionError, EmptyIntersectionError, ParseError, PreconditionError
from .interval import Interval
from .scalar import ExactRational, Rounding, ScalarMode, as_fraction

DOWN, UP, NEAREST = Rounding.DOWN, Rounding.UP, Rounding.NEAREST


class NormKind(enum.Enum):
    ROW_SUM = "rowsum"
    COL_SUM = "colsum"
    FROBENIUS = "frobenius"


def _check_modes(a, b):
    if a.mode != b.mode:
        raise DimensionError(f"scalar modes differ: {a.mode!r} vs {b.mode!r}")


class _Dense:
    __slots__ = ("rows", "cols", "entries", "mode")

    def __init__(self, rows: int, cols: int, entries: Sequence, mode: ScalarMode):
        entries = tuple(entries)
        if rows < 1 or cols < 1:
            raise DimensionError(f"matrix shape must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.mode = mode

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.shape == other.shape
            and self.mode == other.mode
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((type(self).__name__, self.shape, self.entries))


class PointMatrix(_Dense):
    """Dense real matrix in a given scalar mode."""

    __slots__ = ()

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], mode: ScalarMode | None = None,
                  rnd: Rounding = NEAREST) -> "PointMatrix":
        mode = mode or ExactRational()
        data = [list(r) for r in rows]
        if not data or any(len(r) != len(data[0]) for r in data):
            raise DimensionError("ragged or empty row list")
        return cls(len(data), len(data[0]), [mode.convert(x, rnd) for r in data for x in r], mode)

    @classmethod
    def identity(cls, n: int, mode: ScalarMode) -> "PointMatrix":
        one, zero = mode.one, mode.zero
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], mode)

    @classmethod
    def zeros(cls, rows: int, cols: int, mode: ScalarMode) -> "PointMatrix":
        return cls(rows, cols, [mode.zero] * (rows * cols), mode)

    def __repr__(self):
        return f"PointMatrix({self.tolist()!r}, mode={self.mode!r})"

    def to_mode(self, mode: ScalarMode, rnd: Rounding = NEAREST) -> "PointMatrix":
        return PointMatrix(self.rows, self.cols, [mode.convert(x, rnd) for x in self.entries], mode)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[as_fraction(x) for x in self.row(i)] for i in range(self.rows)]

    def transpose(self) -> "PointMatrix":
        return PointMatrix(self.cols, self.rows,
                           [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.mode)

    def thin(self) -> "IntervalMatrix":
        return IntervalMatrix(self.rows, self.cols, [Interval(x, x) for x in self.entries], self.mode)

    def scale(self, c, rnd: Rounding = NEAREST) -> "PointMatrix":
        return PointMatrix(self.rows, self.cols, [self.mode.mul(c, x, rnd) for x in self.entries], self.mode)

    def __matmul__(self, other):
        if isinstance(other, PointMatrix):
            return pm_mul(self, other)
        if isinstance(other, IntervalMatrix):
            return im_mul(self.thin(), other)
        return NotImplemented

    def __add__(self, other):
        _check_shape(self, other)
        m = self.mode
        return PointMatrix(self.rows, self.cols, [m.add(x, y) for x, y in zip(self.entries, other.entries)], m)

    def __sub__(self, other):
        _check_shape(self, other)
        m = self.mode
        return PointMatrix(self.rows, self.cols, [m.sub(x, y) for x, y in zip(self.entries, other.entries)], m)


class IntervalMatrix(_Dense):
    """Dense matrix of :class:`~hyperincl.interval.Interval` entries."""

    __slots__ = ()

    def __init__(self, rows, cols, entries, mode):
        super().__init__(rows, cols, entries, mode)
        if not all(isinstance(e, Interval) for e in self.entries):
            raise PreconditionError("IntervalMatrix entries must be Interval instances")

    @classmethod
    def from_bounds(cls, lo: PointMatrix, hi: PointMatrix) -> "IntervalMatrix":
        _check_shape(lo, hi)
        return cls(lo.rows, lo.cols, [Interval(a, b) for a, b in zip(lo.entries, hi.entries)], lo.mode)

    @classmethod
    def identity(cls, n: int, mode: ScalarMode) -> "IntervalMatrix":
        return PointMatrix.identity(n, mode).thin()

    def __repr__(self):
        return f"IntervalMatrix({self.rows}x{self.cols}, mode={self.mode!r})"

    def midpoint(self) -> PointMatrix:
        return im_midpoint(self)

    def width(self) -> PointMatrix:
        return im_width(self)

    def abs(self) -> PointMatrix:
        return im_abs(self)

    def max_width(self):
        return max(iv.width(e, self.mode) for e in self.entries)

    def is_thin(self) -> bool:
        return all(e.lo == e.hi for e in self.entries)

    def scale(self, c) -> "IntervalMatrix":
        """Multiply every entry by the nonnegative scalar ``c`` (outward)."""
        m = self.mode
        c = Interval(c, c)
        return IntervalMatrix(self.rows, self.cols, [iv.mul(c, e, m) for e in self.entries], m)

    def __matmul__(self, other):
        if isinstance(other, PointMatrix):
            other = other.thin()
        if isinstance(other, IntervalMatrix):
            return im_mul(self, other)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, PointMatrix):
            return im_mul(other.thin(), self)
        return NotImplemented

    def __add__(self, other):
        return im_add(self, other)

    def __sub__(self, other):
        return im_sub(self, other)

    def __and__(self, other):
        return im_intersect(self, other)


def _check_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    _check_modes(a, b)


def pm_mul(a: PointMatrix, b: PointMatrix) -> PointMatrix:
    """Triple-loop product, rounded to nearest in float modes."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    _check_modes(a, b)
    mode = a.mode
    out = []
    cols_b = [b.entries[j::b.cols] for j in range(b.cols)]
    if mode.exact:
        for i in range(a.rows):
            ra = a.row(i)
            for cb in cols_b:
                s = mode.zero
                for x, y in zip(ra, cb):
                    s += x * y
                out.append(s)
        return PointMatrix(a.rows, b.cols, out, mode)
    for i in range(a.rows):
        ra = a.row(i)
        for cb in cols_b:
            s = mode.zero
            for x, y in zip(ra, cb):
                s = mode.add(s, mode.mul(x, y))
            out.append(s)
    return PointMatrix(a.rows, b.cols, out, mode)


def im_mul(a: IntervalMatrix, b: IntervalMatrix) -> IntervalMatrix:
    """Outward-rounded interval product; encloses every member product."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    _check_modes(a, b)
    mode = a.mode
    cols_b = [b.entries[j::b.cols] for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        ra = a.row(i)
        for cb in cols_b:
            lo = hi = mode.zero
            for x, y in zip(ra, cb):
                p = iv.mul(x, y, mode)
                if mode.exact:
                    lo += p.lo
                    hi += p.hi
                else:
                    lo = mode.add(lo, p.lo, DOWN)
                    hi = mode.add(hi, p.hi, UP)
            out.append(Interval(lo, hi))
    return IntervalMatrix(a.rows, b.cols, out, mode)


def im_add(a: IntervalMatrix, b: IntervalMatrix) -> IntervalMatrix:
    _check_shape(a, b)
    m = a.mode
    return IntervalMatrix(a.rows, a.cols, [iv.add(x, y, m) for x, y in zip(a.entries, b.entries)], m)


def im_sub(a: IntervalMatrix, b: IntervalMatrix) -> IntervalMatrix:
    _check_shape(a, b)
    m = a.mode
    return IntervalMatrix(a.rows, a.cols, [iv.sub(x, y, m) for x, y in zip(a.entries, b.entries)], m)


def im_intersect(a: IntervalMatrix, b: IntervalMatrix) -> IntervalMatrix:
    _check_shape(a, b)
    out = []
    for k, (x, y) in enumerate(zip(a.entries, b.entries)):
        try:
            out.append(iv.intersect(x, y))
        except EmptyIntersectionError as exc:
            index = divmod(k, a.cols)
            raise EmptyIntersectionError(f"entry {index}: {exc}", index=index) from None
    return IntervalMatrix(a.rows, a.cols, out, a.mode)


def im_contains(x: IntervalMatrix, p) -> bool:
    """Entrywise membership of a point matrix or a nested list of exact values."""
    if isinstance(p, PointMatrix):
        if p.shape != x.shape:
            raise DimensionError(f"shape mismatch: {x.shape} vs {p.shape}")
        values = p.entries
    else:
        values = [v for r in p for v in r]
        if len(values) != len(x.entries):
            raise DimensionError("shape mismatch")
    return all(iv.contains(e, v) for e, v in zip(x.entries, values))


def im_subset(a: IntervalMatrix, b: IntervalMatrix) -> bool:
    _check_shape(a, b)
    return all(iv.subset(x, y) for x, y in zip(a.entries, b.entries))


def im_midpoint(x: IntervalMatrix) -> PointMatrix:
    return PointMatrix(x.rows, x.cols, [iv.midpoint(e, x.mode) for e in x.entries], x.mode)


def im_width(x: IntervalMatrix) -> PointMatrix:
    return PointMatrix(x.rows, x.cols, [iv.width(e, x.mode) for e in x.entries], x.mode)


def im_abs(x: IntervalMatrix) -> PointMatrix:
    return PointMatrix(x.rows, x.cols, [iv.mag(e, x.mode) for e in x.entries], x.mode)


def pm_norm(a: PointMatrix, kind: NormKind = NormKind.FROBENIUS):
    """Row-sum, column-sum or Frobenius norm, rounded up."""
    m = a.mode

    def abs_sum(values):
        s = m.zero
        for v in values:
            s = m.add(s, m.abs(v), UP)
        return s

    if kind is NormKind.ROW_SUM:
        return max(abs_sum(a.row(i)) for i in range(a.rows))
    if kind is NormKind.COL_SUM:
        return max(abs_sum(a.entries[j::a.cols]) for j in range(a.cols))
    s = m.zero
    for v in a.entries:
        s = m.add(s, m.mul(v, v, UP), UP)
    return m.sqrt(s, UP)


def spectral_radius_nonneg(a: PointMatrix, rtol: float = 1e-12, max_iter: int = 10_000):
    """Certified upper bound on the spectral radius of a nonnegative matrix.

    The power iteration runs in doubles and only supplies a positive test
    vector ``v``; the returned value ``max_i (a v)_i / v_i`` is then
    evaluated in ``a.mode`` with upward rounding, which bounds the spectral
    radius from above for every positive ``v``.
    """
    if a.rows != a.cols:
        raise DimensionError("spectral radius needs a square matrix")
    if any(x < 0 for x in a.entries):
        raise PreconditionError("spectral_radius_nonneg requires a nonnegative matrix")
    n, mode = a.rows, a.mode
    b = [[_to_float(a[i, j]) for j in range(n)] for i in range(n)]
    v = [1.0] * n
    prev = math.inf
    floor = 1e-30
    for _ in range(max_iter):
        w = [math.fsum(b[i][j] * v[j] for j in range(n)) for i in range(n)]
        top = max(w)
        if top == 0.0:
            break
        est = max(w[i] / v[i] for i in range(n))
        w = [max(x / top, floor) for x in w]
        v = w
        if abs(est - prev) <= rtol * abs(est):
            break
        prev = est
    best = None
    vm = [mode.convert(x) for x in v]
    for i in range(n):
        s = mode.zero
        for j in range(n):
            s = mode.add(s, mode.mul(a[i, j], vm[j], UP), UP)
        r = mode.div(s, vm[i], UP)
        if best is None or r > best:
            best = r
    return best


def _to_float(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------- text format


def parse_matrix(text: str, mode: ScalarMode | None = None) -> PointMatrix:
    """Parse the ``rows cols`` text format.

    Entries are decimal literals or ``p/q`` rationals, read exactly and then
    rounded to nearest in ``mode`` (exact when ``mode`` is rational, the
    default).
    """
    lines = [(no, ln.split("#", 1)[0]) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, ln) for no, ln in lines if ln.strip()]
    if not lines:
        raise ParseError("empty matrix text", line=1)
    no, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(f"header must be 'rows cols', got {header.strip()!r}", line=no, column=1)
    try:
        rows, cols = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(f"non-integer header {header.strip()!r}", line=no, column=1) from None
    if rows < 1 or cols < 1:
        raise ParseError(f"matrix shape must be positive, got {rows}x{cols}", line=no, column=1)
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}",
                         line=body[-1][0] if body else no)
    values = []
    for no, ln in body:
        tokens = ln.split()
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} entries, found {len(tokens)}", line=no)
        col = 0
        for tok in tokens:
            col = ln.index(tok, col) + 1
            try:
                values.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad entry {tok!r}", line=no, column=col) from None
            col += len(tok) - 1
    mode = mode or ExactRational()
    return PointMatrix(rows, cols, [mode.convert(v) for v in values], mode)


def format_matrix(a: PointMatrix) -> str:
    """Serialize exactly: integers or ``p/q`` rationals."""
    lines = [f"{a.rows} {a.cols}"]
    for i in range(a.rows):
        lines.append(" ".join(str(as_fraction(x)) for x in a.row(i)))
    return "\n".join(lines) + "\n"
