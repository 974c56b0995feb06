"""Scalar arithmetic with directed rounding.

Three scalar modes are available:

* :class:`HardwareFloat` -- IEEE doubles. Directed results are obtained by
  computing the round-to-nearest value and stepping one ulp outward when
  (and only when) that value lies on the wrong side of the exact result.
* :class:`BigFloat` -- MPFR numbers at a fixed precision, using MPFR's own
  directed rounding through per-mode context objects.
* :class:`ExactRational` -- GMP rationals; every operation is exact and the
  rounding argument is ignored.

No mode ever touches a process- or thread-global rounding state: each
operation is a pure function of its operands.
"""

from __future__ import annotations

import decimal
import enum
import functools
import math
from fractions import Fraction

import gmpy2

from .errors import DivisionByZeroError, PreconditionError, ScalarOverflowError

__all__ = [
    "Rounding",
    "ScalarMode",
    "HardwareFloat",
    "BigFloat",
    "ExactRational",
    "as_fraction",
    "parse_mode",
]


class Rounding(enum.Enum):
    DOWN = "down"
    UP = "up"
    NEAREST = "nearest"


def as_fraction(value) -> Fraction:
    """Exact :class:`~fractions.Fraction` value of any supported scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, type(gmpy2.mpq())):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value.strip())
    n, d = value.as_integer_ratio()
    return Fraction(int(n), int(d))


class ScalarMode:
    """Interface of a scalar arithmetic. Subclasses are immutable."""

    exact = False
    name = "abstract"

    def convert(self, value, rnd: Rounding = Rounding.NEAREST):
        raise NotImplementedError

    def add(self, x, y, rnd: Rounding = Rounding.NEAREST):
        raise NotImplementedError

    def sub(self, x, y, rnd: Rounding = Rounding.NEAREST):
        raise NotImplementedError

    def mul(self, x, y, rnd: Rounding = Rounding.NEAREST):
        raise NotImplementedError

    def div(self, x, y, rnd: Rounding = Rounding.NEAREST):
        raise NotImplementedError

    def sqrt(self, x, rnd: Rounding = Rounding.NEAREST):
        raise NotImplementedError

    def neg(self, x):
        """Exact negation."""
        return -x

    def abs(self, x):
        """Exact absolute value."""
        return abs(x)

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def to_fraction(self, x) -> Fraction:
        return as_fraction(x)

    def format(self, x, digits: int = 17) -> str:
        """Scientific notation with ``digits`` significant digits."""
        f = self.to_fraction(x)
        if f == 0:
            return f"{0:.{max(digits - 1, 0)}e}".replace("e+00", "e+0")
        ctx = decimal.Context(prec=digits + 2)
        d = ctx.divide(decimal.Decimal(f.numerator), decimal.Decimal(f.denominator))
        return f"{d:.{max(digits - 1, 0)}e}"

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items(), key=str))))

    def __repr__(self):
        return f"{type(self).__name__}()"


def _check_div(y):
    if y == 0:
        raise DivisionByZeroError("division by zero")


class HardwareFloat(ScalarMode):
    """IEEE binary64 with simulated directed rounding."""

    name = "float"

    def __init__(self):
        # no state; kept for a uniform constructor signature
        pass

    @staticmethod
    def _adjust(r: float, exact: Fraction, rnd: Rounding) -> float:
        if rnd is Rounding.DOWN and Fraction(r) > exact:
            return math.nextafter(r, -math.inf)
        if rnd is Rounding.UP and Fraction(r) < exact:
            return math.nextafter(r, math.inf)
        return r

    @staticmethod
    def _finite(op, r, x, y):
        if math.isinf(r) or math.isnan(r):
            raise ScalarOverflowError(op, x, y)

    def convert(self, value, rnd=Rounding.NEAREST):
        if isinstance(value, float):
            return value
        exact = as_fraction(value)
        try:
            r = float(exact)
        except OverflowError:
            raise ScalarOverflowError("convert", value, None) from None
        return self._adjust(r, exact, rnd)

    def _sum(self, op, x, y, rnd):
        # two-sum error-free transformation; err is exactly exact - s
        s = x + y
        self._finite(op, s, x, y)
        if rnd is Rounding.NEAREST:
            return s
        bb = s - x
        err = (x - (s - bb)) + (y - bb)
        if rnd is Rounding.DOWN and err < 0:
            return math.nextafter(s, -math.inf)
        if rnd is Rounding.UP and err > 0:
            return math.nextafter(s, math.inf)
        return s

    def add(self, x, y, rnd=Rounding.NEAREST):
        return self._sum("add", x, y, rnd)

    def sub(self, x, y, rnd=Rounding.NEAREST):
        return self._sum("sub", x, -y, rnd)

    def mul(self, x, y, rnd=Rounding.NEAREST):
        r = x * y
        self._finite("mul", r, x, y)
        if rnd is Rounding.NEAREST:
            return r
        return self._adjust(r, Fraction(x) * Fraction(y), rnd)

    def div(self, x, y, rnd=Rounding.NEAREST):
        _check_div(y)
        r = x / y
        self._finite("div", r, x, y)
        if rnd is Rounding.NEAREST:
            return r
        return self._adjust(r, Fraction(x) / Fraction(y), rnd)

    def sqrt(self, x, rnd=Rounding.NEAREST):
        if x < 0:
            raise PreconditionError("sqrt of a negative number")
        r = math.sqrt(x)
        if rnd is Rounding.DOWN and Fraction(r) ** 2 > Fraction(x):
            return math.nextafter(r, -math.inf)
        if rnd is Rounding.UP and Fraction(r) ** 2 < Fraction(x):
            return math.nextafter(r, math.inf)
        return r


_MPFR_ROUND = {
    Rounding.DOWN: gmpy2.RoundDown,
    Rounding.UP: gmpy2.RoundUp,
    Rounding.NEAREST: gmpy2.RoundToNearest,
}


@functools.lru_cache(maxsize=None)
def _mpfr_context(precision, rnd):
    # used only through its methods, never installed as the current context
    return gmpy2.context(precision=precision, round=_MPFR_ROUND[rnd])


class BigFloat(ScalarMode):
    """MPFR floating point with ``precision_bits`` of mantissa."""

    name = "bigfloat"

    def __init__(self, precision_bits: int = 256):
        if int(precision_bits) < 24:
            raise PreconditionError("BigFloat precision must be at least 24 bits")
        self.precision_bits = int(precision_bits)

    def __repr__(self):
        return f"BigFloat({self.precision_bits})"

    def _ctx(self, rnd):
        return _mpfr_context(self.precision_bits, rnd)

    def _finite(self, op, r, x, y):
        if gmpy2.is_infinite(r) or gmpy2.is_nan(r):
            raise ScalarOverflowError(op, x, y)
        return r

    def convert(self, value, rnd=Rounding.NEAREST):
        if isinstance(value, type(gmpy2.mpfr())) and value.precision <= self.precision_bits:
            return self._ctx(rnd).add(value, 0)
        f = as_fraction(value)
        r = self._ctx(rnd).div(gmpy2.mpz(f.numerator), gmpy2.mpz(f.denominator))
        return self._finite("convert", r, value, None)

    def add(self, x, y, rnd=Rounding.NEAREST):
        return self._finite("add", self._ctx(rnd).add(x, y), x, y)

    def sub(self, x, y, rnd=Rounding.NEAREST):
        return self._finite("sub", self._ctx(rnd).sub(x, y), x, y)

    def mul(self, x, y, rnd=Rounding.NEAREST):
        return self._finite("mul", self._ctx(rnd).mul(x, y), x, y)

    def div(self, x, y, rnd=Rounding.NEAREST):
        _check_div(y)
        return self._finite("div", self._ctx(rnd).div(x, y), x, y)

    def sqrt(self, x, rnd=Rounding.NEAREST):
        if x < 0:
            raise PreconditionError("sqrt of a negative number")
        return self._ctx(rnd).sqrt(x)

    # python operators on mpfr round to the global 53-bit context; these do not
    def neg(self, x):
        return self._exact_ctx(x).minus(x)

    def abs(self, x):
        return self._exact_ctx(x).abs(x)

    def _exact_ctx(self, x):
        return _mpfr_context(max(self.precision_bits, x.precision), Rounding.NEAREST)


class ExactRational(ScalarMode):
    """Exact rational arithmetic on arbitrary-size integers."""

    exact = True
    name = "rational"

    #: fractional bits used when ``sqrt`` has to round an irrational root
    sqrt_bits = 128

    def __init__(self):
        pass

    def convert(self, value, rnd=Rounding.NEAREST):
        if isinstance(value, type(gmpy2.mpq())):
            return value
        f = as_fraction(value)
        return gmpy2.mpq(f.numerator, f.denominator)

    def add(self, x, y, rnd=Rounding.NEAREST):
        return x + y

    def sub(self, x, y, rnd=Rounding.NEAREST):
        return x - y

    def mul(self, x, y, rnd=Rounding.NEAREST):
        return x * y

    def div(self, x, y, rnd=Rounding.NEAREST):
        _check_div(y)
        return x / y

    def sqrt(self, x, rnd=Rounding.NEAREST):
        """Exact root when ``x`` is a rational square, else a ``sqrt_bits`` bound."""
        if x < 0:
            raise PreconditionError("sqrt of a negative number")
        p, q = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
        rp, rq = gmpy2.isqrt(p), gmpy2.isqrt(q)
        if rp * rp == p and rq * rq == q:
            return gmpy2.mpq(rp, rq)
        # sqrt(p/q) = sqrt(p*q)/q, scaled by 2**sqrt_bits
        scale = gmpy2.mpz(1) << self.sqrt_bits
        n = p * q * scale * scale
        root = gmpy2.isqrt(n)
        if rnd is Rounding.UP and root * root < n:
            root += 1
        return gmpy2.mpq(root, q * scale)


def parse_mode(name: str, precision: int = 256) -> ScalarMode:
    """Build a mode from its CLI name: ``float``, ``bigfloat`` or ``rational``."""
    key = name.lower()
    if key in ("float", "hardware", "double"):
        return HardwareFloat()
    if key in ("bigfloat", "mpfr"):
        return BigFloat(precision)
    if key in ("rational", "exact"):
        return ExactRational()
    raise ValueError(f"unknown scalar mode {name!r}")
