import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperincl import interval as iv
from hyperincl.errors import EmptyIntersectionError, PreconditionError
from hyperincl.interval import Interval
from hyperincl.scalar import ExactRational, HardwareFloat, as_fraction

Q = ExactRational()


def I(lo, hi, mode=Q):
    return Interval(mode.convert(lo), mode.convert(hi))


def test_invalid_interval():
    with pytest.raises(PreconditionError):
        Interval(2, 1)


def test_add_endpoints(mode):
    assert iv.add(I(1, 2, mode), I(3, 4, mode), mode) == I(4, 6, mode)


def test_add_zero_identity():
    a = I(Fraction(-1, 3), Fraction(2, 7))
    assert iv.add(a, I(0, 0), Q) == a


def test_sub_endpoints():
    assert iv.sub(I(1, 2), I(3, 4), Q) == I(-3, -1)


def _random_interval(rng, mode):
    a, b = sorted(rng.uniform(-10, 10) for _ in range(2))
    return Interval(mode.convert(a), mode.convert(b))


@pytest.mark.parametrize("op", ["add", "sub", "mul"])
def test_sampling_containment(mode, op):
    rng = random.Random(23)
    fn = {"add": lambda x, y: x + y, "sub": lambda x, y: x - y, "mul": lambda x, y: x * y}[op]
    trials = 1000 if op == "mul" else 100
    for _ in range(trials):
        a, b = _random_interval(rng, mode), _random_interval(rng, mode)
        r = getattr(iv, op)(a, b, mode)
        for _ in range(5):
            x = as_fraction(a.lo) + (as_fraction(a.hi) - as_fraction(a.lo)) * Fraction(rng.randint(0, 100), 100)
            y = as_fraction(b.lo) + (as_fraction(b.hi) - as_fraction(b.lo)) * Fraction(rng.randint(0, 100), 100)
            assert iv.contains(r, fn(x, y))


def test_mul_examples(mode):
    assert iv.mul(I(1, 2, mode), I(-3, 4, mode), mode) == I(-6, 8, mode)
    assert iv.mul(I(0, 0, mode), I(-3, 4, mode), mode) == I(0, 0, mode)


def test_mul_exact_is_endpoint_hull():
    rng = random.Random(2)
    for _ in range(200):
        a = sorted(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(2))
        b = sorted(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(2))
        prods = [x * y for x in a for y in b]
        r = iv.mul(I(*a), I(*b), Q)
        assert (as_fraction(r.lo), as_fraction(r.hi)) == (min(prods), max(prods))


def test_intersect():
    assert iv.intersect(I(0, 2), I(1, 3)) == I(1, 2)
    a = I(Fraction(-1, 5), 3)
    assert iv.intersect(a, a) == a
    with pytest.raises(EmptyIntersectionError):
        iv.intersect(I(0, 1), I(2, 3))


def test_midpoint_of_initial_diagonal():
    a = Fraction(173691, 100000)
    assert as_fraction(iv.midpoint(I(-a, 2 + a), Q)) == 1


def test_width_of_initial_off_diagonal():
    assert as_fraction(iv.width(I(Fraction("-1.73691"), Fraction("1.73691")), Q)) == Fraction("3.47382")


def test_contains():
    assert not iv.contains(I(0, 1), 2)
    assert iv.contains(I(0, 1), Fraction(1, 2))


def test_float_midpoint_inside_and_width_rounded_up(float_mode):
    rng = random.Random(9)
    for _ in range(300):
        a = _random_interval(rng, float_mode)
        m = iv.midpoint(a, float_mode)
        assert a.lo <= m <= a.hi
        assert as_fraction(iv.width(a, float_mode)) >= as_fraction(a.hi) - as_fraction(a.lo)


def test_midpoint_large_endpoints_no_overflow():
    f = HardwareFloat()
    a = Interval(1e308, 1.7e308)
    assert 1e308 <= iv.midpoint(a, f) <= 1.7e308


def test_mag():
    assert iv.mag(I(-3, 2), Q) == 3
    assert iv.mag(I(1, 2), Q) == 2


def test_format():
    assert I(Fraction(1, 4), 1).format(Q, 3) == "[2.50e-1, 1.00e+0]"


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@st.composite
def nested(draw):
    a, b = sorted([draw(fracs), draw(fracs)])
    da, db = draw(st.fractions(0, 5, max_denominator=20)), draw(st.fractions(0, 5, max_denominator=20))
    return I(a, b), I(a - da, b + db)


@given(nested(), nested())
def test_inclusion_isotonicity(p, q):
    (a, a2), (b, b2) = p, q
    for op in (iv.add, iv.sub, iv.mul):
        assert iv.subset(op(a, b, Q), op(a2, b2, Q))


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6), st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_outward_soundness_float_contains_exact(w, x, y, z):
    f = HardwareFloat()
    a_lo, a_hi = sorted([w, x])
    b_lo, b_hi = sorted([y, z])
    fa, fb = Interval(a_lo, a_hi), Interval(b_lo, b_hi)
    qa, qb = I(a_lo, a_hi), I(b_lo, b_hi)
    for op in (iv.add, iv.sub, iv.mul):
        exact, outer = op(qa, qb, Q), op(fa, fb, f)
        assert as_fraction(outer.lo) <= as_fraction(exact.lo)
        assert as_fraction(exact.hi) <= as_fraction(outer.hi)
