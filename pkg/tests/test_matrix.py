import random
from fractions import Fraction

import pytest

import oracles
from hyperincl.errors import DimensionError, EmptyIntersectionError, ParseError, PreconditionError
from hyperincl.interval import Interval
from hyperincl.matrix import (
    IntervalMatrix,
    NormKind,
    PointMatrix,
    format_matrix,
    im_contains,
    im_intersect,
    im_subset,
    parse_matrix,
    pm_norm,
    spectral_radius_nonneg,
)
from hyperincl.scalar import BigFloat, ExactRational, HardwareFloat, as_fraction

Q = ExactRational()
A1 = [[Fraction(9, 10), Fraction(1, 5)], [Fraction(-3, 10), Fraction(4, 5)]]
A1_INV = [[Fraction(40, 39), Fraction(-10, 39)], [Fraction(5, 13), Fraction(15, 13)]]


def fr(m):
    return m.to_fractions()


def random_interval_matrix(rng, rows, cols, mode=Q):
    entries = []
    for _ in range(rows * cols):
        a, b = sorted(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(2))
        entries.append(Interval(mode.convert(a, ), mode.convert(b)))
    return IntervalMatrix(rows, cols, entries, mode)


def sample_member(rng, X):
    vals = []
    for e in X.entries:
        lo, hi = as_fraction(e.lo), as_fraction(e.hi)
        vals.append(lo + (hi - lo) * Fraction(rng.randint(0, 12), 12))
    return [vals[i * X.cols:(i + 1) * X.cols] for i in range(X.rows)]


def test_shape_validation():
    with pytest.raises(DimensionError):
        PointMatrix(2, 2, [1, 2, 3], Q)
    with pytest.raises(DimensionError):
        PointMatrix.from_rows([[1, 2], [3]])


def test_identity_product(mode):
    A = PointMatrix.from_rows(A1, mode)
    assert PointMatrix.identity(2, mode) @ A == A


def test_example_inverse_product():
    A, B = PointMatrix.from_rows(A1), PointMatrix.from_rows(A1_INV)
    assert A @ B == PointMatrix.identity(2, Q)


def test_random_rational_product_matches_naive():
    rng = random.Random(4)
    for _ in range(20):
        a = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)] for _ in range(4)]
        b = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)] for _ in range(4)]
        assert fr(PointMatrix.from_rows(a) @ PointMatrix.from_rows(b)) == oracles.matmul(a, b)


def test_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        PointMatrix.identity(2, Q) @ PointMatrix.identity(3, Q)


def test_thin_identity_times_interval(mode):
    X = random_interval_matrix(random.Random(1), 3, 3, mode)
    assert IntervalMatrix.identity(3, mode) @ X == X


def test_one_by_one_interval_product():
    X = IntervalMatrix(1, 1, [Interval(Q.convert(0), Q.convert(2))], Q)
    Y = IntervalMatrix(1, 1, [Interval(Q.convert(-1), Q.convert(1))], Q)
    assert fr((X @ Y).midpoint()) == [[0]]
    r = (X @ Y)[0, 0]
    assert (as_fraction(r.lo), as_fraction(r.hi)) == (-2, 2)


@pytest.mark.parametrize("use_float", [False, True])
def test_interval_product_sampling_soundness(use_float):
    rng = random.Random(8)
    mode = HardwareFloat() if use_float else Q
    for trial in range(100):
        n = 1 + trial % 5
        X = random_interval_matrix(rng, n, n, mode)
        Y = random_interval_matrix(rng, n, n, mode)
        Z = X @ Y
        for _ in range(2):
            assert im_contains(Z, oracles.matmul(sample_member(rng, X), sample_member(rng, Y)))


def test_interval_product_3x3_twenty_samples():
    rng = random.Random(21)
    X = random_interval_matrix(rng, 3, 3)
    Y = random_interval_matrix(rng, 3, 3)
    Z = X @ Y
    for _ in range(20):
        assert im_contains(Z, oracles.matmul(sample_member(rng, X), sample_member(rng, Y)))


def test_subdistributivity():
    rng = random.Random(13)
    for _ in range(30):
        X, Y, Z = (random_interval_matrix(rng, 3, 3) for _ in range(3))
        assert im_subset(X @ (Y + Z), X @ Y + X @ Z)


def test_projections():
    A = PointMatrix.from_rows([[Fraction(-3, 2), 2], [0, Fraction(-1, 7)]])
    T = A.thin()
    assert T.midpoint() == A
    assert fr(T.width()) == [[0, 0], [0, 0]]
    assert fr(T.abs()) == [[Fraction(3, 2), 2], [0, Fraction(1, 7)]]


def test_intersection_and_containment():
    X = random_interval_matrix(random.Random(2), 2, 3)
    assert X & X == X
    a = Fraction(173691, 100000)
    X0 = IntervalMatrix(2, 2, [Interval(Q.convert(-a), Q.convert(2 + a)), Interval(Q.convert(-a), Q.convert(a)),
                               Interval(Q.convert(-a), Q.convert(a)), Interval(Q.convert(-a), Q.convert(2 + a))], Q)
    assert im_contains(X0, A1_INV)
    assert fr(X0.midpoint()) == [[1, 0], [0, 1]]


def test_disjoint_entry_reports_index():
    one = Interval(Q.convert(0), Q.convert(1))
    far = Interval(Q.convert(2), Q.convert(3))
    X = IntervalMatrix(2, 2, [one, one, one, one], Q)
    Y = IntervalMatrix(2, 2, [one, one, far, one], Q)
    with pytest.raises(EmptyIntersectionError) as info:
        im_intersect(X, Y)
    assert info.value.index == (1, 0)


def test_frobenius_of_example_y(mode):
    Y = PointMatrix.from_rows([[Fraction(1, 10), Fraction(-1, 5)], [Fraction(3, 10), Fraction(1, 5)]], mode)
    nrm = as_fraction(pm_norm(Y, NormKind.FROBENIUS))
    assert nrm ** 2 >= 0 and abs(float(nrm) - 0.424264068711928) < 1e-12
    if mode.exact:
        # the exact square of the rounded-up root can't fall below 0.18
        assert nrm ** 2 >= Fraction(18, 100)


def test_norm_rounded_up_in_float():
    f = HardwareFloat()
    Y = PointMatrix.from_rows([[0.1, -0.2], [0.3, 0.2]], f)
    exact_sq = sum(Fraction(x) ** 2 for x in Y.entries)
    assert Fraction(pm_norm(Y)) ** 2 >= exact_sq


def test_simple_norms(mode):
    assert pm_norm(PointMatrix.zeros(3, 3, mode)) == 0
    M = PointMatrix.from_rows([[1, -2], [3, 4]], mode)
    assert pm_norm(M, NormKind.ROW_SUM) == 7
    assert pm_norm(M, NormKind.COL_SUM) == 6


def test_spectral_radius_examples(mode):
    D = PointMatrix.from_rows([[Fraction(1, 2), 0], [0, Fraction(1, 5)]], mode)
    rho = as_fraction(spectral_radius_nonneg(D))
    assert Fraction(1, 2) <= rho <= Fraction(1, 2) + Fraction(1, 10**9)
    assert spectral_radius_nonneg(PointMatrix.identity(3, mode)) == 1


def test_spectral_radius_against_characteristic_polynomial():
    absY = [[0.1, 0.2], [0.3, 0.2]]
    _, rho_exact = oracles.char_poly_eigs_2x2(absY)
    rho = spectral_radius_nonneg(PointMatrix.from_rows(absY, HardwareFloat()))
    assert rho >= rho_exact - 1e-15
    assert rho < 1
    assert abs(rho - rho_exact) < 1e-9


def test_spectral_radius_random_upper_bounds():
    rng = random.Random(6)
    for _ in range(50):
        a = [[rng.random() for _ in range(2)] for _ in range(2)]
        _, rho_exact = oracles.char_poly_eigs_2x2(a)
        rho = spectral_radius_nonneg(PointMatrix.from_rows(a, HardwareFloat()))
        assert rho >= rho_exact * (1 - 1e-12)
        assert rho <= rho_exact * (1 + 1e-6)


def test_spectral_radius_rejects_negative_entries():
    with pytest.raises(PreconditionError):
        spectral_radius_nonneg(PointMatrix.from_rows([[1, -1], [0, 1]]))


def test_parse_example_matrix():
    A = parse_matrix("2 2\n9/10 1/5\n-3/10 4/5")
    assert fr(A) == A1
    assert fr(parse_matrix("1 1\n1")) == [[1]]


def test_parse_decimals_exactly_then_round():
    A = parse_matrix("1 2\n0.1 1e-3\n", BigFloat(64))
    assert A.mode == BigFloat(64)
    assert fr(parse_matrix("1 2\n0.1 1e-3\n")) == [[Fraction(1, 10), Fraction(1, 1000)]]


@pytest.mark.parametrize("text, line", [
    ("2 2\n1 2 3", 2),
    ("2 2\n1 2\n3 x", 3),
    ("two 2\n1 2", 1),
    ("2\n1 2", 1),
    ("", 1),
    ("1 2\n1/0 2", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_matrix(text)
    assert info.value.line == line


def test_parse_error_column():
    with pytest.raises(ParseError) as info:
        parse_matrix("1 3\n1  2 abc\n")
    assert info.value.column == 6


def test_round_trip_rational():
    rng = random.Random(12)
    for _ in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-99, 99), rng.randint(1, 30)) for _ in range(c)] for _ in range(r)]
        A = PointMatrix.from_rows(rows)
        text = format_matrix(A)
        assert parse_matrix(text) == A
        assert parse_matrix(format_matrix(parse_matrix(text))) == A
