"""Interval hyper-power iterations enclosing a matrix inverse.

Every stepper maps an enclosure ``X`` of ``A^-1`` to a tighter enclosure
``Y & X`` with

    Y = m(X) * (I + R + ... + R^(r-2)) + X * R^(r-1),   R = I - A m(X).

The identity behind the update holds for *any* point matrix ``m(X)``, so a
rounded midpoint is harmless. The residual ``R`` and its powers, however,
are always formed with outward-rounded interval products in the float
modes: rounding them to nearest would silently break containment. In the
rational mode all those products are exact and thin.

Four steppers are provided: the general order-``r`` Horner scheme, the
third-order method, the sixth-order Horner method and the factored
sixth-order method. The last one uses

    1 + x + x^2 + x^3 + x^4 = x^2 (1 + x + x^2) + 1 + x

to save two point products per step while producing the same enclosure.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import (
    ConvergenceConditionError,
    DimensionError,
    EmptyIntersectionError,
    NoConvergenceError,
    NoInitialEnclosureError,
    PreconditionError,
)
from .interval import Interval
from .matrix import (
    IntervalMatrix,
    NormKind,
    PointMatrix,
    im_abs,
    im_intersect,
    im_midpoint,
    im_mul,
    pm_mul,
    pm_norm,
    spectral_radius_nonneg,
)
from .scalar import ExactRational, Rounding, as_fraction

log = logging.getLogger(__name__)

DOWN, UP = Rounding.DOWN, Rounding.UP


# ---------------------------------------------------------------- configuration


@dataclass(frozen=True)
class Method:
    """A stepper choice: ``general`` of order ``r``, ``hp3``, ``horner6`` or ``fast6``."""

    kind: str
    order: int

    def __post_init__(self):
        if self.kind not in ("general", "hp3", "horner6", "fast6"):
            raise ValueError(f"unknown method kind {self.kind!r}")
        if self.order < 2:
            raise ValueError("hyper-power order must be at least 2")

    @classmethod
    def general(cls, r: int) -> "Method":
        return cls("general", int(r))

    @property
    def label(self) -> str:
        return f"general({self.order})" if self.kind == "general" else self.kind


HP3 = Method("hp3", 3)
HORNER6 = Method("horner6", 6)
FAST6 = Method("fast6", 6)


def parse_method(name: str, order: int | None = None) -> Method:
    key = name.lower()
    if key.startswith("general"):
        if "(" in key:
            order = int(key[key.index("(") + 1:key.rindex(")")])
        elif ":" in key:
            order = int(key.split(":", 1)[1])
        if order is None:
            raise ValueError("the general method needs an order")
        return Method.general(order)
    table = {"hp3": HP3, "horner6": HORNER6, "fast6": FAST6}
    if key not in table:
        raise ValueError(f"unknown method {name!r}")
    return table[key]


class Scaling(enum.Enum):
    NONE = "none"
    BY_NORM = "norm"
    BY_NORM_SQUARED = "norm2"
    AUTO = "auto"


@dataclass(frozen=True)
class InitConfig:
    norm: NormKind = NormKind.FROBENIUS
    scaling: Scaling = Scaling.AUTO
    tol: float = 1e-30
    max_iters: int = 50

    def __post_init__(self):
        if not self.tol > 0:
            raise PreconditionError("tol must be positive")
        if self.max_iters < 1:
            raise PreconditionError("max_iters must be positive")


class Termination(enum.Enum):
    WIDTH_TOL_MET = "width_tol_met"
    MAX_ITERS = "max_iters"
    STAGNATED = "stagnated"


@dataclass
class ProductCounter:
    """Tally of matrix products, split by their role in the cost model."""

    point: int = 0
    interval: int = 0

    def reset(self):
        self.point = self.interval = 0


@dataclass(frozen=True)
class Verification:
    verified: bool
    rho_bound: object
    step: int = 0


@dataclass(frozen=True)
class Step:
    k: int
    X: IntervalMatrix
    max_width: object


@dataclass
class EnclosureRun:
    method: Method
    scale: object
    steps: list[Step] = field(default_factory=list)
    termination: Termination | None = None
    verification: Verification | None = None
    residual: object = None

    @property
    def final(self) -> IntervalMatrix:
        return self.steps[-1].X

    @property
    def iterations(self) -> int:
        return self.steps[-1].k

    @property
    def verified(self) -> bool | None:
        return None if self.verification is None else self.verification.verified


# ---------------------------------------------------------------- steppers


def _identity(n, mode):
    return IntervalMatrix.identity(n, mode)


def _pprod(a, b, counter):
    # point-cost product, evaluated as a (thin in exact mode) interval product
    if counter is not None:
        counter.point += 1
    return im_mul(a, b)


def _iprod(a, b, counter):
    if counter is not None:
        counter.interval += 1
    return im_mul(a, b)


def _residual(A: PointMatrix, X: IntervalMatrix, counter):
    """Return ``(thin(m(X)), I - A m(X))`` with ``R`` as an interval matrix."""
    if A.cols != X.rows or X.cols != A.rows:
        raise DimensionError(f"enclosure shape {X.shape} does not fit matrix shape {A.shape}")
    H = im_midpoint(X).thin()
    R = _identity(A.rows, A.mode) - _pprod(A.thin(), H, counter)
    return H, R


def _power(R, e, counter):
    """``R**e`` by left-to-right binary powering."""
    bits = bin(e)[3:]
    P = R
    for bit in bits:
        P = _pprod(P, P, counter)
        if bit == "1":
            P = _pprod(P, R, counter)
    return P


def _finish(Y, X):
    return im_intersect(Y, X)


def step_general(A: PointMatrix, X: IntervalMatrix, r: int, counter: ProductCounter | None = None):
    """One order-``r`` hyper-power step in Horner form."""
    if r < 2:
        raise PreconditionError("order r must be at least 2")
    H, R = _residual(A, X, counter)
    I = _identity(R.rows, R.mode)
    if r == 2:
        P = I
    else:
        P = I + R
        for _ in range(r - 3):
            P = I + _pprod(R, P, counter)
    T = _power(R, r - 1, counter)
    Y = _pprod(H, P, counter) + _iprod(X, T, counter)
    return _finish(Y, X)


def step_hp3(A: PointMatrix, X: IntervalMatrix, counter: ProductCounter | None = None):
    """Third-order step ``m + m R + X R^2``."""
    H, R = _residual(A, X, counter)
    S = _pprod(R, R, counter)
    Y = H + _pprod(H, R, counter) + _iprod(X, S, counter)
    return _finish(Y, X)


def step_horner6(A: PointMatrix, X: IntervalMatrix, counter: ProductCounter | None = None):
    """Sixth-order step with the sum evaluated by nested Horner products (8 + 1 products)."""
    H, R = _residual(A, X, counter)
    I = _identity(R.rows, R.mode)
    S = _pprod(R, R, counter)
    M = I + _pprod(R, I + _pprod(R, I + _pprod(R, I + R, counter), counter), counter)
    T = _pprod(_pprod(S, S, counter), R, counter)
    Y = _pprod(H, M, counter) + _iprod(X, T, counter)
    return _finish(Y, X)


def step_fast6(A: PointMatrix, X: IntervalMatrix, counter: ProductCounter | None = None):
    """Sixth-order step using the factored sum ``I + R + S (I + R + S)`` (6 + 1 products)."""
    H, R = _residual(A, X, counter)
    I = _identity(R.rows, R.mode)
    S = _pprod(R, R, counter)
    T = _pprod(_pprod(S, S, counter), R, counter)
    IR = I + R
    M = IR + _pprod(S, IR + S, counter)
    Y = _pprod(H, M, counter) + _iprod(X, T, counter)
    return _finish(Y, X)


def stepper(method: Method) -> Callable:
    """Return ``f(A, X, counter=None) -> X_next`` for ``method``."""
    if method.kind == "hp3":
        return step_hp3
    if method.kind == "horner6":
        return step_horner6
    if method.kind == "fast6":
        return step_fast6
    r = method.order
    return lambda A, X, counter=None: step_general(A, X, r, counter)


# ---------------------------------------------------------------- start and checks


def _power_of_two(c, mode):
    if mode.exact:
        return c
    e = round(math.log2(as_fraction(c)))
    return mode.convert(Fraction(2) ** e)


def _scale_candidates(A: PointMatrix, cfg: InitConfig):
    mode = A.mode
    if cfg.scaling is Scaling.NONE:
        return [mode.one]
    nrm = pm_norm(A, cfg.norm)
    if nrm == 0:
        return [mode.one] if cfg.scaling is Scaling.AUTO else []
    by_norm = _power_of_two(nrm, mode)
    by_norm2 = _power_of_two(mode.mul(nrm, nrm, UP), mode)
    if cfg.scaling is Scaling.BY_NORM:
        return [by_norm]
    if cfg.scaling is Scaling.BY_NORM_SQUARED:
        return [by_norm2]
    return [mode.one, by_norm, by_norm2]


def initial_bound(A: PointMatrix, norm: NormKind = NormKind.FROBENIUS):
    """Return ``(||I - A||, a)`` with ``a = 1/(1 - ||I - A||)`` rounded up, or ``a=None``."""
    mode = A.mode
    Y = PointMatrix.identity(A.rows, mode).thin() - A.thin()
    # |I - A| on thin intervals bounds the exact entries from above
    ny = pm_norm(im_abs(Y), norm)
    if ny >= 1:
        return ny, None
    return ny, mode.div(mode.one, mode.sub(mode.one, ny, DOWN), UP)


def build_initial_enclosure(A: PointMatrix, cfg: InitConfig | None = None):
    """Initial enclosure of ``(A/c)^-1`` with midpoint ``I``.

    Tries the scale factors allowed by ``cfg.scaling`` in order and returns
    ``(X0, c)`` for the first one with ``||I - A/c|| < 1``. Off-diagonal
    entries are ``[-a, a]`` and diagonal ones ``[-a, 2 + a]``. In the float
    modes ``c`` is rounded to a power of two so that ``A/c`` stays exact.
    """
    cfg = cfg or InitConfig()
    if A.rows != A.cols:
        raise DimensionError("initial enclosure needs a square matrix")
    mode, n = A.mode, A.rows
    tried = []
    for c in _scale_candidates(A, cfg):
        As = A.scale(mode.div(mode.one, c))
        ny, a = initial_bound(As, cfg.norm)
        tried.append((c, ny))
        if a is None:
            continue
        off = Interval(mode.neg(a), a)
        diag = Interval(mode.neg(a), mode.add(mode.convert(2), a, UP))
        entries = [diag if i == j else off for i in range(n) for j in range(n)]
        return IntervalMatrix(n, n, entries, mode), c
    detail = ", ".join(f"c={mode.format(c, 6)}: ||I-A/c||={mode.format(ny, 6)}" for c, ny in tried)
    raise NoInitialEnclosureError(
        "no scaling gives ||I - A/c|| < 1 (" + (detail or "no admissible scale") + "); "
        "the matrix may be singular or needs preconditioning, which is not supported"
    )


def verify_convergence_condition(A: PointMatrix, X0: IntervalMatrix) -> Verification:
    """Sufficient check of ``rho(|I - A X|) < 1`` for every ``X`` in ``X0``."""
    E = _identity(A.rows, A.mode) - im_mul(A.thin(), X0)
    rho = spectral_radius_nonneg(im_abs(E))
    return Verification(bool(rho < 1), rho)


# ---------------------------------------------------------------- driver


def run(A: PointMatrix, method: Method = FAST6, cfg: InitConfig | None = None,
        verify: bool = True, strict: bool = False,
        counter: ProductCounter | None = None) -> EnclosureRun:
    """Iterate ``method`` from the standard initial enclosure.

    All recorded enclosures are for ``A^-1`` itself, i.e. already rescaled
    by ``1/c``. With ``verify`` the convergence condition is checked on
    ``X0`` and, while it fails, on each later iterate (every iterate is a
    valid starting enclosure). ``strict`` turns a never-verified run into a
    :class:`ConvergenceConditionError`.
    """
    cfg = cfg or InitConfig()
    mode = A.mode
    X, c = build_initial_enclosure(A, cfg)
    inv_c = mode.div(mode.one, c)
    As = A.scale(inv_c)
    step = stepper(method)
    scaled = (lambda M: M) if c == 1 else (lambda M: M.scale(inv_c))

    result = EnclosureRun(method=method, scale=c)
    X_out = scaled(X)
    width = X_out.max_width()
    result.steps.append(Step(0, X_out, width))
    tol = mode.convert(Fraction(cfg.tol), UP)
    stagnation = mode.convert(Fraction(99, 100))
    if verify:
        result.verification = verify_convergence_condition(As, X)

    termination = Termination.WIDTH_TOL_MET if width <= tol else None
    k = 0
    while termination is None:
        k += 1
        try:
            X = step(As, X, counter)
        except EmptyIntersectionError as exc:
            exc.step = k
            raise
        X_out = scaled(X)
        prev, width = width, X_out.max_width()
        result.steps.append(Step(k, X_out, width))
        if verify and not result.verification.verified:
            v = verify_convergence_condition(As, X)
            result.verification = Verification(v.verified, v.rho_bound, k)
        if width <= tol:
            termination = Termination.WIDTH_TOL_MET
        elif width > mode.mul(prev, stagnation):
            termination = Termination.STAGNATED
        elif k >= cfg.max_iters:
            termination = Termination.MAX_ITERS
    result.termination = termination

    if verify and not result.verification.verified:
        msg = (f"convergence condition not verified (rho bound "
               f"{mode.format(result.verification.rho_bound, 6)})")
        if strict:
            raise ConvergenceConditionError(msg)
        log.warning(msg)
    return result


# ---------------------------------------------------------------- pseudo-inverse


def moore_penrose_residual(A: PointMatrix, X: PointMatrix) -> float:
    """Largest entry of the residuals of the four Moore-Penrose equations."""
    exact = ExactRational()
    Af = A.to_mode(exact)
    Xf = X.to_mode(exact)
    AX = pm_mul(Af, Xf)
    XA = pm_mul(Xf, Af)
    res = [
        pm_mul(AX, Af) - Af,
        pm_mul(XA, Xf) - Xf,
        AX - AX.transpose(),
        XA - XA.transpose(),
    ]
    return float(max(abs(v) for m in res for v in m.entries))


def _gram_inverse_estimate(A: PointMatrix, r: int, max_iter: int = 200):
    """Float estimate of ``(A A^T)^-1`` by the point order-``r`` hyper-power iteration.

    Starts from ``beta I`` with ``beta = 1/(||A||_row ||A||_col)``, so that
    ``beta A^T`` is the usual starting guess for the pseudo-inverse.
    """
    m, n = A.shape
    a = [[float(A[i, j]) for j in range(n)] for i in range(m)]
    g = [[math.fsum(a[i][k] * a[j][k] for k in range(n)) for j in range(m)] for i in range(m)]
    row = max(math.fsum(abs(x) for x in r_) for r_ in a)
    col = max(math.fsum(abs(a[i][j]) for i in range(m)) for j in range(n))
    beta = 1.0 / (row * col)

    def mul(p, q):
        return [[math.fsum(p[i][k] * q[k][j] for k in range(len(q))) for j in range(len(q[0]))]
                for i in range(len(p))]

    eye = [[float(i == j) for j in range(m)] for i in range(m)]
    b = [[beta * e for e in r_] for r_ in eye]
    best = math.inf
    for _ in range(max_iter):
        gb = mul(g, b)
        res = [[eye[i][j] - gb[i][j] for j in range(m)] for i in range(m)]
        size = max(math.fsum(abs(x) for x in r_) for r_ in res)
        if size >= best * 0.5 and size < 1e-8:
            break
        best = min(best, size)
        total, power = eye, eye
        for _ in range(r - 1):
            power = mul(power, res)
            total = [[total[i][j] + power[i][j] for j in range(m)] for i in range(m)]
        b = mul(b, total)
    return b


def enclose_pseudo_inverse(A: PointMatrix, method: Method = FAST6, cfg: InitConfig | None = None,
                           delta=None, mp_tol: float = 1e-10) -> EnclosureRun:
    """Iterate the hyper-power steppers for a full-rank rectangular ``A``.

    The start midpoint is ``H = A^T B``: ``B`` comes from point hyper-power
    steps in doubles on ``A A^T`` begun at ``beta I`` (``beta =
    1/(||A||_row ||A||_col)``), i.e. the point iteration for the
    pseudo-inverse begun at ``beta A^T``. Keeping ``H`` in the row space of
    ``A`` gives ``A^+ - H = A^+ R`` with ``R = I - A H``, hence the default
    half-width ``2 ||H|| ||R|| / (1 - ||R||)`` (row-sum norms). An explicit
    ``delta`` sets the entrywise width instead. Matrices with more rows than
    columns are handled through the transpose.

    Nothing here is certified beforehand: the final midpoint is checked
    against the Moore-Penrose equations and a residual above ``mp_tol``
    raises :class:`NoConvergenceError`, as does a width sequence that never
    contracts.
    """
    cfg = cfg or InitConfig()
    m, n = A.shape
    if m > n:
        sub = enclose_pseudo_inverse(A.transpose(), method, cfg, delta, mp_tol)
        sub.steps = [Step(s.k, _transpose(s.X), s.max_width) for s in sub.steps]
        return sub
    mode = A.mode
    B = PointMatrix.from_rows(_gram_inverse_estimate(A, method.order), mode)
    H = pm_mul(A.transpose(), B)
    if delta is None:
        R = _identity(m, mode) - im_mul(A.thin(), H.thin())
        q = pm_norm(im_abs(R), NormKind.ROW_SUM)
        if not q < 1:
            raise NoConvergenceError("could not find a start with ||I - A H|| < 1; is A full rank?")
        h = pm_norm(H, NormKind.ROW_SUM)
        half = mode.div(mode.mul(mode.mul(mode.convert(2), h, UP), q, UP),
                        mode.sub(mode.one, q, DOWN), UP)
    else:
        half = mode.convert(Fraction(delta) / 2, UP)
    X = IntervalMatrix(n, m, [Interval(mode.sub(x, half, DOWN), mode.add(x, half, UP))
                              for x in H.entries], mode)
    step = stepper(method)
    result = EnclosureRun(method=method, scale=mode.one)
    width = X.max_width()
    first = width
    result.steps.append(Step(0, X, width))
    tol = mode.convert(Fraction(cfg.tol), UP)
    stagnation = mode.convert(Fraction(99, 100))
    termination = None if width > tol else Termination.WIDTH_TOL_MET
    k = 0
    while termination is None:
        k += 1
        try:
            X = step(A, X)
        except EmptyIntersectionError as exc:
            exc.step = k
            raise
        prev, width = width, X.max_width()
        result.steps.append(Step(k, X, width))
        if width <= tol:
            termination = Termination.WIDTH_TOL_MET
        elif width > mode.mul(prev, stagnation):
            termination = Termination.STAGNATED
        elif k >= cfg.max_iters:
            termination = Termination.MAX_ITERS
    result.termination = termination
    if termination is Termination.MAX_ITERS and not width < first:
        raise NoConvergenceError(f"widths did not contract in {k} iterations")
    result.residual = moore_penrose_residual(A, im_midpoint(X))
    if result.residual > mp_tol:
        raise NoConvergenceError(
            f"midpoint violates the Moore-Penrose equations (residual {result.residual:.3e})")
    return result


def _transpose(X: IntervalMatrix) -> IntervalMatrix:
    return IntervalMatrix(X.cols, X.rows, [X[i, j] for j in range(X.cols) for i in range(X.rows)], X.mode)
