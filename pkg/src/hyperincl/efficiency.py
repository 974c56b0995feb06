"""Cost model comparing hyper-power variants.

CPU time of an iterative method is modelled as

    cpu = h * log(q) * theta / log(r)

with ``theta`` the weighted cost of one iteration and ``r`` the order.
Additions of ``b``-bit numbers weigh ``b``; multiplications weigh
``b log b log log b`` (Schoenhage-Strassen). A product of two ``n x n``
matrices costs ``n^2 (n - 1)`` additions and ``n^3`` multiplications, the
interval-by-point product is charged as two point products for the
multiplications and one for the additions, and every matrix addition adds
``n^2``. All logarithms are natural.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import PreconditionError


@dataclass(frozen=True)
class CostModel:
    b: int = 64
    h: float = 1.0
    q: int = 16

    def __post_init__(self):
        if self.b < 3:
            raise PreconditionError("bit size b must be at least 3 so that log(log(b)) > 0")
        if self.h <= 0 or self.q < 1:
            raise PreconditionError("h must be positive and q at least 1")


def mult_weight(b: float) -> float:
    return b * math.log(b) * math.log(math.log(b))


def _check(n, b):
    if n < 1:
        raise PreconditionError("matrix size n must be at least 1")
    if b < 3:
        raise PreconditionError("bit size b must be at least 3")


def theta_horner6(n: float, b: float) -> float:
    _check(n, b)
    return (9 * n**3 - 3 * n**2) * b + 10 * n**3 * mult_weight(b)


def theta_fast6(n: float, b: float) -> float:
    _check(n, b)
    return (7 * n**3 - n**2) * b + 8 * n**3 * mult_weight(b)


def powchain(e: int) -> int:
    """Products used by binary powering to form ``R**e``."""
    if e < 1:
        raise PreconditionError("exponent must be positive")
    return e.bit_length() - 1 + bin(e).count("1") - 1


def point_products(r: int) -> int:
    """Point products in one order-``r`` Horner step: residual, Horner sum, power, ``m * sum``."""
    if r < 2:
        raise PreconditionError("order r must be at least 2")
    return 1 + max(r - 3, 0) + powchain(r - 1) + 1


def matrix_additions(r: int) -> int:
    # residual, r - 2 Horner levels, final sum
    return r


def theta_general(n: float, b: float, r: int) -> float:
    _check(n, b)
    p = point_products(r)
    additions = (p + 1) * (n**3 - n**2) + matrix_additions(r) * n**2
    return additions * b + (p + 2) * n**3 * mult_weight(b)


def cpu_time(model: CostModel, r_order: float, theta_value: float) -> float:
    if not r_order > 1:
        raise PreconditionError("convergence order must exceed 1")
    return model.h * math.log(model.q) * theta_value / math.log(r_order)


@dataclass(frozen=True)
class MethodCost:
    name: str
    order: int
    point_mults: int
    interval_mults: int
    theta: Callable[[float, float], float]


HORNER6_COST = MethodCost("horner6", 6, 8, 1, theta_horner6)
FAST6_COST = MethodCost("fast6", 6, 6, 1, theta_fast6)


def general_cost(r: int) -> MethodCost:
    return MethodCost(f"general({r})", r, point_products(r), 1,
                      lambda n, b, r=r: theta_general(n, b, r))


HP3_COST = MethodCost("hp3", 3, point_products(3), 1, lambda n, b: theta_general(n, b, 3))


def efficiency_ratio(m1: MethodCost, m2: MethodCost, n: float, b: float) -> float:
    """CPU-time ratio of ``m1`` to ``m2``; above 1 means ``m2`` is cheaper."""
    if not (m1.order > 1 and m2.order > 1):
        raise PreconditionError("convergence orders must exceed 1")
    return (math.log(m2.order) / math.log(m1.order)) * (m1.theta(n, b) / m2.theta(n, b))


def er_horner6_fast6(n: float, b: float) -> float:
    """Closed form of the Horner-6 over fast-6 ratio."""
    L = math.log(b) * math.log(math.log(b))
    return (9 - 3 / n + 10 * L) / (7 - 1 / n + 8 * L)


def emit_er_table(n_range: Iterable[int], b_list: Iterable[int]) -> list[tuple[int, int, float]]:
    """Rows ``(n, b, er)``, ``n`` outer and ``b`` inner."""
    ns, bs = list(n_range), list(b_list)
    if not ns or not bs:
        raise PreconditionError("empty n range or bit list")
    return [(n, b, efficiency_ratio(HORNER6_COST, FAST6_COST, n, b)) for n in ns for b in bs]


def er_table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "b", "er"])
    for n, b, er in rows:
        w.writerow([n, b, repr(er)])
    return buf.getvalue()
