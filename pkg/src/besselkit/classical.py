"""Upper bounds on the Bessel sum for arbitrary finite vector families.

Each routine evaluates one inequality as an lhs/rhs pair over a ``Family``.
The catalogue, in the order implemented:

* ``boas_bellman``       max norm plus the Frobenius-style cross term
* ``bombieri``           max absolute Gram row sum
* ``selberg``            row-sum weighted coefficients vs ``||x||^2``
* ``dragomir03``         max norm plus ``(n-1)`` times the max cross term
* ``dragomir_pq``        Holder-interpolated variant, parameter ``p > 1``
* ``heilbronn``          first-power coefficient sum
* ``pecaric``            weighted coefficient sums, two nested bounds
* ``dragomir04``         weighted sums, three alternative right sides
* ``dragomir04_corollaries``  the three quotient forms at ``c_k = conj(a_k)``

Conventions: ``a_i = inner(x, y_i)`` are the coefficients of the family and
``S_i = sum_j |inner(y_i, y_j)|`` the absolute Gram row sums.  A max over an
empty index set (off-diagonal terms at n = 1) is 0.  Quotient expressions
are evaluated with the coefficient scale factored out, so families with
extremely small coefficients do not underflow to 0/0.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .core import DimensionMismatch, Family, ParameterError
from .report import BoundReport, evaluated, skipped

__all__ = [
    "ParameterError",
    "PecaricBounds",
    "Dragomir04Bounds",
    "bessel_sum",
    "boas_bellman",
    "bombieri",
    "selberg",
    "dragomir03",
    "dragomir_pq",
    "heilbronn",
    "pecaric",
    "dragomir04",
    "dragomir04_corollaries",
]


def _p_norm(values: np.ndarray, p: float) -> float:
    """``(sum v**p) ** (1/p)`` for non-negative values, overflow-safe."""
    m = float(values.max()) if values.size else 0.0
    if m == 0.0:
        return 0.0
    t = values / m
    return m * float((t**p).sum() ** (1.0 / p))


def bessel_sum(f: Family) -> float:
    """``sum_i |inner(x, y_i)|^2``, the quantity all bounds dominate."""
    return f.coefficients_sq_sum


def boas_bellman(f: Family) -> BoundReport:
    """Bessel sum vs ``||x||^2 [max ||y_i||^2 + sqrt(sum_{i!=j} |G_ij|^2)]``."""
    # summing the off-diagonal entries directly avoids the cancellation a
    # total-minus-diagonal shortcut would hit on near-orthonormal families
    sq = f.abs_gram**2
    np.fill_diagonal(sq, 0.0)
    cross = math.sqrt(float(sq.sum()))
    rhs = f.x_norm_sq * (float(f.abs_gram.diagonal().max()) + cross)
    return evaluated("boas_bellman", bessel_sum(f), rhs)


def bombieri(f: Family) -> BoundReport:
    """Bessel sum vs ``||x||^2 max_i S_i``."""
    return evaluated("bombieri", bessel_sum(f), f.x_norm_sq * f.max_row_sum)


def selberg(f: Family) -> BoundReport:
    """``sum_i |a_i|^2 / S_i`` vs ``||x||^2``; every ``y_i`` must be nonzero."""
    row_sums = f.gram_row_sums
    if np.any(row_sums == 0.0):
        idx = int(np.argmax(row_sums == 0.0))
        return skipped("selberg", f"test vector {idx} is zero")
    a2 = f.abs_coefficients**2
    return evaluated("selberg", float((a2 / row_sums).sum()), f.x_norm_sq)


def dragomir03(f: Family) -> BoundReport:
    """Bessel sum vs ``||x||^2 {max ||y_i||^2 + (n-1) max_{i!=j} |G_ij|}``."""
    diag_max = float(f.abs_gram.diagonal().max())
    if f.n > 1:
        off = f.abs_gram.copy()
        np.fill_diagonal(off, -np.inf)
        cross = (f.n - 1) * float(off.max())
    else:
        cross = 0.0
    return evaluated("dragomir03", bessel_sum(f), f.x_norm_sq * (diag_max + cross))


def dragomir_pq(f: Family, p: float) -> BoundReport:
    """Holder-interpolated Bombieri variant for conjugate exponents p, q.

    lhs is ``(sum |a_i|^2)^2`` divided by the p- and q-norms of the
    coefficients; rhs is the Bombieri right side.  At p = 2 the lhs
    collapses to the plain Bessel sum.
    """
    if p <= 1.0:
        raise ParameterError(f"p must exceed 1, got {p}")
    if f.max_abs_coefficient == 0.0:
        return skipped("dragomir_pq", "all coefficients inner(x, y_i) vanish")
    q = p / (p - 1.0)
    lhs = f.coefficients_sq_sum**2 / (f.coeff_p_norm(p) * f.coeff_p_norm(q))
    return evaluated("dragomir_pq", lhs, f.x_norm_sq * f.max_row_sum)


def heilbronn(f: Family) -> BoundReport:
    """``sum_i |a_i|`` vs ``||x|| sqrt(sum_{i,j} |G_ij|)``."""
    lhs = float(f.abs_coefficients.sum())
    rhs = f.x_norm * math.sqrt(float(f.abs_gram.sum()))
    return evaluated("heilbronn", lhs, rhs)


class PecaricBounds(NamedTuple):
    lhs: float
    rhs_first: float
    rhs_second: float


def pecaric(f: Family, c: Sequence[complex]) -> PecaricBounds:
    """Weighted-sum bound ``|sum c_k a_k|^2 <= rhs_first <= rhs_second``.

    ``rhs_first = ||x||^2 sum_i |c_i|^2 S_i`` and
    ``rhs_second = ||x||^2 (sum |c_k|^2) max_i S_i``.
    """
    carr = np.asarray(c, dtype=np.complex128)
    if carr.ndim != 1 or carr.size != f.n:
        raise DimensionMismatch(
            f"coefficient list must have length {f.n}, got shape {carr.shape}"
        )
    lhs = abs(np.dot(carr, f.coefficients)) ** 2
    c2 = carr.real**2 + carr.imag**2
    rhs_first = f.x_norm_sq * float(np.dot(c2, f.gram_row_sums))
    rhs_second = f.x_norm_sq * float(c2.sum()) * f.max_row_sum
    return PecaricBounds(float(lhs), rhs_first, rhs_second)


class Dragomir04Bounds(NamedTuple):
    lhs: float
    rhs_branch1: float
    rhs_branch2: float | None
    rhs_branch3: float


def dragomir04(f: Family, c: Sequence[complex], p: float | None = None) -> Dragomir04Bounds:
    """Weighted-sum bound with three alternative right sides.

    Branch 1 uses ``max_k |c_k|``, branch 2 the (p, q) norms (reported as
    None when ``p`` is absent or <= 1), branch 3 the max Gram entry.
    """
    carr = np.asarray(c, dtype=np.complex128)
    if carr.ndim != 1 or carr.size != f.n:
        raise DimensionMismatch(
            f"coefficient list must have length {f.n}, got shape {carr.shape}"
        )
    abs_c = np.abs(carr)
    sum_c = float(abs_c.sum())
    lhs = float(abs(np.dot(carr, f.coefficients)) ** 2)
    xsq = f.x_norm_sq
    rhs1 = xsq * float(abs_c.max()) * sum_c * f.max_row_sum
    rhs3 = xsq * sum_c**2 * f.max_abs_gram
    rhs2 = _dragomir04_branch2(f, abs_c, p) if p is not None and p > 1.0 else None
    return Dragomir04Bounds(lhs, rhs1, rhs2, rhs3)


def _dragomir04_branch2(f: Family, abs_c: np.ndarray, p: float) -> float:
    q = p / (p - 1.0)
    return (
        f.x_norm_sq
        * float(abs_c.sum())
        * _p_norm(abs_c, p)
        * f.row_q_norm_max(q)
    )


def _cor2_report(f: Family, p: float | None) -> BoundReport:
    if p is None or p <= 1.0:
        return skipped("dragomir04_cor2", "requires p > 1")
    if f.max_abs_coefficient == 0.0:
        return skipped("dragomir04_cor2", "all coefficients inner(x, y_i) vanish")
    q = p / (p - 1.0)
    lhs = f.coefficients_sq_sum**2 / (f.coeff_p_norm(1.0) * f.coeff_p_norm(p))
    return evaluated("dragomir04_cor2", lhs, f.x_norm_sq * f.row_q_norm_max(q))


def dragomir04_corollaries(
    f: Family, p: float | None = None
) -> tuple[BoundReport, BoundReport, BoundReport]:
    """The three quotient inequalities at the choice ``c_k = conj(a_k)``.

    Each report's lhs is the printed quotient of coefficient sums, the rhs
    the matching Gram expression.  Requires not all coefficients zero; the
    second quotient needs ``p > 1`` and is skipped otherwise.
    """
    max_a = f.max_abs_coefficient
    if max_a == 0.0:
        reason = "all coefficients inner(x, y_i) vanish"
        return (
            skipped("dragomir04_cor1", reason),
            skipped("dragomir04_cor2", reason),
            skipped("dragomir04_cor3", reason),
        )
    xsq = f.x_norm_sq
    sq2 = f.coefficients_sq_sum**2
    sum_a = f.coeff_p_norm(1.0)
    rep1 = evaluated("dragomir04_cor1", sq2 / (max_a * sum_a), xsq * f.max_row_sum)
    rep2 = _cor2_report(f, p)
    rep3 = evaluated("dragomir04_cor3", sq2 / sum_a**2, xsq * f.max_abs_gram)
    return rep1, rep2, rep3
