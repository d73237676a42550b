"""Exact series machinery for the radial density derivative.

Everything in this module is exact rational arithmetic (``fractions.Fraction``);
no floats enter. Two independent routes to the hyperbolic-cotangent family are
kept on purpose:

* frozen coefficient tables through r^9 (``COTH_TABLE`` / ``CSCH_TABLE``),
  which back the curvature oracle, and
* a Bernoulli-number generator (``coth_coefficients`` and friends) for
  arbitrary order, which backs the power-series ODE start.

The test suite cross-checks one route against the other so a typo in either
cannot pass silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

# Laurent coefficients of coth r, keyed by the power of r.  Frozen by hand;
# only odd powers occur.
COTH_TABLE: dict[int, Fraction] = {
    -1: Fraction(1),
    1: Fraction(1, 3),
    3: Fraction(-1, 45),
    5: Fraction(2, 945),
    7: Fraction(-1, 4725),
    9: Fraction(2, 93555),
}

# Laurent coefficients of 1/sinh r.
CSCH_TABLE: dict[int, Fraction] = {
    -1: Fraction(1),
    1: Fraction(-1, 6),
    3: Fraction(7, 360),
    5: Fraction(-31, 15120),
    7: Fraction(127, 604800),
    9: Fraction(-73, 3421440),
}

TABLE_ORDER = 9


def bernoulli_numbers(count: int) -> list[Fraction]:
    """First ``count`` Bernoulli numbers B_0, B_1, ... (convention B_1 = -1/2).

    Uses the defining recurrence sum_{j<=m} C(m+1, j) B_j = 0, exactly.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out: list[Fraction] = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * out[j]
        out.append(-acc / (m + 1))
    return out


def coth_coefficients(order: int) -> dict[int, Fraction]:
    """Laurent coefficients of coth x for all odd powers -1 <= j <= order.

    The x^(2n-1) coefficient is 2^(2n) B_{2n} / (2n)!.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    bern = bernoulli_numbers(order + 2)
    coeffs: dict[int, Fraction] = {}
    n = 0
    while 2 * n - 1 <= order:
        coeffs[2 * n - 1] = Fraction(2 ** (2 * n)) * bern[2 * n] / factorial(2 * n)
        n += 1
    return coeffs


def tanh_coefficients(order: int) -> dict[int, Fraction]:
    """Taylor coefficients of tanh x (odd powers 1 <= j <= order).

    Derived from coth via tanh x = 2 coth 2x - coth x; the poles cancel.
    """
    kc = coth_coefficients(order)
    return {j: c * (Fraction(2) ** (j + 1) - 1) for j, c in kc.items() if j >= 1}


def csch_coefficients(order: int) -> dict[int, Fraction]:
    """Laurent coefficients of 1/sinh x, from csch x = coth(x/2) - coth x."""
    kc = coth_coefficients(order)
    return {j: c * (Fraction(2) ** (-j) - 1) for j, c in kc.items() if j >= 1} | {-1: Fraction(1)}


@dataclass(frozen=True)
class LaurentSeries:
    """Simple pole plus odd analytic part: p/r + sum_m odd_coefficients[m] r^(2m+1).

    ``odd_coefficients[m]`` is the coefficient of r^(2m+1).
    """

    pole_coefficient: Fraction
    odd_coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.odd_coefficients) < 3:
            raise ValueError("series must carry at least the r, r^3, r^5 terms")

    def coefficient(self, power: int) -> Fraction:
        if power == -1:
            return self.pole_coefficient
        if power >= 1 and power % 2 == 1:
            idx = (power - 1) // 2
            if idx < len(self.odd_coefficients):
                return self.odd_coefficients[idx]
        return Fraction(0)


def omega_log_derivative_series(n: int, lam: Fraction, c_lam: Fraction) -> LaurentSeries:
    """Exact expansion of omega'/omega = -(1+lam) coth r - c_lam/sinh r - (n-1)/r.

    Built from the frozen coefficient tables, so it is valid through r^9.
    omega is the density in normal coordinates, normalized to omega(0) = 1 with
    omega'(0) = 0; the expansion therefore has the shape
    (pole)/r + omega''(0) r + O(r^3).
    """
    pole = -(1 + lam) * COTH_TABLE[-1] - c_lam * CSCH_TABLE[-1] - (n - 1)
    odd = tuple(
        -(1 + lam) * COTH_TABLE[j] - c_lam * CSCH_TABLE[j]
        for j in range(1, TABLE_ORDER + 1, 2)
    )
    return LaurentSeries(pole_coefficient=pole, odd_coefficients=odd)


def ledger_pole_and_curvature(
    n: int, lam: Fraction, c_lam: Fraction
) -> tuple[Fraction, Fraction]:
    """(1/r coefficient, omega''(0)) of the omega'/omega expansion, exactly.

    For a consistent constant set the pole must vanish (equivalent to
    1 + lam + c_lam = 1 - n) and omega''(0) must equal -Ricci/3 = k/3
    (Ledger's formula with Ricci = -k).
    """
    series = omega_log_derivative_series(n, lam, c_lam)
    return series.pole_coefficient, series.coefficient(1)


def log_theta_analytic_coefficients(
    n: int, b: Fraction, order: int
) -> dict[int, Fraction]:
    """Odd-power coefficients A_j of Theta'/Theta = (n-1)/r + sum_j A_j r^j.

    Theta'/Theta = ((n-1)/2) coth(r/2) + (b/2) tanh(r/2); halving the argument
    scales the x^j coefficient by 2^-j.  Generated exactly to any order via
    the Bernoulli route (the frozen tables stop at r^9).
    """
    kc = coth_coefficients(order)
    tc = tanh_coefficients(order)
    half = Fraction(1, 2)
    return {
        j: (Fraction(n - 1) * kc[j] + b * tc[j]) * half * Fraction(2) ** (-j)
        for j in range(1, order + 1, 2)
    }
