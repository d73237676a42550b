"""Volume density evaluation and the radial eigenfunction ODE.

Covers four jobs: pointwise evaluation of
Theta(r) = 2^(n-1) sinh(r/2)^(n-1) cosh(r/2)^b and its logarithmic
derivative; the exact series oracle for omega'/omega near r = 0; an exact
power-series start for f'' + (Theta'/Theta) f' + lam f = 0 at its regular
singular point; and fixed-step RK4 continuation used to verify that
cosh r + c solves the equation on a long interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backends
from .constants import DensityExponents, HarmonicParams, SpectralConstants, density_exponents
from .series import LaurentSeries, ledger_pole_and_curvature, log_theta_analytic_coefficients, omega_log_derivative_series


class BlowupError(RuntimeError):
    """The integrated solution left [0, 1e12] before reaching r_max."""


class SeriesStartError(RuntimeError):
    """The power-series recurrence produced non-finite coefficients."""


@dataclass(frozen=True)
class DensityEval:
    r: float
    theta: float
    log_theta_prime: float


def log_theta_prime(exponents: DensityExponents, r: float) -> float:
    """Theta'/Theta at r > 0: ((n-1)/2) coth(r/2) + (b/2) tanh(r/2)."""
    nm1 = float(exponents.sinh_half_exp)
    b = float(exponents.cosh_half_exp)
    x = 0.5 * r
    return 0.5 * nm1 * math.cosh(x) / math.sinh(x) + 0.5 * b * math.tanh(x)


def eval_density(exponents: DensityExponents, r: float) -> DensityEval:
    """Theta(r) and Theta'/Theta at a single radius r > 0."""
    if r <= 0:
        raise ValueError(f"r must be > 0 (Theta'/Theta has a pole at 0), got {r}")
    nm1 = float(exponents.sinh_half_exp)
    b = float(exponents.cosh_half_exp)
    x = 0.5 * r
    theta = 2.0 ** float(exponents.log2_prefactor) * math.sinh(x) ** nm1 * math.cosh(x) ** b
    return DensityEval(r=r, theta=theta, log_theta_prime=log_theta_prime(exponents, r))


def ledger_series(params: HarmonicParams, constants: SpectralConstants) -> LaurentSeries:
    """Exact expansion of omega'/omega for the given constant set (through r^9)."""
    return omega_log_derivative_series(params.n, constants.lam, constants.c_lam)


def ledger_series_oracle(
    params: HarmonicParams, constants: SpectralConstants
) -> tuple[Fraction, Fraction]:
    """(pole coefficient, omega''(0)) of omega'/omega, exact rationals.

    A consistent constant set has pole == 0 and omega''(0) == k/3.
    """
    return ledger_pole_and_curvature(params.n, constants.lam, constants.c_lam)


@dataclass(frozen=True)
class RadialODE:
    """f'' + (Theta'/Theta) f' + lam f = 0 with Theta given by ``exponents``."""

    n: int
    exponents: DensityExponents
    lam: Fraction

    @classmethod
    def from_constants(cls, params: HarmonicParams, constants: SpectralConstants) -> "RadialODE":
        return cls(n=params.n, exponents=density_exponents(params, constants), lam=constants.lam)

    def coefficient(self, r: float) -> float:
        return log_theta_prime(self.exponents, r)


@dataclass(frozen=True)
class IntegrationConfig:
    series_order: int = 12
    switch_radius: float = 0.5
    step: float = 1e-3
    r_max: float = 8.0

    def __post_init__(self) -> None:
        if self.series_order < 8:
            raise ValueError("series_order must be >= 8")
        if not 0.0 < self.switch_radius < 1.0:
            raise ValueError("switch_radius must lie in (0, 1)")
        if not 0.0 < self.step <= 1e-2:
            raise ValueError("step must lie in (0, 1e-2]")
        if self.r_max <= 0.0:
            raise ValueError("r_max must be > 0")


@dataclass(frozen=True)
class FrobeniusSeries:
    """Even truncated power series f = a_0 + a_2 r^2 + ... with exact coefficients.

    ``coefficients[m]`` is the (rational) coefficient of r^(2m).
    """

    coefficients: tuple[Fraction, ...]

    def _floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]

    def value(self, r):
        r2 = np.asarray(r, dtype=float) ** 2
        acc = np.zeros_like(r2)
        for c in reversed(self._floats()):
            acc = acc * r2 + c
        return acc if acc.ndim else float(acc)

    def derivative(self, r):
        rr = np.asarray(r, dtype=float)
        r2 = rr**2
        acc = np.zeros_like(r2)
        for m in range(len(self.coefficients) - 1, 0, -1):
            acc = acc * r2 + 2 * m * float(self.coefficients[m])
        acc = acc * rr
        return acc if acc.ndim else float(acc)

    def second_derivative(self, r):
        r2 = np.asarray(r, dtype=float) ** 2
        acc = np.zeros_like(r2)
        for m in range(len(self.coefficients) - 1, 0, -1):
            acc = acc * r2 + 2 * m * (2 * m - 1) * float(self.coefficients[m])
        return acc if acc.ndim else float(acc)


def frobenius_start(
    ode: RadialODE, f0: Fraction | int, config: IntegrationConfig
) -> FrobeniusSeries:
    """Even power-series solution with f(0) = f0, f'(0) = 0, exact coefficients.

    r = 0 is a regular singular point with Theta'/Theta = (n-1)/r + (odd
    analytic part); the exponent-zero branch is an even series whose
    coefficients follow from
    a_s = -(lam a_{s-2} + sum_j A_j (s-1-j) a_{s-1-j}) / (s (s + n - 2)).
    """
    f0 = Fraction(f0)
    if f0 == 0:
        raise ValueError("f0 must be nonzero")
    order = config.series_order
    coeffs_a = log_theta_analytic_coefficients(
        ode.n, ode.exponents.cosh_half_exp, order
    )
    a: dict[int, Fraction] = {0: f0}
    for s in range(2, order + 1, 2):
        acc = ode.lam * a[s - 2]
        for j in range(1, s, 2):
            mu = s - 1 - j
            if mu > 0:
                acc += coeffs_a[j] * mu * a[mu]
        a[s] = -acc / (s * (s + ode.n - 2))
    series = FrobeniusSeries(tuple(a[m] for m in range(0, order + 1, 2)))
    if not all(math.isfinite(x) for x in series._floats()):
        raise SeriesStartError("series recurrence produced non-finite coefficients")
    return series


@dataclass(frozen=True)
class RadialSolution:
    """Sampled solution on [0, r_max]; r[i] = i * step, f' alongside f."""

    r: np.ndarray
    f: np.ndarray
    df: np.ndarray
    switch_index: int


def integrate_radial(
    ode: RadialODE, f0: Fraction | int, config: IntegrationConfig
) -> RadialSolution:
    """Series start on [0, switch_radius], RK4 continuation to r_max.

    Deterministic for fixed inputs; raises BlowupError if |f| exceeds 1e12
    before r_max.
    """
    series = frobenius_start(ode, f0, config)
    step = config.step
    n_series = int(math.floor(min(config.switch_radius, config.r_max) / step + 1e-9))
    r_series = np.arange(n_series + 1) * step
    f_series = series.value(r_series)
    df_series = series.derivative(r_series)
    if r_series[-1] >= config.r_max - 1e-12:
        return RadialSolution(r=r_series, f=f_series, df=df_series, switch_index=n_series)

    r0 = float(r_series[-1])
    nsteps = int(math.floor((config.r_max - r0) / step + 1e-9))
    fs, dfs, ndone = backends.rk4_radial(
        f_series[-1],
        df_series[-1],
        r0,
        step,
        nsteps,
        0.5 * float(ode.exponents.sinh_half_exp),
        0.5 * float(ode.exponents.cosh_half_exp),
        float(ode.lam),
    )
    if ndone < nsteps:
        raise BlowupError(
            f"|f| exceeded {backends.BLOWUP_LIMIT:.0e} at r ~ {r0 + ndone * step:.3f}"
        )
    r_all = np.concatenate([r_series, r0 + step * np.arange(1, nsteps + 1)])
    return RadialSolution(
        r=r_all,
        f=np.concatenate([f_series, fs[1:]]),
        df=np.concatenate([df_series, dfs[1:]]),
        switch_index=n_series,
    )


def default_residual_grid(r_max: float = 8.0, step: float = 0.05) -> np.ndarray:
    """The pole-avoiding grid {step, 2*step, ..., r_max}."""
    return np.arange(1, int(round(r_max / step)) + 1) * step


def eigen_residual(
    constants: SpectralConstants, exponents: DensityExponents, grid
) -> float:
    """max_r |f'' + (Theta'/Theta) f' + lam f| at f = cosh r + c on the grid.

    Analytically zero for a consistent constant set, so the result is pure
    floating-point noise there; a wrong c shows up as |lam| * |delta c|.
    """
    if constants.lam == 0:
        raise ValueError("lam must be nonzero for the radial eigenfunction check")
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0):
        raise ValueError("grid must be a nonempty 1-d array of positive radii")
    nm1 = float(exponents.sinh_half_exp)
    b = float(exponents.cosh_half_exp)
    lam = float(constants.lam)
    c = float(constants.c)
    x = 0.5 * grid
    coeff = 0.5 * nm1 * np.cosh(x) / np.sinh(x) + 0.5 * b * np.tanh(x)
    residual = np.cosh(grid) + coeff * np.sinh(grid) + lam * (np.cosh(grid) + c)
    return float(np.max(np.abs(residual)))


def max_relative_error_vs_closed_form(
    solution: RadialSolution, c: Fraction | float, r_cap: float | None = None
) -> float:
    """max |f_num - (cosh r + c)| / |cosh r + c| over the table (r <= r_cap)."""
    mask = np.ones_like(solution.r, dtype=bool) if r_cap is None else solution.r <= r_cap + 1e-12
    exact = np.cosh(solution.r[mask]) + float(c)
    return float(np.max(np.abs(solution.f[mask] - exact) / np.abs(exact)))


def step_halving_delta(
    ode: RadialODE, f0: Fraction | int, config: IntegrationConfig
) -> float:
    """Relative change of f(r_max) when the step is halved (self-check)."""
    coarse = integrate_radial(ode, f0, config)
    fine_cfg = IntegrationConfig(
        series_order=config.series_order,
        switch_radius=config.switch_radius,
        step=config.step / 2.0,
        r_max=config.r_max,
    )
    fine = integrate_radial(ode, f0, fine_cfg)
    return abs(float(coarse.f[-1]) - float(fine.f[-1])) / max(1.0, abs(float(fine.f[-1])))


def density_table(exponents: DensityExponents, r_values) -> list[DensityEval]:
    return [eval_density(exponents, float(r)) for r in np.asarray(r_values, dtype=float)]


def density_table_csv(exponents: DensityExponents, r_values) -> str:
    """CSV with header r,theta,log_theta_prime; 17 significant digits."""
    rows = ["r,theta,log_theta_prime"]
    for ev in density_table(exponents, r_values):
        rows.append(f"{ev.r:.17g},{ev.theta:.17g},{ev.log_theta_prime:.17g}")
    return "\n".join(rows) + "\n"
