"""Concrete point configurations with exact pairwise distances.

Two carriers: the hyperboloid model of H^n inside Minkowski (n+1)-space,
Q(x, y) = -x0 y0 + sum_i xi yi, sheet Q(x, x) = -1 with x0 >= 1; and
abstract geodesic-line configurations s_1 < ... < s_m whose distances are
|s_i - s_j| in any space.  All sampling is driven by numpy's PCG64
generator so a seed fully determines every configuration on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

ON_SHEET_TOL = 1e-12


class ProfileFitError(RuntimeError):
    """The two-parameter distance profile failed its verification samples."""


def minkowski_form(x, y) -> float:
    """Q(x, y) = -x0 y0 + sum_{i>=1} xi yi."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(x[1:] @ y[1:] - x[0] * y[0])


def on_sheet_defect(x) -> float:
    """|Q(x, x) + 1|; zero on the upper sheet."""
    return abs(minkowski_form(x, x) + 1.0)


def _require_on_sheet(x, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    # scale-aware: the defect of a genuine sheet point grows like eps * |x|^2
    scale = max(1.0, float(x @ x))
    if on_sheet_defect(x) > ON_SHEET_TOL * scale or x[0] < 1.0 - 1e-12:
        raise ValueError(f"{what} is not on the sheet Q(x,x) = -1, x0 >= 1")
    return x


def basepoint(n: int) -> np.ndarray:
    e = np.zeros(n + 1)
    e[0] = 1.0
    return e


def distance(p, q) -> float:
    """Geodesic distance arccosh(-Q(p, q)); the clamp at 1 absorbs roundoff.

    Identical coordinate vectors short-circuit to exactly 0: -Q(p, p) rounds
    to 1 +- eps*|p|^2 and arccosh would amplify that to ~sqrt(eps).
    """
    p = _require_on_sheet(p, "p")
    q = _require_on_sheet(q, "q")
    if np.array_equal(p, q):
        return 0.0
    return math.acosh(max(-minkowski_form(p, q), 1.0))


def pairwise_distances(points) -> np.ndarray:
    """Distance matrix of a stack of sheet points; bitwise symmetric, zero diagonal."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected an (m, n+1) array of points")
    for row in pts:
        _require_on_sheet(row, "point")
    gram = pts[:, 1:] @ pts[:, 1:].T - np.outer(pts[:, 0], pts[:, 0])
    d = np.arccosh(np.clip(-gram, 1.0, None))
    upper = np.triu(d, 1)
    return upper + upper.T


@dataclass(frozen=True)
class Geodesic:
    """Unit-speed geodesic t -> cosh(t) base + sinh(t) tangent."""

    base: np.ndarray
    tangent: np.ndarray

    def __post_init__(self) -> None:
        base = _require_on_sheet(self.base, "base")
        tangent = np.asarray(self.tangent, dtype=float)
        if tangent.shape != base.shape:
            raise ValueError("base and tangent dimensions differ")
        scale = max(1.0, float(base @ base), float(tangent @ tangent))
        if abs(minkowski_form(base, tangent)) > ON_SHEET_TOL * scale:
            raise ValueError("tangent is not Q-orthogonal to base")
        if abs(minkowski_form(tangent, tangent) - 1.0) > ON_SHEET_TOL * scale:
            raise ValueError("tangent is not unit spacelike")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "tangent", tangent)


def geodesic_point(g: Geodesic, t: float) -> np.ndarray:
    return math.cosh(t) * g.base + math.sinh(t) * g.tangent


@dataclass
class SeededSampler:
    """Deterministic point source: numpy Generator over the PCG64 bit stream.

    One sampler owns one stream; share work by cloning (same seed, fresh
    stream), never by drawing from one sampler concurrently.
    """

    seed: int
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = np.random.Generator(np.random.PCG64(int(self.seed)))

    def clone(self) -> "SeededSampler":
        return SeededSampler(self.seed)


def random_points(sampler: SeededSampler, n: int, m: int, radius: float) -> np.ndarray:
    """m sheet points within `radius` of the basepoint, (m, n+1) array.

    Spatial parts are uniform in the Euclidean ball of norm sinh(radius)
    (unit direction times U^(1/n) radius scaling); x0 = sqrt(1 + |X|^2)
    lifts each draw back onto the sheet.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if radius <= 0:
        raise ValueError("radius must be > 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    ball = math.sinh(radius)
    out = np.empty((m, n + 1))
    for i in range(m):
        direction = sampler.rng.standard_normal(n)
        norm = float(np.linalg.norm(direction))
        while norm == 0.0:
            direction = sampler.rng.standard_normal(n)
            norm = float(np.linalg.norm(direction))
        x = direction / norm * (sampler.rng.random() ** (1.0 / n)) * ball
        out[i, 0] = math.sqrt(1.0 + float(x @ x))
        out[i, 1:] = x
    return out


def random_unit_tangent(sampler: SeededSampler, x) -> np.ndarray:
    """Q-unit tangent vector at the sheet point x, uniformly random direction."""
    x = _require_on_sheet(x, "x")
    while True:
        v = sampler.rng.standard_normal(x.shape[0])
        v = v + minkowski_form(v, x) * x  # project Q-orthogonally to x
        norm_sq = minkowski_form(v, v)
        if norm_sq > 1e-12:
            return v / math.sqrt(norm_sq)


def random_geodesic(sampler: SeededSampler, n: int, radius: float = 1.0) -> Geodesic:
    base = random_points(sampler, n, 1, radius)[0]
    return Geodesic(base=base, tangent=random_unit_tangent(sampler, base))


def tangent_frame(x) -> np.ndarray:
    """Orthonormal basis (rows) of the tangent space at x, Q-orthonormal.

    Q restricted to {v : Q(x, v) = 0} is positive definite, so Gram-Schmidt
    over the projected ambient basis is safe.
    """
    x = _require_on_sheet(x, "x")
    n = x.shape[0] - 1
    frame: list[np.ndarray] = []
    for i in range(n + 1):
        e = np.zeros(n + 1)
        e[i] = 1.0
        v = e + minkowski_form(e, x) * x
        for u in frame:
            v = v - minkowski_form(v, u) * u
        norm_sq = minkowski_form(v, v)
        if norm_sq > 1e-10:
            frame.append(v / math.sqrt(norm_sq))
        if len(frame) == n:
            break
    if len(frame) != n:
        raise RuntimeError("failed to build a full tangent frame")
    return np.array(frame)


def foot_distance_profile(
    g: Geodesic, q, samples=(-2.0, -1.0, 0.0, 1.0, 2.0), tol: float = 1e-9
) -> tuple[float, float]:
    """(rho, t0) with cosh d(gamma(t), q) = cosh(rho) cosh(t - t0) for all t.

    rho is the distance from q to the geodesic, t0 the parameter of the foot
    of the perpendicular.  The fit is re-verified at the sample parameters;
    a violation beyond `tol` raises ProfileFitError (it would mean the model
    arithmetic itself is broken).
    """
    q = _require_on_sheet(q, "q")
    a = -minkowski_form(g.base, q)
    b = -minkowski_form(g.tangent, q)
    rho = math.acosh(math.sqrt(max(a * a - b * b, 1.0)))
    t0 = math.atanh(-b / a)
    for t in samples:
        lhs = math.cosh(distance(geodesic_point(g, t), q))
        rhs = math.cosh(rho) * math.cosh(t - t0)
        if abs(lhs - rhs) > tol:
            raise ProfileFitError(
                f"profile residual {abs(lhs - rhs):.3e} at t = {t} exceeds {tol:g}"
            )
    return rho, t0


@dataclass(frozen=True)
class LineConfig:
    """Points gamma(s_1), ..., gamma(s_m) on a unit-speed geodesic; distances |s_i - s_j|."""

    parameters: tuple[float, ...]

    def __post_init__(self) -> None:
        params = tuple(float(s) for s in self.parameters)
        if len(params) < 1:
            raise ValueError("need at least one parameter")
        if any(b <= a for a, b in zip(params, params[1:])):
            raise ValueError("parameters must be strictly increasing")
        object.__setattr__(self, "parameters", params)

    @property
    def m(self) -> int:
        return len(self.parameters)

    def distance_matrix(self) -> np.ndarray:
        s = np.asarray(self.parameters)
        return np.abs(s[:, None] - s[None, :])


def evenly_spaced_line(m: int, lo: float = -5.0, hi: float = 5.0) -> LineConfig:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return LineConfig((lo,))
    return LineConfig(tuple(np.linspace(lo, hi, m)))


def points_to_csv(points) -> str:
    """One row per point, columns x0..xn, 17 significant digits."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected an (m, n+1) array of points")
    header = ",".join(f"x{i}" for i in range(pts.shape[1]))
    rows = [header]
    for row in pts:
        rows.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(rows) + "\n"
