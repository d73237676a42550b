"""Indefinite bilinear forms built from distance kernels, and their analysis.

The form of interest evaluates one kernel function at another's basepoint:
B(f_p, f_q) = cosh d(p, q) + c (``gram_f``), or the bare cosh d(p, q)
(``gram_phi``, the embedding kernel, whose diagonal is exactly 1).  Rank and
signature of these matrices witness the finite dimensionality of the span
of the distance kernels; finite-difference checks verify the embedding
identities (velocity norm -1, the third-derivative law g''' = g' along
geodesics, and the cone gradient inequality |grad h| <= h).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .backends import jacobi_eigh
from .model_spaces import (
    Geodesic,
    LineConfig,
    SeededSampler,
    distance,
    geodesic_point,
    pairwise_distances,
    random_geodesic,
    random_points,
    tangent_frame,
)

RANK_RTOL = 1e-8             # |mu| <= RANK_RTOL * max|mu| counts as zero
JACOBI_OFF_RTOL = 1e-13      # off-diagonal Frobenius target, relative to ||A||_F
TRIANGLE_TOL = 1e-9


@dataclass(frozen=True)
class DistanceConfig:
    """Validated symmetric distance matrix: zero diagonal, triangle inequality."""

    dist: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.diag(d) != 0.0):
            raise ValueError("distance matrix must have a zero diagonal")
        if np.any(d < 0.0):
            raise ValueError("distances must be nonnegative")
        worst = 0.0
        for k in range(d.shape[0]):
            worst = max(worst, float(np.max(d - d[:, [k]] - d[[k], :])))
        if worst > TRIANGLE_TOL:
            raise ValueError(f"triangle inequality violated by {worst:.3e}")
        object.__setattr__(self, "dist", d)

    @property
    def m(self) -> int:
        return self.dist.shape[0]

    @classmethod
    def from_line(cls, line: LineConfig) -> "DistanceConfig":
        return cls(line.distance_matrix())

    @classmethod
    def from_points(cls, points) -> "DistanceConfig":
        return cls(pairwise_distances(points))


@dataclass(frozen=True)
class GramAnalysis:
    """Symmetric kernel matrix with eigenvalues, rank and signature.

    ``tolerance`` is the relative zero cut: |mu| <= tolerance * max|mu|.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int
    signature: tuple[int, int, int]
    tolerance: float
    c: float

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "c": self.c,
            "eigenvalues": [float(w) for w in self.eigenvalues],
            "rank": self.rank,
            "signature": list(self.signature),
            "tolerance": self.tolerance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def analyze_symmetric(matrix, c: float = 0.0, tolerance: float = RANK_RTOL) -> GramAnalysis:
    """Eigendecompose (cyclic Jacobi) and count the signature at `tolerance`."""
    matrix = np.asarray(matrix, dtype=float)
    w, v, _ = jacobi_eigh(matrix, rel_tol=JACOBI_OFF_RTOL)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    cut = tolerance * scale
    n_plus = int(np.sum(w > cut))
    n_minus = int(np.sum(w < -cut))
    rank = n_plus + n_minus
    return GramAnalysis(
        matrix=matrix,
        eigenvalues=w,
        eigenvectors=v,
        rank=rank,
        signature=(n_plus, n_minus, matrix.shape[0] - rank),
        tolerance=tolerance,
        c=float(c),
    )


def gram_f(config: DistanceConfig, c, tolerance: float = RANK_RTOL) -> GramAnalysis:
    """B_ij = cosh(d_ij) + c; diagonal is exactly 1 + c."""
    c = float(c)
    return analyze_symmetric(np.cosh(config.dist) + c, c=c, tolerance=tolerance)


def gram_phi(config: DistanceConfig, tolerance: float = RANK_RTOL) -> GramAnalysis:
    """B_ij = cosh(d_ij); diagonal is exactly 1 (the unit-norm identity)."""
    return analyze_symmetric(np.cosh(config.dist), c=0.0, tolerance=tolerance)


def rank_saturation(config_factory, c, m_list) -> list[tuple[int, int]]:
    """Ranks of gram_f over growing configurations; saturates at the span dimension."""
    m_list = list(m_list)
    if any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ValueError("m_list must be strictly increasing")
    return [(m, gram_f(config_factory(m), c).rank) for m in m_list]


def line_config_factory(lo: float = -5.0, hi: float = 5.0):
    """m -> DistanceConfig of m evenly spaced geodesic parameters in [lo, hi]."""
    from .model_spaces import evenly_spaced_line

    return lambda m: DistanceConfig.from_line(evenly_spaced_line(m, lo, hi))


def hyperboloid_config_factory(n: int, radius: float, seed: int, m_max: int):
    """m -> DistanceConfig of the first m points of one seeded draw of m_max points."""
    points = random_points(SeededSampler(seed), n, m_max, radius)

    def factory(m: int) -> DistanceConfig:
        if m > m_max:
            raise ValueError(f"m = {m} exceeds the drawn pool of {m_max}")
        return DistanceConfig.from_points(points[:m])

    return factory


def line_kernel(c: float = 0.0):
    """K(s, t) = cosh(s - t) + c, the kernel along a single geodesic."""
    return lambda s, t: math.cosh(s - t) + c


def geodesic_kernel(g: Geodesic, c: float = 0.0):
    """K(s, t) = cosh d(gamma(s), gamma(t)) + c through the model arithmetic."""

    def kernel(s: float, t: float) -> float:
        return math.cosh(distance(geodesic_point(g, s), geodesic_point(g, t))) + c

    return kernel


def velocity_gram_fd(kernel, h: float) -> float:
    """Central mixed difference of K at (0, 0): d^2 K / ds dt = -1 + O(h^2).

    This is B(Phi', Phi') along the geodesic; any additive constant in the
    kernel cancels in the difference.
    """
    if not 1e-5 <= h <= 1e-2:
        raise ValueError("h must lie in [1e-5, 1e-2]")
    return (kernel(h, h) - kernel(h, -h) - kernel(-h, h) + kernel(-h, -h)) / (4.0 * h * h)


# 7-point central stencils: O(h^4) third derivative, O(h^6) first derivative.
_D3_WEIGHTS = (1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0)
_D1_WEIGHTS = (-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0)


def third_derivative_check(
    g: Geodesic, q, c: float = 0.0, h: float = 5e-3, t_samples=None
) -> float:
    """max_t |u''' - u'| for u(t) = cosh d(gamma(t), q) + c, estimated by stencils.

    The law u''' = u' holds exactly (u is cosh(rho) cosh(t - t0) + c), so the
    returned value is pure finite-difference error.
    """
    if not 1e-4 <= h <= 1e-2:
        raise ValueError("h must lie in [1e-4, 1e-2]")
    if t_samples is None:
        t_samples = np.linspace(-2.0, 2.0, 9)
    worst = 0.0
    for t in np.asarray(t_samples, dtype=float):
        u = [
            math.cosh(distance(geodesic_point(g, t + j * h), q)) + c
            for j in range(-3, 4)
        ]
        d3 = sum(w * x for w, x in zip(_D3_WEIGHTS, u)) / (8.0 * h**3)
        d1 = sum(w * x for w, x in zip(_D1_WEIGHTS, u)) / (60.0 * h)
        worst = max(worst, abs(d3 - d1))
    return worst


@dataclass(frozen=True)
class LineTripleSystem:
    """3x3 system [cosh s_i; sinh s_i; 1] deciding nondegeneracy on a line span."""

    s: tuple[float, float, float]
    matrix: np.ndarray
    determinant: float


def line_triple_system(s1: float, s2: float, s3: float) -> LineTripleSystem:
    """Rows cosh(s_i), sinh(s_i), 1; determinant by cofactor expansion.

    Degenerate parameter triples are allowed and simply give determinant 0.
    """
    s = (float(s1), float(s2), float(s3))
    matrix = np.array(
        [
            [math.cosh(s[0]), math.cosh(s[1]), math.cosh(s[2])],
            [math.sinh(s[0]), math.sinh(s[1]), math.sinh(s[2])],
            [1.0, 1.0, 1.0],
        ]
    )
    m = matrix
    det = (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )
    return LineTripleSystem(s=s, matrix=matrix, determinant=float(det))


def symmetric_triple_determinant(tau: float) -> float:
    """Closed form for the triple (-tau, 0, tau): -2 sinh(tau) (cosh(tau) - 1)."""
    return -2.0 * math.sinh(tau) * (math.cosh(tau) - 1.0)


def cone_gradient_inequality(points, weights, testpoint, h: float = 1e-3) -> float:
    """Margin h(x) - |grad h(x)| for h = sum a_i cosh d(p_i, .), a_i >= 0.

    The gradient norm is estimated by central differences along a
    Q-orthonormal tangent frame at x.  Nonnegative weights are required
    (the inequality belongs to the positive cone); an all-zero weight
    vector gives h = 0 and margin 0.
    """
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if points.ndim != 2 or weights.shape != (points.shape[0],):
        raise ValueError("need an (m, n+1) point stack with m weights")
    if np.any(weights < 0.0):
        raise ValueError("weights must be nonnegative")
    if np.all(weights == 0.0):
        return 0.0
    x = np.asarray(testpoint, dtype=float)
    dists = np.array([distance(p, x) for p in points])
    if np.min(dists[weights > 0]) <= 1e-9:
        raise ValueError("testpoint coincides with a weighted source point")

    def h_at(y) -> float:
        return float(sum(w * math.cosh(distance(p, y)) for w, p in zip(weights, points)))

    value = float(weights @ np.cosh(dists))
    grad_sq = 0.0
    for v in tangent_frame(x):
        plus = h_at(math.cosh(h) * x + math.sinh(h) * v)
        minus = h_at(math.cosh(h) * x - math.sinh(h) * v)
        deriv = (plus - minus) / (2.0 * h)
        grad_sq += deriv * deriv
    return value - math.sqrt(grad_sq)


def nondegeneracy_probe(analysis: GramAnalysis) -> bool:
    """True iff the form is nondegenerate on a maximal independent subset.

    Greedy pivoted selection picks `rank` indices maximizing |det| of the
    principal submatrix; the probe passes when that submatrix has full rank
    and no zero eigenvalues at the same relative tolerance.  rank 0 passes
    only for an empty configuration.
    """
    r = analysis.rank
    if r == 0:
        return analysis.m == 0
    b = analysis.matrix
    chosen: list[int] = []
    for _ in range(r):
        best_idx = -1
        best_val = -1.0
        for i in range(analysis.m):
            if i in chosen:
                continue
            idx = chosen + [i]
            val = abs(float(np.linalg.det(b[np.ix_(idx, idx)])))
            if val > best_val:
                best_val = val
                best_idx = i
        chosen.append(best_idx)
    sub = analyze_symmetric(b[np.ix_(chosen, chosen)], c=analysis.c, tolerance=analysis.tolerance)
    return sub.rank == r and sub.signature[2] == 0


@dataclass(frozen=True)
class EmbedCheckReport:
    """Summary numbers for the embedding identities; see ``run_embed_checks``."""

    unit_norm_max_err: float
    velocity_gram_err: float
    third_derivative_max_err: float
    gradient_inequality_margin: float

    def as_dict(self) -> dict[str, float]:
        return {
            "unit_norm_max_err": self.unit_norm_max_err,
            "velocity_gram_err": self.velocity_gram_err,
            "third_derivative_max_err": self.third_derivative_max_err,
            "gradient_inequality_margin": self.gradient_inequality_margin,
        }


def run_embed_checks(
    n: int = 3,
    seed: int = 42,
    h: float = 1e-3,
    radius: float = 3.0,
    c: float = 0.0,
    third_points: int = 20,
    third_h: float = 5e-3,
    cone_trials: int = 20,
    cone_sources: int = 5,
) -> EmbedCheckReport:
    """Deterministic sweep of the four embedding identities in H^n.

    unit norm: max |diag(gram_phi) - 1| over a 12-point configuration;
    velocity: worst |B(Phi',Phi') + 1| over the line kernel and a seeded
    model geodesic; third derivative: worst |u''' - u'| over seeded
    off-geodesic points; cone margin: min h - |grad h| over seeded trials.
    """
    sampler = SeededSampler(seed)
    pts = random_points(sampler, n, 12, radius)
    phi = gram_phi(DistanceConfig.from_points(pts))
    unit_err = float(np.max(np.abs(np.diag(phi.matrix) - 1.0)))

    geo = random_geodesic(sampler, n)
    vel_line = velocity_gram_fd(line_kernel(c), h)
    vel_hyp = velocity_gram_fd(geodesic_kernel(geo, c), h)
    velocity_err = max(abs(vel_line + 1.0), abs(vel_hyp + 1.0))

    probes = random_points(sampler, n, third_points, radius)
    third_err = max(third_derivative_check(geo, q, c, third_h) for q in probes)

    min_margin = math.inf
    for _ in range(cone_trials):
        sources = random_points(sampler, n, cone_sources, radius)
        weights = sampler.rng.random(cone_sources)
        while True:
            x = random_points(sampler, n, 1, radius)[0]
            if min(distance(p, x) for p in sources) > 1e-6:
                break
        min_margin = min(min_margin, cone_gradient_inequality(sources, weights, x, h))

    return EmbedCheckReport(
        unit_norm_max_err=unit_err,
        velocity_gram_err=velocity_err,
        third_derivative_max_err=third_err,
        gradient_inequality_margin=min_margin,
    )
