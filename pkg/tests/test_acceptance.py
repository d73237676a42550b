"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints one `ACCEPTANCE nn PASS|FAIL label` line (visible with
pytest -s; pytest -v shows the same verdicts as test outcomes).  Timed
criteria run after the session-level kernel warmup from conftest.
"""

import functools
import itertools
import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from harmonic_embed.constants import (
    HarmonicParams,
    NACatalogEntry,
    consistency_report,
    density_exponents,
    derive_spectral_constants,
    na_b_integrality,
    printed_constants,
)
from harmonic_embed.density import (
    IntegrationConfig,
    RadialODE,
    default_residual_grid,
    eigen_residual,
    integrate_radial,
    ledger_series_oracle,
    max_relative_error_vs_closed_form,
)
from harmonic_embed.gram import (
    DistanceConfig,
    cone_gradient_inequality,
    geodesic_kernel,
    gram_f,
    gram_phi,
    line_config_factory,
    line_kernel,
    line_triple_system,
    third_derivative_check,
    velocity_gram_fd,
)
from harmonic_embed.model_spaces import SeededSampler, distance, random_geodesic, random_points


def criterion(num, label):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {num:02d} FAIL {label}")
                raise
            print(f"ACCEPTANCE {num:02d} PASS {label}")

        return wrapper

    return decorate


def sweep_params():
    for n in range(2, 17):
        for k in (
            Fraction(n - 1, 4),
            Fraction(n - 1, 2),
            Fraction(3 * (n - 1), 4),
            Fraction(n - 1),
        ):
            yield HarmonicParams(n, k)


@criterion(1, "constants chain at (4, 3/2), exact, < 1 ms")
def test_criterion_01_constants_chain():
    params = HarmonicParams(4, Fraction(3, 2))
    timings = []
    for _ in range(3):
        start = time.perf_counter()
        derived = derive_spectral_constants(params)
        timings.append(time.perf_counter() - start)
    n, k = params.n, params.k
    assert derived.lam == Fraction(-2, 3) * (Fraction(n, 2) + 1 + k) == Fraction(-3)
    assert derived.lam == printed_constants(params).lam
    assert derived.c == Fraction(1, 3)
    assert 1 + derived.c == Fraction(3 * n, 2) / (Fraction(n, 2) + 1 + k)
    assert min(timings) < 1e-3, f"derivation took {min(timings) * 1e3:.3f} ms"


@criterion(2, "discrepancy adjudication over the (n, k) sweep, exact, < 1 s")
def test_criterion_02_discrepancy_sweep():
    start = time.perf_counter()
    for params in sweep_params():
        report = consistency_report(params)
        assert report.derived.all_pass, params
        assert report.printed.any_fail, params
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"sweep took {elapsed:.3f} s"


@criterion(3, "series oracle: pole 0 and omega''(0) = k/3 exactly on the sweep")
def test_criterion_03_ledger_oracle_sweep():
    for params in sweep_params():
        derived = derive_spectral_constants(params)
        pole, curvature = ledger_series_oracle(params, derived)
        assert pole == 0, params
        assert curvature == params.k / 3, params


@criterion(4, "eigenfunction residual < 1e-10 and integration within 1e-7, < 1 s/case")
def test_criterion_04_eigenfunction_verification():
    grid = default_residual_grid()
    for n, k in [(3, Fraction(2)), (4, Fraction(3, 2)), (5, Fraction(1)), (8, Fraction(4))]:
        start = time.perf_counter()
        params = HarmonicParams(n, k)
        constants = derive_spectral_constants(params)
        exponents = density_exponents(params, constants)
        assert eigen_residual(constants, exponents, grid) < 1e-10, (n, k)
        ode = RadialODE.from_constants(params, constants)
        solution = integrate_radial(ode, 1 + constants.c, IntegrationConfig())
        rel = max_relative_error_vs_closed_form(solution, constants.c, r_cap=5.0)
        assert rel < 1e-7, (n, k, rel)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"case {(n, k)} took {elapsed:.3f} s"


@criterion(5, "Gram rank/signature witness (line and H3), < 1 s")
def test_criterion_05_gram_witness():
    start = time.perf_counter()
    line40 = line_config_factory(-5.0, 5.0)(40)
    with_c = gram_f(line40, 1.0 / 3.0)
    assert with_c.rank == 3 and with_c.signature[:2] == (2, 1), with_c.signature
    without_c = gram_f(line40, 0.0)
    assert without_c.rank == 2 and without_c.signature[:2] == (1, 1), without_c.signature
    pts = random_points(SeededSampler(42), 3, 12, 3.0)
    phi = gram_phi(DistanceConfig.from_points(pts))
    assert phi.rank == 4 and phi.signature[:2] == (1, 3), phi.signature
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"gram block took {elapsed:.3f} s"


@criterion(6, "3x3 system determinant matches closed form and brute-force oracle, 1e-12")
def test_criterion_06_triple_system_determinant():
    system = line_triple_system(-1.0, 0.0, 1.0)
    closed = -2.0 * math.sinh(1.0) * (math.cosh(1.0) - 1.0)
    brute = 0.0
    for perm in itertools.permutations(range(3)):
        sign = 1.0
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        brute += sign * math.prod(system.matrix[r, perm[r]] for r in range(3))
    assert abs(system.determinant - brute) <= 1e-12
    assert abs(system.determinant - closed) <= 1e-12


@criterion(7, "embedding identities: unit diagonal, velocity -1, third-derivative law")
def test_criterion_07_embedding_identities():
    sampler = SeededSampler(42)
    pts = random_points(sampler, 3, 12, 3.0)
    phi = gram_phi(DistanceConfig.from_points(pts))
    assert np.all(np.diag(phi.matrix) == 1.0)

    h = 1e-3
    assert abs(velocity_gram_fd(line_kernel(0.0), h) + 1.0) <= 1e-5
    geo = random_geodesic(sampler, 3)
    assert abs(velocity_gram_fd(geodesic_kernel(geo), h) + 1.0) <= 1e-5

    probes = random_points(sampler, 3, 20, 3.0)
    worst = max(third_derivative_check(geo, q, h=5e-3) for q in probes)
    assert worst <= 1e-4, worst


@criterion(8, "cone gradient margin >= -1e-6 over 100 seeded triples in H3")
def test_criterion_08_cone_inequality():
    sampler = SeededSampler(42)
    for trial in range(100):
        sources = random_points(sampler, 3, 5, 3.0)
        weights = sampler.rng.random(5)
        while True:
            x = random_points(sampler, 3, 1, 3.0)[0]
            if min(distance(p, x) for p in sources) > 1e-6:
                break
        margin = cone_gradient_inequality(sources, weights, x, 1e-3)
        assert margin >= -1e-6, (trial, margin)


@criterion(9, "NA catalog integrality: b = q exactly for (2,1), (4,3), (8,7)")
def test_criterion_09_na_integrality():
    for p, q in [(2, 1), (4, 3), (8, 7)]:
        b, is_integer = na_b_integrality(NACatalogEntry(f"NA({p},{q})", p, q))
        assert is_integer and b == Fraction(q), (p, q, b)


@criterion(10, "full report command: exit 0 in under 10 s")
def test_criterion_10_report_command():
    start = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "harmonic_embed", "report", "--n", "4", "--k", "3/2", "--seed", "7"],
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - start
    assert out.returncode == 0, out.stderr
    doc = json.loads(out.stdout)
    assert doc["overall"] == "pass"
    assert elapsed < 10.0, f"report took {elapsed:.2f} s"
