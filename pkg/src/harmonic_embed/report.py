"""Machine-readable pass/fail reports backing the CLI.

Every check carries name, value, expected and tolerance; a report passes
iff all its checks pass.  Serialization is deterministic: identical
invocations produce byte-identical JSON except for the trailing
``runtime_ms`` field, which is excluded from the stable region.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import gram as gram_mod
from .constants import (
    HarmonicParams,
    NA_CATALOG,
    NACatalogEntry,
    bishop_gromov_check,
    classify_density,
    consistency_report,
    density_exponents,
    derive_spectral_constants,
    na_b_integrality,
    na_params,
    printed_constants,
)
from .density import (
    IntegrationConfig,
    RadialODE,
    default_residual_grid,
    eigen_residual,
    eval_density,
    integrate_radial,
    max_relative_error_vs_closed_form,
    step_halving_delta,
)
from .gram import (
    DistanceConfig,
    gram_f,
    gram_phi,
    hyperboloid_config_factory,
    line_config_factory,
    line_triple_system,
    nondegeneracy_probe,
    rank_saturation,
    run_embed_checks,
    symmetric_triple_determinant,
)

SCHEMA = "harmonic-embed/1"


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class Check:
    name: str
    status: str
    value: object
    expected: object
    tolerance: object

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "value": _jsonable(self.value),
            "expected": _jsonable(self.expected),
            "tolerance": _jsonable(self.tolerance),
        }


def make_check(name, passed, value, expected, tolerance=None) -> Check:
    return Check(
        name=name,
        status="pass" if passed else "fail",
        value=value,
        expected=expected,
        tolerance=tolerance,
    )


@dataclass
class Report:
    command: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    constants: dict | None = None
    info: dict | None = None
    payload: dict | None = None
    runtime_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        doc = {
            "schema": SCHEMA,
            "command": self.command,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
        }
        if self.constants is not None:
            doc["constants"] = self.constants
        if self.info is not None:
            doc["info"] = {k: _jsonable(v) for k, v in self.info.items()}
        if self.payload is not None:
            doc["payload"] = self.payload
        doc["checks"] = [c.to_dict() for c in self.checks]
        doc["overall"] = "pass" if self.passed else "fail"
        doc["runtime_ms"] = self.runtime_ms
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"[{self.command}] schema {SCHEMA}"]
        for key, value in self.params.items():
            lines.append(f"  {key} = {_jsonable(value)}")
        if self.constants:
            for label, consts in self.constants.items():
                pretty = ", ".join(f"{k}={v}" for k, v in consts.items())
                lines.append(f"  constants[{label}]: {pretty}")
        if self.info:
            for key, value in self.info.items():
                lines.append(f"  info {key}: {_jsonable(value)}")
        if self.payload:
            for key, value in self.payload.items():
                lines.append(f"  {key}: {json.dumps(value)}")
        for c in self.checks:
            tol = "" if c.tolerance is None else f" (tol {_jsonable(c.tolerance)})"
            lines.append(
                f"  {'PASS' if c.passed else 'FAIL'}  {c.name}: "
                f"value={_jsonable(c.value)} expected={_jsonable(c.expected)}{tol}"
            )
        lines.append(f"overall: {'pass' if self.passed else 'fail'}")
        lines.append(f"runtime_ms: {self.runtime_ms}")
        return "\n".join(lines) + "\n"


def _timed(report: Report, started: float) -> Report:
    report.runtime_ms = (time.perf_counter() - started) * 1e3
    return report


def constants_report(params: HarmonicParams) -> Report:
    started = time.perf_counter()
    derived = derive_spectral_constants(params)
    printed = printed_constants(params)
    adjud = consistency_report(params)
    n = params.n
    checks = [
        make_check(
            "derived.trace_identity",
            1 + derived.lam + derived.c_lam == 1 - n,
            str(1 + derived.lam + derived.c_lam),
            str(Fraction(1 - n)),
            "exact",
        ),
        make_check(
            "derived.product_identity",
            derived.c_lam == derived.c * derived.lam,
            str(derived.c_lam),
            str(derived.c * derived.lam),
            "exact",
        ),
        make_check(
            "derived.b_identity",
            derived.b == (n - 1) + 2 * derived.c_lam,
            str(derived.b),
            str(Fraction(n - 1) + 2 * derived.c_lam),
            "exact",
        ),
        make_check("derived.lambda_negative", derived.lam < 0, str(derived.lam), "< 0", "exact"),
        make_check(
            "derived.passes_all_consistency_checks",
            adjud.derived.all_pass,
            adjud.derived.as_dict(),
            {"zero_shift_at_k_top": True, "positivity_identity": True, "ledger_oracle": True},
            "exact",
        ),
        make_check(
            "printed.fails_some_consistency_check",
            adjud.printed.any_fail,
            adjud.printed.as_dict(),
            "at least one False for k > 0",
            "exact",
        ),
        make_check(
            "lambda_agreement_between_sets",
            derived.lam == printed.lam,
            str(printed.lam),
            str(derived.lam),
            "exact",
        ),
    ]
    info = {
        "bishop_gromov_in_band": bishop_gromov_check(params, derived),
        "density_exponents": [
            str(v)
            for v in (
                density_exponents(params, derived).log2_prefactor,
                density_exponents(params, derived).sinh_half_exp,
                density_exponents(params, derived).cosh_half_exp,
            )
        ],
    }
    if bishop_gromov_check(params, derived):
        info["density_class"] = classify_density(derived).tag.value
    return _timed(
        Report(
            command="constants",
            params={"n": params.n, "k": str(params.k)},
            constants={"derived": derived.as_dict(), "printed": printed.as_dict()},
            info=info,
            checks=checks,
        ),
        started,
    )


def na_report(entries: tuple[NACatalogEntry, ...] = NA_CATALOG) -> Report:
    started = time.perf_counter()
    checks = []
    rows = []
    for entry in entries:
        params = na_params(entry)
        b, is_int = na_b_integrality(entry)
        checks.append(
            make_check(
                f"na.b_equals_q[{entry.p},{entry.q}]",
                is_int and b == entry.q,
                str(b),
                str(entry.q),
                "exact",
            )
        )
        rows.append(
            {
                "name": entry.name,
                "p": entry.p,
                "q": entry.q,
                "n": params.n,
                "k": str(params.k),
                "b": str(b),
                "b_is_integer": is_int,
            }
        )
    return _timed(
        Report(command="na", params={"entries": len(rows)}, info={"catalog": rows}, checks=checks),
        started,
    )


def ode_report(params: HarmonicParams, config: IntegrationConfig | None = None) -> Report:
    started = time.perf_counter()
    config = config or IntegrationConfig()
    derived = derive_spectral_constants(params)
    exps = density_exponents(params, derived)
    ode = RadialODE.from_constants(params, derived)

    grid = default_residual_grid(config.r_max)
    residual = eigen_residual(derived, exps, grid)

    f0 = 1 + derived.c
    solution = integrate_radial(ode, f0, config)
    rel_err = max_relative_error_vs_closed_form(solution, derived.c, r_cap=5.0)
    halving = step_halving_delta(ode, f0, config)

    # series oracle, exact
    from .density import ledger_series_oracle

    pole, curvature = ledger_series_oracle(params, derived)

    # radial limit of the density: Theta / r^(n-1) -> 1
    r_small = 1e-4
    theta = eval_density(exps, r_small).theta
    limit_err = abs(theta / r_small ** (params.n - 1) - 1.0)

    checks = [
        make_check("ledger.pole_zero", pole == 0, str(pole), "0", "exact"),
        make_check(
            "ledger.curvature_is_k_over_3",
            curvature == params.k / 3,
            str(curvature),
            str(params.k / 3),
            "exact",
        ),
        make_check("density.radial_limit", limit_err <= 1e-6, limit_err, 0.0, 1e-6),
        make_check("ode.eigen_residual", residual < 1e-10, residual, 0.0, 1e-10),
        make_check(
            "ode.integration_matches_closed_form", rel_err < 1e-7, rel_err, 0.0, 1e-7
        ),
        make_check("ode.step_halving", halving < 1e-8, halving, 0.0, 1e-8),
    ]
    return _timed(
        Report(
            command="ode-check",
            params={
                "n": params.n,
                "k": str(params.k),
                "step": config.step,
                "r_max": config.r_max,
                "switch_radius": config.switch_radius,
                "series_order": config.series_order,
            },
            constants={"derived": derived.as_dict()},
            checks=checks,
        ),
        started,
    )


def gram_report(
    model: str,
    n: int,
    points: int,
    seed: int,
    radius: float,
    c: float,
    tolerance: float = gram_mod.RANK_RTOL,
) -> Report:
    started = time.perf_counter()
    if model == "line":
        config = line_config_factory()(points)
    elif model == "hyperboloid":
        from .model_spaces import SeededSampler, random_points

        config = DistanceConfig.from_points(random_points(SeededSampler(seed), n, points, radius))
    else:
        raise ValueError(f"unknown model {model!r}")
    analysis = gram_f(config, c, tolerance=tolerance)
    # repeated points are allowed; they drop the rank and get flagged here
    offdiag = config.dist[np.triu_indices(config.m, 1)]
    degenerate_pairs = int(np.sum(offdiag == 0.0))
    recon = analysis.eigenvectors @ np.diag(analysis.eigenvalues) @ analysis.eigenvectors.T
    recon_err = float(np.max(np.abs(recon - analysis.matrix)))
    recon_tol = 1e-11 * float(np.max(np.abs(analysis.matrix)))
    checks = [
        make_check(
            "gram.jacobi_reconstruction", recon_err <= recon_tol, recon_err, 0.0, recon_tol
        ),
        make_check(
            "gram.nondegenerate_on_pivot_subset",
            nondegeneracy_probe(analysis),
            nondegeneracy_probe(analysis),
            True,
            None,
        ),
    ]
    return _timed(
        Report(
            command="gram",
            params={
                "model": model,
                "n": n,
                "points": points,
                "seed": seed,
                "radius": radius,
                "c": c,
                "tolerance": tolerance,
            },
            info={"degenerate_pairs": degenerate_pairs},
            payload={"gram": analysis.to_dict()},
            checks=checks,
        ),
        started,
    )


def lemma2_report(s: tuple[float, float, float] = (-1.0, 0.0, 1.0)) -> Report:
    started = time.perf_counter()
    system = line_triple_system(*s)
    checks = []
    degenerate = len(set(s)) < 3
    if degenerate:
        checks.append(
            make_check(
                "triple.degenerate_determinant_zero",
                system.determinant == 0.0,
                system.determinant,
                0.0,
                "exact",
            )
        )
    else:
        checks.append(
            make_check(
                "triple.determinant_nonzero",
                abs(system.determinant) > 1e-12,
                system.determinant,
                "!= 0",
                1e-12,
            )
        )
    if len(s) == 3 and s[1] == 0.0 and s[0] == -s[2] and s[2] > 0:
        closed = symmetric_triple_determinant(s[2])
        checks.append(
            make_check(
                "triple.matches_closed_form",
                abs(system.determinant - closed) <= 1e-12,
                system.determinant,
                closed,
                1e-12,
            )
        )
    return _timed(
        Report(
            command="lemma2",
            params={"s": list(s)},
            info={"matrix": [[float(v) for v in row] for row in system.matrix]},
            checks=checks,
        ),
        started,
    )


def embed_report(
    n: int = 3, seed: int = 42, h: float = 1e-3, radius: float = 3.0, c: float = 0.0
) -> Report:
    started = time.perf_counter()
    summary = run_embed_checks(n=n, seed=seed, h=h, radius=radius, c=c)
    checks = [
        make_check(
            "embed.unit_norm_diagonal",
            summary.unit_norm_max_err == 0.0,
            summary.unit_norm_max_err,
            0.0,
            "exact",
        ),
        make_check(
            "embed.velocity_gram_minus_one",
            summary.velocity_gram_err <= 1e-5,
            summary.velocity_gram_err,
            0.0,
            1e-5,
        ),
        make_check(
            "embed.third_derivative_law",
            summary.third_derivative_max_err <= 1e-4,
            summary.third_derivative_max_err,
            0.0,
            1e-4,
        ),
        make_check(
            "embed.cone_gradient_margin",
            summary.gradient_inequality_margin >= -1e-6,
            summary.gradient_inequality_margin,
            ">= 0 up to FD error",
            -1e-6,
        ),
    ]
    return _timed(
        Report(
            command="embed-check",
            params={"n": n, "seed": seed, "h": h, "radius": radius, "c": c},
            info={"summary": summary.as_dict()},
            checks=checks,
        ),
        started,
    )


def full_report(
    params: HarmonicParams,
    seed: int = 42,
    points: int = 40,
    radius: float = 3.0,
    h: float = 1e-3,
) -> Report:
    """The fixed, versioned check list of the `report` command (schema harmonic-embed/1).

    Order: constants block, NA catalog, density/ODE block, Gram block,
    triple system, embedding block.  The list and tolerances are part of the
    schema; see README.
    """
    started = time.perf_counter()
    checks: list[Check] = []

    sub_constants = constants_report(params)
    sub_na = na_report()
    sub_ode = ode_report(params)
    checks.extend(sub_constants.checks)
    checks.extend(sub_na.checks)
    checks.extend(sub_ode.checks)

    derived = derive_spectral_constants(params)

    line_factory = line_config_factory()
    line_cfg = line_factory(points)
    an_c = gram_f(line_cfg, float(derived.c))
    an_0 = gram_f(line_cfg, 0.0)
    expected_c_rank = 3 if derived.c != 0 else 2
    expected_c_sig = (2, 1) if derived.c != 0 else (1, 1)
    checks.append(
        make_check(
            "gram.line_rank_signature_derived_c",
            an_c.rank == expected_c_rank and an_c.signature[:2] == expected_c_sig,
            {"rank": an_c.rank, "signature": list(an_c.signature)},
            {"rank": expected_c_rank, "signature_plus_minus": list(expected_c_sig)},
            an_c.tolerance,
        )
    )
    checks.append(
        make_check(
            "gram.line_rank_signature_c_zero",
            an_0.rank == 2 and an_0.signature[:2] == (1, 1),
            {"rank": an_0.rank, "signature": list(an_0.signature)},
            {"rank": 2, "signature_plus_minus": [1, 1]},
            an_0.tolerance,
        )
    )
    c_sat = float(derived.c) if derived.c != 0 else 1.0 / 3.0
    saturation = rank_saturation(line_factory, c_sat, [2, 3, 5, 10, points])
    checks.append(
        make_check(
            "gram.line_rank_saturation",
            [r for _, r in saturation] == [2, 3, 3, 3, 3],
            [list(t) for t in saturation],
            [[2, 2], [3, 3], [5, 3], [10, 3], [points, 3]],
            None,
        )
    )

    hyp_factory = hyperboloid_config_factory(params.n, radius, seed, max(12, points))
    hyp_cfg = hyp_factory(12)
    phi = gram_phi(hyp_cfg)
    checks.append(
        make_check(
            "gram.hyperboloid_phi_rank_signature",
            phi.rank == params.n + 1 and phi.signature[:2] == (1, params.n),
            {"rank": phi.rank, "signature": list(phi.signature)},
            {"rank": params.n + 1, "signature_plus_minus": [1, params.n]},
            phi.tolerance,
        )
    )
    checks.append(
        make_check(
            "gram.phi_diagonal_unit",
            bool(np.all(np.diag(phi.matrix) == 1.0)),
            float(np.max(np.abs(np.diag(phi.matrix) - 1.0))),
            0.0,
            "exact",
        )
    )
    checks.append(
        make_check(
            "gram.nondegeneracy_probe",
            nondegeneracy_probe(an_c) and nondegeneracy_probe(phi),
            {"line": nondegeneracy_probe(an_c), "hyperboloid": nondegeneracy_probe(phi)},
            {"line": True, "hyperboloid": True},
            None,
        )
    )

    sub_lemma2 = lemma2_report()
    checks.extend(sub_lemma2.checks)

    sub_embed = embed_report(n=params.n, seed=seed, h=h, radius=radius)
    checks.extend(sub_embed.checks)

    return _timed(
        Report(
            command="report",
            params={
                "n": params.n,
                "k": str(params.k),
                "seed": seed,
                "points": points,
                "radius": radius,
                "h": h,
            },
            constants=sub_constants.constants,
            info=sub_constants.info,
            checks=checks,
        ),
        started,
    )
