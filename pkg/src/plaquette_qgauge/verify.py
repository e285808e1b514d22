"""Self-verification suites: geometry residuals, dual-oracle spectra, identities.

Each check returns a CheckResult with a deterministic one-line detail string;
the CLI renders them as a report.  All random sampling uses a fixed seed so
repeated runs are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import costratified, geometry, mathieu, spectrum
from .params import ModelParams
from .strata import Stratum
from .theta import theta3_prime

_SEED = 20260810


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _residual_check(name: str, residual: float, tol: float) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual <= tol, f"max_residual={residual!r} (tol {tol!r})")


def _gauss_legendre(num_nodes: int = 512):
    nodes, weights = np.polynomial.legendre.leggauss(num_nodes)
    y = -0.25 * math.pi * (nodes + 1.0)
    w = 0.25 * math.pi * weights
    return y, w


def geometry_checks() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED)
    out = []
    tables = {"semicone": geometry.semicone_table(), "canoe": geometry.canoe_table()}
    samplers = {"semicone": geometry.sample_semicone, "canoe": geometry.sample_canoe}
    for label, table in tables.items():
        points = samplers[label](rng, 100)
        gens = [table.variable(g) for g in table.generators]
        jac = max(
            geometry.jacobi_residual(table, gens[0], gens[1], gens[2], pt) for pt in points
        )
        out.append(_residual_check(f"jacobi-{label}", jac, 1e-9))
        cas = max(
            geometry.relation_casimir_residual(table, name, pt)
            for pt in points
            for name in table.generators
        )
        out.append(_residual_check(f"casimir-{label}", cas, 1e-9))

    canoe = tables["canoe"]
    vertex_residual = max(
        float(np.max(np.abs(geometry.poisson_tensor(canoe, (s, 0.0, 0.0))))) for s in (2.0, -2.0)
    )
    points = samplers["canoe"](rng, 100)
    ranks_ok = True
    for pt in points:
        if abs(complex(pt[0], pt[1]) - 2) < 1e-6 or abs(complex(pt[0], pt[1]) + 2) < 1e-6:
            continue
        tensor = geometry.poisson_tensor(canoe, pt)
        if np.linalg.matrix_rank(tensor, tol=1e-9 * max(1.0, float(np.max(np.abs(tensor))))) != 2:
            ranks_ok = False
    out.append(
        CheckResult(
            "canoe-tensor-strata",
            vertex_residual == 0.0 and ranks_ok,
            f"vertex_residual={vertex_residual!r} nonvertex_rank2={ranks_ok}",
        )
    )

    worst_excess = 0
    for s in (1, 2, 3):
        for ell in (1, 2, 3):
            for _ in range(1000):
                cfg = geometry.ParticleConfig(
                    rng.standard_normal((ell, s)), rng.standard_normal((ell, s))
                )
                _, rank = geometry.symmetric_projection(cfg)
                worst_excess = max(worst_excess, rank - min(s, ell))
    out.append(
        CheckResult(
            "projection-rank-bound", worst_excess <= 0, f"max_rank_excess={worst_excess}"
        )
    )

    zs = rng.standard_normal(100) + 1j * rng.standard_normal(100)
    zs = zs[np.abs(zs) > 1e-3]
    weyl = max(abs(geometry.reduce_point(z) - geometry.reduce_point(1.0 / z)) for z in zs)
    out.append(_residual_check("weyl-invariance", weyl, 1e-12))
    return out


def spectral_checks() -> list[CheckResult]:
    out = []

    free = ModelParams.from_reduced(0.125, 0.0)
    worst = 0.0
    anchored = True
    for n in range(10):
        value = spectrum.energy(n, free) / free.hbar2_beta2
        worst = max(worst, abs(value - 0.5 * n * (n + 2)))
        state = spectrum.eigenstate(n, free).state.coeffs
        expected = np.zeros(len(state))
        expected[n] = 1.0
        anchored = anchored and np.array_equal(np.asarray(state, dtype=float), expected)
    out.append(
        CheckResult(
            "free-theory-anchor",
            worst <= 1e-12 and anchored,
            f"max_residual={worst!r} states_exact={anchored}",
        )
    )

    worst = 0.0
    for t in (0.5, 0.125, 0.03125):
        for nut in (3.0, 6.0, 12.0, 24.0):
            params = ModelParams.from_reduced(t, nut)
            reference = spectrum.matrix_energies(params, 10)
            for n in range(10):
                e = spectrum.energy(n, params)
                worst = max(worst, abs(e - reference[n]) / max(1.0, abs(reference[n])))
    out.append(_residual_check("dual-oracle-spectrum", worst, 1e-8))

    params = ModelParams.from_reduced(0.125, 6.0)
    vectors = np.column_stack(
        [spectrum.eigenstate(n, params, trunc=40).state.coeffs for n in range(8)]
    )
    gram = vectors.T @ vectors
    out.append(
        _residual_check(
            "eigenstate-orthonormality", float(np.max(np.abs(gram - np.eye(8)))), 1e-9
        )
    )

    y, w = _gauss_legendre()
    funcs = np.column_stack([math.sqrt(2.0) * mathieu.se(n, 24.0, y) for n in range(8)])
    gram = (funcs * w[:, None]).T @ funcs * (2.0 / math.pi)
    out.append(
        _residual_check(
            "sine-elliptic-orthonormality", float(np.max(np.abs(gram - np.eye(8)))), 1e-9
        )
    )
    return out


def state_checks() -> list[CheckResult]:
    out = []
    grid = np.geomspace(0.01, 5.0, 40)

    worst_norm = 0.0
    worst_overlap = 0.0
    for t in grid:
        series = costratified._norm_squared_series(t)
        via_theta = 0.5 * math.exp(-t) * theta3_prime(math.exp(-t))
        worst_norm = max(worst_norm, abs(series - via_theta) / max(1.0, abs(series)))
        overlap_series = costratified._overlap_series(t) / series
        overlap_theta = theta3_prime(-math.exp(-t)) / theta3_prime(math.exp(-t))
        worst_overlap = max(worst_overlap, abs(overlap_series - overlap_theta))
    out.append(_residual_check("normalization-identity", worst_norm, 1e-10))
    out.append(_residual_check("tunneling-identity", worst_overlap, 1e-10))

    low = costratified.tunneling_probability(0.005)
    high = costratified.tunneling_probability(5.0)
    out.append(
        CheckResult(
            "tunneling-limits",
            low < 1e-6 and high > 0.99,
            f"probability(0.005)={low!r} probability(5)={high!r}",
        )
    )

    worst_defect = 0.0
    bounds_ok = True
    for t in (0.5, 0.125, 0.03125):
        for nut in np.geomspace(0.1, 100.0, 5):
            params = ModelParams.from_reduced(t, float(nut))
            plus, minus, completeness = spectrum.projector_expectations(params, 6)
            worst_defect = max(worst_defect, 1.0 - completeness)
            values = np.concatenate([plus, minus])
            bounds_ok = bounds_ok and bool(np.all((values >= 0.0) & (values <= 1.0)))
    out.append(
        CheckResult(
            "completeness",
            worst_defect <= 1e-6 and bounds_ok,
            f"max_defect={worst_defect!r} bounds_ok={bounds_ok}",
        )
    )

    worst = 0.0
    for nut in (0.0, 6.0, 24.0):
        params = ModelParams.from_reduced(0.125, nut)
        for stratum in (Stratum.PLUS, Stratum.MINUS):
            vertex = costratified.stratum_state(stratum, params)
            for n in range(6):
                state = spectrum.eigenstate(n, params, trunc=vertex.trunc).state
                via_vectors = abs(vertex.inner(state)) ** 2
                via_formula = spectrum.projector_expectation(n, params, stratum)
                worst = max(worst, abs(via_vectors - via_formula))
    out.append(_residual_check("projector-route-consistency", worst, 1e-12))

    worst = 0.0
    for t in (0.5, 0.125, 0.03125):
        params = ModelParams.from_reduced(t, 0.0)
        n2 = costratified.norm_squared(t)
        for n in range(10):
            value = spectrum.projector_expectation(n, params, Stratum.PLUS)
            closed = (n + 1.0) ** 2 * math.exp(-t * (n + 1.0) ** 2) / n2
            worst = max(worst, abs(value - closed))
    out.append(_residual_check("free-theory-closed-form", worst, 1e-10))

    params = ModelParams.from_reduced(0.125, 6.0)
    gap = abs(
        spectrum.projector_expectation(0, params, Stratum.PLUS)
        - spectrum.projector_expectation(0, params, Stratum.MINUS)
    )
    out.append(
        CheckResult("parity-separation", gap > 1e-6, f"separation={gap!r} (min 1e-06)")
    )

    # informational: how close the plus vertex state comes to the ground
    # state, reported as the peak of P_{+,0} over the coupling grid
    best = (0.0, 0.0)
    for nut in np.geomspace(0.1, 100.0, 60):
        value = spectrum.projector_expectation(0, ModelParams.from_reduced(0.125, float(nut)), Stratum.PLUS)
        if value > best[0]:
            best = (value, float(nut))
    out.append(
        CheckResult(
            "ground-state-peak",
            True,
            f"max P_plus_0={best[0]!r} at nu_tilde={best[1]!r} (t=0.125, informational)",
        )
    )
    return out


def all_checks() -> list[CheckResult]:
    return geometry_checks() + spectral_checks() + state_checks()


def render_report(results: list[CheckResult], title: str) -> str:
    lines = [f"# plaquette-qgauge {title}"]
    for result in results:
        tag = "PASS" if result.passed else "FAIL"
        lines.append(f"[{tag}] {result.name:<32} {result.detail}")
    passed = sum(r.passed for r in results)
    lines.append(f"result: {passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
