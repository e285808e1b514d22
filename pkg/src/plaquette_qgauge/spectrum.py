"""Spectrum of the single-plaquette Hamiltonian and stratum-projector expectations.

The Hamiltonian is the free Laplace term plus the potential (nu/2)(3 - chi_1).
Two independent routes to its spectrum are kept side by side:

* the Mathieu route: separation in the interval realization turns the
  stationary problem into the odd pi-periodic Mathieu equation with
  a = 8 E / (hbar^2 beta2) + 4 - 12 nu_tilde and q = 4 nu_tilde, so

      E_n = (hbar^2 beta2 / 2) (b(n, 4 nu_tilde)/4 + 3 nu_tilde - 1);

* the matrix route: in the orthonormal character basis the multiplication
  operator chi_1 is the unit-off-diagonal tridiagonal matrix (the character
  product rule chi_1 chi_k = chi_{k+1} + chi_{k-1}), giving the symmetric
  tridiagonal Hamiltonian assembled by ``hamiltonian_matrix``.

The matrix route exists purely as a cross-check oracle; all production
quantities go through the Mathieu route.  Eigenstate coefficients pick up the
alternating sign of the change of variable y = (x - pi)/2:
coefficient k of level n is (-1)^(n+k) times the Mathieu Fourier coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import costratified, mathieu
from .costratified import StateVector, TruncationError
from .params import ModelParams
from .strata import Stratum

_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class SpectralResult:
    """Energy level n: eigenvalue and eigenstate coefficients."""

    n: int
    energy: float
    state: StateVector
    params: ModelParams


def hamiltonian_matrix(params: ModelParams, dim: int) -> np.ndarray:
    """Dense symmetric tridiagonal Hamiltonian truncated to the first dim basis states."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    k = np.arange(dim)
    diag = 0.5 * params.hbar2_beta2 * k * (k + 2.0) + 1.5 * params.nu
    h = np.diag(diag)
    off = np.full(dim - 1, -0.5 * params.nu)
    h += np.diag(off, 1) + np.diag(off, -1)
    return h


def matrix_energies(params: ModelParams, count: int, dim: int | None = None) -> np.ndarray:
    """First ``count`` eigenvalues of the truncated Hamiltonian matrix (oracle route)."""
    if dim is None:
        dim = mathieu.default_trunc(count - 1, 4.0 * params.nu_tilde)
    k = np.arange(dim)
    diag = 0.5 * params.hbar2_beta2 * k * (k + 2.0) + 1.5 * params.nu
    off = np.full(dim - 1, -0.5 * params.nu)
    w = scipy.linalg.eigvalsh_tridiagonal(diag, off)
    return np.sort(w)[:count]


def energy(n: int, params: ModelParams) -> float:
    """Energy of level n through the Mathieu characteristic value."""
    sol = mathieu.solve(n, 4.0 * params.nu_tilde)
    return 0.5 * params.hbar2_beta2 * (sol.b / 4.0 + 3.0 * params.nu_tilde - 1.0)


def _state_trunc(n: int, params: ModelParams) -> int:
    return max(
        mathieu.default_trunc(n, 4.0 * params.nu_tilde),
        costratified.default_trunc(params.t),
    )


def _signed_coeffs(sol: mathieu.MathieuSolution) -> np.ndarray:
    k = np.arange(sol.trunc)
    return (-1.0) ** (sol.n + k) * sol.coeffs


def eigenstate(n: int, params: ModelParams, trunc: int | None = None) -> SpectralResult:
    """Eigenstate of level n as a coefficient vector in the orthonormal basis.

    At nu_tilde = 0 the result is exactly the n-th basis vector.
    """
    if trunc is None:
        trunc = _state_trunc(n, params)
    sol = mathieu.solve(n, 4.0 * params.nu_tilde, trunc=trunc)
    state = StateVector(_signed_coeffs(sol), params)
    return SpectralResult(n=n, energy=energy(n, params), state=state, params=params)


def eigenfunction_x(n: int, params: ModelParams, x):
    """Interval realization of level n on [0, pi].

    Equals (-1)^(n+1) sqrt(2) se(n, 4 nu_tilde, (x - pi)/2), which reduces to
    sqrt(2) sin((n+1)x) in the free theory.
    """
    x = np.asarray(x, dtype=float)
    sol = mathieu.solve(n, 4.0 * params.nu_tilde)
    out = (-1.0) ** (n + 1) * math.sqrt(2.0) * np.asarray(sol.se((x - math.pi) / 2.0))
    return float(out) if out.ndim == 0 else out


def _stratum_signs(count: int, stratum: Stratum) -> np.ndarray:
    """Sign weights of the vertex-state overlap sums: (-1)^k for plus, +1 for minus."""
    if stratum.sign > 0:
        return (-1.0) ** np.arange(count)
    return np.ones(count)


def _vertex_overlap(sol: mathieu.MathieuSolution, params: ModelParams, stratum: Stratum) -> float:
    """Overlap of eigenstate level sol.n with the vertex state of ``stratum``.

    ((-1)^n / N) * sum_k s_k (k+1) exp(-t (k+1)^2/2) c_k with s_k the stratum
    sign weights; requires both coefficient tails to be negligible.
    """
    t = params.t
    k = np.arange(sol.trunc)
    weights = (k + 1.0) * np.exp(-t * (k + 1.0) ** 2 / 2.0)
    n_const = costratified.normalization_constant(t)
    if sol.tail > _TAIL_TOL:
        raise TruncationError(f"Mathieu coefficient tail {sol.tail:.2e} exceeds {_TAIL_TOL}")
    if weights[-1] / n_const > _TAIL_TOL:
        raise TruncationError(
            f"vertex-state weight tail {weights[-1] / n_const:.2e} exceeds {_TAIL_TOL}"
        )
    signs = _stratum_signs(sol.trunc, stratum)
    return (-1.0) ** sol.n / n_const * float(np.sum(signs * weights * sol.coeffs))


def projector_expectation(n: int, params: ModelParams, stratum: Stratum) -> float:
    """Probability of finding energy level n in the given vertex subspace."""
    sol = mathieu.solve(n, 4.0 * params.nu_tilde, trunc=_state_trunc(n, params))
    overlap = _vertex_overlap(sol, params, stratum)
    return overlap * overlap


def projector_expectations(
    params: ModelParams, count: int, completeness_count: int = 60
) -> tuple[np.ndarray, np.ndarray, float]:
    """Plus/minus projector expectations for levels 0..count-1 plus a completeness sum.

    The completeness diagnostic sums the plus expectations over the first
    ``completeness_count`` levels; it approaches 1 because the eigenstates are
    a complete orthonormal family and the vertex state has unit norm.
    """
    total = max(count, completeness_count)
    trunc = _state_trunc(total - 1, params)
    sols = mathieu.solve_many(total, 4.0 * params.nu_tilde, trunc=trunc)
    plus = np.array([_vertex_overlap(s, params, Stratum.PLUS) for s in sols]) ** 2
    minus = np.array([_vertex_overlap(s, params, Stratum.MINUS) for s in sols]) ** 2
    completeness = float(np.sum(plus[:completeness_count]))
    return plus[:count], minus[:count], completeness
