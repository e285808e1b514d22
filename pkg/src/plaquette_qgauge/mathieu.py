"""Odd pi-periodic Mathieu eigenproblem: characteristic values and sine-elliptic functions.

For f'' + (a - 2q cos 2y) f = 0 with f(-pi/2) = f(0) = 0, the admissible
characteristic values form an increasing sequence a = b(n, q), n = 0, 1, ...
The solution for level n expands as

    se_n(y; q) = sum_k c_k sin((2k+2) y),      k = 0, 1, ...

and inserting the expansion into the equation gives the three-term recurrence

    (a - 4) c_0         = q c_1
    (a - 4(k+1)^2) c_k  = q (c_{k-1} + c_{k+1}),   k >= 1,

i.e. c is an eigenvector of the symmetric tridiagonal matrix with diagonal
(2k+2)^2 and constant off-diagonal q.  That matrix is the exact Galerkin
representation of the problem in the sine basis; the tail of c decays
super-exponentially beyond k ~ sqrt(q), so a modest truncation is exact to
machine precision.

Conventions: sum c_k^2 = 1, and the sign is anchored to the q = 0 limit where
c = e_n exactly (the component c_n is kept positive; it stays bounded away
from zero for q <= 30 on all levels used here, and a sign flip at larger q
only flips the global sign of se).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

#: residual threshold, relative to the matrix norm, past which the
#: eigendecomposition is rejected
_RESIDUAL_RTOL = 1e-13
#: tail coefficients above this trigger truncation growth (or a warning)
_TAIL_TOL = 1e-12
_MAX_DOUBLINGS = 5


class ConvergenceError(RuntimeError):
    """Eigensolver residual exceeded the accepted tolerance."""


class TruncationWarning(UserWarning):
    """The requested truncation leaves a non-negligible tail coefficient."""


@dataclass(frozen=True)
class MathieuSolution:
    """Level ``n`` solution at parameter ``q``.

    ``b`` is the characteristic value; ``coeffs[k]`` is the Fourier
    coefficient of sin((2k+2) y), unit-normalized and sign-anchored as
    described in the module docstring.
    """

    n: int
    q: float
    b: float
    coeffs: np.ndarray

    @property
    def trunc(self) -> int:
        return len(self.coeffs)

    @property
    def tail(self) -> float:
        """Magnitude of the last kept coefficient (truncation diagnostic)."""
        return abs(float(self.coeffs[-1]))

    def se(self, y):
        """Evaluate the sine-elliptic function at y (scalar or array)."""
        y = np.asarray(y, dtype=float)
        freqs = 2.0 * np.arange(self.trunc) + 2.0
        out = np.sin(np.multiply.outer(y, freqs)) @ self.coeffs
        return float(out) if out.ndim == 0 else out

    def se_second_derivative(self, y):
        """Term-by-term second derivative of ``se`` (spectral differentiation)."""
        y = np.asarray(y, dtype=float)
        freqs = 2.0 * np.arange(self.trunc) + 2.0
        out = -np.sin(np.multiply.outer(y, freqs)) @ (freqs * freqs * self.coeffs)
        return float(out) if out.ndim == 0 else out

    def recurrence_residual(self) -> float:
        """max_k |(b - 4(k+1)^2) c_k - q (c_{k-1} + c_{k+1})| with c_{-1} = c_trunc = 0."""
        c = self.coeffs
        k = np.arange(self.trunc)
        left = (self.b - 4.0 * (k + 1.0) ** 2) * c
        neighbors = np.zeros_like(c)
        neighbors[1:] += c[:-1]
        neighbors[:-1] += c[1:]
        return float(np.max(np.abs(left - self.q * neighbors)))


def default_trunc(n: int, q: float) -> int:
    """Truncation adequate for level n at parameter q (coefficient tail < 1e-12)."""
    return max(n + 16, math.ceil(2.0 * math.sqrt(abs(q))) + 16)


def _freeze(vec: np.ndarray) -> np.ndarray:
    vec = np.array(vec, dtype=float)
    vec.setflags(write=False)
    return vec


def _fix_sign(vec: np.ndarray, n: int) -> np.ndarray:
    anchor = vec[n]
    if abs(anchor) <= 1e-12 * np.max(np.abs(vec)):
        # anchor component numerically zero: fall back to the slope se'(0)
        anchor = float(np.dot(2.0 * np.arange(len(vec)) + 2.0, vec))
    return -vec if anchor < 0 else vec


def _check_residual(d, q, b, vec, trunc):
    tv = d * vec
    tv[1:] += q * vec[:-1]
    tv[:-1] += q * vec[1:]
    residual = float(np.max(np.abs(tv - b * vec)))
    scale = max(1.0, float(d[-1]) + 2.0 * abs(q))
    if residual > _RESIDUAL_RTOL * scale:
        raise ConvergenceError(
            f"tridiagonal eigensolve residual {residual:.3e} exceeds "
            f"{_RESIDUAL_RTOL:.0e} * {scale:.3e} (q={q}, trunc={trunc})"
        )
    return residual


@lru_cache(maxsize=4096)
def _solve_cached(n: int, q: float, trunc: int) -> MathieuSolution:
    k = np.arange(trunc)
    d = (2.0 * k + 2.0) ** 2
    e = np.full(trunc - 1, q)
    w, v = scipy.linalg.eigh_tridiagonal(d, e, select="i", select_range=(n, n))
    b = float(w[0])
    vec = v[:, 0]
    vec = vec / np.linalg.norm(vec)
    _check_residual(d, q, b, vec, trunc)
    return MathieuSolution(n=n, q=q, b=b, coeffs=_freeze(_fix_sign(vec, n)))


def solve(n: int, q: float, trunc: int | None = None) -> MathieuSolution:
    """Characteristic value and Fourier coefficients for level n at parameter q.

    With trunc=None the truncation starts at ``default_trunc`` and doubles
    until the tail coefficient drops below 1e-12.  An explicit trunc is used
    as given (it must be at least n + 16) and merely warns on a fat tail.
    """
    if n < 0:
        raise ValueError(f"level index must be >= 0, got {n}")
    q = float(q)
    if not math.isfinite(q):
        raise ValueError(f"q must be finite, got {q}")
    if q == 0.0:
        size = trunc if trunc is not None else default_trunc(n, 0.0)
        if size < n + 1:
            raise ValueError(f"trunc={size} cannot hold level n={n}")
        coeffs = np.zeros(size)
        coeffs[n] = 1.0
        return MathieuSolution(n=n, q=0.0, b=float((2 * n + 2) ** 2), coeffs=_freeze(coeffs))
    if trunc is not None:
        if trunc < n + 16:
            raise ValueError(f"trunc={trunc} too small for level n={n}; need >= n + 16")
        sol = _solve_cached(n, q, trunc)
        if sol.tail > _TAIL_TOL:
            warnings.warn(
                f"tail coefficient {sol.tail:.2e} at trunc={trunc} (n={n}, q={q})",
                TruncationWarning,
                stacklevel=2,
            )
        return sol
    size = default_trunc(n, q)
    for _ in range(_MAX_DOUBLINGS):
        sol = _solve_cached(n, q, size)
        if sol.tail <= _TAIL_TOL:
            return sol
        size *= 2
    raise ConvergenceError(f"coefficient tail did not fall below {_TAIL_TOL} (n={n}, q={q})")


@lru_cache(maxsize=512)
def _solve_many_cached(count: int, q: float, trunc: int) -> tuple[MathieuSolution, ...]:
    k = np.arange(trunc)
    d = (2.0 * k + 2.0) ** 2
    e = np.full(trunc - 1, q)
    w, v = scipy.linalg.eigh_tridiagonal(d, e)
    order = np.argsort(w)
    out = []
    for n in range(count):
        b = float(w[order[n]])
        vec = v[:, order[n]]
        vec = vec / np.linalg.norm(vec)
        _check_residual(d, q, b, vec, trunc)
        out.append(MathieuSolution(n=n, q=q, b=b, coeffs=_freeze(_fix_sign(vec, n))))
    return tuple(out)


def solve_many(count: int, q: float, trunc: int | None = None) -> tuple[MathieuSolution, ...]:
    """Levels 0..count-1 at parameter q from a single eigendecomposition.

    Cheaper than repeated ``solve`` calls when whole spectra are swept.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    q = float(q)
    if q == 0.0:
        size = trunc if trunc is not None else default_trunc(count - 1, 0.0)
        return tuple(solve(n, 0.0, size) for n in range(count))
    size = trunc if trunc is not None else default_trunc(count - 1, q)
    if size < count:
        raise ValueError(f"trunc={size} cannot hold {count} levels")
    for _ in range(_MAX_DOUBLINGS):
        sols = _solve_many_cached(count, q, size)
        if max(s.tail for s in sols) <= _TAIL_TOL:
            return sols
        if trunc is not None:
            warnings.warn(
                f"tail coefficient {max(s.tail for s in sols):.2e} at trunc={size} (q={q})",
                TruncationWarning,
                stacklevel=2,
            )
            return sols
        size *= 2
    raise ConvergenceError(f"coefficient tail did not fall below {_TAIL_TOL} (count={count}, q={q})")


def se(n: int, q: float, y):
    """Sine-elliptic function for level n at parameter q, evaluated at y."""
    return solve(n, q).se(y)
