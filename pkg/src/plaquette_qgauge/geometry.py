"""Classical side: Poisson algebras of the reduced spaces, momentum maps, monomial bases.

Two reduced phase spaces appear as real semi-algebraic sets with polynomial
Poisson structures on their generators:

* the semicone (zero-angular-momentum plane): generators (x, y, r) with the
  relation x^2 + y^2 = r^2, r >= 0, and brackets
  {x, y} = 2r, {x, r} = 2y, {y, r} = -2x;

* the canoe (single-plaquette reduced space): generators (X, Y, tau) with
  the relation Y^2 = (X^2 + Y^2 + 4(tau - 1)) tau, tau >= 0, and brackets
  {X, Y} = X^2 + Y^2 + 4(2 tau - 1), {X, tau} = 2(1 - tau) Y,
  {Y, tau} = 2 tau X.

Brackets of arbitrary polynomials follow from the generator table by the
Leibniz rule.  Phase points are plain float vectors in generator order.

The module also carries the flat-space momentum maps for ell particles in
dimension s (rotation group and symplectic group), the rank-stratified
projection onto complex symmetric ell x ell matrices, and the enumeration of
highest-weight monomials of the degree-k polynomial representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .strata import Stratum

_VARIETY_TOL = 1e-10  # on-variety precondition, relative to the relation's term sizes
_STRATUM_TOL = 1e-9  # distance to a vertex below which a point counts as singular
_RANK_RTOL = 1e-10  # singular values below this fraction of the largest count as zero


class OffVarietyError(ValueError):
    """A phase point violates the defining relations of the reduced space."""


def _clean(terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c != 0.0}


@dataclass(frozen=True)
class PolyFunction:
    """Real polynomial in named generators, stored as {exponent tuple: coefficient}."""

    generators: tuple[str, ...]
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for exps in self.terms:
            if len(exps) != len(self.generators):
                raise ValueError(f"exponent tuple {exps} does not match {self.generators}")
        object.__setattr__(self, "terms", _clean(dict(self.terms)))

    @classmethod
    def zero(cls, generators) -> "PolyFunction":
        return cls(tuple(generators), {})

    @classmethod
    def constant(cls, generators, value: float) -> "PolyFunction":
        generators = tuple(generators)
        return cls(generators, {(0,) * len(generators): float(value)})

    @classmethod
    def variable(cls, generators, name: str) -> "PolyFunction":
        generators = tuple(generators)
        if name not in generators:
            raise KeyError(f"unknown generator {name!r}; table has {generators}")
        exps = tuple(1 if g == name else 0 for g in generators)
        return cls(generators, {exps: 1.0})

    def _require_same(self, other: "PolyFunction"):
        if self.generators != other.generators:
            raise ValueError(f"generator mismatch: {self.generators} vs {other.generators}")

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = PolyFunction.constant(self.generators, other)
        self._require_same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return PolyFunction(self.generators, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyFunction(self.generators, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = PolyFunction.constant(self.generators, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return PolyFunction(self.generators, {e: other * c for e, c in self.terms.items()})
        self._require_same(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0.0) + c1 * c2
        return PolyFunction(self.generators, terms)

    __rmul__ = __mul__

    def diff(self, name: str) -> "PolyFunction":
        idx = self.generators.index(name) if name in self.generators else -1
        if idx < 0:
            raise KeyError(f"unknown generator {name!r}; table has {self.generators}")
        terms: dict = {}
        for exps, coeff in self.terms.items():
            if exps[idx] == 0:
                continue
            lowered = list(exps)
            lowered[idx] -= 1
            key = tuple(lowered)
            terms[key] = terms.get(key, 0.0) + coeff * exps[idx]
        return PolyFunction(self.generators, terms)

    def __call__(self, point) -> float:
        values = np.asarray(point, dtype=float)
        if values.shape != (len(self.generators),):
            raise ValueError(f"point must have {len(self.generators)} coordinates")
        total = 0.0
        for exps, coeff in self.terms.items():
            total += coeff * math.prod(v**e for v, e in zip(values, exps))
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PolyFunction):
            return NotImplemented
        return self.generators == other.generators and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{g}^{e}" if e > 1 else g for g, e in zip(self.generators, exps) if e
            )
            parts.append(f"{coeff:+g}{'*' + mono if mono else ''}")
        return "".join(parts)


@dataclass(frozen=True)
class PoissonTable:
    """Generator names, pairwise generator brackets, and defining relations."""

    generators: tuple[str, ...]
    pair_brackets: dict
    relations: tuple[PolyFunction, ...]

    def variable(self, name: str) -> PolyFunction:
        return PolyFunction.variable(self.generators, name)

    def generator_bracket(self, i: int, j: int) -> PolyFunction:
        if i == j:
            return PolyFunction.zero(self.generators)
        if i < j:
            return self.pair_brackets[(i, j)]
        return -self.pair_brackets[(j, i)]

    def variety_residual(self, point) -> float:
        """Largest violation of the defining relations at the point."""
        return max(abs(rel(point)) for rel in self.relations)

    def require_on_variety(self, point):
        # residual is judged relative to the size of the relation's terms, so
        # the guard works at any coordinate scale
        magnitude = np.abs(np.asarray(point, dtype=float))
        for rel in self.relations:
            scale = sum(
                abs(c) * math.prod(v**e for v, e in zip(magnitude, exps))
                for exps, c in rel.terms.items()
            )
            residual = abs(rel(point))
            if residual > _VARIETY_TOL * max(1.0, scale):
                raise OffVarietyError(f"point {point} violates the relations by {residual:.3e}")


def semicone_table() -> PoissonTable:
    gens = ("x", "y", "r")
    x, y, r = (PolyFunction.variable(gens, g) for g in gens)
    return PoissonTable(
        generators=gens,
        pair_brackets={(0, 1): 2 * r, (0, 2): 2 * y, (1, 2): -2 * x},
        relations=(x * x + y * y - r * r,),
    )


def canoe_table() -> PoissonTable:
    gens = ("X", "Y", "tau")
    X, Y, tau = (PolyFunction.variable(gens, g) for g in gens)
    return PoissonTable(
        generators=gens,
        pair_brackets={
            (0, 1): X * X + Y * Y + 8 * tau - 4,
            (0, 2): 2 * Y - 2 * tau * Y,
            (1, 2): 2 * tau * X,
        },
        relations=(Y * Y - (X * X + Y * Y + 4 * tau - 4) * tau,),
    )


def bracket(table: PoissonTable, f: PolyFunction, g: PolyFunction) -> PolyFunction:
    """Poisson bracket {f, g}: Leibniz extension of the generator table."""
    if f.generators != table.generators or g.generators != table.generators:
        raise ValueError("polynomials must be over the table's generators")
    out = PolyFunction.zero(table.generators)
    names = table.generators
    for i in range(len(names)):
        dfi = f.diff(names[i])
        if dfi.is_zero():
            continue
        for j in range(len(names)):
            if i == j:
                continue
            dgj = g.diff(names[j])
            if dgj.is_zero():
                continue
            out = out + dfi * dgj * table.generator_bracket(i, j)
    return out


def jacobi_residual(
    table: PoissonTable, f: PolyFunction, g: PolyFunction, h: PolyFunction, point
) -> float:
    """|{f,{g,h}} + {g,{h,f}} + {h,{f,g}}| at an on-variety point."""
    table.require_on_variety(point)
    total = (
        bracket(table, f, bracket(table, g, h))
        + bracket(table, g, bracket(table, h, f))
        + bracket(table, h, bracket(table, f, g))
    )
    return abs(total(point))


def relation_casimir_residual(table: PoissonTable, name: str, point) -> float:
    """|{generator, relation}| at an on-variety point; zero iff the relation ideal is Poisson."""
    table.require_on_variety(point)
    gen = table.variable(name)
    return max(abs(bracket(table, gen, rel)(point)) for rel in table.relations)


def poisson_tensor(table: PoissonTable, point) -> np.ndarray:
    """Antisymmetric matrix of generator brackets evaluated at the point."""
    m = len(table.generators)
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = table.generator_bracket(i, j)(point)
            out[j, i] = -out[i, j]
    return out


def canoe_tau(X: float, Y: float) -> float:
    """The non-smooth generator tau as a function of the plane coordinates.

    tau = sqrt(Y^2 + (X^2+Y^2-4)^2/16)/2 - (X^2+Y^2-4)/8 >= 0, the unique
    non-negative root of the canoe relation at (X, Y).
    """
    s = X * X + Y * Y - 4.0
    return 0.5 * math.sqrt(Y * Y + s * s / 16.0) - s / 8.0


def sample_semicone(rng: np.random.Generator, count: int, scale: float = 10.0) -> np.ndarray:
    """On-variety semicone points (x, y, r) with plane coordinates in [-scale, scale]."""
    xy = rng.uniform(-scale, scale, size=(count, 2))
    r = np.hypot(xy[:, 0], xy[:, 1])
    return np.column_stack([xy, r])


def sample_canoe(rng: np.random.Generator, count: int, scale: float = 10.0) -> np.ndarray:
    """On-variety canoe points (X, Y, tau) with plane coordinates in [-scale, scale]."""
    xy = rng.uniform(-scale, scale, size=(count, 2))
    tau = np.array([canoe_tau(px, py) for px, py in xy])
    return np.column_stack([xy, tau])


def classify_stratum(Z: complex, tol: float = _STRATUM_TOL) -> Stratum:
    """Stratum of a point of the reduced space in its plane realization."""
    Z = complex(Z)
    if abs(Z - 2.0) < tol:
        return Stratum.PLUS
    if abs(Z + 2.0) < tol:
        return Stratum.MINUS
    return Stratum.TOP


def reduce_point(z: complex) -> complex:
    """Quotient map z -> z + 1/z from the punctured plane onto the reduced space."""
    z = complex(z)
    if z == 0:
        raise ZeroDivisionError("reduce_point is undefined at z = 0")
    return z + 1.0 / z


@dataclass(frozen=True)
class ParticleConfig:
    """Positions and momenta of ell particles in R^s (rows are particles)."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.atleast_2d(np.asarray(self.q, dtype=float))
        p = np.atleast_2d(np.asarray(self.p, dtype=float))
        if q.shape != p.shape:
            raise ValueError(f"q and p must have equal shapes, got {q.shape} vs {p.shape}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def ell(self) -> int:
        return self.q.shape[0]

    @property
    def s(self) -> int:
        return self.q.shape[1]


def momentum_O(cfg: ParticleConfig) -> np.ndarray:
    """Angular-momentum map: the antisymmetric s x s matrix sum_j q_j p_j^T - p_j q_j^T."""
    m = cfg.q.T @ cfg.p
    return m - m.T


def momentum_Sp(cfg: ParticleConfig) -> np.ndarray:
    """Symplectic-group momentum map as a 2ell x 2ell block matrix.

    Blocks [[q_j.p_k, -q_j.q_k], [p_j.p_k, -p_j.q_k]]; the result lies in
    sp(ell, R), i.e. J M is symmetric for the standard J.
    """
    a = cfg.q @ cfg.p.T
    b = cfg.q @ cfg.q.T
    c = cfg.p @ cfg.p.T
    return np.block([[a, -b], [c, -a.T]])


def symmetric_projection(cfg: ParticleConfig) -> tuple[np.ndarray, int]:
    """Complex symmetric ell x ell matrix (q_j + i p_j).(q_k + i p_k) and its numerical rank.

    The bilinear (not hermitian) products make the matrix symmetric, and its
    rank is at most min(s, ell); singular values below 1e-10 of the largest
    count as zero.
    """
    z = cfg.q + 1j * cfg.p
    m = z @ z.T
    svals = np.linalg.svd(m, compute_uv=False)
    if svals.size == 0 or svals[0] == 0.0:
        return m, 0
    rank = int(np.sum(svals > _RANK_RTOL * svals[0]))
    return m, rank


def monomial_decomposition(s: int, k: int) -> list[tuple[int, ...]]:
    """Exponent tuples (a_1, ..., a_s) with sum_m m * a_m = k, in descending lexicographic order.

    These label the irreducible constituents of the degree-k polynomials on
    symmetric matrices surviving restriction to rank <= s; their count is the
    number of partitions of k into parts of size at most s.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")

    def rec(part: int, remaining: int) -> list[tuple[int, ...]]:
        if part == s:
            if remaining % s == 0:
                return [(remaining // s,)]
            return []
        out = []
        for a in range(remaining // part, -1, -1):
            for tail in rec(part + 1, remaining - a * part):
                out.append((a, *tail))
        return out

    return rec(1, k)


def restriction_kernel(s: int, k: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Split the degree-k monomials into the restriction kernel and its complement.

    Monomials with a positive last exponent die under restriction to rank
    <= s-1; the rest map isomorphically onto the rank s-1 enumeration.
    """
    if s < 2:
        raise ValueError(f"s must be >= 2, got {s}")
    kernel, image = [], []
    for exps in monomial_decomposition(s, k):
        (kernel if exps[-1] >= 1 else image).append(exps)
    return kernel, image
