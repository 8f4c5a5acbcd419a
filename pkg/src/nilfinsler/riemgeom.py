"""Left-invariant Riemannian geometry of a metric Lie algebra.

Sign conventions::

    R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
    K(X, Y)  = <R(X, Y)Y, X>          (X, Y orthonormal)

Structure parameters are constants on the group, so the connection is
extended bilinearly over polynomial coefficients and never differentiates
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactalg import Polynomial, UsageError, as_fraction
from .liealg import AlgebraVector, MetricLieAlgebra, inner

__all__ = [
    "ConnectionTable",
    "CurvatureTensor",
    "CurvatureSummary",
    "koszul_connection",
    "curvature_tensor",
    "curvature_summary",
    "sectional_curvature_numeric",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ConnectionTable:
    """``entries[(i, j)] = nabla_{E_i} E_j`` (0-based)."""

    dim: int
    entries: Mapping[tuple[int, int], AlgebraVector]

    def __getitem__(self, key: tuple[int, int]) -> AlgebraVector:
        return self.entries[key]

    def nabla(self, u: AlgebraVector, v: AlgebraVector) -> AlgebraVector:
        result = None
        for i in range(self.dim):
            if not u[i]:
                continue
            for j in range(self.dim):
                if not v[j]:
                    continue
                entry = self.entries[(i, j)]
                if entry.is_zero():
                    continue
                term = entry * (u[i] * v[j])
                result = term if result is None else result + term
        if result is None:
            return AlgebraVector.zero(self.dim, u[0].context.merge(v[0].context))
        return result

    def torsion(self, g: MetricLieAlgebra, i: int, j: int) -> AlgebraVector:
        """nabla_{E_i}E_j - nabla_{E_j}E_i - [E_i, E_j]; zero for Levi-Civita."""
        return self.entries[(i, j)] - self.entries[(j, i)] - g.basis_bracket(i, j)

    def metric_defect(self, i: int, j: int, k: int) -> Polynomial:
        """<nabla_{E_i}E_j, E_k> + <E_j, nabla_{E_i}E_k>; zero for a metric connection."""
        return self.entries[(i, j)][k] + self.entries[(i, k)][j]


def koszul_connection(g: MetricLieAlgebra) -> ConnectionTable:
    """Levi-Civita connection from 2<nabla_U V, W> = <[U,V],W> - <[V,W],U> + <[W,U],V>."""
    n = g.dim
    c = g.structure_constant
    entries = {}
    for i in range(n):
        for j in range(n):
            entries[(i, j)] = AlgebraVector(
                (c(i, j, k) - c(j, k, i) + c(k, i, j)) * HALF for k in range(n))
    return ConnectionTable(n, entries)


@dataclass(frozen=True)
class CurvatureTensor:
    """``entries[(i, j, k)] = R(E_i, E_j)E_k`` for ``i < j`` (0-based)."""

    dim: int
    entries: Mapping[tuple[int, int, int], AlgebraVector]
    zero: AlgebraVector

    def __call__(self, i: int, j: int, k: int) -> AlgebraVector:
        if i == j:
            return self.zero
        if i < j:
            return self.entries[(i, j, k)]
        return -self.entries[(j, i, k)]

    def component(self, i: int, j: int, k: int, l: int) -> Polynomial:
        """<R(E_i, E_j)E_k, E_l>."""
        return self(i, j, k)[l]

    def apply(self, u: AlgebraVector, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
        """R(u, v)w by trilinearity."""
        result = self.zero
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                uv = u[i] * v[j] - u[j] * v[i]
                if not uv:
                    continue
                for k in range(n):
                    if w[k]:
                        result = result + self.entries[(i, j, k)] * (uv * w[k])
        return result


def curvature_tensor(g: MetricLieAlgebra, conn: ConnectionTable | None = None) -> CurvatureTensor:
    conn = conn or koszul_connection(g)
    n = g.dim
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            bij = g.basis_bracket(i, j)
            for k in range(n):
                term = (conn.nabla(g.basis(i), conn[(j, k)])
                        - conn.nabla(g.basis(j), conn[(i, k)])
                        - conn.nabla(bij, g.basis(k)))
                entries[(i, j, k)] = term
    return CurvatureTensor(n, entries, g.zero())


@dataclass(frozen=True)
class CurvatureSummary:
    dim: int
    sectional: Mapping[tuple[int, int], Polynomial]  # i < j
    ricci_diag: tuple
    scalar: Polynomial

    def K(self, i: int, j: int) -> Polynomial:
        if i == j:
            raise UsageError("sectional curvature needs two distinct basis vectors")
        return self.sectional[(min(i, j), max(i, j))]


def curvature_summary(g: MetricLieAlgebra, R: CurvatureTensor | None = None) -> CurvatureSummary:
    R = R or curvature_tensor(g)
    n = g.dim
    sectional = {(i, j): R(i, j, j)[i] for i in range(n) for j in range(i + 1, n)}
    zero = Polynomial.zero(g.context)
    ricci = []
    for i in range(n):
        total = zero
        for j in range(n):
            if j != i:
                total = total + sectional[(min(i, j), max(i, j))]
        ricci.append(total)
    scalar = zero
    for r in ricci:
        scalar = scalar + r
    return CurvatureSummary(n, sectional, tuple(ricci), scalar)


def sectional_curvature_numeric(g: MetricLieAlgebra, u: Sequence, v: Sequence,
                                point: Mapping[str, object]) -> Fraction:
    """K(u, v) of the plane spanned by numeric u, v at a parameter point.

    Uses <R(u,v)v,u> / (|u|^2|v|^2 - <u,v>^2); u, v need not be orthonormal.
    """
    gnum = g.substitute({s: as_fraction(point[s]) for s in g.context.symbols if s in point})
    leftover = {s for vec in gnum.brackets.values() for c in vec for s in c.symbols()}
    if leftover:
        raise UsageError(f"unbound parameters: {sorted(leftover)}")
    ctx = gnum.context
    uu = AlgebraVector(Polynomial.constant(x, ctx) for x in u)
    vv = AlgebraVector(Polynomial.constant(x, ctx) for x in v)
    denom = (inner(uu, uu) * inner(vv, vv) - inner(uu, vv) ** 2).constant_value()
    if not denom:
        raise UsageError("u and v are linearly dependent")
    R = curvature_tensor(gnum)
    num = inner(R.apply(uu, vv, vv), uu).constant_value()
    return num / denom


def bianchi_residual(R: CurvatureTensor, i: int, j: int, k: int) -> AlgebraVector:
    return R(i, j, k) + R(j, k, i) + R(k, i, j)

