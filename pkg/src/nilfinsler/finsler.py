"""Douglas / Berwald classification of left-invariant (alpha, beta)-metrics.

The metric is built from the orthonormal inner product and a left-invariant
vector field X.  Two algebraic characterisations are used:

* Douglas type  <=>  X is orthogonal to the derived subalgebra [g, g];
* Berwald type  <=>  X is parallel, nabla_{E_i} X = 0 for all i.

A Douglas homogeneous (alpha, beta)-metric is either Berwald or a Douglas
Randers metric.  That dichotomy is taken as given; the report only decides
whether the Berwald branch contains a nonzero X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactalg import as_fraction
from .liealg import (
    AlgebraVector,
    MetricLieAlgebra,
    Subspace,
    bracket,
    derived_subalgebra,
    inner,
    nullspace,
    orthogonal_complement,
)
from .riemgeom import ConnectionTable, koszul_connection

__all__ = [
    "ClassificationReport",
    "douglas_space",
    "berwald_space",
    "classify",
    "randers_norm_check",
    "berwald_symmetric_condition",
    "RANDERS_NOTE",
]

RANDERS_NOTE = ("A Douglas Randers metric F = alpha + beta is obtained from any X in the "
                "Douglas subspace with ||X||_alpha < 1 (orthonormal basis: sum of squared "
                "coordinates below 1).")

DICHOTOMY_NOTE = ("Assumed: a Douglas homogeneous (alpha, beta)-metric is of Berwald type or a "
                  "Douglas Randers metric; non-Randers Douglas metrics exist iff the Berwald "
                  "subspace is nonzero.")


def douglas_space(g: MetricLieAlgebra) -> Subspace:
    return orthogonal_complement(g, derived_subalgebra(g))


def berwald_space(g: MetricLieAlgebra, conn: ConnectionTable | None = None) -> Subspace:
    """Constant X with nabla_{E_i} X = 0 for every basis vector E_i."""
    conn = conn or koszul_connection(g)
    n = g.dim
    # row (i, k): sum_j x_j <nabla_{E_i} E_j, E_k>
    rows = [[conn[(i, j)][k] for j in range(n)] for i in range(n) for k in range(n)]
    return nullspace(rows, n, g.context)


@dataclass(frozen=True)
class ClassificationReport:
    douglas_space: Subspace
    berwald_space: Subspace
    nonranders_douglas_exists: bool
    randers_bound_note: str = RANDERS_NOTE
    notes: tuple = field(default=(DICHOTOMY_NOTE,))
    basis_names: tuple = ()

    def to_json(self) -> dict:
        names = self.basis_names or None
        return {
            "douglas_span": self.douglas_space.span_names(names),
            "berwald_span": self.berwald_space.span_names(names),
            "nonranders_douglas_exists": self.nonranders_douglas_exists,
            "notes": [self.randers_bound_note, *self.notes],
        }

    def to_text(self) -> str:
        names = self.basis_names or None
        d = self.douglas_space.describe(names)
        b = self.berwald_space.describe(names)
        lines = [
            f"Douglas type iff X in {d}.",
            f"Berwald type iff X in {b}.",
        ]
        if self.nonranders_douglas_exists:
            lines.append("Non-Randers Douglas (alpha, beta)-metrics exist: any nonzero X in "
                         f"{b} with a non-Riemannian phi gives a Berwald metric.")
        else:
            lines.append("Every non-Riemannian Douglas (alpha, beta)-metric is a Randers metric.")
        lines.append(self.randers_bound_note)
        lines.extend(self.notes)
        return "\n".join(lines)


def classify(g: MetricLieAlgebra) -> ClassificationReport:
    conn = koszul_connection(g)
    dspace = douglas_space(g)
    bspace = berwald_space(g, conn)
    return ClassificationReport(dspace, bspace, bspace.rank > 0, basis_names=g.basis_names)


def randers_norm_check(x_coords: Sequence) -> bool:
    """True iff ||X|| < 1 in the orthonormal basis (boundary excluded)."""
    return sum(as_fraction(x) ** 2 for x in x_coords) < 1


def berwald_symmetric_condition(g: MetricLieAlgebra, x: AlgebraVector) -> dict:
    """Residuals <[x,E_i],E_j> + <[x,E_j],E_i> for i <= j (0-based keys).

    All residuals vanish iff ad(x) is skew-symmetric.
    """
    n = g.dim
    adx = [bracket(g, x, g.basis(i)) for i in range(n)]
    out = {}
    for i in range(n):
        for j in range(i, n):
            out[(i, j)] = adx[i][j] + adx[j][i]
    return out


def is_orthogonal_to(x: AlgebraVector, s: Subspace) -> bool:
    """inner(x, d) == 0 identically for every generator d of s."""
    return all(inner(x, d).is_zero() for d in s.generators)

