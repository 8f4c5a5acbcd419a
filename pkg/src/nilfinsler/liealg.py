"""Metric Lie algebras given by structure constants over an orthonormal basis.

Internally basis indices are 0-based; every user-facing surface (documents,
descriptions, CLI) uses the 1-based ``E1..En`` naming.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactalg import (
    ExactAlgError,
    ParamContext,
    Polynomial,
    PolynomialParseError,
    UsageError,
    mono_div,
    mono_lcm,
)

__all__ = [
    "LieAlgebraError",
    "IndeterminatePivot",
    "NotNilpotent",
    "JacobiError",
    "AlgebraParseError",
    "AlgebraVector",
    "MetricLieAlgebra",
    "Subspace",
    "bracket",
    "inner",
    "jacobi_check",
    "derived_subalgebra",
    "lower_central_series",
    "nilpotency_class",
    "orthogonal_complement",
    "span_of",
    "nullspace",
]


class LieAlgebraError(ExactAlgError):
    """Computation error on a metric Lie algebra."""


class IndeterminatePivot(LieAlgebraError):
    """A span depends on whether an unconstrained parameter vanishes."""


class NotNilpotent(LieAlgebraError):
    pass


class JacobiError(LieAlgebraError, ValueError):
    def __init__(self, triple: tuple[int, int, int], residual: "AlgebraVector"):
        self.triple = triple
        self.residual = residual
        i, j, k = (t + 1 for t in triple)
        super().__init__(f"Jacobi identity fails for (E{i}, E{j}, E{k}): cyclic sum {residual}")


class AlgebraParseError(UsageError):
    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class AlgebraVector:
    """Element of the algebra: ``n`` polynomial coordinates in the basis."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Polynomial]):
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, n: int, context: ParamContext) -> "AlgebraVector":
        z = Polynomial.zero(context)
        return cls([z] * n)

    @classmethod
    def basis(cls, i: int, n: int, context: ParamContext) -> "AlgebraVector":
        z = Polynomial.zero(context)
        one = Polynomial.constant(1, context)
        return cls([one if k == i else z for k in range(n)])

    @classmethod
    def parse(cls, text: str, context: ParamContext, basis_names: Sequence[str]) -> "AlgebraVector":
        """Parse ``"1/2*(a*E3 + b*E4)"``; must be linear in the basis names."""
        ext = context.extend([b for b in basis_names if b not in context])
        expr = Polynomial.parse(text, ext)
        try:
            coeffs = expr.linear_coefficients(basis_names)
        except UsageError as exc:
            raise PolynomialParseError(f"not a vector expression: {text!r}") from exc
        zero = Polynomial.zero(context)
        return cls(coeffs.get(b, zero).with_context(context) for b in basis_names)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other: "AlgebraVector"):
        if len(self.coords) != len(other.coords):
            raise UsageError(f"dimension mismatch: {len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        return AlgebraVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        return AlgebraVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return AlgebraVector(-a for a in self.coords)

    def __mul__(self, scalar) -> "AlgebraVector":
        return AlgebraVector(a * scalar for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def substitute(self, bindings: Mapping[str, object]) -> "AlgebraVector":
        return AlgebraVector(c.substitute(bindings) for c in self.coords)

    def eval(self, point: Mapping[str, object]) -> list[Fraction]:
        return [c.eval(point) for c in self.coords]

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coords)

    def to_text(self, basis_names: Sequence[str] | None = None) -> str:
        names = basis_names or [f"E{k + 1}" for k in range(len(self.coords))]
        parts = []
        for c, name in zip(self.coords, names):
            if c.is_zero():
                continue
            if c == 1:
                body, neg = name, False
            elif c == -1:
                body, neg = name, True
            elif len(c) == 1:
                text = c.to_text()
                neg = text.startswith("-")
                body = f"{text.lstrip('-')}*{name}"
            else:
                body, neg = f"({c.to_text()})*{name}", False
            parts.append((neg, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += f" {'-' if neg else '+'} {body}"
        return out

    def to_latex(self, basis_names: Sequence[str] | None = None) -> str:
        names = basis_names or [f"E{k + 1}" for k in range(len(self.coords))]
        parts = []
        for c, name in zip(self.coords, names):
            if c.is_zero():
                continue
            lname = _latex_basis(name)
            if c == 1:
                parts.append(("+", lname))
            elif c == -1:
                parts.append(("-", lname))
            elif len(c) == 1:
                tex = c.to_latex()
                sign = "-" if tex.startswith("-") else "+"
                parts.append((sign, tex.lstrip("-") + lname))
            else:
                parts.append(("+", f"({c.to_latex()}){lname}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def to_json(self) -> list:
        return [c.to_text() for c in self.coords]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"AlgebraVector({self.to_text()!r})"


def _latex_basis(name: str) -> str:
    if name[:1].isalpha() and name[1:].isdigit():
        return f"{name[0]}_{{{name[1:]}}}"
    return name


def inner(u: AlgebraVector, v: AlgebraVector) -> Polynomial:
    """Orthonormal-basis inner product."""
    u._check(v)
    total = u.coords[0] * v.coords[0]
    for a, b in zip(u.coords[1:], v.coords[1:]):
        if a and b:
            total = total + a * b
    return total


class MetricLieAlgebra:
    """Lie algebra with a fixed orthonormal basis.

    ``brackets`` maps 0-based pairs ``(i, j)`` with ``i < j`` to
    :class:`AlgebraVector` values; absent pairs bracket to zero.  The Jacobi
    identity is verified at construction unless ``check=False``.
    """

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], AlgebraVector],
                 context: ParamContext, basis_names: Sequence[str] | None = None,
                 name: str = "", check: bool = True):
        if dim < 1:
            raise UsageError("dimension must be positive")
        self.dim = dim
        self.context = context
        self.name = name
        self.basis_names = tuple(basis_names or (f"E{k + 1}" for k in range(dim)))
        if len(self.basis_names) != dim:
            raise UsageError("basis_names length must equal dim")
        table = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < dim):
                raise UsageError(f"bracket key {(i, j)} must satisfy 0 <= i < j < dim")
            if len(vec) != dim:
                raise UsageError(f"bracket value for {(i, j)} has wrong dimension")
            if not vec.is_zero():
                table[(i, j)] = vec
        self.brackets = table
        self._zero = AlgebraVector.zero(dim, context)
        if check:
            bad = _first_jacobi_violation(self)
            if bad is not None:
                raise JacobiError(*bad)

    def basis(self, i: int) -> AlgebraVector:
        return AlgebraVector.basis(i, self.dim, self.context)

    def zero(self) -> AlgebraVector:
        return self._zero

    def basis_bracket(self, i: int, j: int) -> AlgebraVector:
        if i == j:
            return self._zero
        if i < j:
            return self.brackets.get((i, j), self._zero)
        return -self.brackets.get((j, i), self._zero)

    def structure_constant(self, i: int, j: int, k: int) -> Polynomial:
        """k-th coordinate of [E_i, E_j]."""
        return self.basis_bracket(i, j)[k]

    def vector(self, text: str) -> AlgebraVector:
        return AlgebraVector.parse(text, self.context, self.basis_names)

    def with_context(self, context: ParamContext) -> "MetricLieAlgebra":
        return MetricLieAlgebra(
            self.dim,
            {k: AlgebraVector(c.with_context(context) for c in v) for k, v in self.brackets.items()},
            context, self.basis_names, self.name, check=False)

    def substitute(self, bindings: Mapping[str, object], context: ParamContext | None = None,
                   name: str | None = None) -> "MetricLieAlgebra":
        ctx = context or self.context
        table = {k: AlgebraVector(c.substitute(bindings).with_context(ctx) for c in v)
                 for k, v in self.brackets.items()}
        return MetricLieAlgebra(self.dim, table, ctx, self.basis_names,
                                self.name if name is None else name)

    # -- documents -------------------------------------------------------------
    def to_document(self) -> dict:
        return {
            "dim": self.dim,
            "basis": list(self.basis_names),
            "params": self.context.to_json(),
            "brackets": [
                {
                    "i": i + 1,
                    "j": j + 1,
                    "value": {self.basis_names[k]: c.to_text() for k, c in enumerate(v) if c},
                }
                for (i, j), v in sorted(self.brackets.items())
            ],
        }

    @classmethod
    def from_document(cls, doc: Mapping, name: str = "") -> "MetricLieAlgebra":
        return _algebra_from_document(doc, name)

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "MetricLieAlgebra":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return _algebra_from_document(doc, name)

    def same_structure(self, other: "MetricLieAlgebra") -> bool:
        return (self.dim == other.dim and self.basis_names == other.basis_names
                and self.context == other.context and self.brackets == other.brackets)

    def __repr__(self):
        return f"MetricLieAlgebra({self.name or 'unnamed'}, dim={self.dim})"


def _algebra_from_document(doc, name: str) -> MetricLieAlgebra:
    if not isinstance(doc, Mapping):
        raise AlgebraParseError("document must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise AlgebraParseError("must be a positive integer", "dim")
    basis = doc.get("basis", [f"E{k + 1}" for k in range(dim)])
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis) or len(set(basis)) != dim):
        raise AlgebraParseError(f"must be a list of {dim} distinct names", "basis")
    for key in ("metric", "gram"):
        if key in doc and not _is_identity(doc[key], dim):
            raise AlgebraParseError("only the orthonormal (identity) metric is supported", key)
    params = doc.get("params", {})
    if not isinstance(params, Mapping):
        raise AlgebraParseError("must be an object", "params")
    positive = list(params.get("positive", []))
    nonneg = list(params.get("nonneg", []))
    free = list(params.get("free", []))
    symbols = params.get("symbols")
    if symbols is None:
        symbols = []
        for s in positive + nonneg + free:
            if s not in symbols:
                symbols.append(s)
    try:
        ctx = ParamContext(tuple(symbols), positive, nonneg)
    except UsageError as exc:
        raise AlgebraParseError(str(exc), "params") from exc
    clash = set(basis) & set(ctx.symbols)
    if clash:
        raise AlgebraParseError(f"basis names clash with parameters {sorted(clash)}", "basis")
    brackets_doc = doc.get("brackets", [])
    if not isinstance(brackets_doc, list):
        raise AlgebraParseError("must be a list", "brackets")
    table: dict = {}
    for n, entry in enumerate(brackets_doc):
        where = f"brackets[{n}]"
        if not isinstance(entry, Mapping):
            raise AlgebraParseError("must be an object", where)
        i, j = entry.get("i"), entry.get("j")
        if not all(isinstance(t, int) and not isinstance(t, bool) and 1 <= t <= dim for t in (i, j)):
            raise AlgebraParseError(f"indices must be integers in 1..{dim}", where)
        if i == j:
            raise AlgebraParseError("[E_i, E_i] is always zero", where)
        value = entry.get("value", {})
        if not isinstance(value, Mapping):
            raise AlgebraParseError("must map basis names to polynomial strings", where + ".value")
        coords = [Polynomial.zero(ctx)] * dim
        for bname, text in value.items():
            if bname not in basis:
                raise AlgebraParseError(f"unknown basis name {bname!r}", where + ".value")
            try:
                coords[basis.index(bname)] = Polynomial.parse(str(text), ctx)
            except PolynomialParseError as exc:
                raise AlgebraParseError(str(exc), f"{where}.value.{bname}") from exc
        vec = AlgebraVector(coords)
        key = (i - 1, j - 1)
        if i > j:
            key, vec = (j - 1, i - 1), -vec
        if key in table:
            raise AlgebraParseError(f"duplicate bracket [E{key[0] + 1}, E{key[1] + 1}]", where)
        table[key] = vec
    return MetricLieAlgebra(dim, table, ctx, basis, name=name or doc.get("name", ""))


def _is_identity(matrix, dim: int) -> bool:
    try:
        return all(Fraction(str(matrix[i][j])) == (1 if i == j else 0)
                   for i in range(dim) for j in range(dim)) and len(matrix) == dim
    except (TypeError, IndexError, ValueError, KeyError):
        return False


def bracket(g: MetricLieAlgebra, u: AlgebraVector, v: AlgebraVector) -> AlgebraVector:
    if len(u) != g.dim or len(v) != g.dim:
        raise UsageError(f"vectors must have dimension {g.dim}")
    result = None
    for (i, j), b in g.brackets.items():
        coeff = u[i] * v[j] - u[j] * v[i]
        if coeff.is_zero():
            continue
        term = b * coeff
        result = term if result is None else result + term
    if result is None:
        return AlgebraVector.zero(g.dim, u[0].context.merge(v[0].context))
    return result


def _first_jacobi_violation(g: MetricLieAlgebra):
    for i, j, k in itertools.combinations(range(g.dim), 3):
        ei, ej, ek = g.basis(i), g.basis(j), g.basis(k)
        total = (bracket(g, g.basis_bracket(i, j), ek) + bracket(g, g.basis_bracket(j, k), ei)
                 + bracket(g, g.basis_bracket(k, i), ej))
        if not total.is_zero():
            return (i, j, k), total
    return None


def jacobi_check(g: MetricLieAlgebra) -> bool:
    return _first_jacobi_violation(g) is None


# -- parametric linear algebra ---------------------------------------------------

def _normalize_row(row: list[Polynomial]) -> list[Polynomial]:
    """Divide out the rational content and positive-monomial gcd of a row."""
    nonzero = [p for p in row if p]
    if not nonzero:
        return row
    num, den, mono = 0, 1, None
    from math import gcd

    for p in nonzero:
        c, m = p.positive_content()
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
        mono = m if mono is None else tuple((s, min(e, dict(m)[s])) for s, e in mono if s in dict(m))
    content = Fraction(num, den)
    # fix the sign so the first nonzero entry has a positive leading coefficient
    if nonzero[0].leading_term()[1] < 0:
        content = -content
    if content == 1 and not mono:
        return row
    return [p.div_monomial(content, mono) if p else p for p in row]


def _rational_reduce(rows: list[list[Polynomial]], ncols: int) -> list[list[Polynomial]]:
    """Reduced echelon form of the rows over Q.

    Each row is read as a rational vector indexed by (column, monomial).
    Rational row operations never change the row space over the parameter
    field, and they often expose single-monomial entries (sums and
    differences of rows) that the parametric pivot rule can use.
    """
    if not rows:
        return rows
    ctx = rows[0][0].context
    for r in rows:
        for p in r:
            ctx = ctx.merge(p.context)
    keys = sorted({(c, m) for r in rows for c in range(ncols) for m, _ in r[c].items()},
                  key=lambda k: (k[0], ctx.sort_key(k[1])))
    pos = {k: t for t, k in enumerate(keys)}
    mat = []
    for r in rows:
        v = [Fraction(0)] * len(keys)
        for c in range(ncols):
            for m, coeff in r[c].items():
                v[pos[(c, m)]] = coeff
        mat.append(v)
    lead = 0
    out = []
    for t in range(len(keys)):
        piv = next((i for i in range(lead, len(mat)) if mat[i][t]), None)
        if piv is None:
            continue
        mat[lead], mat[piv] = mat[piv], mat[lead]
        inv = 1 / mat[lead][t]
        mat[lead] = [x * inv for x in mat[lead]]
        for i in range(len(mat)):
            if i != lead and mat[i][t]:
                f = mat[i][t]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[lead])]
        lead += 1
    for v in mat[:lead]:
        terms: list[dict] = [{} for _ in range(ncols)]
        for (c, m), coeff in zip(keys, v):
            if coeff:
                terms[c][m] = coeff
        out.append([Polynomial(t, ctx) for t in terms])
    return out


def _row_reduce(rows: list[list[Polynomial]], ncols: int):
    """Fraction-free reduced echelon form under the provably-nonzero pivot rule.

    Returns ``(pivot_rows, pivot_cols)``.  An entry is an admissible pivot
    only if it is a single monomial in positive parameters; among those the
    one with least expected fill-in is taken.  If nonzero
    entries remain but no eligible pivot exists, :class:`IndeterminatePivot`
    is raised.
    """
    rows = _rational_reduce([list(r) for r in rows if any(p for p in r)], ncols)
    pivot_rows: list[list[Polynomial]] = []
    pivot_cols: list[int] = []
    free_cols = list(range(ncols))
    while rows:
        # Markowitz-style choice: least fill-in among admissible pivots
        choice = None
        best = None
        col_counts = {c: sum(1 for r in rows if r[c]) for c in free_cols}
        for r_idx, r in enumerate(rows):
            row_count = sum(1 for c in free_cols if r[c])
            for c in free_cols:
                if r[c].is_provably_nonzero():
                    cost = ((row_count - 1) * (col_counts[c] - 1), len(r[c]), c, r_idx)
                    if best is None or cost < best:
                        best, choice = cost, (c, r_idx)
        if choice is None:
            offenders = sorted({c + 1 for r in rows for c in free_cols if r[c]})
            sample = next(r[c] for r in rows for c in free_cols if r[c])
            raise IndeterminatePivot(
                f"cannot decide rank: entries such as {sample} in column(s) {offenders} "
                "are not provably nonzero under the parameter assumptions")
        c, r_idx = choice
        prow = rows.pop(r_idx)
        pivot = prow[c]

        def eliminate(row):
            e = row[c]
            if not e:
                return row
            return _normalize_row([pivot * x - e * y for x, y in zip(row, prow)])

        rows = [r for r in (eliminate(r) for r in rows) if any(p for p in r)]
        pivot_rows = [eliminate(r) for r in pivot_rows]
        prow = _normalize_row(prow)
        pivot_rows.append(prow)
        pivot_cols.append(c)
        free_cols.remove(c)
    # normalisation may have rescaled pivots only by positive monomials
    return pivot_rows, pivot_cols


@dataclass(frozen=True)
class Subspace:
    """Span of linearly independent generators in an ``n``-dimensional algebra."""

    dim: int
    generators: tuple

    @property
    def rank(self) -> int:
        return len(self.generators)

    def coordinate_indices(self) -> tuple[int, ...] | None:
        """0-based indices if this is a coordinate span, else None."""
        idx = []
        for gen in self.generators:
            nz = [k for k, c in enumerate(gen) if c]
            if len(nz) != 1 or not gen[nz[0]].is_constant():
                return None
            idx.append(nz[0])
        return tuple(sorted(idx))

    def is_coordinate(self) -> bool:
        return self.coordinate_indices() is not None

    def describe(self, basis_names: Sequence[str] | None = None) -> str:
        names = basis_names or [f"E{k + 1}" for k in range(self.dim)]
        if not self.generators:
            return "{0}"
        idx = self.coordinate_indices()
        if idx is not None:
            return "span{" + ",".join(names[k] for k in idx) + "}"
        return "span{" + ", ".join(g.to_text(names) for g in self.generators) + "}"

    @property
    def description(self) -> str:
        return self.describe()

    def span_names(self, basis_names: Sequence[str] | None = None) -> list[str]:
        names = basis_names or [f"E{k + 1}" for k in range(self.dim)]
        idx = self.coordinate_indices()
        if idx is None:
            return [g.to_text(names) for g in self.generators]
        return [names[k] for k in idx]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.dim != other.dim or self.rank != other.rank:
            return False
        a, b = self.coordinate_indices(), other.coordinate_indices()
        if a is not None and b is not None:
            return a == b
        return self.generators == other.generators

    def __hash__(self):
        return hash((self.dim, self.coordinate_indices() or self.generators))

    def __str__(self):
        return self.describe()


def coordinate_subspace(indices: Iterable[int], n: int, context: ParamContext) -> Subspace:
    return Subspace(n, tuple(AlgebraVector.basis(k, n, context) for k in sorted(set(indices))))


def span_of(vectors: Iterable[AlgebraVector], n: int) -> Subspace:
    """Span under the provably-nonzero pivot discipline (rows in RREF)."""
    rows = [list(v.coords) for v in vectors]
    if not rows:
        return Subspace(n, ())
    pivot_rows, pivot_cols = _row_reduce(rows, n)
    order = sorted(range(len(pivot_cols)), key=lambda t: pivot_cols[t])
    return Subspace(n, tuple(AlgebraVector(pivot_rows[t]) for t in order))


def nullspace(matrix: Sequence[Sequence[Polynomial]], ncols: int,
              context: ParamContext) -> Subspace:
    """Solutions x of ``matrix @ x = 0`` with constant (parameter) coefficients."""
    rows = [list(r) for r in matrix]
    if rows:
        pivot_rows, pivot_cols = _row_reduce(rows, ncols)
    else:
        pivot_rows, pivot_cols = [], []
    free = [c for c in range(ncols) if c not in pivot_cols]
    lcm = ()
    for r, c in zip(pivot_rows, pivot_cols):
        lcm = mono_lcm(lcm, r[c].leading_term()[0])
    gens = []
    zero = Polynomial.zero(context)
    for f in free:
        coords = [zero] * ncols
        coords[f] = Polynomial({lcm: 1}, context)
        for r, c in zip(pivot_rows, pivot_cols):
            if r[f]:
                pm, pc = r[c].leading_term()
                scale = Polynomial({mono_div(lcm, pm): 1 / pc}, context)
                coords[c] = -(r[f] * scale)
        gens.append(AlgebraVector(_normalize_row(coords)))
    return Subspace(ncols, tuple(gens))


def derived_subalgebra(g: MetricLieAlgebra) -> Subspace:
    return span_of(g.brackets.values(), g.dim)


def lower_central_series(g: MetricLieAlgebra) -> list[Subspace]:
    """``[g^1, g^2, ...]`` ending at the zero subspace.

    Raises :class:`NotNilpotent` if the series stabilises above zero.
    """
    full = coordinate_subspace(range(g.dim), g.dim, g.context)
    series = [full]
    current = full
    while current.rank:
        nxt = span_of((bracket(g, g.basis(i), v) for i in range(g.dim) for v in current.generators),
                      g.dim)
        if nxt.rank >= current.rank:
            raise NotNilpotent(f"lower central series stabilises at {current.describe(g.basis_names)}")
        series.append(nxt)
        current = nxt
    return series


def nilpotency_class(g: MetricLieAlgebra) -> int:
    """Smallest c with g^(c+1) = 0 (0 for the zero algebra, 1 if abelian)."""
    return len(lower_central_series(g)) - 1


def orthogonal_complement(g: MetricLieAlgebra, s: Subspace) -> Subspace:
    return nullspace([list(v.coords) for v in s.generators], g.dim, g.context)


def contains(s: Subspace, v: AlgebraVector, context: ParamContext) -> bool:
    """Membership via rank comparison (same pivot discipline)."""
    if v.is_zero():
        return True
    return span_of(list(s.generators) + [v], s.dim).rank == s.rank
