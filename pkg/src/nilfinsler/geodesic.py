"""Geodesic vectors of a left-invariant metric.

Y = y_1 E_1 + ... + y_n E_n is a geodesic vector iff <[Y, E_i], Y> = 0 for
every i.  Transferring the Riemannian answer to a Douglas Randers metric
relies on a known result for homogeneous Randers spaces, attached to the
output as a documented assumption rather than re-derived.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactalg import ParamContext, Polynomial, UsageError, as_fraction
from .liealg import AlgebraVector, MetricLieAlgebra, bracket, inner

__all__ = [
    "TRANSFER_ASSUMPTION",
    "GeodesicSystem",
    "ComponentClaim",
    "ScanResult",
    "geodesic_system",
    "verify_component",
    "component_residuals",
    "numeric_component_scan",
    "point_in_component",
]

TRANSFER_ASSUMPTION = ("Geodesic vectors are those of the underlying Riemannian metric; they "
                       "coincide with the geodesic vectors of a Douglas Randers metric "
                       "(known result for homogeneous Randers spaces, assumed, not re-derived).")


def y_names(n: int) -> list[str]:
    return [f"y{k + 1}" for k in range(n)]


@dataclass(frozen=True)
class GeodesicSystem:
    algebra: MetricLieAlgebra
    equations: tuple  # equation i is <[Y, E_i], Y>
    context: ParamContext
    variables: tuple

    def nonzero(self) -> list[tuple[int, Polynomial]]:
        return [(i, e) for i, e in enumerate(self.equations) if e]

    def instantiate(self, params: Mapping[str, object]) -> "GeodesicSystem":
        bindings = {s: as_fraction(v) for s, v in params.items()}
        return GeodesicSystem(self.algebra, tuple(e.substitute(bindings) for e in self.equations),
                              self.context, self.variables)

    def residuals(self, point: Sequence, params: Mapping[str, object] | None = None) -> list[Fraction]:
        values = dict(params or {})
        values.update(zip(self.variables, point))
        return [e.eval(values) for e in self.equations]

    def is_solution(self, point: Sequence, params: Mapping[str, object] | None = None) -> bool:
        return not any(self.residuals(point, params))


def geodesic_system(g: MetricLieAlgebra) -> GeodesicSystem:
    names = y_names(g.dim)
    ctx = g.context.extend(names)
    Y = AlgebraVector(Polynomial.symbol(s, ctx) for s in names)
    eqs = tuple(inner(bracket(g, Y, g.basis(i)), Y).with_context(ctx) for i in range(g.dim))
    return GeodesicSystem(g, eqs, ctx, tuple(names))


@dataclass(frozen=True)
class ComponentClaim:
    """A claimed piece of the solution set.

    ``zero``: 0-based y-indices forced to vanish.  ``relations``: polynomials
    that vanish on the piece.  ``nonvanishing``: 0-based indices assumed
    nonzero.  ``certificates`` maps an equation index to
    ``(multiplier, cofactors)`` with ``multiplier * eq == sum(cof * rel)``
    after the zero substitution; the multiplier must be a product of
    nonvanishing variables.
    """

    name: str
    zero: frozenset = frozenset()
    relations: tuple = ()
    nonvanishing: frozenset = frozenset()
    certificates: Mapping = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: Mapping, context: ParamContext) -> "ComponentClaim":
        parse = lambda s: Polynomial.parse(s, context)  # noqa: E731
        certs = {}
        for key, cert in data.get("certificates", {}).items():
            certs[int(key) - 1] = (parse(cert["multiplier"]),
                                   tuple(parse(c) for c in cert["cofactors"]))
        return cls(
            name=data["name"],
            zero=frozenset(k - 1 for k in data.get("zero", [])),
            relations=tuple(parse(r) for r in data.get("relations", [])),
            nonvanishing=frozenset(k - 1 for k in data.get("nonvanishing", [])),
            certificates=certs,
        )

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "zero": sorted(k + 1 for k in self.zero),
            "relations": [r.to_text() for r in self.relations],
        }
        if self.nonvanishing:
            out["nonvanishing"] = sorted(k + 1 for k in self.nonvanishing)
        return out


def _zero_bindings(claim: ComponentClaim, variables: Sequence[str]) -> dict:
    return {variables[k]: 0 for k in claim.zero}


def component_residuals(sys: GeodesicSystem, claim: ComponentClaim) -> list[tuple[int, Polynomial]]:
    """Equations not accounted for by the claim (empty list = verified)."""
    bindings = _zero_bindings(claim, sys.variables)
    ctx = sys.context
    rels = [r.with_context(ctx).substitute(bindings) for r in claim.relations]
    allowed = {sys.variables[k] for k in claim.nonvanishing}
    bad = []
    for i, eq in enumerate(sys.equations):
        reduced = eq.substitute(bindings)
        if reduced.is_zero():
            continue
        if any(reduced.rational_multiple_of(r) is not None for r in rels if r):
            continue
        cert = claim.certificates.get(i)
        if cert is not None:
            multiplier = cert[0].with_context(ctx)
            cofactors = [c.with_context(ctx) for c in cert[1]]
            mult_ok = (len(multiplier) == 1
                       and all(s in allowed for s in multiplier.symbols()))
            if mult_ok and len(cofactors) == len(rels):
                combo = Polynomial.zero(ctx)
                for c, r in zip(cofactors, rels):
                    combo = combo + c.substitute(bindings) * r
                if (multiplier * reduced - combo).is_zero():
                    continue
        bad.append((i, reduced))
    return bad


def verify_component(sys: GeodesicSystem, claim: ComponentClaim) -> bool:
    """Literal check: each reduced equation is 0, a rational multiple of a
    relation, or covered by an explicit certificate."""
    return not component_residuals(sys, claim)


def point_in_component(point: Sequence, claim: ComponentClaim, variables: Sequence[str],
                       params: Mapping[str, object]) -> bool:
    if any(point[k] for k in claim.zero):
        return False
    if any(not point[k] for k in claim.nonvanishing):
        return False
    values = dict(params)
    values.update(zip(variables, point))
    return all(not r.eval(values) for r in claim.relations)


@dataclass(frozen=True)
class ScanResult:
    point: tuple
    satisfied: bool
    component: str | None

    def to_json(self) -> dict:
        return {"point": [str(x) for x in self.point], "satisfied": self.satisfied,
                "component": self.component}


def _projective_normalize(point: Sequence[Fraction]) -> tuple:
    lead = next((x for x in point if x), None)
    if lead is None:
        return tuple(point)
    return tuple(x / lead for x in point)


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.choice([k for k in range(-9, 10) if k])
    return Fraction(num, rng.randint(1, 4))


def _numeric_terms(eqs: Sequence[Polynomial], variables: Sequence[str]):
    idx = {s: k for k, s in enumerate(variables)}
    out = []
    for e in eqs:
        terms = []
        for mono, c in e.items():
            exps = [0] * len(variables)
            for s, p in mono:
                if s not in idx:
                    raise UsageError(f"unbound parameter {s!r} in geodesic equation")
                exps[idx[s]] = p
            terms.append((c, tuple(exps)))
        out.append(terms)
    return out


def _solve_linear(A: list[list[Fraction]], b: list[Fraction], rng: random.Random):
    """Random solution of A u = b over Q, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if A else 0
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][n] for i in range(r, m)):
        return None
    free = [c for c in range(n) if c not in pivots]
    sol = [Fraction(0)] * n
    for c in free:
        sol[c] = _random_rational(rng)
    for i, c in enumerate(pivots):
        sol[c] = M[i][n] - sum(M[i][f] * sol[f] for f in free)
    return sol


def numeric_component_scan(sys: GeodesicSystem, params: Mapping[str, object],
                           samples: int = 3, seed: int = 0,
                           claims: Iterable[ComponentClaim] = ()) -> list[ScanResult]:
    """Search rational solutions of the instantiated system.

    Every support pattern (which coordinates vanish) is visited; within a
    pattern, each variable subset U in which all equations are linear is
    solved exactly after random rational values are assigned to the other
    support variables.  Solutions are projectively deduplicated and tagged
    with the first claim containing them; untagged solutions are kept.
    """
    params = {s: as_fraction(v) for s, v in params.items()}
    inst = sys.instantiate(params)
    variables = list(sys.variables)
    n = len(variables)
    terms = _numeric_terms(inst.equations, variables)
    claims = list(claims)
    rng = random.Random(seed)
    found: dict = {}

    for support_size in range(1, n + 1):
        for support in itertools.combinations(range(n), support_size):
            sup = set(support)
            # equations restricted to the support
            local = [[(c, ex) for c, ex in t if all(ex[k] == 0 or k in sup for k in range(n))]
                     for t in terms]
            for usize in range(0, support_size + 1):
                for U in itertools.combinations(support, usize):
                    uset = set(U)
                    if any(sum(ex[k] for k in uset) > 1 for t in local for _, ex in t):
                        continue
                    others = [k for k in support if k not in uset]
                    for _ in range(samples):
                        vals = {k: _random_rational(rng) for k in others}
                        A = [[Fraction(0)] * len(U) for _ in local]
                        b = [Fraction(0)] * len(local)
                        for r, t in enumerate(local):
                            for c, ex in t:
                                v = c
                                target = None
                                for k in support:
                                    if ex[k]:
                                        if k in uset:
                                            target = U.index(k)
                                        else:
                                            v *= vals[k] ** ex[k]
                                if target is None:
                                    b[r] -= v
                                else:
                                    A[r][target] += v
                        if U:
                            sol = _solve_linear(A, b, rng)
                            if sol is None:
                                continue
                        elif any(b):
                            continue
                        else:
                            sol = []
                        point = [Fraction(0)] * n
                        for k, v in vals.items():
                            point[k] = v
                        for pos, k in enumerate(U):
                            point[k] = sol[pos]
                        if any(not point[k] for k in support):
                            continue  # belongs to a smaller support pattern
                        key = _projective_normalize(point)
                        if key not in found:
                            found[key] = point
    results = []
    for key in sorted(found):
        point = key
        ok = inst.is_solution(point, params)
        tag = next((c.name for c in claims if point_in_component(point, c, variables, params)), None)
        results.append(ScanResult(tuple(point), ok, tag))
    return results
