"""Built-in five-dimensional nilpotent metric Lie algebras and their expected results.

Each preset pairs an algebra (with its parameter constraints) with a bundle
of reference values stored as JSON under ``data/``.  The reference values are
the published tables, kept verbatim.  Where a published value is provably
inconsistent, the data file also carries the corrected value together with a
witness kind; :func:`regression_bundle` then reports a *divergence* instead of
a failure, but only if the freshly computed result equals the corrected value
and the witness can be re-checked automatically.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Callable, Mapping

from .exactalg import ParamContext, Polynomial, UsageError
from .finsler import classify
from .geodesic import (
    ComponentClaim,
    geodesic_system,
    numeric_component_scan,
    point_in_component,
    verify_component,
)
from .liealg import AlgebraVector, MetricLieAlgebra, jacobi_check, nilpotency_class
from .riemgeom import curvature_summary, curvature_tensor, koszul_connection
from .scurv import s_curvature

__all__ = [
    "PRESET_IDS",
    "CatalogEntry",
    "Check",
    "build",
    "regression_bundle",
    "presets",
    "regimes",
    "sample_points",
    "sample_point",
    "claims",
]

PRESET_IDS = ("twostep_i", "twostep_ii", "twostep_iii", "l57", "l56", "l55", "l59")

PASS, FAIL, DIVERGENCE = "pass", "fail", "divergence"


@dataclass(frozen=True)
class _Regime:
    constraints: str
    symbols: tuple
    positive: tuple
    nonneg: tuple
    substitution: Mapping[str, str] = field(default_factory=dict)
    # extra constraints on a sample point, beyond sign assumptions
    accept: Callable[[Mapping[str, Fraction]], bool] = lambda p: True


def _b_rule(p):
    return p["b"] > 0 or p["f"] >= 0


_FAMILIES: dict = {
    "twostep_i": {
        "brackets": {(1, 2): "lam*E5", (3, 4): "mu*E5"},
        "regimes": [_Regime("lam >= mu > 0", ("lam", "mu"), ("lam", "mu"), (),
                            accept=lambda p: p["lam"] >= p["mu"])],
    },
    "twostep_ii": {
        "brackets": {(1, 2): "lam*E4", (1, 3): "mu*E5"},
        "regimes": [_Regime("lam >= mu > 0", ("lam", "mu"), ("lam", "mu"), (),
                            accept=lambda p: p["lam"] >= p["mu"])],
    },
    "twostep_iii": {
        "brackets": {(1, 2): "lam*E3"},
        "regimes": [_Regime("lam > 0", ("lam",), ("lam",), ())],
    },
    "l57": {
        "brackets": {(1, 2): "a*E3+b*E4+c*E5", (1, 3): "d*E4+f*E5", (1, 4): "g*E5"},
        "regimes": [_Regime("a, d, g > 0 and either b > 0 or b = 0, f >= 0",
                            ("a", "b", "c", "d", "f", "g"), ("a", "d", "g"), ("b",),
                            accept=_b_rule)],
    },
    "l56": {
        "brackets": {(1, 2): "a*E3+b*E4+c*E5", (1, 3): "d*E4+f*E5", (1, 4): "g*E5",
                     (2, 3): "h*E5"},
        "regimes": [_Regime("a, d, g, h > 0 and either b > 0 or b = 0, f >= 0",
                            ("a", "b", "c", "d", "f", "g", "h"), ("a", "d", "g", "h"), ("b",),
                            accept=_b_rule)],
    },
    "l55": {
        "brackets": {(1, 2): "a*E4+b*E5", (1, 3): "c*E5", (1, 4): "d*E5", (2, 3): "e*E5"},
        "regimes": [_Regime("a, d, e > 0 and b, c >= 0", ("a", "b", "c", "d", "e"),
                            ("a", "d", "e"), ("b", "c"))],
    },
    "l59": {
        "brackets": {(1, 2): "k*E3+l*E4+m*E5", (1, 3): "p*E4", (2, 3): "q*E5"},
        "regimes": [
            _Regime("k > 0, q > p > 0 and l, m >= 0", ("k", "l", "m", "p", "q"),
                    ("k", "p", "q"), ("l", "m"), accept=lambda p: p["q"] > p["p"]),
            _Regime("k, p > 0, l >= 0, m = 0, q = p", ("k", "l", "p"), ("k", "p"), ("l",),
                    substitution={"m": "0", "q": "p"}),
        ],
    },
}

_BASIS = tuple(f"E{k}" for k in range(1, 6))


def _load_data(preset: str) -> dict:
    text = resources.files("nilfinsler").joinpath("data").joinpath(f"{preset}.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        return out

    def to_text(self) -> str:
        line = f"{self.status.upper():<10} {self.name}"
        return f"{line}: {self.detail}" if self.detail else line


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    title: str
    regime: int
    constraints: str
    algebra: MetricLieAlgebra
    expected: Mapping
    _regime: _Regime = field(repr=False, compare=False)
    _base_context: ParamContext = field(repr=False, compare=False)

    @cached_property
    def expr_context(self) -> ParamContext:
        """Algebra parameters plus X coordinates lam1.. and Y coordinates y1.."""
        ctx = self.algebra.context
        n = self.algebra.dim
        extra = [f"lam{k + 1}" for k in range(n)] + [f"y{k + 1}" for k in range(n)]
        return ctx.extend([s for s in extra if s not in ctx])

    @cached_property
    def _parse_context(self) -> ParamContext:
        base = self._base_context
        n = self.algebra.dim
        extra = [f"lam{k + 1}" for k in range(n)] + [f"y{k + 1}" for k in range(n)]
        return base.extend([s for s in extra if s not in base])

    def poly(self, text: str) -> Polynomial:
        """Parse an expected polynomial, applying the regime substitution."""
        p = Polynomial.parse(str(text), self._parse_context)
        sub = {s: Polynomial.parse(v, self._parse_context)
               for s, v in self._regime.substitution.items()}
        if sub:
            p = p.substitute(sub)
        return p.with_context(self.expr_context)

    def vector(self, text: str) -> AlgebraVector:
        v = AlgebraVector.parse(str(text), self._parse_context, self.algebra.basis_names)
        return AlgebraVector(self.poly(c.to_text()) if c else Polynomial.zero(self.expr_context)
                             for c in v)

    def claim(self, data: Mapping) -> ComponentClaim:
        c = ComponentClaim.from_json(data, self._parse_context)
        sub = {s: Polynomial.parse(v, self._parse_context)
               for s, v in self._regime.substitution.items()}

        def fix(p):
            return (p.substitute(sub) if sub else p).with_context(self.expr_context)

        certs = {i: (fix(m), tuple(fix(x) for x in cof)) for i, (m, cof) in c.certificates.items()}
        return ComponentClaim(c.name, c.zero, tuple(fix(r) for r in c.relations),
                              c.nonvanishing, certs)

    def errata(self, section: str) -> dict:
        return {e["key"]: e for e in self.expected.get("errata", []) if e["section"] == section}

    def sample_point(self, rng: random.Random) -> dict:
        return sample_point(self, rng)


def build(preset: str, regime: int = 1) -> CatalogEntry:
    if preset not in _FAMILIES:
        raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(PRESET_IDS)}")
    fam = _FAMILIES[preset]
    regimes = fam["regimes"]
    if not 1 <= regime <= len(regimes):
        raise UsageError(f"preset {preset} has {len(regimes)} regime(s)")
    reg = regimes[regime - 1]
    base = regimes[0]
    base_ctx = ParamContext(base.symbols, base.positive, base.nonneg)
    ctx = ParamContext(reg.symbols, reg.positive, reg.nonneg)
    sub = {s: Polynomial.parse(v, base_ctx) for s, v in reg.substitution.items()}
    table = {}
    for (i, j), text in fam["brackets"].items():
        vec = AlgebraVector.parse(text, base_ctx, _BASIS)
        if sub:
            vec = vec.substitute(sub)
        table[(i - 1, j - 1)] = AlgebraVector(c.with_context(ctx) for c in vec)
    data = _load_data(preset)
    algebra = MetricLieAlgebra(5, table, ctx, _BASIS, name=preset)
    return CatalogEntry(preset, data["title"], regime, reg.constraints, algebra, data, reg, base_ctx)


def regimes(preset: str) -> list[str]:
    """Constraint text of each parameter regime of ``preset``."""
    if preset not in _FAMILIES:
        raise UsageError(f"unknown preset {preset!r}")
    return [r.constraints for r in _FAMILIES[preset]["regimes"]]


def presets() -> list[dict]:
    out = []
    for pid in PRESET_IDS:
        fam = _FAMILIES[pid]
        out.append({
            "id": pid,
            "title": _load_data(pid)["title"],
            "regimes": [r.constraints for r in fam["regimes"]],
        })
    return out


def _random_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 4))


def sample_point(entry: CatalogEntry, rng: random.Random) -> dict:
    """Random rational parameter point satisfying the entry's constraints."""
    reg = entry._regime
    for _ in range(1000):
        point = {}
        for s in reg.symbols:
            if s in reg.positive:
                point[s] = _random_positive(rng)
            elif s in reg.nonneg:
                point[s] = Fraction(0) if rng.random() < 0.25 else _random_positive(rng)
            else:
                v = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
                point[s] = v
        if reg.accept(point):
            return point
    raise UsageError(f"could not sample a point for {entry.id}")  # pragma: no cover


def claims(entry: CatalogEntry, variant: str = "stated") -> list[ComponentClaim]:
    """Claimed geodesic components; ``variant="derived"`` applies corrections."""
    fixes = entry.errata("geodesic_components")
    out = []
    for data in entry.expected.get("geodesic_components", []):
        if variant == "derived" and data["name"] in fixes:
            data = fixes[data["name"]]["derived"]
        out.append(entry.claim(data))
    return out


# -- regression bundle ---------------------------------------------------------

def _vec_text(v: AlgebraVector, names) -> str:
    return v.to_text(names)


class _Bundle:
    def __init__(self, entry: CatalogEntry):
        self.entry = entry
        self.g = entry.algebra
        self.names = self.g.basis_names
        self.checks: list[Check] = []

    def add(self, name: str, status: str, detail: str = ""):
        self.checks.append(Check(name, status, detail))

    def compare(self, name: str, ok: bool, detail: str, erratum: Mapping | None = None,
                derived_ok: Callable[[], bool] | None = None,
                witness: Callable[[], str | None] | None = None):
        if ok:
            self.add(name, PASS)
            return
        if erratum is not None and derived_ok is not None and witness is not None and derived_ok():
            why = witness()
            if why:
                self.add(name, DIVERGENCE, why)
                return
        self.add(name, FAIL, detail)

    # sections ----------------------------------------------------------------
    def structure(self):
        self.add("jacobi", PASS if jacobi_check(self.g) else FAIL)
        want = self.entry.expected.get("nilpotency_class")
        if want is not None:
            got = nilpotency_class(self.g)
            self.compare("nilpotency_class", got == want, f"computed {got}, expected {want}")

    def connection(self):
        table = self.entry.expected.get("connection")
        if not table:
            return
        conn = koszul_connection(self.g)
        for key in sorted(table, key=lambda k: tuple(map(int, k.split(",")))):
            i, j = (int(t) - 1 for t in key.split(","))
            want = self.entry.vector(table[key])
            got = conn[(i, j)]
            self.compare(f"connection[{key}]", got == want,
                         f"computed {_vec_text(got, self.names)}, expected {_vec_text(want, self.names)}")

    def curvature(self):
        table = self.entry.expected.get("curvature")
        if not table:
            return
        R = curvature_tensor(self.g)
        errata = self.entry.errata("curvature")
        stored = {tuple(int(t) - 1 for t in k.split(",")): self.entry.vector(v) for k, v in table.items()}
        zero = AlgebraVector.zero(self.g.dim, self.entry.expr_context)

        def lookup(i, j, k):
            if i == j:
                return zero
            return stored[(i, j, k)] if i < j else -stored[(j, i, k)]

        err_keys = {tuple(int(t) - 1 for t in k.split(",")) for k in errata}
        for key in sorted(stored):
            i, j, k = key
            want = stored[key]
            got = R(i, j, k)
            text = ",".join(str(t + 1) for t in key)
            e = errata.get(text)
            derived = self.entry.vector(e["derived"]) if e else None

            def witness(i=i, j=j, k=k, want=want, derived=derived):
                # <R(Ei,Ej)Ek,El> = <R(Ek,El)Ei,Ej>, read off the stored table
                broken = []
                for l in range(self.g.dim):
                    ref_key = (min(k, l), max(k, l), i)
                    if k == l or ref_key in err_keys:
                        continue
                    ref = lookup(k, l, i)[j]
                    if derived[l] != ref:
                        return None
                    if want[l] != ref:
                        broken.append(l)
                if not broken:
                    return None
                l = broken[0]
                return (f"stored value violates pair symmetry against "
                        f"R(E{k + 1},E{l + 1})E{i + 1} in the same table; "
                        f"computed value {_vec_text(derived, self.names)} satisfies it")

            self.compare(f"curvature[{text}]", got == want,
                         f"computed {_vec_text(got, self.names)}, expected {_vec_text(want, self.names)}",
                         e, (lambda got=got, derived=derived: got == derived), witness)

    def curvature_scalars(self):
        exp = self.entry.expected
        if "sectional" not in exp:
            return
        summary = curvature_summary(self.g)
        R = curvature_tensor(self.g)
        n = self.g.dim
        stored_K = {}
        for key in sorted(exp["sectional"], key=lambda k: tuple(map(int, k.split(",")))):
            i, j = (int(t) - 1 for t in key.split(","))
            want = self.entry.poly(exp["sectional"][key])
            stored_K[(i, j)] = want
            got = summary.K(i, j)
            self.compare(f"sectional[{key}]", got == want,
                         f"computed {got.to_text()}, expected {want.to_text()}")
        errata = self.entry.errata("ricci")
        for i, text in enumerate(exp["ricci"]):
            want = self.entry.poly(text)
            got = summary.ricci_diag[i]
            e = errata.get(str(i + 1))
            row = sum((stored_K[(min(i, j), max(i, j))] for j in range(n) if j != i),
                      Polynomial.zero(self.entry.expr_context))

            def witness(want=want, row=row, e=e):
                if want != row and self.entry.poly(e["derived"]) == row:
                    return (f"stored value {want.to_text()} differs from the row sum of the stored "
                            f"sectional table, {row.to_text()}, which the computation reproduces")
                return None

            self.compare(f"ricci[{i + 1}]", got == want,
                         f"computed {got.to_text()}, expected {want.to_text()}",
                         e, (lambda got=got, e=e: e is not None and got == self.entry.poly(e["derived"])),
                         witness)
        want = self.entry.poly(exp["scalar"])
        self.compare("scalar", summary.scalar == want,
                     f"computed {summary.scalar.to_text()}, expected {want.to_text()}")
        # trace identities, contracting the full tensor rather than the sectional table
        ok = True
        total = Polynomial.zero(self.g.context)
        for i in range(n):
            ric = Polynomial.zero(self.g.context)
            for j in range(n):
                ric = ric + R(j, i, i)[j]
            ok = ok and ric == summary.ricci_diag[i]
            total = total + ric
        self.compare("ricci_trace_identity", ok, "Ric(Ei,Ei) differs from sum_j <R(Ej,Ei)Ei,Ej>")
        self.compare("scalar_trace_identity", total == summary.scalar, "scalar differs from trace of Ric")

    def classification(self):
        exp = self.entry.expected
        rep = classify(self.g)
        d = rep.douglas_space.span_names(self.names)
        b = rep.berwald_space.span_names(self.names)
        self.compare("douglas_span", d == exp["douglas_span"], f"computed {d}, expected {exp['douglas_span']}")
        self.compare("berwald_span", b == exp["berwald_span"], f"computed {b}, expected {exp['berwald_span']}")
        self.compare("nonranders_douglas_exists",
                     rep.nonranders_douglas_exists == exp["nonranders_douglas_exists"],
                     f"computed {rep.nonranders_douglas_exists}")

    def geodesics(self):
        exp = self.entry.expected
        sys = geodesic_system(self.g)
        computed = [e.with_context(self.entry.expr_context) for e in sys.equations]
        nonzero = [e for e in computed if e]
        errata = self.entry.errata("geodesic_system")

        def matches(p, pool):
            return any(p == q or p == -q for q in pool)

        stored = [self.entry.poly(t) for t in exp["geodesic_system"]]
        for pos, want in enumerate(stored):
            key = str(pos + 1)
            e = errata.get(key)

            def derived_ok(e=e):
                derived = [self.entry.poly(t) for t in e["derived"]]
                return (len(derived) == len(nonzero) and all(matches(d, nonzero) for d in derived)
                        and all(matches(q, derived) for q in nonzero))

            def witness(want=want, e=e):
                if e["witness"] == "spec_acknowledged" and not matches(want, nonzero):
                    return (f"stored row {want.to_text()} is not +/- any computed equation; "
                            f"direct expansion gives {', '.join(p.to_text() for p in nonzero)}")
                return None

            self.compare(f"geodesic_system[{key}]", matches(want, nonzero),
                         f"{want.to_text()} is not +/- a computed equation", e, derived_ok, witness)
        self.compare("geodesic_system.count", len(stored) == len(nonzero),
                     f"{len(nonzero)} nonzero equations computed, {len(stored)} stored")

        fixes = self.entry.errata("geodesic_components")
        stated_claims = claims(self.entry, "stated")
        for claim in stated_claims:
            e = fixes.get(claim.name)
            ok = verify_component(sys, claim)
            derived = self.entry.claim(e["derived"]) if e else None

            def witness(claim=claim, e=e, derived=derived):
                point = [Fraction(v) for v in e.get("counterexample", [])]
                values = dict(zip(sys.variables, point))
                eqs = [q.substitute(values) for q in sys.equations]
                if e["witness"] == "counterexample":
                    in_claim = (not any(point[k] for k in claim.zero)
                                and all(not r.substitute(values) for r in claim.relations))
                    if in_claim and any(eqs):
                        return (f"point {tuple(map(str, point))} satisfies the stored description "
                                f"but not the system; corrected component '{derived.name}' verifies")
                if e["witness"] == "missed_solution":
                    solves = not any(eqs)
                    outside = all(any(point[k] for k in c.zero) for c in stated_claims)
                    if solves and outside and not any(point[k] for k in derived.zero):
                        return (f"point {tuple(map(str, point))} solves the system but lies in no "
                                f"stored component; corrected component '{derived.name}' verifies")
                return None

            self.compare(f"geodesic_component[{claim.name}]", ok,
                         "claimed component does not reduce the system",
                         e, (lambda derived=derived: derived is not None and verify_component(sys, derived)),
                         witness)

    def completeness(self, seed: int = 0):
        """Numeric scan at one sampled parameter point against the stored components."""
        sys = geodesic_system(self.g)
        params = sample_points(self.entry, 1, seed)[0]
        found = numeric_component_scan(sys, params, samples=2, seed=seed,
                                       claims=claims(self.entry, "stated"))
        unsat = [r for r in found if not r.satisfied]
        loose = [r for r in found if r.component is None]
        if unsat:
            self.add("geodesic_completeness", FAIL, "scan returned a non-solution")
            return
        if not loose:
            self.add("geodesic_completeness", PASS)
            return
        point = tuple(str(v) for v in loose[0].point)
        detail = f"{len(loose)} scan solution(s) outside the stored components, e.g. {point}"
        fixes = self.entry.errata("geodesic_components")
        derived = claims(self.entry, "derived")
        variables = list(sys.variables)
        covered = all(any(point_in_component(r.point, c, variables, params) for c in derived)
                      for r in loose)
        if fixes and covered and all(verify_component(sys, c) for c in derived):
            self.add("geodesic_completeness", DIVERGENCE,
                     detail + "; all of them lie in the corrected components, which verify")
        else:
            self.add("geodesic_completeness", FAIL, detail)

    def scurvature(self):
        exp = self.entry.expected.get("scurvature")
        if not exp:
            return
        x = self.entry.vector(exp["x"])
        s = s_curvature(self.g, x)
        want = self.entry.poly(exp["numerator"])
        got = s.numerator.with_context(self.entry.expr_context)
        self.compare("scurvature.numerator", got == want,
                     f"computed {got.to_text()}, expected {want.to_text()}")
        self.compare("scurvature.correction", s.reduced and s.correction.is_zero(),
                     "correction term is not identically zero")


def regression_bundle(entry: CatalogEntry) -> list[Check]:
    """Named exact checks comparing fresh computations with the stored values."""
    b = _Bundle(entry)
    b.structure()
    b.connection()
    b.curvature()
    b.curvature_scalars()
    b.classification()
    b.geodesics()
    b.completeness()
    b.scurvature()
    return b.checks


def sample_points(entry: CatalogEntry, count: int, seed: int) -> list[dict]:
    rng = random.Random(f"{entry.id}:{entry.regime}:{seed}")
    return [sample_point(entry, rng) for _ in range(count)]
