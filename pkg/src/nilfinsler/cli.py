"""Command-line interface: ``nilfinsler <command> --preset ID | --input FILE``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import catalog, render
from .exactalg import ExactAlgError, ParamContext, Polynomial, PolynomialParseError, UsageError
from .finsler import classify, is_orthogonal_to, randers_norm_check
from .geodesic import (
    TRANSFER_ASSUMPTION,
    geodesic_system,
    numeric_component_scan,
)
from .liealg import (
    AlgebraParseError,
    AlgebraVector,
    JacobiError,
    LieAlgebraError,
    MetricLieAlgebra,
    IndeterminatePivot,
    contains,
    derived_subalgebra,
    nilpotency_class,
)
from .riemgeom import curvature_summary, curvature_tensor, koszul_connection
from .scurv import s_curvature, s_curvature_eval

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2

COMMANDS = ("connection", "curvature", "sectional", "ricci", "scalar", "classify", "geodesic",
            "scurvature", "verify", "presets", "export")


class _Source:
    def __init__(self, algebra: MetricLieAlgebra, entry: catalog.CatalogEntry | None):
        self.algebra = algebra
        self.entry = entry


def _load_source(args) -> _Source:
    if args.preset and args.input:
        raise UsageError("give exactly one of --preset and --input")
    if args.preset:
        entry = catalog.build(args.preset, args.regime or 1)
        return _Source(entry.algebra, entry)
    if args.input:
        if args.regime:
            raise UsageError("--regime only applies to presets")
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
        g = MetricLieAlgebra.from_json(text, name=Path(args.input).stem)
        try:
            nilpotency_class(g)  # raises NotNilpotent
        except IndeterminatePivot:
            pass  # undecidable here; commands that need the series will report it
        return _Source(g, None)
    raise UsageError("give one of --preset and --input")


def _parse_params(text: str | None, ctx: ParamContext) -> dict:
    """``"a=1,b=1/2"`` -> {symbol: Fraction}."""
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in ctx:
            raise UsageError(f"bad parameter binding {item!r}; expected name=value with name in {ctx.symbols}")
        try:
            out[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad value in {item!r}") from exc
    return out


def _check_params(params: dict, ctx: ParamContext) -> None:
    missing = [s for s in ctx.symbols if s not in params]
    if missing:
        raise UsageError(f"missing parameter values for {missing}")
    for s, v in params.items():
        if s in ctx.positive and v <= 0:
            raise UsageError(f"{s} must be positive")
        if s in ctx.nonneg and v < 0:
            raise UsageError(f"{s} must be non-negative")


def _parse_x(text: str, g: MetricLieAlgebra) -> AlgebraVector:
    """Comma-separated coordinates, each a polynomial in the parameters and lam1..lamn."""
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != g.dim:
        raise UsageError(f"--x needs {g.dim} comma-separated coordinates")
    ctx = _x_context(g)
    return AlgebraVector(Polynomial.parse(p, ctx) for p in parts)


def _x_context(g: MetricLieAlgebra) -> ParamContext:
    names = [f"lam{k + 1}" for k in range(g.dim)]
    return g.context.extend([s for s in names if s not in g.context])


def _generic_douglas_x(g: MetricLieAlgebra) -> AlgebraVector:
    """X = sum lam_k E_k over the Douglas subspace (coordinate case)."""
    rep = classify(g)
    idx = rep.douglas_space.coordinate_indices()
    if idx is None:
        raise UsageError("Douglas subspace is not a coordinate span; pass --x explicitly")
    ctx = _x_context(g)
    return AlgebraVector(Polynomial.symbol(f"lam{k + 1}", ctx) if k in idx else Polynomial.zero(ctx)
                         for k in range(g.dim))


def _parse_point(text: str, n: int, what: str) -> list[Fraction]:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"{what} needs {n} comma-separated rationals")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from exc


# -- commands ------------------------------------------------------------------

def cmd_connection(args, src: _Source) -> tuple[str, int]:
    g = src.algebra
    return render.connection_table(koszul_connection(g), g.basis_names, args.format), EXIT_OK


def cmd_curvature(args, src: _Source):
    g = src.algebra
    return render.curvature_table(curvature_tensor(g), g.basis_names, args.format), EXIT_OK


def cmd_sectional(args, src: _Source):
    g = src.algebra
    return render.sectional_table(curvature_summary(g), g.basis_names, args.format), EXIT_OK


def cmd_ricci(args, src: _Source):
    g = src.algebra
    return render.ricci_table(curvature_summary(g), g.basis_names, args.format), EXIT_OK


def cmd_scalar(args, src: _Source):
    return render.scalar_line(curvature_summary(src.algebra), args.format), EXIT_OK


def cmd_classify(args, src: _Source):
    g = src.algebra
    rep = classify(g)
    membership = None
    if args.x:
        x = _parse_x(args.x, g)
        ctx = x[0].context
        gx = g.with_context(ctx)
        membership = {
            "x": x.to_text(g.basis_names),
            "douglas": is_orthogonal_to(x, derived_subalgebra(gx)),
            "berwald": contains(rep.berwald_space, x, ctx) if rep.berwald_space.rank else x.is_zero(),
        }
        if x.is_constant():
            membership["randers_norm_ok"] = randers_norm_check([c.constant_value() for c in x])
    if args.format == "json":
        out = rep.to_json()
        if membership:
            out["membership"] = membership
        return render.dump_json(out), EXIT_OK
    if args.format == "latex":
        d = rep.douglas_space.describe(g.basis_names)
        b = rep.berwald_space.describe(g.basis_names)
        lines = [r"\begin{itemize}",
                 rf"\item Douglas type iff $X \in {_tex_span(d)}$",
                 rf"\item Berwald type iff $X \in {_tex_span(b)}$",
                 rf"\item non-Randers Douglas metrics exist: {'yes' if rep.nonranders_douglas_exists else 'no'}",
                 r"\end{itemize}"]
        return "\n".join(lines) + "\n", EXIT_OK
    text = rep.to_text() + "\n"
    if membership:
        text += (f"X = {membership['x']}: Douglas {'yes' if membership['douglas'] else 'no'}, "
                 f"Berwald {'yes' if membership['berwald'] else 'no'}")
        if "randers_norm_ok" in membership:
            text += f", ||X|| < 1 {'yes' if membership['randers_norm_ok'] else 'no'}"
        text += "\n"
    return text, EXIT_OK


def _tex_span(s: str) -> str:
    if s == "{0}":
        return r"\{0\}"
    inner = s[len("span{"):-1]
    names = ",".join(f"{n[0]}_{{{n[1:]}}}" for n in inner.split(","))
    return rf"\mathrm{{span}}\{{{names}\}}"


def cmd_geodesic(args, src: _Source):
    g = src.algebra
    sys_ = geodesic_system(g)
    if args.scan:
        if args.params:
            params = _parse_params(args.params, g.context)
            _check_params(params, g.context)
        elif src.entry is not None:
            params = catalog.sample_points(src.entry, 1, args.seed)[0]
        elif g.context.symbols:
            raise UsageError("--scan on an input file needs --params")
        else:
            params = {}
        claims = catalog.claims(src.entry, args.variant) if src.entry is not None else []
        found = numeric_component_scan(sys_, params, samples=args.samples, seed=args.seed, claims=claims)
        outside = sum(1 for r in found if r.component is None)
        if args.format == "json":
            return render.dump_json({
                "params": {s: str(v) for s, v in params.items()},
                "claims": args.variant if src.entry is not None else None,
                "solutions": [r.to_json() for r in found],
                "outside_claimed_components": outside,
            }), EXIT_OK
        rows = [[", ".join(str(v) for v in r.point), "yes" if r.satisfied else "NO",
                 r.component or "-"] for r in found]
        head = "parameters: " + ", ".join(f"{s}={v}" for s, v in params.items()) + "\n"
        body = render.grid_text(["point", "solution", "component"], rows)
        if args.format == "latex":
            body = render.latex_tabular(["point", "solution", "component"],
                                        [[f"$({r[0]})$", r[1], r[2].replace("{", r"\{").replace("}", r"\}")]
                                         for r in rows])
        return head + body + f"{outside} solution(s) outside claimed components\n", EXIT_OK
    eqs = sys_.equations
    if args.format == "json":
        return render.dump_json({
            "equations": [e.to_text() for e in eqs],
            "assumption": TRANSFER_ASSUMPTION,
        }), EXIT_OK
    if args.format == "latex":
        rows = [f"{e.to_latex()} &= 0" for e in eqs if e]
        return ("\\begin{align*}\n" + " \\\\\n".join(rows) + "\n\\end{align*}\n"), EXIT_OK
    lines = [f"<[Y,{g.basis_names[i]}],Y> = {e.to_text()}" for i, e in enumerate(eqs)]
    return "\n".join(lines) + f"\nNote: {TRANSFER_ASSUMPTION}\n", EXIT_OK


def cmd_scurvature(args, src: _Source):
    g = src.algebra
    x = _parse_x(args.x, g) if args.x else _generic_douglas_x(g)
    expr = s_curvature(g, x)
    value = None
    if args.y:
        if not args.xval:
            raise UsageError("--y needs --xval with numeric X coordinates")
        yv = _parse_point(args.y, g.dim, "--y")
        xv = _parse_point(args.xval, g.dim, "--xval")
        params = _parse_params(args.params, g.context)
        _check_params(params, g.context)
        value = s_curvature_eval(expr, yv, xv, params)
    if args.format == "json":
        out = expr.to_json()
        out["x"] = x.to_text(g.basis_names)
        if value is not None:
            out["value"] = str(value) if isinstance(value, Fraction) else value.to_json()
        return render.dump_json(out), EXIT_OK
    text = expr.to_latex() if args.format == "latex" else expr.to_text()
    if args.format == "latex":
        text = f"$${text}$$"
    if value is not None:
        text += f"\nS(y) = {value}"
    return text + "\n", EXIT_OK


def cmd_verify(args, src: _Source):
    if src.entry is None:
        raise UsageError("verify needs --preset (stored expectations)")
    regimes = [args.regime] if args.regime else range(1, len(catalog.regimes(src.entry.id)) + 1)
    records = []
    for r in regimes:
        entry = catalog.build(src.entry.id, r)
        for c in catalog.regression_bundle(entry):
            status = c.status
            if args.strict and status == catalog.DIVERGENCE:
                status = catalog.FAIL
            records.append((r, catalog.Check(c.name, status, c.detail)))
    failed = [c for _, c in records if c.status == catalog.FAIL]
    counts = {s: sum(1 for _, c in records if c.status == s)
              for s in (catalog.PASS, catalog.DIVERGENCE, catalog.FAIL)}
    code = EXIT_COMPUTE if failed else EXIT_OK
    if args.format == "json":
        return render.dump_json({
            "preset": src.entry.id,
            "checks": [dict(regime=r, **c.to_json()) for r, c in records],
            "summary": counts,
        }), code
    multi = len(regimes) > 1
    lines = [(f"[regime {r}] " if multi else "") + c.to_text() for r, c in records]
    lines.append(f"{src.entry.id}: {len(records)} checks, {counts['pass']} pass, "
                 f"{counts['divergence']} divergence, {counts['fail']} fail")
    if failed:
        lines.append("failed: " + ", ".join(c.name for c in failed))
    text = "\n".join(lines) + "\n"
    if args.format == "latex":
        text = "\\begin{verbatim}\n" + text + "\\end{verbatim}\n"
    return text, code


def cmd_presets(args, src=None):
    items = catalog.presets()
    if args.format == "json":
        return render.dump_json(items), EXIT_OK
    rows = []
    for item in items:
        for k, c in enumerate(item["regimes"], 1):
            rows.append([item["id"] if k == 1 else "", str(k), item["title"] if k == 1 else "", c])
    if args.format == "latex":
        return render.latex_tabular(["id", "regime", "algebra", "constraints"], rows), EXIT_OK
    return render.grid_text(["id", "regime", "algebra", "constraints"], rows), EXIT_OK


def cmd_export(args, src: _Source):
    return render.dump_json(src.algebra.to_document()), EXIT_OK


_DISPATCH = {
    "connection": cmd_connection,
    "curvature": cmd_curvature,
    "sectional": cmd_sectional,
    "ricci": cmd_ricci,
    "scalar": cmd_scalar,
    "classify": cmd_classify,
    "geodesic": cmd_geodesic,
    "scurvature": cmd_scurvature,
    "verify": cmd_verify,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilfinsler",
        description="Exact curvature, Douglas/Berwald classification, geodesic vectors and "
                    "S-curvature of left-invariant metrics on nilpotent Lie groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=catalog.PRESET_IDS, help="built-in algebra")
    common.add_argument("--input", metavar="FILE", help="algebra document (JSON)")
    common.add_argument("--regime", type=int, help="parameter regime of the preset (default 1)")
    common.add_argument("--format", choices=render.FORMATS, default="text")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    helps = {
        "connection": "Levi-Civita connection table",
        "curvature": "curvature tensor R(Ei,Ej)Ek",
        "sectional": "sectional curvatures of coordinate planes",
        "ricci": "Ricci curvature of the basis vectors",
        "scalar": "scalar curvature",
        "classify": "Douglas / Berwald subspaces",
        "geodesic": "geodesic-vector equations or numeric scan",
        "scurvature": "S-curvature of the Randers metric alpha + beta",
        "verify": "run the regression bundle of a preset",
        "export": "write the algebra document",
    }
    for name in COMMANDS:
        if name == "presets":
            p = sub.add_parser("presets", help="list built-in algebras")
            p.add_argument("action", nargs="?", choices=["list"], default="list")
            p.add_argument("--format", choices=render.FORMATS, default="text")
            p.add_argument("--out", metavar="FILE")
            continue
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name in ("classify", "scurvature"):
            p.add_argument("--x", help="X coordinates, comma-separated (may use lam1..lamn)")
        if name == "scurvature":
            p.add_argument("--y", help="evaluate at this y (comma-separated rationals)")
            p.add_argument("--xval", help="numeric X used for evaluation")
            p.add_argument("--params", help="parameter values, e.g. a=1,b=1/2")
        if name == "geodesic":
            p.add_argument("--scan", action="store_true", help="numeric search for solutions")
            p.add_argument("--params", help="parameter values, e.g. a=1,b=1/2")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--samples", type=int, default=2)
            p.add_argument("--variant", choices=["stated", "derived"], default="derived",
                           help="which stored component list tags scan results")
        if name == "verify":
            p.add_argument("--strict", action="store_true", help="treat divergences as failures")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[str, str, int]:
    """Return (stdout text, stderr text, exit code) without touching the streams."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", "", int(exc.code or 0)
    try:
        if args.command == "presets":
            out, code = cmd_presets(args)
        else:
            src = _load_source(args)
            out, code = _DISPATCH[args.command](args, src)
    except (JacobiError, AlgebraParseError, PolynomialParseError, UsageError) as exc:
        return "", f"error: {exc}\n", EXIT_USAGE
    except (LieAlgebraError, ExactAlgError) as exc:
        return "", f"error: {type(exc).__name__}: {exc}\n", EXIT_COMPUTE
    return out, "", code


def main(argv: Sequence[str] | None = None) -> int:
    out, err, code = run(argv)
    if err:
        sys.stderr.write(err)
    if out:
        target = _out_target(argv)
        if target:
            try:
                Path(target).write_text(out)
            except OSError as exc:
                sys.stderr.write(f"error: cannot write {target}: {exc.strerror}\n")
                return EXIT_USAGE
        else:
            sys.stdout.write(out)
    return code


def _out_target(argv) -> str | None:
    args, _ = build_parser().parse_known_args(argv)
    return getattr(args, "out", None)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
