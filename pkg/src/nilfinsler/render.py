"""Text, JSON and LaTeX renderings of the computed tables.

Every renderer returns a complete string; nothing is written until the whole
table has been built.
"""

from __future__ import annotations

import json
from typing import Sequence

from .exactalg import Polynomial
from .liealg import AlgebraVector
from .riemgeom import ConnectionTable, CurvatureSummary, CurvatureTensor

__all__ = [
    "grid_text",
    "latex_tabular",
    "dump_json",
    "connection_table",
    "curvature_table",
    "sectional_table",
    "ricci_table",
]

FORMATS = ("text", "json", "latex")


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def grid_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[c])) for r in [header, *rows]) for c in range(len(header))]

    def line(cells):
        return "  ".join(str(x).ljust(w) for x, w in zip(cells, widths)).rstrip()

    out = [line(header), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return "\n".join(out) + "\n"


def latex_tabular(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    spec = "l" * len(header)
    lines = [rf"\begin{{tabular}}{{{spec}}}", r"\hline", " & ".join(header) + r" \\", r"\hline"]
    lines.extend(" & ".join(r) + r" \\" for r in rows)
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def _math(s: str) -> str:
    return f"${s}$"


def _vec(v: AlgebraVector, names, fmt: str) -> str:
    return v.to_latex(names) if fmt == "latex" else v.to_text(names)


def _poly(p: Polynomial, fmt: str) -> str:
    return p.to_latex() if fmt == "latex" else p.to_text()


def _latex_name(name: str) -> str:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return f"{head}_{{{tail}}}" if tail else name


def connection_table(conn: ConnectionTable, names: Sequence[str], fmt: str) -> str:
    n = conn.dim
    if fmt == "json":
        return dump_json({"connection": {f"{i + 1},{j + 1}": conn[(i, j)].to_text(names)
                                         for i in range(n) for j in range(n)}})
    if fmt == "latex":
        header = [""] + [_math(_latex_name(b)) for b in names]
        rows = [[_math(rf"\nabla_{{{_latex_name(names[i])}}}")]
                + [_math(_vec(conn[(i, j)], names, fmt)) for j in range(n)] for i in range(n)]
        return latex_tabular(header, rows)
    header = [""] + list(names)
    rows = [[f"nabla_{names[i]}"] + [_vec(conn[(i, j)], names, fmt) for j in range(n)]
            for i in range(n)]
    return grid_text(header, rows)


def curvature_table(R: CurvatureTensor, names: Sequence[str], fmt: str) -> str:
    n = R.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if fmt == "json":
        return dump_json({"curvature": {f"{i + 1},{j + 1},{k + 1}": R(i, j, k).to_text(names)
                                        for i, j in pairs for k in range(n)}})
    if fmt == "latex":
        header = [""] + [_math(_latex_name(b)) for b in names]
        rows = [[_math(f"R({_latex_name(names[i])},{_latex_name(names[j])})")]
                + [_math(_vec(R(i, j, k), names, fmt)) for k in range(n)] for i, j in pairs]
        return latex_tabular(header, rows)
    header = [""] + list(names)
    rows = [[f"R({names[i]},{names[j]})"] + [_vec(R(i, j, k), names, fmt) for k in range(n)]
            for i, j in pairs]
    return grid_text(header, rows)


def sectional_table(summary: CurvatureSummary, names: Sequence[str], fmt: str) -> str:
    n = summary.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if fmt == "json":
        return dump_json({"sectional": {f"{i + 1},{j + 1}": summary.K(i, j).to_text() for i, j in pairs}})
    if fmt == "latex":
        rows = [[_math(f"K({_latex_name(names[i])},{_latex_name(names[j])})"),
                 _math(summary.K(i, j).to_latex())] for i, j in pairs]
        return latex_tabular(["plane", "sectional curvature"], rows)
    rows = [[f"K({names[i]},{names[j]})", summary.K(i, j).to_text()] for i, j in pairs]
    return grid_text(["plane", "sectional curvature"], rows)


def ricci_table(summary: CurvatureSummary, names: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return dump_json({"ricci": [r.to_text() for r in summary.ricci_diag]})
    if fmt == "latex":
        rows = [[_math(f"Ric({_latex_name(b)})"), _math(r.to_latex())]
                for b, r in zip(names, summary.ricci_diag)]
        return latex_tabular(["vector", "Ricci curvature"], rows)
    rows = [[f"Ric({b})", r.to_text()] for b, r in zip(names, summary.ricci_diag)]
    return grid_text(["vector", "Ricci curvature"], rows)


def scalar_line(summary: CurvatureSummary, fmt: str) -> str:
    if fmt == "json":
        return dump_json({"scalar": summary.scalar.to_text()})
    if fmt == "latex":
        return f"$\\tau = {summary.scalar.to_latex()}$\n"
    return f"scalar curvature = {summary.scalar.to_text()}\n"
