"""JSON documents (schema ``knotshift/v1``) and ASCII tables.

Documents are plain dicts of ints, strings, lists and None so that
``json.loads(emit(doc)) == doc``.  Field order is fixed and nothing
time-dependent is emitted, which keeps output byte-identical across runs.
"""

from __future__ import annotations

import json
from typing import Sequence

from .coverings import CoveringReport
from .shift_system import Knot, ShiftSystem
from .spectra import AbelianGroupSpec, CombinedSpectrum, PeriodSpectrum, PeriodTower, describe_pattern

SCHEMA = "knotshift/v1"


def emit(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def parse(text: str) -> dict:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    return doc


def _counts(spec) -> list[list[int]]:
    return [[q, c] for q, c in spec.counts]


def _head(knot: Knot) -> dict:
    return {"schema": SCHEMA, "knot": knot.name, "delta": list(knot.delta.coefficients)}


def analyze_doc(knot: Knot, system: ShiftSystem, spectrum: PeriodSpectrum) -> dict:
    p, r = system.ring.p, system.ring.r
    return {
        **_head(knot),
        "p": p,
        "r": r,
        "n": system.n,
        "hom_order": f"{p}^{r * system.n}",
        "d": spectrum.d,
        "Q": list(spectrum.Q),
        "counts": _counts(spectrum),
    }


def tower_doc(knot: Knot, n: int, tower: PeriodTower) -> dict:
    top = tower.spectra[-1]
    R = len(tower.d_list)
    return {
        **_head(knot),
        "p": tower.p,
        "r": R,
        "n": n,
        "hom_order": f"{tower.p}^{R * n}",
        "d": top.d,
        "Q": list(top.Q),
        "tower": {
            "d": list(tower.d_list),
            "pattern": tower.pattern,
            "s": tower.s,
            "levels": [{"r": i + 1, "d": sp.d, "Q": list(sp.Q), "counts": _counts(sp)} for i, sp in enumerate(tower.spectra)],
        },
    }


def _hom_order(factors: Sequence[tuple[int, int, int]]) -> str:
    return "*".join(f"{p}^{r * n}" for p, r, n in factors)


def combined_doc(knot: Knot, sigma: AbelianGroupSpec, ranks: Sequence[int], parts: Sequence[PeriodSpectrum], combined: CombinedSpectrum) -> dict:
    return {
        **_head(knot),
        "sigma": str(sigma),
        "p": None,
        "r": None,
        "n": None,
        "hom_order": _hom_order([(p, r, n) for (p, r), n in zip(sigma.factors, ranks)]),
        "d": combined.d,
        "Q": list(combined.Q),
        "counts": _counts(combined),
        "factors": [
            {"p": p, "r": r, "n": n, "d": sp.d, "Q": list(sp.Q)} for (p, r), n, sp in zip(sigma.factors, ranks, parts)
        ],
    }


def coverings_doc(knot: Knot, report: CoveringReport, combined: CombinedSpectrum) -> dict:
    doc = combined_doc(knot, report.sigma, [f.n for f in report.factors], [], combined)
    del doc["factors"]
    doc["coverings"] = {
        "degree": report.d,
        "total_fixed": report.total_fixed,
        "surjective_count": report.surjective_count,
        "factors": [
            {"p": f.p, "r": f.r, "n": f.n, "fixed": f"{f.p}^{f.fixed_exponent}", "surjective": f.surjective}
            for f in report.factors
        ],
        "representatives": None
        if report.representatives is None
        else [[list(v) for v in rep] for rep in report.representatives],
    }
    return doc


# --- tables --------------------------------------------------------------------

def table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    line = "-+-".join("-" * w for w in widths)
    fmt = lambda r: " | ".join(c.rjust(w) for c, w in zip(r, widths))
    out = [fmt(cells[0]), line] + [fmt(r) for r in cells[1:]]
    return "\n".join(out) + "\n"


def _fmt_set(xs) -> str:
    return "{" + ", ".join(map(str, xs)) + "}"


def render_table(doc: dict) -> str:
    head = f"knot {doc['knot']}  Delta = {doc['delta']}\n"
    if "coverings" in doc:
        cov = doc["coverings"]
        rows = [[f["p"], f["r"], f["n"], f["fixed"], f["surjective"]] for f in cov["factors"]]
        return (
            head
            + f"sigma {doc['sigma']}  degree {cov['degree']}\n"
            + table(["p", "r", "n", "|Fix|", "onto"], rows)
            + f"total fixed {cov['total_fixed']}  surjective {cov['surjective_count']}\n"
        )
    if "tower" in doc:
        tw = doc["tower"]
        rows = [[lv["r"], lv["d"], _fmt_set(lv["Q"])] for lv in tw["levels"]]
        pattern = describe_pattern(tw["pattern"], tw["s"])
        return head + f"p {doc['p']}  n {doc['n']}\n" + table(["r", "d_r", "Q_r"], rows) + f"pattern: {pattern}\n"
    if "factors" in doc:
        rows = [[f["p"], f["r"], f["n"], f["d"], _fmt_set(f["Q"])] for f in doc["factors"]]
        return (
            head
            + f"sigma {doc['sigma']}  |Hom| = {doc['hom_order']}\n"
            + table(["p", "r", "n", "d", "Q"], rows)
            + f"combined d = {doc['d']}  Q = {_fmt_set(doc['Q'])}\n"
        )
    rows = [[q, c] for q, c in doc["counts"]]
    return (
        head
        + f"p {doc['p']}  r {doc['r']}  n {doc['n']}  |Hom| = {doc['hom_order']}  d = {doc['d']}\n"
        + table(["period", "states"], rows)
    )
