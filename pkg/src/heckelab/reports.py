"""Deterministic CSV and JSON emitters for every pipeline product.

All output is UTF-8 text with LF line endings and a trailing newline.
Exact rationals are rendered as fraction strings, never floats, so a report
can be diffed byte for byte across runs and platforms.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import prime_divisors, primes_up_to
from .gl2lab import Gl2Census, GridResult
from .orbits import NewformOrbit, OrbitCensus
from .twists import DensityComparison, TwistAnalysis


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _frac(x: Fraction | None) -> str:
    return "" if x is None else str(x)


def orbit_table(level: int, weight: int, orbits: list[NewformOrbit], fmt: str) -> str:
    # witness_prime 0 marks a combination certificate; render it as missing
    if fmt == "csv":
        rows = [
            [level, weight, o.label, o.degree, o.witness_prime or ""]
            for o in orbits
        ]
        return _csv(["N", "k", "orbit", "degree", "witness_p"], rows)
    return _json(
        {
            "schema": 1,
            "level": level,
            "weight": weight,
            "orbits": [
                {
                    "orbit": o.label,
                    "degree": o.degree,
                    "witness_p": o.witness_prime or None,
                }
                for o in orbits
            ],
        }
    )


def _level_divisor_summary(level: int, row: OrbitCensus) -> dict:
    div = prime_divisors(level)
    square = [p for p in div if level % (p * p) == 0]
    excluded = [p for p in row.non_generating if p not in div]
    return {
        "level_primes": list(div),
        "level_primes_square": square,
        "count_excluding_level_primes": len(excluded),
    }


def census_report(level: int, weight: int, rows: list[OrbitCensus], fmt: str) -> str:
    if fmt == "csv":
        out = []
        for row in rows:
            failing = set(row.non_generating)
            for p in primes_up_to(row.bound):
                out.append([level, weight, row.label, row.degree, p, int(p in failing)])
        return _csv(["N", "k", "orbit", "degree", "p", "reducible"], out)
    return _json(
        {
            "schema": 1,
            "level": level,
            "weight": weight,
            "orbits": [
                {
                    "orbit": row.label,
                    "degree": row.degree,
                    "bound": row.bound,
                    "primes_tested": row.primes_tested,
                    "reducible_primes": list(row.non_generating),
                    "count": len(row.non_generating),
                    **_level_divisor_summary(level, row),
                }
                for row in rows
            ],
        }
    )


def twist_report(analyses: list[TwistAnalysis], fmt: str) -> str:
    if fmt == "csv":
        rows = [
            [
                a.level,
                a.weight,
                a.label,
                a.degree,
                a.cm_discriminant if a.cm_discriminant is not None else "",
                ";".join(chi.label for chi in a.twists),
                a.group_order,
                a.fixed_degree if a.fixed_degree is not None else "",
                _frac(a.predicted_generation_density),
            ]
            for a in analyses
        ]
        return _csv(
            [
                "N",
                "k",
                "orbit",
                "degree",
                "cm_disc",
                "twists",
                "group_order",
                "fixed_degree",
                "predicted_density",
            ],
            rows,
        )
    return _json(
        {
            "schema": 1,
            "analyses": [
                {
                    "level": a.level,
                    "weight": a.weight,
                    "orbit": a.label,
                    "degree": a.degree,
                    "cm_discriminant": a.cm_discriminant,
                    "twists": [chi.label for chi in a.twists],
                    "group_order": a.group_order,
                    "fixed_degree": a.fixed_degree,
                    "predicted_density": _frac(a.predicted_generation_density),
                    "bound": a.bound,
                }
                for a in analyses
            ],
        }
    )


def density_report(comparisons: list[DensityComparison], fmt: str) -> str:
    if fmt == "csv":
        rows = [
            [
                c.label,
                c.bound,
                c.primes,
                c.non_generating,
                str(c.empirical),
                _frac(c.predicted_failure),
                _frac(c.predicted),
            ]
            for c in comparisons
        ]
        return _csv(
            [
                "orbit",
                "bound",
                "primes",
                "non_generating",
                "empirical_failure",
                "predicted_failure",
                "predicted_density",
            ],
            rows,
        )
    return _json(
        {
            "schema": 1,
            "comparisons": [
                {
                    "orbit": c.label,
                    "bound": c.bound,
                    "primes": c.primes,
                    "non_generating": c.non_generating,
                    "empirical_failure": str(c.empirical),
                    "predicted_failure": _frac(c.predicted_failure),
                    "predicted_density": _frac(c.predicted),
                }
                for c in comparisons
            ],
        }
    )


def count_report(label: str, grid: list[int], counts: list[int], fmt: str) -> str:
    if fmt == "csv":
        rows = [[label, x, n] for x, n in zip(grid, counts)]
        return _csv(["orbit", "x", "count"], rows)
    return _json(
        {
            "schema": 1,
            "orbit": label,
            "grid": list(grid),
            "counts": list(counts),
        }
    )


def gl2_census_report(census: Gl2Census, fmt: str) -> str:
    if fmt == "csv":
        rows = [
            [
                census.field_order,
                c.kind,
                "[" + " ".join(str(x) for x in c.representative) + "]",
                c.trace,
                c.determinant,
                c.size,
            ]
            for c in census.classes
        ]
        return _csv(["q", "kind", "representative", "trace", "det", "size"], rows)
    return _json(
        {
            "schema": 1,
            "field_order": census.field_order,
            "group_order": census.group_order,
            "kind_counts": census.kind_counts(),
            "kind_sizes": census.kind_sizes(),
            "classes": [
                {
                    "kind": c.kind,
                    "representative": list(c.representative),
                    "trace": c.trace,
                    "det": c.determinant,
                    "size": c.size,
                }
                for c in census.classes
            ],
        }
    )


def gl2_grid_report(results: list[GridResult], fmt: str) -> str:
    if fmt == "csv":
        rows = []
        for r in results:
            if r.bound_report is None:
                continue
            for row in r.bound_report.rows:
                rows.append(
                    [
                        r.base_order,
                        r.ext_degree,
                        r.det_order,
                        r.super_order,
                        r.variant,
                        row.trace,
                        row.determinant,
                        row.class_sum,
                        row.bound,
                        str(row.ratio),
                    ]
                )
        return _csv(
            [
                "q",
                "r",
                "det_order",
                "super_order",
                "variant",
                "trace",
                "det",
                "class_sum",
                "bound",
                "ratio",
            ],
            rows,
        )
    return _json(
        {
            "schema": 1,
            "points": [
                {
                    "q": r.base_order,
                    "r": r.ext_degree,
                    "det_order": r.det_order,
                    "super_order": r.super_order,
                    "variant": r.variant,
                    "group_order": r.group_order,
                    "skip_reason": r.skip_reason,
                    "max_ratio": str(r.bound_report.max_ratio) if r.bound_report else None,
                    "quotient": r.quotient_verdict,
                    "coset_ok": r.coset.ok if r.coset else None,
                    "ok": r.ok,
                }
                for r in results
            ],
        }
    )
