"""Command-line interface for the whole pipeline.

Subcommands: orbits, census, twists, density, gl2, count. Reports go to
stdout in CSV (default) or JSON. Exit codes: 0 success, 1 verification
failure, 2 usage error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .cache import CensusCache, resolve_cache_dir
from .config import RunConfig
from .gl2lab import BudgetError, conjugacy_classes, run_grid
from .orbits import census, count_function, decompose
from .reports import (
    census_report,
    count_report,
    density_report,
    gl2_census_report,
    gl2_grid_report,
    orbit_table,
    twist_report,
)
from .twists import compare_density, detect_inner_twists

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(ValueError):
    """Bad command parameters detected after argument parsing."""


def _parse_grid(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.replace("_", "")) for part in text.split(",") if part)
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None


def _add_space_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--level", type=int, required=True)
    sub.add_argument("--weight", type=int, required=True)


def _add_orbit_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--orbit", help="orbit label, e.g. 63.2.2")
    sub.add_argument("--orbit-degree", type=int, help="select orbits of this degree")


def _add_io_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--cache-dir", help="overrides the cache directory variable")
    sub.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckelab",
        description="Exact census of Hecke eigenvalue fields on Gamma_0(N).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", help="newform orbit table for one space")
    _add_space_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("census", help="which primes fail to generate each field")
    _add_space_flags(p)
    _add_orbit_flags(p)
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--min-degree", type=int, default=2)
    _add_io_flags(p)

    p = sub.add_parser("twists", help="inner twists, CM, and predicted density")
    _add_space_flags(p)
    _add_orbit_flags(p)
    p.add_argument("--bound", type=int, default=100, help="evidence prime bound")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("density", help="empirical vs predicted generation density")
    _add_space_flags(p)
    _add_orbit_flags(p)
    p.add_argument("--bound", type=int, default=1000, help="census bound")
    _add_io_flags(p)

    p = sub.add_parser("gl2", help="matrix group verification lab")
    p.add_argument("--q", type=int, help="conjugacy census for one field order")
    p.add_argument("--grid-max", type=int, help="run every check up to this order")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("count", help="cumulative non-generating counts on a grid")
    _add_space_flags(p)
    _add_orbit_flags(p)
    p.add_argument("--grid", required=True, help="comma-separated ascending bounds")
    _add_io_flags(p)

    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        level=getattr(args, "level", None),
        weight=getattr(args, "weight", None),
        orbit=getattr(args, "orbit", None),
        orbit_degree=getattr(args, "orbit_degree", None),
        min_degree=getattr(args, "min_degree", 2),
        bound=getattr(args, "bound", 1000),
        grid=_parse_grid(args.grid) if getattr(args, "grid", None) else (),
        grid_max=getattr(args, "grid_max", None),
        field_order=getattr(args, "q", None),
        output_format=getattr(args, "format", "csv"),
        cache_dir=resolve_cache_dir(getattr(args, "cache_dir", None)),
        workers=getattr(args, "workers", 1),
    )


def _select_labels(cfg: RunConfig, single: bool = False) -> list[str]:
    """Resolve --orbit/--orbit-degree against the actual decomposition."""
    orbits = decompose(cfg.level, cfg.weight)
    if cfg.orbit is not None:
        if cfg.orbit not in [o.label for o in orbits]:
            raise UsageError(
                f"no orbit {cfg.orbit} at level {cfg.level} weight {cfg.weight}; "
                f"have {[o.label for o in orbits]}"
            )
        return [cfg.orbit]
    if cfg.orbit_degree is not None:
        labels = [o.label for o in orbits if o.degree == cfg.orbit_degree]
        if not labels:
            raise UsageError(f"no orbit of degree {cfg.orbit_degree}")
    else:
        labels = [o.label for o in orbits if o.degree >= cfg.min_degree]
        if not labels:
            raise UsageError(f"no orbit of degree >= {cfg.min_degree}")
    if single and len(labels) > 1:
        raise UsageError(f"ambiguous orbit choice {labels}; pass --orbit")
    return labels


def _poly_cache(cfg: RunConfig) -> CensusCache | None:
    if cfg.cache_dir is None:
        return None
    return CensusCache(cfg.cache_dir, cfg.level, cfg.weight)


def cmd_orbits(cfg: RunConfig) -> int:
    orbits = decompose(cfg.level, cfg.weight)
    sys.stdout.write(orbit_table(cfg.level, cfg.weight, list(orbits), cfg.output_format))
    return EXIT_OK


def cmd_census(cfg: RunConfig) -> int:
    labels = _select_labels(cfg)
    rows = census(
        cfg.level,
        cfg.weight,
        cfg.bound,
        min_degree=1,
        orbit_labels=labels,
        poly_cache=_poly_cache(cfg),
        workers=cfg.workers,
    )
    sys.stdout.write(census_report(cfg.level, cfg.weight, rows, cfg.output_format))
    return EXIT_OK


def cmd_twists(cfg: RunConfig) -> int:
    analyses = [
        detect_inner_twists(cfg.level, cfg.weight, label, bound=cfg.bound)
        for label in _select_labels(cfg)
    ]
    sys.stdout.write(twist_report(analyses, cfg.output_format))
    return EXIT_OK


def cmd_density(cfg: RunConfig) -> int:
    comparisons = []
    cache = _poly_cache(cfg)
    for label in _select_labels(cfg):
        analysis = detect_inner_twists(cfg.level, cfg.weight, label)
        row = census(
            cfg.level,
            cfg.weight,
            cfg.bound,
            min_degree=1,
            orbit_labels=[label],
            poly_cache=cache,
            workers=cfg.workers,
        )[0]
        comparisons.append(compare_density(analysis, row))
    sys.stdout.write(density_report(comparisons, cfg.output_format))
    return EXIT_OK


def cmd_gl2(cfg: RunConfig) -> int:
    if (cfg.field_order is None) == (cfg.grid_max is None):
        raise UsageError("pass exactly one of --q or --grid-max")
    if cfg.field_order is not None:
        report = gl2_census_report(conjugacy_classes(cfg.field_order), cfg.output_format)
        sys.stdout.write(report)
        return EXIT_OK
    results = run_grid(cfg.grid_max)
    sys.stdout.write(gl2_grid_report(list(results), cfg.output_format))
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFICATION


def cmd_count(cfg: RunConfig) -> int:
    if not cfg.grid:
        raise UsageError("count needs a nonempty --grid")
    label = _select_labels(cfg, single=True)[0]
    row = census(
        cfg.level,
        cfg.weight,
        cfg.grid[-1],
        min_degree=1,
        orbit_labels=[label],
        poly_cache=_poly_cache(cfg),
        workers=cfg.workers,
    )[0]
    counts = count_function(row, list(cfg.grid))
    sys.stdout.write(count_report(label, list(cfg.grid), list(counts), cfg.output_format))
    return EXIT_OK


_HANDLERS = {
    "orbits": cmd_orbits,
    "census": cmd_census,
    "twists": cmd_twists,
    "density": cmd_density,
    "gl2": cmd_gl2,
    "count": cmd_count,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
