"""Recompute the published reducible-prime tables from scratch.

Runs the full pipeline per space and prints one block per table: the
weight/degree sweep at bound 1000, the degree-2 count table at 10^4, the
degree-3/4 and weight-4 lists, the level-389 decomposition, and the
density comparisons. With --quick only the bound-1000 sweeps run, which
takes a few minutes; the full run is dominated by the 10^4 censuses.
"""

from __future__ import annotations

import argparse
import sys
import time

from heckelab.cache import CensusCache, resolve_cache_dir
from heckelab.orbits import census, decompose
from heckelab.twists import compare_density, detect_inner_twists

WEIGHT_SWEEP = [
    (2, 2, 23), (2, 3, 41), (2, 4, 47),
    (4, 2, 11), (4, 3, 17), (4, 4, 23),
    (6, 2, 7), (6, 3, 11), (6, 4, 17),
    (8, 2, 5), (8, 3, 17), (8, 4, 11),
    (10, 2, 5), (10, 3, 7), (10, 4, 13),
    (12, 2, 5), (12, 3, 7), (12, 4, 21),
]

DEGREE2_LEVELS = [23, 29, 31, 35, 39, 43, 51, 55, 62, 63]
DEEP_ROWS = [(41, 3), (53, 3), (61, 3), (47, 4), (95, 4)]
WEIGHT4_ROWS = [(11, 2), (13, 2), (21, 2), (27, 2), (29, 2), (17, 3), (19, 3)]


def cache_for(args, level: int, weight: int) -> CensusCache | None:
    directory = resolve_cache_dir(args.cache_dir)
    if directory is None:
        return None
    return CensusCache(directory, level, weight)


def show(row, clock: float) -> None:
    primes = ", ".join(str(p) for p in row.non_generating)
    print(
        f"  {row.label} deg={row.degree} bound={row.bound} "
        f"count={len(row.non_generating)} [{time.time() - clock:.0f}s]"
    )
    if primes:
        print(f"    {primes}")


def sweep(args, clock: float) -> None:
    print("reducible primes below 1000 across weights 2..12, degrees 2..4")
    for weight, degree, level in WEIGHT_SWEEP:
        rows = census(
            level, weight, 1000,
            poly_cache=cache_for(args, level, weight), workers=args.workers,
        )
        for row in rows:
            if row.degree == degree:
                show(row, clock)


def degree2_counts(args, clock: float) -> None:
    print("degree-2 weight-2 counts at 10^4")
    for level in DEGREE2_LEVELS:
        rows = census(
            level, 2, 10_000,
            poly_cache=cache_for(args, level, 2), workers=args.workers,
        )
        for row in rows:
            if row.degree != 2:
                continue
            ana = detect_inner_twists(level, 2, row.label)
            twists = ";".join(chi.label for chi in ana.twists) or "-"
            print(
                f"  N={level} {row.label} count={len(row.non_generating)} "
                f"twists={twists} [{time.time() - clock:.0f}s]"
            )


def deep_lists(args, clock: float) -> None:
    print("degree-3/4 weight-2 lists at 10^4")
    for level, degree in DEEP_ROWS:
        rows = census(
            level, 2, 10_000,
            poly_cache=cache_for(args, level, 2), workers=args.workers,
        )
        for row in rows:
            if row.degree == degree:
                show(row, clock)


def weight4_lists(args, clock: float) -> None:
    print("weight-4 lists at 1000")
    for level, degree in WEIGHT4_ROWS:
        rows = census(
            level, 4, 1000,
            poly_cache=cache_for(args, level, 4), workers=args.workers,
        )
        for row in rows:
            if row.degree == degree:
                show(row, clock)
                ana = detect_inner_twists(level, 4, row.label)
                if ana.twists:
                    print(f"    inner twists: {';'.join(c.label for c in ana.twists)}")


def level_389(args, clock: float) -> None:
    print("level 389 weight 2")
    orbits = decompose(389, 2)
    print(f"  degrees: {[o.degree for o in orbits]} [{time.time() - clock:.0f}s]")
    rows = census(
        389, 2, 10_000,
        poly_cache=cache_for(args, 389, 2), workers=args.workers,
    )
    for row in rows:
        show(row, clock)


def densities(args, clock: float) -> None:
    print("predicted vs empirical generation density")
    for level, label, bound in ((63, "63.2.2", 10_000), (23, "23.2.1", 1000)):
        ana = detect_inner_twists(level, 2, label)
        row = census(
            level, 2, bound, orbit_labels=[label],
            poly_cache=cache_for(args, level, 2), workers=args.workers,
        )[0]
        cmp = compare_density(ana, row)
        print(
            f"  {label}: predicted failure {cmp.predicted_failure}, "
            f"empirical {cmp.non_generating}/{cmp.primes} [{time.time() - clock:.0f}s]"
        )
    ana = detect_inner_twists(512, 2, "512.2.7")
    print(
        f"  512.2.7: twist group order {ana.group_order}, "
        f"predicted generation density {ana.predicted_generation_density}"
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="bound-1000 blocks only")
    parser.add_argument("--cache-dir", help="persist charpoly evidence here")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    clock = time.time()
    sweep(args, clock)
    weight4_lists(args, clock)
    if not args.quick:
        degree2_counts(args, clock)
        deep_lists(args, clock)
        level_389(args, clock)
        densities(args, clock)
    print(f"done in {time.time() - clock:.0f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
