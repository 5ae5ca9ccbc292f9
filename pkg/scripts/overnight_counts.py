"""Large-bound reducible-prime counts psi(x) on a decile grid.

The default reproduces the 10^5 columns for the two headline orbits (the
degree-2 newforms at levels 23 and 67 with analytic rank 0 and 1); pass
--bound 1000000 for the overnight version. Progress lines go to stderr so
stdout stays a clean table.
"""

from __future__ import annotations

import argparse
import sys
import time

from heckelab.cache import CensusCache, resolve_cache_dir
from heckelab.orbits import census, count_function, decompose

DEFAULT_TARGETS = ["23.2.1", "67.2.2", "67.2.3"]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=100_000)
    parser.add_argument("--orbit", action="append", help="orbit label, repeatable")
    parser.add_argument("--cache-dir", help="persist charpoly evidence here")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    targets = args.orbit or DEFAULT_TARGETS
    grid = [args.bound * x // 10 for x in range(1, 11)]
    clock = time.time()
    print("orbit,deg," + ",".join(str(x) for x in grid))
    for label in targets:
        level, weight, _ = label.split(".")
        level, weight = int(level), int(weight)
        assert any(o.label == label for o in decompose(level, weight)), label

        done = [0]

        def tick(p, _done=done, _label=label):
            _done[0] += 1
            if _done[0] % 500 == 0:
                print(
                    f"# {_label}: {_done[0]} primes, at p={p}, "
                    f"{time.time() - clock:.0f}s",
                    file=sys.stderr,
                    flush=True,
                )

        directory = resolve_cache_dir(args.cache_dir)
        cache = None if directory is None else CensusCache(directory, level, weight)
        row = census(
            level, weight, args.bound,
            min_degree=1, orbit_labels=[label],
            poly_cache=cache, workers=args.workers, progress=tick,
        )[0]
        counts = count_function(row, grid)
        print(f"{label},{row.degree}," + ",".join(str(n) for n in counts), flush=True)
    print(f"# done in {time.time() - clock:.0f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
