"""Galois orbits of newforms and the per-prime generation census.

The new cuspidal subspace is split into Hecke-irreducible pieces by
successive operators T_p: a piece is certified an orbit once some T_p acts
on it with an irreducible characteristic polynomial of full degree, and is
subdivided along the factors of that polynomial otherwise. Orbit bases are
kept in reduced column echelon form, so restricting any later operator is a
row selection, not a solve.

The census asks, for each prime p up to a bound, whether the Hecke
eigenvalue a_p generates the orbit's coefficient field. The characteristic
polynomial of T_p on the orbit is the d/m-th power of the minimal polynomial
of a_p over Q, where m is the degree of Q(a_p), so the answer is exactly
irreducibility of that characteristic polynomial. Those polynomials are
reconstructed from word-size modular images: the eigenvalue bound
|a_p| <= 2 p^((k-1)/2) bounds every coefficient, primes are added until the
modulus clears twice that bound, and one extra prime rechecks the lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, isqrt, lcm

from .arith import crt_list, primes_up_to, symmetric_lift
from .linalg import QMat, charpoly_mod
from .modsym import ModularSymbolSpace, engine_primes, modular_symbol_space
from .polyfactor import factor, gf_is_irreducible, is_irreducible
from .polynomials import IntPoly, from_fraction_coeffs

_DECOMPOSE_PRIME_FLOOR = 100


@dataclass(frozen=True)
class NewformOrbit:
    """One Galois orbit of newforms, with its subspace of the symbol space.

    witness_prime is the prime whose T_p certified the orbit, or 0 when the
    certificate came from a combination of operators instead (which happens
    exactly when no single eigenvalue generates the coefficient field).
    """

    level: int
    weight: int
    index: int
    degree: int
    basis: QMat
    pivots: tuple[int, ...]
    witness_prime: int

    @property
    def label(self) -> str:
        return f"{self.level}.{self.weight}.{self.index}"

    @property
    def denominator(self) -> int:
        den = 1
        for row in self.basis.sparse_rows():
            for x in row.values():
                den = lcm(den, x.denominator)
        return den

    def __repr__(self) -> str:
        return f"NewformOrbit({self.label}, degree={self.degree})"


def _apply_poly(mat: QMat, poly: IntPoly) -> QMat:
    """poly(mat) by Horner."""
    n = mat.nrows
    out = QMat.zeros(n, n)
    for c in reversed(poly.coeffs):
        out = out @ mat
        if c:
            out = out + QMat.identity(n).scale(c)
    return out


def _charpoly_of_restriction(space: ModularSymbolSpace, basis: QMat, pivots, p: int) -> tuple[IntPoly, QMat]:
    mat = space.hecke_matrix(p).restrict(basis, pivot_rows=list(pivots), check=True)
    return from_fraction_coeffs(mat.charpoly_fractions()), mat


# restricted operators available to the combination fallback, and the range
# of integer coefficients tried for each pair
_COMBINATION_OPERATORS = 6
_COMBINATION_COEFFS = 4


def _combination_split(space: ModularSymbolSpace, basis: QMat, pivots):
    """Resolve a piece that no single T_p separates, or return None.

    On an orbit where every eigenvalue a_p generates a proper subfield of
    the coefficient field, every individual T_p has a reducible
    characteristic polynomial, so the main loop can never certify the
    piece. A generic element of the Hecke algebra still acts with a
    squarefree characteristic polynomial there, and small sums
    T_p + c T_q reach one quickly; an irreducible factor then certifies
    its kernel piece as a single orbit outright.
    """
    mats: list[QMat] = []
    for p in primes_up_to(1000):
        if space.level % p == 0:
            continue
        mats.append(
            space.hecke_matrix(p).restrict(basis, pivot_rows=list(pivots), check=True)
        )
        if len(mats) == _COMBINATION_OPERATORS:
            break
    dim = basis.ncols
    for i in range(1, len(mats)):
        for c in range(1, _COMBINATION_COEFFS + 1):
            theta = mats[0] + mats[i].scale(c)
            parts = factor(from_fraction_coeffs(theta.charpoly_fractions()))
            if any(e > 1 for _, e in parts.factors):
                continue
            if len(parts.factors) == 1:
                return [(dim, basis, tuple(pivots))]
            out = []
            for f, _ in parts.factors:
                ker, _ = _apply_poly(theta, f).kernel_basis()
                sub, sub_pivots = (basis @ ker).column_echelon()
                assert sub.ncols == f.degree
                out.append((sub.ncols, sub, tuple(sub_pivots)))
            assert sum(d for d, *_ in out) == dim
            return out
    return None


@lru_cache(maxsize=None)
def decompose(level: int, weight: int) -> tuple[NewformOrbit, ...]:
    """Split the new cuspidal subspace into Galois orbits of newforms."""
    space = modular_symbol_space(level, weight)
    if space.new_basis.ncols == 0:
        return ()
    pieces = [(space.new_basis, tuple(space.new_pivots))]
    finished: list[tuple[int, QMat, tuple[int, ...], int]] = []
    total = space.new_basis.ncols
    limit = max(_DECOMPOSE_PRIME_FLOOR, 4 * total)
    for p in primes_up_to(limit):
        if not pieces:
            break
        if level % p == 0:
            continue
        still_open = []
        for basis, pivots in pieces:
            dim = basis.ncols
            charpoly, mat = _charpoly_of_restriction(space, basis, pivots, p)
            parts = factor(charpoly)
            if len(parts.factors) == 1:
                f, e = parts.factors[0]
                if e == 1:
                    assert f.degree == dim
                    finished.append((dim, basis, pivots, p))
                    continue
                still_open.append((basis, pivots))
                continue
            split_total = 0
            for f, e in parts.factors:
                ker, _ = _apply_poly(mat, f ** e).kernel_basis()
                sub, sub_pivots = (basis @ ker).column_echelon()
                split_total += sub.ncols
                assert sub.ncols == f.degree * e
                if e == 1:
                    finished.append((sub.ncols, sub, tuple(sub_pivots), p))
                else:
                    still_open.append((sub, tuple(sub_pivots)))
            assert split_total == dim
        pieces = still_open
    for basis, pivots in pieces:
        resolved = _combination_split(space, basis, pivots)
        if resolved is None:
            raise RuntimeError(
                f"newform decomposition at level {level}, weight {weight} did "
                f"not separate below the prime bound {limit}"
            )
        finished.extend((d, b, pv, 0) for d, b, pv in resolved)
    assert sum(d for d, *_ in finished) == total

    # deterministic ordering: degree ascending, then the trace sequence of
    # T_p over successive primes not dividing the level
    trace_primes = [p for p in primes_up_to(200) if level % p][:12]
    keyed = []
    for dim, basis, pivots, witness in finished:
        traces = []
        for p in trace_primes:
            cp, _ = _charpoly_of_restriction(space, basis, pivots, p)
            traces.append(-cp[dim - 1] if dim else 0)
        keyed.append(((dim, tuple(traces)), basis, pivots, witness))
    keyed.sort(key=lambda item: item[0])
    for i in range(1, len(keyed)):
        assert keyed[i - 1][0] != keyed[i][0], "orbit ordering tie"
    return tuple(
        NewformOrbit(level, weight, idx + 1, key[0], basis, pivots, witness)
        for idx, (key, basis, pivots, witness) in enumerate(keyed)
    )


def eigenvalue_bound(p: int, weight: int) -> int:
    """Integer upper bound for |a_p| on weight-k newforms, any p."""
    return 2 * (isqrt(p ** (weight - 1)) + 1)


def _crt_coefficients(res_lists, qs, modulus, degree, bound) -> list[int]:
    lifted = []
    for i in range(degree + 1):
        residue, _ = crt_list([r[i] for r in res_lists], qs)
        c = symmetric_lift(residue, modulus)
        assert abs(c) <= comb(degree, degree - i) * bound ** (degree - i)
        lifted.append(c)
    assert lifted[degree] == 1
    return lifted


# above this degree the Rabin shortcut costs more than it saves, so the
# census goes straight to reconstruction
_CERTIFY_DEGREE_CAP = 12


def orbit_charpolys(
    space: ModularSymbolSpace, orbits: list[NewformOrbit], p: int
) -> dict[str, IntPoly]:
    """Exact characteristic polynomial of T_p on each orbit, by CRT."""
    if not orbits:
        return {}
    bound = eigenvalue_bound(p, space.weight)
    coeff_bound = max(
        comb(o.degree, i) * bound ** i
        for o in orbits
        for i in range(o.degree + 1)
    )
    avoid = space.denominator * space.level
    for orbit in orbits:
        avoid *= orbit.denominator
    qs: list[int] = []
    modulus = 1
    gen = engine_primes(avoid)
    while modulus <= 2 * coeff_bound:
        q = next(gen)
        qs.append(q)
        modulus *= q
    check_q = next(gen)

    residues: dict[str, list[list[int]]] = {o.label: [] for o in orbits}
    for q in qs + [check_q]:
        t_mod = space.hecke_matrix_mod(p, q)
        for orbit in orbits:
            a_mod = space.subspace_restriction_mod(
                t_mod, orbit.basis, list(orbit.pivots), q
            )
            residues[orbit.label].append(charpoly_mod(a_mod, q))

    out: dict[str, IntPoly] = {}
    for orbit in orbits:
        *main, check = residues[orbit.label]
        lifted = _crt_coefficients(main, qs, modulus, orbit.degree, bound)
        assert all(c % check_q == check[i] % check_q for i, c in enumerate(lifted))
        out[orbit.label] = IntPoly(tuple(lifted))
    return out


def generation_verdicts(
    space: ModularSymbolSpace,
    orbits: list[NewformOrbit],
    p: int,
    poly_cache: dict | None = None,
) -> dict[str, bool]:
    """For each orbit: does a_p fail to generate the coefficient field?

    Word-size primes are streamed one at a time, and each modular image does
    double duty: an image that is irreducible over its F_q certifies the
    rational answer outright (the polynomial is monic), and otherwise it
    joins the pool for CRT reconstruction, after which the exact polynomial
    is factored. Either way the verdict is rigorous.

    `poly_cache` persists per-(orbit, p) evidence across runs: an entry is
    ("exact", coeffs) or ("modq", q, residue coeffs).
    """
    verdicts: dict[str, bool] = {}
    todo: list[NewformOrbit] = []
    for orbit in orbits:
        entry = None if poly_cache is None else poly_cache.get((orbit.label, p))
        if entry is None:
            todo.append(orbit)
        elif entry[0] == "exact":
            verdicts[orbit.label] = not is_irreducible(IntPoly(tuple(entry[1])))
        else:
            _, q, residue = entry
            assert gf_is_irreducible(residue, q)
            verdicts[orbit.label] = False
    if not todo:
        return verdicts

    bound = eigenvalue_bound(p, space.weight)
    avoid = space.denominator * space.level
    for orbit in todo:
        avoid *= orbit.denominator
    state = {
        o.label: {
            "qs": [],
            "res": [],
            "prod": 1,
            "need": 2 * max(comb(o.degree, i) * bound ** i for i in range(o.degree + 1)),
        }
        for o in todo
    }
    undecided = {o.label: o for o in todo}
    gen = engine_primes(avoid)
    while undecided:
        q = next(gen)
        t_mod = space.hecke_matrix_mod(p, q)
        for label, orbit in list(undecided.items()):
            a_mod = space.subspace_restriction_mod(
                t_mod, orbit.basis, list(orbit.pivots), q
            )
            cp = charpoly_mod(a_mod, q)
            st = state[label]
            if st["prod"] > st["need"]:
                # enough residues already; this q is the independent check
                coeffs = _crt_coefficients(
                    st["res"], st["qs"], st["prod"], orbit.degree, bound
                )
                assert all(c % q == cp[i] % q for i, c in enumerate(coeffs))
                verdicts[label] = not is_irreducible(IntPoly(tuple(coeffs)))
                if poly_cache is not None:
                    poly_cache[(label, p)] = ("exact", coeffs)
                del undecided[label]
                continue
            if orbit.degree <= _CERTIFY_DEGREE_CAP and gf_is_irreducible(cp, q):
                verdicts[label] = False
                if poly_cache is not None:
                    poly_cache[(label, p)] = ("modq", q, cp)
                del undecided[label]
                continue
            st["qs"].append(q)
            st["res"].append(cp)
            st["prod"] *= q
    return verdicts


@dataclass(frozen=True)
class OrbitCensus:
    """Which primes up to the bound fail to generate the coefficient field."""

    label: str
    degree: int
    bound: int
    primes_tested: int
    non_generating: tuple[int, ...]

    def count_up_to(self, x: int) -> int:
        assert x <= self.bound
        return sum(1 for p in self.non_generating if p <= x)


def census(
    level: int,
    weight: int,
    bound: int,
    min_degree: int = 2,
    orbit_labels: list[str] | None = None,
    poly_cache: dict | None = None,
    progress=None,
    workers: int = 1,
) -> list[OrbitCensus]:
    """Run the generation census for the orbits of one space.

    Degree-1 orbits are excluded by default (a rational eigenvalue never
    generates a bigger field, and the question is empty for E_f = Q); pass
    min_degree=1 to include them anyway.

    With workers > 1 the per-prime verdicts are computed on a thread pool;
    results are assembled in prime order afterwards, so the output does not
    depend on scheduling. A poly_cache shared across workers must tolerate
    concurrent writes (plain dicts and the JSONL-backed cache both do).
    """
    space = modular_symbol_space(level, weight)
    orbits = [o for o in decompose(level, weight) if o.degree >= min_degree]
    if orbit_labels is not None:
        wanted = set(orbit_labels)
        orbits = [o for o in orbits if o.label in wanted]
        assert len(orbits) == len(wanted), "unknown orbit label"
    ps = primes_up_to(bound)

    def verdicts_at(p: int) -> dict[str, bool]:
        verdicts = generation_verdicts(space, orbits, p, poly_cache=poly_cache)
        for orbit in orbits:
            if level % p == 0 and (level // p) % p != 0 and orbit.degree >= 2:
                # a_p is rational when p divides the level exactly once, so
                # it cannot generate a field of degree >= 2
                assert verdicts[orbit.label]
        return verdicts

    by_prime: dict[int, dict[str, bool]] = {}
    if workers <= 1:
        for p in ps:
            by_prime[p] = verdicts_at(p)
            if progress is not None:
                progress(p)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            for p, verdicts in zip(ps, pool.map(verdicts_at, ps)):
                by_prime[p] = verdicts
                if progress is not None:
                    progress(p)

    hits: dict[str, list[int]] = {o.label: [] for o in orbits}
    for p in ps:
        for orbit in orbits:
            if by_prime[p][orbit.label]:
                hits[orbit.label].append(p)
    return [
        OrbitCensus(o.label, o.degree, bound, len(ps), tuple(hits[o.label]))
        for o in orbits
    ]


def count_function(row: OrbitCensus, x_grid: list[int]) -> tuple[int, ...]:
    """Cumulative counts #{p prime : p < x, a_p fails to generate}.

    The grid must be ascending and stay within the census bound; counts are
    nondecreasing by construction and the final value matches the census
    total whenever the last grid point exceeds every recorded prime.
    """
    assert all(a < b for a, b in zip(x_grid, x_grid[1:])), "grid must ascend"
    assert not x_grid or x_grid[-1] <= row.bound + 1
    return tuple(
        sum(1 for p in row.non_generating if p < x) for x in x_grid
    )
