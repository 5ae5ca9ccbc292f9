"""Self-twist structure of newform orbits and what it predicts about a_p.

An orbit has an inner twist by a quadratic character eps when twisting by
eps lands back in the same Galois orbit; together with the identity these
characters form an elementary abelian 2-group. The subgroup of characters
that evaluate to +1 at p controls how far Q(a_p) can reach inside the
coefficient field, so Dirichlet densities of the sign patterns translate
into predicted densities for "a_p generates".

Detection is by the parity criterion on characteristic polynomials: for
eps(p) = -1 the multiset of conjugates of a_p must be stable under negation,
so cp(-X) = (-1)^deg cp(X). Over a degree-2 orbit the criterion is exact;
in higher degree it is the standard prime-by-prime screen, run over enough
primes that every candidate sees at least 50 sign-(-1) tests. Complex
multiplication (checked first, against every fundamental discriminant
compatible with the level) sidelines the density machinery, since a CM form
fails generation for a different reason on half of all primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import kronecker, primes_up_to
from .characters import (
    DirichletCharacter,
    condition_density,
    is_fundamental_discriminant,
    quadratic_characters,
)
from .modsym import modular_symbol_space
from .orbits import NewformOrbit, decompose, orbit_charpolys
from .polynomials import IntPoly

_MIN_NEGATIVE_TESTS = 50
_MIN_INERT_TESTS = 30


class _CharpolyTable:
    """Lazy per-prime exact characteristic polynomials of one orbit."""

    def __init__(self, orbit: NewformOrbit):
        self.space = modular_symbol_space(orbit.level, orbit.weight)
        self.orbit = orbit
        self._memo: dict[int, IntPoly] = {}

    def __call__(self, p: int) -> IntPoly:
        if p not in self._memo:
            self._memo[p] = orbit_charpolys(self.space, [self.orbit], p)[
                self.orbit.label
            ]
        return self._memo[p]


def _get_orbit(level: int, weight: int, label: str) -> NewformOrbit:
    for orbit in decompose(level, weight):
        if orbit.label == label:
            return orbit
    raise ValueError(f"no orbit labelled {label} at level {level}, weight {weight}")


def _is_nilpotent_charpoly(cp: IntPoly, degree: int) -> bool:
    return cp == IntPoly.x_power(degree)


def _parity_holds(cp: IntPoly, degree: int) -> bool:
    flipped = cp.compose_neg()
    return flipped == (cp if degree % 2 == 0 else -cp)


def detect_cm(
    level: int,
    weight: int,
    label: str,
    bound: int = 200,
    charpoly_at=None,
) -> int | None:
    """Fundamental discriminant of the CM field, or None.

    A candidate survives only if a_p = 0 at every tested inert prime, with at
    least 30 such primes per surviving candidate; candidates are the negative
    fundamental discriminants whose absolute value divides 4 * level^2.
    """
    orbit = _get_orbit(level, weight, label)
    if charpoly_at is None:
        charpoly_at = _CharpolyTable(orbit)
    four_n_sq = 4 * level * level
    alive = {
        d: 0
        for d in range(-3, -4 * level - 1, -1)
        if is_fundamental_discriminant(d) and four_n_sq % d == 0
    }
    bound = max(bound, 100)
    while True:
        for d in alive:
            alive[d] = 0
        for p in primes_up_to(bound):
            if not alive:
                return None
            if level % p == 0:
                continue
            inert = [d for d in alive if kronecker(d, p) == -1]
            if not inert:
                continue
            cp = None
            for d in inert:
                if cp is None:
                    cp = charpoly_at(p)
                if _is_nilpotent_charpoly(cp, orbit.degree):
                    alive[d] += 1
                else:
                    del alive[d]
        if not alive:
            return None
        if all(count >= _MIN_INERT_TESTS for count in alive.values()):
            break
        bound *= 2
    assert len(alive) == 1, f"ambiguous CM discriminants {sorted(alive)}"
    return next(iter(alive))


@dataclass(frozen=True)
class TwistAnalysis:
    level: int
    weight: int
    label: str
    degree: int
    cm_discriminant: int | None
    twists: tuple[DirichletCharacter, ...]
    group_order: int
    fixed_degree: int | None
    predicted_generation_density: Fraction | None
    bound: int


def detect_inner_twists(
    level: int, weight: int, label: str, bound: int = 100
) -> TwistAnalysis:
    """Find the quadratic self-twist characters of one orbit.

    Candidates are the nontrivial quadratic characters mod the level; each is
    screened at every prime where it evaluates to -1, and the prime bound is
    doubled until every candidate has seen at least 50 such tests.
    """
    orbit = _get_orbit(level, weight, label)
    charpoly_at = _CharpolyTable(orbit)
    cm = detect_cm(level, weight, label, bound=bound, charpoly_at=charpoly_at)
    if cm is not None:
        return TwistAnalysis(
            level, weight, label, orbit.degree, cm, (), 1, None, None, bound
        )
    candidates = [
        chi.reduce_to_conductor()
        for chi in quadratic_characters(level)
        if not chi.is_trivial()
    ]
    bound = max(bound, 100)
    while True:
        ps = primes_up_to(bound)
        enough = all(
            sum(1 for p in ps if level % p and chi.sign(p) == -1)
            >= _MIN_NEGATIVE_TESTS
            for chi in candidates
        )
        if enough or not candidates:
            break
        bound *= 2
    twists = []
    for chi in candidates:
        ok = all(
            _parity_holds(charpoly_at(p), orbit.degree)
            for p in ps
            if level % p and chi.sign(p) == -1
        )
        if ok:
            twists.append(chi)
    twists.sort(key=lambda c: (c.modulus, c.exponents))
    group = _close_group(twists)
    assert len(group) == len(twists) + 1, "passing twists do not form a group"
    assert orbit.degree % len(group) == 0, (orbit.degree, len(group))
    density = predicted_generation_density(twists)
    return TwistAnalysis(
        level,
        weight,
        label,
        orbit.degree,
        None,
        tuple(twists),
        len(group),
        orbit.degree // len(group),
        density,
        bound,
    )


def _canonical(chi: DirichletCharacter):
    red = chi.reduce_to_conductor()
    return red.modulus, red.exponents


def _close_group(twists) -> list[DirichletCharacter]:
    """The group generated by the twists; raises if they are not closed."""
    elems = {(1, ()): DirichletCharacter.trivial(1)}
    for chi in twists:
        elems[_canonical(chi)] = chi.reduce_to_conductor()
    for a in list(elems.values()):
        for b in list(elems.values()):
            key = _canonical(a * b)
            if key not in elems:
                raise ValueError("twist characters are not closed under product")
    return list(elems.values())


def subgroup_densities(
    twists,
) -> list[tuple[tuple[str, ...], Fraction]]:
    """Density of primes whose +1-subgroup is exactly H, for each subgroup H.

    Subgroups are labelled by the sorted labels of their nontrivial
    characters; the empty label tuple is the trivial subgroup, whose density
    is the predicted density of "a_p generates the coefficient field". The
    densities partition 1.
    """
    nontriv = [chi.reduce_to_conductor() for chi in twists]
    keys = {_canonical(chi) for chi in nontriv}
    assert len(keys) == len(nontriv), "duplicate twist characters"
    out = []
    for mask in range(1 << len(nontriv)):
        subset = [nontriv[i] for i in range(len(nontriv)) if mask >> i & 1]
        inside = {_canonical(c) for c in subset}
        closed = all(
            _canonical(a * b) in inside or (a is b)
            for a in subset
            for b in subset
        )
        if not closed:
            continue
        outside = [c for c in nontriv if _canonical(c) not in inside]
        density = condition_density(subset, outside)
        label = tuple(sorted(c.label for c in subset))
        out.append((label, density))
    total = sum(d for _, d in out)
    assert total == 1, total
    return out


def predicted_generation_density(twists) -> Fraction:
    """Density of primes p with eps(p) = -1 for every inner twist eps."""
    for label, density in subgroup_densities(twists):
        if label == ():
            return density
    raise AssertionError("trivial subgroup missing")


@dataclass(frozen=True)
class DensityComparison:
    label: str
    bound: int
    primes: int
    non_generating: int
    predicted: Fraction | None

    @property
    def empirical(self) -> Fraction:
        return Fraction(self.non_generating, self.primes)

    @property
    def predicted_failure(self) -> Fraction | None:
        if self.predicted is None:
            return None
        return 1 - self.predicted


def compare_density(analysis: TwistAnalysis, census_row) -> DensityComparison:
    """Line up a census against the predicted non-generation density."""
    assert census_row.label == analysis.label
    return DensityComparison(
        analysis.label,
        census_row.bound,
        census_row.primes_tested,
        len(census_row.non_generating),
        analysis.predicted_generation_density,
    )
