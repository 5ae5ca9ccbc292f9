"""Brute-force laboratory for 2x2 matrix groups over tiny finite fields.

Fields of order at most 16 are small enough that every claim worth trusting
can be checked by exhaustive enumeration: conjugacy classes are computed as
literal orbits, subgroup constructions are closed element by element, and
counting bounds are evaluated against full trace/determinant histograms.

Conjugacy class kinds are tagged with one-letter codes:

    S  scalar matrix                       (size 1)
    T  repeated eigenvalue, not scalar     (size q^2 - 1)
    U  distinct eigenvalues in the field   (size q^2 + q)
    V  irreducible characteristic polynomial (size q^2 - q)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import divisors, factorize
from .polyfactor import gf_is_irreducible

ENUMERATION_CAP = 16

EXPECTED_KIND_SIZE = {
    "S": lambda q: 1,
    "T": lambda q: q * q - 1,
    "U": lambda q: q * q + q,
    "V": lambda q: q * q - q,
}
EXPECTED_KIND_COUNT = {
    "S": lambda q: q - 1,
    "T": lambda q: q - 1,
    "U": lambda q: (q - 1) * (q - 2) // 2,
    "V": lambda q: q * (q - 1) // 2,
}


class BudgetError(ValueError):
    """Requested parameters exceed the exhaustive-enumeration budget."""


class ConstructionError(RuntimeError):
    """A subgroup construction violated one of its required invariants."""


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        n, d = divmod(n, p)
        out.append(d)
    assert n == 0
    return out


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_irreducible(coeffs: list[int], p: int) -> bool:
    """Exhaustive check: no factorization into two monic lower-degree parts."""
    e = len(coeffs) - 1
    for da in range(1, e // 2 + 1):
        db = e - da
        for ta in range(p**da):
            left = _digits(ta, p, da) + [1]
            for tb in range(p**db):
                right = _digits(tb, p, db) + [1]
                if _poly_mul(left, right, p) == coeffs:
                    return False
    return True


class FiniteField:
    """Arithmetic tables for the field with q = p**e elements, q <= 16.

    Elements are the integers 0..q-1; the integer sum(c_i * p**i) stands for
    the residue sum(c_i * x**i) modulo a fixed irreducible monic polynomial,
    chosen as the candidate with the least integer encoding so that the
    construction is deterministic.  Irreducibility of the modulus is verified
    twice, by exhaustive divisor search and by an independent test.
    """

    __slots__ = (
        "order",
        "char",
        "degree",
        "modulus",
        "elements",
        "units",
        "add_table",
        "mul_table",
        "neg_table",
        "inv_table",
        "generator",
        "_orders",
    )

    def __init__(self, q: int) -> None:
        if q > ENUMERATION_CAP:
            raise BudgetError(f"field order {q} exceeds cap {ENUMERATION_CAP}")
        fact = factorize(q)
        if len(fact) != 1:
            raise ValueError(f"{q} is not a prime power")
        p, e = fact[0]
        self.order = q
        self.char = p
        self.degree = e
        self.modulus = self._least_irreducible(p, e)
        self.elements = tuple(range(q))
        self.units = tuple(range(1, q))
        self._build_tables()
        self._build_orders()

    @staticmethod
    def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
        for tail in range(p**e):
            coeffs = _digits(tail, p, e) + [1]
            if _poly_irreducible(coeffs, p):
                assert gf_is_irreducible(coeffs, p)
                return tuple(coeffs)
        raise AssertionError("no irreducible modulus found")

    def _reduce(self, vec: list[int]) -> int:
        p, e, mod = self.char, self.degree, self.modulus
        for i in range(len(vec) - 1, e - 1, -1):
            c = vec[i]
            if c:
                for j in range(e + 1):
                    vec[i - e + j] = (vec[i - e + j] - c * mod[j]) % p
        return sum(c * p**i for i, c in enumerate(vec[:e]))

    def _build_tables(self) -> None:
        q, p, e = self.order, self.char, self.degree
        digit = [_digits(a, p, e) for a in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                add[a][b] = sum(
                    ((digit[a][i] + digit[b][i]) % p) * p**i for i in range(e)
                )
                mul[a][b] = self._reduce(_poly_mul(digit[a], digit[b], p))
        self.add_table = tuple(tuple(row) for row in add)
        self.mul_table = tuple(tuple(row) for row in mul)
        neg = [0] * q
        inv = [0] * q
        for a in range(q):
            neg[a] = next(b for b in range(q) if add[a][b] == 0)
            if a:
                inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
        self.neg_table = tuple(neg)
        self.inv_table = tuple(inv)

    def _build_orders(self) -> None:
        q = self.order
        orders = {}
        for a in self.units:
            acc, k = a, 1
            while acc != 1:
                acc = self.mul_table[acc][a]
                k += 1
            orders[a] = k
        self._orders = orders
        gen = next((a for a in self.units if orders[a] == q - 1), None)
        assert gen is not None, "unit group must be cyclic"
        self.generator = gen

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        assert a != 0
        return self.inv_table[a]

    def power(self, a: int, k: int) -> int:
        assert k >= 0
        acc = 1
        for _ in range(k):
            acc = self.mul_table[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        return self._orders[a]

    def unit_subgroup(self, order: int) -> frozenset[int]:
        """The unique subgroup of the cyclic unit group with this order."""
        assert (self.order - 1) % order == 0
        root = self.power(self.generator, (self.order - 1) // order)
        members = set()
        acc = 1
        while acc not in members:
            members.add(acc)
            acc = self.mul_table[acc][root]
        assert len(members) == order
        return frozenset(members)


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)


@lru_cache(maxsize=None)
def field_embedding(sub_order: int, big_order: int) -> tuple[int, ...]:
    """Image table of the field with sub_order elements inside the bigger one.

    The map sends the residue class of x to the least root of the small
    field's modulus in the big field; it is verified to be an injective ring
    homomorphism before being returned.
    """
    if sub_order == big_order:
        return tuple(range(sub_order))
    sub = finite_field(sub_order)
    big = finite_field(big_order)
    n = big_order
    while n > 1 and n % sub_order == 0:
        n //= sub_order
    assert n == 1, "big field must be an extension of the small one"

    def eval_modulus(u: int) -> int:
        acc = 0
        for c in reversed(sub.modulus):
            acc = big.add(big.mul(acc, u), c)
        return acc

    root = next(u for u in big.elements if eval_modulus(u) == 0)
    image = []
    for a in sub.elements:
        acc = 0
        for i, c in enumerate(_digits(a, sub.char, sub.degree)):
            acc = big.add(acc, big.mul(c, big.power(root, i)))
        image.append(acc)
    assert len(set(image)) == sub_order
    assert image[0] == 0 and image[1] == 1
    for a in sub.elements:
        for b in sub.elements:
            assert image[sub.add(a, b)] == big.add(image[a], image[b])
            assert image[sub.mul(a, b)] == big.mul(image[a], image[b])
    return tuple(image)


# Matrices are 4-tuples (a, b, c, d) for [[a, b], [c, d]] with entries in the
# integer encoding of a FiniteField.

Matrix = tuple[int, int, int, int]

IDENTITY: Matrix = (1, 0, 0, 1)


def mat_mul(field: FiniteField, x: Matrix, y: Matrix) -> Matrix:
    mt, at = field.mul_table, field.add_table
    a, b, c, d = x
    e, f, g, h = y
    return (
        at[mt[a][e]][mt[b][g]],
        at[mt[a][f]][mt[b][h]],
        at[mt[c][e]][mt[d][g]],
        at[mt[c][f]][mt[d][h]],
    )


def mat_det(field: FiniteField, m: Matrix) -> int:
    a, b, c, d = m
    return field.sub(field.mul(a, d), field.mul(b, c))


def mat_trace(field: FiniteField, m: Matrix) -> int:
    return field.add(m[0], m[3])


def mat_inv(field: FiniteField, m: Matrix) -> Matrix:
    a, b, c, d = m
    di = field.inv(mat_det(field, m))
    return (
        field.mul(d, di),
        field.mul(field.neg(b), di),
        field.mul(field.neg(c), di),
        field.mul(a, di),
    )


def mat_scalar(a: int) -> Matrix:
    return (a, 0, 0, a)


def gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def sl2_order(q: int) -> int:
    return q * (q * q - 1)


@lru_cache(maxsize=None)
def gl2_set(q: int) -> frozenset[Matrix]:
    field = finite_field(q)
    out = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if mat_det(field, (a, b, c, d)) != 0:
                        out.append((a, b, c, d))
    assert len(out) == gl2_order(q)
    return frozenset(out)


def gl2_generators(field: FiniteField) -> tuple[Matrix, ...]:
    """Transvections over a prime-field basis plus one determinant mover."""
    basis = [field.char**i for i in range(field.degree)]
    gens: list[Matrix] = []
    for lam in basis:
        gens.append((1, lam, 0, 1))
        gens.append((1, 0, lam, 1))
    if field.order > 2:
        gens.append((field.generator, 0, 0, 1))
    return tuple(gens)


def group_closure(field: FiniteField, generators: tuple[Matrix, ...]) -> frozenset[Matrix]:
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        fresh = []
        for m in frontier:
            for g in generators:
                w = mat_mul(field, m, g)
                if w not in seen:
                    seen.add(w)
                    fresh.append(w)
        frontier = fresh
    return frozenset(seen)


def _conjugation_orbit(
    field: FiniteField,
    rep: Matrix,
    conjugators: list[tuple[Matrix, Matrix]],
) -> set[Matrix]:
    seen = {rep}
    frontier = [rep]
    while frontier:
        fresh = []
        for m in frontier:
            for g, gi in conjugators:
                w = mat_mul(field, mat_mul(field, g, m), gi)
                if w not in seen:
                    seen.add(w)
                    fresh.append(w)
        frontier = fresh
    return seen


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Matrix
    size: int
    kind: str
    trace: int
    determinant: int


@dataclass(frozen=True)
class Gl2Census:
    field_order: int
    group_order: int
    classes: tuple[ConjugacyClass, ...]

    def kind_counts(self) -> dict[str, int]:
        out: Counter[str] = Counter()
        for c in self.classes:
            out[c.kind] += 1
        return dict(out)

    def kind_sizes(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.classes:
            assert out.setdefault(c.kind, c.size) == c.size
        return out


def _canonical_class_reps(field: FiniteField) -> list[tuple[Matrix, str]]:
    q = field.order
    reps: list[tuple[Matrix, str]] = []
    for a in field.units:
        reps.append((mat_scalar(a), "S"))
    for a in field.units:
        reps.append(((a, 0, 1, a), "T"))
    for a in field.units:
        for b in field.units:
            if a < b:
                reps.append(((a, 0, 0, b), "U"))
    for t in field.elements:
        for n in field.units:
            # X^2 - t X + n, kept only when it has no root in the field;
            # the companion matrix then represents the single class with
            # that characteristic polynomial.
            if all(
                field.add(field.sub(field.mul(u, u), field.mul(t, u)), n) != 0
                for u in field.elements
            ):
                reps.append(((0, field.neg(n), 1, t), "V"))
    assert sum(1 for _, kind in reps if kind == "V") == q * (q - 1) // 2
    return reps


def conjugacy_classes(q: int) -> Gl2Census:
    """Full conjugacy census of the invertible 2x2 matrices over F_q.

    Orbits are computed by closure under conjugation; the partition and every
    per-kind size and count are checked against the closed-form values.
    """
    if q > ENUMERATION_CAP:
        raise BudgetError(f"census order {q} exceeds cap {ENUMERATION_CAP}")
    field = finite_field(q)
    group = gl2_set(q)
    conjugators = [(g, mat_inv(field, g)) for g in gl2_generators(field)]
    covered: set[Matrix] = set()
    classes: list[ConjugacyClass] = []
    for rep, kind in _canonical_class_reps(field):
        assert rep not in covered
        orbit = _conjugation_orbit(field, rep, conjugators)
        assert len(orbit) == EXPECTED_KIND_SIZE[kind](q)
        assert not orbit & covered
        covered |= orbit
        classes.append(
            ConjugacyClass(
                representative=rep,
                size=len(orbit),
                kind=kind,
                trace=mat_trace(field, rep),
                determinant=mat_det(field, rep),
            )
        )
    assert len(covered) == len(group) == gl2_order(q)
    assert len(classes) == q * q - 1
    census = Gl2Census(q, gl2_order(q), tuple(classes))
    for kind, count in census.kind_counts().items():
        assert count == EXPECTED_KIND_COUNT[kind](q)
    return census


@lru_cache(maxsize=None)
def det_fiber(q: int, det_order: int) -> tuple[frozenset[Matrix], tuple[Matrix, ...]]:
    """Matrices over F_q whose determinant lies in the unit subgroup of the
    given order, together with a generating set verified by closure."""
    field = finite_field(q)
    allowed = field.unit_subgroup(det_order)
    members = frozenset(m for m in gl2_set(q) if mat_det(field, m) in allowed)
    basis = [field.char**i for i in range(field.degree)]
    gens: list[Matrix] = []
    for lam in basis:
        gens.append((1, lam, 0, 1))
        gens.append((1, 0, lam, 1))
    if det_order > 1:
        rho = field.power(field.generator, (q - 1) // det_order)
        gens.append((rho, 0, 0, 1))
    closure = group_closure(field, tuple(gens))
    assert closure == members
    assert len(members) == det_order * sl2_order(q)
    return members, tuple(gens)


def _embed_matrix(image: tuple[int, ...], m: Matrix) -> Matrix:
    return (image[m[0]], image[m[1]], image[m[2]], image[m[3]])


@dataclass(frozen=True)
class DetGroups:
    """A determinant-constrained pair H <= G of matrix groups.

    H consists of the base-field matrices whose determinant lies in
    det_values; G lives over the extension field with determinants in
    det_supergroup and is built per `variant`.  Normality of H in G and every
    generating set used later are verified at construction time.
    """

    base_order: int
    ext_degree: int
    field: FiniteField
    variant: str
    det_values: frozenset[int]
    det_supergroup: frozenset[int]
    sqrt_supergroup: frozenset[int]
    base_image: tuple[int, ...]
    h_set: frozenset[Matrix]
    g_set: frozenset[Matrix]
    g_generators: tuple[Matrix, ...]
    base_members: frozenset[Matrix]
    base_generators: tuple[Matrix, ...]


def _subgroup_generator(field: FiniteField, members: frozenset[int]) -> int:
    gen = min(a for a in members if field.element_order(a) == len(members))
    return gen


def build_subgroups(
    base_order: int,
    ext_degree: int,
    det_order: int,
    super_order: int,
    variant: str = "scalars",
    extra_generators: tuple[Matrix, ...] = (),
) -> DetGroups:
    """Construct the pair H <= G for the chosen determinant subgroups.

    Variants: "scalars" takes G generated by H together with the scalar
    matrices whose square determinant stays allowed; "full" takes all
    extension-field matrices with allowed determinant; "custom" adjoins the
    supplied extra generators to H.  A normality failure of H in G raises
    ConstructionError rather than returning a pair outside the theory.
    """
    q, r = base_order, ext_degree
    big = q**r
    if big > ENUMERATION_CAP:
        raise BudgetError(f"extension order {big} exceeds cap {ENUMERATION_CAP}")
    m = big - 1
    assert m % super_order == 0 and super_order % det_order == 0
    field = finite_field(big)
    image = field_embedding(q, big)
    image_units = frozenset(image[1:])

    det_values = field.unit_subgroup(det_order)
    det_supergroup = field.unit_subgroup(super_order)
    sqrt_supergroup = frozenset(
        s for s in field.units if field.mul(s, s) in det_supergroup
    )

    base_members_all, _ = det_fiber(q, q - 1)
    # The determinant of an embedded base matrix lands in det_values exactly
    # when it lies in the intersection with the embedded base units; for
    # subgroups of a cyclic group that intersection is fixed by orders alone.
    h_det_order = gcd(det_order, q - 1)
    h_base, h_base_gens = det_fiber(q, h_det_order)
    h_set = frozenset(_embed_matrix(image, mm) for mm in h_base)
    h_gens = tuple(_embed_matrix(image, mm) for mm in h_base_gens)
    direct = frozenset(
        _embed_matrix(image, mm)
        for mm in base_members_all
        if image[mat_det(finite_field(q), mm)] in det_values
    )
    assert h_set == direct
    assert len(h_set) == h_det_order * sl2_order(q)

    if variant == "scalars":
        scalars = [mat_scalar(s) for s in sorted(sqrt_supergroup)]
        g_set = frozenset(
            mat_mul(field, hh, z) for hh in h_set for z in scalars
        )
        sigma = _subgroup_generator(field, sqrt_supergroup)
        g_gens = h_gens + (mat_scalar(sigma),)
    elif variant == "full":
        g_set, g_gens = det_fiber(big, super_order)
    elif variant == "custom":
        g_gens = h_gens + tuple(extra_generators)
        g_set = group_closure(field, g_gens)
        for mm in g_set:
            if mat_det(field, mm) not in det_supergroup:
                raise ConstructionError("custom generators leave the determinant range")
    else:
        raise ValueError(f"unknown variant {variant!r}")

    assert group_closure(field, g_gens) == g_set
    assert h_set <= g_set
    for g in g_gens:
        gi = mat_inv(field, g)
        for hh in h_set:
            if mat_mul(field, mat_mul(field, g, hh), gi) not in h_set:
                raise ConstructionError(
                    f"H is not normal in G for variant {variant!r}"
                )

    image_set = frozenset(image)
    base_members = frozenset(
        mm for mm in g_set if all(x in image_set for x in mm)
    )
    base_det_order = len(base_members) // sl2_order(q)
    bm_base, bm_gens = det_fiber(q, base_det_order)
    assert base_members == frozenset(_embed_matrix(image, mm) for mm in bm_base)
    base_gens = tuple(_embed_matrix(image, mm) for mm in bm_gens)
    if variant == "scalars":
        # The base part of G picks up the base-field scalars among the
        # adjoined ones; regenerate and check rather than assume.
        sq_base = sqrt_supergroup & image_units
        sigma0 = _subgroup_generator(field, frozenset(sq_base))
        base_gens = h_gens + (mat_scalar(sigma0),)
        assert group_closure(field, base_gens) == base_members

    return DetGroups(
        base_order=q,
        ext_degree=r,
        field=field,
        variant=variant,
        det_values=det_values,
        det_supergroup=det_supergroup,
        sqrt_supergroup=sqrt_supergroup,
        base_image=image,
        h_set=h_set,
        g_set=g_set,
        g_generators=g_gens,
        base_members=base_members,
        base_generators=base_gens,
    )


@dataclass(frozen=True)
class QuotientVerdict:
    verdict: str
    quotient_order: int
    psl_order: int
    pgl_order: int


def quotient_type(groups: DetGroups) -> QuotientVerdict:
    """Classify G modulo its scalars by order against the two projective
    groups over the base field; "violation" would falsify the construction."""
    q = groups.base_order
    field = groups.field
    central = sum(1 for s in field.units if mat_scalar(s) in groups.g_set)
    quotient = len(groups.g_set) // central
    pgl = sl2_order(q)
    psl = pgl // (2 if q % 2 else 1)
    if psl == pgl:
        verdict = "both" if quotient == pgl else "violation"
    elif quotient == pgl:
        verdict = "PGL"
    elif quotient == psl:
        verdict = "PSL"
    else:
        verdict = "violation"
    return QuotientVerdict(verdict, quotient, psl, pgl)


@dataclass(frozen=True)
class BoundRow:
    trace: int
    determinant: int
    class_sum: int
    bound: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.class_sum, self.bound)


@dataclass(frozen=True)
class BoundReport:
    base_order: int
    ext_degree: int
    det_order: int
    super_order: int
    variant: str
    rows: tuple[BoundRow, ...]

    @property
    def max_ratio(self) -> Fraction:
        return max((row.ratio for row in self.rows), default=Fraction(0))

    @property
    def ok(self) -> bool:
        return self.max_ratio <= 1


def verify_charpoly_bound(groups: DetGroups) -> BoundReport:
    """Histogram G by characteristic polynomial and compare each total class
    size against twice the determinant index times (q^2 + q)."""
    field = groups.field
    q = groups.base_order
    index = len(groups.det_supergroup) // len(groups.det_values)
    bound = 2 * index * (q * q + q)
    hist: Counter[tuple[int, int]] = Counter()
    for mm in groups.g_set:
        hist[(mat_trace(field, mm), mat_det(field, mm))] += 1
    rows = tuple(
        BoundRow(trace=t, determinant=d, class_sum=n, bound=bound)
        for (t, d), n in sorted(hist.items())
    )
    return BoundReport(
        base_order=q,
        ext_degree=groups.ext_degree,
        det_order=len(groups.det_values),
        super_order=len(groups.det_supergroup),
        variant=groups.variant,
        rows=rows,
    )


@dataclass(frozen=True)
class CosetReport:
    ok: bool
    strict_applicable: bool
    strict_ok: bool | None
    classes_checked: int
    trivial: bool


def _coset_transversal(groups: DetGroups) -> list[int]:
    """Least representatives of the square-root cosets modulo det_values."""
    field = groups.field
    seen: set[frozenset[int]] = set()
    reps = []
    for s in sorted(groups.sqrt_supergroup):
        coset = frozenset(field.mul(s, u) for u in sorted(groups.det_values))
        if coset not in seen:
            seen.add(coset)
            reps.append(s)
    return reps


def coset_decomposition_check(groups: DetGroups) -> CosetReport:
    """Verify that every element of G is a base-field element times a scalar.

    For each g in G a witness scalar s with s*s in the allowed determinant
    range must satisfy: g/s lies in the base part of G and s itself gives a
    scalar matrix in G.  When det_values sits inside the base field a single
    fixed transversal of witnesses must work for all g simultaneously; in
    general the witness is allowed to depend on g.  For extension degree 1
    the statement is witnessed by s = 1 and only the preconditions carry
    content; otherwise the conjugacy class equality
    [g]_G = [g/s]_{base part} * s is also checked set by set.
    """
    field = groups.field
    g_set = groups.g_set
    base_members = groups.base_members
    sqrt_sorted = sorted(groups.sqrt_supergroup)
    scalar_ok = {s for s in sqrt_sorted if mat_scalar(s) in g_set}

    def witnesses(mm: Matrix) -> list[int]:
        out = []
        for s in sqrt_sorted:
            if s not in scalar_ok:
                continue
            si = field.inv(s)
            if mat_mul(field, mm, mat_scalar(si)) in base_members:
                out.append(s)
        return out

    if groups.ext_degree == 1:
        assert base_members == g_set
        assert 1 in scalar_ok
        ok = all(mm in base_members for mm in g_set)
        return CosetReport(
            ok=ok, strict_applicable=True, strict_ok=ok, classes_checked=0, trivial=True
        )

    image_units = frozenset(groups.base_image[1:])
    strict_applicable = groups.det_values <= image_units
    transversal = set(_coset_transversal(groups))

    ok = True
    strict_ok: bool | None = True if strict_applicable else None
    for mm in g_set:
        found = witnesses(mm)
        if not found:
            ok = False
        if strict_applicable and not any(s in transversal for s in found):
            strict_ok = False

    conjugators = [(g, mat_inv(field, g)) for g in groups.g_generators]
    base_conjugators = [(g, mat_inv(field, g)) for g in groups.base_generators]
    covered: set[Matrix] = set()
    classes_checked = 0
    for mm in sorted(g_set):
        if mm in covered:
            continue
        orbit = _conjugation_orbit(field, mm, conjugators)
        assert not orbit & covered
        covered |= orbit
        for s in witnesses(mm):
            si = field.inv(s)
            shifted = mat_mul(field, mm, mat_scalar(si))
            base_class = _conjugation_orbit(field, shifted, base_conjugators)
            lifted = {mat_mul(field, d, mat_scalar(s)) for d in base_class}
            if lifted != orbit:
                ok = False
        classes_checked += 1
    assert covered == g_set

    return CosetReport(
        ok=ok,
        strict_applicable=strict_applicable,
        strict_ok=strict_ok,
        classes_checked=classes_checked,
        trivial=False,
    )


@dataclass(frozen=True)
class GridResult:
    base_order: int
    ext_degree: int
    det_order: int
    super_order: int
    variant: str
    group_order: int | None
    skip_reason: str | None
    bound_report: BoundReport | None
    quotient_verdict: str | None
    coset: CosetReport | None

    @property
    def ok(self) -> bool:
        if self.skip_reason is not None:
            return True
        assert self.bound_report is not None and self.coset is not None
        return (
            self.bound_report.ok
            and self.quotient_verdict in ("PSL", "PGL", "both")
            and self.coset.ok
            and self.coset.strict_ok is not False
        )


def _is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


def enumeration_grid(max_order: int = ENUMERATION_CAP):
    """All (base order, extension degree) pairs within the budget."""
    if max_order > ENUMERATION_CAP:
        raise BudgetError(f"grid cap {max_order} exceeds {ENUMERATION_CAP}")
    for q in range(2, max_order + 1):
        if not _is_prime_power(q):
            continue
        r = 1
        while q**r <= max_order:
            yield q, r
            r += 1


def run_grid(
    max_order: int = ENUMERATION_CAP,
    variants: tuple[str, ...] = ("scalars", "full"),
    progress=None,
) -> tuple[GridResult, ...]:
    """Exercise every subgroup pair on the grid through all three checks."""
    results = []
    for q, r in enumeration_grid(max_order):
        m = q**r - 1
        for super_order in divisors(m):
            for det_order in divisors(super_order):
                for variant in variants:
                    try:
                        groups = build_subgroups(q, r, det_order, super_order, variant)
                    except ConstructionError as exc:
                        results.append(
                            GridResult(
                                base_order=q,
                                ext_degree=r,
                                det_order=det_order,
                                super_order=super_order,
                                variant=variant,
                                group_order=None,
                                skip_reason=str(exc),
                                bound_report=None,
                                quotient_verdict=None,
                                coset=None,
                            )
                        )
                        continue
                    result = GridResult(
                        base_order=q,
                        ext_degree=r,
                        det_order=det_order,
                        super_order=super_order,
                        variant=variant,
                        group_order=len(groups.g_set),
                        skip_reason=None,
                        bound_report=verify_charpoly_bound(groups),
                        quotient_verdict=quotient_type(groups).verdict,
                        coset=coset_decomposition_check(groups),
                    )
                    results.append(result)
                    if progress is not None:
                        progress(result)
    return tuple(results)
