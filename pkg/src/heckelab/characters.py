"""Dirichlet characters, kept exact via exponent vectors.

A character mod M is stored by its exponents on a fixed generating set of
(Z/M)^*: the classical cyclic generators at odd prime powers and the {-1, 5}
presentation at powers of two. Values are exponents of an abstract root of
unity of order `order`, so no floating point ever appears; quadratic
characters additionally expose their values as +-1 integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, lcm

from .arith import divisors, euler_phi, factorize, kronecker


def _primitive_root(p: int, e: int) -> int:
    """Smallest primitive root mod p^e for odd prime p."""
    targets = [(p - 1) // ell for ell, _ in factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, t, p) != 1 for t in targets):
            break
        g += 1
    if e == 1:
        return g
    # g generates mod p^e for all e iff g^(p-1) != 1 mod p^2
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True)
class _Component:
    """One CRT factor of (Z/M)^*: cyclic of order `order`, local dlog table."""

    prime_power: int
    order: int
    dlog: dict[int, int] = field(compare=False, repr=False)


def _odd_component(pe: int, order: int, gen: int) -> _Component:
    table, x = {}, 1
    for i in range(order):
        table[x] = i
        x = x * gen % pe
    return _Component(pe, order, table)


@dataclass(frozen=True)
class UnitGroup:
    """(Z/M)^* as a product of cyclic groups with fixed generators."""

    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    _components: tuple[_Component, ...] = field(compare=False, repr=False)

    def decompose(self, a: int) -> tuple[int, ...]:
        """Exponent vector of a on the generators; a must be a unit."""
        m = self.modulus
        a %= m
        if gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit mod {m}")
        out = []
        for comp in self._components:
            out.append(comp.dlog[a % comp.prime_power])
        return tuple(out)

    @property
    def exponent(self) -> int:
        """lcm of the cyclic orders (1 for the trivial group)."""
        out = 1
        for d in self.orders:
            out = lcm(out, d)
        return out


@lru_cache(maxsize=None)
def unit_group(modulus: int) -> UnitGroup:
    if modulus < 1:
        raise ValueError("modulus must be positive")
    gens: list[int] = []
    orders: list[int] = []
    comps: list[_Component] = []

    def crt_embed(local: int, pe: int) -> int:
        """Element that is `local` mod pe and 1 mod modulus/pe."""
        rest = modulus // pe
        if rest == 1:
            return local % pe
        # x = local + pe * t with x = 1 mod rest
        t = (1 - local) * pow(pe, -1, rest) % rest
        return (local + pe * t) % modulus

    for p, e in factorize(modulus):
        pe = p ** e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                gens.append(crt_embed(3, 4))
                orders.append(2)
                comps.append(_odd_component(4, 2, 3))
                continue
            # 2^e with e >= 3: <-1> x <5>
            gens.append(crt_embed(pe - 1, pe))
            orders.append(2)
            half = 2 ** (e - 2)
            table, x = {}, 1
            five = {}
            for i in range(half):
                five[x] = i
                x = x * 5 % pe
            for y, i in five.items():
                table[y] = (0, i)
                table[pe - y] = (1, i)
            comps.append(_Component(pe, 2, {y: s for y, (s, _) in table.items()}))
            gens.append(crt_embed(5, pe))
            orders.append(half)
            comps.append(_Component(pe, half, {y: k for y, (_, k) in table.items()}))
        else:
            order = pe // p * (p - 1)
            g = _primitive_root(p, e)
            gens.append(crt_embed(g, pe))
            orders.append(order)
            comps.append(_odd_component(pe, order, g % pe))
    return UnitGroup(modulus, tuple(gens), tuple(orders), tuple(comps))


@dataclass(frozen=True)
class DirichletCharacter:
    """Character of (Z/modulus)^*, given by exponents on the fixed generators."""

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        grp = unit_group(self.modulus)
        if len(self.exponents) != len(grp.orders):
            raise ValueError("exponent vector length mismatch")
        normalized = tuple(e % d for e, d in zip(self.exponents, grp.orders))
        object.__setattr__(self, "exponents", normalized)

    # -- construction ------------------------------------------------------

    @classmethod
    def trivial(cls, modulus: int) -> "DirichletCharacter":
        return cls(modulus, tuple([0] * len(unit_group(modulus).orders)))

    @classmethod
    def from_kronecker(cls, disc: int) -> "DirichletCharacter":
        """Quadratic character a -> kronecker(disc, a) mod |disc|.

        `disc` must be a fundamental discriminant (or 1 for the trivial one).
        """
        if not is_fundamental_discriminant(disc):
            raise ValueError(f"{disc} is not a fundamental discriminant")
        m = abs(disc)
        grp = unit_group(m)
        exps = []
        for g, d in zip(grp.generators, grp.orders):
            v = kronecker(disc, g)
            if v == 1:
                exps.append(0)
            else:
                assert v == -1 and d % 2 == 0
                exps.append(d // 2)
        return cls(m, tuple(exps))

    @classmethod
    def from_label(cls, label: str) -> "DirichletCharacter":
        """Parse 'M.n.[e1,e2,...]' (the format emitted by .label)."""
        parts = label.split(".")
        if len(parts) != 3:
            raise ValueError(f"bad character label {label!r}")
        m = int(parts[0])
        order = int(parts[1])
        body = parts[2].strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        exps = tuple(int(x) for x in body.split(",")) if body else ()
        chi = cls(m, exps)
        if chi.order != order:
            raise ValueError(f"label order {order} does not match {chi.order}")
        return chi

    # -- basic data --------------------------------------------------------

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @property
    def order(self) -> int:
        out = 1
        for e, d in zip(self.exponents, self.group.orders):
            out = lcm(out, d // gcd(d, e))
        return out

    @property
    def label(self) -> str:
        body = ",".join(map(str, self.exponents))
        return f"{self.modulus}.{self.order}.[{body}]"

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def is_quadratic(self) -> bool:
        return self.order <= 2

    # -- evaluation --------------------------------------------------------

    def value_exponent(self, a: int) -> int | None:
        """t with chi(a) = zeta_order^t, or None when gcd(a, modulus) > 1."""
        grp = self.group
        a %= self.modulus
        if self.modulus > 1 and gcd(a, self.modulus) != 1:
            return None
        ks = grp.decompose(a) if grp.orders else ()
        big = grp.exponent
        total = 0
        for e, k, d in zip(self.exponents, ks, grp.orders):
            total = (total + e * k * (big // d)) % big
        m = self.order
        assert total * m % big == 0
        return total * m // big % m

    def sign(self, a: int) -> int:
        """Value of a quadratic character as +1, -1, or 0."""
        assert self.is_quadratic()
        t = self.value_exponent(a)
        if t is None:
            return 0
        return 1 if t == 0 else -1

    # -- structure ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        for d in divisors(self.modulus):
            if all(
                self.value_exponent(a) == 0
                for a in range(1, self.modulus, d)
                if gcd(a, self.modulus) == 1
            ):
                return d
        return self.modulus

    def reduce_to_conductor(self) -> "DirichletCharacter":
        """The primitive character inducing this one."""
        cond = self.conductor
        if cond == self.modulus:
            return self
        grp = unit_group(cond)
        m = self.order
        exps = []
        for g, d in zip(grp.generators, grp.orders):
            lifted = _coprime_lift(g, cond, self.modulus)
            t = self.value_exponent(lifted)
            assert t is not None and t * d % m == 0
            exps.append(t * d // m % d)
        return DirichletCharacter(cond, tuple(exps))

    def is_equivalent(self, other: "DirichletCharacter") -> bool:
        """Equal after reduction to conductors (same primitive character)."""
        a, b = self.reduce_to_conductor(), other.reduce_to_conductor()
        return (a.modulus, a.exponents) == (b.modulus, b.exponents)

    def extend_to(self, modulus: int) -> "DirichletCharacter":
        """The character mod `modulus` with the same values on units."""
        if modulus % self.modulus:
            raise ValueError("can only extend to a multiple of the modulus")
        if modulus == self.modulus:
            return self
        grp = unit_group(modulus)
        m = self.order
        exps = []
        for g, d in zip(grp.generators, grp.orders):
            t = self.value_exponent(g)
            assert t is not None and t * d % m == 0
            exps.append(t * d // m % d)
        return DirichletCharacter(modulus, tuple(exps))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        m = lcm(self.modulus, other.modulus)
        a, b = self.extend_to(m), other.extend_to(m)
        return DirichletCharacter(
            m, tuple(x + y for x, y in zip(a.exponents, b.exponents))
        )

    def __str__(self) -> str:
        return f"chi[{self.label}]"


def _coprime_lift(a: int, small: int, big: int) -> int:
    """Residue mod big, congruent to a mod small, coprime to big."""
    assert big % small == 0 and gcd(a, small) == 1
    for t in range(big // small):
        cand = a + t * small
        if gcd(cand, big) == 1:
            return cand % big
    raise AssertionError("no coprime lift found")


def is_fundamental_discriminant(d: int) -> bool:
    """1 counts as fundamental (the trivial character); 0 does not."""
    if d == 0:
        return False
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n)))


def quadratic_characters(modulus: int) -> list[DirichletCharacter]:
    """All characters mod `modulus` of order dividing 2, trivial included.

    Ordered lexicographically by exponent vector; the count is 2^r with r the
    number of even-order cyclic factors.
    """
    grp = unit_group(modulus)
    choices = [(0, d // 2) if d % 2 == 0 else (0,) for d in grp.orders]
    return [DirichletCharacter(modulus, exps) for exps in product(*choices)]


def condition_density(
    equal_one: list[DirichletCharacter],
    not_equal_one: list[DirichletCharacter],
) -> Fraction:
    """Density of primes p with chi(p)=1 for the first set and chi(p)!=1 for the second.

    By Dirichlet this is (# allowed unit residues)/phi(L) with L the lcm of
    the moduli; contradictory conditions give 0 exactly.
    """
    big = 1
    for chi in list(equal_one) + list(not_equal_one):
        big = lcm(big, chi.modulus)
    count = 0
    for a in range(1, big + 1):
        if gcd(a, big) != 1:
            continue
        if any(chi.value_exponent(a) != 0 for chi in equal_one):
            continue
        if any(chi.value_exponent(a) == 0 for chi in not_equal_one):
            continue
        count += 1
    return Fraction(count, euler_phi(big))


def joint_kernel_degree(chars: list[DirichletCharacter]) -> int:
    """phi(L) divided by the size of the common kernel of the characters."""
    big = 1
    for chi in chars:
        big = lcm(big, chi.modulus)
    kernel = 0
    for a in range(1, big + 1):
        if gcd(a, big) != 1:
            continue
        if all(chi.value_exponent(a) == 0 for chi in chars):
            kernel += 1
    assert euler_phi(big) % kernel == 0
    return euler_phi(big) // kernel
