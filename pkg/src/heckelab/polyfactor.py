"""Factorization in Z[X].

Pipeline: content/sign normalization, Yun squarefree decomposition, then for
each squarefree part factorization mod a small prime (distinct-degree plus
Cantor-Zassenhaus splitting), multifactor Hensel lifting to a Mignotte-style
coefficient bound, and recombination of modular factors by subsets of
ascending cardinality with exact trial division. Fully deterministic: the
Cantor-Zassenhaus randomness is seeded from the polynomial itself.

Finite field polynomials below are plain lists of ints, ascending, reduced
mod p with no trailing zeros.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt

from .arith import divisors, invmod, is_square, next_prime, symmetric_lift
from .polynomials import IntPoly

# -- polynomials over GF(p) ------------------------------------------------


def _gf_norm(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _gf_deg(f: list[int]) -> int:
    return len(f) - 1


def _gf_sub(f: list[int], g: list[int], p: int) -> list[int]:
    out = list(f) + [0] * max(len(g) - len(f), 0)
    for i, c in enumerate(g):
        out[i] -= c
    return _gf_norm(out, p)


def _gf_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _gf_norm(out, p)


def _gf_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("gf division by zero")
    rem = [c % p for c in f]
    d = _gf_deg(g)
    lcinv = pow(g[-1], p - 2, p)
    quot = [0] * max(len(rem) - d, 0)
    for i in range(len(rem) - 1, d - 1, -1):
        q = rem[i] * lcinv % p
        if q:
            quot[i - d] = q
            for j, c in enumerate(g):
                rem[i - d + j] = (rem[i - d + j] - q * c) % p
    return _gf_norm(quot, p), _gf_norm(rem, p)


def _gf_rem(f: list[int], g: list[int], p: int) -> list[int]:
    return _gf_divmod(f, g, p)[1]


def _gf_monic(f: list[int], p: int) -> list[int]:
    if not f:
        return []
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def _gf_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    while g:
        f, g = g, _gf_rem(f, g, p)
    return _gf_monic(f, p)


def _gf_gcdex(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    """s, t with s*f + t*g = 1, deg s < deg g and deg t < deg f; f, g coprime."""
    s0, s1 = [1], []
    r0, r1 = f, g
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
    if _gf_deg(r0) != 0:
        raise ValueError("gf_gcdex requires coprime inputs")
    s = _gf_mul(s0, [pow(r0[0], p - 2, p)], p)
    s = _gf_rem(s, g, p)
    # t = (1 - s*f) / g exactly
    num = _gf_sub([1], _gf_mul(s, f, p), p)
    t, rem = _gf_divmod(num, g, p)
    assert not rem
    return s, t


def _gf_pow_mod(f: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    base = _gf_rem(f, mod, p)
    while e:
        if e & 1:
            out = _gf_rem(_gf_mul(out, base, p), mod, p)
        base = _gf_rem(_gf_mul(base, base, p), mod, p)
        e >>= 1
    return out


def _gf_derivative(f: list[int], p: int) -> list[int]:
    return _gf_norm([i * c for i, c in enumerate(f)][1:], p)


def _gf_is_squarefree(f: list[int], p: int) -> bool:
    if _gf_deg(f) < 1:
        return True
    return _gf_deg(_gf_gcd(f, _gf_derivative(f, p), p)) == 0


def gf_is_irreducible(coeffs: list[int], p: int) -> bool:
    """Rabin irreducibility test over F_p; coeffs ascending, lc a unit mod p.

    A monic integer polynomial that is irreducible mod any prime is
    irreducible over Q, which is what makes this worth exposing.
    """
    f = _gf_monic(_gf_norm(list(coeffs), p), p)
    d = _gf_deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _gf_sub(_gf_pow_mod(x, p ** d, f, p), x, p):
        return False
    for ell in {q for q, _ in _small_prime_factorization(d)}:
        h = _gf_sub(_gf_pow_mod(x, p ** (d // ell), f, p), x, p)
        if _gf_deg(_gf_gcd(h, f, p)) != 0:
            return False
    return True


def _small_prime_factorization(n: int) -> list[tuple[int, int]]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += 1
    if n > 1:
        out.append((n, 1))
    return out


def _gf_distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Split monic squarefree f into (product of degree-d irreducibles, d)."""
    out = []
    v = f
    h = [0, 1]
    d = 0
    while _gf_deg(v) >= 2 * (d + 1):
        d += 1
        h = _gf_pow_mod(h, p, v, p)
        g = _gf_gcd(_gf_sub(h, [0, 1], p), v, p)
        if _gf_deg(g) > 0:
            out.append((g, d))
            v, rem = _gf_divmod(v, g, p)
            assert not rem
            h = _gf_rem(h, v, p)
    if _gf_deg(v) > 0:
        out.append((v, _gf_deg(v)))
    return out


def _gf_equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d."""
    n = _gf_deg(f)
    if n == d:
        return [f]
    half = (p ** d - 1) // 2
    while True:
        r = [rng.randrange(p) for _ in range(2 * d)] + [1]
        g = _gf_gcd(r, f, p)
        if 0 < _gf_deg(g) < n:
            break
        t = _gf_pow_mod(r, half, f, p)
        g = _gf_gcd(_gf_sub(t, [1], p), f, p)
        if 0 < _gf_deg(g) < n:
            break
    other, rem = _gf_divmod(f, g, p)
    assert not rem
    return _gf_equal_degree(g, d, p, rng) + _gf_equal_degree(other, d, p, rng)


def _gf_factor_squarefree_monic(f: list[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a monic squarefree f, sorted."""
    rng = random.Random(hash((p, tuple(f))))
    out = []
    for g, d in _gf_distinct_degree(f, p):
        out.extend(_gf_equal_degree(g, d, p, rng))
    out.sort(key=lambda h: (len(h), tuple(h)))
    return out


# -- Hensel lifting --------------------------------------------------------


def _z_trunc(f: list[int], m: int) -> list[int]:
    out = [symmetric_lift(c % m, m) for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def _z_mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _z_add(f: list[int], g: list[int]) -> list[int]:
    out = list(f) + [0] * max(len(g) - len(f), 0)
    for i, c in enumerate(g):
        out[i] += c
    return out


def _z_sub(f: list[int], g: list[int]) -> list[int]:
    out = list(f) + [0] * max(len(g) - len(f), 0)
    for i, c in enumerate(g):
        out[i] -= c
    return out


def _z_divmod_monic(f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
    assert g and g[-1] == 1
    rem = list(f)
    d = len(g) - 1
    quot = [0] * max(len(rem) - d, 0)
    for i in range(len(rem) - 1, d - 1, -1):
        q = rem[i]
        if q:
            quot[i - d] = q
            for j, c in enumerate(g):
                rem[i - d + j] -= q * c
    while rem and rem[-1] == 0:
        rem.pop()
    while quot and quot[-1] == 0:
        quot.pop()
    return quot, rem


def _hensel_step(m: int, f, g, h, s, t):
    """Lift f = g*h, s*g + t*h = 1 from mod m to mod m**2 (h, H monic)."""
    mm = m * m
    e = _z_trunc(_z_sub(f, _z_mul(g, h)), mm)
    q, r = _z_divmod_monic(_z_mul(s, e), h)
    q, r = _z_trunc(q, mm), _z_trunc(r, mm)
    big_g = _z_trunc(_z_add(g, _z_add(_z_mul(t, e), _z_mul(q, g))), mm)
    big_h = _z_trunc(_z_add(h, r), mm)
    b = _z_trunc(_z_sub(_z_add(_z_mul(s, big_g), _z_mul(t, big_h)), [1]), mm)
    c, d = _z_divmod_monic(_z_mul(s, b), big_h)
    c, d = _z_trunc(c, mm), _z_trunc(d, mm)
    big_s = _z_trunc(_z_sub(s, d), mm)
    big_t = _z_trunc(_z_sub(t, _z_add(_z_mul(t, b), _z_mul(c, big_g))), mm)
    return big_g, big_h, big_s, big_t


def _hensel_lift(p: int, f: list[int], factors: list[list[int]], l: int) -> list[list[int]]:
    """Lift monic pairwise-coprime factors of f mod p to factors mod p**l.

    Returns monic polynomials F_i with f = lc(f) * prod F_i mod p**l and
    F_i = factors[i] mod p.
    """
    r = len(factors)
    lc = f[-1]
    pl = p ** l
    if r == 1:
        return [_z_trunc([c * invmod(lc, pl) for c in f], pl)]
    k = r // 2
    g = [lc % p]
    for fi in factors[:k]:
        g = _gf_mul(g, fi, p)
    h = [1]
    for fi in factors[k:]:
        h = _gf_mul(h, fi, p)
    s, t = _gf_gcdex(g, h, p)
    g, h = _z_trunc(g, p), _z_trunc(h, p)
    s, t = _z_trunc(s, p), _z_trunc(t, p)
    m = p
    while m < pl:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, factors[:k], l) + _hensel_lift(p, h, factors[k:], l)


# -- Zassenhaus ------------------------------------------------------------


def _factor_bound(f: list[int]) -> int:
    """Coefficient bound for factors of f (Mignotte style), doubled range."""
    n = len(f) - 1
    a = max(abs(c) for c in f)
    return (isqrt(n) + 1) * 2 ** n * a * abs(f[-1])


def _zassenhaus(coeffs: list[int]) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree poly with positive lc."""
    n = len(coeffs) - 1
    assert n >= 1
    if n == 1:
        return [coeffs]
    lc = coeffs[-1]
    bound = _factor_bound(coeffs)
    p = 3
    while lc % p == 0 or not _gf_is_squarefree(_gf_norm(coeffs, p), p):
        p = next_prime(p)
    modular = _gf_factor_squarefree_monic(_gf_monic(_gf_norm(coeffs, p), p), p)
    if len(modular) == 1:
        return [coeffs]
    l = 1
    pl = p
    while pl < 2 * bound + 1:
        pl *= p
        l += 1
    lifted = _hensel_lift(p, coeffs, modular, l)

    remaining = list(range(len(lifted)))
    factors: list[list[int]] = []
    cur = coeffs
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in combinations(remaining, size):
            b = cur[-1]
            tc = b
            for i in subset:
                tc = tc * lifted[i][0] % pl
            tc = symmetric_lift(tc, pl)
            if tc and (b * cur[0]) % tc != 0:
                continue
            cand = [b]
            for i in subset:
                cand = _z_mul(cand, lifted[i])
            cand = _z_trunc(cand, pl)
            g = IntPoly.make(cand).primitive_part()
            try:
                quot, rem = IntPoly.make(cur).divmod_exact(g)
            except ValueError:
                continue
            if not rem.is_zero():
                continue
            factors.append(list(g.coeffs))
            cur = list(quot.primitive_part().coeffs)
            remaining = [i for i in remaining if i not in subset]
            found = True
            break
        if not found:
            size += 1
    factors.append(cur)
    return factors


# -- squarefree decomposition and the public API ---------------------------


def _yun_squarefree(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun decomposition of a primitive poly with positive lc: f = prod a_i^i."""
    assert f.degree >= 1 and f.content() == 1
    df = f.derivative()
    g = f.gcd(df)
    if g.degree == 0:
        return [(f, 1)]
    w, rem = f.divmod_exact(g)
    assert rem.is_zero()
    y, rem = df.divmod_exact(g)
    assert rem.is_zero()
    out = []
    i = 1
    while True:
        z = y - w.derivative()
        if z.is_zero():
            out.append((w, i))
            break
        gi = w.gcd(z)
        if gi.degree >= 1:
            out.append((gi, i))
        w, rem = w.divmod_exact(gi)
        assert rem.is_zero()
        y, rem = z.divmod_exact(gi)
        assert rem.is_zero()
        i += 1
    return out


@dataclass(frozen=True)
class Factorization:
    """content * prod(poly^multiplicity); factors sorted by degree then coeffs."""

    content: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        out = IntPoly.constant(self.content)
        for poly, mult in self.factors:
            out = out * poly ** mult
        return out

    def irreducible_degrees(self) -> tuple[int, ...]:
        """Degrees of the irreducible factors, repeated by multiplicity."""
        return tuple(
            poly.degree for poly, mult in self.factors for _ in range(mult)
        )

    def __str__(self) -> str:
        parts = [str(self.content)] if self.content != 1 or not self.factors else []
        for poly, mult in self.factors:
            parts.append(f"({poly})" + (f"^{mult}" if mult > 1 else ""))
        return " * ".join(parts)


def factor(f: IntPoly) -> Factorization:
    """Full factorization over Z; raises on the zero polynomial."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    content = f.content()
    prim = f.primitive_part()
    if prim.degree == 0:
        return Factorization(content, ())
    found: list[tuple[IntPoly, int]] = []
    for part, mult in _yun_squarefree(prim):
        for coeffs in _zassenhaus(list(part.coeffs)):
            found.append((IntPoly.make(coeffs), mult))
    found.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return Factorization(content, tuple(found))


_ROOT_SEARCH_LIMIT = 10 ** 10


def is_irreducible(f: IntPoly) -> bool:
    """Irreducibility in Z[X]: primitive and irreducible over Q, degree >= 1."""
    if f.degree < 1:
        return False
    if abs(f.content()) != 1:
        return False
    g = f if f.lc > 0 else -f
    if g.degree == 1:
        return True
    if g[0] == 0:
        return False
    if g.degree == 2:
        disc = g[1] * g[1] - 4 * g[2] * g[0]
        return not (disc >= 0 and is_square(disc))
    if g.degree == 3 and abs(g[0]) <= _ROOT_SEARCH_LIMIT and abs(g[3]) <= 10 ** 6:
        # a cubic is reducible over Q exactly when it has a rational root
        for num in divisors(abs(g[0])):
            for den in divisors(abs(g[3])):
                r = Fraction(num, den)
                if g(r) == 0 or g(-r) == 0:
                    return False
        return True
    if g.gcd(g.derivative()).degree > 0:
        return False
    return len(_zassenhaus(list(g.coeffs))) == 1
