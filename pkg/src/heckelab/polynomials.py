"""Dense integer polynomials with ascending coefficients.

A polynomial is a tuple of ints (c0, c1, ..., cn) with cn != 0; the zero
polynomial is the empty tuple. Everything is exact; division helpers raise
rather than silently truncate when a quotient does not exist in Z[X].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficient; use IntPoly.make")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise TypeError("integer coefficients required")

    @classmethod
    def make(cls, coeffs) -> "IntPoly":
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls.make([c])

    @classmethod
    def x_power(cls, n: int) -> "IntPoly":
        return cls((0,) * n + (1,))

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly.make(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def scale(self, c: int) -> "IntPoly":
        if c == 0:
            return IntPoly.zero()
        return IntPoly(tuple(c * x for x in self.coeffs))

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        out = IntPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod_exact(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Quotient and remainder when division stays in Z[X].

        Raises ValueError the moment a leading-coefficient division fails.
        """
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.lc
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            q, r = divmod(rem[i], lc)
            if r:
                raise ValueError("division not exact over Z")
            quot[i - d] = q
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= q * c
        return IntPoly.make(quot), IntPoly.make(rem)

    def divides(self, other: "IntPoly") -> bool:
        try:
            _, rem = other.divmod_exact(self)
        except ValueError:
            return False
        return rem.is_zero()

    def pseudo_rem(self, other: "IntPoly") -> "IntPoly":
        """prem(self, other): remainder of lc(other)^(deg diff + 1) * self."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        n, d = self.degree, other.degree
        if n < d:
            return self
        return self.scale(other.lc ** (n - d + 1)).divmod_exact(other)[1]

    # -- content and gcd ---------------------------------------------------

    def content(self) -> int:
        """gcd of the coefficients, with the sign of the leading one."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return -g if self.lc < 0 else g

    def primitive_part(self) -> "IntPoly":
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly(tuple(x // c for x in self.coeffs))

    def gcd(self, other: "IntPoly") -> "IntPoly":
        """Primitive-PRS gcd, normalized positive-leading and primitive up to content.

        Returns gcd in Z[X] including the content part.
        """
        if self.is_zero():
            return other if other.lc >= 0 else -other
        if other.is_zero():
            return self if self.lc >= 0 else -self
        cont = gcd(abs(self.content()), abs(other.content()))
        f, g = self.primitive_part(), other.primitive_part()
        if f.degree < g.degree:
            f, g = g, f
        while g:
            r = f.pseudo_rem(g).primitive_part()
            f, g = g, r
        f = f if f.lc >= 0 else -f
        return f.scale(cont)

    def derivative(self) -> "IntPoly":
        return IntPoly.make([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- evaluation and transforms ----------------------------------------

    def __call__(self, x):
        out = x * 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def compose_neg(self) -> "IntPoly":
        """f(-X)."""
        return IntPoly(tuple(-c if i % 2 else c for i, c in enumerate(self.coeffs)))

    def eval_fraction(self, x: Fraction) -> Fraction:
        return self(Fraction(x))

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({self})"


def from_fraction_coeffs(coeffs: list[Fraction]) -> IntPoly:
    """Convert exact rational coefficients known to be integral."""
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator != 1:
            raise ValueError(f"non-integral coefficient {c}")
        out.append(c.numerator)
    return IntPoly.make(out)


def rescaled_charpoly(coeffs: list[Fraction], scale: int) -> IntPoly:
    """Given the monic charpoly of s*A (ascending rational coeffs) return that of A.

    If P is the charpoly of s*A then the charpoly of A is s^(-n) * P(s*X);
    callers use this to get integral charpolys of rational operators whose
    s-fold multiple is integral.
    """
    n = len(coeffs) - 1
    s = Fraction(scale)
    out = [c * s ** i / s ** n for i, c in enumerate(coeffs)]
    return from_fraction_coeffs(out)
