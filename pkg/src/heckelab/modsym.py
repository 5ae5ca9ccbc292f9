"""Weight-k modular symbols for Gamma0(N) in the plus quotient, exact throughout.

A symbol is a pair (i, x): a monomial X^i Y^(k-2-i) against a point x of
P^1(Z/N). The space is presented by the classical two-term, three-term, and
star relations: the two-term and star relations are monomial maps and are
folded away by sign-tracked orbit identification, the three-term relations
then go through a sparse exact RREF. Every symbol gets an expansion over the
resulting basis, so operators reduce to table lookups plus row sums.

Hecke operators come from fixed determinant-p matrix families acting on the
right; the exact path runs over Fractions, and a mod-q path (word-size
primes, vectorized over the whole family with numpy) feeds CRT
reconstruction of characteristic polynomials. Reduction mod q is a ring map,
so mod-q results are exact images of the rational ones whenever q avoids the
presentation denominators; there are no unlucky primes to reject.

Cuspidal and new subspaces are cut out exactly: the boundary map to cusp
classes, and degeneracy maps to each level N/ell (the identity one by direct
point projection, the scaling one by rewriting paths through continued
fractions). Dimensions are asserted against the closed formulas on every
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm

import numpy as np

from .arith import is_prime, prime_divisors, xgcd
from .dimensions import dim_cusp_forms, dim_new_cusp_forms
from .heilbronn import cremona_family, family_arrays
from .linalg import QMat
from .p1 import lift_to_sl2, p1_table

SIGMA = (0, -1, 1, 0)
TAU = (0, -1, 1, -1)
TAU_SQ = (-1, 1, -1, 0)

# mod-q engine primes stay below 2^25 so that row sums of n_sym terms of
# size q^2 fit in int64 for any space with at most 2^11 symbols
_ENGINE_PRIME_CEILING = 1 << 25
_MAX_SYMBOLS = 1 << 11


def engine_primes(avoid: int):
    """Descending word-size primes not dividing `avoid`, for CRT work."""
    q = _ENGINE_PRIME_CEILING - 1
    while q > 3:
        if is_prime(q) and avoid % q != 0:
            yield q
        q -= 2
    raise RuntimeError("engine prime pool exhausted")


def _binomial_expand(p: int, q: int, e: int) -> list[int]:
    """Coefficients of (p*X + q*Y)^e by ascending X-degree."""
    return [comb(e, a) * p ** a * q ** (e - a) for a in range(e + 1)]


def transport_poly(coeffs, mat) -> list:
    """Right polynomial action: sum_t c_t X^t Y^(w-t) evaluated at (aX+bY, cX+dY).

    `coeffs` has fixed length w+1 (ascending X-degree); the result does too.
    """
    a, b, c, d = mat
    w = len(coeffs) - 1
    out = [0] * (w + 1)
    for t, coef in enumerate(coeffs):
        if not coef:
            continue
        first = _binomial_expand(a, b, t)
        second = _binomial_expand(c, d, w - t)
        for u, x in enumerate(first):
            if x:
                for s, y in enumerate(second):
                    out[u + s] += coef * x * y
    return out


@dataclass(frozen=True)
class BasisSymbol:
    poly_degree: int
    point: tuple[int, int]


class ModularSymbolSpace:
    """The plus quotient of weight-k modular symbols for Gamma0(level)."""

    def __init__(self, level: int, weight: int):
        if level < 1:
            raise ValueError("level must be >= 1")
        if weight < 2 or weight % 2:
            raise ValueError("weight must be an even integer >= 2")
        self.level = level
        self.weight = weight
        self.p1 = p1_table(level)
        self.n_points = len(self.p1)
        self.n_symbols = (weight - 1) * self.n_points
        assert self.n_symbols <= _MAX_SYMBOLS, "space too large for the mod engine"
        self._hecke_exact: dict[int, QMat] = {}
        self._r_mod: dict[int, np.ndarray] = {}
        self._build_presentation()
        self._build_cuspidal()
        self._build_new()

    # -- presentation ------------------------------------------------------

    def _sym(self, t: int, point_index: int) -> int:
        return t * self.n_points + point_index

    def _act_point(self, u: int, v: int, mat) -> int:
        a, b, c, d = mat
        n = self.level
        return self.p1.index((a * u + c * v) % n, (b * u + d * v) % n)

    def _build_presentation(self) -> None:
        n, k = self.level, self.weight
        npts, nsym = self.n_points, self.n_symbols
        parent = list(range(nsym))
        sig = [1] * nsym
        dead = [False] * nsym

        def find_signed(s: int) -> tuple[int, int]:
            g = 1
            while parent[s] != s:
                g *= sig[s]
                s = parent[s]
            return s, g

        def union(s1: int, s2: int, rel: int) -> None:
            # imposes x_{s1} = rel * x_{s2}
            r1, g1 = find_signed(s1)
            r2, g2 = find_signed(s2)
            if r1 == r2:
                if g1 != rel * g2:
                    dead[r1] = True
                return
            parent[r1] = r2
            sig[r1] = rel * g2 * g1
            if dead[r1]:
                dead[r2] = True

        for i in range(k - 1):
            two_sign = (-1) ** i
            for j, (u, v) in enumerate(self.p1.reps):
                s = self._sym(i, j)
                # x + x|sigma = 0, with x|sigma a single signed monomial symbol
                j2 = self._act_point(u, v, SIGMA)
                assert j2 >= 0
                union(s, self._sym(k - 2 - i, j2), -two_sign)
                # x - x|J = 0 for the plus quotient; J sends (i,(u:v)) to
                # (-1)^i (i,(-u:v))
                j3 = self.p1.index(-u % n if n > 1 else 0, v)
                assert j3 >= 0
                union(s, self._sym(i, j3), two_sign)

        all_roots = sorted({find_signed(s)[0] for s in range(nsym)})
        live_roots = [r for r in all_roots if not dead[r]]
        col = {r: idx for idx, r in enumerate(live_roots)}

        def rep_coords(s: int) -> tuple[int, int] | None:
            r, g = find_signed(s)
            if dead[r]:
                return None
            return col[r], g

        rows = []
        for i in range(k - 1):
            mono = [0] * (k - 1)
            mono[i] = 1
            tau_poly = transport_poly(mono, TAU)
            tau2_poly = transport_poly(mono, TAU_SQ)
            for j, (u, v) in enumerate(self.p1.reps):
                row: dict[int, Fraction] = {}

                def add(t: int, pt: int, coef: int, row=row) -> None:
                    rc = rep_coords(self._sym(t, pt))
                    if rc is None:
                        return
                    cidx, g = rc
                    val = row.get(cidx, 0) + Fraction(coef * g)
                    if val:
                        row[cidx] = val
                    else:
                        row.pop(cidx, None)

                add(i, j, 1)
                jt = self._act_point(u, v, TAU)
                jt2 = self._act_point(u, v, TAU_SQ)
                assert jt >= 0 and jt2 >= 0
                for t, coef in enumerate(tau_poly):
                    if coef:
                        add(t, jt, coef)
                for t, coef in enumerate(tau2_poly):
                    if coef:
                        add(t, jt2, coef)
                if row:
                    rows.append(row)

        relmat = QMat.from_sparse_rows(rows, len(live_roots))
        rref, pivots = relmat.rref()
        pivot_set = set(pivots)
        free_cols = [c for c in range(len(live_roots)) if c not in pivot_set]
        self.dimension = len(free_cols)
        free_pos = {c: idx for idx, c in enumerate(free_cols)}

        # expansion of every rep column over the free columns
        rep_expansion: list[dict[int, Fraction]] = [None] * len(live_roots)
        for c in free_cols:
            rep_expansion[c] = {free_pos[c]: Fraction(1)}
        rref_rows = rref.sparse_rows()
        for ridx, c in enumerate(pivots):
            rep_expansion[c] = {
                free_pos[f]: -x for f, x in rref_rows[ridx].items() if f != c
            }

        self.symbol_rows: list[dict[int, Fraction]] = []
        for s in range(nsym):
            rc = rep_coords(s)
            if rc is None:
                self.symbol_rows.append({})
                continue
            cidx, g = rc
            self.symbol_rows.append(
                {b: g * x for b, x in rep_expansion[cidx].items()}
            )

        root_of_col = {idx: r for r, idx in col.items()}
        self.basis_symbols: list[BasisSymbol] = []
        for c in free_cols:
            r = root_of_col[c]
            i, j = divmod(r, npts)
            self.basis_symbols.append(BasisSymbol(i, self.p1.reps[j]))

        self.denominator = 1
        for row in self.symbol_rows:
            for x in row.values():
                self.denominator = lcm(self.denominator, x.denominator)

    # -- cusps and the cuspidal subspace -----------------------------------

    def _cusps_equivalent(self, c1: tuple[int, int], c2: tuple[int, int]) -> bool:
        """Gamma0(level) equivalence of cusps, extended by the star involution."""
        n = self.level
        (u1, v1) = c1

        def gamma0_eq(a: tuple[int, int], b: tuple[int, int]) -> bool:
            (x1, y1), (x2, y2) = a, b
            g = gcd(y1 * y2, n)
            s1 = xgcd(x1, y1)[1]
            s2 = xgcd(x2, y2)[1]
            return (s1 * y2 - s2 * y1) % g == 0 if g else s1 * y2 == s2 * y1

        return gamma0_eq(c1, c2) or gamma0_eq((-u1, v1), c2)

    def _cusp_index(self, u: int, v: int) -> int:
        if v < 0 or (v == 0 and u < 0):
            u, v = -u, -v
        for idx, rep in enumerate(self._cusp_reps):
            if self._cusps_equivalent((u, v), rep):
                return idx
        self._cusp_reps.append((u, v))
        return len(self._cusp_reps) - 1

    def _build_cuspidal(self) -> None:
        k = self.weight
        self._cusp_reps: list[tuple[int, int]] = []
        cols: list[dict[int, int]] = []
        for sym in self.basis_symbols:
            i = sym.poly_degree
            a, b, c, d = lift_to_sl2(*sym.point, self.level)
            entry: dict[int, int] = {}
            if i == k - 2:
                ci = self._cusp_index(a, c)
                entry[ci] = entry.get(ci, 0) + 1
            if i == 0:
                ci = self._cusp_index(b, d)
                entry[ci] = entry.get(ci, 0) - 1
            cols.append({key: val for key, val in entry.items() if val})
        n_cusps = len(self._cusp_reps)
        rows = [
            {j: Fraction(cols[j][ci]) for j in range(self.dimension) if ci in cols[j]}
            for ci in range(n_cusps)
        ]
        self.boundary_rows = rows
        bmat = QMat.from_sparse_rows(rows, self.dimension)
        self.cuspidal_basis, self.cuspidal_pivots = bmat.kernel_basis()
        assert self.cuspidal_basis.ncols == dim_cusp_forms(self.level, self.weight), (
            self.level,
            self.weight,
            self.cuspidal_basis.ncols,
        )

    # -- paths and degeneracy maps -----------------------------------------

    def symbol_to_path(self, sym: BasisSymbol):
        """(poly coeffs, start cusp, end cusp) of a basis symbol in the global frame."""
        k = self.weight
        a, b, c, d = lift_to_sl2(*sym.point, self.level)
        mono = [0] * (k - 1)
        mono[sym.poly_degree] = 1
        # polynomial in the global frame: transport by g^{-1} = (d, -b; -c, a)
        coeffs = transport_poly(mono, (d, -b, -c, a))
        return coeffs, (b, d), (a, c)

    def _expand_to_cusp(self, coeffs, cusp: tuple[int, int]) -> dict[int, Fraction]:
        """The symbol with polynomial part `coeffs` on the path {oo, cusp}."""
        pn, pd = cusp
        if pd < 0:
            pn, pd = -pn, -pd
        if pd == 0:
            return {}
        out: dict[int, Fraction] = {}
        # convergents of pn/pd by the floor continued fraction
        quots = []
        a, b = pn, pd
        while b:
            q, r = divmod(a, b)
            quots.append(q)
            a, b = b, r
        p_prev, q_prev = 1, 0
        p_cur, q_cur = quots[0], 1
        self._accumulate_elementary(out, coeffs, p_cur, p_prev, q_cur, q_prev, 0)
        for j in range(1, len(quots)):
            p_nxt = quots[j] * p_cur + p_prev
            q_nxt = quots[j] * q_cur + q_prev
            p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_nxt, q_nxt
            self._accumulate_elementary(out, coeffs, p_cur, p_prev, q_cur, q_prev, j)
        return out

    def _accumulate_elementary(self, out, coeffs, pj, pjm, qj, qjm, j) -> None:
        """Add the Manin symbol of the elementary path {p_{j-1}/q_{j-1}, p_j/q_j}."""
        sign = -1 if j % 2 == 0 else 1
        h = (pj, sign * pjm, qj, sign * qjm)
        assert h[0] * h[3] - h[1] * h[2] == 1
        local = transport_poly(coeffs, h)
        pt = self.p1.index(h[2], h[3])
        if pt < 0:
            return
        for t, coef in enumerate(local):
            if coef:
                for bidx, x in self.symbol_rows[self._sym(t, pt)].items():
                    val = out.get(bidx, 0) + coef * x
                    if val:
                        out[bidx] = val
                    else:
                        out.pop(bidx, None)

    def path_to_vector(self, coeffs, start, end) -> dict[int, Fraction]:
        """Expand the symbol `coeffs` on the path {start, end} over the basis."""
        out = self._expand_to_cusp(coeffs, end)
        for bidx, x in self._expand_to_cusp(coeffs, start).items():
            val = out.get(bidx, 0) - x
            if val:
                out[bidx] = val
            else:
                out.pop(bidx, None)
        return out

    def degeneracy_rows(self, ell: int):
        """Rows (over this space's basis) of the two maps down to level/ell.

        Returns target space and the stacked sparse rows of the identity map
        (point projection) and the ell-scaling map (path rewriting); the new
        subspace is the common kernel over all prime ell | level.
        """
        m = self.level // ell
        assert self.level % ell == 0
        target = modular_symbol_space(m, self.weight)
        k = self.weight
        alpha_cols = []
        beta_cols = []
        for sym in self.basis_symbols:
            u, v = sym.point
            pt = target.p1.index(u % m, v % m)
            assert pt >= 0
            alpha_cols.append(dict(target.symbol_rows[target._sym(sym.poly_degree, pt)]))
            coeffs, (xn, xd), (yn, yd) = self.symbol_to_path(sym)
            scaled = [c * ell ** (k - 2 - t) for t, c in enumerate(coeffs)]
            beta_cols.append(target.path_to_vector(scaled, (ell * xn, xd), (ell * yn, yd)))
        alpha_rows = _cols_to_rows(alpha_cols, target.dimension)
        beta_rows = _cols_to_rows(beta_cols, target.dimension)
        return target, alpha_rows + beta_rows

    def _build_new(self) -> None:
        rows = list(self.boundary_rows)
        for ell in prime_divisors(self.level):
            _, deg_rows = self.degeneracy_rows(ell)
            rows.extend(deg_rows)
        mat = QMat.from_sparse_rows(rows, self.dimension)
        self.new_basis, self.new_pivots = mat.kernel_basis()
        assert self.new_basis.ncols == dim_new_cusp_forms(self.level, self.weight), (
            self.level,
            self.weight,
            self.new_basis.ncols,
        )

    # -- Hecke operators, exact path ---------------------------------------

    def hecke_matrix(self, p: int, family=None) -> QMat:
        """T_p (U_p for p | level) on the full space, columns over the basis."""
        if family is None and p in self._hecke_exact:
            return self._hecke_exact[p]
        mats = cremona_family(p) if family is None else family
        n, k = self.level, self.weight
        cols = []
        for sym in self.basis_symbols:
            u, v = sym.point
            i = sym.poly_degree
            mono = [0] * (k - 1)
            mono[i] = 1
            acc: dict[int, Fraction] = {}
            for a, b, c, d in mats:
                pt = self.p1.index((a * u + c * v) % n, (b * u + d * v) % n)
                if pt < 0:
                    continue
                local = transport_poly(mono, (a, b, c, d)) if k > 2 else [1]
                for t, coef in enumerate(local):
                    if coef:
                        for bidx, x in self.symbol_rows[self._sym(t, pt)].items():
                            val = acc.get(bidx, 0) + coef * x
                            if val:
                                acc[bidx] = val
                            else:
                                acc.pop(bidx, None)
            cols.append(acc)
        out = QMat.from_sparse_rows(_cols_to_rows(cols, self.dimension), self.dimension)
        if family is None:
            self._hecke_exact[p] = out
        return out

    def hecke_on_new(self, p: int) -> QMat:
        """Exact restriction of T_p to the new cuspidal subspace."""
        return self.hecke_matrix(p).restrict(
            self.new_basis, pivot_rows=self.new_pivots, check=True
        )

    # -- Hecke operators, mod-q engine -------------------------------------

    def _r_mod_q(self, q: int) -> np.ndarray:
        if q in self._r_mod:
            return self._r_mod[q]
        assert self.denominator % q != 0
        out = np.zeros((self.n_symbols, self.dimension), dtype=np.int64)
        for s, row in enumerate(self.symbol_rows):
            for bidx, x in row.items():
                out[s, bidx] = x.numerator * pow(x.denominator, -1, q) % q
        self._r_mod[q] = out
        return out

    def hecke_matrix_mod(self, p: int, q: int) -> np.ndarray:
        """T_p mod q on the full space; equals the exact matrix reduced mod q."""
        n, k = self.level, self.weight
        npts = self.n_points
        fa, fb, fc, fd = family_arrays(p)
        nfam = fa.shape[0]
        assert nfam * (q - 1) < 1 << 53
        r_mod = self._r_mod_q(q)
        out = np.zeros((self.dimension, self.dimension), dtype=np.int64)
        weights = None
        if k > 2:
            am, bm, cm, dm = (x % q for x in (fa, fb, fc, fd))
            pows = []
            for base in (am, bm, cm, dm):
                cur = [np.ones(nfam, dtype=np.int64)]
                for _ in range(k - 2):
                    cur.append(cur[-1] * base % q)
                pows.append(cur)
            pa, pb, pc, pd = pows
            weights = {}
            for i in range(k - 1):
                j = k - 2 - i
                for t in range(k - 1):
                    w = np.zeros(nfam, dtype=np.int64)
                    for u_ in range(max(0, t - j), min(i, t) + 1):
                        term = comb(i, u_) % q * pa[u_] % q * pb[i - u_] % q
                        term = term * comb(j, t - u_) % q * pc[t - u_] % q * pd[j - (t - u_)] % q
                        w = (w + term) % q
                    weights[(i, t)] = w.astype(np.float64)
        for bpos, sym in enumerate(self.basis_symbols):
            u, v = sym.point
            i = sym.poly_degree
            c1 = (u * fa + v * fc) % n
            d1 = (u * fb + v * fd) % n
            idx = self.p1.lookup(c1, d1)
            valid = idx >= 0
            iv = idx[valid].astype(np.intp)
            acc = np.zeros(self.n_symbols, dtype=np.int64)
            if k == 2:
                acc[:npts] = np.bincount(iv, minlength=npts) % q
            else:
                for t in range(k - 1):
                    wv = weights[(i, t)][valid]
                    acc[t * npts : (t + 1) * npts] = np.bincount(
                        iv, weights=wv, minlength=npts
                    ).astype(np.int64) % q
            out[:, bpos] = acc @ r_mod % q
        return out

    def subspace_restriction_mod(
        self, t_mod: np.ndarray, basis: QMat, pivots: list[int], q: int
    ) -> np.ndarray:
        """(t_mod @ basis)[pivots] mod q; exact image of the rational restriction."""
        v_mod = np.zeros((basis.nrows, basis.ncols), dtype=np.int64)
        for r, row in enumerate(basis.sparse_rows()):
            for cidx, x in row.items():
                assert x.denominator % q != 0
                v_mod[r, cidx] = x.numerator * pow(x.denominator, -1, q) % q
        prod = t_mod @ v_mod % q
        return prod[pivots, :]

    def __repr__(self) -> str:
        return (
            f"ModularSymbolSpace(level={self.level}, weight={self.weight}, "
            f"dim={self.dimension})"
        )


def _cols_to_rows(cols, nrows: int):
    rows = [dict() for _ in range(nrows)]
    for cidx, col in enumerate(cols):
        for ridx, x in col.items():
            rows[ridx][cidx] = Fraction(x)
    return rows


@lru_cache(maxsize=None)
def modular_symbol_space(level: int, weight: int) -> ModularSymbolSpace:
    return ModularSymbolSpace(level, weight)
