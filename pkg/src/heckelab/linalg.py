"""Exact linear algebra over Q.

Matrices here are small (dimensions in the tens) but entries can be large, so
everything is Fraction-based. Echelon forms are reduced row echelon with pivot
columns ascending; since RREF is unique, every basis, label, and report built
on top of it is reproducible run to run regardless of pivot strategy.

Storage is dense (list of lists) or sparse (list of column->value dicts),
chosen at construction: big matrices under 10% fill go sparse. The sparse path
exists for the relation matrices of symbol spaces, which are huge and nearly
empty; all the small dense work ignores it.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

SPARSE_FILL_CUTOFF = Fraction(1, 10)
SPARSE_SIZE_CUTOFF = 400


class LinAlgError(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QMat:
    """Immutable-by-convention exact rational matrix."""

    __slots__ = ("nrows", "ncols", "_dense", "_rows")

    def __init__(self, nrows: int, ncols: int, dense=None, sparse_rows=None):
        if (dense is None) == (sparse_rows is None):
            raise ValueError("exactly one of dense/sparse_rows required")
        self.nrows = nrows
        self.ncols = ncols
        self._dense = dense
        self._rows = sparse_rows

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "QMat":
        rows = [[_as_fraction(x) for x in row] for row in rows]
        nrows = len(rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        nnz = sum(1 for row in rows for x in row if x)
        size = nrows * ncols
        if size > SPARSE_SIZE_CUTOFF and nnz < SPARSE_FILL_CUTOFF * size:
            sparse = [{j: x for j, x in enumerate(row) if x} for row in rows]
            return cls(nrows, ncols, sparse_rows=sparse)
        return cls(nrows, ncols, dense=rows)

    @classmethod
    def from_sparse_rows(cls, rows, ncols: int) -> "QMat":
        clean = []
        for row in rows:
            d = {}
            for j, x in row.items():
                if not 0 <= j < ncols:
                    raise ValueError("column index out of range")
                x = _as_fraction(x)
                if x:
                    d[j] = x
            clean.append(d)
        return cls(len(clean), ncols, sparse_rows=clean)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMat":
        return cls(nrows, ncols, dense=[[Fraction(0)] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def column(cls, entries) -> "QMat":
        return cls.from_rows([[x] for x in entries], ncols=1)

    # -- representation ----------------------------------------------------

    @property
    def is_sparse(self) -> bool:
        return self._rows is not None

    def dense_rows(self) -> list[list[Fraction]]:
        if self._dense is not None:
            return [row[:] for row in self._dense]
        out = []
        for row in self._rows:
            dense = [Fraction(0)] * self.ncols
            for j, x in row.items():
                dense[j] = x
            out.append(dense)
        return out

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        if self._rows is not None:
            return [dict(row) for row in self._rows]
        return [
            {j: x for j, x in enumerate(row) if x} for row in self._dense
        ]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if self._dense is not None:
            return self._dense[i][j]
        return self._rows[i].get(j, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMat):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return self.dense_rows() == other.dense_rows()

    def __hash__(self):
        raise TypeError("QMat is unhashable")

    def __repr__(self) -> str:
        kind = "sparse" if self.is_sparse else "dense"
        return f"QMat({self.nrows}x{self.ncols}, {kind})"

    def nnz(self) -> int:
        if self._rows is not None:
            return sum(len(row) for row in self._rows)
        return sum(1 for row in self._dense for x in row if x)

    # -- arithmetic --------------------------------------------------------

    def transpose(self) -> "QMat":
        rows = self.dense_rows()
        return QMat.from_rows(
            [[rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __add__(self, other: "QMat") -> "QMat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in add")
        a, b = self.dense_rows(), other.dense_rows()
        return QMat.from_rows(
            [[a[i][j] + b[i][j] for j in range(self.ncols)] for i in range(self.nrows)],
            ncols=self.ncols,
        )

    def __sub__(self, other: "QMat") -> "QMat":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "QMat":
        c = _as_fraction(c)
        if self._rows is not None:
            return QMat.from_sparse_rows(
                [{j: c * x for j, x in row.items()} for row in self._rows], self.ncols
            )
        return QMat.from_rows(
            [[c * x for x in row] for row in self._dense], ncols=self.ncols
        )

    def __matmul__(self, other: "QMat") -> "QMat":
        if self.ncols != other.nrows:
            raise LinAlgError("shape mismatch in matmul")
        b_cols = other.transpose().dense_rows()
        out = []
        for row in self.sparse_rows() if self.is_sparse else self.dense_rows():
            if isinstance(row, dict):
                out.append(
                    [sum((x * col[j] for j, x in row.items()), Fraction(0)) for col in b_cols]
                )
            else:
                out.append(
                    [
                        sum((a * b for a, b in zip(row, col) if a), Fraction(0))
                        for col in b_cols
                    ]
                )
        return QMat.from_rows(out, ncols=other.ncols)

    def stack(self, other: "QMat") -> "QMat":
        """Rows of self on top of rows of other."""
        if self.ncols != other.ncols:
            raise LinAlgError("shape mismatch in stack")
        return QMat.from_sparse_rows(
            self.sparse_rows() + other.sparse_rows(), self.ncols
        )

    def take_rows(self, indices) -> "QMat":
        rows = self.dense_rows()
        return QMat.from_rows([rows[i] for i in indices], ncols=self.ncols)

    def is_zero(self) -> bool:
        return self.nnz() == 0

    # -- echelon forms -----------------------------------------------------

    def rref(self) -> tuple["QMat", list[int]]:
        """Reduced row echelon form and its pivot columns (ascending).

        Zero rows are dropped. The result is the unique RREF of the row space.
        """
        rows = [row for row in self.sparse_rows() if row]
        pivots: dict[int, dict[int, Fraction]] = {}
        for row in rows:
            row = dict(row)
            while row:
                c = min(row)
                if c in pivots:
                    coeff = row.pop(c)
                    for j, x in pivots[c].items():
                        if j == c:
                            continue
                        v = row.get(j, Fraction(0)) - coeff * x
                        if v:
                            row[j] = v
                        else:
                            row.pop(j, None)
                else:
                    inv = 1 / row[c]
                    row = {j: x * inv for j, x in row.items()}
                    pivots[c] = row
                    break
        # back-substitution for the reduced form
        cols = sorted(pivots)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            prow = pivots[c]
            for c2 in cols[:idx]:
                row = pivots[c2]
                if c in row:
                    coeff = row.pop(c)
                    for j, x in prow.items():
                        if j == c:
                            continue
                        v = row.get(j, Fraction(0)) - coeff * x
                        if v:
                            row[j] = v
                        else:
                            row.pop(j, None)
        out = [pivots[c] for c in cols]
        return QMat.from_sparse_rows(out, self.ncols), cols

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> tuple["QMat", list[int]]:
        """Basis of the right kernel as matrix columns, plus the free columns.

        The basis is in reduced column echelon form: restricted to the free
        column indices (ascending) it is the identity, which downstream code
        exploits to read off restrictions without solving.
        """
        r, piv = self.rref()
        piv_set = set(piv)
        free = [j for j in range(self.ncols) if j not in piv_set]
        rrows = r.sparse_rows()
        cols = []
        for f in free:
            v = {f: Fraction(1)}
            for i, c in enumerate(piv):
                x = rrows[i].get(f)
                if x:
                    v[c] = -x
            cols.append(v)
        dense = [[cols[j].get(i, Fraction(0)) for j in range(len(free))] for i in range(self.ncols)]
        return QMat.from_rows(dense, ncols=len(free)), free

    def column_echelon(self) -> tuple["QMat", list[int]]:
        """Reduced column echelon form of the column span, plus pivot rows.

        Restricted to its pivot rows the result is the identity.
        """
        r, piv = self.transpose().rref()
        return r.transpose(), piv

    def solve(self, rhs: "QMat") -> "QMat":
        """Solve self @ X = rhs for a full-column-rank self."""
        aug = QMat.from_sparse_rows(
            [
                {**row, **{self.ncols + j: x for j, x in rrow.items()}}
                for row, rrow in zip(self.sparse_rows(), rhs.sparse_rows())
            ],
            self.ncols + rhs.ncols,
        )
        r, piv = aug.rref()
        if len([c for c in piv if c < self.ncols]) != self.ncols:
            raise LinAlgError("matrix does not have full column rank")
        if any(c >= self.ncols for c in piv):
            raise LinAlgError("inconsistent linear system")
        rrows = r.sparse_rows()
        out = [[Fraction(0)] * rhs.ncols for _ in range(self.ncols)]
        for i, c in enumerate(piv):
            for j, x in rrows[i].items():
                if j >= self.ncols:
                    out[c][j - self.ncols] = x
        return QMat.from_rows(out, ncols=rhs.ncols)

    # -- operators on subspaces -------------------------------------------

    def restrict(self, basis: "QMat", pivot_rows: list[int] | None = None, check: bool = True) -> "QMat":
        """Matrix of this operator on the column span of `basis`.

        `basis` must have independent columns. If it is in reduced column
        echelon form its pivot rows can be passed to skip the solve. Raises
        LinAlgError when the subspace is not invariant.
        """
        if self.nrows != self.ncols:
            raise LinAlgError("restrict needs a square operator")
        if basis.nrows != self.nrows:
            raise LinAlgError("basis shape mismatch")
        image = self @ basis
        if pivot_rows is not None:
            restricted = image.take_rows(pivot_rows)
            if check and basis @ restricted != image:
                raise LinAlgError("subspace is not invariant under the operator")
            return restricted
        restricted = basis.solve(image)
        if check and basis @ restricted != image:
            raise LinAlgError("subspace is not invariant under the operator")
        return restricted

    # -- characteristic polynomial ----------------------------------------

    def charpoly_fractions(self) -> list[Fraction]:
        """Characteristic polynomial det(X*I - self), coefficients ascending."""
        if self.nrows != self.ncols:
            raise LinAlgError("charpoly needs a square matrix")
        n = self.nrows
        if n == 0:
            return [Fraction(1)]
        h = self.dense_rows()
        _hessenberg_inplace(h)
        return _hessenberg_charpoly(h)


def _hessenberg_inplace(h: list[list[Fraction]]) -> None:
    """Reduce to upper Hessenberg form by exact similarity transforms."""
    n = len(h)
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if h[i][m - 1]:
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            h[m], h[piv] = h[piv], h[m]
            for row in h:
                row[m], row[piv] = row[piv], row[m]
        inv = 1 / h[m][m - 1]
        for i in range(m + 1, n):
            if h[i][m - 1]:
                u = h[i][m - 1] * inv
                hrow, mrow = h[i], h[m]
                for c in range(m - 1, n):
                    if mrow[c]:
                        hrow[c] -= u * mrow[c]
                for r in range(n):
                    if h[r][i]:
                        h[r][m] += u * h[r][i]


def _hessenberg_charpoly(h) -> list:
    """Charpoly of an upper Hessenberg matrix by the classical recurrence.

    Works over any exact coefficient domain with the same element type as the
    matrix entries (Fractions here, ints mod q in the numpy path).
    """
    n = len(h)
    one = h[0][0] * 0 + 1 if n else 1
    polys = [[one]]
    for m in range(1, n + 1):
        d = h[m - 1][m - 1]
        prev = polys[m - 1]
        # (X - d) * prev
        cur = [-d * c for c in prev] + [prev[0] * 0]
        for i, c in enumerate(prev):
            cur[i + 1] += c
        subprod = one
        for i in range(m - 2, -1, -1):
            subprod = subprod * h[i + 1][i]
            coeff = h[i][m - 1] * subprod
            if coeff:
                pi = polys[i]
                for j, c in enumerate(pi):
                    cur[j] -= coeff * c
        polys.append(cur)
    return polys[n]


def charpoly_mod(a: np.ndarray, q: int) -> list[int]:
    """Charpoly of an integer matrix mod prime q, coefficients ascending.

    Hessenberg reduction commutes with reduction mod q, so this equals the
    exact charpoly reduced mod q; used by the CRT reconstruction fast path.
    """
    n = a.shape[0]
    if n == 0:
        return [1]
    h = [[int(x) % q for x in row] for row in a.tolist()]
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if h[i][m - 1]:
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            h[m], h[piv] = h[piv], h[m]
            for row in h:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(h[m][m - 1], q - 2, q)
        for i in range(m + 1, n):
            if h[i][m - 1]:
                u = h[i][m - 1] * inv % q
                hrow, mrow = h[i], h[m]
                for c in range(m - 1, n):
                    if mrow[c]:
                        hrow[c] = (hrow[c] - u * mrow[c]) % q
                for r in range(n):
                    if h[r][i]:
                        h[r][m] = (h[r][m] + u * h[r][i]) % q
    polys = [[1]]
    for m in range(1, n + 1):
        d = h[m - 1][m - 1]
        prev = polys[m - 1]
        cur = [(-d * c) % q for c in prev] + [0]
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % q
        subprod = 1
        for i in range(m - 2, -1, -1):
            subprod = subprod * h[i + 1][i] % q
            coeff = h[i][m - 1] * subprod % q
            if coeff:
                pi = polys[i]
                for j, c in enumerate(pi):
                    cur[j] = (cur[j] - coeff * c) % q
        polys.append(cur)
    return polys[n]
