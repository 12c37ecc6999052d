"""Exact rational matrices plus the few numeric kernels layered on top.

All structural computation in this package runs over fractions.Fraction.
Floats enter only through the numeric matrix exponential and the numeric
verification paths that consume it; the two worlds are never mixed silently.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

# Default tolerance for every numeric comparison in the package.
DEFAULT_TOL = 1e-9

Vec = tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce an int, string like '3/4', or Fraction to a Fraction.

    Floats are rejected: exact code paths must never absorb rounding noise.
    """
    if isinstance(x, bool):
        raise TypeError(f"cannot treat {x!r} as a rational scalar")
    if isinstance(x, float):
        raise TypeError(f"refusing to coerce float {x!r} to an exact rational")
    return Fraction(x)


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def vec(entries: Iterable) -> Vec:
    return tuple(rat(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def basis_vec(n: int, i: int) -> Vec:
    """Standard basis vector with a 1 in 0-based slot i."""
    if not 0 <= i < n:
        raise ValueError(f"basis index {i} out of range for length {n}")
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v: Vec) -> Vec:
    c = rat(c)
    return tuple(c * a for a in v)


def vdot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


class Matrix:
    """Immutable dense matrix over Fraction.

    Entry access is 0-based.  Vectors act as rows: the image of v under the
    map with matrix M is v * M.  Hashable, so matrices can live in sets.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(rat(x) for x in row) for row in rows)
        if not rs or not rs[0]:
            raise ValueError("matrix needs at least one row and one column")
        w = len(rs[0])
        if any(len(r) != w for r in rs):
            raise ValueError("ragged rows in matrix literal")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = nrows
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """n x n matrix with a single 1 in 0-based position (i, j)."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 1
        return cls(rows)

    @classmethod
    def diagonal(cls, entries: Iterable) -> "Matrix":
        es = [rat(x) for x in entries]
        n = len(es)
        return cls([[es[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Vec]) -> "Matrix":
        return cls(rows)

    # -- shape and access --------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> Vec:
        return self.rows[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(
            [vadd(a, b) for a, b in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            cols = [other.col(j) for j in range(other.ncols)]
            return Matrix(
                [[vdot(r, c) for c in cols] for r in self.rows]
            )
        return Matrix([[rat(other) * x for x in r] for r in self.rows])

    def __rmul__(self, other):
        return Matrix([[rat(other) * x for x in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self * other

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def transpose(self) -> "Matrix":
        return Matrix([self.col(j) for j in range(self.ncols)])

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace needs a square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def apply(self, v: Vec) -> Vec:
        """Image of row vector v, i.e. v * self."""
        if len(v) != self.nrows:
            raise ValueError(f"vector length {len(v)} vs {self.nrows} rows")
        return tuple(
            sum((v[i] * self.rows[i][j] for i in range(self.nrows)), Fraction(0))
            for j in range(self.ncols)
        )

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns.

        The result is canonical: two row spaces agree iff their rref rows
        (with zero rows dropped) agree.
        """
        rows = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(nr):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Matrix(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant needs a square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        sign = 1
        out = Fraction(1)
        for c in range(n):
            pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if pr is None:
                return Fraction(0)
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                sign = -sign
            out *= rows[c][c]
            inv = 1 / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c] != 0:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return sign * out

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse needs a square matrix")
        n = self.nrows
        aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)]
                      for i, r in enumerate(self.rows)])
        red, pivots = aug.rref()
        if len(pivots) < n or tuple(pivots[:n]) != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([r[n:] for r in red.rows])

    def right_nullspace(self) -> list[Vec]:
        """Basis for {x : self * x^T = 0}, each solution as a plain tuple."""
        red, pivots = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for fc in free:
            x = [Fraction(0)] * nc
            x[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                x[pc] = -red.rows[r][fc]
            basis.append(tuple(x))
        return basis

    def left_nullspace(self) -> list[Vec]:
        """Basis for {v : v * self = 0}."""
        return self.transpose().right_nullspace()

    # -- numeric bridge ----------------------------------------------------

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"


# -- module-level operation names ------------------------------------------


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return a * b


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    return m.rref()


def nullspace(m: Matrix) -> list[Vec]:
    return m.right_nullspace()


def det(m: Matrix):
    if isinstance(m, np.ndarray):
        return float(np.linalg.det(m))
    return m.det()


def nilpotency_index(m: Matrix) -> int | None:
    """Smallest p with m**p == 0, or None when m is not nilpotent."""
    if not m.is_square():
        raise ValueError("nilpotency test needs a square matrix")
    power = Matrix.identity(m.nrows)
    for p in range(1, m.nrows + 1):
        power = power * m
        if power.is_zero():
            return p
    return None


def _stable_nonzero_power(m: Matrix) -> int:
    # Smallest p >= 1 where rank(m^p) == rank(m^(p+1)) > 0; such a power
    # certifies non-nilpotence because the rank can never drop afterwards.
    power = m
    prev_rank = power.rank()
    for p in range(1, m.nrows + 2):
        nxt = power * m
        r = nxt.rank()
        if r == prev_rank and prev_rank > 0:
            return p
        power, prev_rank = nxt, r
    return m.nrows


def charpoly(m: Matrix) -> list[Fraction]:
    """Monic characteristic polynomial coefficients [1, c1, ..., cn].

    Faddeev-LeVerrier recurrence; exact over the rationals.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.nrows
    coeffs = [Fraction(1)]
    work = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        work = m * (work + coeffs[-1] * ident)
        coeffs.append(Fraction(-1, k) * work.trace())
    return coeffs


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of a polynomial given by its coefficient list.

    Coefficients are highest degree first.  Uses the rational root theorem
    after clearing denominators; roots are returned sorted, without
    multiplicity.
    """
    cs = [rat(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        raise ValueError("zero polynomial has every root")
    roots = set()
    # strip zero roots so the trailing coefficient is nonzero
    while cs[-1] == 0:
        roots.add(Fraction(0))
        cs.pop()
        if len(cs) == 1:
            return sorted(roots)
    denom = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * denom) for c in cs]

    def divisors(v: int) -> list[int]:
        v = abs(v)
        out = [d for d in range(1, v + 1) if v % d == 0]
        return out

    lead, tail = ints[0], ints[-1]
    for p in divisors(tail):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                total = Fraction(0)
                for c in cs:
                    total = total * cand + c
                if total == 0:
                    roots.add(cand)
    return sorted(roots)


def matexp(m, mode: str = "exact"):
    """Matrix exponential.

    exact   -- requires a nilpotent Fraction matrix; returns the finite
               Taylor sum as an exact Matrix.
    numeric -- accepts a Matrix or ndarray; returns a float ndarray via
               scipy's scaling-and-squaring exponential.
    """
    if mode == "numeric":
        arr = m.to_numpy() if isinstance(m, Matrix) else np.asarray(m, dtype=float)
        return scipy.linalg.expm(arr)
    if mode != "exact":
        raise ValueError(f"unknown matexp mode {mode!r}")
    if not isinstance(m, Matrix):
        raise TypeError("exact matexp needs a Matrix with rational entries")
    p = nilpotency_index(m)
    if p is None:
        q = _stable_nonzero_power(m)
        raise ValueError(
            f"exact matexp needs a nilpotent matrix, but power {q} is nonzero "
            f"and its rank has stabilized; use mode='numeric'"
        )
    out = Matrix.identity(m.nrows)
    term = Matrix.identity(m.nrows)
    for k in range(1, p):
        term = term * m * Fraction(1, k)
        out = out + term
    return out


# -- formatting ------------------------------------------------------------


def format_matrix(m, transpose: bool = False) -> str:
    """Render a matrix as a grid that re-parses bit-exactly.

    Fraction entries print as p or p/q; float entries print with repr, which
    round-trips in Python.
    """
    if isinstance(m, Matrix):
        rows = [[str(x) for x in r] for r in m.rows]
    else:
        arr = np.asarray(m)
        rows = [[repr(float(x)) for x in r] for r in arr]
    if transpose:
        rows = [list(col) for col in zip(*rows)]
    widths = [max(len(rows[i][j]) for i in range(len(rows)))
              for j in range(len(rows[0]))]
    return "\n".join(
        " ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows
    )


def parse_matrix(text: str) -> Matrix:
    """Parse the exact grid format emitted by format_matrix."""
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty matrix text")
    return Matrix(rows)


def max_abs(arr) -> float:
    a = np.asarray(arr, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0
