"""Lie algebras over the rationals given by sparse structure constants.

A bracket table stores only the coefficients c_{ij}^k with i < j; the i > j
values follow by antisymmetry and diagonal brackets vanish.  Basis indices in
this module's public API are 1-based, matching the usual X_1, ..., X_R labels;
matrix entries underneath stay 0-based.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (
    Matrix,
    Vec,
    basis_vec,
    rat,
    vadd,
    vscale,
    zero_vec,
)


class StructureTensor:
    """Canonical sparse antisymmetric bracket table."""

    __slots__ = ("dim", "_table")

    def __init__(self, dim: int, entries: Iterable[tuple[int, int, int, object]]):
        if dim < 1:
            raise ValueError("dimension must be positive")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, k, c in entries:
            if not (1 <= i < j <= dim):
                raise ValueError(
                    f"bracket indices must satisfy 1 <= i < j <= {dim}, got ({i}, {j})"
                )
            if not 1 <= k <= dim:
                raise ValueError(f"component index {k} out of range 1..{dim}")
            coef = rat(c)
            row = table.setdefault((i, j), {})
            row[k] = row.get(k, Fraction(0)) + coef
        for key in list(table):
            table[key] = {k: v for k, v in table[key].items() if v != 0}
            if not table[key]:
                del table[key]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_table", table)

    def __setattr__(self, name, value):
        raise AttributeError("StructureTensor is immutable")

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Full antisymmetric coefficient c_{ij}^k for any i, j."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self._table.get((i, j), {}).get(k, Fraction(0))
        return -self._table.get((j, i), {}).get(k, Fraction(0))

    def pair_image(self, i: int, j: int) -> Vec:
        """Coordinates of [X_i, X_j]."""
        out = [Fraction(0)] * self.dim
        if i == j:
            return tuple(out)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self._table.get((i, j), {}).items():
            out[k - 1] = sign * c
        return tuple(out)

    def items(self) -> tuple[tuple[int, int, int, Fraction], ...]:
        """Sorted (i, j, k, c) entries with i < j and c != 0."""
        out = []
        for (i, j), row in self._table.items():
            for k, c in row.items():
                out.append((i, j, k, c))
        return tuple(sorted(out))

    def __eq__(self, other):
        return (
            isinstance(other, StructureTensor)
            and self.dim == other.dim
            and self.items() == other.items()
        )

    def __hash__(self):
        return hash((self.dim, self.items()))

    def __repr__(self):
        return f"StructureTensor(dim={self.dim}, entries={len(self.items())})"


class LieAlgebra:
    """A finite-dimensional real Lie algebra in a fixed basis."""

    __slots__ = ("tensor", "label")

    def __init__(self, tensor: StructureTensor, label: str | None = None):
        object.__setattr__(self, "tensor", tensor)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @property
    def dim(self) -> int:
        return self.tensor.dim

    def __eq__(self, other):
        # label is a display name only; structural identity is the tensor
        return isinstance(other, LieAlgebra) and self.tensor == other.tensor

    def __hash__(self):
        return hash(self.tensor)

    def __repr__(self):
        name = self.label or "?"
        return f"LieAlgebra({name}, dim={self.dim})"


def new_lie_algebra(
    dim: int,
    brackets: Iterable[tuple[int, int, int, object]],
    label: str | None = None,
    validate: bool = True,
) -> LieAlgebra:
    """Build an algebra from (i, j, k, c) entries with i < j.

    With validate=True the Jacobi identity is checked and violations raise;
    validate=False gives the raw container (useful for testing the checker).
    """
    alg = LieAlgebra(StructureTensor(dim, brackets), label)
    if validate:
        bad = check_jacobi(alg)
        if bad:
            probes = ", ".join(str(t) for t, _ in bad[:3])
            raise ValueError(f"Jacobi identity fails at triples {probes}")
    return alg


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vec:
    """[x, y] in coordinates, by bilinear expansion of the bracket table."""
    n = L.dim
    xv = tuple(rat(a) for a in x)
    yv = tuple(rat(a) for a in y)
    if len(xv) != n or len(yv) != n:
        raise ValueError(f"vectors must have length {n}")
    out = [Fraction(0)] * n
    for (i, j), row in L.tensor._table.items():
        coef = xv[i - 1] * yv[j - 1] - xv[j - 1] * yv[i - 1]
        if coef == 0:
            continue
        for k, c in row.items():
            out[k - 1] += coef * c
    return tuple(out)


def check_jacobi(L: LieAlgebra) -> list[tuple[tuple[int, int, int], Vec]]:
    """All triples (i, j, k) where the Jacobi sum fails, with residuals."""
    n = L.dim
    basis = [basis_vec(n, i) for i in range(n)]
    bad = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                r = vadd(
                    vadd(
                        bracket(L, bracket(L, basis[i - 1], basis[j - 1]), basis[k - 1]),
                        bracket(L, bracket(L, basis[j - 1], basis[k - 1]), basis[i - 1]),
                    ),
                    bracket(L, bracket(L, basis[k - 1], basis[i - 1]), basis[j - 1]),
                )
                if any(c != 0 for c in r):
                    bad.append(((i, j, k), r))
    return bad


def ad_matrix(L: LieAlgebra, j: int) -> Matrix:
    """Matrix of ad(X_j) acting on row vectors: entry (i, k) is c_{ij}^k."""
    n = L.dim
    if not 1 <= j <= n:
        raise ValueError(f"basis index {j} out of range 1..{n}")
    return Matrix(
        [[L.tensor.c(i, j, k) for k in range(1, n + 1)] for i in range(1, n + 1)]
    )


def ad_matrices(L: LieAlgebra) -> list[Matrix]:
    return [ad_matrix(L, j) for j in range(1, L.dim + 1)]


class Subspace:
    """Subspace of R^n stored as canonical reduced-echelon basis rows."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, rows: Iterable[Sequence] = ()):
        mat_rows = [tuple(rat(x) for x in r) for r in rows]
        for r in mat_rows:
            if len(r) != ambient:
                raise ValueError(f"row length {len(r)} != ambient {ambient}")
        if mat_rows:
            red, pivots = Matrix(mat_rows).rref()
            kept = tuple(red.rows[: len(pivots)])
        else:
            kept, pivots = (), ()
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", kept)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, [basis_vec(ambient, i) for i in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        if not self.basis:
            raise ValueError("zero subspace has no basis matrix")
        return Matrix(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        w = [rat(x) for x in v]
        if len(w) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return all(a == 0 for a in w)

    def coords_of(self, v: Sequence) -> Vec:
        """Coefficients of v against the canonical basis rows."""
        w = tuple(rat(x) for x in v)
        coords = tuple(w[p] for p in self.pivots)
        rebuilt = zero_vec(self.ambient)
        for c, row in zip(coords, self.basis):
            rebuilt = vadd(rebuilt, vscale(c, row))
        if rebuilt != w:
            raise ValueError("vector is not a member of the subspace")
        return coords

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient)
        # solve u * A = v * B by a right nullspace over stacked columns
        cols = []
        for col in range(self.ambient):
            cols.append(
                [row[col] for row in self.basis] + [-row[col] for row in other.basis]
            )
        system = Matrix(cols)
        rows = []
        for sol in system.right_nullspace():
            u = sol[: self.dim]
            combo = zero_vec(self.ambient)
            for c, row in zip(u, self.basis):
                combo = vadd(combo, vscale(c, row))
            rows.append(combo)
        return Subspace(self.ambient, rows)

    def complement_test_matrix(self) -> Matrix | None:
        """Matrix N whose columns span the dual kernel: v in self iff v*N = 0."""
        if not self.basis:
            return Matrix.identity(self.ambient)
        null = Matrix(self.basis).right_nullspace()
        if not null:
            return None
        return Matrix(null).transpose()

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of R^{self.ambient})"


def span(ambient: int, rows: Iterable[Sequence]) -> Subspace:
    return Subspace(ambient, rows)


def _bracket_span(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    rows = []
    for u in a.basis:
        for v in b.basis:
            w = bracket(L, u, v)
            if any(c != 0 for c in w):
                rows.append(w)
    return Subspace(L.dim, rows)


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    """Span of all brackets [X_i, X_j]."""
    rows = [L.tensor.pair_image(i, j) for i, j, _, _ in L.tensor.items()]
    return Subspace(L.dim, rows)


def derived_series(L: LieAlgebra) -> list[Subspace]:
    """L, [L, L], [[L, L], [L, L]], ... up to stabilization."""
    series = [Subspace.full(L.dim)]
    while True:
        nxt = _bracket_span(L, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """L, [L, L], [L, [L, L]], ... up to stabilization."""
    full = Subspace.full(L.dim)
    series = [full]
    while True:
        nxt = _bracket_span(L, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent_algebra(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def _hstack(mats: Sequence[Matrix]) -> Matrix:
    rows = []
    for i in range(mats[0].nrows):
        row = []
        for m in mats:
            row.extend(m.rows[i])
        rows.append(row)
    return Matrix(rows)


def center(L: LieAlgebra) -> Subspace:
    """Vectors commuting with everything: the common left kernel of all ads."""
    stacked = _hstack(ad_matrices(L))
    return Subspace(L.dim, stacked.left_nullspace())


def upper_central_series(L: LieAlgebra) -> list[Subspace]:
    """0, Z(L), preimage of Z(L/Z(L)), ... up to stabilization."""
    ads = ad_matrices(L)
    series = [Subspace.zero(L.dim)]
    while True:
        test = series[-1].complement_test_matrix()
        if test is None:
            return series
        stacked = _hstack([c * test for c in ads])
        nxt = Subspace(L.dim, stacked.left_nullspace())
        if nxt == series[-1]:
            return series
        series.append(nxt)


def killing_form(L: LieAlgebra) -> Matrix:
    """Symmetric matrix of trace(ad X_i ad X_j)."""
    ads = ad_matrices(L)
    n = L.dim
    return Matrix(
        [[(ads[i] * ads[j]).trace() for j in range(n)] for i in range(n)]
    )


def subalgebra_on(L: LieAlgebra, space: Subspace, label: str | None = None):
    """Restrict the bracket to an ideal or subalgebra.

    Returns (algebra, basis matrix); basis rows are the canonical rows of
    `space` and give the embedding back into L.  Raises if the rows are not
    closed under the bracket.
    """
    if space.dim == 0:
        raise ValueError("cannot restrict to the zero subspace")
    rows = space.basis
    entries = []
    for a in range(space.dim):
        for b in range(a + 1, space.dim):
            w = bracket(L, rows[a], rows[b])
            try:
                coords = space.coords_of(w)
            except ValueError:
                raise ValueError(
                    f"rows {a + 1} and {b + 1} bracket outside the subspace"
                ) from None
            for c, coef in enumerate(coords):
                if coef != 0:
                    entries.append((a + 1, b + 1, c + 1, coef))
    alg = new_lie_algebra(space.dim, entries, label=label, validate=False)
    return alg, Matrix(rows)


def change_basis(L: LieAlgebra, S: Matrix, label: str | None = None) -> LieAlgebra:
    """Rewrite L in the basis whose vectors are the rows of S."""
    if S.shape != (L.dim, L.dim):
        raise ValueError("basis matrix has the wrong shape")
    S_inv = S.inverse()
    entries = []
    for a in range(1, L.dim + 1):
        for b in range(a + 1, L.dim + 1):
            w = bracket(L, S.row(a - 1), S.row(b - 1))
            coords = S_inv.apply(w)
            for c, coef in enumerate(coords, start=1):
                if coef != 0:
                    entries.append((a, b, c, coef))
    return new_lie_algebra(L.dim, entries, label=label, validate=False)
