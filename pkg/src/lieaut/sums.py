"""Direct sums and the automorphisms they admit.

An automorphism of a direct sum splits as theta + zeta: theta permutes
isomorphic components and acts on each through a component automorphism,
while zeta is any linear map that kills the derived subalgebra and lands in
the centre.  The zeta maps form a linear space of dimension

    (R - dim L') * dim Z(L),

which this module computes exactly; synthesis assembles theta from component
descriptors and rejects singular results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import (
    LieAlgebra,
    Subspace,
    bracket,
    center,
    derived_subalgebra,
    new_lie_algebra,
)
from .automorphisms import (
    AutDescriptor,
    AutReport,
    ReconstructionChoice,
    is_automorphism,
    reconstruct,
)
from .linalg import DEFAULT_TOL, Matrix, Vec, rat


@dataclass(frozen=True)
class SumStructure:
    """A direct sum with remembered block layout."""

    algebra: LieAlgebra
    parts: tuple[LieAlgebra, ...]
    offsets: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.parts)

    def block_range(self, i: int) -> range:
        start = self.offsets[i]
        return range(start, start + self.parts[i].dim)

    def component_subspace(self, i: int) -> Subspace:
        n = self.algebra.dim
        rows = []
        for a in self.block_range(i):
            rows.append(tuple(Fraction(1 if b == a else 0) for b in range(n)))
        return Subspace(n, rows)


def direct_sum(parts: Sequence[LieAlgebra], label: str | None = None) -> SumStructure:
    """Stack the bracket tables of the parts along the diagonal."""
    if not parts:
        raise ValueError("need at least one summand")
    offsets = []
    total = 0
    entries = []
    for p in parts:
        offsets.append(total)
        for i, j, k, c in p.tensor.items():
            entries.append((i + total, j + total, k + total, c))
        total += p.dim
    if label is None:
        label = "+".join(p.label or f"?dim{p.dim}" for p in parts)
    algebra = new_lie_algebra(total, entries, label=label, validate=False)
    return SumStructure(algebra, tuple(parts), tuple(offsets))


@dataclass(frozen=True)
class ZetaSpace:
    """Basis of the linear maps vanishing on L' with image in the centre."""

    algebra: LieAlgebra
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def zeta_space(L: LieAlgebra) -> ZetaSpace:
    n = L.dim
    Z = center(L)
    D = derived_subalgebra(L)
    test = Z.complement_test_matrix()
    rows = []
    # unknown zeta vectorized row-major; row i of zeta = image of X_i
    if test is not None:
        tcols = test.ncols
        for i in range(n):
            for c in range(tcols):
                row = [Fraction(0)] * (n * n)
                for a in range(n):
                    row[i * n + a] = test[a, c]
                rows.append(row)
    else:
        # centre is everything: no image constraint
        pass
    for d in D.basis:
        for a in range(n):
            row = [Fraction(0)] * (n * n)
            for i in range(n):
                if d[i] != 0:
                    row[i * n + a] = d[i]
            rows.append(row)
    if rows:
        sols = Matrix(rows).right_nullspace()
    else:
        sols = list(Matrix.identity(n * n).rows)
    canon = Subspace(n * n, sols)
    basis = tuple(
        Matrix([v[i * n:(i + 1) * n] for i in range(n)]) for v in canon.basis
    )
    return ZetaSpace(L, basis)


def is_isomorphism(
    src: LieAlgebra, dst: LieAlgebra, T, mode: str = "exact", tol: float = DEFAULT_TOL
) -> AutReport:
    """Whether row-matrix T carries the bracket of src to that of dst.

    Row i of T holds the dst-coordinates of the image of the i-th src basis
    vector.  Same report shape as is_automorphism.
    """
    if src.dim != dst.dim:
        return AutReport(False, mode, 0, None, ())
    n = src.dim
    if mode == "exact":
        if not isinstance(T, Matrix):
            raise TypeError("exact mode needs a Matrix with rational entries")
        violations = []
        worst = Fraction(0)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                lhs = bracket(dst, T.row(i - 1), T.row(j - 1))
                rhs = T.apply(src.tensor.pair_image(i, j))
                for k in range(n):
                    d = lhs[k] - rhs[k]
                    if d != 0:
                        violations.append((i, j, k + 1))
                        worst = max(worst, abs(d))
        detv = T.det()
        return AutReport(not violations and detv != 0, "exact", detv, worst,
                         tuple(violations))
    arr = T.to_numpy() if isinstance(T, Matrix) else np.asarray(T, dtype=float)
    violations = []
    worst = 0.0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            x, y = arr[i - 1], arr[j - 1]
            lhs = np.zeros(n)
            for a, b, k, c in dst.tensor.items():
                coef = x[a - 1] * y[b - 1] - x[b - 1] * y[a - 1]
                if coef != 0.0:
                    lhs[k - 1] += coef * float(c)
            img = np.array([float(c) for c in src.tensor.pair_image(i, j)])
            diff = np.abs(lhs - img @ arr)
            worst = max(worst, float(diff.max()))
            for k in range(n):
                if diff[k] > tol:
                    violations.append((i, j, k + 1))
    detv = float(np.linalg.det(arr))
    return AutReport(not violations and abs(detv) > tol, "numeric", detv, worst,
                     tuple(violations))


@dataclass(frozen=True)
class SumAutDescriptor:
    """Everything needed to synthesize automorphisms of a direct sum.

    classes partitions component indices into isomorphism classes; to_rep
    maps each index to an exact identification onto its class representative
    (identity for the representative itself).  zeta is the additive space.
    """

    structure: SumStructure
    parts: tuple[AutDescriptor, ...]
    classes: tuple[tuple[int, ...], ...]
    to_rep: tuple[Matrix, ...]
    zeta: ZetaSpace


def sum_descriptor(
    structure: SumStructure,
    parts: Sequence[AutDescriptor],
    identifications: Sequence[tuple[int, int, Matrix]] = (),
) -> SumAutDescriptor:
    """Group components into isomorphism classes and attach the zeta space.

    Components with literally identical bracket tables are identified with
    the identity matrix; further identifications (i, j, T) with T an exact
    isomorphism from part i to part j may be supplied by the caller.
    """
    m = structure.count
    if len(parts) != m:
        raise ValueError(f"expected {m} component descriptors, got {len(parts)}")
    for idx, (p, d) in enumerate(zip(structure.parts, parts)):
        if p.dim != d.dim:
            raise ValueError(f"descriptor {idx} has dimension {d.dim}, "
                             f"component has {p.dim}")
    parent = list(range(m))
    to_parent: list[Matrix] = [Matrix.identity(p.dim) for p in structure.parts]

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    def rep_map(i: int) -> Matrix:
        # composition of stored identifications along the parent chain
        out = to_parent[i]
        while parent[i] != i:
            i = parent[i]
            out = out * to_parent[i]
        return out

    def union(i: int, j: int, T: Matrix):
        # T identifies part i with part j (row coords i -> j)
        ri, rj = find(i), find(j)
        if ri == rj:
            return
        Ti = rep_map(i)
        Tj = rep_map(j)
        # map ri -> rj through i: ri -> i -> j -> rj
        parent[ri] = rj
        to_parent[ri] = Ti.inverse() * T * Tj

    for i in range(m):
        for j in range(i + 1, m):
            if structure.parts[i].tensor == structure.parts[j].tensor:
                union(i, j, Matrix.identity(structure.parts[i].dim))
    for i, j, T in identifications:
        rep = is_isomorphism(structure.parts[i], structure.parts[j], T)
        if not rep.ok:
            raise ValueError(f"claimed identification {i} -> {j} is not an "
                             f"isomorphism")
        union(i, j, T)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(tuple(v) for _, v in sorted(groups.items()))
    reps = tuple(rep_map(i) for i in range(m))
    return SumAutDescriptor(
        structure, tuple(parts), classes, reps, zeta_space(structure.algebra)
    )


def _class_of(sdesc: SumAutDescriptor, i: int) -> tuple[int, ...]:
    for cls in sdesc.classes:
        if i in cls:
            return cls
    raise ValueError(f"component index {i} out of range")


def identification(sdesc: SumAutDescriptor, i: int, j: int) -> Matrix:
    """Exact identification matrix from component i to component j."""
    if _class_of(sdesc, i) != _class_of(sdesc, j):
        raise ValueError(f"components {i} and {j} are not identified")
    return sdesc.to_rep[i] * sdesc.to_rep[j].inverse()


def synthesize(
    sdesc: SumAutDescriptor,
    choices: Sequence[ReconstructionChoice],
    perm: Sequence[int] | None = None,
    zeta_coeffs: Sequence | None = None,
    mode: str = "exact",
    tol: float = DEFAULT_TOL,
):
    """Assemble theta + zeta from per-component choices.

    perm[i] names the component whose block receives the image of component
    i; it must be a permutation preserving isomorphism classes.  zeta_coeffs
    weights the zeta basis.  Raises when the result is singular.
    """
    st = sdesc.structure
    m = st.count
    n = st.algebra.dim
    perm = tuple(range(m)) if perm is None else tuple(perm)
    if sorted(perm) != list(range(m)):
        raise ValueError(f"perm must be a permutation of 0..{m - 1}")
    for i in range(m):
        if _class_of(sdesc, i) != _class_of(sdesc, perm[i]):
            raise ValueError(
                f"perm sends component {i} to non-isomorphic component {perm[i]}"
            )
    if len(choices) != m:
        raise ValueError(f"expected {m} component choices")
    zc = list(zeta_coeffs or [])
    if len(zc) > sdesc.zeta.dim:
        raise ValueError(f"zeta space has dimension {sdesc.zeta.dim}")
    blocks = []
    numeric = mode == "numeric"
    for i in range(m):
        B = reconstruct(st.parts[i], sdesc.parts[i], choices[i], mode=mode)
        if isinstance(B, np.ndarray):
            numeric = True
        if perm[i] != i:
            T = identification(sdesc, i, perm[i])
            B = (B @ T.to_numpy()) if isinstance(B, np.ndarray) else B * T
        blocks.append(B)
    if numeric:
        out = np.zeros((n, n))
        for i in range(m):
            blk = blocks[i]
            arr = blk.to_numpy() if isinstance(blk, Matrix) else blk
            r0, c0 = st.offsets[i], st.offsets[perm[i]]
            d = st.parts[i].dim
            out[r0:r0 + d, c0:c0 + d] = arr
        for coeff, zmat in zip(zc, sdesc.zeta.basis):
            out = out + float(coeff) * zmat.to_numpy()
        if abs(float(np.linalg.det(out))) <= tol:
            raise ValueError("synthesized map is singular")
        return out
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(m):
        blk = blocks[i]
        r0, c0 = st.offsets[i], st.offsets[perm[i]]
        d = st.parts[i].dim
        for a in range(d):
            for b in range(d):
                rows[r0 + a][c0 + b] = blk[a, b]
    out = Matrix(rows)
    for coeff, zmat in zip(zc, sdesc.zeta.basis):
        out = out + rat(coeff) * zmat
    if out.det() == 0:
        raise ValueError("synthesized map is singular")
    return out
