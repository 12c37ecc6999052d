"""Splitting algebras into direct sums of indecomposable ideals.

The workhorse is the space of normal endomorphisms: linear maps phi with

    phi([X, Y]) = [phi(X), Y] = [X, phi(Y)]   for all X, Y.

The stabilized kernel and image of a singular-but-nonzero normal map are
complementary ideals, so hunting for splittings reduces to hunting for such
maps.  A random combination of basis maps is usually invertible, which says
nothing, so every sweep candidate is retried after shifting by each of its
rational eigenvalues; the shifted map is still normal and is singular by
construction whenever the eigenvalue is genuine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    LieAlgebra,
    Subspace,
    bracket,
    center,
    derived_subalgebra,
    subalgebra_on,
)
from .linalg import Matrix, Vec, charpoly, rational_roots
from .sums import is_isomorphism


@dataclass(frozen=True)
class NormalEndoSpace:
    """Canonical basis of the normal endomorphisms of an algebra."""

    algebra: LieAlgebra
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, M: Matrix) -> bool:
        if not self.basis:
            return M.is_zero()
        rows = [_vec(b) for b in self.basis]
        base = Matrix(rows)
        stacked = Matrix(rows + [_vec(M)])
        return stacked.rank() == base.rank()


def _vec(m: Matrix) -> Vec:
    return tuple(x for r in m.rows for x in r)


def _unvec(v: Vec, n: int) -> Matrix:
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)])


def normal_endomorphisms(L: LieAlgebra) -> NormalEndoSpace:
    """Solve the two-sided compatibility equations for a matrix m.

    For every i < j and every component n:

        sum_k c_{ij}^k m_k^n = sum_l c_{lj}^n m_i^l = sum_l c_{il}^n m_j^l,

    plus the diagonal constraints [phi(X_i), X_i] = 0, which the off-diagonal
    pairs do not imply.
    """
    R = L.dim
    c = L.tensor.c
    rows = []
    for i in range(1, R + 1):
        for j in range(i + 1, R + 1):
            for n in range(1, R + 1):
                row_a = [Fraction(0)] * (R * R)
                row_b = [Fraction(0)] * (R * R)
                for k in range(1, R + 1):
                    coef = c(i, j, k)
                    if coef != 0:
                        row_a[(k - 1) * R + (n - 1)] += coef
                        row_b[(k - 1) * R + (n - 1)] += coef
                for l in range(1, R + 1):
                    coef = c(l, j, n)
                    if coef != 0:
                        row_a[(i - 1) * R + (l - 1)] -= coef
                    coef2 = c(i, l, n)
                    if coef2 != 0:
                        row_b[(j - 1) * R + (l - 1)] -= coef2
                rows.append(row_a)
                rows.append(row_b)
    for i in range(1, R + 1):
        for n in range(1, R + 1):
            row_d = [Fraction(0)] * (R * R)
            for l in range(1, R + 1):
                coef = c(l, i, n)
                if coef != 0:
                    row_d[(i - 1) * R + (l - 1)] += coef
            if any(x != 0 for x in row_d):
                rows.append(row_d)
    if rows:
        sols = Matrix(rows).right_nullspace()
    else:
        sols = [r for r in Matrix.identity(R * R).rows]
    canon = Subspace(R * R, sols)
    return NormalEndoSpace(L, tuple(_unvec(v, R) for v in canon.basis))


def is_normal(L: LieAlgebra, M: Matrix) -> bool:
    """Direct check of both compatibility equalities on basis pairs."""
    n = L.dim
    if M.shape != (n, n):
        raise ValueError(f"matrix shape {M.shape} vs algebra dimension {n}")
    zero = (Fraction(0),) * n
    for i in range(1, n + 1):
        e_i = tuple(Fraction(1 if a == i - 1 else 0) for a in range(n))
        if bracket(L, M.row(i - 1), e_i) != zero:
            return False
        for j in range(i + 1, n + 1):
            e_j = tuple(Fraction(1 if a == j - 1 else 0) for a in range(n))
            img = M.apply(L.tensor.pair_image(i, j))
            if img != bracket(L, M.row(i - 1), e_j):
                return False
            if img != bracket(L, e_i, M.row(j - 1)):
                return False
    return True


def fitting_split(L: LieAlgebra, phi: Matrix) -> tuple[Subspace, Subspace] | None:
    """Stabilized kernel/image pair of a normal map, or None.

    Doubles the power until kernel and image stop moving; returns the pair
    (kernel, image) when both are proper, None when phi is invertible or
    nilpotent on the whole space.
    """
    if not is_normal(L, phi):
        raise ValueError("fitting_split needs a normal endomorphism")
    n = L.dim
    power = phi
    while True:
        ker = Subspace(n, power.left_nullspace())
        img = Subspace(n, power.rows)
        doubled = power * power
        ker2 = Subspace(n, doubled.left_nullspace())
        img2 = Subspace(n, doubled.rows)
        if ker == ker2 and img == img2:
            break
        power = doubled
    if ker.dim == 0 or ker.dim == n:
        return None
    return ker, img


def rational_eigenvalues(M: Matrix) -> list[Fraction]:
    return rational_roots(charpoly(M))


@dataclass(frozen=True)
class Decomposition:
    """A direct decomposition of an algebra into ideals.

    components are ambient subspaces, projections are the ambient matrices
    of the coordinate projections onto each component, and central_flags
    mark components lying inside the centre.
    """

    algebra: LieAlgebra
    components: tuple[Subspace, ...]
    projections: tuple[Matrix, ...]
    central_flags: tuple[bool, ...]

    def component_algebras(self) -> list[tuple[LieAlgebra, Matrix]]:
        return [
            subalgebra_on(self.algebra, comp, label=f"component {i + 1}")
            for i, comp in enumerate(self.components)
        ]


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    n = L.dim
    for i in range(n):
        e_i = tuple(Fraction(1 if a == i else 0) for a in range(n))
        for row in S.basis:
            if not S.contains_vector(bracket(L, e_i, row)):
                return False
    return True


def decomposition_from_components(
    L: LieAlgebra, spaces: Sequence[Subspace]
) -> Decomposition:
    """Assemble projections and flags after validating directness."""
    n = L.dim
    if sum(s.dim for s in spaces) != n:
        raise ValueError("component dimensions do not add up to the algebra")
    rows = []
    for s in spaces:
        if not is_ideal(L, s):
            raise ValueError("every component must be an ideal")
        rows.extend(s.basis)
    P = Matrix(rows)
    if P.det() == 0:
        raise ValueError("components are not independent")
    P_inv = P.inverse()
    projections = []
    offset = 0
    for s in spaces:
        sel = Matrix.diagonal(
            [1 if offset <= a < offset + s.dim else 0 for a in range(n)]
        )
        projections.append(P_inv * sel * P)
        offset += s.dim
    Z = center(L)
    flags = tuple(Z.contains(s) for s in spaces)
    return Decomposition(L, tuple(spaces), tuple(projections), flags)


def validate_decomposition(L: LieAlgebra, dec: Decomposition) -> list[str]:
    """Empty list when the decomposition is internally consistent."""
    issues = []
    n = L.dim
    if sum(c.dim for c in dec.components) != n:
        issues.append("component dimensions do not sum to the algebra dimension")
    for idx, comp in enumerate(dec.components):
        if not is_ideal(L, comp):
            issues.append(f"component {idx + 1} is not an ideal")
    total = Matrix.zeros(n)
    for idx, (comp, proj) in enumerate(zip(dec.components, dec.projections)):
        if proj * proj != proj:
            issues.append(f"projection {idx + 1} is not idempotent")
        if Subspace(n, proj.rows) != comp:
            issues.append(f"projection {idx + 1} does not land on component {idx + 1}")
        total = total + proj
        for jdx, other in enumerate(dec.projections):
            if jdx != idx and not (proj * other).is_zero():
                issues.append(f"projections {idx + 1} and {jdx + 1} overlap")
    if total != Matrix.identity(n):
        issues.append("projections do not sum to the identity")
    Z = center(L)
    for idx, (comp, flag) in enumerate(zip(dec.components, dec.central_flags)):
        if flag != Z.contains(comp):
            issues.append(f"central flag {idx + 1} is wrong")
    return issues


def _sweep_candidates(space: NormalEndoSpace, seed: int, budget: int):
    basis = space.basis
    d = len(basis)
    for b in basis:
        yield b
    for i in range(d):
        for j in range(i + 1, d):
            yield basis[i] + basis[j]
    rng = random.Random(seed)
    nonzero = [x for x in range(-3, 4) if x != 0]
    for _ in range(budget):
        coeffs = [rng.choice(nonzero) for _ in range(d)]
        combo = Matrix.zeros(basis[0].nrows)
        for c, b in zip(coeffs, basis):
            combo = combo + c * b
        yield combo


def _find_split(
    L: LieAlgebra, seed: int, budget: int
) -> tuple[Subspace, Subspace] | None:
    space = normal_endomorphisms(L)
    for phi in _sweep_candidates(space, seed, budget):
        split = fitting_split(L, phi)
        if split is not None:
            return split
        for lam in rational_eigenvalues(phi):
            if lam == 0:
                continue
            shifted = phi - lam * Matrix.identity(L.dim)
            split = fitting_split(L, shifted)
            if split is not None:
                return split
    return None


def _split_ambient(
    L: LieAlgebra,
    local: LieAlgebra,
    embed: Matrix,
    seed: int,
    budget: int,
    out: list[Subspace],
):
    split = _find_split(local, seed, budget)
    if split is None:
        out.append(Subspace(embed.ncols, embed.rows))
        return
    for part in split:
        sub_alg, basis = subalgebra_on(local, part)
        _split_ambient(L, sub_alg, basis * embed, seed, budget, out)


def decompose(L: LieAlgebra, seed: int = 0, sweep_budget: int = 64) -> Decomposition:
    """Best-effort direct decomposition into indecomposable ideals.

    Deterministic for a fixed seed.  The sweep tries every basis map of the
    normal endomorphism space, every pairwise sum, and `sweep_budget` random
    combinations with coefficients in {-3..3} minus 0, each additionally
    shifted by its rational eigenvalues.
    """
    pieces: list[Subspace] = []
    _split_ambient(L, L, Matrix.identity(L.dim), seed, sweep_budget, pieces)
    return decomposition_from_components(L, pieces)


@dataclass
class MatchReport:
    """Outcome of matching two decompositions component by component."""

    ok: bool
    pairing: tuple[int, ...]
    conditions: tuple[dict, ...]
    witnesses: tuple[Matrix, ...]
    exchange_ok: tuple[bool, ...]
    unique: bool

    def __bool__(self) -> bool:
        return self.ok


def _component_derived(L: LieAlgebra, comp: Subspace) -> Subspace:
    rows = []
    for a in range(comp.dim):
        for b in range(a + 1, comp.dim):
            rows.append(bracket(L, comp.basis[a], comp.basis[b]))
    return Subspace(L.dim, rows)


def _complement_center(L: LieAlgebra, dec: Decomposition, skip: int) -> Subspace:
    rows = []
    for k, comp in enumerate(dec.components):
        if k != skip:
            rows.extend(comp.basis)
    if not rows:
        return Subspace.zero(L.dim)
    D = Subspace(L.dim, rows)
    alg, emb = subalgebra_on(L, D)
    Z = center(alg)
    return Subspace(L.dim, [(Matrix([zr]) * emb).rows[0] for zr in Z.basis])


def _image_subspace(space_rows: Sequence[Vec], proj: Matrix, n: int) -> Subspace:
    return Subspace(n, [proj.apply(r) for r in space_rows])


def _pair_conditions(
    L: LieAlgebra, dec_a: Decomposition, dec_b: Decomposition, i: int, j: int
):
    n = L.dim
    M_i, N_j = dec_a.components[i], dec_b.components[j]
    cond = {}
    cond["projection_onto"] = (
        _image_subspace(N_j.basis, dec_a.projections[i], n) == M_i
    )
    cond["projection_back"] = (
        _image_subspace(M_i.basis, dec_b.projections[j], n) == N_j
    )
    cond["derived_equal"] = _component_derived(L, N_j) == _component_derived(L, M_i)
    cond["central_shift"] = M_i.add(_complement_center(L, dec_a, i)).contains(N_j)
    witness = None
    if M_i.dim == N_j.dim:
        alg_m, _ = subalgebra_on(L, M_i)
        alg_n, _ = subalgebra_on(L, N_j)
        rows = []
        for r in N_j.basis:
            img = dec_a.projections[i].apply(r)
            try:
                rows.append(M_i.coords_of(img))
            except ValueError:
                rows = None
                break
        if rows is not None:
            T = Matrix(rows)
            if T.det() != 0 and is_isomorphism(alg_n, alg_m, T).ok:
                witness = T
    cond["isomorphic"] = witness is not None
    return cond, witness


def _exchange_prefixes(
    L: LieAlgebra,
    dec_a: Decomposition,
    dec_b: Decomposition,
    pairing: tuple[int, ...],
) -> tuple[bool, ...]:
    # prefix exchange: the whole algebra splits as the first k components of
    # one decomposition plus the matched tail of the other, for every k
    r = len(dec_a.components)
    out = []
    for k in range(1, r):
        rows = []
        for i in range(k):
            rows.extend(dec_a.components[i].basis)
        for i in range(k, r):
            rows.extend(dec_b.components[pairing[i]].basis)
        out.append(len(rows) == L.dim and Matrix(rows).det() != 0)
    return tuple(out)


def krull_schmidt_match(
    L: LieAlgebra, dec_a: Decomposition, dec_b: Decomposition
) -> MatchReport:
    """Pair up the components of two decompositions of the same algebra.

    Raises ValueError naming the first unmatched component if no perfect
    pairing exists (which signals an invalid input decomposition).
    """
    if len(dec_a.components) != len(dec_b.components):
        raise ValueError(
            f"component counts differ: {len(dec_a.components)} vs "
            f"{len(dec_b.components)}"
        )
    m = len(dec_a.components)
    table = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            table[i][j] = _pair_conditions(L, dec_a, dec_b, i, j)
    admissible = [
        [j for j in range(m) if all(table[i][j][0].values())] for i in range(m)
    ]
    for i in range(m):
        if not admissible[i]:
            raise ValueError(f"component {i + 1} of the first decomposition "
                             f"matches nothing in the second")

    assignment = [None] * m

    def backtrack(i: int, used: set[int]) -> bool:
        if i == m:
            return True
        for j in admissible[i]:
            if j not in used:
                assignment[i] = j
                if backtrack(i + 1, used | {j}):
                    return True
        return False

    if not backtrack(0, set()):
        raise ValueError("no perfect component pairing exists")
    pairing = tuple(assignment)
    conditions = tuple(table[i][pairing[i]][0] for i in range(m))
    witnesses = tuple(table[i][pairing[i]][1] for i in range(m))
    exchange = _exchange_prefixes(L, dec_a, dec_b, pairing)
    unique = center(L).dim == 0 or derived_subalgebra(L) == Subspace.full(L.dim)
    ok = all(exchange)
    return MatchReport(ok, pairing, conditions, witnesses, exchange, unique)
