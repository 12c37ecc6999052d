"""Automorphism checks and generator-based reconstruction.

A candidate map is stored by its matrix B with rows b_i: the image of X_i is
sum_l b_i^l X_l, and vectors transform as rows (v maps to v B).  Composition
"apply Phi then Psi" therefore multiplies as B_Phi * B_Psi.

The defining test: B is an automorphism iff for all i < j

    [B(X_i), B(X_j)] = B([X_i, X_j])    and    det B != 0.

Exact mode does this over the rationals with zero tolerance; numeric mode
compares residuals against a tolerance (default 1e-9).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import LieAlgebra, ad_matrices, ad_matrix, bracket, killing_form
from .linalg import (
    DEFAULT_TOL,
    Matrix,
    is_exact_scalar,
    matexp,
    nilpotency_index,
    rat,
)
from .notation import (
    BlockPattern,
    DiscreteGen,
    ExplicitGen,
    MatrixFamily,
    OuterDer,
    SignMask,
    SignedPermutation,
)


class ClosureCapExceeded(RuntimeError):
    """Raised when a multiplicative closure grows past its element cap."""


@dataclass(frozen=True)
class AutDescriptor:
    """Generators of an automorphism group in table form.

    discrete -- finite generators (sign masks, signed permutations, or
                explicit matrices)
    outer    -- derivations to exponentiate beyond the inner ones
    block    -- continuous block-diagonal template, if any
    families -- explicit parameterized matrix templates replacing the block
                pattern for groups that do not factor neatly
    """

    dim: int
    discrete: tuple[DiscreteGen, ...] = ()
    outer: tuple[OuterDer, ...] = ()
    block: BlockPattern | None = None
    families: tuple[MatrixFamily, ...] = ()
    notes: str = ""


@dataclass
class ReconstructionChoice:
    """Concrete parameter values selecting one element of a described group."""

    inner: Mapping[int, object] = field(default_factory=dict)
    word: tuple[int, ...] = ()
    outer: Mapping[int, object] = field(default_factory=dict)
    scalars: Mapping[str, object] = field(default_factory=dict)
    blocks: Mapping[tuple[int, ...], Matrix] = field(default_factory=dict)
    family: tuple[str, Mapping[str, object]] | None = None


@dataclass
class AutReport:
    ok: bool
    mode: str
    det: object
    max_residual: object
    violations: tuple[tuple[int, int, int], ...]

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class NecessaryReport:
    ok: bool
    mode: str
    trace_residual: object
    killing_residual: object

    def __bool__(self) -> bool:
        return self.ok


def _bracket_float(L: LieAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros(L.dim)
    for i, j, k, c in L.tensor.items():
        coef = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
        if coef != 0.0:
            out[k - 1] += coef * float(c)
    return out


def is_automorphism(
    L: LieAlgebra, B, mode: str = "exact", tol: float = DEFAULT_TOL
) -> AutReport:
    """Check the defining bracket equations and invertibility of B."""
    n = L.dim
    if mode == "exact":
        if not isinstance(B, Matrix):
            raise TypeError("exact mode needs a Matrix with rational entries")
        if B.shape != (n, n):
            raise ValueError(f"matrix shape {B.shape} vs algebra dimension {n}")
        violations = []
        worst = Fraction(0)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                lhs = bracket(L, B.row(i - 1), B.row(j - 1))
                rhs = B.apply(L.tensor.pair_image(i, j))
                for k in range(n):
                    d = lhs[k] - rhs[k]
                    if d != 0:
                        violations.append((i, j, k + 1))
                        if abs(d) > worst:
                            worst = abs(d)
        detv = B.det()
        ok = not violations and detv != 0
        return AutReport(ok, "exact", detv, worst, tuple(violations))
    if mode != "numeric":
        raise ValueError(f"unknown mode {mode!r}")
    arr = B.to_numpy() if isinstance(B, Matrix) else np.asarray(B, dtype=float)
    if arr.shape != (n, n):
        raise ValueError(f"matrix shape {arr.shape} vs algebra dimension {n}")
    violations = []
    worst = 0.0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = _bracket_float(L, arr[i - 1], arr[j - 1])
            img = np.array([float(c) for c in L.tensor.pair_image(i, j)])
            rhs = img @ arr
            diff = np.abs(lhs - rhs)
            worst = max(worst, float(diff.max()) if diff.size else 0.0)
            for k in range(n):
                if diff[k] > tol:
                    violations.append((i, j, k + 1))
    detv = float(np.linalg.det(arr))
    ok = not violations and abs(detv) > tol
    return AutReport(ok, "numeric", detv, worst, tuple(violations))


def trace_vector(L: LieAlgebra) -> tuple[Fraction, ...]:
    """The vector t with t_l = sum_n c_{ln}^n, fixed by every automorphism."""
    return tuple(
        sum((L.tensor.c(l, n, n) for n in range(1, L.dim + 1)), Fraction(0))
        for l in range(1, L.dim + 1)
    )


def necessary_conditions(
    L: LieAlgebra, B, mode: str = "exact", tol: float = DEFAULT_TOL
) -> NecessaryReport:
    """Two checks implied by the bracket equations but cheaper to run:

    the trace vector t must satisfy B t = t (t as a column), and the Killing
    form K must satisfy B K B^T = K.
    """
    n = L.dim
    t = trace_vector(L)
    K = killing_form(L)
    if mode == "exact":
        if not isinstance(B, Matrix):
            raise TypeError("exact mode needs a Matrix with rational entries")
        tr_res = tuple(
            sum((B[i, l] * t[l] for l in range(n)), Fraction(0)) - t[i]
            for i in range(n)
        )
        kil = B * K * B.transpose() - K
        kil_res = max(
            (abs(x) for r in kil.rows for x in r), default=Fraction(0)
        )
        ok = all(x == 0 for x in tr_res) and kil_res == 0
        return NecessaryReport(ok, "exact", max(map(abs, tr_res)), kil_res)
    if mode != "numeric":
        raise ValueError(f"unknown mode {mode!r}")
    arr = B.to_numpy() if isinstance(B, Matrix) else np.asarray(B, dtype=float)
    tf = np.array([float(x) for x in t])
    Kf = K.to_numpy()
    tr_res = float(np.max(np.abs(arr @ tf - tf))) if n else 0.0
    kil_res = float(np.max(np.abs(arr @ Kf @ arr.T - Kf)))
    ok = tr_res <= tol and kil_res <= tol
    return NecessaryReport(ok, "numeric", tr_res, kil_res)


def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    """Leibniz rule D([X,Y]) = [D(X),Y] + [X,D(Y)] on all basis pairs."""
    return not derivation_violations(L, D)


def derivation_violations(L: LieAlgebra, D: Matrix) -> list[tuple[int, int]]:
    n = L.dim
    if D.shape != (n, n):
        raise ValueError(f"matrix shape {D.shape} vs algebra dimension {n}")
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = D.apply(L.tensor.pair_image(i, j))
            e_i = tuple(Fraction(1 if a == i - 1 else 0) for a in range(n))
            e_j = tuple(Fraction(1 if a == j - 1 else 0) for a in range(n))
            rhs = tuple(
                a + b
                for a, b in zip(
                    bracket(L, D.row(i - 1), e_j), bracket(L, e_i, D.row(j - 1))
                )
            )
            if lhs != rhs:
                out.append((i, j))
    return out


def _vec(m: Matrix) -> tuple[Fraction, ...]:
    return tuple(x for r in m.rows for x in r)


def is_inner_derivation(L: LieAlgebra, D: Matrix) -> bool:
    """Membership of D in the span of the adjoint matrices."""
    ads = ad_matrices(L)
    base = Matrix([_vec(c) for c in ads])
    stacked = Matrix(list(base.rows) + [_vec(D)])
    return stacked.rank() == base.rank()


def inner_one_param(L: LieAlgebra, j: int, eps, mode: str = "auto"):
    """The one-parameter inner family exp(eps ad X_j).

    Exact when ad X_j is nilpotent and eps is rational; numeric otherwise.
    """
    C = ad_matrix(L, j)
    exact_ok = is_exact_scalar(eps) and nilpotency_index(C) is not None
    if mode == "auto":
        mode = "exact" if exact_ok else "numeric"
    if mode == "exact":
        if not is_exact_scalar(eps):
            raise ValueError("exact mode needs a rational parameter")
        return matexp(rat(eps) * C, mode="exact")
    if mode != "numeric":
        raise ValueError(f"unknown mode {mode!r}")
    return matexp(float(eps) * C.to_numpy(), mode="numeric")


def _exp_factor(D: Matrix, alpha, mode: str):
    exact_ok = is_exact_scalar(alpha) and nilpotency_index(D) is not None
    if mode == "auto":
        mode = "exact" if exact_ok else "numeric"
    if mode == "exact":
        if not is_exact_scalar(alpha):
            raise ValueError("exact mode needs a rational parameter")
        return matexp(rat(alpha) * D, mode="exact")
    return matexp(float(alpha) * D.to_numpy(), mode="numeric")


def reconstruct(
    L: LieAlgebra,
    desc: AutDescriptor,
    choice: ReconstructionChoice,
    mode: str = "auto",
):
    """Multiply out one group element from a descriptor and a choice.

    Factor order: inner exponentials A_1(eps_1) ... A_R(eps_R), then the
    discrete word, then the outer exponentials in listed order, then the
    block instance (or family instance).  Returns an exact Matrix when every
    factor is exact, otherwise a float array.
    """
    if desc.dim != L.dim:
        raise ValueError("descriptor dimension does not match the algebra")
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    factors = []
    for j in range(1, L.dim + 1):
        eps = choice.inner.get(j, 0)
        if eps == 0:
            continue
        factors.append(inner_one_param(L, j, eps, mode=mode))
    for idx in choice.word:
        if not 0 <= idx < len(desc.discrete):
            raise ValueError(f"discrete generator index {idx} out of range")
        factors.append(desc.discrete[idx].matrix(desc.dim))
    for i, der in enumerate(desc.outer):
        alpha = choice.outer.get(i, 0)
        if alpha == 0:
            continue
        factors.append(_exp_factor(der.matrix(desc.dim), alpha, mode))
    if choice.family is not None:
        fam_name, values = choice.family
        fam = next((f for f in desc.families if f.name == fam_name), None)
        if fam is None:
            raise ValueError(f"descriptor has no family named {fam_name!r}")
        factors.append(fam.instantiate(values))
    elif desc.block is not None:
        factors.append(desc.block.instantiate(choice.scalars, choice.blocks))
    if not factors and mode != "numeric":
        return Matrix.identity(L.dim)
    if mode != "numeric" and all(isinstance(f, Matrix) for f in factors):
        out = Matrix.identity(L.dim)
        for f in factors:
            out = out * f
        return out
    if mode == "exact":
        raise ValueError("exact mode but a factor required numeric exponentiation")
    out = np.eye(L.dim)
    for f in factors:
        arr = f.to_numpy() if isinstance(f, Matrix) else f
        out = out @ arr
    return out


def group_closure(gens: Iterable[Matrix], cap: int = 1024) -> frozenset[Matrix]:
    """Multiplicative closure of invertible exact matrices, identity included.

    Every generator must be invertible, so a finite closure is automatically
    a group.  Raises ClosureCapExceeded past `cap` elements.
    """
    gen_list = list(gens)
    if not gen_list:
        raise ValueError("need at least one generator")
    n = gen_list[0].nrows
    for g in gen_list:
        if not isinstance(g, Matrix) or g.shape != (n, n):
            raise ValueError("generators must be square exact matrices of one size")
        if g.det() == 0:
            raise ValueError("generators must be invertible")
    elements = {Matrix.identity(n)}
    frontier = list(elements)
    while frontier:
        new = []
        for a in frontier:
            for g in gen_list:
                p = a * g
                if p not in elements:
                    elements.add(p)
                    new.append(p)
                    if len(elements) > cap:
                        raise ClosureCapExceeded(
                            f"closure exceeded cap of {cap} elements"
                        )
        frontier = new
    return frozenset(elements)


# -- notation builders -----------------------------------------------------


def sign_mask(dim: int, indices: Iterable[int]) -> Matrix:
    """Diagonal +-1 matrix, -1 at the given 1-based indices."""
    return SignMask(tuple(sorted(indices))).matrix(dim)


def signed_permutation(images: Sequence[int]) -> Matrix:
    """Matrix sending X_i to sign(images[i-1]) * X_{|images[i-1]|}."""
    pairs = tuple((1 if v > 0 else -1, abs(v)) for v in images)
    return SignedPermutation(pairs).matrix()


def weyl_combo(dim: int, terms: Iterable[tuple[int, int, object]]) -> Matrix:
    """Combination of basis maps E_i^j as an exact matrix."""
    return OuterDer(tuple((i, j, rat(c)) for i, j, c in terms)).matrix(dim)
