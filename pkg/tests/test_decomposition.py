"""Normal endomorphisms, Fitting splits, and Krull-Schmidt style matching."""

from __future__ import annotations

from fractions import Fraction

import pytest

from lieaut.algebra import Subspace, new_lie_algebra
from lieaut.decomposition import (
    decompose,
    decomposition_from_components,
    fitting_split,
    is_ideal,
    is_normal,
    krull_schmidt_match,
    normal_endomorphisms,
    rational_eigenvalues,
    validate_decomposition,
)
from lieaut.linalg import Matrix, nilpotency_index
from lieaut.sums import direct_sum


def _a2_1():
    return new_lie_algebra(2, [(1, 2, 1, 1)], label="A_{2,1}")


def _a3_1():
    return new_lie_algebra(3, [(2, 3, 1, 1)], label="A_{3,1}")


def _sl2():
    return new_lie_algebra(3, [(1, 2, 1, 1), (1, 3, 2, -2), (2, 3, 3, 1)],
                           label="A_{3,8}")


def _so3():
    return new_lie_algebra(3, [(1, 2, 3, 1), (1, 3, 2, -1), (2, 3, 1, 1)],
                           label="A_{3,9}")


def _example():
    return direct_sum([_a2_1(), _a3_1(), _a3_1()]).algebra


def test_normal_space_dimensions():
    assert normal_endomorphisms(_a2_1()).dim == 1
    assert normal_endomorphisms(_a3_1()).dim == 3
    assert normal_endomorphisms(_sl2()).dim == 1
    assert normal_endomorphisms(_so3()).dim == 1
    assert normal_endomorphisms(new_lie_algebra(3, [])).dim == 9


def test_normal_space_of_example_contains_projections():
    L = _example()
    ns = normal_endomorphisms(L)
    assert ns.dim == 13
    p1 = Matrix.diagonal([1, 1, 0, 0, 0, 0, 0, 0])
    p2 = Matrix.diagonal([0, 0, 1, 1, 1, 0, 0, 0])
    p3 = Matrix.diagonal([0, 0, 0, 0, 0, 1, 1, 1])
    for p in (p1, p2, p3):
        assert is_normal(L, p)
        assert ns.contains(p)


def test_normal_space_members_are_normal():
    for L in (_a2_1(), _a3_1(), _sl2(), _example()):
        for b in normal_endomorphisms(L).basis:
            assert is_normal(L, b)


def test_diagonal_constraint_excludes_swap_map():
    # swapping the two non-central generators of the Heisenberg algebra
    # satisfies every off-diagonal compatibility equation but fails
    # [phi(X), X] = 0, and its image is not an ideal
    L = _a3_1()
    swap = Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert not is_normal(L, swap)
    assert not normal_endomorphisms(L).contains(swap)
    assert not is_ideal(L, Subspace(3, [(0, 1, 0), (0, 0, 1)]))


def test_scalar_map_is_normal():
    for L in (_a2_1(), _sl2()):
        assert is_normal(L, 3 * Matrix.identity(L.dim))


def test_fitting_split_projection():
    L = _example()
    ker, img = fitting_split(L, Matrix.diagonal([1, 1, 0, 0, 0, 0, 0, 0]))
    # kernel of the projection onto the first block is the other two blocks
    assert ker.dim == 6 and img.dim == 2
    assert img == Subspace(8, [(1, 0, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0)])
    assert is_ideal(L, ker) and is_ideal(L, img)


def test_fitting_split_trivial_cases():
    L = _a3_1()
    assert fitting_split(L, Matrix.identity(3)) is None
    # nilpotent normal map: everything ends up in the kernel
    shear = Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    assert is_normal(L, shear)
    assert fitting_split(L, shear) is None
    with pytest.raises(ValueError):
        fitting_split(L, Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]]))


def test_fitting_split_needs_stabilization():
    # phi with ker(phi) strictly inside ker(phi^2): single Jordan block above
    # an invertible part
    L = direct_sum([_a3_1(), _a2_1()]).algebra
    phi = Matrix.diagonal([0, 0, 0, 1, 1])
    phi = phi + Matrix.unit(5, 1, 2)  # nilpotent inside the first block
    if is_normal(L, phi):
        ker, img = fitting_split(L, phi)
        assert ker.dim == 3 and img.dim == 2


def test_rational_eigenvalues():
    assert rational_eigenvalues(Matrix.diagonal([2, 2, 3])) == [2, 3]
    assert rational_eigenvalues(Matrix([[0, 1], [1, 0]])) == [-1, 1]
    # rotation has no rational eigenvalues
    assert rational_eigenvalues(Matrix([[0, 1], [-1, 0]])) == []
    assert rational_eigenvalues(Matrix.zeros(2)) == [0]


def test_decompose_example_dims_stable_over_seeds():
    L = _example()
    for seed in range(6):
        dec = decompose(L, seed=seed)
        assert sorted(c.dim for c in dec.components) == [2, 3, 3]
        assert validate_decomposition(L, dec) == []
        assert dec.central_flags == (False, False, False)


def test_decompose_indecomposables_stay_whole():
    for L in (_a2_1(), _a3_1(), _sl2(), _so3()):
        dec = decompose(L)
        assert len(dec.components) == 1
        assert dec.components[0] == Subspace.full(L.dim)


def test_decompose_is_idempotent_on_components():
    L = _example()
    dec = decompose(L, seed=0)
    for alg, _ in dec.component_algebras():
        again = decompose(alg, seed=0)
        assert len(again.components) == 1


def test_decompose_after_change_of_basis():
    from lieaut.algebra import change_basis

    base = direct_sum([_a2_1(), _a2_1()]).algebra
    S = Matrix([[1, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 0], [0, 1, 0, 1]])
    assert S.det() != 0
    L = change_basis(base, S)
    dec = decompose(L, seed=3)
    assert sorted(c.dim for c in dec.components) == [2, 2]
    assert validate_decomposition(L, dec) == []
    for alg, _ in dec.component_algebras():
        # each piece is a two-dimensional non-abelian algebra
        assert alg.dim == 2 and len(alg.tensor.items()) == 1


def test_decompose_central_line():
    L = new_lie_algebra(4, [(2, 3, 1, 1)], label="A_{3,1}+R")
    dec = decompose(L, seed=0)
    dims = sorted(c.dim for c in dec.components)
    assert dims == [1, 3]
    flags = {c.dim: f for c, f in zip(dec.components, dec.central_flags)}
    assert flags[1] is True and flags[3] is False


def test_lemma_dichotomy_on_indecomposables():
    # on an indecomposable algebra every normal endomorphism is either
    # invertible or nilpotent
    for L in (_a2_1(), _a3_1(), _sl2(), _so3(),
              new_lie_algebra(4, [(2, 3, 1, 1), (2, 4, 2, 1), (3, 4, 3, -1)])):
        for b in normal_endomorphisms(L).basis:
            assert b.det() != 0 or nilpotency_index(b) is not None


def test_decomposition_from_components_validation():
    L = _example()
    with pytest.raises(ValueError):
        decomposition_from_components(L, [Subspace.full(8), Subspace.full(8)])
    with pytest.raises(ValueError):
        decomposition_from_components(
            new_lie_algebra(4, [(2, 3, 1, 1)]),
            [Subspace(4, [(0, 1, 0, 0)]),
             Subspace(4, [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])],
        )


def test_projection_identities():
    L = _example()
    dec = decompose(L, seed=1)
    n = L.dim
    total = Matrix.zeros(n)
    for i, p in enumerate(dec.projections):
        assert p * p == p
        total = total + p
        for j, q in enumerate(dec.projections):
            if i != j:
                assert (p * q).is_zero()
    assert total == Matrix.identity(n)


def test_krull_schmidt_central_shift():
    L = new_lie_algebra(4, [(2, 3, 1, 1)], label="A_{3,1}+R")
    dec_a = decomposition_from_components(L, [
        Subspace(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]),
        Subspace(4, [(0, 0, 0, 1)]),
    ])
    dec_b = decomposition_from_components(L, [
        Subspace(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]),
        Subspace(4, [(1, 0, 0, 1)]),
    ])
    rep = krull_schmidt_match(L, dec_a, dec_b)
    assert rep.ok
    assert rep.pairing == (0, 1)
    assert rep.unique is False
    for cond in rep.conditions:
        assert all(cond.values())
    assert all(rep.exchange_ok)
    # the matched line components differ as subspaces yet are paired
    assert dec_a.components[1] != dec_b.components[1]


def test_krull_schmidt_centreless_sum_is_unique():
    L = direct_sum([_sl2(), _so3()]).algebra
    dec = decompose(L, seed=0)
    assert sorted(c.dim for c in dec.components) == [3, 3]
    crossed = decomposition_from_components(
        L, [dec.components[1], dec.components[0]]
    )
    rep = krull_schmidt_match(L, dec, crossed)
    assert rep.ok and rep.unique is True
    assert sorted(rep.pairing) == [0, 1]
    self_rep = krull_schmidt_match(L, dec, dec)
    assert self_rep.pairing == (0, 1)


def test_krull_schmidt_count_mismatch():
    L = new_lie_algebra(4, [(2, 3, 1, 1)])
    dec_a = decomposition_from_components(L, [Subspace.full(4)])
    dec_b = decompose(L, seed=0)
    with pytest.raises(ValueError):
        krull_schmidt_match(L, dec_a, dec_b)
