"""Direct sums, central shift maps, and automorphism synthesis for sums."""

from __future__ import annotations

from fractions import Fraction

import pytest

from lieaut.algebra import center, change_basis, derived_subalgebra, new_lie_algebra
from lieaut.automorphisms import AutDescriptor, ReconstructionChoice, is_automorphism
from lieaut.linalg import Matrix, nilpotency_index
from lieaut.notation import parse_block_pattern, parse_discrete, parse_weyl
from lieaut.sums import (
    direct_sum,
    identification,
    is_isomorphism,
    sum_descriptor,
    synthesize,
    zeta_space,
)


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


def _example_sum():
    return direct_sum([_a2_1(), _a3_1(), _a3_1()])


def test_direct_sum_offsets_and_tensor():
    s = _example_sum()
    assert s.offsets == (0, 2, 5)
    assert s.algebra.dim == 8
    assert s.algebra.tensor.items() == (
        (1, 2, 1, Fraction(1)),
        (4, 5, 3, Fraction(1)),
        (7, 8, 6, Fraction(1)),
    )
    assert s.algebra.label == "A_{2,1}+A_{3,1}+A_{3,1}"


def test_direct_sum_component_subspaces():
    s = _example_sum()
    assert s.component_subspace(0).dim == 2
    assert s.component_subspace(1).contains_vector(
        tuple(Fraction(x) for x in (0, 0, 1, 2, 3, 0, 0, 0)))
    assert s.block_range(2) == range(5, 8)


def test_direct_sum_rejects_empty():
    with pytest.raises(ValueError):
        direct_sum([])


def test_direct_sum_single_part_is_copy():
    s = direct_sum([_sl2()])
    assert s.algebra.tensor == _sl2().tensor


def test_zeta_dimension_formula():
    # dim = (dim L - dim L') * dim Z
    cases = [
        (_example_sum().algebra, 10),
        (new_lie_algebra(4, [(2, 3, 1, 1), (2, 4, 2, 1), (3, 4, 3, -1)],
                         label="A_{4,8}"), 1),
        (_sl2(), 0),
        (new_lie_algebra(3, []), 9),
    ]
    for L, expect in cases:
        zs = zeta_space(L)
        assert len(zs.basis) == expect
        d = derived_subalgebra(L).dim
        z = center(L).dim
        assert len(zs.basis) == (L.dim - d) * z


def test_zeta_basis_entries():
    L = new_lie_algebra(4, [(2, 3, 1, 1), (2, 4, 2, 1), (3, 4, 3, -1)])
    zs = zeta_space(L)
    assert list(zs.basis) == [Matrix.unit(4, 3, 0)]

    ex = _example_sum().algebra
    slots = set()
    for b in zeta_space(ex).basis:
        nz = [(i, j) for i in range(8) for j in range(8) if b.rows[i][j] != 0]
        assert len(nz) == 1
        slots.add(nz[0])
    # rows: non-derived directions, columns: centre directions (0-based)
    assert slots == {(i, j) for i in (1, 3, 4, 6, 7) for j in (2, 5)}


def test_identity_plus_zeta_is_automorphism():
    for L in (_example_sum().algebra,
              new_lie_algebra(4, [(2, 3, 1, 1), (2, 4, 2, 1), (3, 4, 3, -1)])):
        for b in zeta_space(L).basis:
            assert nilpotency_index(b) is not None
            assert is_automorphism(L, Matrix.identity(L.dim) + b)


def test_is_isomorphism_basic():
    sl2 = _sl2()
    assert is_isomorphism(sl2, sl2, Matrix.identity(3)).ok
    p13 = Matrix.diagonal([-1, 1, -1])
    assert is_isomorphism(sl2, sl2, p13).ok
    assert not is_isomorphism(sl2, _so3(), Matrix.identity(3)).ok
    assert not is_isomorphism(sl2, sl2, Matrix.zeros(3)).ok
    assert not is_isomorphism(sl2, _example_sum().algebra, Matrix.identity(3)).ok


def test_is_isomorphism_change_of_basis_witness():
    so3 = _so3()
    S = Matrix([[1, 2, 0], [0, 1, 0], [1, 0, 3]])
    other = change_basis(so3, S)
    T = S.inverse()
    assert is_isomorphism(so3, other, T).ok
    assert not is_isomorphism(so3, other, Matrix.identity(3)).ok


def test_is_isomorphism_numeric():
    sl2 = _sl2()
    import numpy as np

    rep = is_isomorphism(sl2, sl2, np.diag([-1.0, 1.0, -1.0]), mode="numeric")
    assert rep.ok and rep.max_residual <= 1e-9


def _a21_descriptor():
    return AutDescriptor(
        dim=2,
        discrete=(parse_discrete("p1"),),
        outer=(),
        block=parse_block_pattern("(a,1)"),
        families=(),
    )


def _a31_descriptor():
    return AutDescriptor(
        dim=3,
        discrete=(),
        outer=(parse_weyl("E_1^1+E_2^2"),),
        block=parse_block_pattern("(1,S_{23})"),
        families=(),
    )


def _example_descriptor():
    s = _example_sum()
    return sum_descriptor(s, [_a21_descriptor(), _a31_descriptor(),
                              _a31_descriptor()])


def test_sum_descriptor_classes():
    sdesc = _example_descriptor()
    assert sdesc.classes == ((0,), (1, 2))
    assert identification(sdesc, 1, 2) == Matrix.identity(3)

    mixed = direct_sum([_sl2(), _so3()])
    mdesc = sum_descriptor(mixed, [
        AutDescriptor(3, (), (), parse_block_pattern("(S_{123})"), ()),
        AutDescriptor(3, (), (), parse_block_pattern("(S_{123})"), ()),
    ])
    assert mdesc.classes == ((0,), (1,))


def test_sum_descriptor_explicit_identification():
    so3 = _so3()
    S = Matrix([[1, 2, 0], [0, 1, 0], [1, 0, 3]])
    other = change_basis(so3, S)
    s = direct_sum([so3, other])
    desc = AutDescriptor(3, (), (), parse_block_pattern("(S_{123})"), ())
    plain = sum_descriptor(s, [desc, desc])
    assert plain.classes == ((0,), (1,))
    joined = sum_descriptor(s, [desc, desc],
                            identifications=[(0, 1, S.inverse())])
    assert joined.classes == ((0, 1),)
    T = identification(joined, 0, 1)
    assert is_isomorphism(so3, other, T).ok
    with pytest.raises(ValueError):
        sum_descriptor(s, [desc, desc],
                       identifications=[(0, 1, Matrix.identity(3))])


def test_synthesize_block_diagonal():
    sdesc = _example_descriptor()
    shear = Matrix([[1, 0], [5, 1]])
    choices = [
        ReconstructionChoice(scalars={"a": Fraction(3)}),
        ReconstructionChoice(inner={2: Fraction(1)}, blocks={(2, 3): shear}),
        ReconstructionChoice(outer={}, blocks={(2, 3): shear.transpose()}),
    ]
    B = synthesize(sdesc, choices)
    assert is_automorphism(sdesc.structure.algebra, B)
    assert B.rows[0][0] == 3
    # block 2 occupies rows/cols 3..5
    assert B.rows[4][2] != 0 and B.rows[2][5] == 0


def test_synthesize_with_permutation_and_zeta():
    sdesc = _example_descriptor()
    L = sdesc.structure.algebra
    choices = [ReconstructionChoice(scalars={"a": Fraction(2)}),
               ReconstructionChoice(), ReconstructionChoice()]
    zc = [Fraction(0)] * len(sdesc.zeta.basis)
    zc[0] = Fraction(7)
    B = synthesize(sdesc, choices, perm=(0, 2, 1), zeta_coeffs=zc)
    assert is_automorphism(L, B)
    # block 2 now lands in columns 6..8
    assert B.rows[3][6] == 1 and B.rows[3][3] == 0


def test_synthesize_rejects_class_crossing_permutation():
    sdesc = _example_descriptor()
    choices = [ReconstructionChoice(scalars={"a": Fraction(1)}),
               ReconstructionChoice(), ReconstructionChoice()]
    with pytest.raises(ValueError):
        synthesize(sdesc, choices, perm=(1, 0, 2))


def test_synthesize_rejects_singular_result():
    L = new_lie_algebra(3, [(1, 2, 1, 1)], label="A_{2,1}+R")
    s = direct_sum([_a2_1(), new_lie_algebra(1, [], label="R")])
    sdesc = sum_descriptor(s, [
        _a21_descriptor(),
        AutDescriptor(1, (), (), parse_block_pattern("(b)"), ()),
    ])
    # zeta slot on the abelian line is diagonal; coefficient -1 kills the row
    idx = list(sdesc.zeta.basis).index(Matrix.unit(3, 2, 2))
    zc = [Fraction(0)] * len(sdesc.zeta.basis)
    zc[idx] = Fraction(-1)
    choices = [ReconstructionChoice(scalars={"a": Fraction(1)}),
               ReconstructionChoice(scalars={"b": Fraction(1)})]
    with pytest.raises(ValueError):
        synthesize(sdesc, choices, zeta_coeffs=zc)


def test_synthesized_maps_compose():
    sdesc = _example_descriptor()
    L = sdesc.structure.algebra
    b1 = synthesize(sdesc, [ReconstructionChoice(scalars={"a": Fraction(2)}),
                            ReconstructionChoice(inner={2: Fraction(1)}),
                            ReconstructionChoice()])
    b2 = synthesize(sdesc, [ReconstructionChoice(scalars={"a": Fraction(-1)}),
                            ReconstructionChoice(),
                            ReconstructionChoice(inner={3: Fraction(2)})],
                    perm=(0, 2, 1))
    assert is_automorphism(L, b1 * b2)
    assert is_automorphism(L, b2.inverse())
