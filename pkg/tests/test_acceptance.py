"""Acceptance gate.

Each criterion is one test that prints a single PASS/FAIL line (visible with
pytest -s); unexpected exceptions are folded into the FAIL line so the line
always appears.  Everything here runs exact unless a check is explicitly
numeric.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lieaut.algebra import (
    Subspace,
    bracket,
    center,
    derived_subalgebra,
    new_lie_algebra,
)
from lieaut.automorphisms import (
    ReconstructionChoice,
    group_closure,
    is_automorphism,
    necessary_conditions,
)
from lieaut.catalog import (
    b2_matrix,
    descriptor,
    entries,
    instantiate,
    sample_automorphism,
    verify_catalog,
)
from lieaut.decomposition import (
    decompose,
    decomposition_from_components,
    krull_schmidt_match,
    normal_endomorphisms,
    validate_decomposition,
)
from lieaut.linalg import Matrix, nilpotency_index
from lieaut.notation import SignMask
from lieaut.sums import direct_sum, sum_descriptor, synthesize, zeta_space

F = Fraction


def _finish(label: str, failures: list[str]) -> None:
    if failures:
        line = f"FAIL {label}: " + "; ".join(failures[:6])
    else:
        line = f"PASS {label}"
    print(line)
    assert not failures, line


# -- criterion 1 -----------------------------------------------------------


def test_criterion_1_catalog_tables():
    failures: list[str] = []
    try:
        rep = verify_catalog(samples_per_row=5, seed=0)
        failures.extend(c.line() for c in rep.failures())
        kinds = {c.check.split("[")[0] for c in rep.checks}
        for needed in ("jacobi", "discrete", "derivation", "sample"):
            if not any(k.startswith(needed) for k in kinds):
                failures.append(f"missing check kind {needed}")
        if not any("numeric" in c.check for c in rep.checks):
            failures.append("no numeric checks ran")
    except Exception as exc:
        failures.append(f"unexpected error: {exc!r}")
    _finish("criterion 1: catalog rows verify exactly and numerically",
            failures)


# -- criterion 2 -----------------------------------------------------------


def _tilde_families(eps, a, b):
    B1 = Matrix([
        [eps * a, 0, 0, 0],
        [0, eps, 0, 0],
        [0, 0, a, 0],
        [b, 0, 0, 1],
    ])
    B2 = Matrix([
        [-eps * a, 0, 0, 0],
        [0, 0, a, 0],
        [0, eps, 0, 0],
        [-b, 0, 0, -1],
    ])
    return B1, B2


def test_criterion_2_a48_families_and_closure():
    failures: list[str] = []
    try:
        L = instantiate("A_{4,8}")
        for eps in (F(1), F(-1)):
            for a in (F(1), F(-2), F(1, 3)):
                for b in (F(0), F(5)):
                    for tag, B in zip(("B1~", "B2~"),
                                      _tilde_families(eps, a, b)):
                        rep = is_automorphism(L, B)
                        if not (rep.ok and rep.det != 0):
                            failures.append(
                                f"{tag} eps={eps} a={a} b={b} rejected")
        gens = [g.matrix(4) for g in descriptor("A_{4,8}").discrete]
        G = group_closure(gens)
        if len(G) != 8:
            failures.append(f"discrete closure has {len(G)} elements, not 8")
        for g in G:
            if not is_automorphism(L, g).ok:
                failures.append("closure element is not an automorphism")
    except Exception as exc:
        failures.append(f"unexpected error: {exc!r}")
    _finish("criterion 2: A_{4,8} parameter families and order-8 closure",
            failures)


# -- criterion 3 -----------------------------------------------------------

_DIMS = (2, 3, 3)
_OFFSETS = (0, 2, 5)


def _example_sum():
    return direct_sum([instantiate("A_{2,1}"), instantiate("A_{3,1}"),
                       instantiate("A_{3,1}")])


def _aut_shape(d):
    # occupied slots of a component automorphism, relative to its block
    if d == 2:
        return {(0, 0), (1, 0), (1, 1)}
    return {(0, 0)} | {(a, b) for a in (1, 2) for b in (0, 1, 2)}


def _expected_slots(perm):
    out = set()
    for i, d in enumerate(_DIMS):
        r0, c0 = _OFFSETS[i], _OFFSETS[perm[i]]
        out |= {(r0 + a, c0 + b) for a, b in _aut_shape(d)}
    out |= {(r, c) for r in (1, 3, 4, 6, 7) for c in (2, 5)}
    return out


_FAMILY1_SLOTS = {
    (0, 0), (1, 0), (1, 1), (1, 2), (1, 5),
    (2, 2), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (4, 4), (3, 5), (4, 5),
    (5, 5), (6, 5), (6, 6), (6, 7), (7, 5), (7, 6), (7, 7), (6, 2), (7, 2),
}


def _sl2_block(rng):
    m = Matrix.identity(2)
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(2)
        shear = Matrix.identity(2) + F(rng.randint(-2, 2)) * Matrix.unit(2, i, 1 - i)
        m = m * shear
    return m


def _component_choice(rng, d):
    if d == 2:
        # ad X_2 is not nilpotent here, so only the j=1 inner stays exact
        return ReconstructionChoice(
            inner={1: F(rng.randint(-2, 2))},
            word=(0,) * rng.randint(0, 1),
            scalars={"a": F(rng.choice((1, -1, 2, -2, 3)), rng.choice((1, 2)))},
        )
    return ReconstructionChoice(
        inner={2: F(rng.randint(-2, 2)), 3: F(rng.randint(-2, 2))},
        word=(0,) * rng.randint(0, 1),
        blocks={(2, 3): _sl2_block(rng)},
    )


def _draw(sdesc, rng, perm):
    for _ in range(40):
        choices = [_component_choice(rng, d) for d in _DIMS]
        zc = [F(rng.choice((0, 1, -1, 2, -2))) for _ in range(10)]
        try:
            return synthesize(sdesc, choices, perm=perm, zeta_coeffs=zc)
        except ValueError:
            continue
    raise RuntimeError("no nonsingular draw in 40 tries")


def test_criterion_3_direct_sum_example():
    failures: list[str] = []
    try:
        s = _example_sum()
        L = s.algebra
        if L.tensor.items() != ((1, 2, 1, F(1)), (4, 5, 3, F(1)),
                                (7, 8, 6, F(1))):
            failures.append("sum bracket table is wrong")
        e = [tuple(F(1 if c == r else 0) for c in range(8)) for r in range(8)]
        if center(L) != Subspace(8, [e[2], e[5]]):
            failures.append("centre is not span{X_3, X_6}")
        if derived_subalgebra(L) != Subspace(8, [e[0], e[2], e[5]]):
            failures.append("derived algebra is not span{X_1, X_3, X_6}")
        for seed in range(6):
            dec = decompose(L, seed=seed)
            if sorted(c.dim for c in dec.components) != [2, 3, 3]:
                failures.append(f"seed {seed} decomposes into wrong dims")
            if validate_decomposition(L, dec):
                failures.append(f"seed {seed} decomposition invalid")
        if zeta_space(L).dim != 10:
            failures.append("zeta space dimension is not 10")

        descs = [descriptor("A_{2,1}"), descriptor("A_{3,1}"),
                 descriptor("A_{3,1}")]
        sdesc = sum_descriptor(s, descs)
        if sdesc.classes != ((0,), (1, 2)):
            failures.append(f"classes {sdesc.classes}")
        if _expected_slots((0, 1, 2)) != _FAMILY1_SLOTS:
            failures.append("frozen family-1 slot set disagrees")

        rng = random.Random(20260823)
        for perm in ((0, 1, 2), (0, 2, 1)):
            expected = _expected_slots(perm)
            seen = set()
            for _ in range(30):
                B = _draw(sdesc, rng, perm)
                slots = {(i, j) for i in range(8) for j in range(8)
                         if B[i, j] != 0}
                if not slots <= expected:
                    failures.append(f"perm {perm} draw leaves the pattern: "
                                    f"{sorted(slots - expected)[:4]}")
                    break
                seen |= slots
                rep = is_automorphism(L, B)
                if not (rep.ok and rep.det != 0):
                    failures.append(f"perm {perm} draw rejected")
                    break
            else:
                if seen != expected:
                    failures.append(f"perm {perm} slots never hit: "
                                    f"{sorted(expected - seen)[:4]}")
        for _ in range(10):
            perm = rng.choice(((0, 1, 2), (0, 2, 1)))
            B = _draw(sdesc, rng, perm)
            rep = is_automorphism(L, B)
            if not (rep.ok and rep.det != 0):
                failures.append("random synthesized draw rejected")
    except Exception as exc:
        failures.append(f"unexpected error: {exc!r}")
    _finish("criterion 3: eight-dimensional sum, its decomposition and "
            "two-shape automorphisms", failures)


# -- criterion 4 -----------------------------------------------------------


def test_criterion_4_a517_case_matrix():
    failures: list[str] = []
    try:
        fam_pts = [(2, 3, 5), (1, -1, 1), (2, -2, -1), (1, 1, 1), (2, 2, -1)]
        vals = {"a": F(2), "b": F(-1), "g": F(1), "h": F(3), "k1": F(1),
                "k2": F(0), "k3": F(0), "k4": F(-2)}
        # the generic family is valid at every parameter point, including
        # those whose descriptor upgrades to the larger case
        b1 = descriptor("A_{5,17}", {"u": 2, "v": 3, "w": 5}).families[0]
        B = b1.instantiate(vals)
        if B.det() == 0:
            failures.append("B1 instance is singular")
        for u, v, w in fam_pts:
            params = {"u": u, "v": v, "w": w}
            L = instantiate("A_{5,17}", params)
            if not is_automorphism(L, B).ok:
                failures.append(f"B1 rejected at {params}")

        def expect(B, params, ok, tag):
            L = instantiate("A_{5,17}", params)
            if is_automorphism(L, B).ok != ok:
                failures.append(f"{tag} at {params} expected ok={ok}")

        expect(b2_matrix(1), {"u": 1, "v": -1, "w": 1}, True, "B2")
        expect(b2_matrix(-1), {"u": 2, "v": -2, "w": -1}, True, "B2")
        expect(b2_matrix(1), {"u": 1, "v": -2, "w": 1}, False, "B2")

        b3 = descriptor("A_{5,17}", {"u": 1, "v": 1, "w": 1}).families[0]
        probe = b3.instantiate({"a": F(1), "b": F(0), "c": F(0), "d": F(1),
                                "e": F(0), "f": F(2), "g": F(1), "h": F(0),
                                "k1": F(0), "k2": F(0), "k3": F(0),
                                "k4": F(0)})
        if probe.det() == 0:
            failures.append("B3 probe is singular")
        expect(probe, {"u": 1, "v": 1, "w": 1}, True, "B3")
        expect(probe, {"u": 1, "v": 2, "w": 1}, False, "B3")

        mask = SignMask((2, 4, 5)).matrix(5)
        expect(mask, {"u": 0, "v": 0, "w": 2}, True, "p245")
        expect(mask, {"u": 1, "v": 1, "w": 2}, False, "p245")
    except Exception as exc:
        failures.append(f"unexpected error: {exc!r}")
    _finish("criterion 4: five-dimensional family case matrix", failures)


# -- criterion 5 -----------------------------------------------------------


def test_criterion_5_decomposition_matching():
    failures: list[str] = []
    try:
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
        if not rep.ok:
            failures.append("central shift pairing not found")
        if not all(all(c.values()) for c in rep.conditions):
            failures.append("a pairing condition failed")
        if not all(rep.exchange_ok):
            failures.append("an exchange decomposition is singular")
        if rep.unique:
            failures.append("centre-shifted pairing claimed unique")
        if dec_a.components[1] == dec_b.components[1]:
            failures.append("shifted components unexpectedly equal")

        M = direct_sum([instantiate("A_{3,8}"), instantiate("A_{3,9}")]).algebra
        runs = [decompose(M, seed=s) for s in (0, 7)]
        comps = [sorted(c.basis for c in r.components) for r in runs]
        if comps[0] != comps[1]:
            failures.append("centreless decomposition depends on the seed")
        rep2 = krull_schmidt_match(M, runs[0], runs[1])
        if not (rep2.ok and rep2.unique and all(rep2.exchange_ok)):
            failures.append("centreless matching not unique")
    except Exception as exc:
        failures.append(f"unexpected error: {exc!r}")
    _finish("criterion 5: decomposition matching with exchange and "
            "uniqueness flags", failures)


# -- criterion 6 -----------------------------------------------------------


def _first_point_algebras():
    out = []
    for e in entries():
        pts = e.grid_points()
        params = pts[0] if pts else {}
        out.append((e, params, instantiate(e.name, params)))
    return out


def test_criterion_6_property_suites():
    failures: list[str] = []
    try:
        algebras = _first_point_algebras()

        # instantiation re-validates Jacobi on every grid point
        for e in entries():
            for pt in e.grid_points():
                instantiate(e.name, pt)

        rng = random.Random(99)
        pool = [L for _, _, L in algebras]
        for _ in range(1000):
            L = rng.choice(pool)
            x = tuple(F(rng.randint(-3, 3), rng.choice((1, 2)))
                      for _ in range(L.dim))
            y = tuple(F(rng.randint(-3, 3), rng.choice((1, 2)))
                      for _ in range(L.dim))
            lhs = bracket(L, x, y)
            rhs = tuple(-c for c in bracket(L, y, x))
            if lhs != rhs:
                failures.append("antisymmetry broke")
                break

        for seed in (0, 1):
            dec = decompose(_example_sum().algebra, seed=seed)
            total = Matrix.zeros(8)
            for i, p in enumerate(dec.projections):
                if p * p != p:
                    failures.append("projection not idempotent")
                total = total + p
                for j, q in enumerate(dec.projections):
                    if i != j and not (p * q).is_zero():
                        failures.append("projections not orthogonal")
            if total != Matrix.identity(8):
                failures.append("projections do not sum to the identity")

        checked = 0
        for e, params, L in algebras:
            for s in range(8):
                B = sample_automorphism(e.name, params, spin=s)
                if not necessary_conditions(L, B).ok:
                    failures.append(f"necessary conditions broke on {e.name}")
                checked += 1
        if checked < 200:
            failures.append(f"only {checked} necessary-condition checks")

        for e, params, L in algebras:
            zs = zeta_space(L)
            expect = (L.dim - derived_subalgebra(L).dim) * center(L).dim
            if zs.dim != expect:
                failures.append(f"zeta dimension formula broke on {e.name}")

        for e, params, L in algebras:
            if len(decompose(L).components) != 1:
                failures.append(f"{e.name} unexpectedly decomposes")
                continue
            for b in normal_endomorphisms(L).basis:
                if b.det() == 0 and nilpotency_index(b) is None:
                    failures.append(
                        f"{e.name} has a normal map neither invertible "
                        f"nor nilpotent")
    except Exception as exc:
        failures.append(f"unexpected error: {exc!r}")
    _finish("criterion 6: randomized and structural property suites",
            failures)
