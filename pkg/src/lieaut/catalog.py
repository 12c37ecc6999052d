"""Catalog of automorphism-group descriptions for low-dimensional algebras.

Each entry records a named real Lie algebra (dimension 2 to 4, plus the
five-dimensional family A_{5,17}^{u,v,w}) by its structure constants,
parameter constraints, and the generators of its automorphism group:
discrete generators, extra outer derivations, and a continuous
block-diagonal part.  Structure constants may depend affinely on the
entry's parameters, e.g. "u+1" or "-w".

The A_{5,17} family does not fit the block-pattern notation; its continuous
part is stored as explicit parameterized matrix templates (B1/B3) selected
by case logic over (u, v, w), with an extra discrete generator (B2 or
p_{245}) in the special cases.
"""

from __future__ import annotations

import math
import random
import re
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import LieAlgebra, ad_matrix, new_lie_algebra
from .automorphisms import (
    AutDescriptor,
    ReconstructionChoice,
    inner_one_param,
    is_automorphism,
    is_derivation,
    is_inner_derivation,
    reconstruct,
)
from .linalg import Matrix, matexp, nilpotency_index, rat
from .notation import (
    BlockPattern,
    DiscreteGen,
    ExplicitGen,
    MatrixFamily,
    OuterDer,
    SignMask,
    SignedPermutation,
)
from .notation import parse_block_pattern as _parse_block
from .notation import parse_discrete as _parse_discrete
from .notation import parse_weyl as _parse_weyl


# -- sized parser wrappers -------------------------------------------------


def parse_discrete(text: str, R: int) -> DiscreteGen:
    """Parse a discrete generator and check it fits dimension R."""
    gen = _parse_discrete(text)
    gen.matrix(R)  # raises on size mismatch
    return gen


def parse_weyl(text: str, R: int) -> OuterDer:
    der = _parse_weyl(text)
    der.matrix(R)
    return der


def parse_block_pattern(text: str, R: int) -> BlockPattern:
    pat = _parse_block(text)
    if pat.size != R:
        raise ValueError(f"block pattern {text!r} has size {pat.size}, not {R}")
    return pat


# -- coefficient expressions ----------------------------------------------

_TERM_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?([a-z]\w*)?$")


def eval_coeff(expr: str, params: Mapping[str, Fraction]) -> Fraction:
    """Evaluate an affine coefficient expression like "2u", "-w" or "u+1"."""
    text = expr.replace(" ", "")
    terms = re.findall(r"[+-]?[^+-]+", text)
    if not terms or "".join(terms) != text:
        raise ValueError(f"bad coefficient expression {expr!r}")
    total = Fraction(0)
    for term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"bad coefficient expression {expr!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3) is not None:
            if m.group(3) not in params:
                raise ValueError(f"unknown parameter {m.group(3)!r} in {expr!r}")
            coeff *= params[m.group(3)]
        total += sign * coeff
    return total


# -- catalog entries -------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """One table row: named algebra plus its automorphism descriptor data."""

    name: str
    note: str
    dim: int
    params: tuple[str, ...]
    constraint: str
    brackets: tuple[tuple[int, int, int, str], ...]
    discrete: tuple[str, ...]
    outer: tuple[str, ...]
    block: str | None
    grid: tuple[tuple[tuple[str, str], ...], ...]
    special: bool = False

    def grid_points(self) -> list[dict[str, Fraction]]:
        return [{sym: Fraction(val) for sym, val in point} for point in self.grid]


def _row(name, note, dim, params, constraint, brackets, discrete, outer, block,
         grid=((),), special=False) -> CatalogEntry:
    return CatalogEntry(
        name=name,
        note=note,
        dim=dim,
        params=tuple(params),
        constraint=constraint,
        brackets=tuple((i, j, k, c) for i, j, k, c in brackets),
        discrete=tuple(discrete),
        outer=tuple(outer),
        block=block,
        grid=tuple(tuple(point) for point in grid),
        special=special,
    )


_ENTRIES: tuple[CatalogEntry, ...] = (
    # dimension 2 and 3
    _row("A_{2,1}", "", 2, (), "", [(1, 2, 1, "1")], ["p1"], [], "(1,1)"),
    _row("A_{3,1}", "nilpotent", 3, (), "", [(2, 3, 1, "1")],
         ["p12"], ["E_1^1+E_2^2"], "(1,S_{23})"),
    _row("A_{3,2}", "", 3, (), "",
         [(1, 3, 1, "1"), (2, 3, 1, "1"), (2, 3, 2, "1")], [], [], "(a,a,1)"),
    _row("A_{3,3}", "", 3, (), "", [(1, 3, 1, "1"), (2, 3, 2, "1")],
         ["p1"], [], "(S_{12},1)"),
    _row("A_{3,4}", "", 3, (), "", [(1, 3, 1, "1"), (2, 3, 2, "-1")],
         ["(-X_2,X_1,-X_3)"], [], "(1,a,1)"),
    _row("A_{3,5}^u", "0<|u|<1", 3, ("u",), "0<|u|<1",
         [(1, 3, 1, "1"), (2, 3, 2, "u")], ["p1"], [], "(1,a,1)",
         grid=[(("u", "1/2"),), (("u", "-1/2"),), (("u", "9/10"),)]),
    _row("A_{3,6}", "", 3, (), "", [(1, 3, 2, "-1"), (2, 3, 1, "1")],
         ["p23"], ["E_1^1+E_2^2"], "(1,1,1)"),
    _row("A_{3,7}^u", "u>0", 3, ("u",), "u>0",
         [(1, 3, 1, "u"), (2, 3, 2, "u"), (1, 3, 2, "-1"), (2, 3, 1, "1")],
         [], ["[E_1^1+E_2^2]_u"], "(1,1,1)",
         grid=[(("u", "1/2"),), (("u", "1"),), (("u", "3"),)]),
    _row("A_{3,8}", "sl(2,ℝ)", 3, (), "",
         [(1, 2, 1, "1"), (2, 3, 3, "1"), (1, 3, 2, "-2")],
         ["p13", "((-X_3,-X_2,-X_1))"], [], "(1,1,1)"),
    _row("A_{3,9}", "so(3)", 3, (), "",
         [(1, 2, 3, "1"), (2, 3, 1, "1"), (1, 3, 2, "-1")], [], [], "(1,1,1)"),
    # dimension 4
    _row("A_{4,1}", "nilpotent", 4, (), "",
         [(2, 4, 1, "1"), (3, 4, 2, "1")], [], ["E_3^1", "E_4^3"],
         "(ab^2,ab,a,b)"),
    _row("A_{4,2}^u", "u not in {0,1}", 4, ("u",), "u not in {0,1}",
         [(1, 4, 1, "u"), (2, 4, 2, "1"), (3, 4, 2, "1"), (3, 4, 3, "1")],
         [], [], "(a,b,b,1)",
         grid=[(("u", "2"),), (("u", "-1"),), (("u", "1/2"),)]),
    _row("A_{4,2}^1", "", 4, (), "",
         [(1, 4, 1, "1"), (2, 4, 2, "1"), (3, 4, 2, "1"), (3, 4, 3, "1")],
         [], ["E_1^2", "E_3^1"], "(a,b,b,1)"),
    _row("A_{4,3}", "", 4, (), "", [(1, 4, 1, "1"), (3, 4, 2, "1")],
         [], ["E_4^3"], "(a,b,b,1)"),
    _row("A_{4,4}", "", 4, (), "",
         [(1, 4, 1, "1"), (2, 4, 1, "1"), (2, 4, 2, "1"), (3, 4, 2, "1"),
          (3, 4, 3, "1")],
         [], ["E_3^1"], "(a,a,a,1)"),
    _row("A_{4,5}^{u,v}", "uv!=0, -1<=u<v<1", 4, ("u", "v"),
         "uv!=0, -1<=u<v<1",
         [(1, 4, 1, "1"), (2, 4, 2, "u"), (3, 4, 3, "v")],
         ["p1"], [], "(1,a,b,1)",
         grid=[(("u", "-1"), ("v", "1/2")), (("u", "-1/2"), ("v", "1/4")),
               (("u", "1/4"), ("v", "1/2"))]),
    _row("A_{4,5}^{u,u}", "u!=0, -1<=u<1", 4, ("u",), "u!=0, -1<=u<1",
         [(1, 4, 1, "1"), (2, 4, 2, "u"), (3, 4, 3, "u")],
         ["p1", "p2"], ["E_2^2"], "(1,S_{23},1)",
         grid=[(("u", "-1"),), (("u", "-1/2"),), (("u", "1/2"),)]),
    _row("A_{4,5}^{u,1}", "(*) modified basis; u!=0, -1<=u<1", 4, ("u",),
         "u!=0, -1<=u<1",
         [(1, 4, 1, "u"), (2, 4, 2, "1"), (3, 4, 3, "1")],
         ["p1", "p2"], ["E_2^2"], "(1,S_{23},1)",
         grid=[(("u", "-1"),), (("u", "-1/2"),), (("u", "1/2"),)]),
    _row("A_{4,5}^{1,1}", "", 4, (), "",
         [(1, 4, 1, "1"), (2, 4, 2, "1"), (3, 4, 3, "1")],
         ["p1"], [], "(S_{123},1)"),
    _row("A_{4,6}^{u,v}", "u!=0, v>=0", 4, ("u", "v"), "u!=0, v>=0",
         [(1, 4, 1, "u"), (2, 4, 2, "v"), (3, 4, 3, "v"), (2, 4, 3, "-1"),
          (3, 4, 2, "1")],
         [], ["[E_2^2+E_3^3]_v"], "(a,1,1,1)",
         grid=[(("u", "1"), ("v", "0")), (("u", "2"), ("v", "1")),
               (("u", "-1"), ("v", "3/2"))]),
    _row("A_{4,7}", "", 4, (), "",
         [(1, 4, 1, "2"), (2, 3, 1, "1"), (2, 4, 2, "1"), (3, 4, 2, "1"),
          (3, 4, 3, "1")],
         [], [], "(a^2,a,a,1)"),
    _row("A_{4,8}", "", 4, (), "",
         [(2, 3, 1, "1"), (2, 4, 2, "1"), (3, 4, 3, "-1")],
         ["p12", "(-X_1,X_3,X_2,-X_4)"], ["E_1^1+E_3^3", "E_4^1"],
         "(1,1,1,1)"),
    _row("A_{4,9}^u", "-1<u<1", 4, ("u",), "-1<u<1",
         [(1, 4, 1, "u+1"), (2, 3, 1, "1"), (2, 4, 2, "1"), (3, 4, 3, "u")],
         ["p12"], [], "(a,1,a,1)",
         grid=[(("u", "-1/2"),), (("u", "0"),), (("u", "1/2"),)]),
    _row("A_{4,9}^1", "", 4, (), "",
         [(1, 4, 1, "2"), (2, 3, 1, "1"), (2, 4, 2, "1"), (3, 4, 3, "1")],
         ["p12"], [], "(1,S_{23},1)"),
    _row("A_{4,10}", "", 4, (), "",
         [(2, 3, 1, "1"), (3, 4, 2, "1"), (2, 4, 3, "-1")],
         ["p124"], ["2E_1^1+E_2^2+E_3^3", "E_4^1"], "(1,1,1,1)"),
    _row("A_{4,11}^u", "u>0", 4, ("u",), "u>0",
         [(1, 4, 1, "2u"), (2, 3, 1, "1"), (3, 4, 2, "1"), (2, 4, 2, "u"),
          (3, 4, 3, "u"), (2, 4, 3, "-1")],
         [], ["[2E_1^1+E_2^2+E_3^3]_u"], "(1,1,1,1)",
         grid=[(("u", "1/2"),), (("u", "1"),), (("u", "2"),)]),
    _row("A_{4,12}", "", 4, (), "",
         [(1, 3, 1, "1"), (2, 3, 2, "1"), (2, 4, 1, "1"), (1, 4, 2, "-1")],
         ["p24"], [], "(1,1,1,1)"),
    # dimension 5, the one family treated separately
    _row("A_{5,17}^{u,v,w}", "", 5, ("u", "v", "w"), "w!=0",
         [(1, 5, 1, "u"), (2, 5, 2, "u"), (3, 5, 3, "v"), (4, 5, 4, "v"),
          (1, 5, 2, "-1"), (2, 5, 1, "1"), (3, 5, 4, "-w"), (4, 5, 3, "w")],
         [], [], None,
         grid=[(("u", "2"), ("v", "3"), ("w", "5")),
               (("u", "1"), ("v", "-1"), ("w", "1")),
               (("u", "2"), ("v", "-2"), ("w", "-1")),
               (("u", "1"), ("v", "1"), ("w", "1")),
               (("u", "2"), ("v", "2"), ("w", "-1")),
               (("u", "0"), ("v", "0"), ("w", "2")),
               (("u", "0"), ("v", "0"), ("w", "1")),
               (("u", "1"), ("v", "1"), ("w", "2")),
               (("u", "1"), ("v", "-2"), ("w", "3"))],
         special=True),
)


def entries() -> tuple[CatalogEntry, ...]:
    return _ENTRIES


def list_entries() -> list[tuple[str, str]]:
    """Names and notes, in table order."""
    return [(e.name, e.note) for e in _ENTRIES]


def _base_name(name: str) -> str:
    return name.split("^")[0]


def lookup(name: str) -> CatalogEntry:
    """Find an entry by exact name, or by unambiguous base name."""
    for e in _ENTRIES:
        if e.name == name:
            return e
    hits = [e for e in _ENTRIES if _base_name(e.name) == name]
    if len(hits) == 1:
        return hits[0]
    if len(hits) > 1:
        opts = ", ".join(e.name for e in hits)
        raise ValueError(f"ambiguous catalog name {name!r}: one of {opts}")
    raise ValueError(f"unknown catalog name {name!r}")


_CONSTRAINTS = {
    "A_{3,5}^u": lambda p: 0 < abs(p["u"]) < 1,
    "A_{3,7}^u": lambda p: p["u"] > 0,
    "A_{4,2}^u": lambda p: p["u"] not in (0, 1),
    "A_{4,5}^{u,v}": lambda p: p["u"] * p["v"] != 0 and -1 <= p["u"] < p["v"] < 1,
    "A_{4,5}^{u,u}": lambda p: p["u"] != 0 and -1 <= p["u"] < 1,
    "A_{4,5}^{u,1}": lambda p: p["u"] != 0 and -1 <= p["u"] < 1,
    "A_{4,6}^{u,v}": lambda p: p["u"] != 0 and p["v"] >= 0,
    "A_{4,9}^u": lambda p: -1 < p["u"] < 1,
    "A_{4,11}^u": lambda p: p["u"] > 0,
    "A_{5,17}^{u,v,w}": lambda p: p["w"] != 0,
}


def check_params(entry: CatalogEntry, params: Mapping | None) -> dict[str, Fraction]:
    """Normalize and validate a parameter assignment for an entry."""
    given = {str(k): rat(v) for k, v in (params or {}).items()}
    missing = [s for s in entry.params if s not in given]
    extra = [s for s in given if s not in entry.params]
    if missing:
        raise ValueError(f"{entry.name} missing parameters {missing}")
    if extra:
        raise ValueError(f"{entry.name} takes no parameters {extra}")
    pred = _CONSTRAINTS.get(entry.name)
    if pred is not None and not pred(given):
        shown = ", ".join(f"{s}={given[s]}" for s in entry.params)
        raise ValueError(
            f"parameters {shown} violate constraint {entry.constraint!r} "
            f"of {entry.name}"
        )
    return given


def instantiate(name: str, params: Mapping | None = None) -> LieAlgebra:
    """Build the entry's Lie algebra at the given parameter values."""
    entry = lookup(name)
    values = check_params(entry, params)
    brackets = []
    for i, j, k, expr in entry.brackets:
        c = eval_coeff(expr, values)
        if c != 0:
            brackets.append((i, j, k, c))
    label = entry.name
    if values:
        label += "(" + ",".join(f"{s}={values[s]}" for s in entry.params) + ")"
    return new_lie_algebra(entry.dim, brackets, label=label)


# -- A_{5,17} case logic ---------------------------------------------------


def _fam_entry(c, sym=None):
    return (Fraction(c), sym)


_Z = _fam_entry(0)
_ONE = _fam_entry(1)


def _b1_family() -> MatrixFamily:
    rows = (
        (_fam_entry(1, "a"), _fam_entry(1, "b"), _Z, _Z, _Z),
        (_fam_entry(-1, "b"), _fam_entry(1, "a"), _Z, _Z, _Z),
        (_Z, _Z, _fam_entry(1, "g"), _fam_entry(1, "h"), _Z),
        (_Z, _Z, _fam_entry(-1, "h"), _fam_entry(1, "g"), _Z),
        (_fam_entry(1, "k1"), _fam_entry(1, "k2"), _fam_entry(1, "k3"),
         _fam_entry(1, "k4"), _ONE),
    )
    return MatrixFamily("B1", ("a", "b", "g", "h", "k1", "k2", "k3", "k4"),
                        rows, condition="(a^2+b^2)(g^2+h^2) != 0")


def _b3_family(w: Fraction) -> MatrixFamily:
    rows = (
        (_fam_entry(1, "a"), _fam_entry(1, "b"), _fam_entry(1, "c"),
         _fam_entry(1, "d"), _Z),
        (_fam_entry(-1, "b"), _fam_entry(1, "a"), _fam_entry(-w, "d"),
         _fam_entry(w, "c"), _Z),
        (_fam_entry(1, "e"), _fam_entry(1, "f"), _fam_entry(1, "g"),
         _fam_entry(1, "h"), _Z),
        (_fam_entry(-w, "f"), _fam_entry(w, "e"), _fam_entry(-1, "h"),
         _fam_entry(1, "g"), _Z),
        (_fam_entry(1, "k1"), _fam_entry(1, "k2"), _fam_entry(1, "k3"),
         _fam_entry(1, "k4"), _ONE),
    )
    return MatrixFamily(
        "B3", ("a", "b", "c", "d", "e", "f", "g", "h", "k1", "k2", "k3", "k4"),
        rows, condition="det != 0")


def b2_matrix(w) -> Matrix:
    w = rat(w)
    return Matrix([
        [0, 0, 0, w, 0],
        [0, 0, 1, 0, 0],
        [0, w, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1],
    ])


def _a517_descriptor(values: Mapping[str, Fraction]) -> AutDescriptor:
    u, v, w = values["u"], values["v"], values["w"]
    discrete: list[DiscreteGen] = []
    fam_name = "B1"
    if u == 0 and v == 0:
        discrete.append(SignMask((2, 4, 5)))
        fam_name = "B3" if abs(w) == 1 else "B1"
    elif abs(w) == 1 and u == v and u != 0:
        fam_name = "B3"
    elif abs(w) == 1 and u == -v and u != 0:
        discrete.append(ExplicitGen(b2_matrix(w), label="B2"))
    family = _b3_family(w) if fam_name == "B3" else _b1_family()
    return AutDescriptor(5, tuple(discrete), (), None, (family,))


def descriptor(name: str, params: Mapping | None = None) -> AutDescriptor:
    """Automorphism descriptor for an entry, with case logic resolved."""
    entry = lookup(name)
    values = check_params(entry, params)
    if entry.special:
        return _a517_descriptor(values)
    discrete = tuple(parse_discrete(t, entry.dim) for t in entry.discrete)
    outer = tuple(parse_weyl(t, entry.dim) for t in entry.outer)
    block = (parse_block_pattern(entry.block, entry.dim)
             if entry.block is not None else None)
    return AutDescriptor(entry.dim, discrete, outer, block, (),
                         notes=entry.note)


# -- random sampling -------------------------------------------------------


def _rand_rat(rng: random.Random, bound: int, denoms=(1, 2, 3)) -> Fraction:
    den = rng.choice(denoms)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def _nonzero_rat(rng: random.Random, bound: int) -> Fraction:
    while True:
        x = _rand_rat(rng, bound)
        if x != 0:
            return x


def _random_sl(rng: random.Random, n: int) -> Matrix:
    out = Matrix.identity(n)
    for _ in range(rng.randint(1, 4)):
        i = rng.randrange(n)
        j = rng.choice([x for x in range(n) if x != i])
        shear = Matrix.identity(n) + _rand_rat(rng, 2) * Matrix.unit(n, i, j)
        out = out * shear
    return out


def _diag_powers(D: Matrix, rng: random.Random) -> Matrix | None:
    """Exact sample of exp(alpha*D) for a rational diagonal derivation D.

    With alpha = d*ln(r) the entries are r**(d*D_ii), rational whenever d
    clears the denominators of the diagonal.  Candidates keep |alpha| <= 2.
    """
    n = D.nrows
    if any(D.rows[i][j] != 0 for i in range(n) for j in range(n) if i != j):
        return None
    diag = [D.rows[i][i] for i in range(n)]
    d = 1
    for x in diag:
        d = d * x.denominator // math.gcd(d, x.denominator)
    candidates = [r for r in (Fraction(2), Fraction(1, 2), Fraction(3),
                              Fraction(1, 3), Fraction(3, 2), Fraction(2, 3),
                              Fraction(6, 5), Fraction(5, 6))
                  if d * abs(math.log(r)) <= 2]
    if not candidates:
        return None
    r = rng.choice(candidates)
    return Matrix.diagonal([r ** int(d * x) for x in diag])


def _exact_subgroup_sample(D: Matrix, rng: random.Random) -> Matrix | None:
    """A nonidentity exact element of exp(alpha*D), or None if unavailable."""
    if D.is_zero():
        return None
    if nilpotency_index(D) is not None:
        alpha = _nonzero_rat(rng, 2)
        return matexp(alpha * D)
    return _diag_powers(D, rng)


def _family_instance(fam: MatrixFamily, rng: random.Random) -> Matrix:
    for _ in range(64):
        values = {p: _rand_rat(rng, 3) for p in fam.params}
        m = fam.instantiate(values)
        if m.det() != 0:
            return m
    raise RuntimeError(f"could not draw a nonsingular {fam.name} instance")


def _block_instance(pat: BlockPattern, rng: random.Random) -> Matrix:
    scalars = {s: _nonzero_rat(rng, 3) for s in pat.scalar_symbols()}
    blocks = {key: _random_sl(rng, len(key)) for key in pat.block_keys()}
    return pat.instantiate(scalars, blocks)


def draw_sample(L: LieAlgebra, desc: AutDescriptor, spin: object = 0,
                mode: str = "exact"):
    """Draw one random group element from any algebra/descriptor pair.

    `spin` is either a ReconstructionChoice (deterministic) or an integer
    seed.  Seeded draws multiply inner exponentials, a discrete word of
    length at most 3, outer subgroup elements, and a block or family
    instance.  Exact mode keeps every factor rational; numeric mode allows
    arbitrary real exponents and returns a float array.
    """
    if mode not in ("exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(spin, ReconstructionChoice):
        return reconstruct(L, desc, spin, mode="auto" if mode == "exact" else mode)
    rng = random.Random(spin)
    factors = []
    for j in range(1, L.dim + 1):
        if rng.random() < 0.5:
            continue
        f = _exact_subgroup_sample(ad_matrix(L, j), rng)
        if f is not None and mode == "exact":
            factors.append(f)
        elif mode == "numeric":
            from scipy.linalg import expm

            eps = rng.uniform(-2, 2)
            factors.append(expm(eps * ad_matrix(L, j).to_numpy()))
    if desc.discrete:
        for _ in range(rng.randint(0, 3)):
            factors.append(rng.choice(desc.discrete).matrix(L.dim))
    for der in desc.outer:
        if rng.random() < 0.5:
            continue
        D = der.matrix(L.dim)
        if mode == "exact":
            f = _exact_subgroup_sample(D, rng)
            if f is not None:
                factors.append(f)
        else:
            from scipy.linalg import expm

            factors.append(expm(rng.uniform(-2, 2) * D.to_numpy()))
    if desc.families:
        factors.append(_family_instance(desc.families[0], rng))
    elif desc.block is not None:
        factors.append(_block_instance(desc.block, rng))
    out = Matrix.identity(L.dim)
    for f in factors:
        if isinstance(f, np.ndarray):
            out = (out.to_numpy() if isinstance(out, Matrix) else out) @ f
        elif isinstance(out, Matrix):
            out = out * f
        else:
            out = out @ f.to_numpy()
    if mode == "numeric" and isinstance(out, Matrix):
        out = out.to_numpy()
    return out


def sample_automorphism(name: str, params: Mapping | None = None,
                        spin: object = 0, mode: str = "exact"):
    """Draw one automorphism of a catalog algebra; see draw_sample."""
    L = instantiate(name, params)
    desc = descriptor(name, params)
    return draw_sample(L, desc, spin, mode=mode)


# -- verification ----------------------------------------------------------


@dataclass
class CatalogCheck:
    entry: str
    point: str
    check: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        where = f" [{self.point}]" if self.point else ""
        tail = f": {self.detail}" if self.detail else ""
        return f"{status:4s} {self.entry}{where} {self.check}{tail}"


@dataclass
class CatalogReport:
    checks: list[CatalogCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CatalogCheck]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        body = "\n".join(self.lines())
        tally = f"{len(self.checks)} checks, {len(self.failures())} failures"
        return f"{body}\n{tally}" if body else tally


def _point_text(values: Mapping[str, Fraction]) -> str:
    return ",".join(f"{k}={v}" for k, v in values.items())


def _verify_entry(entry: CatalogEntry, samples: int, seed: int,
                  out: list[CatalogCheck]) -> None:
    from scipy.linalg import expm

    def add(point, check, ok, detail=""):
        out.append(CatalogCheck(entry.name, point, check, bool(ok), detail))

    for values in entry.grid_points() or [{}]:
        pt = _point_text(values)
        try:
            L = instantiate(entry.name, values)
        except ValueError as exc:
            add(pt, "jacobi", False, str(exc))
            continue
        add(pt, "jacobi", True)
        desc = descriptor(entry.name, values)
        for gen in desc.discrete:
            rep = is_automorphism(L, gen.matrix(L.dim))
            add(pt, f"discrete[{gen.text()}]", rep.ok,
                "" if rep.ok else f"violations {rep.violations[:3]}")
        for der in desc.outer:
            D = der.matrix(L.dim)
            add(pt, f"derivation[{der.text()}]", is_derivation(L, D))
            if der.bracket_param is None:
                add(pt, f"outer[{der.text()}] non-inner",
                    not is_inner_derivation(L, D))
            else:
                add(pt, f"outer[{der.text()}] bracketed", True,
                    "inner relation recorded, not asserted")
            for alpha in (1, -1):
                rep = is_automorphism(L, expm(alpha * D.to_numpy()),
                                      mode="numeric")
                add(pt, f"exp({alpha:+d} outer[{der.text()}])", rep.ok,
                    "" if rep.ok else f"residual {rep.max_residual:.2e}")
        for j in range(1, L.dim + 1):
            C = ad_matrix(L, j)
            if C.is_zero():
                continue
            rep = is_automorphism(L, expm(0.5 * C.to_numpy()), mode="numeric")
            add(pt, f"exp(0.5 ad X_{j})", rep.ok,
                "" if rep.ok else f"residual {rep.max_residual:.2e}")
        base = (zlib.crc32(f"{entry.name}|{pt}".encode()) + seed) & 0xFFFF
        for s in range(samples):
            B = sample_automorphism(entry.name, values, base + s)
            rep = is_automorphism(L, B)
            add(pt, f"sample[{s}] exact", rep.ok,
                "" if rep.ok else f"violations {rep.violations[:3]}")
        for s in range(min(3, samples)):
            B = sample_automorphism(entry.name, values, base + s,
                                    mode="numeric")
            rep = is_automorphism(L, B, mode="numeric")
            add(pt, f"sample[{s}] numeric", rep.ok,
                "" if rep.ok else f"residual {rep.max_residual:.2e}")

    if entry.special:
        # maps valid only in special parameter regimes must fail elsewhere
        L = instantiate(entry.name, {"u": 1, "v": -2, "w": 1})
        add("u=1,v=-2,w=1", "negative B2",
            not is_automorphism(L, b2_matrix(1)).ok,
            "B2 requires u=-v!=0 and |w|=1")
        L = instantiate(entry.name, {"u": 1, "v": 1, "w": 2})
        add("u=1,v=1,w=2", "negative p245",
            not is_automorphism(L, SignMask((2, 4, 5)).matrix(5)).ok,
            "p245 requires u=v=0")
        L = instantiate(entry.name, {"u": 1, "v": 2, "w": 1})
        # nonsingular element mixing the two rotation planes, so the failure
        # comes from the bracket equations rather than the determinant
        probe = _b3_family(Fraction(1)).instantiate(
            {"a": 1, "b": 0, "c": 0, "d": 1, "e": 0, "f": 2, "g": 1, "h": 0,
             "k1": 0, "k2": 0, "k3": 0, "k4": 0})
        add("u=1,v=2,w=1", "negative B3",
            probe.det() != 0 and not is_automorphism(L, probe).ok,
            "B3 requires u=v!=0 and |w|=1")


def verify_catalog(samples_per_row: int = 20, seed: int = 0) -> CatalogReport:
    """Check every entry over its parameter grid; failures become lines."""
    report = CatalogReport()
    for entry in _ENTRIES:
        _verify_entry(entry, samples_per_row, seed, report.checks)
    return report
