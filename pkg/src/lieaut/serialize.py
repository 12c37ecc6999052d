"""JSON serialization for algebras, matrices, descriptors, and the catalog.

Rationals are stored as strings ("3", "-2/5") so every format round-trips
bit-exactly.  Matrices are grids of such strings, row-major, one row per
list.  Matrix files on disk may be either JSON grids or whitespace-separated
text grids; both are accepted by load_matrix.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .algebra import LieAlgebra, Subspace, new_lie_algebra
from .automorphisms import AutDescriptor
from .catalog import CatalogEntry, entries
from .decomposition import Decomposition, decomposition_from_components
from .linalg import Matrix, parse_matrix, rat
from .notation import (
    ExplicitGen,
    MatrixFamily,
    OuterDer,
    SignMask,
    SignedPermutation,
    parse_block_pattern,
    parse_discrete,
)


def scalar_to_str(x) -> str:
    return str(rat(x))


def scalar_from_str(s: str) -> Fraction:
    return Fraction(str(s))


# -- algebras --------------------------------------------------------------


def algebra_to_obj(L: LieAlgebra) -> dict:
    obj = {
        "dim": L.dim,
        "brackets": [
            {"i": i, "j": j, "k": k, "c": scalar_to_str(c)}
            for i, j, k, c in L.tensor.items()
        ],
    }
    if L.label is not None:
        obj["label"] = L.label
    return obj


def algebra_from_obj(obj: Mapping, validate: bool = True) -> LieAlgebra:
    dim = int(obj["dim"])
    brackets = [
        (int(b["i"]), int(b["j"]), int(b["k"]), scalar_from_str(b["c"]))
        for b in obj.get("brackets", [])
    ]
    return new_lie_algebra(dim, brackets, label=obj.get("label"),
                           validate=validate)


def save_algebra(L: LieAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_obj(L), indent=1) + "\n")


def load_algebra(path, validate: bool = True) -> LieAlgebra:
    return algebra_from_obj(json.loads(Path(path).read_text()),
                            validate=validate)


# -- matrices --------------------------------------------------------------


def matrix_to_obj(M: Matrix) -> list[list[str]]:
    return [[scalar_to_str(x) for x in row] for row in M.rows]


def matrix_from_obj(rows: Sequence[Sequence]) -> Matrix:
    return Matrix([[scalar_from_str(x) for x in row] for row in rows])


def save_matrix(M: Matrix, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_obj(M)) + "\n")


def load_matrix(path) -> Matrix:
    """Read a matrix file, JSON grid or whitespace text grid."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("["):
        return matrix_from_obj(json.loads(text))
    return parse_matrix(text)


# -- descriptors -----------------------------------------------------------


def _discrete_to_obj(gen):
    if isinstance(gen, SignMask) and not gen.weyl:
        return gen.text()
    if isinstance(gen, SignMask):
        return {"mask": gen.text(), "weyl": True}
    if isinstance(gen, SignedPermutation):
        symbols = [
            ("-" if sign < 0 else "") + f"X_{target}" for sign, target in gen.images
        ]
        if gen.weyl:
            return {"tuple": symbols, "weyl": True}
        return symbols
    if isinstance(gen, ExplicitGen):
        return {
            "matrix": matrix_to_obj(gen.mat),
            "weyl": gen.weyl,
            "label": gen.label,
        }
    raise TypeError(f"unknown discrete generator {gen!r}")


def _discrete_from_obj(obj):
    if isinstance(obj, str):
        return parse_discrete(obj)
    if isinstance(obj, list):
        return parse_discrete("(" + ",".join(obj) + ")")
    if "mask" in obj:
        gen = parse_discrete(obj["mask"])
        return SignMask(gen.indices, weyl=bool(obj.get("weyl", False)))
    if "tuple" in obj:
        inner = "(" + ",".join(obj["tuple"]) + ")"
        text = f"({inner})" if obj.get("weyl") else inner
        return parse_discrete(text)
    if "matrix" in obj:
        return ExplicitGen(
            matrix_from_obj(obj["matrix"]),
            weyl=bool(obj.get("weyl", False)),
            label=obj.get("label", ""),
        )
    raise ValueError(f"bad discrete generator object {obj!r}")


def _outer_to_obj(der: OuterDer) -> dict:
    obj = {
        "terms": [
            {"i": i, "j": j, "c": scalar_to_str(c)} for i, j, c in der.terms
        ]
    }
    if der.bracket_param is not None:
        obj["bracket"] = der.bracket_param
    return obj


def _outer_from_obj(obj: Mapping) -> OuterDer:
    terms = tuple(
        (int(t["i"]), int(t["j"]), scalar_from_str(t["c"]))
        for t in obj["terms"]
    )
    return OuterDer(terms, bracket_param=obj.get("bracket"))


def _family_to_obj(fam: MatrixFamily) -> dict:
    return {
        "name": fam.name,
        "params": list(fam.params),
        "rows": [
            [{"c": scalar_to_str(c), "sym": sym} for c, sym in row]
            for row in fam.rows
        ],
        "condition": fam.condition,
    }


def _family_from_obj(obj: Mapping) -> MatrixFamily:
    rows = tuple(
        tuple((scalar_from_str(e["c"]), e["sym"]) for e in row)
        for row in obj["rows"]
    )
    return MatrixFamily(obj["name"], tuple(obj["params"]), rows,
                        condition=obj.get("condition", ""))


def descriptor_to_obj(desc: AutDescriptor) -> dict:
    return {
        "dim": desc.dim,
        "discrete": [_discrete_to_obj(g) for g in desc.discrete],
        "outer": [_outer_to_obj(d) for d in desc.outer],
        "block": desc.block.text() if desc.block is not None else None,
        "families": [_family_to_obj(f) for f in desc.families],
        "notes": desc.notes,
    }


def descriptor_from_obj(obj: Mapping) -> AutDescriptor:
    block = obj.get("block")
    return AutDescriptor(
        dim=int(obj["dim"]),
        discrete=tuple(_discrete_from_obj(g) for g in obj.get("discrete", [])),
        outer=tuple(_outer_from_obj(d) for d in obj.get("outer", [])),
        block=parse_block_pattern(block) if block else None,
        families=tuple(_family_from_obj(f) for f in obj.get("families", [])),
        notes=obj.get("notes", ""),
    )


def save_descriptor(desc: AutDescriptor, path) -> None:
    Path(path).write_text(json.dumps(descriptor_to_obj(desc), indent=1) + "\n")


def load_descriptor(path) -> AutDescriptor:
    return descriptor_from_obj(json.loads(Path(path).read_text()))


def bundle_to_obj(L: LieAlgebra, desc: AutDescriptor) -> dict:
    """Algebra plus descriptor in one document."""
    return {"algebra": algebra_to_obj(L), "descriptor": descriptor_to_obj(desc)}


def bundle_from_obj(obj: Mapping) -> tuple[LieAlgebra, AutDescriptor]:
    return (algebra_from_obj(obj["algebra"]),
            descriptor_from_obj(obj["descriptor"]))


def save_bundle(L: LieAlgebra, desc: AutDescriptor, path) -> None:
    Path(path).write_text(json.dumps(bundle_to_obj(L, desc), indent=1) + "\n")


def load_bundle(path) -> tuple[LieAlgebra, AutDescriptor]:
    return bundle_from_obj(json.loads(Path(path).read_text()))


# -- decompositions --------------------------------------------------------


def decomposition_to_obj(dec: Decomposition) -> dict:
    return {
        "components": [
            [[scalar_to_str(x) for x in r] for r in comp.basis]
            for comp in dec.components
        ],
        "projections": [matrix_to_obj(p) for p in dec.projections],
        "central_flags": list(dec.central_flags),
    }


def decomposition_from_obj(L: LieAlgebra, obj: Mapping) -> Decomposition:
    comps = [
        Subspace(L.dim, [tuple(scalar_from_str(x) for x in r) for r in rows])
        for rows in obj["components"]
    ]
    return decomposition_from_components(L, comps)


# -- catalog ---------------------------------------------------------------

CATALOG_FORMAT = "lieaut-catalog/1"


def entry_to_obj(e: CatalogEntry) -> dict:
    return {
        "name": e.name,
        "note": e.note,
        "dim": e.dim,
        "params": list(e.params),
        "constraint": e.constraint,
        "brackets": [
            {"i": i, "j": j, "k": k, "c": expr} for i, j, k, expr in e.brackets
        ],
        "discrete": list(e.discrete),
        "outer": list(e.outer),
        "block": e.block,
        "grid": [dict(point) for point in e.grid],
        "special": e.special,
    }


def entry_from_obj(obj: Mapping) -> CatalogEntry:
    return CatalogEntry(
        name=obj["name"],
        note=obj.get("note", ""),
        dim=int(obj["dim"]),
        params=tuple(obj.get("params", [])),
        constraint=obj.get("constraint", ""),
        brackets=tuple(
            (int(b["i"]), int(b["j"]), int(b["k"]), b["c"])
            for b in obj["brackets"]
        ),
        discrete=tuple(obj.get("discrete", [])),
        outer=tuple(obj.get("outer", [])),
        block=obj.get("block"),
        grid=tuple(
            tuple(sorted(point.items())) for point in obj.get("grid", [{}])
        ),
        special=bool(obj.get("special", False)),
    )


def catalog_to_obj() -> dict:
    return {
        "format": CATALOG_FORMAT,
        "entries": [entry_to_obj(e) for e in entries()],
    }


def catalog_from_obj(obj: Mapping) -> tuple[CatalogEntry, ...]:
    if obj.get("format") != CATALOG_FORMAT:
        raise ValueError(f"unsupported catalog format {obj.get('format')!r}")
    return tuple(entry_from_obj(e) for e in obj["entries"])


def save_catalog(path) -> None:
    Path(path).write_text(json.dumps(catalog_to_obj(), indent=1) + "\n")


def load_catalog(path) -> tuple[CatalogEntry, ...]:
    return catalog_from_obj(json.loads(Path(path).read_text()))
