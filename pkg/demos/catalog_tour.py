"""Walk the automorphism catalog: entries, descriptors, verified samples.

Run with: python3 demos/catalog_tour.py
"""

from __future__ import annotations

from lieaut.automorphisms import is_automorphism
from lieaut.catalog import (
    descriptor,
    instantiate,
    list_entries,
    sample_automorphism,
    verify_catalog,
)
from lieaut.linalg import format_matrix


def main() -> None:
    print("catalog entries")
    print("---------------")
    for name, note in list_entries():
        print(f"  {name:18s} {note}".rstrip())

    print()
    print("one entry in detail: A_{4,8}")
    print("----------------------------")
    L = instantiate("A_{4,8}")
    print(f"dim {L.dim}, brackets {L.tensor.items()}")
    desc = descriptor("A_{4,8}")
    print("discrete generators:", ", ".join(g.text() for g in desc.discrete))
    print("outer derivations:  ", ", ".join(d.text() for d in desc.outer))
    print("block pattern:      ", desc.block.text())

    print()
    print("three exact random group elements, each re-verified")
    for spin in range(3):
        B = sample_automorphism("A_{4,8}", spin=spin)
        rep = is_automorphism(L, B)
        print(f"spin {spin}: det {rep.det}, ok {rep.ok}")
        print(format_matrix(B))
        print()

    print("parameterized entry: A_{3,5}^u at u = 1/2")
    L = instantiate("A_{3,5}^u", {"u": "1/2"})
    B = sample_automorphism("A_{3,5}^u", {"u": "1/2"}, spin=1)
    print(format_matrix(B))
    print("verified:", is_automorphism(L, B).ok)

    print()
    print("re-checking every row (2 samples each)")
    rep = verify_catalog(samples_per_row=2, seed=0)
    print(f"{len(rep.checks)} checks, {len(rep.failures())} failures")


if __name__ == "__main__":
    main()
