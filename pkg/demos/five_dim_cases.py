"""Case logic of the five-dimensional family A_{5,17}^{u,v,w}.

The automorphism group of this family changes shape with the parameters:
extra generators appear when u = v, u = -v, or u = v = 0 combine with
|w| = 1.  The demo instantiates several parameter points, shows which case
applies, and confirms that the special generators pass exactly where they
should and fail elsewhere.

Run with: python3 demos/five_dim_cases.py
"""

from __future__ import annotations

from lieaut.automorphisms import is_automorphism
from lieaut.catalog import b2_matrix, descriptor, instantiate
from lieaut.linalg import format_matrix
from lieaut.notation import SignMask


def describe(u, v, w) -> None:
    params = {"u": u, "v": v, "w": w}
    desc = descriptor("A_{5,17}", params)
    discrete = ", ".join(g.text() for g in desc.discrete) or "none"
    fams = ", ".join(f.name for f in desc.families)
    print(f"(u,v,w) = ({u},{v},{w}):  discrete [{discrete}]  family {fams}")


def main() -> None:
    print("which case holds at which parameters")
    print("------------------------------------")
    describe(2, 3, 5)     # generic
    describe(1, 1, 1)     # u = v with |w| = 1: larger family
    describe(1, -1, 1)    # u = -v with |w| = 1: extra discrete generator
    describe(0, 0, 1)     # diagonal part vanishes, |w| = 1
    describe(0, 0, 2)     # diagonal part vanishes, |w| != 1

    print()
    print("the extra involution B2 at w = 1")
    print(format_matrix(b2_matrix(1)))

    print()
    print("B2 is an automorphism exactly on the u = -v slice")
    for params in ({"u": 1, "v": -1, "w": 1}, {"u": 1, "v": -2, "w": 1}):
        L = instantiate("A_{5,17}", params)
        rep = is_automorphism(L, b2_matrix(1))
        print(f"  {L.label}: ok {rep.ok}")

    print()
    print("the sign mask p245 needs u = v = 0")
    mask = SignMask((2, 4, 5)).matrix(5)
    for params in ({"u": 0, "v": 0, "w": 2}, {"u": 1, "v": 1, "w": 2}):
        L = instantiate("A_{5,17}", params)
        rep = is_automorphism(L, mask)
        print(f"  {L.label}: ok {rep.ok}")


if __name__ == "__main__":
    main()
