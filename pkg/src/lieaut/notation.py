"""Compact notation for automorphism-group descriptors.

The table shorthand this module parses and prints:

* sign masks               p12        negate X_1 and X_2
* signed permutations      (-X_2,X_1,-X_3), doubled parens mark an inner
                           reflection-type generator
* derivation combos        2E_1^1+E_2^2+E_3^3, with E_i^j the basis map
                           sending X_i to X_j; a parameter subscript as in
                           [E_2^2+E_3^3]_v records the bracket it came from
* block patterns           (ab^2,ab,a,b) or (1,S_{23},1): diagonal slots are
                           monomials in nonzero scalars, S_{m} slots are
                           shared unit-determinant blocks named by the rows
                           of their first occurrence
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import Matrix, rat

Monomial = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class SignMask:
    """Diagonal matrix of +-1 with -1 exactly at the listed 1-based slots."""

    indices: tuple[int, ...]
    weyl: bool = False

    def __post_init__(self):
        idx = tuple(self.indices)
        if not idx or any(i < 1 for i in idx) or list(idx) != sorted(set(idx)):
            raise ValueError(f"sign mask needs distinct ascending indices, got {idx}")
        object.__setattr__(self, "indices", idx)

    def matrix(self, dim: int) -> Matrix:
        if max(self.indices) > dim:
            raise ValueError(f"sign mask {self.text()} does not fit dimension {dim}")
        return Matrix.diagonal([-1 if i in self.indices else 1
                                for i in range(1, dim + 1)])

    def text(self) -> str:
        return "p" + "".join(str(i) for i in self.indices)


@dataclass(frozen=True)
class SignedPermutation:
    """Basis permutation with signs; images[i] = (sign, target) for X_{i+1}."""

    images: tuple[tuple[int, int], ...]
    weyl: bool = False

    def __post_init__(self):
        imgs = tuple((int(s), int(t)) for s, t in self.images)
        n = len(imgs)
        targets = sorted(t for _, t in imgs)
        if targets != list(range(1, n + 1)) or any(s not in (-1, 1) for s, _ in imgs):
            raise ValueError(f"not a signed permutation of 1..{n}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def dim(self) -> int:
        return len(self.images)

    def matrix(self, dim: int | None = None) -> Matrix:
        n = self.dim
        if dim is not None and dim != n:
            raise ValueError(f"permutation on {n} symbols vs dimension {dim}")
        rows = [[0] * n for _ in range(n)]
        for i, (sign, target) in enumerate(self.images):
            rows[i][target - 1] = sign
        return Matrix(rows)

    def text(self) -> str:
        body = ",".join(
            ("-" if s < 0 else "") + f"X_{t}" for s, t in self.images
        )
        return f"(({body}))" if self.weyl else f"({body})"


@dataclass(frozen=True)
class ExplicitGen:
    """A discrete generator given directly as an exact matrix."""

    mat: Matrix
    weyl: bool = False
    label: str = ""

    def matrix(self, dim: int | None = None) -> Matrix:
        if dim is not None and self.mat.shape != (dim, dim):
            raise ValueError(f"explicit generator shape {self.mat.shape} vs {dim}")
        return self.mat

    def text(self) -> str:
        return self.label or "<matrix>"


DiscreteGen = SignMask | SignedPermutation | ExplicitGen


@dataclass(frozen=True)
class OuterDer:
    """Derivation written as a combination of basis maps E_i^j.

    A term (i, j, c) contributes c at entry (i, j): it sends X_i to c X_j.
    bracket_param records the subscript of a bracketed combo like
    [E_2^2+E_3^3]_v and is metadata only.
    """

    terms: tuple[tuple[int, int, Fraction], ...]
    bracket_param: str | None = None

    def __post_init__(self):
        ts = tuple((int(i), int(j), rat(c)) for i, j, c in self.terms)
        if not ts or any(i < 1 or j < 1 for i, j, _ in ts):
            raise ValueError(f"bad derivation terms {ts}")
        object.__setattr__(self, "terms", ts)

    def matrix(self, dim: int) -> Matrix:
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i, j, c in self.terms:
            if i > dim or j > dim:
                raise ValueError(f"term E_{i}^{j} does not fit dimension {dim}")
            rows[i - 1][j - 1] += c
        return Matrix(rows)

    def text(self) -> str:
        parts = []
        for idx, (i, j, c) in enumerate(self.terms):
            mag = abs(c)
            coeff = "" if mag == 1 else str(mag)
            sign = "-" if c < 0 else ("+" if idx else "")
            parts.append(f"{sign}{coeff}E_{i}^{j}")
        body = "".join(parts)
        if self.bracket_param:
            return f"[{body}]_{self.bracket_param}"
        return body


@dataclass(frozen=True)
class ScalarSlot:
    monomial: Monomial

    @property
    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class BlockSlot:
    key: tuple[int, ...]
    monomial: Monomial = ()

    @property
    def size(self) -> int:
        return len(self.key)


def _eval_monomial(mono: Monomial, scalars: Mapping[str, object]) -> Fraction:
    out = Fraction(1)
    for sym, exp in mono:
        if sym not in scalars:
            raise ValueError(f"missing scalar parameter {sym!r}")
        out *= rat(scalars[sym]) ** exp
    return out


def _monomial_text(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "".join(sym if exp == 1 else f"{sym}^{exp}" for sym, exp in mono)


@dataclass(frozen=True)
class BlockPattern:
    """Block-diagonal template mixing monomial slots and shared SL blocks."""

    slots: tuple[ScalarSlot | BlockSlot, ...]

    @property
    def size(self) -> int:
        return sum(s.size for s in self.slots)

    def scalar_symbols(self) -> tuple[str, ...]:
        seen = []
        for slot in self.slots:
            for sym, _ in slot.monomial:
                if sym not in seen:
                    seen.append(sym)
        return tuple(seen)

    def block_keys(self) -> tuple[tuple[int, ...], ...]:
        seen = []
        for slot in self.slots:
            if isinstance(slot, BlockSlot) and slot.key not in seen:
                seen.append(slot.key)
        return tuple(seen)

    def instantiate(
        self,
        scalars: Mapping[str, object] | None = None,
        blocks: Mapping[tuple[int, ...], Matrix] | None = None,
    ) -> Matrix:
        """Fill the template; scalars must be nonzero, blocks must have det 1."""
        scalars = scalars or {}
        blocks = blocks or {}
        n = self.size
        rows = [[Fraction(0)] * n for _ in range(n)]
        pos = 0
        for slot in self.slots:
            if isinstance(slot, ScalarSlot):
                val = _eval_monomial(slot.monomial, scalars)
                if val == 0:
                    raise ValueError(
                        f"scalar slot {_monomial_text(slot.monomial)} evaluated to 0"
                    )
                rows[pos][pos] = val
                pos += 1
            else:
                k = slot.size
                blk = blocks.get(slot.key)
                if blk is None:
                    blk = Matrix.identity(k)
                if blk.shape != (k, k):
                    raise ValueError(
                        f"block S_{{{''.join(map(str, slot.key))}}} needs shape {k}x{k}"
                    )
                if blk.det() != 1:
                    raise ValueError(
                        f"block S_{{{''.join(map(str, slot.key))}}} must have determinant 1"
                    )
                scale = _eval_monomial(slot.monomial, scalars)
                if scale == 0:
                    raise ValueError("block scale factor evaluated to 0")
                for a in range(k):
                    for b in range(k):
                        rows[pos + a][pos + b] = scale * blk[a, b]
                pos += k
        return Matrix(rows)

    def text(self) -> str:
        parts = []
        for slot in self.slots:
            if isinstance(slot, ScalarSlot):
                parts.append(_monomial_text(slot.monomial))
            else:
                mono = "" if not slot.monomial else _monomial_text(slot.monomial)
                key = "".join(str(d) for d in slot.key)
                parts.append(f"{mono}S_{{{key}}}")
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class MatrixFamily:
    """Continuous family given as an explicit matrix of linear entries.

    Each entry is (coefficient, parameter-or-None); the entry value is the
    coefficient times the parameter (or the coefficient itself).
    """

    name: str
    params: tuple[str, ...]
    rows: tuple[tuple[tuple[Fraction, str | None], ...], ...]
    condition: str = ""

    def instantiate(self, values: Mapping[str, object]) -> Matrix:
        missing = [p for p in self.params if p not in values]
        if missing:
            raise ValueError(f"family {self.name} missing parameters {missing}")
        out = []
        for row in self.rows:
            out.append([
                c * (rat(values[sym]) if sym is not None else 1) for c, sym in row
            ])
        return Matrix(out)

    def entry_texts(self) -> list[list[str]]:
        grid = []
        for row in self.rows:
            line = []
            for c, sym in row:
                if sym is None:
                    line.append(str(c))
                elif c == 1:
                    line.append(sym)
                elif c == -1:
                    line.append("-" + sym)
                else:
                    line.append(f"{c}*{sym}")
            grid.append(line)
        return grid


# -- parsing ---------------------------------------------------------------

_MASK_RE = re.compile(r"^p(\d+)$")
_TUPLE_ITEM_RE = re.compile(r"^(-?)X_(\d+)$")
_WEYL_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*E_(\d+)\^(\d+)")
_BRACKETED_RE = re.compile(r"^\[(.*)\]_([A-Za-z]\w*)$")
_BLOCK_ENTRY_RE = re.compile(r"^([a-z0-9^]*?)(?:S_\{(\d+)\})?$")
_MONO_FACTOR_RE = re.compile(r"([a-z])(?:\^(\d+))?")


def parse_discrete(text: str) -> DiscreteGen:
    """Parse a sign mask p... or a (possibly doubled) signed tuple."""
    s = text.strip().replace(" ", "")
    m = _MASK_RE.match(s)
    if m:
        return SignMask(tuple(int(ch) for ch in m.group(1)))
    weyl = False
    if s.startswith("((") and s.endswith("))"):
        weyl = True
        s = s[1:-1]
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"cannot parse discrete generator {text!r}")
    items = s[1:-1].split(",")
    images = []
    for item in items:
        m = _TUPLE_ITEM_RE.match(item)
        if not m:
            raise ValueError(f"bad tuple item {item!r} in {text!r}")
        images.append((-1 if m.group(1) else 1, int(m.group(2))))
    return SignedPermutation(tuple(images), weyl=weyl)


def format_discrete(gen: DiscreteGen) -> str:
    return gen.text()


def parse_weyl(text: str) -> OuterDer:
    """Parse a derivation combo, optionally bracketed with a parameter tag."""
    s = text.strip().replace(" ", "")
    param = None
    m = _BRACKETED_RE.match(s)
    if m:
        s, param = m.group(1), m.group(2)
    terms = []
    consumed = 0
    for m in _WEYL_TERM_RE.finditer(s):
        if m.start() != consumed:
            raise ValueError(f"cannot parse derivation combo {text!r}")
        consumed = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = rat(m.group(2)) if m.group(2) else Fraction(1)
        terms.append((int(m.group(3)), int(m.group(4)), sign * coeff))
    if not terms or consumed != len(s):
        raise ValueError(f"cannot parse derivation combo {text!r}")
    return OuterDer(tuple(terms), bracket_param=param)


def format_weyl(der: OuterDer) -> str:
    return der.text()


def _parse_monomial(s: str) -> Monomial:
    if s in ("", "1"):
        return ()
    factors: dict[str, int] = {}
    consumed = 0
    order = []
    for m in _MONO_FACTOR_RE.finditer(s):
        if m.start() != consumed:
            raise ValueError(f"bad monomial {s!r}")
        consumed = m.end()
        sym = m.group(1)
        exp = int(m.group(2)) if m.group(2) else 1
        if exp < 1:
            raise ValueError(f"bad exponent in monomial {s!r}")
        if sym not in factors:
            order.append(sym)
        factors[sym] = factors.get(sym, 0) + exp
    if consumed != len(s):
        raise ValueError(f"bad monomial {s!r}")
    return tuple((sym, factors[sym]) for sym in order)


def parse_block_pattern(text: str) -> BlockPattern:
    """Parse a diagonal template like (ab^2,ab,a,b) or (1,S_{23},1)."""
    s = text.strip().replace(" ", "")
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"block pattern must be parenthesized: {text!r}")
    body = s[1:-1]
    if not body:
        raise ValueError("empty block pattern")
    slots: list[ScalarSlot | BlockSlot] = []
    pos = 1
    for raw in body.split(","):
        m = _BLOCK_ENTRY_RE.match(raw)
        if not m or (m.group(1) == "" and m.group(2) is None):
            raise ValueError(f"bad block pattern entry {raw!r} in {text!r}")
        mono_part, key_part = m.group(1), m.group(2)
        if key_part is None:
            slots.append(ScalarSlot(_parse_monomial(mono_part)))
            pos += 1
        else:
            key = tuple(int(ch) for ch in key_part)
            if list(key) != sorted(set(key)):
                raise ValueError(f"block key must be ascending: {raw!r}")
            first = next(
                (sl for sl in slots if isinstance(sl, BlockSlot) and sl.key == key),
                None,
            )
            if first is None and key != tuple(range(pos, pos + len(key))):
                raise ValueError(
                    f"block {raw!r} covers rows {tuple(range(pos, pos + len(key)))} "
                    f"but is named {key}"
                )
            slots.append(BlockSlot(key, _parse_monomial(mono_part)))
            pos += len(key)
    return BlockPattern(tuple(slots))


def format_block_pattern(pattern: BlockPattern) -> str:
    return pattern.text()
