"""Command-line interface.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input errors.
Matrix output is a rational-string grid that re-parses bit-exactly; with
--transpose every printed matrix is transposed first (the convention for
maps acting on column vectors).
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import catalog, serialize
from .algebra import (
    Subspace,
    bracket,
    center,
    check_jacobi,
    derived_series,
    derived_subalgebra,
    is_nilpotent_algebra,
    killing_form,
    lower_central_series,
    subalgebra_on,
    upper_central_series,
)
from .automorphisms import (
    AutDescriptor,
    inner_one_param,
    is_automorphism,
    necessary_conditions,
)
from .decomposition import decompose, validate_decomposition
from .linalg import Matrix, format_matrix
from .sums import direct_sum, sum_descriptor, synthesize, zeta_space


def _emit(text: str = "") -> None:
    print(text)


def _fail(text: str) -> None:
    print(text)


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _print_matrix(m, transpose: bool) -> None:
    _emit(format_matrix(m, transpose=transpose))


def _parse_params(text: str | None) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ValueError(f"bad parameter assignment {piece!r}")
        sym, _, val = piece.partition("=")
        out[sym.strip()] = Fraction(val.strip())
    return out


def _load_algebra(path, validate=True):
    try:
        return serialize.load_algebra(path, validate=validate)
    except FileNotFoundError:
        raise SystemExit(_usage_error(f"no such file: {path}"))
    except (ValueError, KeyError, TypeError) as exc:
        raise SystemExit(_usage_error(f"cannot read algebra {path}: {exc}"))


def _cmd_validate(args) -> int:
    L = _load_algebra(args.file, validate=False)
    _emit(f"dim {L.dim}" + (f"  label {L.label}" if L.label else ""))
    _emit("antisymmetry ok (constants stored for i<j, extended by c_ji^k = -c_ij^k)")
    violations = check_jacobi(L)
    if not violations:
        _emit("jacobi ok")
        return 0
    for (i, j, k), residual in violations:
        _fail(f"FAIL jacobi ({i},{j},{k}) residual {tuple(str(x) for x in residual)}")
    return 1


def _series_dims(series) -> str:
    return " ".join(str(s.dim) for s in series)


def _cmd_invariants(args) -> int:
    L = _load_algebra(args.file)
    _emit(f"dim {L.dim}" + (f"  label {L.label}" if L.label else ""))
    Z = center(L)
    _emit(f"centre dim {Z.dim}")
    for row in Z.basis:
        _emit("  " + " ".join(str(x) for x in row))
    _emit(f"derived dim {derived_subalgebra(L).dim}")
    _emit(f"derived series dims: {_series_dims(derived_series(L))}")
    _emit(f"lower central dims: {_series_dims(lower_central_series(L))}")
    _emit(f"upper central dims: {_series_dims(upper_central_series(L))}")
    _emit(f"nilpotent: {'yes' if is_nilpotent_algebra(L) else 'no'}")
    _emit("killing form:")
    _print_matrix(killing_form(L), args.transpose)
    return 0


def _cmd_decompose(args) -> int:
    L = _load_algebra(args.file)
    dec = decompose(L, seed=args.seed)
    issues = validate_decomposition(L, dec)
    _emit(f"components: {len(dec.components)}")
    for idx, (comp, flag) in enumerate(zip(dec.components, dec.central_flags), 1):
        kind = "central" if flag else "noncentral"
        _emit(f"component {idx}: dim {comp.dim} ({kind})")
        for row in comp.basis:
            _emit("  " + " ".join(str(x) for x in row))
    for idx, proj in enumerate(dec.projections, 1):
        _emit(f"projection {idx}:")
        _print_matrix(proj, args.transpose)
    if issues:
        for issue in issues:
            _fail(f"FAIL {issue}")
        return 1
    _emit("decomposition ok")
    return 0


def _cmd_aut_check(args) -> int:
    L = _load_algebra(args.file)
    try:
        B = serialize.load_matrix(args.matrix)
    except FileNotFoundError:
        return _usage_error(f"no such file: {args.matrix}")
    except ValueError as exc:
        return _usage_error(f"cannot read matrix {args.matrix}: {exc}")
    mode = "numeric" if args.numeric else "exact"
    cand = B.to_numpy() if args.numeric else B
    rep = is_automorphism(L, cand, mode=mode)
    nec = necessary_conditions(L, cand, mode=mode)
    _emit(f"det {rep.det}")
    if rep.ok:
        _emit("automorphism ok")
    else:
        if rep.det == 0 or (args.numeric and abs(rep.det) <= 1e-9):
            _fail("FAIL singular matrix")
        for i, j, n in rep.violations:
            _fail(f"FAIL bracket i={i} j={j} component n={n}")
        if rep.violations:
            _fail(f"max residual {rep.max_residual}")
    tol = 1e-9 if args.numeric else 0
    t_ok = "ok" if nec.trace_residual <= tol else "FAIL"
    k_ok = "ok" if nec.killing_residual <= tol else "FAIL"
    _emit(f"necessary trace condition: {t_ok} (residual {nec.trace_residual})")
    _emit(f"necessary killing condition: {k_ok} (residual {nec.killing_residual})")
    return 0 if rep.ok and nec.ok else 1


def _sample_source(args):
    if args.catalog and args.file:
        raise SystemExit(_usage_error("give either --catalog NAME or FILE, not both"))
    if args.catalog:
        params = _parse_params(args.params)
        L = catalog.instantiate(args.catalog, params)
        desc = catalog.descriptor(args.catalog, params)
        return L, desc
    if args.file:
        try:
            return serialize.load_bundle(args.file)
        except FileNotFoundError:
            raise SystemExit(_usage_error(f"no such file: {args.file}"))
        except (ValueError, KeyError) as exc:
            raise SystemExit(_usage_error(f"cannot read bundle {args.file}: {exc}"))
    raise SystemExit(_usage_error("aut-sample needs --catalog NAME or FILE"))


def _cmd_aut_sample(args) -> int:
    try:
        L, desc = _sample_source(args)
    except (ValueError, ZeroDivisionError) as exc:
        return _usage_error(str(exc))
    mode = "numeric" if args.numeric else "exact"
    bad = 0
    for idx in range(args.count):
        B = catalog.draw_sample(L, desc, args.seed + idx, mode=mode)
        rep = is_automorphism(L, B, mode=mode)
        _emit(f"# sample {idx} seed {args.seed + idx}")
        _print_matrix(B, args.transpose)
        if rep.ok:
            _emit(f"ok det {rep.det}")
        else:
            bad += 1
            _fail(f"FAIL sample {idx}: violations {rep.violations[:3]}")
        _emit()
    return 1 if bad else 0


def _cmd_catalog_list(args) -> int:
    for name, note in catalog.list_entries():
        _emit(f"{name:18s} {note}".rstrip())
    return 0


def _cmd_catalog_verify(args) -> int:
    report = catalog.verify_catalog(samples_per_row=args.samples, seed=args.seed)
    for line in report.lines():
        _emit(line)
    _emit(f"{len(report.checks)} checks, {len(report.failures())} failures")
    return 0 if report.ok else 1


def _cmd_sum(args) -> int:
    parts = [_load_algebra(p) for p in args.files]
    s = direct_sum(parts)
    serialize.save_algebra(s.algebra, args.out)
    dims = "+".join(str(p.dim) for p in parts)
    _emit(f"wrote dim {s.algebra.dim} = {dims} to {args.out}")
    return 0


def _coordinate_parts(L, dims):
    """Split a basis into consecutive blocks and check they are ideals of
    vanishing mutual brackets."""
    if sum(dims) != L.dim:
        raise SystemExit(_usage_error(
            f"component dims {dims} do not sum to {L.dim}"))
    offsets = []
    pos = 0
    for d in dims:
        offsets.append(pos)
        pos += d
    failures = []
    for a in range(len(dims)):
        for b in range(a + 1, len(dims)):
            for i in range(offsets[a] + 1, offsets[a] + dims[a] + 1):
                for j in range(offsets[b] + 1, offsets[b] + dims[b] + 1):
                    if any(x != 0 for x in L.tensor.pair_image(i, j)):
                        failures.append((i, j))
    parts = []
    for off, d in zip(offsets, dims):
        rows = [tuple(Fraction(1 if c == off + r else 0) for c in range(L.dim))
                for r in range(d)]
        try:
            alg, _ = subalgebra_on(L, Subspace(L.dim, rows))
        except ValueError as exc:
            failures.append(str(exc))
            alg = None
        parts.append(alg)
    return parts, failures


def _cmd_sum_aut(args) -> int:
    L = _load_algebra(args.file)
    parts, failures = _coordinate_parts(L, args.components)
    if failures:
        for f in failures:
            _fail(f"FAIL blocks interact: {f}")
        return 1
    s = direct_sum(parts)
    if s.algebra.tensor != L.tensor:
        _fail("FAIL reassembled sum does not match the input tensor")
        return 1
    descs = [AutDescriptor(p.dim) for p in parts]
    sdesc = sum_descriptor(s, descs)
    classes = " ".join(
        "{" + ",".join(str(i + 1) for i in cls) + "}" for cls in sdesc.classes
    )
    _emit(f"components: {' '.join(str(d) for d in args.components)}")
    _emit(f"isomorphism classes: {classes}")
    _emit(f"zeta dimension: {len(sdesc.zeta.basis)}")
    rng = random.Random(args.seed)
    from .automorphisms import ReconstructionChoice

    bad = 0
    for idx in range(args.count):
        for _ in range(16):
            perm = _random_class_perm(sdesc, rng)
            zc = [Fraction(rng.randint(-2, 2)) for _ in sdesc.zeta.basis]
            choices = [ReconstructionChoice() for _ in parts]
            try:
                B = synthesize(sdesc, choices, perm=perm, zeta_coeffs=zc)
                break
            except ValueError:
                continue
        else:
            _fail(f"FAIL sample {idx}: no nonsingular draw")
            bad += 1
            continue
        rep = is_automorphism(L, B)
        _emit(f"# sample {idx}")
        _print_matrix(B, args.transpose)
        if rep.ok:
            _emit(f"ok det {rep.det}")
        else:
            bad += 1
            _fail(f"FAIL sample {idx}: violations {rep.violations[:3]}")
        _emit()
    return 1 if bad else 0


def _random_class_perm(sdesc, rng) -> tuple[int, ...]:
    n = sum(len(c) for c in sdesc.classes)
    perm = [None] * n
    for cls in sdesc.classes:
        members = list(cls)
        images = members[:]
        rng.shuffle(images)
        for src, dst in zip(members, images):
            perm[src] = dst
    return tuple(perm)


def _cmd_inner(args) -> int:
    L = _load_algebra(args.file)
    if not 1 <= args.j <= L.dim:
        return _usage_error(f"--j must be in 1..{L.dim}")
    try:
        eps = Fraction(args.eps)
    except (ValueError, ZeroDivisionError):
        return _usage_error(f"bad --eps value {args.eps!r}")
    mode = "numeric" if args.numeric else "auto"
    A = inner_one_param(L, args.j, eps if not args.numeric else float(eps),
                        mode=mode)
    _print_matrix(A, args.transpose)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--transpose", action="store_true",
                        help="transpose all printed matrices")

    parser = argparse.ArgumentParser(
        prog="lieaut",
        description="Exact automorphism checks for structure-constant Lie algebras",
    )
    parser.add_argument("--transpose", action="store_true",
                        help="transpose all printed matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="antisymmetry and Jacobi report")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("invariants", parents=[common],
                       help="centre, derived algebra, series, Killing form")
    p.add_argument("file")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("decompose", parents=[common],
                       help="split into indecomposable ideals")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("aut-check", parents=[common],
                       help="test a matrix against the bracket conditions")
    p.add_argument("file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--numeric", action="store_true")
    p.set_defaults(func=_cmd_aut_check)

    p = sub.add_parser("aut-sample", parents=[common],
                       help="draw verified automorphisms")
    p.add_argument("file", nargs="?")
    p.add_argument("--catalog", metavar="NAME")
    p.add_argument("--params", metavar="k=v,...")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--numeric", action="store_true")
    p.set_defaults(func=_cmd_aut_sample)

    p = sub.add_parser("catalog-list", parents=[common],
                       help="list catalog entries")
    p.set_defaults(func=_cmd_catalog_list)

    p = sub.add_parser("catalog-verify", parents=[common],
                       help="check every catalog row")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_catalog_verify)

    p = sub.add_parser("sum", parents=[common], help="write a direct sum")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("sum-aut", parents=[common],
                       help="synthesize automorphisms of a direct sum")
    p.add_argument("file")
    p.add_argument("--components", type=int, nargs="+", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=_cmd_sum_aut)

    p = sub.add_parser("inner", parents=[common],
                       help="print one inner one-parameter factor")
    p.add_argument("file")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--numeric", action="store_true")
    p.set_defaults(func=_cmd_inner)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    except ValueError as exc:
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
