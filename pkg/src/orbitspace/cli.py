"""Command-line front end: ``orbitspace {info,describe,samples,verify,certificate,hermite}``.

Exit codes: 0 success, 1 verification failure, 2 precondition violation,
3 parse error. All machine output is JSON with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import descriptions as desc
from .exactalg import ParseError, format_gaussian, format_polynomial, format_rational, parse_gaussian, parse_polynomial, to_rational
from .groups import (
    BUILTIN_GROUPS,
    GroupError,
    abelian_cyclic_factorization,
    broad_subgroup,
    elementary_abelian_2_rank,
    involutions,
    load_group,
    sylow2_chain,
)
from .hermite import BoundaryWarning, s4_membership
from .oracle import dump_samples, load_samples, sample_points, verify_description, verify_matrix_description
from .reynolds import CertificateError, negative_certificate

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_PARSE = 0, 1, 2, 3
METHODS = ("gram", "ps", "k1", "cyclic", "abelian", "order2")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def element_label(m) -> str:
    """Cycle notation for permutation matrices, rows otherwise."""
    if m == -type(m).identity(m.shape[0]):
        return "-I"
    if m.is_monomial() and all(v in (0, 1) for row in m.rows for v in row):
        n = m.shape[0]
        perm = [next(r for r in range(n) if m.rows[r][c] == 1) for c in range(n)]
        seen, cycles = set(), []
        for start in range(n):
            if start in seen or perm[start] == start:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(str(j + 1))
                j = perm[j]
            cycles.append("(" + " ".join(cyc) + ")")
        return "".join(cycles) or "()"
    return json.dumps([[format_rational(v) for v in row] for row in m.rows])


def _read_polys(path: str, n: int):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read polynomial file {path}: {exc}") from None
    if isinstance(data, dict):
        data = data.get("polynomials", data.get("inequalities", data.get("basis")))
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a list of polynomial strings")
    return [parse_polynomial(str(s), n) for s in data]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_info(args) -> int:
    g = load_group(args.group)
    rank = elementary_abelian_2_rank(g)
    broad = broad_subgroup(g)
    invs = involutions(g)
    report = {
        "name": g.name,
        "n": g.n,
        "order": g.order,
        "abelian": g.is_abelian(),
        "involutions": len(invs),
        "involution_classes": sum(1 for c in g.conjugacy_classes() if g.element_order(c[0]) == 2),
        "two_rank": rank,
        "predicted_inequalities": rank,
        "broad_subgroup": None if broad is None else [element_label(g.elements[i]) for i in broad],
        "sylow2_chain_orders": [h.order for h in sylow2_chain(g)] if g.order % 2 == 0 else [1],
    }
    if g.is_abelian():
        report["cyclic_factor_orders"] = list(abelian_cyclic_factorization(g).orders)
    _emit(_dump(report), args.out)
    return EXIT_OK


def cmd_describe(args) -> int:
    g = load_group(args.group)
    method = args.method
    if method == "gram":
        if args.generators == "descent":
            gens = desc.descent_basis(g.n)
        elif args.generators:
            gens = _read_polys(args.generators, g.n)
        else:
            gens = None
        m = desc.gram_matrix_B(g, gens)
        _emit(_dump(m.to_json(g.name, "gram")), args.out)
        return EXIT_OK
    if method == "ps":
        if args.invariants:
            fund = _read_polys(args.invariants, g.n)
        else:
            fund = desc.known_fundamental_invariants(g.name or "") or desc.invariant_generators(g)
        m = desc.procesi_schwarz_matrix(g, fund)
        _emit(_dump(m.to_json(g.name, "ps")), args.out)
        return EXIT_OK
    if method == "k1":
        d = desc.single_inequality_k1(g)
    elif method == "cyclic":
        full, generic = desc.cyclic_inequalities(g)
        d = generic if args.mode == "generic" else full
    elif method == "abelian":
        fg = [int(t) for t in args.factor_generators.split(",")] if args.factor_generators else None
        d = desc.abelian_inequalities(g, fg)
    else:
        d = desc.order2_inequality(g)
    if args.mode and args.mode != d.mode and method != "cyclic":
        d = d.with_mode(args.mode)
    _emit(d.dumps(), args.out)
    return EXIT_OK


def cmd_samples(args) -> int:
    g = load_group(args.group)
    _emit(dump_samples(sample_points(g, args.samples, args.seed)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_group(args.group)
    try:
        data = json.loads(Path(args.description).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read description file {args.description}: {exc}") from None
    if int(data.get("n", -1)) != g.n:
        raise ValueError(f"description is in {data.get('n')} variables, group acts on {g.n}")
    if args.sample_file:
        samples = load_samples(args.sample_file)
    else:
        samples = sample_points(g, args.samples, args.seed)
    if data.get("mode") == "matrix":
        report = verify_matrix_description(g, desc.SymPolyMatrix.from_json(data), samples)
        mode = "matrix"
    else:
        d = desc.Description.from_json(data, g)
        mode = args.mode or d.mode
        report = verify_description(g, d, samples, mode)
    out = report.to_json()
    out["mode"] = mode
    _emit(_dump(out), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_certificate(args) -> int:
    g = load_group(args.group)
    text = args.point.strip().strip("()[]")
    point = [parse_gaussian(t) for t in text.split(",")]
    cert = negative_certificate(g, point)
    _emit(_dump({
        "point": [format_gaussian(v) for v in point],
        "polynomial": format_polynomial(cert.polynomial),
        "value": format_rational(cert.value),
        "k": cert.k,
        "seed": format_polynomial(cert.seed),
        "orbit_size": cert.orbit_size,
    }), args.out)
    return EXIT_OK


def cmd_hermite(args) -> int:
    z = [to_rational(t.strip()) for t in args.coeffs.split(",")]
    if len(z) != 4:
        raise ParseError(f"--coeffs needs 4 rationals, got {len(z)}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryWarning)
        rep = s4_membership(z)
    _emit(_dump({
        "coeffs": [format_rational(v) for v in z],
        "minors": [format_rational(v) for v in rep.minors],
        "real_roots": rep.real_roots,
        "distinct_roots": rep.distinct_roots,
        "hyperbolic": rep.hyperbolic,
        "generic_membership": rep.generic,
        "boundary": rep.boundary,
        "verdict": rep.hyperbolic if rep.boundary else rep.generic,
        "fallback_used": rep.boundary,
    }), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitspace", description="Exact descriptions of real orbit spaces of finite matrix groups.")
    sub = p.add_subparsers(dest="command", required=True)
    group_help = f"group JSON file or built-in name ({', '.join(BUILTIN_GROUPS)})"

    s = sub.add_parser("info", help="order, involutions, 2-rank, broad subgroup")
    s.add_argument("group", help=group_help)
    s.add_argument("--out")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("describe", help="build a description or matrix")
    s.add_argument("group", help=group_help)
    s.add_argument("--method", choices=METHODS, required=True)
    s.add_argument("--invariants", help="JSON list of fundamental invariants (method ps)")
    s.add_argument("--generators", help="JSON list of module generators, or 'descent' (method gram)")
    s.add_argument("--factor-generators", help="comma-separated element indices (method abelian)")
    s.add_argument("--mode", choices=desc.MODES, help="override the emitted mode")
    s.add_argument("--out")
    s.set_defaults(func=cmd_describe)

    s = sub.add_parser("samples", help="write seeded conjugation-compatible sample points")
    s.add_argument("group", help=group_help)
    s.add_argument("--samples", type=int, default=200, help="points per conjugator class")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_samples)

    s = sub.add_parser("verify", help="check a description against the brute-force oracle")
    s.add_argument("group", help=group_help)
    s.add_argument("description")
    s.add_argument("--samples", type=int, default=200, help="points per conjugator class")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sample-file")
    s.add_argument("--mode", choices=desc.MODES, help="verify under this mode instead of the file's")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("certificate", help="negative certificate at a non-real point, e.g. '1,i'")
    s.add_argument("group", help=group_help)
    s.add_argument("point")
    s.add_argument("--out")
    s.set_defaults(func=cmd_certificate)

    s = sub.add_parser("hermite", help="Hermite-matrix test for a monic quartic")
    s.add_argument("--coeffs", required=True, help="z1,z2,z3,z4 for T^4 - z1 T^3 + z2 T^2 - z3 T + z4")
    s.add_argument("--out")
    s.set_defaults(func=cmd_hermite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (desc.PreconditionError, CertificateError, GroupError, desc.NonRealValueError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
