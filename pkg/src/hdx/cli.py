"""Command-line entry point: ``hdx generate|analyze|verify|scan``.

Exit codes: 0 all applicable checks pass, 2 a check failed, 3 input error,
4 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from hdx import __version__
from hdx.cochains import FiniteAbelianGroup, localize, outside_restriction_weight, weight
from hdx.complex import SimplicialComplex
from hdx.errors import BudgetExceeded, DimensionError, InputError, enumeration_budget
from hdx.expansion import ExpansionConstants, expansion_constants, heavy_faces, is_minimal
from hdx.generators import SPECS, generate
from hdx.io import complex_to_dict, dumps, read_cochain, read_complex, record_to_dict, sha256_text
from hdx.verify import (
    DEFAULT_TOL,
    check_coboundary_profile,
    check_heavy_face_bound,
    check_heavy_mass_bound,
    check_link_product,
    check_small_set_expansion,
    expansion_constant,
    hypothesis_cap,
    scan_expansion,
)

DEFAULT_SEED = 20240917

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4


def _parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="hdx",
        description="Brute-force small-set expansion checks on weighted simplicial complexes.",
    )
    parser.add_argument("--version", action="version", version=f"hdx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def source_args(p):
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--complex", type=Path, help="Complex JSON file.")
        grp.add_argument("--gen", help=f"Generator spec ({SPECS}).")

    def common(p):
        p.add_argument("--group", default="z2", help="Coefficient group, e.g. z2, z3, z2xz4.")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="Tolerance for comparisons involving floating-point terms.")
        p.add_argument("--per-link-beta", action="store_true",
                       help="Classify heavy faces with each link's own beta.")
        p.add_argument("--no-clamp-beta", action="store_true",
                       help="Use the raw minimum link beta even when it exceeds 1.")
        p.add_argument("--out", type=Path, help="Write the report here instead of stdout.")

    g = sub.add_parser("generate", help="Write a named complex to a file.")
    g.add_argument("spec", help=f"One of: {SPECS}.")
    g.add_argument("--out", type=Path, help="Output path (default stdout).")

    a = sub.add_parser("analyze", help="Link expansion constants and heavy-face tables.")
    source_args(a)
    common(a)
    a.add_argument("--k", type=int, default=1, help="Cochain dimension of interest.")
    a.add_argument("--cochain", type=Path, action="append", default=[],
                   help="Cochain file to tabulate heavy faces for (repeatable).")

    v = sub.add_parser("verify", help="Run every inequality check on one cochain.")
    source_args(v)
    common(v)
    v.add_argument("--cochain", type=Path, required=True, help="Cochain JSON file.")

    s = sub.add_parser("scan", help="Check the expansion bound over many cochains.")
    source_args(s)
    common(s)
    s.add_argument("--k", type=int, default=1)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--max-support", type=int, help="Exhaust supports of size 1..N.")
    mode.add_argument("--sample", type=int, metavar="N", help="Check N seeded random cochains.")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED, help="64-bit seed for --sample.")
    s.add_argument("--workers", type=int, default=1)
    return parser.parse_args(argv)


def _load_complex(args) -> tuple[SimplicialComplex, dict]:
    if args.gen is not None:
        X, name = generate(args.gen)
        digest = sha256_text(dumps(complex_to_dict(X, name)))
        return X, {"name": name, "source": f"gen:{args.gen}", "sha256": digest}
    X, name, digest = read_complex(args.complex)
    return X, {"name": name, "source": str(args.complex), "sha256": digest}


def _check_k(X: SimplicialComplex, k: int):
    if not 0 <= k <= X.dimension - 1:
        raise DimensionError(f"k={k} is outside 0..{X.dimension - 1} for a {X.dimension}-dimensional complex")


def _constants_section(c: ExpansionConstants, clamp: bool) -> dict:
    return {
        "beta": c.beta,
        "beta_clamped": c.beta_clamped,
        "beta_used": c.effective_beta(clamp),
        "beta_vacuous": c.beta_vacuous,
        "lambda_raw": c.lambda_raw,
        "lambda": c.lam,
        "beta_per_link": [{"face": list(f), "beta": b} for f, b in c.beta_per_link.items()],
        "lambda_per_link": [{"face": list(f), "lambda2": v, "connected": f not in c.disconnected_links}
                            for f, v in c.lambda_per_link.items()],
        "disconnected_links": [list(f) for f in c.disconnected_links],
        "notes": [
            "beta is the minimum over links of faces of dimension 0..d-2",
            "lambda is the maximum over links of faces of dimension -1..d-2",
        ],
    }


def _base_report(command, args, inputs, X=None) -> dict:
    report = {
        "tool": "hdx",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "parameters": {
            "group": getattr(args, "group", None),
            "tolerance": getattr(args, "tol", None),
            "clamp_beta": not getattr(args, "no_clamp_beta", False),
            "per_link_beta": getattr(args, "per_link_beta", False),
            "budget": enumeration_budget(),
        },
        "warnings": [],
    }
    if X is not None:
        report["complex"] = {
            "dimension": X.dimension,
            "f_vector": [len(X.faces(j)) for j in range(X.dimension + 1)],
        }
    return report


def _heavy_tables(f, constants, clamp, per_link):
    beta = constants.effective_beta(clamp)
    per = constants.beta_per_link if per_link else None
    out = []
    for ell in range(f.k):
        h = heavy_faces(f, ell, beta, per)
        out.append({
            "level": ell,
            "heavy_faces": [list(s) for s in h.faces],
            "heavy_weight": h.weight,
            "conditional_mean": h.conditional_mean,
            "mass": h.mass,
            "faces": [{"face": list(s), "local_weight": lw, "outside_weight": ow, "heavy": hv}
                      for s, (lw, ow, hv) in h.table.items()],
        })
    return out


def cmd_generate(args) -> tuple[str, int]:
    X, name = generate(args.spec)
    return dumps(complex_to_dict(X, name)), EXIT_OK


def cmd_analyze(args) -> tuple[str, int]:
    X, src = _load_complex(args)
    G = FiniteAbelianGroup.parse(args.group)
    _check_k(X, args.k)
    clamp = not args.no_clamp_beta
    c = expansion_constants(X, G)
    report = _base_report("analyze", args, {"complex": src}, X)
    report["parameters"]["k"] = args.k
    report["constants"] = _constants_section(c, clamp)
    beta = c.effective_beta(clamp)
    report["expansion_bound"] = {
        "weight_cap": hypothesis_cap(args.k, beta, c.lam),
        "expansion_constant": expansion_constant(args.k, beta),
    }
    cochains = []
    for path in args.cochain:
        f, digest = read_cochain(path, X)
        if f.group != G:
            raise InputError(f"cochain {path} is over {f.group}, expected --group {G}")
        report["inputs"].setdefault("cochains", []).append({"source": str(path), "sha256": digest})
        cochains.append({"source": str(path), "k": f.k, "weight": weight(f),
                         "heavy": _heavy_tables(f, c, clamp, args.per_link_beta)})
    report["cochains"] = cochains
    report["status"] = "ok"
    return dumps(report), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    X, src = _load_complex(args)
    f, digest = read_cochain(args.cochain, X)
    G = FiniteAbelianGroup.parse(args.group)
    if f.group != G:
        raise InputError(f"cochain is over {f.group}, expected --group {G}")
    _check_k(X, f.k)
    clamp = not args.no_clamp_beta
    c = expansion_constants(X, G)
    beta = c.effective_beta(clamp)
    per = c.beta_per_link if args.per_link_beta else None
    report = _base_report("verify", args, {"complex": src, "cochain": {"source": str(args.cochain),
                                                                     "sha256": digest}}, X)
    report["parameters"]["k"] = f.k
    report["constants"] = _constants_section(c, clamp)

    localization = []
    for ell in range(f.k):
        rows = []
        for sigma in X.faces(ell):
            fs = localize(f, sigma)
            rows.append({"face": list(sigma), "local_weight": weight(fs),
                         "outside_weight": outside_restriction_weight(f, sigma),
                         "minimal": is_minimal(fs)})
        localization.append({"level": ell, "faces": rows})
    report["localization"] = localization
    locally_minimal = all(r["minimal"] for lvl in localization for r in lvl["faces"])
    report["locally_minimal"] = locally_minimal
    report["cochain"] = {"k": f.k, "weight": weight(f)}
    report["heavy"] = _heavy_tables(f, c, clamp, args.per_link_beta)

    records = []
    if f.k >= 1:
        records.append(check_coboundary_profile(f, c.lam, args.tol))
        for ell in range(f.k):
            records.append(check_link_product(f, ell, c.lam, args.tol))
        for ell in range(f.k):
            records.append(check_heavy_face_bound(f, ell, beta, per))
    records.append(check_heavy_mass_bound(f, beta, c.lam, per, args.tol))
    records.append(check_small_set_expansion(f, c, clamp, args.per_link_beta, args.tol))
    report["checks"] = [record_to_dict(r) for r in records]
    failed = [r.check_id for r in records if r.failures()]
    report["status"] = "fail" if failed else "pass"
    report["failed_checks"] = failed
    return dumps(report), EXIT_FAIL if failed else EXIT_OK


def cmd_scan(args) -> tuple[str, int]:
    X, src = _load_complex(args)
    G = FiniteAbelianGroup.parse(args.group)
    _check_k(X, args.k)
    clamp = not args.no_clamp_beta
    report = _base_report("scan", args, {"complex": src}, X)
    n_faces = len(X.faces(args.k))
    params = report["parameters"]
    params.update(k=args.k, seed=args.seed)
    if args.sample is not None:
        if args.sample < 0:
            raise InputError("--sample must be non-negative")
        sample = (args.sample, args.seed)
        max_support = None
        params.update(mode="sampled", sample=args.sample)
        print(f"hdx: seed={args.seed}", file=sys.stderr)
    else:
        sample = None
        max_support = n_faces if args.max_support is None else args.max_support
        if max_support < 1:
            raise InputError("--max-support must be at least 1")
        if max_support > n_faces:
            msg = f"--max-support {max_support} exceeds |X({args.k})| = {n_faces}; clamped to {n_faces}"
            report["warnings"].append(msg)
            print(f"hdx: warning: {msg}", file=sys.stderr)
            max_support = n_faces
        params.update(mode="exhaustive", max_support=max_support)
    result = scan_expansion(X, G, args.k, max_support=max_support, sample=sample, clamp=clamp,
                          per_link=args.per_link_beta, tol=args.tol, workers=args.workers)
    c = expansion_constants(X, G)
    report["constants"] = _constants_section(c, clamp)
    rows = []
    for rec in result.records:
        if rec.passed:
            rows.append({"candidate": rec.params["candidate"], "support": rec.params["support"],
                         "norm_f": rec.details["norm_f"], "norm_df": rec.lhs, "bound": rec.rhs,
                         "branch": rec.details["branch"], "verdict": rec.verdict})
        else:
            rows.append(record_to_dict(rec))
    report["scan"] = {"summary": result.summary, "records": rows}
    report["status"] = "fail" if result.summary["failed"] else "pass"
    return dumps(report), EXIT_FAIL if result.summary["failed"] else EXIT_OK


COMMANDS = {"generate": cmd_generate, "analyze": cmd_analyze, "verify": cmd_verify, "scan": cmd_scan}


def main(argv: Sequence[str] | None = None) -> int:
    args = _parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"hdx: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"hdx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
