"""Command-line entry point ``charp``.

Exit codes: 0 success, 1 usage or parse error, 2 computation budget
exceeded, 3 theorem-consistency failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from ..cycliccover import base_embedding_check, build_cover, cover_index_check, fpure_transfer_check
from ..divisorial import (
    CertificateError,
    LinkageError,
    PreconditionError,
    canonical_ideal,
    find_certificate,
    is_principal_mod_Q,
    qgor_index,
)
from ..fsingular import SocleError, StabilizationError, fedder_is_fpure, splitting_ideal
from ..groebner import BudgetExceeded
from .dsl import DSLError, load_catalog, load_entry
from .experiments import deform_check, stability_scan
from .report import emit_report, plot_stability

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_THEOREM = 0, 1, 2, 3

log = logging.getLogger("charp")


def _out(args, records, kind: str, **params) -> None:
    text = emit_report(records, args.format, args.output, kind=kind, **params)
    if not args.output:
        sys.stdout.write(text)


def cmd_gb(args) -> int:
    e = load_entry(args.file)
    G = e.R.Q.gb()
    rec = {"ring": e.name, "p": e.p, "order": str(e.R.order.kind), "basis": [str(g) for g in G],
           "dimension": e.R.dim}
    _out(args, rec, "gb", file=os.path.basename(args.file))
    return EXIT_OK


def cmd_fpure(args) -> int:
    e = load_entry(args.file)
    rec = {"ring": e.name, "p": e.p, "R": fedder_is_fpure(e.R).as_dict()}
    if e.f is not None:
        rec["R/(f)"] = fedder_is_fpure(e.R.quotient_by(e.f)).as_dict()
    _out(args, rec, "fpure", file=os.path.basename(args.file))
    return EXIT_OK


def cmd_canonical(args) -> int:
    e = load_entry(args.file)
    D = canonical_ideal(e.R, seed=args.seed)
    rec = {"ring": e.name, "p": e.p, "J": [str(g) for g in D.J.gens], "unit": D.is_unit()}
    if not D.is_unit():
        D = find_certificate(D, seed=args.seed)
        g = is_principal_mod_Q(D.J, e.R, seed=args.seed)
        rec["certificate"] = [str(D.a), str(D.x2)]
        rec["principal_generator"] = None if g is None else str(g)
    _out(args, rec, "canonical", file=os.path.basename(args.file), seed=args.seed)
    return EXIT_OK


def cmd_index(args) -> int:
    e = load_entry(args.file)
    n = qgor_index(canonical_ideal(e.R, seed=args.seed), n_max=args.nmax, seed=args.seed)
    rec = {"ring": e.name, "p": e.p, "n_max": args.nmax, "index": n,
           "status": "found" if n is not None else f"not found <= {args.nmax}"}
    _out(args, rec, "index", file=os.path.basename(args.file), seed=args.seed)
    return EXIT_OK


def cmd_splitting(args) -> int:
    e = load_entry(args.file)
    d = splitting_ideal(e.R, None, args.e, seed=args.seed)
    rec = {"ring": e.name, "p": e.p, "e": args.e, "t_used": d.t_used, "params": [str(x) for x in d.params],
           "socle_u": str(d.socle_u), "Ie": [str(g) for g in d.Ie.gens], "proper": not d.Ie.is_unit(),
           "note": d.note}
    _out(args, rec, "splitting-ideal", file=os.path.basename(args.file), e=args.e, seed=args.seed)
    return EXIT_OK


def cmd_cover(args) -> int:
    e = load_entry(args.file)
    D = find_certificate(canonical_ideal(e.R, seed=args.seed), seed=args.seed)
    n = args.n
    if n is None:
        n = qgor_index(D, n_max=args.nmax, seed=args.seed)
        if n is None:
            sys.stderr.write(f"index not found <= {args.nmax}; pass -n\n")
            return EXIT_USAGE
    C = build_cover(e.R, D, n, seed=args.seed)
    rec = {"ring": e.name, "p": e.p, **C.describe(),
           "base_embedding": base_embedding_check(C),
           "fpure_transfer": fpure_transfer_check(C)}
    if args.expect_index is not None:
        chk = cover_index_check(C, args.expect_index, n_max=args.nmax, seed=args.seed)
        rec["cover_index"] = {"found": chk.found, "expected": chk.expected, "status": chk.status}
    _out(args, rec, "cover", file=os.path.basename(args.file), n=n, seed=args.seed)
    ok = rec["base_embedding"] and rec["fpure_transfer"] and rec.get("cover_index", {}).get("status", "match") == "match"
    return EXIT_OK if ok else EXIT_THEOREM


def cmd_deform(args) -> int:
    e = load_entry(args.file)
    r = deform_check(e, n_max=args.nmax, seed=args.seed)
    _out(args, [r], "deform-check", file=os.path.basename(args.file), seed=args.seed)
    return EXIT_THEOREM if r.fatal else EXIT_OK


def _stability_fatal(r) -> bool:
    return bool(r.cross_failures) or (r.quotient_fpure and r.complete and r.minimal_stable_N is None)


def cmd_stability(args) -> int:
    e = load_entry(args.file)
    r = stability_scan(e, e=args.e, N_max=args.nmax, samples_per_N=args.samples, seed=args.seed,
                       monomial_cap=args.cap)
    _out(args, [r], "stability-scan", file=os.path.basename(args.file), e=args.e, n_max=args.nmax,
         samples=args.samples, seed=args.seed, cap=args.cap)
    if args.figure:
        plot_stability([r], args.figure)
    if not r.complete:
        return EXIT_BUDGET
    return EXIT_THEOREM if _stability_fatal(r) else EXIT_OK


def run_catalog(directory: str, out_dir: Optional[str], seed: int = 0, n_max: int = 6, scan: bool = True,
                e: int = 1, scan_nmax: int = 6, samples: int = 3, cap: int = 30, figures: bool = True):
    """Deformation checks for every entry, stability scans for entries asserting
    CM symbolic powers with an F-pure quotient. Returns (deform, stability, texts)."""
    entries = [x for x in load_catalog(directory) if x.f is not None]
    deform = [deform_check(x, n_max=n_max, seed=seed) for x in entries]
    stab = []
    if scan:
        for x, d in zip(entries, deform):
            if d.status == "CONSISTENT" and e in x.jpe_cm():
                stab.append(stability_scan(x, e=e, N_max=scan_nmax, samples_per_N=samples, seed=seed,
                                           monomial_cap=cap))
    params = dict(seed=seed, n_max=n_max, e=e, scan_nmax=scan_nmax, samples=samples, cap=cap)
    texts = {
        "catalog.json": emit_report({"deform": [d.as_dict() for d in deform],
                                     "stability": [s.as_dict() for s in stab]}, "json", kind="catalog-run", **params),
        "deform.csv": emit_report(deform, "csv"),
        "stability.csv": emit_report(stab, "csv"),
        "summary.txt": emit_report(deform + stab, "text"),
    }
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        for name, text in texts.items():
            with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        if figures and stab:
            plot_stability(stab, os.path.join(out_dir, "stability.png"))
    return deform, stab, texts


def cmd_catalog(args) -> int:
    deform, stab, texts = run_catalog(args.dir, args.output_dir, seed=args.seed, n_max=args.nmax,
                                      scan=not args.no_scan, e=args.e, scan_nmax=args.scan_nmax,
                                      samples=args.samples, cap=args.cap, figures=not args.no_figures)
    if not args.output_dir:
        sys.stdout.write(texts["summary.txt"])
    fatal = [d.name for d in deform if d.fatal] + [s.name for s in stab if _stability_fatal(s)]
    if fatal:
        sys.stderr.write("theorem-consistency failure: " + ", ".join(fatal) + "\n")
        return EXIT_THEOREM
    if any(not s.complete for s in stab):
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charp", description="F-purity, splitting ideals and Q-Gorenstein "
                                 "computations over F_p")
    ap.add_argument("--log-level", default="WARNING")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        p.add_argument("--output", "-o")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gb", help="reduced Groebner basis of the defining ideal")
    p.add_argument("file"); common(p); p.set_defaults(func=cmd_gb)
    p = sub.add_parser("fpure", help="Fedder test for R and R/(f)")
    p.add_argument("file"); common(p); p.set_defaults(func=cmd_fpure)
    p = sub.add_parser("canonical", help="canonical ideal by linkage")
    p.add_argument("file"); common(p); p.set_defaults(func=cmd_canonical)
    p = sub.add_parser("index", help="Q-Gorenstein index search")
    p.add_argument("file"); p.add_argument("--nmax", type=int, default=6); common(p); p.set_defaults(func=cmd_index)
    p = sub.add_parser("splitting-ideal", help="Frobenius splitting ideal I_e")
    p.add_argument("file"); p.add_argument("-e", type=int, default=1); common(p); p.set_defaults(func=cmd_splitting)
    p = sub.add_parser("cover", help="cyclic cover of the canonical class")
    p.add_argument("file"); p.add_argument("-n", type=int)
    p.add_argument("--nmax", type=int, default=6); p.add_argument("--expect-index", type=int)
    common(p); p.set_defaults(func=cmd_cover)
    p = sub.add_parser("deform-check", help="F-purity of R/(f) against R")
    p.add_argument("file"); p.add_argument("--nmax", type=int, default=6); common(p, "text")
    p.set_defaults(func=cmd_deform)
    p = sub.add_parser("stability-scan", help="F-purity of R/(f + eps) for eps in m^N")
    p.add_argument("file"); p.add_argument("-e", type=int, default=1)
    p.add_argument("--nmax", type=int, default=6); p.add_argument("--samples", type=int, default=4)
    p.add_argument("--cap", type=int, default=200); p.add_argument("--figure")
    common(p, "text"); p.set_defaults(func=cmd_stability)
    p = sub.add_parser("catalog-run", help="deformation checks and stability scans over a directory")
    p.add_argument("dir"); p.add_argument("--output-dir", "-O")
    p.add_argument("--seed", type=int, default=0); p.add_argument("--nmax", type=int, default=6)
    p.add_argument("-e", type=int, default=1); p.add_argument("--scan-nmax", type=int, default=4)
    p.add_argument("--samples", type=int, default=2); p.add_argument("--cap", type=int, default=10)
    p.add_argument("--no-scan", action="store_true"); p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DSLError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except (PreconditionError, CertificateError, LinkageError, SocleError, StabilizationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
