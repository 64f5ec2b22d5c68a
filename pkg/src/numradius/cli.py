"""Command-line entry point: ``numradius {bounds,verify,range,catalog}``.

Exit codes: 0 success, 1 usage or I/O error, 2 an inequality was violated
(which would point to a bug, since every cataloged bound is a proven inequality).
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

from . import bounds as bd
from . import harness as hs
from .ensembles import EnsembleSpec
from .matrix import block_offdiag, cmatrix, hermitize, load_matrix
from .numrange import disk_check, numerical_radius, range_boundary, write_boundary_csv
from .spectral import herm_norm

DEFAULT_SEED = 42
DEMOS = ("noncomparability", "counterexample", "disk")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    out: str | None = None
    seed: int = DEFAULT_SEED
    tol: float = hs.TARGET_TOL
    ensembles: list = field(default_factory=list)
    rs: list = field(default_factory=list)
    alphas: list = field(default_factory=list)
    threads: int = 1
    lemma_count: int = 10_000
    identity_count: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


def _load(path=None, name=None):
    if name is not None:
        try:
            return hs.NAMED_MATRICES[name]
        except KeyError:
            raise UsageError(f"unknown matrix {name!r}; choose from {sorted(hs.NAMED_MATRICES)}") from None
    return load_matrix(path)


def _fmt(x):
    return f"{x:.8f}"


# -- bounds ----------------------------------------------------------------------

def cmd_bounds(args, out=None):
    out = out or sys.stdout
    if args.matrix and args.paths:
        raise UsageError("give either matrix files or --matrix, not both")
    mats = [_load(name=args.matrix)] if args.matrix else [_load(p) for p in args.paths]
    if args.matrix_b:
        mats.append(_load(name=args.matrix_b))
    if len(mats) not in (1, 2):
        raise UsageError("need one matrix (or two for the off-diagonal bounds)")
    r, alpha = args.r, args.alpha
    a = bd.Operand(mats[0])
    w = numerical_radius(a.matrix, hs.TARGET_TOL)
    rows = [(bv, w) for bv in bd.classical_bounds(a)]
    rows += [(bv, w) for bv in bd.cor_min_grid(a, [r], [alpha])]
    rows.append((bd.lower_single(a), w))
    parts = hs.splits(a.matrix)[0][1]
    rows.append((bd.sum_upper(parts, alpha, r), w))
    wt = None
    if len(mats) == 2:
        b = bd.Operand(mats[1])
        wt = numerical_radius(block_offdiag(a.matrix, b.matrix), hs.TARGET_TOL)
        pair = [bd.offdiag_upper(a, b, alpha, r), *bd.lower_offdiag(a, b),
                bd.lower_max(a, b), bd.lower_combined(a, b)]
        rows += [(bv, wt) for bv in pair]
    recs = [hs.check_bound(bv, rad, "cli") for bv, rad in rows]
    print(f"w(A)   = {_fmt(w)}", file=out)
    print(f"w^2(A) = {_fmt(w * w)}", file=out)
    if wt is not None:
        print(f"w([[O,A],[B,O]]) = {_fmt(wt)}", file=out)
    print(f"{'id':<16}{'side':<7}{'target':<9}{'subject':<14}{'params':<22}{'value':>16}{'margin':>16}", file=out)
    for (bv, _), rec in zip(rows, recs):
        flag = "  VIOLATED" if rec.violated else ""
        print(f"{rec.bound_id:<16}{bv.side:<7}{bv.target:<9}{bv.subject:<14}{bv.params or '-':<22}"
              f"{bv.value:>16.8f}{rec.margin:>16.3e}{flag}", file=out)
    if args.json:
        payload = {"w": w, "w_offdiag": wt,
                   "bounds": [{"id": rec.bound_id, "side": bv.side, "target": bv.target,
                               "subject": bv.subject, "params": bv.params, "value": bv.value,
                               "margin": rec.margin, "violated": rec.violated}
                              for (bv, _), rec in zip(rows, recs)]}
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 2 if any(rec.violated for rec in recs) else 0


# -- verify ----------------------------------------------------------------------

def _demo(name, out):
    if name == "noncomparability":
        rep = hs.noncomparability_demo()
        for key, vals in (("pair1", rep.pair1), ("pair2", rep.pair2)):
            print(f"{key}: ||Re(A)+i Im(B)|| = {_fmt(vals['cartesian_norm'])}  "
                  f"max{{||A||,||B||}} = {_fmt(vals['max_norm'])}  "
                  f"cartesian bound = {_fmt(vals['cartesian_bound'])}  "
                  f"max bound = {_fmt(vals['max_bound'])}  w = {_fmt(vals['radius'])}", file=out)
        print("pair1: cartesian bound > max bound; pair2: cartesian bound < max bound", file=out)
    elif name == "counterexample":
        j3 = hs.NAMED_MATRICES["j3"]
        op = bd.Operand(j3)
        w = numerical_radius(j3, hs.TARGET_TOL)
        re_norm = herm_norm(hermitize(op.abs_power(1) @ op.abs_adj_power(1)))
        print(f"w={_fmt(w)} sqrt(||A*A+AA*||)/2={_fmt(0.5 * math.sqrt(op.sym_norm))} "
              f"||Re(|A||A*|)||={_fmt(re_norm)} (nonzero)", file=out)
    elif name == "disk":
        for label in ("j2", "j3"):
            rep = hs.disk_theorem_check(hs.NAMED_MATRICES[label])
            print(f"{label}: hypothesis={rep.hypothesis} w={_fmt(rep.radius)} "
                  f"radius={_fmt(rep.expected_radius)} disk={rep.disk} passed={rep.passed}", file=out)
    else:
        raise UsageError(f"unknown demo {name!r}; choose from {DEMOS}")
    return 0


def _named_extra():
    one = cmatrix([[1.0]])
    items = [(f"named:{k}", m) for k, m in hs.NAMED_MATRICES.items()]
    items += [("named:rem1-pair1", (hs.NAMED_MATRICES["rem1a"], hs.NAMED_MATRICES["rem1b1"])),
              ("named:rem1-pair2", (hs.NAMED_MATRICES["rem1a"], hs.NAMED_MATRICES["rem1b2"])),
              ("named:ones", (one, one))]
    return items


def run_verify(cfg):
    """Run the configured suites; returns ``(records, summary)``."""
    specs = cfg.ensembles or hs.default_specs(cfg.seed)
    rs = cfg.rs or list(hs.DEFAULT_RS)
    alphas = cfg.alphas or list(hs.DEFAULT_ALPHAS)
    records = hs.run_inequality_suite(specs, rs, alphas, extra=_named_extra(),
                                      threads=cfg.threads, tol=cfg.tol)
    for name in hs.LEMMAS:
        if cfg.lemma_count:
            records += hs.run_lemma_suite(name, cfg.lemma_count, cfg.seed)
    if cfg.identity_count:
        records += hs.run_identity_suite(cfg.identity_count, cfg.seed)
    return records, hs.summarize(records)


def cmd_verify(args, out=None):
    out = out or sys.stdout
    if args.demo:
        return _demo(args.demo, out)
    try:
        specs = [EnsembleSpec.parse(text, args.seed) for text in args.ensemble]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = RunConfig("verify", out=args.out, seed=args.seed,
                    tol=hs.TARGET_TOL if args.tol is None else args.tol, ensembles=specs,
                    rs=args.r, alphas=args.alpha, threads=args.threads,
                    lemma_count=args.lemma_count, identity_count=args.identity_count)
    records, summary = run_verify(cfg)
    os.makedirs(cfg.out, exist_ok=True)
    with open(os.path.join(cfg.out, "records.csv"), "w") as fh:
        hs.write_records_csv(records, fh)
    with open(os.path.join(cfg.out, "summary.json"), "w") as fh:
        hs.write_summary_json(summary, fh)
    bad = sum(v["violations"] for v in summary.values())
    low = min((v["min_margin"] for v in summary.values()), default=math.nan)
    print(f"violations={bad} trials={len(records)} min_margin={low:.17g}", file=out)
    return 0 if bad == 0 else 2


# -- range / catalog -------------------------------------------------------------

def cmd_range(args, out=None):
    out = out or sys.stdout
    if args.count < 8:
        raise UsageError("--count must be at least 8")
    if (args.matrix is None) == (args.path is None):
        raise UsageError("give exactly one of a matrix file or --matrix")
    a = _load(name=args.matrix) if args.matrix else _load(args.path)
    boundary = range_boundary(a, args.count)
    op = bd.Operand(a)
    radius = 0.5 * math.sqrt(op.sym_norm)
    verdict = disk_check(boundary, radius, args.disk_tol)
    if args.out == "-":
        write_boundary_csv(boundary, out)
    else:
        with open(args.out, "w") as fh:
            write_boundary_csv(boundary, fh)
    print(f"disk={'true' if verdict.holds else 'false'} radius={_fmt(radius)} "
          f"max_deviation={verdict.max_deviation:.3e}", file=sys.stderr if args.out == "-" else out)
    return 0


def cmd_catalog(args, out=None):
    out = out or sys.stdout
    if args.json:
        rows = [{"id": e.id, "side": e.side, "target": e.target, "params": e.params,
                 "formula": e.formula} for e in bd.CATALOG]
        json.dump(rows, out, indent=2)
        out.write("\n")
        return 0
    for e in bd.CATALOG:
        print(f"{e.id:<10}{e.side:<7}{e.target:<6}{e.params:<13}{e.formula}", file=out)
    return 0


def build_parser():
    p = _Parser(prog="numradius", description="Numerical radius bounds and their verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="evaluate every catalog bound on a matrix")
    b.add_argument("paths", nargs="*", help="matrix JSON file(s); a second file enables the off-diagonal bounds")
    b.add_argument("--matrix", choices=sorted(hs.NAMED_MATRICES))
    b.add_argument("--matrix-b", choices=sorted(hs.NAMED_MATRICES))
    b.add_argument("--r", type=float, default=1.0)
    b.add_argument("--alpha", type=float, default=1.0)
    b.add_argument("--json", metavar="PATH", help="also write the table as JSON")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master seed (default 42)")
    v.add_argument("--tol", type=float, help="numerical-radius tolerance for the bounded quantity")
    v.add_argument("--r", type=float, action="append", default=[], help="power r >= 1; repeatable")
    v.add_argument("--alpha", type=float, action="append", default=[], help="alpha in [0, 1]; repeatable")
    v.add_argument("--ensemble", action="append", default=[], metavar="KIND:DIM:COUNT",
                   help="replace the default ensembles; repeatable")
    v.add_argument("--out", default="verify-report", help="report directory")
    v.add_argument("--threads", type=int, default=1, help="worker threads; output does not depend on it")
    v.add_argument("--lemma-count", type=int, default=10_000, help="instances per lemma suite")
    v.add_argument("--identity-count", type=int, default=200, help="random pairs for the block identities")
    v.add_argument("--demo", choices=DEMOS)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("range", help="trace the numerical range boundary")
    g.add_argument("path", nargs="?")
    g.add_argument("--matrix", choices=sorted(hs.NAMED_MATRICES))
    g.add_argument("--count", type=int, default=360)
    g.add_argument("--out", default="boundary.csv", help="CSV path, '-' for stdout")
    g.add_argument("--disk-tol", type=float, default=1e-6)
    g.set_defaults(func=cmd_range)

    c = sub.add_parser("catalog", help="list every bound in the catalog")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors and --help return their status instead of exiting
        return exc.code
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"numradius: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
