"""Command-line front end.

Exit codes: 0 success (and "empty"/"hollow"/"equivalent" answers), 1 for the
negative answer of a yes/no subcommand, 2 for bad input, 3 when a cap is hit.
"""
import argparse
import json
import sys

from . import __version__, linalg
from .canonical import are_equivalent, canonical_form
from .config import load_config
from .emptiness import interior_point, is_empty
from .errors import CapExceeded, LatticeError
from .search import binary_construction, census, cre_table, crp_lower, crp_upper, lift3
from .simplex import (
    DELTA8,
    DELTA9,
    LatticeSimplex,
    construct_named,
    quotient_group,
    to_p_power_form,
)


def read_simplex(source: str, stdin=None) -> LatticeSimplex:
    if source == "-":
        text = (stdin or sys.stdin).read()
    else:
        with open(source) as fh:
            text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LatticeError(f"bad JSON simplex: {exc}") from None
        return LatticeSimplex.from_json(obj)
    return LatticeSimplex(linalg.parse_matrix_text(text))


def _primes(text):
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--order-cap", type=int)
    common.add_argument("--perm-cap", type=int)
    common.add_argument("--enumeration-cap", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--format", dest="output", choices=("text", "json"))

    parser = argparse.ArgumentParser(prog="latsimplex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("rank", "empty", "hollow", "canon"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("matrix", help="matrix file, or - for stdin")
    sp = sub.add_parser("equiv", parents=[common])
    sp.add_argument("matrix1")
    sp.add_argument("matrix2")

    sp = sub.add_parser("construct", parents=[common])
    sp.add_argument("kind", choices=("white", "reeve", "dilate", "binary", "delta8", "delta9", "lift"))
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--iterations", type=int, default=1, help="lift: how many times to lift delta8")
    sp.add_argument("--from", dest="source", help="lift: 3-power simplex to lift instead of delta8")

    sp = sub.add_parser("census", parents=[common])
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--dedupe", action="store_true")
    sp.add_argument("--out", help="write the JSON report to this (new) file")

    sp = sub.add_parser("crp", parents=[common])
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)

    sp = sub.add_parser("table", parents=[common])
    sp.add_argument("--max-dim", type=int, required=True)
    sp.add_argument("--primes", type=_primes, default=(2, 3))
    return parser


def _emit_matrix(simplex, cfg, out):
    if cfg.output == "json":
        out.write(json.dumps(simplex.to_json()) + "\n")
    else:
        out.write(linalg.format_matrix_text(simplex.matrix))


def _construct(args, cfg, out):
    kind, params = args.kind, args.params
    if kind == "binary":
        if len(params) != 3:
            raise LatticeError("construct binary takes P K L")
        simplex = binary_construction(*params).to_simplex()
    elif kind == "lift":
        form = DELTA8
        if args.source:
            form = to_p_power_form(read_simplex(args.source))
        for _ in range(args.iterations):
            form = lift3(form)
        simplex = form.to_simplex()
    elif kind in ("delta8", "delta9"):
        simplex = (DELTA8 if kind == "delta8" else DELTA9).to_simplex()
    else:
        simplex = construct_named(kind, *params)
    _emit_matrix(simplex, cfg, out)
    return 0


def _dispatch(args, cfg, out, stdin):
    cmd = args.command
    as_json = cfg.output == "json"
    if cmd == "rank":
        G = quotient_group(read_simplex(args.matrix, stdin))
        if as_json:
            out.write(json.dumps({"divisors": list(G.divisors), "rank": G.cyclicity_rank,
                                  "order": G.order}) + "\n")
        else:
            out.write(f"divisors: {' '.join(map(str, G.divisors))}\n")
            out.write(f"rank: {G.cyclicity_rank}\norder: {G.order}\n")
        return 0
    if cmd == "empty":
        cert = is_empty(read_simplex(args.matrix, stdin), cfg.order_cap)
        if as_json:
            out.write(json.dumps({"verdict": cert.verdict, "group_order": cert.group_order,
                                  "cosets_checked": cert.cosets_checked,
                                  "witness": list(cert.witness) if cert.witness else None}) + "\n")
        else:
            out.write(cert.verdict + "\n")
            if cert.witness is not None:
                out.write("witness: " + " ".join(map(str, cert.witness)) + "\n")
        return 0 if cert.empty else 1
    if cmd == "hollow":
        pt = interior_point(read_simplex(args.matrix, stdin), cfg.order_cap)
        if as_json:
            out.write(json.dumps({"hollow": pt is None, "interior_point": list(pt) if pt else None}) + "\n")
        else:
            out.write("hollow\n" if pt is None else "not hollow\ninterior point: " + " ".join(map(str, pt)) + "\n")
        return 0 if pt is None else 1
    if cmd == "canon":
        cf = canonical_form(read_simplex(args.matrix, stdin), cfg.perm_cap)
        if as_json:
            out.write(json.dumps({"canonical": [list(r) for r in cf.matrix]}) + "\n")
        else:
            out.write(linalg.format_matrix_text(cf.matrix))
        return 0
    if cmd == "equiv":
        a = read_simplex(args.matrix1, stdin)
        b = read_simplex(args.matrix2, stdin)
        same = are_equivalent(a, b, cfg.perm_cap)
        out.write((json.dumps({"equivalent": same}) if as_json else
                   ("equivalent" if same else "not equivalent")) + "\n")
        return 0 if same else 1
    if cmd == "construct":
        return _construct(args, cfg, out)
    if cmd == "census":
        rep = census(args.prime, args.dim, args.rank, prune=args.prune, dedupe=args.dedupe,
                     order_cap=cfg.order_cap, enumeration_cap=cfg.enumeration_cap,
                     perm_cap=cfg.perm_cap, workers=cfg.workers)
        rep.config = cfg.as_dict()
        if args.out:
            rep.save(args.out)
        if as_json:
            out.write(rep.dumps() + "\n")
        else:
            out.write(f"pool size: {rep.pool_size}\n")
            out.write(f"candidates: {rep.candidates_enumerated} of {rep.candidates_total}\n")
            if args.prune:
                out.write(f"pruned: {rep.prune_killed}\n")
            out.write(f"empty: {len(rep.empty_found)}\n")
            if args.dedupe:
                out.write(f"classes: {len(rep.equivalence_classes)}\n")
            for B in rep.empty_found:
                out.write("  " + " | ".join(" ".join(map(str, row)) for row in B) + "\n")
        return 0
    if cmd == "crp":
        res = crp_lower(args.prime, args.dim, cfg.order_cap, cfg.enumeration_cap)
        sheet = crp_upper(args.prime, args.dim)
        if as_json:
            out.write(json.dumps({"p": res.p, "d": res.d, "lower": res.value, "exact": res.exact,
                                  "upper": sheet.combined, "log_bound": sheet.log_bound,
                                  "pool_bound": sheet.pool_bound, "linear_bound": sheet.linear_bound,
                                  "witness": res.witness.to_json()}) + "\n")
        else:
            status = "exact" if res.exact else "lower bound only"
            out.write(f"cr_{res.p}({res.d}) >= {res.value} ({status}); upper bound {sheet.combined}\n")
            out.write("witness B: " + " | ".join(" ".join(map(str, r)) for r in res.witness.B) + "\n")
        return 0
    if cmd == "table":
        rows = cre_table(args.max_dim, args.primes, cfg.order_cap, cfg.enumeration_cap)
        if as_json:
            out.write(json.dumps([{"d": r.d, "lower_by_prime": r.lower_by_prime, "lower": r.lower,
                                   "upper": r.upper, "bracket": list(r.bracket)} for r in rows]) + "\n")
        else:
            head = "d  " + "  ".join(f"cr_{p}>=" for p in args.primes) + "  lower upper  cr_e"
            out.write(head + "\n")
            for r in rows:
                lows = "  ".join(f"{r.lower_by_prime[p]:>6}" for p in args.primes)
                br = " or ".join(map(str, r.bracket))
                out.write(f"{r.d:<2} {lows}  {r.lower:>5} {r.upper:>5}  {br}\n")
        return 0
    raise AssertionError(cmd)  # pragma: no cover


def main(argv=None, stdin=None, stdout=None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config, order_cap=args.order_cap, perm_cap=args.perm_cap,
                          enumeration_cap=args.enumeration_cap, workers=args.workers,
                          output=args.output)
        return _dispatch(args, cfg, out, stdin)
    except CapExceeded as exc:
        print(f"latsimplex: {exc}", file=sys.stderr)
        return 3
    except (LatticeError, OSError) as exc:
        print(f"latsimplex: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


run = main
