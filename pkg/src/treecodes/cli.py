"""Command-line front end.

Exit status: 0 for success or a true verdict, 1 for a false verdict (the
witness is in the report), 2 for usage or data errors (one line on stderr).
JSON reports use sorted keys and exact rationals as ``"a/b"`` strings, so
identical invocations print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import birkhoff, concat, families, growth, treecode, ttn
from .errors import NotFound, NotTTN, SingularSystem, TreeCodeError
from .fileformat import dumps_matrix, read_matrix
from .scalar import parse_field

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def load_schema(name: str) -> dict:
    """Published JSON schema for a report kind (``verdict``, ``distance``, ``mds``, ...)."""
    from importlib.resources import files

    return json.loads((files("treecodes") / "schemas" / f"{name}.json").read_text())


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, report: dict, text: str | None = None):
    if args.json or text is None:
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)


def _write_or_print(path, text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_text(v) -> str:
    if v.holds:
        return f"holds ({v.minors_checked} minors checked)"
    rows, cols = v.witness
    return f"fails: singular submatrix rows {list(rows)} cols {list(cols)}"


def _need_seed(args):
    if args.seed is None:
        raise UsageError("--seed is required for randomized commands")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()] if text else []


def _conditions(text: str):
    """``0=1,2=5/2`` -> orders and values."""
    orders, values = [], []
    for part in (text or "").split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"expected order=value, got {part!r}")
        j, v = part.split("=", 1)
        orders.append(int(j))
        values.append(v.strip())
    return orders, values


# -- commands -------------------------------------------------------------------

def cmd_gen(args):
    F = parse_field(args.field)
    fam = args.family
    meta = {"family": fam, "n": args.n}
    if fam == "pascal":
        M = families.pascal(args.n, F)
    elif fam == "binomial":
        M = families.binomial_lower(args.n, F)
    elif fam == "hilbert":
        M = families.hilbert(args.n, F)
    elif fam == "cauchy":
        if args.a and args.b:
            a, b = args.a.split(","), args.b.split(",")
        else:
            _need_seed(args)
            import random

            rng = random.Random(f"cauchy:{args.seed}")
            pool = list(F.elements()) if F.is_finite else [Fraction(k) for k in range(-10 * args.n, 10 * args.n)]
            if len(pool) < 2 * args.n:
                raise UsageError("field too small for distinct Cauchy parameters")
            picks = rng.sample(pool, 2 * args.n)
            a, b = picks[: args.n], picks[args.n:]
            meta["seed"] = args.seed
        M = families.cauchy(a, b, F)
    elif fam == "vandermonde":
        xs = args.xs.split(",") if args.xs else list(range(1, args.n + 1))
        M = families.vandermonde(args.n, xs, F)
    elif fam == "singleton":
        M = families.singleton_matrix(args.alpha, args.n, F)
    elif fam == "wn":
        p = F.p if hasattr(F, "p") else None
        if p is None:
            raise UsageError("wn needs a prime --field")
        Fx, M = families.wn_field_instance(args.n, p, args.seed or 0)
        meta["extension"] = " ".join(map(str, Fx.modulus))
    elif fam == "interleave":
        M = treecode.interleave_pcheck(read_matrix(args.matrix), strict=False)
        meta = {"family": fam}
    elif fam == "counterexample":
        M = ttn.counterexample_search(seed=args.seed or 0).matrix
        meta = {"family": fam}
    else:
        raise UsageError(f"unknown family {fam!r}")
    _write_or_print(args.output, dumps_matrix(M, meta))
    return EXIT_OK


def cmd_ttn(args):
    M = read_matrix(args.matrix)
    v = ttn.nonsingularity_scan(M, args.mode, workers=args.threads)
    _emit(args, v.to_json(), _verdict_text(v))
    return EXIT_OK if v.holds else EXIT_FALSE


def cmd_tns(args):
    M = read_matrix(args.matrix)
    v = ttn.nonsingularity_scan(M, "all", workers=args.threads, positive=args.positive)
    _emit(args, v.to_json(), _verdict_text(v))
    return EXIT_OK if v.holds else EXIT_FALSE


def cmd_lu(args):
    M = read_matrix(args.matrix)
    rep = ttn.lu_property_check(M, args.property)
    _emit(args, rep.to_json(), f"{args.property}: {'holds' if rep.holds else 'fails'}")
    return EXIT_OK if rep.holds else EXIT_FALSE


def cmd_scan(args):
    family = read_matrix(args.matrix) if args.matrix else args.family
    rep = ttn.scan_primes(family, args.n, args.pmin, args.pmax, args.mode, workers=args.threads)
    lines = [f"p={e.p}: {'holds' if e.holds else 'fails'}" for e in rep.entries]
    lines.append(f"minimal prime: {rep.minimal_prime}")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.minimal_prime is not None else EXIT_FALSE


def _load_code(args):
    if args.generator:
        G = read_matrix(args.generator)
        return treecode.TreeCode.from_generator(G, args.d)
    if args.pcheck:
        P = read_matrix(args.pcheck)
        return treecode.normalize_pcheck(P, args.d or 2)
    raise UsageError("give --generator or --pcheck")


def cmd_code_mindist(args):
    code = _load_code(args)
    rep = treecode.min_rel_distance(code, args.weight, args.method, workers=args.threads)
    F = code.field
    _emit(args, rep.to_json(F), f"delta = {rep.delta}  (k={rep.k}, l={rep.l})")
    return EXIT_OK


def cmd_code_mds(args):
    nf = treecode.normalize_pcheck(read_matrix(args.pcheck), 2)
    v = treecode.is_mds(nf, args.method)
    _emit(args, v.to_json(), "MDS" if v.holds else f"not MDS, failing columns {v.witness}")
    return EXIT_OK if v.holds else EXIT_FALSE


def cmd_code_normalize(args):
    nf = treecode.normalize_pcheck(read_matrix(args.pcheck), args.d)
    _write_or_print(args.output, dumps_matrix(nf.matrix))
    return EXIT_OK


def cmd_code_build_mds(args):
    T = read_matrix(args.matrix)
    try:
        code = treecode.mds_generator(T)
    except NotTTN as exc:
        rows, cols = exc.witness
        _emit(args, {"holds": False, "witness": {"rows": list(rows), "cols": list(cols)}},
              f"not lower TTN: singular submatrix rows {list(rows)} cols {list(cols)}")
        return EXIT_FALSE
    _write_or_print(args.output, dumps_matrix(code.generator))
    return EXIT_OK


def cmd_code_extract(args):
    T, swaps = treecode.extract_triangular(treecode.normalize_pcheck(read_matrix(args.pcheck), 2))
    if args.json:
        print(json.dumps({"T": T.tolist(), "field": T.field.header(), "swaps": swaps}, sort_keys=True))
    else:
        _write_or_print(args.output, dumps_matrix(T, {"swaps": ",".join(map(str, swaps)) or "none"}))
    return EXIT_OK


def cmd_search_grow(args):
    _need_seed(args)
    params = growth.GrowthParams(args.q, args.d, Fraction(args.delta), args.n, args.seed,
                                 args.retry_limit, args.threads)
    res = growth.grow_toeplitz(params) if args.toeplitz else growth.grow_random(params)
    record = res.to_json()
    record["toeplitz"] = bool(args.toeplitz)
    if args.output:
        _write_or_print(args.output, dumps_matrix(res.code.generator, {"delta": record["delta"], "seed": args.seed}))
    else:
        record["generator"] = res.code.generator.tolist()
    print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def cmd_search_exhaustive(args):
    try:
        code = growth.exhaustive_short(args.q, args.d, Fraction(args.delta), args.len)
    except NotFound as exc:
        _emit(args, {"found": False, "reason": str(exc)}, str(exc))
        return EXIT_FALSE
    rep = treecode.min_rel_distance(code)
    record = {"found": True, "delta": str(rep.delta), "first_row": [code.field.format(x) for x in code.generator.rows[0]]}
    if args.output:
        _write_or_print(args.output, dumps_matrix(code.generator, {"delta": str(rep.delta)}))
    _emit(args, record, f"found code with delta = {rep.delta}: first row {record['first_row']}")
    return EXIT_OK


def cmd_concat(args):
    if args.desk:
        _need_seed(args)
        spec = concat.desk_instance(args.seed)
    else:
        if not (args.long and args.short and args.block):
            raise UsageError("give --long, --short and --block (or --desk --seed)")
        long = treecode.TreeCode.from_generator(read_matrix(args.long))
        short = treecode.TreeCode.from_generator(read_matrix(args.short))
        Gf = read_matrix(args.block)
        spec = concat.ConcatSpec(long, short, concat.BlockCode(Gf, concat.block_min_weight(Gf)))
    code = concat.concatenate(spec)
    meta = spec.header()
    if args.output:
        _write_or_print(args.output, dumps_matrix(code.generator, meta))
    report = {"n_out": code.n, "d_out": code.d, "header": {k: str(v) for k, v in meta.items()}}
    ok = True
    if args.verify:
        floor, parts = concat.distance_floor(spec)
        delta = treecode.min_rel_distance(code, workers=args.threads).delta
        proj, bad = concat.odd_projection_check(spec, code)
        ok = delta >= floor and proj
        report.update({"delta": str(delta), "floor": str(floor), "odd_projection": proj,
                       **{k: str(v) for k, v in parts.items()}})
    elif not args.output:
        report["generator"] = code.generator.tolist()
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK if ok else EXIT_FALSE


def cmd_birkhoff_solve(args):
    F = parse_field(args.field)
    jset, A = _conditions(args.left)
    kset, B = _conditions(args.right)
    inst = birkhoff.BirkhoffInstance(F.parse(args.a), F.parse(args.b), jset, kset,
                                     [F.parse(v) for v in A], [F.parse(v) for v in B])
    try:
        f = birkhoff.solve_birkhoff(inst, F, args.kind)
    except SingularSystem:
        _emit(args, {"solvable": False, "polya": birkhoff.polya_condition(jset, kset)}, "no unique solution")
        return EXIT_FALSE
    coeffs = [F.format(c) for c in f.coeffs]
    _emit(args, {"solvable": True, "coefficients": coeffs, "polya": birkhoff.polya_condition(jset, kset)}, str(f))
    return EXIT_OK


def cmd_birkhoff_polya(args):
    holds = birkhoff.polya_condition(_ints(args.left), _ints(args.right))
    _emit(args, {"polya": holds}, "Polya condition holds" if holds else "Polya condition fails")
    return EXIT_OK if holds else EXIT_FALSE


def cmd_birkhoff_equiv(args):
    F = parse_field(args.field)
    rep = birkhoff.polya_mds_equiv(F.parse(args.a), F.parse(args.b), args.n, F, args.kind)
    _emit(args, rep.to_json(), f"side A {rep.side_a}, side B {rep.side_b}, agree {rep.agree}")
    return EXIT_OK if rep.agree else EXIT_FALSE


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--threads", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--seed", type=int, default=None)

    p = _Parser(prog="treecodes", description="Linear tree codes and triangular totally nonsingular matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write a matrix from a named family")
    g.add_argument("family", choices=["pascal", "binomial", "hilbert", "cauchy", "vandermonde",
                                      "singleton", "wn", "interleave", "counterexample"])
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--field", default="Q")
    g.add_argument("--a")
    g.add_argument("--b")
    g.add_argument("--xs")
    g.add_argument("--alpha", default="2")
    g.add_argument("--matrix")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("ttn", help="triangular total nonsingularity")
    tsub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    tc = tsub.add_parser("check", parents=[common])
    tc.add_argument("--matrix", required=True)
    tc.add_argument("--mode", choices=["lower", "upper"], default="lower")
    tc.set_defaults(func=cmd_ttn)

    n = sub.add_parser("tns", help="total nonsingularity")
    nsub = n.add_subparsers(dest="action", required=True, parser_class=_Parser)
    nc = nsub.add_parser("check", parents=[common])
    nc.add_argument("--matrix", required=True)
    nc.add_argument("--positive", action="store_true", help="require positive minors (over Q)")
    nc.set_defaults(func=cmd_tns)

    lu = sub.add_parser("lu", help="properties of the LU factors")
    lsub = lu.add_subparsers(dest="action", required=True, parser_class=_Parser)
    lc = lsub.add_parser("check", parents=[common])
    lc.add_argument("--matrix", required=True)
    lc.add_argument("--property", choices=["cryer-ttn", "band"], default="cryer-ttn")
    lc.set_defaults(func=cmd_lu)

    s = sub.add_parser("scan", help="scan an integer matrix modulo primes")
    ssub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = ssub.add_parser("primes", parents=[common])
    sp.add_argument("--family", choices=["pascal", "binomial"], default="binomial")
    sp.add_argument("--matrix")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--pmin", type=int, default=2)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--mode", choices=["lower", "upper", "all"], default="lower")
    sp.set_defaults(func=cmd_scan)

    c = sub.add_parser("code", help="tree code operations")
    csub = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    md = csub.add_parser("mindist", parents=[common])
    md.add_argument("--generator")
    md.add_argument("--pcheck")
    md.add_argument("--d", type=int)
    md.add_argument("--weight", choices=["F", "Sigma"], default="F")
    md.add_argument("--method", choices=["bruteforce", "pcheck"], default="bruteforce")
    md.set_defaults(func=cmd_code_mindist)
    mm = csub.add_parser("mds", parents=[common])
    mm.add_argument("--pcheck", required=True)
    mm.add_argument("--method", choices=["columns", "distance"], default="columns")
    mm.set_defaults(func=cmd_code_mds)
    nm = csub.add_parser("normalize", parents=[common])
    nm.add_argument("--pcheck", required=True)
    nm.add_argument("--d", type=int, default=2)
    nm.add_argument("-o", "--output")
    nm.set_defaults(func=cmd_code_normalize)
    bm = csub.add_parser("build-mds", parents=[common])
    bm.add_argument("--matrix", required=True)
    bm.add_argument("-o", "--output")
    bm.set_defaults(func=cmd_code_build_mds)
    ex = csub.add_parser("extract", parents=[common])
    ex.add_argument("--pcheck", required=True)
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_code_extract)

    se = sub.add_parser("search", help="construct tree codes")
    sesub = se.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gr = sesub.add_parser("grow", parents=[common])
    gr.add_argument("--q", type=int, required=True)
    gr.add_argument("--d", type=int, required=True)
    gr.add_argument("--delta", required=True)
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--toeplitz", action="store_true")
    gr.add_argument("--retry-limit", type=int, default=4096)
    gr.add_argument("-o", "--output")
    gr.set_defaults(func=cmd_search_grow)
    eh = sesub.add_parser("exhaustive", parents=[common])
    eh.add_argument("--q", type=int, required=True)
    eh.add_argument("--d", type=int, required=True)
    eh.add_argument("--delta", required=True)
    eh.add_argument("--len", type=int, required=True)
    eh.add_argument("-o", "--output")
    eh.set_defaults(func=cmd_search_exhaustive)

    cc = sub.add_parser("concat", parents=[common], help="binary tree code from a code over F_(2^l)")
    cc.add_argument("--long")
    cc.add_argument("--short")
    cc.add_argument("--block")
    cc.add_argument("--desk", action="store_true", help="use the built-in small instance")
    cc.add_argument("--verify", action="store_true", help="check the distance floor and odd-bit projections")
    cc.add_argument("-o", "--output")
    cc.set_defaults(func=cmd_concat)

    b = sub.add_parser("birkhoff", help="two-node Birkhoff interpolation")
    bsub = b.add_subparsers(dest="action", required=True, parser_class=_Parser)
    bs = bsub.add_parser("solve", parents=[common])
    bs.add_argument("--a", required=True)
    bs.add_argument("--b", required=True)
    bs.add_argument("--left", default="")
    bs.add_argument("--right", default="")
    bs.add_argument("--field", default="Q")
    bs.add_argument("--kind", choices=["standard", "hasse"])
    bs.set_defaults(func=cmd_birkhoff_solve)
    bp = bsub.add_parser("polya", parents=[common])
    bp.add_argument("--left", default="")
    bp.add_argument("--right", default="")
    bp.set_defaults(func=cmd_birkhoff_polya)
    be = bsub.add_parser("equiv", parents=[common])
    be.add_argument("--n", type=int, required=True)
    be.add_argument("--a", default="1")
    be.add_argument("--b", default="0")
    be.add_argument("--field", default="Q")
    be.add_argument("--kind", choices=["standard", "hasse"])
    be.set_defaults(func=cmd_birkhoff_equiv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"treecodes: error: {exc}", file=sys.stderr)
    except (TreeCodeError, ValueError, ArithmeticError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"treecodes: error: {msg}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
