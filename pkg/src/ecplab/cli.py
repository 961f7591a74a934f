"""Command-line interface.

Exit status: 0 on success, 1 on usage or I/O errors, 2 on a domain failure
(decoding failure, code not GRS, no pair found, failed check), with the
reason on standard error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import io, report
from .code import (DEFAULT_BUDGET, DistanceBudgetExceeded, LinearCode, dual, is_mds,
                   min_distance, puncture, schur_product, shorten)
from .ecp import (DecodingFailure, EcpPair, build_ecp_for_grs, ecp_decode, search_ecp,
                  verify_ecp)
from .gf import DEFAULT_FIELD_CAP, FieldCapExceeded
from .grs import GrsSpec, random_grs_spec, recognize_grs, trivial_grs
from .pmds import (CORPUS_COLUMNS, corpus, kneser_slack, pmds_consequences,
                   product_singleton_gap)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class DomainFailure(Exception):
    """A well-formed request whose answer is negative."""


class UsageError(Exception):
    pass


@dataclass
class Config:
    budget: int
    field_cap: int
    max_ext: int
    seed: int
    output: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return v


def _coords(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coordinate list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized commands (default 0)")
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS,
                        help="work budget for distances and searches "
                             "(default: $ECPLAB_BUDGET or %d)" % DEFAULT_BUDGET)
    common.add_argument("--field-cap", type=_positive, default=argparse.SUPPRESS,
                        help="largest field order accepted (default %d)" % DEFAULT_FIELD_CAP)
    common.add_argument("--max-ext", type=_positive, default=argparse.SUPPRESS,
                        help="largest extension degree searched (default 1)")
    common.add_argument("--output", choices=("table", "records"), default=argparse.SUPPRESS,
                        help="table (default) or key=value records")

    p = _Parser(prog="ecplab", parents=[common],
                description="Exact GRS codes, error-correcting pairs and Schur-product bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, parent=sub):
        return parent.add_parser(name, help=help_text, description=help_text, parents=[common])

    g = add("gen-grs", "write a GRS spec (random unless --a and --b are given)")
    g.add_argument("--field", required=True, help="field literal, e.g. GF(11)")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--a", help="evaluation points as element literals ('inf' allowed)")
    g.add_argument("--b", help="column multipliers as element literals")
    g.add_argument("--code", action="store_true", help="write the code file instead of the spec")
    g.add_argument("-o", "--out", help="output file (default stdout)")

    d = add("dual", "dual code")
    d.add_argument("code")
    d.add_argument("-o", "--out")

    m = add("mindist", "exact minimum distance")
    m.add_argument("code")
    m.add_argument("--method", choices=("auto", "enumerate", "columns"), default="auto")

    for name, verb in (("puncture", "delete"), ("shorten", "shorten at")):
        c = add(name, f"{verb} the given 1-based coordinates")
        c.add_argument("code")
        c.add_argument("--at", type=_coords, required=True, help="coordinates, e.g. 1,2")
        c.add_argument("-o", "--out")

    s = add("schur", "star product of two codes")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--out")

    r = add("recognize", "recover a GRS spec of an MDS code")
    r.add_argument("code")
    r.add_argument("-o", "--out")

    e = add("ecp", "error-correcting pairs")
    esub = e.add_subparsers(dest="ecp_command", required=True, parser_class=_Parser)
    ev = add("verify", "check conditions E.1-E.6", esub)
    ev.add_argument("--code", required=True)
    ev.add_argument("--pair", nargs=2, required=True, metavar=("A", "B"))
    ev.add_argument("--t", type=int, required=True)
    eb = add("build", "build the GRS pair for a spec (or a recognisable code)", esub)
    eb.add_argument("--code", required=True, help="spec or code file")
    eb.add_argument("--t", type=int, help="default floor((n-k)/2)")
    eb.add_argument("--out-a")
    eb.add_argument("--out-b")
    ed = add("decode", "decode a received word", esub)
    ed.add_argument("--received", required=True,
                    help="element literals, or @FILE to read them from a file")
    ed.add_argument("--code", required=True)
    ed.add_argument("--pair", nargs=2, required=True, metavar=("A", "B"))
    ed.add_argument("--t", type=int, help="default: dim B")
    es = add("search", "search for a t-ECP", esub)
    es.add_argument("--code", required=True)
    es.add_argument("--t", type=_positive, required=True)
    es.add_argument("--strategy", choices=("auto", "recognition", "enumerate"), default="auto")
    es.add_argument("--out-a")
    es.add_argument("--out-b")

    pm = add("pmds", "product Singleton and Kneser bounds")
    psub = pm.add_subparsers(dest="pmds_command", required=True, parser_class=_Parser)
    pc = add("check", "bounds and PMDS consequences for one pair", psub)
    pc.add_argument("--a", required=True)
    pc.add_argument("--b", required=True)
    pk = add("corpus", "bounds over seeded random pairs", psub)
    pk.add_argument("--field", required=True)
    pk.add_argument("--n", type=_positive, required=True)
    pk.add_argument("--count", type=_positive, default=100)
    pk.add_argument("--figure", help="also render a figure to this path (png, pdf, svg)")

    f = add("fixtures", "example codes and the main-theorem harness")
    fsub = f.add_subparsers(dest="fixtures_command", required=True, parser_class=_Parser)
    fr = add("run", "run fixture checks", fsub)
    fr.add_argument("--only", choices=("nucleus", "glynn", "two-conics", "main-theorem"))
    fr.add_argument("--export", metavar="DIR", help="write fixture codes as code files")
    return p


def _config(args) -> Config:
    budget = getattr(args, "budget", None)
    if budget is None:
        env = os.environ.get("ECPLAB_BUDGET")
        if env is not None:
            try:
                budget = _positive(env)
            except (ValueError, argparse.ArgumentTypeError):
                raise UsageError(f"ECPLAB_BUDGET={env!r} is not a positive integer") from None
        else:
            budget = DEFAULT_BUDGET
    return Config(budget=budget,
                  field_cap=getattr(args, "field_cap", DEFAULT_FIELD_CAP),
                  max_ext=getattr(args, "max_ext", 1),
                  seed=getattr(args, "seed", 0),
                  output=getattr(args, "output", "table"))


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _load(path: str, cfg: Config) -> LinearCode:
    C = io.load_code_or_spec(path)
    if C.field.q > cfg.field_cap:
        raise UsageError(f"{path}: field order {C.field.q} exceeds --field-cap {cfg.field_cap}")
    return C


def _load_spec_or_code(path: str):
    text = io.read_text(path)
    first = next(io._content_lines(text), (0, ""))[1].split()
    if first and first[0] == "grs":
        return io.parse_spec(text, path)
    return io.parse_code(text, path)


def _emit(text: str, out: str | None, stdout):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _spec_of(obj) -> GrsSpec:
    if isinstance(obj, GrsSpec):
        return obj
    C = obj
    if not is_mds(C):
        raise DomainFailure("not GRS: code is not MDS")
    spec = recognize_grs(C) if 2 <= C.k <= C.n - 2 else trivial_grs(C)
    if spec is None:
        raise DomainFailure("not GRS")
    return spec


def _load_pair(paths, t, cfg: Config) -> EcpPair:
    A, B = (_load(p, cfg) for p in paths)
    return EcpPair(A, B, B.k if t is None else t)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_gen_grs(args, cfg, stdout):
    F = io.parse_field(args.field)
    if args.a is None and args.b is None:
        spec = random_grs_spec(F, args.n, args.k, np.random.default_rng(cfg.seed))
    elif args.a is not None and args.b is not None:
        a = io._parse_elements(F, io._tokens(args.a), 1, "--a", allow_inf=True)
        b = io._parse_elements(F, io._tokens(args.b), 1, "--b")
        spec = GrsSpec(F, tuple(a), tuple(b), args.k)
        if spec.n != args.n:
            raise UsageError(f"--n={args.n} but {spec.n} points given")
    else:
        raise UsageError("give both --a and --b, or neither")
    _emit(io.format_code(spec.code()) if args.code else io.format_spec(spec), args.out, stdout)


def cmd_dual(args, cfg, stdout):
    _emit(io.format_code(dual(_load(args.code, cfg))), args.out, stdout)


def cmd_mindist(args, cfg, stdout):
    C = _load(args.code, cfg)
    d = min_distance(C, cfg.budget, args.method)
    if cfg.output == "records":
        stdout.write(report.format_fields([("n", C.n), ("k", C.k), ("d", d)], "records"))
    else:
        stdout.write(f"{d}\n")


def cmd_puncture(args, cfg, stdout):
    _emit(io.format_code(puncture(_load(args.code, cfg), args.at)), args.out, stdout)


def cmd_shorten(args, cfg, stdout):
    _emit(io.format_code(shorten(_load(args.code, cfg), args.at)), args.out, stdout)


def cmd_schur(args, cfg, stdout):
    _emit(io.format_code(schur_product(_load(args.a, cfg), _load(args.b, cfg))),
          args.out, stdout)


def cmd_recognize(args, cfg, stdout):
    C = _load(args.code, cfg)
    if not is_mds(C, cfg.budget):
        raise DomainFailure("not GRS: code is not MDS")
    spec = recognize_grs(C) if 2 <= C.k <= C.n - 2 else trivial_grs(C)
    if spec is None:
        raise DomainFailure("not GRS")
    _emit(io.format_spec(spec), args.out, stdout)


def cmd_ecp_verify(args, cfg, stdout):
    C = _load(args.code, cfg)
    pair = _load_pair(args.pair, args.t, cfg)
    rep = verify_ecp(pair.A, pair.B, C, args.t, cfg.budget)
    stdout.write(report.format_fields(rep.items(), cfg.output))
    if not rep.is_pair:
        raise DomainFailure(f"not a {args.t}-error-correcting pair")


def _write_pair(pair: EcpPair, out_a, out_b, cfg, stdout):
    if out_a or out_b:
        if not (out_a and out_b):
            raise UsageError("give both --out-a and --out-b")
        _emit(io.format_code(pair.A), out_a, stdout)
        _emit(io.format_code(pair.B), out_b, stdout)
    else:
        stdout.write(io.format_code(pair.A))
        stdout.write(io.format_code(pair.B))


def cmd_ecp_build(args, cfg, stdout):
    spec = _spec_of(_load_spec_or_code(args.code))
    pair = build_ecp_for_grs(spec, args.t)
    _write_pair(pair, args.out_a, args.out_b, cfg, stdout)


def cmd_ecp_decode(args, cfg, stdout):
    C = _load(args.code, cfg)
    pair = _load_pair(args.pair, args.t, cfg)
    text = io.read_text(args.received[1:]) if args.received.startswith("@") else args.received
    y = io.parse_vector(C.field, text, C.n, "--received")
    try:
        got = ecp_decode(y, C, pair)
    except DecodingFailure as exc:
        raise DomainFailure(f"decoding failure: {exc.reason}") from None
    F = C.field  # received words, codewords and errors live over the field of C
    stdout.write(report.format_fields([("codeword", io.format_vector(F, got.codeword)),
                                       ("error", io.format_vector(F, got.error)),
                                       ("weight", int(np.count_nonzero(got.error)))],
                                      cfg.output))


def cmd_ecp_search(args, cfg, stdout):
    C = _load(args.code, cfg)
    res = search_ecp(C, args.t, cfg.max_ext, cfg.budget, cfg.seed, args.strategy, cfg.budget)
    stdout.write(report.format_fields([("status", res.status), ("method", res.method),
                                       ("candidates", res.candidates),
                                       ("extension_degree", res.extension_degree)],
                                      cfg.output))
    if res.pair is None:
        raise DomainFailure(f"no {args.t}-ECP: {res.status}")
    if args.out_a or args.out_b:
        _write_pair(res.pair, args.out_a, args.out_b, cfg, stdout)


def cmd_pmds_check(args, cfg, stdout):
    A, B = _load(args.a, cfg), _load(args.b, cfg)
    gap = product_singleton_gap(A, B, cfg.budget)
    slack = kneser_slack(A, B)
    cons = pmds_consequences(A, B, cfg.budget)
    extra = [("n", A.n), ("dim_A", A.k), ("dim_B", B.k), ("gap", gap), ("slack", slack),
             ("pmds", gap == 0), ("hypotheses", "met" if cons.applicable else "; ".join(cons.unmet))]
    stdout.write(report.format_checks("pmds-check", cons.checks, cfg.output, extra))
    if cons.applicable and not cons.passed:
        raise DomainFailure("a PMDS consequence failed")


def cmd_pmds_corpus(args, cfg, stdout):
    F = io.parse_field(args.field)
    rows = corpus(F, args.n, args.count, cfg.seed, cfg.budget)
    table = [[getattr(r, c) for c in CORPUS_COLUMNS] for r in rows]
    stdout.write(report.format_table(CORPUS_COLUMNS, table, cfg.output))
    if args.figure:
        report.corpus_figure(rows, args.figure, f"{F!r}, n={args.n}, seed={cfg.seed}")
    bad = [r.pair_id for r in rows if r.gap < 0 or r.slack < 0 or r.consequences == "FAIL"]
    if bad:
        raise DomainFailure(f"bound violations in pairs {bad}")


def cmd_fixtures_run(args, cfg, stdout):
    from . import fixtures
    reports = fixtures.run_fixtures(args.only, cfg.seed)
    blocks = []
    for r in reports:
        extra = [("params", list(r.params)), ("seeds", " ".join(f"{k}={v}" for k, v in r.seeds.items()))]
        extra += [("note", n) for n in r.notes]
        blocks.append(report.format_checks(r.name, r.assertions, cfg.output, extra))
    stdout.write("\n".join(blocks))
    if args.export:
        os.makedirs(args.export, exist_ok=True)
        codes = {"nucleus": fixtures.nucleus_code(8), "glynn": fixtures.glynn_code(),
                 "two-conics": fixtures.cached_two_conics()[0]}
        for name, C in codes.items():
            if args.only in (None, name):
                with open(os.path.join(args.export, f"{name}.code"), "w", encoding="utf-8") as fh:
                    fh.write(io.format_code(C))
    failed = [r.name for r in reports if not r.passed]
    if failed:
        raise DomainFailure(f"fixture checks failed: {', '.join(failed)}")


COMMANDS = {
    ("gen-grs",): cmd_gen_grs, ("dual",): cmd_dual, ("mindist",): cmd_mindist,
    ("puncture",): cmd_puncture, ("shorten",): cmd_shorten, ("schur",): cmd_schur,
    ("recognize",): cmd_recognize,
    ("ecp", "verify"): cmd_ecp_verify, ("ecp", "build"): cmd_ecp_build,
    ("ecp", "decode"): cmd_ecp_decode, ("ecp", "search"): cmd_ecp_search,
    ("pmds", "check"): cmd_pmds_check, ("pmds", "corpus"): cmd_pmds_corpus,
    ("fixtures", "run"): cmd_fixtures_run,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    key = (args.command,)
    for attr in ("ecp_command", "pmds_command", "fixtures_command"):
        if getattr(args, attr, None):
            key += (getattr(args, attr),)
    try:
        cfg = _config(args)
        COMMANDS[key](args, cfg, stdout)
    except DomainFailure as exc:
        stderr.write(f"ecplab: {exc}\n")
        return EXIT_DOMAIN
    except DistanceBudgetExceeded as exc:
        stderr.write(f"ecplab: budget exceeded: {exc}\n")
        return EXIT_DOMAIN
    except (UsageError, io.ParseError, OSError, FieldCapExceeded, ValueError) as exc:
        stderr.write(f"ecplab: error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
