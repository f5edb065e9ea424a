"""``ebn`` command-line interface.

Exit codes: 0 success / predicate holds, 1 predicate does not hold,
2 an algorithm reported FAIL, 3 usage or input-format error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import formats
from .errors import BudgetExceeded, EBNError, RetriesExhausted
from .graph import as_etree, etree_isomorphic
from .graphoid import AXIOM_SETS, DEFAULT_BUDGET, derivation, saturate
from .hardness import build_gk, verify_hardness
from .oracle import DEFAULT_TOL, SamplerConfig, ci_residual, sample_from_etree
from .recovery import recover
from .separation import m_separated
from .statements import format_statement, parse_statement
from .treebasis import build_bs, build_bt, verify_etree_imap

OK, FALSE, FAIL, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_seed():
    env = os.environ.get("EBN_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"EBN_SEED must be an integer, got {env!r}") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute CI residual tolerance")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $EBN_SEED, then 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--limit", type=int, default=None, help="universe size cap")

    parser = _Parser(prog="ebn", description="Embedded Bayesian network validation toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("msep", parents=[common], help="m-separation test on an .edg graph")
    p.add_argument("graph")
    p.add_argument("statement")

    p = sub.add_parser("ci", parents=[common], help="conditional-independence test on a .jpt table")
    p.add_argument("table")
    p.add_argument("statement")

    p = sub.add_parser("imap", parents=[common], help="is an E-tree an I-map of a table")
    p.add_argument("tree")
    p.add_argument("table")
    p.add_argument("--all", action="store_true", help="report every failing basis statement")

    p = sub.add_parser("basis", parents=[common], help="print the polynomial basis of an E-tree")
    p.add_argument("tree")
    p.add_argument("--kind", choices=("bt", "bs"), default="bt")
    p.add_argument("-o", "--output")

    p = sub.add_parser("recover", parents=[common], help="learn an E-tree from a table")
    p.add_argument("table")
    p.add_argument("-o", "--output")
    p.add_argument("--log", action="store_true", help="print every CI query")

    p = sub.add_parser("sample-tree", parents=[common], help="sample a table well represented by an E-tree")
    p.add_argument("tree")
    p.add_argument("-o", "--output")
    p.add_argument("--domain", type=int, default=2)
    p.add_argument("--latent-domain", type=int, default=2)
    p.add_argument("--cpt-floor", type=float, default=0.05)
    p.add_argument("--margin", type=float, default=1e-3)
    p.add_argument("--max-retries", type=int, default=100)

    p = sub.add_parser("gk", parents=[common], help="write the G_k graph")
    p.add_argument("k", type=int)
    p.add_argument("-o", "--output")

    p = sub.add_parser("gk-verify", parents=[common], help="check the G_k basis-size mechanism")
    p.add_argument("k", type=int)

    for name, helptext in (("closure", "close a statement file under an axiom set"),
                           ("derive", "decide derivability of a statement")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("statements")
        if name == "derive":
            p.add_argument("target")
        p.add_argument("--axioms", choices=sorted(AXIOM_SETS), default="semi-graphoid")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "closure":
            p.add_argument("-o", "--output")

    p = sub.add_parser("iso", parents=[common], help="are two E-trees isomorphic")
    p.add_argument("tree1")
    p.add_argument("tree2")
    return parser


def _emit(args, text, data):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _save(path, text):
    if path:
        formats.write_text(path, text)


def cmd_msep(args):
    g = formats.read_edg(args.graph)
    s = parse_statement(args.statement, g.names)
    sep = m_separated(g, s)
    label = "SEPARATED" if sep else "NOT SEPARATED"
    _emit(args, label, {"command": "msep", "statement": format_statement(s, g.names), "separated": sep})
    return OK if sep else FALSE


def cmd_ci(args):
    p = formats.read_jpt(args.table)
    s = parse_statement(args.statement, p.names)
    r = ci_residual(p, s)
    holds = r <= args.tol
    text = f"{'HOLDS' if holds else 'FAILS'} residual={r:.6g} tol={args.tol:g}"
    _emit(args, text, {"command": "ci", "statement": format_statement(s, p.names),
                       "holds": holds, "residual": r, "tol": args.tol})
    return OK if holds else FALSE


def cmd_imap(args):
    t = as_etree(formats.read_edg(args.tree))
    p = formats.read_jpt(args.table)
    v = verify_etree_imap(t, p, args.tol, collect_all=args.all)
    lines = [v.describe(t.names)]
    if args.all:
        lines += [f"  {format_statement(s, t.names)} residual={r:.3g}" for s, r in v.failures[1:]]
    _emit(args, "\n".join(lines), {
        "command": "imap", "imap": v.imap, "tests": v.tests,
        "failures": [{"statement": format_statement(s, t.names), "residual": r} for s, r in v.failures],
    })
    return OK if v.imap else FALSE


def cmd_basis(args):
    t = as_etree(formats.read_edg(args.tree))
    basis = build_bt(t) if args.kind == "bt" else build_bs(t)
    text = formats.format_stm(t.names, basis.statements)
    _save(args.output, text)
    prov = basis.provenance
    _emit(args, text.rstrip("\n") + f"\n# {len(basis)} statements, n^2 = {t.n ** 2}", {
        "command": "basis", "kind": args.kind, "size": len(basis), "n": t.n,
        "statements": [
            {"statement": format_statement(s, t.names), "vertex": t.names[prov[s][0]],
             "neighbor": t.names[prov[s][1]], "kind": prov[s][2]}
            for s in basis
        ],
    })
    return OK


def cmd_recover(args):
    p = formats.read_jpt(args.table)
    out = recover(p, args.tol)
    data = {"command": "recover", "success": out.ok, "stage": out.stage,
            "witness": list(out.witness) if out.witness else None, "reason": out.reason,
            "queries": len(out.queries)}
    lines = [out.describe()]
    if out.ok:
        edg = formats.format_edg(out.tree)
        _save(args.output, edg)
        lines.append(edg.rstrip("\n"))
        data["tree"] = edg
    if args.log:
        data["log"] = [{"statement": format_statement(q.statement, p.names), "holds": q.holds,
                        "residual": q.residual} for q in out.queries]
        lines += [f"  {format_statement(q.statement, p.names)} {'holds' if q.holds else 'fails'} "
                  f"residual={q.residual:.3g}" for q in out.queries]
    _emit(args, "\n".join(lines), data)
    return OK if out.ok else FAIL


def cmd_sample_tree(args):
    t = as_etree(formats.read_edg(args.tree))
    cfg = SamplerConfig(
        seed=args.seed, domain=args.domain, latent_domain=args.latent_domain,
        cpt_floor=args.cpt_floor, wellrep_margin=args.margin, max_retries=args.max_retries,
        max_observables=args.limit if args.limit is not None else 12,
    )
    p = sample_from_etree(t, cfg)
    text = formats.format_jpt(p)
    _save(args.output, text)
    _emit(args, text.rstrip("\n"), {"command": "sample-tree", "seed": args.seed, "table": text})
    return OK


def cmd_gk(args):
    g = build_gk(args.k).graph
    text = formats.format_edg(g)
    _save(args.output, text)
    _emit(args, text.rstrip("\n"), {"command": "gk", "k": args.k, "graph": text})
    return OK


def cmd_gk_verify(args):
    report = verify_hardness(args.k)
    lines = list(report.lines()) + ["PASS" if report.ok else "FAIL"]
    _emit(args, "\n".join(lines), {
        "command": "gk-verify", "k": args.k, "ok": report.ok,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
    })
    return OK if report.ok else FAIL


def cmd_closure(args):
    names, stmts = formats.read_stm(args.statements)
    closed = saturate(stmts, AXIOM_SETS[args.axioms], args.budget).statements
    text = formats.format_stm(names, closed)
    _save(args.output, text)
    _emit(args, text.rstrip("\n"), {"command": "closure", "axioms": args.axioms, "size": len(closed),
                                    "statements": text.splitlines()[1:]})
    return OK


def cmd_derive(args):
    names, stmts = formats.read_stm(args.statements)
    target = parse_statement(args.target, names)
    steps = derivation(stmts, target, AXIOM_SETS[args.axioms], args.budget)
    fmt = lambda s: format_statement(s, names)  # noqa: E731
    if steps is None:
        _emit(args, "NOT DERIVABLE", {"command": "derive", "derivable": False, "trace": None})
        return FALSE
    trace = [{"rule": rule, "premises": [fmt(p) for p in prem], "conclusion": fmt(s)}
             for rule, prem, s in steps]
    lines = ["DERIVABLE"] + [f"  {t['rule']}: {' & '.join(t['premises'])} => {t['conclusion']}" for t in trace]
    _emit(args, "\n".join(lines), {"command": "derive", "derivable": True, "trace": trace})
    return OK


def cmd_iso(args):
    t1 = as_etree(formats.read_edg(args.tree1))
    t2 = as_etree(formats.read_edg(args.tree2))
    iso = etree_isomorphic(t1, t2)
    _emit(args, "ISOMORPHIC" if iso else "NOT ISOMORPHIC", {"command": "iso", "isomorphic": iso})
    return OK if iso else FALSE


COMMANDS = {
    "msep": cmd_msep,
    "ci": cmd_ci,
    "imap": cmd_imap,
    "basis": cmd_basis,
    "recover": cmd_recover,
    "sample-tree": cmd_sample_tree,
    "gk": cmd_gk,
    "gk-verify": cmd_gk_verify,
    "closure": cmd_closure,
    "derive": cmd_derive,
    "iso": cmd_iso,
}


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return USAGE
    except (RetriesExhausted, BudgetExceeded) as e:
        print(f"FAIL {e}", file=sys.stderr)
        return FAIL
    except (EBNError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
