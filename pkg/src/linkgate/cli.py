"""Command-line entry point ``linkgate``.

Exit codes: 0 computed (including an OBSTRUCTED verdict), 2 parse error,
3 precondition violation, 4 budget exceeded.
"""

import argparse
import ast
import json
import sys
import time

from . import __version__
from .errors import Budget, BudgetExceeded, ParseError, PreconditionError
from .laurent import FactorBudget, format_poly, parse_poly

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4


class _LinkSpec(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        specs = list(getattr(namespace, self.dest) or [])
        specs.append((option_string.lstrip("-"), values))
        setattr(namespace, self.dest, specs)


def _add_link_flags(p):
    g = p.add_argument_group("link input (repeatable where two inputs are compared)")
    for flag, help_ in (
        ("--builtin", "name from the built-in corpus"),
        ("--pd", "PD code, e.g. 'X[1,3,2,4] X[3,1,4,2]'"),
        ("--braid", "braid word, e.g. 'BR 2: 1 1 1'"),
        ("--poly", "torsion polynomial fixture, e.g. 't-3+t^-1'"),
    ):
        g.add_argument(flag, dest="links", action=_LinkSpec, metavar="TEXT", help=help_)


def _common(p):
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--budget-ms", type=int, default=None,
                   help="wall-clock budget (default: $LINKGATE_BUDGET_MS or none)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (makes output non-deterministic)")


def build_parser():
    parser = argparse.ArgumentParser(prog="linkgate", description="Abelian link concordance obstructions.")
    parser.add_argument("--version", action="version", version=f"linkgate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alex", help="rank and torsion Alexander polynomial")
    _add_link_flags(p)
    _common(p)

    p = sub.add_parser("hopf-test", help="abelian obstructions to concordance with the Hopf link")
    _add_link_flags(p)
    _common(p)

    p = sub.add_parser("pair-test", help="compare two links (rank and norm-pair condition)")
    _add_link_flags(p)
    _common(p)

    p = sub.add_parser("covers", help="H1 of the admissible prime-power covers of M_L")
    _add_link_flags(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    _common(p)

    p = sub.add_parser("metabolizers", help="metabolizers of a finite linking form")
    p.add_argument("--form", required=True, help="symmetric integer matrix, e.g. '[[9]]'")
    _common(p)

    p = sub.add_parser("check-thm23", help="randomized check of the twisted dimension inequality")
    p.add_argument("--random", type=int, default=200, metavar="N", help="number of instances")
    _common(p)
    return parser


# ----------------------------------------------------------------------------


def _load_link(kind, text):
    from .link_codec import builtin, parse_link, parse_pd

    if kind == "builtin":
        try:
            return builtin(text)
        except KeyError as exc:
            raise ParseError(str(exc.args[0])) from None
    if kind == "pd":
        return parse_pd(text)
    if kind == "braid":
        if not text.lstrip().startswith("BR"):
            raise ParseError("braid must look like 'BR <strands>: <±i> ...'", 0)
        return parse_link(text)
    raise ParseError(f"unsupported input kind {kind!r}")


def _specs(args, count):
    specs = args.links or []
    if len(specs) != count:
        raise PreconditionError(f"{args.command} needs {count} link input(s), got {len(specs)}")
    return specs


def _echo(specs):
    return [{"kind": k, "text": t} for k, t in specs]


def _alex_block(D, budget):
    from .alexander import fox_matrix, h1_rank, symmetry_holds, torsion_alexander
    from .link_codec import linking_matrix
    from .presentation import wirtinger

    P, _, mmap = wirtinger(D)
    J = fox_matrix(P, mmap)
    delta = torsion_alexander(J, budget)
    return {
        "components": D.num_components,
        "linking_matrix": [[int(x) for x in row] for row in linking_matrix(D)],
        "h1_rank": h1_rank(J),
        "torsion_poly": format_poly(delta),
        "symmetric": symmetry_holds(delta),
    }, delta


def cmd_alex(args, budget):
    (kind, text), = _specs(args, 1)
    if kind == "poly":
        raise PreconditionError("alex needs a diagram, not a polynomial")
    block, _ = _alex_block(_load_link(kind, text), budget)
    lines = [
        f"components: {block['components']}",
        f"linking matrix: {block['linking_matrix']}",
        f"h1 rank: {block['h1_rank']}",
        f"torsion Alexander polynomial: {block['torsion_poly']}",
        f"symmetric: {'yes' if block['symmetric'] else 'no'}",
    ]
    return {"input": _echo([(kind, text)]), "results": block}, lines


def cmd_hopf_test(args, budget):
    from .obstruction import hopf_test, hopf_test_poly

    (kind, text), = _specs(args, 1)
    limits = FactorBudget(budget=budget)
    if kind == "poly":
        report = hopf_test_poly(parse_poly(text), rank=0, link=text, limits=limits)
    else:
        report = hopf_test(_load_link(kind, text), link=text, limits=limits, budget=budget)
    d = report.to_dict()
    lines = [
        f"link: {d['link']}",
        f"rank: {d['rank']}",
        f"torsion polynomial: {d['torsion_poly']}",
        f"norm condition: {d['norm_status']}" + (f" (f = {d['witness']})" if d["witness"] else "")
        + (f" ({d['reason']})" if d["reason"] else ""),
        "checks: " + ", ".join(f"{k}={'pass' if v else 'fail'}" for k, v in d["checks"].items()),
        f"verdict: {d['verdict']}",
    ]
    return {"input": _echo([(kind, text)]), "results": d}, lines


def cmd_pair_test(args, budget):
    from .obstruction import YES, pair_test

    specs = _specs(args, 2)
    polys, ranks = [], []
    if all(k == "poly" for k, _ in specs):
        first = [parse_poly(t) for _, t in specs]
        n = max(p.nvars for p in first)
        polys = [parse_poly(t, n) for _, t in specs]
        ranks = [None, None]
    elif any(k == "poly" for k, _ in specs):
        raise PreconditionError("pair-test compares two diagrams or two polynomials, not a mix")
    else:
        for k, t in specs:
            block, delta = _alex_block(_load_link(k, t), budget)
            polys.append(delta)
            ranks.append(block["h1_rank"])
    rank_equal = None if None in ranks else ranks[0] == ranks[1]
    verdict = pair_test(polys[0], polys[1], FactorBudget(budget=budget))
    witness = None if verdict.witness is None else [format_poly(f) for f in verdict.witness]
    if rank_equal is False or verdict.status == "no":
        outcome = "fail"
    elif verdict.status == YES:
        outcome = "pass"
    else:
        outcome = "inconclusive"
    results = {
        "ranks": ranks,
        "rank_equal": rank_equal,
        "torsion_polys": [format_poly(p) for p in polys],
        "norm_status": verdict.status,
        "witness": witness,
        "reason": verdict.reason or None,
        "outcome": outcome,
    }
    if rank_equal is None:
        rank_line = "ranks: not checked (polynomial input)"
    else:
        rank_line = f"ranks: {ranks[0]} vs {ranks[1]} ({'equal' if rank_equal else 'different'})"
    lines = [
        rank_line,
        f"torsion polynomials: {results['torsion_polys'][0]} vs {results['torsion_polys'][1]}",
        f"norm-pair condition: {verdict.status}" + (f" (f0 = {witness[0]}, f1 = {witness[1]})" if witness else "")
        + (f" ({verdict.reason})" if verdict.reason else ""),
        f"outcome: {outcome}",
    ]
    return {"input": _echo(specs), "results": results}, lines


def cmd_covers(args, budget):
    from .covers import cover_h1, format_abelian, link_covers

    (kind, text), = _specs(args, 1)
    if kind == "poly":
        raise PreconditionError("covers needs a diagram")
    D = _load_link(kind, text)
    rows, lines = [], []
    for c in link_covers(D, args.p, args.i, args.j):
        budget.check()
        h1 = cover_h1(c)
        image = [list(c.hom[g]) for g in c.base.generators]
        rows.append({"hom": dict(zip(c.base.generators, image)), "h1": list(h1), "h1_text": format_abelian(h1)})
        lines.append(format_abelian(h1))
    return {"input": _echo([(kind, text)]) + [{"p": args.p, "i": args.i, "j": args.j}],
            "results": {"covers": rows}}, lines


def _parse_form(text):
    try:
        A = ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise ParseError(f"cannot read matrix: {exc}") from None
    if not isinstance(A, (list, tuple)) or not all(isinstance(r, (list, tuple)) for r in A):
        raise ParseError("matrix must be a list of rows")
    if not all(isinstance(x, int) for r in A for x in r):
        raise ParseError("matrix entries must be integers")
    if any(len(r) != len(A) for r in A):
        raise PreconditionError("matrix must be square")
    return [list(r) for r in A]


def cmd_metabolizers(args, budget):
    from .linkforms import from_presentation, generators_of, metabolizers, format_subgroup

    A = _parse_form(args.form)
    F = from_presentation(A)
    mets = metabolizers(F, budget=budget)
    listed = [[list(g) for g in generators_of(F, S)] for S in mets]
    lines = [f"group: {' + '.join(f'Z/{d}' for d in F.moduli) or '0'}",
             f"metabolizers: {len(mets)}"] + [format_subgroup(F, S) for S in mets]
    results = {
        "group": list(F.moduli),
        "gram": [[str(x) for x in row] for row in F.gram],
        "metabolizers": listed,
    }
    return {"input": {"form": A}, "results": results}, lines


def cmd_check_thm23(args, budget):
    from .twisted import random_instances, run_instance

    rows, lines = [], []
    holds = 0
    for inst in random_instances(args.random, args.seed):
        budget.check()
        r = run_instance(inst)
        holds += r.holds
        rows.append({"seed": inst.seed, "p": inst.rho.t, "q": inst.q, "root_order": inst.rho.m,
                     "n": inst.n, "left": r.left, "right": r.right, "holds": r.holds})
        lines.append(f"seed {inst.seed}: {r.left} <= {r.right} {'ok' if r.holds else 'VIOLATED'}")
    lines.append(f"{holds}/{args.random} hold")
    return {"input": {"random": args.random, "seed": args.seed},
            "results": {"instances": rows, "holds": holds, "total": args.random}}, lines


COMMANDS = {
    "alex": cmd_alex,
    "hopf-test": cmd_hopf_test,
    "pair-test": cmd_pair_test,
    "covers": cmd_covers,
    "metabolizers": cmd_metabolizers,
    "check-thm23": cmd_check_thm23,
}


def run(argv=None, out=sys.stdout, err=sys.stderr):
    args = build_parser().parse_args(argv)
    budget = Budget.from_env(args.budget_ms)
    start = time.perf_counter()
    try:
        report, lines = COMMANDS[args.command](args, budget)
    except ParseError as exc:
        print(f"linkgate: parse error: {exc}", file=err)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"linkgate: precondition violated: {exc}", file=err)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"linkgate: budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    report = {"schema_version": SCHEMA_VERSION, "command": args.command, **report,
              "budget_ms": budget.ms}
    if args.timings:
        report["timings"] = {"total_s": round(time.perf_counter() - start, 6)}
    if args.json:
        print(json.dumps(report, sort_keys=True, ensure_ascii=False), file=out)
    else:
        for line in lines:
            print(line, file=out)
        if args.timings:
            print(f"time: {report['timings']['total_s']} s", file=out)
    return EXIT_OK


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code
    sys.exit(code)


if __name__ == "__main__":
    main()
