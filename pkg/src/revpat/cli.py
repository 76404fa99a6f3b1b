"""Command-line front door.

Reports are line-oriented ``key=value`` text; ``--json`` emits one JSON
document instead.  Exit codes: 0 decided/pass, 1 check failed or
counterexample found, 2 usage or parse error, 3 budget exceeded.
"""

import argparse
import json
import os
import sys

from revpat import formulas
from revpat.basis import (
    PoolConstraints,
    is_minimal,
    pattern_precheck_sigma3,
    phi3_reference,
    unavoidable_pattern_pool,
    verify_condition2,
    verify_phi2_condition1,
    verify_phi3_condition1,
)
from revpat.decidability import ArityError, census, is_unavoidable
from revpat.divisibility import divides, e_divides
from revpat.formulas import FormulaError, parse_formula, simplifications, variable_profile
from revpat.morphic import (
    check_avoids_prefix,
    factor_set,
    parse_system,
    reversible_factors,
)
from revpat.morphisms import MorphismError
from revpat.occurrence import occurs
from revpat.report import render_rows, run_tables
from revpat.search import (
    CAP_EXCEEDED,
    EXACT_LONGEST,
    FOUND_WORD,
    find_avoiding_word,
    longest_avoiding_word,
)

PASS, FAIL, USAGE, BUDGET = 0, 1, 2, 3


class Output:
    def __init__(self, as_json):
        self.as_json = as_json
        self.data = {}
        self.lines = []

    def emit(self, key, value):
        self.data[key] = value
        self.lines.append(f"{key}={value}")

    def emit_lines(self, lines):
        self.data.setdefault("rows", []).extend(lines)
        self.lines.extend(lines)

    def flush(self):
        if self.as_json:
            print(json.dumps(self.data, indent=2, default=str))
        else:
            for line in self.lines:
                print(line)


def _parse_formula_arg(text, allow_constants=False):
    for name_try in (text,):
        if name_try.startswith("psi:"):
            return formulas.catalog(name_try)[0]
    return parse_formula(text, allow_constants=allow_constants)


def cmd_formula_check(args, out):
    phi = _parse_formula_arg(args.formula)
    out.emit("formula", str(phi))
    profile = variable_profile(phi)
    for v, usage in profile.items():
        kind = "two-way" if usage.two_way else "one-way"
        out.emit(f"variable.{v}", f"{kind} plain={usage.plain} barred={usage.barred}")
    out.emit("irredundant", str(formulas.irr(phi)))
    decision = is_unavoidable(phi)
    out.emit("unavoidable", decision.unavoidable)
    if decision.unavoidable:
        out.emit("divides", str(decision.dividend))
        out.emit("witness", decision.witness.render())
    return PASS


def cmd_formula_divides(args, out):
    phi = _parse_formula_arg(args.phi)
    psi = _parse_formula_arg(args.psi)
    witness = e_divides(phi, psi) if args.e else divides(phi, psi)
    out.emit("relation", "e-divides" if args.e else "divides")
    if witness is None:
        out.emit("witness", "none")
        return FAIL
    out.emit("witness", witness.render())
    return PASS


def cmd_formula_simplify(args, out):
    phi = _parse_formula_arg(args.formula)
    avoidable = not is_unavoidable(phi).unavoidable
    out.emit("formula", str(phi))
    out.emit("avoidable", avoidable)
    all_unavoidable = True
    for q, simp in simplifications(phi):
        if simp.fragments:
            verdict = is_unavoidable(simp).unavoidable
        else:
            verdict = True
        all_unavoidable &= verdict
        out.emit(f"simplification.{q}", f"{simp or '(empty)'} unavoidable={verdict}")
    out.emit("minimal", avoidable and all_unavoidable)
    return PASS


def cmd_basis_verify(args, out):
    members = formulas.catalog(args.name)
    ok2, offenders = verify_condition2(members)
    out.emit("basis", args.name)
    out.emit("condition2", "pass" if ok2 else "fail")
    for a, b in offenders:
        out.emit("condition2.offender", f"{a} e-divides {b}")
    ok1 = True
    if args.name == "Phi2":
        report = verify_phi2_condition1(checkpoint_dir=args.checkpoints)
        for k, size in report.sizes:
            out.emit(f"inventory.k{k}", size)
        out.emit("avoidable_extensions_checked", report.avoidable_checked)
        out.emit("condition1.failures", len(report.failures))
        out.emit("terminated_at", report.terminated_k)
        ok1 = report.ok
    elif args.name == "Phi3":
        if args.tier != "long":
            out.emit("condition1", "skipped (use --tier long)")
        else:
            pre = pattern_precheck_sigma3(progress=_progress(args))
            out.emit("patterns.total", pre["total"])
            out.emit("patterns.skipped_square_flattening", pre["skipped_square_flattening"])
            out.emit("patterns.unavoidable", pre["unavoidable"])
            out.emit("patterns.failures", len(pre["failures"]))
            ok1 &= not pre["failures"]
            reports = verify_phi3_condition1(
                checkpoint_dir=args.checkpoints, progress=_progress(args)
            )
            for branch, rep in reports.items():
                if branch == "classical":
                    out.emit("classical.members", len(rep))
                    continue
                for k, size in rep.sizes:
                    out.emit(f"{branch}.k{k}", size)
                out.emit(f"{branch}.failures", len(rep.failures))
                out.emit(f"{branch}.terminated_at", rep.terminated_k)
                ok1 &= rep.ok
    if not ok2 or not ok1:
        return FAIL
    return PASS


def _progress(args):
    if getattr(args, "quiet", False):
        return None
    return lambda msg: print(f"# {msg}", file=sys.stderr)


def cmd_basis_census(args, out):
    result = census(args.maxlen, args.vars)
    out.emit("total", result.total)
    out.emit("unavoidable", result.unavoidable)
    out.emit("avoidable", result.avoidable)
    return PASS


def cmd_basis_pool(args, out):
    constraints = PoolConstraints(num_vars=args.vars, max_len=args.maxlen)
    pool = unavoidable_pattern_pool(constraints)
    out.emit("size", len(pool))
    if args.list:
        out.emit_lines(sorted(pool))
    return PASS


def cmd_basis_minimal(args, out):
    phi = _parse_formula_arg(args.formula)
    verdict = is_minimal(phi)
    out.emit("formula", str(phi))
    out.emit("minimal", verdict)
    return PASS if verdict else FAIL


def cmd_morphic_factors(args, out):
    system = parse_system(args.system)
    result = factor_set(system, args.len)
    out.emit("length", result.length)
    out.emit("count", len(result.factors))
    out.emit(f"n_{result.length}", result.depth)
    if args.list:
        out.emit_lines(sorted(result.factors))
    return PASS


def cmd_morphic_reversible(args, out):
    system = parse_system(args.system)
    result = reversible_factors(system)
    out.emit("termination_length", result.termination_length)
    out.emit("count", len(result.words))
    out.emit("nonpalindromic", len(result.nonpalindromic()))
    if args.list:
        out.emit_lines(sorted(result.words))
    return PASS


def cmd_morphic_avoid(args, out):
    system = parse_system(args.system)
    phi = parse_formula(args.formula, allow_constants=args.constants)
    avoided, witness = check_avoids_prefix(
        phi, system, args.iterate, image_cap=args.cap
    )
    out.emit("formula", str(phi))
    out.emit("iterate", args.iterate)
    out.emit("image_cap", args.cap)
    out.emit("avoided", avoided)
    if witness is not None:
        out.emit("witness", repr(witness))
    return PASS if avoided else FAIL


def cmd_search_longest(args, out):
    phi = _parse_formula_arg(args.formula)
    outcome = longest_avoiding_word(
        phi, args.k, args.cap, node_budget=args.nodes, time_budget=args.time
    )
    out.emit("kind", outcome.kind)
    out.emit("length", outcome.length)
    out.emit("witness", outcome.witness)
    out.emit("nodes", outcome.nodes)
    if outcome.kind == EXACT_LONGEST:
        return PASS
    return BUDGET


def cmd_search_find(args, out):
    texts = []
    if args.formulas:
        with open(args.formulas) as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    texts.append(line)
    texts.extend(args.formula or [])
    if not texts:
        raise FormulaError("no formulas given")
    phis = [parse_formula(t) for t in texts]
    outcome = find_avoiding_word(
        phis, args.k, args.target, node_budget=args.nodes, time_budget=args.time
    )
    out.emit("kind", outcome.kind)
    out.emit("length", outcome.length)
    out.emit("witness", outcome.witness)
    out.emit("nodes", outcome.nodes)
    if outcome.kind == FOUND_WORD:
        return PASS
    if outcome.kind == CAP_EXCEEDED:
        return BUDGET
    return FAIL


def cmd_report_tables(args, out):
    rows, ok = run_tables(jobs=args.jobs, skip_slow=args.skip_slow)
    out.emit_lines(render_rows(rows))
    out.emit("checks", len(rows))
    out.emit("result", "pass" if ok else "fail")
    return PASS if ok else FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="revpat",
        description="pattern-avoidance toolkit for formulas with reversal",
    )
    parser.add_argument("--json", action="store_true", help="emit one JSON document")
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("REVPAT_JOBS", "1")),
        help="worker count for parallelizable reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_formula = sub.add_parser("formula", help="formula-level operations")
    fsub = p_formula.add_subparsers(dest="subcommand", required=True)
    p = fsub.add_parser("check", help="profile and decide a formula")
    p.add_argument("formula")
    p.set_defaults(func=cmd_formula_check)
    p = fsub.add_parser("divides", help="division witness between formulas")
    p.add_argument("phi")
    p.add_argument("psi")
    p.add_argument("--e", action="store_true", help="restrict to e-division")
    p.set_defaults(func=cmd_formula_divides)
    p = fsub.add_parser("simplify", help="simplifications with verdicts")
    p.add_argument("formula")
    p.set_defaults(func=cmd_formula_simplify)

    p_basis = sub.add_parser("basis", help="avoidance-basis verification")
    bsub = p_basis.add_subparsers(dest="subcommand", required=True)
    p = bsub.add_parser("verify", help="check the basis conditions")
    p.add_argument("name", choices=["Phi1", "Phi2", "Phi3"])
    p.add_argument("--tier", choices=["fast", "long"], default="fast")
    p.add_argument("--checkpoints", help="directory for resumable inventories")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_basis_verify)
    p = bsub.add_parser("census", help="classify all patterns up to a length")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--maxlen", type=int, required=True)
    p.set_defaults(func=cmd_basis_census)
    p = bsub.add_parser("pool", help="unavoidable pattern pool")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_basis_pool)
    p = bsub.add_parser("minimal", help="minimality test")
    p.add_argument("formula")
    p.set_defaults(func=cmd_basis_minimal)

    p_morphic = sub.add_parser("morphic", help="fixed-point word services")
    msub = p_morphic.add_subparsers(dest="subcommand", required=True)
    p = msub.add_parser("factors", help="complete factor set of one length")
    p.add_argument("system", help="blocks@seed, outer*blocks@seed, or a name")
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_morphic_factors)
    p = msub.add_parser("reversible", help="reversible factors")
    p.add_argument("system")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_morphic_reversible)
    p = msub.add_parser("avoid", help="occurrence test on a prefix")
    p.add_argument("system")
    p.add_argument("--iterate", type=int, required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--constants", action="store_true")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_morphic_avoid)

    p_search = sub.add_parser("search", help="avoiding-word search")
    ssub = p_search.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("longest", help="exact longest avoiding word")
    p.add_argument("--formula", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--nodes", type=int)
    p.add_argument("--time", type=float)
    p.set_defaults(func=cmd_search_longest)
    p = ssub.add_parser("find", help="one word avoiding all given formulas")
    p.add_argument("--formulas", help="file with one formula per line, # comments")
    p.add_argument("--formula", action="append", help="inline formula (repeatable)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--nodes", type=int)
    p.add_argument("--time", type=float)
    p.set_defaults(func=cmd_search_find)

    p_report = sub.add_parser("report", help="checked reproduction reports")
    rsub = p_report.add_subparsers(dest="subcommand", required=True)
    p = rsub.add_parser("tables", help="run the recorded-claims battery")
    p.add_argument("--skip-slow", action="store_true", help="skip the hour-scale rows")
    p.set_defaults(func=cmd_report_tables)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        code = args.func(args, out)
    except (FormulaError, MorphismError, ArityError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
