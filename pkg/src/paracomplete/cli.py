"""Command-line interface.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
parse error, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import io as fmt
from .formula import ParseError, parse, render
from .probability import (
    ClosureMismatch, HypothesisViolated, ZeroCondition, audit_axioms, bayes,
    coherence, conditional, p_entails, prob, total_probability,
)
from .proof import InvalidDerivation, check_derivation, deduction_transform
from .semantics import DEFAULT_CAP, CapExceeded, is_tautology, truth_table
from .spaces import SizeCapExceeded, validate_sigma_p, validate_space

OK, NEGATIVE, USAGE, CAP = 0, 1, 2, 3


class _Out:
    def __init__(self, stream: TextIO, machine: bool):
        self.stream = stream
        self.machine = machine

    def line(self, text: str = "") -> None:
        print(text, file=self.stream)

    def kv(self, key: str, value) -> None:
        print(f"{key}={value}", file=self.stream)

    def emit(self, text_line: str, pairs: Sequence[tuple[str, object]]) -> None:
        if self.machine:
            for k, v in pairs:
                self.kv(k, v)
        else:
            self.line(text_line)


def _read(path: str) -> str:
    return Path(path).read_text()


# ---------------------------------------------------------------- subcommands

def cmd_parse(args, out: _Out) -> int:
    f = parse(args.formula)
    out.emit(render(f), [("formula", render(f)), ("tree", repr(f))])
    return OK


def cmd_decide(args, out: _Out) -> int:
    res = is_tautology(parse(args.formula), args.cap)
    if res:
        out.emit("TAUTOLOGY", [("verdict", "TAUTOLOGY")])
        return OK
    w = res.countermodel
    out.emit(f"COUNTERMODEL {w}",
             [("verdict", "COUNTERMODEL")] + [(f"atom.{render(a)}", b) for a, b in zip(w.closure.atoms, w.bits)])
    return NEGATIVE


def cmd_table(args, out: _Out) -> int:
    t = truth_table([parse(s) for s in args.formulas], args.cap)
    if out.machine:
        out.kv("columns", ",".join(render(f) for f in t.columns))
        out.kv("rows", len(t.rows))
        for r in t.rows:
            out.kv("row", ",".join(map(str, r)))
    else:
        out.line(t.render())
    return OK


def cmd_prove_check(args, out: _Out) -> int:
    d = fmt.parse_proof(_read(args.file))
    v = check_derivation(d)
    if v:
        out.emit("VALID", [("verdict", "VALID"), ("conclusion", render(d.conclusion))])
        return OK
    out.emit(str(v), [("verdict", "INVALID"), ("line", v.line), ("reason", v.reason)])
    return NEGATIVE


def cmd_deduce(args, out: _Out) -> int:
    d = fmt.parse_proof(_read(args.file))
    try:
        res = deduction_transform(d, parse(args.hypothesis))
    except InvalidDerivation as e:
        out.emit(str(e.verdict), [("verdict", "INVALID"), ("line", e.verdict.line),
                                  ("reason", e.verdict.reason)])
        return NEGATIVE
    out.stream.write(fmt.dump_proof(res))
    return OK


def cmd_prob(args, out: _Out) -> int:
    d = fmt.parse_distribution(_read(args.dist))
    v = prob(d, parse(args.formula))
    out.emit(str(v), [("prob", v)])
    return OK


def cmd_cond(args, out: _Out) -> int:
    d = fmt.parse_distribution(_read(args.dist))
    v = conditional(d, parse(args.target), parse(args.given))
    out.emit(str(v), [("cond", v)])
    return OK


def cmd_total(args, out: _Out) -> int:
    d = fmt.parse_distribution(_read(args.dist))
    r = total_probability(d, parse(args.alpha), parse(args.beta))
    pairs = [("p_beta", r.p_beta), ("p_beta_and_alpha", r.p_beta_and_alpha),
             ("p_beta_and_neg_alpha", r.p_beta_and_neg_alpha),
             ("p_beta_and_undet_alpha", r.p_beta_and_undet_alpha),
             ("p_beta_and_overlap", r.p_beta_and_overlap),
             ("identity_holds", str(r.identity_holds).lower())]
    for k, v in pairs:
        out.kv(k, v) if out.machine else out.line(f"{k}: {v}")
    return OK if r.identity_holds else NEGATIVE


def cmd_bayes(args, out: _Out) -> int:
    d = fmt.parse_distribution(_read(args.dist))
    r = bayes(d, parse(args.alpha), parse(args.beta), allow_degenerate=args.degenerate)
    pairs = [("posterior", r.posterior), ("numerator", r.numerator),
             ("denominator", r.denominator), ("K", r.K),
             ("term_alpha", r.terms[0]), ("term_neg_alpha", r.terms[1]),
             ("term_undet_alpha", r.terms[2]), ("direct", r.direct),
             ("matches_direct", str(r.matches_direct).lower())]
    for k, v in pairs:
        out.kv(k, v) if out.machine else out.line(f"{k}: {v}")
    return OK


def cmd_audit(args, out: _Out) -> int:
    table, _ = fmt.parse_constraints(_read(args.file))
    violations = audit_axioms(table, args.cap)
    if not violations:
        out.emit("OK", [("verdict", "OK")])
        return OK
    if out.machine:
        out.kv("verdict", "VIOLATIONS")
        for v in violations:
            out.kv(f"violation.{v.kind}", v.detail)
    else:
        out.line("VIOLATIONS")
        for v in violations:
            out.line(str(v))
    return NEGATIVE


def cmd_coherence(args, out: _Out) -> int:
    table, universe = fmt.parse_constraints(_read(args.file))
    res = coherence(table, universe, args.cap)
    if not res:
        out.emit("INFEASIBLE", [("verdict", "INFEASIBLE")])
        return NEGATIVE
    if out.machine:
        out.kv("verdict", "FEASIBLE")
        for w, v in res.witness.weights.items():
            out.kv(f"weight[{w}]", v)
    else:
        out.line("FEASIBLE")
        out.stream.write(fmt.dump_distribution(res.witness))
    return OK


def cmd_p_entails(args, out: _Out) -> int:
    premises = [parse(s) for s in args.premise]
    ok = p_entails(premises, parse(args.formula), args.cap)
    verdict = "ENTAILED" if ok else "NOT-ENTAILED"
    out.emit(verdict, [("verdict", verdict)])
    return OK if ok else NEGATIVE


def cmd_space_check(args, out: _Out) -> int:
    sf = fmt.parse_space(_read(args.file))
    rep = validate_space(sf.space()) if sf.is_space else validate_sigma_p(sf.algebra)
    if out.machine:
        out.kv("verdict", "VALID" if rep.valid else "INVALID")
        for v in rep.violations:
            out.kv(f"violation.{v.clause}", str(v))
    else:
        out.line(str(rep))
    return OK if rep.valid else NEGATIVE


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="maximum number of assignments to enumerate (default 2^20)")
    common.add_argument("--format", choices=("text", "machine"), default="text",
                        help="machine: stable key=value lines")

    p = argparse.ArgumentParser(prog="paracomplete", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    add("parse", cmd_parse, "parse and print a formula").add_argument("formula")
    add("decide", cmd_decide, "decide validity").add_argument("formula")
    add("table", cmd_table, "print a truth table").add_argument("formulas", nargs="+")
    add("prove-check", cmd_prove_check, "check a proof file").add_argument("file")
    sp = add("deduce", cmd_deduce, "discharge a hypothesis from a proof file")
    sp.add_argument("file")
    sp.add_argument("hypothesis")
    sp = add("prob", cmd_prob, "probability of a formula under a distribution file")
    sp.add_argument("dist")
    sp.add_argument("formula")
    sp = add("cond", cmd_cond, "conditional probability P(target | given)")
    sp.add_argument("dist")
    sp.add_argument("target")
    sp.add_argument("given")
    sp = add("total", cmd_total, "total paracomplete probability terms")
    sp.add_argument("dist")
    sp.add_argument("alpha")
    sp.add_argument("beta")
    sp = add("bayes", cmd_bayes, "paracomplete Bayes posterior P(alpha | beta)")
    sp.add_argument("dist")
    sp.add_argument("alpha")
    sp.add_argument("beta")
    sp.add_argument("--degenerate", action="store_true",
                    help="accept zero priors, taking their terms as 0")
    add("audit", cmd_audit, "audit a probability table").add_argument("file")
    add("coherence", cmd_coherence, "decide coherence of a probability table").add_argument("file")
    sp = add("p-entails", cmd_p_entails, "probabilistic consequence")
    sp.add_argument("formula")
    sp.add_argument("-p", "--premise", action="append", default=[])
    add("space-check", cmd_space_check, "validate a space file").add_argument("file")
    return p


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else OK
    out = _Out(stdout, args.format == "machine")
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"error: parse-error: {e}", file=stderr)
        return USAGE
    except fmt.FileFormatError as e:
        print(f"error: file-format: {e}", file=stderr)
        return USAGE
    except OSError as e:
        print(f"error: io: {e}", file=stderr)
        return USAGE
    except (CapExceeded, SizeCapExceeded) as e:
        print(f"error: cap-exceeded: {e}", file=stderr)
        return CAP
    except ZeroCondition as e:
        print(f"error: zero-condition: {e}", file=stderr)
        return USAGE
    except HypothesisViolated as e:
        print(f"error: hypothesis-violated: {e}", file=stderr)
        return USAGE
    except ClosureMismatch as e:
        print(f"error: closure-mismatch: {e}", file=stderr)
        return USAGE
    except ValueError as e:
        print(f"error: invalid-input: {e}", file=stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
