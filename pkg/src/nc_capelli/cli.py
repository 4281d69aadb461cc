"""Command-line front end: run verifier suites, emit JSON reports and
human-readable summaries, and expand expressions to canonical form.

Exit codes: 0 all selected verifiers pass; 1 residual failure;
2 configuration or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__, cayley  # noqa: F401  (cayley registers verifiers)
from . import identities, pbw, swapalg, weyl
from .scalars import Coefficient

VERSION = __version__


# ---------------------------------------------------------------------------
# Expression grammar for `expand`
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[-+*/^()])")


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad character at position {pos}: {text[pos]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over +, -, *, / (constants only), ^ and
    parentheses; names resolve through the context."""

    def __init__(self, tokens, resolve, ring):
        self.tokens = tokens
        self.pos = 0
        self.resolve = resolve
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self):
        out = self.sum()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return out

    def sum(self):
        if self.peek() == "-":
            self.take()
            out = -self.product()
        else:
            if self.peek() == "+":
                self.take()
            out = self.product()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                out = out + self.product()
            else:
                out = out - self.product()
        return out

    def product(self):
        out = self.power()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                out = out * self.power()
            else:
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise ValueError("division only by nonzero integers")
                out = out.scale(Coefficient.from_rational(1, int(den)))
        return out

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            exp = int(self.take())
            base = base ** exp
        return base

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            out = self.sum()
            self.take(")")
            return out
        if tok is None:
            raise ValueError("unexpected end of input")
        self.take()
        if tok.isdigit():
            return self.ring.from_coefficient(Coefficient.from_rational(int(tok)))
        if tok == "i":
            return self.ring.from_coefficient(Coefficient.i())
        return self.resolve(tok)


class ExpandContext:
    """Name resolution for the expand subcommand."""

    def __init__(self, name):
        self.name = name
        if name == "gl2":
            self.spec = pbw.build_gln(2)
            self.ring = self.spec.ring()
        elif name == "swap":
            self.table = swapalg.psi_phi_table()
            self.ring = self.table.ring()
        elif name == "weyl":
            self.ring = None  # built per expression
        else:
            raise ValueError(f"unknown context {name!r}")

    def expand(self, text):
        tokens = _tokenize(text)
        if self.name == "weyl":
            names = sorted({
                t[1:] if t.startswith("d") and len(t) > 1 else t
                for t in tokens
                if t[:1].isalpha() and t not in ("i",) and t != "**"
            })
            gens = weyl.GeneratorSet(names)
            ring = weyl.weyl_ring(gens)

            def resolve(tok):
                if tok.startswith("d") and tok[1:] in gens.index:
                    return weyl.WeylElement.derivative(gens, tok[1:])
                if tok in gens.index:
                    return weyl.WeylElement.variable(gens, tok)
                raise ValueError(f"unknown name {tok!r}")
        elif self.name == "gl2":
            ring = self.ring

            def resolve(tok):
                if tok in self.spec.index:
                    return self.spec.generator(tok)
                raise ValueError(f"unknown name {tok!r}")
        else:
            ring = self.ring

            def resolve(tok):
                if tok in self.table.index:
                    return self.table.letter(tok)
                raise ValueError(f"unknown name {tok!r}")
        return _Parser(tokens, resolve, ring).parse()


# ---------------------------------------------------------------------------
# Suite runner
# ---------------------------------------------------------------------------

def _run_one(args):
    verifier_id, config = args
    reports = identities.REGISTRY[verifier_id](config)
    return verifier_id, [r.to_dict() for r in reports]


def _report_sort_key(d):
    return (d["identityName"], json.dumps(d["sizeParams"], sort_keys=True))


def run_suite(selection, config, workers=1, fail_fast=False,
              strict_conditional=False, out=None):
    """Run the selected verifiers; returns (exit_code, report_dicts)."""
    if out is None:
        out = sys.stdout
    unknown = [v for v in selection if v not in identities.REGISTRY]
    if unknown:
        raise KeyError(f"unknown verifier ids: {', '.join(unknown)}")
    selection = sorted(selection)
    jobs = [(vid, config) for vid in selection]
    results = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for vid, reports in pool.map(_run_one, jobs):
                results[vid] = reports
    else:
        for job in jobs:
            vid, reports = _run_one(job)
            results[vid] = reports
            if fail_fast and any(
                not r["residualIsZero"] and (strict_conditional or not r["conditional"])
                for r in reports
            ):
                break
    reports = sorted(
        (r for rs in results.values() for r in rs), key=_report_sort_key
    )
    failed = 0
    for r in reports:
        ok = r["residualIsZero"]
        hard_fail = not ok and (strict_conditional or not r["conditional"])
        flag = "ok" if ok else ("FAIL" if hard_fail else "fail(conditional)")
        if hard_fail:
            failed += 1
        params = json.dumps(r["sizeParams"], sort_keys=True)
        print(f"  [{flag:>4}] {r['identityName']} {params} "
              f"({r['wallMillis']} ms)", file=out)
    print(f"{len(reports)} reports, {failed} failures", file=out)
    return (1 if failed else 0), reports


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nc-capelli",
        description="Exact verification of noncommutative determinant identities.",
    )
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run verifier suites")
    runp.add_argument("--suite", default="all",
                      help="comma-separated verifier ids, or 'all'")
    runp.add_argument("--max-n", type=int, default=None, dest="max_n")
    runp.add_argument("--signs", choices=("plus", "minus", "both"),
                      default="both")
    runp.add_argument("--json", dest="json_path", default=None)
    runp.add_argument("--extended", action="store_true")
    runp.add_argument("--strict-conditional", action="store_true")
    runp.add_argument("--fail-fast", action="store_true")
    runp.add_argument("--workers", type=int, default=None)
    runp.add_argument("--list", action="store_true",
                      help="list verifier ids and exit")

    expp = sub.add_parser("expand", help="expand an expression")
    expp.add_argument("--context", choices=("weyl", "gl2", "swap"),
                      default="weyl")
    expp.add_argument("expression")

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses exit code 2 for usage errors already
        raise e

    if args.command == "expand":
        try:
            element = ExpandContext(args.context).expand(args.expression)
        except ValueError as e:
            print(f"parse error: {e}", file=sys.stderr)
            return 2
        print(element.render())
        return 0

    if args.list:
        for vid in sorted(identities.REGISTRY):
            print(vid)
        return 0

    if args.suite == "all":
        selection = sorted(identities.REGISTRY)
    else:
        selection = [v.strip() for v in args.suite.split(",") if v.strip()]
        if not selection:
            print("error: empty suite selection", file=sys.stderr)
            return 2

    max_n = args.max_n if args.max_n is not None else (3 if args.extended else 2)
    if max_n < 1 or max_n > 3:
        print("error: --max-n must be between 1 and 3", file=sys.stderr)
        return 2
    workers = args.workers
    if workers is None:
        env = os.environ.get("NC_CAPELLI_WORKERS")
        workers = int(env) if env else 1
    if workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2

    config = {"max_n": max_n, "signs": args.signs, "extended": args.extended}
    started = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    try:
        code, reports = run_suite(
            selection, config, workers=workers, fail_fast=args.fail_fast,
            strict_conditional=args.strict_conditional,
        )
    except KeyError as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return 2

    if args.json_path:
        payload = {
            "version": VERSION,
            "suite": selection,
            "startedAt": started,
            "reports": reports,
        }
        with open(args.json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
