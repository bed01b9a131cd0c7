# Copyright (C) 2026
#
# This file is part of Modulobox.
#
# Modulobox is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Modulobox is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Command line front end.

Exit codes: 0 success, 1 check failure or negative verdict, 2 parse, signature or domain error, 3 fuel exhaustion or
reduction loop.
"""

import argparse
import concurrent.futures
import os
import sys

from checker import check_sequent
from exceptions import FuelExhausted, KernelError, NotStratifiable
from logger import Log, Logger
from options import OUTPUT_FORMATS, RunConfig
from parser import (format_levels, format_proof, format_prop, format_report, format_rule, format_theory,
                    load_theory, parse_proof_file, parse_prop)
from proofterm import LoopDetected, NormalForm, normalize_proof
from rewrite import Fuel, normalize_prop
from selftest import CRITERIA, run_selftest
from sf import BUILTIN_FILES, comprehend, theories_dir
from stratify import stratify

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_FUEL = 3

REPORT_EXIT_CODES = {"ok": EXIT_OK, "check_failure": EXIT_FAILURE, "signature": EXIT_INPUT_ERROR, "fuel": EXIT_FUEL}


def resolve_path(path):
    """A path as given, else a bundled file of that name, else the file of a bundled theory name"""
    if os.path.exists(path):
        return path
    bundled = os.path.join(theories_dir(), BUILTIN_FILES.get(path, path))
    if os.path.exists(bundled):
        return bundled
    raise FileNotFoundError('no such file: "%s"' % path)


def read_theory(path, config):
    path = resolve_path(path)
    theory = load_theory(path)
    theory.classical = config.classical
    return theory, path


def read_proofs(path, theory):
    with open(resolve_path(path), encoding="utf-8") as f:
        return parse_proof_file(f.read(), theory.signature)


class CommandLine:
    """Runs one command with a RunConfig and writes its result on out"""

    def __init__(self, config, out=None, logger=None):
        self.config = config
        self.out = out or sys.stdout
        self.logger = logger or Logger.from_config(config)

    @property
    def sexp(self):
        return self.config.output == "sexp"

    def write(self, text):
        print(text, file=self.out)

    def error(self, e):
        self.logger.log([Log("error", "%s: %s" % (type(e).__name__, e), depth=0)])

    # check

    def _check_file(self, theory, index, path):
        try:
            proofs = read_proofs(path, theory)
        except (KernelError, OSError) as e:
            return e
        with self.logger.timed(Log("check-%s-%s" % (index, path), "check %s" % path, depth=1)):
            return [check_sequent(theory, proof, self.config.fuel, self.config.search_limit) for proof in proofs]

    def cmd_check(self, theory_path, proof_paths):
        theory, _ = read_theory(theory_path, self.config)
        with concurrent.futures.ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda item: self._check_file(theory, *item), enumerate(proof_paths)))
        code = EXIT_OK
        for path, result in zip(proof_paths, results):
            if isinstance(result, Exception):
                self.error(result)
                code = max(code, EXIT_INPUT_ERROR)
                continue
            for report in result:
                self.write(format_report(report, self.config.output))
                code = max(code, REPORT_EXIT_CODES[report.category])
        return code

    # normalize

    def cmd_normalize(self, theory_path, prop=None, proof_file=None):
        theory, _ = read_theory(theory_path, self.config)
        if prop is not None:
            return self._normalize_prop(theory, parse_prop(prop, theory.signature))
        code = EXIT_OK
        for proof in read_proofs(proof_file, theory):
            outcome = normalize_proof(proof.term, self.config.fuel, self.config.history_window)
            if isinstance(outcome, NormalForm):
                shown = format_proof(outcome.term)
            else:
                shown = format_proof(outcome.witness if isinstance(outcome, LoopDetected) else outcome.last)
                code = EXIT_FUEL
            if self.sexp:
                self.write("(%s %s %s (steps %s))" % (outcome.category, proof.name, shown, outcome.steps))
            else:
                label = {"normal": "normal form", "fuel": "fuel exhausted", "loop": "loop detected"}
                self.write("%s: %s after %s steps\n  %s" % (proof.name, label[outcome.category], outcome.steps, shown))
        return code

    def _normalize_prop(self, theory, a):
        fuel = Fuel(self.config.fuel)
        try:
            result = normalize_prop(a, theory.rules, fuel, self.config.strategy)
        except FuelExhausted as e:
            if self.sexp:
                self.write("(fuel %s (steps %s))" % (format_prop(e.last), fuel.used))
            else:
                self.write("fuel exhausted after %s steps\n  %s" % (fuel.used, format_prop(e.last)))
            return EXIT_FUEL
        if self.sexp:
            self.write("(normal %s (steps %s))" % (format_prop(result), fuel.used))
        else:
            self.write(format_prop(result))
            self.write("steps: %s" % fuel.used)
        return EXIT_OK

    # stratify

    def cmd_stratify(self, prop):
        result = stratify(parse_prop(prop))
        if not result:
            self.write("unstratifiable")
            return EXIT_FAILURE
        self.write(format_levels(result))
        return EXIT_OK

    # comprehend

    def cmd_comprehend(self, theory_path, prop, variables, allow_iterated=False, output_file=None):
        theory, path = read_theory(theory_path, self.config)
        body = parse_prop(prop, theory.signature)
        try:
            inst = comprehend(theory, body, variables.split(), allow_iterated, self.config.fuel)
        except NotStratifiable as e:
            self.error(e)
            self.write("unstratifiable")
            return EXIT_FAILURE
        if output_file is None:
            stem = os.path.splitext(os.path.basename(path))[0]
            directory = os.path.dirname(os.path.abspath(theory_path)) if os.path.exists(theory_path) else os.getcwd()
            output_file = os.path.join(directory, "%s-%s.thy" % (stem, inst.symbol))
        if os.path.abspath(output_file) == os.path.abspath(path):
            raise ValueError("comprehend never overwrites its input theory")
        with open(output_file, "w", encoding="utf-8") as f:
            f.write(format_theory(theory))
        if self.sexp:
            self.write('(comprehension (symbol %s) %s (axiom %s) (file "%s"))' % (
                inst.symbol, format_rule(inst.rule), format_prop(inst.axiom), output_file))
        else:
            self.write("symbol: %s\nrule:   %s\naxiom:  %s\nwritten %s" % (
                inst.symbol, format_rule(inst.rule), format_prop(inst.axiom), output_file))
        return EXIT_OK

    # selftest

    def cmd_selftest(self, scale=1.0, only=None):
        evaluator = run_selftest(self.config, scale, self.logger, only)
        for run in evaluator.runs.values():
            status = "ok" if run.ok else "FAILED"
            elapsed = "%.2fs" % run.elapsed if run.elapsed is not None else "-"
            if self.sexp:
                self.write("(criterion %s %s (passed %s) (cases %s))" % (run.name, "ok" if run.ok else "failed",
                                                                         run.passed, run.cases))
            else:
                self.write("%-18s %-6s %5s/%-5s %s" % (run.name, status, run.passed, run.cases, elapsed))
                for failure in run.failures:
                    self.write("    %s" % failure)
        stats = evaluator.statistics()
        if not self.sexp:
            self.write("%s/%s criteria passed" % (stats["criteria_passed"], stats["criteria"]))
        return EXIT_OK if evaluator.ok else EXIT_FAILURE


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=None, help="rewrite and reduction step budget (default 10000)")
    common.add_argument("--classical", action="store_true", default=None, help="enable the excluded middle rule")
    common.add_argument("--seed", type=int, default=None, help="seed of the randomized samples")
    common.add_argument("--output", choices=OUTPUT_FORMATS, default=None, help="output format (default text)")
    common.add_argument("--history-window", type=int, default=None, help="loop detection window (default 64)")
    common.add_argument("--search-limit", type=int, default=None, help="cut formulas tried per elimination")
    common.add_argument("--strategy", default=None, help="rewrite strategy class name")
    common.add_argument("--log-depth", type=int, default=None, help="maximum depth of printed logs")
    common.add_argument("--log-file", default=None, help="also append logs to this file")

    parser = argparse.ArgumentParser(prog="modulobox", description="proof checker for natural deduction modulo")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="check proof files against a theory")
    check.add_argument("theory")
    check.add_argument("proofs", nargs="+")

    normalize = commands.add_parser("normalize", parents=[common], help="normalize a proposition or proof terms")
    normalize.add_argument("theory")
    what = normalize.add_mutually_exclusive_group(required=True)
    what.add_argument("--prop")
    what.add_argument("--proof-file")

    strat = commands.add_parser("stratify", parents=[common], help="stratify a proposition of the language {in}")
    strat.add_argument("--prop", required=True)

    compr = commands.add_parser("comprehend", parents=[common], help="add a comprehension symbol to a theory")
    compr.add_argument("theory")
    compr.add_argument("--prop", required=True)
    compr.add_argument("--vars", required=True, help='space separated x1 ... xn+1, e.g. "x1 x2"')
    compr.add_argument("--allow-iterated", action="store_true", help="accept bodies with Skolem symbols")
    compr.add_argument("--output-file", default=None, help="where to write the extended theory")

    selftest = commands.add_parser("selftest", parents=[common], help="run the acceptance suite")
    selftest.add_argument("--scale", type=float, default=1.0, help="size factor of the randomized samples")
    selftest.add_argument("--only", nargs="+", choices=[name for name, _ in CRITERIA], default=None)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_env(fuel=args.fuel, classical=args.classical, seed=args.seed, output=args.output,
                                    history_window=args.history_window, search_limit=args.search_limit,
                                    strategy=args.strategy, log_depth=args.log_depth, log_filepath=args.log_file)
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT_ERROR
    logger = Logger.from_config(config)
    cli = CommandLine(config, out, logger)
    try:
        if args.command == "check":
            return cli.cmd_check(args.theory, args.proofs)
        if args.command == "normalize":
            return cli.cmd_normalize(args.theory, args.prop, args.proof_file)
        if args.command == "stratify":
            return cli.cmd_stratify(args.prop)
        if args.command == "comprehend":
            return cli.cmd_comprehend(args.theory, args.prop, args.vars, args.allow_iterated, args.output_file)
        return cli.cmd_selftest(args.scale, args.only)
    except FuelExhausted as e:
        cli.error(e)
        return EXIT_FUEL
    except (KernelError, OSError, ValueError) as e:
        cli.error(e)
        return EXIT_INPUT_ERROR
    finally:
        logger.close()


if __name__ == "__main__":
    sys.exit(main())
