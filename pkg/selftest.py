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

"""The bundled acceptance suite: golden derivations, congruence witnesses and randomized property checks"""

import os
import random
import warnings

from checker import ProofChecker, check, check_sequent
from evaluator import AcceptanceEvaluator
from exceptions import ReductionLoopWarning
from generators import (random_arith_prop, random_comprehension_vars, random_membership_formula,
                        random_stratifiable_body, random_typed_proof)
from logger import Log, Logger
from options import RunConfig
from parser import parse_proof_file, parse_prop
from proofterm import LoopDetected, NormalForm, OutOfFuel, normalize_proof, proof_key, reduce_step
from rewrite import check_orthogonality, convertible, equiv, normalize_prop, one_step_reducts, sf_measure_decreases
from sf import builtin_theories, comprehend, comprehension_witness, theories_dir
from stratify import brute_force_stratifiable, stratify, verify_stratification
from syntax import Atom, Fun, MEMBERSHIP, Var, alpha_eq

CRITERIA = (
    ("golden", "the 4-is-even derivation checks, its witness-3 mutation fails"),
    ("congruence", "congruence witnesses of arithmetic, integral domains and Crabbe's rule"),
    ("stratification", "stratification examples and agreement with the brute-force oracle"),
    ("certificates", "orthogonality and multiset-measure certificates of comprehension rules"),
    ("provability", "comprehension axioms check with the pair of identities"),
    ("crabbe", "Crabbe's proof checks and has no normal form"),
    ("subject-reduction", "checking is preserved by every reduct up to depth 3"),
    ("normalization", "random well-typed proofs of the SF theory normalize"),
    ("confluence", "innermost and outermost normal forms agree"),
)


def read_proofs(filename, theory):
    with open(os.path.join(theories_dir(), filename), encoding="utf-8") as f:
        return parse_proof_file(f.read(), theory.signature)


def _count(n, scale):
    return max(1, int(round(n * scale)))


class SelfTest:
    """Runs the acceptance criteria one after the other, recording every case in an AcceptanceEvaluator"""

    def __init__(self, config=None, scale=1.0, logger=None):
        """
        :param RunConfig config:
            fuel, seed and search limit of the run
        :param float scale:
            factor applied to the sizes of the randomized samples
        :param Logger logger:
            logger timing each criterion, one is built from config if None
        """
        self.config = config or RunConfig()
        self.scale = scale
        self.logger = logger or Logger.from_config(self.config)
        self.evaluator = AcceptanceEvaluator()
        self.theories = builtin_theories()

    def run(self, only=None):
        """Runs every criterion, or those named in only, and returns the evaluator"""
        for name, description in CRITERIA:
            if only and name not in only:
                continue
            rng = random.Random("%s-%s" % (self.config.seed, name))
            log = Log("selftest-" + name, "criterion %s" % name, depth=1)
            self.evaluator.on_run_begin(name, description)
            with self.logger.timed(log):
                try:
                    getattr(self, "criterion_" + name.replace("-", "_"))(rng)
                except Exception as e:
                    self.evaluator.on_error(e)
            self.evaluator.on_run_end(self.logger.elapsed.get(log.name))
            run = self.evaluator.runs[name]
            self.logger.log([Log("selftest", "%s: %s/%s passed" % (name, run.passed, run.cases), depth=0)])
        return self.evaluator

    def _case(self, passed, detail=None):
        return self.evaluator.on_case(passed, detail)

    def _check_reports(self, theory, proofs):
        return [check_sequent(theory, proof, self.config.fuel, self.config.search_limit) for proof in proofs]

    # CRITERIA

    def criterion_golden(self, rng):
        arithmetic = self.theories["arithmetic"]
        good, = self._check_reports(arithmetic, read_proofs("four-even.prf", arithmetic))
        self._case(good.ok, good.message)
        bad, = self._check_reports(arithmetic, read_proofs("four-even-bad.prf", arithmetic))
        self._case(bad.category == "check_failure", "the witness 3 mutation was accepted")

    def criterion_congruence(self, rng):
        fuel = self.config.fuel
        arithmetic = self.theories["arithmetic"]
        sig = arithmetic.signature
        self._case(equiv(parse_prop("(= (times 2 2) 4)", sig), parse_prop("(= 4 4)", sig), arithmetic.rules, fuel))
        self._case(equiv(parse_prop("(forall y (= (plus 0 y) y))", sig), parse_prop("(forall y (= y y))", sig),
                         arithmetic.rules, fuel))
        integral = self.theories["integral-domain"]
        self._case(equiv(parse_prop("(= (times x y) 0)", integral.signature),
                         parse_prop("(or (= x 0) (= y 0))", integral.signature), integral.rules, fuel))
        crabbe = self.theories["crabbe"]
        self._case(convertible(parse_prop("(A)", crabbe.signature),
                               parse_prop("(and (B) (=> (A) false))", crabbe.signature), crabbe.rules, fuel))

    def criterion_stratification(self, rng):
        extensional = parse_prop("(=> (forall v (iff (in v x) (in v y))) (forall w (=> (in x w) (in y w))))")
        levels = stratify(extensional)
        self._case(bool(levels) and verify_stratification(extensional, levels))
        self._case(verify_stratification(extensional, {"v": 4, "x": 5, "y": 5, "w": 6}))
        self._case(not stratify(parse_prop("(=> (forall v (iff (in v x) (in v y))) (in x y))")))
        self._case(not stratify(parse_prop("(in x x)")))
        for _ in range(_count(1000, self.scale)):
            a = random_membership_formula(rng)
            result = stratify(a)
            agree = bool(result) == brute_force_stratifiable(a)
            if result:
                agree = agree and verify_stratification(a, result)
            self._case(agree, "oracle disagreement")

    def _sf_instances(self, rng, count):
        theory = self.theories["sf-empty"].copy(name="sf")
        instances = []
        for _ in range(count):
            body = random_stratifiable_body(rng)
            instances.append(comprehend(theory, body, random_comprehension_vars(rng, body)))
        return theory, instances

    def _random_skolem_term(self, rng, instances, depth=1):
        if depth <= 0 or rng.random() < 0.6:
            return Var(rng.choice(("s", "t", "u")))
        inst = rng.choice(instances)
        n = len(inst.variables) - 1
        return Fun(inst.symbol, tuple(self._random_skolem_term(rng, instances, depth - 1) for _ in range(n)))

    def criterion_certificates(self, rng):
        theory, instances = self._sf_instances(rng, _count(50, self.scale))
        report = check_orthogonality(theory.rules)
        self._case(report.ok, "; ".join(str(v) for v in report.violations))
        for _ in range(_count(500, self.scale)):
            inst = rng.choice(instances)
            n = len(inst.variables) - 1
            args = tuple(self._random_skolem_term(rng, instances) for _ in range(n))
            a = Atom(MEMBERSHIP, (self._random_skolem_term(rng, instances), Fun(inst.symbol, args)))
            b = next(one_step_reducts(a, theory.rules))
            self._case(sf_measure_decreases(a, b), "measure does not decrease on %s" % inst.symbol)

    def criterion_provability(self, rng):
        theory, instances = self._sf_instances(rng, _count(50, self.scale))
        for inst in instances:
            try:
                check(theory, (), comprehension_witness(inst), inst.axiom, self.config.fuel, self.config.search_limit)
                self._case(True)
            except Exception as e:
                self.evaluator.on_error(e)

    def criterion_crabbe(self, rng):
        crabbe = self.theories["crabbe"]
        proof, = read_proofs("bot-from-b.prf", crabbe)
        report, = self._check_reports(crabbe, [proof])
        self._case(report.ok, report.message)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ReductionLoopWarning)
            for fuel in (10 ** 2, 10 ** 3, 10 ** 4):
                outcome = normalize_proof(proof.term, fuel, self.config.history_window)
                self._case(isinstance(outcome, (LoopDetected, OutOfFuel)), "normal form found with fuel %s" % fuel)

    def criterion_subject_reduction(self, rng):
        bundled = [(self.theories["arithmetic"], "four-even.prf"), (self.theories["crabbe"], "bot-from-b.prf")]
        for theory, filename in bundled:
            for proof in read_proofs(filename, theory):
                for reduct in reducts_up_to(proof.term, 3):
                    report, = self._check_reports(theory, [_with_term(proof, reduct)])
                    self._case(report.ok, "%s: %s" % (proof.name, report.message))

    def criterion_normalization(self, rng):
        theory, _ = self._sf_instances(rng, 3)
        checker = ProofChecker(theory, self.config.fuel, self.config.search_limit)
        for _ in range(_count(100, self.scale)):
            proof = random_typed_proof(rng, theory)
            try:
                checker.check(checker.base_context(proof.context), proof.term, proof.goal)
            except Exception as e:
                self.evaluator.on_error(e)
                continue
            outcome = normalize_proof(proof.term, 10 ** 4, self.config.history_window)
            self._case(isinstance(outcome, NormalForm), "%s: %s" % (proof.name, outcome.category))

    def criterion_confluence(self, rng):
        arithmetic = self.theories["arithmetic"]
        sf, instances = self._sf_instances(rng, 5)
        for i in range(_count(200, self.scale)):
            if i % 2 == 0:
                system, a = arithmetic.rules, random_arith_prop(rng)
            else:
                inst = rng.choice(instances)
                n = len(inst.variables) - 1
                args = tuple(self._random_skolem_term(rng, instances) for _ in range(n))
                system = sf.rules
                a = Atom(MEMBERSHIP, (self._random_skolem_term(rng, instances), Fun(inst.symbol, args)))
            inner = normalize_prop(a, system, self.config.fuel, "LeftmostInnermost_Strategy")
            outer = normalize_prop(a, system, self.config.fuel, "LeftmostOutermost_Strategy")
            self._case(alpha_eq(inner, outer), "strategies disagree")


def reducts_up_to(p, depth):
    """Every term reachable from p in at most depth reduction steps, p excluded, without alpha-duplicates"""
    seen = {proof_key(p)}
    frontier = [p]
    result = []
    for _ in range(depth):
        following = []
        for q in frontier:
            for r in reduce_step(q):
                key = proof_key(r)
                if key not in seen:
                    seen.add(key)
                    following.append(r)
        result.extend(following)
        frontier = following
    return result


def _with_term(proof, term):
    return type(proof)(proof.name, proof.goal, term, proof.context, {}, proof.line)


def run_selftest(config=None, scale=1.0, logger=None, only=None):
    """Runs the acceptance suite

    :rtype: AcceptanceEvaluator
    """
    return SelfTest(config, scale, logger).run(only)
