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

import io
import os
import shutil

import pytest

from cli import EXIT_FAILURE, EXIT_FUEL, EXIT_INPUT_ERROR, EXIT_OK, main, resolve_path
from options import ENV_PREFIX
from parser import load_theory
from sf import theories_dir


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for suffix in ("FUEL", "CLASSICAL", "OUTPUT", "HISTORY_WINDOW", "SEED"):
        monkeypatch.delenv(ENV_PREFIX + suffix, raising=False)
    monkeypatch.chdir(tmp_path)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_resolve_path():
    assert resolve_path("arithmetic") == os.path.join(theories_dir(), "arith.thy")
    assert resolve_path("four-even.prf") == os.path.join(theories_dir(), "four-even.prf")
    with pytest.raises(FileNotFoundError):
        resolve_path("missing.prf")


class TestCheck:

    def test_golden_proof(self):
        assert run("check", "arithmetic", "four-even.prf") == (EXIT_OK, "four-even: ok\n")

    def test_failures_set_the_exit_code(self):
        code, out = run("check", "arithmetic", "four-even.prf", "four-even-bad.prf")
        assert code == EXIT_FAILURE
        assert out.splitlines()[0] == "four-even: ok"
        assert out.splitlines()[1].startswith("four-even-bad: check failure at line 3, column 20")

    def test_crabbe(self):
        assert run("check", "crabbe", "bot-from-b.prf")[0] == EXIT_OK

    def test_no_proof_of_false(self):
        assert run("check", "sf-empty", "sf-bottom.prf")[0] == EXIT_FAILURE
        assert run("check", "sf-empty", "sf-bottom.prf", "--classical")[0] == EXIT_FAILURE

    def test_each_file_is_timed(self, tmp_path):
        log_file = str(tmp_path / "check.log")
        code, out = run("check", "arithmetic", "four-even.prf", "four-even.prf", "--log-depth", "1",
                        "--log-file", log_file)
        assert code == EXIT_OK
        assert out == "four-even: ok\nfour-even: ok\n"
        with open(log_file, encoding="utf-8") as f:
            timings = [line for line in f if "[check four-even.prf] :" in line]
        assert len(timings) == 2

    def test_sexp_output(self):
        assert run("check", "arithmetic", "four-even.prf", "--output", "sexp") == (EXIT_OK, "(report four-even ok)\n")

    def test_fuel(self):
        assert run("check", "arithmetic", "four-even.prf", "--fuel", "1")[0] == EXIT_FUEL

    def test_input_errors(self, tmp_path):
        assert run("check", "arithmetic", "missing.prf")[0] == EXIT_INPUT_ERROR
        broken = tmp_path / "broken.prf"
        broken.write_text("(proof p (goal (= 0 0)) (term (pvar refl))")
        assert run("check", "arithmetic", str(broken))[0] == EXIT_INPUT_ERROR
        assert run("check", "no-such-theory", "four-even.prf")[0] == EXIT_INPUT_ERROR

    def test_invalid_options(self):
        assert run("check", "arithmetic", "four-even.prf", "--fuel", "0")[0] == EXIT_INPUT_ERROR

    def test_environment_defaults(self, monkeypatch):
        monkeypatch.setenv(ENV_PREFIX + "OUTPUT", "sexp")
        assert run("check", "arithmetic", "four-even.prf")[1] == "(report four-even ok)\n"
        assert run("check", "arithmetic", "four-even.prf", "--output", "text")[1] == "four-even: ok\n"


class TestNormalize:

    def test_proposition(self):
        code, out = run("normalize", "arithmetic", "--prop", "(= (times 2 2) 4)")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "(= 4 4)"
        assert lines[1].startswith("steps: ")

    def test_proposition_sexp(self):
        code, out = run("normalize", "integral-domain", "--prop", "(= (times x y) 0)", "--output", "sexp")
        assert code == EXIT_OK
        assert out.startswith("(normal (or (= x 0) (= y 0)) (steps 1))")

    def test_non_terminating_rules(self):
        code, out = run("normalize", "crabbe", "--prop", "(A)", "--fuel", "50")
        assert code == EXIT_FUEL
        assert out.startswith("fuel exhausted after 50 steps")

    def test_strategies(self):
        prop = "(= (times 0 (plus 0 0)) 0)"
        assert run("normalize", "arithmetic", "--prop", prop)[1].splitlines()[1] == "steps: 2"
        outermost = run("normalize", "arithmetic", "--prop", prop, "--strategy", "LeftmostOutermost_Strategy")
        assert outermost[1].splitlines()[1] == "steps: 1"
        assert run("normalize", "arithmetic", "--prop", prop, "--strategy", "Nope")[0] == EXIT_INPUT_ERROR

    def test_proof_file(self):
        code, out = run("normalize", "arithmetic", "--proof-file", "four-even.prf")
        assert code == EXIT_OK
        assert out.startswith("four-even: normal form after 0 steps")

    def test_looping_proof(self):
        code, out = run("normalize", "crabbe", "--proof-file", "bot-from-b.prf", "--output", "sexp")
        assert code == EXIT_FUEL
        assert out.startswith("(loop bot-from-b ")
        assert out.rstrip().endswith("(steps 2))")


class TestStratify:

    def test_levels(self):
        prop = "(=> (forall v (iff (in v x) (in v y))) (forall w (=> (in x w) (in y w))))"
        assert run("stratify", "--prop", prop) == (EXIT_OK, "(levels (v 0) (x 1) (y 1) (w 2))\n")

    def test_unstratifiable(self):
        assert run("stratify", "--prop", "(in x x)") == (EXIT_FAILURE, "unstratifiable\n")

    def test_other_languages(self):
        assert run("stratify", "--prop", "(= x y)")[0] == EXIT_INPUT_ERROR
        assert run("stratify", "--prop", "(in x")[0] == EXIT_INPUT_ERROR


class TestComprehend:

    @pytest.fixture
    def theory_file(self, tmp_path):
        path = tmp_path / "sf.thy"
        shutil.copy(os.path.join(theories_dir(), "sf-empty.thy"), str(path))
        return path

    def test_writes_a_sibling_file(self, theory_file, tmp_path):
        original = theory_file.read_text()
        code, out = run("comprehend", str(theory_file), "--prop", "(in y x)", "--vars", "x y")
        assert code == EXIT_OK
        symbol = out.splitlines()[0].split()[1]
        written = tmp_path / ("sf-%s.thy" % symbol)
        assert written.exists()
        assert theory_file.read_text() == original
        theory = load_theory(str(written))
        assert theory.signature.is_skolem(symbol)
        assert theory.rules.rule_named(symbol)

    def test_output_file(self, theory_file, tmp_path):
        target = tmp_path / "out" / "extended.thy"
        target.parent.mkdir()
        code, out = run("comprehend", str(theory_file), "--prop", "false", "--vars", "y", "--output-file",
                        str(target), "--output", "sexp")
        assert code == EXIT_OK
        assert out.startswith("(comprehension (symbol f_")
        assert target.exists()

    def test_never_overwrites_its_input(self, theory_file):
        original = theory_file.read_text()
        code, _ = run("comprehend", str(theory_file), "--prop", "(in y x)", "--vars", "x y", "--output-file",
                      str(theory_file))
        assert code == EXIT_INPUT_ERROR
        assert theory_file.read_text() == original

    def test_bundled_theory_is_written_to_the_working_directory(self, tmp_path):
        code, out = run("comprehend", "sf-empty", "--prop", "(in y x)", "--vars", "x y")
        assert code == EXIT_OK
        symbol = out.splitlines()[0].split()[1]
        assert (tmp_path / ("sf-empty-%s.thy" % symbol)).exists()

    def test_unstratifiable_body(self, theory_file):
        assert run("comprehend", str(theory_file), "--prop", "(not (in y y))", "--vars", "y") == (
            EXIT_FAILURE, "unstratifiable\n")

    def test_variable_coverage(self, theory_file):
        assert run("comprehend", str(theory_file), "--prop", "(in y x)", "--vars", "y")[0] == EXIT_INPUT_ERROR


def test_selftest_subset():
    code, out = run("selftest", "--only", "golden", "congruence", "--scale", "0.05")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "2/2 criteria passed"
