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

import collections


class AcceptanceEvaluator:
    """Keeps track of the acceptance suite: for each criterion, how many cases were tried, how many passed and how
    long it took.

    Usage mirrors a run loop: on_run_begin() before a criterion, on_case() for each of its cases, on_run_end() after.
    """

    def __init__(self, failures_kept=5):
        """
        :param int failures_kept:
            how many failure descriptions are kept per criterion
        """
        self.failures_kept = failures_kept
        self.runs = collections.OrderedDict()  # type: OrderedDict[str, CriterionRun]
        self.current_run = None  # type: CriterionRun

    def reset(self):
        self.runs.clear()
        self.current_run = None

    def on_run_begin(self, name, description=""):
        """Records the beginning of a criterion"""
        if name in self.runs:
            raise ValueError('criterion "%s" was already evaluated' % name)
        self.current_run = CriterionRun(name, description)

    def on_case(self, passed, detail=None):
        """Records the outcome of one case of the current criterion

        :param bool passed:
            whether the case passed
        :param str detail:
            description of the failure, kept only for the first failures
        :rtype: bool
        :return:
            passed, so that it can be used inline
        """
        run = self.current_run
        run.cases += 1
        if passed:
            run.passed += 1
        elif len(run.failures) < self.failures_kept:
            run.failures.append(detail or "case %s failed" % run.cases)
        return bool(passed)

    def on_error(self, error):
        """Records an unexpected exception as a failed case"""
        return self.on_case(False, "%s: %s" % (type(error).__name__, error))

    def on_run_end(self, elapsed=None):
        """Records the end of the current criterion

        :param float elapsed:
            seconds taken by the criterion, if measured
        """
        self.current_run.elapsed = elapsed
        self.runs[self.current_run.name] = self.current_run
        self.current_run = None

    @property
    def ok(self):
        return all(run.ok for run in self.runs.values())

    def statistics(self):
        """
        :return:
            dict of statistics:
            {
             "criteria": int,          # number of evaluated criteria
             "criteria_passed": int,   # criteria whose cases all passed
             "cases": int,             # total number of cases
             "pass_perc": float,       # fraction of passed cases over all criteria
             "elapsed": float          # seconds, over the criteria that were timed
            }
        """
        result = {"criteria": len(self.runs), "criteria_passed": 0, "cases": 0, "pass_perc": 0, "elapsed": 0.0}
        passed = 0
        for run in self.runs.values():
            result["cases"] += run.cases
            passed += run.passed
            if run.ok:
                result["criteria_passed"] += 1
            if run.elapsed is not None:
                result["elapsed"] += run.elapsed
        if result["cases"] > 0:
            result["pass_perc"] = passed / result["cases"]
        return result


class CriterionRun:
    """Outcome of one acceptance criterion"""

    def __init__(self, name, description=""):
        self.name = name
        self.description = description
        self.cases = 0
        self.passed = 0
        self.failures = []
        self.elapsed = None

    @property
    def pass_perc(self):
        return self.passed / self.cases if self.cases else 0

    @property
    def ok(self):
        return self.cases > 0 and self.passed == self.cases
