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

import os

from dotenv import load_dotenv

OUTPUT_FORMATS = ("text", "sexp")

ENV_PREFIX = "MODULOBOX_"


def _env_bool(value):
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off", ""):
        return False
    raise ValueError("invalid boolean value %r" % value)


class RunConfig:
    """Options shared by every command"""

    # environment variable suffix -> (option name, parser)
    env_variables = {
        "FUEL": ("fuel", int),
        "CLASSICAL": ("classical", _env_bool),
        "OUTPUT": ("output", str),
        "HISTORY_WINDOW": ("history_window", int),
        "SEED": ("seed", int),
    }

    def __init__(self, fuel=10000, classical=False, output="text", history_window=64, seed=1999, search_limit=64,
                 strategy="LeftmostInnermost_Strategy", log_depth=0, log_filepath=None):
        """
        :param int fuel:
            rewrite steps allowed to each normalization or congruence test, and reduction steps allowed to the proof
            normalizer
        :param bool classical:
            whether the excluded middle rule is available to the checker
        :param str output:
            "text" for human-readable output, "sexp" for s-expressions
        :param int history_window:
            number of recent proof terms remembered by the loop detector of the proof normalizer
        :param int seed:
            seed of every randomized sample of the acceptance suite
        :param int search_limit:
            maximum number of cut formulas tried for an elimination whose major premise cannot be inferred
        :param str strategy:
            name of the rewrite strategy class, see the strategies module
        :param int log_depth:
            maximum log depth, see Logger
        :param str log_filepath:
            if not None, logs are also appended to this file
        """
        self.fuel = fuel
        self.classical = classical
        self.output = output
        self.history_window = history_window
        self.seed = seed
        self.search_limit = search_limit
        self.strategy = strategy
        self.log_depth = log_depth
        self.log_filepath = log_filepath
        self.validate()

    def validate(self):
        """Raises ValueError if some option is out of range"""
        if not isinstance(self.fuel, int) or self.fuel < 1:
            raise ValueError("fuel must be at least 1, got %r" % self.fuel)
        if not isinstance(self.history_window, int) or self.history_window < 1:
            raise ValueError("history_window must be at least 1, got %r" % self.history_window)
        if not isinstance(self.search_limit, int) or self.search_limit < 1:
            raise ValueError("search_limit must be at least 1, got %r" % self.search_limit)
        if self.output not in OUTPUT_FORMATS:
            raise ValueError("output must be one of %s, got %r" % (", ".join(OUTPUT_FORMATS), self.output))

    @classmethod
    def from_env(cls, dotenv_path=None, **overrides):
        """Builds a config whose defaults come from MODULOBOX_* environment variables, a .env file included.

        Keyword arguments that are not None take precedence over the environment.
        """
        load_dotenv(dotenv_path)
        kwargs = {}
        for suffix, (name, parse) in cls.env_variables.items():
            value = os.environ.get(ENV_PREFIX + suffix)
            if value is not None:
                try:
                    kwargs[name] = parse(value)
                except ValueError:
                    raise ValueError("invalid value %r for %s%s" % (value, ENV_PREFIX, suffix))
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)

    def __repr__(self):
        return "RunConfig(%s)" % ", ".join("%s=%r" % item for item in vars(self).items())
