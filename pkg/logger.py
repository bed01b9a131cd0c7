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

import contextlib
import sys
import time
from datetime import datetime


class Log:
    """Implements a log entry"""

    def __init__(self, name, text, depth=0, every=1, mean=1):
        """
        :param str name:
            log identification name, used as key by Logger timers and counters
        :param str text:
            log text
        :param int depth:
            logs are printed only if this value is not greater than the log_depth of the Logger
        :param int every:
            how many logs with the given name must be received before printing one
        :param int mean:
            how many timings of the given name are averaged before printing, see Logger.start_log_timer()
        """
        self.name = name
        self.text = text
        self.depth = depth
        self.every = every
        self.mean = mean


class Logger:
    """Logger with depth filtering, timers and logging every X times.

    Targets:
        "terminal"
            writes on stderr, so that stdout only carries command results
        "file"
            appends to the file at filepath
    """

    def __init__(self, log_depth=0, log_targets=("terminal",), filepath=None):
        """
        :param int log_depth:
            maximum depth that a log can have to be printed
        :param list[str] log_targets:
            media on which the logs will be printed
        :param str filepath:
            log file path, required when log_targets contains "file"
        """
        self.depth = log_depth
        self.targets = tuple(log_targets)
        self.timers = {}
        self.every = {}
        self.means = {}
        self.elapsed = {}
        self.log_file = None
        if "file" in self.targets:
            if filepath is None:
                raise ValueError('a filepath is required by the "file" log target')
            self.log_file = open(filepath, "a+")
            self._write(self.log_file, "[ Started session at {} ]".format(datetime.now().isoformat()))

    @classmethod
    def from_config(cls, config):
        """Logger configured by the log_depth and log_filepath of a RunConfig"""
        targets = ["terminal"]
        if config.log_filepath:
            targets.append("file")
        return cls(config.log_depth, targets, config.log_filepath)

    def close(self):
        if self.log_file is not None:
            self.log_file.close()
            self.log_file = None

    def log(self, logs, condition=True):
        """Prints the given logs whose depth is not greater than log_depth, if condition is truthy

        :param list[Log] logs:
            logs to print
        """
        if not condition:
            return
        for log in logs:
            if log.depth > self.depth:
                continue
            if log.every > 1:
                count = self.every.get(log.name, 0) + 1
                if count < log.every:
                    self.every[log.name] = count
                    continue
                self.every[log.name] = 0
            self._print(log.text)

    def start_log_timer(self, logs, condition=True):
        """Starts a timer for each given log. With log.mean > 1 the timings are averaged over that many runs."""
        if not condition:
            return
        for log in logs:
            if log.mean > 1 and log.name not in self.means:
                self.means[log.name] = [0, 0]
            self.timers[log.name] = time.perf_counter()

    def stop_log_timer(self, logs, condition=True):
        """Stops the timers of the given logs and prints the elapsed time, or the mean once log.mean runs are done.

        The last elapsed time of each log name is kept in self.elapsed, in seconds, whatever the log depth.
        """
        if not condition:
            return
        for log in logs:
            if log.name not in self.timers:
                continue
            elapsed = time.perf_counter() - self.timers.pop(log.name)
            self.elapsed[log.name] = elapsed
            if log.depth > self.depth:
                continue
            if log.mean > 1 and log.name in self.means:
                self.means[log.name][0] += elapsed
                self.means[log.name][1] += 1
                if self.means[log.name][1] >= log.mean:
                    mean = self.means.pop(log.name)[0] / log.mean
                    self._print("{} runs of [{}] took a mean of {} ms".format(log.mean, log.text, int(mean * 1000)))
            else:
                self._print("[{}] : {} ms".format(log.text, int(elapsed * 1000)))

    @contextlib.contextmanager
    def timed(self, log):
        self.start_log_timer([log])
        try:
            yield
        finally:
            self.stop_log_timer([log])

    @staticmethod
    def _write(stream, string):
        print("[{}] {}".format(datetime.now().isoformat(), string), file=stream, flush=True)

    def _print(self, string):
        for target in self.targets:
            if target == "terminal":
                self._write(sys.stderr, string)
            elif target == "file" and self.log_file is not None:
                self._write(self.log_file, string)
