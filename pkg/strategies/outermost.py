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

from syntax import Atom, Fun
from .base import RewriteStrategy


__all__ = ["LeftmostOutermost_Strategy"]


class LeftmostOutermost_Strategy(RewriteStrategy):
    """Contracts the leftmost redex not contained in another redex"""

    def step_term(self, t, system):
        if not isinstance(t, Fun):
            return None
        reduct = self.rewrite_term_root(t, system)
        if reduct is not None:
            return reduct
        args = self.step_args(t.args, system)
        return None if args is None else Fun(t.symbol, args)

    def step_atom(self, a, system):
        reduct = self.rewrite_atom_root(a, system)
        if reduct is not None:
            return reduct
        args = self.step_args(a.args, system)
        return None if args is None else Atom(a.predicate, args)
