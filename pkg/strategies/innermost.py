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


__all__ = ["LeftmostInnermost_Strategy"]


class LeftmostInnermost_Strategy(RewriteStrategy):
    """Contracts the leftmost redex that contains no other redex"""

    def step_term(self, t, system):
        if not isinstance(t, Fun):
            return None
        args = self.step_args(t.args, system)
        if args is not None:
            return Fun(t.symbol, args)
        return self.rewrite_term_root(t, system)

    def step_atom(self, a, system):
        args = self.step_args(a.args, system)
        if args is not None:
            return Atom(a.predicate, args)
        return self.rewrite_atom_root(a, system)
