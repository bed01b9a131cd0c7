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

from abc import ABC, abstractmethod

from syntax import Atom, BINDERS, CONNECTIVES
from rewrite import rewrite_atom_root, rewrite_term_root


__all__ = ["RewriteStrategy"]


# ABSTRACT CLASSES

class RewriteStrategy(ABC):
    """Base class for reduction strategies.

    Concrete classes choose which redex is contracted next by implementing .step_term() and .step_prop(); the
    normalization loops and the fuel accounting are shared.
    """

    def normalize_term(self, t, system, fuel):
        """Rewrites term t until no redex remains

        :param RewriteSystem system:
            rules to apply
        :param rewrite.Fuel fuel:
            step budget, a FuelExhausted is raised when it runs out
        """
        while True:
            reduct = self.step_term(t, system)
            if reduct is None:
                return t
            fuel.consume(t)
            t = reduct

    def normalize(self, a, system, fuel):
        """Rewrites proposition a until no redex remains"""
        while True:
            reduct = self.step_prop(a, system)
            if reduct is None:
                return a
            fuel.consume(a)
            a = reduct

    @abstractmethod
    def step_term(self, t, system):
        """The implementing class MUST return the one-step reduct of t chosen by the strategy, or None if t is
        normal"""
        return None

    @abstractmethod
    def step_atom(self, a, system):
        """Same as .step_term(), for an atomic proposition (rules may fire at the root or inside the arguments)"""
        return None

    def step_prop(self, a, system):
        """Leftmost reduct of a: atoms are delegated to .step_atom(), connectives are searched left to right"""
        if isinstance(a, Atom):
            return self.step_atom(a, system)
        if isinstance(a, CONNECTIVES):
            left = self.step_prop(a.left, system)
            if left is not None:
                return type(a)(left, a.right)
            right = self.step_prop(a.right, system)
            if right is not None:
                return type(a)(a.left, right)
            return None
        if isinstance(a, BINDERS):
            body = self.step_prop(a.body, system)
            return None if body is None else type(a)(a.var, body)
        return None

    def step_args(self, args, system):
        """Returns args with the leftmost reducible argument reduced once, or None"""
        for i, arg in enumerate(args):
            reduct = self.step_term(arg, system)
            if reduct is not None:
                return args[:i] + (reduct,) + args[i + 1:]
        return None

    @staticmethod
    def rewrite_term_root(t, system):
        return rewrite_term_root(t, system)

    @staticmethod
    def rewrite_atom_root(a, system):
        return rewrite_atom_root(a, system)
