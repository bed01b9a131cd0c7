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

"""Stratification of propositions of the language {in}.

A stratification maps every variable (bound or free) to a natural number so that for every atom x in y the level
of y is the level of x plus one. Binders are renamed apart first, so each variable gets its own level even under
shadowing; the same renaming is used by the verifier, hence level maps produced here always verify.
"""

import itertools
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from exceptions import MissingLevelError, NotInMembershipLanguage
from syntax import Atom, BINDERS, CONNECTIVES, MEMBERSHIP, Var, all_vars, atoms, free_vars, rename_apart


@dataclass(frozen=True)
class Stratification:
    """Level of every variable, in order of first occurrence.

    The canonical form produced by stratify() has minimum level 0 in every group of linked variables.
    """
    levels: object

    def __post_init__(self):
        object.__setattr__(self, "levels", MappingProxyType(dict(self.levels)))

    def __getitem__(self, name):
        return self.levels[name]

    def __eq__(self, other):
        return isinstance(other, Stratification) and dict(self.levels) == dict(other.levels)

    def __hash__(self):
        return hash(tuple(sorted(self.levels.items())))

    def shifted(self, c):
        return Stratification({name: level + c for name, level in self.levels.items()})


@dataclass(frozen=True)
class Unstratifiable:
    """Negative verdict, with the atom that closed an inconsistent cycle"""
    witness: object = None

    def __bool__(self):
        return False


class OffsetUnionFind:
    """Union-find where every element stores its offset from its parent, so that each class carries integer
    differences between its members (value(y) - value(x) is known whenever x and y are in the same class)."""

    def __init__(self):
        self.parent = {}
        self.offset = {}
        self.rank = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.offset[x] = 0
            self.rank[x] = 0

    def find(self, x):
        """Returns (root, value(x) - value(root)), compressing the path"""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # walk back from the node closest to the root, accumulating offsets
        total = 0
        for node in reversed(path):
            total += self.offset[node]
            self.offset[node] = total
            self.parent[node] = root
        return root, (self.offset[path[0]] if path else 0)

    def union(self, x, y, delta):
        """Records value(y) - value(x) = delta, returns False if it contradicts what is already known"""
        self.add(x)
        self.add(y)
        rx, ox = self.find(x)
        ry, oy = self.find(y)
        if rx == ry:
            return oy - ox == delta
        # value(ry) - value(rx) = ox + delta - oy
        diff = ox + delta - oy
        if self.rank[rx] < self.rank[ry]:
            self.parent[rx] = ry
            self.offset[rx] = -diff
        else:
            self.parent[ry] = rx
            self.offset[ry] = diff
            if self.rank[rx] == self.rank[ry]:
                self.rank[rx] += 1
        return True


def check_membership_language(a):
    """Raises NotInMembershipLanguage unless every atom of a is x in y with variables x and y"""
    for atom in atoms(a):
        if atom.predicate != MEMBERSHIP or len(atom.args) != 2:
            raise NotInMembershipLanguage('atom "%s" is not a membership atom' % atom.predicate)
        if not all(isinstance(t, Var) for t in atom.args):
            raise NotInMembershipLanguage("membership atoms must have variable arguments")


def variables_in_order(a):
    """Free variables and binder names of a, in order of first occurrence"""
    seen = {}

    def visit(p):
        if isinstance(p, Atom):
            for t in p.args:
                if isinstance(t, Var):
                    seen.setdefault(t.name, None)
        elif isinstance(p, CONNECTIVES):
            visit(p.left)
            visit(p.right)
        elif isinstance(p, BINDERS):
            seen.setdefault(p.var, None)
            visit(p.body)

    visit(a)
    return list(seen)


def stratify(a):
    """Decides whether a is stratifiable.

    :param a:
        proposition of the language {in} with variable arguments
    :return:
        a canonical Stratification of the renamed-apart proposition, or Unstratifiable
    :raises NotInMembershipLanguage:
        when a mentions another predicate or a non-variable argument
    """
    check_membership_language(a)
    renamed = rename_apart(a)
    uf = OffsetUnionFind()
    names = variables_in_order(renamed)
    for name in names:
        uf.add(name)
    for atom in atoms(renamed):
        x, y = atom.args
        if not uf.union(x.name, y.name, 1):
            return Unstratifiable(atom)

    raw = {}
    lowest = {}
    for name in names:
        root, offset = uf.find(name)
        raw[name] = (root, offset)
        lowest[root] = min(lowest.get(root, offset), offset)
    return Stratification({name: offset - lowest[root] for name, (root, offset) in raw.items()})


def verify_stratification(a, stratification):
    """Returns whether every atom u in w of a satisfies level(w) = level(u) + 1

    :param Stratification | dict[str, int] stratification:
        levels of the variables of the renamed-apart proposition
    :raises MissingLevelError:
        when a variable of a has no level
    """
    check_membership_language(a)
    levels = stratification.levels if isinstance(stratification, Stratification) else stratification
    renamed = rename_apart(a)
    for name in all_vars(renamed):
        if name not in levels:
            raise MissingLevelError(name)
    return all(levels[atom.args[1].name] == levels[atom.args[0].name] + 1 for atom in atoms(renamed))


def brute_force_stratifiable(a, max_level=5):
    """Exhaustive oracle: tries every level map with levels in 0..max_level.

    Every map is a row of one integer matrix and each atom constraint is checked on whole columns at once.
    """
    check_membership_language(a)
    renamed = rename_apart(a)
    constrained = []
    for atom in atoms(renamed):
        for t in atom.args:
            if t.name not in constrained:
                constrained.append(t.name)
    if not constrained:
        return True
    index = {name: i for i, name in enumerate(constrained)}
    grid = np.array(list(itertools.product(range(max_level + 1), repeat=len(constrained))), dtype=np.int16)
    ok = np.ones(len(grid), dtype=bool)
    for atom in atoms(renamed):
        x, y = atom.args
        ok &= grid[:, index[y.name]] == grid[:, index[x.name]] + 1
        if not ok.any():
            return False
    return bool(ok.any())
