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

class KernelError(Exception):
    """Base class of every error raised by the kernel"""
    pass


class KernelSyntaxError(KernelError):
    """Raised when a text does not conform to the s-expression grammar"""

    def __init__(self, message, line=None, column=None):
        """
        :param str message:
            description of the problem
        :param int line:
            1-based line of the offending token, if known
        :param int column:
            1-based column of the offending token, if known
        """
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %s, column %s)" % (message, line, column)
        super().__init__(message)


class SignatureError(KernelError):
    """Raised when a symbol is unknown or declared twice"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %s, column %s)" % (message, line, column)
        super().__init__(message)


class ArityError(SignatureError):
    """Raised when a symbol is applied to the wrong number of arguments"""
    pass


class RuleError(KernelError):
    """Raised when a rewrite rule or rewrite system is malformed"""
    pass


class NotInMembershipLanguage(KernelError):
    """Raised when a proposition uses something else than atoms x in y over variables"""
    pass


class NotPureMembershipLanguage(NotInMembershipLanguage):
    """Raised when a comprehension body mentions function symbols"""
    pass


class MissingLevelError(KernelError):
    """Raised when a stratification lacks a variable of the proposition"""

    def __init__(self, variable):
        self.variable = variable
        super().__init__('no level assigned to variable "%s"' % variable)


class NotStratifiable(KernelError):
    """Raised when comprehension is requested over an unstratifiable body"""
    pass


class VariableCoverage(KernelError):
    """Raised when the comprehension variables do not cover the free variables of the body"""
    pass


class FuelExhausted(KernelError):
    """Raised when a normalization runs out of rewrite steps"""

    def __init__(self, last, steps=None):
        """
        :param last:
            last proposition (or term) reached before the budget ran out
        :param int steps:
            number of steps performed
        """
        self.last = last
        self.steps = steps
        super().__init__("fuel exhausted after %s steps" % steps)


class CheckError(KernelError):
    """Raised when a proof term does not derive the expected proposition.

    The failing subterm and, when meaningful, the expected and found propositions (in head normal form) are kept
    so that reports can point at the source.
    """

    def __init__(self, message, term=None, expected=None, found=None):
        self.message = message
        self.term = term
        self.expected = expected
        self.found = found
        super().__init__(message)


class UnboundProofVariable(CheckError):
    pass


class HeadMismatch(CheckError):
    pass


class ScopeViolation(CheckError):
    pass


class ClassicalRuleDisabled(CheckError):
    pass


class NotInferable(CheckError):
    pass


class Mismatch(CheckError):
    pass


class ReductionLoopWarning(RuntimeWarning):
    """Warning given when proof normalization comes back to a term it has already seen"""
    pass
