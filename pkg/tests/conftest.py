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
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from sf import builtin_theories  # noqa: E402


@pytest.fixture
def theories():
    return builtin_theories()


@pytest.fixture
def arithmetic(theories):
    return theories["arithmetic"]


@pytest.fixture
def crabbe(theories):
    return theories["crabbe"]


@pytest.fixture
def integral(theories):
    return theories["integral-domain"]


@pytest.fixture
def sf_theory(theories):
    return theories["sf-empty"].copy(name="sf")
