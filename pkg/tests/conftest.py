# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Test fixtures and configuration for pytest test suite.

This configuration ensures tests are isolated and don't depend on the current working directory.
"""

import os
import sys
import tempfile
from pathlib import Path
from typing import List, Sequence

import pytest

# Ensure the project root is in the Python path for imports
PROJECT_ROOT = Path(__file__).parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

# Change to project root directory to ensure consistent test behavior
# regardless of where pytest is invoked from
os.chdir(PROJECT_ROOT)

TEST_FILES = PROJECT_ROOT / "tests" / "test_files"


@pytest.fixture(scope="session", autouse=True)
def isolate_test_environment():
    """
    Session-scoped fixture to ensure test isolation.
    This ensures consistent behavior regardless of working directory.
    """
    original_cwd = Path.cwd()
    original_path = sys.path.copy()

    os.chdir(PROJECT_ROOT)
    if str(PROJECT_ROOT) not in sys.path:
        sys.path.insert(0, str(PROJECT_ROOT))

    yield PROJECT_ROOT

    if not os.environ.get("PYTEST_CURRENT_TEST"):
        os.chdir(original_cwd)
        sys.path[:] = original_path


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path

    import shutil

    if temp_path.exists():
        shutil.rmtree(temp_path)


@pytest.fixture
def golden():
    """Read a golden fixture from tests/test_files."""

    def read(name: str) -> str:
        return (TEST_FILES / name).read_text(encoding="utf-8")

    return read


@pytest.fixture
def field4():
    """Q(z) with z a primitive 4th root of unity."""
    from graded_decomp.exactmath import cyclotomic_field

    return cyclotomic_field(4)


@pytest.fixture
def matrix_of():
    """Build a CycloMatrix over Q(z_e) from nested integer lists."""
    from graded_decomp.exactmath import CycloMatrix, cyclotomic_field

    def build(rows: Sequence[Sequence[int]], e: int = 4):
        return CycloMatrix(cyclotomic_field(e), rows)

    return build


@pytest.fixture
def p():
    """Shorthand partition constructor: p(3, 1)."""
    from graded_decomp.combinatorics import Partition

    def build(*parts: int):
        return Partition.of(*parts)

    return build


def integer_rows(matrix) -> List[List[int]]:
    """Entries of a CycloMatrix that must all be integers, as plain ints."""
    rows = []
    for row in matrix.entries:
        values = []
        for x in row:
            assert all(c == 0 for c in x.coeffs[1:]), f"{x} is not rational"
            constant = x.coeffs[0] if x.coeffs else 0
            assert constant.denominator == 1, f"{x} is not an integer"
            values.append(int(constant))
        rows.append(values)
    return rows
