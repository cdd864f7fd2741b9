# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Graded decomposition numbers of q-Schur algebras at roots of unity.

Exact arithmetic throughout: Laurent polynomials over Z for graded data and the
cyclotomic field Q(z) for Hecke algebra matrices.
"""

__version__ = "0.1.0"
