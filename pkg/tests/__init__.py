# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Test suite for graded decomposition numbers of q-Schur algebras.
"""
