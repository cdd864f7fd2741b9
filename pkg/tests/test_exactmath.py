# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Tests for exact Laurent polynomial and cyclotomic arithmetic.
"""

from fractions import Fraction

import pytest

from graded_decomp.errors import DivisionError, SingularError, SpectrumError
from graded_decomp.exactmath import (
    CycloMatrix,
    CycloNum,
    EchelonBasis,
    LaurentPoly,
    bar_involute,
    cyclo_arith,
    cyclotomic_field,
    cyclotomic_polynomial,
    eigen_spectrum,
    generalized_eigenprojection,
    laurent_arith,
    left_nullspace,
    matrix_inverse,
    matrix_rank,
    matrix_rank_nullspace,
    nilpotent_inverse,
    quantum_factorial,
    quantum_integer,
)

v = LaurentPoly.v()


class TestLaurentPoly:
    """Test Laurent polynomial arithmetic and formatting"""

    def test_string_form(self):
        """Terms print by descending exponent"""
        assert str(v**2 + 1 + v ** -2) == "v^2+1+v^-2"
        assert str(LaurentPoly({3: 2, -1: -1})) == "2v^3-v^-1"
        assert str(LaurentPoly()) == "0"
        assert str(v) == "v"

    def test_parse_reads_string_form(self):
        """parse undoes str on a few typical values"""
        for text in ["v^2+1+v^-2", "2v^3-v^-1", "v", "-1", "3v^-4"]:
            assert str(LaurentPoly.parse(text)) == text
        assert LaurentPoly.parse("0").is_zero()

    def test_parse_rejects_garbage(self):
        """Unparseable text raises ValueError"""
        with pytest.raises(ValueError):
            LaurentPoly.parse("v^")
        with pytest.raises(ValueError):
            LaurentPoly.parse("x+1")

    def test_ring_operations(self):
        """Addition, multiplication and integer coercion"""
        a = v + 1
        assert a * a == v**2 + 2 * v + 1
        assert (a - a).is_zero()
        assert 2 - a == 1 - v
        assert a == LaurentPoly({1: 1, 0: 1})
        assert LaurentPoly.one() == 1

    def test_negative_powers(self):
        """Only unit monomials have inverses"""
        assert v**-3 == LaurentPoly.monomial(-3)
        assert (-v) ** -1 == LaurentPoly.monomial(-1, -1)
        with pytest.raises(ValueError):
            (v + 1) ** -1
        with pytest.raises(ValueError):
            LaurentPoly.monomial(1, 2) ** -1

    def test_bar_and_shift(self):
        """Bar swaps v and v^-1; shift multiplies by a power of v"""
        a = 2 * v**3 - v ** -1
        assert a.bar() == 2 * v**-3 - v
        assert a.bar().bar() == a
        assert bar_involute(quantum_integer(3)) == quantum_integer(3)
        assert bar_involute(v) == v**-1
        assert a.shift(2) == 2 * v**5 - v
        assert (v + v**-1).is_bar_symmetric()
        assert not v.is_bar_symmetric()

    def test_evaluate(self):
        """Evaluation at v = 1 and at rationals"""
        assert (v + 1 + v**-1).evaluate(1) == 3
        assert (v**-1).evaluate(2) == Fraction(1, 2)

    def test_positive_part(self):
        """vZ[v] membership"""
        assert (v + 2 * v**3).in_positive_part()
        assert not (v + 1).in_positive_part()
        assert LaurentPoly().in_positive_part()

    def test_pairs(self):
        """JSON pairs are sorted by descending exponent"""
        a = v**-1 + 3 * v**2
        assert a.to_pairs() == [[2, 3], [-1, 1]]
        assert LaurentPoly.from_pairs(a.to_pairs()) == a

    def test_divide_exact(self):
        """Exact division and its failure"""
        assert (v**2 - v**-2).divide_exact(v - v**-1) == v + v**-1
        assert quantum_factorial(3).divide_exact(quantum_integer(3)) == quantum_factorial(2)
        with pytest.raises(DivisionError):
            (v + 2).divide_exact(v + 1)
        with pytest.raises(ZeroDivisionError):
            v.divide_exact(LaurentPoly())

    def test_quantum_integers(self):
        """[k] is balanced and [-k] = -[k]"""
        assert quantum_integer(0).is_zero()
        assert quantum_integer(1) == 1
        assert quantum_integer(3) == v**2 + 1 + v**-2
        assert quantum_integer(-2) == -(v + v**-1)
        assert quantum_factorial(2) == v + v**-1

    def test_dispatch(self):
        """laurent_arith names the ring operations"""
        assert laurent_arith(v, v, "mul") == v**2
        assert laurent_arith(v, v, "sub").is_zero()
        with pytest.raises(ValueError):
            laurent_arith(v, v, "pow")


class TestCyclotomicPolynomial:
    """Test cyclotomic polynomials against known values"""

    def test_small_values(self):
        """Known polynomials, constant term first"""
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(2) == (1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)

    @pytest.mark.parametrize("e", [3, 4, 5, 6, 8, 9, 12])
    def test_against_sympy(self, e):
        """Coefficients agree with sympy"""
        sympy = pytest.importorskip("sympy")
        x = sympy.Symbol("x")
        expected = tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(e, x), x).all_coeffs()))
        assert cyclotomic_polynomial(e) == expected


class TestCycloNum:
    """Test arithmetic in Q(z)"""

    def test_root_of_unity(self, field4):
        """z has order exactly 4 and z^2 = -1"""
        q = field4.q
        assert q**2 == -1
        assert q**4 == 1
        assert q != 1
        assert field4.q_power(-1) == q**3
        assert field4.q_power(5) == q

    def test_sum_of_roots_vanishes(self):
        """1 + z + ... + z^(e-1) = 0 for e = 5"""
        field = cyclotomic_field(5)
        total = field.zero
        for i in range(5):
            total = total + field.q_power(i)
        assert total.is_zero()

    def test_inverse(self, field4):
        """x * x^-1 = 1 and division by zero raises"""
        x = field4.q + 2
        assert x * x.inverse() == 1
        assert (3 / x) * x == 3
        with pytest.raises(ZeroDivisionError):
            field4.zero.inverse()

    def test_mixing_fields_fails(self, field4):
        """Elements of different fields do not combine"""
        with pytest.raises(ValueError):
            field4.q + cyclotomic_field(5).q

    def test_string_form(self, field4):
        """Integer polynomial over a common denominator"""
        q = field4.q
        assert str(q) == "z"
        assert str(-field4.one) == "-1"
        assert str((2 * q + 1) / 3) == "(2z+1)/3"
        assert str(q / 2) == "z/2"
        assert str(field4.zero) == "0"

    def test_parse(self, field4):
        """parse reads back what str prints"""
        q = field4.q
        for x in [q, -field4.one, (2 * q + 1) / 3, q / 2, field4.zero, 1 - q]:
            assert CycloNum.parse(field4, str(x)) == x
        with pytest.raises(ValueError):
            CycloNum.parse(field4, "y+1")

    def test_dispatch(self, field4):
        """cyclo_arith names the field operations"""
        q = field4.q
        assert cyclo_arith(q, q, "mul") == -1
        assert cyclo_arith(q, q, "div") == 1
        with pytest.raises(ValueError):
            cyclo_arith(q, q, "mod")


class TestCycloMatrix:
    """Test exact linear algebra over Q(z)"""

    def test_products_and_identity(self, matrix_of):
        """Matrix product, identity and powers"""
        a = matrix_of([[1, 2], [3, 4]])
        identity = CycloMatrix.identity(a.field, 2)
        assert a * identity == a
        assert (a * a) == matrix_of([[7, 10], [15, 22]])
        assert a.power(0).is_identity()
        assert a.transpose() == matrix_of([[1, 3], [2, 4]])
        assert a.trace() == 5

    def test_row_action(self, matrix_of):
        """Row vectors are acted on from the right"""
        a = matrix_of([[1, 2], [3, 4]])
        one, zero = a.field.one, a.field.zero
        assert a.apply_to_row([one, zero]) == [1, 2]
        assert a.apply_to_row([zero, one]) == [3, 4]

    def test_rank_against_sympy(self, matrix_of):
        """Rank of an integer matrix agrees with sympy"""
        sympy = pytest.importorskip("sympy")
        rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1], [1, 3, 3, 5]]
        assert matrix_rank(matrix_of(rows)) == sympy.Matrix(rows).rank()

    def test_nullspaces(self, matrix_of):
        """Right and left nullspace vectors are annihilated"""
        m = matrix_of([[1, 1, 0], [0, 0, 1], [1, 1, 1]])
        rank, basis = matrix_rank_nullspace(m)
        assert rank == 2
        assert len(basis) == 1
        column = CycloMatrix(m.field, [[x] for x in basis[0]])
        assert (m * column).is_zero()
        left = left_nullspace(m)
        assert len(left) == 1
        assert all(x.is_zero() for x in m.apply_to_row(left[0]))

    def test_inverse(self, field4):
        """Inverse over Q(z) and singularity"""
        q = field4.q
        m = CycloMatrix(field4, [[q, 1], [0, q + 1]])
        assert (m * matrix_inverse(m)).is_identity()
        with pytest.raises(SingularError):
            matrix_inverse(CycloMatrix(field4, [[1, 2], [2, 4]]))

    def test_nilpotent_inverse(self, field4):
        """Scalar plus nilpotent uses the series and agrees with elimination"""
        q = field4.q
        m = CycloMatrix(field4, [[q, 1, 0], [0, q, 1], [0, 0, q]])
        assert nilpotent_inverse(m) == matrix_inverse(m)
        general = CycloMatrix(field4, [[1, 2], [3, 4]])
        assert (nilpotent_inverse(general) * general).is_identity()

    def test_spectrum(self, field4):
        """Eigenvalues are reported as powers of z"""
        q = field4.q
        m = CycloMatrix(field4, [[q, 1], [0, -1]])
        assert eigen_spectrum(m) == [1, 2]
        with pytest.raises(SpectrumError):
            eigen_spectrum(CycloMatrix(field4, [[2]]))

    def test_eigenprojections(self, field4):
        """Projections are complementary idempotents commuting with m"""
        q = field4.q
        m = CycloMatrix(field4, [[q, 1, 0], [0, q, 1], [0, 0, -1]])
        first = generalized_eigenprojection(m, q)
        second = generalized_eigenprojection(m, field4.q_power(2))
        assert (first + second).is_identity()
        assert first * first == first
        assert (first * second).is_zero()
        assert first.commutes_with(m)
        assert matrix_rank(first) == 2
        assert generalized_eigenprojection(m, field4.one).is_zero()

    def test_single_eigenvalue_projection(self, field4):
        """A matrix with one eigenvalue projects to the identity"""
        m = CycloMatrix(field4, [[1, 1], [0, 1]])
        assert generalized_eigenprojection(m, field4.one).is_identity()


class TestEchelonBasis:
    """Test incremental echelon insertion with labels"""

    def test_insert_and_express(self, field4):
        """Labeled coordinates are returned modulo the unlabeled span"""
        one, zero = field4.one, field4.zero
        basis = EchelonBasis(field4, 3)
        assert basis.insert([zero, zero, one])
        assert basis.insert([one, one, zero], label="a")
        assert basis.insert([zero, one, one], label="b")
        assert basis.rank == 3
        assert not basis.insert([one, one, one])
        coordinates = basis.express([one, 2 * one, 5 * one])
        assert coordinates == {"a": one, "b": one}

    def test_outside_span(self, field4):
        """Vectors outside the span are rejected"""
        one, zero = field4.one, field4.zero
        basis = EchelonBasis(field4, 3)
        basis.insert([one, zero, zero], label=0)
        assert basis.express([zero, one, zero]) is None
        assert not basis.contains([zero, one, zero])
        assert basis.contains([3 * one, zero, zero])
        with pytest.raises(ValueError):
            basis.insert([one])
