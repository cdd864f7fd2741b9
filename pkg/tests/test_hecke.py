# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Tests for the Hecke algebra models: products, Specht matrices, Jucys-Murphy
elements, residue idempotents, the graded generators, the graded basis, Gram
forms and decomposition numbers from characters.
"""

from typing import Dict, List

import pytest
import yaml

from graded_decomp.combinatorics import Partition, partitions_of, standard_tableaux
from graded_decomp.errors import BoundExceeded, E2Unsupported, PreconditionViolation, ShapeMismatch
from graded_decomp.exactmath import CycloMatrix, LaurentPoly, cyclotomic_field, matrix_rank
from graded_decomp.fock import graded_decomposition_matrix
from graded_decomp.hecke import (
    HeckeElement,
    build_graded_specht,
    build_specht,
    check_klr_data,
    check_klr_relations,
    check_psi,
    decomposition_from_characters,
    gram_form,
    graded_character,
    homogeneity_failures,
    is_bar_symmetric_character,
    jm_matrices,
    klr_generators,
    klr_spans_image,
    murphy_m,
    permutation_module_idempotent_check,
    regular_representation,
    residue_idempotents,
    sigma_degree,
    simple_character,
    specht_matrices,
    t_mul,
    verify_grading,
    x_element,
)
from tests.conftest import TEST_FILES, integer_rows

v = LaurentPoly.v()
P = Partition.of


def seq(label: str):
    return tuple(int(c) for c in label)


class TestHeckeElement:
    """Test products in H_n"""

    def test_quadratic_relation(self, field4):
        """T_1^2 = q + (q - 1) T_1"""
        t1 = HeckeElement.generator(2, field4, 1)
        identity = HeckeElement.identity(2, field4)
        q = field4.q
        assert t1 * t1 == identity.scale(q) + t1.scale(q - 1)

    def test_t_mul(self, field4):
        """t_mul checks the field and the rank bound"""
        t1 = HeckeElement.generator(2, field4, 1)
        assert t_mul(t1, t1, e=4, n=2) == t1 * t1
        with pytest.raises(PreconditionViolation):
            t_mul(t1, t1, e=5)
        with pytest.raises(BoundExceeded):
            t_mul(t1, t1, n=7)

    def test_braid_relation(self, field4):
        """T_1 T_2 T_1 = T_2 T_1 T_2 = T_321"""
        t1 = HeckeElement.generator(3, field4, 1)
        t2 = HeckeElement.generator(3, field4, 2)
        assert t1 * t2 * t1 == t2 * t1 * t2
        assert t1 * t2 * t1 == HeckeElement.basis(3, field4, (3, 2, 1))

    def test_star(self, field4):
        """T_w* = T_{w^-1} and star reverses products"""
        w = HeckeElement.basis(3, field4, (2, 3, 1))
        assert w.star() == HeckeElement.basis(3, field4, (3, 1, 2))
        t1 = HeckeElement.generator(3, field4, 1)
        t2 = HeckeElement.generator(3, field4, 2)
        assert (t1 * t2).star() == t2 * t1

    def test_x_element(self, field4):
        """x_(2) = 1 + T_1 absorbs T_1 with eigenvalue q"""
        x = x_element(P(2), field4)
        assert x == HeckeElement.identity(2, field4) + HeckeElement.generator(2, field4, 1)
        assert x.times_generator(1) == x.scale(field4.q)

    @pytest.mark.parametrize("n", [2, 3])
    def test_psi_involution(self, n):
        """Psi is an involutive algebra map"""
        assert check_psi(n, 4, samples=5) == []

    def test_murphy_basis_element(self):
        """m_st of the canonical pair is x_lambda; shapes must agree"""
        lam = P(2, 1)
        canonical = standard_tableaux(lam)[0]
        assert murphy_m(canonical, canonical, 4) == x_element(lam, cyclotomic_field(4))
        with pytest.raises(ShapeMismatch):
            murphy_m(canonical, standard_tableaux(P(3))[0], 4)


class TestSpechtMatrices:
    """Test the T_k, X_a and e(i) matrices"""

    def test_one_dimensional_modules(self):
        """T_1 acts by q on S^(2) and by -1 on S^(1,1)"""
        field = cyclotomic_field(5)
        assert specht_matrices(P(2), 5).T[0] == CycloMatrix(field, [[field.q]])
        assert specht_matrices(P(1, 1), 5).T[0] == CycloMatrix(field, [[-1]])

    def test_dimensions(self):
        """dim S^lambda is the number of standard tableaux"""
        for lam in partitions_of(4):
            rep = specht_matrices(lam, 4)
            assert rep.dim == len(standard_tableaux(lam))
            assert rep.labels == [t.label() for t in standard_tableaux(lam)]

    def test_hecke_relations(self):
        """The T_k satisfy the quadratic and braid relations on S^(2,1,1)"""
        rep = specht_matrices(P(2, 1, 1), 4)
        q = rep.field.q
        identity = rep.identity()
        for T in rep.T:
            assert (T - identity.scale(q)) * (T + identity) == rep.zero()
        T1, T2, T3 = rep.T
        assert T1 * T2 * T1 == T2 * T1 * T2
        assert T2 * T3 * T2 == T3 * T2 * T3
        assert T1.commutes_with(T3)

    def test_bound(self):
        """n above the default bound is refused"""
        with pytest.raises(BoundExceeded):
            specht_matrices(P(7), 4)

    def test_jucys_murphy_eigenvalues(self):
        """X_2 acts by q on S^(2) and q^-1 on S^(1,1)"""
        field = cyclotomic_field(5)
        assert jm_matrices(specht_matrices(P(2), 5)).X[1] == CycloMatrix(field, [[field.q]])
        assert jm_matrices(specht_matrices(P(1, 1), 5)).X[1] == CycloMatrix(field, [[field.q_power(-1)]])

    def test_idempotents_match_tableaux(self):
        """e(i) has rank equal to the number of tableaux of residue i"""
        rep = residue_idempotents(jm_matrices(specht_matrices(P(3, 1), 4)))
        assert set(rep.idempotents) == {seq("0123"), seq("0132"), seq("0312")}
        assert all(matrix_rank(m) == 1 for m in rep.idempotents.values())

    @pytest.mark.parametrize(
        "shape, sequences",
        [
            ((3, 1), ["0123", "0132", "0312"]),
            ((2, 1, 1), ["0132", "0312", "0321"]),
        ],
    )
    def test_idempotents_on_graded_basis(self, shape, sequences):
        """On the basis v_t each e(i) is a diagonal unit matrix"""
        rep = build_graded_specht(P(*shape), 4)
        assert set(rep.idempotents) == {seq(s) for s in sequences}
        for position, label in enumerate(sequences):
            unit = [[int(r == c == position) for c in range(3)] for r in range(3)]
            assert integer_rows(rep.idempotents[seq(label)]) == unit

    def test_regular_representation(self):
        """The regular module of H_3 has six idempotent-sum pieces adding to 1"""
        rep = residue_idempotents(jm_matrices(regular_representation(3, 4)))
        total = rep.zero()
        for matrix in rep.idempotents.values():
            total = total + matrix
        assert total.is_identity()
        assert rep.dim == 6

    @pytest.mark.parametrize("e", [3, 4, 5])
    def test_permutation_module_idempotents(self, e):
        """e(0,1) and e(0,-1) on m_(2) and m_(1,1)"""
        assert permutation_module_idempotent_check(e) == []

    def test_permutation_module_needs_e3(self):
        """e = 2 has no separate residues 1 and -1"""
        with pytest.raises(E2Unsupported):
            permutation_module_idempotent_check(2)


class TestGradedGenerators:
    """Test t_a, sigma_k and their relations"""

    @pytest.mark.parametrize("e", [3, 4, 5])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_relations_on_specht_modules(self, n, e):
        """Every relation holds on every S^lambda"""
        for lam in partitions_of(n):
            report = check_klr_relations(build_specht(lam, e))
            assert report.passed, [f.to_json() for f in report.failures]
            assert report.checked > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("e", [3, 4, 5])
    def test_relations_size_five(self, e):
        """The relations at n = 5"""
        for lam in partitions_of(5):
            assert check_klr_relations(build_specht(lam, e)).passed

    def test_h2_degenerate(self):
        """At n = 2 sigma_1 vanishes on both Specht modules and the relations hold"""
        for lam in partitions_of(2):
            rep = build_specht(lam, 4)
            assert rep.sigma[0].is_zero()
            assert check_klr_relations(rep).passed

    def test_regular_module_relations(self):
        """The relations hold on the regular module of H_3 at e = 4"""
        rep = klr_generators(residue_idempotents(jm_matrices(regular_representation(3, 4))))
        assert check_klr_relations(rep).passed

    def test_t_vanishes_on_small_modules(self):
        """All t_a are zero on the Specht modules of H_4 at e = 4"""
        for lam in partitions_of(4):
            assert all(t.is_zero() for t in build_specht(lam, 4).t)

    def test_sigma_degree(self):
        """-2 on equal residues, 1 on neighbours, 0 otherwise"""
        assert sigma_degree(seq("0011"), 1, 4) == -2
        assert sigma_degree(seq("0132"), 1, 4) == 1
        assert sigma_degree(seq("0132"), 2, 4) == 0
        assert sigma_degree(seq("0312"), 3, 4) == 1

    def test_e2_unsupported(self):
        """The graded generators need e >= 3"""
        rep = residue_idempotents(jm_matrices(specht_matrices(P(2, 1), 2)))
        with pytest.raises(E2Unsupported):
            klr_generators(rep)
        with pytest.raises(E2Unsupported):
            decomposition_from_characters(3, 2)

    def test_spans_image(self):
        """t^a e(i) sigma_w span the image of H_4 on S^(3,1)"""
        assert klr_spans_image(build_specht(P(3, 1), 4))


class TestGradedBasis:
    """Test the basis v_t, its degrees and blocks"""

    def test_three_one(self):
        """S^(3,1) at e = 4"""
        rep = build_graded_specht(P(3, 1), 4)
        assert rep.labels == ["1234", "1243", "1342"]
        assert rep.degrees == [0, 1, 1]
        assert rep.blocks == [seq("0123"), seq("0132"), seq("0312")]
        assert integer_rows(rep.sigma[1]) == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
        assert integer_rows(rep.sigma[2]) == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        assert rep.sigma[0].is_zero()

    def test_two_one_one(self):
        """S^(2,1,1) at e = 4"""
        rep = build_graded_specht(P(2, 1, 1), 4)
        assert rep.labels == ["1234", "1324", "1423"]
        assert rep.degrees == [0, 0, 1]
        assert rep.blocks == [seq("0132"), seq("0312"), seq("0321")]
        assert integer_rows(rep.sigma[1]) == [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
        assert integer_rows(rep.sigma[2]) == [[0, 0, 0], [0, 0, 1], [0, 0, 0]]

    def test_one_dimensional(self):
        """S^(4) has degree 1 and S^(1^4) degree 0"""
        four = build_graded_specht(P(4), 4)
        assert four.degrees == [1]
        assert four.blocks == [seq("0123")]
        column = build_graded_specht(P(1, 1, 1, 1), 4)
        assert column.degrees == [0]
        assert column.blocks == [seq("0321")]

    def test_largest_descent_words(self):
        """Either reduced word gives a homogeneous basis with the same degrees"""
        for lam in partitions_of(4):
            graded = verify_grading(build_specht(lam, 4), largest=True)
            assert graded.degrees == build_graded_specht(lam, 4).degrees

    @pytest.mark.parametrize("e", [3, 5])
    def test_grading_other_e(self, e):
        """The basis is homogeneous for every S^lambda of H_4"""
        for lam in partitions_of(4):
            assert build_graded_specht(lam, e).graded

    def test_regrading_refused(self):
        """A graded module cannot be graded again"""
        with pytest.raises(PreconditionViolation):
            verify_grading(build_graded_specht(P(2, 2), 4))


class TestExtensionModule:
    """Test the explicit four-dimensional module with a gluing parameter"""

    @staticmethod
    def load(value: int):
        data = yaml.safe_load((TEST_FILES / "y211_extension.yaml").read_text(encoding="utf-8"))
        e = data["e"]
        field = cyclotomic_field(e)

        def entry(x):
            if x == "lambda":
                return value
            if x == "-lambda":
                return -value
            return x

        def matrix(rows: List[list]) -> CycloMatrix:
            return CycloMatrix(field, [[entry(x) for x in row] for row in rows])

        idempotents: Dict[tuple, CycloMatrix] = {
            seq(str(label)): matrix(rows) for label, rows in data["idempotents"].items()
        }
        t = [matrix(rows) for rows in data["t"]]
        sigma = [matrix(rows) for rows in data["sigma"]]
        return idempotents, t, sigma, data["degrees"], e

    @pytest.mark.parametrize("value", [0, 1, 2])
    def test_relations_hold(self, value):
        """Every relation holds for each value of the parameter"""
        idempotents, t, sigma, _, e = self.load(value)
        report = check_klr_data(idempotents, t, sigma, e, "Y^(2,1,1)")
        assert report.passed, [f.to_json() for f in report.failures]
        assert report.notes == []

    def test_homogeneous(self):
        """Degrees (-1, 0, 0, 1) make every generator homogeneous"""
        idempotents, t, sigma, degrees, e = self.load(1)
        assert homogeneity_failures(idempotents, t, sigma, degrees, e, "Y^(2,1,1)") == []

    def test_wrong_degrees_detected(self):
        """Shifting one degree breaks homogeneity"""
        idempotents, t, sigma, _, e = self.load(1)
        failures = homogeneity_failures(idempotents, t, sigma, [0, 0, 0, 1], e, "Y^(2,1,1)")
        assert failures
        assert all(f.module == "Y^(2,1,1)" for f in failures)

    def test_broken_relation_detected(self):
        """A sigma_3 with a stray entry fails the relations"""
        idempotents, t, sigma, _, e = self.load(1)
        field = sigma[2].field
        sigma[2] = sigma[2] + CycloMatrix(field, [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        assert not check_klr_data(idempotents, t, sigma, e, "Y^(2,1,1)").passed

    def test_e2_refused(self):
        """Relation checks need e >= 3"""
        idempotents, t, sigma, _, _ = self.load(1)
        with pytest.raises(E2Unsupported):
            check_klr_data(idempotents, t, sigma, 2, "Y^(2,1,1)")


class TestCharacters:
    """Test graded characters, Gram forms and simple modules"""

    def test_specht_character(self):
        """ch S^(3,1) at e = 4"""
        character = graded_character(build_graded_specht(P(3, 1), 4))
        assert character == {seq("0123"): 1, seq("0132"): v, seq("0312"): v}

    def test_character_needs_grading(self):
        """The Murphy basis carries no degrees"""
        with pytest.raises(PreconditionViolation):
            graded_character(build_specht(P(3, 1), 4))

    def test_gram_three_one(self):
        """Rad S^(3,1) lives in degree 1 and D^(3,1) is one-dimensional"""
        result = gram_form(build_graded_specht(P(3, 1), 4))
        assert result.radical_dimension == 2
        assert result.radical_by_degree == {1: 2}
        assert result.simple_character == {seq("0123"): 1}

    def test_gram_two_one_one(self):
        """Rad S^(2,1,1) is the degree one vector of block 0321"""
        result = gram_form(build_graded_specht(P(2, 1, 1), 4))
        assert result.radical_dimension == 1
        assert result.radical_by_degree == {1: 1}
        assert result.simple_character == {seq("0132"): 1, seq("0312"): 1}

    def test_gram_nondegenerate(self):
        """S^(2,2) is simple at e = 4"""
        rep = build_graded_specht(P(2, 2), 4)
        result = gram_form(rep)
        assert result.radical_dimension == 0
        assert result.simple_character == graded_character(rep)
        assert result.gram.rows == 2

    def test_simples_bar_symmetric(self):
        """ch D^mu is bar-symmetric for restricted mu"""
        for lam in partitions_of(4):
            if lam != P(4):
                assert is_bar_symmetric_character(simple_character(build_graded_specht(lam, 4)))
        assert not is_bar_symmetric_character({seq("0123"): v})


class TestDecompositionFromCharacters:
    """Test the character solve against the Fock space"""

    def test_n4_e4(self):
        """Both routes agree on the restricted columns"""
        from_characters = decomposition_from_characters(4, 4)
        assert from_characters.columns == [P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]
        fock_side = graded_decomposition_matrix(4, 4)
        assert fock_side.diff(from_characters) == []
        assert from_characters.entry(P(2, 2), P(2, 2)) == 1

    @pytest.mark.parametrize("n", [2, 3])
    def test_small_n(self, n):
        """Agreement at e = 3 for n <= 3"""
        from_characters = decomposition_from_characters(n, 3)
        fock_side = graded_decomposition_matrix(n, 3, allow_small_e=True)
        assert fock_side.diff(from_characters) == []

    def test_threads_agree(self):
        """Building Specht modules in threads changes nothing"""
        assert decomposition_from_characters(3, 4, threads=2) == decomposition_from_characters(3, 4)

    @pytest.mark.slow
    def test_n5_e4(self):
        """Agreement at n = 5"""
        assert graded_decomposition_matrix(5, 4).diff(decomposition_from_characters(5, 4)) == []
