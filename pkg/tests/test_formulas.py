"""Tests for the closed-form window sums and their verifier."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demchar.crystals import perfect_crystal
from demchar.formulas import (
    FAMILY_KEYS,
    g_closed_form,
    mu_from_weight,
    mu_to_weight,
    rank_of,
    verify_type,
)
from demchar.onedsums import g_enumerate, g_recursive, tail_weight_support
from demchar.qring import ONE, ZERO, LaurentPoly, qmultinomial
from demchar.weights import Weight

MINIMAL_RANKS = [
    ("A1", 1),
    ("A1", 2),
    ("B1", 3),
    ("D1", 4),
    ("A2odd", 3),
    ("A2even", 1),
    ("A2even", 2),
    ("D2", 2),
]


def poly(pairs):
    return LaurentPoly.from_terms(pairs)


def support_weights(crystal, j):
    return [Weight(coords) for coords in sorted(tail_weight_support(crystal, j))]


class TestParameterDictionaries:
    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_roundtrip_through_reachable_weights(self, family, rank):
        crystal = perfect_crystal(family, rank)
        for j in range(4):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight(family, rank, weight, j)
                assert mu_to_weight(family, mu) == weight

    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_named_weights_have_level_zero(self, family, rank):
        crystal = perfect_crystal(family, rank)
        probes = {
            "A1": [(0,) * (rank + 1), (1,) + (0,) * rank, (2, -1) + (0,) * (rank - 1)],
        }.get(family, [(0,) * rank, (1,) + (0,) * (rank - 1), (-2,) + (1,) * (rank - 1)])
        for mu in probes:
            assert crystal.cartan.level(mu_to_weight(family, mu)) == 0

    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
    @settings(max_examples=40, deadline=None)
    def test_vector_roundtrip_b1(self, mu):
        mu = tuple(mu)
        weight = mu_to_weight("B1", mu)
        assert mu_from_weight("B1", 3, weight) == mu

    @given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_vector_roundtrip_d1(self, mu):
        mu = tuple(mu)
        weight = mu_to_weight("D1", mu)
        assert mu_from_weight("D1", 4, weight) == mu

    @given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.integers(0, 6))
    @settings(max_examples=40, deadline=None)
    def test_vector_roundtrip_a1_pinned_by_window(self, head, j):
        total = j - sum(head)
        mu = tuple(head) + (total,)
        weight = mu_to_weight("A1", mu)
        assert mu_from_weight("A1", 3, weight, j) == mu

    def test_window_length_required_for_cyclic_family(self):
        weight = mu_to_weight("A1", (1, 1))
        with pytest.raises(ValueError):
            mu_from_weight("A1", 1, weight)

    def test_window_length_must_match_lattice(self):
        weight = mu_to_weight("A1", (1, 1))
        with pytest.raises(ValueError):
            mu_from_weight("A1", 1, weight, 3)

    def test_rejects_non_integer_entries(self):
        with pytest.raises(ValueError):
            mu_to_weight("B1", (1, 1.5, 0))
        with pytest.raises(ValueError):
            mu_to_weight("A1", (True, 1))

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError):
            mu_to_weight("E8", (1, 2))
        with pytest.raises(ValueError):
            rank_of("E8", (1, 2))

    def test_rejects_wrong_weight_size(self):
        with pytest.raises(ValueError):
            mu_from_weight("B1", 3, Weight((0, 0, 0)), 0)

    def test_rejects_null_root_coordinate(self):
        weight = Weight.zero(4).with_delta(1)
        with pytest.raises(ValueError):
            mu_from_weight("B1", 3, weight)

    def test_rejects_off_lattice_weights(self):
        # Odd endpoint coordinate where the dictionary doubles it.
        with pytest.raises(ValueError):
            mu_from_weight("A2even", 1, Weight((-1, 1)))
        # Endpoint pair of mixed parity.
        with pytest.raises(ValueError):
            mu_from_weight("D1", 4, Weight((0, 0, 0, 1, 0)))

    def test_rejects_nonzero_level(self):
        with pytest.raises(ValueError):
            mu_from_weight("A2even", 1, Weight((1, 0)))
        with pytest.raises(ValueError):
            mu_from_weight("A1", 1, Weight((1, 0)), 2)

    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_distinct_vectors_name_distinct_weights(self, family, rank):
        crystal = perfect_crystal(family, rank)
        seen = {}
        for j in range(4):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight(family, rank, weight, j)
                key = (j, mu) if family == "A1" else mu
                assert seen.setdefault(key, weight) == weight


class TestClosedForm:
    def test_frozen_rank_one_cells(self):
        assert g_closed_form("A1", "0", (1, 1), 2) == poly([(1, 1), (2, 1)])
        assert g_closed_form("A1", "1", (1, 1), 2) == poly([(2, 1), (3, 1)])
        assert g_closed_form("A1", "0", (2, 0), 2) == poly([(3, 1)])
        assert g_closed_form("A1", "0", (2, 1), 3) == poly([(3, 1), (4, 1), (5, 1)])

    def test_cyclic_family_is_a_single_bracket_term(self):
        # The letter counts are pinned, so the sum degenerates to one
        # q-power times a Gaussian multinomial.
        crystal = perfect_crystal("A1", 2)
        for j in range(4):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight("A1", 2, weight, j)
                value = g_closed_form("A1", "0", mu, j)
                bracket = qmultinomial(j, mu)
                shifts = {exp - bexp for (exp, _), (bexp, _) in
                          zip(value.terms(), bracket.terms())}
                assert len(shifts) == 1

    def test_negative_counts_vanish(self):
        assert g_closed_form("A1", "0", (-1, 3), 2) == ZERO

    def test_cyclic_family_counts_must_sum_to_window(self):
        with pytest.raises(ValueError):
            g_closed_form("A1", "0", (1, 1), 3)

    def test_rejects_negative_window(self):
        with pytest.raises(ValueError):
            g_closed_form("B1", "1", (0, 0, 0), -1)

    def test_rejects_non_integer_counts(self):
        with pytest.raises(ValueError):
            g_closed_form("D2", "1", (0.5, 0), 1)

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError):
            g_closed_form("C7", "1", (0, 0), 1)

    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_empty_window(self, family, rank):
        zero = (0,) * (rank + 1 if family == "A1" else rank)
        assert g_closed_form(family, perfect_crystal(family, rank).elements[0], zero, 0) == ONE
        nonzero = (1,) + zero[1:-1] + (-1,) if family == "A1" else (1,) + zero[1:]
        assert g_closed_form(family, perfect_crystal(family, rank).elements[0], nonzero, 0) == ZERO

    def test_matches_enumeration_exhaustively_rank_one(self):
        crystal = perfect_crystal("A1", 1)
        for j in range(6):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight("A1", 1, weight, j)
                for b in crystal.elements:
                    assert g_closed_form("A1", b, mu, j) == g_enumerate(
                        crystal, b, weight, j
                    )

    def test_paired_factorial_division_is_exact(self):
        # Every summand of the odd-twisted form divides exactly; any
        # remainder would raise from inside the evaluation.
        crystal = perfect_crystal("A2odd", 3)
        for j in range(4):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight("A2odd", 3, weight, j)
                for b in crystal.elements:
                    value = g_closed_form("A2odd", b, mu, j)
                    assert value == g_recursive(crystal, b, weight, j)

    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_coefficients_are_nonnegative_integers(self, family, rank):
        crystal = perfect_crystal(family, rank)
        for j in range(3):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight(family, rank, weight, j)
                for b in crystal.elements:
                    for _, coeff in g_closed_form(family, b, mu, j).terms():
                        assert isinstance(coeff, int) and coeff > 0

    def test_doubled_base_family_energy_range(self):
        crystal = perfect_crystal("D2", 2)
        energies = {crystal.energy(x, y) for x in crystal.elements for y in crystal.elements}
        assert energies == {0, 1, 2}

    def test_frozen_doubled_base_cells(self):
        assert g_closed_form("D2", "1", (0, 0), 2) == poly(
            [(0, 2), (1, 1), (2, 3), (3, 1), (4, 1)]
        )
        assert g_closed_form("D2", "phi", (0, 0), 1) == poly([(0, 1), (1, 1)])
        assert g_closed_form("D2", "phi", (1, 0), 1) == poly([(1, 1)])

    def test_frozen_odd_twisted_cell(self):
        assert g_closed_form("A2odd", "2", (0, 0, 0), 2) == poly(
            [(0, 1), (1, 4), (2, 1)]
        )


class TestCrossTermPivot:
    def test_zero_letter_accepts_either_endpoint(self):
        crystal = perfect_crystal("B1", 3)
        for j in range(4):
            for weight in support_weights(crystal, j):
                mu = mu_from_weight("B1", 3, weight, j)
                top = g_closed_form("B1", "0", mu, j, pivot=3)
                bottom = g_closed_form("B1", "0", mu, j, pivot=1)
                assert top == bottom
                assert g_closed_form("B1", "0", mu, j) == top

    def test_default_pivot_tracks_bar(self):
        crystal = perfect_crystal("B1", 3)
        weight = support_weights(crystal, 2)[0]
        mu = mu_from_weight("B1", 3, weight, 2)
        assert g_closed_form("B1", "2~", mu, 2) == g_closed_form(
            "B1", "2~", mu, 2, pivot=3
        )
        assert g_closed_form("B1", "2", mu, 2) == g_closed_form(
            "B1", "2", mu, 2, pivot=1
        )


class TestRecursionSubstitution:
    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_closed_form_satisfies_head_recursion(self, family, rank):
        crystal = perfect_crystal(family, rank)
        for j in (1, 2, 3):
            for weight in support_weights(crystal, j)[:4]:
                mu = mu_from_weight(family, rank, weight, j)
                for b in crystal.elements[:3]:
                    lhs = g_closed_form(family, b, mu, j)
                    rhs = ZERO
                    for bp in crystal.elements:
                        rest = weight - crystal.weight(bp)
                        inner = g_closed_form(
                            family,
                            bp,
                            mu_from_weight(
                                family, rank, Weight(rest.lambda_coords), j - 1
                            ),
                            j - 1,
                        )
                        if inner:
                            rhs = rhs + inner.shift(j * crystal.energy(b, bp))
                    assert lhs == rhs


class TestVerifier:
    @pytest.mark.parametrize("family,rank", MINIMAL_RANKS)
    def test_no_mismatches_at_minimal_rank(self, family, rank):
        report = verify_type(family, 4, rank)
        assert report["type"] == family
        assert report["rank"] == rank
        assert report["j_max"] == 4
        assert report["cells_checked"] > 0
        assert report["mismatches"] == []

    def test_cell_count_matches_support(self):
        crystal = perfect_crystal("A1", 1)
        expected = sum(
            len(tail_weight_support(crystal, j)) * len(crystal.elements)
            for j in range(3)
        )
        report = verify_type("A1", 2, 1)
        assert report["cells_checked"] == expected

    def test_threaded_report_matches_serial(self):
        serial = verify_type("A2even", 3, 1)
        threaded = verify_type("A2even", 3, 1, threads=4)
        assert serial == threaded

    def test_rejects_negative_budget(self):
        with pytest.raises(ValueError):
            verify_type("A1", -1, 1)
