"""Level-bound rules, certificates, witnesses, and lemma verification."""

import random

import pytest

from walklevel.bounds import (
    RULE_HALF_VALUATION,
    RULE_NONE,
    RULE_ODD_SQUAREFREE,
    RULE_TWO_ADIC_ODD,
    conjecture_check,
    dgs_certificate,
    extract_four_cong_witness,
    family_membership,
    level_bounds,
    mate_count_bounds,
    verify_proof_lemmas,
)
from walklevel.fixtures import load_worked_example
from walklevel.graphs import WalkProfile, walk_profile
from walklevel.intmat import IntMatrix
from walklevel.ortho import RatRegOrtho


def synthetic_profile(n, det_w, primes):
    """A WalkProfile stub with just the fields the bound rules read."""
    half = n // 2
    return WalkProfile(
        n=n,
        W=IntMatrix.identity(n),
        det_w=det_w,
        controllable=True,
        invariant_factors=(1,) * n,
        normalized_det=det_w // (1 << half),
        primes=primes,
    )


class TestLevelBounds:
    def test_worked_example(self):
        prof = walk_profile(load_worked_example().graph)
        rep = level_bounds(prof)
        assert rep.bound_for(3).exponent == 2
        assert rep.bound_for(3).rule == RULE_HALF_VALUATION
        assert rep.bound_for(19).exponent == 0
        assert rep.bound_for(19).rule == RULE_ODD_SQUAREFREE
        assert rep.bound_for(2).exponent == 0
        assert rep.bound_for(2).rule == RULE_TWO_ADIC_ODD
        assert rep.overall_divisor == 9

    def test_odd_squarefree_all_zero(self):
        # normalized det 15 = 3 * 5: everything bounded at exponent 0
        prof = synthetic_profile(4, 15 * 4, {2: (2, 3), 3: (1, 3), 5: (1, 3)})
        rep = level_bounds(prof)
        assert all(e.exponent == 0 for e in rep.entries)
        assert rep.overall_divisor == 1

    def test_half_valuation_formula(self):
        # v_p = 3 with the rank condition: min(floor(3/2), 3-1) = 1
        prof = synthetic_profile(6, 27 * 8, {2: (3, 5), 3: (3, 5)})
        rep = level_bounds(prof)
        assert rep.bound_for(3).exponent == 1
        assert rep.bound_for(3).rule == RULE_HALF_VALUATION

    def test_rank_condition_missing(self):
        prof = synthetic_profile(6, 9 * 8, {2: (3, 4), 3: (2, 4)})
        rep = level_bounds(prof)
        assert rep.bound_for(3).exponent is None
        assert rep.bound_for(3).rule == RULE_NONE
        assert rep.overall_divisor is None

    def test_even_normalized_det_unbounded_at_two(self):
        prof = synthetic_profile(4, 2 * 3 * 4, {2: (3, 2), 3: (1, 3)})
        rep = level_bounds(prof)
        assert rep.bound_for(2).exponent is None
        assert rep.overall_divisor is None

    def test_half_never_exceeds_minus_one(self):
        for v in range(2, 12):
            assert v // 2 <= v - 1

    def test_uncontrollable_rejected(self):
        prof = WalkProfile(2, IntMatrix.identity(2), 0, False, (1, 1), None, {})
        with pytest.raises(ValueError):
            level_bounds(prof)


class TestDgsCertificate:
    def test_worked_example_unknown(self):
        cert = dgs_certificate(walk_profile(load_worked_example().graph))
        assert cert.status == "Unknown"
        assert "square-free" in cert.reason

    def test_odd_squarefree_certified(self):
        prof = synthetic_profile(4, 105 * 4, {3: (1, 3), 5: (1, 3), 7: (1, 3)})
        assert dgs_certificate(prof).is_dgs

    def test_even_unknown(self):
        prof = synthetic_profile(4, 6 * 4, {2: (3, 2), 3: (1, 3)})
        cert = dgs_certificate(prof)
        assert cert.status == "Unknown" and "even" in cert.reason


class TestFamilyMembership:
    def test_square_family(self):
        prof = synthetic_profile(8, 9 * 35 * 16, {3: (2, 7), 5: (1, 7), 7: (1, 7)})
        fam = family_membership(prof)
        assert fam.exponent == 2 and fam.prime == 3 and fam.cofactor == 35
        assert fam.in_square_family

    def test_cube_family_only(self):
        prof = synthetic_profile(8, 27 * 5 * 16, {3: (3, 7), 5: (1, 7)})
        fam = family_membership(prof)
        assert fam.exponent == 3 and fam.prime == 3 and fam.cofactor == 5
        assert fam.is_member and not fam.in_square_family

    def test_worked_example_neither(self):
        fam = family_membership(walk_profile(load_worked_example().graph))
        assert not fam.is_member

    def test_rank_condition_required(self):
        prof = synthetic_profile(8, 9 * 35 * 16, {3: (2, 6), 5: (1, 7), 7: (1, 7)})
        assert not family_membership(prof).is_member

    def test_member_keeps_uniqueness_promise(self):
        # frozen sweep find: normalized det 3^2, one mate exactly; family
        # membership promises at most one, and the complete search agrees
        from walklevel.arith import divisors
        from walklevel.graphs import parse_graph6
        from walklevel.matesearch import distinct_mate_graphs, search_mates

        g = parse_graph6("HTAWQhV")
        prof = walk_profile(g)
        fam = family_membership(prof)
        assert fam.in_square_family and fam.prime == 3
        classes = search_mates(g, divisors(prof.d_n))
        assert len(distinct_mate_graphs(classes)) == 1


class TestMateCountBounds:
    def test_formula_examples(self):
        # d_n = 2 * 3^4
        b = mate_count_bounds((1, 1, 1, 2, 2 * 81))
        assert (b.basic, b.improved) == (3, 2)
        # d_n = 2 * p^2: uniqueness
        b = mate_count_bounds((1, 1, 1, 2, 2 * 49))
        assert (b.basic, b.improved) == (1, 1)
        # d_n = 4 * 9 * 25
        b = mate_count_bounds((1, 1, 1, 2, 4 * 9 * 25))
        assert (b.basic, b.improved) == (7, 7)

    def test_hypotheses_unmet(self):
        b = mate_count_bounds((1, 1, 2, 2, 12))
        assert not b.applicable and "d_3" in b.reason
        b = mate_count_bounds((1, 1, 1, 4, 12))
        assert not b.applicable and "d_4" in b.reason

    def test_improved_never_exceeds_basic(self):
        rng = random.Random(19)
        for _ in range(200):
            m1 = rng.randint(1, 5)
            odd = [(p, rng.randint(1, 5)) for p in rng.sample([3, 5, 7, 11, 13], rng.randint(0, 3))]
            d_n = 2**m1
            for p, e in odd:
                d_n *= p**e
            b = mate_count_bounds((1,) * 3 + (2, d_n))
            assert b.applicable
            assert b.improved <= b.basic

    def test_worked_example(self):
        prof = walk_profile(load_worked_example().graph)
        b = mate_count_bounds(prof.invariant_factors)
        assert (b.basic, b.improved) == (3, 2)


class TestWitnessExtraction:
    def test_level9_prime3(self):
        ex = load_worked_example()
        wit = extract_four_cong_witness(ex.graph, ex.q_level9, 3)
        assert wit.tau == 2
        assert all(wit.checks)
        assert any(x % 3 for x in wit.z0)

    def test_level3_prime3(self):
        ex = load_worked_example()
        wit = extract_four_cong_witness(ex.graph, ex.q_level3, 3)
        assert wit.tau == 1
        assert all(wit.checks)

    def test_lowest_index_column_deterministic(self):
        ex = load_worked_example()
        wit = extract_four_cong_witness(ex.graph, ex.q_level9, 3)
        cols = ex.q_level9.num.columns()
        first = next(c for c in cols if any(x % 3 for x in c))
        assert wit.z0 == first

    def test_permutation_rejected(self):
        ex = load_worked_example()
        with pytest.raises(ValueError, match="tau = 0"):
            extract_four_cong_witness(ex.graph, RatRegOrtho.identity(10), 3)

    def test_even_prime_rejected(self):
        ex = load_worked_example()
        with pytest.raises(ValueError):
            extract_four_cong_witness(ex.graph, ex.q_level9, 2)


class TestVerifyProofLemmas:
    def test_worked_example_both_witnesses(self):
        ex = load_worked_example()
        for q in (ex.q_level3, ex.q_level9):
            wit = extract_four_cong_witness(ex.graph, q, 3)
            rep = verify_proof_lemmas(ex.graph, wit)
            assert rep.all_ok, rep
            assert rep.z1 is not None
            assert sum(rep.z1) % 3 != 0

    def test_report_serializable(self):
        import json

        ex = load_worked_example()
        wit = extract_four_cong_witness(ex.graph, ex.q_level9, 3)
        rep = verify_proof_lemmas(ex.graph, wit)
        json.dumps(rep.as_dict())


class TestLemmaBranchInstances:
    """Frozen sweep finds exercising both z1 routes deterministically."""

    def _check(self, g6, p, expected_c):
        from walklevel.graphs import parse_graph6
        from walklevel.matesearch import search_mates

        g = parse_graph6(g6)
        classes = [c for c in search_mates(g, [p]) if c.level == p]
        assert classes, "instance lost its mate"
        wit = extract_four_cong_witness(g, classes[0].q, p)
        rep = verify_proof_lemmas(g, wit)
        assert wit.tau == 1
        assert rep.c == expected_c
        assert rep.all_ok, rep

    def test_direct_solvable_route(self):
        # shifted adjacency has a unit (n-1)-st factor: z1 solves directly
        self._check("HTAWQhV", 3, expected_c=0)

    def test_kernel_extension_route(self):
        # c = tau: z1 comes from completing {z0} to a rank-2 kernel basis
        self._check("Hh}boM{", 3, expected_c=1)

    def test_kernel_extension_route_p5(self):
        self._check(r"IWag\fxZG", 5, expected_c=1)


class TestConjectureCheck:
    def test_worked_example(self):
        prof = walk_profile(load_worked_example().graph)
        rep = conjecture_check(prof, [1, 3, 9])
        entry = next(e for e in rep.entries if e.prime == 3)
        assert entry.observed_max == 2
        assert entry.last_two_valuation_sum == 4
        assert entry.det_valuation == 4
        assert not rep.any_violation

    def test_no_mates_trivially_consistent(self):
        prof = walk_profile(load_worked_example().graph)
        rep = conjecture_check(prof, [])
        assert all(e.observed_max == 0 for e in rep.entries)
        assert not rep.any_violation

    def test_violation_flagged_not_raised(self):
        prof = walk_profile(load_worked_example().graph)
        rep = conjecture_check(prof, [3**5])  # impossible level, synthetic
        assert rep.any_violation  # flagged as a finding only
