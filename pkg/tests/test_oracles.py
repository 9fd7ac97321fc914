import json

import pytest

from intersecting import bounds as B
from intersecting import oracles as O
from intersecting.constructions import e_l, full_star, h_u, j_i, special_set, t2s
from intersecting.family import (
    Family,
    common_intersection,
    diversity,
    is_intersecting,
    make_family,
    max_cross_partner,
    minimality_witness,
    relabel,
)
from intersecting.search import EnumBudget, MaximalFamilies


class TestMinimalTau2:
    def test_small_case_properties(self):
        seen = list(O.enumerate_minimal_tau2(8, 3))
        assert seen
        pair = t2s(8, 3)
        assert any(h.sets == pair.sets for h in seen)
        for h in seen:
            assert 2 <= len(h) <= 4
            assert common_intersection(h) == 0
            for drop in range(len(h)):
                rest = h.sets[:drop] + h.sets[drop + 1:]
                core = (1 << 8) - 1
                for x in rest:
                    core &= x
                assert core != 0

    def test_uncapped_search_respects_set_pair_cap(self):
        capped = [h.sets for h in O.enumerate_minimal_tau2(8, 3)]
        free = [h.sets for h in O.enumerate_minimal_tau2(8, 3, cap=None)]
        assert capped == free

    def test_singletons(self):
        # s = 1: exactly the pairs of distinct points
        assert len(list(O.enumerate_minimal_tau2(5, 1))) == 10

    def test_regime(self):
        with pytest.raises(Exception):
            list(O.enumerate_minimal_tau2(6, 3))


class TestLemma7:
    def test_small_point(self):
        rep = O.verify_lemma7(8, 3, 4)
        assert rep.status == "verified"
        assert rep.stats["maximum"] == 38 == B.f2s_size(8, 3 + 1, 3) + 2
        assert rep.stats["maximizers_not_t2s"] == 0
        assert set(rep.stats["families_by_size"]) <= {"2", "3", "4"}

    def test_second_point(self):
        rep = O.verify_lemma7(9, 3, 5)
        assert rep.status == "verified"
        assert rep.stats["maximum"] == 98

    def test_pointwise_ladder(self):
        for h in O.enumerate_minimal_tau2(8, 3):
            assert len(max_cross_partner(h, 3)) <= B.f_of_z(8, 4, 3, len(h))

    def test_regime(self):
        with pytest.raises(B.RegimeError):
            O.verify_lemma7(6, 3, 4)


class TestRandomIntersecting:
    def test_star(self):
        f = O.random_intersecting(9, 4, 0, seed=3)
        assert diversity(f)[0] == 0 and len(f) == 56

    @pytest.mark.parametrize("target", [1, 2, 3, 5, 10])
    def test_targets(self, target):
        f = O.random_intersecting(9, 4, target, seed=11)
        assert is_intersecting(f)
        assert diversity(f)[0] == target

    def test_deterministic(self):
        assert O.random_intersecting(9, 4, 2, 5) == O.random_intersecting(9, 4, 2, 5)

    def test_maximal(self):
        f = O.random_intersecting(9, 4, 3, 1)
        from intersecting.family import k_subsets

        for s in k_subsets((1 << 9) - 1, 4):
            assert s in f or any(not s & x for x in f)

    def test_infeasible(self):
        with pytest.raises(Exception):
            O.random_intersecting(9, 4, 40, seed=0, attempts=50)


class TestVerifiers:
    def test_ekr_small(self):
        for n, k in ((5, 2), (7, 3)):
            rep = O.verify_ekr(n, k, MaximalFamilies(n, k))
            assert rep.status == "verified"
            assert rep.stats["equality"] == n

    def test_thm1_small(self):
        rep = O.verify_thm1(7, 3, 3, MaximalFamilies(7, 3))
        assert rep.status == "verified"
        assert rep.stats["bound"] == 13

    def test_non_intersecting_input_is_rejected(self):
        bad = make_family(9, 4, [[1, 2, 3, 4], [5, 6, 7, 8]] + [[1, 2, 3, x] for x in range(5, 10)])
        big = Family.of(9, 4, list(j_i(9, 4, 2).sets) + list(bad.sets))
        rep = O.verify_thm1(9, 4, 3, [big])
        assert rep.status == "verified"
        assert rep.stats["rejected_not_intersecting"] == 1

    def test_oversize_family_is_a_counterexample(self, monkeypatch):
        monkeypatch.setattr(O.B, "kz_bound", lambda n, k, u: 50)
        rep = O.verify_thm1(9, 4, 3, [h_u(9, 4, 3)])
        assert rep.status == "counterexample"
        assert rep.counterexamples == [h_u(9, 4, 3)]

    def test_hk_skips_stars_and_classifies(self):
        fams = [full_star(9, 4), j_i(9, 4, 2), e_l(9, 4, 5), j_i(9, 4, 3)]
        rep = O.verify_hk(9, 4, fams)
        assert rep.status == "verified"
        assert rep.stats["applicable"] == 3
        assert rep.stats["equality_classes"] == {"E_5=H_3": 1, "J_2=E_2": 1}

    def test_hk_k5_equality_must_be_j2(self):
        rep = O.verify_hk(11, 5, [j_i(11, 5, 2), relabel(j_i(11, 5, 2), list(range(11, 0, -1)))])
        assert rep.status == "verified"
        assert rep.stats["equality_classes"] == {"J_2=E_2": 2}

    def test_thm4_part1_j2_instance(self):
        for n, k in ((9, 4), (11, 5)):
            pair = Family.of(n, k, [special_set(k, 1), special_set(k, 2)])
            rep = O.verify_thm4_part1(j_i(n, k, 2), pair)
            assert rep.status == "verified"
            assert rep.stats["equality"] == 1

    def test_thm4_part1_normalizes_labels(self):
        perm = list(range(1, 10))
        perm[0], perm[4] = 5, 1
        f = relabel(j_i(9, 4, 2), perm)
        pair = relabel(Family.of(9, 4, [special_set(4, 1), special_set(4, 2)]), perm)
        rep = O.verify_thm4_part1(f, pair)
        assert rep.status == "verified"
        assert any("normalized" in note for note in rep.notes)

    def test_thm4_part1_subfamily_bound(self):
        core = Family.of(11, 5, [special_set(5, 1), special_set(5, 2)])
        ext = O.maximal_extension(core)
        sub = Family.of(11, 5, ext.sets[: len(ext) - 5] + core.sets)
        rep = O.verify_thm4_part1(sub, core)
        assert rep.status == "verified"

    def test_thm4_part1_preconditions(self):
        f = j_i(9, 4, 2)
        loose = Family.of(9, 4, [special_set(4, 1), special_set(4, 3)])  # core size 2
        rep = O.verify_thm4_part1(f, loose)
        assert rep.status == "inconclusive"
        assert any("precondition" in note for note in rep.notes)

    def test_thm4_part1_h2_at_k4(self):
        # H_2 at (9, 4) with a two-set M of core size 3 attains |F'| = 51 but is
        # isomorphic to neither E_5 nor J_2
        f = h_u(9, 4, 2)
        assert diversity(f) == (15, 1)
        m = make_family(9, 4, [[2, 3, 4, 5], [2, 3, 4, 6]])
        assert minimality_witness(m).t == 3
        rep = O.verify_thm4_part1(f, m)
        assert rep.status == "counterexample"
        assert rep.stats["equality_classes"] == {"H_2": 1}

    def test_thm4_part2_filter_and_bound(self):
        fams = [full_star(9, 4), j_i(9, 4, 2), e_l(9, 4, 5), h_u(9, 4, 4)]
        rep = O.verify_thm4_part2(9, 4, 3, fams)
        assert rep.status == "verified"
        assert rep.stats["bound"] == 51
        # J_2 and E_5 avoid 1 in sets sharing three elements; J_1 avoids it in one 4-set
        assert rep.stats["applicable"] == 2

    def test_thm4_part2_n_2k_plus_1_chain(self):
        n, k, t = 11, 5, 3
        fams = [j_i(n, k, i) for i in range(k - t + 1, k + 1)]
        assert len({len(f) for f in fams}) == 1
        rep = O.verify_thm4_part2(n, k, t, fams)
        assert rep.status == "verified"
        assert sum(rep.stats["equality_classes"].values()) == len(fams)

    def test_cor5_containment(self):
        n, k = 13, 5
        assert B.size_e_l(n, k, n - k) > B.size_j_i(n, k, 3)
        rep = O.verify_cor5(n, k, [e_l(n, k, n - k), j_i(n, k, 3), full_star(n, k)])
        assert rep.status == "verified"
        assert rep.stats["contained_in_some_E"] == 2

    def test_cor5_k4_is_labelled(self):
        rep = O.verify_cor5(9, 4, [j_i(9, 4, 2)])
        assert rep.theorem == "cor5/theorem-4-derived"

    def test_cor5_sampled(self):
        rep = O.verify_cor5(11, 5, O.sampled_families(11, 5, 40, seed=2))
        assert rep.status == "verified"


class TestCross:
    def test_deterministic(self):
        a = O.verify_cross(9, 4, 3, 500, seed=4).to_json()
        b = O.verify_cross(9, 4, 3, 500, seed=4).to_json()
        assert a == b

    def test_suite_small(self):
        for n, a, b in ((9, 4, 3), (9, 3, 3), (10, 4, 2)):
            rep = O.verify_cross(n, a, b, 1000, seed=1)
            assert rep.status == "verified"
            assert rep.stats["easy_tight"] > 0

    def test_fast_partner_matches_reference(self, rng):
        table, total = O._disjoint_masks(9, 3, 4)
        universe = sorted(table)
        for _ in range(50):
            fam = Family.of(9, 3, rng.sample(universe, rng.randint(0, 20)))
            blocked = 0
            for x in fam:
                blocked |= table[x]
            assert total - blocked.bit_count() == len(max_cross_partner(fam, 4))


class TestReports:
    def test_status_follows_counterexamples(self):
        rep = O.verify_hk(9, 4, [j_i(9, 4, 2)])
        assert rep.status == "verified" and not rep.counterexamples
        assert rep.exit_code == 0

    def test_inconclusive_on_budget(self):
        stream = MaximalFamilies(9, 4, EnumBudget(max_nodes=50), min_size=51, rooted=True)
        rep = O.verify_hk(9, 4, stream)
        assert rep.status == "inconclusive"
        assert rep.exit_code == 2

    def test_json_deterministic(self):
        a = O.verify_thm1(7, 3, 3, MaximalFamilies(7, 3)).to_json()
        b = O.verify_thm1(7, 3, 3, MaximalFamilies(7, 3)).to_json()
        assert a == b
        json.loads(a)

    def test_verdict_ignores_stream_order(self):
        fams = list(MaximalFamilies(7, 3))
        a = O.verify_ekr(7, 3, fams).to_dict()
        b = O.verify_ekr(7, 3, fams[::-1]).to_dict()
        assert a == b

    def test_worst_status(self):
        assert O.worst_status(["verified", "inconclusive"]) == "inconclusive"
        assert O.worst_status(["counterexample", "inconclusive"]) == "counterexample"
        assert O.worst_status([]) == "verified"
