from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import fuzzy_sets, interval_unions
from fuzzy_skorokhod.bruteforce import d0_bruteforce
from fuzzy_skorokhod.core import IntervalUnion, StepFuzzySet, alpha_cut
from fuzzy_skorokhod.metrics import (
    Reparam,
    apply_reparam,
    d0_lower_bound_certificate,
    d0_objective,
    hausdorff,
    level_metric_dinf,
    reparam_sup_deviation,
    skorokhod_d0,
    _realize,
)
from fuzzy_skorokhod.counterexample import build_t
from fuzzy_skorokhod.dynamics import PLMap, zadeh_extend

GRID = [F(k, 64) for k in range(65)]


def U(*pairs):
    return IntervalUnion.of(*pairs)


def grid_hausdorff(A, B):
    """Brute force over the 1/64 grid; exact when endpoints lie on the 1/32 grid."""

    def dist(x, S):
        return min(max(lo - x, F(0), x - hi) for lo, hi in S)

    def directed(X, Y):
        return max(dist(x, Y) for x in GRID if X.contains(x))

    return max(directed(A, B), directed(B, A))


class TestHausdorff:
    def test_claim_one_band(self):
        assert hausdorff(U((F(3, 8), 1)), U((F(7, 8), 1))) == F(1, 2)

    def test_union_example(self):
        A = U((F(3, 16), F(3, 4)))
        B = U((F(7, 16), F(1, 2)), (F(21, 32), F(3, 4)))
        assert hausdorff(A, B) == F(1, 4)

    def test_identity(self):
        A = U((0, F(1, 3)), (F(1, 2), F(1, 2)))
        assert hausdorff(A, A) == 0

    def test_gap_midpoint_is_the_peak(self):
        # the farthest point of [0, 1] from {0, 1} is the midpoint
        assert hausdorff(U((0, 1)), U((0, 0), (1, 1))) == F(1, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            hausdorff(IntervalUnion(()), U((0, 1)))

    @given(interval_unions(), interval_unions())
    def test_matches_grid_oracle(self, A, B):
        assert hausdorff(A, B) == grid_hausdorff(A, B)

    @given(interval_unions(), interval_unions(), interval_unions())
    def test_metric_axioms(self, A, B, C):
        assert hausdorff(A, B) == hausdorff(B, A)
        assert hausdorff(A, C) <= hausdorff(A, B) + hausdorff(B, C)
        assert (hausdorff(A, B) == 0) == (A == B)


class TestReparam:
    def test_deviation_identity(self):
        assert reparam_sup_deviation(Reparam.identity()) == 0

    def test_deviation_counterexample_t(self):
        assert reparam_sup_deviation(build_t(F(3, 8))) == F(1, 4)

    def test_deviation_single_knot(self):
        t = Reparam.from_knots([(0, 0), (F(1, 2), F(3, 4)), (1, 1)])
        assert reparam_sup_deviation(t) == F(1, 4)

    def test_inverse_has_same_deviation(self):
        t = build_t(F(3, 8))
        assert reparam_sup_deviation(t.inverse()) == reparam_sup_deviation(t)
        assert all(t.inverse()(t(x)) == x for x in GRID)

    @pytest.mark.parametrize(
        "knots",
        [
            [(0, 0), (F(1, 2), F(1, 2)), (F(1, 2), 1), (1, 1)],
            [(0, 0), (F(1, 2), F(1, 2)), (F(3, 4), F(1, 2)), (1, 1)],
            [(0, F(1, 8)), (1, 1)],
        ],
    )
    def test_rejects_non_homeomorphisms(self, knots):
        with pytest.raises(ValueError):
            Reparam.from_knots(knots)


class TestApplyReparam:
    def test_identity(self, ce3):
        assert apply_reparam(Reparam.identity(), ce3.v) == ce3.v

    def test_counterexample_t_moves_first_band(self, ce3):
        tv = apply_reparam(ce3.t, ce3.v)
        assert tv.alphas[0] == F(3, 8)
        assert alpha_cut(tv, F(3, 8)) == U((F(1, 8), 1))

    def test_inverse_round_trip(self, ce3):
        t = ce3.t
        assert apply_reparam(t, apply_reparam(t.inverse(), ce3.v)) == ce3.v

    @given(fuzzy_sets())
    def test_cut_transport(self, v):
        t = Reparam.from_knots([(0, 0), (F(1, 3), F(1, 2)), (1, 1)])
        tv = apply_reparam(t, v)
        for k in range(1, 33):
            alpha = F(k, 32)
            assert alpha_cut(tv, alpha) == alpha_cut(v, t.inverse()(alpha))


class TestLevelMetric:
    def test_identity(self, ce3):
        assert level_metric_dinf(ce3.u, ce3.u) == 0

    def test_counterexample_pair_unwarped(self, ce3):
        # independent route: sample alpha on a grid finer than every level
        sampled = max(
            hausdorff(alpha_cut(ce3.u, a), alpha_cut(ce3.v, a))
            for a in (F(k, 1024) for k in range(1, 1025))
        )
        assert sampled == F(1, 2)
        assert level_metric_dinf(ce3.u, ce3.v) == F(1, 2)

    def test_counterexample_pair_warped_by_t(self, ce3):
        assert level_metric_dinf(ce3.u, apply_reparam(ce3.t, ce3.v)) == F(1, 4)

    def test_check_mode_flags_oversized_support(self):
        u = StepFuzzySet.from_levels([(1, [(0, F(1, 2))])], support=[(0, 1)])
        v = StepFuzzySet.from_levels([(1, [(0, F(1, 2))])])
        assert level_metric_dinf(u, v, include_support=False) == 0
        assert level_metric_dinf(u, v) == F(1, 2)
        with pytest.raises(ArithmeticError):
            level_metric_dinf(u, v, check=True)

    @given(fuzzy_sets(), fuzzy_sets())
    def test_matches_alpha_sampling(self, u, v):
        # levels are multiples of 1/16, so the right end of each 1/16 band decides it
        sampled = max(
            hausdorff(alpha_cut(u, a), alpha_cut(v, a)) for a in (F(k, 16) for k in range(17))
        )
        assert level_metric_dinf(u, v) == sampled


class TestSkorokhod:
    def test_self_distance(self, ce3):
        r = skorokhod_d0(ce3.u, ce3.u)
        assert r.value == 0
        assert reparam_sup_deviation(r.witness) == 0

    def test_claim_one_value(self, ce3):
        r = skorokhod_d0(ce3.u, ce3.v)
        assert r.value == F(1, 4)
        assert r.attained
        assert d0_objective(ce3.u, ce3.v, r.witness) == F(1, 4)

    def test_zadeh_images(self, ce3):
        f = PLMap.linear(F(1, 2))
        r = skorokhod_d0(zadeh_extend(f, ce3.u), zadeh_extend(f, ce3.v))
        assert r.value == F(1, 4)

    def test_collapsed_band_is_not_free(self):
        # v's middle cut [0, 1/2] is 1/2 away from both cuts of u; a reparameterization
        # cannot squeeze that band away, so d_0 stays at 1/2
        u = StepFuzzySet.from_levels([(F(1, 2), [(0, 1)]), (1, [(0, 0)])])
        v = StepFuzzySet.from_levels(
            [(F(2, 5), [(0, 1)]), (F(3, 5), [(0, F(1, 2))]), (1, [(0, 0)])]
        )
        assert skorokhod_d0(u, v).value == F(1, 2)
        assert d0_bruteforce(u, v, F(1, 64)).upper == F(1, 2)

    def test_fallback_realization_stays_within_eps(self):
        # two images share the open box (1/2, 1) but both clamp onto 1/2
        alphas = (F(0), F(1, 2), F(1))
        betas = (F(0), F(1, 8), F(1, 4), F(1))
        eps = F(1, 1000)
        t = _realize(alphas, betas, [0, 3, 3, 4], eps)
        images = [t(b) for b in betas[1:3]]
        assert F(1, 2) < images[0] < images[1] < 1
        assert all(abs(g - F(1, 2)) <= eps for g in images)

    @settings(max_examples=60, deadline=None)
    @given(fuzzy_sets(), fuzzy_sets())
    def test_symmetric_and_bounded(self, u, v):
        d = skorokhod_d0(u, v)
        assert d.value == skorokhod_d0(v, u).value
        assert d.value <= level_metric_dinf(u, v)
        assert d.value >= hausdorff(u.support, v.support)
        assert d.value >= hausdorff(alpha_cut(u, 1), alpha_cut(v, 1))
        assert d0_objective(u, v, d.witness) == d.upper


class TestBruteforce:
    def test_self(self, ce3):
        r = d0_bruteforce(ce3.u, ce3.u, F(1, 16))
        assert (r.lower, r.upper) == (0, 0)

    def test_counterexample_pair_bracketed(self, ce3):
        r = d0_bruteforce(ce3.u, ce3.v, F(1, 64))
        assert r.lower <= F(1, 4) <= r.upper
        assert r.upper - r.lower <= F(1, 64)

    def test_rejects_bad_resolution(self, ce3):
        with pytest.raises(ValueError):
            d0_bruteforce(ce3.u, ce3.v, 0)

    @settings(max_examples=30, deadline=None)
    @given(fuzzy_sets(max_levels=4), fuzzy_sets(max_levels=4))
    def test_refinement_never_worse(self, u, v):
        coarse = d0_bruteforce(u, v, F(1, 16))
        fine = d0_bruteforce(u, v, F(1, 32))
        assert fine.upper <= coarse.upper


class TestCertificate:
    def test_claim_one(self, ce3):
        c = d0_lower_bound_certificate(ce3.u, ce3.v, F(1, 4) - F(1, 1000))
        assert c is not None
        assert c.probe_level == F(3, 8)
        assert c.bound == F(1, 2)
        assert [b.cut for b in c.bands] == [U((F(7, 8), 1))]
        assert c.check(ce3.u, ce3.v)

    def test_none_for_equal_sets(self, ce3):
        assert d0_lower_bound_certificate(ce3.u, ce3.u, F(1, 100)) is None

    def test_claim_two_band(self, ce3):
        f = PLMap.linear(F(1, 2))
        fu, fv = zadeh_extend(f, ce3.u), zadeh_extend(f, ce3.v)
        c = d0_lower_bound_certificate(fu, fv, F(1, 4) - F(1, 1000))
        assert c.probe_level == F(3, 8)
        assert c.bound == F(1, 4)

    def test_tampered_certificate_fails_check(self, ce3):
        c = d0_lower_bound_certificate(ce3.u, ce3.v, F(1, 5))
        assert not c.check(ce3.u, ce3.u)

    def test_rejects_nonpositive_epsilon(self, ce3):
        with pytest.raises(ValueError):
            d0_lower_bound_certificate(ce3.u, ce3.v, 0)

    @settings(max_examples=60, deadline=None)
    @given(fuzzy_sets(), fuzzy_sets())
    def test_sound(self, u, v):
        d = skorokhod_d0(u, v).value
        for eps in (F(1, 16), F(1, 8), F(1, 4), F(1, 2)):
            cert = d0_lower_bound_certificate(u, v, eps)
            if cert is not None:
                assert d >= eps
