from fractions import Fraction as F

import pytest

from fuzzy_skorokhod.core import IntervalUnion, alpha_cut, membership
from fuzzy_skorokhod.counterexample import (
    build_instance,
    build_t,
    sequence_checks,
    verify_claim1,
    verify_claim2,
    verify_remark9,
)
from fuzzy_skorokhod.metrics import reparam_sup_deviation


def ray(x):
    return IntervalUnion(((F(x), F(1)),))


class TestBuildT:
    def test_knots(self):
        t = build_t(F(3, 8))
        assert t.knots == ((0, 0), (F(1, 8), F(3, 8)), (F(5, 8), F(5, 8)), (1, 1))

    def test_values(self):
        t = build_t(F(3, 8))
        assert t(F(1, 8)) == F(3, 8)
        assert t(F(5, 8)) == F(5, 8)
        assert t(F(1, 16)) == F(3, 16)
        assert t(F(3, 8)) == F(1, 2) * F(3, 8) + F(5, 16)

    def test_deviation(self):
        assert reparam_sup_deviation(build_t(F(3, 8))) == F(1, 4)

    @pytest.mark.parametrize("a", [F(1, 4), F(3, 4), F(0), 1])
    def test_rejects_bad_a(self, a):
        with pytest.raises(ValueError):
            build_t(a)


class TestInstance:
    def test_sequences_depth_three(self, ce3):
        assert ce3.a_seq[1:4] == (F(11, 16), F(27, 32), F(59, 64))
        assert ce3.b_prime[:3] == (F(1, 8), F(7, 8), F(15, 16))
        assert ce3.b_seq[1] == F(11, 16)

    @pytest.mark.parametrize("depth", range(2, 11))
    def test_sequence_identities(self, depth):
        checks = sequence_checks(build_instance(depth))
        assert all(checks.values()), checks

    @pytest.mark.parametrize("depth", [0, 1])
    def test_rejects_shallow(self, depth):
        with pytest.raises(ValueError):
            build_instance(depth)

    def test_rejects_a_without_room(self):
        with pytest.raises(ValueError):
            build_instance(3, a=F(1, 2))

    @pytest.mark.parametrize("depth", [2, 5, 9])
    def test_probe_cuts(self, depth):
        inst = build_instance(depth)
        assert alpha_cut(inst.u, F(3, 8)) == ray(F(3, 8))
        assert alpha_cut(inst.v, F(3, 8)) == ray(F(7, 8))

    def test_listed_properties(self):
        inst = build_instance(6)
        u, v, a, N = inst.u, inst.v, inst.a, inst.depth
        A, B, Ap, Bp = inst.a_seq, inst.b_seq, inst.a_prime, inst.b_prime
        quarter = F(1, 4)
        # the top level holds 1 (a truncated stand-in for the singleton {1})
        assert membership(u, 1) == membership(v, 1) == 1
        assert u.support == ray(a)
        assert v.support == ray(a - quarter)
        levels = [F(k, 4096) for k in range(1, 4097)]
        for x in levels:
            if x <= a:
                assert alpha_cut(u, x) == ray(a)
            if x <= a - quarter:
                assert alpha_cut(v, x) == ray(a - quarter)
            elif x <= a + quarter:
                assert alpha_cut(v, x) == ray(a + F(1, 2))
            elif x <= B[1]:
                assert alpha_cut(v, x) == ray(Bp[2])
        for n in range(N):
            for x in levels:
                if A[n] < x <= A[n + 1]:
                    assert alpha_cut(u, x) == ray(Ap[n + 1])
        for n in range(1, N):
            for x in levels:
                if B[n] < x <= B[n + 1]:
                    assert alpha_cut(v, x) == ray(Bp[n + 2])

    @pytest.mark.parametrize("depth", [2, 4, 7])
    def test_monotone_membership(self, depth):
        inst = build_instance(depth)
        xs = [F(k, 1024) for k in range(1025)]
        for w in (inst.u, inst.v):
            values = [membership(w, x) for x in xs]
            assert values == sorted(values)

    def test_membership_values(self, ce3):
        assert membership(ce3.u, F(7, 8)) == F(11, 16)
        assert membership(ce3.u, F(1, 2)) == F(3, 8)
        assert membership(ce3.v, F(15, 16)) == F(11, 16)


class TestVerifiers:
    def test_claim1_depth3(self, ce3):
        r = verify_claim1(ce3)
        assert r.passed, r.details
        assert r.value == F(1, 4)
        assert r.details["t_dinf"] == F(1, 4)
        assert r.certificate.bound == F(1, 2)

    @pytest.mark.parametrize("lam, band", [(F(1, 2), F(1, 4)), (F(3, 4), F(3, 8))])
    def test_claim2(self, ce3, lam, band):
        r = verify_claim2(ce3, lam)
        assert r.passed, r.details
        assert r.certificate.bound == band
        assert r.details["ratio"] == 1

    @pytest.mark.parametrize("lam", [F(1, 4), F(1), F(3, 2)])
    def test_claim2_rejects_lambda(self, ce3, lam):
        with pytest.raises(ValueError):
            verify_claim2(ce3, lam)

    def test_remark9(self, ce3):
        r = verify_remark9(ce3)
        assert r.passed, r.details
        assert r.certificate.bound == F(1, 4)
        assert r.certificate.probe_cut == IntervalUnion(((F(3, 16), F(3, 4)),))

    def test_depth_eight(self):
        inst = build_instance(8)
        assert verify_claim1(inst).passed
        assert verify_claim2(inst, F(3, 4)).passed
