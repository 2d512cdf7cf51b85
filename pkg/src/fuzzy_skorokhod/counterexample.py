"""A contraction whose Zadeh extension does not shrink Skorokhod distances.

The fuzzy sets ``u`` and ``v`` on [0, 1] have infinitely many levels
accumulating at 1. :func:`build_instance` truncates them after ``depth``
levels: the last band of ``u`` carries the next cut of its pattern, and
likewise for ``v``. The truncation leaves the probe-level lower bound and
the upper-bound reparameterization untouched, and the verifiers below
recompute every value rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bruteforce import d0_bruteforce
from .core import IntervalUnion, RationalLike, StepFuzzySet, as_rational
from .dynamics import PLMap, contraction_ratio_report, union_extension, zadeh_extend
from .metrics import (
    LowerBoundCertificate,
    Reparam,
    apply_reparam,
    d0_lower_bound_certificate,
    level_metric_dinf,
    reparam_sup_deviation,
    skorokhod_d0,
)

__all__ = [
    "CounterexampleInstance",
    "VerificationReport",
    "build_instance",
    "build_t",
    "sequence_checks",
    "verify_all",
    "verify_claim1",
    "verify_claim2",
    "verify_remark9",
]

A_DEFAULT = Fraction(3, 8)
EXPECTED_D0 = Fraction(1, 4)
QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


def build_t(a: RationalLike = A_DEFAULT) -> Reparam:
    """Three-segment reparameterization moving ``a - 1/4`` up to ``a``.

    Slope ``a / (a - 1/4)`` on ``[0, a - 1/4]``, slope 1/2 up to
    ``a + 1/4`` and the identity afterwards.
    """
    a = as_rational(a)
    if not QUARTER < a < 3 * QUARTER:
        raise ValueError(f"a must lie strictly between 1/4 and 3/4, got {a}")
    return Reparam(
        (
            (Fraction(0), Fraction(0)),
            (a - QUARTER, a),
            (a + QUARTER, a + QUARTER),
            (Fraction(1), Fraction(1)),
        )
    )


@dataclass(frozen=True)
class CounterexampleInstance:
    a: Fraction
    depth: int
    t: Reparam
    u: StepFuzzySet
    v: StepFuzzySet
    a_seq: tuple  # a_0 .. a_{N+2}
    b_seq: tuple  # b_0 .. b_{N+2}, b_n = t^{-1}(a_n)
    a_prime: tuple  # a'_0 .. a'_{N+2}
    b_prime: tuple  # b'_0 .. b'_{N+2}


def _tail_sequence(first: Fraction, second: Fraction, length: int, a: Fraction) -> list:
    # x_0 = first, x_1 = second, x_2 = x_1 + (1 - (a + 1/2)) / 2,
    # x_{n+1} = x_n + (1 - (a + 1/2)) / 2**n for n >= 2
    gap = 1 - (a + HALF)
    seq = [first, second, second + gap / 2]
    n = 2
    while len(seq) < length:
        seq.append(seq[n] + gap / 2**n)
        n += 1
    return seq[:length]


def build_instance(depth: int, a: RationalLike = A_DEFAULT) -> CounterexampleInstance:
    """Truncated counterexample pair ``(u_N, v_N)`` with ``N = depth``.

    Level structure of ``u_N``: ``(0, a_0] -> [a'_0, 1]``, then
    ``(a_n, a_{n+1}] -> [a'_{n+1}, 1]`` for ``n < N`` and the top band
    ``(a_N, 1] -> [a'_{N+1}, 1]``. For ``v_N``: ``(0, a - 1/4] -> [b'_0, 1]``,
    ``(a - 1/4, a + 1/4] -> [b'_1, 1]``, ``(a + 1/4, b_1] -> [b'_2, 1]``,
    ``(b_n, b_{n+1}] -> [b'_{n+2}, 1]`` and the top band
    ``(b_N, 1] -> [b'_{N+2}, 1]``.
    """
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 2:
        raise ValueError(f"depth must be an integer >= 2, got {depth!r}")
    a = as_rational(a)
    if not QUARTER < a < HALF:
        # a >= 1/2 makes b_1 <= a + 1/4 and v stops being a valid step set
        raise ValueError(f"a must lie strictly between 1/4 and 1/2, got {a}")
    t = build_t(a)
    t_inv = t.inverse()
    N = depth
    length = N + 3

    a_seq = [a]
    for n in range(length - 1):
        a_seq.append(a_seq[n] + (1 - a) / 2 ** (n + 1))
    b_seq = [t_inv(x) for x in a_seq]
    a_prime = _tail_sequence(a, a + HALF, length, a)
    b_prime = _tail_sequence(a - QUARTER, a + HALF, length, a)

    def ray(x: Fraction) -> IntervalUnion:
        return IntervalUnion(((x, Fraction(1)),))

    u_levels = [(a_seq[n], ray(a_prime[n])) for n in range(N + 1)]
    u_levels.append((Fraction(1), ray(a_prime[N + 1])))
    v_levels = [
        (a - QUARTER, ray(b_prime[0])),
        (a + QUARTER, ray(b_prime[1])),
    ]
    v_levels += [(b_seq[n], ray(b_prime[n + 1])) for n in range(1, N + 1)]
    v_levels.append((Fraction(1), ray(b_prime[N + 2])))

    u = StepFuzzySet.from_levels(u_levels, support=ray(a))
    v = StepFuzzySet.from_levels(v_levels, support=ray(a - QUARTER))
    return CounterexampleInstance(
        a, N, t, u, v, tuple(a_seq), tuple(b_seq), tuple(a_prime), tuple(b_prime)
    )


def sequence_checks(inst: CounterexampleInstance) -> dict:
    """Exact checks of the sequence identities the construction relies on."""
    a, N = inst.a, inst.depth
    A, B, Ap, Bp = inst.a_seq, inst.b_seq, inst.a_prime, inst.b_prime

    def increasing(seq):
        return all(x < y for x, y in zip(seq, seq[1:]))

    gap = 1 - (a + HALF)
    return {
        "b_n == a_n for 1 <= n <= N": all(B[n] == A[n] for n in range(1, N + 1)),
        "b_1 > a + 1/4": B[1] > a + QUARTER,
        "b_0 == a - 1/4": B[0] == a - QUARTER,
        "sequences increasing": all(map(increasing, (A, B, Ap, Bp))),
        "sequences below 1": all(x < 1 for seq in (A, B, Ap, Bp) for x in seq),
        "1 - a_N == (1 - a) / 2^N": 1 - A[N] == (1 - a) / 2**N,
        "a'_n == b'_n for n >= 1": all(Ap[n] == Bp[n] for n in range(1, len(Ap))),
        # the tail recursion, stated for n >= 2, also reproduces the listed a'_2 at n = 1
        "a'_2 follows the tail recursion at n = 1": Ap[2] == Ap[1] + gap / 2,
        "top-band cut gap below 1/4": abs(Ap[N + 1] - Bp[N + 2]) < QUARTER,
    }


@dataclass
class VerificationReport:
    claim: str
    depth: int
    value: Fraction
    expected: Fraction
    passed: bool
    lam: Optional[Fraction] = None
    witness: Optional[Reparam] = None
    certificate: Optional[LowerBoundCertificate] = None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lam = "" if self.lam is None else f" lambda={self.lam}"
        return (
            f"{status} {self.claim} depth={self.depth}{lam} "
            f"value={self.value} expected={self.expected}"
        )


def _probe_epsilon(depth: int) -> Fraction:
    return QUARTER - Fraction(1, 2 ** (depth + 4))


def verify_claim1(inst: CounterexampleInstance) -> VerificationReport:
    """``d_0(u_N, v_N) = 1/4``, checked three ways.

    The exact solver must return 1/4, the grid oracle at resolution
    ``2^-(N+3)`` must bracket it, and a probe certificate at
    ``1/4 - 2^-(N+4)`` must exist at level ``a``.
    """
    u, v, N = inst.u, inst.v, inst.depth
    report = skorokhod_d0(u, v)
    h = Fraction(1, 2 ** (N + 3))
    oracle = d0_bruteforce(u, v, h)
    cert = d0_lower_bound_certificate(u, v, _probe_epsilon(N))
    t_dev = reparam_sup_deviation(inst.t)
    t_dinf = level_metric_dinf(u, apply_reparam(inst.t, v))
    checks = {
        "exact value": report.value == EXPECTED_D0,
        "oracle brackets": oracle.lower <= EXPECTED_D0 <= oracle.upper,
        "certificate at a": cert is not None and cert.probe_level == inst.a and cert.check(u, v),
        "t is a witness": max(t_dev, t_dinf) == EXPECTED_D0,
    }
    return VerificationReport(
        claim="claim1",
        depth=N,
        value=report.value,
        expected=EXPECTED_D0,
        passed=all(checks.values()),
        witness=report.witness,
        certificate=cert,
        details={
            "checks": checks,
            "oracle": (oracle.lower, oracle.upper),
            "resolution": h,
            "t_deviation": t_dev,
            "t_dinf": t_dinf,
            "certificate_bound": None if cert is None else cert.bound,
        },
    )


def verify_claim2(inst: CounterexampleInstance, lam: RationalLike) -> VerificationReport:
    """``d_0(f(u), f(v)) = d_0(u, v) = 1/4`` for ``f(x) = lam * x``."""
    lam = as_rational(lam)
    if not HALF <= lam < 1:
        raise ValueError(f"lambda must lie in [1/2, 1), got {lam}")
    u, v, N = inst.u, inst.v, inst.depth
    f = PLMap.linear(lam)
    fu, fv = zadeh_extend(f, u), zadeh_extend(f, v)
    base = skorokhod_d0(u, v).value
    report = skorokhod_d0(fu, fv)
    cert = d0_lower_bound_certificate(fu, fv, _probe_epsilon(N))
    ratio = contraction_ratio_report(f, [(u, v)], metric="d0")
    checks = {
        "exact value": report.value == EXPECTED_D0,
        "certificate band is lambda/2": cert is not None
        and cert.probe_level == inst.a
        and cert.bound == lam / 2
        and cert.check(fu, fv),
        "no larger than d0(u, v)": report.value <= base,
        "ratio is 1": ratio.max_ratio == 1,
    }
    return VerificationReport(
        claim="claim2",
        depth=N,
        lam=lam,
        value=report.value,
        expected=EXPECTED_D0,
        passed=all(checks.values()),
        witness=report.witness,
        certificate=cert,
        details={
            "checks": checks,
            "d0_uv": base,
            "ratio": ratio.max_ratio,
            "certificate_bound": None if cert is None else cert.bound,
        },
    )


def remark9_maps() -> list:
    return [PLMap.linear(HALF), PLMap.linear(Fraction(3, 4))]


def verify_remark9(inst: CounterexampleInstance) -> VerificationReport:
    """``d_0(F(u), F(v)) >= 1/4`` for the union extension of ``x/2`` and ``3x/4``."""
    u, v, N = inst.u, inst.v, inst.depth
    maps = remark9_maps()
    Fu, Fv = union_extension(maps, u), union_extension(maps, v)
    report = skorokhod_d0(Fu, Fv)
    cert = d0_lower_bound_certificate(Fu, Fv, _probe_epsilon(N))
    checks = {
        "value at least 1/4": report.value >= EXPECTED_D0,
        "certificate band is 1/4": cert is not None
        and cert.probe_level == inst.a
        and cert.bound == QUARTER
        and cert.check(Fu, Fv),
    }
    return VerificationReport(
        claim="remark9",
        depth=N,
        value=report.value,
        expected=EXPECTED_D0,
        passed=all(checks.values()),
        witness=report.witness,
        certificate=cert,
        details={
            "checks": checks,
            "certificate_bound": None if cert is None else cert.bound,
        },
    )


def verify_all(depth: int, lam: RationalLike = HALF) -> list:
    inst = build_instance(depth)
    return [verify_claim1(inst), verify_claim2(inst, lam), verify_remark9(inst)]
