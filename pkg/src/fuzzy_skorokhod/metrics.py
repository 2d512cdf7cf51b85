"""Hausdorff, level-wise and Skorokhod distances between step fuzzy sets.

All results are exact Fractions. The Skorokhod distance is found by a
bottleneck dynamic program over the ways the reparameterized breakpoints
of ``v`` can interleave with the breakpoints of ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple

from .core import IntervalUnion, RationalLike, StepFuzzySet, alpha_cut, as_rational
from .piecewise import Knot, evaluate, parse_knots

__all__ = [
    "BandComparison",
    "DistanceReport",
    "LowerBoundCertificate",
    "Reparam",
    "apply_reparam",
    "d0_lower_bound_certificate",
    "d0_objective",
    "directed_hausdorff",
    "hausdorff",
    "level_metric_dinf",
    "merged_bands",
    "reparam_sup_deviation",
    "skorokhod_d0",
]

DEFAULT_EPS = Fraction(1, 2**20)


def directed_hausdorff(A: IntervalUnion, B: IntervalUnion) -> Fraction:
    """``max_{x in A} dist(x, B)``.

    ``dist(., B)`` is piecewise linear with peaks only at midpoints of the
    gaps of ``B``, so on ``A`` it is maximal at an endpoint of ``A`` or at
    one of those midpoints.
    """
    if A.is_empty() or B.is_empty():
        raise ValueError("Hausdorff distance needs non-empty sets")
    candidates = A.endpoints()
    for g_lo, g_hi in B.gaps():
        mid = (g_lo + g_hi) / 2
        if mid in A:
            candidates.append(mid)
    return max(B.distance_to(x) for x in candidates)


def hausdorff(A: IntervalUnion, B: IntervalUnion) -> Fraction:
    return max(directed_hausdorff(A, B), directed_hausdorff(B, A))


@dataclass(frozen=True)
class Reparam:
    """Strictly increasing piecewise-linear homeomorphism of [0, 1].

    Knots run from ``(0, 0)`` to ``(1, 1)``; both coordinates strictly
    increase.
    """

    knots: Tuple[Knot, ...]

    def __post_init__(self) -> None:
        knots = parse_knots(self.knots)
        object.__setattr__(self, "knots", knots)
        if knots[0] != (0, 0) or knots[-1] != (1, 1):
            raise ValueError("a reparameterization must run from (0, 0) to (1, 1)")
        for (_, y0), (_, y1) in zip(knots, knots[1:]):
            if y1 <= y0:
                raise ValueError("a reparameterization must be strictly increasing")

    @classmethod
    def from_knots(cls, knots: Sequence[Tuple[RationalLike, RationalLike]]) -> "Reparam":
        return cls(tuple(knots))  # type: ignore[arg-type]

    @classmethod
    def identity(cls) -> "Reparam":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self.knots, as_rational(x))

    def inverse(self) -> "Reparam":
        return Reparam(tuple((y, x) for x, y in self.knots))


def reparam_sup_deviation(t: Reparam) -> Fraction:
    # t - id is piecewise linear, so |t - id| peaks at a knot
    return max(abs(y - x) for x, y in t.knots)


def apply_reparam(t: Reparam, v: StepFuzzySet) -> StepFuzzySet:
    """The fuzzy set ``t o v``, whose alpha-cut is v's cut at ``t^{-1}(alpha)``."""
    return StepFuzzySet(tuple((t(alpha), cut) for alpha, cut in v.levels), v.support)


def merged_bands(
    u: StepFuzzySet, v: StepFuzzySet
) -> Iterator[Tuple[Fraction, Fraction, int, int]]:
    """Yield ``(lo, hi, k_u, k_v)`` for each band of the merged level partition.

    On ``(lo, hi]`` the cut of ``u`` is level ``k_u`` and the cut of ``v`` is
    level ``k_v`` (both 0-based).
    """
    a, b = u.alphas, v.alphas
    i = j = 0
    lo = Fraction(0)
    while i < len(a) and j < len(b):
        hi = min(a[i], b[j])
        yield lo, hi, i, j
        if a[i] == hi:
            i += 1
        if b[j] == hi:
            j += 1
        lo = hi


def level_metric_dinf(
    u: StepFuzzySet,
    v: StepFuzzySet,
    *,
    include_support: bool = True,
    check: bool = False,
) -> Fraction:
    """Supremum over levels of the Hausdorff distance between alpha-cuts.

    Both cut maps are constant on each merged band, so the supremum over
    ``(0, 1]`` is a finite maximum. With ``include_support`` the 0-cuts are
    compared as well. ``check=True`` computes both variants and raises
    ``ArithmeticError`` if they disagree, which cannot happen when each
    support is the closure of its cuts.
    """
    cache: dict[Tuple[int, int], Fraction] = {}
    bands = Fraction(0)
    for _, _, i, j in merged_bands(u, v):
        if (i, j) not in cache:
            cache[i, j] = hausdorff(u.levels[i][1], v.levels[j][1])
        bands = max(bands, cache[i, j])
    if not (include_support or check):
        return bands
    full = max(bands, hausdorff(u.support, v.support))
    if check and full != bands:
        raise ArithmeticError(
            f"support comparison raises d_inf from {bands} to {full}; "
            "a support is larger than the closure of its cuts"
        )
    return full if include_support else bands


@dataclass(frozen=True)
class BandComparison:
    """One band of ``v`` inside a certificate window, against the probe cut."""

    level_index: int
    band: Tuple[Fraction, Fraction]
    cut: IntervalUnion
    distance: Fraction


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Proof that ``d_0(u, v) >= epsilon`` from a single probe level.

    Any reparameterization ``t`` within ``epsilon`` of the identity sends
    the probe level ``alpha*`` back to some level in the open window
    ``(alpha* - epsilon, alpha* + epsilon)``. Every band of ``v`` meeting
    that window has a cut at Hausdorff distance at least ``bound`` from
    ``[u]_{alpha*}``, and ``bound >= epsilon``.
    """

    probe_level: Fraction
    epsilon: Fraction
    window: Tuple[Fraction, Fraction]
    probe_cut: IntervalUnion
    bands: Tuple[BandComparison, ...]
    bound: Fraction

    def check(self, u: StepFuzzySet, v: StepFuzzySet) -> bool:
        """Re-derive the certificate from ``u`` and ``v``."""
        fresh = _probe(u, v, self.probe_level, self.epsilon)
        return fresh == self and self.bound >= self.epsilon > 0


def _probe(
    u: StepFuzzySet, v: StepFuzzySet, probe: Fraction, epsilon: Fraction
) -> LowerBoundCertificate:
    lo = max(Fraction(0), probe - epsilon)
    hi = min(Fraction(1), probe + epsilon)
    probe_cut = alpha_cut(u, probe)
    rows = []
    for k in range(len(v.levels)):
        b_lo, b_hi = v.band(k)
        if b_lo < hi and b_hi > lo:
            cut = v.levels[k][1]
            rows.append(BandComparison(k, (b_lo, b_hi), cut, hausdorff(probe_cut, cut)))
    bound = min(r.distance for r in rows)
    return LowerBoundCertificate(probe, epsilon, (lo, hi), probe_cut, tuple(rows), bound)


def d0_lower_bound_certificate(
    u: StepFuzzySet, v: StepFuzzySet, epsilon: RationalLike
) -> Optional[LowerBoundCertificate]:
    """Search the levels of ``u`` for a probe certifying ``d_0(u, v) >= epsilon``.

    Returns the probe with the largest window bound (lowest level on ties),
    or ``None`` when no probe reaches ``epsilon``. ``None`` is not a proof
    that ``d_0 < epsilon``.
    """
    epsilon = as_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    best: Optional[LowerBoundCertificate] = None
    for probe in u.alphas:
        cert = _probe(u, v, probe, epsilon)
        if best is None or cert.bound > best.bound:
            best = cert
    if best is not None and best.bound >= epsilon:
        return best
    return None


@dataclass(frozen=True)
class DistanceReport:
    """Result of a Skorokhod distance computation.

    ``lower <= d_0 <= upper``. For the exact solver ``value`` is the exact
    infimum (equal to ``lower``) and ``upper`` is the objective re-evaluated
    at ``witness``; the two coincide whenever the infimum is attained.
    """

    lower: Fraction
    upper: Fraction
    method: str
    value: Optional[Fraction] = None
    witness: Optional[Reparam] = None
    certificate: Optional[LowerBoundCertificate] = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def attained(self) -> bool:
        return self.witness is not None and self.value == self.upper


def d0_objective(u: StepFuzzySet, v: StepFuzzySet, t: Reparam) -> Fraction:
    """``max(sup|t - id|, d_inf(u, t o v))`` evaluated from scratch."""
    return max(reparam_sup_deviation(t), level_metric_dinf(u, apply_reparam(t, v)))


# Positions of a reparameterized breakpoint relative to the levels
# 0 = a_0 < a_1 < ... < a_m = 1 of u: position 2i is "exactly a_i" and
# position 2i - 1 is "strictly inside (a_{i-1}, a_i)".


def _box(alphas: Sequence[Fraction], s: int) -> Tuple[Fraction, Fraction]:
    if s % 2 == 0:
        return alphas[s // 2], alphas[s // 2]
    return alphas[(s - 1) // 2], alphas[(s + 1) // 2]


def _clamp(x: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return lo if x < lo else hi if x > hi else x


def skorokhod_d0(
    u: StepFuzzySet, v: StepFuzzySet, *, eps: RationalLike = DEFAULT_EPS
) -> DistanceReport:
    """Exact Skorokhod distance between two step fuzzy sets.

    ``d_0 = inf_t max(sup|t - id|, d_inf(u, t o v))``. The objective depends
    on ``t`` only through the images ``g_j = t(b_j)`` of the levels of ``v``,
    and the piecewise-linear ``t`` through those images has the smallest
    deviation among all homeomorphisms that share them.

    Each ``g_j`` either sits on a level of ``u`` or strictly between two.
    Fixing these positions fixes which cuts are compared (a bottleneck
    edge cost), while the best deviation for the positions is the distance
    from ``b_j`` to the closure of its position (a node cost, separable
    because clamping an increasing sequence keeps it increasing). A
    bottleneck shortest path over positions gives the exact infimum. A
    second pass picks, among optimal paths, the smallest total
    displacement so witnesses are deterministic.

    The infimum need not be attained; the witness is then within ``eps``.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    alphas = (Fraction(0),) + u.alphas
    betas = (Fraction(0),) + v.alphas
    m, n = len(u.levels), len(v.levels)
    top = 2 * m

    # cell[j][lo][hi] = max over u-levels i in lo..hi (1-based) of d_H(U_i, V_j)
    dist = [[hausdorff(uc, vc) for vc in v.cuts] for uc in u.cuts]
    cell = []
    for j in range(n):
        table = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
        for lo in range(1, m + 1):
            running = Fraction(0)
            for hi in range(lo, m + 1):
                running = max(running, dist[hi - 1][j])
                table[lo][hi] = running
        cell.append(table)

    floor = hausdorff(u.support, v.support)

    def edge(p: int, q: int, j: int) -> Fraction:
        # v-band j spans (g_{j-1}, g_j]; it meets u-levels floor(p/2)+1 .. ceil(q/2)
        return cell[j - 1][p // 2 + 1][(q + 1) // 2]

    def node(j: int, s: int) -> Fraction:
        lo, hi = _box(alphas, s)
        return abs(betas[j] - _clamp(betas[j], lo, hi))

    def states(j: int) -> range:
        if j == 0:
            return range(0, 1)
        if j == n:
            return range(top, top + 1)
        return range(1, top)

    def moves(p: int, q: int) -> bool:
        return p < q or (p == q and p % 2 == 1)

    # pass 1: bottleneck values
    best: dict[int, Fraction] = {0: floor}
    for j in range(1, n + 1):
        nxt: dict[int, Fraction] = {}
        for q in states(j):
            nq = node(j, q)
            cand = None
            for p, fp in best.items():
                if not moves(p, q):
                    continue
                c = max(fp, edge(p, q, j), nq)
                if cand is None or c < cand:
                    cand = c
            if cand is not None:
                nxt[q] = cand
        best = nxt
    value = best[top]

    # pass 2: minimum total displacement among paths whose every cost <= value
    total: dict[int, Fraction] = {0: Fraction(0)}
    parents: list[dict[int, int]] = [{}]
    for j in range(1, n + 1):
        nxt_total: dict[int, Fraction] = {}
        parent: dict[int, int] = {}
        for q in states(j):
            nq = node(j, q)
            if nq > value:
                continue
            for p in sorted(total):
                if not moves(p, q) or edge(p, q, j) > value:
                    continue
                c = total[p] + nq
                if q not in nxt_total or c < nxt_total[q]:
                    nxt_total[q] = c
                    parent[q] = p
        total = nxt_total
        parents.append(parent)

    positions = [top]
    for j in range(n, 0, -1):
        positions.append(parents[j][positions[-1]])
    positions.reverse()  # positions[j] is the position of g_j, j = 0..n

    witness = _realize_within(alphas, betas, positions, value)
    upper = None if witness is None else d0_objective(u, v, witness)
    if upper is None or upper != value:
        witness = _realize(alphas, betas, positions, eps)
        upper = d0_objective(u, v, witness)
    if not value <= upper <= value + eps:
        raise ArithmeticError(f"witness objective {upper} escapes [{value}, {value + eps}]")
    return DistanceReport(
        lower=value,
        upper=upper,
        method="exact-dp",
        value=value,
        witness=witness,
        details={"positions": positions, "displacement_total": total[top]},
    )


def _realize(
    alphas: Sequence[Fraction],
    betas: Sequence[Fraction],
    positions: Sequence[int],
    eps: Fraction,
) -> Reparam:
    """Turn optimal positions into a strictly increasing reparameterization.

    Targets are the clamped breakpoints. Runs of breakpoints sharing an open
    position are blended toward evenly spaced interior points, which moves
    each by at most ``eps`` and only when the targets are not already
    strictly increasing inside the open box.
    """
    n = len(betas) - 1
    gammas: list[Fraction] = [Fraction(0)] * (n + 1)
    gammas[n] = Fraction(1)
    j = 1
    while j < n:
        s = positions[j]
        lo, hi = _box(alphas, s)
        if s % 2 == 0:
            gammas[j] = lo
            j += 1
            continue
        run = [j]
        while run[-1] + 1 < n and positions[run[-1] + 1] == s:
            run.append(run[-1] + 1)
        targets = [_clamp(betas[k], lo, hi) for k in run]
        strict = all(lo < x < hi for x in targets) and all(
            a < b for a, b in zip(targets, targets[1:])
        )
        eta = Fraction(0) if strict else min(eps, Fraction(1, 2))
        for r, (k, x) in enumerate(zip(run, targets), start=1):
            spread = lo + (hi - lo) * r / (len(run) + 1)
            gammas[k] = (1 - eta) * x + eta * spread
        j = run[-1] + 1
    return Reparam(tuple(zip(betas, gammas)))


def _simple_between(lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    """Dyadic rational with the smallest denominator in the open interval (lo, hi)."""
    if lo >= hi:
        return None
    d = 1
    while True:
        x = Fraction(lo.numerator * d // lo.denominator + 1, d)
        if x < hi:
            return x
        d *= 2


def _realize_within(
    alphas: Sequence[Fraction],
    betas: Sequence[Fraction],
    positions: Sequence[int],
    budget: Fraction,
) -> Optional[Reparam]:
    """Try to attain the optimum exactly, using the full deviation budget.

    Each image may move anywhere within ``budget`` of its breakpoint, so
    there is usually room to pick simple, strictly increasing points.
    Returns ``None`` when the greedy choice runs out of room.
    """
    n = len(betas) - 1
    gammas = [Fraction(0)]
    for j in range(1, n):
        s = positions[j]
        lo, hi = _box(alphas, s)
        if s % 2 == 0:
            gammas.append(lo)
            continue
        left = max(lo, betas[j] - budget, gammas[-1])
        right = min(hi, betas[j] + budget)
        target = _clamp(betas[j], lo, hi)
        if left < target < hi and target > gammas[-1]:
            gammas.append(target)
            continue
        # open on both sides unless the bound comes from the budget alone
        pick = _simple_between(left, (left + right) / 2) if left < right else None
        if pick is None and left == betas[j] - budget and left > max(lo, gammas[-1]):
            pick = left
        if pick is None:
            return None
        gammas.append(pick)
    gammas.append(Fraction(1))
    if any(a >= b for a, b in zip(gammas, gammas[1:])):
        return None
    return Reparam(tuple(zip(betas, gammas)))
