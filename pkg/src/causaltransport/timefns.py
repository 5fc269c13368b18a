"""Time functions on finite causal grounds.

A time function assigns every event a rational value in (0,1), strictly
increasing along base-relation edges.  A family of them induces a
multi-time ordering (pairs on which every member is non-decreasing).
This module builds a separating family that reproduces the causal
closure exactly, checks threshold and integral precedence conditions,
and carries the tanh-smoothing devices that approximate set indicators.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import NotStablyCausalError, ValidationError
from .measures import Measure, _as_fraction, scaled_weights
from .relations import (CausalGround, Relation, causal_closure, future_set,
                        is_antisymmetric)
from .transport import ORACLE_CAP, _check_cap, relate


class TimeFunction:
    """Rational event values in the open unit interval.

    When a ground is supplied, construction verifies strict increase
    along every base edge; callers constructing values by a method that
    guarantees monotonicity may omit it.
    """

    __slots__ = ("values",)

    def __init__(self, values: Iterable, ground: Optional[CausalGround] = None) -> None:
        vals = tuple(_as_fraction(v) for v in values)
        if not vals:
            raise ValidationError("time function needs at least one event")
        if any(not (0 < v < 1) for v in vals):
            raise ValidationError("time function values must lie strictly in (0,1)")
        if ground is not None:
            if ground.n != len(vals):
                raise ValidationError(
                    f"ground has {ground.n} events, time function {len(vals)}")
            for p, q in ground.base.pairs:
                if p != q and not vals[p] < vals[q]:
                    raise ValidationError(
                        f"not strictly increasing on base edge ({p}, {q})")
        self.values = vals

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, event: int) -> Fraction:
        return self.values[event]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeFunction):
            return NotImplemented
        return self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"TimeFunction({[str(v) for v in self.values]})"


def _int_values(t: TimeFunction) -> list[int]:
    # scale one function's values to integers; level sets are unchanged
    d = 1
    for v in t.values:
        d = lcm(d, v.denominator)
    return [int(v * d) for v in t.values]


def time_ordering(t: TimeFunction) -> Relation:
    """Total preorder: p before q whenever t(p) <= t(q)."""
    iv = np.asarray(_int_values(t), dtype=object)
    return Relation(t.n, iv[:, None] <= iv[None, :])


def multi_time_ordering(fns: Sequence[TimeFunction]) -> Relation:
    """Pairs on which every listed time function is non-decreasing."""
    fns = list(fns)
    if not fns:
        raise ValidationError("multi-time ordering needs at least one function")
    n = fns[0].n
    if any(t.n != n for t in fns):
        raise ValidationError("time functions cover different event counts")
    mat = np.ones((n, n), dtype=bool)
    for t in fns:
        mat &= time_ordering(t).matrix
    return Relation(n, mat)


class MultiTimeFamily:
    """Ordered list of time functions with their joint ordering cached."""

    __slots__ = ("fns", "ordering")

    def __init__(self, fns: Sequence[TimeFunction]) -> None:
        self.fns = tuple(fns)
        self.ordering = multi_time_ordering(self.fns)

    @property
    def n(self) -> int:
        return self.fns[0].n

    def __len__(self) -> int:
        return len(self.fns)

    def __iter__(self):
        return iter(self.fns)

    def __getitem__(self, index: int) -> TimeFunction:
        return self.fns[index]

    def __repr__(self) -> str:
        return f"MultiTimeFamily(n={self.n}, size={len(self.fns)})"


@dataclass(frozen=True)
class SmoothingParams:
    """Sharpness indices for the inner and outer smoothed steps."""

    k: int
    l: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.l < 1:
            raise ValidationError("smoothing indices must be positive integers")


def _family_fns(family) -> list[TimeFunction]:
    if isinstance(family, MultiTimeFamily):
        return list(family.fns)
    fns = list(family)
    if not fns:
        raise ValidationError("empty time function family")
    return fns


def _family_ordering(family) -> Relation:
    if isinstance(family, MultiTimeFamily):
        return family.ordering
    return multi_time_ordering(_family_fns(family))


def event_heights(ground: CausalGround) -> list[int]:
    """Longest base-edge path (edge count) ending at each event.

    Self loops are ignored; any other cycle means no time function can
    exist, so the ground is rejected.
    """
    n = ground.n
    succs = [[] for _ in range(n)]
    indeg = [0] * n
    for p, q in ground.base.pairs:
        if p != q:
            succs[p].append(q)
            indeg[q] += 1
    order = [p for p in range(n) if indeg[p] == 0]
    heights = [0] * n
    head = 0
    while head < len(order):
        p = order[head]
        head += 1
        for q in succs[p]:
            if heights[q] < heights[p] + 1:
                heights[q] = heights[p] + 1
            indeg[q] -= 1
            if indeg[q] == 0:
                order.append(q)
    if len(order) < n:
        raise NotStablyCausalError("base relation contains a directed cycle")
    return heights


def build_separating_family(ground: CausalGround) -> MultiTimeFamily:
    """One time function per event, jointly reproducing the causal closure.

    The function attached to event p is the indicator of p's closed
    future plus a small multiple of the path height, affinely squeezed
    into (0,1).  Membership jumps dominate height differences, so the
    family orders (p,q) exactly when the closure does, and no two
    distinct events share all values.
    """
    closure = causal_closure(ground)
    if not is_antisymmetric(closure):
        raise NotStablyCausalError(
            "causal closure has a nontrivial cycle; no time function exists")
    n = ground.n
    heights = event_heights(ground)
    eps = Fraction(1, 2 * (n + 1))
    scale = 1 + eps * n
    fns = []
    for p in range(n):
        fut = future_set(closure, (p,))
        vals = [(int(q in fut) + eps * heights[q] + eps / 2) / scale
                for q in range(n)]
        fns.append(TimeFunction(vals, ground=ground))
    return MultiTimeFamily(fns)


def up_set_indicator_functions(ground: CausalGround,
                               eps: Optional[Fraction] = None,
                               cap: int = ORACLE_CAP) -> list[TimeFunction]:
    """One time function per future-closed set of the causal closure.

    The function attached to an up-set X is the indicator of X plus a
    small multiple of the path height, squeezed into (0,1).  Its level
    sets recover X exactly, which makes the family exhaustive: threshold
    checks over it decide precedence outright.  eps defaults to
    1/(2(n+1)); any value with eps*(n-1) < 1 keeps the level sets exact.
    """
    closure = causal_closure(ground)
    if not is_antisymmetric(closure):
        raise NotStablyCausalError(
            "causal closure has a nontrivial cycle; no time function exists")
    n = ground.n
    _check_cap(n, cap, "up_set_indicator_functions")
    heights = event_heights(ground)
    if eps is None:
        eps = Fraction(1, 2 * (n + 1))
    if not (0 < eps and eps * (n - 1) < 1):
        raise ValidationError("eps must be positive with eps*(n-1) < 1")
    scale = 1 + eps * n
    fns = []
    for mask in _kernels.up_set_masks(closure.row_bits()):
        vals = [(((mask >> q) & 1) + eps * heights[q] + eps / 2) / scale
                for q in range(n)]
        fns.append(TimeFunction(vals, ground=ground))
    return fns


def check_threshold_condition(family, mu: Measure, nu: Measure,
                              open_halfline: bool) -> bool:
    """Super-level sets of every family member never lose mass.

    For each member t and each threshold at an attained value, the set
    {t > threshold} (or {t >= threshold} when open_halfline is false)
    must carry at least as much nu-mass as mu-mass.  Thresholds below
    the minimum give the full ground, where both masses are 1.
    """
    fns = _family_fns(family)
    _check_measures(fns[0].n, mu, nu)
    _, wmu, wnu = scaled_weights(mu, nu)
    values = [_int_values(t) for t in fns]
    return _kernels.threshold_condition(values, wmu, wnu, open_halfline)


def check_integral_condition(family, mu: Measure, nu: Measure,
                             battery_size: int = 128, seed: int = 7) -> bool:
    """Expected value of every tested time function must not drop.

    Tests each family member, then a deterministic battery of derived
    time functions: positive rational combinations of members composed
    with monotone rational reparameterizations of (0,1).  All integrals
    are exact rational sums.
    """
    fns = _family_fns(family)
    _check_measures(fns[0].n, mu, nu)
    _, wmu, wnu = scaled_weights(mu, nu)
    delta = [a - b for a, b in zip(wmu, wnu)]
    batches = [t.values for t in fns]
    batches.extend(_derived_battery(fns, battery_size, seed))
    values = [_fraction_row_to_ints(row) for row in batches]
    return _kernels.integral_condition(values, delta)


# monotone (0,1) -> (0,1) maps; polynomial so combined values keep one
# structural denominator per row instead of a per-event lcm blowup
_REPARAMS = (
    lambda x: x,
    lambda x: x * x,
    lambda x: 2 * x - x * x,
    lambda x: x * x * x,
    lambda x: 1 - (1 - x) ** 3,
)


def _derived_battery(fns: list[TimeFunction], size: int, seed: int):
    """Deterministic monotone combinations of family members."""
    rng = random.Random(seed)
    k = len(fns)
    out = []
    for _ in range(size):
        coeffs = [rng.randrange(0, 5) for _ in range(k)]
        if not any(coeffs):
            coeffs[rng.randrange(k)] = 1
        total = sum(coeffs)
        combo = [sum((c * t.values[p] for c, t in zip(coeffs, fns)),
                     Fraction(0)) / total
                 for p in range(fns[0].n)]
        reparam = _REPARAMS[rng.randrange(len(_REPARAMS))]
        out.append(tuple(reparam(v) for v in combo))
    return out


def _fraction_row_to_ints(row) -> list[int]:
    d = 1
    for v in row:
        d = lcm(d, v.denominator)
    return [int(v * d) for v in row]


def _check_measures(n: int, mu: Measure, nu: Measure) -> None:
    if not (n == mu.n == nu.n):
        raise ValidationError(
            f"sizes differ: time functions {n}, measures {mu.n} and {nu.n}")


def weighted_sum_functional(family) -> TimeFunction:
    """Single time function blending the family with weights 1/2, 1/4, ...

    Rescaled back into (0,1).  Events comparable under the family's
    joint ordering get equal values only when every member agrees, so
    for a separating family the blend is injective on comparable pairs.
    """
    fns = _family_fns(family)
    n = fns[0].n
    total = Fraction(0)
    acc = [Fraction(0)] * n
    w = Fraction(1)
    for t in fns:
        w /= 2
        total += w
        for p in range(n):
            acc[p] += w * t.values[p]
    return TimeFunction([v / total for v in acc])


def antisymmetry_verdict(ground: CausalGround, mu: Measure, nu: Measure) -> bool:
    """Mutual precedence over the causal closure forces equal measures.

    Decides both directions by flow; returns whether the implication
    (mu before nu and nu before mu => mu == nu) holds for this pair.
    On grounds with antisymmetric closure it provably always does.
    """
    closure = causal_closure(ground)
    if not is_antisymmetric(closure):
        raise NotStablyCausalError(
            "causal closure has a nontrivial cycle; antisymmetry does not apply")
    _check_measures(ground.n, mu, nu)
    forward = relate(closure, mu, nu).related
    backward = relate(closure, nu, mu).related
    if forward and backward:
        return mu == nu
    return True


def phi_smoothing(k: int, sign, x: float) -> float:
    """Smoothed unit step: 1/2 + 1/2*tanh(k*k*x + sign*k).

    Strictly increasing in x with values in (0,1); as k grows the plus
    variant tends to the indicator of x >= 0 and the minus variant to
    the indicator of x > 0.
    """
    if k < 1:
        raise ValidationError("smoothing index k must be a positive integer")
    if sign in (1, "+"):
        s = 1.0
    elif sign in (-1, "-"):
        s = -1.0
    else:
        raise ValidationError(f"sign must be +1 or -1, got {sign!r}")
    return 0.5 + 0.5 * math.tanh(k * k * float(x) + s * k)


def t_kl_indicator_demo(family, c: Iterable[int],
                        params: SmoothingParams) -> list[float]:
    """Smoothed membership profile of the future of c, one value per event.

    Inner product of smoothed steps compares an event's scores with each
    generator's; the outer smoothed step squashes the sum.  As k then l
    grow, the profile tends to the exact 0/1 indicator of the future of
    c under the family ordering.  Float evaluation; illustration only,
    decisions stay rational.
    """
    fns = _family_fns(family)
    n = fns[0].n
    targets = sorted(set(int(q) for q in c))
    if not targets:
        raise ValidationError("target event set must be nonempty")
    if targets[0] < 0 or targets[-1] >= n:
        raise ValidationError(f"target events outside 0..{n - 1}")
    scores = np.array([[float(t.values[p]) for t in fns] for p in range(n)])
    diffs = scores[:, None, :] - scores[None, targets, :]
    kk = float(params.k * params.k)
    inner = (0.5 + 0.5 * np.tanh(kk * diffs + params.k)).prod(axis=2).sum(axis=1)
    ll = float(params.l * params.l)
    return (0.5 + 0.5 * np.tanh(ll * inner - params.l)).tolist()


def monotone_phi_sampler(family, mu: Measure, nu: Measure,
                         trials: int, seed) -> bool:
    """Search for a componentwise-increasing functional that gains mass.

    Tests coordinate projections, minimum and maximum first, then the
    requested number of random functionals: exact piecewise-linear
    combinations alternating with float products of smoothed steps.
    Returns False on the first violated integral inequality.  When mu
    precedes nu under the family ordering, no monotone functional can
    gain mass, so the sampler returns True for every seed; float trials
    use a 1e-9 margin so rounding cannot contradict that.
    """
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    fns = _family_fns(family)
    _check_measures(fns[0].n, mu, nu)
    n = fns[0].n
    k = len(fns)
    delta = [mu.weights[p] - nu.weights[p] for p in range(n)]
    scores = [[t.values[p] for t in fns] for p in range(n)]

    def violated_exact(vals) -> bool:
        return sum((v * d for v, d in zip(vals, delta)), Fraction(0)) > 0

    for a in range(k):
        if violated_exact([scores[p][a] for p in range(n)]):
            return False
    if violated_exact([min(scores[p]) for p in range(n)]):
        return False
    if violated_exact([max(scores[p]) for p in range(n)]):
        return False

    rng = random.Random(seed)
    fscores = [[float(v) for v in row] for row in scores]
    for trial in range(trials):
        if trial % 2 == 0:
            # hinge combination: sum_a w_a * sum_j c_j * max(0, x_a - knot_j)
            vals = []
            w = [rng.randrange(0, 4) for _ in range(k)]
            knots = [(Fraction(rng.randrange(1, 64), 64),
                      rng.randrange(0, 4)) for _ in range(3)]
            for p in range(n):
                acc = Fraction(0)
                for a in range(k):
                    if w[a]:
                        for knot, c in knots:
                            if c and scores[p][a] > knot:
                                acc += w[a] * c * (scores[p][a] - knot)
                vals.append(acc)
            if violated_exact(vals):
                return False
        else:
            # positive combination of products of smoothed steps
            terms = [(rng.uniform(0.1, 1.0),
                      rng.randrange(1, 7),
                      [rng.uniform(0.0, 1.0) for _ in range(k)])
                     for _ in range(3)]
            acc = 0.0
            for p in range(n):
                phi = 0.0
                for c, kk, shifts in terms:
                    prod = c
                    for a in range(k):
                        prod *= phi_smoothing(kk, 1, fscores[p][a] - shifts[a])
                    phi += prod
                acc += phi * float(delta[p])
            if acc > 1e-9:
                return False
    return True


@dataclass(frozen=True)
class PrefixReport:
    """Feasibility of one measure pair over growing family prefixes."""

    verdicts: tuple[bool, ...]

    @property
    def non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.verdicts, self.verdicts[1:]))

    @property
    def full_feasible(self) -> bool:
        return self.verdicts[-1]


def prefix_monotonicity_check(family, mu: Measure, nu: Measure) -> PrefixReport:
    """Decide precedence over every prefix of the family.

    Each added function only shrinks the joint ordering, so the verdict
    sequence can switch from true to false at most once; the final entry
    is the verdict over the whole family ordering.
    """
    fns = _family_fns(family)
    _check_measures(fns[0].n, mu, nu)
    verdicts = []
    for klen in range(1, len(fns) + 1):
        ordering = multi_time_ordering(fns[:klen])
        verdicts.append(relate(ordering, mu, nu).related)
    return PrefixReport(tuple(verdicts))
