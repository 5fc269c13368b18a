"""Seeded generators for test grounds, measures, and time functions.

Everything here is a pure function of its parameters and seed: random
acyclic grounds, deliberately cyclic counterexample grounds, point
samples from a 1+1 dimensional flat spacetime with the closed light
cone order, and random rational measures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .measures import Measure
from .relations import CausalGround
from .timefns import TimeFunction, event_heights

# coordinates live on this grid so cone comparisons stay exact
_GRID = 1 << 16


def gen_random_dag(n: int, edge_density: float, seed) -> CausalGround:
    """Acyclic ground: edges point forward along a random permutation."""
    if n < 1:
        raise ValidationError("need at least one event")
    if not (0 <= edge_density <= 1):
        raise ValidationError("edge density must lie in [0, 1]")
    rng = random.Random(seed)
    order = rng.sample(range(n), n)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_density:
                edges.append((order[i], order[j]))
    return CausalGround.from_edges(n, edges)


def gen_cyclic(n: int, seed) -> CausalGround:
    """Ground whose base contains a directed ring, breaking antisymmetry."""
    if n < 2:
        raise ValidationError("a cycle needs at least two events")
    rng = random.Random(seed)
    m = rng.randint(2, n)
    ring = rng.sample(range(n), m)
    edges = {(ring[i], ring[(i + 1) % m]) for i in range(m)}
    for p in range(n):
        for q in range(n):
            if p != q and rng.random() < 0.15:
                edges.add((p, q))
    return CausalGround.from_edges(n, sorted(edges))


@dataclass(frozen=True)
class MinkowskiSample:
    """Point sample from 1+1 flat spacetime with its cone order.

    points are (time, space) rational pairs in the unit square; the
    ground's base holds (p, q) exactly when q lies in p's closed future
    light cone and the points differ.
    """

    points: tuple[tuple[Fraction, Fraction], ...]
    ground: CausalGround


def gen_minkowski(n: int, seed) -> MinkowskiSample:
    """Sample n distinct grid points and relate them by the cone rule."""
    if n < 1:
        raise ValidationError("need at least one point")
    rng = random.Random(seed)
    points: list[tuple[Fraction, Fraction]] = []
    seen = set()
    while len(points) < n:
        pt = (Fraction(rng.randrange(0, _GRID + 1), _GRID),
              Fraction(rng.randrange(0, _GRID + 1), _GRID))
        # duplicate points would relate both ways and break the order
        if pt not in seen:
            seen.add(pt)
            points.append(pt)
    edges = []
    for p in range(n):
        tp, xp = points[p]
        for q in range(n):
            if p == q:
                continue
            tq, xq = points[q]
            if tq - tp >= abs(xq - xp):
                edges.append((p, q))
    return MinkowskiSample(tuple(points), CausalGround.from_edges(n, edges))


def gen_measure(ground: CausalGround, support_size: int, seed,
                uniform: bool = False) -> Measure:
    """Random rational measure on a random support of the given size.

    Weights are positive integers divided by their sum, so they add to
    one exactly.  With uniform=True every supported event gets equal
    weight instead.
    """
    n = ground.n
    if not (1 <= support_size <= n):
        raise ValidationError(f"support size must lie in 1..{n}")
    rng = random.Random(seed)
    support = rng.sample(range(n), support_size)
    weights = [Fraction(0)] * n
    if uniform:
        for p in support:
            weights[p] = Fraction(1, support_size)
    else:
        raw = [rng.randint(1, 64) for _ in support]
        total = sum(raw)
        for p, a in zip(support, raw):
            weights[p] = Fraction(a, total)
    return Measure(weights)


def gen_time_function(ground: CausalGround, seed) -> TimeFunction:
    """Random time function: path height plus rational jitter, rescaled.

    Heights jump by at least one along base edges while the jitter stays
    inside one unit, so strict increase survives.
    """
    rng = random.Random(seed)
    heights = event_heights(ground)
    top = max(heights) + 2
    vals = [Fraction(heights[p] * 64 + rng.randrange(1, 64), top * 64)
            for p in range(ground.n)]
    return TimeFunction(vals, ground=ground)


def boost_time_function(sample: MinkowskiSample, velocity) -> TimeFunction:
    """Time read by a boosted observer: t - v*x squeezed into (0,1).

    Valid for rational speeds strictly below light speed; denominators
    above 8 are rejected to keep the values small.  The affine squeeze
    preserves the ordering, which is all a time function carries.
    """
    v = Fraction(velocity)
    if not (-1 < v < 1):
        raise ValidationError("boost speed must satisfy |v| < 1")
    if v.denominator > 8:
        raise ValidationError("boost speed denominator capped at 8")
    vals = [((t - v * x) + Fraction(3, 2)) / 4 for t, x in sample.points]
    return TimeFunction(vals, ground=sample.ground)
