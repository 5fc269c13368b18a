"""Probability measures and couplings on finite event sets.

All weights are exact rationals (fractions.Fraction), so feasibility
and equality questions have exact answers.  Helpers scale a pair of
measures to a common integer denominator for the kernel layer.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import ValidationError
from .relations import Relation


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValidationError(f"weight {value!r} is not an exact rational")


class Measure:
    """Probability measure: nonnegative rational weights summing to one."""

    __slots__ = ("weights",)

    def __init__(self, weights: Iterable) -> None:
        ws = tuple(_as_fraction(w) for w in weights)
        if not ws:
            raise ValidationError("measure needs at least one event")
        if any(w < 0 for w in ws):
            raise ValidationError("measure weights must be nonnegative")
        total = sum(ws)
        if total != 1:
            raise ValidationError(f"measure weights sum to {total}, not 1")
        self.weights = ws

    @classmethod
    def point(cls, n: int, event: int) -> "Measure":
        """Unit mass on a single event."""
        if not (0 <= event < n):
            raise ValidationError(f"event {event} outside 0..{n - 1}")
        return cls(tuple(Fraction(int(i == event)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, w in enumerate(self.weights) if w > 0)

    def __getitem__(self, event: int) -> Fraction:
        return self.weights[event]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self) -> int:
        return hash(self.weights)

    def __repr__(self) -> str:
        return f"Measure({[str(w) for w in self.weights]})"


def measure_of(mu: Measure, events: Iterable[int]) -> Fraction:
    """Total mu-mass of an event set."""
    seen = set()
    for e in events:
        if not (0 <= e < mu.n):
            raise ValidationError(f"event {e} outside 0..{mu.n - 1}")
        seen.add(int(e))
    return sum((mu.weights[e] for e in seen), Fraction(0))


class Coupling:
    """Joint measure on event pairs with prescribed nonnegative weights."""

    __slots__ = ("joint",)

    def __init__(self, joint: Iterable[Iterable]) -> None:
        rows = tuple(tuple(_as_fraction(w) for w in row) for row in joint)
        if not rows:
            raise ValidationError("coupling needs at least one event")
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValidationError("coupling matrix must be square")
        if any(w < 0 for row in rows for w in row):
            raise ValidationError("coupling weights must be nonnegative")
        total = sum(w for row in rows for w in row)
        if total != 1:
            raise ValidationError(f"coupling weights sum to {total}, not 1")
        self.joint = rows

    @property
    def n(self) -> int:
        return len(self.joint)

    def __getitem__(self, pair) -> Fraction:
        p, q = pair
        return self.joint[p][q]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coupling):
            return NotImplemented
        return self.joint == other.joint

    def __hash__(self) -> int:
        return hash(self.joint)

    def __repr__(self) -> str:
        return f"Coupling(n={self.n})"


def marginals(omega: Coupling) -> tuple[Measure, Measure]:
    """First and second marginals of a coupling."""
    n = omega.n
    first = [sum(omega.joint[p], Fraction(0)) for p in range(n)]
    second = [sum((omega.joint[p][q] for p in range(n)), Fraction(0)) for q in range(n)]
    return Measure(first), Measure(second)


def diagonal_pushforward(mu: Measure) -> Coupling:
    """Coupling that keeps every point where it is: all mass on (p, p)."""
    n = mu.n
    joint = [[Fraction(0)] * n for _ in range(n)]
    for p in range(n):
        joint[p][p] = mu.weights[p]
    return Coupling(joint)


def mass_on(omega: Coupling, r: Relation) -> Fraction:
    """Coupling mass carried by the related pairs of r."""
    if omega.n != r.n:
        raise ValidationError(f"event counts differ: coupling {omega.n}, relation {r.n}")
    mat = r.matrix
    return sum(
        (omega.joint[p][q] for p in range(omega.n) for q in range(omega.n) if mat[p, q]),
        Fraction(0),
    )


def pushforward_scores(mu: Measure, fns) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Distribution of the score vector (t1(p), ..., tk(p)) under mu.

    Each fn is a time function (anything exposing per-event rational
    values).  Events with identical score vectors merge into one atom;
    atoms are returned sorted by score vector, masses summing to 1.
    """
    rows = []
    for fn in fns:
        vals = [_as_fraction(v) for v in getattr(fn, "values", fn)]
        if len(vals) != mu.n:
            raise ValidationError(
                f"score vector length {len(vals)} does not match n={mu.n}")
        rows.append(vals)
    if not rows:
        raise ValidationError("pushforward needs at least one function")
    acc: dict[tuple[Fraction, ...], Fraction] = {}
    for p, w in enumerate(mu.weights):
        if w > 0:
            key = tuple(r[p] for r in rows)
            acc[key] = acc.get(key, Fraction(0)) + w
    return sorted(acc.items())


def common_denominator(*measures: Measure) -> int:
    """Least common denominator of every weight across the measures."""
    d = 1
    for m in measures:
        for w in m.weights:
            d = lcm(d, w.denominator)
    return d


def scaled_weights(mu: Measure, nu: Measure) -> tuple[int, list[int], list[int]]:
    """Scale two measures to integer weights over one denominator.

    Returns (denominator, mu weights, nu weights); each list sums to the
    denominator exactly.
    """
    if mu.n != nu.n:
        raise ValidationError(f"event counts differ: {mu.n} vs {nu.n}")
    d = common_denominator(mu, nu)
    wmu = [int(w * d) for w in mu.weights]
    wnu = [int(w * d) for w in nu.weights]
    return d, wmu, wnu
