"""Finite binary relations over event sets and their causal closures.

Events are the integers 0..n-1.  A Relation stores a dense boolean
matrix as the authoritative representation; the pair-set view is derived
from it on demand.  A CausalGround is a raw (arbitrary) relation on an
event set; its reflexive transitive closure is the causal order every
higher layer works with.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _kernels
from .errors import ValidationError


class Relation:
    """Immutable binary relation over events 0..n-1."""

    __slots__ = ("n", "_matrix", "_pairs")

    def __init__(self, n: int, matrix) -> None:
        if n < 1:
            raise ValidationError("relation needs at least one event")
        mat = np.array(matrix, dtype=bool)
        if mat.shape != (n, n):
            raise ValidationError(f"matrix shape {mat.shape} does not match n={n}")
        mat.setflags(write=False)
        self.n = n
        self._matrix = mat
        self._pairs = None

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        mat = np.zeros((n, n), dtype=bool)
        for p, q in pairs:
            if not (0 <= p < n and 0 <= q < n):
                raise ValidationError(f"pair ({p}, {q}) outside events 0..{n - 1}")
            mat[p, q] = True
        return cls(n, mat)

    @property
    def matrix(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._matrix

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        if self._pairs is None:
            ii, jj = np.nonzero(self._matrix)
            self._pairs = frozenset(zip(ii.tolist(), jj.tolist()))
        return self._pairs

    def has(self, p: int, q: int) -> bool:
        if not (0 <= p < self.n and 0 <= q < self.n):
            raise ValidationError(f"pair ({p}, {q}) outside events 0..{self.n - 1}")
        return bool(self._matrix[p, q])

    def row_bits(self) -> list[int]:
        """Successor sets as bitmasks, one int per event."""
        return [int(sum(1 << j for j in np.nonzero(row)[0])) for row in self._matrix]

    def col_bits(self) -> list[int]:
        """Predecessor sets as bitmasks, one int per event."""
        return [int(sum(1 << j for j in np.nonzero(col)[0])) for col in self._matrix.T]

    def union(self, other: "Relation") -> "Relation":
        self._check_same_ground(other)
        return Relation(self.n, self._matrix | other._matrix)

    def intersection(self, other: "Relation") -> "Relation":
        self._check_same_ground(other)
        return Relation(self.n, self._matrix & other._matrix)

    def transpose(self) -> "Relation":
        return Relation(self.n, self._matrix.T)

    def complement(self) -> "Relation":
        return Relation(self.n, ~self._matrix)

    def _check_same_ground(self, other: "Relation") -> None:
        if self.n != other.n:
            raise ValidationError(f"event counts differ: {self.n} vs {other.n}")

    def __contains__(self, pair) -> bool:
        p, q = pair
        return self.has(p, q)

    def __len__(self) -> int:
        return int(self._matrix.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._matrix, other._matrix)

    def __hash__(self) -> int:
        return hash((self.n, self._matrix.tobytes()))

    def __repr__(self) -> str:
        return f"Relation(n={self.n}, pairs={len(self)})"


class CausalGround:
    """An event set with an arbitrary base relation (no axioms assumed)."""

    __slots__ = ("n", "base")

    def __init__(self, n: int, base: Relation) -> None:
        if base.n != n:
            raise ValidationError(f"base relation is over {base.n} events, not {n}")
        self.n = n
        self.base = base

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CausalGround":
        return cls(n, Relation.from_pairs(n, edges))

    @property
    def has_self_loops(self) -> bool:
        return bool(np.any(np.diag(self.base.matrix)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CausalGround):
            return NotImplemented
        return self.n == other.n and self.base == other.base

    def __hash__(self) -> int:
        return hash((self.n, self.base))

    def __repr__(self) -> str:
        return f"CausalGround(n={self.n}, base_pairs={len(self.base)})"


def diagonal(n: int) -> Relation:
    """The equality relation: p related to q iff p == q."""
    return Relation(n, np.eye(n, dtype=bool))


def full_relation(n: int) -> Relation:
    """Every pair related."""
    return Relation(n, np.ones((n, n), dtype=bool))


def causal_closure(ground: CausalGround) -> Relation:
    """Reflexive transitive closure of the ground's base relation.

    This is the smallest causal order containing every base arrow; all
    precedence tests in the package are taken against it.
    """
    return Relation(ground.n, _kernels.reflexive_transitive_closure(ground.base.matrix))


def _as_event_set(r: Relation, events: Iterable[int]) -> list[int]:
    out = []
    for e in events:
        if not (0 <= e < r.n):
            raise ValidationError(f"event {e} outside 0..{r.n - 1}")
        out.append(int(e))
    return out


def future_set(r: Relation, events: Iterable[int]) -> frozenset[int]:
    """All events reachable from the given ones under r (image of the set)."""
    events = _as_event_set(r, events)
    if not events:
        return frozenset()
    hit = np.any(r.matrix[events], axis=0)
    return frozenset(int(j) for j in np.nonzero(hit)[0])


def past_set(r: Relation, events: Iterable[int]) -> frozenset[int]:
    """All events from which some given event is reachable (preimage)."""
    events = _as_event_set(r, events)
    if not events:
        return frozenset()
    hit = np.any(r.matrix[:, events], axis=1)
    return frozenset(int(i) for i in np.nonzero(hit)[0])


def is_future_closed(r: Relation, events: Iterable[int]) -> bool:
    """True when the future of the set stays inside the set."""
    members = set(_as_event_set(r, events))
    return future_set(r, members) <= members


def is_past_closed(r: Relation, events: Iterable[int]) -> bool:
    """True when the past of the set stays inside the set."""
    members = set(_as_event_set(r, events))
    return past_set(r, members) <= members


def complement_duality_check(r: Relation, events: Iterable[int]) -> bool:
    """A set is future closed exactly when its complement is past closed."""
    members = set(_as_event_set(r, events))
    rest = set(range(r.n)) - members
    return is_future_closed(r, members) == is_past_closed(r, rest)


def is_reflexive(r: Relation) -> bool:
    return bool(np.all(np.diag(r.matrix)))


def is_transitive(r: Relation) -> bool:
    m = r.matrix
    # float32 matmul stays exact: path counts are at most n <= 2**24
    two_step = (m.astype(np.float32) @ m.astype(np.float32)) > 0
    return bool(np.all(m[two_step]))


def is_preorder(r: Relation) -> bool:
    return is_reflexive(r) and is_transitive(r)


def is_antisymmetric(r: Relation) -> bool:
    """No two distinct events related both ways."""
    m = r.matrix
    both = m & m.T
    both = both & ~np.eye(r.n, dtype=bool)
    return not bool(np.any(both))


def is_stably_causal(ground: CausalGround) -> bool:
    """True when the causal closure is antisymmetric (an order, not just
    a preorder)."""
    return is_antisymmetric(causal_closure(ground))
