"""Relation and causal ground behavior.

Core claims: the causal closure is the smallest reflexive transitive
relation containing the base; future/past images and closedness
predicates agree with direct set computations; a set is future closed
exactly when its complement is past closed.
"""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causaltransport import (CausalGround, Relation, ValidationError,
                             causal_closure, complement_duality_check,
                             diagonal, full_relation, future_set,
                             is_antisymmetric, is_future_closed,
                             is_past_closed, is_preorder, is_reflexive,
                             is_stably_causal, is_transitive, past_set)


def chain_ground(n):
    return CausalGround.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def random_relation(rng, n):
    pairs = [(p, q) for p in range(n) for q in range(n) if rng.random() < 0.3]
    return Relation.from_pairs(n, pairs)


@st.composite
def grounds(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    edges = []
    for p in range(n):
        for q in range(n):
            if p != q and draw(st.booleans()):
                edges.append((p, q))
    return CausalGround.from_edges(n, edges)


class TestRelationBasics:
    def test_from_pairs_and_membership(self):
        r = Relation.from_pairs(3, [(0, 1), (1, 2)])
        assert r.has(0, 1) and (1, 2) in r
        assert not r.has(1, 0)
        assert len(r) == 2
        assert r.pairs == frozenset({(0, 1), (1, 2)})

    def test_matrix_is_authoritative_and_frozen(self):
        r = Relation.from_pairs(2, [(0, 1)])
        assert r.matrix.dtype == bool
        with pytest.raises(ValueError):
            r.matrix[0, 0] = True

    def test_out_of_range_pair_rejected(self):
        with pytest.raises(ValidationError):
            Relation.from_pairs(2, [(0, 2)])
        with pytest.raises(ValidationError):
            Relation.from_pairs(2, [(-1, 0)])

    def test_zero_events_rejected(self):
        with pytest.raises(ValidationError):
            Relation(0, np.zeros((0, 0), dtype=bool))

    def test_set_operations(self):
        a = Relation.from_pairs(2, [(0, 1)])
        b = Relation.from_pairs(2, [(1, 0)])
        assert a.union(b).pairs == {(0, 1), (1, 0)}
        assert a.intersection(b).pairs == frozenset()
        assert a.transpose() == b
        assert a.complement().pairs == {(0, 0), (1, 0), (1, 1)}

    def test_equality_and_hash(self):
        a = Relation.from_pairs(2, [(0, 1)])
        b = Relation.from_pairs(2, [(0, 1)])
        assert a == b and hash(a) == hash(b)
        assert a != Relation.from_pairs(2, [])

    def test_row_and_col_bits(self):
        r = Relation.from_pairs(3, [(0, 1), (0, 2), (2, 1)])
        assert r.row_bits() == [0b110, 0b000, 0b010]
        assert r.col_bits() == [0b000, 0b101, 0b001]


class TestCausalGround:
    def test_self_loop_flag(self):
        assert not CausalGround.from_edges(2, [(0, 1)]).has_self_loops
        assert CausalGround.from_edges(2, [(0, 0)]).has_self_loops

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            CausalGround(3, Relation.from_pairs(2, []))


class TestCausalClosure:
    def test_single_point_closure_is_reflexive(self):
        k = causal_closure(CausalGround.from_edges(1, []))
        assert k.pairs == {(0, 0)}

    def test_chain_closure(self):
        k = causal_closure(chain_ground(3))
        assert k.pairs == {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)}

    def test_two_cycle_closure_is_full(self):
        k = causal_closure(CausalGround.from_edges(2, [(0, 1), (1, 0)]))
        assert k == full_relation(2)

    def test_empty_base_closure_is_diagonal(self):
        k = causal_closure(CausalGround.from_edges(4, []))
        assert k == diagonal(4)

    def test_closure_fixed_point_by_composition(self):
        # oracle: iterate pairwise composition until stable
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randint(1, 7)
            ground = CausalGround.from_edges(
                n, [(p, q) for p in range(n) for q in range(n)
                    if rng.random() < 0.25])
            reach = ground.base.matrix | np.eye(n, dtype=bool)
            while True:
                step = reach | (reach.astype(int) @ reach.astype(int) > 0)
                if np.array_equal(step, reach):
                    break
                reach = step
            assert np.array_equal(causal_closure(ground).matrix, reach)

    @given(grounds())
    @settings(max_examples=60, deadline=None)
    def test_closure_is_smallest_preorder_containing_base(self, ground):
        k = causal_closure(ground)
        assert is_preorder(k)
        assert ground.base.pairs <= k.pairs
        # idempotent under re-application
        assert causal_closure(CausalGround(k.n, k)) == k

    @given(grounds(max_n=6))
    @settings(max_examples=40, deadline=None)
    def test_closure_minimality(self, ground):
        k = causal_closure(ground)
        trivial = ground.base.pairs | {(p, p) for p in range(k.n)}
        for pair in sorted(k.pairs - trivial):
            mat = k.matrix.copy()
            mat[pair] = False
            assert not is_transitive(Relation(k.n, mat))

    def test_reachability_matches_future_of_point(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(1, 8)
            edges = [(p, q) for p in range(n) for q in range(n)
                     if p != q and rng.random() < 0.3]
            ground = CausalGround.from_edges(n, edges)
            k = causal_closure(ground)
            for p in range(n):
                # oracle: breadth-first reachability over base edges
                seen = {p}
                frontier = [p]
                while frontier:
                    u = frontier.pop()
                    for a, b in edges:
                        if a == u and b not in seen:
                            seen.add(b)
                            frontier.append(b)
                assert future_set(k, (p,)) == frozenset(seen)


class TestImagesAndClosedness:
    def test_chain_future_and_past(self):
        k = causal_closure(chain_ground(3))
        assert future_set(k, {0}) == {0, 1, 2}
        assert past_set(k, {2}) == {0, 1, 2}
        assert past_set(k, {0}) == {0}
        assert future_set(k, set()) == frozenset()
        assert past_set(k, set()) == frozenset()

    def test_antichain_future_is_reflexive_only(self):
        k = causal_closure(CausalGround.from_edges(2, []))
        assert future_set(k, {0}) == {0}

    def test_is_future_closed_on_chain(self):
        k = causal_closure(chain_ground(3))
        assert is_future_closed(k, {1, 2})
        assert not is_future_closed(k, {0})
        assert is_future_closed(k, {0, 1, 2})
        assert is_future_closed(k, set())

    def test_is_past_closed_on_chain(self):
        k = causal_closure(chain_ground(3))
        assert is_past_closed(k, {0, 1})
        assert not is_past_closed(k, {2})

    def test_event_out_of_range_rejected(self):
        k = diagonal(2)
        with pytest.raises(ValidationError):
            future_set(k, {5})

    @given(grounds())
    @settings(max_examples=60, deadline=None)
    def test_images_monotone_in_the_set(self, ground):
        k = causal_closure(ground)
        n = ground.n
        rng = random.Random(n)
        small = {p for p in range(n) if rng.random() < 0.4}
        big = small | {p for p in range(n) if rng.random() < 0.4}
        assert future_set(k, small) <= future_set(k, big)
        assert past_set(k, small) <= past_set(k, big)


class TestDuality:
    def test_chain_up_set(self):
        k = causal_closure(chain_ground(3))
        assert complement_duality_check(k, {1, 2})
        assert complement_duality_check(k, set())

    def test_hundred_random_relations(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(1, 8)
            r = random_relation(rng, n)
            x = {p for p in range(n) if rng.random() < 0.5}
            assert complement_duality_check(r, x)


class TestPredicates:
    def test_diagonal_shapes(self):
        assert diagonal(1).pairs == {(0, 0)}
        assert diagonal(2).pairs == {(0, 0), (1, 1)}
        assert len(diagonal(3)) == 3

    def test_antisymmetry(self):
        assert is_antisymmetric(causal_closure(chain_ground(4)))
        assert not is_antisymmetric(
            causal_closure(CausalGround.from_edges(2, [(0, 1), (1, 0)])))
        assert is_antisymmetric(diagonal(3))

    def test_reflexive_transitive_predicates(self):
        k = causal_closure(chain_ground(3))
        assert is_reflexive(k) and is_transitive(k) and is_preorder(k)
        base = Relation.from_pairs(3, [(0, 1), (1, 2)])
        assert not is_reflexive(base)
        assert not is_transitive(base)

    def test_stable_causality(self):
        assert is_stably_causal(chain_ground(5))
        assert not is_stably_causal(CausalGround.from_edges(3, [(0, 1), (1, 0)]))
