"""numba-compiled kernel implementations.

Each public function is a thin wrapper that coerces arguments to int64
arrays and calls an @njit core.  Cores are cached to disk so repeated
runs skip compilation.  Importing this module fails cleanly when numba
is unavailable; the dispatcher then falls back to the numpy backend.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _closure_core(mat):
    n = mat.shape[0]
    for i in range(n):
        mat[i, i] = True
    for k in range(n):
        for i in range(n):
            if mat[i, k]:
                for j in range(n):
                    if mat[k, j]:
                        mat[i, j] = True
    return mat


def reflexive_transitive_closure(adj):
    return _closure_core(adj.copy())


@njit(cache=True)
def _image_table_core(rows):
    n = rows.shape[0]
    size = 1 << n
    out = np.zeros(size, np.int64)
    for m in range(1, size):
        low = m & (-m)
        b = 0
        x = low >> 1
        while x:
            x >>= 1
            b += 1
        out[m] = out[m ^ low] | rows[b]
    return out


@njit(cache=True)
def _weight_table_core(w):
    n = w.shape[0]
    size = 1 << n
    out = np.zeros(size, np.int64)
    for m in range(1, size):
        low = m & (-m)
        b = 0
        x = low >> 1
        while x:
            x >>= 1
            b += 1
        out[m] = out[m ^ low] + w[b]
    return out


@njit(cache=True)
def _up_set_masks_core(rows):
    fut = _image_table_core(rows)
    count = 0
    for m in range(fut.shape[0]):
        if fut[m] | m == m:
            count += 1
    out = np.empty(count, np.int64)
    k = 0
    for m in range(fut.shape[0]):
        if fut[m] | m == m:
            out[k] = m
            k += 1
    return out


@njit(cache=True)
def _hall_core(rows, rows_t, wmu, wnu):
    fut = _image_table_core(rows)
    past = _image_table_core(rows_t)
    tmu = _weight_table_core(wmu)
    tnu = _weight_table_core(wnu)
    for m in range(fut.shape[0]):
        if tmu[m] > tnu[fut[m]] or tmu[past[m]] < tnu[m]:
            return False
    return True


@njit(cache=True)
def _image_dominance_core(rows, wa, wb):
    fut = _image_table_core(rows)
    ta = _weight_table_core(wa)
    tb = _weight_table_core(wb)
    for m in range(fut.shape[0]):
        if ta[fut[m]] > tb[fut[m]]:
            return False
    return True


@njit(cache=True)
def _closed_dominance_core(rows, wa, wb):
    fut = _image_table_core(rows)
    ta = _weight_table_core(wa)
    tb = _weight_table_core(wb)
    for m in range(fut.shape[0]):
        if fut[m] | m == m and ta[m] > tb[m]:
            return False
    return True


@njit(cache=True)
def _threshold_core(vals, wmu, wnu, open_halfline):
    nf, n = vals.shape
    for f in range(nf):
        for c in range(n):
            lam = vals[f, c]
            mu_mass = 0
            nu_mass = 0
            for e in range(n):
                v = vals[f, e]
                inside = v > lam if open_halfline else v >= lam
                if inside:
                    mu_mass += wmu[e]
                    nu_mass += wnu[e]
            if mu_mass > nu_mass:
                return False
    return True


@njit(cache=True)
def _integral_core(vals, delta):
    nf, n = vals.shape
    for f in range(nf):
        acc = 0
        for e in range(n):
            acc += vals[f, e] * delta[e]
        if acc > 0:
            return False
    return True


@njit(cache=True)
def _dinic_core(to, cap, adj_start, adj_edge, src, snk):
    num = adj_start.shape[0] - 1
    level = np.empty(num, np.int64)
    it = np.empty(num, np.int64)
    queue = np.empty(num, np.int64)
    path = np.empty(to.shape[0], np.int64)
    flow = 0
    while True:
        for v in range(num):
            level[v] = -1
        level[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for x in range(adj_start[v], adj_start[v + 1]):
                e = adj_edge[x]
                if cap[e] > 0 and level[to[e]] == -1:
                    level[to[e]] = level[v] + 1
                    queue[tail] = to[e]
                    tail += 1
        if level[snk] == -1:
            break
        for v in range(num):
            it[v] = adj_start[v]
        plen = 0
        v = src
        while True:
            if v == snk:
                aug = cap[path[0]]
                for k in range(1, plen):
                    if cap[path[k]] < aug:
                        aug = cap[path[k]]
                for k in range(plen):
                    cap[path[k]] -= aug
                    cap[path[k] ^ 1] += aug
                flow += aug
                keep = 0
                while keep < plen and cap[path[keep]] > 0:
                    keep += 1
                plen = keep
                v = src if keep == 0 else to[path[keep - 1]]
                continue
            advanced = False
            while it[v] < adj_start[v + 1]:
                e = adj_edge[it[v]]
                if cap[e] > 0 and level[to[e]] == level[v] + 1:
                    path[plen] = e
                    plen += 1
                    v = to[e]
                    advanced = True
                    break
                it[v] += 1
            if not advanced:
                if v == src:
                    break
                level[v] = -1
                plen -= 1
                e = path[plen]
                v = to[e ^ 1]
                it[v] += 1
    return flow, level


def _as_i64(seq):
    return np.asarray(list(seq), dtype=np.int64)


def up_set_masks(rows):
    return [int(m) for m in _up_set_masks_core(_as_i64(rows))]


def hall_pair_condition(rows, rows_t, wmu, wnu):
    return bool(_hall_core(_as_i64(rows), _as_i64(rows_t),
                           _as_i64(wmu), _as_i64(wnu)))


def image_dominance_condition(rows, wa, wb):
    return bool(_image_dominance_core(_as_i64(rows), _as_i64(wa), _as_i64(wb)))


def closed_dominance_condition(rows, wa, wb):
    return bool(_closed_dominance_core(_as_i64(rows), _as_i64(wa), _as_i64(wb)))


def threshold_condition(values, wmu, wnu, open_halfline):
    vals = np.asarray([list(v) for v in values], dtype=np.int64)
    return bool(_threshold_core(vals, _as_i64(wmu), _as_i64(wnu),
                                bool(open_halfline)))


def integral_condition(values, delta):
    vals = np.asarray([list(v) for v in values], dtype=np.int64)
    return bool(_integral_core(vals, _as_i64(delta)))


def relation_max_flow(n, arcs, wmu, wnu):
    total = int(sum(wmu))
    big = 2 * total + 1
    num = 2 * n + 2
    src = 0
    snk = 2 * n + 1
    arcs = list(arcs)
    n_edges = 2 * (n + len(arcs) + n)

    to = np.empty(n_edges, np.int64)
    cap = np.empty(n_edges, np.int64)
    tails = np.empty(n_edges, np.int64)
    eid = 0

    def add_edge(u, v, c):
        nonlocal eid
        tails[eid] = u
        to[eid] = v
        cap[eid] = c
        eid += 1
        tails[eid] = v
        to[eid] = u
        cap[eid] = 0
        eid += 1

    for i in range(n):
        add_edge(src, 1 + i, int(wmu[i]))
    arc_eids = []
    for i, j in arcs:
        arc_eids.append(eid)
        add_edge(1 + i, 1 + n + j, big)
    for j in range(n):
        add_edge(1 + n + j, snk, int(wnu[j]))

    order = np.argsort(tails, kind="stable").astype(np.int64)
    counts = np.bincount(tails, minlength=num)
    adj_start = np.zeros(num + 1, np.int64)
    adj_start[1:] = np.cumsum(counts)

    flow, level = _dinic_core(to, cap, adj_start, order, src, snk)
    arc_flows = [big - int(cap[e]) for e in arc_eids]
    mu_cut = [bool(level[1 + i] != -1) for i in range(n)]
    return int(flow), arc_flows, mu_cut
