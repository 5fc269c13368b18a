"""Pure-python kernel implementations.

These work on arbitrary-precision integers, so they stay exact no matter
how large the scaled weights get.  The other backends are restricted to
int64 and the dispatcher falls back to this module when magnitudes could
overflow.
"""

from __future__ import annotations

import numpy as np


def reflexive_transitive_closure(adj):
    """Warshall closure on bitmask rows; adj and result are bool arrays."""
    n = adj.shape[0]
    rows = []
    for i in range(n):
        bits = 1 << i
        for j in np.nonzero(adj[i])[0]:
            bits |= 1 << int(j)
        rows.append(bits)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    out = np.zeros((n, n), dtype=bool)
    for i in range(n):
        r = rows[i]
        for j in range(n):
            if (r >> j) & 1:
                out[i, j] = True
    return out


def _image_table(rows):
    # table[m] = union of rows[i] over set bits i of m, for every subset mask
    size = 1 << len(rows)
    out = [0] * size
    for m in range(1, size):
        low = m & -m
        out[m] = out[m ^ low] | rows[low.bit_length() - 1]
    return out


def _weight_table(w):
    size = 1 << len(w)
    out = [0] * size
    for m in range(1, size):
        low = m & -m
        out[m] = out[m ^ low] + w[low.bit_length() - 1]
    return out


def up_set_masks(rows):
    """Masks m whose image under rows stays inside m, as a list of ints."""
    fut = _image_table(list(rows))
    return [m for m in range(len(fut)) if fut[m] | m == m]


def hall_pair_condition(rows, rows_t, wmu, wnu):
    """For every subset B: wmu(B) <= wnu(image(B)) and wmu(preimage(B)) >= wnu(B)."""
    fut = _image_table(list(rows))
    past = _image_table(list(rows_t))
    tmu = _weight_table(list(wmu))
    tnu = _weight_table(list(wnu))
    for m in range(len(fut)):
        if tmu[m] > tnu[fut[m]] or tmu[past[m]] < tnu[m]:
            return False
    return True


def image_dominance_condition(rows, wa, wb):
    """For every subset C: wa(image(C)) <= wb(image(C))."""
    fut = _image_table(list(rows))
    ta = _weight_table(list(wa))
    tb = _weight_table(list(wb))
    for m in range(len(fut)):
        if ta[fut[m]] > tb[fut[m]]:
            return False
    return True


def closed_dominance_condition(rows, wa, wb):
    """For every subset X with image(X) inside X: wa(X) <= wb(X)."""
    fut = _image_table(list(rows))
    ta = _weight_table(list(wa))
    tb = _weight_table(list(wb))
    for m in range(len(fut)):
        if fut[m] | m == m and ta[m] > tb[m]:
            return False
    return True


def threshold_condition(values, wmu, wnu, open_halfline):
    """Super-level sets of each row of values never carry more wmu than wnu.

    Thresholds sweep the attained values only; the full event set always
    compares equal totals, so it needs no extra threshold.
    """
    wmu = list(wmu)
    wnu = list(wnu)
    for vals in values:
        vals = list(vals)
        for lam in set(vals):
            mu_mass = 0
            nu_mass = 0
            for e, v in enumerate(vals):
                if (v > lam) if open_halfline else (v >= lam):
                    mu_mass += wmu[e]
                    nu_mass += wnu[e]
            if mu_mass > nu_mass:
                return False
    return True


def integral_condition(values, delta):
    """sum(values[f][e] * delta[e]) <= 0 for every row f."""
    delta = list(delta)
    for vals in values:
        if sum(v * d for v, d in zip(vals, delta)) > 0:
            return False
    return True


def relation_max_flow(n, arcs, wmu, wnu):
    """Max flow from a source through arc pairs to a sink, exact integers.

    Nodes: 0 source, 1..n left copies, n+1..2n right copies, 2n+1 sink.
    Left supplies are wmu, right demands are wnu, every arc (i, j) gets
    capacity above the total so it never enters a minimum cut.

    Returns (flow value, per-arc flow list, left-side residual-reachable
    flags).  The reachable flags describe the minimum cut after the last
    failed search.
    """
    total = sum(wmu)
    big = 2 * total + 1
    num = 2 * n + 2
    src = 0
    snk = 2 * n + 1

    to = []
    cap = []
    adj = [[] for _ in range(num)]

    def add_edge(u, v, c):
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)

    for i in range(n):
        add_edge(src, 1 + i, wmu[i])
    arc_eids = []
    for i, j in arcs:
        arc_eids.append(len(to))
        add_edge(1 + i, 1 + n + j, big)
    for j in range(n):
        add_edge(1 + n + j, snk, wnu[j])

    level = [-1] * num
    it = [0] * num
    flow = 0
    while True:
        for v in range(num):
            level[v] = -1
        level[src] = 0
        queue = [src]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for e in adj[v]:
                if cap[e] > 0 and level[to[e]] == -1:
                    level[to[e]] = level[v] + 1
                    queue.append(to[e])
        if level[snk] == -1:
            break
        for v in range(num):
            it[v] = 0
        path = []
        v = src
        while True:
            if v == snk:
                aug = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= aug
                    cap[e ^ 1] += aug
                flow += aug
                # back up to the first saturated edge on the path
                keep = 0
                while keep < len(path) and cap[path[keep]] > 0:
                    keep += 1
                del path[keep:]
                v = src if keep == 0 else to[path[keep - 1]]
                continue
            advanced = False
            while it[v] < len(adj[v]):
                e = adj[v][it[v]]
                if cap[e] > 0 and level[to[e]] == level[v] + 1:
                    path.append(e)
                    v = to[e]
                    advanced = True
                    break
                it[v] += 1
            if not advanced:
                if v == src:
                    break
                level[v] = -1
                e = path.pop()
                v = to[e ^ 1]
                it[v] += 1
    arc_flows = [big - cap[e] for e in arc_eids]
    mu_cut = [level[1 + i] != -1 for i in range(n)]
    return flow, arc_flows, mu_cut
