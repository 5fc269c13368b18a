"""Vectorized ndarray kernel implementations.

Everything here assumes inputs already fit in int64; the dispatcher
checks magnitudes before routing.  Augmenting-path search is inherently
sequential, so this backend reuses the exact python max flow.
"""

from __future__ import annotations

import numpy as np

from ._python import relation_max_flow  # noqa: F401  (re-exported)

_CHUNK = 2048


def reflexive_transitive_closure(adj):
    n = adj.shape[0]
    reach = adj | np.eye(n, dtype=bool)
    while True:
        # float32 matmul is exact here: path counts stay below 2**24
        step = (reach.astype(np.float32) @ reach.astype(np.float32)) > 0
        nxt = reach | step
        if np.array_equal(nxt, reach):
            return nxt
        reach = nxt


def _image_table(rows):
    n = rows.shape[0]
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        out[(idx >> b) & 1 == 1] |= rows[b]
    return out


def _weight_table(w):
    n = w.shape[0]
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        out[(idx >> b) & 1 == 1] += w[b]
    return out


def _as_i64(seq):
    return np.asarray(list(seq), dtype=np.int64)


def up_set_masks(rows):
    fut = _image_table(_as_i64(rows))
    idx = np.arange(fut.shape[0], dtype=np.int64)
    return [int(m) for m in idx[(fut | idx) == idx]]


def hall_pair_condition(rows, rows_t, wmu, wnu):
    fut = _image_table(_as_i64(rows))
    past = _image_table(_as_i64(rows_t))
    tmu = _weight_table(_as_i64(wmu))
    tnu = _weight_table(_as_i64(wnu))
    return bool(np.all(tmu <= tnu[fut]) and np.all(tmu[past] >= tnu))


def image_dominance_condition(rows, wa, wb):
    fut = _image_table(_as_i64(rows))
    ta = _weight_table(_as_i64(wa))
    tb = _weight_table(_as_i64(wb))
    return bool(np.all(ta[fut] <= tb[fut]))


def closed_dominance_condition(rows, wa, wb):
    fut = _image_table(_as_i64(rows))
    ta = _weight_table(_as_i64(wa))
    tb = _weight_table(_as_i64(wb))
    idx = np.arange(fut.shape[0], dtype=np.int64)
    closed = (fut | idx) == idx
    return bool(np.all(ta[closed] <= tb[closed]))


def threshold_condition(values, wmu, wnu, open_halfline):
    vals = np.asarray([list(v) for v in values], dtype=np.int64)
    wmu = _as_i64(wmu)
    wnu = _as_i64(wnu)
    for lo in range(0, vals.shape[0], _CHUNK):
        v = vals[lo:lo + _CHUNK]
        if open_halfline:
            sel = v[:, None, :] > v[:, :, None]
        else:
            sel = v[:, None, :] >= v[:, :, None]
        if np.any(sel @ wmu > sel @ wnu):
            return False
    return True


def integral_condition(values, delta):
    vals = np.asarray([list(v) for v in values], dtype=np.int64)
    return bool(np.all(vals @ _as_i64(delta) <= 0))
