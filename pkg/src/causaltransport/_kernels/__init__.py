"""Hot numeric kernels with selectable backends.

Three interchangeable implementations ship:

  numba   -- @njit compiled loops (default whenever numba imports)
  numpy   -- vectorized ndarray code
  python  -- arbitrary-precision integers, exact at any magnitude

Set CAUSALTRANSPORT_BACKEND=numba|numpy|python before import, or call
set_backend() at runtime.  All kernel arguments are plain python ints
scaled to a common denominator; inputs too large for int64 are routed
to the python backend automatically so results never overflow.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import ValidationError
from . import _numpy as _np_impl
from . import _python as _py_impl

try:
    from . import _numba as _nb_impl
except ImportError:  # pragma: no cover - exercised only without numba
    _nb_impl = None

# magnitudes beyond this may overflow int64 mid-kernel
_INT64_SAFE = 1 << 60

_BACKENDS = ("numba", "numpy", "python")


def _default_backend():
    env = os.environ.get("CAUSALTRANSPORT_BACKEND", "").strip().lower()
    if env and env not in _BACKENDS:
        raise ValidationError(f"unknown backend {env!r}; choose from {_BACKENDS}")
    if env == "numba" and _nb_impl is None:
        return "numpy"
    if env:
        return env
    return "numba" if _nb_impl is not None else "numpy"


_active = _default_backend()


def backend_name():
    """Name of the backend kernels currently dispatch to."""
    return _active


def set_backend(name):
    """Select a kernel backend; returns the previously active name."""
    global _active
    if name not in _BACKENDS:
        raise ValidationError(f"unknown backend {name!r}; choose from {_BACKENDS}")
    if name == "numba" and _nb_impl is None:
        raise ValidationError("numba backend requested but numba is not importable")
    previous = _active
    _active = name
    return previous


def _impl():
    if _active == "numba":
        return _nb_impl
    if _active == "numpy":
        return _np_impl
    return _py_impl


def _fits_int64(*magnitudes):
    return all(m < _INT64_SAFE for m in magnitudes)


def reflexive_transitive_closure(adj):
    """Smallest reflexive transitive relation containing adj (bool matrix)."""
    adj = np.ascontiguousarray(adj, dtype=bool)
    return _impl().reflexive_transitive_closure(adj)


def up_set_masks(rows):
    """All subset masks closed under the row images, sorted ascending."""
    return _impl().up_set_masks(list(rows))


def hall_pair_condition(rows, rows_t, wmu, wnu):
    wmu = list(wmu)
    wnu = list(wnu)
    if not _fits_int64(sum(wmu), sum(wnu)):
        return _py_impl.hall_pair_condition(rows, rows_t, wmu, wnu)
    return _impl().hall_pair_condition(list(rows), list(rows_t), wmu, wnu)


def image_dominance_condition(rows, wa, wb):
    wa = list(wa)
    wb = list(wb)
    if not _fits_int64(sum(wa), sum(wb)):
        return _py_impl.image_dominance_condition(rows, wa, wb)
    return _impl().image_dominance_condition(list(rows), wa, wb)


def closed_dominance_condition(rows, wa, wb):
    wa = list(wa)
    wb = list(wb)
    if not _fits_int64(sum(wa), sum(wb)):
        return _py_impl.closed_dominance_condition(rows, wa, wb)
    return _impl().closed_dominance_condition(list(rows), wa, wb)


def threshold_condition(values, wmu, wnu, open_halfline):
    values = [list(v) for v in values]
    if not values:
        return True
    wmu = list(wmu)
    wnu = list(wnu)
    peak = max(max(abs(v) for v in vals) for vals in values)
    if not _fits_int64(sum(wmu), sum(wnu), peak):
        return _py_impl.threshold_condition(values, wmu, wnu, open_halfline)
    return _impl().threshold_condition(values, wmu, wnu, open_halfline)


def integral_condition(values, delta):
    values = [list(v) for v in values]
    if not values:
        return True
    delta = list(delta)
    peak = max(max(abs(v) for v in vals) for vals in values)
    span = max((abs(d) for d in delta), default=0)
    n = len(delta)
    if not _fits_int64(peak, span, peak * span * max(n, 1)):
        return _py_impl.integral_condition(values, delta)
    return _impl().integral_condition(values, delta)


def relation_max_flow(n, arcs, wmu, wnu):
    """Route wmu through the arc set toward wnu; see _python for the graph.

    Returns (flow value, per-arc flows, source-side min-cut flags).
    """
    wmu = list(wmu)
    wnu = list(wnu)
    if not _fits_int64(2 * sum(wmu) + 1, 2 * sum(wnu) + 1):
        return _py_impl.relation_max_flow(n, list(arcs), wmu, wnu)
    return _impl().relation_max_flow(n, list(arcs), wmu, wnu)
