"""Reading and writing the shared text file formats.

All files are UTF-8 JSON documents:

  ground / relation   {"n": int, "pairs": [[p, q], ...]}
  measure             {"n": int, "weights": ["a/b" or int, ...]}
  time function       {"n": int, "values": ["a/b", ...]}
  family              {"n": int, "functions": [["a/b", ...], ...]}
  points              {"n": int, "points": [["a/b", "a/b"], ...]}

Rationals are written fully reduced, as "a/b" strings or bare integer
strings.  Parsing is strict: malformed rationals, duplicate pairs, out
of range events, or mismatched lengths are rejected with diagnostics.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError
from .measures import Measure
from .relations import CausalGround, Relation
from .timefns import TimeFunction

_RATIONAL = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(value) -> Fraction:
    """Exact rational from an int or an "a/b" string."""
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value)
    raise ValidationError(f'not a rational: {value!r} (want "a/b" or integer)')


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _load_document(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top level must be an object")
    return doc


def _dump_document(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _take_n(doc: dict, path) -> int:
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"{path}: field 'n' must be a positive integer")
    return n


def _parse_pairs(doc: dict, path) -> tuple[int, list[tuple[int, int]]]:
    n = _take_n(doc, path)
    raw = doc.get("pairs")
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: field 'pairs' must be a list")
    pairs = []
    for k, item in enumerate(raw):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)):
            raise ValidationError(f"{path}: pairs[{k}] must be [int, int]")
        p, q = item
        if not (0 <= p < n and 0 <= q < n):
            raise ValidationError(f"{path}: pairs[{k}] = [{p}, {q}] outside 0..{n - 1}")
        pairs.append((p, q))
    if len(set(pairs)) != len(pairs):
        raise ValidationError(f"{path}: duplicate pairs")
    return n, pairs


def read_ground(path) -> CausalGround:
    n, pairs = _parse_pairs(_load_document(path), path)
    return CausalGround.from_edges(n, pairs)


def write_ground(path, ground: CausalGround) -> None:
    _dump_document(path, {"n": ground.n, "pairs": [list(p) for p in sorted(ground.base.pairs)]})


def read_relation(path) -> Relation:
    n, pairs = _parse_pairs(_load_document(path), path)
    return Relation.from_pairs(n, pairs)


def write_relation(path, r: Relation) -> None:
    _dump_document(path, {"n": r.n, "pairs": [list(p) for p in sorted(r.pairs)]})


def _parse_rational_list(raw, count: int, what: str, path) -> list[Fraction]:
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: field '{what}' must be a list")
    if len(raw) != count:
        raise ValidationError(f"{path}: '{what}' has {len(raw)} entries, n is {count}")
    out = []
    for k, item in enumerate(raw):
        try:
            out.append(parse_rational(item))
        except ValidationError as exc:
            raise ValidationError(f"{path}: {what}[{k}]: {exc}") from exc
    return out


def read_measure(path) -> Measure:
    doc = _load_document(path)
    n = _take_n(doc, path)
    weights = _parse_rational_list(doc.get("weights"), n, "weights", path)
    try:
        return Measure(weights)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def write_measure(path, mu: Measure) -> None:
    _dump_document(path, {"n": mu.n, "weights": [format_rational(w) for w in mu.weights]})


def read_time_function(path, ground: CausalGround | None = None) -> TimeFunction:
    doc = _load_document(path)
    n = _take_n(doc, path)
    values = _parse_rational_list(doc.get("values"), n, "values", path)
    try:
        return TimeFunction(values, ground=ground)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def write_time_function(path, t: TimeFunction) -> None:
    _dump_document(path, {"n": t.n, "values": [format_rational(v) for v in t.values]})


def read_family(path, ground: CausalGround | None = None) -> list[TimeFunction]:
    """Family file, or a single time-function file as a family of one."""
    doc = _load_document(path)
    n = _take_n(doc, path)
    if "functions" not in doc and "values" in doc:
        return [read_time_function(path, ground=ground)]
    raw = doc.get("functions")
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"{path}: field 'functions' must be a nonempty list")
    fns = []
    for k, row in enumerate(raw):
        values = _parse_rational_list(row, n, f"functions[{k}]", path)
        try:
            fns.append(TimeFunction(values, ground=ground))
        except ValidationError as exc:
            raise ValidationError(f"{path}: functions[{k}]: {exc}") from exc
    return fns


def write_family(path, fns: Sequence[TimeFunction]) -> None:
    fns = list(fns)
    if not fns:
        raise ValidationError("family must contain at least one time function")
    doc = {"n": fns[0].n,
           "functions": [[format_rational(v) for v in t.values] for t in fns]}
    _dump_document(path, doc)


def read_points(path) -> list[tuple[Fraction, Fraction]]:
    doc = _load_document(path)
    n = _take_n(doc, path)
    raw = doc.get("points")
    if not isinstance(raw, list) or len(raw) != n:
        raise ValidationError(f"{path}: field 'points' must be a list of n entries")
    points = []
    for k, item in enumerate(raw):
        if not isinstance(item, list) or len(item) != 2:
            raise ValidationError(f"{path}: points[{k}] must be [t, x]")
        t = parse_rational(item[0])
        x = parse_rational(item[1])
        points.append((t, x))
    return points


def write_points(path, points) -> None:
    doc = {"n": len(points),
           "points": [[format_rational(t), format_rational(x)] for t, x in points]}
    _dump_document(path, doc)


def coupling_to_sparse(joint) -> list[list]:
    """Sparse [[p, q, "a/b"], ...] rows for nonzero coupling entries."""
    out = []
    for p, row in enumerate(joint):
        for q, w in enumerate(row):
            if w:
                out.append([p, q, format_rational(w)])
    return out
