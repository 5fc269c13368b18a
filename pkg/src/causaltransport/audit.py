"""Randomized equivalence audits over seeded instance mixes.

Each suite draws grounds from a fixed mix (70% random acyclic grounds,
20% flat-spacetime samples, 10% chains and antichains), builds measure
pairs biased toward related instances, evaluates one theorem's
conditions through independent code paths, and records any discrepancy.
Every precedence verdict produced along the way is re-verified against
its own witness or certificate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels
from .errors import NotStablyCausalError, ValidationError
from .measures import Measure, scaled_weights
from .models import gen_cyclic, gen_measure, gen_minkowski, gen_random_dag, gen_time_function
from .relations import CausalGround, Relation, causal_closure, diagonal, future_set
from .timefns import (antisymmetry_verdict, build_separating_family,
                      check_integral_condition, check_threshold_condition,
                      event_heights, monotone_phi_sampler, multi_time_ordering)
from .transport import equivalence_audit, relate, verify_verdict

THEOREM_IDS = ("main", "timefns", "multitime", "antisym", "equality")

# subset enumeration keeps these suites honest only at desk scale
_ENUMERATION_SUITES = ("main", "timefns", "multitime")
_ENUMERATION_MAX_N = 12


@dataclass(frozen=True)
class TrialRecord:
    """One audit trial: instance shape, verdict, and replay seed."""

    index: int
    seed: int
    kind: str
    n: int
    ok: bool
    note: str = ""


@dataclass
class AuditReport:
    """Aggregate outcome of one randomized audit run."""

    theorem: str
    trials: int
    max_n: int
    seed: int
    ground_sizes: list[int] = field(default_factory=list)
    agreements: dict[str, int] = field(default_factory=dict)
    discrepancies: list[str] = field(default_factory=list)
    records: list[TrialRecord] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "max_n": self.max_n,
            "seed": self.seed,
            "ground_sizes": self.ground_sizes,
            "agreements": self.agreements,
            "discrepancies": self.discrepancies,
            "wall_time": self.wall_time,
            "ok": self.ok,
            "records": [
                {"index": r.index, "seed": r.seed, "kind": r.kind,
                 "n": r.n, "ok": r.ok, "note": r.note}
                for r in self.records
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"audit theorem={self.theorem} trials={self.trials} "
            f"max_n={self.max_n} seed={self.seed}",
            f"wall_time={self.wall_time:.3f}s sizes(min/max)="
            f"{min(self.ground_sizes)}/{max(self.ground_sizes)}",
        ]
        for key in sorted(self.agreements):
            lines.append(f"agreement {key}: {self.agreements[key]}/{self.trials}")
        if self.discrepancies:
            lines.append(f"DISCREPANCIES ({len(self.discrepancies)}):")
            lines.extend(f"  {d}" for d in self.discrepancies)
        else:
            lines.append("discrepancies: none")
        for r in self.records:
            status = "ok" if r.ok else "FAIL"
            note = f" {r.note}" if r.note else ""
            lines.append(
                f"TRIAL {r.index} seed={r.seed} kind={r.kind} n={r.n} {status}{note}")
        return "\n".join(lines)


def _draw_ground(rng: random.Random, max_n: int) -> tuple[str, CausalGround]:
    u = rng.random()
    n = rng.randint(1, max_n)
    if u < 0.70:
        density = rng.uniform(0.1, 0.9)
        return "dag", gen_random_dag(n, density, rng.randrange(1 << 30))
    if u < 0.90:
        return "minkowski", gen_minkowski(n, rng.randrange(1 << 30)).ground
    if rng.random() < 0.5:
        edges = [(i, i + 1) for i in range(n - 1)]
        return "chain", CausalGround.from_edges(n, edges)
    return "antichain", CausalGround.from_edges(n, [])


def _pushforward(rng: random.Random, r: Relation, mu: Measure) -> Measure:
    """Move each atom's mass to a random event in its future under r."""
    acc = [Fraction(0)] * mu.n
    for p, w in enumerate(mu.weights):
        if w > 0:
            targets = sorted(future_set(r, (p,)) | {p})
            acc[rng.choice(targets)] += w
    return Measure(acc)


def _draw_measure_pair(rng: random.Random, r: Relation,
                       ground: CausalGround) -> tuple[Measure, Measure]:
    n = ground.n
    mu = gen_measure(ground, rng.randint(1, n), rng.randrange(1 << 30))
    u = rng.random()
    if u < 0.45:
        nu = gen_measure(ground, rng.randint(1, n), rng.randrange(1 << 30))
    elif u < 0.80:
        nu = _pushforward(rng, r, mu)
    else:
        nu = Measure(mu.weights)
    return mu, nu


def _upset_int_rows(ground: CausalGround, closure: Relation,
                    chi_scale: int, height_scale: int) -> list[list[int]]:
    """Integer score rows, one per future-closed set of the closure.

    Row for up-set X is chi_scale*[q in X] + height_scale*height(q); any
    chi_scale > height_scale*(n-1) keeps the level sets of each row
    identical to those of the rational up-set indicator functions.
    """
    heights = event_heights(ground)
    rows = []
    for mask in _kernels.up_set_masks(closure.row_bits()):
        rows.append([chi_scale * ((mask >> q) & 1) + height_scale * heights[q]
                     for q in range(ground.n)])
    return rows


def _upset_threshold_complete(ground: CausalGround, closure: Relation,
                              mu: Measure, nu: Measure,
                              open_halfline: bool) -> bool:
    """Threshold condition over every up-set indicator; exhaustive."""
    _, wmu, wnu = scaled_weights(mu, nu)
    rows = _upset_int_rows(ground, closure, chi_scale=2 * ground.n + 2,
                           height_scale=2)
    return _kernels.threshold_condition(rows, wmu, wnu, open_halfline)


def _upset_integral_complete(ground: CausalGround, closure: Relation,
                             mu: Measure, nu: Measure) -> bool:
    """Integral condition over up-set indicators with a height term small
    enough that no violation of size 1/denominator can hide behind it."""
    d, wmu, wnu = scaled_weights(mu, nu)
    delta = [a - b for a, b in zip(wmu, wnu)]
    rows = _upset_int_rows(ground, closure, chi_scale=2 * ground.n * d,
                           height_scale=1)
    return _kernels.integral_condition(rows, delta)


def _trial_equality(rng: random.Random, max_n: int) -> tuple[str, int, bool, str, dict]:
    n = rng.randint(1, max_n)
    ground = CausalGround.from_edges(n, [])
    mu = gen_measure(ground, rng.randint(1, n), rng.randrange(1 << 30))
    u = rng.random()
    if u < 0.50:
        nu = Measure(mu.weights)
    elif u < 0.75 and n >= 2:
        # move some mass between two events so the measures differ
        w = list(mu.weights)
        src = max(range(n), key=lambda p: w[p])
        dst = (src + 1) % n
        shift = w[src] / 2
        w[src] -= shift
        w[dst] += shift
        nu = Measure(w)
    else:
        nu = gen_measure(ground, rng.randint(1, n), rng.randrange(1 << 30))
    verdict = relate(diagonal(n), mu, nu)
    verify_verdict(diagonal(n), mu, nu, verdict)
    ok = verdict.related == (mu == nu)
    note = "" if ok else f"related={verdict.related} equal={mu == nu}"
    return "antichain", n, ok, note, {"equality_match": ok}


def _trial_main(rng: random.Random, max_n: int) -> tuple[str, int, bool, str, dict]:
    kind, ground = _draw_ground(rng, max_n)
    closure = causal_closure(ground)
    mu, nu = _draw_measure_pair(rng, closure, ground)
    verdict = relate(closure, mu, nu)
    verify_verdict(closure, mu, nu, verdict)
    report = equivalence_audit(closure, mu, nu)
    ok = report.all_agree and report.coupling_feasible == verdict.related
    note = "" if ok else f"conditions={report.conditions()}"
    return kind, ground.n, ok, note, {"five_way": report.all_agree}


def _trial_timefns(rng: random.Random, max_n: int) -> tuple[str, int, bool, str, dict]:
    kind, ground = _draw_ground(rng, max_n)
    closure = causal_closure(ground)
    mu, nu = _draw_measure_pair(rng, closure, ground)
    verdict = relate(closure, mu, nu)
    verify_verdict(closure, mu, nu, verdict)
    flow = verdict.related

    family = build_separating_family(ground)
    fam_open = check_threshold_condition(family, mu, nu, open_halfline=True)
    fam_closed = check_threshold_condition(family, mu, nu, open_halfline=False)
    fam_integral = check_integral_condition(family, mu, nu)

    # the family is necessary evidence; up-set indicators make it sufficient
    full_open = fam_open and _upset_threshold_complete(ground, closure, mu, nu, True)
    full_closed = fam_closed and _upset_threshold_complete(ground, closure, mu, nu, False)
    full_integral = fam_integral and _upset_integral_complete(ground, closure, mu, nu)

    necessity = (not flow) or (fam_open and fam_closed and fam_integral)
    agree = (flow == full_open == full_closed == full_integral)
    ok = necessity and agree
    note = ""
    if not ok:
        note = (f"flow={flow} open={fam_open}/{full_open} "
                f"closed={fam_closed}/{full_closed} "
                f"integral={fam_integral}/{full_integral}")
    return kind, ground.n, ok, note, {
        "threshold_open": flow == full_open,
        "threshold_closed": flow == full_closed,
        "integral": flow == full_integral,
    }


def _trial_multitime(rng: random.Random, max_n: int,
                     sampler_trials: int) -> tuple[str, int, bool, str, dict]:
    kind, ground = _draw_ground(rng, max_n)
    fns = [gen_time_function(ground, rng.randrange(1 << 30))
           for _ in range(rng.randint(1, 4))]
    ordering = multi_time_ordering(fns)
    mu, nu = _draw_measure_pair(rng, ordering, ground)
    verdict = relate(ordering, mu, nu)
    verify_verdict(ordering, mu, nu, verdict)
    report = equivalence_audit(ordering, mu, nu)
    sampler_sound = True
    if report.coupling_feasible:
        sampler_sound = monotone_phi_sampler(fns, mu, nu, trials=sampler_trials,
                                             seed=rng.randrange(1 << 30))
    ok = report.all_agree and report.coupling_feasible == verdict.related and sampler_sound
    note = "" if ok else (f"conditions={report.conditions()} "
                          f"sampler_sound={sampler_sound}")
    return kind, ground.n, ok, note, {
        "five_way": report.all_agree,
        "sampler_sound": sampler_sound,
    }


def _trial_antisym(rng: random.Random, max_n: int) -> tuple[str, int, bool, str, dict]:
    if rng.random() < 0.8:
        kind, ground = _draw_ground(rng, max_n)
        closure = causal_closure(ground)
        mu, nu = _draw_measure_pair(rng, closure, ground)
        for a, b in ((mu, nu), (nu, mu)):
            verify_verdict(closure, a, b, relate(closure, a, b))
        holds = antisymmetry_verdict(ground, mu, nu)
        return kind, ground.n, holds, "" if holds else "antisymmetry failed", {
            "antisymmetry_holds": holds}

    n = rng.randint(2, max(2, max_n))
    ground = gen_cyclic(n, rng.randrange(1 << 30))
    closure = causal_closure(ground)
    mu = gen_measure(ground, rng.randint(1, n), rng.randrange(1 << 30))
    nu = gen_measure(ground, rng.randint(1, n), rng.randrange(1 << 30))
    raised = False
    try:
        antisymmetry_verdict(ground, mu, nu)
    except NotStablyCausalError:
        raised = True
    # exhibit the counterexample: two distinct mutually related points
    pair = next(((p, q) for p in range(n) for q in range(n)
                 if p != q and closure.has(p, q) and closure.has(q, p)), None)
    mutual = False
    if pair is not None:
        dp = Measure.point(n, pair[0])
        dq = Measure.point(n, pair[1])
        mutual = (relate(closure, dp, dq).related
                  and relate(closure, dq, dp).related and dp != dq)
    ok = raised and mutual
    note = "" if ok else f"raised={raised} mutual={mutual}"
    return "cyclic", n, ok, note, {"counterexample_regime": ok}


def run_audit(theorem: str, trials: int, max_n: int, seed: int,
              sampler_trials: int = 200) -> AuditReport:
    """Run one randomized suite and aggregate the outcome.

    Deterministic given (theorem, trials, max_n, seed); each trial draws
    from its own seeded generator, recorded for replay.
    """
    if theorem not in THEOREM_IDS:
        raise ValidationError(f"unknown theorem id {theorem!r}; choose from {THEOREM_IDS}")
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    if max_n < 1:
        raise ValidationError("max_n must be at least 1")
    if theorem in _ENUMERATION_SUITES and max_n > _ENUMERATION_MAX_N:
        raise ValidationError(
            f"audit {theorem!r} enumerates subsets; max_n capped at {_ENUMERATION_MAX_N}")

    master = random.Random(seed)
    report = AuditReport(theorem=theorem, trials=trials, max_n=max_n, seed=seed)
    started = time.perf_counter()
    for index in range(trials):
        trial_seed = master.randrange(1 << 62)
        rng = random.Random(trial_seed)
        if theorem == "equality":
            kind, n, ok, note, agree = _trial_equality(rng, max_n)
        elif theorem == "main":
            kind, n, ok, note, agree = _trial_main(rng, max_n)
        elif theorem == "timefns":
            kind, n, ok, note, agree = _trial_timefns(rng, max_n)
        elif theorem == "multitime":
            kind, n, ok, note, agree = _trial_multitime(rng, max_n, sampler_trials)
        else:
            kind, n, ok, note, agree = _trial_antisym(rng, max_n)
        report.ground_sizes.append(n)
        for key, good in agree.items():
            report.agreements[key] = report.agreements.get(key, 0) + int(good)
        if not ok:
            report.discrepancies.append(
                f"trial {index} seed={trial_seed} kind={kind} n={n}: {note}")
        report.records.append(TrialRecord(index, trial_seed, kind, n, ok, note))
    report.wall_time = time.perf_counter() - started
    return report
