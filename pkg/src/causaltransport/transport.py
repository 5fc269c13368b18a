"""Deciding causal precedence between measures.

A measure mu precedes nu over a relation r when some coupling with
marginals (mu, nu) puts all of its mass on related pairs.  The decision
runs as an exact integer max-flow; positive verdicts carry a witness
coupling, negative ones a violating event set.  An independent
exponential oracle and four subset-inequality checkers are provided for
differential testing; they must all agree with the flow on preorders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _kernels
from .errors import CapacityError, InvariantViolationError, ValidationError
from .measures import Coupling, Measure, marginals, mass_on, measure_of, scaled_weights
from .relations import Relation, future_set, is_preorder

# subset enumeration walks 2**n sets; beyond this it refuses rather than hang
ORACLE_CAP = 20


@dataclass(frozen=True)
class RelatednessVerdict:
    """Outcome of a precedence decision.

    Exactly one of witness and certificate is present: a witness coupling
    proves relatedness, a certificate set B disproves it by carrying more
    mu-mass than its future carries nu-mass.
    """

    related: bool
    witness: Optional[Coupling] = None
    certificate: Optional[frozenset[int]] = None


@dataclass(frozen=True)
class EquivalenceReport:
    """Five independently evaluated precedence conditions on one input."""

    coupling_feasible: bool
    compact_future: bool
    future_closed: bool
    compact_past: bool
    past_closed: bool

    def conditions(self) -> dict[str, bool]:
        return {
            "coupling_feasible": self.coupling_feasible,
            "compact_future": self.compact_future,
            "future_closed": self.future_closed,
            "compact_past": self.compact_past,
            "past_closed": self.past_closed,
        }

    @property
    def all_agree(self) -> bool:
        vals = set(self.conditions().values())
        return len(vals) == 1


def _check_sizes(r: Relation, mu: Measure, nu: Measure) -> None:
    if not (r.n == mu.n == nu.n):
        raise ValidationError(
            f"sizes differ: relation {r.n}, measures {mu.n} and {nu.n}")


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapacityError(
            f"{what} enumerates 2**{n} subsets; cap is n <= {cap}")


def relate(r: Relation, mu: Measure, nu: Measure) -> RelatednessVerdict:
    """Decide whether mu precedes nu over r, with proof either way.

    Scales both measures to one integer denominator and runs max flow
    from mu through the related pairs toward nu.  Feasible exactly when
    the flow moves all mass.  The verdict is exact; no floats involved.
    """
    _check_sizes(r, mu, nu)
    n = r.n
    d, wmu, wnu = scaled_weights(mu, nu)
    arcs = sorted(r.pairs)
    value, arc_flows, mu_cut = _kernels.relation_max_flow(n, arcs, wmu, wnu)

    if value == d:
        joint = [[Fraction(0)] * n for _ in range(n)]
        for (p, q), f in zip(arcs, arc_flows):
            if f:
                joint[p][q] = Fraction(f, d)
        return RelatednessVerdict(related=True, witness=Coupling(joint))

    raw = frozenset(i for i, flag in enumerate(mu_cut) if flag)
    # close under the future when the enlarged set still violates; on
    # transitive relations it always does, elsewhere keep the raw cut side
    closed = raw | future_set(r, raw)
    cert = closed if _violates(r, mu, nu, closed) else raw
    return RelatednessVerdict(related=False, certificate=cert)


def _violates(r: Relation, mu: Measure, nu: Measure, b: frozenset[int]) -> bool:
    return measure_of(mu, b) > measure_of(nu, future_set(r, b))


def oracle_relate(r: Relation, mu: Measure, nu: Measure, cap: int = ORACLE_CAP) -> bool:
    """Exhaustive precedence test, independent of the flow solver.

    Checks, for every one of the 2**n event subsets B, that B's mu-mass
    is at most its future's nu-mass and that B's past carries at least
    B's nu-mass.
    """
    _check_sizes(r, mu, nu)
    _check_cap(r.n, cap, "oracle_relate")
    _, wmu, wnu = scaled_weights(mu, nu)
    return _kernels.hall_pair_condition(r.row_bits(), r.col_bits(), wmu, wnu)


def check_compact_condition(r: Relation, mu: Measure, nu: Measure,
                            cap: int = ORACLE_CAP) -> bool:
    """mu(future(C)) <= nu(future(C)) for every event subset C."""
    _check_sizes(r, mu, nu)
    _check_cap(r.n, cap, "check_compact_condition")
    _, wmu, wnu = scaled_weights(mu, nu)
    return _kernels.image_dominance_condition(r.row_bits(), wmu, wnu)


def check_past_compact_condition(r: Relation, mu: Measure, nu: Measure,
                                 cap: int = ORACLE_CAP) -> bool:
    """mu(past(C)) >= nu(past(C)) for every event subset C."""
    _check_sizes(r, mu, nu)
    _check_cap(r.n, cap, "check_past_compact_condition")
    _, wmu, wnu = scaled_weights(mu, nu)
    return _kernels.image_dominance_condition(r.col_bits(), wnu, wmu)


def check_future_closed_condition(r: Relation, mu: Measure, nu: Measure,
                                  cap: int = ORACLE_CAP) -> bool:
    """mu(X) <= nu(X) for every future-closed event set X."""
    _check_sizes(r, mu, nu)
    _check_cap(r.n, cap, "check_future_closed_condition")
    _, wmu, wnu = scaled_weights(mu, nu)
    return _kernels.closed_dominance_condition(r.row_bits(), wmu, wnu)


def check_past_closed_condition(r: Relation, mu: Measure, nu: Measure,
                                cap: int = ORACLE_CAP) -> bool:
    """mu(Y) >= nu(Y) for every past-closed event set Y."""
    _check_sizes(r, mu, nu)
    _check_cap(r.n, cap, "check_past_closed_condition")
    _, wmu, wnu = scaled_weights(mu, nu)
    return _kernels.closed_dominance_condition(r.col_bits(), wnu, wmu)


def equivalence_audit(r: Relation, mu: Measure, nu: Measure,
                      cap: int = ORACLE_CAP,
                      require_preorder: bool = True) -> EquivalenceReport:
    """Evaluate all five precedence conditions independently.

    On reflexive transitive relations the five answers provably coincide,
    so all_agree doubles as a self-test of the implementation.  Pass
    require_preorder=False to probe arbitrary relations, where the
    conditions may legitimately split.
    """
    _check_sizes(r, mu, nu)
    if require_preorder and not is_preorder(r):
        raise ValidationError(
            "equivalence audit assumes a reflexive transitive relation; "
            "pass require_preorder=False to probe anyway")
    return EquivalenceReport(
        coupling_feasible=relate(r, mu, nu).related,
        compact_future=check_compact_condition(r, mu, nu, cap),
        future_closed=check_future_closed_condition(r, mu, nu, cap),
        compact_past=check_past_compact_condition(r, mu, nu, cap),
        past_closed=check_past_closed_condition(r, mu, nu, cap),
    )


def verify_verdict(r: Relation, mu: Measure, nu: Measure,
                   verdict: RelatednessVerdict) -> None:
    """Re-derive the proof carried by a verdict; raise if it fails.

    A witness must be a genuine coupling of (mu, nu) supported on r; a
    certificate must carry strictly more mu-mass than its future carries
    nu-mass.
    """
    if verdict.related:
        if verdict.witness is None or verdict.certificate is not None:
            raise InvariantViolationError("positive verdict must carry only a witness")
        got_mu, got_nu = marginals(verdict.witness)
        if got_mu != mu or got_nu != nu:
            raise InvariantViolationError("witness marginals do not match the inputs")
        if mass_on(verdict.witness, r) != 1:
            raise InvariantViolationError("witness puts mass outside the relation")
    else:
        if verdict.certificate is None or verdict.witness is not None:
            raise InvariantViolationError("negative verdict must carry only a certificate")
        if not _violates(r, mu, nu, frozenset(verdict.certificate)):
            raise InvariantViolationError("certificate does not violate the mass inequality")
