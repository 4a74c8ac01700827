"""Deciding which population laws some information structure can induce.

A law is feasible for a prior exactly when it spreads its own base law: the
mixture, over states, of point masses at the state-conditional reweightings
of its expected belief measure. This module computes those reweightings, the
base law, and a full verdict with either a decomposition (reusable for
synthesis) or an infeasibility certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import InvariantError, PriorInconsistencyError
from .measures import (
    DiscreteMeasure,
    PopulationLaw,
    Prior,
    barycenter,
    law_expected_measure,
)
from .mps import (
    BinaryBase,
    InfeasibilityCertificate,
    MeanMismatch,
    SpreadDecomposition,
    SpreadTarget,
    mps_decompose,
)
from .rationals import parse_rational


def conditional_tilt(measure: DiscreteMeasure, prior: Prior, state: int) -> DiscreteMeasure:
    """Reweight a belief measure by the likelihood of one state.

    Atom x gets weight w * x_state / mu_state; atoms assigning zero to the
    state disappear. The result is a probability measure exactly when the
    measure's barycenter equals the prior, so anything else is rejected.
    """
    if measure.dimension != prior.dimension:
        raise InvariantError("measure and prior live on different state spaces")
    center = barycenter(measure)
    if center != prior.belief:
        raise PriorInconsistencyError(center, prior.belief)
    mu = prior.coordinate(state)
    return DiscreteMeasure(
        (belief, weight * belief.coordinate(state) / mu)
        for belief, weight in measure.atoms
    )


def base_law(law: PopulationLaw, prior: Prior) -> SpreadTarget:
    """The state-indexed mixture of conditional reweightings of the law's expected measure."""
    expected = law_expected_measure(law)
    return SpreadTarget(
        (prior.coordinate(state), conditional_tilt(expected, prior, state))
        for state in range(prior.dimension)
    )


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of `check_feasible`.

    When the law's mean belief matches the prior, exactly one of decomposition
    and certificate is present. When it does not, the verdict is infeasible
    with a belief-level `MeanMismatch` certificate and no base.
    """

    feasible: bool
    prior_consistent: bool
    base: SpreadTarget | None
    decomposition: SpreadDecomposition | None
    certificate: InfeasibilityCertificate | None


def check_feasible(law: PopulationLaw, prior: Prior) -> FeasibilityVerdict:
    """Decide feasibility of a population law under a prior, with evidence."""
    if law.dimension != prior.dimension:
        raise InvariantError("law and prior live on different state spaces")
    expected = law_expected_measure(law)
    center = barycenter(expected)
    if center != prior.belief:
        return FeasibilityVerdict(
            feasible=False,
            prior_consistent=False,
            base=None,
            decomposition=None,
            certificate=MeanMismatch(center, prior.belief),
        )
    base = base_law(law, prior)
    result = mps_decompose(law, base)
    if isinstance(result, SpreadDecomposition):
        return FeasibilityVerdict(True, True, base, result, None)
    return FeasibilityVerdict(False, True, base, None, result)


def binary_base(mu, a, b) -> BinaryBase:
    """Closed-form base for two-state laws whose beliefs take the two values a < mu < b.

    The high atom (mu - a) * b / ((b - a) * mu) carries weight mu, the low atom
    (mu - a) * (1 - b) / ((b - a) * (1 - mu)) carries weight 1 - mu; the result
    is oriented with `a` the low atom and alpha = 1 - mu.
    """
    mu, a, b = parse_rational(mu), parse_rational(a), parse_rational(b)
    if not 0 <= a < mu < b <= 1:
        raise InvariantError(f"need 0 <= a < mu < b <= 1, got a={a}, mu={mu}, b={b}")
    high = (mu - a) * b / ((b - a) * mu)
    low = (mu - a) * (1 - b) / ((b - a) * (1 - mu))
    return BinaryBase(a=low, b=high, alpha=1 - mu)
