"""Feasibility of agent-symmetric private-private information.

When every agent independently draws a belief from one marginal Q, the
anonymous law of the population is the multinomial over Q's support, and the
product is implementable exactly when that multinomial law is feasible. For
binary-supported marginals the test reduces to a one-dimensional quantile
bound, with the closed form 1/2 - C(2m, m) * 2**-(2m+1) at the symmetric
family (mu = 1/2, atoms a and 1 - a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvariantError, ResourceLimitError
from .feasibility import FeasibilityVerdict, check_feasible
from .measures import (
    DiscreteMeasure,
    EmpiricalDistribution,
    PopulationLaw,
    Prior,
    ScalarMeasure,
    quantile_distribution,
)
from .rationals import parse_rational
from .structures import max_profiles_bound

ZERO = Fraction(0)


@dataclass(frozen=True)
class SymmetricProduct:
    """n agents, each independently drawing a belief from the same marginal."""

    marginal: DiscreteMeasure
    n: int

    def __init__(self, marginal: DiscreteMeasure, n: int) -> None:
        if not isinstance(n, int) or n < 1:
            raise InvariantError(f"agent count must be a positive integer: {n}")
        object.__setattr__(self, "marginal", marginal)
        object.__setattr__(self, "n", n)


def multinomial_law(
    product: SymmetricProduct, max_support: int | None = None
) -> PopulationLaw:
    """The exact law of the empirical distribution of n independent draws."""
    atoms = product.marginal.atoms
    k = len(atoms)
    n = product.n
    bound = max_support if max_support is not None else max_profiles_bound()
    support_size = math.comb(n + k - 1, k - 1)
    if support_size > bound:
        raise ResourceLimitError(
            f"multinomial support {support_size} exceeds the bound {bound}"
        )
    law_atoms = []
    for counts in _count_vectors(n, k):
        weight = Fraction(math.factorial(n))
        for c, (_, prob) in zip(counts, atoms):
            weight = weight / math.factorial(c) * prob**c
        empirical = EmpiricalDistribution(
            n, [(belief, c) for c, (belief, _) in zip(counts, atoms) if c]
        )
        law_atoms.append((empirical, weight))
    return PopulationLaw(n, law_atoms)


def _count_vectors(n: int, k: int):
    # stars and bars over the k support atoms
    for dividers in combinations(range(n + k - 1), k - 1):
        prev = -1
        counts = []
        for d in dividers:
            counts.append(d - prev - 1)
            prev = d
        counts.append(n + k - 1 - prev - 1)
        yield tuple(counts)


def product_feasible(product: SymmetricProduct, prior: Prior) -> FeasibilityVerdict:
    """Feasibility of the symmetric product under the prior.

    Builds the multinomial law and runs the spread machinery against its base;
    two-atom marginals take the quantile shortcut automatically. A marginal
    whose barycenter differs from the prior comes back infeasible with
    prior_consistent False.
    """
    if prior.dimension != 2:
        raise InvariantError("product feasibility is characterized for two states")
    if product.marginal.dimension != 2:
        raise InvariantError("marginal and prior live on different state spaces")
    return check_feasible(multinomial_law(product), prior)


def binomial_measure(n: int, p: Fraction) -> ScalarMeasure:
    """Binomial(n, p) rescaled to the grid {0, 1/n, ..., 1}."""
    return ScalarMeasure(
        (Fraction(i, n), Fraction(math.comb(n, i)) * p**i * (1 - p) ** (n - i))
        for i in range(n + 1)
    )


def binomial_quantile_expectation(n: int, p, alpha) -> Fraction:
    """Mean of the lower alpha-quantile slice of Binomial(n, p) on the 1/n grid."""
    p = parse_rational(p)
    alpha = parse_rational(alpha)
    if not 0 < p < 1:
        raise InvariantError(f"success probability must lie in (0, 1): {p}")
    if not isinstance(n, int) or n < 1:
        raise InvariantError(f"trial count must be a positive integer: {n}")
    return quantile_distribution(binomial_measure(n, p), alpha).mean()


def binary_product_feasible_quantile(n: int, mu, a, b) -> bool:
    """One-dimensional criterion for a binary-supported marginal on {a, b}.

    With the marginal pinned by the prior (weight (mu - a)/(b - a) on b), the
    product is feasible iff the mean of the (1 - mu)-quantile slice of the
    binomial is at most the low atom of the base,
    (mu - a) * (1 - b) / ((b - a) * (1 - mu)).
    """
    mu, a, b = parse_rational(mu), parse_rational(a), parse_rational(b)
    if not 0 < a < mu < b < 1:
        raise InvariantError(f"need 0 < a < mu < b < 1, got a={a}, mu={mu}, b={b}")
    low_atom = (mu - a) * (1 - b) / ((b - a) * (1 - mu))
    return binomial_quantile_expectation(n, (mu - a) / (b - a), 1 - mu) <= low_atom


def symmetric_threshold(n: int) -> Fraction:
    """Smallest low atom a for which the symmetric marginal on {a, 1 - a} stays feasible.

    Closed form 1/2 - C(2m, m) * 2**-(2m+1) with m = n // 2; even n and n + 1
    share the value.
    """
    if not isinstance(n, int) or n < 2:
        raise InvariantError(f"need at least two agents: {n}")
    m = n // 2
    return Fraction(1, 2) - Fraction(math.comb(2 * m, m), 2 ** (2 * m + 1))


def threshold_curve(n_max: int) -> list[tuple[int, Fraction]]:
    """Rows (n, symmetric_threshold(n)) for n = 2 .. n_max."""
    if not isinstance(n_max, int) or n_max < 2:
        raise InvariantError(f"need n_max >= 2: {n_max}")
    return [(n, symmetric_threshold(n)) for n in range(2, n_max + 1)]
