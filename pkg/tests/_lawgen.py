"""Random known-feasible instances for round-trip tests.

Each law is assembled from an explicit per-state decomposition (multinomial,
public-signal, or a mixture of the two around prescribed conditional belief
measures), so feasibility holds by construction and the checker has no excuse.
"""

import random
from fractions import Fraction

from poplaw import (
    Belief,
    DiscreteMeasure,
    EmpiricalDistribution,
    PopulationLaw,
    Prior,
    SymmetricProduct,
    barycenter,
    conditional_tilt,
    mix_laws,
    multinomial_law,
)


def _binary_belief_pool():
    vals = set()
    for q in (2, 3, 4, 5, 6):
        for p in range(q + 1):
            vals.add(Fraction(p, q))
    return [Belief.binary(v) for v in sorted(vals)]


def _ternary_belief_pool():
    out = []
    d = 4
    for i in range(d + 1):
        for j in range(d + 1 - i):
            out.append(Belief([Fraction(i, d), Fraction(j, d), Fraction(d - i - j, d)]))
    return out


BINARY_POOL = _binary_belief_pool()
TERNARY_POOL = _ternary_belief_pool()


def _positive_composition(rng, total, parts):
    counts = [1] * parts
    for _ in range(total - parts):
        counts[rng.randrange(parts)] += 1
    return counts


def _public_law(measure, n):
    return PopulationLaw(
        n, [(EmpiricalDistribution.constant(n, b), w) for b, w in measure.atoms]
    )


def _component_law(rng, tilt, n):
    kind = rng.choice(("multinomial", "public", "mixture"))
    if kind == "multinomial":
        return multinomial_law(SymmetricProduct(tilt, n))
    if kind == "public":
        return _public_law(tilt, n)
    lam = Fraction(rng.randint(1, 19), 20)
    return mix_laws(
        [
            (lam, multinomial_law(SymmetricProduct(tilt, n))),
            (1 - lam, _public_law(tilt, n)),
        ]
    )


def random_feasible_instance(rng: random.Random, max_n: int = 5, max_atoms: int = 4):
    """A (law, prior) pair that is feasible by construction."""
    while True:
        states = rng.choice((2, 2, 2, 3))
        if states == 2:
            n = rng.randint(1, max_n)
            k = rng.randint(2, max_atoms)
            pool = BINARY_POOL
        else:
            n = rng.randint(1, min(4, max_n))
            k = rng.randint(2, min(3, max_atoms))
            pool = TERNARY_POOL
        beliefs = rng.sample(pool, k)
        denom = rng.randint(k, 20)
        weights = _positive_composition(rng, denom, k)
        expected = DiscreteMeasure(
            (b, Fraction(c, denom)) for b, c in zip(beliefs, weights)
        )
        center = barycenter(expected)
        if any(c == 0 for c in center.coords):
            continue
        prior = Prior(center)
        components = []
        for state in range(states):
            tilt = conditional_tilt(expected, prior, state)
            components.append((prior.coordinate(state), _component_law(rng, tilt, n)))
        return mix_laws(components), prior


def random_binary_posterior_law(rng: random.Random, max_n: int = 6, max_denominator: int = 12):
    """A law over two beliefs with arbitrary grid weights, plus a matching prior.

    Returns (law, prior, a, b, consistent): `consistent` says whether the prior
    was derived from the law's mean (martingale holds) or drawn independently.
    """
    n = rng.randint(1, max_n)
    grid = [Fraction(p, q) for q in (2, 3, 4, 5, 6) for p in range(q + 1)]
    a, b = sorted(rng.sample(sorted(set(grid)), 2))
    lo, hi = Belief.binary(a), Belief.binary(b)
    denom = rng.randint(1, max_denominator)
    weights = [rng.randint(0, denom) for _ in range(n + 1)]
    if sum(weights) == 0:
        weights[rng.randrange(n + 1)] = 1
    total = sum(weights)
    atoms = [
        (EmpiricalDistribution(n, [(hi, k), (lo, n - k)]), Fraction(w, total))
        for k, w in enumerate(weights)
        if w
    ]
    law = PopulationLaw(n, atoms)
    mean = sum(Fraction(k, n) * Fraction(w, total) for k, w in enumerate(weights))
    consistent = rng.random() < 0.5
    if consistent:
        mu = a + mean * (b - a)
        if not 0 < mu < 1:
            consistent = False
    if not consistent:
        mu = Fraction(rng.randint(1, 9), 10)
    return law, Prior.binary(mu), a, b, consistent
