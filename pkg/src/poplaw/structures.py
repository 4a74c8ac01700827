"""Finite information structures: Bayes posteriors, induced laws, synthesis.

An `InformationStructure` is the explicit object: per-agent signal sets plus,
for each state, a joint distribution over signal profiles. Enumerating it
exactly (`induced_population_law`) is the brute-force oracle everything else
is checked against.

A `SymmetricScheme` is the compact anonymous form produced by synthesis: per
state, a population law over empirical distributions whose beliefs double as
signal labels. Expanding a scheme averages over all assignments of each
multiset to the agents (uniformly random permutation), collapsed by multiset
type so the kernel stays small. `simulate` is the Monte-Carlo fallback when
expansion would explode.
"""

from __future__ import annotations

import os
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Hashable, Iterable, Sequence

from .errors import InvariantError, ResourceLimitError
from .feasibility import base_law
from .measures import (
    Belief,
    EmpiricalDistribution,
    PopulationLaw,
    Prior,
    mix_laws,
)
from .mps import SpreadDecomposition, verify_decomposition
from .rationals import parse_rational
from .rng import MASK64, PHI, TWO64, mix64

ZERO = Fraction(0)

MAX_PROFILES_ENV = "POPLAW_MAX_PROFILES"
DEFAULT_MAX_PROFILES = 10**6

SignalLabel = Hashable


def _label_key(label):
    return str(label)


def max_profiles_bound() -> int:
    raw = os.environ.get(MAX_PROFILES_ENV)
    if raw is None:
        return DEFAULT_MAX_PROFILES
    try:
        bound = int(raw)
    except ValueError as exc:
        raise InvariantError(f"{MAX_PROFILES_ENV} must be an integer: {raw!r}") from exc
    if bound < 1:
        raise InvariantError(f"{MAX_PROFILES_ENV} must be positive: {bound}")
    return bound


@dataclass(frozen=True)
class InformationStructure:
    """n agents, a prior over m states, per-agent signal sets, per-state kernels.

    `kernel[state]` lists (profile, probability) pairs over signal profiles
    (one label per agent); each state's probabilities sum to 1.
    """

    n: int
    prior: Prior
    signal_sets: tuple[tuple[SignalLabel, ...], ...]
    kernel: tuple[tuple[tuple[tuple[SignalLabel, ...], Fraction], ...], ...]

    def __init__(self, n: int, prior: Prior, signal_sets: Iterable, kernel: Iterable) -> None:
        if not isinstance(n, int) or n < 1:
            raise InvariantError(f"agent count must be a positive integer: {n}")
        signal_sets = tuple(tuple(s) for s in signal_sets)
        if len(signal_sets) != n:
            raise InvariantError("need one signal set per agent")
        if any(len(set(s)) != len(s) or not s for s in signal_sets):
            raise InvariantError("signal sets must be non-empty without duplicates")
        cleaned = []
        kernel = tuple(kernel)
        if len(kernel) != prior.dimension:
            raise InvariantError("need one kernel per state")
        for state_profiles in kernel:
            merged: dict[tuple, Fraction] = {}
            for profile, prob in state_profiles:
                profile = tuple(profile)
                if len(profile) != n:
                    raise InvariantError(f"profile length {len(profile)} != n={n}")
                for agent, label in enumerate(profile):
                    if label not in signal_sets[agent]:
                        raise InvariantError(
                            f"label {label!r} not in agent {agent}'s signal set"
                        )
                prob = parse_rational(prob)
                if prob < 0:
                    raise InvariantError(f"negative kernel probability {prob}")
                if prob == 0:
                    continue
                merged[profile] = merged.get(profile, ZERO) + prob
            if sum(merged.values()) != 1:
                raise InvariantError("each state's kernel must sum to exactly 1")
            cleaned.append(
                tuple(sorted(merged.items(), key=lambda kv: tuple(map(_label_key, kv[0]))))
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "signal_sets", signal_sets)
        object.__setattr__(self, "kernel", tuple(cleaned))

    @property
    def m(self) -> int:
        return self.prior.dimension

    def signal_marginal(self, agent: int, label: SignalLabel, state: int) -> Fraction:
        """Probability that the agent sees the label, conditional on the state."""
        return sum(
            (prob for profile, prob in self.kernel[state] if profile[agent] == label),
            ZERO,
        )

    def profile_probabilities(self) -> dict[tuple, Fraction]:
        """Unconditional probability of every positive-probability profile."""
        out: dict[tuple, Fraction] = {}
        for state in range(self.m):
            mu = self.prior.coordinate(state)
            for profile, prob in self.kernel[state]:
                out[profile] = out.get(profile, ZERO) + mu * prob
        return out


def bayes_posterior(structure: InformationStructure, agent: int, label: SignalLabel) -> Belief:
    """The posterior belief of an agent after seeing one signal label."""
    marginals = [
        structure.signal_marginal(agent, label, state) for state in range(structure.m)
    ]
    weighted = [
        structure.prior.coordinate(state) * marginals[state]
        for state in range(structure.m)
    ]
    total = sum(weighted, ZERO)
    if total == 0:
        raise InvariantError(
            f"signal {label!r} has zero probability for agent {agent}"
        )
    return Belief(w / total for w in weighted)


def induced_population_law(structure: InformationStructure) -> PopulationLaw:
    """Exact enumeration of the law over empirical posterior distributions."""
    posteriors: dict[tuple[int, SignalLabel], Belief] = {}
    atoms: dict[EmpiricalDistribution, Fraction] = {}
    for profile, prob in structure.profile_probabilities().items():
        beliefs = []
        for agent, label in enumerate(profile):
            key = (agent, label)
            if key not in posteriors:
                posteriors[key] = bayes_posterior(structure, agent, label)
            beliefs.append(posteriors[key])
        empirical = EmpiricalDistribution(structure.n, Counter(beliefs).items())
        atoms[empirical] = atoms.get(empirical, ZERO) + prob
    return PopulationLaw(structure.n, atoms.items())


@dataclass(frozen=True)
class SymmetricScheme:
    """Per-state laws over empirical distributions; signals are the beliefs themselves."""

    prior: Prior
    state_laws: tuple[PopulationLaw, ...]

    def __init__(self, prior: Prior, state_laws: Iterable) -> None:
        state_laws = tuple(state_laws)
        if len(state_laws) != prior.dimension:
            raise InvariantError("need one state law per state")
        if len({law.n for law in state_laws}) != 1:
            raise InvariantError("state laws must share one population size")
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "state_laws", state_laws)

    @property
    def n(self) -> int:
        return self.state_laws[0].n

    def law(self) -> PopulationLaw:
        """The unconditional law the scheme induces."""
        return mix_laws(
            [
                (self.prior.coordinate(state), state_law)
                for state, state_law in enumerate(self.state_laws)
            ]
        )


def synthesize(
    law: PopulationLaw, prior: Prior, decomposition: SpreadDecomposition
) -> SymmetricScheme:
    """Package a verified decomposition as an implementing scheme.

    In each state the scheme draws an empirical distribution from that state's
    component law and deals its beliefs to the agents in uniformly random
    order; the beliefs themselves are the signals.
    """
    if not verify_decomposition(law, base_law(law, prior), decomposition):
        raise InvariantError("decomposition does not verify against the law's base")
    return SymmetricScheme(prior, [q for _, q in decomposition.components])


def _assignment_count(empirical: EmpiricalDistribution) -> int:
    total = factorial(empirical.n)
    for _, count in empirical.counts:
        total //= factorial(count)
    return total


def _distinct_assignments(empirical: EmpiricalDistribution):
    """All distinct ways to deal the multiset to the agents, without the n! blowup."""
    def rec(remaining: list[tuple[Belief, int]], slots: int):
        if slots == 0:
            yield ()
            return
        for idx, (belief, count) in enumerate(remaining):
            if count == 0:
                continue
            rest = list(remaining)
            rest[idx] = (belief, count - 1)
            for tail in rec(rest, slots - 1):
                yield (belief,) + tail

    return rec(list(empirical.counts), empirical.n)


def expand_scheme(
    scheme: SymmetricScheme, max_profiles: int | None = None
) -> InformationStructure:
    """The explicit structure a scheme describes, collapsed by multiset type.

    Each distinct assignment of an empirical distribution's beliefs to the
    agents appears as one profile with the multinomial share of the weight.
    Raises `ResourceLimitError` when the profile count would exceed the bound
    (environment variable POPLAW_MAX_PROFILES, default one million).
    """
    bound = max_profiles if max_profiles is not None else max_profiles_bound()
    total = 0
    for state_law in scheme.state_laws:
        for empirical, _ in state_law.atoms:
            total += _assignment_count(empirical)
            if total > bound:
                raise ResourceLimitError(
                    f"expansion needs more than {bound} profiles; raise the bound or simulate"
                )
    labels: set[Belief] = set()
    for state_law in scheme.state_laws:
        for empirical, _ in state_law.atoms:
            labels.update(empirical.support())
    signal_set = tuple(sorted(labels))
    kernel = []
    for state_law in scheme.state_laws:
        profiles: dict[tuple, Fraction] = {}
        for empirical, weight in state_law.atoms:
            share = weight / _assignment_count(empirical)
            for profile in _distinct_assignments(empirical):
                profiles[profile] = profiles.get(profile, ZERO) + share
        kernel.append(tuple(profiles.items()))
    return InformationStructure(
        scheme.n, scheme.prior, [signal_set] * scheme.n, kernel
    )


def simulate(
    scheme: SymmetricScheme, samples: int, seed: int, shards: int = 1
) -> PopulationLaw:
    """Monte-Carlo frequency estimate of the scheme's law.

    Per sample: draw the state from the prior, then an empirical distribution
    from that state's law, each from the sample's own substream (see `rng`).
    The result depends only on (samples, seed), never on `shards`, because
    sharding just partitions the sample indices.
    """
    if not isinstance(samples, int) or samples < 1:
        raise InvariantError(f"sample count must be a positive integer: {samples}")
    if not isinstance(shards, int) or shards < 1:
        raise InvariantError(f"shard count must be a positive integer: {shards}")
    tables = (
        _selection_table(enumerate(scheme.prior.coords)),
        [_selection_table(law.atoms) for law in scheme.state_laws],
    )
    counts: Counter[EmpiricalDistribution] = Counter()
    bounds = [samples * k // shards for k in range(shards + 1)]
    for shard in range(shards):
        counts.update(_simulate_range(tables, seed, bounds[shard], bounds[shard + 1]))
    return PopulationLaw(
        scheme.n, [(emp, Fraction(c, samples)) for emp, c in counts.items()]
    )


def _selection_table(atoms):
    """Items plus integer cutoffs: a draw u picks the first item with u < cutoff.

    The cutoff for cumulative weight w is ceil(w * 2**64), which agrees exactly
    with the comparison u / 2**64 < w for integer u.
    """
    items = []
    cutoffs = []
    acc = ZERO
    for item, weight in atoms:
        acc += weight
        scaled = acc * TWO64
        items.append(item)
        cutoffs.append(-(-scaled.numerator // scaled.denominator))
    return items, cutoffs


def _simulate_range(tables, seed, start, stop):
    (states, state_cutoffs), law_tables = tables
    counts: Counter[EmpiricalDistribution] = Counter()
    for index in range(start, stop):
        # substream rule from `rng`: draw j of sample i is mix(mix(seed+(i+1)PHI)+(j+1)PHI)
        base = mix64((seed + (index + 1) * PHI) & MASK64)
        u_state = mix64((base + PHI) & MASK64)
        state = states[bisect_right(state_cutoffs, u_state)]
        empiricals, cutoffs = law_tables[state]
        u_emp = mix64((base + 2 * PHI) & MASK64)
        counts[empiricals[bisect_right(cutoffs, u_emp)]] += 1
    return counts


def enumerate_grid_structures(
    n: int,
    prior: Prior,
    signals_per_agent: int = 2,
    denominator: int = 2,
):
    """Yield every structure whose kernels put multiples of 1/denominator on profiles.

    Exhaustive over both states independently, so the count is the square of
    the number of weight vectors; keep n, signals_per_agent and denominator
    small.
    """
    if prior.dimension != 2:
        raise InvariantError("grid enumeration is implemented for two states")
    signal_set = tuple(f"s{k}" for k in range(signals_per_agent))
    profiles = list(_profiles(signal_set, n))
    vectors = list(_compositions(denominator, len(profiles)))
    for w0 in vectors:
        kernel0 = tuple(
            (profiles[i], Fraction(w, denominator)) for i, w in enumerate(w0) if w
        )
        for w1 in vectors:
            kernel1 = tuple(
                (profiles[i], Fraction(w, denominator)) for i, w in enumerate(w1) if w
            )
            yield InformationStructure(
                n, prior, [signal_set] * n, [kernel0, kernel1]
            )


def _profiles(signal_set: Sequence, n: int):
    if n == 0:
        yield ()
        return
    for head in signal_set:
        for tail in _profiles(signal_set, n - 1):
            yield (head,) + tail


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail
