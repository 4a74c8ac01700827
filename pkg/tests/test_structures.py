import itertools
import random
from fractions import Fraction as F

import pytest

from _lawgen import random_feasible_instance
from poplaw import (
    Belief,
    EmpiricalDistribution,
    InformationStructure,
    InvariantError,
    PopulationLaw,
    Prior,
    ResourceLimitError,
    SpreadDecomposition,
    SymmetricScheme,
    barycenter,
    bayes_posterior,
    check_feasible,
    enumerate_grid_structures,
    expand_scheme,
    induced_population_law,
    law_expected_measure,
    simulate,
    synthesize,
)

HALF = Prior.binary(F(1, 2))


def fully_revealing(n=2):
    labels = ("zero", "one")
    kernel = [
        (((labels[0],) * n, F(1)),),
        (((labels[1],) * n, F(1)),),
    ]
    return InformationStructure(n, HALF, [labels] * n, kernel)


def uninformative(n=2, prior=HALF):
    kernel = [((("x",) * n, F(1)),) for _ in range(prior.dimension)]
    return InformationStructure(n, prior, [("x",)] * n, kernel)


def example_three_agents():
    """State revealed to agent 3; agents 1 and 2 signal-correlated."""
    tab0 = [
        (("s1", "s1", "r0"), F(1, 3)),
        (("s1", "s2", "r0"), F(1, 3)),
        (("s2", "s1", "r0"), F(1, 3)),
    ]
    tab1 = [
        (("s1", "s2", "r1"), F(1, 3)),
        (("s2", "s1", "r1"), F(1, 3)),
        (("s2", "s2", "r1"), F(1, 3)),
    ]
    return InformationStructure(
        3, HALF, [("s1", "s2"), ("s1", "s2"), ("r0", "r1")], [tab0, tab1]
    )


# --------------------------------------------------------- construction


def test_kernel_must_sum_to_one():
    with pytest.raises(InvariantError):
        InformationStructure(
            1, HALF, [("a", "b")], [((("a",), F(1, 2)),), ((("a",), F(1)),)]
        )


def test_labels_must_belong_to_signal_sets():
    with pytest.raises(InvariantError):
        InformationStructure(1, HALF, [("a",)], [((("b",), F(1)),), ((("a",), F(1)),)])


# --------------------------------------------------------- bayes posteriors


def test_fully_revealing_posteriors():
    g = fully_revealing()
    assert bayes_posterior(g, 0, "zero") == Belief.binary(0)
    assert bayes_posterior(g, 0, "one") == Belief.binary(1)


def test_uninformative_posterior_is_prior():
    prior = Prior.binary(F(2, 7))
    g = uninformative(3, prior)
    assert bayes_posterior(g, 1, "x") == prior.belief


def test_example_posteriors_are_thirds():
    g = example_three_agents()
    assert bayes_posterior(g, 0, "s1") == Belief.binary(F(1, 3))
    assert bayes_posterior(g, 0, "s2") == Belief.binary(F(2, 3))
    assert bayes_posterior(g, 1, "s1") == Belief.binary(F(1, 3))


def test_zero_probability_signal_rejected():
    g = fully_revealing()
    with pytest.raises(InvariantError):
        bayes_posterior(g, 0, "missing")  # not a label at all
    drop = InformationStructure(
        1,
        HALF,
        [("a", "b")],
        [((("a",), F(1)),), ((("a",), F(1)),)],
    )
    with pytest.raises(InvariantError):
        bayes_posterior(drop, 0, "b")


# --------------------------------------------------------- induced laws


def test_example_induced_law():
    g = example_three_agents()
    law = induced_population_law(g)
    b0, b13, b23, b1 = (
        Belief.binary(0),
        Belief.binary(F(1, 3)),
        Belief.binary(F(2, 3)),
        Belief.binary(1),
    )
    expected = PopulationLaw(
        3,
        [
            (EmpiricalDistribution(3, [(b13, 2), (b0, 1)]), F(1, 6)),
            (EmpiricalDistribution(3, [(b13, 1), (b23, 1), (b0, 1)]), F(2, 6)),
            (EmpiricalDistribution(3, [(b13, 1), (b23, 1), (b1, 1)]), F(2, 6)),
            (EmpiricalDistribution(3, [(b23, 2), (b1, 1)]), F(1, 6)),
        ],
    )
    assert law == expected


def test_reveal_to_half_four_agents():
    labels = ("zero", "one")
    kernel = [
        ((("zero", "zero", "x", "x"), F(1)),),
        ((("one", "one", "x", "x"), F(1)),),
    ]
    g = InformationStructure(
        4, HALF, [labels, labels, ("x",), ("x",)], kernel
    )
    law = induced_population_law(g)
    mu = Belief.binary(F(1, 2))
    expected = PopulationLaw(
        4,
        [
            (EmpiricalDistribution(4, [(Belief.binary(1), 2), (mu, 2)]), F(1, 2)),
            (EmpiricalDistribution(4, [(Belief.binary(0), 2), (mu, 2)]), F(1, 2)),
        ],
    )
    assert law == expected


def test_uninformative_induced_law():
    g = uninformative(3)
    assert induced_population_law(g) == PopulationLaw.dirac(
        EmpiricalDistribution.constant(3, HALF.belief)
    )


def test_martingale_over_grid_structures():
    for structure in itertools.islice(
        enumerate_grid_structures(2, HALF, 2, 2), 0, None, 7
    ):
        law = induced_population_law(structure)
        assert barycenter(law_expected_measure(law)) == HALF.belief


# --------------------------------------------------------- synthesis


def footnote_law():
    b13, b23 = Belief.binary(F(1, 3)), Belief.binary(F(2, 3))
    h1 = EmpiricalDistribution(3, [(b13, 2), (b23, 1)])
    h2 = EmpiricalDistribution(3, [(b23, 2), (b13, 1)])
    return PopulationLaw(3, [(h1, F(1, 2)), (h2, F(1, 2))]), h1, h2


def test_synthesize_footnote_law():
    law, h1, h2 = footnote_law()
    verdict = check_feasible(law, HALF)
    scheme = synthesize(law, HALF, verdict.decomposition)
    assert scheme.state_laws[0] == PopulationLaw.dirac(h1)
    assert scheme.state_laws[1] == PopulationLaw.dirac(h2)
    assert scheme.law() == law  # prior-weighted state laws mix back to the law
    structure = expand_scheme(scheme)
    # three distinct assignments per state, 1/3 each
    for state in range(2):
        assert len(structure.kernel[state]) == 3
        assert all(p == F(1, 3) for _, p in structure.kernel[state])
    assert induced_population_law(structure) == law


def test_synthesize_no_information_law():
    mu = Prior.binary(F(2, 5))
    law = PopulationLaw.dirac(EmpiricalDistribution.constant(3, mu.belief))
    verdict = check_feasible(law, mu)
    scheme = synthesize(law, mu, verdict.decomposition)
    # both states announce the uninformative empirical distribution
    assert scheme.state_laws == (law, law)
    assert induced_population_law(expand_scheme(scheme)) == law


def test_synthesize_rejects_broken_decomposition():
    law, h1, h2 = footnote_law()
    broken = SpreadDecomposition(
        [(F(1, 2), PopulationLaw.dirac(h1)), (F(1, 2), PopulationLaw.dirac(h1))]
    )
    with pytest.raises(InvariantError):
        synthesize(law, HALF, broken)


def test_expand_single_agent_is_identity_like():
    mu = Prior.binary(F(1, 2))
    b = Belief.binary(F(3, 4))
    c = Belief.binary(F(1, 4))
    scheme = SymmetricScheme(
        mu,
        [
            PopulationLaw(1, [(EmpiricalDistribution.constant(1, c), F(3, 4)),
                              (EmpiricalDistribution.constant(1, b), F(1, 4))]),
            PopulationLaw(1, [(EmpiricalDistribution.constant(1, c), F(1, 4)),
                              (EmpiricalDistribution.constant(1, b), F(3, 4))]),
        ],
    )
    structure = expand_scheme(scheme)
    assert structure.n == 1
    assert induced_population_law(structure).n == 1
    assert bayes_posterior(structure, 0, b) == b
    assert bayes_posterior(structure, 0, c) == c


def test_expand_two_agent_scheme_has_two_assignments():
    x, y = Belief.binary(F(1, 4)), Belief.binary(F(3, 4))
    pair = EmpiricalDistribution(2, [(x, 1), (y, 1)])
    scheme = SymmetricScheme(
        HALF,
        [PopulationLaw.dirac(pair), PopulationLaw.dirac(pair)],
    )
    structure = expand_scheme(scheme)
    for state in range(2):
        assert sorted(structure.kernel[state]) == sorted(
            (((x, y), F(1, 2)), ((y, x), F(1, 2)))
        )


def test_expansion_bound():
    law, _, _ = footnote_law()
    verdict = check_feasible(law, HALF)
    scheme = synthesize(law, HALF, verdict.decomposition)
    with pytest.raises(ResourceLimitError):
        expand_scheme(scheme, max_profiles=2)


def test_expansion_bound_env(monkeypatch):
    law, _, _ = footnote_law()
    verdict = check_feasible(law, HALF)
    scheme = synthesize(law, HALF, verdict.decomposition)
    monkeypatch.setenv("POPLAW_MAX_PROFILES", "2")
    with pytest.raises(ResourceLimitError):
        expand_scheme(scheme)


def test_anonymity_of_expansion():
    """Swapping any two agents leaves a synthesized kernel unchanged."""
    law, _, _ = footnote_law()
    verdict = check_feasible(law, HALF)
    structure = expand_scheme(synthesize(law, HALF, verdict.decomposition))
    for i, j in itertools.combinations(range(structure.n), 2):
        for state in range(structure.m):
            swapped = {}
            for profile, prob in structure.kernel[state]:
                p = list(profile)
                p[i], p[j] = p[j], p[i]
                swapped[tuple(p)] = prob
            assert swapped == dict(structure.kernel[state])


def test_bayes_consistency_of_synthesized_labels():
    rng = random.Random(99)
    for _ in range(10):
        law, prior = random_feasible_instance(rng, max_n=3, max_atoms=3)
        verdict = check_feasible(law, prior)
        assert verdict.feasible
        structure = expand_scheme(synthesize(law, prior, verdict.decomposition))
        for agent in range(structure.n):
            for label in structure.signal_sets[agent]:
                try:
                    posterior = bayes_posterior(structure, agent, label)
                except InvariantError:
                    continue  # label unused by this agent
                assert posterior == label


# --------------------------------------------------------- simulation


def test_simulate_deterministic_scheme_is_exact():
    x = Belief.binary(F(1, 2))
    point = EmpiricalDistribution.constant(2, x)
    scheme = SymmetricScheme(HALF, [PopulationLaw.dirac(point)] * 2)
    for samples in (1, 7, 100):
        assert simulate(scheme, samples, seed=5) == PopulationLaw.dirac(point)


def test_simulate_same_seed_same_result():
    law, _, _ = footnote_law()
    verdict = check_feasible(law, HALF)
    scheme = synthesize(law, HALF, verdict.decomposition)
    a = simulate(scheme, 2000, seed=11)
    b = simulate(scheme, 2000, seed=11)
    assert a == b
    c = simulate(scheme, 2000, seed=12)
    assert c != a  # different stream with overwhelming probability


@pytest.mark.parametrize("shards", [2, 3, 7])
def test_simulate_sharding_invariance(shards):
    law, _, _ = footnote_law()
    verdict = check_feasible(law, HALF)
    scheme = synthesize(law, HALF, verdict.decomposition)
    single = simulate(scheme, 999, seed=77)
    assert simulate(scheme, 999, seed=77, shards=shards) == single


def test_simulate_converges_to_law():
    law, _, _ = footnote_law()
    verdict = check_feasible(law, HALF)
    scheme = synthesize(law, HALF, verdict.decomposition)
    estimate = simulate(scheme, 20000, seed=3)
    tv = sum(
        abs(estimate.mass(e) - law.mass(e))
        for e in set(estimate.support()) | set(law.support())
    ) / 2
    assert tv < F(1, 50)
