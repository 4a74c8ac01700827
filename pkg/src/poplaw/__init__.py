"""poplaw: exact feasibility, synthesis and design of population posterior-belief laws.

A population of Bayesian agents shares a prior; each agent sees a private
signal. The library decides which distributions over the population's
empirical posterior distributions some information structure can induce,
constructs an implementing structure whenever one exists, and computes the
derived quantities: maximal belief polarization, feasibility of symmetric
private-private (product) information, and the optimal value of private
persuasion via grid concavification. All probabilities are exact rationals.
"""

from .errors import (
    InvariantError,
    PoplawError,
    PriorInconsistencyError,
    ResourceLimitError,
)
from .feasibility import (
    FeasibilityVerdict,
    base_law,
    binary_base,
    check_feasible,
    conditional_tilt,
)
from .measures import (
    Belief,
    DiscreteMeasure,
    EmpiricalDistribution,
    PopulationLaw,
    Prior,
    ScalarMeasure,
    barycenter,
    empirical_to_measure,
    law_expected_measure,
    mix_laws,
    project,
    quantile_distribution,
    upper_quantile_distribution,
)
from .mps import (
    BinaryBase,
    FarkasCertificate,
    InfeasibilityCertificate,
    MeanMismatch,
    MpsVerdict,
    QuantileViolation,
    SpreadDecomposition,
    SpreadTarget,
    is_mps_binary_base,
    mps_decompose,
    verify_certificate,
    verify_decomposition,
)
from .persuasion import (
    LimitReport,
    PersuasionInstance,
    PersuasionSolution,
    SenderUtility,
    grid_concavification,
    persuasion_limit_value,
    persuasion_policy,
    persuasion_value,
)
from .polarization import (
    PolarizationReport,
    expected_polarization,
    max_polarization,
    pol,
    reveal_half_structure,
    search_max_polarization,
    variance,
)
from .product import (
    SymmetricProduct,
    binary_product_feasible_quantile,
    binomial_quantile_expectation,
    multinomial_law,
    product_feasible,
    symmetric_threshold,
    threshold_curve,
)
from .structures import (
    InformationStructure,
    SymmetricScheme,
    bayes_posterior,
    enumerate_grid_structures,
    expand_scheme,
    induced_population_law,
    simulate,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "Belief",
    "BinaryBase",
    "DiscreteMeasure",
    "EmpiricalDistribution",
    "FarkasCertificate",
    "FeasibilityVerdict",
    "InfeasibilityCertificate",
    "InformationStructure",
    "InvariantError",
    "LimitReport",
    "MeanMismatch",
    "MpsVerdict",
    "PersuasionInstance",
    "PersuasionSolution",
    "PolarizationReport",
    "PoplawError",
    "PopulationLaw",
    "Prior",
    "PriorInconsistencyError",
    "QuantileViolation",
    "ResourceLimitError",
    "ScalarMeasure",
    "SenderUtility",
    "SpreadDecomposition",
    "SpreadTarget",
    "SymmetricProduct",
    "SymmetricScheme",
    "barycenter",
    "base_law",
    "bayes_posterior",
    "binary_base",
    "binary_product_feasible_quantile",
    "binomial_quantile_expectation",
    "check_feasible",
    "conditional_tilt",
    "empirical_to_measure",
    "enumerate_grid_structures",
    "expand_scheme",
    "expected_polarization",
    "grid_concavification",
    "induced_population_law",
    "is_mps_binary_base",
    "law_expected_measure",
    "max_polarization",
    "mix_laws",
    "mps_decompose",
    "multinomial_law",
    "persuasion_limit_value",
    "persuasion_policy",
    "persuasion_value",
    "pol",
    "product_feasible",
    "project",
    "quantile_distribution",
    "reveal_half_structure",
    "search_max_polarization",
    "simulate",
    "symmetric_threshold",
    "synthesize",
    "threshold_curve",
    "upper_quantile_distribution",
    "variance",
    "verify_certificate",
    "verify_decomposition",
]
