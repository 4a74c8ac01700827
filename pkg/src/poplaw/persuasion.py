"""Private persuasion of a homogeneous population via grid concavification.

A sender with a non-decreasing utility over the fraction of adopters faces n
agents who adopt at posteriors of at least tau. The optimal value is

    mu * u(1) + (1 - mu) * cav_n(u)(mu * (1 - tau) / (tau * (1 - mu)))

where cav_n is the upper concave envelope of u restricted to the 1/n grid,
evaluated here by an exact upper-hull construction. The optimal policy sends
the adopt signal to everyone in the good state; in the bad state it draws an
adoption fraction from the envelope's witness distribution and recommends to
a uniformly random subset of that size, leaving adopters at posterior tau and
everyone else at posterior 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InvariantError
from .measures import Belief, EmpiricalDistribution, PopulationLaw, Prior, ScalarMeasure
from .rationals import parse_rational
from .structures import SymmetricScheme

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SenderUtility:
    """Utility of persuading a fraction of the population, sampled on the 1/n grid."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable) -> None:
        values = tuple(parse_rational(v) for v in values)
        if len(values) < 2:
            raise InvariantError("need utilities at both grid endpoints")
        if any(b < a for a, b in zip(values, values[1:])):
            raise InvariantError("sender utility must be non-decreasing on the grid")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, fn: Callable, n: int) -> "SenderUtility":
        return cls(fn(Fraction(i, n)) for i in range(n + 1))

    @classmethod
    def linear(cls, n: int) -> "SenderUtility":
        return cls.from_function(lambda x: x, n)

    @classmethod
    def step(cls, n: int, cut) -> "SenderUtility":
        """Indicator of reaching the fraction `cut`."""
        cut = parse_rational(cut)
        return cls.from_function(lambda x: ONE if x >= cut else ZERO, n)

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def grid_points(self) -> list[tuple[Fraction, Fraction]]:
        n = self.n
        return [(Fraction(i, n), v) for i, v in enumerate(self.values)]


@dataclass(frozen=True)
class PersuasionInstance:
    """n agents, prior mu on the good state, indifference threshold tau, utility u."""

    n: int
    mu: Fraction
    tau: Fraction
    utility: SenderUtility

    def __init__(self, n: int, mu, tau, utility: SenderUtility) -> None:
        if not isinstance(n, int) or n < 1:
            raise InvariantError(f"agent count must be a positive integer: {n}")
        mu = parse_rational(mu)
        tau = parse_rational(tau)
        if not 0 < mu < tau < 1:
            raise InvariantError(f"need 0 < mu < tau < 1, got mu={mu}, tau={tau}")
        if utility.n != n:
            raise InvariantError(f"utility grid {utility.n} does not match n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "utility", utility)

    def adoption_target(self) -> Fraction:
        """Expected adoption fraction in the bad state under any optimal policy."""
        return self.mu * (1 - self.tau) / (self.tau * (1 - self.mu))


def _upper_hull(points: Sequence[tuple[Fraction, Fraction]]):
    """Vertices of the upper concave envelope, collinear interior points dropped."""
    hull: list[tuple[Fraction, Fraction]] = []
    for p in points:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def grid_concavification(utility: SenderUtility, y) -> tuple[Fraction, ScalarMeasure]:
    """Value and witness of the grid concavification at y.

    The witness is supported on at most two adjacent hull vertices with mean
    y; when y is itself a grid point on the hull the witness is the point mass
    there.
    """
    y = parse_rational(y)
    if not 0 <= y <= 1:
        raise InvariantError(f"evaluation point must lie in [0, 1]: {y}")
    hull = _upper_hull(utility.grid_points())
    value = _hull_value(hull, y)
    n = utility.n
    if (y * n).denominator == 1 and utility.values[int(y * n)] == value:
        # y is a grid point attaining the hull: the point mass is the minimal witness
        return value, ScalarMeasure.dirac(y)
    left, right = _bracket(hull, y)
    if left == right:
        return value, ScalarMeasure.dirac(left[0])
    lam = (y - left[0]) / (right[0] - left[0])
    return value, ScalarMeasure([(left[0], 1 - lam), (right[0], lam)])


def _bracket(hull, y):
    for i in range(len(hull)):
        if hull[i][0] == y:
            return hull[i], hull[i]
        if hull[i][0] > y:
            return hull[i - 1], hull[i]
    return hull[-1], hull[-1]


def _hull_value(hull, y) -> Fraction:
    left, right = _bracket(hull, y)
    if left == right:
        return left[1]
    lam = (y - left[0]) / (right[0] - left[0])
    return (1 - lam) * left[1] + lam * right[1]


def persuasion_value(instance: PersuasionInstance) -> Fraction:
    """The sender's optimal value."""
    cav_value, _ = grid_concavification(instance.utility, instance.adoption_target())
    return instance.mu * instance.utility.values[-1] + (1 - instance.mu) * cav_value


@dataclass(frozen=True)
class PersuasionSolution:
    """Optimal value, bad-state adoption law, and the implementing scheme."""

    value: Fraction
    adoption_law: ScalarMeasure
    scheme: SymmetricScheme


def persuasion_policy(instance: PersuasionInstance) -> PersuasionSolution:
    """An optimal policy realizing `persuasion_value`.

    Good state: everyone gets the adopt signal, posterior tau. Bad state: an
    adoption fraction is drawn from the concavification witness and dealt to
    a uniformly random subset; adopters sit at tau, the rest at 0.
    """
    target = instance.adoption_target()
    cav_value, witness = grid_concavification(instance.utility, target)
    if witness.mean() != target:
        raise ArithmeticError("concavification witness missed the target mean")
    n = instance.n
    adopt = Belief.binary(instance.tau)
    reject = Belief.binary(0)
    good = PopulationLaw.dirac(EmpiricalDistribution.constant(n, adopt))
    bad_atoms = []
    for fraction, weight in witness.atoms:
        k = int(fraction * n)
        bad_atoms.append(
            (EmpiricalDistribution(n, [(adopt, k), (reject, n - k)]), weight)
        )
    bad = PopulationLaw(n, bad_atoms)
    scheme = SymmetricScheme(Prior.binary(instance.mu), (bad, good))
    value = instance.mu * instance.utility.values[-1] + (1 - instance.mu) * cav_value
    return PersuasionSolution(value=value, adoption_law=witness, scheme=scheme)


@dataclass(frozen=True)
class LimitReport:
    """Values along a grid-refinement schedule; monotone over nested grids."""

    values: tuple[tuple[int, Fraction], ...]
    monotone: bool

    @property
    def final(self) -> Fraction:
        return self.values[-1][1]


def persuasion_limit_value(mu, tau, utility_fn: Callable, schedule: Sequence[int]) -> LimitReport:
    """Evaluate the value along increasingly fine grids.

    `utility_fn` maps a Fraction in [0, 1] to a rational utility; it is
    sampled onto each grid in the schedule. Monotonicity is checked over
    consecutive entries where the next grid refines the previous one.
    """
    schedule = list(schedule)
    if not schedule or any(not isinstance(k, int) or k < 1 for k in schedule):
        raise InvariantError("schedule must be a non-empty list of positive integers")
    rows = []
    for n in schedule:
        instance = PersuasionInstance(
            n, mu, tau, SenderUtility.from_function(utility_fn, n)
        )
        rows.append((n, persuasion_value(instance)))
    monotone = all(
        later % earlier != 0 or v_later >= v_earlier
        for (earlier, v_earlier), (later, v_later) in zip(rows, rows[1:])
    )
    return LimitReport(values=tuple(rows), monotone=monotone)
