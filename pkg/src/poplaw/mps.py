"""Mean-preserving-spread tests with certificates in both directions.

Two routes decide whether a population law spreads a target mixture of
belief measures:

* a one-dimensional shortcut for laws whose beliefs take exactly two values,
  based on the quantile criterion (equal means plus a lower-quantile bound),
  which also yields an explicit decomposition by interpolating between the
  lower and upper quantile slices;
* an exact linear program for the general case, whose variables are the
  per-component weights placed on each atom of the law, with a Farkas
  certificate on infeasibility.

Positive answers come with a `SpreadDecomposition`, negative answers with a
certificate that `verify_certificate` can re-check from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import InvariantError
from .measures import (
    Belief,
    DiscreteMeasure,
    PopulationLaw,
    ScalarMeasure,
    law_expected_measure,
    mix_laws,
    quantile_distribution,
    upper_quantile_distribution,
)
from .rationals import parse_rational
from .simplex import farkas_refutes, solve_equalities

ZERO = Fraction(0)


@dataclass(frozen=True)
class BinaryBase:
    """A two-atom scalar distribution: weight alpha on a, 1 - alpha on b, a < b."""

    a: Fraction
    b: Fraction
    alpha: Fraction

    def __init__(self, a, b, alpha) -> None:
        a, b, alpha = parse_rational(a), parse_rational(b), parse_rational(alpha)
        if not 0 <= a < b <= 1:
            raise InvariantError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
        if not 0 < alpha < 1:
            raise InvariantError(f"need 0 < alpha < 1, got {alpha}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "alpha", alpha)

    def mean(self) -> Fraction:
        return self.alpha * self.a + (1 - self.alpha) * self.b

    def as_scalar_measure(self) -> ScalarMeasure:
        return ScalarMeasure([(self.a, self.alpha), (self.b, 1 - self.alpha)])


@dataclass(frozen=True)
class SpreadTarget:
    """A weighted list of belief measures whose mixture a law must spread."""

    components: tuple[tuple[Fraction, DiscreteMeasure], ...]

    def __init__(self, components: Iterable) -> None:
        components = tuple((parse_rational(w), m) for w, m in components)
        if not components:
            raise InvariantError("spread target needs at least one component")
        if any(w <= 0 for w, _ in components):
            raise InvariantError("spread target weights must be positive")
        if sum(w for w, _ in components) != 1:
            raise InvariantError("spread target weights must sum to 1")
        dims = {m.dimension for _, m in components}
        if len(dims) != 1:
            raise InvariantError("spread target components must share one state space")
        object.__setattr__(self, "components", components)

    @property
    def dimension(self) -> int:
        return self.components[0][1].dimension


@dataclass(frozen=True)
class SpreadDecomposition:
    """Per-component laws q_c with prescribed expected measures, mixing back to the law."""

    components: tuple[tuple[Fraction, PopulationLaw], ...]

    def __init__(self, components: Iterable) -> None:
        components = tuple((parse_rational(w), law) for w, law in components)
        if not components:
            raise InvariantError("decomposition needs at least one component")
        object.__setattr__(self, "components", components)


@dataclass(frozen=True)
class MeanMismatch:
    """The two sides of a failed mean comparison (scalars or beliefs)."""

    left: object
    right: object

    kind = "mean_mismatch"


@dataclass(frozen=True)
class QuantileViolation:
    """The lower-quantile expectation exceeded the low atom of the base."""

    alpha: Fraction
    quantile_mean: Fraction
    low_atom: Fraction

    kind = "quantile_violation"


@dataclass(frozen=True)
class FarkasCertificate:
    """Dual vector over the decomposition LP rows proving infeasibility."""

    y: tuple[Fraction, ...]

    kind = "farkas"


InfeasibilityCertificate = Union[MeanMismatch, QuantileViolation, FarkasCertificate]


@dataclass(frozen=True)
class MpsVerdict:
    """Outcome of the one-dimensional test: a bool plus evidence either way."""

    is_spread: bool
    certificate: InfeasibilityCertificate | None = None
    quantile_mean: Fraction | None = None


def is_mps_binary_base(measure: ScalarMeasure, base: BinaryBase) -> MpsVerdict:
    """Quantile test: spread iff means agree and E[lower alpha-slice] <= base.a."""
    mean = measure.mean()
    base_mean = base.mean()
    if mean != base_mean:
        return MpsVerdict(False, certificate=MeanMismatch(mean, base_mean))
    qmean = quantile_distribution(measure, base.alpha).mean()
    if qmean > base.a:
        return MpsVerdict(
            False,
            certificate=QuantileViolation(base.alpha, qmean, base.a),
            quantile_mean=qmean,
        )
    return MpsVerdict(True, quantile_mean=qmean)


def _scalar_split(measure: ScalarMeasure, base: BinaryBase) -> tuple[ScalarMeasure, ScalarMeasure]:
    """Split a spread of a binary base into parts with means base.a and base.b.

    Mixes the lower and upper alpha-quantile slices so the low part hits mean
    base.a exactly; the high part is the leftover, which then has mean base.b.
    Only valid after `is_mps_binary_base` has accepted.
    """
    alpha = base.alpha
    lower = quantile_distribution(measure, alpha)
    upper = upper_quantile_distribution(measure, alpha)
    e_low = lower.mean()
    e_high = upper.mean()
    # e_low <= base.a < base mean <= e_high, so the gap is positive
    lam = (base.a - e_low) / (e_high - e_low)
    low_atoms: dict[Fraction, Fraction] = {}
    for value, weight in lower.atoms:
        low_atoms[value] = low_atoms.get(value, ZERO) + (1 - lam) * weight
    for value, weight in upper.atoms:
        low_atoms[value] = low_atoms.get(value, ZERO) + lam * weight
    low = ScalarMeasure(low_atoms.items())
    high_atoms: dict[Fraction, Fraction] = {}
    for value, weight in measure.atoms:
        leftover = weight - alpha * low_atoms.get(value, ZERO)
        if leftover < 0:
            raise ArithmeticError("quantile split produced negative mass")
        high_atoms[value] = leftover / (1 - alpha)
    return low, ScalarMeasure(high_atoms.items())


class _TwoPointEmbedding:
    """Identify a law over exactly two beliefs with a scalar law (mass at the high one)."""

    def __init__(self, low: Belief, high: Belief, law: PopulationLaw):
        self.low = low
        self.high = high
        self.by_value = {}
        atoms = []
        for empirical, weight in law.atoms:
            value = Fraction(dict(empirical.counts).get(high, 0), law.n)
            self.by_value[value] = empirical
            atoms.append((value, weight))
        self.scalar_law = ScalarMeasure(atoms)

    def position(self, measure: DiscreteMeasure) -> Fraction | None:
        mass_high = ZERO
        for belief, weight in measure.atoms:
            if belief == self.high:
                mass_high = weight
            elif belief != self.low:
                return None
        return mass_high

    def to_law(self, scalar: ScalarMeasure, n: int) -> PopulationLaw:
        return PopulationLaw(
            n, [(self.by_value[value], weight) for value, weight in scalar.atoms]
        )


def _try_two_point(law: PopulationLaw, target: SpreadTarget):
    beliefs = set()
    for empirical, _ in law.atoms:
        beliefs.update(empirical.support())
    for _, measure in target.components:
        beliefs.update(measure.support())
    if len(beliefs) != 2:
        return None
    low, high = sorted(beliefs)
    embedding = _TwoPointEmbedding(low, high, law)
    positions = []
    for _, measure in target.components:
        pos = embedding.position(measure)
        if pos is None:
            return None
        positions.append(pos)
    return embedding, positions


def _decompose_two_point(law, target, embedding, positions):
    grouped: dict[Fraction, Fraction] = {}
    for (weight, _), pos in zip(target.components, positions):
        grouped[pos] = grouped.get(pos, ZERO) + weight
    scalar_law = embedding.scalar_law
    if len(grouped) == 1:
        (pos, _), = grouped.items()
        if scalar_law.mean() != pos:
            return MeanMismatch(scalar_law.mean(), pos)
        part_for = {pos: law}
    elif len(grouped) == 2:
        (low_pos, low_w), (high_pos, _) = sorted(grouped.items())
        base = BinaryBase(low_pos, high_pos, low_w)
        verdict = is_mps_binary_base(scalar_law, base)
        if not verdict.is_spread:
            return verdict.certificate
        low_part, high_part = _scalar_split(scalar_law, base)
        part_for = {
            low_pos: embedding.to_law(low_part, law.n),
            high_pos: embedding.to_law(high_part, law.n),
        }
    else:
        return None  # more than two distinct positions: fall back to the LP
    return SpreadDecomposition(
        [(weight, part_for[pos]) for (weight, _), pos in zip(target.components, positions)]
    )


def decomposition_lp(law: PopulationLaw, target: SpreadTarget):
    """The canonical LP system deciding the decomposition, plus labels.

    Variables: q[c][j] >= 0 for component c and law atom j (column c*J + j).
    Rows, in order: one mass-balance row per law atom j, then one moment row
    per (component c, belief x) over the sorted union of all supports.
    """
    empiricals = law.support()
    law_weights = [w for _, w in law.atoms]
    comps = target.components
    beliefs = set()
    for empirical in empiricals:
        beliefs.update(empirical.support())
    for _, measure in comps:
        beliefs.update(measure.support())
    beliefs = sorted(beliefs)
    J = len(empiricals)
    ncols = len(comps) * J
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    labels: list[dict] = []
    for j, p_weight in enumerate(law_weights):
        row = [ZERO] * ncols
        for c, (c_weight, _) in enumerate(comps):
            row[c * J + j] = c_weight
        rows.append(row)
        rhs.append(p_weight)
        labels.append({"row": "mass", "atom": j})
    share = [
        {belief: Fraction(count, law.n) for belief, count in empirical.counts}
        for empirical in empiricals
    ]
    for c, (_, measure) in enumerate(comps):
        for belief in beliefs:
            row = [ZERO] * ncols
            for j in range(J):
                row[c * J + j] = share[j].get(belief, ZERO)
            rows.append(row)
            rhs.append(measure.mass(belief))
            labels.append({"row": "moment", "component": c, "belief": belief})
    return rows, rhs, labels


def mps_decompose(law: PopulationLaw, target: SpreadTarget, route: str = "auto"):
    """Decompose the law along the target, or certify that no decomposition exists.

    Returns a `SpreadDecomposition` or an `InfeasibilityCertificate`. Laws on
    exactly two beliefs take the quantile shortcut; everything else goes
    through the exact LP. `route` pins one path ("quantile" or "lp") for
    cross-checking; "quantile" raises when the law does not embed.
    """
    if route not in ("auto", "quantile", "lp"):
        raise InvariantError(f"unknown route {route!r}")
    if target.dimension != law.dimension:
        raise InvariantError("law and target live on different state spaces")
    if route != "lp":
        embedded = _try_two_point(law, target)
        if embedded is not None:
            result = _decompose_two_point(law, target, *embedded)
            if result is not None:
                return result
        if route == "quantile":
            raise InvariantError("law does not embed on two beliefs")
    rows, rhs, _ = decomposition_lp(law, target)
    outcome = solve_equalities(rows, rhs)
    if not outcome.feasible:
        return FarkasCertificate(outcome.farkas)
    J = len(law.atoms)
    empiricals = law.support()
    components = []
    for c, (weight, _) in enumerate(target.components):
        q = PopulationLaw(
            law.n,
            [(empiricals[j], outcome.solution[c * J + j]) for j in range(J)],
        )
        components.append((weight, q))
    return SpreadDecomposition(components)


def verify_decomposition(
    law: PopulationLaw, target: SpreadTarget, decomposition: SpreadDecomposition
) -> bool:
    """Exact re-check of both constraint families, plus the support condition."""
    comps = decomposition.components
    if len(comps) != len(target.components):
        return False
    support = set(law.support())
    for (weight, q), (t_weight, measure) in zip(comps, target.components):
        if weight != t_weight or q.n != law.n:
            return False
        if not set(q.support()) <= support:
            return False
        if law_expected_measure(q) != measure:
            return False
    return mix_laws(comps) == law


def verify_certificate(law: PopulationLaw, target: SpreadTarget, certificate) -> bool:
    """Re-check a refutation from scratch; True only if it genuinely refutes."""
    if isinstance(certificate, FarkasCertificate):
        rows, rhs, _ = decomposition_lp(law, target)
        return farkas_refutes(rows, rhs, certificate.y)
    embedded = _try_two_point(law, target)
    if embedded is None:
        return False
    embedding, positions = embedded
    grouped: dict[Fraction, Fraction] = {}
    for (weight, _), pos in zip(target.components, positions):
        grouped[pos] = grouped.get(pos, ZERO) + weight
    mean = embedding.scalar_law.mean()
    if isinstance(certificate, MeanMismatch):
        base_mean = sum((pos * w for pos, w in grouped.items()), ZERO)
        return (
            certificate.left == mean
            and certificate.right == base_mean
            and mean != base_mean
        )
    if isinstance(certificate, QuantileViolation):
        if len(grouped) != 2:
            return False
        (low_pos, low_w), _ = sorted(grouped.items())
        if certificate.alpha != low_w or certificate.low_atom != low_pos:
            return False
        qmean = quantile_distribution(embedding.scalar_law, low_w).mean()
        return certificate.quantile_mean == qmean and qmean > low_pos
    return False
