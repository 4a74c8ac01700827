"""JSON schemas for every externally visible value.

Rationals render as ints when integral and "p/q" strings otherwise; on input,
ints, "p/q" strings and decimal literals are all accepted and converted
exactly (`loads` parses JSON number literals through their source text, so
0.3 really means 3/10). Encoders accept an alternative rational formatter for
display-only decimal output; parsers always rebuild exact values.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvariantError
from .feasibility import FeasibilityVerdict
from .measures import (
    Belief,
    DiscreteMeasure,
    EmpiricalDistribution,
    PopulationLaw,
    Prior,
    ScalarMeasure,
)
from .mps import (
    FarkasCertificate,
    MeanMismatch,
    QuantileViolation,
    SpreadDecomposition,
    SpreadTarget,
)
from .rationals import format_rational, parse_rational
from .structures import InformationStructure, SymmetricScheme


def loads(text: str):
    """Parse JSON with exact number handling (decimal literals become Fractions)."""
    try:
        return json.loads(text, parse_float=Fraction, parse_int=int)
    except json.JSONDecodeError as exc:
        raise InvariantError(f"malformed JSON: {exc}") from exc


def dumps(payload) -> str:
    """Canonical serialization: sorted keys, stable separators, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- encoders

def belief_to_json(belief: Belief, fmt=format_rational):
    return [fmt(c) for c in belief.coords]


def measure_to_json(measure: DiscreteMeasure, fmt=format_rational):
    return [
        {"belief": belief_to_json(b, fmt), "weight": fmt(w)} for b, w in measure.atoms
    ]


def scalar_measure_to_json(measure: ScalarMeasure, fmt=format_rational):
    return [{"value": fmt(v), "weight": fmt(w)} for v, w in measure.atoms]


def empirical_to_json(empirical: EmpiricalDistribution, fmt=format_rational):
    return {
        "n": empirical.n,
        "counts": [
            {"belief": belief_to_json(b, fmt), "count": c} for b, c in empirical.counts
        ],
    }


def law_to_json(law: PopulationLaw, fmt=format_rational):
    return {
        "n": law.n,
        "atoms": [
            {"empirical": empirical_to_json(e, fmt), "weight": fmt(w)}
            for e, w in law.atoms
        ],
    }


def target_to_json(target: SpreadTarget, fmt=format_rational):
    return [
        {"weight": fmt(w), "measure": measure_to_json(m, fmt)}
        for w, m in target.components
    ]


def decomposition_to_json(decomposition: SpreadDecomposition, fmt=format_rational):
    return [
        {"weight": fmt(w), "law": law_to_json(q, fmt)}
        for w, q in decomposition.components
    ]


def _side_to_json(side, fmt):
    if isinstance(side, Belief):
        return belief_to_json(side, fmt)
    return fmt(side)


def certificate_to_json(certificate, fmt=format_rational):
    if isinstance(certificate, MeanMismatch):
        return {
            "kind": certificate.kind,
            "left": _side_to_json(certificate.left, fmt),
            "right": _side_to_json(certificate.right, fmt),
        }
    if isinstance(certificate, QuantileViolation):
        return {
            "kind": certificate.kind,
            "alpha": fmt(certificate.alpha),
            "quantile_mean": fmt(certificate.quantile_mean),
            "low_atom": fmt(certificate.low_atom),
        }
    if isinstance(certificate, FarkasCertificate):
        return {"kind": certificate.kind, "y": [fmt(v) for v in certificate.y]}
    raise InvariantError(f"unknown certificate type: {certificate!r}")


def verdict_to_json(verdict: FeasibilityVerdict, fmt=format_rational):
    out = {
        "feasible": verdict.feasible,
        "prior_consistent": verdict.prior_consistent,
        "base": None if verdict.base is None else target_to_json(verdict.base, fmt),
    }
    if verdict.decomposition is not None:
        out["decomposition"] = decomposition_to_json(verdict.decomposition, fmt)
    if verdict.certificate is not None:
        out["certificate"] = certificate_to_json(verdict.certificate, fmt)
    return out


def _label_to_json(label, fmt):
    if isinstance(label, Belief):
        return belief_to_json(label, fmt)
    return label


def structure_to_json(structure: InformationStructure, fmt=format_rational):
    return {
        "n": structure.n,
        "m": structure.m,
        "mu": belief_to_json(structure.prior.belief, fmt),
        "signal_sets": [
            [_label_to_json(s, fmt) for s in signals] for signals in structure.signal_sets
        ],
        "kernel": [
            {
                "state": state,
                "profiles": [
                    {
                        "signals": [_label_to_json(s, fmt) for s in profile],
                        "prob": fmt(prob),
                    }
                    for profile, prob in structure.kernel[state]
                ],
            }
            for state in range(structure.m)
        ],
    }


def scheme_to_json(scheme: SymmetricScheme, fmt=format_rational):
    return {
        "n": scheme.n,
        "mu": belief_to_json(scheme.prior.belief, fmt),
        "state_laws": [
            {"state": state, "law": law_to_json(law, fmt)}
            for state, law in enumerate(scheme.state_laws)
        ],
    }


# ---------------------------------------------------------------- parsers

def _require(payload, key, where):
    if not isinstance(payload, dict) or key not in payload:
        raise InvariantError(f"{where}: missing field {key!r}")
    return payload[key]


def belief_from_json(payload) -> Belief:
    if not isinstance(payload, list):
        raise InvariantError(f"belief must be an array of rationals: {payload!r}")
    return Belief(parse_rational(c) for c in payload)


def prior_from_json(payload) -> Prior:
    return Prior(belief_from_json(payload))


def measure_from_json(payload) -> DiscreteMeasure:
    if not isinstance(payload, list):
        raise InvariantError("measure must be an array of {belief, weight}")
    return DiscreteMeasure(
        (
            belief_from_json(_require(atom, "belief", "measure atom")),
            parse_rational(_require(atom, "weight", "measure atom")),
        )
        for atom in payload
    )


def scalar_measure_from_json(payload) -> ScalarMeasure:
    if not isinstance(payload, list):
        raise InvariantError("scalar measure must be an array of {value, weight}")
    return ScalarMeasure(
        (
            parse_rational(_require(atom, "value", "scalar atom")),
            parse_rational(_require(atom, "weight", "scalar atom")),
        )
        for atom in payload
    )


def empirical_from_json(payload) -> EmpiricalDistribution:
    n = _require(payload, "n", "empirical distribution")
    counts = _require(payload, "counts", "empirical distribution")
    return EmpiricalDistribution(
        n,
        (
            (
                belief_from_json(_require(entry, "belief", "count entry")),
                _require(entry, "count", "count entry"),
            )
            for entry in counts
        ),
    )


def law_from_json(payload) -> PopulationLaw:
    n = _require(payload, "n", "population law")
    atoms = _require(payload, "atoms", "population law")
    return PopulationLaw(
        n,
        (
            (
                empirical_from_json(_require(atom, "empirical", "law atom")),
                parse_rational(_require(atom, "weight", "law atom")),
            )
            for atom in atoms
        ),
    )


def target_from_json(payload) -> SpreadTarget:
    return SpreadTarget(
        (
            parse_rational(_require(comp, "weight", "target component")),
            measure_from_json(_require(comp, "measure", "target component")),
        )
        for comp in payload
    )


def decomposition_from_json(payload) -> SpreadDecomposition:
    return SpreadDecomposition(
        (
            parse_rational(_require(comp, "weight", "decomposition component")),
            law_from_json(_require(comp, "law", "decomposition component")),
        )
        for comp in payload
    )


def _side_from_json(payload):
    if isinstance(payload, list):
        return belief_from_json(payload)
    return parse_rational(payload)


def certificate_from_json(payload):
    kind = _require(payload, "kind", "certificate")
    if kind == "mean_mismatch":
        return MeanMismatch(
            _side_from_json(_require(payload, "left", "certificate")),
            _side_from_json(_require(payload, "right", "certificate")),
        )
    if kind == "quantile_violation":
        return QuantileViolation(
            parse_rational(_require(payload, "alpha", "certificate")),
            parse_rational(_require(payload, "quantile_mean", "certificate")),
            parse_rational(_require(payload, "low_atom", "certificate")),
        )
    if kind == "farkas":
        return FarkasCertificate(
            tuple(parse_rational(v) for v in _require(payload, "y", "certificate"))
        )
    raise InvariantError(f"unknown certificate kind: {kind!r}")


def verdict_from_json(payload) -> FeasibilityVerdict:
    base = _require(payload, "base", "verdict")
    return FeasibilityVerdict(
        feasible=bool(_require(payload, "feasible", "verdict")),
        prior_consistent=bool(_require(payload, "prior_consistent", "verdict")),
        base=None if base is None else target_from_json(base),
        decomposition=(
            decomposition_from_json(payload["decomposition"])
            if payload.get("decomposition") is not None
            else None
        ),
        certificate=(
            certificate_from_json(payload["certificate"])
            if payload.get("certificate") is not None
            else None
        ),
    )


def _label_from_json(payload):
    if isinstance(payload, list):
        return belief_from_json(payload)
    if isinstance(payload, str):
        return payload
    raise InvariantError(f"signal label must be a string or a belief array: {payload!r}")


def structure_from_json(payload) -> InformationStructure:
    n = _require(payload, "n", "information structure")
    prior = prior_from_json(_require(payload, "mu", "information structure"))
    signal_sets = [
        tuple(_label_from_json(s) for s in signals)
        for signals in _require(payload, "signal_sets", "information structure")
    ]
    kernel_payload = _require(payload, "kernel", "information structure")
    kernel: list = [None] * prior.dimension
    for entry in kernel_payload:
        state = _require(entry, "state", "kernel entry")
        if not isinstance(state, int) or not 0 <= state < prior.dimension:
            raise InvariantError(f"kernel state out of range: {state!r}")
        kernel[state] = tuple(
            (
                tuple(_label_from_json(s) for s in _require(p, "signals", "profile")),
                parse_rational(_require(p, "prob", "profile")),
            )
            for p in _require(entry, "profiles", "kernel entry")
        )
    if any(k is None for k in kernel):
        raise InvariantError("kernel must cover every state")
    return InformationStructure(n, prior, signal_sets, kernel)


def scheme_from_json(payload) -> SymmetricScheme:
    prior = prior_from_json(_require(payload, "mu", "scheme"))
    laws_payload = _require(payload, "state_laws", "scheme")
    laws: list = [None] * prior.dimension
    for entry in laws_payload:
        state = _require(entry, "state", "scheme state law")
        if not isinstance(state, int) or not 0 <= state < prior.dimension:
            raise InvariantError(f"scheme state out of range: {state!r}")
        laws[state] = law_from_json(_require(entry, "law", "scheme state law"))
    if any(law is None for law in laws):
        raise InvariantError("scheme must cover every state")
    return SymmetricScheme(prior, laws)
