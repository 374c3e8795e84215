"""Mamdani-style fuzzy inference mapping texture sensitivity to embedding strength.

The system is the classic four-block arrangement: a fuzzifier turns the
crisp texture statistic into membership degrees, a small if-then rule base
links input terms to output terms, and the defuzzifier is the weighted
average of the rule consequent peaks,

    strength = sum_i(w_i * z_i) / sum_i(w_i)

where w_i is the firing strength of rule i and z_i the peak of its
consequent term. With the default ordered partitions this is monotone in
the input and always lies inside [min peak, max peak].
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .quantize import round_half_away


@dataclass(frozen=True)
class MembershipFunction:
    """Triangular membership with breakpoints a <= b <= c; peak value 1 at b."""

    label: str
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c):
            raise ParameterError(
                f"membership '{self.label}' breakpoints must satisfy a <= b <= c, "
                f"got ({self.a}, {self.b}, {self.c})"
            )

    def mu(self, x: float) -> float:
        if x == self.b:
            return 1.0
        if x < self.a or x > self.c:
            return 0.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.c - x) / (self.c - self.b)


@dataclass(frozen=True)
class FuzzyRule:
    antecedent: str
    consequent: str


@dataclass(frozen=True)
class FuzzySystem:
    input_terms: tuple
    output_terms: tuple
    rules: tuple

    def __post_init__(self):
        if not self.rules:
            raise ParameterError("rule base must not be empty")
        in_labels = {t.label for t in self.input_terms}
        out_labels = {t.label for t in self.output_terms}
        for r in self.rules:
            if r.antecedent not in in_labels:
                raise ParameterError(f"rule antecedent '{r.antecedent}' is not an input term")
            if r.consequent not in out_labels:
                raise ParameterError(f"rule consequent '{r.consequent}' is not an output term")

    def input_term(self, label: str) -> MembershipFunction:
        return next(t for t in self.input_terms if t.label == label)

    def output_term(self, label: str) -> MembershipFunction:
        return next(t for t in self.output_terms if t.label == label)


class TextureSensitivity(NamedTuple):
    raw: int
    normalized: float


def texture_sensitivity(coeffs, q: float, key: float = 0.0) -> TextureSensitivity:
    """Count of window coefficients whose offset quantized value is nonzero.

    A coefficient contributes 1 when round((T + key) / q) != 0, else 0;
    normalized divides by the window length.
    """
    if q <= 0:
        raise ParameterError(f"quantization step must be positive, got {q}")
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.size == 0:
        raise ParameterError("texture window must not be empty")
    raw = int(np.count_nonzero(round_half_away((coeffs + key) / q)))
    return TextureSensitivity(raw=raw, normalized=raw / coeffs.size)


def fuzzify(system: FuzzySystem, x: float) -> np.ndarray:
    """Membership degrees of x (clamped to [0, 1]) over the input terms."""
    x = min(max(float(x), 0.0), 1.0)
    return np.array([t.mu(x) for t in system.input_terms], dtype=np.float64)


def infer(system: FuzzySystem, x: float) -> float:
    """Crisp embedding strength for a normalized sensitivity value.

    Each rule fires with the membership of x in its antecedent term and
    votes for the peak of its consequent term; the output is the weighted
    average of the votes. When nothing fires, falls back to the smallest
    output peak so the mapping is total.
    """
    x = min(max(float(x), 0.0), 1.0)
    num = 0.0
    den = 0.0
    for rule in system.rules:
        w = system.input_term(rule.antecedent).mu(x)
        num += w * system.output_term(rule.consequent).b
        den += w
    if den == 0.0:
        return min(t.b for t in system.output_terms)
    return num / den


def default_system(alpha_min: float, alpha_max: float) -> FuzzySystem:
    """Three-term partition-of-unity system over [0, 1] -> [alpha_min, alpha_max].

    Input terms low (0, 0, 0.5), medium (0, 0.5, 1), high (0.5, 1, 1);
    output terms span the strength range with peaks at alpha_min, the
    midpoint, and alpha_max; rules map each input term to the output term
    of the same rank.
    """
    if not (0.0 < alpha_min <= alpha_max):
        raise ParameterError(
            f"strength bounds must satisfy 0 < alpha_min <= alpha_max, got ({alpha_min}, {alpha_max})"
        )
    mid = (alpha_min + alpha_max) / 2.0
    return FuzzySystem(
        input_terms=(
            MembershipFunction("low", 0.0, 0.0, 0.5),
            MembershipFunction("medium", 0.0, 0.5, 1.0),
            MembershipFunction("high", 0.5, 1.0, 1.0),
        ),
        output_terms=(
            MembershipFunction("low", alpha_min, alpha_min, mid),
            MembershipFunction("medium", alpha_min, mid, alpha_max),
            MembershipFunction("high", mid, alpha_max, alpha_max),
        ),
        rules=(
            FuzzyRule("low", "low"),
            FuzzyRule("medium", "medium"),
            FuzzyRule("high", "high"),
        ),
    )


def system_to_dict(system: FuzzySystem) -> dict:
    """JSON-serializable description of a system (for config files and sidecars)."""
    return {
        "input_terms": [
            {"label": t.label, "a": t.a, "b": t.b, "c": t.c} for t in system.input_terms
        ],
        "output_terms": [
            {"label": t.label, "a": t.a, "b": t.b, "c": t.c} for t in system.output_terms
        ],
        "rules": [{"if": r.antecedent, "then": r.consequent} for r in system.rules],
    }


def system_from_dict(d: dict) -> FuzzySystem:
    """Rebuild a system from its dict description."""
    try:
        return FuzzySystem(
            input_terms=tuple(
                MembershipFunction(t["label"], float(t["a"]), float(t["b"]), float(t["c"]))
                for t in d["input_terms"]
            ),
            output_terms=tuple(
                MembershipFunction(t["label"], float(t["a"]), float(t["b"]), float(t["c"]))
                for t in d["output_terms"]
            ),
            rules=tuple(FuzzyRule(r["if"], r["then"]) for r in d["rules"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed fuzzy system definition: {exc}") from exc
