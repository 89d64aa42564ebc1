"""Slider weight vectors and their sum-to-one normalization."""

from __future__ import annotations

from dataclasses import dataclass

from valuerank.errors import AllZeroWeightsError, ValidationError

__all__ = ["DIMENSIONS", "WeightVector", "NormalizedWeights", "normalize_weights"]

# Canonical dimension order, also the CLI --weights order.
DIMENSIONS = ("utility", "creation_date", "n_objects", "usage")


@dataclass(frozen=True, slots=True)
class WeightVector:
    """One stakeholder's raw slider weights, integers on a 0-10 scale."""

    utility: int
    creation_date: int
    n_objects: int
    usage: int

    def __post_init__(self) -> None:
        for name in DIMENSIONS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= 10:
                raise ValidationError(
                    f"weight must be an integer in [0,10]: {name}={value!r}"
                )

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in DIMENSIONS}


@dataclass(frozen=True, slots=True)
class NormalizedWeights:
    """Weights divided by their sum; components lie in [0,1] and sum to 1."""

    w_utility: float
    w_creation: float
    w_objects: float
    w_usage: float

    def as_dict(self) -> dict[str, float]:
        return {
            "utility": self.w_utility,
            "creation_date": self.w_creation,
            "n_objects": self.w_objects,
            "usage": self.w_usage,
        }


def normalize_weights(weights: WeightVector) -> NormalizedWeights:
    """Divide each slider weight by the sum of all four.

    Raises AllZeroWeightsError when every weight is zero; at least one
    weight must be non-zero for a preference to be expressible.
    """
    total = weights.utility + weights.creation_date + weights.n_objects + weights.usage
    if total == 0:
        raise AllZeroWeightsError("at least one weight must be non-zero")
    return NormalizedWeights(
        w_utility=weights.utility / total,
        w_creation=weights.creation_date / total,
        w_objects=weights.n_objects / total,
        w_usage=weights.usage / total,
    )
