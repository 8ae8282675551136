"""Schmidt vectors and their entanglement entropy.

A Schmidt vector is the list of squared Schmidt amplitudes of a pure
bipartite state. It is stored in canonical form: sorted non-increasing and
summing to one. Entropies are base-2 (ebits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NegativeCoefficient, NotNormalizable, OutOfDomain

SUM_EPS = 1e-12
ZERO_EPS = 1e-15
# make_schmidt renormalizes round-off, but rejects inputs further than this from unit mass
NORMALIZATION_BAND = 1e-6


@dataclass(frozen=True)
class SchmidtVector:
    """Canonical (sorted, normalized) Schmidt coefficients.

    Build instances with :func:`make_schmidt`; the constructor only checks
    the invariants.
    """

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if not c:
            raise NotNormalizable("empty Schmidt vector")
        if any(x < 0.0 for x in c):
            raise NegativeCoefficient(f"negative coefficient in {c}")
        if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
            raise ValueError(f"coefficients not sorted non-increasing: {c}")
        if abs(math.fsum(c) - 1.0) > SUM_EPS:
            raise NotNormalizable(f"coefficients sum to {math.fsum(c)!r}")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def effective_rank(self) -> int:
        return sum(1 for x in self.coeffs if x > ZERO_EPS)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=float)

    def padded(self, length: int) -> "SchmidtVector":
        """Append trailing zeros up to `length` entries."""
        if length <= self.rank:
            return self
        return SchmidtVector(self.coeffs + (0.0,) * (length - self.rank))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}


def make_schmidt(raw: Iterable[float]) -> SchmidtVector:
    """Canonicalize raw Schmidt data: clip round-off negatives, sort, renormalize.

    Parameters
    ----------
    raw : iterable of float
        Coefficients in any order. Must sum to one within 1e-6.

    Raises
    ------
    NegativeCoefficient
        If an entry is below ``-ZERO_EPS``.
    NotNormalizable
        If the input is empty or its sum is outside the tolerance band.
    """
    values = [float(x) for x in raw]
    if not values:
        raise NotNormalizable("empty Schmidt vector")
    for x in values:
        if not math.isfinite(x):
            raise NotNormalizable(f"non-finite coefficient {x!r}")
        if x < -ZERO_EPS:
            raise NegativeCoefficient(f"coefficient {x!r} is negative")
    values = [0.0 if x < ZERO_EPS else x for x in values]
    total = math.fsum(values)
    if abs(total - 1.0) > NORMALIZATION_BAND:
        raise NotNormalizable(f"coefficients sum to {total!r}, expected 1")
    values = sorted((x / total for x in values), reverse=True)
    return SchmidtVector(tuple(values))


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def entropy(v: SchmidtVector) -> float:
    """Entropy of entanglement ``-sum p log2 p`` in bits, with 0 log 0 = 0.

    Terms are accumulated left to right over the canonical vector, so equal
    inputs give bit-identical outputs.
    """
    total = 0.0
    for x in v.coeffs:
        total -= _xlog2x(x)
    # -0.0 for product states
    return total + 0.0


def binary_entropy(kappa: float) -> float:
    if not 0.0 <= kappa <= 1.0:
        raise OutOfDomain(f"binary entropy argument {kappa!r} outside [0, 1]")
    return -_xlog2x(kappa) - _xlog2x(1.0 - kappa) + 0.0


@dataclass(frozen=True)
class SearchConfig:
    """Tolerances for root finding and coefficient comparison.

    Attributes
    ----------
    entropy_tol : float
        Accepted entropy residual, in bits.
    coeff_tol : float
        Two coefficients closer than this count as equal.
    max_bisection_iters : int
        Hard cap on bisection steps.
    bracket_width : float
        Bisection stops once the bracket is narrower than this.
    """

    entropy_tol: float = 1e-12
    coeff_tol: float = 1e-9
    max_bisection_iters: int = 200
    bracket_width: float = 1e-15

    def __post_init__(self):
        for name in ("entropy_tol", "coeff_tol", "bracket_width"):
            if not getattr(self, name) > 0:
                raise OutOfDomain(f"{name} must be strictly positive")
        if self.max_bisection_iters < 1:
            raise OutOfDomain("max_bisection_iters must be at least 1")


DEFAULT_CONFIG = SearchConfig()


def pad_pair(a: SchmidtVector, b: SchmidtVector) -> tuple:
    n = max(a.rank, b.rank)
    return a.padded(n), b.padded(n)


def format_coeffs(coeffs: Sequence[float]) -> str:
    """Render coefficients at 17 significant digits (round-trips exactly)."""
    return "[" + ", ".join(f"{x:.17g}" for x in coeffs) + "]"
