"""Majorization order on Schmidt vectors and deterministic LOCC convertibility.

``a`` converts to ``b`` by LOCC with certainty exactly when every prefix sum
of ``a`` is at most the matching prefix sum of ``b``. Vectors of different
length are compared after padding the shorter one with zeros.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import WrongRank
from .schmidt_core import DEFAULT_CONFIG, SchmidtVector, pad_pair


class Variant(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    A_TO_B = "AtoB"
    B_TO_A = "BtoA"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class ComparisonResult:
    """Outcome of comparing two states.

    ``witness_ab`` is the smallest prefix length ``k`` at which the
    ``a -> b`` inequalities fail (None when that direction holds);
    ``witness_ba`` likewise for ``b -> a``.
    """

    variant: Variant
    witness_ab: Optional[int] = None
    witness_ba: Optional[int] = None

    @property
    def witness_k(self):
        return tuple(k for k in (self.witness_ab, self.witness_ba) if k is not None)

    @property
    def incomparable(self) -> bool:
        return self.variant is Variant.INCOMPARABLE


@dataclass(frozen=True)
class EpsilonProfile:
    """Prefix-sum excess ``eps_k = S_k(b) - S_k(a)`` for ``k = 1 .. d-1``."""

    epsilons: tuple

    def nonnegative(self, tol=DEFAULT_CONFIG.coeff_tol) -> bool:
        return all(e >= -tol for e in self.epsilons)


def partial_sums(v: SchmidtVector) -> list:
    return list(itertools.accumulate(v.coeffs))


def _first_violation(a: SchmidtVector, b: SchmidtVector, tol: float) -> Optional[int]:
    a, b = pad_pair(a, b)
    for k, (sa, sb) in enumerate(zip(partial_sums(a), partial_sums(b)), start=1):
        if sb - sa < -tol:
            return k
    return None


def convertible(a: SchmidtVector, b: SchmidtVector, tol=DEFAULT_CONFIG.coeff_tol) -> bool:
    """True iff ``a`` can be converted into ``b`` (``a`` majorized by ``b``)."""
    return _first_violation(a, b, tol) is None


def equivalent(a: SchmidtVector, b: SchmidtVector, tol=DEFAULT_CONFIG.coeff_tol) -> bool:
    a, b = pad_pair(a, b)
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def classify(a: SchmidtVector, b: SchmidtVector, tol=DEFAULT_CONFIG.coeff_tol) -> ComparisonResult:
    if equivalent(a, b, tol):
        return ComparisonResult(Variant.EQUIVALENT)
    k_ab = _first_violation(a, b, tol)
    k_ba = _first_violation(b, a, tol)
    if k_ab is None and k_ba is None:
        # both prefix orders hold but entries differ beyond tol: only possible
        # through accumulated round-off near the band edge
        return ComparisonResult(Variant.EQUIVALENT)
    if k_ab is None:
        return ComparisonResult(Variant.A_TO_B, witness_ba=k_ba)
    if k_ba is None:
        return ComparisonResult(Variant.B_TO_A, witness_ab=k_ab)
    return ComparisonResult(Variant.INCOMPARABLE, witness_ab=k_ab, witness_ba=k_ba)


def incomparable_rank3_fast(a: SchmidtVector, b: SchmidtVector, tol=DEFAULT_CONFIG.coeff_tol) -> bool:
    """Rank-3 shortcut: incomparable iff the largest and the smallest
    coefficients are both bigger in the same vector.

    Differences within `tol` count as ties, and ties mean comparable.
    """
    for v in (a, b):
        if v.effective_rank != 3:
            raise WrongRank(f"expected effective rank 3, got {v.effective_rank}")
    d1 = a[0] - b[0]
    d3 = a[2] - b[2]
    return (d1 > tol and d3 > tol) or (d1 < -tol and d3 < -tol)


def epsilon_profile(a: SchmidtVector, b: SchmidtVector) -> EpsilonProfile:
    a, b = pad_pair(a, b)
    sa, sb = partial_sums(a), partial_sums(b)
    return EpsilonProfile(tuple(y - x for x, y in zip(sa[:-1], sb[:-1])))
