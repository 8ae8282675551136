"""Numerical witnesses that entropy is strictly Schur concave, and checks of
the two uniqueness/monotonicity theorems built on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryCoefficient,
    EquivalentPair,
    NoSolution,
    NotConvertible,
    OutOfDomain,
    StepTooLarge,
    TheoremViolation,
    WrongRank,
)
from .locc_order import EpsilonProfile, convertible, epsilon_profile, equivalent
from .schmidt_core import (
    DEFAULT_CONFIG,
    ZERO_EPS,
    SchmidtVector,
    SearchConfig,
    binary_entropy,
    entropy,
    make_schmidt,
    pad_pair,
)

LOG2_E = math.log2(math.e)


@dataclass(frozen=True)
class SchurWitness:
    i: int
    j: int
    product: float


@dataclass(frozen=True)
class GapReport:
    direct_gap: float
    telescoped_gap: float
    epsilons: EpsilonProfile

    @property
    def discrepancy(self) -> float:
        return abs(self.direct_gap - self.telescoped_gap)


def schur_witness(v: SchmidtVector, i: int, j: int) -> SchurWitness:
    """``(v_i - v_j) * (dE/dv_i - dE/dv_j)`` for 0-based indices ``i, j``.

    The derivative difference collapses to ``log2(v_j / v_i)``, so the
    product is negative whenever the two coefficients differ.
    """
    for idx in (i, j):
        if not 0 <= idx < v.rank:
            raise OutOfDomain(f"index {idx} outside 0..{v.rank - 1}")
        if v[idx] <= ZERO_EPS:
            raise BoundaryCoefficient(f"coefficient {idx} is zero; derivative diverges")
    vi, vj = v[i], v[j]
    if vi == vj:
        return SchurWitness(i, j, 0.0)
    return SchurWitness(i, j, (vi - vj) * math.log2(vj / vi))


def entropy_gradient(x) -> np.ndarray:
    """Partial derivatives of ``-sum x log2 x`` treated as a free function of ``x``."""
    x = np.asarray(x, dtype=float)
    return -np.log2(x) - LOG2_E


def _free_entropy(x) -> float:
    return float(-np.sum(x * np.log2(x)))


def gradient_check(v: SchmidtVector, step: float = 1e-6) -> float:
    """Max abs difference between the analytic gradient and central differences."""
    x = v.as_array()
    if not step > 0:
        raise OutOfDomain("step must be positive")
    if np.any(x <= 10 * step):
        raise StepTooLarge(f"step {step} too large for smallest coefficient {x.min()}")
    analytic = entropy_gradient(x)
    worst = 0.0
    for k in range(len(x)):
        up, down = x.copy(), x.copy()
        up[k] += step
        down[k] -= step
        numeric = (_free_entropy(up) - _free_entropy(down)) / (2 * step)
        worst = max(worst, abs(numeric - analytic[k]))
    return worst


def telescoped_gap(a: SchmidtVector, b: SchmidtVector) -> float:
    """``E(a) - E(b)`` rebuilt from the prefix-sum excess of ``b`` over ``a``.

    Writing ``a_i = b_i + eps_{i-1} - eps_i`` (with ``eps_0 = eps_d = 0``)
    splits the gap into two parts, each non-negative when ``a -> b``:

        gap = D(b || a) + sum_k eps_k * log2(a_k / a_{k+1})

    where ``D`` is the relative entropy in bits. Terms of the form
    ``0 * log(...)`` are dropped.
    """
    a, b = pad_pair(a, b)
    eps = epsilon_profile(a, b).epsilons
    relative = 0.0
    for x, y in zip(a, b):
        if y > 0.0:
            if x <= 0.0:
                return math.inf
            relative += y * math.log2(y / x)
    spread = 0.0
    for k, e in enumerate(eps):
        if e == 0.0:
            continue
        lo, hi = a[k + 1], a[k]
        if lo <= 0.0:
            # a_{k+1} = 0 forces a_k..a_d to carry no mass past k, so eps_k is round-off
            continue
        spread += e * math.log2(hi / lo)
    return relative + spread


def verify_theorem2(a: SchmidtVector, b: SchmidtVector, cfg: SearchConfig = DEFAULT_CONFIG) -> GapReport:
    """Entropy gap of a convertible, non-equivalent pair ``a -> b``.

    Raises
    ------
    NotConvertible
        If ``a`` does not convert to ``b``.
    EquivalentPair
        If the vectors agree within ``cfg.coeff_tol``.
    """
    if equivalent(a, b, cfg.coeff_tol):
        raise EquivalentPair("vectors are equal within coeff_tol")
    if not convertible(a, b, cfg.coeff_tol):
        raise NotConvertible("a does not convert to b under deterministic LOCC")
    return GapReport(
        direct_gap=entropy(a) - entropy(b),
        telescoped_gap=telescoped_gap(a, b),
        epsilons=epsilon_profile(a, b),
    )


def _bisect_decreasing(f, target, lo, hi, cfg):
    """Root of a decreasing ``f`` on ``[lo, hi]`` with ``f(lo) >= target >= f(hi)``."""
    for _ in range(cfg.max_bisection_iters):
        mid = 0.5 * (lo + hi)
        if hi - lo < cfg.bracket_width or mid in (lo, hi):
            return mid
        if f(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def verify_theorem1(v: SchmidtVector, shared_index: int, cfg: SearchConfig = DEFAULT_CONFIG) -> SchmidtVector:
    """Recover the rank-3 vector sharing ``v[shared_index]`` and the entropy of ``v``.

    With ``kappa = v[shared_index]`` fixed, the other two coefficients are
    ``(1-kappa) * (p, 1-p)`` with ``p`` in ``[1/2, 1]``, and grouping gives
    ``E = h(kappa) + (1-kappa) * h(p)``. ``h`` is strictly decreasing there,
    so the root is unique. Raises :class:`TheoremViolation` if the solution
    differs from ``v``.
    """
    if v.effective_rank != 3 or v.rank != 3:
        raise WrongRank(f"expected rank 3, got {v.rank} (effective {v.effective_rank})")
    if shared_index not in (0, 1, 2):
        raise OutOfDomain(f"shared_index {shared_index} not in 0..2")
    kappa = v[shared_index]
    rest = 1.0 - kappa
    total = entropy(v)
    target = (total - binary_entropy(kappa)) / rest
    top = binary_entropy(0.5)
    # h is flat at p = 1/2: a target within its own round-off of 1 bit is a tie
    roundoff = 16 * np.finfo(float).eps * (total + 1.0) / rest
    if target > top + cfg.entropy_tol:
        raise NoSolution(f"remaining-mass entropy {target!r} exceeds 1 bit")
    if target >= top - roundoff:
        p = 0.5
    else:
        if target < -cfg.entropy_tol:
            raise NoSolution(f"negative remaining-mass entropy {target!r}")
        p = _bisect_decreasing(binary_entropy, target, 0.5, 1.0, cfg)
    others = [rest * p, rest * (1.0 - p)]
    raw = others[:shared_index] + [kappa] + others[shared_index:]
    w = make_schmidt(raw)
    if abs(entropy(w) - entropy(v)) > cfg.entropy_tol:
        raise NoSolution(f"bisection residual {entropy(w) - entropy(v)!r} above tolerance")
    if not equivalent(w, v, cfg.coeff_tol):
        raise TheoremViolation(f"{w.coeffs} shares coefficient and entropy with {v.coeffs}")
    return w


def entropy_gap_decomposition(a: SchmidtVector, b: SchmidtVector) -> GapReport:
    """Gap report without the convertibility precondition."""
    return GapReport(entropy(a) - entropy(b), telescoped_gap(a, b), epsilon_profile(a, b))
