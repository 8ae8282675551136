"""Construction of incomparable partners with exactly the same entanglement.

For a rank-3 state ``v`` and a chosen largest coefficient ``beta1`` the
partner ``(beta1, beta2, 1 - beta1 - beta2)`` is found by bisection on
``beta2``. Along the sorted segment the entropy falls monotonically as
``beta2`` grows, so the root is unique when it exists.

:func:`lift` and :func:`reduce_shared` move such pairs between adjacent
Schmidt ranks by inserting or removing a common coefficient ``kappa``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DegenerateKappa,
    EmptyRange,
    Infeasible,
    NoSharedCoefficient,
    NotRank3,
    OutOfDomain,
    RankMismatch,
)
from .locc_order import ComparisonResult, classify
from .schmidt_core import (
    DEFAULT_CONFIG,
    ZERO_EPS,
    SchmidtVector,
    SearchConfig,
    binary_entropy,
    entropy,
    make_schmidt,
)


@dataclass(frozen=True)
class PartnerResult:
    partner: SchmidtVector
    entropy_residual: float
    classification: ComparisonResult
    iterations: int


@dataclass(frozen=True)
class FamilyRecord:
    beta1: float
    partner: SchmidtVector
    entropy_residual: float
    differing_coeffs: int
    classification: ComparisonResult


def max_entropy_given_top(beta1: float, rank: int) -> float:
    """Largest entropy of a sorted rank-`rank` vector whose top coefficient is `beta1`.

    The rest of the mass is spread evenly, so the bound is
    ``h(beta1) + (1 - beta1) * log2(rank - 1)``.
    """
    if rank < 1:
        raise OutOfDomain("rank must be positive")
    if rank == 1:
        if beta1 != 1.0:
            raise OutOfDomain("a rank-1 vector has top coefficient 1")
        return 0.0
    if not 1.0 / rank - 1e-15 <= beta1 < 1.0:
        raise OutOfDomain(f"beta1={beta1!r} outside [1/{rank}, 1)")
    return binary_entropy(beta1) + (1.0 - beta1) * math.log2(rank - 1)


def _raw_entropy(values) -> float:
    total = 0.0
    for p in values:
        if p > 0.0:
            total -= p * math.log2(p)
    return total + 0.0


def solve_tail(target: float, head: Sequence[float], cfg: SearchConfig = DEFAULT_CONFIG):
    """Complete the sorted prefix `head` with two coefficients so that the
    entropy equals `target`.

    The last two coefficients are ``(x, m - x)`` with ``m = 1 - sum(head)``
    and ``x`` in ``[m/2, min(head[-1], m)]``. Returns ``(vector, iterations)``.

    Raises
    ------
    Infeasible
        If `target` lies outside the entropy range of the segment; the
        exception carries the violated bound.
    ConvergenceFailure
        If bisection exhausts ``cfg.max_bisection_iters``.
    """
    head = [float(h) for h in head]
    mass = 1.0 - math.fsum(head)
    if mass <= 0.0:
        raise Infeasible("prefix leaves no mass for the tail", bound=None)
    lo = 0.5 * mass
    hi = min(head[-1], mass) if head else mass
    if hi < lo:
        raise Infeasible(f"prefix {head} cannot be completed in sorted order", bound=None)

    def f(x):
        return _raw_entropy(head + [x, mass - x])

    f_lo, f_hi = f(lo), f(hi)
    if target > f_lo + cfg.entropy_tol:
        raise Infeasible(f"target entropy {target!r} above reachable maximum {f_lo!r}", bound=f_lo)
    if target < f_hi - cfg.entropy_tol:
        raise Infeasible(f"target entropy {target!r} below reachable minimum {f_hi!r}", bound=f_hi)

    iterations = 0
    x = 0.5 * (lo + hi)
    while abs(f(x) - target) > cfg.entropy_tol and hi - lo >= cfg.bracket_width:
        if iterations >= cfg.max_bisection_iters:
            raise ConvergenceFailure(
                f"bracket [{lo!r}, {hi!r}] still open after {iterations} iterations"
            )
        iterations += 1
        # invariant: f(lo) >= target >= f(hi)
        if f(x) >= target:
            lo = x
        else:
            hi = x
        x = 0.5 * (lo + hi)
    residual = f(x) - target
    if abs(residual) > cfg.entropy_tol:
        raise ConvergenceFailure(f"residual {residual!r} above tolerance after bracket collapsed")
    return make_schmidt(head + [x, mass - x]), iterations


def find_partner(v: SchmidtVector, beta1: float, cfg: SearchConfig = DEFAULT_CONFIG) -> PartnerResult:
    """Rank-3 state with top coefficient `beta1` and the same entropy as `v`.

    Raises
    ------
    NotRank3
        If `v` does not have effective rank 3.
    Infeasible
        If no sorted rank-3 vector with this top coefficient reaches the
        entropy of `v` (including ``beta1`` outside ``[1/3, 1)`` or equal
        to ``v[0]``).
    """
    if v.effective_rank != 3 or v.rank != 3:
        raise NotRank3(f"expected rank 3, got {v.rank} (effective {v.effective_rank})")
    target = entropy(v)
    if not 1.0 / 3.0 <= beta1 < 1.0:
        raise Infeasible(f"beta1={beta1!r} outside [1/3, 1)", bound=None)
    if abs(beta1 - v[0]) <= cfg.coeff_tol:
        raise Infeasible("beta1 equals the top coefficient of v; the only partner is v itself", bound=None)
    ceiling = max_entropy_given_top(beta1, 3)
    if ceiling < target + cfg.entropy_tol:
        raise Infeasible(
            f"maximum entropy {ceiling!r} at beta1={beta1!r} does not exceed target {target!r}",
            bound=ceiling,
        )
    w, iterations = solve_tail(target, [beta1], cfg)
    return PartnerResult(
        partner=w,
        entropy_residual=entropy(w) - target,
        classification=classify(v, w, cfg.coeff_tol),
        iterations=iterations,
    )


def differing_count(a: SchmidtVector, b: SchmidtVector, tol: float = DEFAULT_CONFIG.coeff_tol) -> int:
    if a.rank != b.rank:
        raise RankMismatch(f"ranks {a.rank} and {b.rank} differ")
    return sum(1 for x, y in zip(a, b) if abs(x - y) > tol)


def family_sweep(
    v: SchmidtVector,
    beta1_lo: float,
    beta1_hi: float,
    steps: int,
    cfg: SearchConfig = DEFAULT_CONFIG,
    workers: Optional[int] = None,
) -> list:
    """Partners of `v` on an evenly spaced grid of top coefficients.

    Grid points within ``coeff_tol`` of ``v[0]`` are dropped, infeasible
    points are skipped. Records come back sorted by ``beta1``.
    """
    if steps < 1 or beta1_hi < beta1_lo:
        raise EmptyRange(f"empty grid [{beta1_lo}, {beta1_hi}] x {steps}")
    grid = np.linspace(beta1_lo, beta1_hi, steps) if steps > 1 else np.array([beta1_lo])
    grid = [float(g) for g in grid if abs(g - v[0]) > cfg.coeff_tol]
    if not grid:
        raise EmptyRange("every grid point coincides with the top coefficient of v")

    def run(beta1):
        try:
            res = find_partner(v, beta1, cfg)
        except Infeasible:
            return None
        return FamilyRecord(
            beta1=beta1,
            partner=res.partner,
            entropy_residual=res.entropy_residual,
            differing_coeffs=differing_count(v, res.partner, cfg.coeff_tol),
            classification=res.classification,
        )

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, grid))
    else:
        records = [run(b) for b in grid]
    return sorted((r for r in records if r is not None), key=lambda r: r.beta1)


def lift(a: SchmidtVector, b: SchmidtVector, kappa: float) -> tuple:
    """Scale both vectors by ``1 - kappa`` and insert the common coefficient `kappa`.

    Entropy obeys ``E(lifted) = h(kappa) + (1 - kappa) * E(original)``.
    """
    if not 0.0 < kappa < 1.0:
        raise OutOfDomain(f"kappa={kappa!r} outside (0, 1)")
    if a.rank != b.rank:
        raise RankMismatch(f"ranks {a.rank} and {b.rank} differ")
    scale = 1.0 - kappa
    return (
        make_schmidt([scale * x for x in a] + [kappa]),
        make_schmidt([scale * x for x in b] + [kappa]),
    )


def locate_shared(a: SchmidtVector, b: SchmidtVector, j: int, tol: float = DEFAULT_CONFIG.coeff_tol) -> int:
    """Index in `b` of the coefficient equal to ``a[j]``, preferring index `j` itself."""
    if abs(a[j] - b[j]) <= tol:
        return j
    candidates = [i for i, y in enumerate(b) if abs(y - a[j]) <= tol]
    if not candidates:
        raise NoSharedCoefficient(f"a[{j}]={a[j]!r} has no match in b")
    return min(candidates, key=lambda i: abs(i - j))


def shared_pairs(a: SchmidtVector, b: SchmidtVector, tol: float = DEFAULT_CONFIG.coeff_tol) -> list:
    """Greedy one-to-one matching of equal coefficients, as ``(i_a, i_b)`` pairs."""
    used = set()
    pairs = []
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            if k not in used and abs(x - y) <= tol:
                pairs.append((i, k))
                used.add(k)
                break
    return pairs


def reduce_shared(a: SchmidtVector, b: SchmidtVector, j: int, cfg: SearchConfig = DEFAULT_CONFIG) -> tuple:
    """Drop the shared coefficient ``kappa = a[j]`` from both vectors and
    rescale the remainder by ``1 / (1 - kappa)``.

    `j` is a 0-based index into `a`; the matching coefficient of `b` is
    found by value, since sorting may place it at a different index.
    """
    if a.rank != b.rank:
        raise RankMismatch(f"ranks {a.rank} and {b.rank} differ")
    if a.rank < 2:
        raise RankMismatch("nothing left after removing the shared coefficient")
    if not 0 <= j < a.rank:
        raise OutOfDomain(f"index {j} outside 0..{a.rank - 1}")
    k = locate_shared(a, b, j, cfg.coeff_tol)
    kappa = a[j]
    if kappa >= 1.0 - ZERO_EPS:
        raise DegenerateKappa(f"kappa={kappa!r} leaves no mass")
    rest = 1.0 - kappa
    chi = [x / rest for i, x in enumerate(a) if i != j]
    eta = [y / rest for i, y in enumerate(b) if i != k]
    return make_schmidt(chi), make_schmidt(eta)
