"""Randomized and exhaustive property suites behind ``schmidt-locc verify``.

Every trial draws from its own generator seeded with ``(seed, trial)``, so a
counterexample can be replayed from its trial index alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .equal_entropy import (
    differing_count,
    family_sweep,
    find_partner,
    lift,
    reduce_shared,
    shared_pairs,
    solve_tail,
)
from .errors import Infeasible, SchmidtError
from .locc_order import Variant, classify, incomparable_rank3_fast
from .schmidt_core import (
    DEFAULT_CONFIG,
    SchmidtVector,
    SearchConfig,
    binary_entropy,
    entropy,
    make_schmidt,
)
from .schur_analysis import gradient_check, schur_witness, verify_theorem1, verify_theorem2

# pairs closer than this in every coefficient are exempt from the strict-gap check
STRICT_GAP_SEPARATION = 1e-4
STRICT_GAP_FLOOR = 1e-13
GAP_IDENTITY_TOL = 1e-10
SCHUR_SEPARATION = 1e-6
GRADIENT_TOL = 1e-6
GRADIENT_STEP = 1e-6
REDUCTION_TOL = 1e-10
GROUPING_TOL = 1e-12


@dataclass
class SuiteReport:
    name: str
    trials: int = 0
    checks: int = 0
    failures: int = 0
    counterexample: Optional[dict] = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checks > 0

    def fail(self, **details):
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = details

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} trials={self.trials} checks={self.checks} failures={self.failures}"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def random_vector(rng, rank: int, floor: float = 0.0) -> SchmidtVector:
    """Uniform draw from the simplex, optionally mixed toward uniform so every
    coefficient is at least `floor`."""
    x = rng.dirichlet(np.ones(rank))
    if floor > 0.0:
        x = (1.0 - rank * floor) * x + floor
    return make_schmidt(x)


def random_majorized(rng, b: SchmidtVector, terms: int = 3) -> SchmidtVector:
    """A vector majorized by `b`: a random doubly stochastic mixture of
    permutations applied to `b`."""
    x = b.as_array()
    weights = rng.dirichlet(np.ones(terms))
    mixed = np.zeros_like(x)
    for w in weights:
        mixed += w * x[rng.permutation(len(x))]
    return make_schmidt(mixed)


def _vec(v):
    return list(v.coeffs)


def run_theorem2(trials: int, seed: int = 0, ranks=(2, 3, 4, 5, 6), cfg: SearchConfig = DEFAULT_CONFIG) -> SuiteReport:
    """Comparable, non-equivalent pairs ``a -> b`` must satisfy ``E(a) > E(b)``,
    and the telescoped gap must match the direct one.

    `trials` counts accepted (non-equivalent) pairs per rank.
    """
    report = SuiteReport("theorem2")
    exempt = 0
    for d in ranks:
        accepted = 0
        for t in itertools.count():
            if accepted == trials:
                break
            rng = trial_rng(seed, d * 10_000_000 + t)
            b = random_vector(rng, d)
            a = random_majorized(rng, b)
            c = classify(a, b, cfg.coeff_tol)
            if c.variant is Variant.EQUIVALENT:
                continue
            accepted += 1
            report.trials += 1
            report.checks += 1
            if c.variant is not Variant.A_TO_B:
                report.fail(rank=d, trial=t, a=_vec(a), b=_vec(b), reason=f"classified {c.variant.value}")
                continue
            gap = verify_theorem2(a, b, cfg)
            separated = max(abs(x - y) for x, y in zip(a, b)) >= STRICT_GAP_SEPARATION
            if not separated:
                exempt += 1
            if separated and not gap.direct_gap > STRICT_GAP_FLOOR:
                report.fail(rank=d, trial=t, a=_vec(a), b=_vec(b), gap=gap.direct_gap, reason="gap not positive")
            elif gap.discrepancy > GAP_IDENTITY_TOL:
                report.fail(rank=d, trial=t, a=_vec(a), b=_vec(b), reason="telescoped gap mismatch",
                            direct=gap.direct_gap, telescoped=gap.telescoped_gap)
    report.notes["exempt_close_pairs"] = exempt
    return report


def run_theorem1(trials: int, seed: int = 0, cfg: SearchConfig = DEFAULT_CONFIG) -> SuiteReport:
    report = SuiteReport("theorem1")
    for t in range(trials):
        rng = trial_rng(seed, t)
        v = random_vector(rng, 3)
        report.trials += 1
        for i in range(3):
            report.checks += 1
            try:
                w = verify_theorem1(v, i, cfg)
            except SchmidtError as exc:
                report.fail(trial=t, v=_vec(v), index=i, reason=f"{type(exc).__name__}: {exc}")
                continue
            err = max(abs(x - y) for x, y in zip(v, w))
            if err > cfg.coeff_tol:
                report.fail(trial=t, v=_vec(v), index=i, w=_vec(w), reason="round trip mismatch")
    return report


def run_schur(trials: int, seed: int = 0, ranks=(2, 3, 4, 5, 6)) -> SuiteReport:
    """Witness products are negative for distinct coefficients; analytic and
    finite-difference gradients agree on interior vectors."""
    report = SuiteReport("schur")
    worst_gradient = 0.0
    for t in range(trials):
        rng = trial_rng(seed, t)
        d = ranks[t % len(ranks)]
        v = random_vector(rng, d)
        report.trials += 1
        for i, j in itertools.permutations(range(d), 2):
            if abs(v[i] - v[j]) <= SCHUR_SEPARATION or min(v[i], v[j]) <= 0.0:
                continue
            report.checks += 1
            w = schur_witness(v, i, j)
            if not w.product < 0.0:
                report.fail(trial=t, v=_vec(v), i=i, j=j, product=w.product, reason="witness not negative")
        interior = random_vector(rng, d, floor=0.05)
        report.checks += 1
        err = gradient_check(interior, GRADIENT_STEP)
        worst_gradient = max(worst_gradient, float(err))
        if err > GRADIENT_TOL:
            report.fail(trial=t, v=_vec(interior), error=err, reason="gradient mismatch")
    report.notes["max_gradient_error"] = float(worst_gradient)
    return report


def rank3_grid(denominator: int = 100) -> list:
    """All sorted rank-3 vectors with coefficients in multiples of ``1/denominator``."""
    out = []
    for i in range(denominator, 0, -1):
        for j in range(min(i, denominator - i), 0, -1):
            k = denominator - i - j
            if 1 <= k <= j:
                out.append(make_schmidt([i / denominator, j / denominator, k / denominator]))
    return out


def run_eq5(denominator: int = 100, cfg: SearchConfig = DEFAULT_CONFIG) -> SuiteReport:
    """Exhaustive agreement of the rank-3 shortcut with the full prefix-sum test."""
    report = SuiteReport("eq5")
    grid = rank3_grid(denominator)
    report.trials = len(grid)
    incomparable = 0
    for a in grid:
        for b in grid:
            report.checks += 1
            fast = incomparable_rank3_fast(a, b, cfg.coeff_tol)
            full = classify(a, b, cfg.coeff_tol).variant is Variant.INCOMPARABLE
            incomparable += full
            if fast != full:
                report.fail(a=_vec(a), b=_vec(b), fast=fast, full=full, reason="disagreement")
    report.notes["incomparable_pairs"] = incomparable
    return report


def random_partner_pair(rng, cfg: SearchConfig = DEFAULT_CONFIG, attempts: int = 1000):
    """A random rank-3 vector and an equal-entropy partner with a different top coefficient."""
    for _ in range(attempts):
        v = random_vector(rng, 3, floor=0.01)
        beta1 = float(rng.uniform(1.0 / 3.0, 0.95))
        try:
            res = find_partner(v, beta1, cfg)
        except Infeasible:
            continue
        if differing_count(v, res.partner, cfg.coeff_tol) == 3:
            return v, res.partner
    raise RuntimeError("no feasible partner found")


def random_rank4_pair(rng, cfg: SearchConfig = DEFAULT_CONFIG, attempts: int = 10_000):
    """Rank-4 equal-entropy pair differing in all four coefficients.

    The partner keeps the first two coefficients of a perturbed copy and
    solves for the last two.
    """
    for _ in range(attempts):
        a = random_vector(rng, 4, floor=0.02)
        head = [a[0] + float(rng.uniform(-0.05, 0.05)), a[1] + float(rng.uniform(-0.05, 0.05))]
        if not (head[0] >= head[1] > 0.0 and head[0] < 1.0):
            continue
        try:
            b, _ = solve_tail(entropy(a), head, cfg)
        except Infeasible:
            continue
        if differing_count(a, b, 1e-6) == 4:
            return a, b
    raise RuntimeError("no rank-4 pair found")


def _distinct_kappa(rng, pair, lo=0.02, hi=0.5):
    """A kappa whose scaled insertion collides with no existing coefficient."""
    while True:
        kappa = float(rng.uniform(lo, hi))
        scaled = [(1.0 - kappa) * x for v in pair for x in v]
        if all(abs(kappa - x) > 1e-6 for x in scaled):
            return kappa


def build_rank5_pair(rng, shared: int, cfg: SearchConfig = DEFAULT_CONFIG):
    """Rank-5 equal-entropy incomparable pair with exactly `shared` common coefficients."""
    if shared == 2:
        pair = random_partner_pair(rng, cfg)
    elif shared == 1:
        pair = random_rank4_pair(rng, cfg)
    else:
        raise ValueError("shared must be 1 or 2")
    while pair[0].rank < 5:
        pair = lift(*pair, _distinct_kappa(rng, pair))
    return pair


def run_reduction(trials: int, seed: int = 0, cfg: SearchConfig = DEFAULT_CONFIG) -> SuiteReport:
    """Strip shared coefficients from rank-5 equal-entropy pairs; the reduced
    pair must keep equal entropy, stay incomparable and differ everywhere."""
    report = SuiteReport("reduction")
    for t in range(trials):
        rng = trial_rng(seed, t)
        k = 1 + t % 2
        a, b = build_rank5_pair(rng, k, cfg)
        report.trials += 1
        report.checks += 1
        if classify(a, b, cfg.coeff_tol).variant is not Variant.INCOMPARABLE:
            report.fail(trial=t, a=_vec(a), b=_vec(b), reason="constructed pair not incomparable")
            continue
        while True:
            pairs = shared_pairs(a, b, cfg.coeff_tol)
            if not pairs:
                break
            a, b = reduce_shared(a, b, pairs[0][0], cfg)
        report.checks += 1
        residual = abs(entropy(a) - entropy(b))
        variant = classify(a, b, cfg.coeff_tol).variant
        if a.rank != 5 - k:
            report.fail(trial=t, shared=k, a=_vec(a), b=_vec(b), reason=f"reduced to rank {a.rank}")
        elif residual > REDUCTION_TOL:
            report.fail(trial=t, shared=k, a=_vec(a), b=_vec(b), residual=residual, reason="entropy drift")
        elif variant is not Variant.INCOMPARABLE:
            report.fail(trial=t, shared=k, a=_vec(a), b=_vec(b), reason=f"reduced pair {variant.value}")
        elif differing_count(a, b, cfg.coeff_tol) != a.rank:
            report.fail(trial=t, shared=k, a=_vec(a), b=_vec(b), reason="reduced pair shares a coefficient")
    return report


DICHOTOMY_BASES = (
    ((0.45, 0.39, 0.16), 0.34, 0.60),
    ((0.5, 0.3, 0.2), 0.40, 0.62),
    ((0.6, 0.25, 0.15), 0.45, 0.75),
)


def run_dichotomy(steps: int = 400, seed: int = 0, cfg: SearchConfig = DEFAULT_CONFIG) -> SuiteReport:
    """Swept equal-entropy pairs are incomparable and differ in all three
    coefficients; lifted copies keep at least three differences and obey
    the grouping identity."""
    report = SuiteReport("dichotomy")
    rng = trial_rng(seed, 0)
    pairs = 0
    for coeffs, lo, hi in DICHOTOMY_BASES:
        v = make_schmidt(coeffs)
        for rec in family_sweep(v, lo, hi, steps, cfg):
            pairs += 1
            report.trials += 1
            report.checks += 1
            if not (rec.classification.variant is Variant.INCOMPARABLE and rec.differing_coeffs == 3
                    and abs(rec.entropy_residual) <= cfg.entropy_tol):
                report.fail(v=_vec(v), partner=_vec(rec.partner), reason="sweep record broke dichotomy")
                continue
            a, b = v, rec.partner
            for _ in range(2):
                kappa = _distinct_kappa(rng, (a, b))
                la, lb = lift(a, b, kappa)
                report.checks += 1
                grouped = binary_entropy(kappa) + (1.0 - kappa) * entropy(a)
                ok = (differing_count(la, lb, cfg.coeff_tol) >= 3
                      and abs(entropy(la) - grouped) <= GROUPING_TOL
                      and classify(la, lb, cfg.coeff_tol).variant is Variant.INCOMPARABLE)
                if not ok:
                    report.fail(a=_vec(la), b=_vec(lb), kappa=kappa, reason="lifted pair broke dichotomy")
                a, b = la, lb
    report.notes["sweep_pairs"] = pairs
    return report


SUITES: dict = {
    "theorem1": lambda trials, seed: run_theorem1(trials or 1000, seed),
    "theorem2": lambda trials, seed: run_theorem2(trials or 10_000, seed),
    "schur": lambda trials, seed: run_schur(trials or 10_000, seed),
    "eq5": lambda trials, seed: run_eq5(),
    "reduction": lambda trials, seed: run_reduction(trials or 100, seed),
    "dichotomy": lambda trials, seed: run_dichotomy(trials or 400, seed),
}
