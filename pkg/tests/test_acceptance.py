"""Exit criteria. Each test records one PASS/FAIL line, shown in the pytest
terminal summary."""

import time

from schmidt_locc import Variant, entropy, find_partner, make_schmidt
from schmidt_locc.suites import (
    run_dichotomy,
    run_eq5,
    run_reduction,
    run_schur,
    run_theorem1,
    run_theorem2,
)

from conftest import REF_PHI1, REF_PHI2, REF_STATE


def test_ac1_reference_entropies(acceptance):
    expected = [(REF_STATE, 1.471215431), (REF_PHI1, 1.471215442), (REF_PHI2, 1.471215423)]
    errors = [abs(entropy(make_schmidt(c)) - bits) for c, bits in expected]
    ok = all(e <= 1e-9 for e in errors)
    acceptance("AC1 reference entropies within 1e-9", ok, f"max error {max(errors):.2e}")
    assert ok


def test_ac2_reference_bracket(acceptance):
    v = make_schmidt(REF_STATE)
    res = find_partner(v, 0.49)
    runs = []
    for _ in range(20):
        t0 = time.perf_counter()
        find_partner(v, 0.49)
        runs.append(time.perf_counter() - t0)
    elapsed = sorted(runs)[len(runs) // 2]
    b2 = res.partner[1]
    ok = (0.33676028 < b2 < 0.33676030 and abs(res.entropy_residual) <= 1e-12
          and res.classification.variant is Variant.INCOMPARABLE and elapsed < 1e-3)
    acceptance("AC2 partner inside the reference bracket", ok,
               f"beta2={b2:.11f} residual={res.entropy_residual:.1e} median {elapsed * 1e6:.0f} us")
    assert ok


def test_ac3_rank3_shortcut_grid(acceptance):
    report = run_eq5(100)
    ok = report.passed and report.failures == 0
    acceptance("AC3 rank-3 shortcut equals full classification on 0.01 grid", ok,
               f"{report.trials} vectors, {report.checks} pairs, {report.failures} disagreements")
    assert ok, report.counterexample


def test_ac4_strict_entropy_decrease(acceptance):
    report = run_theorem2(10_000, seed=0, ranks=(2, 3, 4, 5, 6))
    ok = report.passed and report.trials == 50_000
    acceptance("AC4 comparable pairs strictly lose entropy; gap identity to 1e-10", ok,
               f"{report.trials} pairs, {report.failures} violations, "
               f"{report.notes['exempt_close_pairs']} exempt as closer than 1e-4")
    assert ok, report.counterexample


def test_ac5_theorem1_round_trip(acceptance):
    report = run_theorem1(1000, seed=0)
    ok = report.passed and report.checks == 3000
    acceptance("AC5 shared coefficient + equal entropy reproduces the vector", ok,
               f"{report.checks} solves, {report.failures} violations")
    assert ok, report.counterexample


def test_ac6_schur(acceptance):
    report = run_schur(10_000, seed=0)
    ok = report.passed and report.notes["max_gradient_error"] <= 1e-6
    acceptance("AC6 Schur witnesses negative, gradient check within 1e-6", ok,
               f"{report.checks} checks, max gradient error {report.notes['max_gradient_error']:.1e}")
    assert ok, report.counterexample


def test_ac7_equal_entropy_dichotomy(acceptance):
    report = run_dichotomy(400, seed=0)
    ok = report.passed and report.notes["sweep_pairs"] >= 500
    acceptance("AC7 swept and lifted equal-entropy pairs are incomparable", ok,
               f"{report.notes['sweep_pairs']} sweep pairs, {report.checks} checks, {report.failures} failures")
    assert ok, report.counterexample


def test_ac8_reduction_chain(acceptance):
    report = run_reduction(100, seed=0)
    ok = report.passed and report.trials == 100
    acceptance("AC8 rank-5 pairs reduce to all-different incomparable pairs", ok,
               f"{report.trials} pairs, {report.failures} counterexamples")
    assert ok, report.counterexample
