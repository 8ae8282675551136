import itertools
import math

import pytest
from hypothesis import given, strategies as st

from schmidt_locc import (
    NegativeCoefficient,
    NotNormalizable,
    OutOfDomain,
    SchmidtVector,
    SearchConfig,
    binary_entropy,
    entropy,
    make_schmidt,
)

from conftest import REF_PHI1, REF_STATE, schmidt_vectors


@pytest.mark.parametrize(
    "raw, expected",
    [
        ([0.39, 0.45, 0.16], (0.45, 0.39, 0.16)),
        ([1.0], (1.0,)),
        ([0.25] * 4, (0.25,) * 4),
    ],
)
def test_make_schmidt_canonical(raw, expected):
    v = make_schmidt(raw)
    assert v.coeffs == pytest.approx(expected, abs=1e-15)
    assert v.rank == len(expected)


def test_make_schmidt_errors():
    with pytest.raises(NegativeCoefficient):
        make_schmidt([1.1, -0.1])
    with pytest.raises(NotNormalizable):
        make_schmidt([0.5, 0.4])
    with pytest.raises(NotNormalizable):
        make_schmidt([])


def test_make_schmidt_clips_roundoff():
    v = make_schmidt([0.5, 0.5, -1e-16, 1e-17])
    assert v.coeffs == (0.5, 0.5, 0.0, 0.0)
    assert v.effective_rank == 2


def test_direct_construction_checks_invariants():
    with pytest.raises(ValueError):
        SchmidtVector((0.2, 0.8))
    with pytest.raises(NotNormalizable):
        SchmidtVector((0.6, 0.3))


@pytest.mark.parametrize(
    "coeffs, bits, tol",
    [
        (REF_STATE, 1.471215431, 1e-9),
        (REF_PHI1, 1.471215442, 1e-9),
        ((1 / 3, 1 / 3, 1 / 3), math.log2(3), 1e-15),
        # mpmath, 40 digits
        ((0.5, 0.3, 0.2), 1.4854752972273343195, 1e-15),
        ((0.4, 0.35, 0.25), 1.5588718484453603233, 1e-15),
    ],
)
def test_entropy_values(coeffs, bits, tol):
    assert abs(entropy(make_schmidt(coeffs)) - bits) <= tol


def test_entropy_product_state_is_zero():
    assert entropy(make_schmidt([1.0, 0.0, 0.0])) == 0.0
    assert math.copysign(1.0, entropy(make_schmidt([1.0]))) == 1.0


@pytest.mark.parametrize("kappa, bits", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.25, 0.81127812445913286391)])
def test_binary_entropy(kappa, bits):
    assert binary_entropy(kappa) == pytest.approx(bits, abs=1e-15)


def test_binary_entropy_domain():
    with pytest.raises(OutOfDomain):
        binary_entropy(1.5)
    with pytest.raises(OutOfDomain):
        binary_entropy(-0.1)


@given(schmidt_vectors(min_rank=1, max_rank=6))
def test_entropy_bounded_by_log_rank(v):
    assert -1e-15 <= entropy(v) <= math.log2(v.effective_rank) + 1e-12


def test_entropy_max_only_for_uniform():
    assert entropy(make_schmidt([0.25, 0.25, 0.25, 0.25])) == pytest.approx(2.0, abs=1e-15)
    assert entropy(make_schmidt([0.26, 0.25, 0.25, 0.24])) < 2.0 - 1e-6


@given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=6))
def test_entropy_permutation_invariant_bitwise(w):
    total = math.fsum(w)
    x = [a / total for a in w]
    ref = entropy(make_schmidt(x))
    for perm in itertools.islice(itertools.permutations(x), 24):
        assert entropy(make_schmidt(perm)) == ref


# entries below ZERO_EPS are clipped to zero by design
@given(st.floats(1e-12, 1.0) | st.just(0.0))
def test_grouping_rank2(p):
    assert entropy(make_schmidt([p, 1.0 - p])) == pytest.approx(binary_entropy(p), abs=1e-14)


@given(schmidt_vectors(min_rank=1, max_rank=6))
def test_zero_entropy_iff_rank_one(v):
    assert (entropy(v) == 0.0) == (v.effective_rank == 1)


def test_search_config_validation():
    assert SearchConfig().entropy_tol == 1e-12
    with pytest.raises(OutOfDomain):
        SearchConfig(coeff_tol=0.0)
    with pytest.raises(OutOfDomain):
        SearchConfig(max_bisection_iters=0)


def test_json_round_trip():
    v = make_schmidt(REF_PHI1)
    text = ", ".join(f"{x:.17g}" for x in v)
    again = make_schmidt(float(t) for t in text.split(", "))
    assert again.coeffs == v.coeffs
    assert v.to_json() == {"coeffs": list(v.coeffs)}
