"""Unit tests for the special-function kernels.

Reference values were computed with mpmath at 30 decimal digits; the stdlib
``math.erf`` and SciPy's ``dawsn``/``hyp1f1`` serve as independent
implementations for randomized cross-checks.  Tolerances reflect measured
agreement with comfortable margin, not wishful thinking: the series kernels
are accurate to ~1e-15 relative, the confluent series to ~1e-12 near heavy
cancellation.
"""

import math

import numpy as np
import pytest
import scipy.special
from numpy.polynomial import hermite

from simdiff.specfun import (
    Accuracy,
    ConvergenceError,
    dawson,
    erf,
    gaussian_deriv,
    kummer_1f1,
)

RNG_SEED = 20260824


# --------------------------------------------------------------------------
# erf


@pytest.mark.parametrize(
    "x, expected",
    [
        (0.5, 0.52049987781304654),
        (1.0, 0.8427007929497149),
        (3.1, 0.9999883513426328),
    ],
)
def test_erf_reference_values(x, expected):
    """Agree with mpmath.erf at 30 digits (rounded to double)."""
    assert erf(x) == pytest.approx(expected, rel=1e-14)


def test_erf_matches_stdlib_on_random_arguments():
    """Randomized cross-check against the independent stdlib implementation."""
    rng = np.random.default_rng(RNG_SEED)
    for x in rng.uniform(-8.0, 8.0, 2000):
        ref = math.erf(float(x))
        assert erf(float(x)) == pytest.approx(ref, rel=1e-13, abs=1e-300)


def test_erf_basic_shape():
    assert erf(0.0) == 0.0
    assert erf(50.0) == 1.0
    assert erf(-50.0) == -1.0
    assert math.isnan(erf(float("nan")))


def test_erf_odd_bit_exact():
    """erf(-x) == -erf(x) exactly, by construction (sign folded out front)."""
    rng = np.random.default_rng(RNG_SEED)
    for x in rng.uniform(0.0, 10.0, 500):
        assert erf(-float(x)) == -erf(float(x))


def test_erf_monotone_and_bounded():
    """Monotone up to roundoff jitter near saturation, and never outside [-1, 1]."""
    xs = np.linspace(-6.0, 6.0, 301)
    vals = [erf(float(x)) for x in xs]
    assert all(b >= a - 1e-14 for a, b in zip(vals, vals[1:]))
    assert all(-1.0 <= v <= 1.0 for v in vals)


# --------------------------------------------------------------------------
# dawson


@pytest.mark.parametrize(
    "x, expected",
    [
        (0.25, 0.23983916356289821),
        (1.0, 0.5380795069127684),
        (5.0, 0.10213407442427686),
        (7.5, 0.067275811644630616),
        (40.0, 0.012503909917843973),
    ],
)
def test_dawson_reference_values(x, expected):
    """Agree with mpmath at 30 digits on both the series and asymptotic branches."""
    assert dawson(x) == pytest.approx(expected, rel=1e-13)


def test_dawson_matches_scipy_on_random_arguments():
    rng = np.random.default_rng(RNG_SEED)
    for x in rng.uniform(-50.0, 50.0, 2000):
        ref = scipy.special.dawsn(float(x))
        assert dawson(float(x)) == pytest.approx(ref, rel=1e-13, abs=1e-300)


def test_dawson_odd_bit_exact():
    rng = np.random.default_rng(RNG_SEED)
    for x in rng.uniform(0.0, 20.0, 500):
        assert dawson(-float(x)) == -dawson(float(x))


def test_dawson_branch_switch_is_continuous():
    """Series and asymptotic branches agree across the internal switch point."""
    eps = 1e-9
    lo, hi = dawson(6.5 - eps), dawson(6.5 + eps)
    assert abs(hi - lo) / abs(hi) < 1e-8


def test_dawson_far_asymptote():
    """x*D(x) -> 1/2 with the next correction 1/(4 x^2) of relative size 1/(2 x^2)."""
    for x in (50.0, 100.0, 300.0):
        assert x * dawson(x) == pytest.approx(0.5, rel=1.0 / (x * x))


def test_dawson_at_zero():
    assert dawson(0.0) == 0.0
    assert math.isnan(dawson(float("nan")))


# --------------------------------------------------------------------------
# kummer_1f1


@pytest.mark.parametrize(
    "a, b, z, expected",
    [
        (0.3, 1.7, 2.2, 1.7404427557136944),
        (2.0, 2.5, -8.0, 0.013986024113152386),
        (-1.5, 0.5, 3.0, -2.1711659103787283),
        (1.25, 2.75, -30.0, 0.025299363043740927),
    ],
)
def test_kummer_reference_values(a, b, z, expected):
    """Agree with mpmath.hyp1f1 at 30 digits, including the reflected z<0 path."""
    assert kummer_1f1(a, b, z) == pytest.approx(expected, rel=5e-12)


def test_kummer_matches_scipy_on_random_triples():
    rng = np.random.default_rng(RNG_SEED)
    checked = 0
    while checked < 300:
        a = float(rng.uniform(-4.0, 4.0))
        b = float(rng.uniform(0.3, 5.0))
        z = float(rng.uniform(-40.0, 40.0))
        ref = scipy.special.hyp1f1(a, b, z)
        if not np.isfinite(ref) or abs(ref) < 1e-250:
            continue
        assert kummer_1f1(a, b, z) == pytest.approx(ref, rel=1e-11)
        checked += 1


def test_kummer_trivial_cases():
    """Closed forms: F(a,b,0)=1, F(0,b,z)=1, F(a,a,z)=e^z, F(-1,b,z)=1-z/b."""
    assert kummer_1f1(1.3, 2.1, 0.0) == 1.0
    assert kummer_1f1(0.0, 1.5, 17.0) == 1.0
    assert kummer_1f1(2.0, 2.0, 3.0) == pytest.approx(math.exp(3.0), rel=1e-13)
    assert kummer_1f1(-1.0, 0.5, 0.3) == pytest.approx(1.0 - 0.3 / 0.5, rel=1e-14)


def test_kummer_polynomial_termination():
    """Negative-integer a truncates the series; far z must stay finite and exact."""
    # a=-2: 1 - 2 z/b + z^2/(b (b+1))  -- degree-2 polynomial
    b, z = 0.5, 200.0
    expected = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0))
    assert kummer_1f1(-2.0, b, z) == pytest.approx(expected, rel=1e-12)


def test_kummer_rejects_bad_parameters():
    with pytest.raises(ValueError):
        kummer_1f1(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        kummer_1f1(1.0, -3.0, 1.0)
    with pytest.raises(ValueError):
        kummer_1f1(float("nan"), 1.0, 1.0)
    with pytest.raises(ValueError):
        kummer_1f1(1.0, 1.0, float("inf"))


def test_kummer_overflow_raises():
    """F(1,1,z) = e^z; z=800 exceeds double range and must fail loudly."""
    with pytest.raises(OverflowError):
        kummer_1f1(1.0, 1.0, 800.0)


def test_kummer_convergence_budget_enforced():
    with pytest.raises(ConvergenceError):
        kummer_1f1(1.0, 2.0, 30.0, Accuracy(rel_tol=1e-12, max_terms=5))


def test_accuracy_validation():
    with pytest.raises(ValueError):
        Accuracy(rel_tol=0.0)
    with pytest.raises(ValueError):
        Accuracy(max_terms=0)
    acc = Accuracy()
    assert acc.rel_tol == 1e-12
    assert acc.max_terms == 500


# --------------------------------------------------------------------------
# gaussian_deriv


def test_gaussian_deriv_order_zero_is_unit_mass_gaussian():
    peak = 1.0 / math.sqrt(4.0 * math.pi)
    assert gaussian_deriv(0, 0.0) == pytest.approx(peak, rel=1e-15)
    assert gaussian_deriv(0, 2.0) == pytest.approx(peak * math.exp(-1.0), rel=1e-14)


def test_gaussian_deriv_matches_hermite_closed_form():
    """The p-th derivative of e^{-s^2/4} is (-1/2)^p H_p(s/2) e^{-s^2/4}
    with H_p the physicists' Hermite polynomial -- an independent closed form
    evaluated through numpy.polynomial.hermite."""
    rng = np.random.default_rng(RNG_SEED)
    norm = math.sqrt(4.0 * math.pi)
    for p in range(9):
        basis = [0.0] * p + [1.0]
        for s in rng.uniform(-8.0, 8.0, 200):
            s = float(s)
            ref = (-0.5) ** p * hermite.hermval(s / 2.0, basis) * math.exp(
                -s * s / 4.0
            ) / norm
            assert gaussian_deriv(p, s) == pytest.approx(ref, rel=1e-11, abs=1e-13)


def test_gaussian_deriv_parity():
    """Order-p members have parity (-1)^p."""
    for p in range(7):
        sign = (-1.0) ** p
        for s in (0.5, 1.7, 3.2):
            assert gaussian_deriv(p, -s) == pytest.approx(
                sign * gaussian_deriv(p, s), rel=1e-14
            )


def test_gaussian_deriv_rejects_bad_order():
    with pytest.raises(ValueError):
        gaussian_deriv(-1, 0.0)
