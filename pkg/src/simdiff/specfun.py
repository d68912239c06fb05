"""Scalar special-function kernels used by every analytic profile in the package.

Everything here is self-contained on purpose: the finite-difference oracle must
be able to cross-check the analytic modules without sharing any special-function
code with them, so these kernels deliberately avoid ``scipy.special``.  The test
suite compares them against quadrature and third-party implementations instead.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy.polynomial.polynomial as npoly

__all__ = [
    "Accuracy",
    "ConvergenceError",
    "erf",
    "dawson",
    "kummer_1f1",
    "gaussian_deriv",
]

_SQRT_PI = math.sqrt(math.pi)
_INV_SQRT_4PI = 1.0 / math.sqrt(4.0 * math.pi)

# Largest magnitude a series partial sum may reach before we call it an overflow
# rather than let inf propagate silently into downstream formulas.
_OVERFLOW_LIMIT = 1e300


class ConvergenceError(RuntimeError):
    """A series did not converge within the permitted number of terms."""


@dataclass(frozen=True)
class Accuracy:
    """Requested accuracy for series evaluation.

    Parameters
    ----------
    rel_tol : float
        Relative tolerance at which a series is considered converged.  The
        kernels target 1e-12 and guarantee 1e-10 on their supported ranges.
    max_terms : int
        Hard cap on the number of series terms before giving up.
    """

    rel_tol: float = 1e-12
    max_terms: int = 500

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


def erf(x: float) -> float:
    """Standard error function (2/sqrt(pi)) * integral of exp(-u^2) from 0 to x.

    Evaluated through the positive-term series

        erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_n (2x^2)^n / (1*3*...*(2n+1)),

    which has no cancellation, with saturation to +/-1 once the result is
    within one ulp of it.  Odd symmetry is exact by construction because the
    computation only ever sees ``|x|``.
    """
    if x != x:  # NaN in, NaN out
        return x
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    sign = 1.0 if x > 0.0 else -1.0
    if ax >= 6.0:
        # 1 - erf(6) < 3e-17: indistinguishable from 1 in double precision.
        return sign
    ax2 = ax * ax
    # term_n already carries the exp(-x^2) factor; no large intermediates.
    term = 2.0 * ax * math.exp(-ax2) / _SQRT_PI
    total = term
    n = 0
    while True:
        n += 1
        term *= 2.0 * ax2 / (2.0 * n + 1.0)
        total += term
        if term < 1e-17 * total:
            # A few-ulp series excess near saturation must not leave the range.
            return sign * min(total, 1.0)
        if n > 300:  # unreachable for |x| < 6; defensive
            raise ConvergenceError("erf series failed to converge")


def dawson(x: float) -> float:
    """Dawson integral D(x) = e^{-x^2} * integral of e^{t^2} from 0 to x.

    Positive-term series with the Gaussian damping folded into the recurrence
    for moderate ``|x|``, switching to the asymptotic expansion in 1/(2x)
    beyond, where the series would need too many terms.  Odd by construction.
    """
    if x != x:
        return x
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    sign = 1.0 if x > 0.0 else -1.0
    if ax < 6.5:
        ax2 = ax * ax
        # sum_n x^{2n+1} e^{-x^2} / (n! (2n+1)); all terms positive.
        term = ax * math.exp(-ax2)
        total = term
        n = 0
        while True:
            n += 1
            term *= ax2 * (2.0 * n - 1.0) / (n * (2.0 * n + 1.0))
            total += term
            if term < 1e-17 * total:
                return sign * total
            if n > 400:
                raise ConvergenceError("dawson series failed to converge")
    # Asymptotic: D(x) ~ 1/(2x) * (1 + 1/(2x^2) + 3/(2x^2)^2 * ... ), terms
    # (2k-1)!! / (2x^2)^k.  Truncated at the smallest term (< 1e-17 here).
    inv2x2 = 1.0 / (2.0 * ax * ax)
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= (2.0 * k - 1.0) * inv2x2
        if term < 1e-17 * total or k > 40:
            break
        total += term
    return sign * total / (2.0 * ax)


def _kummer_series(a: float, b: float, z: float, acc: Accuracy) -> float:
    """Taylor series for 1F1(a; b; z), z >= 0 only (no cancellation there)."""
    term = 1.0
    total = 1.0
    for k in range(acc.max_terms):
        term *= (a + k) * z / ((b + k) * (k + 1.0))
        if term == 0.0:  # (a)_k hit zero: polynomial case, series terminated
            return total
        total += term
        if abs(total) > _OVERFLOW_LIMIT or abs(term) > _OVERFLOW_LIMIT:
            raise OverflowError(
                "1F1(%g; %g; %g) exceeds double-precision range" % (a, b, z)
            )
        if abs(term) <= acc.rel_tol * abs(total):
            return total
    raise ConvergenceError(
        "1F1(%g; %g; %g) did not converge in %d terms" % (a, b, z, acc.max_terms)
    )


def kummer_1f1(a: float, b: float, z: float, acc: Accuracy = Accuracy()) -> float:
    """Confluent hypergeometric function of the first kind, 1F1(a; b; z).

    For ``z >= 0`` the Taylor series is summed directly.  For ``z < 0`` the
    series alternates and loses all significance once ``|z|`` is large, so the
    Kummer transformation ``1F1(a; b; z) = e^z 1F1(b - a; b; -z)`` is applied
    and the positive-argument series summed instead.

    Parameters
    ----------
    a, b, z : float
        Function arguments; ``b`` must not be zero or a negative integer.
    acc : Accuracy, optional
        Series tolerance and term cap.

    Raises
    ------
    ValueError
        If ``b`` is zero or a negative integer (the function has poles there).
    ConvergenceError
        If the series cap is exhausted.
    OverflowError
        If the value exceeds the double-precision range (large positive
        effective argument).
    """
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(z)):
        raise ValueError("kummer_1f1 arguments must be finite")
    if b <= 0.0 and b == math.floor(b):
        raise ValueError("kummer_1f1 undefined for b = %g (non-positive integer)" % b)
    if z == 0.0 or a == 0.0:
        return 1.0
    if z < 0.0:
        return math.exp(z) * _kummer_series(b - a, b, -z, acc)
    return _kummer_series(a, b, z, acc)


@lru_cache(maxsize=None)
def _gauss_poly(p: int) -> tuple:
    """Coefficients (ascending) of Q_p with d^p/ds^p e^{-s^2/4} = Q_p(s) e^{-s^2/4}."""
    coeffs = (1.0,)
    for _ in range(p):
        # Q' - (s/2) Q
        coeffs = tuple(
            npoly.polysub(npoly.polyder(coeffs), npoly.polymul((0.0, 0.5), coeffs))
        )
    return coeffs


def gaussian_deriv(p: int, s: float) -> float:
    """p-th derivative of the unit-mass Gaussian profile e^{-s^2/4}/sqrt(4 pi).

    Exact closed form: a cached polynomial recurrence (Q_{p+1} = Q_p' - s Q_p/2)
    times the Gaussian, never numerical differentiation.
    """
    if p < 0 or p != int(p):
        raise ValueError("derivative order p must be a non-negative integer")
    poly_val = npoly.polyval(s, _gauss_poly(int(p)))
    return float(poly_val) * math.exp(-s * s / 4.0) * _INV_SQRT_4PI
