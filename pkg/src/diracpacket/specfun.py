"""Special functions underpinning the bound-state machinery.

Three small pieces live here: a guarded log-gamma, the truncated Kummer
series that appears in the degree <= 1 radial polynomials, and spherical
harmonics that stay accurate up to l of a few hundred.

Spherical harmonics use the Condon-Shortley phase convention,

    Y_{l,m}(theta, phi) = Ptilde_l^m(cos theta) * exp(i m phi),   m >= 0,
    Y_{l,-m} = (-1)^m conj(Y_{l,m}),

where Ptilde includes the full orthonormalization
sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!) and the (-1)^m phase.  The diagonal
seed Ptilde_m^m is formed in log space and the upward three-term
recurrence carries an explicit scale exponent, so high-(l, m) values
evaluate near the poles without intermediate under- or overflow.
"""

from __future__ import annotations

import cmath
import math

_LN_4PI = math.log(4.0 * math.pi)
_LN2 = math.log(2.0)
_LN10 = math.log(10.0)

# Mantissas in the Legendre recurrence are renormalized past this magnitude.
_RESCALE_THRESHOLD = 1e140


def log_gamma(x: float) -> float:
    """Natural logarithm of Gamma(x) for real x > 0.

    Raises
    ------
    ValueError
        If x is not finite or not strictly positive.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"log_gamma requires finite x > 0, got {x!r}")
    return math.lgamma(x)


def kummer_truncated(n_prime: int, c: float, x: float) -> float:
    """Confluent hypergeometric F(-n_prime, c, x) for n_prime in {0, 1}.

    These are the only orders the circular-state radial polynomials use:
    F(0, c, x) = 1 and F(-1, c, x) = 1 - x/c.
    """
    if n_prime not in (0, 1):
        raise ValueError(
            f"only polynomial orders n_prime in {{0, 1}} are supported, got {n_prime!r}"
        )
    c = float(c)
    x = float(x)
    if not math.isfinite(c) or c <= 0.0:
        raise ValueError(f"kummer_truncated requires finite c > 0, got {c!r}")
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"kummer_truncated requires finite x >= 0, got {x!r}")
    if n_prime == 0:
        return 1.0
    return 1.0 - x / c


def legendre_norm(l: int, m: int, theta: float) -> float:
    """Orthonormalized associated Legendre function Ptilde_l^m(cos theta).

    Includes the spherical-harmonic normalization and the Condon-Shortley
    (-1)^m, so sph_harm(l, m, theta, phi) == legendre_norm(l, m, theta)
    * exp(i m phi) for m >= 0.  Only m >= 0 is accepted here.

    The value is built from a log-space diagonal seed

        ln |Ptilde_m^m| = (1/2) [ ln(2m+1) - ln(4 pi)
                                  + lgamma(2m+1) - 2m ln 2 - 2 lgamma(m+1) ]
                          + m ln sin(theta)

    followed by the standard upward recurrence in l with normalized
    coefficients; the running scale exponent keeps mantissas bounded.
    """
    if l < 0 or m < 0 or m > l:
        raise ValueError(f"require 0 <= m <= l, got l={l!r}, m={m!r}")
    x = math.cos(theta)
    s = math.sqrt(max(0.0, 1.0 - x * x))

    if m == 0:
        sign = 1.0
        log_seed = -0.5 * _LN_4PI
    else:
        if s == 0.0:
            return 0.0
        sign = -1.0 if (m & 1) else 1.0
        log_seed = 0.5 * (
            math.log(2.0 * m + 1.0)
            - _LN_4PI
            + math.lgamma(2.0 * m + 1.0)
            - 2.0 * m * _LN2
            - 2.0 * math.lgamma(m + 1.0)
        ) + m * math.log(s)

    p_prev = 0.0
    p = 1.0
    scale = log_seed
    for ll in range(m + 1, l + 1):
        a = math.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
        b = math.sqrt(((ll - 1.0) ** 2 - m * m) / (4.0 * (ll - 1.0) ** 2 - 1.0))
        p, p_prev = a * (x * p - b * p_prev), p
        if abs(p) > _RESCALE_THRESHOLD:
            p *= 1e-140
            p_prev *= 1e-140
            scale += 140.0 * _LN10
    return sign * p * math.exp(scale)


def sph_harm(l: int, m: int, theta: float, phi: float) -> complex:
    """Spherical harmonic Y_{l,m}(theta, phi), Condon-Shortley phase.

    Stable for l up to a few hundred at any angle; values that are truly
    subnormal (far under the seed scale near the poles) flush to zero.
    """
    if l < 0:
        raise ValueError(f"require l >= 0, got l={l!r}")
    if abs(m) > l:
        raise ValueError(f"require |m| <= l, got l={l!r}, m={m!r}")
    mm = abs(m)
    p = legendre_norm(l, mm, theta)
    y = p * cmath.exp(1j * mm * phi)
    if m < 0:
        y = y.conjugate()
        if mm & 1:
            y = -y
    return y
