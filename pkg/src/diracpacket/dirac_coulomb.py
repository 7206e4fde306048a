"""Exact Dirac-Coulomb bound states on and next to circular orbits.

Scope
-----
Hydrogen-like ions with a point Coulomb charge Z, natural units
m_e = hbar = c = 1 (see :mod:`diracpacket.constants`).  A circular orbital
level l = n - 1 splits into the two fine-structure partners

    j_plus  : j = l + 1/2,  kappa = -(l + 1) = -n,  n' = 0,
    j_minus : j = l - 1/2,  kappa = +l,             n' = 1   (l >= 1),

where n' is the radial quantum number and kappa the usual Dirac angular
eigenvalue.  Both carry analytic radial functions with polynomial part of
degree n' <= 1, which is what makes every overlap integral in this
package a two- or three-term Gamma-function moment.

Radial conventions
------------------
g is the large and f the small radial component, normalized as

    integral (g^2 + f^2) r^2 dr = 1,

with the closed form (x = 2 lambda r, c = 2 gamma + 1, N = xi / lambda,
beta = N - kappa)

    g(r) = +A sqrt(1 + E) x^(gamma-1) e^(-x/2) P_g(x),
    f(r) = -A sqrt(1 - E) x^(gamma-1) e^(-x/2) P_f(x),

    A = (2 lambda)^(3/2) / Gamma(c) * sqrt( Gamma(c + n') / (4 N beta n'!) ),

    n' = 0:  P_g = P_f = beta,
    n' = 1:  P_g = (beta - 1) - (beta / c) x,
             P_f = (beta + 1) - (beta / c) x.

Two exact identities pin this normalization and are used as test oracles:
integral g^2 r^2 dr = (1 + E)/2 and integral f^2 r^2 dr = (1 - E)/2.

The free overall sign of each eigenstate is fixed so that the large
component is positive at large r (for n' = 1 that flips both components,
since the leading polynomial coefficient -beta/c is negative).  With this
phase choice the cross-branch large-component overlap tends to +1 in the
nonrelativistic limit, matching the construction of spin-polarized
circular packets out of the two partners.

All prefactors are stored as (sign, log magnitude) pairs and every
evaluation assembles one exponent before a single exp call, so states up
to n of a few hundred evaluate without intermediate overflow.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .quadrature import integrate_adaptive
from .specfun import log_gamma

_LN4 = math.log(4.0)


class Branch(enum.Enum):
    """Fine-structure partner of a circular orbital level."""

    J_PLUS = "j_plus"
    J_MINUS = "j_minus"


class SupercriticalChargeError(ValueError):
    """Z alpha >= |kappa|: the pointlike-Coulomb bound state does not exist."""

    def __init__(self, Z: int, kappa: int, xi: float):
        super().__init__(
            f"supercritical coupling: Z*alpha = {xi:.9g} >= |kappa| = {abs(kappa)} "
            f"(Z = {Z}, kappa = {kappa})"
        )
        self.Z = Z
        self.kappa = kappa


def kappa_of(l: int, branch: Branch) -> int:
    """Dirac angular eigenvalue of the circular partner at orbital l."""
    if l < 0:
        raise ValueError(f"require l >= 0, got {l!r}")
    if branch is Branch.J_PLUS:
        return -(l + 1)
    if branch is Branch.J_MINUS:
        if l < 1:
            raise ValueError("the j_minus partner needs l >= 1 (j = l - 1/2 > 0)")
        return l
    raise ValueError(f"unknown branch {branch!r}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Complete label of one bound state used in this package."""

    Z: int
    n: int
    l: int
    branch: Branch
    kappa: int
    n_prime: int

    @classmethod
    def circular(cls, Z: int, n: int, branch: Branch) -> "QuantumNumbers":
        if n < 1:
            raise ValueError(f"require n >= 1, got {n!r}")
        l = n - 1
        kappa = kappa_of(l, branch)
        n_prime = 0 if branch is Branch.J_PLUS else 1
        return cls(Z=Z, n=n, l=l, branch=branch, kappa=kappa, n_prime=n_prime)


def _xi(Z: int, constants: PhysicalConstants) -> float:
    if not isinstance(Z, (int, np.integer)) or Z < 1:
        raise ValueError(f"require integer Z >= 1, got {Z!r}")
    return float(Z) * constants.alpha


def _gamma_or_raise(Z: int, kappa: int, xi: float) -> float:
    if not isinstance(kappa, (int, np.integer)) or kappa == 0:
        raise ValueError(f"kappa must be a nonzero integer, got {kappa!r}")
    if xi >= abs(kappa):
        raise SupercriticalChargeError(Z, int(kappa), xi)
    return math.sqrt((float(kappa) - xi) * (float(kappa) + xi))


def bound_energy(
    Z: int,
    n_prime: int,
    kappa: int,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Bound-state energy E in units of m_e c^2 (Sommerfeld formula).

    E = [1 + (xi / (n' + gamma))^2]^(-1/2) with xi = Z alpha and
    gamma = sqrt(kappa^2 - xi^2).  Always in (0, 1) for subcritical xi.
    """
    if n_prime < 0:
        raise ValueError(f"require n_prime >= 0, got {n_prime!r}")
    xi = _xi(Z, constants)
    gamma = _gamma_or_raise(Z, kappa, xi)
    if n_prime == 0 and kappa > 0:
        raise ValueError(
            f"no bound state exists with n_prime = 0 and kappa = {kappa} > 0"
        )
    d = n_prime + gamma
    return d / math.hypot(d, xi)


def binding_energy(
    Z: int,
    n_prime: int,
    kappa: int,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """E - 1 (negative), computed without the 1 - E cancellation.

    Uses E - 1 = -xi^2 / (N (d + N)) with d = n' + gamma, N = hypot(d, xi),
    which stays fully accurate even when the binding is ~xi^2/2n^2 ~ 1e-13.
    """
    if n_prime < 0:
        raise ValueError(f"require n_prime >= 0, got {n_prime!r}")
    xi = _xi(Z, constants)
    gamma = _gamma_or_raise(Z, kappa, xi)
    if n_prime == 0 and kappa > 0:
        raise ValueError(
            f"no bound state exists with n_prime = 0 and kappa = {kappa} > 0"
        )
    d = n_prime + gamma
    big_n = math.hypot(d, xi)
    return -(xi * xi) / (big_n * (d + big_n))


def fine_splitting(
    Z: int,
    N: int,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Exact fine-structure splitting E_plus - E_minus of shell N, cancellation-free.

    Both circular partners of the level n = N are nearly degenerate (the
    splitting is ~xi^4 / (2 N^5), eight orders below E itself at N = 20),
    so the naive difference of two Sommerfeld energies loses about half
    its digits.  Rearranging with E^2 = D^2/(D^2 + xi^2), where D_plus =
    gamma_plus and D_minus = 1 + gamma_minus, and using

        D_plus^2 - D_minus^2 = 2 (N - 1 - gamma_minus)
                             = 2 xi^2 / (N - 1 + gamma_minus)

    gives the fully positive form implemented here:

        dE = 2 xi^4 / [ (N - 1 + gamma_minus)
                        (D_plus^2 + xi^2) (D_minus^2 + xi^2)
                        (E_plus + E_minus) ].
    """
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise ValueError(f"fine splitting needs a shell N >= 2, got {N!r}")
    xi = _xi(Z, constants)
    gamma_plus = _gamma_or_raise(Z, -int(N), xi)
    gamma_minus = _gamma_or_raise(Z, int(N) - 1, xi)
    d_plus = gamma_plus
    d_minus = 1.0 + gamma_minus
    e_plus = d_plus / math.hypot(d_plus, xi)
    e_minus = d_minus / math.hypot(d_minus, xi)
    xi2 = xi * xi
    return (
        2.0
        * xi2
        * xi2
        / (
            (N - 1.0 + gamma_minus)
            * (d_plus * d_plus + xi2)
            * (d_minus * d_minus + xi2)
            * (e_plus + e_minus)
        )
    )


def fine_splitting_leading_order(
    Z: int,
    N: int,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Leading-order splitting xi^4 / (2 N^5).

    Note the scaling is quartic in xi = Z alpha (a fine-structure effect),
    not quadratic; the exact value from :func:`fine_splitting` approaches
    this from above as N grows.
    """
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise ValueError(f"fine splitting needs a shell N >= 2, got {N!r}")
    xi = _xi(Z, constants)
    return xi**4 / (2.0 * float(N) ** 5)


@dataclass(frozen=True)
class CircularState:
    """One normalized Dirac-Coulomb bound state with polynomial degree <= 1.

    Radial data is stored in assembled-log form: value = sign * exp(log_pref
    + (gamma - 1) ln x - x/2) * (poly[0] + poly[1] x) with x = 2 lambda r.
    Instances are immutable; construct through :func:`make_circular_state`
    (circular labels) or :func:`state_from_kappa` (general kappa, n' <= 1).
    """

    qn: QuantumNumbers
    xi: float
    gamma: float
    energy: float
    lam: float
    big_n: float
    g_sign: float
    g_log_prefactor: float
    g_poly: tuple[float, float]
    f_sign: float
    f_log_prefactor: float
    f_poly: tuple[float, float]


def state_from_kappa(
    Z: int,
    kappa: int,
    n_prime: int,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> CircularState:
    """Build a normalized bound state for any kappa with n_prime in {0, 1}.

    The circular family only ever uses (kappa = -n, n' = 0) and
    (kappa = l, n' = 1), but the constructor is deliberately general: same
    kappa with n' differing by one yields orthogonal states, which makes a
    sharp independent check of the radial machinery.
    """
    if n_prime not in (0, 1):
        raise ValueError(f"require n_prime in {{0, 1}}, got {n_prime!r}")
    xi = _xi(Z, constants)
    gamma = _gamma_or_raise(Z, kappa, xi)
    kappa = int(kappa)
    if n_prime == 0 and kappa > 0:
        raise ValueError(
            f"no bound state exists with n_prime = 0 and kappa = {kappa} > 0"
        )

    d = n_prime + gamma
    big_n = math.hypot(d, xi)  # equals xi / lambda
    energy = d / big_n
    lam = xi / big_n
    beta = big_n - kappa
    c = 2.0 * gamma + 1.0

    log_a = (
        1.5 * math.log(2.0 * lam)
        - log_gamma(c)
        + 0.5 * (log_gamma(c + n_prime) - _LN4 - math.log(big_n) - math.log(beta))
    )
    one_minus_e = lam * lam / (1.0 + energy)
    g_log = log_a + 0.5 * math.log1p(energy)
    f_log = log_a + 0.5 * math.log(one_minus_e)

    if n_prime == 0:
        g_poly = (beta, 0.0)
        f_poly = (beta, 0.0)
        g_sign, f_sign = 1.0, -1.0
    else:
        c1 = -beta / c
        if kappa > 0:
            # beta - 1 is a near-cancellation of order xi^2; use the exact
            # rewrite (N^2 - (1 + kappa)^2) / (N + 1 + kappa) with
            # N^2 - (1 + kappa)^2 = 2 (gamma - kappa) = -2 xi^2 / (gamma + kappa).
            c0_g = -2.0 * xi * xi / ((gamma + kappa) * (big_n + 1.0 + kappa))
        else:
            c0_g = beta - 1.0
        g_poly = (c0_g, c1)
        f_poly = (beta + 1.0, c1)
        # Phase convention: large component positive at large r.  The
        # leading coefficient -beta/c is negative, so flip the whole state.
        g_sign, f_sign = -1.0, 1.0

    if n_prime == 0:
        n = abs(kappa)
        l = n - 1
        branch = Branch.J_PLUS
    else:
        if kappa > 0:
            n = kappa + 1
            l = kappa
            branch = Branch.J_MINUS
        else:
            # j = l + 1/2 tower, one radial node; not circular but valid.
            n = abs(kappa) + 1
            l = abs(kappa) - 1
            branch = Branch.J_PLUS
    qn = QuantumNumbers(Z=int(Z), n=n, l=l, branch=branch, kappa=kappa, n_prime=n_prime)

    return CircularState(
        qn=qn,
        xi=xi,
        gamma=gamma,
        energy=energy,
        lam=lam,
        big_n=big_n,
        g_sign=g_sign,
        g_log_prefactor=g_log,
        g_poly=g_poly,
        f_sign=f_sign,
        f_log_prefactor=f_log,
        f_poly=f_poly,
    )


def make_circular_state(
    Z: int,
    n: int,
    branch: Branch,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> CircularState:
    """Normalized circular bound state at shell n: l = n - 1, given partner."""
    qn = QuantumNumbers.circular(Z, n, branch)
    return state_from_kappa(Z, qn.kappa, qn.n_prime, constants)


def eval_radial(state: CircularState, r):
    """Evaluate (g, f) at radius r (scalar or ndarray, Compton lengths, r > 0).

    Returns a pair of floats for scalar input, a pair of ndarrays otherwise.
    The full exponent (prefactor log + power law + decay) is assembled
    before a single exp, so huge radii underflow gracefully to zero and
    small radii follow the true r^(gamma-1) behavior.
    """
    arr = np.asarray(r, dtype=float)
    if arr.size == 0:
        raise ValueError("r must contain at least one radius")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("all radii must be finite and > 0")
    x = 2.0 * state.lam * arr
    log_x = np.log(x)
    shape = (state.gamma - 1.0) * log_x - 0.5 * x
    g = state.g_sign * np.exp(state.g_log_prefactor + shape) * (
        state.g_poly[0] + state.g_poly[1] * x
    )
    f = state.f_sign * np.exp(state.f_log_prefactor + shape) * (
        state.f_poly[0] + state.f_poly[1] * x
    )
    if np.ndim(r) == 0:
        return float(g), float(f)
    return g, f


def _part_data(state: CircularState, letter: str):
    if letter == "g":
        return state.g_sign, state.g_log_prefactor, state.g_poly
    if letter == "f":
        return state.f_sign, state.f_log_prefactor, state.f_poly
    raise ValueError(f"radial part must be 'g' or 'f', got {letter!r}")


def _check_part(part: str) -> tuple[str, str]:
    if part not in ("gg", "ff"):
        raise ValueError(f"part must be 'gg' or 'ff', got {part!r}")
    return part[0], part[1]


def overlap_closed_form(a: CircularState, b: CircularState, part: str) -> float:
    """Radial overlap integral(part_a(r) part_b(r) r^2 dr) in closed form.

    part is 'gg' (large with large) or 'ff' (small with small).  Because
    each polynomial has degree <= 1, the integrand is a sum of three pure
    Gamma moments

        integral r^(G + k) e^(-Lam r) dr = Gamma(G + k + 1) / Lam^(G+k+1),

    G = gamma_a + gamma_b, Lam = lambda_a + lambda_b, k in {0, 1, 2};
    everything is assembled in log space with one final exp.
    """
    if a.qn.Z != b.qn.Z:
        raise ValueError(
            f"overlap requires matching nuclear charge, got Z = {a.qn.Z} and {b.qn.Z}"
        )
    la, lb = _check_part(part)
    sign_a, log_a, poly_a = _part_data(a, la)
    sign_b, log_b, poly_b = _part_data(b, lb)

    big_g = a.gamma + b.gamma
    lam_sum = a.lam + b.lam

    # Polynomial product written in powers of r.
    d_a0, d_a1 = poly_a[0], poly_a[1] * 2.0 * a.lam
    d_b0, d_b1 = poly_b[0], poly_b[1] * 2.0 * b.lam
    q0 = d_a0 * d_b0
    q1 = d_a0 * d_b1 + d_a1 * d_b0
    q2 = d_a1 * d_b1

    base = (
        log_a
        + log_b
        + (a.gamma - 1.0) * math.log(2.0 * a.lam)
        + (b.gamma - 1.0) * math.log(2.0 * b.lam)
        + log_gamma(big_g + 1.0)
        - (big_g + 1.0) * math.log(lam_sum)
    )
    bracket = q0 + (big_g + 1.0) / lam_sum * (q1 + q2 * (big_g + 2.0) / lam_sum)
    return sign_a * sign_b * bracket * math.exp(base)


def overlap_quadrature(
    a: CircularState,
    b: CircularState,
    part: str,
    abs_tol: float = 1e-13,
) -> float:
    """Same integral as :func:`overlap_closed_form` by adaptive quadrature.

    The truncation radius covers the Gamma-moment mass up to a relative
    tail below 1e-20 for every subcritical state pair: the integrand decays
    like r^G e^(-Lam r), and [0, (G + 40 + 12 sqrt(G + 1)) / Lam] leaves a
    regularized upper-gamma tail Q(G+1, Lam R) under that level even for
    G of several hundred.
    """
    if a.qn.Z != b.qn.Z:
        raise ValueError(
            f"overlap requires matching nuclear charge, got Z = {a.qn.Z} and {b.qn.Z}"
        )
    la, lb = _check_part(part)
    idx_a = 0 if la == "g" else 1
    idx_b = 0 if lb == "g" else 1

    big_g = a.gamma + b.gamma
    lam_sum = a.lam + b.lam
    r_max = (big_g + 40.0 + 12.0 * math.sqrt(big_g + 1.0)) / lam_sum

    def integrand(r):
        va = eval_radial(a, r)[idx_a]
        vb = eval_radial(b, r)[idx_b]
        return r * r * va * vb

    return integrate_adaptive(integrand, 0.0, r_max, abs_tol=abs_tol)


@dataclass(frozen=True)
class OverlapSet:
    """The five single-l radial integrals entering the packet observables.

    g_plus  = <g+|g+>,  g_minus = <g-|g->,  g_pm = <g+|g->,
    f_plus  = <f+|f+>,  f_minus = <f-|f->,
    all weighted by r^2 dr at the same orbital l.
    """

    g_plus: float
    g_minus: float
    g_pm: float
    f_plus: float
    f_minus: float


def overlap_set(state_plus: CircularState, state_minus: CircularState) -> OverlapSet:
    """Closed-form overlap bundle for the two partners of one orbital l."""
    if state_plus.qn.l != state_minus.qn.l:
        raise ValueError(
            "overlap_set pairs the two partners of one orbital level, got "
            f"l = {state_plus.qn.l} and {state_minus.qn.l}"
        )
    return OverlapSet(
        g_plus=overlap_closed_form(state_plus, state_plus, "gg"),
        g_minus=overlap_closed_form(state_minus, state_minus, "gg"),
        g_pm=overlap_closed_form(state_plus, state_minus, "gg"),
        f_plus=overlap_closed_form(state_plus, state_plus, "ff"),
        f_minus=overlap_closed_form(state_minus, state_minus, "ff"),
    )
