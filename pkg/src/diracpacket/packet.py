"""Circular wave packets over the two fine-structure partners.

A packet is a Gaussian superposition over shells n in a window, each shell
contributing its circular orbital l = n - 1.  The spin content at t = 0 is
set by the amplitude pair (a, b) with a^2 + b^2 = 1: a multiplies the
stretched state |l, m_s = +1/2> channel and b the |l, m_s = -1/2> channel,
which decomposes into both partners,

    |l>|down> = (1 / (2l+1)) |j+> + sqrt(2l (2l+1)) / (2l+1) |j->.

Per window orbital l the four spinor components of the packet are (with
x-polarized default a = b = 1/sqrt(2), w_l the shell weight, and
e(+/-) = exp(-i E(+/-) t)):

    c1 = i w [ g+ (a Y_{l,l} + b s Y_{l,l-1}) e+  -  b g- s Y_{l,l-1} e- ]
    c2 = i w b Y_{l,l} [ g+ / (2l+1) e+  +  g- 2l/(2l+1) e- ]
    c3 = w [ f+ (a Y_{l+1,l} / sqrt(2l+3)
                 + b sqrt(2/((2l+1)(2l+3))) Y_{l+1,l-1}) e+
             - b f- sqrt(2l/(2l+1)) Y_{l-1,l-1} e- ]
    c4 = -w f+ [ a sqrt((2l+2)/(2l+3)) Y_{l+1,l+1}
                 + b Y_{l+1,l} / sqrt(2l+3) ] e+

with s = sqrt(2l)/(2l+1).  All observables reduce to sums over l of the
five same-l radial integrals (OverlapSet) plus the one cross-shell
small-component integral F'_l = <f+(l)|f-(l+2)> that couples angular
labels (l+1, l) two shells apart and produces the small corrections
delta sigma_x, delta sigma_y at frequencies omega_tilde_l =
E+(l) - E-(l+2).

Everything time-dependent is evaluated from immutable precomputed tables,
so one autocorrelation or spin sample costs O(window size) and vectorizes
over time arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .dirac_coulomb import (
    Branch,
    CircularState,
    OverlapSet,
    SupercriticalChargeError,
    fine_splitting,
    make_circular_state,
    overlap_closed_form,
    overlap_quadrature,
    overlap_set,
)

_SQRT_HALF = math.sqrt(0.5)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class PacketSpec:
    """Defining parameters of one circular packet.

    window defaults to [max(2, N - ceil(5 sigma_g)), N + ceil(5 sigma_g)],
    wide enough that the clipped Gaussian tails carry < 1e-10 of the
    weight.  The lower clamp at 2 keeps every shell's j_minus partner in
    existence (l = n - 1 >= 1).
    """

    Z: int
    N: int
    sigma_g: float = 2.0
    a: float = _SQRT_HALF
    b: float = _SQRT_HALF
    window: tuple[int, int] | None = None
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self) -> None:
        if not isinstance(self.Z, (int, np.integer)) or self.Z < 1:
            raise ValueError(f"require integer Z >= 1, got {self.Z!r}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ValueError(f"require integer centroid shell N >= 2, got {self.N!r}")
        if not (math.isfinite(self.sigma_g) and self.sigma_g > 0.0):
            raise ValueError(f"require sigma_g > 0, got {self.sigma_g!r}")
        norm = self.a * self.a + self.b * self.b
        if abs(norm - 1.0) > 1e-14:
            raise ValueError(
                f"spin amplitudes must satisfy a^2 + b^2 = 1, got {norm!r}"
            )
        if self.window is None:
            half = math.ceil(5.0 * self.sigma_g)
            object.__setattr__(
                self, "window", (max(2, self.N - half), self.N + half)
            )
        n_min, n_max = self.window
        if n_min > n_max:
            raise ValueError(f"empty shell window {self.window!r}")
        if n_min < 2:
            raise ValueError(
                f"window must start at n >= 2 (j_minus partner needs l >= 1), "
                f"got {self.window!r}"
            )
        if not (n_min <= self.N <= n_max):
            raise ValueError(
                f"window {self.window!r} does not contain the centroid N = {self.N}"
            )
        xi = self.Z * self.constants.alpha
        if xi >= n_min - 1:
            raise ValueError(
                f"window shell n = {n_min} is supercritical for Z = {self.Z}: "
                f"Z*alpha = {xi:.6g} >= |kappa| = {n_min - 1}"
            )


@dataclass(frozen=True)
class Weights:
    """Gaussian shell weights over the window, normalized to sum(w^2) = 1."""

    n: np.ndarray
    w: np.ndarray

    def as_dict(self) -> dict[int, float]:
        return {int(k): float(v) for k, v in zip(self.n, self.w)}


def build_weights(spec: PacketSpec) -> Weights:
    """Weights w_n with w_n^2 proportional to exp(-(n - N)^2 / (2 sigma_g^2))."""
    n_min, n_max = spec.window
    n = np.arange(n_min, n_max + 1)
    w = np.exp(-((n - spec.N) ** 2) / (4.0 * spec.sigma_g**2))
    w = w / math.sqrt(float(np.dot(w, w)))
    return Weights(n=_freeze(n), w=_freeze(w))


@dataclass(frozen=True)
class Ket:
    """One stationary-state term of the packet expansion.

    coef carries the shell weight, spin amplitude, and component phase
    factors, but not the spherical harmonic itself; l_ang and m_ang label
    the harmonic Y_{l_ang, m_ang} and radial_part selects g or f of state.
    """

    component: int
    l_ang: int
    m_ang: int
    coef: complex
    state: CircularState
    radial_part: str
    energy: float


@dataclass(frozen=True)
class PacketTables:
    """Immutable precomputed coefficient tables for one packet.

    Per-l arrays run over the window orbitals l = n - 1.  All observable
    coefficient arrays already include the w_l^2 weighting, so evaluating
    an observable is a dot product against phase factors.  Cross arrays
    (k_coef, omega_tilde) run over the orbitals with l + 2 still inside
    the window.
    """

    spec: PacketSpec
    weights: Weights
    l_values: np.ndarray
    e_plus: np.ndarray
    e_minus: np.ndarray
    omega: np.ndarray
    g_plus: np.ndarray
    g_minus: np.ndarray
    g_pm: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray
    f_prime: np.ndarray
    omega_tilde: np.ndarray
    k_coef: np.ndarray
    acf_plus: np.ndarray
    acf_minus: np.ndarray
    norm1_const: np.ndarray
    norm1_cos: np.ndarray
    norm2_const: np.ndarray
    norm2_cos: np.ndarray
    norm3: np.ndarray
    norm4: np.ndarray
    sx_const: np.ndarray
    sx_cos: np.ndarray
    sy_sin: np.ndarray
    sz_const: np.ndarray
    sz_cos: np.ndarray
    states_plus: tuple[CircularState, ...]
    states_minus: tuple[CircularState, ...]
    kets: tuple[Ket, ...] = field(repr=False)

    def overlap_at(self, l: int) -> OverlapSet:
        """The five same-l radial integrals at window orbital l."""
        idx = int(np.searchsorted(self.l_values, l))
        if idx >= len(self.l_values) or self.l_values[idx] != l:
            raise ValueError(f"orbital l = {l} is not in the packet window")
        return OverlapSet(
            g_plus=float(self.g_plus[idx]),
            g_minus=float(self.g_minus[idx]),
            g_pm=float(self.g_pm[idx]),
            f_plus=float(self.f_plus[idx]),
            f_minus=float(self.f_minus[idx]),
        )


def _build_kets(
    spec: PacketSpec,
    weights: Weights,
    states_plus: Iterable[CircularState],
    states_minus: Iterable[CircularState],
) -> tuple[Ket, ...]:
    a, b = spec.a, spec.b
    kets: list[Ket] = []
    for w, sp, sm in zip(weights.w, states_plus, states_minus):
        l = sp.qn.l
        w = float(w)
        two_l = 2.0 * l
        s = math.sqrt(two_l) / (two_l + 1.0)
        ep, em = sp.energy, sm.energy
        kets += [
            Ket(1, l, l, 1j * w * a, sp, "g", ep),
            Ket(1, l, l - 1, 1j * w * b * s, sp, "g", ep),
            Ket(1, l, l - 1, -1j * w * b * s, sm, "g", em),
            Ket(2, l, l, 1j * w * b / (two_l + 1.0), sp, "g", ep),
            Ket(2, l, l, 1j * w * b * two_l / (two_l + 1.0), sm, "g", em),
            Ket(3, l + 1, l, w * a / math.sqrt(two_l + 3.0), sp, "f", ep),
            Ket(
                3,
                l + 1,
                l - 1,
                w * b * math.sqrt(2.0 / ((two_l + 1.0) * (two_l + 3.0))),
                sp,
                "f",
                ep,
            ),
            Ket(
                3,
                l - 1,
                l - 1,
                -w * b * math.sqrt(two_l / (two_l + 1.0)),
                sm,
                "f",
                em,
            ),
            Ket(
                4,
                l + 1,
                l + 1,
                -w * a * math.sqrt((two_l + 2.0) / (two_l + 3.0)),
                sp,
                "f",
                ep,
            ),
            Ket(4, l + 1, l, -w * b / math.sqrt(two_l + 3.0), sp, "f", ep),
        ]
    return tuple(kets)


def build_tables(
    spec: PacketSpec,
    nonrelativistic_radial: bool = False,
) -> PacketTables:
    """Precompute every per-l coefficient a packet observable needs.

    With nonrelativistic_radial=True the radial integrals are replaced by
    their limit values (all large-component overlaps 1, all
    small-component integrals 0) while energies keep their exact values;
    comparing observables against this variant isolates the genuinely
    relativistic radial corrections.
    """
    weights = build_weights(spec)
    n_values = weights.n
    a, b = spec.a, spec.b

    states_plus = tuple(
        make_circular_state(spec.Z, int(n), Branch.J_PLUS, spec.constants)
        for n in n_values
    )
    states_minus = tuple(
        make_circular_state(spec.Z, int(n), Branch.J_MINUS, spec.constants)
        for n in n_values
    )

    count = len(n_values)
    l_values = n_values - 1
    e_plus = np.array([s.energy for s in states_plus])
    e_minus = np.array([s.energy for s in states_minus])
    omega = np.array(
        [fine_splitting(spec.Z, int(n), spec.constants) for n in n_values]
    )

    if nonrelativistic_radial:
        ones = np.ones(count)
        zeros = np.zeros(count)
        g_plus, g_minus, g_pm = ones, ones.copy(), ones.copy()
        f_plus, f_minus = zeros, zeros.copy()
    else:
        sets = [overlap_set(sp, sm) for sp, sm in zip(states_plus, states_minus)]
        g_plus = np.array([o.g_plus for o in sets])
        g_minus = np.array([o.g_minus for o in sets])
        g_pm = np.array([o.g_pm for o in sets])
        f_plus = np.array([o.f_plus for o in sets])
        f_minus = np.array([o.f_minus for o in sets])

    # Cross-shell small-component overlaps: f+(l) with f-(l + 2).
    n_cross = max(0, count - 2)
    f_prime = np.zeros(n_cross)
    omega_tilde = np.zeros(n_cross)
    k_coef = np.zeros(n_cross)
    w = weights.w
    for i in range(n_cross):
        l = float(l_values[i])
        if not nonrelativistic_radial:
            f_prime[i] = overlap_closed_form(
                states_plus[i], states_minus[i + 2], "ff"
            )
        omega_tilde[i] = e_plus[i] - e_minus[i + 2]
        k_coef[i] = (
            2.0
            * a
            * b
            * w[i]
            * w[i + 2]
            * f_prime[i]
            * math.sqrt(
                (2.0 * l + 2.0)
                * (2.0 * l + 4.0)
                / ((2.0 * l + 3.0) * (2.0 * l + 5.0))
            )
        )

    lf = l_values.astype(float)
    l1 = 2.0 * lf + 1.0
    l3 = 2.0 * lf + 3.0
    s2 = 2.0 * lf / (l1 * l1)
    w2 = w * w
    a2, b2, ab2 = a * a, b * b, 2.0 * a * b

    # Same-component equal-label autocorrelation coefficients, by phase.
    c1_p = (a2 + b2 * s2) * g_plus - b2 * s2 * g_pm
    c1_m = b2 * s2 * g_minus - b2 * s2 * g_pm
    c2_p = b2 / (l1 * l1) * g_plus + b2 * s2 * g_pm
    c2_m = b2 * (2.0 * lf / l1) ** 2 * g_minus + b2 * s2 * g_pm
    c3_p = (a2 / l3 + 2.0 * b2 / (l1 * l3)) * f_plus
    c3_m = b2 * (2.0 * lf / l1) * f_minus
    c4_p = (a2 * (2.0 * lf + 2.0) / l3 + b2 / l3) * f_plus

    acf_plus = w2 * (c1_p + c2_p + c3_p + c4_p)
    acf_minus = w2 * (c1_m + c2_m + c3_m)

    # Equal-time component norms: <ci|ci>(t) = sum(const + cos_coef cos(omega t)).
    norm1_const = w2 * ((a2 + b2 * s2) * g_plus + b2 * s2 * g_minus)
    norm1_cos = -2.0 * w2 * b2 * s2 * g_pm
    norm2_const = w2 * b2 * (g_plus + (2.0 * lf) ** 2 * g_minus) / (l1 * l1)
    norm2_cos = 2.0 * w2 * b2 * s2 * g_pm
    norm3 = w2 * ((a2 / l3 + 2.0 * b2 / (l1 * l3)) * f_plus + b2 * (2.0 * lf / l1) * f_minus)
    norm4 = w2 * ((a2 * (2.0 * lf + 2.0) + b2) / l3 * f_plus)

    # Spin expectation coefficients (delta corrections live in k_coef).
    sx_const = w2 * ab2 * (g_plus / l1 - f_plus / l3)
    sx_cos = w2 * ab2 * (2.0 * lf / l1) * g_pm
    sy_sin = sx_cos.copy()
    sz_const = w2 * (
        a2 * g_plus
        + b2 * (2.0 * lf - 1.0) / (l1 * l1) * (g_plus - 2.0 * lf * g_minus)
        + b2 * (2.0 * lf / l1) * f_minus
        - (a2 * l1 / l3 + b2 * (2.0 * lf - 1.0) / (l1 * l3)) * f_minus
    )
    sz_cos = -w2 * b2 * (8.0 * lf / (l1 * l1)) * g_pm

    kets = _build_kets(spec, weights, states_plus, states_minus)

    return PacketTables(
        spec=spec,
        weights=weights,
        l_values=_freeze(l_values),
        e_plus=_freeze(e_plus),
        e_minus=_freeze(e_minus),
        omega=_freeze(omega),
        g_plus=_freeze(g_plus),
        g_minus=_freeze(g_minus),
        g_pm=_freeze(g_pm),
        f_plus=_freeze(f_plus),
        f_minus=_freeze(f_minus),
        f_prime=_freeze(f_prime),
        omega_tilde=_freeze(omega_tilde),
        k_coef=_freeze(k_coef),
        acf_plus=_freeze(acf_plus),
        acf_minus=_freeze(acf_minus),
        norm1_const=_freeze(norm1_const),
        norm1_cos=_freeze(norm1_cos),
        norm2_const=_freeze(norm2_const),
        norm2_cos=_freeze(norm2_cos),
        norm3=_freeze(norm3),
        norm4=_freeze(norm4),
        sx_const=_freeze(sx_const),
        sx_cos=_freeze(sx_cos),
        sy_sin=_freeze(sy_sin),
        sz_const=_freeze(sz_const),
        sz_cos=_freeze(sz_cos),
        states_plus=states_plus,
        states_minus=states_minus,
        kets=kets,
    )


def _as_time_array(t):
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("times must be finite")
    return arr


def autocorrelation(tables: PacketTables, t):
    """Autocorrelation A(t) = <Psi(0)|Psi(t)>; complex, A(0) = 1, |A| <= 1.

    Accepts a scalar time or an ndarray of times (natural units) and
    vectorizes over the window in one pass.
    """
    arr = _as_time_array(t)
    flat = np.atleast_1d(arr)
    out = np.exp(np.multiply.outer(flat, -1j * tables.e_plus)) @ tables.acf_plus
    out += np.exp(np.multiply.outer(flat, -1j * tables.e_minus)) @ tables.acf_minus
    if arr.ndim == 0:
        return complex(out[0])
    return out.reshape(arr.shape)


def autocorrelation_oracle(tables: PacketTables, t, abs_tol: float = 1e-13):
    """Brute-force A(t) from the ket expansion and radial quadrature.

    Walks every same-component ket pair, keeps the pairs whose angular
    labels coincide (orthonormality kills everything else), and evaluates
    each radial overlap by adaptive quadrature instead of the closed form.
    Shares no overlap code path with :func:`autocorrelation`, so agreement
    binds the coefficient tables, the closed-form integrals, and the
    phase assignments at once.  Meant for small windows.
    """
    arr = _as_time_array(t)
    flat = np.atleast_1d(arr)

    cache: dict[tuple, float] = {}

    def radial(ka: Ket, kb: Ket) -> float:
        if ka.radial_part != kb.radial_part:
            raise ValueError("mixed g/f radial overlap should never arise")
        qa, qb = ka.state.qn, kb.state.qn
        key_a = (qa.kappa, qa.n_prime, ka.radial_part)
        key_b = (qb.kappa, qb.n_prime, kb.radial_part)
        key = (key_a, key_b) if key_a <= key_b else (key_b, key_a)
        if key not in cache:
            cache[key] = overlap_quadrature(
                ka.state, kb.state, ka.radial_part * 2, abs_tol=abs_tol
            )
        return cache[key]

    out = np.zeros(flat.shape, dtype=complex)
    kets = tables.kets
    for ia, ka in enumerate(kets):
        for kb in kets:
            if (
                ka.component != kb.component
                or ka.l_ang != kb.l_ang
                or ka.m_ang != kb.m_ang
            ):
                continue
            amp = np.conj(ka.coef) * kb.coef * radial(ka, kb)
            out += amp * np.exp(-1j * kb.energy * flat)
    if arr.ndim == 0:
        return complex(out[0])
    return out.reshape(arr.shape)


def component_norms(tables: PacketTables, t):
    """Equal-time norms (<c1|c1>, <c2|c2>, <c3|c3>, <c4|c4>) at time t.

    The small components are stationary; the two large components trade
    population at the per-shell splitting frequencies.  The four always
    sum to 1 (unitarity).
    """
    arr = _as_time_array(t)
    flat = np.atleast_1d(arr)
    ph = np.cos(np.multiply.outer(flat, tables.omega))
    n1 = float(np.sum(tables.norm1_const)) + ph @ tables.norm1_cos
    n2 = float(np.sum(tables.norm2_const)) + ph @ tables.norm2_cos
    n3 = np.full(flat.shape, float(np.sum(tables.norm3)))
    n4 = np.full(flat.shape, float(np.sum(tables.norm4)))
    if arr.ndim == 0:
        return float(n1[0]), float(n2[0]), float(n3[0]), float(n4[0])
    shape = arr.shape
    return (n1.reshape(shape), n2.reshape(shape), n3.reshape(shape), n4.reshape(shape))


def spin_expect(tables: PacketTables, t, include_delta: bool = True):
    """Expectation values (<sigma_x>, <sigma_y>, <sigma_z>) at time t.

    include_delta toggles the cross-shell small-component corrections
    (the F' terms); they are bounded at the percent level and oscillate
    near the optical frequencies E+(l) - E-(l+2).
    """
    arr = _as_time_array(t)
    flat = np.atleast_1d(arr)
    ph_cos = np.cos(np.multiply.outer(flat, tables.omega))
    sx = float(np.sum(tables.sx_const)) + ph_cos @ tables.sx_cos
    sy = np.sin(np.multiply.outer(flat, tables.omega)) @ tables.sy_sin
    sz = float(np.sum(tables.sz_const)) + ph_cos @ tables.sz_cos
    if include_delta and tables.k_coef.size:
        phase = np.multiply.outer(flat, tables.omega_tilde)
        sx = sx + np.cos(phase) @ tables.k_coef
        sy = sy + np.sin(phase) @ tables.k_coef
    if arr.ndim == 0:
        return float(sx[0]), float(sy[0]), float(sz[0])
    shape = arr.shape
    return sx.reshape(shape), sy.reshape(shape), sz.reshape(shape)


@dataclass(frozen=True)
class SmallNorm:
    """Time-independent population of the two small spinor components."""

    c3_norm: float
    c4_norm: float
    total: float


def small_norm(tables: PacketTables) -> SmallNorm:
    """Stationary small-component norms; total < (1 - E)/2-ish, << 1."""
    c3 = float(np.sum(tables.norm3))
    c4 = float(np.sum(tables.norm4))
    return SmallNorm(c3_norm=c3, c4_norm=c4, total=c3 + c4)


class _Jet:
    """Truncated Taylor series in (n - n0): exact analytic derivatives.

    Supports the four operations the energy branches need (+, -, *, /,
    sqrt); coefficient k equals d^k E / dn^k / k!.  Composition of exact
    series arithmetic carries no truncation error, unlike finite
    differences.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: np.ndarray):
        self.c = coeffs

    @classmethod
    def variable(cls, value: float, order: int) -> "_Jet":
        c = np.zeros(order + 1)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def const(cls, value: float, order: int) -> "_Jet":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    def __add__(self, other):
        if isinstance(other, _Jet):
            return _Jet(self.c + other.c)
        c = self.c.copy()
        c[0] += other
        return _Jet(c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _Jet):
            return _Jet(self.c - other.c)
        c = self.c.copy()
        c[0] -= other
        return _Jet(c)

    def __rsub__(self, other):
        c = -self.c
        c[0] += other
        return _Jet(c)

    def __mul__(self, other):
        if not isinstance(other, _Jet):
            return _Jet(self.c * other)
        n = len(self.c)
        out = np.zeros(n)
        for k in range(n):
            out[k] = np.dot(self.c[: k + 1], other.c[k::-1])
        return _Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, _Jet):
            return _Jet(self.c / other)
        n = len(self.c)
        out = np.zeros(n)
        out[0] = self.c[0] / other.c[0]
        for k in range(1, n):
            out[k] = (self.c[k] - np.dot(other.c[1 : k + 1], out[k - 1 :: -1])) / other.c[0]
        return _Jet(out)

    def __rtruediv__(self, other):
        return _Jet.const(other, len(self.c) - 1) / self

    def sqrt(self) -> "_Jet":
        n = len(self.c)
        out = np.zeros(n)
        out[0] = math.sqrt(self.c[0])
        for k in range(1, n):
            acc = np.dot(out[1:k], out[k - 1 : 0 : -1]) if k >= 2 else 0.0
            out[k] = (self.c[k] - acc) / (2.0 * out[0])
        return _Jet(out)


def _energy_jet_plus(xi: float, n0: float, order: int) -> _Jet:
    n = _Jet.variable(n0, order)
    return (1.0 - (xi * xi) / (n * n)).sqrt()


def _energy_jet_minus(xi: float, n0: float, order: int) -> _Jet:
    n = _Jet.variable(n0, order)
    u = n - 1.0
    d = (u * u - xi * xi).sqrt() + 1.0
    return d / (d * d + xi * xi).sqrt()


@dataclass(frozen=True)
class TimeScales:
    """Hierarchy of packet time scales at (Z, N), natural units.

    t[k] = 2 pi k! / |d^k E / dn^k| evaluated at n = N on the chosen
    energy branch; t_ls = 2 pi / (fine splitting at N); t_cl is the
    classical Kepler period 2 pi N^3 / xi^2 used as the "kepler" display
    unit.
    """

    Z: int
    N: int
    t: dict[int, float]
    t_ls: float
    t_cl: float
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def to_kepler(self, t_natural: float) -> float:
        return t_natural / self.t_cl

    def to_tls(self, t_natural: float) -> float:
        return t_natural / self.t_ls

    def to_seconds(self, t_natural: float) -> float:
        return t_natural * self.constants.compton_time_seconds

    def unit_scale(self, unit: str) -> float:
        """Natural-unit duration of one step of the named display unit."""
        if unit == "natural":
            return 1.0
        if unit == "kepler":
            return self.t_cl
        if unit == "tls":
            return self.t_ls
        if unit == "seconds":
            return 1.0 / self.constants.compton_time_seconds
        raise ValueError(
            f"unknown time unit {unit!r}; expected natural, kepler, tls, or seconds"
        )


def timescales(
    Z: int,
    N: int,
    k_max: int = 4,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
    branch: str = "j_plus",
) -> TimeScales:
    """Time-scale hierarchy t[1..k_max] plus t_ls and t_cl at shell N.

    Derivatives of the branch energy with respect to the (continuous)
    shell number come from exact Taylor-jet arithmetic.  branch selects
    the stretched-partner energy curve "j_plus" (default) or the
    "averaged" curve (E+ + E-)/2.
    """
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise ValueError(f"require integer N >= 2, got {N!r}")
    if not isinstance(k_max, (int, np.integer)) or not (1 <= k_max <= 6):
        raise ValueError(f"require 1 <= k_max <= 6, got {k_max!r}")
    xi = float(Z) * constants.alpha
    if xi >= N - 1:
        raise SupercriticalChargeError(Z, N - 1, xi)
    if branch == "j_plus":
        jet = _energy_jet_plus(xi, float(N), int(k_max))
    elif branch == "averaged":
        jet = (
            _energy_jet_plus(xi, float(N), int(k_max))
            + _energy_jet_minus(xi, float(N), int(k_max))
        ) * 0.5
    else:
        raise ValueError(f"branch must be 'j_plus' or 'averaged', got {branch!r}")

    t = {}
    for k in range(1, int(k_max) + 1):
        coef = jet.c[k]
        if coef == 0.0:
            raise ValueError(f"degenerate derivative order k = {k} at N = {N}")
        t[k] = 2.0 * math.pi / abs(coef)
    return TimeScales(
        Z=int(Z),
        N=int(N),
        t=t,
        t_ls=2.0 * math.pi / fine_splitting(Z, N, constants),
        t_cl=2.0 * math.pi * float(N) ** 3 / (xi * xi),
        constants=constants,
    )
