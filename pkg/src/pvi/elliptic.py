"""Numerical evaluation of the doubly periodic layer: wp, half-period values,
the level-2 invariant t(tau), Picard solution points, the four-term derivative
identity, and the degree-3 multiplication check.

Everything is computed from q-series in double precision:

* theta constants with nome q = exp(i*pi*tau) give the three half-period
  values e1, e2, e3 (geometric convergence for Im tau bounded away from 0);
* wp and wp' use the exponential Fourier series in qbar = q^2 after reducing
  the argument to the centered fundamental cell of the lattice Z + tau*Z.

Arguments closer to a lattice point than ``pole_threshold`` raise
:class:`PoleProximityError` instead of returning a huge value, and tau below
``im_tau_floor`` raises :class:`PrecisionError`.  The floor is configuration,
not law: callers that map tau through the group may lower it explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .curves import TRIPLING_F, TRIPLING_G
from .orbits import RationalPair, canonicalize

_PI = math.pi
_TWO_PI_I = 2j * _PI


class EllipticError(ValueError):
    """Base class for evaluation failures in this module."""


class PrecisionError(EllipticError):
    """tau too close to the real axis (or a cusp) for reliable double precision."""


class PoleProximityError(EllipticError):
    """Evaluation point too close to a pole or a vanishing denominator."""


@dataclass(frozen=True)
class EllipticConfig:
    """Immutable evaluation thresholds; safe to share across threads."""

    im_tau_floor: float = 0.1
    pole_threshold: float = 1e-6
    series_tol: float = 1e-16
    max_terms: int = 2000


DEFAULT_CONFIG = EllipticConfig()


@dataclass(frozen=True)
class EllipticInvariants:
    """Half-period values, cubic coefficients, and the level-2 invariant at tau."""

    e1: complex
    e2: complex
    e3: complex
    g2: complex
    g3: complex
    t: complex


@dataclass(frozen=True)
class AlphaTuple:
    """Four parameters (a0, a1, a2, a3) of the symmetric form; exact or numeric."""

    a0: Union[Fraction, complex]
    a1: Union[Fraction, complex]
    a2: Union[Fraction, complex]
    a3: Union[Fraction, complex]

    def __iter__(self):
        return iter((self.a0, self.a1, self.a2, self.a3))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)


def _require_tau(tau: complex, config: EllipticConfig) -> complex:
    tau = complex(tau)
    if not (tau.imag > 0):
        raise EllipticError(f"tau must lie in the upper half-plane, got {tau}")
    if tau.imag < config.im_tau_floor:
        raise PrecisionError(
            f"Im tau = {tau.imag:g} below the precision floor {config.im_tau_floor:g}"
        )
    return tau


def half_periods(tau: complex) -> tuple[complex, complex, complex, complex]:
    """(0, 1/2, tau/2, (1+tau)/2) for the lattice Z + tau*Z."""
    tau = complex(tau)
    return 0j, 0.5 + 0j, tau / 2, (1 + tau) / 2


def theta_constants(tau: complex, config: EllipticConfig = DEFAULT_CONFIG):
    """Theta constants (theta2, theta3, theta4) at nome q = exp(i*pi*tau)."""
    tau = _require_tau(tau, config)
    q = cmath.exp(1j * _PI * tau)
    if q == 0:
        raise PrecisionError(f"nome underflows at tau = {tau}")
    t2 = 1 + 0j  # sum q^{n(n+1)}, factor 2*q^{1/4} applied at the end
    t3 = 1 + 0j
    t4 = 1 + 0j
    qabs = abs(q)
    for n in range(1, config.max_terms):
        sq = q ** (n * n)
        tr = q ** (n * (n + 1))
        t3 += 2 * sq
        t4 += 2 * ((-1) ** n) * sq
        t2 += tr
        if qabs ** (n * n) < config.series_tol:
            break
    else:
        raise PrecisionError("theta series did not converge")
    t2 *= 2 * _root4(q)
    return t2, t3, t4


def _root4(q: complex) -> complex:
    # principal fourth root; q = exp(i pi tau) never crosses the cut for Im tau > 0
    return cmath.exp(cmath.log(q) / 4)


def invariants_at(tau: complex, config: EllipticConfig = DEFAULT_CONFIG) -> EllipticInvariants:
    """Half-period values e_k = wp(omega_k), cubic coefficients, and t(tau).

    e1 + e2 + e3 = 0 by construction; t = (e3 - e1)/(e2 - e1) avoids {0, 1}
    for any tau in the upper half-plane, and a degenerate numerical value
    raises :class:`PrecisionError`.
    """
    t2, t3, t4 = theta_constants(tau, config)
    p2 = _PI * _PI / 3
    e1 = p2 * (t3 ** 4 + t4 ** 4)
    e2 = -p2 * (t2 ** 4 + t3 ** 4)
    e3 = p2 * (t2 ** 4 - t4 ** 4)
    scale = max(abs(e1), abs(e2), abs(e3))
    if min(abs(e1 - e2), abs(e1 - e3), abs(e2 - e3)) < 1e-12 * scale:
        raise PrecisionError(f"half-period values nearly collide at tau = {tau}")
    t = (e3 - e1) / (e2 - e1)
    if min(abs(t), abs(t - 1)) < 1e-12:
        raise PrecisionError(f"t(tau) degenerates at tau = {tau}")
    g2 = 2 * (e1 * e1 + e2 * e2 + e3 * e3)
    g3 = 4 * e1 * e2 * e3
    return EllipticInvariants(e1=e1, e2=e2, e3=e3, g2=g2, g3=g3, t=t)


def _reduce_cell(z: complex, tau: complex) -> complex:
    """Representative of z mod Z + tau*Z with cell coordinates in [-1/2, 1/2)."""
    b = z.imag / tau.imag
    a = z.real - b * tau.real
    a -= math.floor(a + 0.5)
    b -= math.floor(b + 0.5)
    return complex(a + b * tau.real, b * tau.imag)


def lattice_distance(z: complex, tau: complex) -> float:
    """Distance from z to the nearest point of Z + tau*Z."""
    zr = _reduce_cell(complex(z), complex(tau))
    best = abs(zr)
    for m in (-1, 0, 1):
        for n in (-1, 0, 1):
            if m or n:
                best = min(best, abs(zr - (m + n * tau)))
    return best


def _series_point(z: complex, tau: complex, config: EllipticConfig) -> complex:
    zr = _reduce_cell(complex(z), complex(tau))
    if lattice_distance(zr, tau) < config.pole_threshold:
        raise PoleProximityError(
            f"z = {z} within {config.pole_threshold:g} of the period lattice"
        )
    return zr


def wp(z: complex, tau: complex, config: EllipticConfig = DEFAULT_CONFIG) -> complex:
    """Weierstrass wp(z | tau) for the lattice Z + tau*Z."""
    tau = _require_tau(tau, config)
    zr = _series_point(z, tau, config)
    qbar = cmath.exp(_TWO_PI_I * tau)
    u = cmath.exp(_TWO_PI_I * zr)
    s = 1.0 / 12 + u / (1 - u) ** 2
    qn = 1 + 0j
    for _ in range(1, config.max_terms):
        qn *= qbar
        w = qn * u
        v = qn / u
        term = w / (1 - w) ** 2 + v / (1 - v) ** 2 - 2 * qn / (1 - qn) ** 2
        s += term
        if abs(term) < config.series_tol * max(1.0, abs(s)) and abs(qn) < 1e-8:
            break
    else:
        raise PrecisionError(f"wp series did not converge at tau = {tau}")
    return _TWO_PI_I ** 2 * s


def wp_prime(z: complex, tau: complex, config: EllipticConfig = DEFAULT_CONFIG) -> complex:
    """Derivative wp'(z | tau); odd and lattice-periodic."""
    tau = _require_tau(tau, config)
    zr = _series_point(z, tau, config)
    qbar = cmath.exp(_TWO_PI_I * tau)
    u = cmath.exp(_TWO_PI_I * zr)
    s = u * (1 + u) / (1 - u) ** 3
    qn = 1 + 0j
    for _ in range(1, config.max_terms):
        qn *= qbar
        w = qn * u
        v = qn / u
        term = w * (1 + w) / (1 - w) ** 3 - v * (1 + v) / (1 - v) ** 3
        s += term
        if abs(term) < config.series_tol * max(1.0, abs(s)) and abs(qn) < 1e-8:
            break
    else:
        raise PrecisionError(f"wp' series did not converge at tau = {tau}")
    return _TWO_PI_I ** 3 * s


def normalized_w(z: complex, tau: complex, config: EllipticConfig = DEFAULT_CONFIG) -> complex:
    """w(z) = (wp(z) - e1)/(e2 - e1), the normalized elliptic coordinate."""
    inv = invariants_at(tau, config)
    return (wp(z, tau, config) - inv.e1) / (inv.e2 - inv.e1)


PairLike = Union[RationalPair, Sequence]


def _as_pair(v: PairLike) -> RationalPair:
    if isinstance(v, RationalPair):
        return v
    return canonicalize(v)


def picard_eval(
    v: PairLike, tau: complex, config: EllipticConfig = DEFAULT_CONFIG
) -> tuple[complex, complex]:
    """Point (t, y) of the Picard solution labeled by the class (mu, nu).

    Half-integer classes are rejected: p(tau) = mu + nu*tau would sit on a
    half-period, making y constantly one of 0, 1, t.
    """
    pair = _as_pair(v)
    if pair.is_half_integer():
        raise ValueError(
            f"{pair} lies in (Z/2)^2: the corresponding solution is trivial"
        )
    tau = _require_tau(tau, config)
    inv = invariants_at(tau, config)
    p = float(pair.mu) + float(pair.nu) * tau
    y = (wp(p, tau, config) - inv.e1) / (inv.e2 - inv.e1)
    return inv.t, y


def reduction_residual(
    alpha: Union[AlphaTuple, Sequence],
    v: PairLike,
    tau: complex,
    config: EllipticConfig = DEFAULT_CONFIG,
) -> complex:
    """The four-term derivative sum sum_k alpha_k * wp'(mu + nu*tau + omega_k | tau).

    Vanishing identically in tau is exactly the condition for the class
    (mu, nu) to give a solution at parameters alpha; the value at a single
    tau is the pointwise residual.  Linear in alpha.
    """
    a = list(alpha)
    if len(a) != 4:
        raise ValueError("alpha must have four components")
    pair = _as_pair(v)
    tau = _require_tau(tau, config)
    p = float(pair.mu) + float(pair.nu) * tau
    total = 0j
    for ak, om in zip(a, half_periods(tau)):
        if ak == 0:
            continue
        total += complex(ak) * wp_prime(p + om, tau, config)
    return total


def triple_check(
    z: complex, tau: complex, config: EllipticConfig = DEFAULT_CONFIG
) -> tuple[complex, complex]:
    """Both sides of the multiplication identity w(3z) = y * (f(y,t)/g(y,t))^2.

    y = w(z); raises on pole proximity of z or 3z and when the denominator
    g(y, t) is too close to zero for a meaningful comparison.
    """
    tau = _require_tau(tau, config)
    inv = invariants_at(tau, config)
    y = (wp(z, tau, config) - inv.e1) / (inv.e2 - inv.e1)
    lhs = (wp(3 * z, tau, config) - inv.e1) / (inv.e2 - inv.e1)
    t = inv.t
    fval = complex(TRIPLING_F(y=y, t=t))
    gval = complex(TRIPLING_G(y=y, t=t))
    scale = max(1.0, abs(y), abs(t)) ** 4
    if abs(gval) < 1e-9 * scale:
        raise PoleProximityError(
            f"tripling denominator g(y, t) = {gval:g} too small at z = {z}"
        )
    rhs = y * (fval / gval) ** 2
    return lhs, rhs
