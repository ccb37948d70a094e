"""Weierstrass sigma, zeta, and p-functions via the theta route.

Production evaluation reduces the argument to the centred fundamental cell,
evaluates a short theta series there, and reapplies the quasi-periodicity
factors analytically.  Slow lattice-sum and product oracles are provided for
each function; they exist for verification only.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .lattice import (
    Lattice,
    LatticeConstants,
    constants,
    nearest_translate,
    reduce_to_cell,
    sorted_lattice_points,
)
from .theta import (
    DEFAULT_CONFIG,
    HALF_PERIOD_THETA,
    SeriesConfig,
    theta_dlog,
    theta_eval,
    theta_nullwerte,
)

NEAR_POLE_FACTOR = 1e-8

_NAN = complex(float("nan"), float("nan"))


class Status(enum.Enum):
    FINITE = "Finite"
    AT_POLE = "AtPole"
    NEAR_POLE = "NearPole"


@dataclass(frozen=True)
class EvalResult:
    """Complex value plus pole status; value is meaningful only when Finite.

    For NearPole/AtPole results `pole` holds the offending lattice translate.
    """

    value: complex
    status: Status
    pole: complex | None = None

    @property
    def is_finite(self) -> bool:
        return self.status is Status.FINITE


def pole_status(lat: Lattice, u: complex, offsets) -> EvalResult | None:
    """EvalResult for u at/near any of the given pole cosets, else None."""
    radius = NEAR_POLE_FACTOR * lat.min_period
    for off in offsets:
        dist, translate = nearest_translate(lat, u, off)
        if dist == 0.0:
            return EvalResult(_NAN, Status.AT_POLE, translate)
        if dist < radius:
            return EvalResult(_NAN, Status.NEAR_POLE, translate)
    return None


def _quasi_factor(lat: Lattice, lc: LatticeConstants, u_red: complex, n: int, m: int) -> complex:
    """sigma(u_red + Omega)/sigma(u_red) for Omega = 2n*w1 + 2m*w3."""
    if n == 0 and m == 0:
        return 1.0 + 0j
    omega = 2 * n * lat.omega1 + 2 * m * lat.omega3
    eta = 2 * n * lc.eta1 + 2 * m * lc.eta3
    sign = -1.0 if (n + m + n * m) % 2 else 1.0
    return sign * cmath.exp(eta * (u_red + omega / 2))


_AUX_SIGN = {
    1: lambda n, m: -1.0 if m % 2 else 1.0,
    2: lambda n, m: -1.0 if (n + m) % 2 else 1.0,
    3: lambda n, m: -1.0 if n % 2 else 1.0,
}


def sigma(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """Entire sigma function; exact zeros on the lattice."""
    lc = constants(lat, cfg)
    u_red, n, m = reduce_to_cell(lat, u)
    w1 = lat.omega1
    _, _, _, tp, _ = theta_nullwerte(lat.tau, cfg)
    base = (
        (2 * w1 / tp)
        * cmath.exp(lc.eta1 * u_red * u_red / (2 * w1))
        * theta_eval(0, u_red / (2 * w1), lat.tau, cfg)
    )
    return base * _quasi_factor(lat, lc, u_red, n, m)


def sigma_aux(lat: Lattice, lam: int, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """Auxiliary sigma for half-period index lam, normalised to 1 at u = 0."""
    idx = HALF_PERIOD_THETA[lam]
    lc = constants(lat, cfg)
    u_red, n, m = reduce_to_cell(lat, u)
    w1 = lat.omega1
    null = theta_eval(idx, 0.0, lat.tau, cfg)
    base = (
        cmath.exp(lc.eta1 * u_red * u_red / (2 * w1))
        * theta_eval(idx, u_red / (2 * w1), lat.tau, cfg)
        / null
    )
    return base * _quasi_factor(lat, lc, u_red, n, m) * _AUX_SIGN[lam](n, m)


def zeta_w(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> EvalResult:
    """Weierstrass zeta; simple poles on the lattice."""
    bad = pole_status(lat, u, (0j,))
    if bad is not None:
        return bad
    lc = constants(lat, cfg)
    u_red, n, m = reduce_to_cell(lat, u)
    w1 = lat.omega1
    val = lc.eta1 * u_red / w1 + theta_dlog(0, u_red / (2 * w1), lat.tau, cfg) / (2 * w1)
    return EvalResult(val + 2 * n * lc.eta1 + 2 * m * lc.eta3, Status.FINITE)


def _sigma_base(lat: Lattice, u_red: complex, cfg: SeriesConfig) -> complex:
    lc = constants(lat, cfg)
    w1 = lat.omega1
    _, _, _, tp, _ = theta_nullwerte(lat.tau, cfg)
    return (
        (2 * w1 / tp)
        * cmath.exp(lc.eta1 * u_red * u_red / (2 * w1))
        * theta_eval(0, u_red / (2 * w1), lat.tau, cfg)
    )


def _sigma_aux_base(lat: Lattice, lam: int, u_red: complex, cfg: SeriesConfig) -> complex:
    idx = HALF_PERIOD_THETA[lam]
    lc = constants(lat, cfg)
    w1 = lat.omega1
    return (
        cmath.exp(lc.eta1 * u_red * u_red / (2 * w1))
        * theta_eval(idx, u_red / (2 * w1), lat.tau, cfg)
        / theta_eval(idx, 0.0, lat.tau, cfg)
    )


def wp(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> EvalResult:
    """Weierstrass p-function via e1 + (sigma1/sigma)^2; double poles on the lattice."""
    bad = pole_status(lat, u, (0j,))
    if bad is not None:
        return bad
    lc = constants(lat, cfg)
    u_red, _, _ = reduce_to_cell(lat, u)
    ratio = _sigma_aux_base(lat, 1, u_red, cfg) / _sigma_base(lat, u_red, cfg)
    return EvalResult(lc.e1 + ratio * ratio, Status.FINITE)


def wp_prime(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> EvalResult:
    """Derivative of wp via -2*sigma1*sigma2*sigma3/sigma^3; triple poles on the lattice."""
    bad = pole_status(lat, u, (0j,))
    if bad is not None:
        return bad
    u_red, _, _ = reduce_to_cell(lat, u)
    s0 = _sigma_base(lat, u_red, cfg)
    prod = 1.0 + 0j
    for lam in (1, 2, 3):
        prod *= _sigma_aux_base(lat, lam, u_red, cfg)
    return EvalResult(-2 * prod / s0**3, Status.FINITE)


# ---------------------------------------------------------------------------
# Slow oracles: direct lattice sums/products, truncated at a symmetric cutoff
# |point| <= radius * min period.  Verification only.
# ---------------------------------------------------------------------------


def wp_lattice_sum(lat: Lattice, u: complex, radius: int = 200) -> complex:
    """1/u^2 + sum over the lattice of 1/(u-Omega)^2 - 1/Omega^2."""
    pts = sorted_lattice_points(2 * lat.omega1, 2 * lat.omega3, radius)
    terms = 1.0 / ((u - pts) ** 2) - 1.0 / (pts**2)
    return 1.0 / (u * u) + complex(np.sum(terms))


def zeta_lattice_sum(lat: Lattice, u: complex, radius: int = 200) -> complex:
    """1/u + sum over the lattice of 1/(u-Omega) + 1/Omega + u/Omega^2."""
    pts = sorted_lattice_points(2 * lat.omega1, 2 * lat.omega3, radius)
    terms = 1.0 / (u - pts) + 1.0 / pts + u / (pts**2)
    return 1.0 / u + complex(np.sum(terms))


def sigma_product(lat: Lattice, u: complex, radius: int = 60) -> complex:
    """u * prod over the lattice of (1 - u/Omega) exp(u/Omega + u^2/(2 Omega^2)).

    Computed as u * exp(sum of factor logs); principal logs per factor are
    safe because the exponential removes any 2*pi*i bookkeeping.
    """
    pts = sorted_lattice_points(2 * lat.omega1, 2 * lat.omega3, radius)
    logs = np.log(1.0 - u / pts) + u / pts + u * u / (2.0 * pts**2)
    return u * cmath.exp(complex(np.sum(logs)))
