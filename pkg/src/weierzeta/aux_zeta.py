"""Auxiliary zeta functions, evaluable by four independent routes.

For each half-period index lam, the auxiliary zeta is the log-derivative of
the auxiliary sigma; it equals zeta(u + omega_lam) - eta_lam, is odd, is not
elliptic, and has simple poles on omega_lam + lattice while the lattice
itself consists of regular points (with value 0 at u = 0).

Routes:
  SHIFT            zeta(u + omega_lam) - eta_lam
  THETA            eta1*u/omega1 + theta log-derivative of the companion index
  QSERIES          the lam-specific q-series (tan term only for lam = 1)
  PARTIAL_FRACTION coset partial-fraction sum, symmetric cutoff
"""

from __future__ import annotations

import cmath
import enum
import math

import numpy as np

from .errors import PoleProximityError, SeriesDivergence
from .lattice import Lattice, constants, reduce_to_cell, sorted_lattice_points
from .theta import DEFAULT_CONFIG, HALF_PERIOD_THETA, SeriesConfig, theta_dlog
from .weier_core import EvalResult, Status, pole_status, zeta_w

PI = math.pi

# q-series points with |Im(pi*u/omega1)| beyond this multiple of 2*pi*Im(tau)
# lose geometric convergence; fall back to the shift route there.
QSERIES_STRIP = 0.45


class ZetaRoute(enum.Enum):
    SHIFT = "shift"
    THETA = "theta"
    QSERIES = "qseries"
    PARTIAL_FRACTION = "partialfrac"


def zeta_aux(
    lat: Lattice,
    lam: int,
    u: complex,
    route: ZetaRoute = ZetaRoute.THETA,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    partialfrac_radius: int = 200,
    qseries_form: str = "exp",
) -> EvalResult:
    """Auxiliary zeta for half-period index lam along the chosen route."""
    if lam not in (1, 2, 3):
        raise ValueError(f"half-period index must be 1, 2 or 3, got {lam!r}")
    bad = pole_status(lat, u, (lat.half_period(lam),))
    if bad is not None:
        return bad
    if route is ZetaRoute.SHIFT:
        return _shift(lat, lam, u, cfg)
    if route is ZetaRoute.THETA:
        return EvalResult(_theta(lat, lam, u, cfg), Status.FINITE)
    if route is ZetaRoute.QSERIES:
        return EvalResult(_qseries(lat, lam, u, cfg, qseries_form), Status.FINITE)
    if route is ZetaRoute.PARTIAL_FRACTION:
        return EvalResult(_partialfrac(lat, lam, u, cfg, partialfrac_radius), Status.FINITE)
    raise ValueError(f"unknown route {route!r}")


def _shift(lat: Lattice, lam: int, u: complex, cfg: SeriesConfig) -> EvalResult:
    lc = constants(lat, cfg)
    inner = zeta_w(lat, u + lat.half_period(lam), cfg)
    if not inner.is_finite:
        return inner
    return EvalResult(inner.value - lc.eta(lam), Status.FINITE)


def _theta(lat: Lattice, lam: int, u: complex, cfg: SeriesConfig) -> complex:
    lc = constants(lat, cfg)
    u_red, n, m = reduce_to_cell(lat, u)
    w1 = lat.omega1
    idx = HALF_PERIOD_THETA[lam]
    val = lc.eta1 * u_red / w1 + theta_dlog(idx, u_red / (2 * w1), lat.tau, cfg) / (2 * w1)
    return val + 2 * n * lc.eta1 + 2 * m * lc.eta3


def _qseries(lat: Lattice, lam: int, u: complex, cfg: SeriesConfig, form: str) -> complex:
    if form not in ("exp", "cos"):
        raise ValueError(f"qseries form must be 'exp' or 'cos', got {form!r}")
    lc = constants(lat, cfg)
    u_red, n, m = reduce_to_cell(lat, u)
    incr = 2 * n * lc.eta1 + 2 * m * lc.eta3
    w1 = lat.omega1
    if abs((PI * u_red / w1).imag) >= 2 * PI * lat.tau.imag * QSERIES_STRIP:
        res = _shift(lat, lam, u_red, cfg)
        if not res.is_finite:
            raise PoleProximityError(f"q-series fallback hit a pole at {u_red!r}")
        return res.value + incr
    q = lat.q
    total = lc.eta1 * u_red / w1
    if lam == 1:
        total -= (PI / (2 * w1)) * cmath.tan(PI * u_red / (2 * w1))
        qpow, sgn = q * q, 1.0
    elif lam == 2:
        qpow, sgn = q, 1.0
    else:
        qpow, sgn = q, -1.0
    step = q * q
    if form == "exp":
        wplus = cmath.exp(1j * PI * u_red / w1)
        wminus = 1.0 / wplus
        coef = sgn * 1j * PI / w1

        def term_at(_k: int, p: complex) -> complex:
            a = p * wplus
            b = p * wminus
            return coef * (a / (1.0 + sgn * a) - b / (1.0 + sgn * b))

    else:
        c = cmath.cos(PI * u_red / w1)
        s = cmath.sin(PI * u_red / w1)
        coef = -sgn * 2 * PI / w1

        def term_at(_k: int, p: complex) -> complex:
            return coef * p * s / (1.0 + sgn * 2 * p * c + p * p)

    small = 0
    for k in range(cfg.max_terms):
        term = term_at(k, qpow)
        total += term
        qpow *= step
        if abs(term) <= cfg.abs_tol + cfg.rel_tol * abs(total):
            small += 1
            if small >= 2:
                return total + incr
        else:
            small = 0
    raise SeriesDivergence(
        f"auxiliary zeta q-series for index {lam}: no convergence within {cfg.max_terms} terms"
    )


def _partialfrac(lat: Lattice, lam: int, u: complex, cfg: SeriesConfig, radius: int) -> complex:
    lc = constants(lat, cfg)
    u_red, n, m = reduce_to_cell(lat, u)
    pts = sorted_lattice_points(
        2 * lat.omega1, 2 * lat.omega3, radius, offset=lat.half_period(lam)
    )
    terms = 1.0 / (u_red - pts) + 1.0 / pts + u_red / (pts**2)
    total = -lc.e(lam) * u_red + complex(np.sum(terms))
    return total + 2 * n * lc.eta1 + 2 * m * lc.eta3


def zeta_aux_quasiperiod_check(
    lat: Lattice, lam: int, lam_prime: int, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG
) -> complex:
    """Residual zeta_lam(u + 2*omega_lam') - zeta_lam(u) - 2*eta_lam'."""
    lc = constants(lat, cfg)
    a = zeta_aux(lat, lam, u + 2 * lat.half_period(lam_prime), cfg=cfg)
    b = zeta_aux(lat, lam, u, cfg=cfg)
    if not (a.is_finite and b.is_finite):
        raise PoleProximityError(
            f"quasi-period check needs non-pole points, got {a.status} / {b.status}"
        )
    return a.value - b.value - 2 * lc.eta(lam_prime)
