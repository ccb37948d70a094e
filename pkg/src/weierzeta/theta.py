"""Jacobi theta functions as truncated q-series.

Four series are indexed 0..3.  Index 0 is the odd function whose zeros fill
the period lattice; indices 1..3 are the even companions.  Written with
x = pi*v and q = exp(i*pi*tau):

    theta_0(v) = 2 * sum_{n>=0} (-1)^n q^((n+1/2)^2) sin((2n+1)x)
    theta_1(v) = 2 * sum_{n>=0}        q^((n+1/2)^2) cos((2n+1)x)
    theta_2(v) = 1 + 2 * sum_{n>=1} (-1)^n q^(n^2) cos(2nx)
    theta_3(v) = 1 + 2 * sum_{n>=1}        q^(n^2) cos(2nx)

The pairing of the n-th and (-n)-th exponential terms (n and -n-1 for the
half-integer exponents) is already folded into the sin/cos form, so the
odd series vanishes identically at v = 0 with no cancellation error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NearZeroDenominator, SeriesDivergence

PI = math.pi

# Theta index whose zero set lies on the coset of each half-period
# (omega_1 -> index 1, omega_2 -> index 3, omega_3 -> index 2).  This is
# what makes the auxiliary sigma/zeta formulas hold; it is fixed by the
# zero loci of the four series above.
HALF_PERIOD_THETA = {1: 1, 2: 3, 3: 2}


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation policy shared by every series and product in the package."""

    abs_tol: float = 1e-16
    rel_tol: float = 1e-16
    max_terms: int = 96

    def __post_init__(self) -> None:
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("at least one of abs_tol/rel_tol must be positive")
        if self.max_terms < 4:
            raise ValueError("max_terms must be >= 4")


DEFAULT_CONFIG = SeriesConfig()


def _check_idx(idx: int) -> None:
    if idx not in (0, 1, 2, 3):
        raise ValueError(f"theta index must be 0..3, got {idx!r}")


def _check_tau(tau: complex) -> None:
    if not tau.imag > 0:
        raise ValueError(f"Im(tau) must be positive, got {tau!r}")


@lru_cache(maxsize=128)
def _coeffs(tau: complex, n_terms: int):
    """q-power coefficient tables for the four series at a fixed tau."""
    iptau = 1j * PI * tau
    half = [cmath.exp(iptau * (n + 0.5) ** 2) for n in range(n_terms)]
    whole = [cmath.exp(iptau * n * n) for n in range(1, n_terms + 1)]
    c0 = tuple(h if n % 2 == 0 else -h for n, h in enumerate(half))
    c1 = tuple(half)
    c2 = tuple(-w if n % 2 == 1 else w for n, w in enumerate(whole, start=1))
    c3 = tuple(whole)
    return c0, c1, c2, c3


def _sum_series(terms, start: complex, cfg: SeriesConfig, what: str) -> complex:
    """Accumulate terms until two consecutive ones pass the truncation test."""
    total = start
    small = 0
    count = 0
    for term in terms:
        total += term
        count += 1
        if abs(term) <= cfg.abs_tol + cfg.rel_tol * abs(total):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise SeriesDivergence(
        f"{what}: no convergence within {count} terms "
        f"(abs_tol={cfg.abs_tol}, rel_tol={cfg.rel_tol})"
    )


def theta_eval(idx: int, v: complex, tau: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """Value of the idx-th theta function at v for half-period ratio tau."""
    _check_idx(idx)
    _check_tau(tau)
    c0, c1, c2, c3 = _coeffs(tau, cfg.max_terms)
    x = PI * v
    if idx == 0:
        terms = (2.0 * c0[n] * cmath.sin((2 * n + 1) * x) for n in range(cfg.max_terms))
        return _sum_series(terms, 0j, cfg, "theta_0")
    if idx == 1:
        terms = (2.0 * c1[n] * cmath.cos((2 * n + 1) * x) for n in range(cfg.max_terms))
        return _sum_series(terms, 0j, cfg, "theta_1")
    if idx == 2:
        terms = (2.0 * c2[n - 1] * cmath.cos(2 * n * x) for n in range(1, cfg.max_terms))
        return _sum_series(terms, 1 + 0j, cfg, "theta_2")
    terms = (2.0 * c3[n - 1] * cmath.cos(2 * n * x) for n in range(1, cfg.max_terms))
    return _sum_series(terms, 1 + 0j, cfg, "theta_3")


def theta_deriv(idx: int, v: complex, tau: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """First v-derivative of the idx-th theta function (term-differentiated)."""
    _check_idx(idx)
    _check_tau(tau)
    c0, c1, c2, c3 = _coeffs(tau, cfg.max_terms)
    x = PI * v
    if idx == 0:
        terms = (
            2.0 * PI * (2 * n + 1) * c0[n] * cmath.cos((2 * n + 1) * x)
            for n in range(cfg.max_terms)
        )
        return _sum_series(terms, 0j, cfg, "theta_0'")
    if idx == 1:
        terms = (
            -2.0 * PI * (2 * n + 1) * c1[n] * cmath.sin((2 * n + 1) * x)
            for n in range(cfg.max_terms)
        )
        return _sum_series(terms, 0j, cfg, "theta_1'")
    if idx == 2:
        terms = (
            -4.0 * PI * n * c2[n - 1] * cmath.sin(2 * n * x) for n in range(1, cfg.max_terms)
        )
        return _sum_series(terms, 0j, cfg, "theta_2'")
    terms = (-4.0 * PI * n * c3[n - 1] * cmath.sin(2 * n * x) for n in range(1, cfg.max_terms))
    return _sum_series(terms, 0j, cfg, "theta_3'")


@lru_cache(maxsize=128)
def _nullwert_scale(tau: complex, cfg: SeriesConfig) -> float:
    return max(abs(theta_eval(i, 0.0, tau, cfg)) for i in (1, 2, 3))


def theta_dlog(idx: int, v: complex, tau: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """Logarithmic v-derivative theta'_idx(v)/theta_idx(v)."""
    den = theta_eval(idx, v, tau, cfg)
    if abs(den) < 1e-12 * _nullwert_scale(tau, cfg):
        raise NearZeroDenominator(
            f"theta_{idx}({v!r}) = {den!r} is below the log-derivative guard"
        )
    return theta_deriv(idx, v, tau, cfg) / den


def theta_nullwerte(tau: complex, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Nullwerte (theta1_0, theta2_0, theta3_0, theta'_0, theta'''_0) at v = 0.

    The first and third derivatives are those of the odd series, obtained by
    term-wise differentiation.
    """
    _check_tau(tau)
    c0, _, _, _ = _coeffs(tau, cfg.max_terms)
    t1 = theta_eval(1, 0.0, tau, cfg)
    t2 = theta_eval(2, 0.0, tau, cfg)
    t3 = theta_eval(3, 0.0, tau, cfg)
    tp = _sum_series(
        (2.0 * PI * (2 * n + 1) * c0[n] for n in range(cfg.max_terms)), 0j, cfg, "theta'"
    )
    tppp = _sum_series(
        (-2.0 * PI**3 * (2 * n + 1) ** 3 * c0[n] for n in range(cfg.max_terms)),
        0j,
        cfg,
        "theta'''",
    )
    return t1, t2, t3, tp, tppp
