"""Period lattice construction, argument reduction, and per-lattice constants.

A lattice is generated by the periods (2*omega1, 2*omega3) with
Im(omega3/omega1) > 0, and omega2 = -(omega1 + omega3), so the three
half-periods sum to zero exactly.  Lattice points are
Omega_{n,m} = 2*omega1*n + 2*omega3*m.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergencePolicyError, InvalidPeriodRatio, ZeroPeriod
from .theta import DEFAULT_CONFIG, HALF_PERIOD_THETA, SeriesConfig, theta_nullwerte

PI = math.pi

# Cyclic complementary pair for each half-period index.
_COMPLEMENT = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


def complement(lam: int) -> tuple[int, int]:
    """The ordered pair (mu, nu) completing lam to a permutation of 1,2,3."""
    try:
        return _COMPLEMENT[lam]
    except KeyError:
        raise ValueError(f"half-period index must be 1, 2 or 3, got {lam!r}") from None


@dataclass(frozen=True)
class Lattice:
    """Immutable period lattice with derived ratio and nome."""

    omega1: complex
    omega3: complex
    omega2: complex
    tau: complex
    q: complex

    def half_period(self, lam: int) -> complex:
        if lam == 1:
            return self.omega1
        if lam == 2:
            return self.omega2
        if lam == 3:
            return self.omega3
        raise ValueError(f"half-period index must be 1, 2 or 3, got {lam!r}")

    @property
    def min_period(self) -> float:
        return min(abs(2 * self.omega1), abs(2 * self.omega3))


def build_lattice(omega1: complex, omega3: complex, q_max: float = 0.9) -> Lattice:
    """Validate half-periods and derive tau, q, omega2.

    Raises ZeroPeriod, InvalidPeriodRatio, or ConvergencePolicyError when the
    nome magnitude exceeds q_max (theta series degrade; no modular reduction
    is attempted).
    """
    omega1 = complex(omega1)
    omega3 = complex(omega3)
    if omega1 == 0 or omega3 == 0:
        raise ZeroPeriod("half-periods must be non-zero")
    tau = omega3 / omega1
    if not tau.imag > 0:
        raise InvalidPeriodRatio(f"Im(omega3/omega1) must be positive, got {tau!r}")
    q = cmath.exp(1j * PI * tau)
    if abs(q) > q_max:
        raise ConvergencePolicyError(
            f"|q| = {abs(q):.6g} exceeds q_max = {q_max}; lattice too extreme for the series"
        )
    return Lattice(omega1=omega1, omega3=omega3, omega2=-(omega1 + omega3), tau=tau, q=q)


def cell_coords(lat: Lattice, u: complex) -> tuple[float, float]:
    """Real coordinates (alpha, beta) with u = 2*alpha*omega1 + 2*beta*omega3."""
    w1, w3 = 2 * lat.omega1, 2 * lat.omega3
    det = w1.real * w3.imag - w1.imag * w3.real
    alpha = (u.real * w3.imag - u.imag * w3.real) / det
    beta = (w1.real * u.imag - w1.imag * u.real) / det
    return alpha, beta


def reduce_to_cell(lat: Lattice, u: complex) -> tuple[complex, int, int]:
    """Translate u by a lattice vector into the centred fundamental cell.

    Returns (u_red, n, m) with u = u_red + 2*n*omega1 + 2*m*omega3 and the
    cell coordinates of u_red in [-1/2, 1/2].
    """
    alpha, beta = cell_coords(lat, u)
    n = round(alpha)
    m = round(beta)
    return u - 2 * n * lat.omega1 - 2 * m * lat.omega3, n, m


def nearest_translate(lat: Lattice, u: complex, offset: complex) -> tuple[float, complex]:
    """Distance from u to the coset offset + lattice, and the closest point."""
    alpha, beta = cell_coords(lat, u - offset)
    n0, m0 = round(alpha), round(beta)
    best = math.inf
    best_pt = offset
    for dn in (-1, 0, 1):
        for dm in (-1, 0, 1):
            pt = offset + 2 * (n0 + dn) * lat.omega1 + 2 * (m0 + dm) * lat.omega3
            d = abs(u - pt)
            if d < best:
                best = d
                best_pt = pt
    return best, best_pt


@dataclass(frozen=True)
class LatticeConstants:
    """Half-period values, elliptic invariants, and squared moduli."""

    e1: complex
    e2: complex
    e3: complex
    eta1: complex
    eta2: complex
    eta3: complex
    g2: complex
    g3: complex
    disc: complex
    ksq: complex
    kpsq: complex

    def e(self, lam: int) -> complex:
        return (self.e1, self.e2, self.e3)[lam - 1]

    def eta(self, lam: int) -> complex:
        return (self.eta1, self.eta2, self.eta3)[lam - 1]


@lru_cache(maxsize=128)
def constants(lat: Lattice, cfg: SeriesConfig = DEFAULT_CONFIG) -> LatticeConstants:
    """All per-lattice constants, from theta nullwerte.

    The half-period differences come from the nullwerte fourth powers, each
    individual e from 3*e_lam = (e_lam - e_mu) + (e_lam - e_nu); eta1 from the
    third-derivative nullwert, eta3 from the Legendre relation
    eta1*omega3 - eta3*omega1 = i*pi/2, and eta2 = -eta1 - eta3.
    """
    t = theta_nullwerte(lat.tau, cfg)
    nw = {1: t[0], 2: t[1], 3: t[2]}
    tp, tppp = t[3], t[4]
    w1 = lat.omega1
    c = (PI / (2 * w1)) ** 2
    d12 = c * nw[HALF_PERIOD_THETA[3]] ** 4
    d13 = c * nw[HALF_PERIOD_THETA[2]] ** 4
    d23 = c * nw[HALF_PERIOD_THETA[1]] ** 4
    e1 = (d12 + d13) / 3
    e2 = (-d12 + d23) / 3
    e3 = (-d13 - d23) / 3
    eta1 = -tppp / (12 * w1 * tp)
    eta3 = (eta1 * lat.omega3 - 1j * PI / 2) / w1
    eta2 = -eta1 - eta3
    g2 = -4 * (e1 * e2 + e2 * e3 + e3 * e1)
    g3 = 4 * e1 * e2 * e3
    disc = g2**3 - 27 * g3**2
    ksq = (e2 - e3) / (e1 - e3)
    kpsq = (e1 - e2) / (e1 - e3)
    return LatticeConstants(
        e1=e1, e2=e2, e3=e3, eta1=eta1, eta2=eta2, eta3=eta3,
        g2=g2, g3=g3, disc=disc, ksq=ksq, kpsq=kpsq,
    )


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def constants_to_json(lat: Lattice, lc: LatticeConstants) -> dict:
    """JSON-ready dict with complex numbers as [re, im] pairs."""
    return {
        "omega1": _pair(lat.omega1),
        "omega3": _pair(lat.omega3),
        "tau": _pair(lat.tau),
        "q": _pair(lat.q),
        "e": [_pair(lc.e1), _pair(lc.e2), _pair(lc.e3)],
        "eta": [_pair(lc.eta1), _pair(lc.eta2), _pair(lc.eta3)],
        "g2": _pair(lc.g2),
        "g3": _pair(lc.g3),
        "disc": _pair(lc.disc),
        "ksq": _pair(lc.ksq),
        "kpsq": _pair(lc.kpsq),
    }


@lru_cache(maxsize=64)
def sorted_lattice_points(
    two_w1: complex, two_w3: complex, radius: int, offset: complex = 0j
) -> np.ndarray:
    """Points of offset + lattice inside the disc |p| <= radius * min period.

    The cutoff is symmetric in the plane metric, which is what makes the
    slowly convergent lattice tails cancel angularly; a square index-box
    cutoff leaves an O(radius^-2) bias that symmetric truncation removes.
    Points come back sorted by increasing magnitude (exact zero dropped),
    so partial accumulation walks outward shell by shell.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    cut = radius * min(abs(two_w1), abs(two_w3))
    area = abs((two_w1.conjugate() * two_w3).imag)
    n_span = int(math.ceil((cut + abs(offset)) * abs(two_w3) / area)) + 1
    m_span = int(math.ceil((cut + abs(offset)) * abs(two_w1) / area)) + 1
    n = np.arange(-n_span, n_span + 1)
    m = np.arange(-m_span, m_span + 1)
    nn, mm = np.meshgrid(n, m, indexing="ij")
    pts = (offset + nn * two_w1 + mm * two_w3).ravel()
    mag = np.abs(pts)
    keep = (mag > 1e-12 * cut / radius) & (mag <= cut)
    pts = pts[keep]
    return pts[np.argsort(np.abs(pts), kind="stable")]


def eisenstein_invariants(lat: Lattice, shell_radius: int) -> tuple[complex, complex]:
    """(g2, g3) by direct truncated lattice sums 60*sum(1/Omega^4), 140*sum(1/Omega^6).

    Truncated at |Omega| <= shell_radius * min period and accumulated
    outward; serves as an independent oracle for `constants`, not as a
    production path.
    """
    pts = sorted_lattice_points(2 * lat.omega1, 2 * lat.omega3, shell_radius)
    inv2 = 1.0 / (pts * pts)
    inv4 = inv2 * inv2
    g2 = 60.0 * complex(np.sum(inv4))
    g3 = 140.0 * complex(np.sum(inv4 * inv2))
    return g2, g3
