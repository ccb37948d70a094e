"""Jacobian elliptic functions and integrals tied to the zeta differences.

The moduli come from the half-period values, the complete integrals from the
arithmetic-geometric mean, and sn/cn/dn from sigma quotients, so that every
transformation formula connecting them to the zeta differences can be checked
numerically.  Arguments named x live on the Jacobi side; u = x/scale lives on
the lattice side, where scale**2 = e1 - e3.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchAmbiguity, DegenerateLattice, PoleProximityError
from .lattice import Lattice, constants, nearest_translate
from .theta import DEFAULT_CONFIG, SeriesConfig
from .weier_core import sigma, sigma_aux
from .aux_zeta import zeta_aux
from .zeta_diff import DeltaRoute, delta, delta2

PI = math.pi


@dataclass(frozen=True)
class JacobiParams:
    """Moduli, complete integrals, and the lattice they came from."""

    k: complex
    kprime: complex
    big_k: complex
    big_e: complex
    scale: complex
    lattice: Lattice
    cfg: SeriesConfig

    def to_jacobi_arg(self, u: complex) -> complex:
        return self.scale * u


def agm_complete_integrals(ksq: complex, kpsq: complex, tol: float = 1e-15) -> tuple[complex, complex]:
    """Complete integrals (K, E) for squared moduli via the AGM iteration.

    The geometric-mean branch is chosen so that |a - b| <= |a + b| at every
    step (the convergent chain); quadratic convergence gives full precision
    in about ten iterations for moduli away from 1.
    """
    a = 1.0 + 0j
    b = cmath.sqrt(kpsq)
    if abs(b - 1) > abs(b + 1):
        b = -b
    csum = 0.5 * ksq  # 2^(n-1) * c_n^2 accumulated, n = 0 term is ksq/2
    pow2 = 0.5
    for _ in range(60):
        c = (a - b) / 2
        a, b = (a + b) / 2, cmath.sqrt(a * b)
        if abs(a - b) > abs(a + b):
            b = -b
        pow2 *= 2
        csum += pow2 * c * c
        if abs(c) <= tol * abs(a):
            break
    big_k = PI / (2 * a)
    big_e = big_k * (1 - csum)
    return big_k, big_e


def jacobi_params(lat: Lattice, cfg: SeriesConfig = DEFAULT_CONFIG) -> JacobiParams:
    """Moduli and complete integrals for the lattice.

    Raises DegenerateLattice when the discriminant vanishes (two half-period
    values collide and the moduli lose meaning).
    """
    lc = constants(lat, cfg)
    scale_sq = lc.e1 - lc.e3
    if abs(lc.disc) <= 1e-10 * max(abs(lc.g2) ** 3, 27 * abs(lc.g3) ** 2, 1e-300):
        raise DegenerateLattice(f"discriminant {lc.disc!r} is numerically zero")
    big_k, big_e = agm_complete_integrals(lc.ksq, lc.kpsq)
    return JacobiParams(
        k=cmath.sqrt(lc.ksq),
        kprime=cmath.sqrt(lc.kpsq),
        big_k=big_k,
        big_e=big_e,
        scale=cmath.sqrt(scale_sq),
        lattice=lat,
        cfg=cfg,
    )


def sn_cn_dn(p: JacobiParams, x: complex, cfg: SeriesConfig | None = None) -> tuple[complex, complex, complex]:
    """(sn, cn, dn) at Jacobi argument x, from sigma quotients.

    sn = scale*sigma/sigma_3, cn = sigma_1/sigma_3, dn = sigma_2/sigma_3 at
    u = x/scale; the shared poles sit on the omega_3 coset.
    """
    cfg = cfg or p.cfg
    lat = p.lattice
    u = x / p.scale
    dist, translate = nearest_translate(lat, u, lat.omega3)
    if dist < 1e-8 * lat.min_period:
        raise PoleProximityError(
            f"Jacobi argument {x!r} sits at a shared sn/cn/dn pole (u near {translate!r})"
        )
    s3 = sigma_aux(lat, 3, u, cfg)
    return (
        p.scale * sigma(lat, u, cfg) / s3,
        sigma_aux(lat, 1, u, cfg) / s3,
        sigma_aux(lat, 2, u, cfg) / s3,
    )


def _delta_vals(lat: Lattice, u: complex, cfg: SeriesConfig) -> dict:
    return {lam: delta(lat, lam, u, DeltaRoute.WP_QUOTIENT, cfg).value for lam in (1, 2, 3)}


def check_thm211(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> list[float]:
    """Residuals of the six transformation rows linking delta products and
    quotients to ns, ds, cs, sn(K - x), dn, nc.

    The left sides combine wp-route delta values under principal square
    roots, so the row residuals are meaningful where the principal branch
    matches the sigma-quotient convention: rectangular lattices with real
    arguments.  Use check_thm211_squared for arbitrary lattices.
    """
    p = jacobi_params(lat, cfg)
    x = p.scale * u
    s, c, d = sn_cn_dn(p, x)
    dv = _delta_vals(lat, u, cfg)
    sK, _, _ = sn_cn_dn(p, p.big_k - x)
    rows = [
        (cmath.sqrt(dv[1] * dv[2]), p.scale / s),
        (cmath.sqrt(dv[1] * dv[3]), p.scale * d / s),
        (cmath.sqrt(dv[2] * dv[3]), p.scale * c / s),
        (cmath.sqrt(dv[2] / dv[1]), sK),
        (cmath.sqrt(dv[3] / dv[2]), d),
        (cmath.sqrt(dv[1] / dv[3]), 1.0 / c),
    ]
    return [abs(lhs - rhs) for lhs, rhs in rows]


def check_thm211_squared(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> list[float]:
    """Square-root-free relative residuals of the six rows; any lattice.

    The sn(K - x) row is replaced by its K-free equivalent (cn/dn)^2.  The
    squared members scale like the square of the half-period values, so each
    residual is normalised by the row magnitude.
    """
    p = jacobi_params(lat, cfg)
    x = p.scale * u
    s, c, d = sn_cn_dn(p, x)
    dv = _delta_vals(lat, u, cfg)
    e13 = constants(lat, cfg).e1 - constants(lat, cfg).e3
    rows = [
        (dv[1] * dv[2], e13 / (s * s)),
        (dv[1] * dv[3], e13 * d * d / (s * s)),
        (dv[2] * dv[3], e13 * c * c / (s * s)),
        (dv[2] / dv[1], (c / d) ** 2),
        (dv[3] / dv[2], d * d),
        (dv[1] / dv[3], 1.0 / (c * c)),
    ]
    return [abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0) for lhs, rhs in rows]


def check_cor212(lat: Lattice, u: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> list[float]:
    """Residuals of the three delta-to-Jacobi rows.

    Each entry is the max of |delta_lam - (e_mu - e_nu)/delta2_{mu,nu}| and
    |delta_lam - jacobi member|.  The Jacobi members carry a minus sign
    relative to their naive quotient form: delta_lam behaves as -1/u at the
    origin while dn/(sn*cn), cn/(dn*sn), cn*dn/sn all behave as +1/x, so the
    sigma-quotient branch convention forces the sign.
    """
    p = jacobi_params(lat, cfg)
    lc = constants(lat, cfg)
    x = p.scale * u
    s, c, d = sn_cn_dn(p, x)
    dv = {lam: delta(lat, lam, u, DeltaRoute.ZETA_DIFF, cfg).value for lam in (1, 2, 3)}
    d2 = {
        pair: delta2(lat, pair[0], pair[1], u, DeltaRoute.WP_QUOTIENT, cfg).value
        for pair in ((2, 3), (1, 3), (1, 2))
    }
    rows = [
        (dv[1], (lc.e2 - lc.e3) / d2[(2, 3)], -p.scale * d / (s * c)),
        (dv[2], (lc.e1 - lc.e3) / d2[(1, 3)], -p.scale * c / (d * s)),
        (dv[3], (lc.e1 - lc.e2) / d2[(1, 2)], -p.scale * c * d / s),
    ]
    return [max(abs(a - b), abs(a - c_)) for a, b, c_ in rows]


def jacobi_E_Z_Pi(
    lat: Lattice, u: complex, a: complex, cfg: SeriesConfig = DEFAULT_CONFIG
) -> tuple[complex, complex, complex]:
    """Epsilon E(scale*u), zeta Z(scale*u), and Pi(scale*u, scale*a).

    E and Z come from the third auxiliary zeta; Pi needs the log of a sigma
    quotient, tracked continuously along the straight segment from 0 so the
    branch agrees with the defining integral from 0.
    """
    lc = constants(lat, cfg)
    p = jacobi_params(lat, cfg)
    z3 = zeta_aux(lat, 3, u, cfg=cfg)
    if not z3.is_finite:
        raise PoleProximityError(f"u = {u!r} is at/near a pole of the third auxiliary zeta")
    big_e = (z3.value + lc.e1 * u) / p.scale
    big_z = (z3.value - (lc.eta1 / lat.omega1) * u) / p.scale
    if u == 0:
        big_pi = 0j
    else:
        big_pi = 0.5 * _tracked_log_ratio(lat, u, a, cfg) + zeta_aux(lat, 3, a, cfg=cfg).value * u
    return big_e, big_z, big_pi


def _tracked_log_ratio(lat: Lattice, u: complex, a: complex, cfg: SeriesConfig) -> complex:
    """log of sigma_3(u - a)/sigma_3(u + a), continuous along t*u from t=0.

    At t = 0 the ratio is exactly 1 (sigma_3 is even).  The principal log of
    each step ratio is accumulated; a step whose phase jump cannot be brought
    under pi/2 by bisection signals a crossing of the zero set, where the
    branch genuinely is ambiguous.
    """

    def ratio(t: float) -> complex:
        num = sigma_aux(lat, 3, t * u - a, cfg)
        den = sigma_aux(lat, 3, t * u + a, cfg)
        if den == 0 or num == 0:
            raise BranchAmbiguity(
                f"sigma_3 vanishes on the tracking segment at t = {t}; Pi is singular there"
            )
        return num / den

    f_prev = ratio(0.0)  # equals 1
    t_prev = 0.0
    total = cmath.log(f_prev)
    stack = [1.0]
    depth = 0
    max_mag_jump = math.log(10.0)
    while stack:
        t_next = stack[-1]
        f_next = ratio(t_next)
        step = f_next / f_prev
        # Refine on a large phase step or a large magnitude swing; the
        # latter is what betrays a zero crossing sliding between samples.
        if abs(cmath.phase(step)) > PI / 2 or abs(math.log(abs(step))) > max_mag_jump:
            mid = (t_prev + t_next) / 2
            if mid <= t_prev or depth > 200:
                raise BranchAmbiguity(
                    f"cannot resolve the log branch near t = {t_next} on the Pi segment"
                )
            stack.append(mid)
            depth += 1
            continue
        total += cmath.log(step)
        f_prev, t_prev = f_next, t_next
        stack.pop()
    return total
