"""Identity-certification harness.

Every displayed identity in scope is registered as an IdentitySpec naming a
left and right evaluator from a shared registry.  run_suite samples guarded
points in the fundamental cell, evaluates both sides, and reports relative
residual statistics per identity.  Deterministic given (lattice, suite, n,
seed).
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .aux_zeta import ZetaRoute, zeta_aux
from .errors import PoleProximityError, SuiteConfigError
from .jacobi import jacobi_params, sn_cn_dn
from .lattice import Lattice, complement, constants, nearest_translate, reduce_to_cell
from .theta import DEFAULT_CONFIG, HALF_PERIOD_THETA, SeriesConfig, theta_dlog, theta_eval
from .weier_core import sigma, sigma_aux, wp, wp_prime, zeta_w
from .zeta_diff import DeltaRoute, delta, delta2, delta_prime, delta2_prime

PI = math.pi

# Sampling keeps this fraction of the minimum period away from every
# exclusion locus, so condition numbers stay bounded at tol 1e-9.
POLE_GUARD = 0.02

# Relative residual floor: |lhs - rhs| / max(|lhs|, |rhs|, RESIDUAL_FLOOR).
RESIDUAL_FLOOR = 1e-30

# Step for the finite-difference identities, as a fraction of the minimum
# period.  A fourth-order five-point stencil is used: a plain central
# difference needs a tiny step near the pole guard, where the cancellation
# noise of the log arguments grows like 1/h and eats the 1e-6 tolerance.
FD_STEP = 1e-4
FD_TOL = 1e-6

PARTIALFRAC_RADIUS = 200
PARTIALFRAC_TOL = 1e-5


@dataclass(frozen=True)
class IdentitySpec:
    """One checkable identity: evaluator names, tolerance, loci to avoid."""

    name: str
    lhs: str
    rhs: str
    arity: int = 1
    tol: float = 1e-9
    exclusions: tuple[str, ...] = ()


@dataclass(frozen=True)
class IdentityReport:
    name: str
    samples: int
    max_rel: float
    mean_rel: float
    failures: tuple
    passed: bool


class _Ctx:
    """Per-(lattice, config) evaluation context shared by all evaluators."""

    def __init__(self, lat: Lattice, cfg: SeriesConfig):
        self.lat = lat
        self.cfg = cfg
        self.lc = constants(lat, cfg)
        self._jp = None

    @property
    def jp(self):
        if self._jp is None:
            self._jp = jacobi_params(self.lat, self.cfg)
        return self._jp

    # ---- unwrapping helpers -------------------------------------------------
    def wp(self, u):
        return _val(wp(self.lat, u, self.cfg))

    def wpp(self, u):
        return _val(wp_prime(self.lat, u, self.cfg))

    def zeta(self, u):
        return _val(zeta_w(self.lat, u, self.cfg))

    def zl(self, lam, u, route=ZetaRoute.THETA, **kw):
        return _val(zeta_aux(self.lat, lam, u, route, self.cfg, **kw))

    def d(self, lam, u, route=DeltaRoute.SIGMA_QUOTIENT):
        return _val(delta(self.lat, lam, u, route, self.cfg))

    def dp(self, lam, u):
        return _val(delta_prime(self.lat, lam, u, self.cfg))

    def d2(self, lam, mu, u, route=DeltaRoute.WP_QUOTIENT):
        return _val(delta2(self.lat, lam, mu, u, route, self.cfg))

    def d2p(self, lam, mu, u):
        return _val(delta2_prime(self.lat, lam, mu, u, self.cfg))

    def sig(self, u):
        return sigma(self.lat, u, self.cfg)

    def sl(self, lam, u):
        return sigma_aux(self.lat, lam, u, self.cfg)

    def w(self, lam):
        return self.lat.half_period(lam)

    def e(self, lam):
        return self.lc.e(lam)

    def eta(self, lam):
        return self.lc.eta(lam)

    def fd_step(self) -> float:
        return FD_STEP * self.lat.min_period

    def snd(self, u):
        """(sn, cn, dn) at the Jacobi argument scale*u."""
        p = self.jp
        return sn_cn_dn(p, p.scale * u)


def _val(res):
    if not res.is_finite:
        raise PoleProximityError(f"evaluator hit a {res.status.value} point at {res.pole!r}")
    return res.value


def _fd(f, u, h):
    """Fourth-order five-point derivative of f at u."""
    return (8 * (f(u + h) - f(u - h)) - (f(u + 2 * h) - f(u - 2 * h))) / (12 * h)


def _fd_log(wfun, u, h):
    """Fourth-order derivative of log(w(u)) immune to branch cuts: samples a
    step apart are close, so the principal log of their ratio is the
    increment."""
    l1 = cmath.log(wfun(u + h) / wfun(u - h))
    l2 = cmath.log(wfun(u + 2 * h) / wfun(u - 2 * h))
    return (8 * l1 - l2) / (12 * h)


# ---------------------------------------------------------------------------
# Evaluator registry
# ---------------------------------------------------------------------------

EVALUATORS: dict = {}


def _ev(name):
    def bind(fn):
        if name in EVALUATORS:
            raise SuiteConfigError(f"duplicate evaluator name {name!r}")
        EVALUATORS[name] = fn
        return fn

    return bind


def _register_all() -> None:
    # ---- classical core -----------------------------------------------------
    _ev("wp")(lambda c, u: c.wp(u))
    _ev("wp_neg")(lambda c, u: c.wp(-u))
    _ev("wp_prime_sq")(lambda c, u: c.wpp(u) ** 2)
    _ev("wp_cubic")(lambda c, u: 4 * c.wp(u) ** 3 - c.lc.g2 * c.wp(u) - c.lc.g3)
    _ev("wp_factored")(
        lambda c, u: 4 * (c.wp(u) - c.e(1)) * (c.wp(u) - c.e(2)) * (c.wp(u) - c.e(3))
    )
    _ev("zeta")(lambda c, u: c.zeta(u))
    _ev("zeta_odd")(lambda c, u: -c.zeta(-u))

    for lam in (1, 2, 3):
        _ev(f"wp_via_s{lam}")(
            lambda c, u, i=lam: c.e(i) + (c.sl(i, u) / c.sig(u)) ** 2
        )
        _ev(f"sigma{lam}_theta")(lambda c, u, i=lam: c.sl(i, u))
        _ev(f"sigma{lam}_shiftform")(
            lambda c, u, i=lam: cmath.exp(-c.eta(i) * u) * c.sig(c.w(i) + u) / c.sig(c.w(i))
        )
        _ev(f"sigma{lam}_sq")(lambda c, u, i=lam: c.sl(i, u) ** 2)

    # ---- auxiliary zeta routes ----------------------------------------------
    for lam in (1, 2, 3):
        _ev(f"zeta{lam}_shift")(lambda c, u, i=lam: c.zl(i, u, ZetaRoute.SHIFT))
        _ev(f"zeta{lam}_theta")(lambda c, u, i=lam: c.zl(i, u, ZetaRoute.THETA))
        _ev(f"zeta{lam}_qexp")(
            lambda c, u, i=lam: c.zl(i, u, ZetaRoute.QSERIES, qseries_form="exp")
        )
        _ev(f"zeta{lam}_qcos")(
            lambda c, u, i=lam: c.zl(i, u, ZetaRoute.QSERIES, qseries_form="cos")
        )
        _ev(f"zeta{lam}_pf")(
            lambda c, u, i=lam: c.zl(
                i, u, ZetaRoute.PARTIAL_FRACTION, partialfrac_radius=PARTIALFRAC_RADIUS
            )
        )

    quasi_pairs = {(1, 1), (2, 3), (3, 2)}
    for lam, lp in quasi_pairs:
        _ev(f"zeta{lam}_quasi_w{lp}")(
            lambda c, u, i=lam, j=lp: c.zl(i, u + 2 * c.w(j)) - c.zl(i, u)
        )
        _ev(f"const_2eta{lp}_{lam}")(lambda c, u, j=lp: 2 * c.eta(j))
    _ev("zeta1_quasi_w1w3")(
        lambda c, u: c.zl(1, u + 2 * c.w(1) + 2 * c.w(3)) - c.zl(1, u)
    )
    _ev("const_2eta1_plus_2eta3")(lambda c, u: 2 * c.eta(1) + 2 * c.eta(3))

    # ---- first-kind differences ----------------------------------------------
    route_map = {
        "zetadiff": DeltaRoute.ZETA_DIFF,
        "wp": DeltaRoute.WP_QUOTIENT,
        "sigma": DeltaRoute.SIGMA_QUOTIENT,
        "theta": DeltaRoute.THETA_QUOTIENT,
    }
    for lam in (1, 2, 3):
        for rname, route in route_map.items():
            _ev(f"delta_l{lam}_{rname}")(lambda c, u, i=lam, r=route: c.d(i, u, r))

    def delta_sigma4(c, u):
        num = c.sig(c.w(1)) * c.sig(u + c.w(2)) * c.sig(u + c.w(3))
        den = c.sig(c.w(2)) * c.sig(c.w(3)) * c.sig(u - c.w(1)) * c.sig(u)
        return num / den

    _ev("delta_l1_sigma4")(delta_sigma4)

    def delta_eq7(c, u):
        u_red, _, _ = reduce_to_cell(c.lat, u)
        v = u_red / (2 * c.lat.omega1)
        idx = HALF_PERIOD_THETA[1]
        return (
            theta_dlog(idx, v, c.lat.tau, c.cfg) - theta_dlog(0, v, c.lat.tau, c.cfg)
        ) / (2 * c.lat.omega1)

    _ev("delta_l1_eq7")(delta_eq7)

    def delta_eq8s(c, u):
        # Simplified theta-product form, sign fixed by the -1/u origin limit.
        lam = 2
        mu, nu = complement(lam)
        il, im_, in_ = (HALF_PERIOD_THETA[i] for i in (lam, mu, nu))
        u_red, _, _ = reduce_to_cell(c.lat, u)
        v = u_red / (2 * c.lat.omega1)
        tau = c.lat.tau
        t0 = theta_eval(il, 0.0, tau, c.cfg)
        return (
            -(PI / (2 * c.lat.omega1))
            * t0**2
            * theta_eval(im_, v, tau, c.cfg)
            * theta_eval(in_, v, tau, c.cfg)
            / (theta_eval(il, v, tau, c.cfg) * theta_eval(0, v, tau, c.cfg))
        )

    _ev("delta_l2_eq8s")(delta_eq8s)

    for lam, mu, nu in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        _ev(f"eq4_prod_{lam}{mu}")(
            lambda c, u, a=lam, b=mu: c.d(a, u) * c.d(b, u)
        )
        _ev(f"wp_minus_e{nu}")(lambda c, u, k=nu: c.wp(u) - c.e(k))
    _ev("wp_prime")(lambda c, u: c.wpp(u))
    _ev("eq5_delta_prod")(lambda c, u: 2 * c.d(1, u) * c.d(2, u) * c.d(3, u))
    _ev("eq6_ratio")(lambda c, u: c.d(1, u, DeltaRoute.ZETA_DIFF) / c.d(2, u, DeltaRoute.ZETA_DIFF))
    _ev("eq6_sigma_ratio")(lambda c, u: (c.sl(2, u) / c.sl(1, u)) ** 2)
    _ev("eq6_lconst_1")(lambda c, u: c.d(1, u, DeltaRoute.ZETA_DIFF) * c.sl(1, u) ** 2)
    _ev("eq6_lconst_2")(lambda c, u: c.d(2, u, DeltaRoute.ZETA_DIFF) * c.sl(2, u) ** 2)
    _ev("eq6_dup_lhs")(
        lambda c, u: c.d(1, u, DeltaRoute.ZETA_DIFF) * c.sl(1, u) ** 2 * c.sig(u) ** 2
    )
    _ev("eq6_dup_sigma2u")(lambda c, u: -c.sig(2 * u) / 2)
    _ev("eq6_dup_wp")(lambda c, u: c.wpp(u) * c.sig(u) ** 4 / 2)

    # derivatives of the first kind
    _ev("ddelta_l1")(lambda c, u: c.dp(1, u))
    _ev("ddelta_l1_shift")(lambda c, u: c.wp(u) - c.wp(u + c.w(1)))

    def ddelta_form2(c, u):
        p = c.wp(u)
        ppp = 6 * p * p - c.lc.g2 / 2
        return 0.5 * (ppp - 4 * (p - c.e(2)) * (p - c.e(3))) / (p - c.e(1))

    _ev("ddelta_l1_form2")(ddelta_form2)
    _ev("eq9_lhs")(lambda c, u: c.dp(1, u) / c.d(1, u))
    _ev("eq9_rhs")(lambda c, u: c.zl(2, u) + c.zl(3, u) - c.zl(1, u) - c.zeta(u))
    _ev("eq10_lhs")(
        lambda c, u: 0.5 * c.dp(1, u) / c.d(1, u) + 0.5 * c.dp(2, u) / c.d(2, u)
    )
    _ev("eq11_lhs")(lambda c, u: (6 * c.wp(u) ** 2 - c.lc.g2 / 2) / c.wpp(u))
    _ev("eq11_delta_sum")(lambda c, u: c.d(1, u) + c.d(2, u) + c.d(3, u))
    _ev("eq11_duplication")(lambda c, u: 2 * c.zeta(2 * u) - 4 * c.zeta(u))

    # ---- second-kind differences ----------------------------------------------
    for lam, mu in ((1, 2), (2, 3), (3, 1)):
        _ev(f"delta2_{lam}{mu}_zetadiff")(
            lambda c, u, a=lam, b=mu: c.d2(a, b, u, DeltaRoute.ZETA_DIFF)
        )
        _ev(f"delta2_{lam}{mu}_eq20")(
            lambda c, u, a=lam, b=mu: c.d2(a, b, u, DeltaRoute.WP_QUOTIENT)
        )
        _ev(f"delta2_{lam}{mu}_sigma")(
            lambda c, u, a=lam, b=mu: c.d2(a, b, u, DeltaRoute.SIGMA_QUOTIENT)
        )
        _ev(f"delta2_{lam}{mu}_theta")(
            lambda c, u, a=lam, b=mu: c.d2(a, b, u, DeltaRoute.THETA_QUOTIENT)
        )

    # The eta terms follow from the definition zeta_lam = zeta(u + w_lam) -
    # eta_lam, and the quotient prefactor from subtracting two copies of the
    # single-index quotient form; both signs are checked by the cross routes.
    _ev("delta2_12_shiftdef")(
        lambda c, u: c.zeta(u + c.w(1)) - c.zeta(u + c.w(2)) + c.eta(2) - c.eta(1)
    )
    _ev("delta2_12_eq12")(
        lambda c, u: (c.e(1) - c.e(2))
        / 2
        * c.wpp(u)
        / ((c.wp(u) - c.e(1)) * (c.wp(u) - c.e(2)))
    )
    _ev("delta2_12_eq13")(
        lambda c, u: (c.e(2) - c.e(1)) * c.sl(3, u) * c.sig(u) / (c.sl(1, u) * c.sl(2, u))
    )
    _ev("eq14_lhs")(
        lambda c, u: c.d2(1, 2, u, DeltaRoute.ZETA_DIFF) * c.d(3, u)
    )
    _ev("const_e12")(lambda c, u: c.e(1) - c.e(2))
    _ev("eq15_lhs")(
        lambda c, u: c.d2(2, 3, u, DeltaRoute.ZETA_DIFF) * c.d(1, u)
    )
    _ev("const_e23")(lambda c, u: c.e(2) - c.e(3))
    _ev("eq16_lhs")(
        lambda c, u: (c.e(1) - c.e(3))
        * (c.e(2) - c.e(3))
        / (c.d2(1, 3, u) * c.d2(2, 3, u, DeltaRoute.SIGMA_QUOTIENT))
    )
    _ev("eq17_lhs")(
        lambda c, u: (c.d2(1, 3, u) / (c.e(1) - c.e(3)))
        * ((c.e(2) - c.e(3)) / c.d2(2, 3, u, DeltaRoute.SIGMA_QUOTIENT))
    )
    # Half-period differences three ways: the cached constants, the nullwerte
    # fourth powers, and the pointwise delta product (the genuinely
    # independent route for the registry entries).
    for lam, mu, nu in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
        _ev(f"const_e{lam}{mu}_nullwerte")(
            lambda c, u, k=nu: (PI / (2 * c.lat.omega1)) ** 2
            * theta_eval(HALF_PERIOD_THETA[k], 0.0, c.lat.tau, c.cfg) ** 4
        )
        _ev(f"eq18_prod_{lam}{mu}")(
            lambda c, u, a=lam, b=mu, k=nu: c.d2(a, b, u, DeltaRoute.ZETA_DIFF)
            * c.d(k, u, DeltaRoute.ZETA_DIFF)
        )
    _ev("const_e13")(lambda c, u: c.e(1) - c.e(3))

    _ev("sigid_12_lhs")(lambda c, u: c.sl(1, u) ** 2 + (c.e(1) - c.e(2)) * c.sig(u) ** 2)
    _ev("sigid_23_lhs")(lambda c, u: c.sl(2, u) ** 2 + (c.e(2) - c.e(3)) * c.sig(u) ** 2)

    _ev("ddelta2_12")(lambda c, u: c.d2p(1, 2, u))
    _ev("ddelta2_12_shift")(lambda c, u: c.wp(u + c.w(2)) - c.wp(u + c.w(1)))

    def ddelta2_form1(c, u):
        p = c.wp(u)
        return (c.e(1) - c.e(2)) * (
            (c.e(1) - c.e(3)) / (c.e(1) - p) + (c.e(2) - c.e(3)) / (c.e(2) - p) - 1
        )

    _ev("ddelta2_12_form1")(ddelta2_form1)

    # ---- two-point identities ---------------------------------------------------
    _ev("fs_lhs")(lambda c, z, w: c.wp(z) - c.wp(w))
    _ev("fs_rhs")(
        lambda c, z, w: c.sig(z + w) * c.sig(w - z) / (c.sig(z) ** 2 * c.sig(w) ** 2)
    )

    def w3term_lhs(c, u):
        a, b, cc = c.w(1), c.w(2), c.w(3)
        return c.sig(u + a) * c.sig(u - a) * c.sig(b + cc) * c.sig(b - cc) + c.sig(
            u + b
        ) * c.sig(u - b) * c.sig(cc + a) * c.sig(cc - a)

    def w3term_rhs(c, u):
        a, b, cc = c.w(1), c.w(2), c.w(3)
        return -c.sig(u + cc) * c.sig(u - cc) * c.sig(a + b) * c.sig(a - b)

    _ev("w3term_lhs")(w3term_lhs)
    _ev("w3term_rhs")(w3term_rhs)

    def w3term2_lhs(c, u, a):
        b, cc = c.w(2), c.w(3)
        return c.sig(u + a) * c.sig(u - a) * c.sig(b + cc) * c.sig(b - cc) + c.sig(
            u + b
        ) * c.sig(u - b) * c.sig(cc + a) * c.sig(cc - a)

    def w3term2_rhs(c, u, a):
        b, cc = c.w(2), c.w(3)
        return -c.sig(u + cc) * c.sig(u - cc) * c.sig(a + b) * c.sig(a - b)

    _ev("w3term2_lhs")(w3term2_lhs)
    _ev("w3term2_rhs")(w3term2_rhs)

    # ---- integral formulas, checked by differentiating the closed forms --------
    _ev("eq19a_delta")(lambda c, u: c.d(1, u, DeltaRoute.ZETA_DIFF))
    _ev("eq19a_fd")(
        lambda c, u: 0.5 * _fd_log(lambda x: c.wp(x) - c.e(1), u, c.fd_step())
    )
    _ev("eq19b_delta2")(lambda c, u: c.d2(1, 2, u, DeltaRoute.ZETA_DIFF))
    _ev("eq19b_fd")(
        lambda c, u: 0.5
        * _fd_log(lambda x: (c.wp(x) - c.e(1)) / (c.wp(x) - c.e(2)), u, c.fd_step())
    )
    _ev("eq19c_inv_delta")(lambda c, u: 1.0 / c.d(1, u, DeltaRoute.ZETA_DIFF))
    _ev("eq19c_fd")(
        lambda c, u: _fd_log(
            lambda x: (c.wp(x) - c.e(2)) / (c.wp(x) - c.e(3)), u, c.fd_step()
        )
        / (2 * (c.e(2) - c.e(3)))
    )
    _ev("eq19d_inv_delta2")(lambda c, u: 1.0 / c.d2(1, 2, u, DeltaRoute.ZETA_DIFF))
    _ev("eq19d_fd")(
        lambda c, u: _fd_log(lambda x: c.wp(x) - c.e(3), u, c.fd_step())
        / (2 * (c.e(1) - c.e(2)))
    )
    _ev("eq19e_wp_over_wpp")(lambda c, u: c.wp(u) / c.wpp(u))

    def eq19e_fd(c, u):
        h = c.fd_step()
        total = 0j
        for lam, mu in ((1, 2), (2, 3), (3, 1)):
            total += _fd_log(
                lambda x, a=lam, b=mu: (c.wp(x) - c.e(a)) / (c.wp(x) - c.e(b)), u, h
            ) / (12 * (c.e(lam) - c.e(mu)))
        return total

    _ev("eq19e_fd")(eq19e_fd)
    _ev("eq19f_inv_wpp")(lambda c, u: 1.0 / c.wpp(u))

    def eq19f_fd(c, u):
        h = c.fd_step()
        total = 0j
        for lam in (1, 2, 3):
            mu, nu = complement(lam)
            total += _fd_log(lambda x, a=lam: c.wp(x) - c.e(a), u, h) / (
                4 * (c.e(lam) - c.e(mu)) * (c.e(lam) - c.e(nu))
            )
        return total

    _ev("eq19f_fd")(eq19f_fd)

    # ---- Jacobi bridge -----------------------------------------------------------
    _ev("t211sq_ns_lhs")(lambda c, u: c.d(1, u, DeltaRoute.WP_QUOTIENT) * c.d(2, u, DeltaRoute.WP_QUOTIENT))
    _ev("t211sq_ns_rhs")(lambda c, u: (c.e(1) - c.e(3)) / c.snd(u)[0] ** 2)
    _ev("t211sq_ds_lhs")(lambda c, u: c.d(1, u, DeltaRoute.WP_QUOTIENT) * c.d(3, u, DeltaRoute.WP_QUOTIENT))
    _ev("t211sq_ds_rhs")(
        lambda c, u: (c.e(1) - c.e(3)) * (c.snd(u)[2] / c.snd(u)[0]) ** 2
    )
    _ev("t211sq_cs_lhs")(lambda c, u: c.d(2, u, DeltaRoute.WP_QUOTIENT) * c.d(3, u, DeltaRoute.WP_QUOTIENT))
    _ev("t211sq_cs_rhs")(
        lambda c, u: (c.e(1) - c.e(3)) * (c.snd(u)[1] / c.snd(u)[0]) ** 2
    )
    _ev("t211sq_snK_lhs")(lambda c, u: c.d(2, u, DeltaRoute.WP_QUOTIENT) / c.d(1, u, DeltaRoute.WP_QUOTIENT))
    _ev("t211sq_snK_rhs")(lambda c, u: (c.snd(u)[1] / c.snd(u)[2]) ** 2)
    _ev("t211sq_dn_lhs")(lambda c, u: c.d(3, u, DeltaRoute.WP_QUOTIENT) / c.d(2, u, DeltaRoute.WP_QUOTIENT))
    _ev("t211sq_dn_rhs")(lambda c, u: c.snd(u)[2] ** 2)
    _ev("t211sq_nc_lhs")(lambda c, u: c.d(1, u, DeltaRoute.WP_QUOTIENT) / c.d(3, u, DeltaRoute.WP_QUOTIENT))
    _ev("t211sq_nc_rhs")(lambda c, u: 1.0 / c.snd(u)[1] ** 2)

    # Jacobi-function members of the delta rows carry a minus sign relative
    # to the naive quotient: delta_lam ~ -1/u at the origin while the
    # sn/cn/dn quotients behave as +1/x there.
    _ev("c212_r1_delta")(lambda c, u: c.d(1, u, DeltaRoute.ZETA_DIFF))
    _ev("c212_r1_jac")(
        lambda c, u: -c.jp.scale * c.snd(u)[2] / (c.snd(u)[0] * c.snd(u)[1])
    )
    _ev("c212_r2_delta")(lambda c, u: c.d(2, u, DeltaRoute.ZETA_DIFF))
    _ev("c212_r2_jac")(
        lambda c, u: -c.jp.scale * c.snd(u)[1] / (c.snd(u)[2] * c.snd(u)[0])
    )
    _ev("c212_r3_delta")(lambda c, u: c.d(3, u, DeltaRoute.ZETA_DIFF))
    _ev("c212_r3_jac")(
        lambda c, u: -c.jp.scale * c.snd(u)[1] * c.snd(u)[2] / c.snd(u)[0]
    )

    _ev("ksq_const")(lambda c, u: c.lc.ksq)
    _ev("ksq_deltas")(
        lambda c, u: c.d(1, u) * c.d2(2, 3, u) / (c.d(2, u) * c.d2(1, 3, u))
    )
    _ev("kpsq_const")(lambda c, u: c.lc.kpsq)
    _ev("kpsq_deltas")(
        lambda c, u: c.d(3, u) * c.d2(1, 2, u) / (c.d(2, u) * c.d2(1, 3, u))
    )

    def t213_E_fd(c, u):
        s = c.jp.scale
        f = lambda x: (c.zl(3, x) + c.e(1) * x) / s
        return _fd(f, u, c.fd_step())

    _ev("t213_E_fd")(t213_E_fd)
    _ev("t213_E_rhs")(lambda c, u: c.jp.scale * c.snd(u)[2] ** 2)

    def t213_pi_lhs(c, u, a):
        return 0.5 * (c.zl(3, u - a) - c.zl(3, u + a)) + c.zl(3, a)

    def t213_pi_rhs(c, u, a):
        s = c.jp.scale
        sa, ca, da = c.snd(a)
        su, _, _ = c.snd(u)
        k2 = c.lc.ksq
        return s * k2 * sa * ca * da * su * su / (1 - k2 * sa * sa * su * su)

    _ev("t213_pi_lhs")(t213_pi_lhs)
    _ev("t213_pi_rhs")(t213_pi_rhs)


_register_all()


# ---------------------------------------------------------------------------
# Default suite
# ---------------------------------------------------------------------------

_ALL = ("0", "w1", "w2", "w3")


def default_suite() -> tuple[IdentitySpec, ...]:
    """The complete identity registry, one spec per displayed identity in scope."""
    specs: list[IdentitySpec] = []
    add = specs.append

    # Auxiliary zeta: four routes and the quasi-periodicity law.
    for lam in (1, 2, 3):
        excl = (f"w{lam}",)
        add(IdentitySpec(f"prop24_theta_route_zeta{lam}", f"zeta{lam}_theta", f"zeta{lam}_shift", exclusions=excl))
        add(IdentitySpec(f"prop23_exp_form_zeta{lam}", f"zeta{lam}_qexp", f"zeta{lam}_shift", exclusions=excl))
        add(IdentitySpec(f"prop23_cos_form_zeta{lam}", f"zeta{lam}_qcos", f"zeta{lam}_qexp", exclusions=excl))
        add(IdentitySpec(
            f"prop22_partialfrac_zeta{lam}", f"zeta{lam}_pf", f"zeta{lam}_shift",
            tol=PARTIALFRAC_TOL, exclusions=excl,
        ))
    for lam, lp in ((1, 1), (2, 3), (3, 2)):
        add(IdentitySpec(
            f"def21_quasiperiod_z{lam}_w{lp}", f"zeta{lam}_quasi_w{lp}", f"const_2eta{lp}_{lam}",
            exclusions=(f"w{lam}",),
        ))
    add(IdentitySpec("def21_quasiperiod_z1_combined", "zeta1_quasi_w1w3", "const_2eta1_plus_2eta3", exclusions=("w1",)))

    # Auxiliary sigma: theta form vs half-period shift form (both sides of eq 1/2).
    for lam in (1, 2, 3):
        add(IdentitySpec(f"eq2_sigma_aux_theta_vs_shift_s{lam}", f"sigma{lam}_theta", f"sigma{lam}_shiftform"))

    # Classical core sanity: parity, differential equation, route independence.
    add(IdentitySpec("wp_even", "wp_neg", "wp", exclusions=("0",)))
    add(IdentitySpec("zeta_odd", "zeta_odd", "zeta", exclusions=("0",)))
    add(IdentitySpec("wp_lambda_independence_2", "wp_via_s2", "wp", exclusions=("0",)))
    add(IdentitySpec("wp_lambda_independence_3", "wp_via_s3", "wp", exclusions=("0",)))
    add(IdentitySpec("wp_diffeq_invariants", "wp_prime_sq", "wp_cubic", exclusions=("0",)))
    add(IdentitySpec("wp_diffeq_factored", "wp_prime_sq", "wp_factored", exclusions=("0",)))

    # First-kind differences: quotient, sigma, and theta-product forms.
    add(IdentitySpec("eq3_delta1_wp_quotient", "delta_l1_zetadiff", "delta_l1_wp", exclusions=("0", "w1")))
    add(IdentitySpec("thm26_delta1_sigma_quotient", "delta_l1_zetadiff", "delta_l1_sigma", exclusions=("0", "w1")))
    add(IdentitySpec("thm26_delta1_sigma_4factor", "delta_l1_zetadiff", "delta_l1_sigma4", exclusions=("0", "w1")))
    add(IdentitySpec("eq7_delta1_theta_dlog", "delta_l1_zetadiff", "delta_l1_eq7", exclusions=("0", "w1")))
    add(IdentitySpec("eq8_delta1_theta_product", "delta_l1_zetadiff", "delta_l1_theta", exclusions=("0", "w1")))
    add(IdentitySpec("eq8_simplified_delta2", "delta_l2_zetadiff", "delta_l2_eq8s", exclusions=("0", "w2")))
    add(IdentitySpec("thm26_delta3_sigma_quotient", "delta_l3_zetadiff", "delta_l3_sigma", exclusions=("0", "w3")))
    for lam, mu, nu in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        add(IdentitySpec(
            f"eq4_delta_product_{lam}{mu}", f"eq4_prod_{lam}{mu}", f"wp_minus_e{nu}", exclusions=_ALL,
        ))
    add(IdentitySpec("eq5_wp_prime_triple_product", "wp_prime", "eq5_delta_prod", exclusions=_ALL))
    add(IdentitySpec("eq6_delta_ratio_sigma", "eq6_ratio", "eq6_sigma_ratio", exclusions=_ALL))
    add(IdentitySpec("eq6_lambda_constancy", "eq6_lconst_1", "eq6_lconst_2", exclusions=_ALL))
    add(IdentitySpec("eq6_duplication_sigma2u", "eq6_dup_lhs", "eq6_dup_sigma2u", exclusions=("0", "w1")))
    add(IdentitySpec("eq6_duplication_wp_prime", "eq6_dup_lhs", "eq6_dup_wp", exclusions=("0", "w1")))

    # Derivative closed forms and the log-derivative identities.
    add(IdentitySpec("thm27_delta1_prime_shift", "ddelta_l1", "ddelta_l1_shift", exclusions=("0", "w1")))
    add(IdentitySpec("thm27_delta1_prime_wpp_form", "ddelta_l1", "ddelta_l1_form2", exclusions=("0", "w1")))
    add(IdentitySpec("eq9_dlog_delta1", "eq9_lhs", "eq9_rhs", exclusions=_ALL))
    add(IdentitySpec("eq10_dlog_pair", "eq10_lhs", "delta_l3_zetadiff", exclusions=_ALL))
    add(IdentitySpec("eq11_wpp_ratio_delta_sum", "eq11_lhs", "eq11_delta_sum", exclusions=_ALL))
    add(IdentitySpec("eq11_duplication_2zeta2u", "eq11_delta_sum", "eq11_duplication", exclusions=_ALL))

    # Second-kind differences: definition, quotient, sigma, and theta forms.
    add(IdentitySpec("def28_delta2_shift_form", "delta2_12_zetadiff", "delta2_12_shiftdef", exclusions=("w1", "w2")))
    add(IdentitySpec("eq12_delta2_wp_quotient", "delta2_12_zetadiff", "delta2_12_eq12", exclusions=("0", "w1", "w2")))
    add(IdentitySpec("eq20_delta2_wp_quotient", "delta2_12_zetadiff", "delta2_12_eq20", exclusions=_ALL))
    add(IdentitySpec("thm29_delta2_sigma_quotient", "delta2_12_zetadiff", "delta2_12_sigma", exclusions=("w1", "w2")))
    add(IdentitySpec("eq13_delta2_branch_convention", "delta2_12_zetadiff", "delta2_12_eq13", exclusions=("w1", "w2")))
    add(IdentitySpec("eq8_delta2_theta_simplified", "delta2_12_zetadiff", "delta2_12_theta", exclusions=("w1", "w2")))
    add(IdentitySpec("eq14_delta2_times_delta_constant", "eq14_lhs", "const_e12", exclusions=_ALL))
    add(IdentitySpec("eq15_delta2_times_delta_perm", "eq15_lhs", "const_e23", exclusions=_ALL))
    add(IdentitySpec("eq16_wp_from_delta2", "eq16_lhs", "wp_minus_e3", exclusions=_ALL))
    add(IdentitySpec("eq17_sigma_ratio_from_delta2", "eq17_lhs", "eq6_sigma_ratio", exclusions=_ALL))
    for lam, mu in ((1, 2), (1, 3), (2, 3)):
        add(IdentitySpec(
            f"eq18_ediff_nullwerte_{lam}{mu}", f"eq18_prod_{lam}{mu}", f"const_e{lam}{mu}_nullwerte",
            exclusions=_ALL,
        ))
    add(IdentitySpec("sigma_identity_12", "sigid_12_lhs", "sigma2_sq", exclusions=()))
    add(IdentitySpec("sigma_identity_23", "sigid_23_lhs", "sigma3_sq", exclusions=()))
    add(IdentitySpec("thm210_delta2_prime_shift", "ddelta2_12", "ddelta2_12_shift", exclusions=("w1", "w2")))
    add(IdentitySpec("thm210_delta2_prime_epole_form", "ddelta2_12", "ddelta2_12_form1", exclusions=("0", "w1", "w2")))

    # Two-point identities.
    add(IdentitySpec("frobenius_stickelberger", "fs_lhs", "fs_rhs", arity=2, exclusions=("0",)))
    add(IdentitySpec("weierstrass_3term_half_periods", "w3term_lhs", "w3term_rhs"))
    add(IdentitySpec("weierstrass_3term_two_point", "w3term2_lhs", "w3term2_rhs", arity=2))

    # Integral formulas: finite differences of the log closed forms.
    add(IdentitySpec("eq19_log_delta", "eq19a_delta", "eq19a_fd", tol=FD_TOL, exclusions=_ALL))
    add(IdentitySpec("eq19_log_delta2", "eq19b_delta2", "eq19b_fd", tol=FD_TOL, exclusions=_ALL))
    add(IdentitySpec("eq19_inv_delta", "eq19c_inv_delta", "eq19c_fd", tol=FD_TOL, exclusions=_ALL))
    add(IdentitySpec("eq19_inv_delta2", "eq19d_inv_delta2", "eq19d_fd", tol=FD_TOL, exclusions=_ALL))
    add(IdentitySpec("eq19_wp_over_wp_prime", "eq19e_wp_over_wpp", "eq19e_fd", tol=FD_TOL, exclusions=_ALL))
    add(IdentitySpec("eq19_inv_wp_prime", "eq19f_inv_wpp", "eq19f_fd", tol=FD_TOL, exclusions=_ALL))

    # Jacobi bridge: squared transformation rows, delta-to-Jacobi rows, moduli.
    for row in ("ns", "ds", "cs", "snK", "dn", "nc"):
        add(IdentitySpec(f"thm211_squared_{row}", f"t211sq_{row}_lhs", f"t211sq_{row}_rhs", exclusions=_ALL))
    for row in ("r1", "r2", "r3"):
        add(IdentitySpec(f"cor212_row_{row}", f"c212_{row}_delta", f"c212_{row}_jac", exclusions=_ALL))
    add(IdentitySpec("modulus_ksq_from_deltas", "ksq_deltas", "ksq_const", exclusions=_ALL))
    add(IdentitySpec("modulus_kpsq_from_deltas", "kpsq_deltas", "kpsq_const", exclusions=_ALL))
    add(IdentitySpec("thm213_E_derivative", "t213_E_fd", "t213_E_rhs", tol=FD_TOL, exclusions=("w3",)))
    add(IdentitySpec(
        "thm213_Pi_integrand", "t213_pi_lhs", "t213_pi_rhs",
        arity=2, exclusions=("w3", "sum:w3", "diff:w3"),
    ))

    return tuple(specs)


# ---------------------------------------------------------------------------
# Suite runner
# ---------------------------------------------------------------------------


def _exclusion_offsets(lat: Lattice, tokens) -> tuple[list[complex], list[tuple[int, complex]]]:
    """Split exclusion tokens into per-point loci and pair (sign, locus) pairs."""
    table = {"0": 0j, "w1": lat.omega1, "w2": lat.omega2, "w3": lat.omega3}
    single: list[complex] = []
    pair: list[tuple[int, complex]] = []
    for tok in tokens:
        if tok in table:
            single.append(table[tok])
        elif tok.startswith("sum:"):
            pair.append((+1, table[tok[4:]]))
        elif tok.startswith("diff:"):
            pair.append((-1, table[tok[5:]]))
        else:
            raise SuiteConfigError(f"unknown exclusion token {tok!r}")
    return single, pair


def _sample_points(lat: Lattice, rng: random.Random, arity: int, single, pair):
    guard = POLE_GUARD * lat.min_period
    for _ in range(10_000):
        pts = []
        for _ in range(arity):
            a, b = rng.random(), rng.random()
            pts.append(2 * a * lat.omega1 + 2 * b * lat.omega3)
        ok = all(
            nearest_translate(lat, p, off)[0] >= guard for p in pts for off in single
        )
        if ok and arity == 2 and pair:
            z, w = pts
            ok = all(
                nearest_translate(lat, z + sign * w, off)[0] >= guard for sign, off in pair
            )
        if ok:
            return pts
    raise SuiteConfigError("could not sample a guarded point after 10000 tries")


def run_suite(
    lat: Lattice,
    suite,
    n: int = 100,
    seed: int = 0,
    cfg: SeriesConfig = DEFAULT_CONFIG,
) -> list[IdentityReport]:
    """Evaluate every identity at n guarded sample points; deterministic in seed."""
    if n < 1:
        raise SuiteConfigError("n must be >= 1")
    ctx = _Ctx(lat, cfg)
    reports = []
    for index, spec in enumerate(suite):
        try:
            lhs = EVALUATORS[spec.lhs]
        except KeyError:
            raise SuiteConfigError(f"{spec.name}: unknown evaluator {spec.lhs!r}") from None
        try:
            rhs = EVALUATORS[spec.rhs]
        except KeyError:
            raise SuiteConfigError(f"{spec.name}: unknown evaluator {spec.rhs!r}") from None
        if spec.arity not in (1, 2):
            raise SuiteConfigError(f"{spec.name}: arity must be 1 or 2")
        single, pair = _exclusion_offsets(lat, spec.exclusions)
        rng = random.Random(seed * 1_000_003 + index)
        residuals = []
        failures = []
        for _ in range(n):
            pts = _sample_points(lat, rng, spec.arity, single, pair)
            a = lhs(ctx, *pts)
            b = rhs(ctx, *pts)
            rel = abs(a - b) / max(abs(a), abs(b), RESIDUAL_FLOOR)
            residuals.append(rel)
            if rel > spec.tol:
                failures.append((tuple(pts), rel))
        max_rel = max(residuals)
        mean_rel = sum(residuals) / len(residuals)
        reports.append(
            IdentityReport(
                name=spec.name,
                samples=n,
                max_rel=max_rel,
                mean_rel=mean_rel,
                failures=tuple(failures),
                passed=not failures,
            )
        )
    return reports


def report_to_json(report: IdentityReport) -> dict:
    failures = []
    for pts, rel in report.failures:
        entry = {"point": [pts[0].real, pts[0].imag], "residual": rel}
        if len(pts) > 1:
            entry["point2"] = [pts[1].real, pts[1].imag]
        failures.append(entry)
    return {
        "name": report.name,
        "samples": report.samples,
        "maxRel": report.max_rel,
        "meanRel": report.mean_rel,
        "passed": report.passed,
        "failures": failures,
    }


def reports_to_json(reports) -> list[dict]:
    return [report_to_json(r) for r in reports]
