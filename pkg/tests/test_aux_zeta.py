"""Auxiliary zeta functions: four routes, quasi-periodicity, q-series forms."""

import random

import pytest

from weierzeta import (
    Status,
    ZetaRoute,
    constants,
    wp,
    zeta_aux,
    zeta_aux_quasiperiod_check,
)

from conftest import REFERENCE_TAUS, guarded_points, make_lattice


@pytest.mark.parametrize("lam", [1, 2, 3])
@pytest.mark.parametrize("route", list(ZetaRoute))
def test_origin_is_a_regular_root(lam, route):
    lat = make_lattice("generic")
    res = zeta_aux(lat, lam, 0.0, route)
    assert res.status is Status.FINITE
    assert abs(res.value) < 1e-11


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_oddness(lam):
    lat = make_lattice("generic")
    for u in (0.21 + 0.13j, -0.05 + 0.44j):
        a = zeta_aux(lat, lam, u).value
        b = zeta_aux(lat, lam, -u).value
        assert abs(a + b) <= 1e-11 * max(abs(a), 1.0)


def test_lattice_points_are_regular_with_quasi_period_values():
    lat = make_lattice("generic")
    lc = constants(lat)
    res = zeta_aux(lat, 2, 2 * lat.omega1 + 4 * lat.omega3)
    assert res.status is Status.FINITE
    assert abs(res.value - (2 * lc.eta1 + 4 * lc.eta3)) < 1e-11


def test_pole_status_on_shifted_coset():
    lat = make_lattice("generic")
    res = zeta_aux(lat, 1, lat.omega1)
    assert res.status is Status.AT_POLE
    assert res.pole == lat.omega1
    near = zeta_aux(lat, 3, lat.omega3 + 1e-10)
    assert near.status is Status.NEAR_POLE


def test_cross_route_agreement_generic_lattice():
    lat = make_lattice("generic")
    rng = random.Random(9)
    for lam in (1, 2, 3):
        pts = guarded_points(lat, rng, 50, guard=0.03, offsets=(lat.half_period(lam),))
        for u in pts:
            sh = zeta_aux(lat, lam, u, ZetaRoute.SHIFT).value
            th = zeta_aux(lat, lam, u, ZetaRoute.THETA).value
            qe = zeta_aux(lat, lam, u, ZetaRoute.QSERIES).value
            scale = max(abs(sh), 1e-30)
            assert abs(sh - th) <= 1e-10 * scale
            assert abs(sh - qe) <= 1e-10 * scale
            assert abs(th - qe) <= 1e-10 * scale
    # Partial fractions carry the truncated-tail error budget.
    for lam in (1, 2, 3):
        for u in guarded_points(lat, rng, 5, guard=0.03, offsets=(lat.half_period(lam),)):
            sh = zeta_aux(lat, lam, u, ZetaRoute.SHIFT).value
            pf = zeta_aux(lat, lam, u, ZetaRoute.PARTIAL_FRACTION).value
            assert abs(sh - pf) <= 1e-5 * max(abs(sh), 1.0)


def test_cosine_and_exponential_forms_agree():
    lat = make_lattice("generic")
    rng = random.Random(13)
    for lam in (1, 2, 3):
        for u in guarded_points(lat, rng, 20, guard=0.03, offsets=(lat.half_period(lam),)):
            qe = zeta_aux(lat, lam, u, ZetaRoute.QSERIES, qseries_form="exp").value
            qc = zeta_aux(lat, lam, u, ZetaRoute.QSERIES, qseries_form="cos").value
            assert abs(qe - qc) <= 1e-12 * max(abs(qe), 1.0)


@pytest.mark.parametrize("pair", [(1, 1), (2, 3), (3, 1), (1, 2)])
def test_quasi_period_residuals(pair):
    lam, lp = pair
    lat = make_lattice("generic")
    rng = random.Random(19)
    for u in guarded_points(lat, rng, 8, guard=0.03, offsets=(lat.half_period(lam),)):
        assert abs(zeta_aux_quasiperiod_check(lat, lam, lp, u)) <= 1e-10


def test_combined_shift_additivity():
    lat = make_lattice("generic")
    lc = constants(lat)
    rng = random.Random(21)
    for u in guarded_points(lat, rng, 8, guard=0.03, offsets=(lat.omega1,)):
        a = zeta_aux(lat, 1, u + 2 * lat.omega1 + 2 * lat.omega3).value
        b = zeta_aux(lat, 1, u).value
        assert abs(a - b - 2 * lc.eta1 - 2 * lc.eta3) <= 2e-10


def test_not_elliptic():
    lat = make_lattice("generic")
    lc = constants(lat)
    assert abs(lc.eta1) > 1e-3
    u = 0.11 + 0.06j
    jump = zeta_aux(lat, 1, u + 2 * lat.omega1).value - zeta_aux(lat, 1, u).value
    assert abs(jump) > 1e-3


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_derivative_is_minus_shifted_wp(lam):
    lat = make_lattice("generic")
    rng = random.Random(29)
    h = 1e-5
    for u in guarded_points(lat, rng, 6, guard=0.15):
        fd = (
            zeta_aux(lat, lam, u + h).value - zeta_aux(lat, lam, u - h).value
        ) / (2 * h)
        assert abs(fd + wp(lat, u + lat.half_period(lam)).value) < 1e-6


@pytest.mark.parametrize("name", sorted(REFERENCE_TAUS))
def test_routes_on_all_reference_lattices(name):
    lat = make_lattice(name)
    rng = random.Random(33)
    for lam in (1, 2, 3):
        for u in guarded_points(lat, rng, 8, guard=0.03, offsets=(lat.half_period(lam),)):
            sh = zeta_aux(lat, lam, u, ZetaRoute.SHIFT).value
            th = zeta_aux(lat, lam, u, ZetaRoute.THETA).value
            qe = zeta_aux(lat, lam, u, ZetaRoute.QSERIES).value
            scale = max(abs(sh), 1e-30)
            assert abs(sh - th) <= 1e-10 * scale
            assert abs(sh - qe) <= 1e-10 * scale


def test_bad_index_rejected():
    lat = make_lattice("square")
    with pytest.raises(ValueError):
        zeta_aux(lat, 0, 0.1)


def test_qseries_divergence_with_tiny_budget():
    import math

    from weierzeta import SeriesConfig, build_lattice
    from weierzeta.errors import SeriesDivergence

    # |q| = 0.85 decays slowly; a 6-term budget cannot converge.
    tau = 1j * (-math.log(0.85) / math.pi)
    lat = build_lattice(0.5, 0.5 * tau)
    cfg = SeriesConfig(abs_tol=1e-15, rel_tol=0.0, max_terms=6)
    with pytest.raises(SeriesDivergence):
        zeta_aux(lat, 2, 0.2 + 0.001j, ZetaRoute.QSERIES, cfg)
