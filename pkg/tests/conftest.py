"""Shared fixtures: reference lattices and guarded sampling."""

from __future__ import annotations

import random

import pytest

from weierzeta import build_lattice
from weierzeta.lattice import nearest_translate

REFERENCE_TAUS = {
    "square": 1j,
    "rect": 2j,
    "rhombic": 0.5 + 0.8660254037844386j,
    "generic": 0.3 + 1.1j,
    "tall": 0.1 + 3j,
}

RECTANGULAR = ("square", "rect")


def make_lattice(name: str):
    tau = REFERENCE_TAUS[name]
    return build_lattice(0.5, 0.5 * tau)


@pytest.fixture(scope="session")
def lattices():
    return {name: make_lattice(name) for name in REFERENCE_TAUS}


@pytest.fixture
def generic_lat():
    return make_lattice("generic")


@pytest.fixture
def square_lat():
    return make_lattice("square")


def guarded_points(lat, rng: random.Random, n: int, guard: float = 0.05, offsets=None):
    """n points in the fundamental cell at least guard*min_period from the
    given cosets (all four half-period classes by default)."""
    if offsets is None:
        offsets = (0j, lat.omega1, lat.omega2, lat.omega3)
    pts = []
    while len(pts) < n:
        a, b = rng.random(), rng.random()
        u = 2 * a * lat.omega1 + 2 * b * lat.omega3
        if all(nearest_translate(lat, u, off)[0] >= guard * lat.min_period for off in offsets):
            pts.append(u)
    return pts
