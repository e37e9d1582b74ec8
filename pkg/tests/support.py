"""Shared helpers for the test suite: example systems and samplers."""

from __future__ import annotations

import random

from digsys import Fp, FpPoly, GaussianInt, Poly, Z, ZI, parse_poly, validate_system

F2 = Fp(2)
F3 = Fp(3)


def example1():
    """Integers, P = 3x^2 - 2x + 5, digits {0..4}."""
    return validate_system(Z, parse_poly(Z, "3x^2-2x+5"), range(5))


def example1_symmetric():
    """Same base with digits {-2..2}."""
    return validate_system(Z, parse_poly(Z, "3x^2-2x+5"), range(-2, 3))


def example2():
    """F2[y], P = (y+1)x^2 + yx + (y^2+1), digits {1, y, y+1, y^3+y}."""
    digits = [F2.parse(t) for t in ("1", "y", "y+1", "y^3+y")]
    return validate_system(F2, parse_poly(F2, "(y+1)x^2+y*x+(y^2+1)"), digits)


def gauss_example():
    """Gaussian integers, P = (1+i)x + (1+2i), digits {0..4}."""
    return validate_system(ZI, parse_poly(ZI, "(1+i)x+(1+2i)"), range(5))


def gauss_paper_witnesses(system):
    """The displayed 13-element witness set {0, +-1+-i, +-2, +-(3-i),
    +-(4-2i), +-(2-2i)}."""
    pts = [(0, 0)]
    for a, b in [(1, 1), (1, -1), (2, 0), (3, -1), (4, -2), (2, -2)]:
        pts.append((a, b))
        pts.append((-a, -b))
    return {system.qring.from_const(GaussianInt(a, b)) for a, b in pts}


def rand_ring_elem(rng: random.Random, ring, size: int = 20):
    if ring == Z:
        return rng.randint(-size, size)
    if ring == ZI:
        return GaussianInt(rng.randint(-size, size), rng.randint(-size, size))
    return FpPoly.make(ring.p, [rng.randrange(ring.p) for _ in range(rng.randint(0, 4))])


def rand_poly(rng: random.Random, ring, max_degree: int, size: int = 20) -> Poly:
    deg = rng.randint(0, max_degree)
    return Poly.make(ring, [rand_ring_elem(rng, ring, size) for _ in range(deg + 1)])


def rand_quot(rng: random.Random, system, extra_degree: int = 3, size: int = 20):
    f = rand_poly(rng, system.ring, system.qring.d + extra_degree, size)
    return system.qring.normalize(f)


def rand_ff_modulus(rng: random.Random, ring, max_dx: int = 3, max_dy: int = 3) -> Poly:
    """Random base polynomial over F_p[y]: deg_x in [1, max_dx], every
    coefficient of y-degree <= max_dy, p0 a non-unit and p_d nonzero."""

    def rand_c(min_len=0, max_len=max_dy + 1):
        return FpPoly.make(
            ring.p, [rng.randrange(ring.p) for _ in range(rng.randint(min_len, max_len))]
        )

    d = rng.randint(1, max_dx)
    p0 = rand_c(2)
    while p0.degree < 1:
        p0 = rand_c(2)
    coeffs = [p0]
    for _ in range(d - 1):
        coeffs.append(rand_c())
    lead = rand_c(1)
    while not lead:
        lead = rand_c(1)
    coeffs.append(lead)
    return Poly.make(ring, coeffs)
