"""Shared independent oracles for the test suite.

These recompute expected values from first principles (analytic operator
definitions, lattice enumeration, numeric evaluation) through code paths
disjoint from the library internals they check.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from nhmf.pi_scalar import PiScalar
from nhmf.series import NearlyHolomorphicForm

# Analytic ingredients, as PiScalar identities:
#   1/y = 4*pi*X,   dX/dz = 2*pi*i*X^2,   dX/dzbar = -2*pi*i*X^2,
#   d(q^n)/dz = 2*pi*i*n*q^n,   y^2 X^2 = 1/(16*pi^2).
FOUR_PI = PiScalar.pi_power(1, 4)
TWO_PI_I = PiScalar.pi_power(1, 0, 2)
TWO_I = PiScalar.gaussian(0, 2)


def oracle_raise(f: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Apply R_k = k/y + 2i d/dz term by term, then divide by -4*pi."""
    k = f.weight
    acc: dict[tuple[int, int], PiScalar] = {}

    def add(key, scalar):
        acc[key] = acc.get(key, PiScalar.zero()) + scalar

    for (r, n), c in f.terms():
        coeff = PiScalar.rational(c)
        # (k/y) X^r q^n = 4*pi*k X^(r+1) q^n
        add((r + 1, n), FOUR_PI * PiScalar.rational(k) * coeff)
        # 2i * r X^(r-1) (dX/dz) q^n = 2i * 2*pi*i * r X^(r+1) q^n
        if r:
            add((r + 1, n), TWO_I * TWO_PI_I * PiScalar.rational(r) * coeff)
        # 2i * X^r * 2*pi*i*n q^n
        if n:
            add((r, n), TWO_I * TWO_PI_I * PiScalar.rational(n) * coeff)
    inv = PiScalar.pi_power(1, -4).invert()  # 1 / (-4*pi)
    out = {}
    for key, scalar in acc.items():
        value = (scalar * inv).as_fraction()  # must land back in Q
        if value:
            out[key] = value
    return NearlyHolomorphicForm(k + 2 if out else None, f.truncation, out)


def oracle_lower(f: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Apply L_k = -2i y^2 d/dzbar term by term, then divide by -1/(4*pi)."""
    acc: dict[tuple[int, int], PiScalar] = {}
    minus_two_i = PiScalar.gaussian(0, -2)
    minus_two_pi_i = PiScalar.pi_power(1, 0, -2)
    inv_16_pi2 = PiScalar.pi_power(-2, Fraction(1, 16))  # y^2 X^2
    for (r, n), c in f.terms():
        if not r:
            continue  # q^n is anti-holomorphic-constant
        # -2i y^2 r X^(r-1) (dX/dzbar) q^n = -2i * -2*pi*i * r (y^2 X^2) X^(r-1) q^n
        scalar = (
            minus_two_i
            * minus_two_pi_i
            * PiScalar.rational(r * c)
            * inv_16_pi2
        )
        key = (r - 1, n)
        acc[key] = acc.get(key, PiScalar.zero()) + scalar
    inv = PiScalar.pi_power(-1, Fraction(-1, 4)).invert()  # 1 / (-1/(4*pi))
    out = {}
    for key, scalar in acc.items():
        value = (scalar * inv).as_fraction()
        if value:
            out[key] = value
    weight = f.weight - 2 if out else None
    return NearlyHolomorphicForm(weight, f.truncation, out)


def brute_divisor_sum(n: int, e: int) -> int:
    return sum(d**e for d in range(1, n + 1) if n % d == 0)


def brute_theta_counts(a: int, b: int, c: int, n_max: int) -> list[int]:
    """Representation numbers by scanning the full |x|, |y| <= n_max box."""
    counts = [0] * (n_max + 1)
    box = n_max  # crude but safely contains {Q <= n_max} for the forms tested
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            v = a * x * x + b * x * y + c * y * y
            if 0 <= v <= n_max:
                counts[v] += 1
    return counts


def mpf_of(x: Fraction):
    import mpmath

    x = Fraction(x)
    return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)


def pi_scalar_to_complex(scalar: PiScalar):
    import mpmath

    total = mpmath.mpc(0)
    for e, (re, im) in scalar.terms():
        total += mpmath.mpc(mpf_of(re), mpf_of(im)) * mpmath.pi ** mpf_of(e)
    return total


def assert_laurent_matches_numeric(germ, func, rel_tol=1e-4, eps=1e-6):
    """Check func(s0 + eps) against leading * eps^order within rel_tol."""
    import mpmath

    mpmath.mp.dps = 40
    s = mpf_of(germ.point) + mpmath.mpf(eps)
    got = func(s)
    want = pi_scalar_to_complex(germ.leading) * mpmath.mpf(eps) ** germ.order
    assert abs(got - want) <= rel_tol * abs(want), (germ, got, want)


@pytest.fixture(scope="session")
def mp():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    return mpmath
