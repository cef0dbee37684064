"""The sl2 operator algebra on nearly holomorphic forms.

In X-coordinates the weight-raising and weight-lowering operators act by
integer monomial rules, extended linearly:

    raise_weight  (delta_k):  X^r q^n  ->  n X^r q^n + (r - k) X^(r+1) q^n
    lower_weight  (Lambda):   X^r q^n  ->  r X^(r-1) q^n

These are the rational-preserving normalizations.  The analytic operators

    R_k = k/y + 2i d/dz,      L_k = -2i y^2 d/dzbar

are exact scalar multiples:  R_k = -4*pi * delta_k  and  L_k = -1/(4*pi) * Lambda,
exposed through :func:`raise_analytic` / :func:`lower_analytic` which return a
PiScalar-times-form pair.

The Casimir element is normalized so a highest weight vector of weight w has
eigenvalue w^2 - 2w, which is invariant under the orbit w -> 2 - w; this is
what makes :class:`InfinitesimalCharacter` well defined.

All four operations reject nothing except genuinely malformed input: the zero
form (weight "any") maps to zero.  Sums across distinct weights cannot even be
represented here, so weight-indefinite input is impossible by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import NonEigenformError, NonRationalCharacterError
from .pi_scalar import MINUS_FOUR_PI, MINUS_INV_FOUR_PI, PiScalar
from .series import NearlyHolomorphicForm


def raise_weight(f: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """delta_k: weight k -> k + 2, preserving rational coefficients."""
    if f.is_zero:
        return f
    k = f.weight
    merged: dict[tuple[int, int], Fraction] = {}
    for (r, n), c in f.terms():
        if n:
            key = (r, n)
            merged[key] = merged.get(key, Fraction(0)) + n * c
        if r != k:
            key = (r + 1, n)
            merged[key] = merged.get(key, Fraction(0)) + (r - k) * c
    return NearlyHolomorphicForm(k + 2 if merged else None, f.truncation, merged)


def lower_weight(f: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Lambda: weight k -> k - 2; annihilates exactly the holomorphic forms."""
    if f.is_zero:
        return f
    merged = {(r - 1, n): r * c for (r, n), c in f.terms() if r}
    return NearlyHolomorphicForm(f.weight - 2 if merged else None, f.truncation, merged)


class ScaledForm(NamedTuple):
    """A PiScalar multiple of a form: the value is scalar * form."""

    scalar: PiScalar
    form: NearlyHolomorphicForm


def raise_analytic(f: NearlyHolomorphicForm) -> ScaledForm:
    """R_k f = (k/y + 2i d/dz) f, returned as (-4*pi) times the rational image."""
    return ScaledForm(MINUS_FOUR_PI, raise_weight(f))


def lower_analytic(f: NearlyHolomorphicForm) -> ScaledForm:
    """L_k f = -2i y^2 (d/dzbar) f, returned as (-1/(4*pi)) times the rational image."""
    return ScaledForm(MINUS_INV_FOUR_PI, lower_weight(f))


def casimir(f: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """(k^2 - 2k) f + 4 delta_(k-2) Lambda f; commutes with raising and lowering."""
    if f.is_zero:
        return f
    k = f.weight
    return f * Fraction(k * k - 2 * k) + raise_weight(lower_weight(f)) * 4


@dataclass(frozen=True)
class InfinitesimalCharacter:
    """The character chi_lambda, stored by its orbit representative.

    chi_lambda = chi_mu iff mu in {lambda, 2 - lambda}; the representative is
    the orbit maximum, so lam >= 1 always.
    """

    lam: Fraction
    integral: bool

    @classmethod
    def of(cls, lam) -> "InfinitesimalCharacter":
        lam = Fraction(lam)
        rep = max(lam, 2 - lam)
        return cls(rep, rep.denominator == 1)

    @property
    def orbit(self) -> tuple[Fraction, Fraction]:
        return (self.lam, 2 - self.lam)

    def __repr__(self):
        return f"chi_{self.lam}"


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    rn = math.isqrt(c.numerator)
    rd = math.isqrt(c.denominator)
    if rn * rn == c.numerator and rd * rd == c.denominator:
        return Fraction(rn, rd)
    return None


def casimir_eigenvalue(f: NearlyHolomorphicForm) -> Fraction:
    """The scalar c with casimir(f) = c*f; NonEigenformError otherwise."""
    if f.is_zero:
        raise NonEigenformError("zero form has no eigenvalue")
    cf = casimir(f)
    (r, n), lead = f.terms()[0]
    c = cf.coefficient(r, n) / lead if not cf.is_zero else Fraction(0)
    residual = cf - f * c
    if not residual.is_zero:
        raise NonEigenformError("form is not a Casimir eigenvector", residual=residual)
    return c


def infinitesimal_character(f: NearlyHolomorphicForm) -> InfinitesimalCharacter:
    """Solve lam^2 - 2*lam = eigenvalue and return the orbit representative."""
    c = casimir_eigenvalue(f)
    root = _rational_sqrt(1 + c)
    if root is None:
        raise NonRationalCharacterError(
            f"Casimir eigenvalue {c} has no rational character parameter",
            eigenvalue=c,
        )
    return InfinitesimalCharacter.of(1 + root)
