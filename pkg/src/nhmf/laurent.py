"""Leading-term Laurent analysis of Eisenstein constant terms at special points.

The intertwined part of the constant term of a weight-ell Eisenstein section
factors, at the identity and in the unramified-outside-S normalization, as

    archimedean_factor(s, ell, d) * L^S(s, mu)/L^S(s+1, mu) * (local factors),

with the archimedean factor

    ( pi * (-i)^ell * 2^(1-s) * Gamma(s) / (Gamma(alpha) Gamma(beta)) )^d,
    alpha = (s + 1 + ell)/2,   beta = (s + 1 - ell)/2.

Only orders of vanishing and one leading coefficient are ever needed to decide
whether the second term vanishes, contributes a residue, or blows up, so a
:class:`LaurentScalar` stores exactly that: the expansion point, the order
(negative = pole, +infinity = the zero function) and the first nonzero
coefficient as a :class:`PiScalar`.  Any computation that would require
subleading coefficients raises instead of guessing.

Values of the Riemann zeta ratio are built in exactly where they are rational
in pi (the simple pole at 1 and the value at 0); zeta at odd integers is
carried with exact=False, order certified, leading unknown.  Dedekind-zeta
data for degree d > 1 is order-certified only.  Haar-measure normalizations at
ramified places are never computed here; ramified local factors are
caller-supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    DomainError,
    InsufficientLaurentPrecisionError,
    PoleError,
)
from .pi_scalar import PiScalar

INFINITE_ORDER = math.inf


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LaurentScalar:
    """Order and leading coefficient of a meromorphic germ at a point.

    exact=False certifies the order only; the leading coefficient is then
    None.  The zero germ has order +infinity.
    """

    point: Fraction
    order: float | int
    leading: Optional[PiScalar]
    exact: bool = True

    def __post_init__(self):
        if self.order == INFINITE_ORDER:
            if self.leading is not None:
                raise ValueError("zero germ carries no leading coefficient")
        elif self.exact:
            if self.leading is None or self.leading.is_zero:
                raise ValueError("exact germ needs a nonzero leading coefficient")
        elif self.leading is not None:
            raise ValueError("inexact germ must not carry a leading coefficient")

    @classmethod
    def zero(cls, point) -> "LaurentScalar":
        return cls(_frac(point), INFINITE_ORDER, None, True)

    @classmethod
    def of(cls, point, order: int, leading: PiScalar) -> "LaurentScalar":
        return cls(_frac(point), order, leading, True)

    @classmethod
    def order_only(cls, point, order: int) -> "LaurentScalar":
        return cls(_frac(point), order, None, False)

    @property
    def is_zero(self) -> bool:
        return self.order == INFINITE_ORDER

    def __mul__(self, other):
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if self.point != other.point:
            raise DomainError(
                f"cannot multiply germs at {self.point} and {other.point}"
            )
        if self.is_zero or other.is_zero:
            return LaurentScalar.zero(self.point)
        exact = self.exact and other.exact
        leading = self.leading * other.leading if exact else None
        return LaurentScalar(self.point, self.order + other.order, leading, exact)

    def invert(self) -> "LaurentScalar":
        if self.is_zero:
            raise PoleError("reciprocal of the zero germ", order=-INFINITE_ORDER)
        if not self.exact:
            raise InsufficientLaurentPrecisionError(
                "cannot invert a germ whose leading coefficient is not certified"
            )
        return LaurentScalar(self.point, -self.order, self.leading.invert(), True)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        if self.is_zero:
            return self if n else LaurentScalar.of(self.point, 0, PiScalar.one())
        leading = self.leading**n if self.exact else None
        return LaurentScalar(self.point, self.order * n, leading, self.exact or n == 0)

    def __add__(self, other):
        """Leading-term addition; raises when a cancellation would demand
        subleading coefficients."""
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if self.point != other.point:
            raise DomainError(f"cannot add germs at {self.point} and {other.point}")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.order != other.order:
            return self if self.order < other.order else other
        if not (self.exact and other.exact):
            raise InsufficientLaurentPrecisionError(
                "sum of equal-order germs with uncertified leadings"
            )
        s = self.leading + other.leading
        if s.is_zero:
            raise InsufficientLaurentPrecisionError(
                "leading coefficients cancel; subleading terms are out of scope"
            )
        return LaurentScalar(self.point, self.order, s, True)

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "order": None if self.is_zero else self.order,
            "zero": self.is_zero,
            "leading": self.leading.render() if self.leading is not None else None,
            "exact": self.exact,
        }


def _factorial(n: int) -> int:
    return math.factorial(n)


def gamma_at(s0) -> LaurentScalar:
    """Laurent data of Gamma(s) at a half-integer point.

    Poles at non-positive integers have order -1 and residue (-1)^n / n!;
    half-integer values are exact rational multiples of sqrt(pi).
    """
    s0 = _frac(s0)
    if s0.denominator == 1:
        n = int(s0)
        if n > 0:
            return LaurentScalar.of(s0, 0, PiScalar.rational(_factorial(n - 1)))
        residue = Fraction((-1) ** (-n), _factorial(-n))
        return LaurentScalar.of(s0, -1, PiScalar.rational(residue))
    if s0.denominator == 2:
        n = int(s0 - Fraction(1, 2))  # s0 = n + 1/2
        if n >= 0:
            c = Fraction(_factorial(2 * n), 4**n * _factorial(n))
        else:
            m = -n
            c = Fraction((-4) ** m * _factorial(m), _factorial(2 * m))
        return LaurentScalar.of(s0, 0, PiScalar.pi_power(Fraction(1, 2), c))
    raise DomainError(f"gamma Laurent data certified at half-integers only, got {s0}")


def zeta_ratio_at(
    s0,
    d: int = 1,
    character: str = "trivial",
    ramified_L_data: Optional[LaurentScalar] = None,
) -> LaurentScalar:
    """Laurent data of L^S(s, mu)/L^S(s+1, mu) at s0.

    Built in exactly for the degree-1 trivial character (the Riemann zeta
    ratio); other characters and degrees carry certified orders only, and
    points outside the certified range demand caller-supplied data.
    """
    s0 = _frac(s0)
    if ramified_L_data is not None:
        if ramified_L_data.point != s0:
            raise DomainError(
                f"supplied L-data expands at {ramified_L_data.point}, need {s0}"
            )
        return ramified_L_data
    if character not in ("trivial", "nontrivial"):
        raise DomainError(f"unknown character family tag {character!r}")
    if s0.denominator != 1:
        raise DomainError(
            f"zeta ratio is certified at integer points only, got {s0}; "
            "supply ramified_L_data"
        )
    n = int(s0)
    if character == "nontrivial":
        if n >= 1:
            # L(s, mu) is entire and nonvanishing at real s >= 1 for
            # nontrivial unitary mu; only the order is certified.
            return LaurentScalar.order_only(s0, 0)
        raise DomainError(
            "nontrivial-family L-ratio below s = 1 requires caller data"
        )
    if d == 1:
        if n == 1:
            # zeta has residue 1; zeta(2) = pi^2/6.
            return LaurentScalar.of(s0, -1, PiScalar.pi_power(-2, 6))
        if n >= 2:
            # zeta(n)/zeta(n+1): finite, nonzero; one argument is odd,
            # so the value itself is not in the exact ring.
            return LaurentScalar.order_only(s0, 0)
        if n == 0:
            # zeta(0) = -1/2 against the simple pole of zeta(s+1).
            return LaurentScalar.of(s0, 1, PiScalar.rational(Fraction(-1, 2)))
        raise DomainError(f"zeta ratio not certified at {s0}; supply ramified_L_data")
    if n == 1:
        return LaurentScalar.order_only(s0, -1)  # Dedekind zeta: simple pole
    if n >= 2:
        return LaurentScalar.order_only(s0, 0)
    raise DomainError(
        f"degree-{d} zeta ratio not certified at {s0}; supply ramified_L_data"
    )


def archimedean_factor(s0, ell: int, d: int = 1) -> LaurentScalar:
    """Laurent data of the d-th power of
    pi * (-i)^ell * 2^(1-s) * Gamma(s) / (Gamma(alpha) Gamma(beta)) at s0."""
    s0 = _frac(s0)
    if s0.denominator != 1:
        raise DomainError(
            f"archimedean factor certified at integer points only, got {s0}"
        )
    if d < 1:
        raise DomainError("degree d must be >= 1")
    alpha = (s0 + 1 + ell) / 2
    beta = (s0 + 1 - ell) / 2
    g_s = gamma_at(s0)
    half = Fraction(1, 2)

    def slope_adjust(g: LaurentScalar) -> LaurentScalar:
        # Gamma(alpha(s)) with alpha affine of slope 1/2 in s: the order is
        # unchanged, the leading picks up (1/2)^order.
        coeff = PiScalar.rational(half**g.order)
        return LaurentScalar(g.point, g.order, g.leading * coeff, True)

    g_a = slope_adjust(gamma_at(alpha))
    g_b = slope_adjust(gamma_at(beta))
    i_power = [
        PiScalar.rational(1),
        PiScalar.gaussian(0, -1),
        PiScalar.rational(-1),
        PiScalar.gaussian(0, 1),
    ][ell % 4]
    const = PiScalar.pi_power(1, Fraction(2) ** (1 - int(s0))) * i_power
    order = g_s.order - g_a.order - g_b.order
    leading = const * g_s.leading * g_a.leading.invert() * g_b.leading.invert()
    bracket = LaurentScalar(s0, order, leading, True)
    return bracket**d


def unramified_intertwining_constant(q: int, mu, s0) -> Fraction:
    """(1 - mu q^(-s0-1)) / (1 - mu q^(-s0)): the scalar by which the standard
    intertwining operator acts on the unramified vector, mu = value of the
    character at a uniformizer.

    Raises PoleError (order -1) when mu q^(-s0) = 1.
    """
    p = prime_power_base(q)
    e = 0
    qq = q
    while qq > 1:
        qq //= p
        e += 1
    if isinstance(mu, str):
        mu = mu.replace("+", "")
        try:
            mu = Fraction(mu)
        except ValueError as exc:
            raise DomainError(f"unsupported root-of-unity tag {mu!r}") from exc
    mu = _frac(mu)
    if mu not in (Fraction(1), Fraction(-1)):
        raise DomainError(
            f"only the rational roots of unity +-1 are supported, got {mu}"
        )
    s0 = _frac(s0)
    exp = -s0 * e
    if exp.denominator != 1:
        raise DomainError(f"q^(-s0) is irrational for q = {q}, s0 = {s0}")
    t = Fraction(p) ** int(exp)
    denom = 1 - mu * t
    if denom == 0:
        raise PoleError(
            f"intertwining constant has a pole: mu * q^(-s0) = 1 at s0 = {s0}",
            order=-1,
        )
    return (1 - mu * t / q) / denom


def prime_power_base(q: int) -> int:
    """The prime p with q = p^e; DomainError if q is not a prime power."""
    if not isinstance(q, int) or q < 2:
        raise DomainError(f"residue cardinality must be a prime power >= 2, got {q}")
    n = q
    for p in range(2, n + 1):
        if p * p > n:
            p = n
        if n % p == 0:
            while n % p == 0:
                n //= p
            if n != 1:
                raise DomainError(f"{q} is not a prime power")
            return p
    raise DomainError(f"{q} is not a prime power")


@dataclass(frozen=True)
class Verdict:
    kind: str  # PureSection | SectionPlusResidue | Pole
    leading: Optional[PiScalar] = None
    exact: bool = True
    order: Optional[int] = None

    def to_json(self) -> dict:
        doc = {"kind": self.kind}
        if self.kind == "SectionPlusResidue":
            doc["leading"] = self.leading.render() if self.leading is not None else None
            doc["exact"] = self.exact
        if self.kind == "Pole":
            doc["order"] = self.order
        return doc


@dataclass(frozen=True)
class ConstantTermReport:
    """Behavior of the weight-k Eisenstein constant term at its special point.

    The section contributes itself; the intertwined term contributes the
    germ stored in second_term.  PureSection means the intertwined term
    vanishes there (order >= 1); SectionPlusResidue carries its value.
    """

    k: int
    d: int
    character: str
    archimedean_parity: int
    second_term: LaurentScalar
    verdict: Verdict

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "character": {
                "family": self.character,
                "archimedean_parity": self.archimedean_parity,
            },
            "point": str(self.second_term.point),
            "second_term": self.second_term.to_json(),
            "verdict": self.verdict.to_json(),
        }


def constant_term_report(
    k: int,
    d: int = 1,
    character: str = "trivial",
    local_data=(),
) -> ConstantTermReport:
    """Multiply the archimedean factor, the L-ratio and the finite local data
    at s0 = k - 1 and classify the intertwined term.

    local_data: germs at s0 for the finite places of the ramified set, e.g.
    an order-1 germ for a place where the intertwining operator kills the
    section.
    """
    if k < 1:
        raise DomainError(f"weight must be >= 1, got {k}")
    s0 = Fraction(k - 1)
    total = archimedean_factor(s0, k, d) * zeta_ratio_at(s0, d, character)
    for item in local_data:
        if not isinstance(item, LaurentScalar):
            raise DomainError("local data must be LaurentScalar germs")
        total = total * item
    if total.is_zero or total.order >= 1:
        verdict = Verdict("PureSection")
    elif total.order == 0:
        verdict = Verdict("SectionPlusResidue", leading=total.leading, exact=total.exact)
    else:
        verdict = Verdict("Pole", order=int(total.order), exact=total.exact)
    parity = 1 if k % 2 == 0 else -1
    return ConstantTermReport(k, d, character, parity, total, verdict)
