"""Exact scalars in the ring  Q(i)[pi^(1/2), pi^(-1/2)].

A :class:`PiScalar` is a finite sum  sum_e (a_e + b_e i) pi^e  with half-integer
exponents e and Gaussian-rational coefficients.  This is the coefficient ring
for everything that leaves the rational world: archimedean gamma factors,
leading Laurent coefficients of constant terms, and the analytic normalization
of the raising/lowering operators (which carry factors of -4*pi and -1/(4*pi)).

The zero scalar is the empty sum; no stored coefficient is ever zero.
Addition and multiplication are exact and multiplication adds exponents.
Values are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _coeff(c) -> tuple[Fraction, Fraction]:
    if isinstance(c, tuple):
        re, im = c
        return _frac(re), _frac(im)
    return _frac(c), Fraction(0)


class PiScalar:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[Fraction, tuple[Fraction, Fraction]] = {}
        if terms:
            for e, c in terms.items():
                e = _frac(e)
                if e.denominator not in (1, 2):
                    raise ValueError(f"pi-exponent {e} is not a half-integer")
                re, im = _coeff(c)
                if e in data:
                    re, im = data[e][0] + re, data[e][1] + im
                if re or im:
                    data[e] = (re, im)
                elif e in data:
                    del data[e]
        self._terms = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "PiScalar":
        return cls()

    @classmethod
    def one(cls) -> "PiScalar":
        return cls({Fraction(0): Fraction(1)})

    @classmethod
    def rational(cls, c) -> "PiScalar":
        return cls({Fraction(0): _frac(c)})

    @classmethod
    def gaussian(cls, re, im) -> "PiScalar":
        return cls({Fraction(0): (_frac(re), _frac(im))})

    @classmethod
    def imaginary_unit(cls) -> "PiScalar":
        return cls.gaussian(0, 1)

    @classmethod
    def pi_power(cls, e, coeff=1, imag=0) -> "PiScalar":
        return cls({_frac(e): (_frac(coeff), _frac(imag))})

    @classmethod
    def sqrt_pi(cls) -> "PiScalar":
        return cls.pi_power(Fraction(1, 2))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self):
        """Sorted (exponent, (re, im)) pairs."""
        return sorted(self._terms.items())

    @property
    def is_real(self) -> bool:
        return all(im == 0 for _, im in self._terms.values())

    @property
    def is_imaginary(self) -> bool:
        return all(re == 0 for re, _ in self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def exponents(self):
        return sorted(self._terms)

    def as_fraction(self) -> Fraction:
        """The value as a plain rational; error if any pi or i survives."""
        if self.is_zero:
            return Fraction(0)
        if set(self._terms) != {Fraction(0)}:
            raise ValueError(f"{self} is not rational")
        re, im = self._terms[Fraction(0)]
        if im:
            raise ValueError(f"{self} is not real")
        return re

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PiScalar):
            return NotImplemented
        data = {e: c for e, c in self._terms.items()}
        out = PiScalar()
        merged: dict[Fraction, tuple[Fraction, Fraction]] = dict(data)
        for e, (re, im) in other._terms.items():
            if e in merged:
                re, im = merged[e][0] + re, merged[e][1] + im
            if re or im:
                merged[e] = (re, im)
            elif e in merged:
                del merged[e]
        out._terms = merged
        return out

    def __neg__(self):
        out = PiScalar()
        out._terms = {e: (-re, -im) for e, (re, im) in self._terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiScalar.rational(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        merged: dict[Fraction, tuple[Fraction, Fraction]] = {}
        for e1, (a, b) in self._terms.items():
            for e2, (c, d) in other._terms.items():
                e = e1 + e2
                re, im = a * c - b * d, a * d + b * c
                if e in merged:
                    re, im = merged[e][0] + re, merged[e][1] + im
                if re or im:
                    merged[e] = (re, im)
                elif e in merged:
                    del merged[e]
        out = PiScalar()
        out._terms = merged
        return out

    __rmul__ = __mul__

    def invert(self) -> "PiScalar":
        """Reciprocal; defined only for monomials c*pi^e."""
        if len(self._terms) != 1:
            raise ValueError(f"cannot invert non-monomial scalar {self}")
        ((e, (re, im)),) = self._terms.items()
        norm = re * re + im * im
        return PiScalar({-e: (re / norm, -im / norm)})

    def __pow__(self, n: int) -> "PiScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        out = PiScalar.one()
        for _ in range(n):
            out = out * self
        return out

    # -- comparison / rendering --------------------------------------------

    def _key(self):
        return tuple(sorted(self._terms.items()))

    def __eq__(self, other):
        return isinstance(other, PiScalar) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __bool__(self):
        return not self.is_zero

    def render(self) -> str:
        """Human form like ``-3·π^-1`` or ``6·π^-2 + π^1/2``."""
        if self.is_zero:
            return "0"
        parts = []
        for e, (re, im) in self.terms():
            if im == 0:
                coeff = str(re)
            elif re == 0:
                if im == 1:
                    coeff = "i"
                elif im == -1:
                    coeff = "-i"
                else:
                    coeff = f"({im})i"
            else:
                coeff = f"({re}{'+' if im > 0 else ''}{im}i)"
            if e == 0:
                parts.append(coeff)
            else:
                pi = "π" if e == 1 else f"π^{e}"
                if coeff == "1":
                    parts.append(pi)
                elif coeff == "-1":
                    parts.append(f"-{pi}")
                else:
                    parts.append(f"{coeff}·{pi}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PiScalar({self.render()})"

    def to_json(self):
        """Loss-free JSON: list of [exponent, re, im] with "num/den" strings."""
        return [[str(e), str(re), str(im)] for e, (re, im) in self.terms()]

    @classmethod
    def from_json(cls, data) -> "PiScalar":
        return cls({Fraction(e): (Fraction(re), Fraction(im)) for e, re, im in data})


MINUS_FOUR_PI = PiScalar.pi_power(1, -4)
MINUS_INV_FOUR_PI = PiScalar.pi_power(-1, Fraction(-1, 4))
