"""Exact local invariants of binary quadratic spaces over Q.

A binary space <a1, a2> (diagonal Gram matrix) is determined place by place
by the quadratic character attached to its discriminant Delta = -a1*a2 and
the Hasse invariant eps_v = (a1, a2)_v.  This module computes Hilbert symbols
by the classical closed formulas, tests local squares, detects whether a
family of local data is coherent (arises from a global space; equivalent to
the product formula on Hasse invariants once the discriminant class is
fixed), and enumerates the definite isometry classes with bounded ramification.

It also records the reducibility lattice of the degenerate principal series
attached to a unitary character and, for unramified quadratic characters, the
exact eigenvalue of the standard intertwining operator on the two theta
constituents.  Imaginary parts of the induction parameter are carried as
exact rational multiples of pi*i/log(q), so the lattice conditions are
decidable exactly.

Base field fixed to Q; the degree parameter elsewhere in the package is
purely symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, InvariantViolationError


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a finite prime or the real place."""

    kind: str  # "finite" | "real"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "finite":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise DomainError(f"{self.p} is not prime")
        elif self.kind == "real":
            if self.p is not None:
                raise DomainError("real place carries no prime")
        else:
            raise DomainError(f"unknown place kind {self.kind!r}")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls("finite", p)

    @classmethod
    def real(cls) -> "Place":
        return cls("real")

    def render(self) -> str:
        return "real" if self.kind == "real" else str(self.p)

    @classmethod
    def parse(cls, text: str) -> "Place":
        if text in ("real", "oo", "infinity"):
            return cls.real()
        try:
            return cls.finite(int(text))
        except ValueError as exc:
            raise DomainError(f"bad place {text!r}") from exc


def padic_valuation(x: Fraction, p: int) -> int:
    x = _frac(x)
    if x == 0:
        raise DomainError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x: Fraction, p: int) -> Fraction:
    return _frac(x) / Fraction(p) ** padic_valuation(x, p)


def _unit_mod(u: Fraction, modulus: int) -> int:
    # u is a p-adic unit; reduce num * den^-1 mod modulus (den coprime).
    num = u.numerator % modulus
    den = u.denominator % modulus
    return num * pow(den, -1, modulus) % modulus


def legendre(u: Fraction, p: int) -> int:
    """(u|p) for a p-adic unit u and odd prime p."""
    r = _unit_mod(u, p)
    s = pow(r, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def hilbert_symbol(a, b, v: Place) -> int:
    """The Hilbert symbol (a, b)_v for nonzero rationals.

    real:   -1 iff a < 0 and b < 0.
    odd p:  (-1)^(alpha*beta*(p-1)/2) (u_b|p)^alpha (u_a|p)^beta from the
            valuations alpha, beta and unit parts u_a, u_b.
    p = 2:  (-1)^(eps(u_a) eps(u_b) + alpha omega(u_b) + beta omega(u_a))
            with eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 mod 2.
    """
    a, b = _frac(a), _frac(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    if v.kind == "real":
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, beta = padic_valuation(a, p), padic_valuation(b, p)
    ua, ub = unit_part(a, p), unit_part(b, p)
    if p != 2:
        sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
        return sign * legendre(ub, p) ** (alpha % 2) * legendre(ua, p) ** (beta % 2)
    ra, rb = _unit_mod(ua, 8), _unit_mod(ub, 8)
    eps_a, eps_b = (ra - 1) // 2 % 2, (rb - 1) // 2 % 2
    omega_a, omega_b = (ra * ra - 1) // 8 % 2, (rb * rb - 1) // 8 % 2
    exponent = eps_a * eps_b + alpha * omega_b + beta * omega_a
    return -1 if exponent % 2 else 1


def is_local_square(x, v: Place) -> bool:
    x = _frac(x)
    if x == 0:
        raise DomainError("square test needs a nonzero argument")
    if v.kind == "real":
        return x > 0
    p = v.p
    if padic_valuation(x, p) % 2:
        return False
    u = unit_part(x, p)
    if p == 2:
        return _unit_mod(u, 8) == 1
    return legendre(u, p) == 1


@dataclass(frozen=True)
class QuadSpace2D:
    """Binary quadratic space over Q with diagonal Gram entries a1, a2."""

    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a1", _frac(self.a1))
        object.__setattr__(self, "a2", _frac(self.a2))
        if self.a1 == 0 or self.a2 == 0:
            raise DomainError("degenerate quadratic space")

    @property
    def discriminant(self) -> Fraction:
        return -self.a1 * self.a2

    def to_json(self) -> dict:
        from .series import frac_to_str

        return {"a1": frac_to_str(self.a1), "a2": frac_to_str(self.a2)}


@dataclass(frozen=True)
class LocalInvariant:
    """(chi_V nontrivial?, Hasse invariant) at one place.

    A two-dimensional space with locally trivial discriminant character has
    Hasse invariant +1; violating pairs are rejected.
    """

    place: Place
    chi_nontrivial: bool
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise DomainError("epsilon must be +-1")
        if not self.chi_nontrivial and self.epsilon == -1:
            raise InvariantViolationError(
                f"epsilon = -1 with locally square discriminant at {self.place.render()}"
            )


def local_invariants(space: QuadSpace2D, v: Place) -> LocalInvariant:
    delta = space.discriminant
    return LocalInvariant(
        v,
        not is_local_square(delta, v),
        hilbert_symbol(space.a1, space.a2, v),
    )


def relevant_places(*values: Fraction) -> list[Place]:
    """2, the real place, and every odd prime dividing a numerator or
    denominator: outside these all symbols of the given values are +1."""
    primes = set()
    for x in values:
        x = _frac(x)
        for n in (abs(x.numerator), x.denominator):
            d = 2
            while d * d <= n:
                while n % d == 0:
                    primes.add(d)
                    n //= d
                d += 1
            if n > 1:
                primes.add(n)
    primes.add(2)
    return [Place.real()] + [Place.finite(p) for p in sorted(primes)]


@dataclass(frozen=True)
class Collection:
    """A family of local binary-space data: global discriminant class plus
    Hasse signs at finitely many places (+1 off the listed support)."""

    discriminant: Fraction
    epsilons: tuple[tuple[Place, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "discriminant", _frac(self.discriminant))
        if self.discriminant == 0:
            raise DomainError("discriminant must be nonzero")
        seen = set()
        for place, _ in self.epsilons:
            if place in seen:
                raise DomainError(f"duplicate place {place.render()}")
            seen.add(place)
        object.__setattr__(
            self, "epsilons", tuple(sorted(self.epsilons, key=lambda t: t[0]))
        )

    @classmethod
    def of(cls, discriminant, epsilons: dict) -> "Collection":
        return cls(_frac(discriminant), tuple(epsilons.items()))

    def epsilon_at(self, place: Place) -> int:
        for pl, e in self.epsilons:
            if pl == place:
                return e
        return 1

    def flip(self, place: Place) -> "Collection":
        """The collection with the Hasse sign at one place negated."""
        eps = dict(self.epsilons)
        eps[place] = -eps.get(place, 1)
        return Collection.of(self.discriminant, eps)

    def to_json(self) -> dict:
        from .series import frac_to_str

        return {
            "discriminant": frac_to_str(self.discriminant),
            "epsilons": {pl.render(): e for pl, e in self.epsilons},
        }


def collection_of(space: QuadSpace2D) -> Collection:
    places = relevant_places(space.a1, space.a2, space.discriminant)
    eps = {v: local_invariants(space, v).epsilon for v in places}
    return Collection.of(space.discriminant, eps)


@dataclass(frozen=True)
class CoherenceResult:
    coherent: bool
    witness: Optional[QuadSpace2D]

    def __bool__(self) -> bool:
        return self.coherent

    def to_json(self) -> dict:
        return {
            "coherent": self.coherent,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _witness_search(delta: Fraction, minus_places: list[Place]) -> QuadSpace2D:
    # <a, -delta*a> has discriminant delta (mod squares) and Hasse invariant
    # (a, delta)_v; scan small a for the required sign pattern.
    targets = set(minus_places)
    check = set(relevant_places(delta)) | targets
    for size in range(1, 100000):
        for a0 in (size, -size):
            a = Fraction(a0)
            places = set(check) | set(relevant_places(a))
            if all(
                (hilbert_symbol(a, delta, v) == -1) == (v in targets) for v in places
            ):
                return QuadSpace2D(a, -delta * a)
    raise AssertionError("no witness found; pattern should be realizable")


def check_coherence(collection: Collection) -> CoherenceResult:
    """Product-formula test: coherent iff the Hasse signs multiply to +1.

    Coherent collections come with a witness space realizing the data.
    Support entries with eps = -1 at places where the discriminant is a
    local square violate the two-dimensional invariant constraint.
    """
    minus = []
    for place, e in collection.epsilons:
        if e not in (1, -1):
            raise DomainError("epsilon values must be +-1")
        if e == -1:
            if is_local_square(collection.discriminant, place):
                raise InvariantViolationError(
                    f"epsilon = -1 at {place.render()} where the discriminant "
                    "is a local square"
                )
            minus.append(place)
    product = -1 if len(minus) % 2 else 1
    if product != 1:
        return CoherenceResult(False, None)
    witness = _witness_search(collection.discriminant, minus)
    return CoherenceResult(True, witness)


def is_coherent(collection: Collection) -> CoherenceResult:
    return check_coherence(collection)


def enumerate_definite_spaces(discriminant, support_bound: int) -> list[Collection]:
    """All coherent collections of definite type (signature (2,0) at the real
    place) with the given negative discriminant class and finite support in
    the primes <= support_bound.

    These are exactly the even-cardinality subsets of the primes where the
    discriminant character is locally nontrivial.
    """
    delta = _frac(discriminant)
    if delta >= 0:
        raise DomainError("definite binary spaces need a negative discriminant")
    candidates = [
        p
        for p in range(2, support_bound + 1)
        if is_prime(p) and not is_local_square(delta, Place.finite(p))
    ]
    out = []
    for mask in range(1 << len(candidates)):
        chosen = [candidates[i] for i in range(len(candidates)) if mask & (1 << i)]
        if len(chosen) % 2:
            continue
        eps = {Place.real(): 1}
        for p in chosen:
            eps[Place.finite(p)] = -1
        out.append(Collection.of(delta, eps))
    out.sort(key=lambda c: (sum(1 for _, e in c.epsilons if e == -1), c.epsilons))
    return out


# ---------------------------------------------------------------------------
# Degenerate principal series: reducibility points and intertwining eigenvalues.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterDescriptor:
    """A unitary character of a local field, up to what reducibility sees:
    order 1, 2 or "other", whether it is unramified, and at the real place
    the sign exponent."""

    order: object = 1  # 1 | 2 | "other"
    unramified: bool = True
    real_sign: int = 0

    def __post_init__(self):
        if self.order not in (1, 2, "other"):
            raise DomainError(f"character order must be 1, 2 or 'other', got {self.order}")
        if self.real_sign not in (0, 1):
            raise DomainError("real_sign must be 0 or 1")
        if self.order == 1 and not self.unramified:
            raise DomainError("the trivial character is unramified")


@dataclass(frozen=True)
class ReducibilityVerdict:
    residue: str  # "real" or the residue cardinality
    reducible: bool
    constituents: tuple[str, ...]
    structure: Optional[str]  # direct_sum | steinberg_quotient | steinberg_sub | finite_quotient | trivial_sub
    pfinite: Optional[bool] = None  # archimedean only

    def to_json(self) -> dict:
        doc = {
            "residue": self.residue,
            "reducible": self.reducible,
            "constituents": list(self.constituents),
            "structure": self.structure,
        }
        if self.pfinite is not None:
            doc["lowering_finite_vector"] = self.pfinite
        return doc


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def reducibility(residue, mu: CharacterDescriptor, s_re, s_im=0) -> ReducibilityVerdict:
    """Reducibility of the degenerate principal series I(mu, s).

    Non-archimedean (residue = prime power q): s = s_re + s_im * pi*i/log q
    with both parts exact rationals.  I(mu, s) is reducible iff either
    mu is quadratic nontrivial and s lies in (pi*i/log q) Z, or mu is trivial
    and s lies in {+-1 + 2m pi*i/log q} or {(2m+1) pi*i/log q}; the quadratic
    points split as R(V+) + R(V-), the trivial points carry the Steinberg
    sequences.  Unramified quadratic characters are handled as the twist of
    the trivial one by the unramified sign character (a shift of s_im by 1).

    Archimedean (residue = "real"): reports whether a lowering-finite vector
    exists: s in 2 Z_{>=0} with mu = sgn, or s in -1 + 2 Z_{>=0} with mu
    trivial, together with the constituents.
    """
    sigma, tau = _frac(s_re), _frac(s_im)

    if residue == "real":
        if mu.order == "other" or not _is_int(sigma) or tau != 0:
            return ReducibilityVerdict("real", False, (), None, pfinite=False)
        n = int(sigma)
        is_sgn = mu.real_sign == 1
        if is_sgn and n >= 0 and n % 2 == 0:
            k = n + 1
            if k == 1:
                return ReducibilityVerdict(
                    "real", True, ("R(2,0)", "R(0,2)"), "direct_sum", pfinite=True
                )
            return ReducibilityVerdict(
                "real",
                True,
                (f"L({k}) (+) L^-({k}) (sub)", f"F_{k} (quotient)"),
                "finite_quotient",
                pfinite=True,
            )
        if (not is_sgn) and n % 2 == 1 and n >= -1:
            if n == -1:
                return ReducibilityVerdict(
                    "real",
                    True,
                    ("triv (sub)", "L(2) (+) L^-(2) (quotient)"),
                    "trivial_sub",
                    pfinite=True,
                )
            k = n + 1
            return ReducibilityVerdict(
                "real",
                True,
                (f"L({k}) (+) L^-({k}) (sub)", f"F_{k} (quotient)"),
                "finite_quotient",
                pfinite=True,
            )
        return ReducibilityVerdict("real", False, (), None, pfinite=False)

    q = int(residue)
    from .laurent import prime_power_base

    prime_power_base(q)  # validates prime power
    label = str(q)

    if mu.order == "other":
        return ReducibilityVerdict(label, False, (), None)

    if mu.order == 2 and not mu.unramified:
        # Ramified quadratic: reducible on the full lattice sigma = 0, tau in Z.
        if sigma == 0 and _is_int(tau):
            return ReducibilityVerdict(
                label, True, ("R(V+)", "R(V-)"), "direct_sum"
            )
        return ReducibilityVerdict(label, False, (), None)

    # Trivial or unramified quadratic: the latter is the trivial character
    # twisted by the unramified sign character, i.e. s_im shifted by 1.
    shift = 1 if mu.order == 2 else 0
    tau_eff = tau + shift
    if not _is_int(tau_eff):
        return ReducibilityVerdict(label, False, (), None)
    t = int(tau_eff) % 2
    if sigma == 0 and t == 1:
        return ReducibilityVerdict(label, True, ("R(V+)", "R(V-)"), "direct_sum")
    if abs(sigma) == 1 and t == 0:
        twist = " (x) chi_unr" if shift else ""
        if sigma == 1:
            return ReducibilityVerdict(
                label,
                True,
                (f"St{twist} (sub)", f"triv{twist} (quotient)"),
                "steinberg_sub",
            )
        return ReducibilityVerdict(
            label,
            True,
            (f"triv{twist} (sub)", f"St{twist} (quotient)"),
            "steinberg_quotient",
        )
    return ReducibilityVerdict(label, False, (), None)


def unramified_eigenvalue(q: int, chi_nontrivial_unramified: bool, epsilon: int) -> Fraction:
    """eps * gamma(0, chi, psi) = eps * L(1, chi)/L(0, chi) for unramified
    quadratic data: 2q/(q+1) up to the Hasse sign.

    Trivial chi has L(0, chi) with a pole, so no eigenvalue is certified;
    ramified data (epsilon factors != 1) is out of the certified domain.
    """
    from .laurent import prime_power_base

    prime_power_base(q)
    if epsilon not in (1, -1):
        raise DomainError("epsilon must be +-1")
    if not chi_nontrivial_unramified:
        raise DomainError(
            "intertwining eigenvalue certified for nontrivial unramified "
            "quadratic characters only (trivial chi hits the pole of L(0, chi))"
        )
    return Fraction(epsilon * 2 * q, q + 1)
