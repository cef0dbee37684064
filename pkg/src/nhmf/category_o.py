"""Symbolic category-O bookkeeping for sl2 and the non-cuspidal spectrum catalog.

Blocks of category O for sl2 are classified by the orbit {lam, 2 - lam} of the
infinitesimal character.  Outside integral walls a block is semisimple with
two (or one) simple Verma modules; at an integral parameter lam > 1 it has
exactly five indecomposables

    N(lam), L(2-lam), N(2-lam), N(2-lam)^v, P(lam)

linked by 0 -> N(lam) -> N(2-lam) -> L(2-lam) -> 0 and
0 -> N(lam) -> P(lam) -> N(2-lam) -> 0.  Here "highest weight" is taken with
respect to the Borel containing the lowering direction, so the weights of
N(lam) are lam, lam+2, lam+4, ... and the finite-dimensional simple L(2-k)
has dimension k - 1.

identify_module fingerprints the module generated by a concrete form against
this finite list.  catalog(d, k) records the symbolic decomposition of the
weight-k non-cuspidal spectrum over a degree-d totally real base: character
families are descriptors with parity and constraint tags, never enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .decompose import iterate_lower, iterate_raise
from .errors import AmbiguousModuleError, DomainError
from .generators import eisenstein2
from .operators import infinitesimal_character, raise_weight
from .series import NearlyHolomorphicForm, frac_to_str


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


@dataclass(frozen=True)
class ModuleClass:
    """Label of an indecomposable object: one of verma/simple/dual_verma/
    projective/finite/trivial, canonicalized so aliases compare equal
    (e.g. Simple(0) is Trivial, and a simple Verma is stored as simple)."""

    kind: str
    lam: Optional[Fraction] = None

    @property
    def dimension(self) -> Optional[int]:
        if self.kind == "trivial":
            return 1
        if self.kind == "finite":
            return int(self.lam) - 1
        return None

    @property
    def character(self):
        from .operators import InfinitesimalCharacter

        if self.kind == "trivial":
            return InfinitesimalCharacter.of(2)
        if self.kind == "finite":
            return InfinitesimalCharacter.of(self.lam)
        return InfinitesimalCharacter.of(self.lam)

    def render(self) -> str:
        if self.kind == "trivial":
            return "triv"
        lam = self.lam
        return {
            "verma": f"N({lam})",
            "simple": f"L({lam})",
            "dual_verma": f"N({lam})^v",
            "projective": f"P({lam})",
            "finite": f"F_{lam}",
        }[self.kind]

    def __repr__(self):
        return f"ModuleClass({self.render()})"

    def to_json(self) -> dict:
        doc = {"kind": self.kind}
        if self.lam is not None:
            doc["lambda"] = frac_to_str(self.lam)
        if self.dimension is not None:
            doc["dimension"] = self.dimension
        return doc


def trivial() -> ModuleClass:
    return ModuleClass("trivial")


def finite(k) -> ModuleClass:
    k = _frac(k)
    if not _is_int(k) or k < 2:
        raise DomainError(f"finite-dimensional class needs integer k >= 2, got {k}")
    if k == 2:
        return trivial()
    return ModuleClass("finite", k)


def simple(lam) -> ModuleClass:
    lam = _frac(lam)
    if _is_int(lam) and lam <= 0:
        return finite(2 - lam)
    return ModuleClass("simple", lam)


def verma(lam) -> ModuleClass:
    lam = _frac(lam)
    if _is_int(lam) and lam <= 0:
        return ModuleClass("verma", lam)
    return simple(lam)  # irreducible Verma


def dual_verma(lam) -> ModuleClass:
    lam = _frac(lam)
    if _is_int(lam) and lam <= 0:
        return ModuleClass("dual_verma", lam)
    return simple(lam)


def projective(lam) -> ModuleClass:
    lam = _frac(lam)
    if _is_int(lam) and lam >= 2:
        return ModuleClass("projective", lam)
    return simple(lam)  # semisimple block: P = N = L


def composition_factors(mc: ModuleClass) -> tuple[ModuleClass, ...]:
    if mc.kind in ("trivial", "finite", "simple"):
        return (mc,)
    lam = mc.lam
    if mc.kind in ("verma", "dual_verma"):
        return (simple(2 - lam), simple(lam))
    if mc.kind == "projective":
        return (simple(lam), simple(2 - lam), simple(lam))
    raise ValueError(mc.kind)


@dataclass(frozen=True)
class BlockClassification:
    representative: Fraction
    classes: tuple[ModuleClass, ...]
    # each sequence records 0 -> sub -> middle -> quotient -> 0
    exact_sequences: tuple[tuple[ModuleClass, ModuleClass, ModuleClass], ...]

    def to_json(self) -> dict:
        return {
            "representative": frac_to_str(self.representative),
            "classes": [c.to_json() for c in self.classes],
            "exact_sequences": [
                {"sub": a.to_json(), "middle": b.to_json(), "quotient": c.to_json()}
                for a, b, c in self.exact_sequences
            ],
        }


def classify_block(lam) -> BlockClassification:
    """The indecomposables of the block of chi_lam, with its exact sequences."""
    lam = _frac(lam)
    rep = max(lam, 2 - lam)
    if not _is_int(rep):
        return BlockClassification(rep, (simple(rep), simple(2 - rep)), ())
    if rep == 1:
        return BlockClassification(rep, (simple(1),), ())
    classes = (
        simple(rep),
        simple(2 - rep),
        verma(2 - rep),
        dual_verma(2 - rep),
        projective(rep),
    )
    sequences = (
        (simple(rep), verma(2 - rep), simple(2 - rep)),
        (simple(rep), projective(rep), verma(2 - rep)),
    )
    return BlockClassification(rep, classes, sequences)


def _scalar_ratio(f: NearlyHolomorphicForm, g: NearlyHolomorphicForm):
    """c with f = c*g coefficientwise, or None."""
    if g.is_zero:
        return Fraction(0) if f.is_zero else None
    (r, n), lead = g.terms()[0]
    c = f.coefficient(r, n) / lead if not f.is_zero else Fraction(0)
    return c if (f - g * c).is_zero else None


def identify_module(f: NearlyHolomorphicForm, max_steps: int = 24) -> ModuleClass:
    """The indecomposable class generated by a Casimir eigenform.

    Fingerprints the weight support and depth pattern of the operator orbit
    of f against the class list of its block.  Forms whose orbit does not
    match a single class in max_steps operator applications raise
    AmbiguousModuleError listing the surviving candidates.
    """
    if f.is_zero:
        raise DomainError("the zero form generates no module")
    char = infinitesimal_character(f)  # raises on non-eigenforms
    block = classify_block(char.lam)
    k = f.weight
    m = f.depth
    w = k - 2 * m

    def ambiguous(msg):
        return AmbiguousModuleError(
            msg, candidates=[c.render() for c in block.classes]
        )

    # m lowers to the seed, then up to 2m more for the purity probe, plus the
    # finite-dimensionality probe for non-dominant seeds.
    budget = 3 * m + max(0, 1 - w)
    if budget > max_steps:
        raise ambiguous(
            f"needs {budget} operator applications, max_steps = {max_steps}"
        )

    seed = iterate_lower(f, m)  # holomorphic of weight w

    if w == 0 and m >= 1:
        # Candidate: the dual Verma N(0)^v generated by the weight-two
        # Eisenstein seed (socle = constants, quotient = L(2)).
        if not seed.is_constant_series():
            raise ambiguous("weight-0 lowered seed is not constant")
        e2_image = iterate_raise(eisenstein2(f.truncation), m - 1)
        c = _scalar_ratio(f, e2_image)
        if c is None:
            raise ambiguous("form is not a multiple of the raised weight-two seed")
        return dual_verma(0)

    probe = iterate_raise(seed, m)
    ratio = _scalar_ratio(iterate_lower(probe, m), seed)
    if ratio is None or ratio == 0:
        raise ambiguous("operator orbit is inconsistent with a cyclic seed")
    if _scalar_ratio(f, probe) is None and m > 0:
        raise ambiguous("form is not a pure raised image of its lowered seed")

    if w >= 1:
        return simple(w)
    if w == 0:
        # depth 0, weight 0: constants, or a free weight-0 seed.
        if seed.is_constant_series():
            return trivial()
        return verma(0)
    # w < 0: a Verma with non-dominant highest weight, or its finite quotient.
    top = iterate_raise(seed, 1 - w)
    return finite(2 - w) if top.is_zero else verma(w)


# ---------------------------------------------------------------------------
# The symbolic spectrum catalog.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterFamily:
    """A family of Hecke characters, described but never enumerated.

    archimedean_parity is +1 for families trivial at every real place and -1
    for families that are the sign character at every real place; constraints
    are tags like "nontrivial", "non-quadratic", "associate-classes",
    "trivial-only".
    """

    archimedean_parity: int
    constraints: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "archimedean_parity": self.archimedean_parity,
            "constraints": list(self.constraints),
        }


@dataclass(frozen=True)
class Summand:
    """One summand: a finite-part tag tensored with an archimedean label."""

    finite_kind: str  # induced_family | space_enumeration | trivial | extension
    archimedean: dict
    family: Optional[CharacterFamily] = None
    s: Optional[int] = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        finite: dict = {"kind": self.finite_kind}
        if self.family is not None:
            finite["family"] = self.family.to_json()
        if self.s is not None:
            finite["s"] = self.s
        finite.update(self.detail)
        return {"finite_part": finite, "archimedean": self.archimedean}


@dataclass(frozen=True)
class DecompositionDescriptor:
    d: int
    k: int
    summands: tuple[Summand, ...]
    pi_extension: Optional[dict]
    space_enumeration: Optional[dict]
    contains_trivial: bool
    quotient_nearly_by_holomorphic: dict

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "summands": [s.to_json() for s in self.summands],
            "pi_extension": self.pi_extension,
            "space_enumeration": self.space_enumeration,
            "contains_trivial": self.contains_trivial,
            "quotient_nearly_by_holomorphic": self.quotient_nearly_by_holomorphic,
        }


def _parallel_simple(k: int, d: int) -> dict:
    return {"kind": "simple", "lambda": [k] * d}


def catalog(d: int, k: int) -> DecompositionDescriptor:
    """Symbolic decomposition of the weight-k non-cuspidal spectrum at degree d.

    k >= 3: a single induced family of parity (-1)^k at s = k - 1.
    k = 1:  the non-quadratic associate-class family at s = 0 plus the
            enumeration of definite quadratic spaces (theta summands).
    k = 2:  the nontrivial-family block plus, at d = 1, the indecomposable
            extension of the induced block by the constants generated by the
            weight-two Eisenstein series (and at d > 1 a plain trivial
            summand instead).
    """
    if d < 1 or k < 1:
        raise DomainError(f"catalog needs d >= 1 and k >= 1, got d={d}, k={k}")
    parity = 1 if k % 2 == 0 else -1
    quotient = (
        {"kind": "trivial_tensor_simple", "lambda": [2]}
        if d == 1
        else {"kind": "zero"}
    )
    if k >= 3:
        summands = (
            Summand(
                "induced_family",
                _parallel_simple(k, d),
                family=CharacterFamily(parity),
                s=k - 1,
            ),
        )
        return DecompositionDescriptor(d, k, summands, None, None, False, quotient)
    if k == 1:
        enumeration = {
            "signature": [2, 0],
            "hook": "enumerate_definite_spaces",
        }
        summands = (
            Summand(
                "induced_family",
                _parallel_simple(1, d),
                family=CharacterFamily(-1, ("non-quadratic", "associate-classes")),
                s=0,
            ),
            Summand(
                "space_enumeration",
                _parallel_simple(1, d),
                detail=enumeration,
            ),
        )
        return DecompositionDescriptor(d, 1, summands, None, enumeration, False, quotient)
    # k == 2
    if d == 1:
        extension = {
            "sub": {"kind": "trivial"},
            "middle": "module generated by the weight-two Eisenstein series",
            "quotient": {
                "finite_part": {
                    "kind": "induced_family",
                    "family": CharacterFamily(1, ("trivial-only",)).to_json(),
                    "s": 1,
                },
                "archimedean": _parallel_simple(2, 1),
            },
        }
        summands = (
            Summand(
                "induced_family",
                _parallel_simple(2, 1),
                family=CharacterFamily(1, ("nontrivial",)),
                s=1,
            ),
            Summand(
                "extension",
                {"kind": "dual_verma", "lambda": [0]},
                detail={"exact_sequence": extension},
            ),
        )
        return DecompositionDescriptor(1, 2, summands, extension, None, True, quotient)
    summands = (
        Summand(
            "induced_family",
            _parallel_simple(2, d),
            family=CharacterFamily(1),
            s=1,
        ),
        Summand("trivial", {"kind": "trivial"}),
    )
    return DecompositionDescriptor(d, 2, summands, None, None, True, quotient)


def integral_parallel_filter(lams) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether some sign-flip dot-action image of lams is integral and parallel.

    The dot action of a sign vector w is (w . lam)_i = eps_i (lam_i - 1) + 1.
    On success returns the parallel representative normalized into Z^d_{>=1}.
    """
    lams = [_frac(x) for x in lams]
    d = len(lams)
    if d == 0:
        raise DomainError("empty weight tuple")
    shifted = [x - 1 for x in lams]
    for mask in range(1 << d):
        image = [
            (s if mask & (1 << i) == 0 else -s) + 1 for i, s in enumerate(shifted)
        ]
        first = image[0]
        if all(v == first for v in image) and _is_int(first):
            rep = int(max(first, 2 - first))
            return True, (rep,) * d
    return False, None
