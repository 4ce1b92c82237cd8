"""Algebra of the Galois group G = (Z/2)^r and its character group.

Both groups are modelled as length-r bit vectors under componentwise XOR,
identified through the standard mod-2 dot product pairing.  The epsilon
functions defined here drive every building-data relation in the rest of
the package: ``epsilon(chi, g)`` is the pairing bit for nonzero ``g`` and
``epsilon2(chi, chi2, g)`` is 1 exactly when both pairings are 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from .errors import DimensionError, DomainError

#: The classifier only covers rank up to four; higher ranks are rejected.
MAX_RANK = 4


def _validate_bits(bits: tuple[int, ...]) -> None:
    if not 1 <= len(bits) <= MAX_RANK:
        raise DomainError(f"rank must be between 1 and {MAX_RANK}, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise DomainError(f"bit vector entries must be 0 or 1, got {bits}")


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element of (Z/2)^r as a bit vector; addition is XOR."""

    bits: tuple[int, ...]

    def __post_init__(self):
        _validate_bits(self.bits)

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        if not text or any(c not in "01" for c in text):
            raise DomainError(f"non-binary group element {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def r(self) -> int:
        return len(self.bits)

    @property
    def is_zero(self) -> bool:
        return not any(self.bits)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if len(self.bits) != len(other.bits):
            raise DimensionError("cannot add group elements of different rank")
        return GroupElement(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True, order=True)
class Character:
    """A character of (Z/2)^r, also a bit vector; chi(g) is the dot product mod 2."""

    bits: tuple[int, ...]

    def __post_init__(self):
        _validate_bits(self.bits)

    @classmethod
    def parse(cls, text: str) -> "Character":
        if not text or any(c not in "01" for c in text):
            raise DomainError(f"non-binary character {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def r(self) -> int:
        return len(self.bits)

    @property
    def is_zero(self) -> bool:
        return not any(self.bits)

    def __add__(self, other: "Character") -> "Character":
        if len(self.bits) != len(other.bits):
            raise DimensionError("cannot add characters of different rank")
        return Character(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def zero(r: int) -> GroupElement:
    return GroupElement((0,) * r)


def elements(r: int) -> Iterator[GroupElement]:
    """All 2^r group elements, in lexicographic order."""
    for bits in product((0, 1), repeat=r):
        yield GroupElement(bits)


def nonzero_elements(r: int) -> Iterator[GroupElement]:
    return (g for g in elements(r) if not g.is_zero)


def characters(r: int) -> Iterator[Character]:
    for bits in product((0, 1), repeat=r):
        yield Character(bits)


def nonzero_characters(r: int) -> Iterator[Character]:
    return (c for c in characters(r) if not c.is_zero)


def pair(chi: Character, g: GroupElement) -> int:
    """The pairing chi(g) = sum(chi_i * g_i) mod 2."""
    if chi.r != g.r:
        raise DimensionError(f"character rank {chi.r} does not match element rank {g.r}")
    return sum(a * b for a, b in zip(chi.bits, g.bits)) % 2


def epsilon(chi: Character, g: GroupElement) -> int:
    """0 when chi(g) = 0, 1 otherwise; defined only for nonzero g."""
    if g.is_zero:
        raise DomainError("epsilon is defined for nonzero group elements only")
    return pair(chi, g)


def epsilon2(chi: Character, chi2: Character, g: GroupElement) -> int:
    """1 exactly when epsilon(chi, g) and epsilon(chi2, g) are both 1."""
    if g.is_zero:
        raise DomainError("epsilon2 is defined for nonzero group elements only")
    return epsilon(chi, g) & epsilon(chi2, g)


def span(els: Iterable[GroupElement], r: int | None = None) -> frozenset[GroupElement]:
    """F_2-linear span of a set of elements, always containing zero."""
    els = list(els)
    if r is None:
        if not els:
            raise DomainError("span of an empty set needs an explicit rank")
        r = els[0].r
    if any(g.r != r for g in els):
        raise DimensionError("span arguments must share one rank")
    closure = {zero(r)}
    frontier = list(els)
    while frontier:
        g = frontier.pop()
        if g in closure:
            continue
        new = [g + h for h in closure]
        closure.add(g)
        frontier.extend(new)
    return frozenset(closure)


def is_subgroup(subset: Iterable[GroupElement], r: int | None = None) -> bool:
    sub = set(subset)
    if not sub:
        return False
    some = next(iter(sub))
    if r is None:
        r = some.r
    if zero(r) not in sub:
        return False
    return all(a + b in sub for a in sub for b in sub)


def subgroup_dimension(subgroup: Iterable[GroupElement]) -> int:
    n = len(set(subgroup))
    dim = n.bit_length() - 1
    if 2**dim != n:
        raise DomainError("subgroup size is not a power of two")
    return dim


def quotient_image(g: GroupElement, subgroup: Iterable[GroupElement]) -> GroupElement:
    """Canonical representative (lexicographically smallest) of g + subgroup."""
    sub = frozenset(subgroup)
    if not is_subgroup(sub, g.r):
        raise DomainError("quotient_image requires a valid F_2 subgroup")
    return min(g + h for h in sub)


def complement_basis(subgroup: Iterable[GroupElement], r: int) -> list[GroupElement]:
    """A basis of a complement of ``subgroup``, chosen greedily from coordinates."""
    sub = frozenset(subgroup)
    if not is_subgroup(sub, r):
        raise DomainError("complement_basis requires a valid F_2 subgroup")
    chosen: list[GroupElement] = []
    spanned = span(list(sub) + chosen, r)
    for i in range(r):
        e = GroupElement(tuple(1 if j == i else 0 for j in range(r)))
        if e not in spanned:
            chosen.append(e)
            spanned = span(list(sub) + chosen, r)
    return chosen
