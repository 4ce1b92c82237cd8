"""Picard lattice of an iterated blow-up of the projective plane.

A surface is encoded by its ordered list of blow-up centers, each possibly
infinitely near an earlier one.  Divisor classes are integer vectors in the
orthogonal basis (H, E_1, ..., E_k), where H is the line class and E_i the
total transform of the i-th exceptional divisor, so the intersection form is
diag(+1, -1, ..., -1) and the canonical class is -3H + E_1 + ... + E_k.

Note on coordinates: the strict transform of E_i after blowing up a point on
it is E_i - E_j in this basis, a (-2)-class; displayed coefficients elsewhere
that mix strict and total transforms must be converted before comparing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DanglingReferenceError,
    DimensionError,
    DomainError,
    GeometryError,
)


@dataclass(frozen=True)
class Center:
    """A blow-up center: a plane point, or a point infinitely near ``parent``."""

    name: str
    parent: str | None = None


@dataclass(frozen=True)
class BlownPlane:
    """The plane blown up along an ordered forest of centers."""

    centers: tuple[Center, ...] = ()

    def __post_init__(self):
        seen: set[str] = set()
        for c in self.centers:
            if c.name in seen:
                raise DomainError(f"duplicate center name {c.name!r}")
            if c.parent is not None and c.parent not in seen:
                raise DanglingReferenceError(
                    f"center {c.name!r} has parent {c.parent!r} that is not an earlier center"
                )
            seen.add(c.name)

    @property
    def rank(self) -> int:
        return 1 + len(self.centers)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.centers)

    def has_center(self, name: str) -> bool:
        return any(c.name == name for c in self.centers)

    def center(self, name: str) -> Center:
        for c in self.centers:
            if c.name == name:
                return c
        raise DanglingReferenceError(f"no center named {name!r}")

    def index_of(self, name: str) -> int:
        """Coefficient slot of E_name, i.e. 1 + position in the center list."""
        for i, c in enumerate(self.centers):
            if c.name == name:
                return 1 + i
        raise DanglingReferenceError(f"no center named {name!r}")

    def children_of(self, name: str) -> tuple[str, ...]:
        return tuple(c.name for c in self.centers if c.parent == name)

    def blow_up(self, center: Center) -> "BlownPlane":
        """Add one more center; existing classes embed with new coefficient 0."""
        if self.has_center(center.name):
            raise DomainError(f"center {center.name!r} already blown up")
        if center.parent is not None and not self.has_center(center.parent):
            raise DanglingReferenceError(
                f"cannot blow up {center.name!r}: parent {center.parent!r} does not exist"
            )
        return BlownPlane(self.centers + (center,))


#: The projective plane itself.
PLANE = BlownPlane()


@dataclass(frozen=True)
class DivisorClass:
    """An integer divisor class on a fixed blown plane."""

    surface: BlownPlane
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.surface.rank:
            raise DimensionError(
                f"class has {len(self.coeffs)} coefficients on a rank-{self.surface.rank} surface"
            )

    @property
    def degree(self) -> int:
        return self.coeffs[0]

    def multiplicity(self, center_name: str) -> int:
        """Multiplicity at a blown-up center (negative of the E coefficient)."""
        return -self.coeffs[self.surface.index_of(center_name)]

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same_surface(self, other: "DivisorClass") -> None:
        if self.surface != other.surface:
            raise DimensionError("divisor classes live on different surfaces")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_surface(other)
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_surface(other)
        return DivisorClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.surface, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        labels = ["H"] + [f"E{n}" for n in self.surface.names]
        parts: list[str] = []
        for coeff, label in zip(self.coeffs, labels):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else ("+" if parts else "")
            mag = abs(coeff)
            parts.append(f"{sign}{'' if mag == 1 else mag}{label}")
        return "".join(parts) if parts else "0"

    @classmethod
    def parse(cls, surface: BlownPlane, text: str) -> "DivisorClass":
        """Inverse of ``str``: reads signed combinations like ``4H-2E1-4E2``."""
        text = text.strip()
        if text == "0":
            return zero_class(surface)
        coeffs = [0] * surface.rank
        pos = 0
        token = re.compile(r"([+-]?)(\d*)(H|E[A-Za-z0-9_']+)")
        while pos < len(text):
            m = token.match(text, pos)
            if not m:
                raise DomainError(f"cannot parse divisor class {text!r} at offset {pos}")
            sign, mag, label = m.groups()
            value = int(mag) if mag else 1
            if sign == "-":
                value = -value
            if label == "H":
                coeffs[0] += value
            else:
                coeffs[surface.index_of(label[1:])] += value
            pos = m.end()
        return cls(surface, tuple(coeffs))


def zero_class(surface: BlownPlane) -> DivisorClass:
    return DivisorClass(surface, (0,) * surface.rank)


def hyperplane(surface: BlownPlane) -> DivisorClass:
    return DivisorClass(surface, (1,) + (0,) * (surface.rank - 1))


def exceptional(surface: BlownPlane, name: str) -> DivisorClass:
    """Total transform class E_name (self-intersection -1)."""
    coeffs = [0] * surface.rank
    coeffs[surface.index_of(name)] = 1
    return DivisorClass(surface, tuple(coeffs))


def canonical(surface: BlownPlane) -> DivisorClass:
    """The canonical class -3H + sum of all exceptional classes."""
    return DivisorClass(surface, (-3,) + (1,) * (surface.rank - 1))


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    """Intersection number a.b in the diagonal form (+1, -1, ..., -1)."""
    if a.surface != b.surface:
        raise DimensionError("cannot intersect classes on different surfaces")
    return a.coeffs[0] * b.coeffs[0] - sum(x * y for x, y in zip(a.coeffs[1:], b.coeffs[1:]))


def embed(cls: DivisorClass, surface: BlownPlane) -> DivisorClass:
    """Total transform of a class under further blow-ups of its surface."""
    if surface.centers[: len(cls.surface.centers)] != cls.surface.centers:
        raise DimensionError("target surface does not extend the class's surface")
    return DivisorClass(surface, cls.coeffs + (0,) * (surface.rank - len(cls.coeffs)))


def strict_transform(cls: DivisorClass, center_name: str, mult: int) -> DivisorClass:
    """Subtract ``mult`` times the exceptional class of an existing center."""
    if mult < 0:
        raise DomainError(f"multiplicity must be nonnegative, got {mult}")
    return cls - mult * exceptional(cls.surface, center_name)


def _reflection_root(surface: BlownPlane, p: str, q: str, r: str) -> DivisorClass:
    if len({p, q, r}) != 3:
        raise GeometryError("cremona reflection needs three distinct centers")
    for name in (p, q, r):
        parent = surface.center(name).parent
        if parent is not None and parent not in (p, q, r):
            raise GeometryError(
                f"center {name!r} is infinitely near {parent!r}, which is not a base point"
            )
    root = [0] * surface.rank
    root[0] = 1
    for name in (p, q, r):
        root[surface.index_of(name)] = -1
    return DivisorClass(surface, tuple(root))


def cremona_reflect(cls: DivisorClass, p: str, q: str, r: str) -> DivisorClass:
    """Reflection of a class under the quadratic map based at p, q, r.

    On multiplicities this is (d; m_p, m_q, m_r) -> (2d - m_p - m_q - m_r;
    d - m_q - m_r, d - m_p - m_r, d - m_p - m_q), other coefficients fixed.
    Degree-0 results are meaningful: they signal a contracted component.
    """
    alpha = _reflection_root(cls.surface, p, q, r)
    return cls + intersect(cls, alpha) * alpha


def contract(surface: BlownPlane, cls: DivisorClass) -> BlownPlane:
    """Blow a (-1)-exceptional back down; only childless coordinate classes qualify."""
    if cls.surface != surface:
        raise DimensionError("class does not live on the surface being contracted")
    k = canonical(surface)
    if intersect(cls, cls) != -1 or intersect(cls, k) != -1:
        raise GeometryError(f"{cls} is not a (-1)-class")
    name = None
    for c in surface.centers:
        if cls == exceptional(surface, c.name):
            name = c.name
            break
    if name is None:
        raise GeometryError(
            f"{cls} is not a coordinate exceptional class; change basis before contracting"
        )
    if surface.children_of(name):
        raise GeometryError(f"cannot contract E{name}: centers lie infinitely near it")
    remaining = tuple(c for c in surface.centers if c.name != name)
    return BlownPlane(remaining)


def push_forward(cls: DivisorClass, contracted: BlownPlane, name: str) -> DivisorClass:
    """Image of a class after contracting E_name (drops that coordinate)."""
    idx = cls.surface.index_of(name)
    coeffs = cls.coeffs[:idx] + cls.coeffs[idx + 1 :]
    return DivisorClass(contracted, coeffs)
