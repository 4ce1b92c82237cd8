"""The (Z/2)^r cover model: curve components, branch data, building data.

A ``CoverModel`` is a symbolic configuration: a blown plane, named curve
components with divisor classes, declared multiplicities at marked (not yet
blown up) points, and the branch assignment g -> components.  Building data
are never stored: the bases here have torsion-free Picard group, so the
branch data determine every L_chi through 2*L_chi ~ sum of eps_chi(g)*D_g,
and deriving them on demand removes an inconsistency surface.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from . import group, lattice
from .errors import (
    DanglingReferenceError,
    DimensionError,
    DomainError,
    InconsistencyError,
    ParityError,
)
from .group import Character, GroupElement
from .lattice import BlownPlane, DivisorClass


@dataclass(frozen=True)
class MarkedPoint:
    """A named point that blow-ups may later use as a center.

    ``parent`` names either a blown-up center or another marked point; a
    child point encodes a direction infinitely near its parent.
    """

    name: str
    parent: str | None = None


@dataclass(frozen=True)
class CurveComponent:
    """One irreducible-or-declared-reducible piece of the branch curve."""

    cid: str
    cls: DivisorClass
    irreducible: bool = True
    mults: tuple[tuple[str, int], ...] = ()
    exceptional_of: str | None = None

    def __post_init__(self):
        if self.cls.degree < 0:
            raise DomainError(f"component {self.cid!r} has negative degree")
        if self.cls.degree == 0:
            tail = self.cls.coeffs[1:]
            lead = next((c for c in tail if c != 0), None)
            if lead is None or lead < 0:
                raise DomainError(
                    f"degree-0 component {self.cid!r} must be an exceptional class"
                )
        if any(m < 1 for _, m in self.mults):
            raise DomainError(f"component {self.cid!r} has a multiplicity below 1")
        if len({name for name, _ in self.mults}) != len(self.mults):
            raise DomainError(f"component {self.cid!r} repeats a point in its multiplicities")
        object.__setattr__(self, "mults", tuple(sorted(self.mults)))

    def mult_at(self, point_name: str) -> int:
        for name, m in self.mults:
            if name == point_name:
                return m
        return 0


BranchEntry = tuple[str, int]
BranchData = tuple[tuple[GroupElement, tuple[BranchEntry, ...]], ...]


def _canonical_branch(raw: Iterable[tuple[GroupElement, Iterable[BranchEntry]]]) -> BranchData:
    merged: dict[GroupElement, dict[str, int]] = {}
    for g, entries in raw:
        bucket = merged.setdefault(g, {})
        for cid, k in entries:
            bucket[cid] = bucket.get(cid, 0) + k
    out = []
    for g in sorted(merged):
        entries = tuple(sorted((cid, k) for cid, k in merged[g].items() if k > 0))
        if entries:
            out.append((g, entries))
    return tuple(out)


@dataclass(frozen=True)
class CoverModel:
    """A totally symbolic (Z/2)^r cover of a blown plane."""

    r: int
    surface: BlownPlane
    components: tuple[CurveComponent, ...]
    branch: BranchData
    marked: tuple[MarkedPoint, ...] = ()
    pencil: str | None = None

    def __post_init__(self):
        if not 1 <= self.r <= group.MAX_RANK:
            raise DomainError(f"cover rank must be between 1 and {group.MAX_RANK}")
        object.__setattr__(self, "components", tuple(sorted(self.components, key=lambda c: c.cid)))
        object.__setattr__(self, "branch", _canonical_branch(self.branch))
        object.__setattr__(self, "marked", tuple(sorted(self.marked, key=lambda m: m.name)))
        ids = [c.cid for c in self.components]
        if len(set(ids)) != len(ids):
            raise DomainError("component ids must be unique")
        known_points = {m.name for m in self.marked}
        center_names = set(self.surface.names)
        if known_points & center_names:
            raise DomainError("marked point names collide with blown-up centers")
        for m in self.marked:
            if m.parent is not None and m.parent not in known_points | center_names:
                raise DanglingReferenceError(
                    f"marked point {m.name!r} has unknown parent {m.parent!r}"
                )
        for comp in self.components:
            if comp.cls.surface != self.surface:
                raise DimensionError(f"component {comp.cid!r} lives on the wrong surface")
            for name, _ in comp.mults:
                if name not in known_points:
                    raise DanglingReferenceError(
                        f"component {comp.cid!r} declares a multiplicity at unknown point {name!r}"
                    )
        id_set = set(ids)
        for g, entries in self.branch:
            if g.r != self.r:
                raise DimensionError(f"branch element {g} has wrong rank")
            if g.is_zero:
                raise DomainError("branch data are indexed by nonzero group elements")
            for cid, _ in entries:
                if cid not in id_set:
                    raise DanglingReferenceError(f"branch references unknown component {cid!r}")
        if self.pencil is not None and self.pencil not in known_points | center_names:
            raise DanglingReferenceError(f"pencil point {self.pencil!r} is not a known point")

    # -- lookups ---------------------------------------------------------

    def component(self, cid: str) -> CurveComponent:
        for c in self.components:
            if c.cid == cid:
                return c
        raise DanglingReferenceError(f"no component named {cid!r}")

    def marked_point(self, name: str) -> MarkedPoint:
        for m in self.marked:
            if m.name == name:
                return m
        raise DanglingReferenceError(f"no marked point named {name!r}")

    def branch_map(self) -> dict[GroupElement, tuple[BranchEntry, ...]]:
        return {g: entries for g, entries in self.branch}

    def branch_class(self, g: GroupElement) -> DivisorClass:
        total = lattice.zero_class(self.surface)
        for h, entries in self.branch:
            if h == g:
                for cid, k in entries:
                    total = total + k * self.component(cid).cls
        return total

    def branch_total(self) -> DivisorClass:
        total = lattice.zero_class(self.surface)
        for g, _ in self.branch:
            total = total + self.branch_class(g)
        return total

    def assignments_of(self, cid: str) -> list[tuple[GroupElement, int]]:
        out = []
        for g, entries in self.branch:
            for name, k in entries:
                if name == cid:
                    out.append((g, k))
        return out

    def inertia_of(self, cid: str) -> GroupElement:
        """The unique g with cid in D_g; requires a normalized model."""
        assigned = self.assignments_of(cid)
        if len(assigned) != 1 or assigned[0][1] != 1:
            raise InconsistencyError(
                f"component {cid!r} is not reduced/uniquely assigned; normalize first"
            )
        return assigned[0][0]

    def components_at(self, point_name: str) -> list[tuple[CurveComponent, int]]:
        """Branch components passing through a marked point, with multiplicities."""
        out = []
        for comp in self.components:
            m = comp.mult_at(point_name)
            if m >= 1:
                out.append((comp, m))
        return out

    def children_of_point(self, name: str) -> tuple[str, ...]:
        return tuple(m.name for m in self.marked if m.parent == name)

    def point_is_ripe(self, name: str) -> bool:
        """A point can be blown up once its parent (if any) has been."""
        parent = self.marked_point(name).parent
        return parent is None or self.surface.has_center(parent)


# -- construction helpers -------------------------------------------------


def plane_cover(
    r: int,
    components: Sequence[tuple[str, int, Mapping[str, int]]],
    branch: Mapping[str, Sequence[tuple[str, int]]],
    marked: Sequence[tuple[str, str | None]] = (),
    pencil: str | None = None,
    reducible: Iterable[str] = (),
) -> CoverModel:
    """Build a plane configuration from degrees and declared multiplicities."""
    reducible = set(reducible)
    comps = tuple(
        CurveComponent(
            cid,
            DivisorClass(lattice.PLANE, (degree,)),
            irreducible=cid not in reducible,
            mults=tuple(mults.items()),
        )
        for cid, degree, mults in components
    )
    branch_data = tuple(
        (GroupElement.parse(key), tuple(entries)) for key, entries in branch.items()
    )
    marks = tuple(MarkedPoint(name, parent) for name, parent in marked)
    return CoverModel(r, lattice.PLANE, comps, branch_data, marks, pencil)


def add_marked_point(
    cover: CoverModel,
    name: str,
    parent: str | None = None,
    mults: Mapping[str, int] | None = None,
) -> CoverModel:
    """Declare a new marked point lying on the given components."""
    if any(m.name == name for m in cover.marked) or cover.surface.has_center(name):
        raise DomainError(f"point name {name!r} is already in use")
    mults = dict(mults or {})
    new_comps = []
    for comp in cover.components:
        extra = dict(comp.mults)
        if comp.cid in mults:
            extra[name] = mults.pop(comp.cid)
        if parent is not None and comp.exceptional_of == parent:
            # the exceptional curve of the parent passes through every
            # direction marked on it
            extra[name] = extra.get(name, 1)
        new_comps.append(replace(comp, mults=tuple(extra.items())))
    if mults:
        raise DanglingReferenceError(f"unknown components in mults: {sorted(mults)}")
    return replace(
        cover,
        components=tuple(new_comps),
        marked=cover.marked + (MarkedPoint(name, parent),),
    )


# -- operations ------------------------------------------------------------


def is_totally_ramified(cover: CoverModel) -> bool:
    """True when the g with nonzero D_g generate the whole group."""
    carriers = [g for g, entries in cover.branch if entries]
    return len(group.span(carriers, cover.r)) == 2**cover.r


def derive_building_data(cover: CoverModel) -> dict[Character, DivisorClass]:
    """L_chi = (1/2) * sum over nonzero g of eps_chi(g) * [D_g].

    Raises ParityError naming the first character whose sum has an odd
    coordinate: this is exactly the classical parity obstruction (for r=2,
    the three branch degrees must share their parity).
    """
    out: dict[Character, DivisorClass] = {}
    classes = {g: cover.branch_class(g) for g, _ in cover.branch}
    for chi in group.characters(cover.r):
        if chi.is_zero:
            out[chi] = lattice.zero_class(cover.surface)
            continue
        total = lattice.zero_class(cover.surface)
        for g, cls in classes.items():
            if group.epsilon(chi, g):
                total = total + cls
        if any(c % 2 for c in total.coeffs):
            raise ParityError(
                f"branch data sum for character {chi} is not divisible by two",
                character=chi,
            )
        out[chi] = DivisorClass(cover.surface, tuple(c // 2 for c in total.coeffs))
    return out


@dataclass(frozen=True)
class ProdReport:
    """Result of checking L_chi + L_chi' ~ L_{chi chi'} + sum eps_{chi,chi'}(g) D_g."""

    pairs_checked: int
    violations: tuple[tuple[Character, Character], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_prod_relations(
    cover: CoverModel, building: Mapping[Character, DivisorClass] | None = None
) -> ProdReport:
    """Verify the product relations for every ordered pair of characters."""
    if building is None:
        building = derive_building_data(cover)
    classes = {g: cover.branch_class(g) for g, _ in cover.branch}
    violations = []
    chars = list(group.characters(cover.r))
    count = 0
    for chi in chars:
        for chi2 in chars:
            count += 1
            lhs = building[chi] + building[chi2]
            rhs = building[chi + chi2]
            for g, cls in classes.items():
                if group.epsilon2(chi, chi2, g):
                    rhs = rhs + cls
            if lhs != rhs:
                violations.append((chi, chi2))
    return ProdReport(count, tuple(violations))


def quotient_cover(cover: CoverModel, subgroup: Iterable[GroupElement]) -> CoverModel:
    """The induced (Z/2)^(r-s) cover of the same surface, s = dim subgroup.

    Branch rule: D'_hbar is the union of the D_g with g mapping to hbar != 0
    in G/H.  Building data are re-derived from the quotient branch data.
    """
    gens = list(subgroup)
    sub = group.span(gens, cover.r) if gens else frozenset([group.zero(cover.r)])
    if not group.is_subgroup(sub, cover.r):
        raise DomainError("quotient requires a valid subgroup")
    s = group.subgroup_dimension(sub)
    if s == cover.r:
        raise DomainError("cannot quotient by the full group")
    basis = group.complement_basis(sub, cover.r)
    new_r = cover.r - s
    if len(basis) != new_r:
        raise InconsistencyError("complement basis has unexpected size")

    def project(g: GroupElement) -> GroupElement | None:
        # coordinates of g modulo the subgroup, in the chosen complement basis
        for bits in group.elements(new_r):
            rep = group.zero(cover.r)
            for coeff, vec in zip(bits.bits, basis):
                if coeff:
                    rep = rep + vec
            if g + rep in sub:
                return bits
        return None

    new_branch: list[tuple[GroupElement, tuple[BranchEntry, ...]]] = []
    for g, entries in cover.branch:
        image = project(g)
        if image is None:
            raise InconsistencyError(f"element {g} has no image in the quotient")
        if image.is_zero:
            continue
        new_branch.append((image, entries))
    kept = {cid for _, entries in new_branch for cid, _ in entries}
    comps = tuple(c for c in cover.components if c.cid in kept)
    return CoverModel(new_r, cover.surface, comps, tuple(new_branch), cover.marked, cover.pencil)
