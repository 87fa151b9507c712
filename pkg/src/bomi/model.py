"""Domain types for resolved boundary-object / methodological-island models.

A :class:`BomiModel` is immutable and internally consistent by construction:
the constructor raises ``ValueError`` on duplicate ids, dangling references,
or duplicate relationship pairs.  Softer structural rules (empty type sets,
empty drives, blank custom super-type labels) are *not* constructor errors;
``conformance`` reports them as data so incomplete models stay inspectable.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from typing import Iterable, Mapping

from .diagnostics import SourceSpan


class QualLevel(enum.Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QualAttr:
    """Qualitative attribute: a level plus optional explanatory note.

    The note never changes rule evaluation; it only enriches reports.
    """

    level: QualLevel = QualLevel.UNKNOWN
    note: str | None = None

    @property
    def is_unknown(self) -> bool:
        return self.level is QualLevel.UNKNOWN

    @classmethod
    def unknown(cls) -> "QualAttr":
        return cls()


class SuperTypeKind(enum.Enum):
    TECHNOLOGY = "Technology"
    TASK = "Task"
    PLANNING = "Planning"
    OTHER = "Other"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SuperType:
    kind: SuperTypeKind = SuperTypeKind.UNKNOWN
    label: str | None = None

    def __post_init__(self) -> None:
        if self.kind is SuperTypeKind.OTHER and self.label is None:
            raise ValueError("custom super type needs a label")
        if self.kind is not SuperTypeKind.OTHER and self.label is not None:
            raise ValueError(f"label only applies to custom super types, not {self.kind}")


class Lifecycle(enum.Enum):
    PLANNING = "Planning"
    OPERATION = "Operation"
    DEPRECATE = "Deprecate"
    RETIRE = "Retire"
    UNKNOWN = "Unknown"


class MiType(enum.Enum):
    TEAM = "Team"
    SILO = "Silo"
    DEPARTMENT = "Department"
    ORGANIZATION = "Organization"


class DriverType(enum.Enum):
    TECHNOLOGY = "Technology"
    PROCESS = "Process"
    ORGANIZATION = "Organization"
    UNKNOWN = "Unknown"


class DistanceType(enum.Enum):
    CULTURE = "Culture"
    GEOGRAPHY = "Geography"
    ORGANIZATION = "Organization"


class CrudRight(enum.Enum):
    CREATE = "C"
    READ = "R"
    UPDATE = "U"
    DELETE = "D"


class UserKind(enum.Enum):
    ROLE = "role"
    ISLAND = "island"


@dataclass(frozen=True)
class BoundaryObject:
    """Artifact used for coordination between islands, with its quality profile."""

    id: str
    super_type: SuperType = SuperType()
    sub_type: str = ""
    purpose: str = ""
    level_of_detail: QualAttr = QualAttr()
    frequency_of_change: QualAttr = QualAttr()
    modularity: QualAttr = QualAttr()
    maintenance_burden: QualAttr = QualAttr()  # high = costly to maintain
    prescriptive: bool | None = None
    lifecycle: Lifecycle = Lifecycle.UNKNOWN
    representation_format: str = ""
    internal_consistency: QualAttr = QualAttr()
    external_consistency: QualAttr = QualAttr()
    versioning: str = ""
    connectedness: QualAttr = QualAttr()
    up_to_date: QualAttr = QualAttr()


@dataclass(frozen=True)
class MethodologicalIsland:
    """Organizational group working differently from its surroundings."""

    id: str
    types: frozenset[MiType] = frozenset()
    description: str = ""


@dataclass(frozen=True)
class Role:
    id: str
    name: str = ""
    part_of: str | None = None  # island id
    member_of: tuple[str, ...] = ()  # governance team ids, filled at resolution

    @property
    def display_name(self) -> str:
        return self.name or self.id


@dataclass(frozen=True)
class UsageLink:
    """How a role or island uses a boundary object."""

    user: str
    user_kind: UserKind
    bo: str
    accessibility: QualAttr = QualAttr()
    stability: QualAttr = QualAttr()
    criticality: QualAttr = QualAttr()
    fit_for_purpose: QualAttr = QualAttr()
    crud: frozenset[CrudRight] = frozenset()

    @property
    def key(self) -> str:
        return f"{self.user}->{self.bo}"


@dataclass(frozen=True)
class Responsibility:
    role: str
    bo: str

    @property
    def key(self) -> str:
        return f"{self.role}->{self.bo}"


@dataclass(frozen=True)
class Driver:
    """Force making islands split off or persist."""

    id: str
    driver_type: DriverType = DriverType.UNKNOWN
    driver_sub_type: str = ""
    distance_type: DistanceType | None = None
    distance_size: QualLevel = QualLevel.UNKNOWN
    drives: tuple[str, ...] = ()  # island ids


@dataclass(frozen=True)
class GovernanceTeam:
    id: str
    name: str = ""
    members: tuple[str, ...] = ()  # role ids


@dataclass(frozen=True)
class GovernsLink:
    team: str
    bo: str
    coordination_mechanism: str = ""
    frequency_of_coordination: QualAttr = QualAttr()

    @property
    def key(self) -> str:
        return f"{self.team}->{self.bo}"


FALLBACK_SPAN = SourceSpan("<model>", 1, 1, 1, 1)


@dataclass(frozen=True)
class BomiModel:
    """One resolved instance model; the unit every later stage works on."""

    name: str = ""
    boundary_objects: tuple[BoundaryObject, ...] = ()
    islands: tuple[MethodologicalIsland, ...] = ()
    roles: tuple[Role, ...] = ()
    usages: tuple[UsageLink, ...] = ()
    responsibilities: tuple[Responsibility, ...] = ()
    drivers: tuple[Driver, ...] = ()
    governance_teams: tuple[GovernanceTeam, ...] = ()
    governs_links: tuple[GovernsLink, ...] = ()
    source_spans: Mapping[str, SourceSpan] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        problems = integrity_problems(self)
        if problems:
            raise ValueError("inconsistent model: " + "; ".join(problems))
        by_id = {}
        for el in self.entities():
            by_id[el.id] = el
        object.__setattr__(self, "_by_id", by_id)
        usages_by_bo: dict[str, list[UsageLink]] = {}
        for u in self.usages:
            usages_by_bo.setdefault(u.bo, []).append(u)
        object.__setattr__(self, "_usages_by_bo", usages_by_bo)
        resp_by_bo: dict[str, list[Responsibility]] = {}
        for r in self.responsibilities:
            resp_by_bo.setdefault(r.bo, []).append(r)
        object.__setattr__(self, "_resp_by_bo", resp_by_bo)
        governs_by_bo: dict[str, list[GovernsLink]] = {}
        for g in self.governs_links:
            governs_by_bo.setdefault(g.bo, []).append(g)
        object.__setattr__(self, "_governs_by_bo", governs_by_bo)

    # --- lookups (resolution guarantees hits for stored references) ---

    def entities(self):
        """All identifier-carrying elements, in declaration order."""
        yield from self.boundary_objects
        yield from self.islands
        yield from self.roles
        yield from self.drivers
        yield from self.governance_teams

    def element(self, element_id: str):
        return self._by_id[element_id]  # type: ignore[attr-defined]

    def island(self, island_id: str) -> MethodologicalIsland:
        el = self.element(island_id)
        assert isinstance(el, MethodologicalIsland)
        return el

    def role(self, role_id: str) -> Role:
        el = self.element(role_id)
        assert isinstance(el, Role)
        return el

    def team(self, team_id: str) -> GovernanceTeam:
        el = self.element(team_id)
        assert isinstance(el, GovernanceTeam)
        return el

    def usages_of(self, bo_id: str) -> tuple[UsageLink, ...]:
        return tuple(self._usages_by_bo.get(bo_id, ()))  # type: ignore[attr-defined]

    def responsibilities_of(self, bo_id: str) -> tuple[Responsibility, ...]:
        return tuple(self._resp_by_bo.get(bo_id, ()))  # type: ignore[attr-defined]

    def governs_of(self, bo_id: str) -> tuple[GovernsLink, ...]:
        return tuple(self._governs_by_bo.get(bo_id, ()))  # type: ignore[attr-defined]

    def span_of(self, subject_id: str) -> SourceSpan:
        return self.source_spans.get(subject_id, FALLBACK_SPAN)

    def user_island(self, usage: UsageLink) -> str | None:
        """Island a usage comes from: the island itself, or the role's island."""
        if usage.user_kind is UserKind.ISLAND:
            return usage.user
        return self.role(usage.user).part_of


def integrity_problems(model: BomiModel) -> list[str]:
    """Hard invariant violations: duplicate ids, dangling references, duplicate pairs."""
    problems: list[str] = []
    seen: set[str] = set()
    for el in model.entities():
        if el.id in seen:
            problems.append(f"duplicate id {el.id!r}")
        seen.add(el.id)
    island_ids = {i.id for i in model.islands}
    role_ids = {r.id for r in model.roles}
    bo_ids = {b.id for b in model.boundary_objects}
    team_ids = {t.id for t in model.governance_teams}

    def need(ref: str, pool: set[str], what: str, context: str) -> None:
        if ref not in pool:
            problems.append(f"{context} references unknown {what} {ref!r}")

    for r in model.roles:
        if r.part_of is not None:
            need(r.part_of, island_ids, "island", f"role {r.id!r}")
        for t in r.member_of:
            need(t, team_ids, "governance team", f"role {r.id!r}")
    pairs: set[tuple[str, str]] = set()
    for u in model.usages:
        pool = role_ids if u.user_kind is UserKind.ROLE else island_ids
        need(u.user, pool, u.user_kind.value, f"usage {u.key!r}")
        need(u.bo, bo_ids, "boundary object", f"usage {u.key!r}")
        if (u.user, u.bo) in pairs:
            problems.append(f"duplicate usage {u.key!r}")
        pairs.add((u.user, u.bo))
    rpairs: set[tuple[str, str]] = set()
    for resp in model.responsibilities:
        need(resp.role, role_ids, "role", f"responsibility {resp.key!r}")
        need(resp.bo, bo_ids, "boundary object", f"responsibility {resp.key!r}")
        if (resp.role, resp.bo) in rpairs:
            problems.append(f"duplicate responsibility {resp.key!r}")
        rpairs.add((resp.role, resp.bo))
    for d in model.drivers:
        for i in d.drives:
            need(i, island_ids, "island", f"driver {d.id!r}")
    for t in model.governance_teams:
        for m in t.members:
            need(m, role_ids, "role", f"governance team {t.id!r}")
    gpairs: set[tuple[str, str]] = set()
    for g in model.governs_links:
        need(g.team, team_ids, "governance team", f"governs {g.key!r}")
        need(g.bo, bo_ids, "boundary object", f"governs {g.key!r}")
        if (g.team, g.bo) in gpairs:
            problems.append(f"duplicate governs link {g.key!r}")
        gpairs.add((g.team, g.bo))
    return problems


# --- census -----------------------------------------------------------------


@dataclass(frozen=True)
class ElementCensus:
    """Per-kind element counts, in the conventional reporting column order."""

    bo: int = 0
    mi: int = 0
    usage: int = 0
    driver: int = 0
    role: int = 0
    governance_team: int = 0
    governs: int = 0

    COLUMNS = ("BO", "MI", "Usage", "Driver", "Role", "Governance Team", "Governs")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.bo, self.mi, self.usage, self.driver, self.role,
                self.governance_team, self.governs)

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def total(self) -> int:
        return sum(self.as_tuple())


def census(model: BomiModel) -> ElementCensus:
    """Count elements per kind; pure and deterministic."""
    return ElementCensus(
        bo=len(model.boundary_objects),
        mi=len(model.islands),
        usage=len(model.usages),
        driver=len(model.drivers),
        role=len(model.roles),
        governance_team=len(model.governance_teams),
        governs=len(model.governs_links),
    )


# --- structural conformance ---------------------------------------------


@dataclass(frozen=True)
class StructuralViolation:
    subject_id: str
    message: str
    span: SourceSpan


def conformance(model: BomiModel) -> list[StructuralViolation]:
    """Multiplicity/enumeration violations that are not reference errors.

    Total: violations are returned as data, an empty list means conformant.
    """
    out: list[StructuralViolation] = []
    for bo in model.boundary_objects:
        if bo.super_type.kind is SuperTypeKind.OTHER and not bo.super_type.label:
            out.append(StructuralViolation(
                bo.id, f"boundary object {bo.id!r} has a custom super type with an empty label",
                model.span_of(bo.id)))
    for mi in model.islands:
        if not mi.types:
            out.append(StructuralViolation(
                mi.id, f"island {mi.id!r} has no types (at least one required)",
                model.span_of(mi.id)))
    for d in model.drivers:
        if not d.drives:
            out.append(StructuralViolation(
                d.id, f"driver {d.id!r} drives no island (at least one required)",
                model.span_of(d.id)))
    out.sort(key=lambda v: v.span.position)
    return out


def quality_attrs(element: BoundaryObject | UsageLink | GovernsLink) -> dict[str, QualAttr]:
    """The qualitative attributes of an element, keyed by surface keyword."""
    if isinstance(element, BoundaryObject):
        return {
            "level_of_detail": element.level_of_detail,
            "frequency_of_change": element.frequency_of_change,
            "modularity": element.modularity,
            "maintainability": element.maintenance_burden,
            "internal_consistency": element.internal_consistency,
            "external_consistency": element.external_consistency,
            "connectedness": element.connectedness,
            "up_to_date": element.up_to_date,
        }
    if isinstance(element, UsageLink):
        return {
            "accessibility": element.accessibility,
            "stability": element.stability,
            "criticality": element.criticality,
            "fit_for_purpose": element.fit_for_purpose,
        }
    return {"frequency_of_coordination": element.frequency_of_coordination}


def iter_attr_slots(model: BomiModel) -> Iterable[tuple[str, str]]:
    """(subject id, attribute keyword) pairs for every qualitative slot."""
    for bo in model.boundary_objects:
        for name in quality_attrs(bo):
            yield bo.id, name
        yield bo.id, "lifecycle"
    for u in model.usages:
        for name in quality_attrs(u):
            yield u.key, name
    for g in model.governs_links:
        for name in quality_attrs(g):
            yield g.key, name
