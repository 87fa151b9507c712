"""Reference resolution: raw syntax trees to well-formed models.

Two passes: collect declared ids (reporting duplicates), then convert each
declaration, checking that every name points at an element of the right kind.
Either a model with zero dangling references comes back, or one or more
errors; never both.

Source spans survive into ``BomiModel.source_spans``.  Keys are entity ids,
``user->bo`` for usages, ``team->bo`` for governs links,
``responsible:role->bo`` for responsibilities (prefixed because a
responsibility and a usage may share endpoint ids), and ``""`` for the whole
model header.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import syntax
from .diagnostics import Diagnostic, Severity, SourceSpan
from .parser import parse
from .model import (
    BomiModel,
    BoundaryObject,
    CrudRight,
    DistanceType,
    Driver,
    DriverType,
    GovernanceTeam,
    GovernsLink,
    Lifecycle,
    MethodologicalIsland,
    MiType,
    QualAttr,
    QualLevel,
    Responsibility,
    Role,
    SuperType,
    SuperTypeKind,
    UsageLink,
    UserKind,
)

DUPLICATE_ID = "duplicate-id"
UNRESOLVED_REFERENCE = "unresolved-reference"
TYPE_MISMATCH = "type-mismatch"


@dataclass(frozen=True)
class ResolutionError:
    kind: str  # one of the three constants above
    message: str
    span: SourceSpan
    related: SourceSpan | None = None  # e.g. the first declaration of a duplicate

    def to_diagnostic(self) -> Diagnostic:
        hint = None
        if self.related is not None:
            hint = f"first declared at {self.related}"
        return Diagnostic(Severity.ERROR, self.message, self.span, hint)


_KIND_NAMES = {
    syntax.BoDecl: "boundary object",
    syntax.MiDecl: "island",
    syntax.RoleDecl: "role",
    syntax.DriverDecl: "driver",
    syntax.GovTeamDecl: "governance team",
}

_LEVELS = {lv.value: lv for lv in QualLevel}
_LIFECYCLES = {lc.value.lower(): lc for lc in Lifecycle}
_MI_TYPES = {t.value.lower(): t for t in MiType}
_DRIVER_TYPES = {t.value.lower(): t for t in DriverType}
_DISTANCE_TYPES = {t.value.lower(): t for t in DistanceType}
_SUPER_KINDS = {k.value.lower(): k for k in SuperTypeKind}
_CRUD = {r.value.lower(): r for r in CrudRight}


def resolve(raw: syntax.RawModel) -> tuple[BomiModel | None, list[ResolutionError]]:
    """Resolve a raw tree; returns (model, []) or (None, errors)."""
    r = _Resolver(raw)
    return r.run()


def load(text: str, file: str = "<input>") -> tuple[BomiModel | None, list[Diagnostic]]:
    """Full front end: parse then resolve.

    Returns the model plus all diagnostics (parser's own and resolution
    errors rendered as diagnostics).  The model is None whenever any
    error-severity diagnostic is present.
    """
    raw, diagnostics = parse(text, file)
    if any(d.severity is Severity.ERROR for d in diagnostics):
        return None, diagnostics
    model, errors = resolve(raw)
    diagnostics = diagnostics + [e.to_diagnostic() for e in errors]
    diagnostics.sort(key=lambda d: d.span.position)
    return model, diagnostics


class _Resolver:
    def __init__(self, raw: syntax.RawModel) -> None:
        self.raw = raw
        self.errors: list[ResolutionError] = []
        self.decls: dict[str, tuple[str, SourceSpan]] = {}  # id -> (kind name, span)
        self.spans: dict[str, SourceSpan] = {"": raw.span}

    def error(self, kind: str, message: str, span: SourceSpan,
              related: SourceSpan | None = None) -> None:
        self.errors.append(ResolutionError(kind, message, span, related))

    def run(self) -> tuple[BomiModel | None, list[ResolutionError]]:
        for el in self.raw.elements:
            if type(el) in _KIND_NAMES:
                kind = _KIND_NAMES[type(el)]
                prior = self.decls.get(el.id)
                if prior is not None:
                    self.error(DUPLICATE_ID, f"duplicate id {el.id!r} (already a {prior[0]})",
                               el.span, related=prior[1])
                else:
                    self.decls[el.id] = (kind, el.span)
                    self.spans[el.id] = el.span

        bos: list[BoundaryObject] = []
        islands: list[MethodologicalIsland] = []
        roles: list[Role] = []
        usages: list[UsageLink] = []
        resps: list[Responsibility] = []
        drivers: list[Driver] = []
        teams: list[GovernanceTeam] = []
        governs: list[GovernsLink] = []
        member_of: dict[str, list[str]] = {}

        usage_pairs: dict[tuple[str, str], SourceSpan] = {}
        resp_pairs: dict[tuple[str, str], SourceSpan] = {}
        governs_pairs: dict[tuple[str, str], SourceSpan] = {}

        for el in self.raw.elements:
            if isinstance(el, syntax.BoDecl):
                if self._owns(el):
                    bos.append(self._boundary_object(el))
            elif isinstance(el, syntax.MiDecl):
                if self._owns(el):
                    islands.append(self._island(el))
            elif isinstance(el, syntax.RoleDecl):
                if self._owns(el):
                    roles.append(self._role(el))
            elif isinstance(el, syntax.DriverDecl):
                if self._owns(el):
                    drivers.append(self._driver(el))
            elif isinstance(el, syntax.GovTeamDecl):
                if self._owns(el):
                    teams.append(self._team(el, member_of))
                    for g in el.governs:
                        link = self._governs(el.id, g, governs_pairs)
                        if link is not None:
                            governs.append(link)
            elif isinstance(el, syntax.UsageDecl):
                link = self._usage(el, usage_pairs)
                if link is not None:
                    usages.append(link)
            elif isinstance(el, syntax.RespDecl):
                resp = self._responsibility(el, resp_pairs)
                if resp is not None:
                    resps.append(resp)

        roles = [
            Role(r.id, r.name, r.part_of, tuple(member_of.get(r.id, ())))
            for r in roles
        ]

        if self.errors:
            self.errors.sort(key=lambda e: e.span.position)
            return None, self.errors
        model = BomiModel(
            name=self.raw.name,
            boundary_objects=tuple(bos),
            islands=tuple(islands),
            roles=tuple(roles),
            usages=tuple(usages),
            responsibilities=tuple(resps),
            drivers=tuple(drivers),
            governance_teams=tuple(teams),
            governs_links=tuple(governs),
            source_spans=self.spans,
        )
        return model, []

    def _owns(self, el) -> bool:
        """True when this declaration is the one that registered the id."""
        return self.decls.get(el.id, (None, None))[1] is el.span

    # --- reference checking ---

    def _ref(self, name: str, span: SourceSpan, expected: tuple[str, ...], context: str) -> bool:
        decl = self.decls.get(name)
        if decl is None:
            self.error(UNRESOLVED_REFERENCE, f"{context} references undeclared name {name!r}", span)
            return False
        if decl[0] not in expected:
            wanted = " or ".join(expected)
            self.error(TYPE_MISMATCH,
                       f"{context} references {name!r}, which is a {decl[0]}, expected a {wanted}",
                       span, related=decl[1])
            return False
        return True

    # --- element conversion (parser already validated value shapes) ---

    def _boundary_object(self, el: syntax.BoDecl) -> BoundaryObject:
        kw: dict = {}
        for attr in el.attrs:
            v = attr.value
            if attr.key == "supertype":
                if isinstance(v, syntax.VStr):
                    kw["super_type"] = SuperType(SuperTypeKind.OTHER, v.text)
                else:
                    kw["super_type"] = SuperType(_SUPER_KINDS[v.text.lower()])
            elif attr.key == "subtype":
                kw["sub_type"] = v.text
            elif attr.key == "purpose":
                kw["purpose"] = v.text
            elif attr.key == "lifecycle":
                kw["lifecycle"] = _LIFECYCLES[v.text.lower()]
            elif attr.key == "prescriptive":
                kw["prescriptive"] = v.text.lower() == "true"
            elif attr.key == "representation_format":
                kw["representation_format"] = v.text
            elif attr.key == "versioning":
                kw["versioning"] = v.text
            elif attr.key == "maintainability":
                kw["maintenance_burden"] = _qual(v)
            else:
                kw[attr.key] = _qual(v)
        return BoundaryObject(el.id, **kw)

    def _island(self, el: syntax.MiDecl) -> MethodologicalIsland:
        types: frozenset[MiType] = frozenset()
        description = ""
        for attr in el.attrs:
            if attr.key == "types":
                types = frozenset(_MI_TYPES[item.text.lower()] for item in attr.value.items)
            else:
                description = attr.value.text
        return MethodologicalIsland(el.id, types, description)

    def _role(self, el: syntax.RoleDecl) -> Role:
        part_of = None
        name = ""
        for attr in el.attrs:
            if attr.key == "part_of":
                ref = attr.value
                if self._ref(ref.text, ref.span, ("island",), f"role {el.id!r} 'part_of'"):
                    part_of = ref.text
            else:
                name = attr.value.text
        return Role(el.id, name, part_of)

    def _usage(self, el: syntax.UsageDecl, pairs) -> UsageLink | None:
        ok_user = self._ref(el.user, el.user_span, ("role", "island"), "usage")
        ok_bo = self._ref(el.bo, el.bo_span, ("boundary object",), "usage")
        if not (ok_user and ok_bo):
            return None
        if (el.user, el.bo) in pairs:
            self.error(DUPLICATE_ID, f"duplicate usage {el.user}->{el.bo}", el.span,
                       related=pairs[(el.user, el.bo)])
            return None
        pairs[(el.user, el.bo)] = el.span
        kind = UserKind.ROLE if self.decls[el.user][0] == "role" else UserKind.ISLAND
        kw: dict = {}
        for attr in el.attrs:
            if attr.key == "crud":
                seen: list[CrudRight] = []
                for item in attr.value.items:
                    right = _CRUD[item.text.lower()]
                    if right not in seen:
                        seen.append(right)
                kw["crud"] = frozenset(seen)
            else:
                kw[attr.key] = _qual(attr.value)
        link = UsageLink(el.user, kind, el.bo, **kw)
        self.spans[link.key] = el.span
        return link

    def _responsibility(self, el: syntax.RespDecl, pairs) -> Responsibility | None:
        ok_role = self._ref(el.role, el.role_span, ("role",), "responsibility")
        ok_bo = self._ref(el.bo, el.bo_span, ("boundary object",), "responsibility")
        if not (ok_role and ok_bo):
            return None
        if (el.role, el.bo) in pairs:
            self.error(DUPLICATE_ID, f"duplicate responsibility {el.role}->{el.bo}", el.span,
                       related=pairs[(el.role, el.bo)])
            return None
        pairs[(el.role, el.bo)] = el.span
        resp = Responsibility(el.role, el.bo)
        self.spans[f"responsible:{resp.key}"] = el.span
        return resp

    def _driver(self, el: syntax.DriverDecl) -> Driver:
        kw: dict = {}
        for attr in el.attrs:
            v = attr.value
            if attr.key == "type":
                kw["driver_type"] = _DRIVER_TYPES[v.text.lower()]
            elif attr.key == "subtype":
                kw["driver_sub_type"] = v.text
            elif attr.key == "distance_type":
                kw["distance_type"] = _DISTANCE_TYPES[v.text.lower()]
            elif attr.key == "distance_size":
                kw["distance_size"] = _LEVELS[v.level]  # note dropped; parser warned
            elif attr.key == "drives":
                targets: list[str] = []
                for item in v.items:
                    if self._ref(item.text, item.span, ("island",), f"driver {el.id!r} 'drives'"):
                        if item.text not in targets:
                            targets.append(item.text)
                kw["drives"] = tuple(targets)
        return Driver(el.id, **kw)

    def _team(self, el: syntax.GovTeamDecl, member_of: dict[str, list[str]]) -> GovernanceTeam:
        name = ""
        members: list[str] = []
        for attr in el.attrs:
            if attr.key == "name":
                name = attr.value.text
            elif attr.key == "members":
                for item in attr.value.items:
                    if self._ref(item.text, item.span, ("role",), f"governance team {el.id!r} member"):
                        if item.text not in members:
                            members.append(item.text)
                            member_of.setdefault(item.text, []).append(el.id)
        return GovernanceTeam(el.id, name, tuple(members))

    def _governs(self, team_id: str, el: syntax.GovernsDecl, pairs) -> GovernsLink | None:
        if not self._ref(el.bo, el.bo_span, ("boundary object",), f"governance team {team_id!r} 'governs'"):
            return None
        if (team_id, el.bo) in pairs:
            self.error(DUPLICATE_ID, f"duplicate governs link {team_id}->{el.bo}", el.span,
                       related=pairs[(team_id, el.bo)])
            return None
        pairs[(team_id, el.bo)] = el.span
        mechanism = ""
        freq = QualAttr()
        for attr in el.attrs:
            if attr.key == "coordination_mechanism":
                mechanism = attr.value.text
            else:
                freq = _qual(attr.value)
        link = GovernsLink(team_id, el.bo, mechanism, freq)
        self.spans[link.key] = el.span
        return link


def _qual(v: syntax.VQual) -> QualAttr:
    return QualAttr(_LEVELS[v.level], v.note)
