"""Canonical JSON interchange for resolved models.

The writer is byte-stable: keys sorted, two-space indent, trailing newline,
version pinned via ``"bomiVersion": 1``.  Blank values (unknown levels with
no note, empty strings, empty sets) are omitted; absence means unknown,
matching the surface syntax default.  The reader validates shape strictly
(unknown fields are errors) and re-checks the resolution invariants, so a
loaded model is as trustworthy as a freshly resolved one.
"""
from __future__ import annotations

import json
from typing import Any

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

FORMAT_VERSION = 1


class SchemaError(ValueError):
    """Input does not match the interchange schema.

    ``path`` is a JSON-pointer-style location of the offending field.
    """

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
        self.reason = message


class VersionError(SchemaError):
    """Unsupported bomiVersion."""


# --- writing ---------------------------------------------------------------


def _qual_out(attr: QualAttr) -> dict[str, str] | None:
    if attr.is_unknown and attr.note is None:
        return None
    out: dict[str, str] = {"level": attr.level.value}
    if attr.note is not None:
        out["note"] = attr.note
    return out


def _put(obj: dict[str, Any], key: str, value: Any) -> None:
    """Store a value unless it is blank (None, empty string, empty list)."""
    if value is None or value == "" or value == []:
        return
    obj[key] = value


def _bo_out(bo: BoundaryObject) -> dict[str, Any]:
    out: dict[str, Any] = {"id": bo.id}
    if bo.super_type.kind is not SuperTypeKind.UNKNOWN:
        st: dict[str, Any] = {"kind": bo.super_type.kind.value}
        if bo.super_type.label is not None:
            st["label"] = bo.super_type.label
        out["superType"] = st
    _put(out, "subType", bo.sub_type)
    _put(out, "purpose", bo.purpose)
    _put(out, "levelOfDetail", _qual_out(bo.level_of_detail))
    _put(out, "frequencyOfChange", _qual_out(bo.frequency_of_change))
    _put(out, "modularity", _qual_out(bo.modularity))
    _put(out, "maintenanceBurden", _qual_out(bo.maintenance_burden))
    if bo.prescriptive is not None:
        out["prescriptive"] = bo.prescriptive
    if bo.lifecycle is not Lifecycle.UNKNOWN:
        out["lifecycle"] = bo.lifecycle.value
    _put(out, "representationFormat", bo.representation_format)
    _put(out, "internalConsistency", _qual_out(bo.internal_consistency))
    _put(out, "externalConsistency", _qual_out(bo.external_consistency))
    _put(out, "versioning", bo.versioning)
    _put(out, "connectedness", _qual_out(bo.connectedness))
    _put(out, "upToDate", _qual_out(bo.up_to_date))
    return out


def to_json(model: BomiModel) -> str:
    """Serialize a resolved model into the canonical interchange text."""
    doc: dict[str, Any] = {"bomiVersion": FORMAT_VERSION, "name": model.name}
    _put(doc, "boundaryObjects", [_bo_out(b) for b in model.boundary_objects])
    islands = []
    for mi in model.islands:
        entry: dict[str, Any] = {"id": mi.id}
        _put(entry, "types", sorted(t.value for t in mi.types))
        _put(entry, "description", mi.description)
        islands.append(entry)
    _put(doc, "islands", islands)
    roles = []
    for r in model.roles:
        entry = {"id": r.id}
        _put(entry, "name", r.name)
        _put(entry, "partOfIsland", r.part_of)
        roles.append(entry)
    _put(doc, "roles", roles)
    usages = []
    for u in model.usages:
        entry = {"user": u.user, "bo": u.bo}
        _put(entry, "accessibility", _qual_out(u.accessibility))
        _put(entry, "stability", _qual_out(u.stability))
        _put(entry, "criticality", _qual_out(u.criticality))
        _put(entry, "fitForPurpose", _qual_out(u.fit_for_purpose))
        _put(entry, "crud", [r.value for r in sorted(u.crud, key=lambda c: "CRUD".index(c.value))])
        usages.append(entry)
    _put(doc, "usages", usages)
    _put(doc, "responsibilities", [{"role": r.role, "bo": r.bo} for r in model.responsibilities])
    drivers = []
    for d in model.drivers:
        entry = {"id": d.id}
        if d.driver_type is not DriverType.UNKNOWN:
            entry["driverType"] = d.driver_type.value
        _put(entry, "driverSubType", d.driver_sub_type)
        if d.distance_type is not None:
            entry["distanceType"] = d.distance_type.value
        if d.distance_size is not QualLevel.UNKNOWN:
            entry["distanceSize"] = d.distance_size.value
        _put(entry, "drives", list(d.drives))
        drivers.append(entry)
    _put(doc, "drivers", drivers)
    teams = []
    for t in model.governance_teams:
        entry = {"id": t.id}
        _put(entry, "name", t.name)
        _put(entry, "members", list(t.members))
        teams.append(entry)
    _put(doc, "governanceTeams", teams)
    links = []
    for g in model.governs_links:
        entry = {"team": g.team, "bo": g.bo}
        _put(entry, "coordinationMechanism", g.coordination_mechanism)
        _put(entry, "frequencyOfCoordination", _qual_out(g.frequency_of_coordination))
        links.append(entry)
    _put(doc, "governsLinks", links)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- reading ---------------------------------------------------------------


def _require(value: Any, path: str, kind: type, what: str) -> Any:
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise SchemaError(path, f"expected {what}")
    return value


def _check_keys(obj: dict, path: str, required: tuple[str, ...], optional: tuple[str, ...]) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise SchemaError(f"{path}/{key}", "unknown field")
    for key in required:
        if key not in obj:
            raise SchemaError(path, f"missing field {key!r}")


def _enum_in(value: Any, path: str, options: dict) -> Any:
    _require(value, path, str, "a string")
    if value not in options:
        raise SchemaError(path, f"invalid value {value!r}, expected one of: " + ", ".join(options))
    return options[value]


def _qual_in(obj: Any, path: str) -> QualAttr:
    _require(obj, path, dict, "an object")
    _check_keys(obj, path, (), ("level", "note"))
    if not obj:
        raise SchemaError(path, "empty attribute object")
    level = QualLevel.UNKNOWN
    note = None
    if "level" in obj:
        level = _enum_in(obj["level"], f"{path}/level", {lv.value: lv for lv in QualLevel})
    if "note" in obj:
        note = _require(obj["note"], f"{path}/note", str, "a string")
    return QualAttr(level, note)


def _string(obj: dict, path: str, key: str, default: str = "") -> str:
    if key not in obj:
        return default
    return _require(obj[key], f"{path}/{key}", str, "a string")


def _string_list(obj: dict, path: str, key: str) -> list[str]:
    if key not in obj:
        return []
    arr = _require(obj[key], f"{path}/{key}", list, "an array")
    return [_require(item, f"{path}/{key}/{i}", str, "a string") for i, item in enumerate(arr)]


def _qual_field(obj: dict, path: str, key: str) -> QualAttr:
    if key not in obj:
        return QualAttr()
    return _qual_in(obj[key], f"{path}/{key}")


def from_json(text: str) -> BomiModel:
    """Parse and validate canonical interchange text into a model.

    Raises :class:`SchemaError` (or :class:`VersionError`) with a
    JSON-pointer-style path on any shape, enumeration, or reference problem.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"not valid JSON: {exc}") from None
    _require(doc, "", dict, "an object")
    _check_keys(doc, "", ("bomiVersion", "name"),
                ("boundaryObjects", "islands", "roles", "usages", "responsibilities",
                 "drivers", "governanceTeams", "governsLinks"))
    version = doc["bomiVersion"]
    if not isinstance(version, int) or isinstance(version, bool) or version != FORMAT_VERSION:
        raise VersionError("/bomiVersion", f"unsupported version {version!r}, expected {FORMAT_VERSION}")
    name = _require(doc["name"], "/name", str, "a string")

    bos = [_bo_in(item, f"/boundaryObjects/{i}")
           for i, item in enumerate(_array(doc, "boundaryObjects"))]
    islands = [_island_in(item, f"/islands/{i}") for i, item in enumerate(_array(doc, "islands"))]
    raw_roles = [_role_in(item, f"/roles/{i}") for i, item in enumerate(_array(doc, "roles"))]
    teams = [_team_in(item, f"/governanceTeams/{i}")
             for i, item in enumerate(_array(doc, "governanceTeams"))]

    member_of: dict[str, list[str]] = {}
    for t in teams:
        for m in t.members:
            member_of.setdefault(m, []).append(t.id)
    roles = [Role(r.id, r.name, r.part_of, tuple(member_of.get(r.id, ()))) for r in raw_roles]

    role_ids = {r.id for r in roles}
    island_ids = {i.id for i in islands}

    usages = []
    for i, item in enumerate(_array(doc, "usages")):
        path = f"/usages/{i}"
        _require(item, path, dict, "an object")
        _check_keys(item, path, ("user", "bo"),
                    ("accessibility", "stability", "criticality", "fitForPurpose", "crud"))
        user = _require(item["user"], f"{path}/user", str, "a string")
        if user in role_ids:
            kind = UserKind.ROLE
        elif user in island_ids:
            kind = UserKind.ISLAND
        else:
            raise SchemaError(f"{path}/user", f"{user!r} is not a declared role or island")
        crud = frozenset(
            _enum_in(c, f"{path}/crud/{j}", {r.value: r for r in CrudRight})
            for j, c in enumerate(_string_list(item, path, "crud")))
        usages.append(UsageLink(
            user, kind, _require(item["bo"], f"{path}/bo", str, "a string"),
            accessibility=_qual_field(item, path, "accessibility"),
            stability=_qual_field(item, path, "stability"),
            criticality=_qual_field(item, path, "criticality"),
            fit_for_purpose=_qual_field(item, path, "fitForPurpose"),
            crud=crud))

    resps = []
    for i, item in enumerate(_array(doc, "responsibilities")):
        path = f"/responsibilities/{i}"
        _require(item, path, dict, "an object")
        _check_keys(item, path, ("role", "bo"), ())
        resps.append(Responsibility(_require(item["role"], f"{path}/role", str, "a string"),
                                    _require(item["bo"], f"{path}/bo", str, "a string")))

    drivers = [_driver_in(item, f"/drivers/{i}") for i, item in enumerate(_array(doc, "drivers"))]

    links = []
    for i, item in enumerate(_array(doc, "governsLinks")):
        path = f"/governsLinks/{i}"
        _require(item, path, dict, "an object")
        _check_keys(item, path, ("team", "bo"), ("coordinationMechanism", "frequencyOfCoordination"))
        links.append(GovernsLink(
            _require(item["team"], f"{path}/team", str, "a string"),
            _require(item["bo"], f"{path}/bo", str, "a string"),
            _string(item, path, "coordinationMechanism"),
            _qual_field(item, path, "frequencyOfCoordination")))

    try:
        return BomiModel(
            name=name, boundary_objects=tuple(bos), islands=tuple(islands), roles=tuple(roles),
            usages=tuple(usages), responsibilities=tuple(resps), drivers=tuple(drivers),
            governance_teams=tuple(teams), governs_links=tuple(links))
    except ValueError as exc:
        raise SchemaError("", str(exc)) from None


def _array(doc: dict, key: str) -> list:
    if key not in doc:
        return []
    return _require(doc[key], f"/{key}", list, "an array")


def _bo_in(item: Any, path: str) -> BoundaryObject:
    _require(item, path, dict, "an object")
    _check_keys(item, path, ("id",),
                ("superType", "subType", "purpose", "levelOfDetail", "frequencyOfChange",
                 "modularity", "maintenanceBurden", "prescriptive", "lifecycle",
                 "representationFormat", "internalConsistency", "externalConsistency",
                 "versioning", "connectedness", "upToDate"))
    super_type = SuperType()
    if "superType" in item:
        st = _require(item["superType"], f"{path}/superType", dict, "an object")
        _check_keys(st, f"{path}/superType", ("kind",), ("label",))
        kind = _enum_in(st["kind"], f"{path}/superType/kind",
                        {k.value: k for k in SuperTypeKind if k is not SuperTypeKind.UNKNOWN})
        label = st.get("label")
        if label is not None:
            _require(label, f"{path}/superType/label", str, "a string")
        if kind is SuperTypeKind.OTHER and label is None:
            raise SchemaError(f"{path}/superType", "kind 'Other' requires a label")
        if kind is not SuperTypeKind.OTHER and label is not None:
            raise SchemaError(f"{path}/superType/label", "label only applies to kind 'Other'")
        super_type = SuperType(kind, label)
    lifecycle = Lifecycle.UNKNOWN
    if "lifecycle" in item:
        lifecycle = _enum_in(item["lifecycle"], f"{path}/lifecycle",
                             {lc.value: lc for lc in Lifecycle if lc is not Lifecycle.UNKNOWN})
    prescriptive = None
    if "prescriptive" in item:
        prescriptive = _require(item["prescriptive"], f"{path}/prescriptive", bool, "a boolean")
    return BoundaryObject(
        id=_require(item["id"], f"{path}/id", str, "a string"),
        super_type=super_type,
        sub_type=_string(item, path, "subType"),
        purpose=_string(item, path, "purpose"),
        level_of_detail=_qual_field(item, path, "levelOfDetail"),
        frequency_of_change=_qual_field(item, path, "frequencyOfChange"),
        modularity=_qual_field(item, path, "modularity"),
        maintenance_burden=_qual_field(item, path, "maintenanceBurden"),
        prescriptive=prescriptive,
        lifecycle=lifecycle,
        representation_format=_string(item, path, "representationFormat"),
        internal_consistency=_qual_field(item, path, "internalConsistency"),
        external_consistency=_qual_field(item, path, "externalConsistency"),
        versioning=_string(item, path, "versioning"),
        connectedness=_qual_field(item, path, "connectedness"),
        up_to_date=_qual_field(item, path, "upToDate"),
    )


def _island_in(item: Any, path: str) -> MethodologicalIsland:
    _require(item, path, dict, "an object")
    _check_keys(item, path, ("id",), ("types", "description"))
    mi_types = {t.value: t for t in MiType}
    types = frozenset(
        _enum_in(entry, f"{path}/types/{i}", mi_types)
        for i, entry in enumerate(_string_list(item, path, "types")))
    return MethodologicalIsland(_require(item["id"], f"{path}/id", str, "a string"),
                                types, _string(item, path, "description"))


def _role_in(item: Any, path: str) -> Role:
    _require(item, path, dict, "an object")
    _check_keys(item, path, ("id",), ("name", "partOfIsland"))
    part_of = None
    if "partOfIsland" in item:
        part_of = _require(item["partOfIsland"], f"{path}/partOfIsland", str, "a string")
    return Role(_require(item["id"], f"{path}/id", str, "a string"),
                _string(item, path, "name"), part_of)


def _team_in(item: Any, path: str) -> GovernanceTeam:
    _require(item, path, dict, "an object")
    _check_keys(item, path, ("id",), ("name", "members"))
    return GovernanceTeam(_require(item["id"], f"{path}/id", str, "a string"),
                          _string(item, path, "name"),
                          tuple(_string_list(item, path, "members")))


def _driver_in(item: Any, path: str) -> Driver:
    _require(item, path, dict, "an object")
    _check_keys(item, path, ("id",),
                ("driverType", "driverSubType", "distanceType", "distanceSize", "drives"))
    driver_type = DriverType.UNKNOWN
    if "driverType" in item:
        driver_type = _enum_in(item["driverType"], f"{path}/driverType",
                               {t.value: t for t in DriverType if t is not DriverType.UNKNOWN})
    distance_type = None
    if "distanceType" in item:
        distance_type = _enum_in(item["distanceType"], f"{path}/distanceType",
                                 {t.value: t for t in DistanceType})
    distance_size = QualLevel.UNKNOWN
    if "distanceSize" in item:
        distance_size = _enum_in(item["distanceSize"], f"{path}/distanceSize",
                                 {lv.value: lv for lv in QualLevel})
    return Driver(_require(item["id"], f"{path}/id", str, "a string"),
                  driver_type, _string(item, path, "driverSubType"),
                  distance_type, distance_size,
                  tuple(_string_list(item, path, "drives")))
