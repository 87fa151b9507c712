"""GraphViz rendering of resolved models.

Default styling follows the usual presentation of these diagrams: boundary
objects dark gray, islands green, relationships as labeled edges.  With
``assoc_as_nodes`` the attribute-carrying relationships (usages, governs
links) render as dashed intermediate boxes instead, mirroring UML
association-class notation; every census-counted element then owns a node.

Output is deterministic: same model + style means byte-identical text.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import BomiModel, BoundaryObject, GovernsLink, UsageLink, quality_attrs


@dataclass(frozen=True)
class DotStyle:
    bo_fill: str = "gray25"
    mi_fill: str = "palegreen"
    show_attributes: bool = True
    show_notes: bool = False
    assoc_as_nodes: bool = False


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _qual_lines(element: BoundaryObject | UsageLink | GovernsLink, style: DotStyle) -> list[str]:
    lines = []
    for name, attr in quality_attrs(element).items():
        if attr.is_unknown and attr.note is None:
            continue
        line = f"{name}={attr.level}"
        if style.show_notes and attr.note is not None:
            line += f' ("{attr.note}")'
        lines.append(line)
    return lines


def _bo_label(bo: BoundaryObject, style: DotStyle) -> str:
    lines = [bo.id]
    if style.show_attributes:
        if bo.super_type.kind.value != "Unknown":
            lines.append(f"supertype={bo.super_type.label or bo.super_type.kind.value}")
        if bo.sub_type:
            lines.append(f"subtype={bo.sub_type}")
        if bo.lifecycle.value != "Unknown":
            lines.append(f"lifecycle={bo.lifecycle.value}")
        if bo.representation_format:
            lines.append(f"format={bo.representation_format}")
        lines.extend(_qual_lines(bo, style))
    return "\\n".join(_esc(line) for line in lines)


def _usage_label(u: UsageLink, style: DotStyle) -> str:
    lines = ["uses"]
    if style.show_attributes:
        lines.extend(_qual_lines(u, style))
        if u.crud:
            letters = "".join(sorted((r.value for r in u.crud), key="CRUD".index))
            lines.append(f"crud={letters}")
    return "\\n".join(_esc(line) for line in lines)


def _governs_label(g: GovernsLink, style: DotStyle) -> str:
    lines = ["governs"]
    if style.show_attributes:
        if g.coordination_mechanism:
            lines.append(f"mechanism={g.coordination_mechanism}")
        lines.extend(_qual_lines(g, style))
    return "\\n".join(_esc(line) for line in lines)


def to_dot(model: BomiModel, style: DotStyle | None = None) -> str:
    """Render the model as a GraphViz digraph."""
    style = style or DotStyle()
    nodes: list[str] = []
    edges: list[str] = []

    def node(node_id: str, label: str, shape: str, extra: str = "") -> None:
        nodes.append(f'  "{_esc(node_id)}" [label="{label}" shape={shape}{extra}];')

    def edge(src: str, dst: str, label: str, extra: str = "") -> None:
        edges.append(f'  "{_esc(src)}" -> "{_esc(dst)}" [label="{label}"{extra}];')

    for bo in model.boundary_objects:
        node(bo.id, _bo_label(bo, style), "box",
             f' style=filled fillcolor="{style.bo_fill}" fontcolor=white')
    for mi in model.islands:
        label_lines = [mi.id]
        if style.show_attributes and mi.types:
            label_lines.append("types=" + ",".join(sorted(t.value for t in mi.types)))
        node(mi.id, "\\n".join(_esc(ln) for ln in label_lines), "box",
             f' style=filled fillcolor="{style.mi_fill}"')
    for role in model.roles:
        label = role.id if role.name in ("", role.id) else f"{role.id}\\n({_esc(role.name)})"
        node(role.id, label, "ellipse")
    for driver in model.drivers:
        lines = [driver.id]
        if style.show_attributes:
            if driver.driver_type.value != "Unknown":
                lines.append(f"type={driver.driver_type.value}")
            if driver.distance_type is not None:
                lines.append(f"distance={driver.distance_type.value}"
                             + (f" ({driver.distance_size.value})"
                                if driver.distance_size.value != "unknown" else ""))
        node(driver.id, "\\n".join(_esc(ln) for ln in lines), "hexagon")
    for team in model.governance_teams:
        label = team.id if team.name in ("", team.id) else f"{team.id}\\n({_esc(team.name)})"
        node(team.id, label, "octagon")

    if style.assoc_as_nodes:
        for u in model.usages:
            uid = f"usage: {u.key}"
            node(uid, _usage_label(u, style), "box", " style=dashed")
            edge(u.user, uid, "")
            edge(uid, u.bo, "")
    else:
        for u in model.usages:
            edge(u.user, u.bo, _usage_label(u, style))
    for r in model.responsibilities:
        edge(r.role, r.bo, "responsible")
    if style.assoc_as_nodes:
        for g in model.governs_links:
            gid = f"governs: {g.key}"
            node(gid, _governs_label(g, style), "box", " style=dashed")
            edge(g.team, gid, "")
            edge(gid, g.bo, "")
    else:
        for g in model.governs_links:
            edge(g.team, g.bo, _governs_label(g, style))
    for driver in model.drivers:
        for island in driver.drives:
            edge(driver.id, island, "drives")
    for role in model.roles:
        if role.part_of is not None:
            edge(role.id, role.part_of, "part of")
    for role in model.roles:
        for team_id in role.member_of:
            edge(role.id, team_id, "member of")

    header = f"// model: {model.name}" if model.name else "// model"
    if not nodes and not edges:
        return f"{header}\ndigraph bomi {{ }}\n"
    body = "\n".join(["digraph bomi {", "  rankdir=LR;", *nodes, *edges, "}"])
    return f"{header}\n{body}\n"
