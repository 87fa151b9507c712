"""Raw syntax tree for .bomi sources.

Nodes mirror the surface grammar with no semantic checking: references are
still bare names, attribute values are still text.  Keyword-ish text (keys,
qualitative levels) is stored lowercased since keywords are case-insensitive;
identifiers and string contents keep their exact spelling.

``format_model`` pretty-prints a tree back to canonical source; reparsing its
output yields a structurally identical tree (compare with ``shape``).
"""
from __future__ import annotations

from dataclasses import dataclass, fields, is_dataclass
from typing import Union

from .diagnostics import SourceSpan

# --- attribute values -------------------------------------------------------


@dataclass(frozen=True)
class VQual:
    """Qualitative value: level keyword plus optional parenthesized note."""

    level: str  # "high" | "medium" | "low" | "unknown"
    note: str | None
    span: SourceSpan


@dataclass(frozen=True)
class VStr:
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class VWord:
    """Bare word value: an enum member, boolean, or referenced identifier."""

    text: str
    span: SourceSpan


@dataclass(frozen=True)
class VList:
    items: tuple[VWord, ...]
    span: SourceSpan


AttrValue = Union[VQual, VStr, VWord, VList]


@dataclass(frozen=True)
class Attr:
    key: str
    value: AttrValue
    span: SourceSpan


# --- declarations -----------------------------------------------------------


@dataclass(frozen=True)
class BoDecl:
    id: str
    attrs: tuple[Attr, ...]
    span: SourceSpan


@dataclass(frozen=True)
class MiDecl:
    id: str
    attrs: tuple[Attr, ...]
    span: SourceSpan


@dataclass(frozen=True)
class RoleDecl:
    id: str
    attrs: tuple[Attr, ...]
    span: SourceSpan


@dataclass(frozen=True)
class UsageDecl:
    user: str
    bo: str
    attrs: tuple[Attr, ...]
    span: SourceSpan
    user_span: SourceSpan
    bo_span: SourceSpan


@dataclass(frozen=True)
class RespDecl:
    role: str
    bo: str
    span: SourceSpan
    role_span: SourceSpan
    bo_span: SourceSpan


@dataclass(frozen=True)
class DriverDecl:
    id: str
    attrs: tuple[Attr, ...]
    span: SourceSpan


@dataclass(frozen=True)
class GovernsDecl:
    bo: str
    attrs: tuple[Attr, ...]
    span: SourceSpan
    bo_span: SourceSpan


@dataclass(frozen=True)
class GovTeamDecl:
    id: str
    attrs: tuple[Attr, ...]
    governs: tuple[GovernsDecl, ...]
    span: SourceSpan


Element = Union[BoDecl, MiDecl, RoleDecl, UsageDecl, RespDecl, DriverDecl, GovTeamDecl]


@dataclass(frozen=True)
class RawModel:
    name: str
    elements: tuple[Element, ...]
    span: SourceSpan


# --- helpers ----------------------------------------------------------------


def shape(node):
    """Span-free structural view of a node, for tree comparisons."""
    if is_dataclass(node):
        out = {"_kind": type(node).__name__}
        for f in fields(node):
            if f.name.endswith("span"):
                continue
            out[f.name] = shape(getattr(node, f.name))
        return out
    if isinstance(node, tuple):
        return [shape(item) for item in node]
    return node


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _format_value(value: AttrValue) -> str:
    if isinstance(value, VQual):
        if value.note is not None:
            return f"{value.level} ({_quote(value.note)})"
        return value.level
    if isinstance(value, VStr):
        return _quote(value.text)
    if isinstance(value, VWord):
        return value.text
    if isinstance(value, VList):
        return "[" + ", ".join(item.text for item in value.items) + "]"
    raise TypeError(f"unexpected value {value!r}")


def _format_attrs(attrs: tuple[Attr, ...], indent: str) -> list[str]:
    return [f"{indent}{a.key}: {_format_value(a.value)}" for a in attrs]


def format_model(model: RawModel) -> str:
    """Pretty-print a raw tree as canonical .bomi source."""
    lines = [f"model {_quote(model.name)} {{"]
    for el in model.elements:
        lines.extend(_format_element(el))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _format_element(el: Element) -> list[str]:
    ind = "  "
    if isinstance(el, BoDecl):
        head = f"{ind}bo {el.id} {{"
        return [head, *_format_attrs(el.attrs, ind * 2), f"{ind}}}"]
    if isinstance(el, MiDecl):
        return [f"{ind}mi {el.id} {{", *_format_attrs(el.attrs, ind * 2), f"{ind}}}"]
    if isinstance(el, RoleDecl):
        return [f"{ind}role {el.id} {{", *_format_attrs(el.attrs, ind * 2), f"{ind}}}"]
    if isinstance(el, UsageDecl):
        head = f"{ind}usage {el.user} -> {el.bo} {{"
        return [head, *_format_attrs(el.attrs, ind * 2), f"{ind}}}"]
    if isinstance(el, RespDecl):
        return [f"{ind}responsible {el.role} -> {el.bo}"]
    if isinstance(el, DriverDecl):
        return [f"{ind}driver {el.id} {{", *_format_attrs(el.attrs, ind * 2), f"{ind}}}"]
    if isinstance(el, GovTeamDecl):
        lines = [f"{ind}governance {el.id} {{", *_format_attrs(el.attrs, ind * 2)]
        for g in el.governs:
            lines.append(f"{ind * 2}governs {g.bo} {{")
            lines.extend(_format_attrs(g.attrs, ind * 3))
            lines.append(f"{ind * 2}}}")
        lines.append(f"{ind}}}")
        return lines
    raise TypeError(f"unexpected element {el!r}")
