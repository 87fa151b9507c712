"""Strict checker for the DOT subset the exporter emits.

Independent of the production renderer: a small tokenizer plus recursive
descent that accepts exactly

    comment* "digraph" ID "{" stmt* "}"
    stmt  ::= ID "=" value ";"                      (graph attribute)
            | id attrs? ";"                         (node)
            | id "->" id attrs? ";"                 (edge)
    attrs ::= "[" (ID "=" value)* "]"
    id    ::= quoted string | bare word
    value ::= quoted string | bare word

Anything else raises :class:`DotSyntaxError`.  Returns node/edge counts so
tests can compare against independently derived expectations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass


class DotSyntaxError(ValueError):
    pass


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<punct>[{}\[\];=])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise DotSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = match.end()
        if match.lastgroup in ("ws", "comment"):
            continue
        tokens.append(match.group())
    return tokens


@dataclass(frozen=True)
class DotGraph:
    name: str
    node_count: int
    edge_count: int
    node_ids: tuple[str, ...]


def check_dot(text: str) -> DotGraph:
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take(expected: str | None = None) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise DotSyntaxError(f"unexpected end of input, wanted {expected!r}")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise DotSyntaxError(f"expected {expected!r}, found {tok!r}")
        pos += 1
        return tok

    def is_id(tok: str | None) -> bool:
        return tok is not None and (tok.startswith('"') or re.fullmatch(r"[A-Za-z_]\w*", tok))

    def take_id() -> str:
        tok = take()
        if not is_id(tok):
            raise DotSyntaxError(f"expected an identifier, found {tok!r}")
        if tok.startswith('"'):
            body = tok[1:-1]
            return re.sub(r"\\(.)", r"\1", body)
        return tok

    def attrs() -> None:
        take("[")
        while peek() != "]":
            key = take()
            if not re.fullmatch(r"[A-Za-z_]\w*", key):
                raise DotSyntaxError(f"expected an attribute name, found {key!r}")
            take("=")
            value = take()
            if not is_id(value):
                raise DotSyntaxError(f"expected an attribute value, found {value!r}")
        take("]")

    take("digraph")
    name = take_id()
    take("{")
    nodes: list[str] = []
    edges = 0
    while peek() != "}":
        first = peek()
        if first is not None and re.fullmatch(r"[A-Za-z_]\w*", first) \
                and pos + 1 < len(tokens) and tokens[pos + 1] == "=":
            take()
            take("=")
            value = take()
            if not is_id(value):
                raise DotSyntaxError(f"bad graph attribute value {value!r}")
            take(";")
            continue
        ident = take_id()
        if peek() == "->":
            take("->")
            take_id()
            if peek() == "[":
                attrs()
            take(";")
            edges += 1
        else:
            if peek() == "[":
                attrs()
            take(";")
            nodes.append(ident)
    take("}")
    if pos != len(tokens):
        raise DotSyntaxError(f"trailing tokens after graph: {tokens[pos:]}")
    if len(set(nodes)) != len(nodes):
        raise DotSyntaxError("duplicate node statements")
    return DotGraph(name, len(nodes), edges, tuple(nodes))
