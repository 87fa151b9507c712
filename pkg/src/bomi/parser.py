"""Recursive-descent parser for .bomi sources.

Total over any input: the result is always a tree fragment plus diagnostics,
never an exception.  Recovery happens at block boundaries, so one malformed
declaration does not hide its siblings.

Keywords and enum values are matched case-insensitively; identifiers are
case-sensitive.  Value validation (enum membership, level keywords, booleans)
happens here so bad values are reported with the offending token's span and a
valid-values hint; reference resolution is the resolver's job.
"""
from __future__ import annotations

import difflib

from .diagnostics import Diagnostic, Severity, SourceSpan
from .lexer import Token, TokenKind, lex
from .syntax import (
    Attr,
    BoDecl,
    DriverDecl,
    Element,
    GovernsDecl,
    GovTeamDecl,
    MiDecl,
    RawModel,
    RespDecl,
    RoleDecl,
    UsageDecl,
    VList,
    VQual,
    VStr,
    VWord,
)

QUAL_LEVELS = ("high", "medium", "low", "unknown")
LIFECYCLE_VALUES = ("Planning", "Operation", "Deprecate", "Retire")
SUPERTYPE_VALUES = ("Technology", "Task", "Planning")
MI_TYPE_VALUES = ("Team", "Silo", "Department", "Organization")
DRIVER_TYPE_VALUES = ("Technology", "Process", "Organization")
DISTANCE_TYPE_VALUES = ("Culture", "Geography", "Organization")
CRUD_LETTERS = ("C", "R", "U", "D")
BOOL_VALUES = ("true", "false")

# Value kinds: qual | string | bool | ref | enum(<options>) | enum_or_string
# | list(<member kind>).
BO_KEYS: dict[str, tuple] = {
    "supertype": ("enum_or_string", SUPERTYPE_VALUES),
    "subtype": ("string",),
    "purpose": ("string",),
    "level_of_detail": ("qual",),
    "frequency_of_change": ("qual",),
    "modularity": ("qual",),
    "maintainability": ("qual",),
    "prescriptive": ("bool",),
    "lifecycle": ("enum", LIFECYCLE_VALUES),
    "representation_format": ("string",),
    "internal_consistency": ("qual",),
    "external_consistency": ("qual",),
    "versioning": ("string",),
    "connectedness": ("qual",),
    "up_to_date": ("qual",),
}
MI_KEYS: dict[str, tuple] = {
    "types": ("list", ("enum", MI_TYPE_VALUES)),
    "description": ("string",),
}
ROLE_KEYS: dict[str, tuple] = {
    "part_of": ("ref",),
    "name": ("string",),
}
USAGE_KEYS: dict[str, tuple] = {
    "accessibility": ("qual",),
    "stability": ("qual",),
    "criticality": ("qual",),
    "fit_for_purpose": ("qual",),
    "crud": ("list", ("enum", CRUD_LETTERS)),
}
DRIVER_KEYS: dict[str, tuple] = {
    "type": ("enum", DRIVER_TYPE_VALUES),
    "subtype": ("string",),
    "distance_type": ("enum", DISTANCE_TYPE_VALUES),
    "distance_size": ("qual",),
    "drives": ("list", ("ref",)),
}
GOV_KEYS: dict[str, tuple] = {
    "name": ("string",),
    "members": ("list", ("ref",)),
}
GOVERNS_KEYS: dict[str, tuple] = {
    "coordination_mechanism": ("string",),
    "frequency_of_coordination": ("qual",),
}

ELEMENT_KEYWORDS = ("bo", "mi", "role", "usage", "responsible", "driver", "governance")


def decode_source(data: bytes, file: str = "<input>") -> tuple[str, list[Diagnostic]]:
    """Decode raw bytes, reporting invalid UTF-8 as an error diagnostic.

    Undecodable bytes are replaced so parsing can still proceed, but the
    error severity keeps such input from ever resolving.
    """
    try:
        return data.decode("utf-8"), []
    except UnicodeDecodeError as exc:
        prefix = data[: exc.start].decode("utf-8", errors="replace")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        span = SourceSpan(file, line, col, line, col + 1)
        diag = Diagnostic(Severity.ERROR, f"invalid UTF-8 byte 0x{data[exc.start]:02x}", span)
        return data.decode("utf-8", errors="replace"), [diag]


def parse(text: str, file: str = "<input>") -> tuple[RawModel, list[Diagnostic]]:
    """Parse one .bomi source into a raw tree plus diagnostics.

    Error diagnostics mean the tree is incomplete and must not be resolved;
    with only warnings (or none) the tree is complete.
    """
    tokens, diagnostics = lex(text, file)
    parser = _Parser(tokens, file, diagnostics)
    model = parser.parse_model()
    diagnostics.sort(key=lambda d: d.span.position)
    return model, diagnostics


class _Parser:
    def __init__(self, tokens: list[Token], file: str, diagnostics: list[Diagnostic]) -> None:
        self.tokens = tokens
        self.file = file
        self.pos = 0
        self.diagnostics = diagnostics
        self.eof_block_reported = False

    # --- token helpers ---

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def at(self, kind: TokenKind) -> bool:
        return self.cur.kind == kind

    def at_keyword(self, *words: str) -> bool:
        return self.cur.kind == TokenKind.IDENT and self.cur.text.lower() in words

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != TokenKind.EOF:
            self.pos += 1
        return tok

    def error(self, message: str, span: SourceSpan, hint: str | None = None) -> None:
        self.diagnostics.append(Diagnostic(Severity.ERROR, message, span, hint))

    def warn(self, message: str, span: SourceSpan, hint: str | None = None) -> None:
        self.diagnostics.append(Diagnostic(Severity.WARNING, message, span, hint))

    def expect(self, kind: TokenKind, what: str) -> Token | None:
        if self.at(kind):
            return self.advance()
        self.error(f"expected {what}, found {self._describe(self.cur)}", self.cur.span)
        return None

    @staticmethod
    def _describe(tok: Token) -> str:
        if tok.kind == TokenKind.EOF:
            return "end of file"
        if tok.kind in (TokenKind.IDENT, TokenKind.STRING):
            return f"{tok.kind.value} {tok.text!r}"
        return tok.kind.value

    def unterminated_block(self, open_brace: SourceSpan) -> None:
        # An EOF terminates every open block at once; report just the innermost.
        if not self.eof_block_reported:
            self.error("unterminated block, missing '}'", open_brace,
                       hint="block opened here is never closed")
            self.eof_block_reported = True

    # --- recovery ---

    def skip_in_block(self) -> None:
        """Skip to the next plausible entry start or the block's closing brace."""
        depth = 0
        while not self.at(TokenKind.EOF):
            tok = self.cur
            if tok.kind == TokenKind.LBRACE:
                depth += 1
            elif tok.kind == TokenKind.RBRACE:
                if depth == 0:
                    return
                depth -= 1
            elif depth == 0 and tok.kind == TokenKind.IDENT:
                nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
                if nxt is not None and nxt.kind in (TokenKind.COLON, TokenKind.LBRACE, TokenKind.ARROW):
                    return
            self.advance()

    def skip_to_element(self) -> None:
        """Skip to the next top-level element keyword or the model's close."""
        depth = 0
        while not self.at(TokenKind.EOF):
            tok = self.cur
            if tok.kind == TokenKind.LBRACE:
                depth += 1
            elif tok.kind == TokenKind.RBRACE:
                if depth == 0:
                    return
                depth -= 1
            elif depth == 0 and self.at_keyword(*ELEMENT_KEYWORDS):
                return
            self.advance()

    # --- grammar ---

    def parse_model(self) -> RawModel:
        start = self.cur.span
        name = ""
        if self.at_keyword("model"):
            self.advance()
            name_tok = self.expect(TokenKind.STRING, "model name string")
            if name_tok is not None:
                name = name_tok.text
            open_tok = self.expect(TokenKind.LBRACE, "'{'")
        else:
            self.error("expected 'model' header", self.cur.span,
                       hint='a file starts with: model "name" { ... }')
            open_tok = None

        elements: list[Element] = []
        closed = open_tok is None
        while True:
            if self.at(TokenKind.EOF):
                if open_tok is not None and not closed:
                    self.unterminated_block(open_tok.span)
                break
            if self.at(TokenKind.RBRACE):
                self.advance()
                closed = True
                if not self.at(TokenKind.EOF):
                    self.error("unexpected text after model close", self.cur.span)
                break
            el = self.parse_element()
            if el is not None:
                elements.append(el)

        end = self.tokens[self.pos - 1].span if self.pos > 0 else start
        span = SourceSpan(self.file, start.start_line, start.start_col, end.end_line, end.end_col)
        return RawModel(name, tuple(elements), span)

    def parse_element(self) -> Element | None:
        tok = self.cur
        if tok.kind != TokenKind.IDENT:
            self.error(f"expected a declaration, found {self._describe(tok)}", tok.span)
            self.advance()
            self.skip_to_element()
            return None
        word = tok.text.lower()
        if word == "bo":
            return self.parse_simple_block(BoDecl, BO_KEYS)
        if word == "mi":
            return self.parse_simple_block(MiDecl, MI_KEYS)
        if word == "role":
            return self.parse_simple_block(RoleDecl, ROLE_KEYS)
        if word == "driver":
            return self.parse_simple_block(DriverDecl, DRIVER_KEYS)
        if word == "usage":
            return self.parse_usage()
        if word == "responsible":
            return self.parse_responsible()
        if word == "governance":
            return self.parse_governance()
        close = difflib.get_close_matches(word, ELEMENT_KEYWORDS, n=1, cutoff=0.6)
        hint = f"did you mean '{close[0]}'?" if close else "declarations: " + ", ".join(ELEMENT_KEYWORDS)
        self.error(f"unknown keyword {tok.text!r}", tok.span, hint)
        self.advance()
        self.skip_to_element()
        return None

    def parse_simple_block(self, ctor, keys: dict[str, tuple]):
        kw = self.advance()
        ident = self.expect(TokenKind.IDENT, "identifier")
        if ident is None:
            self.skip_to_element()
            return None
        attrs = self.parse_block_body(keys)
        if attrs is None:
            return None
        end = self.tokens[self.pos - 1].span
        span = SourceSpan(self.file, kw.span.start_line, kw.span.start_col, end.end_line, end.end_col)
        return ctor(ident.text, attrs, span)

    def parse_usage(self) -> UsageDecl | None:
        kw = self.advance()
        user = self.expect(TokenKind.IDENT, "user identifier")
        if user is None or self.expect(TokenKind.ARROW, "'->'") is None:
            self.skip_to_element()
            return None
        bo = self.expect(TokenKind.IDENT, "boundary object identifier")
        if bo is None:
            self.skip_to_element()
            return None
        attrs = self.parse_block_body(USAGE_KEYS)
        if attrs is None:
            return None
        end = self.tokens[self.pos - 1].span
        span = SourceSpan(self.file, kw.span.start_line, kw.span.start_col, end.end_line, end.end_col)
        return UsageDecl(user.text, bo.text, attrs, span, user.span, bo.span)

    def parse_responsible(self) -> RespDecl | None:
        kw = self.advance()
        role = self.expect(TokenKind.IDENT, "role identifier")
        if role is None or self.expect(TokenKind.ARROW, "'->'") is None:
            self.skip_to_element()
            return None
        bo = self.expect(TokenKind.IDENT, "boundary object identifier")
        if bo is None:
            self.skip_to_element()
            return None
        span = SourceSpan(self.file, kw.span.start_line, kw.span.start_col,
                          bo.span.end_line, bo.span.end_col)
        return RespDecl(role.text, bo.text, span, role.span, bo.span)

    def parse_governance(self) -> GovTeamDecl | None:
        kw = self.advance()
        ident = self.expect(TokenKind.IDENT, "identifier")
        if ident is None:
            self.skip_to_element()
            return None
        open_tok = self.expect(TokenKind.LBRACE, "'{'")
        if open_tok is None:
            self.skip_to_element()
            return None
        attrs: list[Attr] = []
        governs: list[GovernsDecl] = []
        seen: dict[str, SourceSpan] = {}
        while True:
            if self.at(TokenKind.RBRACE):
                self.advance()
                break
            if self.at(TokenKind.EOF):
                self.unterminated_block(open_tok.span)
                break
            if self.at_keyword("governs"):
                g = self.parse_governs()
                if g is not None:
                    governs.append(g)
                continue
            if not self.parse_entry(GOV_KEYS, attrs, seen):
                self.skip_in_block()
        end = self.tokens[self.pos - 1].span
        span = SourceSpan(self.file, kw.span.start_line, kw.span.start_col, end.end_line, end.end_col)
        return GovTeamDecl(ident.text, tuple(attrs), tuple(governs), span)

    def parse_governs(self) -> GovernsDecl | None:
        kw = self.advance()
        bo = self.expect(TokenKind.IDENT, "boundary object identifier")
        if bo is None:
            self.skip_in_block()
            return None
        attrs = self.parse_block_body(GOVERNS_KEYS)
        if attrs is None:
            return None
        end = self.tokens[self.pos - 1].span
        span = SourceSpan(self.file, kw.span.start_line, kw.span.start_col, end.end_line, end.end_col)
        return GovernsDecl(bo.text, attrs, span, bo.span)

    def parse_block_body(self, keys: dict[str, tuple]) -> tuple[Attr, ...] | None:
        open_tok = self.expect(TokenKind.LBRACE, "'{'")
        if open_tok is None:
            self.skip_to_element()
            return None
        attrs: list[Attr] = []
        seen: dict[str, SourceSpan] = {}
        while True:
            if self.at(TokenKind.RBRACE):
                self.advance()
                return tuple(attrs)
            if self.at(TokenKind.EOF):
                self.unterminated_block(open_tok.span)
                return tuple(attrs)
            if not self.parse_entry(keys, attrs, seen):
                self.skip_in_block()

    def parse_entry(self, keys: dict[str, tuple], attrs: list[Attr], seen: dict[str, SourceSpan]) -> bool:
        """Parse one ``key: value`` entry; False means recovery is needed."""
        key_tok = self.cur
        if key_tok.kind != TokenKind.IDENT:
            self.error(f"expected an attribute name, found {self._describe(key_tok)}", key_tok.span)
            self.advance()
            return False
        key = key_tok.text.lower()
        if key not in keys:
            close = difflib.get_close_matches(key, list(keys), n=1, cutoff=0.6)
            hint = f"did you mean '{close[0]}'?" if close else "valid keys: " + ", ".join(sorted(keys))
            self.error(f"unknown keyword {key_tok.text!r}", key_tok.span, hint)
            self.advance()
            if self.at(TokenKind.COLON):
                self.advance()
                self.parse_value(("any",), key)  # consume the value to resync cleanly
            return True
        self.advance()
        if self.expect(TokenKind.COLON, "':'") is None:
            return False
        value = self.parse_value(keys[key], key)
        if value is None:
            return False
        if key == "distance_size" and isinstance(value, VQual) and value.note is not None:
            self.warn("note on 'distance_size' is not stored", value.span,
                      hint="distance_size takes a bare level")
        if key in seen:
            self.error(f"duplicate attribute {key!r}", key_tok.span,
                       hint=f"first given at line {seen[key].start_line}")
            return True
        seen[key] = key_tok.span
        span = SourceSpan(self.file, key_tok.span.start_line, key_tok.span.start_col,
                          value.span.end_line, value.span.end_col)
        attrs.append(Attr(key, value, span))
        return True

    # --- values ---

    def parse_value(self, schema: tuple, key: str):
        kind = schema[0]
        tok = self.cur
        if kind == "any":
            # Recovery path after an unknown key: accept whatever one value is there.
            if tok.kind == TokenKind.STRING:
                self.advance()
                return VStr(tok.text, tok.span)
            if tok.kind == TokenKind.LBRACKET:
                return self.parse_list(("ref",))
            if tok.kind == TokenKind.IDENT:
                self.advance()
                if tok.text.lower() in QUAL_LEVELS and self.at(TokenKind.LPAREN):
                    note = self.parse_note()
                    return VQual(tok.text.lower(), note, tok.span)
                return VWord(tok.text, tok.span)
            return None
        if kind == "qual":
            if tok.kind != TokenKind.IDENT or tok.text.lower() not in QUAL_LEVELS:
                self.error(
                    f"invalid value {self._value_repr(tok)} for {key!r}", tok.span,
                    hint="valid values: " + ", ".join(QUAL_LEVELS) + ", each optionally followed by (\"note\")",
                )
                self._consume_bad_value()
                return None
            self.advance()
            note = self.parse_note() if self.at(TokenKind.LPAREN) else None
            end = self.tokens[self.pos - 1].span
            span = SourceSpan(self.file, tok.span.start_line, tok.span.start_col,
                              end.end_line, end.end_col)
            return VQual(tok.text.lower(), note, span)
        if kind == "string":
            if tok.kind != TokenKind.STRING:
                self.error(f"expected a quoted string for {key!r}, found {self._describe(tok)}", tok.span)
                self._consume_bad_value()
                return None
            self.advance()
            return VStr(tok.text, tok.span)
        if kind == "bool":
            if tok.kind != TokenKind.IDENT or tok.text.lower() not in BOOL_VALUES:
                self.error(f"invalid value {self._value_repr(tok)} for {key!r}", tok.span,
                           hint="valid values: true, false")
                self._consume_bad_value()
                return None
            self.advance()
            return VWord(tok.text, tok.span)
        if kind == "ref":
            if tok.kind != TokenKind.IDENT:
                self.error(f"expected an identifier for {key!r}, found {self._describe(tok)}", tok.span)
                self._consume_bad_value()
                return None
            self.advance()
            return VWord(tok.text, tok.span)
        if kind == "enum":
            return self.parse_enum_word(schema[1], key)
        if kind == "enum_or_string":
            if tok.kind == TokenKind.STRING:
                self.advance()
                return VStr(tok.text, tok.span)
            return self.parse_enum_word(schema[1], key, or_string=True)
        if kind == "list":
            if tok.kind != TokenKind.LBRACKET:
                self.error(f"expected '[' for {key!r}, found {self._describe(tok)}", tok.span)
                self._consume_bad_value()
                return None
            return self.parse_list(schema[1])
        raise AssertionError(f"bad schema {schema!r}")

    def parse_enum_word(self, values: tuple[str, ...], key: str, or_string: bool = False) -> VWord | None:
        tok = self.cur
        lowered = {v.lower(): v for v in values}
        if tok.kind != TokenKind.IDENT or tok.text.lower() not in lowered:
            hint = "valid values: " + ", ".join(values)
            if or_string:
                hint += ", or a quoted custom label"
            self.error(f"invalid value {self._value_repr(tok)} for {key!r}", tok.span, hint)
            self._consume_bad_value()
            return None
        self.advance()
        return VWord(tok.text, tok.span)

    def parse_list(self, member_schema: tuple) -> VList | None:
        open_tok = self.advance()  # '['
        items: list[VWord] = []
        bad = False
        while True:
            if self.at(TokenKind.RBRACKET):
                end = self.advance().span
                break
            if self.at(TokenKind.EOF) or self.at(TokenKind.RBRACE):
                self.error("unterminated list, missing ']'", open_tok.span)
                end = self.cur.span
                bad = True
                break
            if self.at(TokenKind.COMMA):
                self.advance()
                continue
            member = self.parse_value(member_schema, "list item")
            if member is None:
                bad = True
                # parse_value consumed the bad token; keep scanning the list.
                continue
            items.append(member)  # type: ignore[arg-type]
        if bad:
            return None
        span = SourceSpan(self.file, open_tok.span.start_line, open_tok.span.start_col,
                          end.end_line, end.end_col)
        return VList(tuple(items), span)

    def parse_note(self) -> str | None:
        self.advance()  # '('
        tok = self.cur
        if tok.kind != TokenKind.STRING:
            self.error(f"expected a quoted note, found {self._describe(tok)}", tok.span)
            if tok.kind not in (TokenKind.RPAREN, TokenKind.RBRACE, TokenKind.EOF):
                self.advance()
            if self.at(TokenKind.RPAREN):
                self.advance()
            return None
        self.advance()
        if self.at(TokenKind.RPAREN):
            self.advance()
        else:
            self.error("expected ')' after note", self.cur.span)
        return tok.text

    def _value_repr(self, tok: Token) -> str:
        if tok.kind == TokenKind.IDENT:
            return repr(tok.text)
        return self._describe(tok)

    def _consume_bad_value(self) -> None:
        if self.cur.kind not in (TokenKind.RBRACE, TokenKind.RBRACKET, TokenKind.EOF):
            self.advance()
