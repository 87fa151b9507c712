"""Tokenizer for the .bomi surface syntax.

Total: never raises on malformed input; problems become diagnostics and the
token stream continues so the parser can recover.  Token spans use 1-based
lines/columns with exclusive end columns.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .diagnostics import Diagnostic, Severity, SourceSpan


class TokenKind(enum.Enum):
    IDENT = "identifier"
    STRING = "string"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LBRACKET = "'['"
    RBRACKET = "']'"
    LPAREN = "'('"
    RPAREN = "')'"
    COLON = "':'"
    COMMA = "','"
    ARROW = "'->'"
    EOF = "end of file"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


class Lexer:
    def __init__(self, text: str, file: str = "<input>") -> None:
        self.text = text
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1
        self.diagnostics: list[Diagnostic] = []

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def _span_from(self, line: int, col: int) -> SourceSpan:
        return SourceSpan(self.file, line, col, self.line, self.col)

    def _error(self, message: str, span: SourceSpan, hint: str | None = None) -> None:
        self.diagnostics.append(Diagnostic(Severity.ERROR, message, span, hint))

    def _skip_trivia(self) -> None:
        while self.pos < len(self.text):
            ch = self._peek()
            if ch in " \t\r\n":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            elif ch == "/" and self._peek(1) == "*":
                line, col = self.line, self.col
                self._advance()
                self._advance()
                closed = False
                while self.pos < len(self.text):
                    if self._peek() == "*" and self._peek(1) == "/":
                        self._advance()
                        self._advance()
                        closed = True
                        break
                    self._advance()
                if not closed:
                    self._error("unterminated block comment", self._span_from(line, col))
            else:
                return

    def _lex_string(self) -> Token:
        line, col = self.line, self.col
        self._advance()  # opening quote
        chars: list[str] = []
        while self.pos < len(self.text):
            ch = self._peek()
            if ch == '"':
                self._advance()
                return Token(TokenKind.STRING, "".join(chars), self._span_from(line, col))
            if ch == "\n":
                break
            if ch == "\\" and self._peek(1) in ('"', "\\"):
                self._advance()
                chars.append(self._advance())
            else:
                chars.append(self._advance())
        span = self._span_from(line, col)
        self._error("unterminated string literal", span, hint='close it with \'"\' before the end of the line')
        return Token(TokenKind.STRING, "".join(chars), span)

    def tokens(self) -> list[Token]:
        """Lex the whole input; always ends with one EOF token."""
        out: list[Token] = []
        punct = {
            "{": TokenKind.LBRACE,
            "}": TokenKind.RBRACE,
            "[": TokenKind.LBRACKET,
            "]": TokenKind.RBRACKET,
            "(": TokenKind.LPAREN,
            ")": TokenKind.RPAREN,
            ":": TokenKind.COLON,
            ",": TokenKind.COMMA,
        }
        while True:
            self._skip_trivia()
            if self.pos >= len(self.text):
                break
            line, col = self.line, self.col
            ch = self._peek()
            if ch == '"':
                out.append(self._lex_string())
            elif _is_ident_start(ch):
                start = self.pos
                while self.pos < len(self.text) and _is_ident_char(self._peek()):
                    self._advance()
                out.append(Token(TokenKind.IDENT, self.text[start:self.pos], self._span_from(line, col)))
            elif ch == "-" and self._peek(1) == ">":
                self._advance()
                self._advance()
                out.append(Token(TokenKind.ARROW, "->", self._span_from(line, col)))
            elif ch in punct:
                self._advance()
                out.append(Token(punct[ch], ch, self._span_from(line, col)))
            else:
                self._advance()
                self._error(f"unexpected character {ch!r}", self._span_from(line, col))
        out.append(Token(TokenKind.EOF, "", SourceSpan(self.file, self.line, self.col, self.line, self.col)))
        return out


def lex(text: str, file: str = "<input>") -> tuple[list[Token], list[Diagnostic]]:
    lexer = Lexer(text, file)
    toks = lexer.tokens()
    return toks, lexer.diagnostics
