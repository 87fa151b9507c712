"""Source locations, diagnostics, and their terminal rendering.

Every artifact the toolchain reports on (parse errors, resolution errors,
lint findings) carries a :class:`SourceSpan` so output can point at the
offending text.  Rendering is deterministic: same diagnostic + same source
gives byte-identical output.
"""
from __future__ import annotations

import enum
import os
import sys
from dataclasses import dataclass


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"

    def __str__(self) -> str:
        return self.value


# Rank used for exit-code thresholds and sorting; higher is more severe.
SEVERITY_RANK = {Severity.INFO: 0, Severity.WARNING: 1, Severity.ERROR: 2}


@dataclass(frozen=True)
class SourceSpan:
    """Half-open region of a source file, 1-based lines and columns."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    @property
    def position(self) -> tuple[int, int]:
        return (self.start_line, self.start_col)

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


@dataclass(frozen=True)
class Diagnostic:
    """One reportable problem with a location and optional hint."""

    severity: Severity
    message: str
    span: SourceSpan
    hint: str | None = None

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")


_COLORS = {
    Severity.ERROR: "\x1b[31m",
    Severity.WARNING: "\x1b[33m",
    Severity.INFO: "\x1b[36m",
}
_RESET = "\x1b[0m"


def use_color(stream=None) -> bool:
    """Color unless NO_COLOR is set or the stream is not a terminal."""
    if os.environ.get("NO_COLOR"):
        return False
    stream = stream if stream is not None else sys.stderr
    return bool(getattr(stream, "isatty", lambda: False)())


def render_diagnostic(diag: Diagnostic, source: str, color: bool = False) -> str:
    """Render a diagnostic as location line, source excerpt, caret underline.

    Output shape::

        file:3:14: error: invalid value 'Shipped' for 'lifecycle'
            lifecycle: Shipped
                       ^^^^^^^
        hint: valid values: Planning, Operation, Deprecate, Retire
    """
    span = diag.span
    sev = str(diag.severity)
    if color:
        sev = f"{_COLORS[diag.severity]}{sev}{_RESET}"
    lines = [f"{span.file}:{span.start_line}:{span.start_col}: {sev}: {diag.message}"]

    source_lines = source.splitlines()
    if 1 <= span.start_line <= len(source_lines):
        text = source_lines[span.start_line - 1]
        lines.append("    " + text)
        if span.end_line == span.start_line:
            width = max(1, span.end_col - span.start_col)
        else:
            width = max(1, len(text) - span.start_col + 1)
        caret = " " * (span.start_col - 1) + "^" * width
        lines.append("    " + caret)
    if diag.hint:
        lines.append(f"hint: {diag.hint}")
    return "\n".join(lines)
