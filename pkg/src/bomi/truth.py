"""Three-valued (Kleene) truth for rule conditions over incomplete models.

Workshop-built models routinely leave attributes blank, so conditions over
them evaluate to TRUE, FALSE, or UNKNOWN.  A rule fires only on TRUE:
an unknown attribute can never raise an alarm, only suppress one.
"""
from __future__ import annotations

import enum
from typing import Iterable

from .model import QualAttr, QualLevel


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @property
    def is_true(self) -> bool:
        return self is Truth.TRUE

    @staticmethod
    def of(value: bool) -> "Truth":
        return Truth.TRUE if value else Truth.FALSE


def and_(*args: Truth) -> Truth:
    """Kleene conjunction: FALSE dominates, then UNKNOWN."""
    if any(a is Truth.FALSE for a in args):
        return Truth.FALSE
    if any(a is Truth.UNKNOWN for a in args):
        return Truth.UNKNOWN
    return Truth.TRUE


def or_(*args: Truth) -> Truth:
    """Kleene disjunction: TRUE dominates, then UNKNOWN."""
    if any(a is Truth.TRUE for a in args):
        return Truth.TRUE
    if any(a is Truth.UNKNOWN for a in args):
        return Truth.UNKNOWN
    return Truth.FALSE


def any_(args: Iterable[Truth]) -> Truth:
    """``or_`` over an iterable; FALSE when empty."""
    return or_(*args)


def not_(arg: Truth) -> Truth:
    if arg is Truth.UNKNOWN:
        return Truth.UNKNOWN
    return Truth.of(arg is Truth.FALSE)


def level_matches(attr: QualAttr, target: QualLevel) -> Truth:
    """Does a qualitative attribute sit at ``target``?

    UNKNOWN when the attribute was left blank; comparing against the
    UNKNOWN level itself is meaningless and rejected.
    """
    if target is QualLevel.UNKNOWN:
        raise ValueError("cannot match against the unknown level")
    if attr.level is QualLevel.UNKNOWN:
        return Truth.UNKNOWN
    return Truth.of(attr.level is target)


def level_in(attr: QualAttr, targets: tuple[QualLevel, ...]) -> Truth:
    return any_(level_matches(attr, t) for t in targets)
