"""Rule-configuration files: a small key = value format.

Example::

    # tighten the complexity gate, silence two rules
    max_elements = 20
    max_usage_fan_in = 6
    fail_severity = warning
    disable = WS-02, BO-08
    incompleteness = off

Keys: ``rules`` (``all``, ``none``, or a comma-separated base set),
``enable`` / ``disable`` (adjust the base set), ``max_elements``,
``max_usage_fan_in``, ``fail_severity`` (error/warning/info), and
``incompleteness`` (on/off).
"""
from __future__ import annotations

from .analysis import AnalysisConfig, rule_ids
from .diagnostics import Severity


class ConfigError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def _rule_list(value: str, line: int) -> set[str]:
    known = set(rule_ids())
    out = set()
    for part in value.split(","):
        rid = part.strip().upper()
        if not rid:
            continue
        if rid not in known:
            raise ConfigError(line, f"unknown rule id {part.strip()!r}")
        out.add(rid)
    return out


def parse_config(text: str) -> AnalysisConfig:
    """Parse configuration text; raises :class:`ConfigError` on bad input."""
    enabled = set(rule_ids())
    max_elements = 30
    max_usage_fan_in = 8
    fail_severity = Severity.WARNING
    incompleteness = True
    explicit_rules = False

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(lineno, f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key == "rules":
            explicit_rules = True
            if value.lower() == "all":
                enabled = set(rule_ids())
            elif value.lower() == "none":
                enabled = set()
            else:
                enabled = _rule_list(value, lineno)
        elif key == "enable":
            explicit_rules = True
            enabled |= _rule_list(value, lineno)
        elif key == "disable":
            explicit_rules = True
            enabled -= _rule_list(value, lineno)
        elif key in ("max_elements", "max_usage_fan_in"):
            try:
                number = int(value)
            except ValueError:
                raise ConfigError(lineno, f"{key} expects an integer, got {value!r}") from None
            if number <= 0:
                raise ConfigError(lineno, f"{key} must be positive")
            if key == "max_elements":
                max_elements = number
            else:
                max_usage_fan_in = number
        elif key == "fail_severity":
            try:
                fail_severity = Severity(value.lower())
            except ValueError:
                raise ConfigError(lineno, "fail_severity must be error, warning, or info") from None
        elif key == "incompleteness":
            if value.lower() not in ("on", "off"):
                raise ConfigError(lineno, "incompleteness must be 'on' or 'off'")
            incompleteness = value.lower() == "on"
        else:
            raise ConfigError(lineno, f"unknown key {key!r}")

    return AnalysisConfig(
        enabled_rules=frozenset(enabled) if explicit_rules else None,
        max_elements=max_elements,
        max_usage_fan_in=max_usage_fan_in,
        fail_severity=fail_severity,
        report_incompleteness=incompleteness,
    )
