"""Modeling and analysis of boundary objects and methodological islands.

A textual DSL (``.bomi`` files) for describing which artifacts organizations
coordinate through and which groups use them, plus a resolver, a
coordination-smell rule catalog with three-valued evaluation, JSON and
GraphViz exports, and a CLI (``bomi``).

Typical use::

    from bomi import load, evaluate, census

    model, diagnostics = load(source_text, "team-setup.bomi")
    if model is not None:
        findings = evaluate(model)
"""
from .analysis import (
    AnalysisConfig,
    ComplexityMetrics,
    Finding,
    Rule,
    UnknownRuleIdError,
    builtin_rules,
    complexity,
    evaluate,
    governance_diversity,
    rule_ids,
)
from .diagnostics import Diagnostic, Severity, SourceSpan, render_diagnostic
from .dot import DotStyle, to_dot
from .jsonio import SchemaError, VersionError, from_json, to_json
from .model import (
    BomiModel,
    BoundaryObject,
    CrudRight,
    DistanceType,
    Driver,
    DriverType,
    ElementCensus,
    GovernanceTeam,
    GovernsLink,
    Lifecycle,
    MethodologicalIsland,
    MiType,
    QualAttr,
    QualLevel,
    Responsibility,
    Role,
    StructuralViolation,
    SuperType,
    SuperTypeKind,
    UsageLink,
    UserKind,
    census,
    conformance,
)
from .parser import parse
from .resolver import ResolutionError, load, resolve
from .stats import stats_report
from .truth import Truth, level_matches

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "BomiModel",
    "BoundaryObject",
    "ComplexityMetrics",
    "CrudRight",
    "Diagnostic",
    "DistanceType",
    "DotStyle",
    "Driver",
    "DriverType",
    "ElementCensus",
    "Finding",
    "GovernanceTeam",
    "GovernsLink",
    "Lifecycle",
    "MethodologicalIsland",
    "MiType",
    "QualAttr",
    "QualLevel",
    "ResolutionError",
    "Responsibility",
    "Role",
    "Rule",
    "SchemaError",
    "Severity",
    "SourceSpan",
    "StructuralViolation",
    "SuperType",
    "SuperTypeKind",
    "Truth",
    "UnknownRuleIdError",
    "UsageLink",
    "UserKind",
    "VersionError",
    "builtin_rules",
    "census",
    "complexity",
    "conformance",
    "evaluate",
    "from_json",
    "governance_diversity",
    "level_matches",
    "load",
    "parse",
    "render_diagnostic",
    "resolve",
    "rule_ids",
    "stats_report",
    "to_dot",
    "to_json",
]
