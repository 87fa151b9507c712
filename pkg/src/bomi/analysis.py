"""Coordination-smell rule catalog and evaluation engine.

Every rule fires when the smell is PRESENT (checks that are naturally
phrased as health invariants, like "has a governance team", are negated).
Conditions evaluate under Kleene three-valued truth: a blank attribute makes
a comparison UNKNOWN and an UNKNOWN condition never fires.  Model
incompleteness is surfaced separately at INFO severity: blank attributes
that enabled rules wanted to read (``INC-01``) and governance teams with no
members listed (``INC-02``).

Catalog (id, severity, fires when):

  BO-01  warning  modularity = low
  BO-02  warning  internal_consistency = low
  BO-03  warning  external_consistency = low
  BO-04  warning  maintainability = high (maintenance effort, high is bad)
  BO-05  warning  up_to_date = low
  BO-06  warning  level_of_detail = high and frequency_of_change = high
  BO-07  warning  lifecycle in {Deprecate, Retire} and frequency_of_change = high
  BO-08  warning  lifecycle = Planning and frequency_of_change = low
  US-01  warning  fit_for_purpose = low
  US-02  warning  criticality = high and stability = low
  US-03  warning  criticality = high and accessibility = low
  MS-01  warning  no governs link targets the BO
  MS-02  warning  no responsibility targets the BO
  MS-03  warning  no usage on the BO carries the update right
  AC-01  warning  a governing team has a member that does not use the BO
                  (member-less teams are MS-01 territory and do not fire this;
                  a member counts as using the BO when its island does)
  AC-02  warning  frequency_of_change = high and some governs link on the BO
                  has frequency_of_coordination = low
  WS-01  warning  a governance team with >= 2 members draws them all from one island
  WS-02  info     element count or usage fan-in exceeds the configured limits
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .diagnostics import Severity, SourceSpan
from .model import (
    BomiModel,
    BoundaryObject,
    CrudRight,
    GovernanceTeam,
    Lifecycle,
    QualAttr,
    QualLevel,
    UsageLink,
    UserKind,
    census,
    quality_attrs,
)
from .truth import Truth, and_, any_, level_matches

INCOMPLETENESS_ID = "INC-01"
EMPTY_TEAM_ID = "INC-02"


class UnknownRuleIdError(ValueError):
    """A configuration enabled a rule id that is not in the catalog."""


@dataclass(frozen=True)
class Finding:
    """One detected smell (or incompleteness note) on one subject."""

    rule_id: str
    severity: Severity
    subject_id: str
    message: str
    span: SourceSpan


@dataclass(frozen=True)
class AnalysisConfig:
    enabled_rules: frozenset[str] | None = None  # None enables the whole catalog
    max_elements: int = 30
    max_usage_fan_in: int = 8
    fail_severity: Severity = Severity.WARNING
    report_incompleteness: bool = True

    def __post_init__(self) -> None:
        if self.max_elements <= 0 or self.max_usage_fan_in <= 0:
            raise ValueError("complexity thresholds must be positive")

    def is_enabled(self, rule_id: str) -> bool:
        return self.enabled_rules is None or rule_id in self.enabled_rules


@dataclass(frozen=True)
class ComplexityMetrics:
    element_count: int
    relation_count: int
    usage_fan_in: Mapping[str, int]  # per boundary object
    avg_island_coupling: Fraction  # crossing relations / total relations
    governance_diversity: Mapping[str, int]  # per team: distinct member islands


@dataclass(frozen=True)
class Rule:
    id: str
    title: str
    severity: Severity
    origin: str  # rule family: where this kind of check comes from
    subject_kind: str  # "bo" | "usage" | "governance-team" | "model"
    reads: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    fires: Callable[..., Truth] = lambda subject, model, config: Truth.FALSE
    explain: Callable[..., str] = lambda subject, model, config: ""


# --- condition helpers --------------------------------------------------


def _show(name: str, attr: QualAttr) -> str:
    if attr.note is not None:
        return f'{name}={attr.level} ("{attr.note}")'
    return f"{name}={attr.level}"


def _lifecycle_in(bo: BoundaryObject, stages: tuple[Lifecycle, ...]) -> Truth:
    if bo.lifecycle is Lifecycle.UNKNOWN:
        return Truth.UNKNOWN
    return Truth.of(bo.lifecycle in stages)


def _member_uses(model: BomiModel, role_id: str, bo_id: str) -> bool:
    role = model.role(role_id)
    for u in model.usages_of(bo_id):
        if u.user_kind is UserKind.ROLE and u.user == role_id:
            return True
        if u.user_kind is UserKind.ISLAND and role.part_of == u.user:
            return True
    return False


def _non_using_governors(model: BomiModel, bo_id: str) -> list[tuple[GovernanceTeam, list[str]]]:
    out = []
    for link in model.governs_of(bo_id):
        team = model.team(link.team)
        if not team.members:
            continue
        missing = [m for m in team.members if not _member_uses(model, m, bo_id)]
        if missing:
            out.append((team, missing))
    return out


def governance_diversity(team: GovernanceTeam, model: BomiModel) -> int:
    """Distinct islands among a team's members.

    Members without an island each count as their own bucket, giving the
    team the benefit of the doubt.
    """
    islands: set[str] = set()
    islandless = 0
    for member_id in team.members:
        part = model.role(member_id).part_of
        if part is None:
            islandless += 1
        else:
            islands.add(part)
    return len(islands) + islandless


# --- rule conditions ------------------------------------------------------


def _attr_rule(rule_id: str, title: str, attr_name: str, level: QualLevel,
               subject_kind: str = "bo", origin: str = "attribute smell") -> Rule:
    def fires(subject, model, config):
        return level_matches(quality_attrs(subject)[attr_name], level)

    def explain(subject, model, config):
        return f"{title.lower()}: {_show(attr_name, quality_attrs(subject)[attr_name])}"

    return Rule(rule_id, title, Severity.WARNING, origin, subject_kind,
                reads={subject_kind: (attr_name,)}, fires=fires, explain=explain)


def _bo06_fires(bo, model, config):
    return and_(level_matches(bo.level_of_detail, QualLevel.HIGH),
                level_matches(bo.frequency_of_change, QualLevel.HIGH))


def _bo07_fires(bo, model, config):
    return and_(_lifecycle_in(bo, (Lifecycle.DEPRECATE, Lifecycle.RETIRE)),
                level_matches(bo.frequency_of_change, QualLevel.HIGH))


def _bo08_fires(bo, model, config):
    return and_(_lifecycle_in(bo, (Lifecycle.PLANNING,)),
                level_matches(bo.frequency_of_change, QualLevel.LOW))


def _us02_fires(u, model, config):
    return and_(level_matches(u.criticality, QualLevel.HIGH),
                level_matches(u.stability, QualLevel.LOW))


def _us03_fires(u, model, config):
    return and_(level_matches(u.criticality, QualLevel.HIGH),
                level_matches(u.accessibility, QualLevel.LOW))


def _ms01_fires(bo, model, config):
    return Truth.of(not model.governs_of(bo.id))


def _ms02_fires(bo, model, config):
    return Truth.of(not model.responsibilities_of(bo.id))


def _ms03_fires(bo, model, config):
    return Truth.of(not any(CrudRight.UPDATE in u.crud for u in model.usages_of(bo.id)))


def _ac01_fires(bo, model, config):
    return Truth.of(bool(_non_using_governors(model, bo.id)))


def _ac01_explain(bo, model, config):
    parts = []
    for team, missing in _non_using_governors(model, bo.id):
        parts.append(f"governance team {team.id!r} has members that do not use it: "
                     + ", ".join(missing))
    return f"governing roles should use {bo.id!r}; " + "; ".join(parts)


def _ac02_fires(bo, model, config):
    low_coord = any_(level_matches(g.frequency_of_coordination, QualLevel.LOW)
                     for g in model.governs_of(bo.id))
    return and_(level_matches(bo.frequency_of_change, QualLevel.HIGH), low_coord)


def _ac02_explain(bo, model, config):
    slow = [g for g in model.governs_of(bo.id)
            if level_matches(g.frequency_of_coordination, QualLevel.LOW).is_true]
    teams = ", ".join(_show(f"{g.team}: frequency_of_coordination", g.frequency_of_coordination)
                      for g in slow)
    return (f"changes frequently ({_show('frequency_of_change', bo.frequency_of_change)}) "
            f"but is coordinated infrequently ({teams})")


def _ws01_fires(team, model, config):
    return Truth.of(len(team.members) >= 2 and governance_diversity(team, model) == 1)


def _ws01_explain(team, model, config):
    island = model.role(team.members[0]).part_of
    return (f"governance team {team.id!r} is homogeneous: all {len(team.members)} members "
            f"come from island {island!r}; a diverse set of roles or islands is expected")


def _ws02_fires(model_subject, model, config):
    metrics = complexity(model, config)
    if metrics.element_count > config.max_elements:
        return Truth.TRUE
    return Truth.of(any(n > config.max_usage_fan_in for n in metrics.usage_fan_in.values()))


def _ws02_explain(model_subject, model, config):
    metrics = complexity(model, config)
    parts = []
    if metrics.element_count > config.max_elements:
        parts.append(f"{metrics.element_count} elements (limit {config.max_elements})")
    for bo_id in sorted(metrics.usage_fan_in):
        n = metrics.usage_fan_in[bo_id]
        if n > config.max_usage_fan_in:
            parts.append(f"usage fan-in {n} on {bo_id!r} (limit {config.max_usage_fan_in})")
    return "model may be too complex to discuss: " + "; ".join(parts)


_ATTR = "attribute smell"
_COMBO = "attribute-combination smell"
_USAGE = "usage smell"
_MISSING = "missing-relationship smell"
_CROSS = "cross-element smell"
_WORKSHOP = "workshop-suggested check"

_CATALOG: tuple[Rule, ...] = (
    _attr_rule("BO-01", "Low modularity", "modularity", QualLevel.LOW, origin=_ATTR),
    _attr_rule("BO-02", "Not internally consistent", "internal_consistency", QualLevel.LOW, origin=_ATTR),
    _attr_rule("BO-03", "Not externally consistent", "external_consistency", QualLevel.LOW, origin=_ATTR),
    _attr_rule("BO-04", "High maintenance burden", "maintainability", QualLevel.HIGH, origin=_ATTR),
    _attr_rule("BO-05", "Not up to date", "up_to_date", QualLevel.LOW, origin=_ATTR),
    Rule("BO-06", "High level of detail and frequent change", Severity.WARNING, _COMBO, "bo",
         reads={"bo": ("level_of_detail", "frequency_of_change")},
         fires=_bo06_fires,
         explain=lambda bo, m, c: ("high level of detail combined with frequent change: "
                                   f"{_show('level_of_detail', bo.level_of_detail)}, "
                                   f"{_show('frequency_of_change', bo.frequency_of_change)}")),
    Rule("BO-07", "Later lifecycle and frequent change", Severity.WARNING, _COMBO, "bo",
         reads={"bo": ("lifecycle", "frequency_of_change")},
         fires=_bo07_fires,
         explain=lambda bo, m, c: (f"late lifecycle stage (lifecycle={bo.lifecycle.value}) "
                                   f"with {_show('frequency_of_change', bo.frequency_of_change)}")),
    Rule("BO-08", "Early lifecycle but rarely changed", Severity.WARNING, _COMBO, "bo",
         reads={"bo": ("lifecycle", "frequency_of_change")},
         fires=_bo08_fires,
         explain=lambda bo, m, c: (f"early lifecycle stage (lifecycle={bo.lifecycle.value}) "
                                   f"yet {_show('frequency_of_change', bo.frequency_of_change)}")),
    _attr_rule("US-01", "Not fit for purpose", "fit_for_purpose", QualLevel.LOW,
               subject_kind="usage", origin=_USAGE),
    Rule("US-02", "High criticality and low stability", Severity.WARNING, _USAGE, "usage",
         reads={"usage": ("criticality", "stability")},
         fires=_us02_fires,
         explain=lambda u, m, c: (f"critical but unstable: {_show('criticality', u.criticality)}, "
                                  f"{_show('stability', u.stability)}")),
    Rule("US-03", "High criticality and low accessibility", Severity.WARNING, _USAGE, "usage",
         reads={"usage": ("criticality", "accessibility")},
         fires=_us03_fires,
         explain=lambda u, m, c: (f"critical but hard to access: {_show('criticality', u.criticality)}, "
                                  f"{_show('accessibility', u.accessibility)}")),
    Rule("MS-01", "No governance team", Severity.WARNING, _MISSING, "bo",
         fires=_ms01_fires,
         explain=lambda bo, m, c: f"no governance team governs {bo.id!r}"),
    Rule("MS-02", "No one responsible for BO", Severity.WARNING, _MISSING, "bo",
         fires=_ms02_fires,
         explain=lambda bo, m, c: f"no role is responsible for {bo.id!r}"),
    Rule("MS-03", "No one can update BO", Severity.WARNING, _MISSING, "bo",
         fires=_ms03_fires,
         explain=lambda bo, m, c: f"no usage of {bo.id!r} grants the update right"),
    Rule("AC-01", "Governing roles should use BO", Severity.WARNING, _CROSS, "bo",
         fires=_ac01_fires, explain=_ac01_explain),
    Rule("AC-02", "High frequency of change but low frequency of coordination",
         Severity.WARNING, _CROSS, "bo",
         reads={"bo": ("frequency_of_change",), "governs": ("frequency_of_coordination",)},
         fires=_ac02_fires, explain=_ac02_explain),
    Rule("WS-01", "Homogeneous governance team", Severity.WARNING, _WORKSHOP, "governance-team",
         fires=_ws01_fires, explain=_ws01_explain),
    Rule("WS-02", "Excessive model complexity", Severity.INFO, _WORKSHOP, "model",
         fires=_ws02_fires, explain=_ws02_explain),
)


def builtin_rules() -> tuple[Rule, ...]:
    """The full catalog, in stable order."""
    return _CATALOG


def rule_ids() -> tuple[str, ...]:
    return tuple(r.id for r in _CATALOG)


# --- evaluation -----------------------------------------------------------


def _subjects(rule: Rule, model: BomiModel) -> Iterable[tuple[str, object]]:
    if rule.subject_kind == "bo":
        return ((bo.id, bo) for bo in model.boundary_objects)
    if rule.subject_kind == "usage":
        return ((u.key, u) for u in model.usages)
    if rule.subject_kind == "governance-team":
        return ((t.id, t) for t in model.governance_teams)
    if rule.subject_kind == "model":
        return ((model.name, model),)
    raise AssertionError(rule.subject_kind)


def evaluate(model: BomiModel, config: AnalysisConfig | None = None) -> list[Finding]:
    """Run enabled rules plus the incompleteness scan; pure and order-stable.

    Findings are sorted by (source position, rule id, subject id).
    Raises :class:`UnknownRuleIdError` for unknown enabled rule ids.
    """
    config = config or AnalysisConfig()
    known = set(rule_ids())
    if config.enabled_rules is not None:
        bad = sorted(set(config.enabled_rules) - known)
        if bad:
            raise UnknownRuleIdError(f"unknown rule id(s): {', '.join(bad)}")

    findings: list[Finding] = []
    for rule in _CATALOG:
        if not config.is_enabled(rule.id):
            continue
        for subject_id, subject in _subjects(rule, model):
            if rule.fires(subject, model, config).is_true:
                span = model.span_of("" if rule.subject_kind == "model" else subject_id)
                findings.append(Finding(rule.id, rule.severity, subject_id,
                                        rule.explain(subject, model, config), span))

    if config.report_incompleteness:
        findings.extend(_incompleteness(model, config))

    findings.sort(key=lambda f: (f.span.position, f.rule_id, f.subject_id))
    return findings


def _incompleteness(model: BomiModel, config: AnalysisConfig) -> list[Finding]:
    """INFO findings listing blank attributes that enabled rules wanted."""
    wanted: dict[str, set[str]] = {"bo": set(), "usage": set(), "governs": set()}
    for rule in _CATALOG:
        if not config.is_enabled(rule.id):
            continue
        for kind, names in rule.reads.items():
            wanted[kind].update(names)

    out: list[Finding] = []

    def scan(kind: str, subject_id: str, element, lifecycle: Lifecycle | None = None) -> None:
        attrs = quality_attrs(element)
        blank = [name for name in sorted(wanted[kind])
                 if (name == "lifecycle" and lifecycle is Lifecycle.UNKNOWN)
                 or (name != "lifecycle" and name in attrs and attrs[name].is_unknown)]
        if blank:
            out.append(Finding(
                INCOMPLETENESS_ID, Severity.INFO, subject_id,
                "attributes left unknown, some checks could not run: " + ", ".join(blank),
                model.span_of(subject_id)))

    for bo in model.boundary_objects:
        scan("bo", bo.id, bo, lifecycle=bo.lifecycle)
    for u in model.usages:
        scan("usage", u.key, u)
    for g in model.governs_links:
        scan("governs", g.key, g)
    for team in model.governance_teams:
        if not team.members:
            out.append(Finding(
                EMPTY_TEAM_ID, Severity.INFO, team.id,
                f"governance team {team.id!r} lists no members",
                model.span_of(team.id)))
    return out


# --- complexity ------------------------------------------------------------


def complexity(model: BomiModel, config: AnalysisConfig | None = None) -> ComplexityMetrics:
    """Size/coupling metrics over a resolved model.

    ``avg_island_coupling`` is the share of boundary-object relations
    (usages, responsibilities, governs links) whose boundary object is used
    from two or more distinct known islands; membership and drives relations
    never cross.  Thresholds live in the config and do not alter the metrics.
    """
    counts = census(model)
    relation_count = (len(model.usages) + len(model.responsibilities)
                      + len(model.governs_links)
                      + sum(len(d.drives) for d in model.drivers)
                      + sum(len(t.members) for t in model.governance_teams))
    fan_in = {bo.id: len(model.usages_of(bo.id)) for bo in model.boundary_objects}

    user_islands: dict[str, set[str]] = {bo.id: set() for bo in model.boundary_objects}
    for u in model.usages:
        island = model.user_island(u)
        if island is not None:
            user_islands[u.bo].add(island)
    crossing = 0
    for u in model.usages:
        crossing += len(user_islands[u.bo]) >= 2
    for r in model.responsibilities:
        crossing += len(user_islands[r.bo]) >= 2
    for g in model.governs_links:
        crossing += len(user_islands[g.bo]) >= 2
    coupling = Fraction(crossing, relation_count) if relation_count else Fraction(0)

    diversity = {t.id: governance_diversity(t, model) for t in model.governance_teams}
    return ComplexityMetrics(
        element_count=counts.total(),
        relation_count=relation_count,
        usage_fan_in=fan_in,
        avg_island_coupling=coupling,
        governance_diversity=diversity,
    )
