"""Rule catalog, three-valued evaluation, metrics."""
import random
from fractions import Fraction

import pytest
from conftest import load_ok, read_corpus
from genmodels import blank_slot, known_slots, random_model
from rule_fixtures import FIRE, NEGATE, SUBJECT

from bomi import (
    AnalysisConfig,
    Severity,
    UnknownRuleIdError,
    builtin_rules,
    complexity,
    evaluate,
    governance_diversity,
    rule_ids,
)
from bomi.analysis import EMPTY_TEAM_ID, INCOMPLETENESS_ID

EXPECTED_IDS = (
    "BO-01", "BO-02", "BO-03", "BO-04", "BO-05", "BO-06", "BO-07", "BO-08",
    "US-01", "US-02", "US-03",
    "MS-01", "MS-02", "MS-03",
    "AC-01", "AC-02",
    "WS-01", "WS-02",
)


def only(rule_id: str) -> AnalysisConfig:
    return AnalysisConfig(enabled_rules=frozenset({rule_id}), report_incompleteness=False)


def warnings_of(findings):
    return [f for f in findings if f.severity is Severity.WARNING]


# --- catalog shape ---------------------------------------------------------


def test_catalog_has_eighteen_rules_in_stable_order():
    catalog = builtin_rules()
    assert len(catalog) == 18
    assert tuple(r.id for r in catalog) == EXPECTED_IDS
    assert builtin_rules() is builtin_rules() or rule_ids() == EXPECTED_IDS


def test_rule_ids_unique():
    assert len(set(rule_ids())) == len(rule_ids())


def test_severities():
    by_id = {r.id: r for r in builtin_rules()}
    assert by_id["WS-02"].severity is Severity.INFO
    for rid in EXPECTED_IDS:
        if rid != "WS-02":
            assert by_id[rid].severity is Severity.WARNING, rid


def test_rule_metadata_identifies_catalog_rows():
    by_id = {r.id: r for r in builtin_rules()}
    assert by_id["BO-01"].title == "Low modularity"
    assert by_id["MS-01"].title == "No governance team"
    assert "smell" in by_id["BO-01"].origin
    assert all(r.title for r in builtin_rules())


# --- firing / negation pairs -----------------------------------------------


@pytest.mark.parametrize("rule_id", EXPECTED_IDS)
def test_fire_fixture_triggers_exactly_one_finding(rule_id):
    model = load_ok(FIRE[rule_id])
    findings = evaluate(model, only(rule_id))
    assert len(findings) == 1, (rule_id, findings)
    assert findings[0].rule_id == rule_id
    assert findings[0].subject_id == SUBJECT[rule_id]
    assert findings[0].message


@pytest.mark.parametrize("rule_id", EXPECTED_IDS)
def test_negation_fixture_is_silent(rule_id):
    model = load_ok(NEGATE[rule_id])
    assert evaluate(model, only(rule_id)) == []


def test_all_unknown_model_yields_no_value_rule_warnings():
    model = load_ok('model "m" { bo B { } role R { } usage R -> B { } '
                    'responsible R -> B '
                    'governance T { members: [R] governs B { } } }')
    findings = evaluate(model)
    value_rules = {"BO-01", "BO-02", "BO-03", "BO-04", "BO-05", "BO-06", "BO-07", "BO-08",
                   "US-01", "US-02", "US-03", "AC-02"}
    assert not [f for f in findings if f.rule_id in value_rules]


def test_single_smell_plus_incompleteness():
    model = load_ok('model "m" { bo B { modularity: low } }')
    findings = evaluate(model)
    warnings = warnings_of(findings)
    by_rule = {f.rule_id for f in warnings}
    # the missing-element rules legitimately fire on a bare BO too
    assert by_rule == {"BO-01", "MS-01", "MS-02", "MS-03"}
    infos = [f for f in findings if f.rule_id == INCOMPLETENESS_ID]
    assert len(infos) == 1
    assert "up_to_date" in infos[0].message and "modularity" not in infos[0].message


# --- corpus scenario ---------------------------------------------------------


def test_corpus_smells(corpus_a):
    findings = evaluate(corpus_a)
    warnings = warnings_of(findings)
    assert [f.rule_id for f in warnings] == ["US-02", "US-02"]
    assert {f.subject_id for f in warnings} == {"Developer->UserStory", "ProductOwner->UserStory"}
    fired = {f.rule_id for f in findings}
    assert "AC-01" not in fired
    assert "MS-01" not in fired and "MS-02" not in fired


def test_corpus_us02_messages_carry_values(corpus_a):
    messages = [f.message for f in evaluate(corpus_a) if f.rule_id == "US-02"]
    assert all("criticality=high" in m and "stability=low" in m for m in messages)


# --- three-valued behavior over whole rules ----------------------------------


def test_unknown_and_false_is_false_not_unknown():
    # detail high is required; freq low makes the conjunction FALSE even
    # though detail is blank, so no incompleteness-driven near-miss either way
    model = load_ok('model "m" { bo B { frequency_of_change: low } }')
    findings = evaluate(model, only("BO-06"))
    assert findings == []


def test_monotone_unknown_safety_is_setwise():
    rng = random.Random(40)
    for _ in range(60):
        model = random_model(rng)
        base = {(f.rule_id, f.subject_id) for f in warnings_of(evaluate(model))}
        for slot in known_slots(model):
            blanked = {(f.rule_id, f.subject_id)
                       for f in warnings_of(evaluate(blank_slot(model, slot)))}
            assert blanked <= base, slot


def test_rule_isolation():
    model = load_ok(FIRE["BO-06"])
    everything = evaluate(model)
    without = evaluate(model, AnalysisConfig(
        enabled_rules=frozenset(set(rule_ids()) - {"BO-06"})))
    removed = {(f.rule_id, f.subject_id) for f in everything} - \
              {(f.rule_id, f.subject_id) for f in without}
    assert removed == {("BO-06", "B")}
    # BO-06's reads leave the incompleteness scan when disabled
    inc_all = next(f for f in everything if f.rule_id == INCOMPLETENESS_ID)
    inc_without = next(f for f in without if f.rule_id == INCOMPLETENESS_ID)
    assert "lifecycle" in inc_all.message  # BO-07/BO-08 still want it
    assert inc_all.message != inc_without.message or "level_of_detail" not in inc_without.message


def test_unknown_rule_id_rejected():
    model = load_ok('model "m" { }')
    with pytest.raises(UnknownRuleIdError, match="ZZ-99"):
        evaluate(model, AnalysisConfig(enabled_rules=frozenset({"ZZ-99"})))


def test_evaluate_deterministic_and_sorted(corpus_a):
    first = evaluate(corpus_a)
    second = evaluate(corpus_a)
    assert first == second
    keys = [(f.span.position, f.rule_id, f.subject_id) for f in first]
    assert keys == sorted(keys)


def test_subject_soundness_on_random_models():
    rng = random.Random(41)
    kinds = {r.id: r.subject_kind for r in builtin_rules()}
    for _ in range(40):
        model = random_model(rng)
        bo_ids = {b.id for b in model.boundary_objects}
        usage_keys = {u.key for u in model.usages}
        team_ids = {t.id for t in model.governance_teams}
        governs_keys = {g.key for g in model.governs_links}
        for f in evaluate(model):
            if f.rule_id == INCOMPLETENESS_ID:
                assert f.subject_id in bo_ids | usage_keys | governs_keys
            elif f.rule_id == EMPTY_TEAM_ID:
                assert f.subject_id in team_ids
            elif kinds[f.rule_id] == "bo":
                assert f.subject_id in bo_ids
            elif kinds[f.rule_id] == "usage":
                assert f.subject_id in usage_keys
            elif kinds[f.rule_id] == "governance-team":
                assert f.subject_id in team_ids
            else:
                assert f.subject_id == model.name


# --- AC-01 details ------------------------------------------------------------


def test_ac01_island_usage_counts_as_member_usage():
    model = load_ok('model "m" { bo B { } mi M { types: [Team] } '
                    'role R { part_of: M } usage M -> B { } '
                    'governance T { members: [R] governs B { } } }')
    assert evaluate(model, only("AC-01")) == []


def test_ac01_empty_team_does_not_fire():
    model = load_ok('model "m" { bo B { } governance T { members: [] governs B { } } }')
    assert evaluate(model, only("AC-01")) == []


def test_empty_team_info_note():
    model = load_ok('model "m" { governance T { members: [] } }')
    findings = evaluate(model)
    assert [f.rule_id for f in findings] == [EMPTY_TEAM_ID]
    assert findings[0].severity is Severity.INFO


# --- diversity and complexity -------------------------------------------------


def test_governance_diversity_corpus(corpus_a):
    team = corpus_a.team("ForumOfProductOwners")
    assert governance_diversity(team, corpus_a) == 1


def test_governance_diversity_two_islands():
    model = load_ok(NEGATE["WS-01"])
    assert governance_diversity(model.team("T"), model) == 2


def test_governance_diversity_islandless_members_diverse():
    model = load_ok('model "m" { role A { } role B { } governance T { members: [A, B] } }')
    assert governance_diversity(model.team("T"), model) == 2
    assert evaluate(model, only("WS-01")) == []


def test_governance_diversity_empty_team():
    model = load_ok('model "m" { governance T { members: [] } }')
    assert governance_diversity(model.team("T"), model) == 0


def test_complexity_corpus(corpus_a):
    metrics = complexity(corpus_a)
    assert metrics.element_count == 10  # census kinds summed
    assert metrics.relation_count == 7  # 2 usages + 1 resp + 1 governs + 2 drives + 1 member
    assert metrics.usage_fan_in == {"UserStory": 2}
    assert metrics.avg_island_coupling == Fraction(4, 7)
    assert metrics.governance_diversity == {"ForumOfProductOwners": 1}


def test_complexity_empty():
    model = load_ok('model "m" { }')
    metrics = complexity(model)
    assert metrics.element_count == 0
    assert metrics.relation_count == 0
    assert metrics.avg_island_coupling == 0


def test_coupling_within_bounds():
    rng = random.Random(42)
    for _ in range(50):
        metrics = complexity(random_model(rng))
        assert 0 <= metrics.avg_island_coupling <= 1


def test_ws02_element_count_threshold():
    model = load_ok(FIRE["WS-02"])
    config = AnalysisConfig(enabled_rules=frozenset({"WS-02"}), max_elements=5,
                            report_incompleteness=False)
    findings = evaluate(model, config)
    assert len(findings) == 1
    assert "elements" in findings[0].message and "fan-in" in findings[0].message


def test_ws02_respects_configured_fan_in():
    model = load_ok(NEGATE["WS-02"])  # fan-in 8
    tighter = AnalysisConfig(enabled_rules=frozenset({"WS-02"}), max_usage_fan_in=7,
                             report_incompleteness=False)
    assert len(evaluate(model, tighter)) == 1


def test_config_requires_positive_thresholds():
    with pytest.raises(ValueError):
        AnalysisConfig(max_elements=0)
