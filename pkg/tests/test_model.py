"""Domain types: census, conformance, and the hard model invariants."""
from dataclasses import replace

import pytest
from conftest import load_ok

from bomi import (
    BomiModel,
    BoundaryObject,
    Driver,
    DriverType,
    GovernanceTeam,
    GovernsLink,
    MethodologicalIsland,
    MiType,
    QualAttr,
    QualLevel,
    Responsibility,
    Role,
    SuperType,
    SuperTypeKind,
    UsageLink,
    UserKind,
    census,
    conformance,
)

C3_MIRROR = '''
model "row three mirror" {
  bo B { }
  mi M1 { types: [Team] }
  mi M2 { types: [Team] }
  mi M3 { types: [Silo] }
  mi M4 { types: [Department] }
  mi M5 { types: [Organization] }
  usage M1 -> B { }
  usage M2 -> B { }
  usage M3 -> B { }
  usage M4 -> B { }
  usage M5 -> B { }
  driver D1 { drives: [M1] }
  driver D2 { drives: [M2] }
  driver D3 { drives: [M3, M4] }
  driver D4 { drives: [M5] }
  governance T { members: [] governs B { } }
}
'''


def test_census_c3_shape():
    model = load_ok(C3_MIRROR)
    assert census(model).as_tuple() == (1, 5, 5, 4, 0, 1, 1)


def test_census_empty():
    assert census(BomiModel()).as_tuple() == (0, 0, 0, 0, 0, 0, 0)


def test_census_additivity():
    base = load_ok('model "m" { bo B { } mi M { types: [Team] } role R { part_of: M } }')
    before = census(base).as_dict()
    additions = {
        "bo": replace(base, boundary_objects=base.boundary_objects + (BoundaryObject("B2"),)),
        "mi": replace(base, islands=base.islands + (MethodologicalIsland("M2", frozenset({MiType.TEAM})),)),
        "role": replace(base, roles=base.roles + (Role("R2"),)),
        "usage": replace(base, usages=(UsageLink("R", UserKind.ROLE, "B"),)),
        "driver": replace(base, drivers=(Driver("D", DriverType.PROCESS, drives=("M",)),)),
        "governance_team": replace(base, governance_teams=(GovernanceTeam("T"),)),
    }
    with_team = replace(base, governance_teams=(GovernanceTeam("T"),))
    additions["governs"] = replace(with_team, governs_links=(GovernsLink("T", "B"),))

    for kind, bigger in additions.items():
        after = census(bigger).as_dict()
        for key in before:
            expected = before[key] + (1 if key == kind else 0)
            if kind == "governs" and key == "governance_team":
                expected = 1  # the governs fixture also had to add its team
            assert after[key] == expected, (kind, key)


def test_conformance_corpus_clean(corpus_a):
    assert conformance(corpus_a) == []


def test_conformance_empty_drives():
    model = load_ok('model "m" { mi M { types: [Team] } driver D { } }')
    violations = conformance(model)
    assert len(violations) == 1
    assert violations[0].subject_id == "D"
    assert "drives no island" in violations[0].message


def test_conformance_empty_types():
    model = load_ok('model "m" { mi M { } }')
    violations = conformance(model)
    assert [v.subject_id for v in violations] == ["M"]


def test_multi_typed_island_is_legal():
    model = load_ok('model "m" { mi M { types: [Team, Department] } }')
    assert conformance(model) == []
    assert model.islands[0].types == frozenset({MiType.TEAM, MiType.DEPARTMENT})


def test_conformance_other_supertype_empty_label():
    model = BomiModel(boundary_objects=(
        BoundaryObject("B", super_type=SuperType(SuperTypeKind.OTHER, "")),))
    violations = conformance(model)
    assert len(violations) == 1
    assert "empty label" in violations[0].message


def test_model_rejects_duplicate_ids():
    with pytest.raises(ValueError, match="duplicate id"):
        BomiModel(boundary_objects=(BoundaryObject("X"),),
                  roles=(Role("X"),))


def test_model_rejects_dangling_reference():
    with pytest.raises(ValueError, match="unknown island"):
        BomiModel(roles=(Role("R", part_of="Nowhere"),))


def test_model_rejects_duplicate_usage_pair():
    with pytest.raises(ValueError, match="duplicate usage"):
        BomiModel(
            boundary_objects=(BoundaryObject("B"),),
            roles=(Role("R"),),
            usages=(UsageLink("R", UserKind.ROLE, "B"),
                    UsageLink("R", UserKind.ROLE, "B", criticality=QualAttr(QualLevel.HIGH))),
        )


def test_model_rejects_wrong_user_kind():
    with pytest.raises(ValueError):
        BomiModel(
            boundary_objects=(BoundaryObject("B"),),
            islands=(MethodologicalIsland("M", frozenset({MiType.TEAM})),),
            usages=(UsageLink("M", UserKind.ROLE, "B"),),
        )


def test_responsibility_pairs_unique():
    with pytest.raises(ValueError, match="duplicate responsibility"):
        BomiModel(
            boundary_objects=(BoundaryObject("B"),),
            roles=(Role("R"),),
            responsibilities=(Responsibility("R", "B"), Responsibility("R", "B")),
        )


def test_supertype_label_rules():
    with pytest.raises(ValueError):
        SuperType(SuperTypeKind.OTHER)  # label required
    with pytest.raises(ValueError):
        SuperType(SuperTypeKind.TASK, "label not allowed")
    assert SuperType(SuperTypeKind.OTHER, "Regulation").label == "Regulation"


def test_user_island_helper(corpus_a):
    dev_usage = next(u for u in corpus_a.usages if u.user == "Developer")
    assert corpus_a.user_island(dev_usage) == "DevelopmentTeam"
