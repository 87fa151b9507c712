"""Reference resolution: symbol checking, error classes, span bookkeeping."""
from conftest import load_errors, load_ok, read_corpus

from bomi import UserKind, census, load, parse, resolve
from bomi.resolver import DUPLICATE_ID, TYPE_MISMATCH, UNRESOLVED_REFERENCE


def resolve_errors(text):
    raw, diags = parse(text)
    assert not diags, [d.message for d in diags]
    model, errors = resolve(raw)
    return model, errors


def test_corpus_resolves_to_expected_census():
    model = load_ok(read_corpus("company-a"), "company-a.bomi")
    assert census(model).as_tuple() == (1, 2, 2, 1, 2, 1, 1)


def test_empty_model_resolves():
    model = load_ok('model "empty" { }')
    assert census(model).as_tuple() == (0, 0, 0, 0, 0, 0, 0)


def test_unresolved_reference_names_the_symbol():
    src = 'model "m" {\n  bo B { }\n  usage Dev2 -> B { }\n}'
    model, errors = resolve_errors(src)
    assert model is None
    assert len(errors) == 1
    assert errors[0].kind == UNRESOLVED_REFERENCE
    assert "'Dev2'" in errors[0].message
    assert (errors[0].span.start_line, errors[0].span.start_col) == (3, 9)


def test_duplicate_id_reports_both_spans():
    src = 'model "m" {\n  bo Thing { }\n  mi Thing { types: [Team] }\n}'
    model, errors = resolve_errors(src)
    assert model is None
    assert errors[0].kind == DUPLICATE_ID
    assert errors[0].span.start_line == 3
    assert errors[0].related is not None
    assert errors[0].related.start_line == 2


def test_type_mismatch_usage_user_names_driver():
    src = ('model "m" { bo B { } mi M { types: [Team] } '
           'driver D { drives: [M] } usage D -> B { } }')
    model, errors = resolve_errors(src)
    assert model is None
    assert len(errors) == 1
    assert errors[0].kind == TYPE_MISMATCH
    assert "driver" in errors[0].message


def test_part_of_must_name_island():
    src = 'model "m" { bo B { } role R { part_of: B } }'
    model, errors = resolve_errors(src)
    assert model is None
    assert errors[0].kind == TYPE_MISMATCH


def test_duplicate_usage_pair():
    src = ('model "m" { bo B { } role R { } '
           'usage R -> B { } usage R -> B { criticality: high } }')
    model, errors = resolve_errors(src)
    assert model is None
    assert len(errors) == 1
    assert "duplicate usage" in errors[0].message


def test_mi_user_allowed_in_usage():
    src = 'model "m" { bo B { } mi M { types: [Team] } usage M -> B { } }'
    model, errors = resolve_errors(src)
    assert not errors
    assert model.usages[0].user_kind is UserKind.ISLAND


def test_member_of_filled_from_team_declarations():
    src = ('model "m" { bo B { } role R { } governance T1 { members: [R] governs B { } } '
           'governance T2 { members: [R] } }')
    model, errors = resolve_errors(src)
    assert not errors
    assert model.role("R").member_of == ("T1", "T2")


def test_duplicate_members_and_drives_are_collapsed():
    src = ('model "m" { mi M { types: [Team] } role R { } '
           'driver D { drives: [M, M] } governance T { members: [R, R] } }')
    model, errors = resolve_errors(src)
    assert not errors
    assert model.drivers[0].drives == ("M",)
    assert model.governance_teams[0].members == ("R",)


def test_totality_model_xor_errors():
    for src in (
        'model "ok" { bo B { } }',
        'model "bad" { usage X -> Y { } }',
        'model "dup" { bo B { } bo B { } }',
    ):
        raw, diags = parse(src)
        assert not diags
        model, errors = resolve(raw)
        assert (model is None) != (not errors)


def test_errors_sorted_by_position():
    src = ('model "m" {\n  usage A -> B { }\n  responsible C -> D\n}')
    model, errors = resolve_errors(src)
    assert model is None
    positions = [e.span.position for e in errors]
    assert positions == sorted(positions)
    assert len(errors) == 4  # A, B, C, D all undeclared


def test_resolution_is_deterministic():
    src = read_corpus("company-c")
    first_model, first_diags = load(src, "c.bomi")
    second_model, second_diags = load(src, "c.bomi")
    assert first_diags == second_diags
    assert first_model == second_model


def test_spans_recorded_for_elements_and_relations():
    model = load_ok(read_corpus("company-a"), "company-a.bomi")
    assert model.span_of("UserStory").start_line > 1
    usage_span = model.span_of("Developer->UserStory")
    assert usage_span.file == "company-a.bomi"
    governs_span = model.span_of("ForumOfProductOwners->UserStory")
    assert governs_span.start_line > usage_span.start_line
