"""Document model: parsing, canonical serialization, validation, patches."""

from __future__ import annotations

import json

import pytest

from dashgen.dsl import (
    AnalysisTask,
    ChartType,
    InvariantViolation,
    PatchOp,
    SpecPatch,
    SpecSyntaxError,
    SpecValidationError,
    TargetNotFound,
    apply_patch,
    parse_spec,
    serialize_spec,
)
from dashgen.service.pipeline import run_message

from conftest import GENERATION_PROMPTS, make_spec, make_view

MINIMAL_DOC = {
    "schema_version": 1,
    "title": "Ops",
    "domain": "generic",
    "style": {
        "theme_color": [64, 156, 255],
        "palette": {
            "kind": "Categorical",
            "name": "deep-blue",
            "colors": [
                [64, 156, 255], [255, 176, 32], [0, 216, 180], [255, 84, 112],
                [170, 120, 255], [120, 220, 60],
            ],
        },
        "embellishments": [],
    },
    "views": [
        {
            "id": "v1",
            "title": "Throughput",
            "analysis_task": "Comparison",
            "importance": 1.0,
            "charts": [
                {
                    "chart_type": "Bar",
                    "encoding": {"x": "category", "y": "value"},
                    "dataset": {
                        "fields": [
                            {"name": "category", "kind": "dimension"},
                            {"name": "value", "kind": "measure"},
                        ],
                        "rows": [["Alpha", 10.0], ["Bravo", 20.0]],
                    },
                }
            ],
        }
    ],
    "layout": {
        "screen": [1920, 1080],
        "root": {
            "kind": "Group",
            "fraction": 1.0,
            "orientation": "Column",
            "children": [{"kind": "Leaf", "fraction": 1.0, "view_id": "v1"}],
        },
    },
}


def _doc(**overrides) -> bytes:
    payload = json.loads(json.dumps(MINIMAL_DOC))
    payload.update(overrides)
    return json.dumps(payload).encode("utf-8")


def test_parse_minimal_document():
    spec = parse_spec(_doc())
    assert len(spec.views) == 1
    assert spec.views[0].charts[0].chart_type is ChartType.BAR
    assert spec.layout.leaf_view_ids() == ["v1"]


def test_parse_rejects_broken_json_with_position():
    with pytest.raises(SpecSyntaxError) as excinfo:
        parse_spec(b'{"schema_version": 1,,}')
    assert excinfo.value.line == 1
    assert excinfo.value.column > 1


def test_parse_rejects_non_utf8():
    with pytest.raises(SpecSyntaxError):
        parse_spec(b"\xff\xfe{}")


def test_parse_rejects_wrong_schema_version():
    with pytest.raises(SpecValidationError) as excinfo:
        parse_spec(_doc(schema_version=2))
    assert excinfo.value.rule_id == "schema"


def test_dangling_view_ref_rule_and_path():
    payload = json.loads(json.dumps(MINIMAL_DOC))
    payload["layout"]["root"]["children"][0]["view_id"] = "v9"
    with pytest.raises(SpecValidationError) as excinfo:
        parse_spec(json.dumps(payload).encode())
    assert excinfo.value.rule_id == "dangling-view-ref"
    assert excinfo.value.path.startswith("layout.root")


def _violation_doc(rule_id: str) -> bytes:
    """One seeded fixture per semantic validation rule."""
    payload = json.loads(json.dumps(MINIMAL_DOC))
    views = payload["views"]
    if rule_id == "duplicate-view-id":
        clone = json.loads(json.dumps(views[0]))
        views.append(clone)
        payload["layout"]["root"]["children"] = [
            {"kind": "Leaf", "fraction": 0.5, "view_id": "v1"},
            {"kind": "Leaf", "fraction": 0.5, "view_id": "v1"},
        ]
    elif rule_id == "dangling-view-ref":
        payload["layout"]["root"]["children"][0]["view_id"] = "ghost"
    elif rule_id == "unplaced-view":
        clone = json.loads(json.dumps(views[0]))
        clone["id"] = "v2"
        views.append(clone)
    elif rule_id == "empty-views":
        payload["views"] = []
    elif rule_id == "importance-positive":
        views[0]["importance"] = 0.0
    elif rule_id == "empty-charts":
        views[0]["charts"] = []
    elif rule_id == "unknown-encoded-field":
        views[0]["charts"][0]["encoding"]["y"] = "ghost_field"
    elif rule_id == "row-arity":
        views[0]["charts"][0]["dataset"]["rows"][0] = ["Alpha"]
    elif rule_id == "theme-color-range":
        payload["style"]["theme_color"] = [300, 0, 0]
    elif rule_id == "measure-finite":
        views[0]["charts"][0]["dataset"]["rows"][0][1] = "oops"
    elif rule_id == "temporal-iso":
        views[0]["charts"][0]["dataset"]["fields"][0]["kind"] = "temporal"
    elif rule_id == "reused-view-ref":
        clone = json.loads(json.dumps(views[0]))
        clone["id"] = "v2"
        views.append(clone)
        payload["layout"]["root"]["children"] = [
            {"kind": "Leaf", "fraction": 0.5, "view_id": "v1"},
            {"kind": "Leaf", "fraction": 0.5, "view_id": "v1"},
        ]
    else:
        raise AssertionError(f"no fixture for {rule_id}")
    return json.dumps(payload).encode()


ALL_RULE_IDS = [
    "duplicate-view-id", "dangling-view-ref", "unplaced-view", "empty-views",
    "importance-positive", "empty-charts", "unknown-encoded-field",
    "row-arity", "theme-color-range", "measure-finite", "temporal-iso",
    "reused-view-ref",
]


@pytest.mark.parametrize("rule_id", ALL_RULE_IDS)
def test_validation_rule_rejected(rule_id: str):
    with pytest.raises(SpecValidationError) as excinfo:
        parse_spec(_violation_doc(rule_id))
    assert excinfo.value.rule_id == rule_id


def test_serialize_is_canonical_and_idempotent():
    document = _doc()
    once = serialize_spec(parse_spec(document))
    twice = serialize_spec(parse_spec(once))
    assert once == twice
    assert once.endswith(b"\n")


def test_equal_specs_serialize_identically():
    spec_a = make_spec((make_view("v1"), make_view("v2")))
    spec_b = make_spec((make_view("v1"), make_view("v2")))
    assert serialize_spec(spec_a) == serialize_spec(spec_b)


def test_roundtrip_over_generated_specs(pipeline_config):
    """parse(serialize(spec)) == spec for pipeline-generated specs."""
    for i in range(10):
        prompt = GENERATION_PROMPTS[i % len(GENERATION_PROMPTS)]
        result = run_message(
            pipeline_config, prompt, current=None, seed_parts=(f"rt-{i}",)
        )
        data = serialize_spec(result.spec)
        reparsed = parse_spec(data)
        assert reparsed == result.spec
        assert serialize_spec(reparsed) == data


def test_golden_spec_bytes(pipeline_config, request):
    golden_path = request.path.parent / "fixtures" / "golden_spec.dash.json"
    result = run_message(
        pipeline_config,
        GENERATION_PROMPTS[0],
        current=None,
        seed_parts=("golden",),
    )
    assert serialize_spec(result.spec) == golden_path.read_bytes()


# --- patches -----------------------------------------------------------------


def test_patch_edit_title_locality():
    spec = make_spec((make_view("v1"), make_view("v2")))
    patched = apply_patch(
        spec, SpecPatch(PatchOp.EDIT_TITLE, target="v1", payload="Sales")
    )
    assert patched.views[0].title == "Sales"
    assert patched.views[1] == spec.views[1]
    assert patched.layout == spec.layout
    assert patched.style == spec.style


def test_patch_delete_only_view_rejected():
    spec = make_spec((make_view("v1"),))
    with pytest.raises(InvariantViolation):
        apply_patch(spec, SpecPatch(PatchOp.DELETE_VIEW, target="v1"))


def test_patch_delete_view_prunes_layout():
    spec = make_spec((make_view("v1"), make_view("v2"), make_view("v3")))
    patched = apply_patch(spec, SpecPatch(PatchOp.DELETE_VIEW, target="v2"))
    assert [v.id for v in patched.views] == ["v1", "v3"]
    assert sorted(patched.layout.leaf_view_ids()) == ["v1", "v3"]


def test_patch_replace_chart_type_keeps_dataset():
    spec = make_spec((make_view("v1"), make_view("v2")))
    patched = apply_patch(
        spec, SpecPatch(PatchOp.REPLACE_CHART_TYPE, target="v2", payload="Line")
    )
    chart = patched.views[1].charts[0]
    assert chart.chart_type is ChartType.LINE
    assert chart.dataset == spec.views[1].charts[0].dataset


def test_patch_add_view_extends_layout():
    spec = make_spec((make_view("v1"),))
    new_view = make_view("v9", task=AnalysisTask.HIGHLIGHT).to_payload()
    patched = apply_patch(spec, SpecPatch(PatchOp.ADD_VIEW, target="", payload=new_view))
    assert [v.id for v in patched.views] == ["v1", "v9"]
    assert sorted(patched.layout.leaf_view_ids()) == ["v1", "v9"]


def test_patch_unknown_target():
    spec = make_spec((make_view("v1"),))
    with pytest.raises(TargetNotFound):
        apply_patch(spec, SpecPatch(PatchOp.EDIT_TITLE, target="vX", payload="x"))


def test_patch_rename_dataset_field_updates_encodings():
    spec = make_spec((make_view("v1"), make_view("v2")))
    patched = apply_patch(
        spec,
        SpecPatch(
            PatchOp.EDIT_DATASET_FIELD,
            target="v1",
            payload={"field": "value", "name": "revenue"},
        ),
    )
    chart = patched.views[0].charts[0]
    assert "revenue" in chart.dataset.field_names()
    assert "value" not in chart.dataset.field_names()
    encoded = {fname for _, fname in chart.encoding}
    assert "revenue" in encoded and "value" not in encoded
    from dashgen.dsl import validate_spec

    validate_spec(patched)
