"""Serialization: point-set documents, run reports, witness files."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from sphereflow.formats import (
    DocumentError,
    PointSetDocument,
    RunReport,
    WitnessDocument,
    document_from_pointset,
    load_document,
    load_witness,
    pointset_from_document,
    save_document,
    save_witness,
)
from sphereflow.geometry import PointSet, SpherePoint


def test_pointset_document_round_trip_exact(icosi, tmp_path):
    doc = document_from_pointset(icosi, "icosi", {"note": "test"})
    assert doc.field_tag == "F1"
    assert doc.radius == Fraction(1)
    path = str(tmp_path / "icosi.json")
    save_document(doc, path)
    loaded = load_document(path)
    assert loaded == doc
    ps = pointset_from_document(loaded)
    assert ps.n_points == 30 and len(ps.triples) == 20
    for a, b in zip(ps.points, icosi.points):
        assert a.exact == b.exact
    assert ps.triples == icosi.triples


def test_pointset_document_round_trip_ce2(ce2, tmp_path):
    doc = document_from_pointset(ce2.final, "ce2", {})
    assert doc.field_tag == "F2"
    path = str(tmp_path / "ce2.json")
    save_document(doc, path)
    ps = pointset_from_document(load_document(path))
    assert ps.n_points == 36 and len(ps.triples) == 13
    for a, b in zip(ps.points, ce2.final.points):
        assert a.exact == b.exact


def test_pointset_document_round_trip_float(icosi):
    floats = PointSet(
        tuple(SpherePoint.from_floats(*p.floats) for p in icosi.points),
        icosi.triples,
    )
    doc = document_from_pointset(floats, "icosi", {})
    assert doc.field_tag == "float"
    assert "exact" not in doc.points[0]
    ps = pointset_from_document(doc)
    assert not ps.all_exact
    for a, b in zip(ps.points, floats.points):
        assert all(abs(x - y) < 1e-15 for x, y in zip(a.floats, b.floats))


def test_radius_two_export_scales_coordinates(icosi):
    doc = document_from_pointset(icosi, "icosi", {}, radius=Fraction(2))
    # exported floats sit on a radius-2 sphere
    for entry in doc.points:
        x, y, z = entry["floats"]
        assert abs(x * x + y * y + z * z - 4.0) < 1e-9
    # loading undoes the scaling
    ps = pointset_from_document(doc)
    for a, b in zip(ps.points, icosi.points):
        assert a.exact == b.exact


def test_rejects_nonpositive_radius(icosi):
    with pytest.raises(DocumentError, match="radius"):
        document_from_pointset(icosi, "icosi", {}, radius=Fraction(0))


def test_shadow_mismatch_detected(icosi):
    doc = document_from_pointset(icosi, "icosi", {})
    tampered_points = list(doc.points)
    entry = dict(tampered_points[0])
    entry["floats"] = [v + 0.001 for v in entry["floats"]]
    tampered_points[0] = entry
    tampered = PointSetDocument(
        field_tag=doc.field_tag,
        radius=doc.radius,
        points=tuple(tampered_points),
        triples=doc.triples,
        provenance=doc.provenance,
    )
    with pytest.raises(DocumentError, match="float shadow"):
        pointset_from_document(tampered)


def test_unknown_field_tag_rejected(icosi):
    doc = document_from_pointset(icosi, "icosi", {})
    bad = PointSetDocument(
        field_tag="F9",
        radius=doc.radius,
        points=doc.points,
        triples=doc.triples,
        provenance=doc.provenance,
    )
    with pytest.raises(DocumentError, match="unknown field tag"):
        pointset_from_document(bad)


def test_document_json_error_paths(icosi):
    with pytest.raises(DocumentError, match="not valid JSON"):
        PointSetDocument.from_json("{nope")
    doc = document_from_pointset(icosi, "icosi", {})
    payload = json.loads(doc.to_json())
    payload["schema_version"] = 99
    with pytest.raises(DocumentError, match="unsupported schema version"):
        PointSetDocument.from_json(json.dumps(payload))
    payload = json.loads(doc.to_json())
    del payload["field_tag"]
    with pytest.raises(DocumentError, match="missing document key"):
        PointSetDocument.from_json(json.dumps(payload))


def test_missing_exact_coordinates_rejected(icosi):
    doc = document_from_pointset(icosi, "icosi", {})
    stripped = list(doc.points)
    entry = dict(stripped[0])
    del entry["exact"]
    stripped[0] = entry
    bad = PointSetDocument(
        field_tag=doc.field_tag,
        radius=doc.radius,
        points=tuple(stripped),
        triples=doc.triples,
        provenance=doc.provenance,
    )
    with pytest.raises(DocumentError, match="lacks exact"):
        pointset_from_document(bad)


def test_provenance_recorded(ce1):
    doc = document_from_pointset(ce1, "ce1", {"alpha": 1})
    assert doc.provenance["construction"] == "ce1"
    assert doc.provenance["parameters"] == {"alpha": 1}


def test_witness_document_round_trip(tmp_path):
    w = WitnessDocument(k=4, values=(1, -2, 3), instance="icosi")
    path = str(tmp_path / "w.json")
    save_witness(w, path)
    loaded = load_witness(path)
    assert loaded.k == 4
    assert loaded.values == (1, -2, 3)
    assert loaded.instance == "icosi"
    # serialized form is stable and sorted
    assert w.to_json() == loaded.to_json()


def test_witness_document_malformed():
    with pytest.raises(DocumentError, match="not valid JSON"):
        WitnessDocument.from_json("][")
    with pytest.raises(DocumentError, match="JSON object"):
        WitnessDocument.from_json("[1, 2]")
    with pytest.raises(DocumentError, match="malformed witness"):
        WitnessDocument.from_json('{"k": 4}')
    with pytest.raises(DocumentError, match="malformed witness"):
        WitnessDocument.from_json('{"k": 4, "values": ["a"]}')


def test_run_report_serialization():
    rep = RunReport(
        instance="icosi",
        n_points=30,
        n_triples=20,
        n_reps=15,
        k=4,
        num_vars=120,
        num_clauses=9955,
        decision="SAT",
        witness=(1, 2, 3),
        engines=("sat", "backtrack"),
        oracle_agrees=True,
        wall_time_s=0.1234,
    )
    assert rep.verified
    payload = json.loads(rep.to_json())
    assert payload["decision"] == "SAT"
    assert payload["verified"] is True
    assert payload["counts"]["clauses"] == 9955
    assert payload["wall_time_s"] == 0.123
    lines = rep.summary_lines()
    assert any("decision:  SAT [sat, backtrack]" in line for line in lines)
    assert any("engines agree" in line for line in lines)


def test_run_report_disagreement_flagged():
    rep = RunReport(
        instance="x",
        n_points=1,
        n_triples=0,
        n_reps=1,
        k=1,
        num_vars=2,
        num_clauses=2,
        decision="UNSAT",
        witness=None,
        engines=("sat", "backtrack"),
        oracle_agrees=False,
        wall_time_s=0.0,
    )
    assert not rep.verified
    assert any("ENGINE DISAGREEMENT" in line for line in rep.summary_lines())


def test_mixed_field_export_rejected(icosi, ce2):
    mixed = PointSet((icosi.points[0], ce2.final.points[0]))
    with pytest.raises(DocumentError, match="mixed coordinate fields"):
        document_from_pointset(mixed, "bad", {})
