"""Record iteration over the three source formats."""

import pytest

from semflow.errors import IteratorNotFound, SourceSyntaxError
from semflow.lifting import iterate


def test_csv_one_data_row():
    records = iterate(b"id,flow\nA,10", "csv")
    assert len(records) == 1
    assert records[0].get("id") == "A"
    assert records[0].get("flow") == "10"


def test_csv_empty_value_reads_as_missing():
    records = iterate(b"id,flow\nA,", "csv")
    assert records[0].get("flow") is None
    assert records[0].get("nope") is None


def test_csv_ragged_row_is_rejected():
    with pytest.raises(SourceSyntaxError):
        iterate(b"id,flow\nA", "csv")


def test_csv_quoted_fields():
    records = iterate(b'id,name\nA,"x,y"\n', "csv")
    assert records[0].get("name") == "x,y"


def test_json_array_iterator():
    records = iterate(b'{"dets":[{"id":"A"},{"id":"B"}]}', "json", "dets[*]")
    assert [r.get("id") for r in records] == ["A", "B"]


def test_json_nested_references_and_scalars():
    data = b'{"rows":[{"pos":{"lat":48.1},"n":7,"ok":true,"tags":["x","y"]}]}'
    (record,) = iterate(data, "json", "rows[*]")
    assert record.get("pos.lat") == "48.1"
    assert record.get("n") == "7"
    assert record.get("ok") == "true"
    assert record.get("tags.1") == "y"
    assert record.get("tags") is None  # arrays are not scalars
    assert record.get("pos.lng") is None


def test_json_iterator_must_resolve_to_array():
    with pytest.raises(IteratorNotFound):
        iterate(b'{"dets": {}}', "json", "dets[*]")
    with pytest.raises(IteratorNotFound):
        iterate(b'{"dets": []}', "json", "ghost[*]")


def test_json_bad_source():
    with pytest.raises(SourceSyntaxError):
        iterate(b"{oops", "json", "x[*]")


def test_xml_iterator_and_references():
    # hand-walk of the tree: one <d> element under <r>; @id and <f> text
    records = iterate(b"<r><d id='A'><f>10</f></d></r>", "xml", "/r/d")
    assert len(records) == 1
    assert records[0].get("@id") == "A"
    assert records[0].get("f") == "10"
    assert records[0].get("f/@u") is None
    assert records[0].get("ghost") is None


def test_xml_root_mismatch():
    with pytest.raises(IteratorNotFound):
        iterate(b"<r/>", "xml", "/other/d")


def test_xml_bad_source():
    with pytest.raises(SourceSyntaxError):
        iterate(b"<r>", "xml", "/r/d")
