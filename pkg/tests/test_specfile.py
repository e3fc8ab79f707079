import json

import pytest

from rankone.construction import make_named
from rankone.rewrite import merge_stage
from rankone.specfile import SpecFormatError, load_spec, spec_from_dict, spec_to_dict


def test_family_documents():
    assert spec_from_dict({"family": "the_ts", "gamma": 2, "L": 2}).word(2) == "0101001010"
    ts = spec_from_dict({"family": "the_ts", "gamma": [2, 3], "L": 2, "tail": "repeat_cycle"})
    assert ts.row(3) == ts.row(1) and ts.row(2) != ts.row(1)
    assert spec_from_dict({"family": "the_ts", "gamma": "n+1", "L": 2}).row(2).s.count(1) == 6
    assert spec_from_dict({"family": "chacon"}).word(3) == "0010001010010"
    ex = spec_from_dict({"family": "explicit", "stages": [{"s": [0, 2]}], "spacer_bound": 2})
    assert ex.word(2) == "0011"


def test_round_trip(tmp_path):
    doc = {"family": "explicit", "stages": [{"s": [0, 1]}, {"s": [2, 0, 0]}], "tail": "repeat_cycle"}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(doc))
    spec = load_spec(path)
    assert spec_to_dict(spec) == doc
    assert spec_from_dict(spec_to_dict(spec)).word(5) == spec.word(5)


def test_derived_spec_needs_horizon():
    merged = merge_stage(make_named("chacon"), 1)
    with pytest.raises(ValueError):
        spec_to_dict(merged)
    doc = spec_to_dict(merged, 3)
    assert spec_from_dict(doc).word(3) == merged.word(3)


@pytest.mark.parametrize("doc", [
    {"family": "sturmian"},
    {"family": "the_ts", "gamma": 2},
    {"family": "explicit", "stages": []},
    {"family": "chacon", "tail": "forever"},
    [1, 2],
])
def test_rejects_malformed(doc):
    with pytest.raises(SpecFormatError):
        spec_from_dict(doc)
