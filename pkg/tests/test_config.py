import json
import random

import pytest
from hypothesis import given

from realcremona.config import ConfigFileError, load_spec, schema, spec_from_dict, spec_to_dict
from realcremona.conjugacy import random_config7, random_config8

from hypothesis import strategies as st


def test_schema_is_bundled():
    assert schema()["properties"]["family"]["maximum"] == 8


@pytest.mark.parametrize("data", [
    {"family": 4},
    {"family": 6, "n": 3},
    {"family": 7, "pairs": [{"re": "1", "im": "1"}, {"re": "2", "im": "1/2"}]},
    {"family": 8, "n": 2, "points": {"real": ["0", "inf"], "pairs": [{"re": "2", "im": "1"}]}},
])
def test_roundtrip(data):
    assert spec_to_dict(spec_from_dict(data)) == spec_to_dict(spec_from_dict(spec_to_dict(spec_from_dict(data))))
    assert spec_from_dict(spec_to_dict(spec_from_dict(data))) == spec_from_dict(data)


@pytest.mark.parametrize("data", [
    {},
    {"family": 9},
    {"family": 6},
    {"family": 6, "n": 1},
    {"family": 7},
    {"family": 7, "pairs": [{"re": "1", "im": "0"}]},
    {"family": 7, "pairs": [{"re": "1", "im": "x"}]},
    {"family": 8, "points": {"real": ["0", "1", "2"]}},
    {"family": 8, "n": 3, "points": {"real": ["0", "1", "2", "3"]}},
])
def test_invalid_configs(data):
    with pytest.raises(ConfigFileError):
        spec_from_dict(data)


def test_load_spec(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"family": 7, "pairs": [{"re": "1", "im": "1"}]}))
    assert load_spec(p).config7.pairs[0].re == 1
    p.write_text("{not json")
    with pytest.raises(ConfigFileError):
        load_spec(p)
    with pytest.raises(ConfigFileError):
        load_spec(tmp_path / "missing.json")


@given(st.integers(0, 10**9))
def test_random_configs_roundtrip(seed):
    from realcremona.families import FamilySpec

    rng = random.Random(seed)
    for spec in (FamilySpec(7, config7=random_config7(rng)), FamilySpec(8, config8=random_config8(rng))):
        assert spec_from_dict(json.loads(json.dumps(spec_to_dict(spec)))) == spec
