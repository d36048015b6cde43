import io
import json

import pytest

from wvgpower import jsonio, new_game
from wvgpower.errors import ValidationError
from wvgpower.reductions import CompareInstance, RRInstance, SubsetSumInstance


def test_game_round_trip():
    g = new_game((2, 1, 1), 3)
    doc = json.loads(jsonio.dumps(jsonio.game_to_json(g, coalition=[1, 2])))
    assert jsonio.game_from_json(doc) == g
    assert doc["coalition"] == [1, 2]


def test_decimal_string_integers():
    big = "123456789012345678901234567890"
    g = jsonio.game_from_json({"weights": [big, "3"], "quota": "5"})
    assert g.weights == (int(big), 3) and g.quota == 5


@pytest.mark.parametrize("doc", [
    {"weights": [1, 2]},
    {"quota": 1},
    {"weights": "1,2", "quota": 1},
    {"weights": [1.5], "quota": 1},
    {"weights": [True], "quota": 1},
    {"weights": ["x"], "quota": 1},
    [1, 2],
])
def test_bad_game_documents(doc):
    with pytest.raises(ValidationError):
        jsonio.game_from_json(doc)


def test_positions_are_zero_based():
    assert jsonio.to_positions({5, 6, 7}) == [4, 5, 6]
    assert jsonio.from_positions([4, 5, 6]) == [5, 6, 7]


def test_fractions():
    from fractions import Fraction
    assert jsonio.format_fraction(Fraction(2, 4)) == "1/2"
    assert jsonio.format_fraction(Fraction(0)) == "0/1"
    assert jsonio.parse_fraction("-3/9") == Fraction(-1, 3)


def test_instance_readers():
    cmp = jsonio.compare_from_json({"left": {"values": [1, 1], "target": 1}, "right": {"values": [1, 2], "target": 3}})
    assert cmp == CompareInstance(SubsetSumInstance((1, 1), 1), SubsetSumInstance((1, 2), 3))
    assert jsonio.rr_from_json({"values": [1, 2, 2, 3], "flipped": True}) == RRInstance((1, 2, 2, 3), True)
    with pytest.raises(ValidationError):
        jsonio.rr_from_json({"values": [2, 2, 4], "flipped": "yes"})
    r = jsonio.compare_r_from_json({"values": [8, 8], "q1": 8, "q2": "16"})
    assert r.q2 == 16
    x = jsonio.x3c_from_json({"base_size": 3, "family": [[3, 1, 2]]})
    assert x.family == ((1, 2, 3),)
    with pytest.raises(ValidationError):
        jsonio.x3c_from_json({"base_size": 3, "family": [1, 2, 3]})


def test_load(tmp_path, monkeypatch):
    p = tmp_path / "g.json"
    p.write_text('{"weights": [1], "quota": 1}')
    assert jsonio.load(str(p)) == {"weights": [1], "quota": 1}
    monkeypatch.setattr("sys.stdin", io.StringIO('{"a": 1}'))
    assert jsonio.load("-") == {"a": 1}
    p.write_text("{nope")
    with pytest.raises(ValidationError):
        jsonio.load(str(p))
    with pytest.raises(ValidationError):
        jsonio.load(str(tmp_path / "missing.json"))
