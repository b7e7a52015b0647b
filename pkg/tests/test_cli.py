import json

import pytest

from pyquasiiso import LoadedSpec, dump_spec, parse_spec
from pyquasiiso.cli import Command, main, parse_args, run
from pyquasiiso.common import E1, E3


@pytest.fixture
def e1_path(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(dump_spec(LoadedSpec(E1.measure, None, E1.k, E1.m)), encoding="utf-8")
    return str(path)


@pytest.fixture
def e3_path(tmp_path):
    path = tmp_path / "e3.json"
    path.write_text(dump_spec(LoadedSpec(E3.measure, E3.weight, E3.k, E3.m)), encoding="utf-8")
    return str(path)


def test_parse_args():
    cmd = parse_args(["classify", "--spec", "x.json", "--k", "2", "--strict", "-vv"])
    assert cmd == Command("classify", spec_path="x.json", k=2, strict=True, verbosity=2)
    with pytest.raises(SystemExit) as error:
        parse_args(["classify"])
    assert error.value.code == 2


def test_classify(e1_path, capsys):
    assert main(["classify", "--spec", e1_path, "--strict"]) == 0
    out = capsys.readouterr().out
    assert "verdict: true" in out
    assert "strict: true" in out


def test_classify_structured(e1_path, capsys):
    assert main(["classify", "--spec", e1_path, "--m", "1", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] is False
    assert data["m"] == 1


def test_classify_weighted(e3_path, capsys):
    assert main(["classify", "--spec", e3_path, "--weighted", "--check-oracle"]) == 0
    out = capsys.readouterr().out
    assert "operator: W" in out
    assert "verdict: false" in out


def test_missing_query_is_a_parse_error(tmp_path):
    path = tmp_path / "bare.json"
    path.write_text(dump_spec(LoadedSpec(E1.measure)), encoding="utf-8")
    assert run(Command("classify", spec_path=str(path))) == 2
    assert run(Command("classify", spec_path=str(path), k=1, m=2)) == 0


def test_weighted_needs_a_weight(e1_path):
    assert run(Command("classify", spec_path=e1_path, weighted=True)) == 2
    assert run(Command("compute", spec_path=e1_path, vertex="c:1", p=1, quantity="F")) == 2


def test_compute(e1_path, e3_path, capsys):
    assert main(["compute", "--spec", e1_path, "--vertex", "c:1", "--p", "2"]) == 0
    assert capsys.readouterr().out.strip() == "h_2(c:1) = 9/5"
    assert main(["compute", "--spec", e3_path, "--vertex", "c:1", "--p", "1", "--quantity", "wgram"]) == 0
    assert capsys.readouterr().out.strip() == "wgram_1(c:1) = 40/31"
    assert run(Command("compute", spec_path=e1_path, vertex="c:9", p=1)) == 2


def test_oracle(e1_path, capsys):
    assert main(["oracle", "--spec", e1_path, "--depth", "6", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["agrees"] is True
    assert data["depth"] == 6
    assert run(Command("oracle", spec_path=e1_path, depth=3)) == 2


def test_validate(tmp_path, e1_path, capsys):
    assert main(["validate", "--spec", e1_path]) == 0
    assert "sup h_1: 3" in capsys.readouterr().out
    text = dump_spec(LoadedSpec(E1.measure)).replace('"5/3"', '"0"')
    path = tmp_path / "bad.json"
    path.write_text(text, encoding="utf-8")
    assert main(["validate", "--spec", str(path)]) == 1
    assert run(Command("classify", spec_path=str(path), k=1, m=2)) == 1


def test_unparseable_spec(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"kappa": 1, "eta": [1], "extra": true}', encoding="utf-8")
    assert run(Command("validate", spec_path=str(path))) == 2


def test_example(capsys):
    assert main(["example", "e1"]) == 0
    out = capsys.readouterr().out
    assert "claimed verdict: true" in out
    assert "computed verdict: true" in out
    assert "discrepancy" not in out
    assert "agrees: true" in out


def test_example_with_discrepancy(capsys):
    assert main(["example", "e3", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["claimed_verdict"] is True
    assert data["computed_verdict"] is False
    assert data["matches_claim"] is False
    assert "discrepancy" in data
    assert data["report"]["oracle_checked"] is True
    assert data["oracle"]["agrees"] is True
    rows = {row["vertex"]: row for row in data["oracle"]["rows"]}
    for vertex, defect in (("c:1", "-21/31"), ("c:2", "15/44"), ("c:3", "-1/32")):
        assert rows[vertex]["closed_form"] == rows[vertex]["oracle"] == defect


def test_example_oracle_can_be_skipped(capsys):
    assert main(["example", "e2", "--no-oracle"]) == 0
    out = capsys.readouterr().out
    assert "computed verdict: true" in out
    assert "window depth" not in out


def test_example_dump(capsys):
    assert main(["example", "e1", "--dump"]) == 0
    loaded = parse_spec(capsys.readouterr().out)
    assert loaded.measure == E1.measure
    assert (loaded.k, loaded.m) == (E1.k, E1.m)
