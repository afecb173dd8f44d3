import json

import pytest

from oqkit.cli import main


@pytest.fixture()
def run(capsys):
    def invoke(argv):
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_verma_factors_json(run):
    code, out, _ = run(["verma-factors", "--type", "A1", "--l", "3", "--weight", "4", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {"4": 1, "0": 1, "-6": 1, "-8": 1}


def test_table_and_json_carry_identical_data(run):
    code, js, _ = run(["verma-factors", "--type", "A1", "--l", "3", "--weight", "4", "--format", "json"])
    assert code == 0
    code, tab, _ = run(["verma-factors", "--type", "A1", "--l", "3", "--weight", "4"])
    assert code == 0
    parsed = {}
    for line in tab.strip().splitlines():
        k, v = line.split()
        parsed[k] = int(v)
    assert parsed == json.loads(js)


def test_kl_text(run):
    code, out, _ = run(["kl", "--type", "A3", "--y", "2", "--w", "2 1 3 2"])
    assert code == 0 and out.strip() == "1 + q"


def test_inverse_kl_affine(run):
    code, out, _ = run(["inverse-kl", "--type", "A1", "--z", "1", "--w", "1 0 1"])
    assert code == 0 and out.strip() == "1"


def test_decompose(run):
    code, out, _ = run(
        ["decompose", "--kind", "tilting", "--type", "A1", "--l", "3", "--weight", "4", "--format", "json"]
    )
    assert code == 0
    body = json.loads(out)
    assert body["classical_weight"] == [0] and body["finite_weight"] == [0]


def test_simple_char_schema(run):
    code, out, _ = run(
        ["simple-char", "--type", "A1", "--l", "3", "--weight", "-2", "--depth", "4", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["window"] == {"tops": [[-2]], "depth": 4}
    assert {tuple(v["wt"]): v["c"] for v in doc["values"]} == {
        (-2,): 1,
        (-4,): 1,
        (-8,): 1,
        (-10,): 1,
    }


def test_weight_ordering_deterministic(run):
    code, out, _ = run(["tilting-factors", "--type", "A1", "--l", "3", "--weight", "4", "--format", "json"])
    assert code == 0
    assert list(json.loads(out)) == ["4", "0", "-2", "-6"]


def test_usage_error_exits_1(run):
    code, _, err = run(["no-such-command"])
    assert code == 1
    code, _, err = run(["verma-factors", "--type", "A1", "--l", "3"])
    assert code == 1
    code, _, err = run(["verma-factors", "--type", "A1", "--l", "3", "--weight", "x"])
    assert code == 1


def test_invalid_input_exits_1(run):
    code, _, err = run(["verma-factors", "--type", "Q9", "--l", "3", "--weight", "0"])
    assert code == 1 and "series" in err


def test_rejected_range_exits_2(run):
    code, _, err = run(
        ["tilting-factors", "--type", "A1", "--l", "3", "--weight", "2", "--mode", "kl"]
    )
    assert code == 2 and "rejected" in err


def test_predicates_and_generic(run):
    code, out, _ = run(["predicates", "--type", "A1", "--l", "3", "--weight", "-1", "--format", "json"])
    assert code == 0 and json.loads(out)["special"] is True
    code, out, _ = run(["generic-mult", "--type", "A1", "--weight", "0", "--mu", "-2"])
    assert code == 0 and out.strip() == "1"


def test_cache_commands(run, tmp_path):
    path = tmp_path / "a2.jsonl"
    code, out, _ = run(["cache", "export", "--type", "A2", "--path", str(path)])
    assert code == 0 and path.exists()
    code, out, _ = run(["cache", "stats", "--path", str(path), "--format", "json"])
    assert code == 0
    info = json.loads(out)
    assert info["header"]["series"] == "A" and info["entries"] > 0
    code, _, err = run(["cache", "stats", "--path", str(tmp_path / "none.jsonl")])
    assert code == 1


def test_cache_env_var_roundtrip(run, tmp_path, monkeypatch):
    monkeypatch.setenv("OQKIT_CACHE", str(tmp_path))
    code, out, _ = run(["kl", "--type", "A2", "--y", "1", "--w", "1 2 1"])
    assert code == 0
    stored = tmp_path / "A2-finite.jsonl"
    assert stored.exists()
    code, out, _ = run(["kl", "--type", "A2", "--y", "1", "--w", "1 2 1"])
    assert code == 0 and out.strip() == "1"
