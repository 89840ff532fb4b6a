import json

import pytest
from click.testing import CliRunner

from fuzzylink.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_code_info(runner):
    res = runner.invoke(main, ["code", "info", "bch:31:5"])
    assert res.exit_code == 0
    assert "n=31 k=11 d=11" in res.output
    assert "0.196808" in res.output


def test_code_info_bad_descriptor(runner):
    res = runner.invoke(main, ["code", "info", "bch:32:5"])
    assert res.exit_code == 2


def test_enroll_verify_attack_flow(runner, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    res = runner.invoke(main, ["enroll", "--code", "bch:31:5", "--w", "random",
                               "--seed", "5", "--out", str(a), "--print-w"])
    assert res.exit_code == 0
    w_hex = res.output.strip().splitlines()[-1].split(" = ")[1]
    res = runner.invoke(main, ["enroll", "--code", "bch:31:5", "--w", w_hex,
                               "--seed", "6", "--out", str(b)])
    assert res.exit_code == 0

    res = runner.invoke(main, ["verify", str(a), "--w", w_hex])
    assert res.exit_code == 0
    assert "ACCEPT" in res.output

    res = runner.invoke(main, ["verify", str(a), "--w", "00000000"])
    assert res.exit_code == 1
    assert "REJECT" in res.output

    res = runner.invoke(main, ["attack", "pair", str(a), str(b), "--b", "0"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["verdict"] == "related"
    assert out["all_solutions"] >= 2


def test_attack_pair_non_related(runner, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    runner.invoke(main, ["enroll", "--code", "bch:63:7", "--w", "random",
                         "--seed", "1", "--out", str(a)])
    runner.invoke(main, ["enroll", "--code", "bch:63:7", "--w", "random",
                         "--seed", "2", "--out", str(b)])
    res = runner.invoke(main, ["attack", "pair", str(a), str(b), "--b", "1"])
    assert res.exit_code == 1
    assert json.loads(res.output)["verdict"] == "non-related"


def test_attack_pair_hash_requires_digests(runner, tmp_path):
    a = tmp_path / "a.json"
    runner.invoke(main, ["enroll", "--code", "bch:31:5", "--w", "random",
                         "--seed", "1", "--out", str(a)])
    res = runner.invoke(main, ["attack", "pair", str(a), str(a), "--b", "0", "--hash"])
    assert res.exit_code == 2


def test_attack_pair_bad_record(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    res = runner.invoke(main, ["attack", "pair", str(bad), str(bad), "--b", "0"])
    assert res.exit_code == 2


def test_experiment_table1_json(runner, tmp_path):
    out = tmp_path / "rep.json"
    res = runner.invoke(main, ["experiment", "table1", "--code", "bch:31:5",
                               "--b", "0,1", "--trials", "25", "--mode", "related",
                               "--seed", "3", "--format", "json", "--out", str(out)])
    assert res.exit_code == 0
    rep = json.loads(out.read_bytes())
    assert [c["b"] for c in rep["cells"]] == [0, 1]
    assert all(c["linkage_rate"] == 1.0 for c in rep["cells"])


def test_experiment_determinism_across_threads(runner, tmp_path):
    outs = []
    for threads in ("1", "4"):
        out = tmp_path / f"rep{threads}.json"
        res = runner.invoke(main, ["experiment", "table1", "--code", "bch:31:5",
                                   "--b", "0,1", "--trials", "30", "--seed", "11",
                                   "--threads", threads, "--no-timing",
                                   "--out", str(out)])
        assert res.exit_code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_experiment_guardrail_exit(runner):
    res = runner.invoke(main, ["experiment", "table1", "--code", "bch:255:26",
                               "--b", "5", "--trials", "1"])
    assert res.exit_code == 2
    assert "force" in res.output


def test_analyze_density(runner):
    res = runner.invoke(main, ["analyze", "density", "--code", "bch:31:5"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["density"]["exact"] == "6449/32768"
    assert out["radius"] == 5


def test_analyze_union_bound(runner):
    res = runner.invoke(main, ["analyze", "union-bound", "--q", "2", "--n", "31",
                               "--rank", "21", "--b", "1"])
    assert res.exit_code == 0
    assert json.loads(res.output)["union_bound"]["exact"] == "1/32"


def test_analyze_linear_prob(runner):
    res = runner.invoke(main, ["analyze", "linear-prob", "--q", "32"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert abs(out["affine_probability"]["log2"] + 108) < 0.5
    res = runner.invoke(main, ["analyze", "linear-prob", "--q", "2"])
    assert res.exit_code == 2


def test_verify_theorem(runner):
    res = runner.invoke(main, ["verify-theorem", "--n", "2"])
    assert res.exit_code == 0
    assert "8 distance-preserving bijections" in res.output
    res = runner.invoke(main, ["verify-theorem", "--n", "9"])
    assert res.exit_code == 2


def test_demo_appendix(runner):
    res = runner.invoke(main, ["demo", "appendix", "--seed", "21"])
    assert res.exit_code == 0
    assert res.output.strip() in ("REVERTED", "RELATED")
    res = runner.invoke(main, ["demo", "appendix", "--seed", "21", "--non-related"])
    assert res.output.strip() == "NON-RELATED"
    res = runner.invoke(main, ["demo", "appendix", "--seed", "21", "--hash"])
    assert res.output.strip() == "REVERTED"


def test_usage_error_exit_code(runner):
    res = runner.invoke(main, ["attack", "pair", "--b", "0"])
    assert res.exit_code == 2
