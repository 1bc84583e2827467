import json
import subprocess
import sys

import pytest

from matchlab import cli, config


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_jafari_golden(capsys):
    code, out = run(capsys, "acyclic", "jafari", "--p", "7")
    assert code == 0 and out == '{"set":[1,2,4],"acyclic_matching":null}'


def test_match_count_and_enumerate(capsys):
    assert run(capsys, "match", "count", "--group", "7", "--a", "1,2,4", "--b", "1,2,4") == (0, '{"count":"2"}')
    code, js = run_json(capsys, "match", "enumerate", "--group", "7", "--a", "1,2,4", "--b", "1,2,4", "--limit", "1")
    assert code == 0 and js == {"matchings": [[1, 2, 0]], "truncated": True}


def test_match_build_find_bounds(capsys):
    code, js = run_json(capsys, "match", "build", "--group", "7", "--a", "1,2,4", "--b", "1,2,4")
    assert code == 0 and js["rows"] == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    code, js = run_json(capsys, "match", "find", "--group", "6", "--a", "0,2,4", "--b", "1,2,3")
    assert code == 0 and js == {"matching": None}
    code, js = run_json(capsys, "match", "bounds", "--group", "7", "--a", "1,2,4", "--b", "1,2,4", "--exact")
    assert code == 0 and js["permanent"] == "2"


def test_product_group_input(capsys):
    code, js = run_json(capsys, "match", "count", "--group", "2,2", "--a", "[[0,1]]", "--b", "[[1,1]]")
    assert code == 0 and js == {"count": "1"}


def test_acyclic_check_exit_codes(capsys):
    code, js = run_json(capsys, "acyclic", "check", "--group", "7", "--a", "1,2,4", "--b", "1,2,4", "--f", "1,2,0")
    assert code == 1 and js["acyclic"] is False and js["witness"] == [2, 0, 1]
    code, js = run_json(capsys, "acyclic", "check", "--group", "11", "--a", "1,3", "--b", "1,3", "--f", "0,1")
    assert code == 0 and js["acyclic"] is True


def test_acyclic_misc_commands(capsys):
    code, js = run_json(capsys, "acyclic", "geometric", "--n", "20", "--k", "3")
    assert code == 0 and js["A"] == [0, 5, 10] and js["B"] == [1, 2, 4]
    code, js = run_json(capsys, "acyclic", "identity", "--p", "11", "--a", "1,3")
    assert code == 0 and js["verified"] is True
    code, js = run_json(capsys, "acyclic", "closed-form", "--group", "7", "--g1", "0", "--g2", "1", "--g3", "3")
    assert code == 0 and js["count"] == "1" and js["matchings"][0]["l"] == 3
    code, js = run_json(capsys, "acyclic", "closed-form", "--group", "5", "--g1", "0")
    assert code == 0 and js["matching"] == [3, 2, 1, 0]
    code, js = run_json(capsys, "acyclic", "weak-sweep", "--n", "6", "--k", "2")
    assert code == 0 and js["holds"] is True
    code, js = run_json(capsys, "acyclic", "sidon", "--group", "20", "--a", "0,5,10", "--b", "1,2,4")
    assert code == 0 and len(js["acyclic_matching"]) == 3


def test_weak_sweep_jsonl(capsys, tmp_path):
    path = tmp_path / "pairs.jsonl"
    code, js = run_json(capsys, "acyclic", "weak-sweep", "--n", "7", "--k", "2", "--jsonl", str(path))
    assert code == 0 and len(path.read_text().splitlines()) == js["pairs_checked"]


def test_permrank_commands(capsys):
    code, js = run_json(capsys, "permrank", "check", "--k", "3", "--p", "13")
    assert code == 1 and js["holds"] is False and js["orbit_rank_ok"] is True
    code, js = run_json(capsys, "permrank", "tcoeff", "--alpha", "1,2,0", "--beta", "1,2,0", "--p", "13")
    assert code == 0 and js == {"t_coefficient": "12", "rank_rational": 2, "orbits": 1, "rank_mod_p": 2}


def test_rectify_commands(capsys):
    code, js = run_json(capsys, "rectify", "embed", "--p", "101", "--x", "0,1,3,98")
    assert code == 0 and js["embedding"]["lambda"] == 1
    code, js = run_json(capsys, "rectify", "match", "--p", "101", "--a", "1,2", "--b", "3,4")
    assert code == 0 and js == {"lambda": 1, "matching": [0, 1]}


def test_gfield_commands(capsys):
    code, js = run_json(capsys, "gfield", "primitive", "--p", "2", "--n", "6")
    assert code == 0 and js["dim"] == 3 and js["T"]["T_indices"] == [3, 4, 5]
    code, js = run_json(capsys, "gfield", "tower", "--field", '{"p":2,"m":2,"n":2}')
    assert code == 0 and js["F"] == sorted(js["F"]) and len(js["F"]) == 4
    code, js = run_json(capsys, "gfield", "subfields", "--p", "2", "--n", "6")
    assert sorted(js["subfields"]) == ["1", "2", "3", "6"]
    code, js = run_json(capsys, "gfield", "T", "--n", "30")
    assert code == 0 and len(js["T"]) == 15
    code, js = run_json(capsys, "gfield", "normal-basis", "--p", "3", "--n", "4")
    assert code == 0 and len(js["orbit"]) == 4
    code, js = run_json(capsys, "gfield", "primitive", "--p", "2", "--n", "4",
                        "--subspace", '{"elements":[1]}')
    assert code == 1 and js["primitive"] is False
    code, js = run_json(capsys, "gfield", "complement", "--p", "2", "--n", "4",
                        "--family", '[{"elements":[1,6]}]')
    assert code == 0 and js["dim"] == 2


def test_linmatch_commands(capsys):
    tower = ["--p", "2", "--n", "4"]
    code, js = run_json(capsys, "linmatch", "criterion", *tower, "--a", '{"elements":[1,6]}',
                        "--b", '{"elements":[6,2]}', "--basis", "1,6")
    assert code == 1 and js["failing_J"] == [1, 2]
    code, js = run_json(capsys, "linmatch", "strong", *tower, "--a", '{"elements":[1,6]}',
                        "--b", '{"elements":[2,12]}')
    assert code == 0 and js["strong_matching_exists"] is True
    code, js = run_json(capsys, "linmatch", "prop38", *tower)
    assert code == 0 and js["equivalent"] and not js["scalar_multiple"]
    code, js = run_json(capsys, "linmatch", "property", "--p", "2", "--n", "5")
    assert code == 0 and js["has_property"] is True
    code, js = run_json(capsys, "linmatch", "property", *tower, "--method", "sweep")
    assert code == 1 and js["has_property"] is False and js["sweep"]["holds"] is True
    code, js = run_json(capsys, "linmatch", "property", "--p", "2", "--n", "6", "--method", "certificate")
    assert code == 0 and js["certificate"]["E_degree"] == 3


def test_linmatch_acyclic_and_equiv(capsys):
    tower = ["--p", "2", "--n", "4"]
    E = '{"elements":[1,6]}'
    code, js = run_json(capsys, "linmatch", "prop38", *tower)
    f_images = js["f"]["images"]
    g_images = js["g"]["images"]
    B = json.dumps({"elements": f_images})
    code, out = run_json(capsys, "linmatch", "acyclic", *tower, "--a", E, "--b", B,
                         "--f", ",".join(map(str, f_images)))
    assert code == 1 and out["acyclic"] is False and out["branch"] in ("multiplication", "neither")
    code, out = run_json(capsys, "linmatch", "equiv", *tower, "--a", E, "--b", B,
                         "--f", ",".join(map(str, f_images)), "--g", ",".join(map(str, g_images)),
                         "--phi", ",".join(map(str, js["phi"]["images"])))
    assert code == 0 and out == {"equivalent": True, "scalar_multiple": False}


@pytest.mark.parametrize("argv,etype", [
    (["match", "count", "--group", "7", "--a", "x", "--b", "1"], "InputError"),
    (["match", "count", "--group", "7", "--a", "1,2", "--b", "1"], "InputError"),
    (["acyclic", "jafari", "--p", "5"], "InputError"),
    (["acyclic", "geometric", "--n", "10", "--k", "3"], "InputError"),
    (["nonsense"], "InputError"),
    (["gfield", "tower", "--p", "2", "--n", "21"], "CapExceeded"),
    (["gfield", "tower", "--p", "2"], "InputError"),
    (["linmatch", "prop38", "--p", "2", "--n", "5"], "InputError"),
])
def test_input_errors_exit_2(capsys, argv, etype):
    code, js = run_json(capsys, *argv)
    assert code == 2 and js["error"]["type"] == etype


def test_claim_failed_exit_1(capsys):
    code, js = run_json(capsys, "linmatch", "property", "--p", "2", "--n", "4", "--method", "certificate")
    assert code == 1 and js["certificate"] is None and "certificate_error" in js


def test_cap_flags(capsys):
    code, js = run_json(capsys, "match", "count", "--group", "9", "--a", "0,1,2,3", "--b", "1,2,3,4",
                        "--cap-perm", "3")
    assert code == 2 and js["error"]["type"] == "CapExceeded"
    assert config.CAPS.perm == 24


def test_config_file(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "caps.json"
    cfg.write_text('{"field": 64}')
    monkeypatch.setenv("MATCHLAB_CONFIG", str(cfg))
    code, js = run_json(capsys, "gfield", "tower", "--p", "2", "--n", "7")
    assert code == 2 and js["error"]["type"] == "CapExceeded"
    assert config.CAPS.field == 2**20
    cfg.write_text('{"bogus": 1}')
    code, js = run_json(capsys, "acyclic", "jafari", "--p", "7")
    assert code == 2 and js["error"]["type"] == "KeyError"


def test_tsv_output(capsys):
    code, out = run(capsys, "acyclic", "jafari", "--p", "7", "--format", "tsv")
    assert code == 0 and out.splitlines() == ["set\t[1,2,4]", "acyclic_matching\tnull"]


def test_record_file(capsys, tmp_path):
    rec = tmp_path / "runs.jsonl"
    for _ in range(2):
        run(capsys, "acyclic", "jafari", "--p", "7", "--record", str(rec))
    run(capsys, "acyclic", "jafari", "--p", "5", "--record", str(rec))
    lines = [json.loads(x) for x in rec.read_text().splitlines()]
    assert len(lines) == 3
    assert lines[0]["input_digest"] == lines[1]["input_digest"] != lines[2]["input_digest"]
    assert lines[0]["exit_code"] == 0 and lines[0]["verified"] is True
    assert lines[2]["exit_code"] == 2 and lines[2]["verified"] is False
    assert set(lines[0]) >= {"command", "config", "output", "wall_time", "caps"}


def test_at_file_inputs(capsys, tmp_path):
    path = tmp_path / "a.json"
    path.write_text("[1, 2, 4]")
    code, js = run_json(capsys, "match", "count", "--group", "7", "--a", f"@{path}", "--b", "1,2,4")
    assert code == 0 and js == {"count": "2"}


def test_deterministic_output(capsys):
    argv = ["gfield", "primitive", "--p", "3", "--n", "4"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "matchlab.cli", "acyclic", "jafari", "--p", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout) == {"set": [1, 2, 4], "acyclic_matching": None}
