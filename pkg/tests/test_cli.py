import json
import subprocess
import sys

import numpy as np
from homconv.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, dumps, main
from homconv.sphere import random_bandlimited, sphere_grid, sphere_to_json, zonal_function
from homconv.suites import SUITES, check_names


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def test_verify_all_passes_on_normal_pair(capsys):
    code, out, _ = run(capsys, "verify", "cyclic:4", "--subgroup", "0,2", "--suite", "all")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["status"] == "pass"
    names = [c["name"] for c in rep["checks"]]
    assert names == [n for s in SUITES for n in check_names(s)]
    assert len(names) == len(set(names))
    assert {c["status"] for c in rep["checks"]} == {"pass"}
    assert rep["pair"]["cosets"]["left"]["representatives"] == ["0", "1"]


def test_verify_probe_reports_witness(capsys):
    code, out, _ = run(capsys, "verify", "symmetric:3", "--subgroup", "e,(12)", "--suite", "probe")
    assert code == EXIT_OK
    probe = json.loads(out)["checks"][0]
    assert probe["details"]["normal"] is False
    assert probe["details"]["witness"]["domain"] == "group"


def test_verify_rejects_non_subgroup(capsys):
    code, _, err = run(capsys, "verify", "cyclic:4", "--subgroup", "0,1")
    assert code == EXIT_USAGE
    assert "not a subgroup" in err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "cyclic:4")[0] == EXIT_USAGE
    assert run(capsys, "verify", "bogus:4", "--subgroup", "0")[0] == EXIT_USAGE
    assert run(capsys, "verify", "cyclic:4", "--subgroup", "0", "--suite", "nope")[0] == EXIT_USAGE


def test_report_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "dihedral:4", "--subgroup", "0,4", "--out", str(a))
    run(capsys, "verify", "dihedral:4", "--subgroup", "0,4", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["seed"] == 0 and len(rep["input_digest"]) == 64
    assert "timing_seconds" not in rep


def test_seed_changes_inputs(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "symmetric:3", "--subgroup", "e,(12)", "--suite", "algebra", "--out", str(a))
    run(capsys, "verify", "symmetric:3", "--subgroup", "e,(12)", "--suite", "algebra", "--seed", "3", "--out", str(b))
    assert json.loads(a.read_text())["input_digest"] != json.loads(b.read_text())["input_digest"]


def test_convolve_delta_square(capsys, tmp_path):
    d = write(tmp_path / "d.json", {"domain": "quotient", "side": "left", "values": [["1", "0"], ["0", "0"]]})
    out = tmp_path / "out.json"
    code, text, _ = run(capsys, "convolve", "cyclic:4", "--subgroup", "0,2", d, d, "--out", str(out))
    assert code == EXIT_OK
    assert json.loads(out.read_text())["values"] == [["2", "0"], ["0", "0"]]
    assert json.loads(text)["norms"] == {"phi": "2", "psi": "2", "product": "4"}


def test_convolve_with_right_identity(capsys, tmp_path):
    phi = write(tmp_path / "p.json", {"domain": "quotient", "values": [["1/3", "2"], ["-5", "1/7"], ["0", "1"]]})
    e = write(tmp_path / "e.json", {"domain": "quotient", "values": [["1/2", "0"], ["0", "0"], ["0", "0"]]})
    code, text, _ = run(capsys, "convolve", "symmetric:3", "--subgroup", "e,(12)", phi, e)
    assert code == EXIT_OK
    assert json.loads(text)["result"]["values"] == [["1/3", "2"], ["-5", "1/7"], ["0", "1"]]


def test_convolve_bad_inputs(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    d = write(tmp_path / "d.json", {"domain": "quotient", "values": [["1", "0"], ["0", "0"]]})
    assert run(capsys, "convolve", "cyclic:4", "--subgroup", "0,2", d, str(empty))[0] == EXIT_USAGE
    short = write(tmp_path / "s.json", {"domain": "quotient", "values": [["1", "0"]]})
    assert run(capsys, "convolve", "cyclic:4", "--subgroup", "0,2", d, short)[0] == EXIT_USAGE
    bad = write(tmp_path / "b.json", {"domain": "quotient", "values": [["1/x", "0"], ["0", "0"]]})
    assert run(capsys, "convolve", "cyclic:4", "--subgroup", "0,2", d, bad)[0] == EXIT_USAGE


def test_involve(capsys, tmp_path):
    d = write(tmp_path / "d.json", {"domain": "quotient", "side": "left", "values": [["1", "0"], ["0", "0"], ["0", "0"]]})
    code, text, _ = run(capsys, "involve", "symmetric:3", "--subgroup", "e,(12)", d, "--approach", "II")
    assert code == EXIT_OK
    out = json.loads(text)
    assert out["side"] == "right" and out["values"][0] == ["1", "0"]
    code, text, _ = run(capsys, "involve", "symmetric:3", "--subgroup", "e,(12)", d)
    assert code == EXIT_OK and json.loads(text)["values"][0] == ["1", "0"]
    off = write(tmp_path / "o.json", {"domain": "quotient", "values": [["0", "0"], ["1", "0"], ["0", "0"]]})
    assert run(capsys, "involve", "symmetric:3", "--subgroup", "e,(12)", off)[0] == EXIT_USAGE
    g = write(tmp_path / "g.json", {"domain": "group", "values": [["0", "1"], ["1", "0"], ["0", "0"], ["0", "0"]]})
    code, text, _ = run(capsys, "involve", "cyclic:4", "--subgroup", "0", g)
    assert json.loads(text)["values"][0] == ["0", "-1"]
    assert json.loads(text)["values"][3] == ["1", "0"]


def test_probe_all_subgroups(capsys):
    code, text, _ = run(capsys, "probe", "symmetric:3")
    assert code == EXIT_OK
    res = json.loads(text)["results"]
    assert len(res) == 6
    for r in res:
        assert r["normal"] == r["kernel_star_stable"]
        assert ("witness" in r) == (not r["normal"])
        assert set(r["dims"]) >= {"quotient", "a1", "double_cosets"}


def test_group_command(capsys, tmp_path):
    code, text, _ = run(capsys, "group", "quaternion:8")
    info = json.loads(text)
    assert info["group"]["order"] == 8 and not info["abelian"]
    assert all(s["normal"] for s in info["subgroups"])
    f = write(tmp_path / "g.json", {"order": 2, "table": [[0, 1], [1, 0]]})
    assert run(capsys, "group", f)[0] == EXIT_OK


def test_sphere_l_guard(capsys):
    assert run(capsys, "sphere", "verify", "--L", "0")[0] == EXIT_USAGE
    assert run(capsys, "sphere", "verify", "--L", "17")[0] == EXIT_USAGE


def test_sphere_verify_small(capsys):
    code, text, _ = run(capsys, "sphere", "verify", "--L", "3")
    assert code == EXIT_OK
    rep = json.loads(text)
    assert all(c["details"]["deviation"] <= c["details"]["tolerance"] for c in rep["checks"])


def test_sphere_convolve_files(capsys, tmp_path):
    g = sphere_grid(3)
    f = write(tmp_path / "f.json", sphere_to_json(random_bandlimited(g, np.random.default_rng(0))))
    z = write(tmp_path / "z.json", sphere_to_json(zonal_function(g, [1.0, 0.5])))
    out = tmp_path / "o.json"
    assert run(capsys, "sphere", "convolve", f, z, "--out", str(out))[0] == EXIT_OK
    res = json.loads(out.read_text())
    assert res["L"] == 3 and len(res["values"]) == 64


def test_canonical_json_sorts_keys():
    assert dumps({"b": 1, "a": [1.5]}) == '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n'


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homconv.cli", "verify", "cyclic:2", "--subgroup", "0",
                           "--suite", "weil"], capture_output=True, text=True)
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["status"] == "pass"


def test_failing_check_exits_one(capsys, monkeypatch):
    import homconv.suites as suites

    def broken(ctx):
        raise suites._Failed("forced", {"f0": None})

    monkeypatch.setitem(suites._TABLE, "weil", [("weil_formula", "Weil formula", broken)])
    code, text, _ = run(capsys, "verify", "cyclic:2", "--subgroup", "0", "--suite", "weil")
    assert code == EXIT_FAIL
    rep = json.loads(text)
    assert rep["status"] == "fail" and rep["checks"][0]["details"]["witness"] == {"f0": None}
