import json
import subprocess
import sys

import pytest

from toric_ehrhart import cli
from toric_ehrhart.corpus import shipped_corpus_dir

CORPUS = shipped_corpus_dir()


def write(tmp_path, name, obj):
    path = tmp_path / f"{name}.json"
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


@pytest.fixture
def std2(tmp_path):
    return write(tmp_path, "std2", {"name": "std2", "vertices": [[0, 0], [1, 0], [0, 1]]})


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ehrhart_command(std2, tmp_path, capsys):
    out = tmp_path / "res.json"
    code, _, _ = run(["ehrhart", std2, "--out", str(out)], capsys)
    assert code == 0
    res = json.loads(out.read_text())
    assert res["coeffs"] == ["1", "3/2", "1/2"]
    assert res["checks"]["oracle"] == {"1": 3, "2": 6, "3": 10}
    assert res["checks"]["oracle_match"] and res["checks"]["face_independence"]
    assert res["version"].startswith("toric-ehrhart")
    code, text, _ = run(["ehrhart", str(CORPUS / "segment_5.json")], capsys)
    assert json.loads(text)["coeffs"] == ["1", "5"]
    code, text, _ = run(["ehrhart", str(CORPUS / "segment_5.json"), "--profile", "printed"], capsys)
    assert json.loads(text)["coeffs"] == ["1/2", "10"]
    code, text, _ = run(["ehrhart", str(CORPUS / "segment_5.json"), "--profile", "u_scale=1/2,b_power=none"], capsys)
    assert json.loads(text)["coeffs"] == ["1", "5"]


def test_output_is_reproducible(std2, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["ehrhart", std2, "--out", str(a)], capsys)
    run(["ehrhart", std2, "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_input_errors(tmp_path, capsys):
    assert run(["ehrhart", write(tmp_path, "bad", "{not json")], capsys)[0] == 2
    assert run(["ehrhart", str(tmp_path / "missing.json")], capsys)[0] == 2
    flat = write(tmp_path, "flat", {"vertices": [[0, 0], [1, 1], [2, 2]]})
    assert run(["ehrhart", flat], capsys)[0] == 2
    assert run(["ehrhart", str(CORPUS / "segment_5.json"), "--profile", "colour=red"], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2


def test_lattice_field(tmp_path, capsys):
    # vertices given in ambient coordinates of the lattice spanned by (2,0), (0,3)
    path = write(tmp_path, "lat", {"vertices": [[0, 0], [2, 0], [0, 3]], "lattice": [[2, 0], [0, 3]]})
    code, text, _ = run(["ehrhart", path], capsys)
    assert code == 0 and json.loads(text)["coeffs"] == ["1", "3/2", "1/2"]
    bad = write(tmp_path, "lat2", {"vertices": [[0, 0], [1, 0], [0, 3]], "lattice": [[2, 0], [0, 3]]})
    assert run(["ehrhart", bad], capsys)[0] == 2


def test_count_command(tmp_path, capsys):
    std3 = write(tmp_path, "std3", {"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, text, _ = run(["count", std3, "--dilation", "2", "--mode", "both"], capsys)
    res = json.loads(text)
    assert code == 0 and res["formula"] == res["oracle"] == "10"
    code, text, _ = run(["count", str(CORPUS / "reeve_5.json"), "--dilation", "1", "--mode", "oracle"], capsys)
    assert json.loads(text)["oracle"] == "4"
    code, _, err = run(["count", std3, "--dilation", "0"], capsys)
    assert code == 2 and "DilationPositive" in err
    code, _, _ = run(["count", std3, "--dilation", "3", "--profile", "printed"], capsys)
    assert code == 1


def test_cone_info_command(tmp_path, capsys):
    tri = write(tmp_path, "tri", {"vertices": [[0, 0], [1, 0], [1, 2]]})
    code, text, _ = run(["cone-info", tri, "--face", "0"], capsys)
    res = json.loads(text)
    assert code == 0 and res["multiplicity"] == 2
    assert [e["gamma"] for e in res["elements"] if e["interior"]] == [["1/2", "1/2"]]
    code, text, _ = run(["cone-info", tri, "--face", "0,1,2"], capsys)
    res = json.loads(text)
    assert res["generators"] == [] and res["multiplicity"] == 1
    std = write(tmp_path, "std", {"vertices": [[0, 0], [1, 0], [0, 1]]})
    code, text, _ = run(["cone-info", std, "--face", "0"], capsys)
    assert not any(e["interior"] for e in json.loads(text)["elements"])
    assert run(["cone-info", tri, "--face", "5"], capsys)[0] == 2
    assert run(["cone-info", tri, "--face", "x"], capsys)[0] == 2


def test_calibrate_command(tmp_path, capsys):
    out = tmp_path / "profile.json"
    code, _, err = run(["calibrate", "--corpus", str(CORPUS), "--out", str(out)], capsys)
    assert code == 0
    shipped = CORPUS.parent / "calibrated_profile.json"
    assert out.read_bytes() == shipped.read_bytes(), "recalibration changed the shipped profile"
    assert "lattice/1/denom/ascending/face_pairs" in err and "FAIL 1/2 2" in err


def test_calibrate_failures(tmp_path, capsys):
    segs = tmp_path / "segs"
    segs.mkdir()
    for name in ("segment_1", "segment_3", "segment_5"):
        (segs / f"{name}.json").write_text((CORPUS / f"{name}.json").read_text())
    report = tmp_path / "report.json"
    code, _, err = run(["calibrate", "--corpus", str(segs), "--report", str(report)], capsys)
    assert code == 1 and "AmbiguousProfile" in err
    assert len(json.loads(report.read_text())["matching"]) > 1
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(["calibrate", "--corpus", str(empty)], capsys)[0] == 2


def test_verify_command(tmp_path, capsys):
    code, text, _ = run(["verify", "--max-dilation", "4"], capsys)
    res = json.loads(text)
    assert code == 0 and res["ok"] and len(res["results"]) == 14
    code, text, _ = run(["verify", "--profile", "printed", "--max-dilation", "2"], capsys)
    assert code == 1 and not json.loads(text)["results"][0]["formula_vs_oracle"]["ok"]
    std4 = write(tmp_path, "std4", {"vertices": [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 2]]})
    code, text, _ = run(["verify", std4, "--max-dilation", "2"], capsys)
    assert code == 0


def test_verify_threads_env(monkeypatch, capsys):
    code, serial, _ = run(["verify", "--max-dilation", "2"], capsys)
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    code2, threaded, _ = run(["verify", "--max-dilation", "2"], capsys)
    assert code == code2 == 0 and serial == threaded


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "toric_ehrhart.cli", "count", str(CORPUS / "triangle_unit.json"), "--dilation", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["agree"]
