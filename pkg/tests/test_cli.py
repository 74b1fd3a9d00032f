import json
import subprocess
import sys

import pytest

from unicount.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def fx(fixture_path):
    return fixture_path


def doc_of(out):
    return json.loads(out)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_count_dilate(run, fx):
    code, out, _ = run("count", fx("square.json"), "--dilate", "1,2")
    assert code == 0 and doc_of(out) == {"count": 6, "H": [[1, 0], [0, 2]], "index": 2}
    code, out, _ = run("count", fx("x.json"), "--dilate", "1,2")
    assert doc_of(out)["count"] == 5


def test_count_lattice_is_normalized(run, fx):
    # [[2,1],[0,1]] spans the same lattice as diag(2,1)
    code, out, _ = run("count", fx("x.json"), "--lattice", "2,1;0,1")
    assert code == 0 and doc_of(out)["H"] == [[2, 0], [0, 1]]
    _, plain, _ = run("count", fx("x.json"))
    assert doc_of(plain) == {"count": 4, "H": [[1, 0], [0, 1]], "index": 1}


def test_count_3d(run, fx):
    code, out, _ = run("count", fx("cube.json"), "--dilate", "2,2,2")
    assert code == 0 and doc_of(out)["count"] == 27


def test_check_equal_modes(run, fx):
    code, out, _ = run("check-equal", fx("p_hexagon.json"), fx("q_pentagon.json"))
    assert code == 0 and doc_of(out)["equal"] is True
    code, out, _ = run("check-equal", fx("square.json"), fx("x.json"), "--mode", "exact2d")
    d = doc_of(out)
    assert code == 1 and d["equal"] is False and d["witness_class"] == [1, 1]
    code, out, _ = run("check-equal", fx("square.json"), fx("x.json"), "--mode", "necessary")
    assert code == 1 and doc_of(out)["witness_class"] == [1, 1]
    assert doc_of(out)["values"] == {"p_minus": "0", "p_plus": "0", "q_minus": "0", "q_plus": "1"}
    code, out, _ = run("check-equal", fx("square.json"), fx("x.json"), "--mode", "sweep",
                       "--max-index", "3")
    assert code == 1 and doc_of(out)["discrepancy"]["count_p"] == 6


def test_check_equal_exact_needs_plane(run, fx):
    code, _, err = run("check-equal", fx("cube.json"), fx("cube.json"))
    assert code == 2 and "exact decision only in dimension 2" in err
    code, _, _ = run("check-equal", fx("cube.json"), fx("cube.json"), "--mode", "necessary")
    assert code == 0


def test_sweep(run, fx):
    code, out, _ = run("sweep", fx("p_hexagon.json"), fx("q_pentagon.json"), "--max-index", "10",
                       "--jobs", "2")
    assert code == 0 and doc_of(out) == {"tested": 87, "discrepancy": None}


def test_sweep_budget(run, fx, monkeypatch):
    monkeypatch.setenv("UNICOUNT_BUDGET", "50")
    code, _, err = run("sweep", fx("p_hexagon.json"), fx("q_pentagon.json"))
    assert code == 2 and "budget" in err


def test_decompose(run, fx):
    code, out, _ = run("decompose", fx("p_hexagon.json"), fx("q_pentagon.json"))
    d = doc_of(out)
    assert code == 0 and d["reconstructs"] is True
    assert d["x"] == [[0, 0], [2, 0], [1, 1]] and d["y"] == [[0, 0], [1, 1], [0, 3]]
    code, out, _ = run("decompose", fx("square.json"), fx("x.json"))
    assert code == 1 and doc_of(out)["equal"] is False


def test_synth(run, fx):
    code, out, _ = run("synth", fx("x.json"), fx("y.json"))
    d = doc_of(out)
    assert code == 0 and d["equal"] is True and d["area2_p"] == d["area2_q"] == 17
    assert len(d["P"]) == 6 and len(d["Q"]) == 5
    code, out, _ = run("synth", fx("x.json"), fx("x.json"))
    assert code == 1 and (doc_of(out)["area2_p"], doc_of(out)["area2_q"]) == (8, 12)


def test_ehrhart(run, fx):
    code, out, _ = run("ehrhart", fx("square.json"))
    assert code == 0 and out.strip() == '{"coeffs":["1","2","1"]}'
    code, out, _ = run("ehrhart", fx("p_hexagon.json"), "--check")
    d = doc_of(out)
    assert code == 0 and d["coeffs"] == ["1", "9/2", "17/2"] and d["theorem1"]["pass"]
    code, out, _ = run("ehrhart", fx("cube.json"), "--check")
    assert code == 0 and doc_of(out)["coeffs"] == ["1", "3", "3", "1"]


def test_profile_and_width(run, fx):
    code, out, _ = run("profile", fx("x.json"))
    assert code == 0
    assert doc_of(out)["profile"] == [{"class": [0, 1], "value": 2},
                                      {"class": [1, -1], "value": 1},
                                      {"class": [1, 1], "value": 1}]
    code, out, _ = run("width", fx("x.json"), "--z", "1,0")
    assert code == 0 and doc_of(out)["width"] == 2 == doc_of(out)["boundary_formula"]
    code, _, err = run("width", fx("x.json"), "--z", "2,0")
    assert code == 2


def test_verify_equidecomp(run, fx, tmp_path):
    code, out, _ = run("verify-equidecomp", fx("p_hexagon.json"), fx("q_pentagon.json"),
                       fx("cert_hexagon_pentagon.json"))
    assert code == 0 and doc_of(out)["pass"] is True
    big = write(tmp_path, "big.json", {"dim": 2, "vertices": [[0, 0], [2, 0], [2, 2], [0, 2]]})
    cert = write(tmp_path, "cert.json", {
        "pieces_p": [{"vertices": [[0, 0], [2, 0], [2, 2]]}, {"vertices": [[0, 0], [2, 0], [0, 2]]}],
        "pieces_q": [{"vertices": [[0, 0], [2, 0], [2, 2]]}, {"vertices": [[0, 0], [2, 0], [0, 2]]}],
    })
    code, out, _ = run("verify-equidecomp", big, big, cert)
    d = doc_of(out)
    assert code == 1 and d["failed_check"] == "b" and d["detail"]["intersection_area"] == "1"


def test_input_errors(run, fx, tmp_path):
    bad_json = write(tmp_path, "bad.json", "{not json")
    assert run("count", bad_json)[0] == 2
    assert run("count", str(tmp_path / "missing.json"))[0] == 2
    float_coords = write(tmp_path, "f.json", {"dim": 2, "vertices": [[0.5, 0], [1, 1]]})
    assert run("count", float_coords)[0] == 2
    wrong_dim = write(tmp_path, "w.json", {"dim": 3, "vertices": [[0, 0], [1, 1]]})
    assert run("count", wrong_dim)[0] == 2
    flat = write(tmp_path, "flat.json", {"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})
    assert run("count", flat)[0] == 2
    assert run("count", fx("x.json"), "--lattice", "1,2;2,4")[0] == 2
    assert run("count", fx("x.json"), "--dilate", "a,b")[0] == 2
    assert run("count", fx("x.json"), "--dilate", "1,1,1")[0] == 2
    assert run("ehrhart", write(tmp_path, "seg.json", {"dim": 2, "vertices": [[0, 0], [1, 0]]}))[0] == 2
    assert run("profile", fx("cube.json"))[0] == 2


def test_bare_list_file_accepted(run, fx):
    # y.json is a bare vertex list
    code, out, _ = run("count", fx("y.json"))
    assert code == 0 and doc_of(out)["count"] == 5


def test_pretty(run, fx):
    code, out, _ = run("--pretty", "count", fx("square.json"), "--dilate", "1,2")
    assert code == 0
    assert out.splitlines()[0].split() == ["H", "[[1,0],[0,2]]"]
    code, out2, _ = run("count", fx("square.json"), "--dilate", "1,2", "--pretty")
    assert out2 == out


def test_fuzz_seeded(run):
    a = run("fuzz", "--seed", 7, "--count", 4)[1]
    b = run("fuzz", "--seed", 7, "--count", 4)[1]
    assert a == b and len(doc_of(a)) == 4
    c = run("fuzz", "--seed", 8, "--count", 4)[1]
    assert c != a
    bodies = doc_of(run("fuzz", "--seed", 1, "--dim", 3, "--box", 3, "--points", 6,
                        "--count", 2)[1])
    assert all(b["dim"] == 3 for b in bodies)
    assert run("fuzz", "--points", 1)[0] == 2


def test_subprocess_output_is_byte_identical(fx):
    cmd = [sys.executable, "-m", "unicount", "check-equal", fx("square.json"), fx("x.json")]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    assert runs[0].returncode == runs[1].returncode == 1
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout.endswith(b"\n")


def test_internal_error_exit_3(run, fx, monkeypatch):
    from unicount import cli
    def broken(p, z):
        raise cli.InvariantError("simulated")
    monkeypatch.setattr(cli, "width_boundary_formula", broken)
    code, _, err = run("width", fx("x.json"), "--z", "1,0")
    assert code == 3 and "internal error" in err


def test_usage_errors_exit_2(run):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2
