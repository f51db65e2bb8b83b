import subprocess
import sys

import pytest

from twofano.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_schubert_mul(capsys):
    code, out, _ = run(capsys, "schubert", "mul", "--k", "3", "--n", "7", "2,1", "2,1", "2,1")
    assert code == 0
    assert out.strip() == "4*[4,4,1] + 8*[4,3,2] + 2*[3,3,3]"


def test_schubert_routes_agree(capsys):
    _, a, _ = run(capsys, "schubert", "mul", "--k", "2", "--n", "6", *["1"] * 6)
    _, b, _ = run(capsys, "schubert", "mul", "--k", "2", "--n", "6", "--route", "tableaux", *["1"] * 6)
    assert a == b == "9*[4,2] + 5*[3,3]\n"


def test_schubert_degree_and_dual(capsys):
    assert run(capsys, "schubert", "degree", "--k", "2", "--n", "5", *["1"] * 6)[1] == "5\n"
    assert run(capsys, "schubert", "dual", "--k", "2", "--n", "5", "2")[1] == "[3,1]\n"


def test_ch_grassmannian(capsys):
    code, out, _ = run(capsys, "ch", "--space", "grassmannian:2,5")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["rank: 6", "ch1: 5*[1]", "ch2: 3/2*[2] + 1/2*[1,1]"]


@pytest.mark.parametrize("space", ["proj:4", "wproj:1,1,1,2", "og:3,7", "ogplus:5", "sg:3,6", "sg:3",
                                   "g2p2", "product:1,2"])
def test_ch_spaces(capsys, space):
    code, out, _ = run(capsys, "ch", "--space", space)
    assert code == 0
    assert out.startswith("rank: ")


def test_classify_ci_proj(capsys):
    code, out, _ = run(capsys, "classify", "ci-proj", "--ambient-dim", "9", "--degrees", "2,2")
    assert code == 0
    assert out.splitlines()[0] == "TwoFano"


def test_classify_variants(capsys):
    assert run(capsys, "classify", "ci-weighted", "--weights", "1,1,1,1,2", "--degrees", "4")[1].startswith("NotWeakly")
    assert run(capsys, "classify", "linear-grass", "--k", "2", "--n", "5", "--c", "2")[1].startswith("Open")
    assert run(capsys, "classify", "ci-b4one", "--degrees", "1,1")[1].startswith("NotWeakly")
    assert run(capsys, "classify", "ci-ogplus", "--k", "5")[0] == 0


def test_verify_entries(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "MM-3-19", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[1] == "MM-3-19\tNotWeakly\tch2.T\t-1\t-1\tPASS"


def test_verify_failure_exit(capsys, tmp_path):
    bad = tmp_path / "c.json"
    bad.write_text('{"entries": [{"id": "x", "location": "-", "variety": "-", '
                   '"recipe": {"kind": "proj-space", "n": 3}, "expected_status": "NotWeakly"}]}')
    code, out, _ = run(capsys, "verify", "--catalog", str(bad))
    assert code == 1
    assert out.startswith("FAIL  x")


@pytest.mark.parametrize("argv", [
    ["schubert", "mul", "--k", "2", "--n", "5", "4"],
    ["schubert", "dual", "--k", "2", "--n", "5", "1", "1"],
    ["ch", "--space", "bogus:1"],
    ["classify", "ci-proj", "--degrees", "2"],
    ["classify", "ci-proj", "--ambient-dim", "4", "--degrees", "x"],
    ["verify", "--entry", "no-such-id"],
    ["verify", "--catalog", "/nonexistent/catalog.json"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_malformed_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["schubert", "mul", "--k", "two", "--n", "5", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twofano", "schubert", "degree", "--k", "2", "--n", "4",
                           "1", "1", "1", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "2\n"
