import json
import subprocess
import sys

import pytest

from kkpaths.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_b2_top_coset(capsys):
    code, out, _ = run(capsys, "decompose", "--type", "B2", "--lambda", "2,0", "--w", "1,2,1", "--mu", "2,1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "# 9 summands"
    assert "V(2,1) x2" in lines and "V(2,0)" in lines


def test_decompose_json_schema(capsys):
    code, out, _ = run(capsys, "decompose", "--type", "A2", "--lambda", "1,1", "--w", "2,1", "--mu", "1,0",
                       "--format", "json", "--check")
    assert code == 0
    data = json.loads(out)
    assert data["command"] == "decompose"
    assert data["lambda"] == [1, 1] and data["mu"] == [1, 0]
    assert all(set(s) == {"weight", "mult"} for s in data["summands"])
    assert sorted(tuple(s["weight"]) for s in data["summands"]) == [(0, 2), (1, 0), (2, 1)]


def test_output_is_deterministic(capsys):
    args = ("kk-set", "--type", "G2", "--lambda", "1,0", "--w", "2,1", "--mu", "0,1", "--format", "json")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second
    data = json.loads(first)
    assert len(data["paths"]) > 0


def test_character_routes_agree(capsys):
    base = ("character", "--type", "B2", "--lambda", "1,1", "--w", "1,2", "--mu", "2,0", "--format", "tsv")
    a = run(capsys, *base, "--route", "paths")[1]
    b = run(capsys, *base, "--route", "demazure")[1]
    assert a == b and a.strip()


def test_key(capsys):
    code, out, _ = run(capsys, "key", "--ssyt", "[[1,3,6,8],[2,4],[7]]")
    assert (code, out.strip()) == (0, "83612457")
    code, out, _ = run(capsys, "key", "--ssyt", "11135/23/34/4", "--format", "json")
    assert json.loads(out)["key"] == "51324"


def test_deodhar_min(capsys):
    code, out, _ = run(capsys, "deodhar-min", "--n", "6", "--r", "3", "--sigma", "246135", "--w", "145362")
    assert (code, out.strip()) == (0, "246351")


def test_refined_lr(capsys):
    code, out, _ = run(capsys, "refined-lr", "--lambda", "2+1", "--mu", "3+1", "--w", "321", "--nu", "4+2+1", "--d", "3")
    assert (code, out.strip()) == (0, "2")
    code, out, _ = run(capsys, "refined-lr", "--lambda", "2+1", "--mu", "3+1", "--w", "123", "--format", "json")
    data = json.loads(out)
    assert data["coefficients"] == [{"nu": [5, 2], "coefficient": 1}]


def test_partition_weights_in_type_a(capsys):
    a = run(capsys, "decompose", "--type", "A2", "--lambda", "2+1", "--w", "321", "--mu", "3+1")[1]
    b = run(capsys, "decompose", "--type", "A2", "--lambda", "1,1", "--w", "1,2,1", "--mu", "2,1")[1]
    assert a == b


def test_cartan_file(tmp_path, capsys):
    path = tmp_path / "g2.json"
    path.write_text(json.dumps({"cartan": [[2, -1], [-3, 2]]}))
    code, out, _ = run(capsys, "decompose", "--cartan", str(path), "--lambda", "1,0", "--w", "e", "--mu", "1,0")
    assert code == 0 and "V(2,0)" in out


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "bruhat,keys", "--max-rank", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS bruhat")


@pytest.mark.parametrize("argv,needle", [
    (["decompose", "--type", "A2", "--lambda", "2,x", "--w", "e", "--mu", "1,0"], "column 3"),
    (["decompose", "--type", "A2", "--lambda", "2,-1", "--w", "e", "--mu", "1,0"], "coordinate 2"),
    (["decompose", "--type", "A2", "--lambda", "2,1,0", "--w", "e", "--mu", "1,0"], "expected 2 coordinates"),
    (["decompose", "--type", "E9", "--lambda", "1", "--w", "e", "--mu", "1"], "E9"),
    (["decompose", "--type", "A2", "--lambda", "1,0", "--w", "1,5", "--mu", "1,0"], "--w"),
    (["key", "--ssyt", "21/3"], "--ssyt"),
    (["deodhar-min", "--r", "3", "--sigma", "246135", "--w", "415362"], "increase"),
    (["deodhar-min", "--r", "3", "--sigma", "246135", "--w", "14523"], "--n"),
    (["refined-lr", "--lambda", "1+2", "--mu", "1", "--w", "12"], "--lambda"),
    (["decompose", "--lambda", "1,0", "--w", "e", "--mu", "1,0", "--threads", "0"], "threads"),
])
def test_invalid_input_exit_2(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert needle in err
    assert out == ""


def test_bad_cartan_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("[[2, -1],\n [-1, 2")
    code, _, err = run(capsys, "decompose", "--cartan", str(bad), "--lambda", "1,0", "--w", "e", "--mu", "1,0")
    assert code == 2 and "line 2" in err
    affine = tmp_path / "affine.json"
    affine.write_text("[[2, -2], [-2, 2]]")
    code, _, err = run(capsys, "decompose", "--cartan", str(affine), "--lambda", "1,0", "--w", "e", "--mu", "1,0")
    assert code == 2
    code, _, err = run(capsys, "decompose", "--cartan", str(tmp_path / "missing.json"), "--lambda", "1,0",
                       "--w", "e", "--mu", "1,0")
    assert code == 2 and "cannot read" in err


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "kkpaths.cli", "key", "--ssyt", "1368/24/7"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "83612457"
