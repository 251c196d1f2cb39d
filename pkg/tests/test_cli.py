import io
import subprocess
import sys

import pytest

from robinson.cli import main
from robinson.core import first_violation, read_matrix, write_matrix
from robinson.mmodules import parse_tree, represented_family
from robinson.testkit import RUNNING_EXAMPLE_ORDER, GeneratorSpec, brute_force_compatible_order, enumerate_mmodules, generate


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def matrix_file(tmp_path, example):
    path = tmp_path / "example.txt"
    with open(path, "w") as fh:
        write_matrix(example, fh)
    return str(path)


def _non_robinson_file(tmp_path):
    for seed in range(200):
        sp = generate(GeneratorSpec("perturbed", 7, seed))
        if brute_force_compatible_order(sp) is None:
            path = tmp_path / "bad.txt"
            with open(path, "w") as fh:
                write_matrix(sp, fh)
            return str(path)
    raise AssertionError("no non-Robinson instance found")


def test_recognize_running_example(matrix_file, example):
    code, out = run("recognize", matrix_file)
    assert code == 0
    order = [int(t) - 1 for t in out.split()]
    assert first_violation(example, order) is None


def test_recognize_kv(matrix_file):
    code, out = run("recognize", "--kv", matrix_file)
    lines = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0 and lines["verdict"] == "robinson"
    assert len(lines["order"].split()) == 19


def test_recognize_not_robinson(tmp_path):
    path = _non_robinson_file(tmp_path)
    code, out = run("recognize", path)
    assert code == 1
    assert out.splitlines()[0] == "NOT ROBINSON"
    code, out = run("recognize", "--kv", path)
    assert code == 1 and "verdict=not-robinson" in out and "witness=" in out


def test_recognize_bad_input(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2\n0 1\n2 0\n")
    assert run("recognize", str(path))[0] == 2
    assert "error:" in capsys.readouterr().err
    assert run("recognize", str(tmp_path / "missing.txt"))[0] == 2
    path.write_text("not a matrix\n")
    assert run("recognize", str(path))[0] == 2


def test_check(matrix_file):
    ref = " ".join(str(x + 1) for x in RUNNING_EXAMPLE_ORDER)
    assert run("check", matrix_file, "--order", ref) == (0, "OK\n")
    code, out = run("check", matrix_file, "--order", " ".join(str(i) for i in range(1, 20)))
    assert code == 1
    assert out.splitlines() == ["VIOLATION", "row 1 decreases from 2 to 3"]
    code, out = run("check", "--kv", matrix_file, "--order", " ".join(str(i) for i in range(1, 20)))
    assert "check=failed" in out and "pair=2 3" in out


@pytest.mark.parametrize("order", ["1 2 3", "x y", " ".join(["1"] * 19), " ".join(str(i) for i in range(0, 19))])
def test_check_bad_order(matrix_file, order):
    assert run("check", matrix_file, "--order", order)[0] == 2


def test_mmtree(matrix_file, example):
    code, out = run("mmtree", matrix_file)
    assert code == 0
    tree = parse_tree(out.strip(), offset=1)
    assert out.strip() == "(U (U 1 6 9 10 17) (I (I 2 15) (U 5 12 19)) (I (U 3 4 16) 8 18) 7 (I 11 13 14))"
    assert represented_family(tree) == enumerate_mmodules(example)


def test_gen_is_deterministic(tmp_path):
    a = run("gen", "--kind", "toeplitz", "--n", "5", "--seed", "1")
    b = run("gen", "--kind", "toeplitz", "--n", "5", "--seed", "1")
    assert a == b and a[0] == 0
    assert a[1].splitlines()[0] == "5"
    path = tmp_path / "g.txt"
    assert run("gen", "--kind", "line", "--n", "6", "-o", str(path))[0] == 0
    assert read_matrix(str(path)).n == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--n", "-1"],
        ["gen", "--n", "3", "--max-val", "0"],
        ["gen", "--kind", "nope", "--n", "3"],
        ["bench", "--sizes", "a,b"],
        ["bench", "--sizes", "0"],
        ["bench", "--repeats", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_bad_flags(argv, capsys):
    assert run(*argv)[0] == 2


def test_bench(capsys):
    code, out = run("bench", "--sizes", "20,40", "--repeats", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["n", "mean_s", "ratio"]
    assert len(lines) == 3
    code, out = run("bench", "--kv", "--sizes", "20", "--repeats", "1")
    assert out.startswith("n=20 mean_s=")


def test_pipe_recognize_into_check(matrix_file):
    exe = [sys.executable, "-m", "robinson"]
    rec = subprocess.run(exe + ["recognize", matrix_file], capture_output=True, text=True, check=True)
    chk = subprocess.run(exe + ["check", matrix_file, "--order", rec.stdout.strip()], capture_output=True, text=True)
    assert chk.returncode == 0 and chk.stdout == "OK\n"
    gen = subprocess.run(exe + ["gen", "--n", "30", "--seed", "2"], capture_output=True, text=True, check=True)
    rec = subprocess.run(exe + ["recognize", "-"], input=gen.stdout, capture_output=True, text=True)
    assert rec.returncode == 0
