import json
import subprocess
import sys

import pytest

from filippov.cli import main
from filippov.nlie import make_filiform5, serialize_algebra


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jacobiator_filiform(capsys):
    code, out, _ = run(capsys, "jacobiator", "filiform5", "x1^x4", "x1^x2", "x3^x2")
    assert code == 0 and out == "-1/4 * x4^x5\n"


def test_check_fi_vn4(capsys):
    code, out, _ = run(capsys, "check-fi", "Vn:4")
    assert code == 0 and out == "PASS\n"


def test_assoc_dims_one_variable(capsys):
    code, out, _ = run(capsys, "assoc-dims", "abelian:2:3", "--degree", "4")
    assert code == 0 and out == "1 1 1 1 1\n"


def test_passing_check_json(capsys):
    code, out, _ = run(capsys, "check-fi", "Vn:3", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] is True and data["witness"] is None


def test_circle_lie_check_witness_json(capsys):
    code, out, _ = run(capsys, "circle-lie-check", "filiform5", "--json")
    data = json.loads(out)
    assert code == 1 and not data["passed"]
    w = data["witness"]
    assert all("^" in w[k] for k in ("x", "y", "z"))
    assert all(isinstance(v, str) for v in w["residual"])
    assert data["reproduce"].startswith("nlie jacobiator filiform5 ")
    # the printed reproduction gives a nonzero jacobiator
    _, again, _ = run(capsys, *data["reproduce"].split()[1:])
    assert again.strip() != "0"


def test_disputed_json(capsys):
    code, out, _ = run(capsys, "assoc-dims", "abelian:3:3", "--degree", "3", "--json")
    data = json.loads(out)
    assert code == 2
    assert data["dims"] == [1, 3, 6, 10]
    claim, = data["disputed_claims"]
    assert claim["disputed"] is True and claim["computed"] == [1, 3, 6, 10]


def test_json_key_order_is_stable(capsys):
    _, out, _ = run(capsys, "innder-iso", "Vn:3", "--json")
    data = json.loads(out)
    assert list(data) == sorted(data)


@pytest.mark.parametrize("argv", [
    ["bogus", "Vn:3"],
    ["check-fi"],
    ["check-fi", "does/not/exist.txt"],
    ["check-fi", "Vn:x"],
    ["check-fi", "dsum:Vn:3"],
    ["jacobiator", "filiform5", "x1^x9", "x1^x2", "x3^x2"],
    ["assoc-dims", "Vn:3", "--degree", "-1"],
    ["free-case", "2", "3"],
    ["check-fi", "Vn:3", "--field", "Fp:4"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and err


def test_algebra_file_and_output(tmp_path, capsys):
    path = tmp_path / "fil.txt"
    path.write_text(serialize_algebra(make_filiform5()))
    code, out, _ = run(capsys, "centre", str(path))
    assert code == 0 and out.splitlines()[0] == "dim Z = 1"
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "h1", str(path), "--json", "-o", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["h1"] == 3  # binom(dim L/[L,L], 2)


def test_bad_algebra_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n = 3\ndim = 4\n[1,2] = x4\n")
    code, _, err = run(capsys, "check-fi", str(path))
    assert code == 3 and "arity mismatch" in err


def test_module_check_files(tmp_path, capsys):
    code, out, _ = run(capsys, "module-check", "filiform5", "adjoint")
    assert code == 0 and "invariants dim 1" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"mdim": 1, "action": {"x1^x2": [[1]]}}))
    code, out, _ = run(capsys, "module-check", "Vn:3", str(bad), "--json")
    data = json.loads(out)
    assert code == 1 and not data["axioms"]["passed"] and data["axioms"]["witness"]
    ok = tmp_path / "ok.json"
    ok.write_text(json.dumps({"mdim": 2, "action": {}}))
    code, _, _ = run(capsys, "module-check", "Vn:3", str(ok))
    assert code == 0


def test_free_case_and_presentation(capsys):
    code, out, _ = run(capsys, "free-case", "3", "3")
    assert code == 0 and out == "0 relations\n"
    code, out, _ = run(capsys, "free-case", "4", "3")
    assert out.startswith("1 relations\n") and "x1^x2" in out
    code, out, _ = run(capsys, "assoc-presentation", "abelian:2:2")
    assert "g{1}" in out and out.rstrip().endswith("1*g{1}.g{2}")


def test_other_commands(capsys):
    assert run(capsys, "simple", "Vn:3")[0] == 0
    assert run(capsys, "simple", "filiform5")[0] == 1
    code, out, _ = run(capsys, "basic-lie", "Vn:3")
    assert code == 0 and out.startswith("dim 6") and "centre dim 0" in out
    assert run(capsys, "basic-leibniz", "filiform5")[0] == 0
    code, out, _ = run(capsys, "derivations", "Vn:3")
    assert out.startswith("dim Der = 6")
    code, out, _ = run(capsys, "innder", "fnw2:4:3")
    assert "abelian: yes" in out
    code, out, _ = run(capsys, "dagger-check", "filiform5", "--samples", "5")
    assert code == 0 and out.startswith("PASS: 5 random")
    code, out, _ = run(capsys, "dagger-check", "Vn:3", "--exhaustive")
    assert out.startswith("PASS: 216 exhaustive")
    assert run(capsys, "check-fi", "Vn:3", "--field", "Fp:7")[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "filippov", "check-fi", "filiform5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "PASS\n"
