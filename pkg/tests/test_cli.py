import io
import json
import subprocess
import sys

import pytest

from freecurves.cli import EXIT_DATA, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from freecurves.familydb import data_dir, list_families


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_list():
    code, out, _ = call("list")
    assert code == EXIT_OK and out.split() == list_families()


def test_census_example():
    code, out, _ = call("census", "3.1", "--class", "3,0,0")
    assert code == EXIT_OK and out.startswith("EMPTY")


def test_enumerate_4_6():
    code, out, _ = call("enumerate", "4.6", "--lo", "2", "--hi", "4")
    assert code == EXIT_OK
    names = {line.split("  ")[0].strip() for line in out.splitlines()}
    assert "l - e1 - e2" in names and "2l - 2e1 - 2e2" in names


def test_hilbert_and_relations():
    code, out, _ = call("hilbert", "2.21", "--cone", "mori")
    assert code == EXIT_OK and len(out.splitlines()) == 2
    code, out, _ = call("relations", "2.21")
    assert code == EXIT_OK and out.splitlines()[-1] == "1+3 = 2+2+2"
    code, out, _ = call("relations", "2.21", "--oracle", "--bound", "4")
    assert code == EXIT_OK and out.splitlines()[-1] == "2+2+2 = 1+3"


def test_structured_matches_text():
    _, text, _ = call("enumerate", "2.21")
    code, js, _ = call("enumerate", "2.21", "--format", "structured")
    data = json.loads(js)
    assert code == EXIT_OK
    assert [c["name"] for c in data["classes"]] == [
        line.split("  ")[0].strip() for line in text.splitlines()]
    _, before, _ = call("--format", "structured", "verify", "4.6")
    _, after, _ = call("verify", "4.6", "--format", "structured")
    assert before == after and json.loads(after)["overall"] is True


def test_output_is_deterministic():
    assert call("enumerate", "5.1") == call("enumerate", "5.1")


def test_verify_all():
    code, out, _ = call("verify-all")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == f"{len(list_families())}/{len(list_families())} families pass"


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["census", "3.1"], ["census", "3.1", "--class", "1,x,0"],
    ["census", "3.1", "--class", "1,0"], ["census", "2.21", "--class", "0,1"],
    ["enumerate", "4.6", "--lo", "5", "--hi", "2"], ["hilbert", "2.21", "--cone", "eff"],
    ["show"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_unknown_family_is_data_error():
    code, _, err = call("show", "9.99")
    assert code == EXIT_DATA and "9.99" in err


def test_failed_verification_and_bad_data(tmp_path, monkeypatch):
    text = (data_dir() / "2.21.fam").read_text(encoding="utf-8")
    monkeypatch.setenv("FREECURVES_DATA", str(tmp_path))
    # a stored class missing from the extras: loads, but verification fails
    (tmp_path / "2.21.fam").write_text(text.split("[extras]")[0] + "[census]" +
                                       text.split("[census]")[1], encoding="utf-8")
    assert call("verify", "2.21")[0] == EXIT_FAILED
    assert call("verify-all")[0] == EXIT_FAILED
    (tmp_path / "2.21.fam").write_text(text.replace("1, 0\n0, -1", "1, 0\n0, 0"),
                                       encoding="utf-8")
    assert call("show", "2.21")[0] == EXIT_DATA


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "freecurves.cli", "census", "2.21", "--class",
                           "2,-2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("TWO_COMPONENTS_MULTIPLE_COVER")
