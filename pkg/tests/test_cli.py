import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from vgclust.cli import run

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def invoke(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


@pytest.fixture
def fixture_copy(tmp_path):
    path = tmp_path / "data.txt"
    shutil.copy(DATA / "data.txt", path)
    return path


def test_positional_form_writes_all_outputs(fixture_copy):
    code, out = invoke("direct", fixture_copy, "distances", "Complete_Linkage", 3)
    assert code == 0
    assert "bands: 1" in out and "tied iterations: 1" in out
    for golden in GOLDEN.iterdir():
        produced = fixture_copy.parent / golden.name
        assert produced.read_bytes() == golden.read_bytes(), golden.name


def test_two_runs_byte_stable(tmp_path, fixture_copy):
    outs = []
    for k in range(2):
        target = tmp_path / f"run{k}"
        code, text = invoke("direct", fixture_copy, "distances", "Complete_Linkage", 3, "--out-dir", target)
        assert code == 0
        outs.append({p.name: p.read_bytes() for p in target.iterdir()})
    assert outs[0] == outs[1]
    assert len(outs[0]) == 4


def test_dash_direct_and_case(fixture_copy):
    code, _ = invoke("-direct", fixture_copy, "DISTANCES", "complete linkage", "3")
    assert code == 0


def test_two_points(tmp_path):
    path = tmp_path / "two.txt"
    path.write_text("a b 5\n")
    code, out = invoke("direct", path, "distances", "Unweighted_Average", 0, "--formats", "newick")
    assert code == 0
    assert (tmp_path / "two-unweighted_average.nwk").read_text() == "(a:5,b:5);\n"
    assert "cophenetic correlation coefficient: undefined" in out


def test_precision_inferred(fixture_copy):
    code, out = invoke("direct", fixture_copy, "distances", "Single_Linkage", "--formats", "txt")
    assert code == 0
    assert "precision: 3" in out


def test_reversal_reported(tmp_path):
    path = tmp_path / "rev.txt"
    path.write_text("A B C D\n0 .4 .5 .45\n.4 0 .4 .45\n.5 .4 0 .45\n.45 .45 .45 0\n")
    code, out = invoke("direct", path, "distances", "Complete_Linkage", 2, "--formats", "txt")
    assert code == 0
    assert "reversals: 1" in out
    assert "reversal: {A,B,C} band upper 0.50 beyond next 0.45" in out


def test_pair_group_mode(fixture_copy):
    code, _ = invoke("direct", fixture_copy, "distances", "Ward", 3, "--mode", "pair-group",
                     "--tie-policy", "random:4", "--formats", "newick")
    assert code == 0


def test_enumerate_ties(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("A B 0.4\nB C 0.4\nA C 0.5\n")
    code, out = invoke("direct", path, "distances", "Complete_Linkage", 1, "--mode", "enumerate-ties")
    assert code == 0
    assert out.splitlines()[0] == "2 distinct dendrograms"
    assert len(out.splitlines()) == 3


def test_json_report(tmp_path, fixture_copy):
    report = tmp_path / "r.json"
    code, _ = invoke("direct", fixture_copy, "distances", "Complete_Linkage", 3, "--json-report", report,
                     "--out-dir", tmp_path / "o")
    assert code == 0
    data = json.loads(report.read_text())
    assert data["bands"] == 1 and data["items"] == 5 and data["reversals"] == []


@pytest.mark.parametrize("argv", [
    ["direct"],
    ["indirect", "x.txt", "distances", "Ward"],
    ["direct", "x.txt", "lengths", "Ward"],
    ["direct", "x.txt", "distances", "Median"],
    ["direct", "x.txt", "distances", "Ward", "-1"],
    ["direct", "x.txt", "distances", "Ward", "--formats", "pdf"],
    ["direct", "x.txt", "distances", "Ward", "--tie-policy", "sometimes"],
])
def test_usage_errors(argv):
    assert invoke(*argv)[0] == 1


def test_missing_file(tmp_path):
    assert invoke("direct", tmp_path / "none.txt", "distances", "Ward")[0] == 2


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("0 2\n3 0\n")
    assert invoke("direct", path, "distances", "Ward")[0] == 2
    assert "AsymmetricMatrixError" in capsys.readouterr().err


def test_budget_exceeded(tmp_path):
    path = tmp_path / "flat.txt"
    n = 6
    path.write_text("\n".join(" ".join("0" if i == j else "1" for j in range(n)) for i in range(n)) + "\n")
    code, _ = invoke("direct", path, "distances", "Complete_Linkage", 0, "--mode", "enumerate-ties",
                     "--max-enum", 3)
    assert code == 3


def test_console_entry_point(fixture_copy):
    proc = subprocess.run(
        [sys.executable, "-m", "vgclust", "direct", str(fixture_copy), "distances", "Ward", "3",
         "--formats", "txt"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("method: Ward")
