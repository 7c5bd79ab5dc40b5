import shutil
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))
import render  # noqa: E402

HAVE_APSCYL = shutil.which("apscyl") is not None


def write_csv(path, header, rows):
    lines = [header] + [",".join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def test_shooting_fixture(tmp_path):
    src = tmp_path / "curve.csv"
    write_csv(src, "lambda,S,is_zero",
              [(-2.0, 1.0, 0), (-1.0, -0.5, 0), (-1.2, 0.0, 1),
               (0.0, 0.3, 0), (1.0, -0.2, 0), (0.7, 0.0, 1)])
    out = tmp_path / "fig.png"
    before = src.read_bytes()
    count = render.render("shooting", str(src), str(out))
    assert out.exists()
    assert count == 2
    assert src.read_bytes() == before  # input never mutated


def test_shooting_empty_spectrum(tmp_path):
    src = tmp_path / "curve.csv"
    write_csv(src, "lambda,S,is_zero", [(-1.0, 1.0, 0), (1.0, 2.0, 0)])
    out = tmp_path / "fig.png"
    assert render.render("shooting", str(src), str(out)) == 0
    assert out.exists()


def test_branches_fixture(tmp_path):
    src = tmp_path / "branches.csv"
    write_csv(src, "s,k,branch,lambda",
              [(0.0, 1, 0, -0.5), (0.5, 1, 0, 0.1), (1.0, 1, 0, 0.6),
               (0.0, 1, 1, 1.5), (0.5, 1, 1, 1.8), (1.0, 1, 1, 2.2)])
    out = tmp_path / "fig.png"
    assert render.render("branches", str(src), str(out)) == 2
    assert out.exists()


def test_crossings_fixture(tmp_path):
    src = tmp_path / "timeline.csv"
    write_csv(src, "s,k,value,is_event",
              [(0.0, -1, -0.5, 0), (0.5, -1, 0.0, 0), (1.0, -1, 0.5, 0),
               (0.5, -1, 0.0, 1)])
    out = tmp_path / "fig.png"
    assert render.render("crossings", str(src), str(out)) == 1
    assert out.exists()


def test_schema_mismatch_exits_2(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    write_csv(src, "a,b,c", [(1, 2, 3)])
    out = tmp_path / "fig.png"
    code = render.main(["--kind", "shooting", "--in", str(src), "--out", str(out)])
    assert code == 2
    assert "columns" in capsys.readouterr().err
    assert not out.exists()


def test_cli_exit_zero_iff_image(tmp_path):
    src = tmp_path / "curve.csv"
    write_csv(src, "lambda,S,is_zero", [(-1.0, 1.0, 0), (1.0, -1.0, 0)])
    out = tmp_path / "fig.png"
    code = render.main(["--kind", "shooting", "--in", str(src), "--out", str(out)])
    assert code == 0
    assert out.exists()


@pytest.mark.skipif(not HAVE_APSCYL, reason="primary CLI not installed")
def test_sample_curve_end_to_end(tmp_path):
    """Generate the sample-configuration shooting CSV through the primary CLI and
    render it; markers must match the rows flagged as zeros."""
    csv_path = tmp_path / "sample.csv"
    proc = subprocess.run(
        ["apscyl", "plot-data", "--profile", "exp_pair", "--alpha", "1",
         "--T", "3", "--A", "0.5", "--k", "1", "--lambda-max", "10",
         "--grid", "801", "--out", str(csv_path)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    flagged = sum(1 for line in csv_path.read_text().splitlines()[1:]
                  if line.endswith(",1"))
    assert flagged > 0
    out = tmp_path / "sample.png"
    proc = subprocess.run(
        [sys.executable, str(Path(render.__file__)), "--kind", "shooting",
         "--in", str(csv_path), "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    assert f"({flagged} marked features)" in proc.stdout
