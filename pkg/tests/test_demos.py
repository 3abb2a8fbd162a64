import runpy
import sys
from pathlib import Path

import pytest

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("name", ["golden_tables", "euler_numbers", "classification_map"])
def test_demo_runs(name, capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", [name])
    runpy.run_path(str(DEMOS / f"{name}.py"), run_name="__main__")
    out = capsys.readouterr().out
    assert "MISMATCH" not in out and "DIFFER" not in out


def test_backsolve_demo(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["backsolve_gv", str(tmp_path)])
    runpy.run_path(str(DEMOS / "backsolve_gv.py"), run_name="__main__")
    out = capsys.readouterr().out
    assert "FAIL" not in out
    for name in ("p2_backsolved.json", "p1xp1_backsolved.json"):
        assert (tmp_path / name).read_text() == (DEMOS.parent / "datasets" / name).read_text()
