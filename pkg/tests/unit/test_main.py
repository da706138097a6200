import runpy
import sys
from pathlib import Path

import pytest

MAIN_PATH = Path(__file__).resolve().parents[2] / "main.py"


def test_main_entry_point(monkeypatch, capsys):
    """Verify that main.py dispatches to the CLI and exits with its return code."""
    monkeypatch.setattr(sys, "argv", ["main.py", "denumerant", "--t", "2", "--parts", "1,1"])
    with pytest.raises(SystemExit) as exc_info:
        runpy.run_path(str(MAIN_PATH), run_name="__main__")
    assert exc_info.value.code == 0
    assert "denumerant" in capsys.readouterr().out


def test_script_target_is_cli_main():
    """The lie-rep console script points at src.cli:main."""
    from src.cli import main

    assert callable(main)
