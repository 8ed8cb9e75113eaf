from pathlib import Path
from unittest.mock import patch

import pytest

from sheafnet.core.config import settings
from sheafnet.main import main
from sheafnet.services.complex import from_maximal_cells
from sheafnet.services.activation import activation_sheaf

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def path3():
    """Link complex of 1 - 2 - 3."""
    return from_maximal_cells([[1, 2], [2, 3]])


@pytest.fixture
def triangle():
    return from_maximal_cells([[1, 2, 3]])


@pytest.fixture
def path3_sheaf(path3):
    return activation_sheaf(path3)


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""

    def _run(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture
def small_enumeration_limit():
    with patch.object(settings, "max_enumeration_nodes", 3):
        yield
