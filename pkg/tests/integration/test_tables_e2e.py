"""End-to-end reproduction of the published homology tables.

Both tables take minutes in pure Python (the largest chain group has
4096 generators). Blocks run in parallel when YBH_WORKERS > 1.

Run: pytest tests/integration/ -m integration
"""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ybhomology.config import DEFAULT_GUARD
from ybhomology.config import DEFAULT_WORKERS
from ybhomology.tables import cells
from ybhomology.tables import reproduce


@pytest.mark.integration
class TestPublishedTables:
    """Every populated cell must match and every block must split."""

    @pytest.mark.parametrize("which", [1, 2])
    def test_table(self, which: int) -> None:
        report = reproduce(which, guard=DEFAULT_GUARD, workers=DEFAULT_WORKERS)
        assert len(report.results) == len(cells(which))
        assert report.all_match, [r.to_dict() for r in report.mismatches]
        assert report.split_holds

    def test_cli_json(self) -> None:
        result = subprocess.run(
            [sys.executable, "-m", "ybhomology.cli", "tables", "1", "--format", "json"],
            capture_output=True,
            text=True,
            timeout=3600,
        )
        assert result.returncode == 0, result.stderr
        data = json.loads(result.stdout)
        assert data["all_match"] is True
        assert len(data["cells"]) == 33
