"""Unit tests for the embedded homology tables and block reproduction."""

from __future__ import annotations

import pytest

from ybhomology.smith import AbGroup
from ybhomology.tables import EXPECTED_TABLES
from ybhomology.tables import cells
from ybhomology.tables import get_table
from ybhomology.tables import reproduce_block


class TestExpectedTables:
    def test_cell_counts(self) -> None:
        # C8 has no degree-4 column
        assert len(cells(1)) == 12 + 12 + 9
        assert len(cells(2)) == 9 + 6 + 9 + 6

    def test_every_entry_parses(self) -> None:
        for which in EXPECTED_TABLES:
            for cell in cells(which):
                assert isinstance(cell.expected, AbGroup)

    def test_split_holds_in_every_published_cell(self) -> None:
        for which in EXPECTED_TABLES:
            by_key = {(c.block, c.degree, c.theory): c.expected for c in cells(which)}
            for (block, degree, theory), group in by_key.items():
                if theory == "YB":
                    deg = by_key[(block, degree, "DEG")]
                    nyb = by_key[(block, degree, "NYB")]
                    assert group == deg + nyb, (block, degree)

    def test_canonical_order(self) -> None:
        first = cells(1)[:3]
        assert [(c.block, c.degree, c.theory) for c in first] == [
            ("C3", 1, "YB"),
            ("C3", 1, "DEG"),
            ("C3", 1, "NYB"),
        ]

    def test_unknown_table(self) -> None:
        with pytest.raises(ValueError, match="Available tables: 1, 2"):
            get_table(3)


class TestReproduceBlock:
    def test_cyclic_three(self) -> None:
        result = reproduce_block(get_table(1)[0], guard=100_000)
        assert result.name == "C3"
        assert len(result.cells) == 12
        assert all(r.matches for r in result.cells), [r.to_dict() for r in result.cells]
        assert result.split.holds

    def test_alexander_nine(self) -> None:
        block = next(b for b in get_table(2) if b.name == "Z9;4,4")
        result = reproduce_block(block, guard=100_000)
        assert all(r.matches for r in result.cells), [r.to_dict() for r in result.cells]
        assert [r.cell.degree for r in result.cells] == [1, 1, 1, 2, 2, 2]
