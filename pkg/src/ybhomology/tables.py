"""Published homology tables and their reproduction.

Layer: Acceptance Data
May only import from: .runner, .families, .smith, .complex, metaflow.multicore_utils

Table 1 covers cyclic biquandles, table 2 Alexander biquandles. Each block
is one biquandle; each cell is (degree, theory). Cells left blank in the
published tables are absent here, not zero, and are never computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any
from typing import Callable
from typing import Optional

from metaflow.multicore_utils import parallel_map

from .complex import Theory
from .families import resolve
from .runner import HomologyRunner
from .runner import SplitReport
from .smith import AbGroup

_THEORY_ORDER = tuple(t.value for t in Theory)


@dataclass(frozen=True)
class Block:
    name: str
    source: str
    cells: dict[str, tuple[str, ...]]

    @property
    def degrees(self) -> range:
        return range(1, 1 + max(len(v) for v in self.cells.values()))


def _block(name: str, source: str, yb: list[str], deg: list[str], nyb: list[str]) -> Block:
    return Block(name, source, {"YB": tuple(yb), "DEG": tuple(deg), "NYB": tuple(nyb)})


EXPECTED_TABLES: dict[int, tuple[Block, ...]] = {
    # Homology of cyclic biquandles; columns n = 1, 2, 3, 4.
    1: (
        _block(
            "C3",
            "cyclic 3",
            yb=["Z + Z_3", "Z^3", "Z^9 + Z_3", "Z^27"],
            deg=["0", "Z", "Z^5", "Z^19"],
            nyb=["Z + Z_3", "Z^2", "Z^4 + Z_3", "Z^8"],
        ),
        _block(
            "C5",
            "cyclic 5",
            yb=["Z + Z_5", "Z^5", "Z^25 + Z_5", "Z^125"],
            deg=["0", "Z", "Z^9", "Z^61"],
            nyb=["Z + Z_5", "Z^4", "Z^16 + Z_5", "Z^64"],
        ),
        # n = 4 is blank for C8
        _block(
            "C8",
            "cyclic 8",
            yb=["Z + Z_8", "Z^8", "Z^64 + Z_8"],
            deg=["0", "Z", "Z^15"],
            nyb=["Z + Z_8", "Z^7", "Z^49 + Z_8"],
        ),
    ),
    # Homology of Alexander biquandles Z_{n;s,t}.
    2: (
        _block(
            "Z8;3,5",
            "alexander 8 3 5",
            yb=["Z^2", "Z^4 + Z_2^2", "Z^8 + Z_2^4 + Z_8^2"],
            deg=["0", "Z^2", "Z^6 + Z_2^2"],
            nyb=["Z^2", "Z^2 + Z_2^2", "Z^2 + Z_2^2 + Z_8^2"],
        ),
        _block(
            "Z9;4,4",
            "alexander 9 4 4",
            yb=["Z^3 + Z_3", "Z^9 + Z_3^3"],
            deg=["0", "Z^3"],
            nyb=["Z^3 + Z_3", "Z^6 + Z_3^3"],
        ),
        _block(
            "Z8;5,5",
            "alexander 8 5 5",
            yb=["Z^4 + Z_2", "Z^24 + Z_2^3", "Z^160 + Z_2^15 + Z_4"],
            deg=["0", "Z^4", "Z^44 + Z_2^4"],
            nyb=["Z^4 + Z_2", "Z^20 + Z_2^3", "Z^116 + Z_2^11 + Z_4"],
        ),
        _block(
            "Z16;13,13",
            "alexander 16 13 13",
            yb=["Z^4 + Z_4", "Z^24 + Z_2^2 + Z_4^3"],
            deg=["0", "Z^4"],
            nyb=["Z^4 + Z_4", "Z^20 + Z_2^2 + Z_4^3"],
        ),
    ),
}


@dataclass(frozen=True)
class Cell:
    block: str
    degree: int
    theory: str
    expected: AbGroup


def get_table(which: int) -> tuple[Block, ...]:
    try:
        return EXPECTED_TABLES[which]
    except KeyError:
        raise ValueError(
            f"No table {which}. Available tables: "
            f"{', '.join(str(k) for k in sorted(EXPECTED_TABLES))} (1: cyclic, 2: Alexander)."
        ) from None


def _block_cells(block: Block) -> list[Cell]:
    out = []
    for n in block.degrees:
        for theory in _THEORY_ORDER:
            column = block.cells[theory]
            if n <= len(column):
                out.append(Cell(block.name, n, theory, AbGroup.parse(column[n - 1])))
    return out


def cells(which: int) -> list[Cell]:
    """Populated cells in canonical order: block, degree, theory."""
    return [cell for block in get_table(which) for cell in _block_cells(block)]


@dataclass(frozen=True)
class CellResult:
    cell: Cell
    actual: AbGroup
    seconds: float

    @property
    def matches(self) -> bool:
        return self.actual == self.cell.expected

    def to_dict(self) -> dict[str, Any]:
        return {
            "biquandle": self.cell.block,
            "degree": self.cell.degree,
            "theory": self.cell.theory,
            "expected": self.cell.expected.render(),
            "actual": self.actual.render(),
            "match": self.matches,
            "seconds": round(self.seconds, 4),
        }


@dataclass(frozen=True)
class BlockResult:
    name: str
    cells: tuple[CellResult, ...]
    split: SplitReport


@dataclass(frozen=True)
class TableReport:
    which: int
    blocks: tuple[BlockResult, ...]

    @property
    def results(self) -> list[CellResult]:
        return [c for b in self.blocks for c in b.cells]

    @property
    def mismatches(self) -> list[CellResult]:
        return [c for c in self.results if not c.matches]

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    @property
    def split_holds(self) -> bool:
        return all(b.split.holds for b in self.blocks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "table": self.which,
            "all_match": self.all_match,
            "split_holds": self.split_holds,
            "cells": [c.to_dict() for c in self.results],
            "split": {b.name: b.split.to_dict() for b in self.blocks},
        }


def reproduce_block(
    block: Block, guard: int, echo: Optional[Callable[[str], None]] = None
) -> BlockResult:
    _, X = resolve(block.source)
    runner = HomologyRunner(X, guard=guard, echo=echo)
    top = max(block.degrees)
    computed = {th: runner.homology(th, len(col)) for th, col in block.cells.items()}
    results = [
        CellResult(
            cell,
            computed[cell.theory][cell.degree],
            runner.timings.get((cell.theory, cell.degree), 0.0),
        )
        for cell in _block_cells(block)
    ]
    split = runner.split_check(top)
    return BlockResult(block.name, tuple(results), split)


def reproduce(
    which: int,
    guard: int,
    workers: int = 1,
    echo: Optional[Callable[[str], None]] = None,
) -> TableReport:
    """Recompute every populated cell of a table.

    Blocks run in a worker pool when ``workers > 1``.
    """
    blocks = get_table(which)
    if workers > 1:
        results = parallel_map(
            lambda b: reproduce_block(b, guard), blocks, max_parallel=workers
        )
    else:
        results = [reproduce_block(b, guard, echo=echo) for b in blocks]
    return TableReport(which, tuple(results))
