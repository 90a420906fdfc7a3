"""Homology runner for one operator.

Layer: Execution
May only import from: .complex, .smith, .algebra, .config, .exceptions

Assembles boundary matrices per theory, refuses chain groups above the
resource guard before enumerating them, and caches Smith forms so that
consecutive degrees share the elimination of their common boundary.

Progress goes through an optional ``echo`` callable; without one the
runner is silent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Optional

from .algebra import FiniteYB
from .complex import BoundaryMatrix
from .complex import Theory
from .complex import boundary_matrix
from .complex import get_theory
from .complex import write_matrix
from .config import DEFAULT_GUARD
from .exceptions import ResourceGuardExceeded
from .smith import AbGroup
from .smith import SNFResult
from .smith import check_complex
from .smith import homology_from_snf
from .smith import rank_mod_p
from .smith import snf


@dataclass(frozen=True)
class SplitRow:
    degree: int
    yb: AbGroup
    deg: AbGroup
    nyb: AbGroup

    @property
    def holds(self) -> bool:
        return self.yb == self.deg.direct_sum(self.nyb)

    def to_dict(self) -> dict[str, Any]:
        return {
            "YB": self.yb.to_dict(),
            "DEG": self.deg.to_dict(),
            "NYB": self.nyb.to_dict(),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class SplitReport:
    rows: tuple[SplitRow, ...]

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)

    @property
    def counterexamples(self) -> list[SplitRow]:
        return [row for row in self.rows if not row.holds]

    def to_dict(self) -> dict[str, Any]:
        return {"holds": self.holds, "degrees": {str(r.degree): r.to_dict() for r in self.rows}}


class HomologyRunner:
    """Compute homology of ``X`` degree by degree, reusing work across degrees and theories."""

    def __init__(
        self,
        X: FiniteYB,
        guard: int = DEFAULT_GUARD,
        dump_dir: Optional[str | Path] = None,
        echo: Optional[Callable[[str], None]] = None,
        assume_verified: bool = False,
    ):
        self.X = X
        self.guard = guard
        self.dump_dir = Path(dump_dir) if dump_dir else None
        self._echo = echo
        self._verified = assume_verified
        self._boundaries: dict[tuple[Theory, int], BoundaryMatrix] = {}
        self._snfs: dict[tuple[Theory, int], SNFResult] = {}
        self._checked: set[tuple[Theory, int]] = set()
        self._groups: dict[tuple[Theory, int], AbGroup] = {}
        self.timings: dict[tuple[str, int], float] = {}

    def _log(self, msg: str) -> None:
        if self._echo is not None:
            self._echo(msg)

    def check_guard(self, theory: str | Theory, top_degree: int) -> None:
        th = get_theory(theory, self.X)
        for n in range(top_degree + 1):
            rank = th.chain_rank(n)
            if rank > self.guard:
                raise ResourceGuardExceeded(
                    f"{th.name.value} chain group of degree {n} has rank {rank}, above the "
                    f"guard of {self.guard} columns. "
                    "Lower --max-degree or raise --guard/YBH_GUARD.",
                    rank=rank,
                    degree=n,
                )

    def boundary(self, theory: str | Theory, n: int) -> BoundaryMatrix:
        th = Theory.parse(theory)
        key = (th, n)
        if key not in self._boundaries:
            self.check_guard(th, n)
            bm = boundary_matrix(self.X, th, n, assume_verified=self._verified)
            self._verified = True
            self._boundaries[key] = bm
            if self.dump_dir is not None:
                write_matrix(bm, self.dump_dir)
        return self._boundaries[key]

    def _snf(self, theory: Theory, n: int) -> SNFResult:
        key = (theory, n)
        if key not in self._snfs:
            self._snfs[key] = snf(self.boundary(theory, n).matrix)
        return self._snfs[key]

    def _check_pair(self, theory: Theory, n: int) -> None:
        if (theory, n) not in self._checked:
            check_complex(self.boundary(theory, n).matrix, self.boundary(theory, n + 1).matrix)
            self._checked.add((theory, n))

    def homology(
        self, theory: str | Theory, max_degree: int, min_degree: int = 1
    ) -> dict[int, AbGroup]:
        """H_n for ``min_degree <= n <= max_degree`` with integer coefficients."""
        th = Theory.parse(theory)
        self.check_guard(th, max_degree + 1)
        out: dict[int, AbGroup] = {}
        for n in range(min_degree, max_degree + 1):
            if (th, n) in self._groups:
                out[n] = self._groups[(th, n)]
                continue
            start = time.perf_counter()
            self._check_pair(th, n)
            chain = len(self.boundary(th, n).col_basis)
            group = homology_from_snf(chain, self._snf(th, n).rank, self._snf(th, n + 1))
            elapsed = time.perf_counter() - start
            self.timings[(th.value, n)] = elapsed
            self._groups[(th, n)] = group
            self._log(f"[ybh] {th.value} H_{n} = {group}  ({elapsed:.2f}s)")
            out[n] = group
        return out

    def homology_mod_p(
        self, theory: str | Theory, max_degree: int, p: int, min_degree: int = 1
    ) -> dict[int, int]:
        """Dimensions of H_n over the field with ``p`` elements."""
        th = Theory.parse(theory)
        self.check_guard(th, max_degree + 1)
        ranks: dict[int, int] = {}

        def rank(n: int) -> int:
            if n not in ranks:
                ranks[n] = rank_mod_p(self.boundary(th, n).matrix, p)
            return ranks[n]

        out: dict[int, int] = {}
        for n in range(min_degree, max_degree + 1):
            start = time.perf_counter()
            self._check_pair(th, n)
            out[n] = len(self.boundary(th, n).col_basis) - rank(n) - rank(n + 1)
            elapsed = time.perf_counter() - start
            self._log(f"[ybh] {th.value} dim H_{n}(Z/{p}) = {out[n]}  ({elapsed:.2f}s)")
        return out

    def split_check(self, max_degree: int, min_degree: int = 1) -> SplitReport:
        """Compare H^YB with H^DEG + H^NYB degree by degree."""
        groups = {th: self.homology(th, max_degree, min_degree) for th in Theory}
        rows = tuple(
            SplitRow(
                degree=n,
                yb=groups[Theory.YB][n],
                deg=groups[Theory.DEG][n],
                nyb=groups[Theory.NYB][n],
            )
            for n in range(min_degree, max_degree + 1)
        )
        report = SplitReport(rows)
        for row in report.counterexamples:
            self._log(
                f"[ybh] SPLIT FAILS in degree {row.degree}: "
                f"YB {row.yb} vs DEG {row.deg} + NYB {row.nyb}"
            )
        return report
