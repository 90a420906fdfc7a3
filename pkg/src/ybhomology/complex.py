"""Pre-cubical chain complexes of a Yang-Baxter operator.

Layer: Chain Complexes
May only import from: .algebra, .smith, .exceptions

A degree-n generator is a word (x_1, ..., x_n) over the carrier. Removing
strand i off the left or right edge of the diagrammatic cube gives the two
face maps; the boundary is the alternating sum of their differences:

    d_n = sum_{i=1..n} (-1)^(i+1) (face_left(i) - face_right(i))

Three theories share this boundary. ``YB`` uses every word, ``DEG`` the
words containing a fixed pair (x, bar x) in consecutive positions, and
``NYB`` the quotient by ``DEG`` (non-degenerate words, degenerate faces
dropped). Theories are registered in ``_THEORIES``; see
docs/architecture.md for how they plug into the runner.
"""

from __future__ import annotations

import itertools
from abc import ABC
from abc import abstractmethod
from collections import defaultdict
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Sequence

from .algebra import FiniteYB
from .algebra import verify_axioms
from .exceptions import BarUnavailable
from .exceptions import IndexOutOfRange
from .exceptions import NotAComplex
from .exceptions import NotYangBaxter
from .smith import IntMatrix

Word = tuple[int, ...]


class Theory(str, Enum):
    YB = "YB"
    DEG = "DEG"
    NYB = "NYB"

    @classmethod
    def parse(cls, name: str | Theory) -> Theory:
        if isinstance(name, Theory):
            return name
        key = name.strip().upper()
        if key in ("D", "DEGENERATE"):
            key = "DEG"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(
                f"Unknown theory {name!r}. Available theories: {', '.join(t.value for t in cls)}."
            ) from None


# -- face maps ----------------------------------------------------------------


def _face_left(r1: list[list[int]], r2: list[list[int]], i: int, w: Word) -> Word:
    # strand i travels left across x_{i-1}, ..., x_1
    m = w[i - 1]
    out = list(w[i:])
    head = []
    for j in range(i - 2, -1, -1):
        head.append(r2[w[j]][m])
        m = r1[w[j]][m]
    head.reverse()
    return tuple(head) + tuple(out)


def _face_right(r1: list[list[int]], r2: list[list[int]], i: int, w: Word) -> Word:
    # strand i travels right across x_{i+1}, ..., x_n
    p = w[i - 1]
    tail = []
    for x in w[i:]:
        tail.append(r1[p][x])
        p = r2[p][x]
    return w[: i - 1] + tuple(tail)


def _check_word(X: FiniteYB, w: Sequence[int]) -> Word:
    word = tuple(int(x) for x in w)
    if any(not 0 <= x < X.size for x in word):
        raise IndexOutOfRange(f"Word {word} has letters outside the carrier 0..{X.size - 1}.")
    return word


def _check_face(X: FiniteYB, i: int, w: Sequence[int]) -> Word:
    n = len(w)
    if not 1 <= i <= n:
        raise IndexOutOfRange(
            f"Face index {i} is outside 1..{n} for a word of degree {n}.", witness=i
        )
    return _check_word(X, w)


def face_left(X: FiniteYB, i: int, w: Sequence[int]) -> Word:
    return _face_left(X._r1, X._r2, i, _check_face(X, i, w))


def face_right(X: FiniteYB, i: int, w: Sequence[int]) -> Word:
    return _face_right(X._r1, X._r2, i, _check_face(X, i, w))


def face(X: FiniteYB, side: str, i: int, w: Sequence[int]) -> Word:
    """``side`` is ``"l"`` or ``"r"``."""
    if side == "l":
        return face_left(X, i, w)
    if side == "r":
        return face_right(X, i, w)
    raise ValueError(f"Face side must be 'l' or 'r', got {side!r}.")


def _require_bar(X: FiniteYB) -> list[int]:
    bar = X._bar
    if bar is None:
        raise BarUnavailable(
            "Degenerate and normalized chains need a biquandle: some element has no "
            "unique fixed-pair partner. Run `ybh verify` for the witness."
        )
    return bar


def _degenerate(bar: list[int], w: Word) -> bool:
    return any(w[k + 1] == bar[w[k]] for k in range(len(w) - 1))


def is_degenerate(X: FiniteYB, w: Sequence[int]) -> bool:
    return _degenerate(_require_bar(X), _check_word(X, w))


# -- theories -----------------------------------------------------------------


class ChainTheory(ABC):
    """Chooses the generators of each chain group and projects faces onto them."""

    name: Theory

    def __init__(self, X: FiniteYB):
        self.X = X

    @abstractmethod
    def is_generator(self, w: Word) -> bool: ...

    @abstractmethod
    def chain_rank(self, n: int) -> int:
        """Closed-form rank of the degree-n chain group."""

    def basis(self, n: int) -> list[Word]:
        if n < 0:
            return []
        words = itertools.product(range(self.X.size), repeat=n)
        return [w for w in words if self.is_generator(w)]


class FullTheory(ChainTheory):
    name = Theory.YB

    def is_generator(self, w: Word) -> bool:
        return True

    def chain_rank(self, n: int) -> int:
        return self.X.size**n if n >= 0 else 0


class DegenerateTheory(ChainTheory):
    name = Theory.DEG

    def __init__(self, X: FiniteYB):
        super().__init__(X)
        self._bar = _require_bar(X)

    def is_generator(self, w: Word) -> bool:
        return _degenerate(self._bar, w)

    def chain_rank(self, n: int) -> int:
        N = self.X.size
        return 0 if n < 2 else N**n - N * (N - 1) ** (n - 1)


class NormalizedTheory(ChainTheory):
    name = Theory.NYB

    def __init__(self, X: FiniteYB):
        super().__init__(X)
        self._bar = _require_bar(X)

    def is_generator(self, w: Word) -> bool:
        return not _degenerate(self._bar, w)

    def chain_rank(self, n: int) -> int:
        N = self.X.size
        if n < 0:
            return 0
        if n == 0:
            return 1
        return N * (N - 1) ** (n - 1)


_THEORIES: dict[Theory, type[ChainTheory]] = {
    Theory.YB: FullTheory,
    Theory.DEG: DegenerateTheory,
    Theory.NYB: NormalizedTheory,
}


def get_theory(theory: str | Theory, X: FiniteYB) -> ChainTheory:
    return _THEORIES[Theory.parse(theory)](X)


def enumerate_basis(X: FiniteYB, theory: str | Theory, n: int) -> list[Word]:
    return get_theory(theory, X).basis(n)


def chain_rank(X: FiniteYB, theory: str | Theory, n: int) -> int:
    return get_theory(theory, X).chain_rank(n)


# -- boundary matrices --------------------------------------------------------


@dataclass(frozen=True)
class BoundaryMatrix:
    """d_n from degree n (columns) to degree n-1 (rows)."""

    degree: int
    theory: Theory
    row_basis: tuple[Word, ...]
    col_basis: tuple[Word, ...]
    matrix: IntMatrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def column(self, w: Sequence[int]) -> dict[Word, int]:
        """Image of one generator, keyed by row word."""
        j = self.col_basis.index(tuple(w))
        return {self.row_basis[r]: v for r, v in sorted(self.matrix.column(j).items())}


def _raw_boundary(X: FiniteYB, w: Word) -> dict[Word, int]:
    r1, r2 = X._r1, X._r2
    col: dict[Word, int] = defaultdict(int)
    for i in range(1, len(w) + 1):
        sign = 1 if i % 2 else -1
        col[_face_left(r1, r2, i, w)] += sign
        col[_face_right(r1, r2, i, w)] -= sign
    return {k: v for k, v in col.items() if v}


def apply_boundary(X: FiniteYB, theory: str | Theory, chain: dict[Word, int]) -> dict[Word, int]:
    """Boundary of a chain given as ``{word: coefficient}``, projected onto the theory."""
    th = get_theory(theory, X)
    acc: dict[Word, int] = defaultdict(int)
    for w, coeff in chain.items():
        if not coeff or not th.is_generator(w):
            continue
        for f, v in _raw_boundary(X, w).items():
            if th.name is not Theory.NYB or th.is_generator(f):
                acc[f] += coeff * v
    return {k: v for k, v in acc.items() if v}


def _assemble(
    X: FiniteYB, theory: ChainTheory, n: int
) -> tuple[BoundaryMatrix, list[tuple[Word, Word, int]]]:
    cols = theory.basis(n)
    rows = theory.basis(n - 1)
    index = {w: k for k, w in enumerate(rows)}
    entries: dict[tuple[int, int], int] = {}
    leaks: list[tuple[Word, Word, int]] = []
    for j, w in enumerate(cols):
        for face_word, v in _raw_boundary(X, w).items():
            k = index.get(face_word)
            if k is not None:
                entries[(k, j)] = v
            elif theory.name is Theory.DEG:
                leaks.append((w, face_word, v))
            # NYB: degenerate faces vanish in the quotient
    bm = BoundaryMatrix(
        degree=n,
        theory=theory.name,
        row_basis=tuple(rows),
        col_basis=tuple(cols),
        matrix=IntMatrix(len(rows), len(cols), entries),
    )
    return bm, leaks


def _require_ybe(X: FiniteYB) -> None:
    report = verify_axioms(X)
    if not report.ybe_holds:
        raise NotYangBaxter(
            f"Yang-Baxter equation fails at triple {report.ybe_witness}; "
            "boundary maps are only defined for solutions.",
            witness=report.ybe_witness,
        )


def boundary_matrix(
    X: FiniteYB, theory: str | Theory, n: int, assume_verified: bool = False
) -> BoundaryMatrix:
    """d_n for the chosen theory. Degree 0 gives the zero map into the empty degree -1."""
    if n < 0:
        raise IndexOutOfRange(f"Boundary degree must be >= 0, got {n}.", witness=n)
    if not assume_verified:
        _require_ybe(X)
    bm, leaks = _assemble(X, get_theory(theory, X), n)
    if leaks:
        w, f, v = leaks[0]
        raise NotAComplex(
            f"Degenerate chain {w} has boundary coefficient {v} on non-degenerate word {f}.",
            witness=leaks[0],
        )
    return bm


# -- verification -------------------------------------------------------------


@dataclass
class ComplexReport:
    theory: Theory
    max_degree: int
    boundary_ok: bool = True
    boundary_witness: tuple[int, Word, Word, int] | None = None
    precubical_ok: bool | None = None
    precubical_witness: tuple[str, int, str, int, Word] | None = None
    closure_ok: bool | None = None
    closure_witness: tuple[int, Word, Word, int] | None = None
    rank_ok: bool = True
    rank_witness: tuple[int, int, int] | None = None
    checked_degrees: list[int] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return (
            self.boundary_ok
            and self.rank_ok
            and self.precubical_ok is not False
            and self.closure_ok is not False
        )

    def failures(self) -> list[str]:
        out = []
        if not self.boundary_ok:
            n, r, c, v = self.boundary_witness  # type: ignore[misc]
            out.append(f"{self.theory.value}: d_{n - 1} d_{n} has entry {v} at row {r}, column {c}")
        if self.precubical_ok is False:
            e, i, d, j, w = self.precubical_witness  # type: ignore[misc]
            out.append(
                f"pre-cubical identity d^{e}_{i} d^{d}_{j} = d^{d}_{j - 1} d^{e}_{i} fails on {w}"
            )
        if self.closure_ok is False:
            n, w, f, v = self.closure_witness  # type: ignore[misc]
            out.append(f"boundary of degenerate {w} has coefficient {v} on non-degenerate {f}")
        if not self.rank_ok:
            n, want, got = self.rank_witness  # type: ignore[misc]
            out.append(
                f"{self.theory.value}: degree {n} has {got} generators, closed form says {want}"
            )
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "theory": self.theory.value,
            "max_degree": self.max_degree,
            "boundary_ok": self.boundary_ok,
            "boundary_witness": self.boundary_witness,
            "precubical_ok": self.precubical_ok,
            "precubical_witness": self.precubical_witness,
            "closure_ok": self.closure_ok,
            "closure_witness": self.closure_witness,
            "rank_ok": self.rank_ok,
            "rank_witness": self.rank_witness,
        }


def _precubical_witness(X: FiniteYB, n: int) -> tuple[str, int, str, int, Word] | None:
    r1, r2 = X._r1, X._r2
    faces = {"l": _face_left, "r": _face_right}
    for w in itertools.product(range(X.size), repeat=n):
        for j in range(2, n + 1):
            for i in range(1, j):
                for e, fe in faces.items():
                    for d, fd in faces.items():
                        lhs = fe(r1, r2, i, fd(r1, r2, j, w))
                        rhs = fd(r1, r2, j - 1, fe(r1, r2, i, w))
                        if lhs != rhs:
                            return e, i, d, j, w
    return None


def verify_complex(X: FiniteYB, theory: str | Theory, max_degree: int) -> ComplexReport:
    """Exhaustively check d d = 0, generator counts, pre-cubical identities and closure."""
    _require_ybe(X)
    th = get_theory(theory, X)
    report = ComplexReport(theory=th.name, max_degree=max_degree)
    if th.name is Theory.DEG:
        report.closure_ok = True
    prev = None
    for n in range(0, max_degree + 1):
        bm, leaks = _assemble(X, th, n)
        report.checked_degrees.append(n)
        want = th.chain_rank(n)
        if report.rank_ok and len(bm.col_basis) != want:
            report.rank_ok = False
            report.rank_witness = (n, want, len(bm.col_basis))
        if leaks and report.closure_ok:
            w, f, v = leaks[0]
            report.closure_ok = False
            report.closure_witness = (n, w, f, v)
        if prev is not None and report.boundary_ok:
            product = prev.matrix @ bm.matrix
            if not product.is_zero():
                (r, c), v = next(product.items())
                report.boundary_ok = False
                report.boundary_witness = (n, prev.row_basis[r], bm.col_basis[c], v)
        prev = bm

    if X.has_bar and report.closure_ok is None:
        deg = DegenerateTheory(X)
        report.closure_ok = True
        for n in range(2, max_degree + 1):
            _, leaks = _assemble(X, deg, n)
            if leaks:
                w, f, v = leaks[0]
                report.closure_ok = False
                report.closure_witness = (n, w, f, v)
                break

    if th.name is Theory.YB:
        report.precubical_ok = True
        for n in range(2, max_degree + 1):
            witness = _precubical_witness(X, n)
            if witness is not None:
                report.precubical_ok = False
                report.precubical_witness = witness
                break
    return report


# -- export -------------------------------------------------------------------


def write_matrix(bm: BoundaryMatrix, directory: str | Path) -> list[Path]:
    """Write ``<theory>_d<n>.txt`` as "r c v" triplets plus ``.rows``/``.cols`` basis sidecars."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{bm.theory.value}_d{bm.degree}"
    rows, cols = bm.shape
    lines = [f"{bm.degree}, {rows}, {cols}"]
    lines += [f"{r} {c} {v}" for (r, c), v in bm.matrix.items()]
    paths = [out / f"{stem}.txt", out / f"{stem}.rows", out / f"{stem}.cols"]
    paths[0].write_text("\n".join(lines) + "\n", encoding="utf-8")
    for path, basis in ((paths[1], bm.row_basis), (paths[2], bm.col_basis)):
        path.write_text("".join(",".join(map(str, w)) + "\n" for w in basis), encoding="utf-8")
    return paths
