"""Exact integer linear algebra: Smith normal form, homology groups, class coordinates.

Layer: Integer Linear Algebra
May only import from: .exceptions, sympy

All arithmetic is on Python ints, so entries never overflow. Matrices are
sparse (dict of ``(row, col) -> value``) because boundary matrices have at
most ``2n`` nonzeros per column.

The elimination engine keeps the active submatrix as row dictionaries plus a
column index. Pivots are chosen by smallest magnitude; on large matrices ties
are broken by Markowitz cost to limit fill-in. Transforms are tracked only
when a caller needs them (``snf(A, transforms=True)``), since the four
transform families dominate memory on the larger boundary maps.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass
from dataclasses import field
from typing import Iterable
from typing import Iterator
from typing import Mapping
from typing import Sequence
from typing import Union

from sympy import factorint
from sympy import isprime
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .exceptions import NotAComplex
from .exceptions import NotACycle
from .exceptions import NotPrime
from .exceptions import ShapeMismatch

# Products up to this many cells use the plain smallest-magnitude rule.
DENSE_THRESHOLD = 256 * 256

Vector = Union[Sequence[int], Mapping[int, int]]


def _axpy(dst: dict[int, int], src: Mapping[int, int], q: int) -> None:
    """dst += q * src, dropping zeros."""
    for k, v in src.items():
        new = dst.get(k, 0) + q * v
        if new:
            dst[k] = new
        else:
            dst.pop(k, None)


def _as_sparse(vec: Vector) -> dict[int, int]:
    if isinstance(vec, Mapping):
        return {int(k): int(v) for k, v in vec.items() if v}
    return {i: int(v) for i, v in enumerate(vec) if v}


class IntMatrix:
    """Sparse integer matrix of a fixed shape."""

    __slots__ = ("_entries", "cols", "rows")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"Matrix shape must be non-negative, got {rows}x{cols}.")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], int] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeMismatch(f"Entry ({r}, {c}) is outside a {rows}x{cols} matrix.")
            if v:
                clean[(r, c)] = int(v)
        self._entries = clean

    # -- constructors --

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = len(data)
        width = len(data[0]) if rows else (cols or 0)
        if any(len(row) != width for row in data):
            raise ShapeMismatch("Dense matrix rows have different lengths.")
        entries = {(r, c): int(v) for r, row in enumerate(data) for c, v in enumerate(row) if v}
        return cls(rows, width, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, int]]) -> IntMatrix:
        entries = {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}
        return cls(rows, len(columns), entries)

    @classmethod
    def from_rows(cls, cols: int, row_maps: Sequence[Mapping[int, int]]) -> IntMatrix:
        entries = {(r, c): v for r, row in enumerate(row_maps) for c, v in row.items()}
        return cls(len(row_maps), cols, entries)

    # -- views --

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._entries.items()))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._entries.get(key, 0)

    def is_zero(self) -> bool:
        return not self._entries

    def row_dicts(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = defaultdict(dict)
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return dict(out)

    def col_dicts(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = defaultdict(dict)
        for (r, c), v in self._entries.items():
            out[c][r] = v
        return dict(out)

    def column(self, c: int) -> dict[int, int]:
        return {r: v for (r, cc), v in self._entries.items() if cc == c}

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    # -- arithmetic --

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"Cannot multiply {self.shape} by {other.shape}.")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for (r, k), v in self._entries.items():
            for c, w in right.get(k, {}).items():
                acc[(r, c)] += v * w
        return IntMatrix(self.rows, other.cols, acc)

    def matvec(self, vec: Vector) -> list[int]:
        x = _as_sparse(vec)
        out = [0] * self.rows
        for (r, c), v in self._entries.items():
            if c in x:
                out[r] += v * x[c]
        return out

    def mod(self, p: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, {k: v % p for k, v in self._entries.items()})

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> IntMatrix:
        """Matrix whose row i is this matrix's row ``row_order[i]`` (same for columns)."""
        rpos = {r: i for i, r in enumerate(row_order)}
        cpos = {c: j for j, c in enumerate(col_order)}
        return IntMatrix(
            self.rows, self.cols, {(rpos[r], cpos[c]): v for (r, c), v in self._entries.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# -- abelian groups -----------------------------------------------------------


_TERM = re.compile(r"^Z(?:_(?:\{(\d+)\}|(\d+)))?(?:\^(?:\{(\d+)\}|(\d+)))?$")


@dataclass(frozen=True, order=True)
class AbGroup:
    """Z^free_rank + Z_{d1} + ... with d1 | d2 | ... and every d > 1."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError(f"free_rank must be >= 0, got {self.free_rank}.")
        t = tuple(int(d) for d in self.torsion)
        if any(d <= 1 for d in t):
            raise ValueError(f"Invariant factors must be > 1, got {list(t)}; use from_factors.")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"Invariant factors must form a divisibility chain, got {list(t)}.")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_factors(cls, free_rank: int, factors: Iterable[int]) -> AbGroup:
        """Regroup arbitrary cyclic orders into invariant factors (0 counts as free)."""
        exps: dict[int, list[int]] = defaultdict(list)
        for d in factors:
            d = abs(int(d))
            if d == 0:
                free_rank += 1
                continue
            for p, e in factorint(d).items():
                exps[p].append(e)
        length = max((len(v) for v in exps.values()), default=0)
        chain = [1] * length
        for p, es in exps.items():
            es.sort(reverse=True)
            for k, e in enumerate(es):
                chain[length - 1 - k] *= p**e
        return cls(free_rank, tuple(d for d in chain if d > 1))

    @classmethod
    def parse(cls, text: str) -> AbGroup:
        """Read ``"Z^4 + Z_2^2 + Z_8"`` or ``"0"``.

        ``+``, ``⊕`` and ``(+)`` all separate terms.
        """
        s = text.replace("⊕", "+").replace("(+)", "+").replace(" ", "")
        if s in ("0", ""):
            return cls()
        free = 0
        factors: list[int] = []
        for term in s.split("+"):
            m = _TERM.match(term)
            if not m:
                raise ValueError(f"Cannot parse group term {term!r} in {text!r}.")
            order = m.group(1) or m.group(2)
            mult = int(m.group(3) or m.group(4) or 1)
            if order is None:
                free += mult
            else:
                factors.extend([int(order)] * mult)
        return cls.from_factors(free, factors)

    def direct_sum(self, other: AbGroup) -> AbGroup:
        return AbGroup.from_factors(self.free_rank + other.free_rank, self.torsion + other.torsion)

    __add__ = direct_sum

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def render(self) -> str:
        parts: list[str] = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d in sorted(set(self.torsion)):
            k = self.torsion.count(d)
            parts.append(f"Z_{d}" if k == 1 else f"Z_{d}^{k}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict[str, object]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        return self.render()


# -- Smith normal form --------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """D = U @ A @ V; ``U_inv``/``V_inv`` are the inverse transforms."""

    shape: tuple[int, int]
    diagonal: tuple[int, ...]
    U: IntMatrix | None = None
    V: IntMatrix | None = None
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    @property
    def D(self) -> IntMatrix:
        rows, cols = self.shape
        return IntMatrix(rows, cols, {(i, i): d for i, d in enumerate(self.diagonal)})

    @property
    def has_transforms(self) -> bool:
        return self.U is not None


class _Eliminator:
    def __init__(self, A: IntMatrix, track: bool, markowitz: bool):
        self.track = track
        self.markowitz = markowitz
        self.nrows, self.ncols = A.shape
        self.rows: dict[int, dict[int, int]] = A.row_dicts()
        self.cols: dict[int, set[int]] = defaultdict(set)
        for r, row in self.rows.items():
            for c in row:
                self.cols[c].add(r)
        self.pivots: list[list[int]] = []
        if track:
            self.u_rows = {i: {i: 1} for i in range(self.nrows)}
            self.uinv_cols = {i: {i: 1} for i in range(self.nrows)}
            self.v_cols = {j: {j: 1} for j in range(self.ncols)}
            self.vinv_rows = {j: {j: 1} for j in range(self.ncols)}

    # -- transform bookkeeping --

    def _track_row_add(self, dst: int, src: int, q: int) -> None:
        _axpy(self.u_rows[dst], self.u_rows[src], q)
        _axpy(self.uinv_cols[src], self.uinv_cols[dst], -q)

    def _track_col_add(self, dst: int, src: int, q: int) -> None:
        _axpy(self.v_cols[dst], self.v_cols[src], q)
        _axpy(self.vinv_rows[src], self.vinv_rows[dst], -q)

    def _track_row_neg(self, r: int) -> None:
        for table in (self.u_rows[r], self.uinv_cols[r]):
            for k in table:
                table[k] = -table[k]

    # -- active-matrix operations --

    def _add_row(self, dst: int, src: int, q: int) -> None:
        dst_row = self.rows[dst]
        for c, v in self.rows[src].items():
            new = dst_row.get(c, 0) + q * v
            if new:
                if c not in dst_row:
                    self.cols[c].add(dst)
                dst_row[c] = new
            else:
                del dst_row[c]
                self.cols[c].discard(dst)
        if not dst_row:
            del self.rows[dst]
        if self.track:
            self._track_row_add(dst, src, q)

    def _add_col(self, dst: int, src: int, q: int) -> None:
        for r in list(self.cols[src]):
            row = self.rows[r]
            new = row.get(dst, 0) + q * row[src]
            if new:
                row[dst] = new
                self.cols[dst].add(r)
            else:
                row.pop(dst, None)
                self.cols[dst].discard(r)
        if not self.cols[dst]:
            del self.cols[dst]
        if self.track:
            self._track_col_add(dst, src, q)

    def _retire(self, r: int, c: int) -> None:
        self.pivots.append([r, c, self.rows[r][c]])
        for cc in self.rows.pop(r):
            bucket = self.cols[cc]
            bucket.discard(r)
            if not bucket:
                del self.cols[cc]

    def _choose_pivot(self) -> tuple[int, int]:
        best: tuple[int, int] = (-1, -1)
        best_key: tuple[int, int] | None = None
        for r, row in self.rows.items():
            lr = len(row) - 1
            for c, v in row.items():
                cost = lr * (len(self.cols[c]) - 1) if self.markowitz else 0
                key = (abs(v), cost)
                if best_key is None or key < best_key:
                    best, best_key = (r, c), key
                    if key == (1, 0):
                        return best
        return best

    def _reduce_at(self, r: int, c: int) -> None:
        rows, cols = self.rows, self.cols
        while True:
            p = rows[r][c]
            for r2 in list(cols[c]):
                if r2 != r:
                    q = rows[r2][c] // p
                    if q:
                        self._add_row(r2, r, -q)
            if len(cols[c]) > 1:
                r = min((x for x in cols[c] if x != r), key=lambda x: abs(rows[x][c]))
                continue
            row = rows[r]
            if not self.track and all(v % p == 0 for v in row.values()):
                break
            for c2 in list(row):
                if c2 != c:
                    q = row[c2] // p
                    if q:
                        self._add_col(c2, c, -q)
            if len(row) > 1:
                c = min((x for x in row if x != c), key=lambda x: abs(row[x]))
                continue
            break
        self._retire(r, c)

    def _fix_pair(self, i: int, j: int) -> None:
        """Replace pivots (a, b) with (gcd, lcm) by explicit unimodular ops on their 2x2 block."""
        ri, ci, a = self.pivots[i]
        rj, cj, b = self.pivots[j]
        m = {(ri, ci): a, (ri, cj): b, (rj, ci): 0, (rj, cj): b}
        self._track_row_add(ri, rj, 1)
        while m[(ri, ci)] and m[(ri, cj)]:
            if abs(m[(ri, ci)]) >= abs(m[(ri, cj)]):
                dst, src = ci, cj
            else:
                dst, src = cj, ci
            q = m[(ri, dst)] // m[(ri, src)]
            for rr in (ri, rj):
                m[(rr, dst)] -= q * m[(rr, src)]
            self._track_col_add(dst, src, -q)
        gcol, ocol = (ci, cj) if m[(ri, ci)] else (cj, ci)
        g = m[(ri, gcol)]
        q = m[(rj, gcol)] // g
        if q:
            m[(rj, ocol)] -= q * m[(ri, ocol)]
            self._track_row_add(rj, ri, -q)
        self.pivots[i] = [ri, gcol, g]
        self.pivots[j] = [rj, ocol, m[(rj, ocol)]]

    def _normalize_signs(self) -> None:
        for piv in self.pivots:
            if piv[2] < 0:
                piv[2] = -piv[2]
                if self.track:
                    self._track_row_neg(piv[0])

    def run(self) -> SNFResult:
        while self.rows:
            self._reduce_at(*self._choose_pivot())
        self._normalize_signs()
        self.pivots.sort(key=lambda piv: piv[2])
        nonunit = [k for k, piv in enumerate(self.pivots) if piv[2] != 1]
        for x, i in enumerate(nonunit):
            for j in nonunit[x + 1 :]:
                a, b = self.pivots[i][2], self.pivots[j][2]
                if b % a == 0:
                    continue
                if self.track:
                    self._fix_pair(i, j)
                    self._normalize_signs()
                else:
                    self.pivots[i][2] = math.gcd(a, b)
                    self.pivots[j][2] = a * b // math.gcd(a, b)
        diagonal = tuple(piv[2] for piv in self.pivots)
        shape = (self.nrows, self.ncols)
        if not self.track:
            return SNFResult(shape=shape, diagonal=diagonal)

        pivot_rows = [piv[0] for piv in self.pivots]
        pivot_cols = [piv[1] for piv in self.pivots]
        taken_r, taken_c = set(pivot_rows), set(pivot_cols)
        row_order = pivot_rows + [r for r in range(self.nrows) if r not in taken_r]
        col_order = pivot_cols + [c for c in range(self.ncols) if c not in taken_c]
        U = IntMatrix.from_rows(self.nrows, [self.u_rows[r] for r in row_order])
        U_inv = IntMatrix.from_columns(self.nrows, [self.uinv_cols[r] for r in row_order])
        V = IntMatrix.from_columns(self.ncols, [self.v_cols[c] for c in col_order])
        V_inv = IntMatrix.from_rows(self.ncols, [self.vinv_rows[c] for c in col_order])
        return SNFResult(shape=shape, diagonal=diagonal, U=U, V=V, U_inv=U_inv, V_inv=V_inv)


def snf(
    A: IntMatrix, transforms: bool = False, dense_threshold: int = DENSE_THRESHOLD
) -> SNFResult:
    """Smith normal form of ``A``; with ``transforms`` also U, V and their inverses."""
    markowitz = A.rows * A.cols > dense_threshold
    return _Eliminator(A, track=transforms, markowitz=markowitz).run()


def rank_mod_p(A: IntMatrix, p: int) -> int:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime.", witness=p)
    if A.is_zero():
        return 0
    K = GF(p)
    rows: dict[int, dict[int, object]] = defaultdict(dict)
    for (r, c), v in A.items():
        if v % p:
            rows[r][c] = K(v)
    if not rows:
        return 0
    return DomainMatrix(dict(rows), A.shape, K).rank()


# -- homology -----------------------------------------------------------------


def check_complex(boundary_out: IntMatrix, boundary_in: IntMatrix) -> None:
    if boundary_out.cols != boundary_in.rows:
        raise ShapeMismatch(
            f"boundary_out has {boundary_out.cols} columns but boundary_in has "
            f"{boundary_in.rows} rows; both must index the same chain group."
        )
    product = boundary_out @ boundary_in
    if not product.is_zero():
        (r, c), v = next(product.items())
        raise NotAComplex(
            f"Composite boundary is nonzero: entry ({r}, {c}) = {v}.", witness=(r, c, v)
        )


def homology_from_snf(chain_rank: int, rank_out: int, snf_in: SNFResult) -> AbGroup:
    """ker/im from the rank of the outgoing boundary and the SNF of the incoming one."""
    free = chain_rank - rank_out - snf_in.rank
    return AbGroup(free, snf_in.invariant_factors)


def homology(boundary_out: IntMatrix, boundary_in: IntMatrix, check: bool = True) -> AbGroup:
    if check:
        check_complex(boundary_out, boundary_in)
    return homology_from_snf(boundary_out.cols, snf(boundary_out).rank, snf(boundary_in))


def homology_mod_p(
    boundary_out: IntMatrix, boundary_in: IntMatrix, p: int, check: bool = True
) -> int:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime; mod-p homology needs a prime field.", witness=p)
    if check:
        check_complex(boundary_out, boundary_in)
    return boundary_out.cols - rank_mod_p(boundary_out, p) - rank_mod_p(boundary_in, p)


@dataclass(frozen=True)
class HomologyPresentation:
    """Maps cycles of one degree to canonical coordinates of their homology class.

    Coordinates are ``(t_1, ..., t_k, f_1, ..., f_r)``: residues modulo each
    invariant factor followed by free integer coordinates.
    """

    chain_rank: int
    group: AbGroup
    _rank_out: int
    _vinv_rows: tuple[dict[int, int], ...]
    _kernel_cols: tuple[dict[int, int], ...] = field(repr=False)
    _ub_rows: tuple[dict[int, int], ...] = field(repr=False)
    _torsion_slots: tuple[tuple[int, int], ...] = field(repr=False)
    _free_slots: tuple[int, ...] = field(repr=False)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * (len(self._torsion_slots) + len(self._free_slots))

    def cycle_basis(self) -> list[dict[int, int]]:
        """Basis of the cycle lattice as sparse chain vectors."""
        return [dict(col) for col in self._kernel_cols]

    def class_of(self, z: Vector) -> tuple[int, ...]:
        x = _as_sparse(z)
        y_full = []
        for row in self._vinv_rows:
            y_full.append(sum(v * x[k] for k, v in row.items() if k in x))
        bad = next((i for i, v in enumerate(y_full[: self._rank_out]) if v), None)
        if bad is not None:
            raise NotACycle(
                "Vector is not in the kernel of the outgoing boundary.", witness=_as_sparse(z)
            )
        y = y_full[self._rank_out :]
        c = [sum(v * y[k] for k, v in row.items()) for row in self._ub_rows]
        tors = tuple(c[i] % d for i, d in self._torsion_slots)
        free = tuple(c[i] for i in self._free_slots)
        return tors + free

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        k = len(self._torsion_slots)
        tors = tuple((x + y) % d for (x, y, (_, d)) in zip(a[:k], b[:k], self._torsion_slots))
        return tors + tuple(x + y for x, y in zip(a[k:], b[k:]))


def presentation(
    boundary_out: IntMatrix, boundary_in: IntMatrix, check: bool = True
) -> HomologyPresentation:
    if check:
        check_complex(boundary_out, boundary_in)
    n = boundary_out.cols
    sa = snf(boundary_out, transforms=True)
    r = sa.rank
    assert sa.V_inv is not None and sa.V is not None
    vinv = sa.V_inv.row_dicts()
    vinv_rows = tuple(vinv.get(i, {}) for i in range(n))
    vcols = sa.V.col_dicts()
    kernel_cols = tuple(vcols.get(j, {}) for j in range(r, n))

    # Incoming boundary in kernel coordinates: rows r.. of V_inv @ B.
    b_rows = boundary_in.row_dicts()
    b_kernel: dict[tuple[int, int], int] = defaultdict(int)
    for i in range(r, n):
        for k, v in vinv_rows[i].items():
            for c, w in b_rows.get(k, {}).items():
                b_kernel[(i - r, c)] += v * w
    B_prime = IntMatrix(n - r, boundary_in.cols, b_kernel)
    sb = snf(B_prime, transforms=True)
    assert sb.U is not None
    ub = sb.U.row_dicts()
    ub_rows = tuple(ub.get(i, {}) for i in range(n - r))

    torsion_slots = tuple((i, d) for i, d in enumerate(sb.diagonal) if d > 1)
    free_slots = tuple(range(sb.rank, n - r))
    group = AbGroup(len(free_slots), tuple(d for _, d in torsion_slots))
    return HomologyPresentation(
        chain_rank=n,
        group=group,
        _rank_out=r,
        _vinv_rows=vinv_rows,
        _kernel_cols=kernel_cols,
        _ub_rows=ub_rows,
        _torsion_slots=torsion_slots,
        _free_slots=free_slots,
    )
