"""Finite set-theoretic Yang-Baxter operators.

Layer: Core Abstraction
May only import from: .exceptions

A ``FiniteYB`` is an operator R = (R1, R2) on the carrier {0, ..., N-1},
stored as two dense N x N tables. The inverse of R and the fixed-pair map
a -> bar(a) (the unique b with R(a, b) = (a, b)) are computed once at
construction when they exist; their absence is recorded as ``None``.

Nothing here assumes an axiom holds. ``verify_axioms`` checks the
Yang-Baxter equation and the birack/biquandle conditions exhaustively and
returns an ``AxiomReport`` carrying a witness for every failed check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any
from typing import Sequence

import numpy as np

from .exceptions import BiquandleFileError
from .exceptions import ConditionFails
from .exceptions import EntryOutOfRange
from .exceptions import NotAUnit
from .exceptions import NotBijective
from .exceptions import ShapeMismatch

Pair = tuple[int, int]


def _frozen(table: np.ndarray) -> np.ndarray:
    table = np.ascontiguousarray(table, dtype=np.int64)
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FiniteYB:
    """R(a, b) = (r1[a, b], r2[a, b]) on the carrier 0..size-1."""

    r1: np.ndarray
    r2: np.ndarray
    r_inv: np.ndarray | None
    bar: np.ndarray | None
    names: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return int(self.r1.shape[0])

    @property
    def is_bijective(self) -> bool:
        return self.r_inv is not None

    @property
    def has_bar(self) -> bool:
        return self.bar is not None

    # Python-list views for the hot loops of the chain and coloring code.

    @cached_property
    def _r1(self) -> list[list[int]]:
        return self.r1.tolist()

    @cached_property
    def _r2(self) -> list[list[int]]:
        return self.r2.tolist()

    @cached_property
    def _bar(self) -> list[int] | None:
        return None if self.bar is None else self.bar.tolist()

    @cached_property
    def _left_div(self) -> dict[Pair, int] | None:
        n = self.size
        table = {(a, self._r1[a][b]): b for a in range(n) for b in range(n)}
        return table if len(table) == n * n else None

    @cached_property
    def _right_div(self) -> dict[Pair, int] | None:
        n = self.size
        table = {(b, self._r2[a][b]): a for a in range(n) for b in range(n)}
        return table if len(table) == n * n else None

    def apply(self, a: int, b: int) -> Pair:
        return self._r1[a][b], self._r2[a][b]

    def apply_inverse(self, c: int, d: int) -> Pair:
        if self.r_inv is None:
            raise NotBijective("R has no inverse; construct it from a bijective table.")
        a, b = self.r_inv[c, d]
        return int(a), int(b)

    def fixed_partner(self, a: int) -> int | None:
        bar = self._bar
        return None if bar is None else bar[a]

    def left_divide(self, a: int, c: int) -> int | None:
        """The unique b with R1(a, b) = c, or None when R1 is not left-invertible."""
        table = self._left_div
        return None if table is None else table[(a, c)]

    def right_divide(self, b: int, d: int) -> int | None:
        """The unique a with R2(a, b) = d, or None when R2 is not right-invertible."""
        table = self._right_div
        return None if table is None else table[(b, d)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteYB):
            return NotImplemented
        return (
            np.array_equal(self.r1, other.r1)
            and np.array_equal(self.r2, other.r2)
            and self.names == other.names
        )

    def __hash__(self) -> int:
        return hash((self.r1.tobytes(), self.r2.tobytes(), self.names))

    def __repr__(self) -> str:
        kind = "biquandle" if self.has_bar else ("bijective" if self.is_bijective else "map")
        return f"FiniteYB(size={self.size}, {kind})"


@dataclass(frozen=True)
class AxiomReport:
    ybe_holds: bool
    ybe_witness: tuple[int, int, int] | None
    r_bijective: bool
    bijective_witness: tuple[Pair, Pair] | None
    left_invertible: bool
    left_witness: tuple[int, int, int] | None
    right_invertible: bool
    right_witness: tuple[int, int, int] | None
    biquandle: bool
    fixed_pair_witness: int | None
    fixed_pair_count: int | None
    dual_fixed_pairs: bool | None = None
    dual_witness: int | None = None

    @property
    def is_birack(self) -> bool:
        return self.ybe_holds and self.left_invertible and self.right_invertible

    @property
    def is_biquandle(self) -> bool:
        return self.is_birack and self.biquandle

    @property
    def all_hold(self) -> bool:
        return self.is_biquandle and self.r_bijective and bool(self.dual_fixed_pairs)

    def failures(self) -> list[str]:
        out: list[str] = []
        if not self.ybe_holds:
            out.append(f"Yang-Baxter equation fails at triple {self.ybe_witness}")
        if not self.r_bijective:
            p, q = self.bijective_witness or ((), ())
            out.append(f"R is not bijective: R{p} = R{q}")
        if not self.left_invertible:
            a, b1, b2 = self.left_witness or (None, None, None)
            out.append(f"R1 is not left-invertible: R1({a},{b1}) = R1({a},{b2})")
        if not self.right_invertible:
            b, a1, a2 = self.right_witness or (None, None, None)
            out.append(f"R2 is not right-invertible: R2({a1},{b}) = R2({a2},{b})")
        if not self.biquandle:
            out.append(
                f"element {self.fixed_pair_witness} has {self.fixed_pair_count} "
                "fixed-pair partners (expected exactly one)"
            )
        elif self.dual_fixed_pairs is False:
            out.append(f"element {self.dual_witness} is the right member of != 1 fixed pairs")
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "ybe_holds": self.ybe_holds,
            "ybe_witness": self.ybe_witness,
            "r_bijective": self.r_bijective,
            "bijective_witness": self.bijective_witness,
            "left_invertible": self.left_invertible,
            "left_witness": self.left_witness,
            "right_invertible": self.right_invertible,
            "right_witness": self.right_witness,
            "biquandle": self.biquandle,
            "fixed_pair_witness": self.fixed_pair_witness,
            "dual_fixed_pairs": self.dual_fixed_pairs,
            "dual_witness": self.dual_witness,
        }


# -- construction -----------------------------------------------------------


def _inverse_table(
    r1: np.ndarray, r2: np.ndarray
) -> tuple[np.ndarray | None, tuple[Pair, Pair] | None]:
    n = r1.shape[0]
    codes = (r1 * n + r2).ravel()
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    dup = np.flatnonzero(sorted_codes[1:] == sorted_codes[:-1])
    if dup.size:
        i, j = int(order[dup[0]]), int(order[dup[0] + 1])
        return None, (divmod(i, n), divmod(j, n))
    inv = np.empty((n, n, 2), dtype=np.int64)
    a, b = np.divmod(np.arange(n * n), n)
    inv[r1.ravel(), r2.ravel(), 0] = a
    inv[r1.ravel(), r2.ravel(), 1] = b
    return inv, None


def _fixed_mask(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    n = r1.shape[0]
    idx = np.arange(n)
    return (r1 == idx[:, None]) & (r2 == idx[None, :])


def _bar_table(r1: np.ndarray, r2: np.ndarray) -> np.ndarray | None:
    fixed = _fixed_mask(r1, r2)
    if not np.all(fixed.sum(axis=1) == 1):
        return None
    return np.argmax(fixed, axis=1)


def _build(r1: np.ndarray, r2: np.ndarray, names: tuple[str, ...] | None = None) -> FiniteYB:
    r_inv, _ = _inverse_table(r1, r2)
    bar = _bar_table(r1, r2)
    return FiniteYB(
        r1=_frozen(r1),
        r2=_frozen(r2),
        r_inv=None if r_inv is None else _frozen(r_inv),
        bar=None if bar is None else _frozen(bar),
        names=names,
    )


def make_cyclic(n: int) -> FiniteYB:
    """Cyclic biquandle C_n: R(i, j) = (j + 1, i - 1) mod n."""
    if n < 1:
        raise ValueError(f"Cyclic biquandle order must be >= 1, got {n}.")
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    r1 = np.broadcast_to((j + 1) % n, (n, n)).copy()
    r2 = np.broadcast_to((i - 1) % n, (n, n)).copy()
    return _build(r1, r2)


def make_alexander(n: int, s: int, t: int) -> FiniteYB:
    """Alexander biquandle Z_{n;s,t}: R(a, b) = ((1-s)a + sb, ta + (1-t)b) mod n."""
    if n < 1:
        raise ValueError(f"Alexander biquandle modulus must be >= 1, got {n}.")
    for name, value in (("s", s), ("t", t)):
        if math.gcd(value % n, n) != 1:
            raise NotAUnit(
                f"{name}={value} is not a unit mod {n} (gcd({value % n}, {n}) != 1). "
                "Alexander biquandles need invertible s and t.",
                witness=value,
            )
    if ((1 - s) * (1 - t)) % n:
        raise ConditionFails(
            f"(1-s)(1-t) = {(1 - s) * (1 - t)} is not 0 mod {n} for s={s}, t={t}. "
            "Pick units with (1-s)(1-t) divisible by n, e.g. n=8, s=3, t=5.",
            witness=(n, s, t),
        )
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    r1 = ((1 - s) * a + s * b) % n
    r2 = (t * a + (1 - t) * b) % n
    return _build(r1, r2)


def from_tables(
    r1: Sequence[Sequence[int]] | np.ndarray,
    r2: Sequence[Sequence[int]] | np.ndarray,
    names: Sequence[str] | None = None,
) -> FiniteYB:
    """Build an operator from raw tables. No axiom is assumed; run ``verify_axioms``."""
    try:
        t1 = np.asarray(r1, dtype=np.int64)
        t2 = np.asarray(r2, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise ShapeMismatch(f"Tables must be rectangular integer arrays: {e}") from e
    if t1.ndim != 2 or t1.shape[0] != t1.shape[1] or t1.shape[0] == 0:
        raise ShapeMismatch(f"r1 must be a non-empty square table, got shape {t1.shape}.")
    if t2.shape != t1.shape:
        raise ShapeMismatch(f"r1 has shape {t1.shape} but r2 has shape {t2.shape}.")
    n = t1.shape[0]
    for label, table in (("r1", t1), ("r2", t2)):
        bad = np.argwhere((table < 0) | (table >= n))
        if bad.size:
            a, b = (int(x) for x in bad[0])
            raise EntryOutOfRange(
                f"{label}[{a}][{b}] = {int(table[a, b])} is outside the carrier 0..{n - 1}.",
                witness=(label, a, b),
            )
    if names is not None:
        names = tuple(str(x) for x in names)
        if len(names) != n:
            raise ShapeMismatch(f"Expected {n} element names, got {len(names)}.")
    return _build(t1, t2, names)


def invert_R(X: FiniteYB) -> np.ndarray:
    """Table of R^{-1} as an (N, N, 2) array: R^{-1}(c, d) = inv[c, d]."""
    inv, witness = _inverse_table(X.r1, X.r2)
    if inv is None:
        p, q = witness  # type: ignore[misc]
        raise NotBijective(
            f"R is not bijective on pairs: R{p} = R{q} = {X.apply(*p)}.",
            witness=witness,
        )
    return _frozen(inv)


# -- verification -----------------------------------------------------------


def _first_non_permutation(rows: np.ndarray) -> tuple[int, int, int] | None:
    """First row with a repeated value, as (row, j1, j2) with rows[row, j1] == rows[row, j2]."""
    n = rows.shape[1]
    ok = np.all(np.sort(rows, axis=1) == np.arange(n), axis=1)
    if ok.all():
        return None
    row = int(np.flatnonzero(~ok)[0])
    seen: dict[int, int] = {}
    for j, v in enumerate(rows[row].tolist()):
        if v in seen:
            return row, seen[v], j
        seen[v] = j
    raise AssertionError("unreachable: a non-permutation row has a repeat")


def verify_axioms(X: FiniteYB) -> AxiomReport:
    r1, r2 = X.r1, X.r2
    n = X.size
    a, b, c = np.indices((n, n, n))

    # (R x Id)(Id x R)(R x Id), innermost first
    a1, b1 = r1[a, b], r2[a, b]
    b2, c2 = r1[b1, c], r2[b1, c]
    lhs = (r1[a1, b2], r2[a1, b2], c2)
    # (Id x R)(R x Id)(Id x R)
    b1, c1 = r1[b, c], r2[b, c]
    a2, b2 = r1[a, b1], r2[a, b1]
    rhs = (a2, r1[b2, c1], r2[b2, c1])
    bad = ~((lhs[0] == rhs[0]) & (lhs[1] == rhs[1]) & (lhs[2] == rhs[2]))
    ybe_witness = None
    if bad.any():
        ybe_witness = tuple(int(x) for x in np.argwhere(bad)[0])

    _, bij_witness = _inverse_table(r1, r2)
    left = _first_non_permutation(r1)
    right = _first_non_permutation(r2.T)

    fixed = _fixed_mask(r1, r2)
    per_left = fixed.sum(axis=1)
    fixed_witness = None
    fixed_count = None
    if not np.all(per_left == 1):
        fixed_witness = int(np.flatnonzero(per_left != 1)[0])
        fixed_count = int(per_left[fixed_witness])
    dual = None
    dual_witness = None
    if fixed_witness is None:
        per_right = fixed.sum(axis=0)
        dual = bool(np.all(per_right == 1))
        if not dual:
            dual_witness = int(np.flatnonzero(per_right != 1)[0])

    return AxiomReport(
        ybe_holds=ybe_witness is None,
        ybe_witness=ybe_witness,  # type: ignore[arg-type]
        r_bijective=bij_witness is None,
        bijective_witness=bij_witness,
        left_invertible=left is None,
        left_witness=left,
        right_invertible=right is None,
        right_witness=right,
        biquandle=fixed_witness is None,
        fixed_pair_witness=fixed_witness,
        fixed_pair_count=fixed_count,
        dual_fixed_pairs=dual,
        dual_witness=dual_witness,
    )


# -- file format ------------------------------------------------------------


def to_dict(X: FiniteYB) -> dict[str, Any]:
    data: dict[str, Any] = {"size": X.size, "r1": X.r1.tolist(), "r2": X.r2.tolist()}
    if X.names is not None:
        data["names"] = list(X.names)
    return data


def from_dict(data: Any) -> FiniteYB:
    if not isinstance(data, dict):
        raise BiquandleFileError(
            'A biquandle file is a JSON object: {"size": N, "r1": [[...]], "r2": [[...]]}.'
        )
    missing = [k for k in ("size", "r1", "r2") if k not in data]
    if missing:
        raise BiquandleFileError(f"Biquandle file is missing keys: {', '.join(missing)}.")
    X = from_tables(data["r1"], data["r2"], data.get("names"))
    if X.size != data["size"]:
        raise ShapeMismatch(f"'size' says {data['size']} but the tables are {X.size}x{X.size}.")
    return X


def save_biquandle(X: FiniteYB, path: str | Path) -> None:
    Path(path).write_text(dumps(X), encoding="utf-8")


def dumps(X: FiniteYB) -> str:
    return json.dumps(to_dict(X), separators=(",", ":")) + "\n"


def load_biquandle(path: str | Path) -> FiniteYB:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise BiquandleFileError(f"{path}: not valid JSON ({e}).") from e
    return from_dict(data)
