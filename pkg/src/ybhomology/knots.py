"""Oriented link diagrams, biquandle colorings and the homological state sum.

Layer: Link Invariants
May only import from: .complex, .smith, .algebra, .exceptions

A diagram is a list of signed crossings over semi-arc ids. Every crossing
is stored with its incoming pair ``(in_l, in_r)`` and outgoing pair
``(out_l, out_r)``; orientation runs from in to out and the strand entering
at ``in_l`` leaves at ``out_r``. A coloring satisfies

    positive crossing:  R(in_l, in_r) = (out_l, out_r)
    negative crossing:  R(out_l, out_r) = (in_l, in_r)

so both cases reduce to ``R(src) = dst`` with ``src``/``dst`` swapped for
negative crossings. The colored diagram represents the degree-2 normalized
chain ``sum sign * src``; its homology class, collected over all colorings,
is the invariant.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any
from typing import Iterable
from typing import Mapping
from typing import Sequence

from .algebra import FiniteYB
from .complex import Theory
from .complex import Word
from .complex import apply_boundary
from .complex import boundary_matrix
from .complex import is_degenerate
from .exceptions import BadSign
from .exceptions import DanglingSemiArc
from .exceptions import DiagramError
from .exceptions import DuplicateSlot
from .exceptions import NotABiquandle
from .exceptions import NotACycle
from .smith import AbGroup
from .smith import HomologyPresentation
from .smith import IntMatrix
from .smith import presentation
from .smith import snf

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"

Coloring = tuple[int, ...]
_SLOTS = ("in_l", "in_r", "out_l", "out_r")


@dataclass(frozen=True)
class Crossing:
    sign: int
    in_l: int
    in_r: int
    out_l: int
    out_r: int

    @property
    def src(self) -> tuple[int, int]:
        return (self.in_l, self.in_r) if self.sign > 0 else (self.out_l, self.out_r)

    @property
    def dst(self) -> tuple[int, int]:
        return (self.out_l, self.out_r) if self.sign > 0 else (self.in_l, self.in_r)

    def to_dict(self) -> dict[str, int]:
        return {
            "sign": self.sign,
            "in_l": self.in_l,
            "in_r": self.in_r,
            "out_l": self.out_l,
            "out_r": self.out_r,
        }


@dataclass(frozen=True)
class Diagram:
    semi_arcs: int
    crossings: tuple[Crossing, ...]
    components: int
    name: str | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {}
        if self.name:
            data["name"] = self.name
        data["semi_arcs"] = self.semi_arcs
        data["crossings"] = [c.to_dict() for c in self.crossings]
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


# -- parsing ------------------------------------------------------------------


def _count_components(semi_arcs: int, crossings: Sequence[Crossing]) -> int:
    parent = list(range(semi_arcs))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in crossings:
        for a, b in ((c.in_l, c.out_r), (c.in_r, c.out_l)):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(x) for x in range(semi_arcs)})


def build_diagram(
    semi_arcs: int, crossings: Iterable[Crossing], name: str | None = None
) -> Diagram:
    """Validate crossings against the semi-arc count and derive components."""
    crossings = tuple(crossings)
    if not isinstance(semi_arcs, int) or semi_arcs < 1:
        raise DiagramError(
            f"semi_arcs must be a positive integer, got {semi_arcs!r}.", location="semi_arcs"
        )
    seen_in: dict[int, str] = {}
    seen_out: dict[int, str] = {}
    for k, c in enumerate(crossings):
        where = f"crossings[{k}]"
        if c.sign not in (1, -1):
            raise BadSign(f"sign must be +1 or -1, got {c.sign!r}.", location=where)
        for slot in _SLOTS:
            sid = getattr(c, slot)
            if not isinstance(sid, int) or not 0 <= sid < semi_arcs:
                raise DanglingSemiArc(
                    f"{slot} references semi-arc {sid!r} but the diagram has "
                    f"{semi_arcs} (ids 0..{semi_arcs - 1}).",
                    location=where,
                )
            seen = seen_in if slot.startswith("in") else seen_out
            if sid in seen:
                raise DuplicateSlot(
                    f"semi-arc {sid} is used as {slot} here and already in {seen[sid]}.",
                    location=where,
                )
            seen[sid] = f"{where}.{slot}"
    for sid in sorted(set(seen_in) ^ set(seen_out)):
        role = "enters" if sid in seen_in else "leaves"
        other = "leaves" if sid in seen_in else "enters"
        raise DanglingSemiArc(
            f"semi-arc {sid} {role} a crossing but never {other} one; every semi-arc must "
            "appear exactly once among in-slots and once among out-slots.",
            location=(seen_in.get(sid) or seen_out[sid]),
        )
    return Diagram(
        semi_arcs=semi_arcs,
        crossings=crossings,
        components=_count_components(semi_arcs, crossings),
        name=name,
    )


def diagram_from_dict(data: Any) -> Diagram:
    if not isinstance(data, Mapping):
        raise DiagramError('A diagram is a JSON object: {"semi_arcs": k, "crossings": [...]}.')
    if "semi_arcs" not in data or "crossings" not in data:
        raise DiagramError("Diagram is missing 'semi_arcs' or 'crossings'.")
    if data.get("triple_points"):
        raise DiagramError(
            "Triple-point records describe knotted surfaces, which are not supported.",
            location="triple_points",
        )
    crossings = []
    for k, rec in enumerate(data["crossings"]):
        if not isinstance(rec, Mapping):
            raise DiagramError("crossing must be an object.", location=f"crossings[{k}]")
        missing = [s for s in ("sign", *_SLOTS) if s not in rec]
        if missing:
            raise DiagramError(
                f"crossing is missing {', '.join(missing)}.", location=f"crossings[{k}]"
            )
        crossings.append(Crossing(*(rec[s] for s in ("sign", *_SLOTS))))
    return build_diagram(data["semi_arcs"], crossings, name=data.get("name"))


def parse_diagram(text: str) -> Diagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramError(f"not valid JSON ({e.msg}).", location=f"line {e.lineno}") from e
    return diagram_from_dict(data)


def load_diagram(path: str | Path) -> Diagram:
    return parse_diagram(Path(path).read_text(encoding="utf-8"))


def closed_braid(word: Sequence[int], strands: int, name: str | None = None) -> Diagram:
    """Closure of a braid.

    Generator ``i`` crosses positions i and i+1 positively, ``-i`` negatively.
    """
    if strands < 1:
        raise DiagramError(f"A braid needs at least one strand, got {strands}.")
    last: dict[int, int] = {}
    for k, g in enumerate(word):
        i = abs(g)
        if not 1 <= i < strands:
            raise DiagramError(f"generator {g} needs 1 <= |g| < {strands}.", location=f"word[{k}]")
        last[i - 1] = last[i] = k
    current = list(range(strands))
    next_id = strands
    crossings = []
    for k, g in enumerate(word):
        i = abs(g) - 1
        outs = []
        for pos in (i, i + 1):
            if last[pos] == k:
                outs.append(pos)
            else:
                outs.append(next_id)
                next_id += 1
        crossings.append(Crossing(1 if g > 0 else -1, current[i], current[i + 1], outs[0], outs[1]))
        current[i], current[i + 1] = outs
    return build_diagram(next_id, crossings, name=name)


@dataclass(frozen=True)
class CorpusEntry:
    file: str
    link: str
    braid: tuple[int, ...]
    strands: int
    diagram: Diagram


def load_corpus(directory: str | Path = CORPUS_DIR) -> list[CorpusEntry]:
    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text(encoding="utf-8"))
    return [
        CorpusEntry(
            file=rec["file"],
            link=rec["link"],
            braid=tuple(rec["braid"]),
            strands=rec["strands"],
            diagram=load_diagram(directory / rec["file"]),
        )
        for rec in manifest["diagrams"]
    ]


# -- colorings ----------------------------------------------------------------


def _require_biquandle(X: FiniteYB) -> None:
    if not (X.is_bijective and X.has_bar):
        raise NotABiquandle(
            "Colorings need a biquandle: R must be invertible and every element needs a "
            "unique fixed-pair partner. Run `ybh verify` for the failing axiom."
        )


def _propagate(D: Diagram, X: FiniteYB, colors: list[int]) -> bool:
    """Fill forced colors in place; False on a contradiction."""
    changed = True
    while changed:
        changed = False
        for c in D.crossings:
            (s0, s1), (d0, d1) = c.src, c.dst
            a, b, p, q = colors[s0], colors[s1], colors[d0], colors[d1]
            if a < 0 and b < 0 and p >= 0 and q >= 0:
                a, b = X.apply_inverse(p, q)
            if a >= 0 and b < 0 and p >= 0:
                b = X.left_divide(a, p)
            if a < 0 and b >= 0 and q >= 0:
                a = X.right_divide(b, q)
            if a is None or b is None or a < 0 or b < 0:
                continue
            want = X.apply(a, b)
            for sid, val in ((s0, a), (s1, b), (d0, want[0]), (d1, want[1])):
                if colors[sid] < 0:
                    colors[sid] = val
                    changed = True
                elif colors[sid] != val:
                    return False
    return True


def colorings(D: Diagram, X: FiniteYB) -> list[Coloring]:
    """Every biquandle coloring, as tuples indexed by semi-arc id, in lexicographic order."""
    _require_biquandle(X)
    found: list[Coloring] = []

    def search(colors: list[int]) -> None:
        if not _propagate(D, X, colors):
            return
        try:
            sid = colors.index(-1)
        except ValueError:
            found.append(tuple(colors))
            return
        for value in range(X.size):
            trial = list(colors)
            trial[sid] = value
            search(trial)

    search([-1] * D.semi_arcs)
    return sorted(found)


def is_coloring(D: Diagram, X: FiniteYB, C: Sequence[int]) -> bool:
    return all(X.apply(C[c.src[0]], C[c.src[1]]) == (C[c.dst[0]], C[c.dst[1]]) for c in D.crossings)


# -- invariants ---------------------------------------------------------------


def represented_cycle(D: Diagram, C: Sequence[int], X: FiniteYB) -> dict[Word, int]:
    """The normalized degree-2 chain of a colored diagram, as ``{(a, b): coefficient}``."""
    chain: Counter[Word] = Counter()
    for c in D.crossings:
        pair = (C[c.src[0]], C[c.src[1]])
        if not is_degenerate(X, pair):
            chain[pair] += c.sign
    chain = Counter({w: v for w, v in chain.items() if v})
    leftover = apply_boundary(X, Theory.NYB, dict(chain))
    if leftover:
        raise NotACycle(
            f"Colored diagram chain {dict(chain)} has nonzero boundary {leftover}; "
            "the crossing convention and the coloring disagree.",
            witness=leftover,
        )
    return dict(sorted(chain.items()))


@dataclass(frozen=True)
class InvariantValue:
    count: int
    group: AbGroup
    classes: tuple[tuple[tuple[int, ...], int], ...]

    def render(self) -> str:
        if not self.classes:
            return "0"
        terms = []
        for coords, mult in self.classes:
            label = "0" if not any(coords) else ",".join(map(str, coords))
            terms.append(f"{mult}*[{label}]")
        return " + ".join(terms)

    def to_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "group": self.group.to_dict(),
            "classes": [{"class": list(coords), "multiplicity": m} for coords, m in self.classes],
        }


def second_homology_presentation(X: FiniteYB) -> tuple[HomologyPresentation, tuple[Word, ...]]:
    """Presentation of H_2 of the normalized complex and the degree-2 basis it indexes."""
    d2 = boundary_matrix(X, Theory.NYB, 2)
    d3 = boundary_matrix(X, Theory.NYB, 3, assume_verified=True)
    return presentation(d2.matrix, d3.matrix, check=False), d2.col_basis


def homological_invariant(
    D: Diagram,
    X: FiniteYB,
    pres: tuple[HomologyPresentation, tuple[Word, ...]] | None = None,
) -> InvariantValue:
    _require_biquandle(X)
    hp, basis = pres if pres is not None else second_homology_presentation(X)
    index = {w: k for k, w in enumerate(basis)}
    tally: Counter[tuple[int, ...]] = Counter()
    cols = colorings(D, X)
    for C in cols:
        chain = represented_cycle(D, C, X)
        tally[hp.class_of({index[w]: v for w, v in chain.items()})] += 1
    return InvariantValue(count=len(cols), group=hp.group, classes=tuple(sorted(tally.items())))


# -- enveloping group ---------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def render(self, fmt: str = "text") -> str:
        g = self.generators
        if fmt == "text":
            rels = ", ".join(f"{g[a]}{g[b]} = {g[c]}{g[d]}" for (a, b), (c, d) in self.relations)
            gens = ", ".join(g)
            return f"< {gens} | {rels} >" if rels else f"< {gens} >"
        if fmt == "gap":
            lines = [f"F := FreeGroup({', '.join(json.dumps(x) for x in g)});;"]
            lines += [f"{x} := F.{k + 1};;" for k, x in enumerate(g)]
            rels = ",\n  ".join(
                f"{g[a]}*{g[b]}*({g[c]}*{g[d]})^-1" for (a, b), (c, d) in self.relations
            )
            lines.append(f"G := F / [\n  {rels}\n];;" if rels else "G := F;;")
            return "\n".join(lines)
        raise ValueError(f"Unknown presentation format {fmt!r}; use text or gap.")

    def to_dict(self) -> dict[str, Any]:
        return {
            "generators": list(self.generators),
            "relations": [[list(lhs), list(rhs)] for lhs, rhs in self.relations],
        }


def envgroup_presentation(X: FiniteYB) -> GroupPresentation:
    """Generators g_a and relations g_a g_b = g_R1(a,b) g_R2(a,b).

    Duplicate relations are merged and trivial ones dropped.
    """
    names = X.names if X.names is not None else tuple(f"g{a}" for a in range(X.size))
    seen = set()
    relations = []
    for a in range(X.size):
        for b in range(X.size):
            rhs = X.apply(a, b)
            if rhs == (a, b):
                continue
            key = tuple(sorted([(a, b), rhs]))
            if key in seen:
                continue
            seen.add(key)
            relations.append(((a, b), rhs))
    return GroupPresentation(generators=tuple(names), relations=tuple(relations))


def envgroup_abelianization(X: FiniteYB) -> AbGroup:
    """Z^N modulo a + b - R1(a, b) - R2(a, b)."""
    columns = []
    for (a, b), (c, d) in envgroup_presentation(X).relations:
        col: Counter[int] = Counter()
        col[a] += 1
        col[b] += 1
        col[c] -= 1
        col[d] -= 1
        columns.append({k: v for k, v in col.items() if v})
    result = snf(IntMatrix.from_columns(X.size, columns))
    return AbGroup(X.size - result.rank, result.invariant_factors)
