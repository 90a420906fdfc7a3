"""Builtin biquandle families and biquandle-source resolution.

Layer: Registry
May only import from: .algebra, .exceptions

A biquandle source on the command line is either a path to a biquandle
file or a family name followed by integer parameters:

    cyclic 3
    alexander 8 3 5

To add a family, write a constructor in ``algebra`` and register it in
``_FAMILIES`` below. See docs/biquandle-files.md.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable
from typing import Iterator
from typing import Sequence

from .algebra import FiniteYB
from .algebra import load_biquandle
from .algebra import make_alexander
from .algebra import make_cyclic
from .exceptions import BiquandleFileError

# name -> (constructor, parameter names)
_FAMILIES: dict[str, tuple[Callable[..., FiniteYB], tuple[str, ...]]] = {
    "cyclic": (make_cyclic, ("N",)),
    "alexander": (make_alexander, ("N", "S", "T")),
}

_DOCS_HINT = "See docs/biquandle-files.md for the file format and how to add a family."


def get_family(name: str) -> tuple[Callable[..., FiniteYB], tuple[str, ...]]:
    try:
        return _FAMILIES[name.lower()]
    except KeyError:
        available = ", ".join(sorted(_FAMILIES))
        raise ValueError(
            f"Unknown biquandle family '{name}'. Available families: {available}. {_DOCS_HINT}"
        ) from None


def usage(name: str) -> str:
    _, params = get_family(name)
    return " ".join([name.lower(), *params])


def label(tokens: Sequence[str]) -> str:
    """Canonical spelling of a source: ``["Cyclic", "03"] -> "cyclic 3"``."""
    if len(tokens) == 1 and Path(tokens[0]).suffix:
        return tokens[0]
    head, *rest = tokens
    try:
        return " ".join([head.lower(), *(str(int(x)) for x in rest)])
    except ValueError:
        return " ".join(tokens)


def resolve(tokens: Sequence[str] | str) -> tuple[str, FiniteYB]:
    """Turn a source into ``(label, operator)``; files win over family names."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = list(tokens)
    if not tokens:
        raise ValueError(f"No biquandle given. Pass a file path or e.g. `cyclic 3`. {_DOCS_HINT}")
    if len(tokens) == 1:
        path = Path(tokens[0])
        if path.is_file():
            return tokens[0], load_biquandle(path)
        if path.suffix or "/" in tokens[0]:
            raise BiquandleFileError(f"{tokens[0]}: no such biquandle file. {_DOCS_HINT}")
    ctor, params = get_family(tokens[0])
    args = tokens[1:]
    if len(args) != len(params):
        raise ValueError(
            f"'{tokens[0]}' takes {len(params)} parameter(s), got {len(args)}. "
            f"Usage: {usage(tokens[0])}"
        )
    try:
        values = [int(x) for x in args]
    except ValueError:
        raise ValueError(
            f"Parameters of '{tokens[0]}' must be integers, got {' '.join(args)}. "
            f"Usage: {usage(tokens[0])}"
        ) from None
    return label(tokens), ctor(*values)


def builtin_biquandles(max_size: int) -> Iterator[tuple[str, FiniteYB]]:
    """Every cyclic and Alexander biquandle with at most ``max_size`` elements."""
    for n in range(1, max_size + 1):
        yield f"cyclic {n}", make_cyclic(n)
    for n in range(2, max_size + 1):
        units = [u for u in range(1, n) if math.gcd(u, n) == 1]
        for s in units:
            for t in units:
                if ((1 - s) * (1 - t)) % n == 0:
                    yield f"alexander {n} {s} {t}", make_alexander(n, s, t)
