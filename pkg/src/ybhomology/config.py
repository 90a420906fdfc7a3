"""Run configuration and environment-driven defaults.

Layer: Configuration
May only import from: .exceptions, sympy

Control defaults via environment variables (none required):
  YBH_MAX_DEGREE  highest homology degree computed by default (3)
  YBH_GUARD       largest chain rank assembled before refusing (100000)
  YBH_WORKERS     worker processes for table reproduction (1)
  YBH_DEBUG       1/true/yes/on prints tracebacks for input errors
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from dataclasses import field
from typing import Optional

from sympy import isprime

from .exceptions import NotPrime

THEORY_NAMES = ("YB", "DEG", "NYB")
OUTPUT_FORMATS = ("text", "json")


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").lower() in ("1", "true", "yes", "on")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name}={raw!r} is not an integer.") from None


DEFAULT_MAX_DEGREE = _env_int("YBH_MAX_DEGREE", 3)
DEFAULT_GUARD = _env_int("YBH_GUARD", 100_000)
DEFAULT_WORKERS = _env_int("YBH_WORKERS", 1)


def debug_enabled() -> bool:
    return _env_flag("YBH_DEBUG")


def parse_theories(text: str) -> tuple[str, ...]:
    """``"yb,nyb"`` -> ``("YB", "NYB")`` in canonical order; ``"all"`` selects every theory."""
    if text.strip().lower() == "all":
        return THEORY_NAMES
    wanted = {t.strip().upper() for t in text.split(",") if t.strip()}
    unknown = wanted - set(THEORY_NAMES)
    if unknown or not wanted:
        raise ValueError(
            f"Unknown theory {', '.join(sorted(unknown)) or repr(text)}. "
            f"Choose from: {', '.join(t.lower() for t in THEORY_NAMES)} (comma-separated) or all."
        )
    return tuple(t for t in THEORY_NAMES if t in wanted)


def parse_coeff(text: str) -> Optional[int]:
    """``"Z"`` -> None (integers); ``"p3"`` or ``"3"`` -> 3. Non-primes raise NotPrime."""
    raw = text.strip()
    if raw.upper() == "Z":
        return None
    digits = raw[1:] if raw[:1] in ("p", "P") else raw
    try:
        p = int(digits)
    except ValueError:
        raise ValueError(f"Coefficient {text!r} must be Z or pP for a prime P (e.g. p3).") from None
    if not isprime(p):
        raise NotPrime(f"{p} is not prime; use Z or a prime field such as p2, p3, p5.", witness=p)
    return p


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: tuple[str, ...] = ()
    theories: tuple[str, ...] = THEORY_NAMES
    max_degree: int = field(default=DEFAULT_MAX_DEGREE)
    coeff: Optional[int] = None
    output_format: str = "text"
    dump_dir: Optional[str] = None
    guard: int = field(default=DEFAULT_GUARD)
    skip_verify: bool = False
    workers: int = field(default=DEFAULT_WORKERS)
    include_h0: bool = False

    def __post_init__(self) -> None:
        if self.max_degree < 1:
            raise ValueError(f"max_degree must be >= 1, got {self.max_degree}.")
        if self.guard <= 0:
            raise ValueError(f"guard must be a positive column count, got {self.guard}.")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}.")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(
                f"Unknown output format {self.output_format!r}; "
                f"use one of {', '.join(OUTPUT_FORMATS)}."
            )
        bad = [t for t in self.theories if t not in THEORY_NAMES]
        if bad or not self.theories:
            raise ValueError(f"Unknown theories {bad}; choose from {', '.join(THEORY_NAMES)}.")
        if self.coeff is not None and not isprime(self.coeff):
            raise NotPrime(f"Coefficient {self.coeff} is not prime.", witness=self.coeff)

    @property
    def coeff_label(self) -> str:
        return "Z" if self.coeff is None else f"Z/{self.coeff}"
