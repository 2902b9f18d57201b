"""Generalized urn models built from nit sets.

Each ball type corresponds to a state. For every partition (a lens colour)
the ball carries the glyph of the block holding that state. A lens of a
model colour reveals that colour's glyph. A lens of a foreign colour shows
nothing when paints and filters are monospectral, and shows every glyph on
the ball when their spectra are broadened.

Random draws use NumPy's PCG64 bit generator seeded with the session seed.
Raw 64-bit outputs are mapped to ball indices by rejection sampling, so the
stream depends only on PCG64 itself and is identical across platforms and
NumPy releases.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from nitpart.errors import ParameterError, ValidationError
from nitpart.partitions import NitSet, is_valid_nit_set

MONOSPECTRAL = "monospectral"
BROADENED = "broadened"
DEFAULT_COLORS = ("blue", "yellow", "red", "magenta", "cyan", "orange", "violet", "white")
DEFAULT_GLYPHS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class UrnModel:
    colors: tuple[str, ...]
    symbols: tuple[tuple[str, ...], ...]
    balls: tuple[tuple[str, ...], ...]
    """``balls[i][j]`` is the glyph of colour j on the ball of state i + 1."""

    def __len__(self):
        return len(self.balls)

    def glyph(self, ball: int, color: str) -> str:
        return self.balls[ball - 1][self.colors.index(color)]


@dataclass(frozen=True)
class Lens:
    color: str
    mode: Literal["monospectral", "broadened"] = MONOSPECTRAL

    def __post_init__(self):
        if self.mode not in (MONOSPECTRAL, BROADENED):
            raise ParameterError(f"lens mode must be {MONOSPECTRAL!r} or {BROADENED!r}, got {self.mode!r}")

    def to_dict(self) -> dict:
        return {"color": self.color, "mode": self.mode}


@dataclass(frozen=True)
class Symbol:
    glyph: str
    kind = "symbol"

    @property
    def glyphs(self) -> tuple[str, ...]:
        return (self.glyph,)


@dataclass(frozen=True)
class NoAnswer:
    kind = "no_answer"
    glyphs = ()


@dataclass(frozen=True)
class SymbolSet:
    """Every glyph on the ball in model colour order, seen dimmed through a
    foreign broadened lens."""

    glyphs: tuple[str, ...]
    kind = "symbol_set"
    dimmed = True


LookResult = Union[Symbol, NoAnswer, SymbolSet]


def urn_from_nit_set(
    s: NitSet,
    colors: Sequence[str] | None = None,
    glyph_alphabet: Sequence[str] | None = None,
) -> UrnModel:
    report = is_valid_nit_set(s)
    if not report:
        raise ValidationError(f"not a valid nit set: {report.to_dict()}")
    colors = tuple(colors) if colors is not None else DEFAULT_COLORS[: s.k]
    glyphs = tuple(glyph_alphabet) if glyph_alphabet is not None else tuple(DEFAULT_GLYPHS[: s.n])
    if len(colors) != s.k or len(set(colors)) != s.k:
        raise ParameterError(f"need {s.k} distinct colours, got {list(colors)}")
    if len(glyphs) != s.n or len(set(glyphs)) != s.n:
        raise ParameterError(f"need {s.n} distinct glyphs, got {list(glyphs)}")
    balls = tuple(tuple(glyphs[b] for b in s.block_of(i)) for i in range(1, s.params.N + 1))
    symbols = tuple(glyphs for _ in colors)
    return UrnModel(colors, symbols, balls)


class _Stream:
    """Uniform integers in [0, m) from PCG64 raw output."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(int(seed) & (2**64 - 1))

    def below(self, m: int) -> int:
        limit = (2**64 // m) * m
        while True:
            x = int(self._bits.random_raw())
            if x < limit:
                return x % m


def draw(urn: UrnModel, seed: int, counter: int = 0) -> int:
    """Ball (1-based state) of draw number ``counter`` in the session seeded
    by ``seed``."""
    if not len(urn):
        raise ParameterError("empty urn")
    stream = _Stream(seed)
    for _ in range(counter):
        stream.below(len(urn))
    return stream.below(len(urn)) + 1


def draws(urn: UrnModel, count: int, seed: int) -> list[int]:
    if not len(urn):
        raise ParameterError("empty urn")
    stream = _Stream(seed)
    return [stream.below(len(urn)) + 1 for _ in range(count)]


def look(ball: int, urn: UrnModel, lens: Lens) -> LookResult:
    if not 1 <= ball <= len(urn):
        raise ParameterError(f"no ball {ball} in an urn of {len(urn)}")
    if lens.color in urn.colors:
        return Symbol(urn.glyph(ball, lens.color))
    if lens.mode == MONOSPECTRAL:
        return NoAnswer()
    return SymbolSet(urn.balls[ball - 1])


def _result_key(r: LookResult):
    return (r.kind, r.glyphs)


@dataclass
class Tally:
    draws: int
    lens: Lens
    counts: dict

    def to_dict(self) -> dict:
        return {
            "draws": self.draws,
            "lens": self.lens.to_dict(),
            "results": [
                {"kind": r.kind, "glyphs": list(r.glyphs), "count": c}
                for r, c in sorted(self.counts.items(), key=lambda kv: _result_key(kv[0]))
            ],
        }


def run_session(urn: UrnModel, lens: Lens, draws_: int, seed: int) -> Tally:
    if draws_ < 0:
        raise ParameterError(f"draws must be non-negative, got {draws_}")
    counts: Counter = Counter()
    if draws_:
        for ball in draws(urn, draws_, seed):
            counts[look(ball, urn, lens)] += 1
    return Tally(draws_, lens, dict(counts))
