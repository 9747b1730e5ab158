"""Parser speed measurement.

Times whole-corpus runs of the toolchain under several configurations and
reports one row per configuration with per-frame milliseconds plus their
arithmetic mean. Frames run sequentially on one thread so timings stay
comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import BenchError, ParseError
from .lexer import tokenize
from .parser import parse
from .printer import print_tree


def _run_tokenize(source: str) -> None:
    tokenize(source)


def _run_parse(source: str) -> None:
    parse(source)


def _run_parse_print(source: str) -> None:
    print_tree(parse(source))


CONFIGURATIONS: dict[str, Callable[[str], None]] = {
    "tokenize": _run_tokenize,
    "parse": _run_parse,
    "parse-print": _run_parse_print,
}


@dataclass(frozen=True)
class BenchRow:
    name: str
    frame_ms: tuple[float, ...]

    @property
    def average_ms(self) -> float:
        return mean_ms(self.frame_ms)


def mean_ms(values: Sequence[float]) -> float:
    """Arithmetic mean of frame timings; the report's average column."""
    if not values:
        raise BenchError("no frames")
    return sum(values) / len(values)


def bench_parse(corpus: list[str], frames: int, runner: Callable[[str], None] = _run_parse, name: str = "parse") -> BenchRow:
    """Time ``frames`` sequential whole-corpus runs of ``runner``.

    The corpus must parse cleanly; a dirty corpus would time error paths.
    """
    if frames < 1:
        raise BenchError("frames must be >= 1")
    if not corpus:
        raise BenchError("corpus is empty")
    for i, source in enumerate(corpus):
        try:
            parse(source)
        except ParseError as e:
            raise BenchError(f"corpus file #{i} does not parse: {e}") from e

    timings = []
    for _ in range(frames):
        start = time.perf_counter()
        for source in corpus:
            runner(source)
        timings.append((time.perf_counter() - start) * 1000.0)
    return BenchRow(name=name, frame_ms=tuple(timings))


def bench_all(corpus: list[str], frames: int) -> list[BenchRow]:
    return [bench_parse(corpus, frames, runner=fn, name=name) for name, fn in CONFIGURATIONS.items()]


def render_table(rows: list[BenchRow], frames: int) -> str:
    """Aligned text table: one frame column per frame plus the average."""
    header = ["Configuration"] + [f"Frame {i + 1} (ms)" for i in range(frames)] + ["Average (ms)"]
    body = [[row.name] + [f"{t:.1f}" for t in row.frame_ms] + [f"{row.average_ms:.1f}"] for row in rows]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = []
    for r in [header] + body:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip())
    return "\n".join(lines) + "\n"


def rows_to_records(rows: list[BenchRow]) -> list[dict]:
    return [
        {"name": row.name, "frame_ms": list(row.frame_ms), "average_ms": row.average_ms}
        for row in rows
    ]
