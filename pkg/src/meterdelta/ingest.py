"""Loaders for on-disk trace formats.

Two formats are supported: the space-separated channel files used by public
residential datasets ("<epoch seconds> <watts>", one sample per line) and
generic delimited CSV with a header row. Loaders return raw (timestamp,
power) pairs in file order; validation into a PowerTrace happens separately.
"""
from __future__ import annotations

import io
import csv
import logging
import math
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import EmptyInputError, MissingColumnError, ParseError

log = logging.getLogger(__name__)

Sample = tuple[int, float]

MAINS_MODES = ("sum", "first", "second")


def _as_lines(source) -> Iterator[str]:
    """Yield decoded lines from a path, a text stream, or a byte stream."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            yield from fh
    elif isinstance(source, (bytes, bytearray)):
        yield from io.StringIO(source.decode("utf-8"))
    else:
        for line in source:
            yield line.decode("utf-8") if isinstance(line, bytes) else line


def _summarize(line_numbers: list[int], limit: int = 10) -> str:
    shown = ", ".join(str(n) for n in line_numbers[:limit])
    extra = len(line_numbers) - limit
    return shown if extra <= 0 else f"{shown} (+{extra} more)"


def load_redd_channel(source, *, tolerant: bool = False) -> list[Sample]:
    """Parse "<epoch seconds> <watts>" lines into (timestamp, power) pairs.

    Strict mode raises ParseError at the first malformed line. Tolerant mode
    skips malformed lines and logs their line numbers. CRLF endings are
    accepted.
    """
    samples: list[Sample] = []
    rejected: list[int] = []
    for line_no, line in enumerate(_as_lines(source), start=1):
        text = line.strip()
        if not text:
            continue
        try:
            samples.append(_parse_channel_line(line_no, text))
        except ParseError:
            if not tolerant:
                raise
            rejected.append(line_no)
    if rejected:
        log.warning(
            "skipped %d unparseable lines: %s", len(rejected), _summarize(rejected)
        )
    if not samples:
        raise EmptyInputError("no parseable samples in input")
    return samples


def _parse_channel_line(line_no: int, text: str) -> Sample:
    tokens = text.split()
    if len(tokens) != 2:
        raise ParseError(line_no, f"expected 2 fields, got {len(tokens)}")
    try:
        timestamp = int(tokens[0])
    except ValueError:
        raise ParseError(line_no, f"non-integer timestamp {tokens[0]!r}") from None
    try:
        power = float(tokens[1])
    except ValueError:
        raise ParseError(line_no, f"non-numeric power {tokens[1]!r}") from None
    if not math.isfinite(power):
        raise ParseError(line_no, f"non-finite power {tokens[1]!r}")
    return timestamp, power


def dump_redd_channel(samples: Iterable[Sample], target) -> None:
    """Write samples in the channel line format (round-trips exactly)."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as fh:
            _write_channel_lines(samples, fh)
    else:
        _write_channel_lines(samples, target)


def _write_channel_lines(samples, fh) -> None:
    for t, p in samples:
        fh.write(f"{int(t)} {p!r}\n")


def load_csv(
    source,
    timestamp_col: str = "timestamp",
    power_col: str = "power",
    *,
    delimiter: str = ",",
    tolerant: bool = False,
) -> list[Sample]:
    """Parse a delimited text file with a header row naming the columns.

    Extra columns are ignored; rows missing either selected column fail.
    Fractional timestamps are truncated toward zero onto the 1 s grid.
    """
    reader = csv.reader(_as_lines(source), delimiter=delimiter)
    header = next(reader, None)
    if header is None:
        raise EmptyInputError("empty file: no header row")
    names = [h.strip() for h in header]
    if timestamp_col not in names:
        raise MissingColumnError(timestamp_col)
    if power_col not in names:
        raise MissingColumnError(power_col)
    t_idx = names.index(timestamp_col)
    p_idx = names.index(power_col)

    samples: list[Sample] = []
    rejected: list[int] = []
    for row_no, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            samples.append(_parse_csv_row(row_no, row, t_idx, p_idx))
        except ParseError:
            if not tolerant:
                raise
            rejected.append(row_no)
    if rejected:
        log.warning("skipped %d unparseable rows: %s", len(rejected), _summarize(rejected))
    if not samples:
        raise EmptyInputError("no parseable samples in input")
    return samples


def _parse_csv_row(row_no: int, row: list[str], t_idx: int, p_idx: int) -> Sample:
    if len(row) <= max(t_idx, p_idx):
        raise ParseError(row_no, f"row has {len(row)} fields, need {max(t_idx, p_idx) + 1}")
    try:
        raw_t = float(row[t_idx])
    except ValueError:
        raise ParseError(row_no, f"non-numeric timestamp {row[t_idx]!r}") from None
    if not math.isfinite(raw_t):
        raise ParseError(row_no, f"non-finite timestamp {row[t_idx]!r}")
    try:
        power = float(row[p_idx])
    except ValueError:
        raise ParseError(row_no, f"non-numeric power {row[p_idx]!r}") from None
    if not math.isfinite(power):
        raise ParseError(row_no, f"non-finite power {row[p_idx]!r}")
    return int(raw_t), power


def combine_mains(channels: Sequence[Sequence[Sample]]) -> list[Sample]:
    """Sum channels per timestamp, keeping only timestamps present in all.

    A missing reading on either mains leg means the house total is unknown
    for that second; filling with zero would corrupt the peak statistics, so
    intersection semantics are deliberate. Within a channel, duplicate
    timestamps keep the last value.
    """
    if not channels:
        raise EmptyInputError("need at least one channel")
    maps = [{int(t): float(p) for t, p in ch} for ch in channels]
    common = set(maps[0])
    for m in maps[1:]:
        common &= set(m)
    # fsum is exactly rounded, so the result is independent of channel order
    return [(t, math.fsum(m[t] for m in maps)) for t in sorted(common)]


def load_redd_house(house_dir, *, mains: str = "sum", tolerant: bool = False) -> list[Sample]:
    """Load a house's mains from a dataset directory.

    The directory must contain channel_1.dat and channel_2.dat (the two
    mains legs). mains selects "sum" (per-timestamp sum over the
    intersection), "first" or "second" (single leg).
    """
    if mains not in MAINS_MODES:
        raise ValueError(f"mains must be one of {MAINS_MODES}, got {mains!r}")
    d = Path(house_dir)
    if mains == "first":
        return load_redd_channel(d / "channel_1.dat", tolerant=tolerant)
    if mains == "second":
        return load_redd_channel(d / "channel_2.dat", tolerant=tolerant)
    return combine_mains(
        [
            load_redd_channel(d / "channel_1.dat", tolerant=tolerant),
            load_redd_channel(d / "channel_2.dat", tolerant=tolerant),
        ]
    )
