"""Maximal segments of a cell subset, with positional classification.

A horizontal segment is a maximal run of consecutive chosen cells inside one
row; vertical segments are the same inside one column.  Segments are
classified by where they sit in their line:

* full: the segment covers the whole line;
* prefix: it starts at position 1 but does not reach the end;
* suffix: it ends at the last position but does not start at 1;
* interior: neither endpoint touches the line's ends.

A one-cell subset of a length-1 line covers the whole line and counts as
full.  The counts sigma = se + pr + su + fu always partition the segments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SubsetMask

__all__ = [
    "HORIZONTAL",
    "VERTICAL",
    "Segment",
    "SegmentStats",
    "maximal_segments",
    "segment_stats",
]

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True, slots=True, order=True)
class Segment:
    """A maximal run [start, end] of chosen cells in row/column ``line``."""

    orientation: str
    line: int
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if not (1 <= self.start <= self.end):
            raise ValueError(f"bad segment span [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def cells(self) -> list[tuple[int, int]]:
        if self.orientation == HORIZONTAL:
            return [(self.line, c) for c in range(self.start, self.end + 1)]
        return [(r, self.line) for r in range(self.start, self.end + 1)]

    def classify(self, line_length: int) -> str:
        """One of "full", "prefix", "suffix", "interior"."""
        at_start = self.start == 1
        at_end = self.end == line_length
        if at_start and at_end:
            return "full"
        if at_start:
            return "prefix"
        if at_end:
            return "suffix"
        return "interior"


def _runs(positions: list[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive integers in a sorted list."""
    runs = []
    idx = 0
    while idx < len(positions):
        start = positions[idx]
        while idx + 1 < len(positions) and positions[idx + 1] == positions[idx] + 1:
            idx += 1
        runs.append((start, positions[idx]))
        idx += 1
    return runs


def maximal_segments(mask: SubsetMask, orientation: str) -> list[Segment]:
    """All maximal segments of the subset, ordered by (line, start)."""
    if orientation not in (HORIZONTAL, VERTICAL):
        raise ValueError(f"bad orientation {orientation!r}")
    out: list[Segment] = []
    if orientation == HORIZONTAL:
        for i in range(1, mask.m + 1):
            for a, b in _runs(mask.row_cols(i)):
                out.append(Segment(HORIZONTAL, i, a, b))
    else:
        for j in range(1, mask.n + 1):
            for a, b in _runs(mask.col_rows(j)):
                out.append(Segment(VERTICAL, j, a, b))
    return out


@dataclass(frozen=True, slots=True)
class SegmentStats:
    """Segment counts of a subset, split by orientation and position.

    sigma1/sigma2 count all horizontal/vertical segments; the se/pr/su/fu
    fields count interior, prefix, suffix, and full segments.  In each
    orientation sigma = se + pr + su + fu.
    """

    sigma1: int
    sigma2: int
    se1: int
    pr1: int
    su1: int
    fu1: int
    se2: int
    pr2: int
    su2: int
    fu2: int


def segment_stats(mask: SubsetMask) -> SegmentStats:
    """Count the subset's maximal segments by orientation and position."""
    counts = {}
    for orientation, line_length in ((HORIZONTAL, mask.n), (VERTICAL, mask.m)):
        tally = {"interior": 0, "prefix": 0, "suffix": 0, "full": 0}
        segs = maximal_segments(mask, orientation)
        for seg in segs:
            tally[seg.classify(line_length)] += 1
        counts[orientation] = (len(segs), tally)
    s1, t1 = counts[HORIZONTAL]
    s2, t2 = counts[VERTICAL]
    return SegmentStats(
        sigma1=s1,
        sigma2=s2,
        se1=t1["interior"],
        pr1=t1["prefix"],
        su1=t1["suffix"],
        fu1=t1["full"],
        se2=t2["interior"],
        pr2=t2["prefix"],
        su2=t2["suffix"],
        fu2=t2["full"],
    )
