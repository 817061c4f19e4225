"""Loading externally computed Mordell-Weil rank data.

Rank data is untrusted input: every row is validated against the curve
invariants and against earlier rows before it enters the table.  The
package never computes ranks itself.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .curves import CurveModel
from .errors import ConflictingRank, ParseError


@dataclass
class RankTable:
    ranks: dict[tuple[int, int], int] = field(default_factory=dict)

    def get(self, A: int, B: int) -> int | None:
        return self.ranks.get((A, B))

    def __len__(self) -> int:
        return len(self.ranks)


def load_rank_csv(path: str | Path) -> RankTable:
    """Parse a CSV with header A,B,rank into a validated RankTable."""
    table = RankTable()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if [h.strip() for h in header] != ["A", "B", "rank"]:
            raise ParseError(f"{path}: expected header A,B,rank, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                A, B, rank = (int(x.strip()) for x in row)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-integer field in {row}") from None
            if rank < 0:
                raise ParseError(f"{path}:{lineno}: negative rank {rank}")
            CurveModel(A, B)  # raises InvalidCurve for singular/non-minimal pairs
            old = table.ranks.get((A, B))
            if old is not None and old != rank:
                raise ConflictingRank(f"{path}:{lineno}: ({A}, {B}) has ranks {old} and {rank}")
            table.ranks[(A, B)] = rank
    return table
