"""Branch data over the projective plane.

Branch data of degree d is a finite collection of non-trivial partitions
of d, one partition per branch point, recording the local degrees of the
covering above it.  The defect of a partition is sum(part - 1); branch
data is admissible when the total defect nu satisfies

    d - 1 <= nu  and  nu even,

in which case the covering surface has Euler characteristic d - nu.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple


class ParseError(ValueError):
    """Invalid branch data text; position is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Partition:
    """Partition of a positive integer, parts stored in non-increasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("partition must have at least one part")
        if any(not isinstance(p, int) or p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive integers: {self.parts!r}")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {self.parts!r}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> Partition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def nu(self) -> int:
        """Defect: sum of (part - 1), equal to degree minus number of parts."""
        return self.degree - len(self.parts)

    def is_trivial(self) -> bool:
        """All parts equal to 1 (no actual branching)."""
        return self.parts[0] == 1

    def is_all_twos(self) -> bool:
        return all(p == 2 for p in self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


def nu_partition(parts: Iterable[int]) -> int:
    """Defect of a partition given as a bag of parts.

    >>> nu_partition([2, 2, 1, 1])
    2
    >>> nu_partition([6])
    5
    """
    parts = list(parts)
    return sum(parts) - len(parts)


@dataclass(frozen=True)
class BranchData:
    """Degree plus one non-trivial partition of the degree per branch point."""

    degree: int
    rows: tuple[Partition, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if not self.rows:
            raise ValueError("at least one row is required")
        for i, row in enumerate(self.rows):
            if row.degree != self.degree:
                raise ValueError(
                    f"row {i + 1} sums to {row.degree}, expected {self.degree}"
                )
            if row.is_trivial():
                raise ValueError(f"row {i + 1} is trivial (all parts 1)")

    @property
    def rows_count(self) -> int:
        return len(self.rows)

    def total_defect(self) -> int:
        return sum(row.nu for row in self.rows)

    def all_rows_all_twos(self) -> bool:
        return all(row.is_all_twos() for row in self.rows)

    def to_text(self) -> str:
        return f"d={self.degree}; " + ",".join(str(r) for r in self.rows)

    def __str__(self) -> str:
        return self.to_text()


class Admissibility(NamedTuple):
    ok: bool
    reason: str


def total_defect(data: BranchData) -> int:
    return data.total_defect()


def is_admissible(data: BranchData) -> Admissibility:
    """Check d - 1 <= nu and nu even; the reason states which side failed.

    >>> is_admissible(parse_branch_data("d=4; [2,2]")).ok
    False
    >>> is_admissible(parse_branch_data("d=4; [2,2],[2,2]")).ok
    True
    """
    nu = data.total_defect()
    d = data.degree
    if nu % 2 != 0:
        return Admissibility(False, f"total defect {nu} is odd")
    if nu < d - 1:
        return Admissibility(False, f"total defect {nu} is below d-1={d - 1}")
    return Admissibility(True, f"total defect {nu} is even and at least d-1={d - 1}")


def euler_char_covering(data: BranchData) -> int:
    """Euler characteristic of the covering surface, d - nu.

    Only meaningful for admissible data; raises otherwise.
    """
    adm = is_admissible(data)
    if not adm.ok:
        raise ValueError(f"branch data not admissible: {adm.reason}")
    return data.degree - data.total_defect()


def preimage_count_check(data: BranchData) -> bool:
    """Identity between branch point preimages and Euler characteristics.

    The covering has sum(len(row.parts)) points over the branch set, and
    this count must equal chi(M) - d * (1 - s).  Holds for all admissible
    data by construction; exposed so certificates can assert it.
    """
    chi = euler_char_covering(data)
    s = data.rows_count
    preimages = sum(len(row.parts) for row in data.rows)
    return preimages == chi - data.degree * (1 - s)


def parse_branch_data(text: str) -> BranchData:
    """Parse "d=<int>; [a,b,...],[c,...]" into branch data.

    Whitespace is ignored between tokens.  Raises ParseError with a
    character position on syntax errors, rows not summing to the degree,
    and trivial rows.
    """
    s = text
    n = len(s)
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def expect(tok: str):
        nonlocal pos
        skip_ws()
        if not s.startswith(tok, pos):
            raise ParseError(f"expected {tok!r}", pos)
        pos += len(tok)

    def read_int() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected an integer", start)
        return int(s[start:pos])

    expect("d")
    expect("=")
    degree = read_int()
    expect(";")

    rows = []
    while True:
        skip_ws()
        row_start = pos
        expect("[")
        parts = [read_int()]
        while True:
            skip_ws()
            if pos < n and s[pos] == ",":
                pos += 1
                parts.append(read_int())
            else:
                break
        expect("]")
        if any(p < 1 for p in parts):
            raise ParseError("parts must be at least 1", row_start)
        if sum(parts) != degree:
            raise ParseError(
                f"row sums to {sum(parts)}, expected {degree}", row_start
            )
        if all(p == 1 for p in parts):
            raise ParseError("trivial row (all parts 1)", row_start)
        rows.append(Partition.of(parts))
        skip_ws()
        if pos < n and s[pos] == ",":
            pos += 1
            continue
        break
    skip_ws()
    if pos != n:
        raise ParseError("unexpected trailing input", pos)
    if degree < 1:
        raise ParseError("degree must be positive", 0)
    return BranchData(degree, tuple(rows))
