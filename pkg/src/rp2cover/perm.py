"""Permutations of {1, ..., d} with left-to-right composition.

A permutation is stored by its image tuple: entry i is the image of point
i+1.  Products act left first, so x^(pq) = (x^p)^q and p * q means
"apply p, then q".  Conjugation is lam * p * lam^-1, which relabels the
cycles of p by lam^-1 and therefore preserves cycle type.

Text form is disjoint cycle notation such as "(1 2)(3 4)"; fixed points
may be omitted and the identity prints as "()".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1, ..., d} given by its image tuple.

    >>> p = Permutation.from_cycles(4, [(1, 2), (3, 4)])
    >>> q = Permutation.from_cycles(4, [(2, 3), (4, 1)])
    >>> str(p * q)
    '(1 3)(2 4)'
    """

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if d < 1:
            raise ValueError("degree must be at least 1")
        seen = [False] * (d + 1)
        for v in self.images:
            if not isinstance(v, int) or not 1 <= v <= d or seen[v]:
                raise ValueError(f"not a bijection of 1..{d}: {self.images!r}")
            seen[v] = True

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(kernels.identity(d))

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build a permutation of degree d from disjoint cycles.

        >>> str(Permutation.from_cycles(5, [(1, 2, 3)]))
        '(1 2 3)'
        """
        images = list(range(1, d + 1))
        used = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= d:
                    raise ValueError(f"point {x} outside 1..{d}")
                if x in used:
                    raise ValueError(f"point {x} appears in two cycles")
                used.add(x)
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, x: int) -> int:
        """Image of the point x."""
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} != {other.degree}"
            )
        return Permutation(kernels.compose(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(kernels.inverse(self.images))

    def conjugate(self, lam: Permutation) -> Permutation:
        """lam * self * lam^-1; has the same cycle type as self."""
        if self.degree != lam.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} != {lam.degree}"
            )
        return Permutation(kernels.conjugate(self.images, lam.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles including fixed points, each starting at its
        minimal point, ordered by that point."""
        return kernels.cycles_of(self.images)

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in non-increasing order (a partition of the degree)."""
        return kernels.cycle_lengths(self.images)

    def defect(self) -> int:
        """Degree minus number of cycles; additive over cycles as sum of
        (length - 1)."""
        return self.degree - len(self.cycles())

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({self.images!r})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q.

    >>> str(compose(Permutation.from_cycles(3, [(1, 2, 3)]),
    ...             Permutation.from_cycles(3, [(1, 2, 3)])))
    '(1 3 2)'
    """
    return p * q


def identity(d: int) -> Permutation:
    return Permutation.identity(d)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, lam: Permutation) -> Permutation:
    return p.conjugate(lam)


def cycle_decomposition(p: Permutation) -> tuple[tuple[int, ...], ...]:
    return p.cycles()


def cycle_type(p: Permutation) -> tuple[int, ...]:
    return p.cycle_type()


def defect(p: Permutation) -> int:
    return p.defect()


def from_cycles(d: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    return Permutation.from_cycles(d, cycles)


def canonical_of_type(d: int, parts: Sequence[int]) -> Permutation:
    """Representative of a cycle type with cycles on consecutive points.

    Parts are laid out in non-increasing order starting at 1.

    >>> str(canonical_of_type(6, (3, 2, 1)))
    '(1 2 3)(4 5)'
    """
    if sum(parts) != d:
        raise ValueError(f"parts sum to {sum(parts)}, expected {d}")
    cycles = []
    start = 1
    for n in sorted(parts, reverse=True):
        cycles.append(tuple(range(start, start + n)))
        start += n
    return Permutation.from_cycles(d, cycles)


def format_cycles(p: Permutation) -> str:
    """Cycle notation with fixed points omitted; identity prints as "()"."""
    parts = [c for c in p.cycles() if len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in parts)


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation; the degree is supplied by the caller.

    >>> parse_permutation("(1 2)(3 4)", 5).images
    (2, 1, 4, 3, 5)
    """
    s = text.strip()
    if s == "()":
        return Permutation.identity(degree)
    cycles = []
    i = 0
    n = len(s)
    while i < n:
        if s[i].isspace():
            i += 1
            continue
        if s[i] != "(":
            raise ValueError(f"expected '(' at position {i} in {text!r}")
        j = s.find(")", i)
        if j < 0:
            raise ValueError(f"unclosed cycle at position {i} in {text!r}")
        body = s[i + 1 : j].replace(",", " ").split()
        if not body:
            raise ValueError(f"empty cycle at position {i} in {text!r}")
        try:
            cyc = tuple(int(w) for w in body)
        except ValueError:
            raise ValueError(f"non-integer point in cycle at position {i} in {text!r}") from None
        cycles.append(cyc)
        i = j + 1
    return Permutation.from_cycles(degree, cycles)
