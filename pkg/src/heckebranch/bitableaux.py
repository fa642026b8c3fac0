"""Bipartitions, standard bitableaux and the shape involutions.

Cells are 1-based ``(component, row, col)`` triples.  The basis order of
``STab(shape)`` is lexicographic on the tuple ``(cell(1), ..., cell(n))``;
every matrix elsewhere in the package is written against that order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union


class ShapeError(ValueError):
    """A shape does not satisfy an operation's fixedness precondition."""


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of k as weakly decreasing tuples, reverse-lex order."""
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def conjugate(p: tuple[int, ...]) -> tuple[int, ...]:
    if not p:
        return ()
    return tuple(sum(1 for r in p if r > c) for c in range(p[0]))


@dataclass(frozen=True, order=True)
class Bipartition:
    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(int(x) for x in self.first))
        object.__setattr__(self, "second", tuple(int(x) for x in self.second))
        for p in (self.first, self.second):
            if any(x <= 0 for x in p):
                raise ValueError(f"parts must be positive: {p}")
            if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
                raise ValueError(f"parts must be weakly decreasing: {p}")

    @property
    def n(self) -> int:
        return sum(self.first) + sum(self.second)

    def component(self, c: int) -> tuple[int, ...]:
        return self.first if c == 1 else self.second

    def cells(self) -> list[tuple[int, int, int]]:
        return [(c, r + 1, j + 1)
                for c in (1, 2)
                for r, length in enumerate(self.component(c))
                for j in range(length)]

    @property
    def transpose(self) -> "Bipartition":
        return Bipartition(conjugate(self.first), conjugate(self.second))

    @property
    def swap(self) -> "Bipartition":
        return Bipartition(self.second, self.first)

    def __str__(self):
        return "[" + ",".join(map(str, self.first)) + "|" + ",".join(map(str, self.second)) + "]"

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        """Parse ``[2,1|1]`` (either side may be empty, e.g. ``[|2]``)."""
        m = re.fullmatch(r"\s*\[?\s*([\d,\s]*)\|([\d,\s]*)\]?\s*", text)
        if not m:
            raise ValueError(f"bad shape {text!r}; expected e.g. [2,1|1]")

        def side(s: str) -> tuple[int, ...]:
            s = s.strip()
            return tuple(int(x) for x in s.split(",")) if s else ()

        return cls(side(m.group(1)), side(m.group(2)))

    def sort_key(self):
        return (-sum(self.first), tuple(-x for x in self.first), tuple(-x for x in self.second))


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """All bipartitions of n.

    Order: size of the first component descending, then the first component
    in reverse-lexicographic (dominance-like) order, then the second.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for k in range(n, -1, -1):
        for p in _partitions(k):
            for r in _partitions(n - k):
                out.append(Bipartition(p, r))
    return out


@dataclass(frozen=True)
class StandardBitableau:
    shape: Bipartition
    cells: tuple[tuple[int, int, int], ...]  # cells[k-1] = position of k

    @property
    def n(self) -> int:
        return len(self.cells)

    def cell(self, k: int) -> tuple[int, int, int]:
        return self.cells[k - 1]

    def rho(self, k: int) -> int:
        """Component (1 or 2) holding the entry k."""
        return self.cells[k - 1][0]

    def content(self, k: int) -> int:
        _, r, c = self.cells[k - 1]
        return c - r

    def entry_at(self, comp: int, row: int, col: int) -> int | None:
        try:
            return self.cells.index((comp, row, col)) + 1
        except ValueError:
            return None

    def rows(self) -> tuple[list[list[int]], list[list[int]]]:
        """Per-component row lists of entries."""
        out: tuple[list[list[int]], list[list[int]]] = (
            [[0] * x for x in self.shape.first],
            [[0] * x for x in self.shape.second],
        )
        for k, (c, r, j) in enumerate(self.cells, start=1):
            out[c - 1][r - 1][j - 1] = k
        return out

    def swap_entries(self, i: int) -> "StandardBitableau":
        """s_{i-1} T: exchange the entries i-1 and i (may be non-standard)."""
        cells = list(self.cells)
        cells[i - 2], cells[i - 1] = cells[i - 1], cells[i - 2]
        return StandardBitableau(self.shape, tuple(cells))

    def is_standard(self) -> bool:
        pos = {cell: k for k, cell in enumerate(self.cells, start=1)}
        if set(pos) != set(self.shape.cells()):
            return False
        for (c, r, j), k in pos.items():
            if (c, r, j + 1) in pos and pos[(c, r, j + 1)] < k:
                return False
            if (c, r + 1, j) in pos and pos[(c, r + 1, j)] < k:
                return False
        return True

    def __str__(self):
        a, b = self.rows()
        fmt = lambda rows: "/".join(",".join(map(str, row)) for row in rows)
        return f"[{fmt(a)}|{fmt(b)}]"


@lru_cache(maxsize=None)
def _standard_cached(shape: Bipartition) -> tuple[StandardBitableau, ...]:
    n = shape.n
    rows = (list(shape.first), list(shape.second))
    filled = ([0] * len(rows[0]), [0] * len(rows[1]))
    cells: list[tuple[int, int, int]] = []
    out: list[StandardBitableau] = []

    def rec():
        if len(cells) == n:
            out.append(StandardBitableau(shape, tuple(cells)))
            return
        # addable cells in lexicographic (comp, row, col) order
        for c in (0, 1):
            for r in range(len(rows[c])):
                j = filled[c][r]
                if j < rows[c][r] and (r == 0 or filled[c][r - 1] > j):
                    filled[c][r] += 1
                    cells.append((c + 1, r + 1, j + 1))
                    rec()
                    cells.pop()
                    filled[c][r] -= 1

    rec()
    return tuple(out)


def enumerate_standard(shape: Bipartition) -> list[StandardBitableau]:
    """All standard fillings of ``shape`` in basis order."""
    return list(_standard_cached(shape))


def axial_distance(t: StandardBitableau, k: int, l: int) -> int:
    """(j'-i') - (j-i) for k at (i, j) and l at (i', j'); components ignored."""
    if k == l:
        raise ValueError("k and l must differ")
    return t.content(l) - t.content(k)


class ShapeTransformKind(enum.Enum):
    TRANSPOSE = "'"
    SWAP = "*"
    TRANSPOSE_SWAP = "'*"

    def compose(self, other: "ShapeTransformKind | None") -> "ShapeTransformKind | None":
        """Klein four-group law; ``None`` is the identity."""
        if other is None:
            return self
        if other is self:
            return None
        return ({ShapeTransformKind.TRANSPOSE, ShapeTransformKind.SWAP,
                 ShapeTransformKind.TRANSPOSE_SWAP} - {self, other}).pop()


def _transform_shape(shape: Bipartition, kind: ShapeTransformKind) -> Bipartition:
    if kind is ShapeTransformKind.TRANSPOSE:
        return shape.transpose
    if kind is ShapeTransformKind.SWAP:
        return shape.swap
    return shape.transpose.swap


def _transform_cell(cell, kind):
    c, r, j = cell
    if kind is ShapeTransformKind.TRANSPOSE:
        return (c, j, r)
    if kind is ShapeTransformKind.SWAP:
        return (3 - c, r, j)
    return (3 - c, j, r)


Shaped = Union[Bipartition, StandardBitableau]


def transform(x: Shaped, kind: ShapeTransformKind) -> Shaped:
    if isinstance(x, Bipartition):
        return _transform_shape(x, kind)
    return StandardBitableau(_transform_shape(x.shape, kind),
                             tuple(_transform_cell(c, kind) for c in x.cells))


class Marker(enum.Enum):
    SHARP = "sharp"
    FLAT = "flat"
    NATURAL = "natural"
    DAGGER = "dagger"

    @property
    def symbol(self) -> str:
        return {"sharp": "♯", "flat": "♭", "natural": "♮", "dagger": "†"}[self.value]

    @classmethod
    def parse(cls, text: str) -> "Marker":
        aliases = {"♯": "sharp", "♭": "flat", "♮": "natural", "†": "dagger"}
        return cls(aliases.get(text, text).lower())


# the shape involution attached to each two-fold marker
MARKER_KIND = {
    Marker.SHARP: ShapeTransformKind.SWAP,
    Marker.FLAT: ShapeTransformKind.TRANSPOSE,
    Marker.NATURAL: ShapeTransformKind.TRANSPOSE_SWAP,
}


def is_fixed(shape: Bipartition, marker: Marker) -> bool:
    if marker is Marker.DAGGER:
        return all(is_fixed(shape, m) for m in MARKER_KIND)
    return transform(shape, MARKER_KIND[marker]) == shape


class Side(enum.Enum):
    PLUS = "plus-set"
    MINUS = "minus-set"
    NOT_APPLICABLE = "not-applicable"


def _flat_side(t: StandardBitableau) -> Side:
    for k in range(1, t.n + 1):
        _, r, j = t.cell(k)
        if r != j:
            if (r, j) == (1, 2):
                return Side.PLUS
            if (r, j) == (2, 1):
                return Side.MINUS
            raise AssertionError("first off-diagonal entry must sit at (1,2) or (2,1)")
    return Side.NOT_APPLICABLE


def classify(t: StandardBitableau, marker: Marker) -> Side:
    """Which half of STab(shape) the tableau lies in for the given marker."""
    shape = t.shape
    if not is_fixed(shape, marker):
        raise ShapeError(f"shape {shape} is not fixed by the {marker.value} involution")
    if marker in (Marker.SHARP, Marker.NATURAL):
        return Side.PLUS if t.rho(1) == 1 else Side.MINUS
    if marker is Marker.FLAT:
        if shape == Bipartition((1,), (1,)):
            raise ShapeError("the shape ([1|1]) has no flat halving")
        return _flat_side(t)
    a = classify(t, Marker.SHARP)
    b = classify(t, Marker.FLAT)
    if a is Side.PLUS and b is Side.PLUS:
        return Side.PLUS
    return Side.NOT_APPLICABLE
