"""Integer partitions and standard Young tableaux."""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from . import limits


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Immutable and hashable, so partitions can key distributions directly.
    Indexing helpers are 1-based to match the usual notation: ``lam.part(i)``
    is the i-th row length and ``lam.col(j)`` the j-th column length, both 0
    past the edge of the diagram.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "[" + ",".join(str(x) for x in self) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read the bracketed text form, e.g. ``"[5,4,4,1]"`` or ``"[]"``."""
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        s = s.strip()
        if not s:
            return cls()
        try:
            parts = [int(x) for x in s.split(",")]
        except ValueError:
            raise ValueError(f"not a partition: {text!r}")
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        return self[i - 1] if 1 <= i <= len(self) else 0

    def col(self, j: int) -> int:
        """Length of column j (λ'_j); 0 for j beyond the first row."""
        if j < 1:
            raise ValueError("column index starts at 1")
        return sum(1 for x in self if x >= j)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cells(self):
        """Yield diagram cells (row, column), both 1-based, row by row."""
        for i, length in enumerate(self, start=1):
            for j in range(1, length + 1):
                yield i, j

    def add_to_column(self, j: int) -> "Partition":
        """Add one cell at the bottom of column j; the result must be a partition."""
        height = self.col(j)
        if j > 1 and self.col(j - 1) == height:
            raise ValueError(f"cannot add a cell to column {j} of {self}")
        parts = list(self)
        if height == len(parts):
            parts.append(1)
        else:
            parts[height] += 1
        return Partition(parts)

    def removable_corners(self):
        """Rows i (1-based) whose last cell can be removed."""
        return [i for i in range(1, len(self) + 1) if self.part(i) > self.part(i + 1)]

    def remove_from_row(self, i: int) -> "Partition":
        parts = list(self)
        parts[i - 1] -= 1
        if parts[i - 1] == 0:
            parts.pop(i - 1)
        return Partition(parts)


def conjugate(lam) -> Partition:
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition([lam.col(j) for j in range(1, lam[0] + 1)])


def n_stat(lam) -> int:
    """Σ (i-1) λ_i."""
    return sum(i * x for i, x in enumerate(lam))


def multiplicities(lam) -> dict:
    """Map part size to the number of parts of that size."""
    return dict(Counter(lam))


def sum_conjugate_squares(lam) -> int:
    """Σ (λ'_i)^2, computed from the conjugate."""
    return sum(c * c for c in conjugate(lam))


def partial_column_sum(lam, r: int) -> int:
    """λ'_1 + ... + λ'_r, with λ'_j = 0 for j > λ_1."""
    return sum(min(x, r) for x in lam) if r > 0 else 0


def enumerate_partitions(n: int, bound: int | None = None) -> list:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    limits.check(n, bound if bound is not None else limits.cells_bound(limits.PARTITION_BOUND), "n")
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for k in range(min(remaining, largest), 0, -1):
            prefix.append(k)
            rec(remaining - k, k, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class StandardTableau:
    """A filling of a diagram by 1..n increasing along rows and down columns.

    ``rows[i]`` holds the entries of row i+1, left to right.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        Partition(len(r) for r in rows)
        entries = sorted(x for r in rows for x in r)
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError("entries must be 1..n, each once")
        for i, row in enumerate(rows):
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError("rows must increase")
            if i and any(row[k] <= rows[i - 1][k] for k in range(len(row))):
                raise ValueError("columns must increase")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    @cached_property
    def _positions(self) -> dict:
        return {x: (i, j) for i, row in enumerate(self.rows, 1) for j, x in enumerate(row, 1)}

    def position(self, entry: int) -> tuple:
        """(row, column) of an entry, 1-based."""
        return self._positions[entry]

    def subshape(self, j: int) -> Partition:
        """Shape Λ_j formed by the entries 1..j."""
        return Partition(c for c in (sum(1 for x in row if x <= j) for row in self.rows) if c)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def count_syt(lam) -> int:
    """Number of standard tableaux of shape lam, by the hook-length formula."""
    lam = Partition(lam)
    conj = conjugate(lam)
    num = 1
    for k in range(2, lam.size + 1):
        num *= k
    den = 1
    for i, j in lam.cells():
        den *= lam[i - 1] - j + conj[j - 1] - i + 1
    return num // den


def enumerate_syt(lam, bound: int | None = None) -> list:
    """All standard Young tableaux of shape lam.

    Built by placing the largest entry in each removable corner in turn, so the
    output order is deterministic.
    """
    lam = Partition(lam)
    limits.check(lam.size, bound if bound is not None else limits.cells_bound(limits.TABLEAU_BOUND), "|lambda|")

    def rec(shape):
        if not shape:
            return [[]]
        n = shape.size
        out = []
        for i in shape.removable_corners():
            for rows in rec(shape.remove_from_row(i)):
                rows = [list(r) for r in rows]
                if i > len(rows):
                    rows.append([])
                rows[i - 1].append(n)
                out.append(rows)
        return out

    return [StandardTableau(tuple(tuple(r) for r in rows)) for rows in rec(lam)]


def m_star(tableau: StandardTableau, j: int) -> int:
    """Number of parts of Λ_j equal to the column number of entry j."""
    if not 1 <= j <= tableau.size:
        raise ValueError(f"j = {j} out of range 1..{tableau.size}")
    column = tableau.position(j)[1]
    return sum(1 for x in tableau.subshape(j) if x == column)
