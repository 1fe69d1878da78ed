"""Unipotent matrices over F_p acting on projective lines.

The closed-form orbit profile lives next to the brute-force oracles that
check it: small dense matrices, exhaustive enumeration of T(n, p) and of the
unipotent elements of GL(n, p), line orbits, and fixed complete flags.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import limits
from .partitions import Partition, partial_column_sum
from .pgroups import is_prime

MAX_DIM = 6
MAX_PRIME = 7
MAX_LINES = 20000
MAX_TRIANGULAR = 10**6
MAX_GL_SCAN = 10**7


@dataclass(frozen=True)
class MatrixFp:
    """Dense square matrix over the prime field F_p, stored as a tuple of rows."""

    p: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not is_prime(self.p) or self.p > MAX_PRIME:
            raise ValueError(f"p must be a prime <= {MAX_PRIME}, got {self.p}")
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        limits.check(len(rows), MAX_DIM, "dimension")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, p: int) -> "MatrixFp":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def parse(cls, text: str, p: int) -> "MatrixFp":
        """Read ``"1,1;0,1"``: rows separated by ';', entries by ','."""
        return cls(p, tuple(tuple(int(x) for x in row.split(",")) for row in text.strip().split(";")))

    def __str__(self):
        return ";".join(",".join(str(x) for x in r) for r in self.rows)

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        n, p = self.n, self.p
        cols = list(zip(*other.rows))
        return MatrixFp(p, tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows))

    def __sub__(self, other: "MatrixFp") -> "MatrixFp":
        return MatrixFp(self.p, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __pow__(self, k: int) -> "MatrixFp":
        result = MatrixFp.identity(self.n, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v) -> tuple:
        return tuple(sum(a * b for a, b in zip(r, v)) % self.p for r in self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_unipotent(self) -> bool:
        return ((self - MatrixFp.identity(self.n, self.p)) ** self.n).is_zero()

    def rank(self) -> int:
        return rank_mod_p([list(r) for r in self.rows], self.p)


def rank_mod_p(rows, p: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def jordan_matrix(lam, p: int) -> MatrixFp:
    """Block-diagonal matrix of upper bidiagonal unipotent Jordan blocks."""
    lam = Partition(lam)
    limits.check(lam.size, MAX_DIM, "|lambda|")
    n = lam.size
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    start = 0
    for size in lam:
        for k in range(start, start + size - 1):
            rows[k][k + 1] = 1
        start += size
    return MatrixFp(p, tuple(tuple(r) for r in rows))


def jordan_type(m: MatrixFp) -> Partition:
    """Jordan type of a unipotent matrix from the ranks of powers of M - I."""
    nil = m - MatrixFp.identity(m.n, m.p)
    ranks = [m.n]
    power = MatrixFp.identity(m.n, m.p)
    while ranks[-1] > 0:
        power = power @ nil
        r = power.rank()
        if r == ranks[-1]:
            raise ValueError("matrix is not unipotent")
        ranks.append(r)
    ranks.append(0)
    parts = []
    for k in range(len(ranks) - 2, 0, -1):
        parts += [k] * (ranks[k - 1] - 2 * ranks[k] + ranks[k + 1])
    return Partition(parts)


@dataclass(frozen=True)
class LineOrbitProfile:
    """lines[r] = number of projective lines lying in orbits of size p^r."""

    p: int
    lines: dict

    @property
    def total(self) -> int:
        return sum(self.lines.values())

    def orbit_counts(self) -> dict:
        out = {}
        for r, count in self.lines.items():
            if count % self.p**r:
                raise AssertionError(f"{count} lines cannot fill orbits of size {self.p}^{r}")
            out[r] = count // self.p**r
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lines": {str(r): c for r, c in sorted(self.lines.items())},
            "orbits": {str(r): c for r, c in sorted(self.orbit_counts().items())},
        }


def orbit_profile_formula(lam, p: int) -> LineOrbitProfile:
    """Lines in size-p^r orbits for a unipotent of Jordan type lam.

    lines_0 = (p^{λ'_1} - 1)/(p - 1); for r >= 1 the count is the difference of
    fixed-line counts of the p^r-th and p^(r-1)-th powers.
    """
    lam = Partition(lam)
    if p < 2:
        raise ValueError("p must be at least 2")
    lines = {0: (p ** partial_column_sum(lam, 1) - 1) // (p - 1)}
    r = 1
    while lam and p ** (r - 1) < lam[0]:
        hi = partial_column_sum(lam, p**r)
        lo = partial_column_sum(lam, p ** (r - 1))
        lines[r] = (p**hi - p**lo) // (p - 1)
        r += 1
    return LineOrbitProfile(p, {r: c for r, c in lines.items() if c or r == 0})


def projective_lines(n: int, p: int) -> list:
    """Canonical representatives: first nonzero coordinate equal to 1."""
    out = []
    for v in product(range(p), repeat=n):
        nz = next((x for x in v if x), 0)
        if nz == 1:
            out.append(v)
    return out


def normalize_line(v, p: int) -> tuple:
    lead = next(x for x in v if x)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def brute_force_line_orbits(m: MatrixFp) -> LineOrbitProfile:
    p, n = m.p, m.n
    limits.check((p**n - 1) // (p - 1), MAX_LINES, "number of lines")
    lines = projective_lines(n, p)
    image = {v: normalize_line(m.apply(v), p) for v in lines}
    seen = set()
    tally = {}
    for v in lines:
        if v in seen:
            continue
        size = 0
        w = v
        while True:
            seen.add(w)
            size += 1
            w = image[w]
            if w == v:
                break
        r = 0
        while p**r < size:
            r += 1
        if p**r != size:
            raise AssertionError(f"orbit of size {size} is not a power of {p}")
        tally[r] = tally.get(r, 0) + size
    tally.setdefault(0, 0)
    return LineOrbitProfile(p, tally)


def fixed_lines(m: MatrixFp) -> int:
    return sum(1 for v in projective_lines(m.n, m.p) if normalize_line(m.apply(v), m.p) == v)


def enumerate_triangular(n: int, p: int):
    """Yield every upper unitriangular n x n matrix over F_p once."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    limits.check(p ** len(slots), MAX_TRIANGULAR, "|T(n,p)|")
    for values in product(range(p), repeat=len(slots)):
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), x in zip(slots, values):
            rows[i][j] = x
        yield MatrixFp(p, tuple(tuple(r) for r in rows))


def enumerate_unipotent_gl(n: int, p: int):
    """Yield every unipotent element of GL(n, p).

    Scans all n x n matrices N and keeps I + N for nilpotent N; the count is
    checked against p^{n(n-1)} once the scan completes.
    """
    limits.check(p ** (n * n), MAX_GL_SCAN, "matrices scanned")
    count = 0
    for values in product(range(p), repeat=n * n):
        rows = tuple(tuple(values[i * n:(i + 1) * n]) for i in range(n))
        nil = MatrixFp(p, rows)
        if (nil**n).is_zero():
            count += 1
            yield MatrixFp(p, tuple(tuple(x + (i == j) for j, x in enumerate(r)) for i, r in enumerate(rows)))
    if count != p ** (n * (n - 1)):
        raise AssertionError(f"found {count} unipotent elements, expected {p ** (n * (n - 1))}")


@lru_cache(maxsize=None)
def complete_flags(n: int, p: int) -> tuple:
    """Every complete flag as a tuple of subspaces (frozensets of vectors), dims 1..n."""
    vectors = list(product(range(p), repeat=n))
    zero = tuple([0] * n)

    def children(current):
        covered = set(current)
        for v in vectors:
            if v in covered:
                continue
            sub = frozenset(tuple((a + c * b) % p for a, b in zip(w, v)) for w in current for c in range(p))
            covered |= sub
            yield sub

    def extend(flag, current):
        if len(flag) == n:
            yield flag
            return
        for sub in children(current):
            yield from extend(flag + (sub,), sub)

    return tuple(extend((), frozenset({zero})))


def count_fixed_flags(m: MatrixFp) -> int:
    """Complete flags every member of which is M-invariant."""
    limits.check(m.n, 4, "dimension for flag enumeration")
    limits.check(m.p, 3, "p for flag enumeration")
    return sum(1 for flag in complete_flags(m.n, m.p) if all(_invariant(m, w) for w in flag))


def _invariant(m, space):
    return all(m.apply(v) in space for v in space)
