"""Random partition growth: the division algorithm and the coin-flip algorithm.

Both samplers reduce every random choice to one primitive, the *depth*: the
number of leading zero digits of a uniform base-p expansion, capped at some
value c.  Depth >= k has probability exactly p^-k for k <= c.  A coin with
heads probability p^-i is heads when the depth (cap i) reaches i.  Adding a
dot to the first column whose length is at most the depth (cap λ'_1) gives
column 1 with probability p^-λ'_1 and column j > 1 with probability
p^-λ'_j - p^-λ'_{j-1}, which is the division-algorithm rule.  No floating
point enters the sample path.

Random numbers come from numpy's PCG64.  Trials are processed in fixed-size
chunks and chunk k draws from ``SeedSequence(seed, spawn_key=(k,))``, so
results depend only on (seed, trials) and chunks may run on separate workers.

Limit law of the coin algorithm
-------------------------------
Summing the GL class weights w(λ) = 1/(p^{Σλ'^2} Π (1/p)_{m_i}) over |λ| = n
gives 1/(p^n (1/p)_n), and by Euler's identity Σ_n p^-n/(1/p)_n = 1/(1/p)_∞.
Hence P(λ) = (1/p)_∞ · w(λ) is a probability law on all partitions; it is the
target of the coin algorithm.  In particular P(∅) = (1/p)_∞.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .measures import TRIANGULAR, jordan_dist
from .partitions import Partition, StandardTableau, conjugate
from .qseries import class_weight, euler_inf

DEFAULT_SEED = 20240601
DEFAULT_COIN_LIMIT = 64
CHUNK = 1 << 15


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def borodin_column_probs(lam, p: int) -> dict:
    """Column-choice law for growing lam by one dot; zero-probability columns omitted."""
    lam = Partition(lam)
    width = lam[0] if lam else 0
    out = {}
    prev = None
    for j in range(1, width + 2):
        h = lam.col(j)
        prob = Fraction(1, p**h) if prev is None else Fraction(1, p**h) - Fraction(1, p**prev)
        if prob:
            out[j] = prob
        prev = h
    return out


def coin_column_probs(lam, p: int, last: int) -> dict:
    """Column-choice law for a head of the current coin, given the last column it grew.

    ``last = 0`` on the first head of a coin, which makes this the same map as
    :func:`borodin_column_probs`.
    """
    lam = Partition(lam)
    width = lam[0] if lam else 0
    out = {}
    prev = None
    for s in range(last + 1, max(width, last) + 2):
        h = lam.col(s)
        prob = Fraction(1, p**h) if prev is None else Fraction(1, p**h) - Fraction(1, p**prev)
        if prob:
            out[s] = prob
        prev = h
    return out


def _depth(rng, p, caps):
    """Leading zero base-p digits, capped elementwise at `caps`."""
    caps = np.asarray(caps, dtype=np.int64)
    depth = np.zeros(caps.shape, dtype=np.int64)
    alive = np.flatnonzero(caps > 0)
    while alive.size:
        digits = rng.integers(0, p, size=alive.size)
        hit = alive[digits == 0]
        depth[hit] += 1
        alive = hit[depth[hit] < caps[hit]]
    return depth


def _first_fit(heights, depth, start=None):
    """First column (0-based, >= start) whose length is at most depth."""
    ok = heights <= depth[:, None]
    if start is not None:
        ok &= np.arange(heights.shape[1])[None, :] >= start[:, None]
    return ok.argmax(axis=1)


def _rows_to_partitions(heights):
    uniq, counts = np.unique(heights, axis=0, return_counts=True)
    out = Counter()
    for row, c in zip(uniq, counts):
        cols = [int(x) for x in row if x]
        out[conjugate(Partition(cols))] += int(c)
    return out


def _borodin_chunk(n, p, size, rng):
    heights = np.zeros((size, n + 1), dtype=np.int64)
    rows = np.arange(size)
    for _ in range(n):
        depth = _depth(rng, p, heights[:, 0])
        col = _first_fit(heights, depth)
        if np.any((col > 0) & (heights[rows, np.maximum(col - 1, 0)] <= heights[rows, col])):
            raise AssertionError("division step left the set of partitions")
        heights[rows, col] += 1
    return heights


def _coin_chunk(p, limit, size, rng):
    heights = np.zeros((size, 8), dtype=np.int64)
    for coin in range(1, limit + 1):
        active = np.arange(size)
        start = np.zeros(size, dtype=np.int64)
        while active.size:
            heads = _depth(rng, p, np.full(active.size, coin)) >= coin
            active = active[heads]
            if not active.size:
                break
            if np.any(heights[:, -1]) or start[active].max() + 2 >= heights.shape[1]:
                heights = np.pad(heights, ((0, 0), (0, heights.shape[1])))
            sub = heights[active]
            caps = sub[np.arange(active.size), start[active]]
            depth = _depth(rng, p, caps)
            col = _first_fit(sub, depth, start[active])
            left = np.maximum(col - 1, 0)
            if np.any((col > 0) & (sub[np.arange(active.size), left] <= sub[np.arange(active.size), col])):
                raise AssertionError("coin step left the set of partitions")
            heights[active, col] += 1
            start[active] = col + 1
    return heights


def _chunks(trials):
    k = 0
    while trials > 0:
        yield k, min(CHUNK, trials)
        trials -= CHUNK
        k += 1


def borodin_counts(n: int, p: int, trials: int, seed: int = DEFAULT_SEED) -> Counter:
    if n < 0 or trials < 1:
        raise ValueError("need n >= 0 and trials >= 1")
    out = Counter()
    for k, size in _chunks(trials):
        out += _rows_to_partitions(_borodin_chunk(n, p, size, make_rng(seed, k)))
    return out


def coin_counts(p: int, trials: int, seed: int = DEFAULT_SEED, limit: int = DEFAULT_COIN_LIMIT) -> Counter:
    if limit < 1 or trials < 1:
        raise ValueError("need limit >= 1 and trials >= 1")
    out = Counter()
    for k, size in _chunks(trials):
        out += _rows_to_partitions(_coin_chunk(p, limit, size, make_rng(seed, k)))
    return out


def borodin_sample(n: int, p: int, seed: int = DEFAULT_SEED) -> Partition:
    (lam,) = borodin_counts(n, p, 1, seed)
    return lam


def coin_sample(p: int, seed: int = DEFAULT_SEED, limit: int = DEFAULT_COIN_LIMIT) -> Partition:
    (lam,) = coin_counts(p, 1, seed, limit)
    return lam


def coin_truncation_bound(p: int, limit: int) -> Fraction:
    """Σ_{i > limit} p^-i: bounds the chance that any coin past the limit would show heads."""
    return Fraction(1, p**limit * (p - 1))


def coin_limit_probability(lam, p: int, terms: int = 64) -> Fraction:
    """(1/p)_∞ w(λ), with (1/p)_∞ truncated after `terms` factors (error below p^-terms)."""
    return euler_inf(p, terms)[0] * class_weight(lam, p)


def borodin_path_probability(tableau: StandardTableau, p: int) -> Fraction:
    """Probability that the division algorithm grows exactly along `tableau`."""
    prob = Fraction(1)
    for j in range(1, tableau.size + 1):
        before = tableau.subshape(j - 1)
        column = tableau.position(j)[1]
        prob *= borodin_column_probs(before, p).get(column, Fraction(0))
    return prob


@dataclass(frozen=True)
class SamplerSpec:
    kind: str
    p: int
    n: int = 0
    limit: int = DEFAULT_COIN_LIMIT

    @classmethod
    def parse(cls, text: str) -> "SamplerSpec":
        """Read ``"borodin:n=6,p=2"`` or ``"coins:p=2,limit=64"``."""
        kind, _, rest = text.strip().partition(":")
        params = {}
        for item in filter(None, rest.split(",")):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"bad sampler parameter {item!r}")
            params[key.strip()] = int(value)
        if kind == "borodin":
            unknown = set(params) - {"n", "p"}
            if params.get("n") == 0:
                # nothing is ever drawn, so p only needs to be valid
                params.setdefault("p", 2)
            if unknown or "n" not in params or "p" not in params:
                raise ValueError(f"borodin sampler needs n and p: {text!r}")
            spec = cls("borodin", params["p"], n=params["n"])
        elif kind == "coins":
            unknown = set(params) - {"p", "limit"}
            if unknown or "p" not in params:
                raise ValueError(f"coin sampler needs p: {text!r}")
            spec = cls("coins", params["p"], limit=params.get("limit", DEFAULT_COIN_LIMIT))
        else:
            raise ValueError(f"unknown sampler {kind!r}")
        if spec.p < 2 or spec.n < 0 or spec.limit < 1:
            raise ValueError(f"parameters out of range: {text!r}")
        return spec

    def __str__(self):
        if self.kind == "borodin":
            return f"borodin:n={self.n},p={self.p}"
        return f"coins:p={self.p},limit={self.limit}"

    def counts(self, trials: int, seed: int = DEFAULT_SEED) -> Counter:
        if self.kind == "borodin":
            return borodin_counts(self.n, self.p, trials, seed)
        return coin_counts(self.p, trials, seed, self.limit)

    def exact_target(self):
        """Exact law of the sample when one exists as a finite table, else None."""
        if self.kind == "borodin" and self.n >= 1:
            return dict(jordan_dist(TRIANGULAR, self.n, self.p).items())
        if self.kind == "borodin":
            return {Partition(): Fraction(1)}
        return None


def empirical_distribution(spec, trials: int, seed: int = DEFAULT_SEED) -> dict:
    """Sample frequencies as exact fractions count/trials."""
    if isinstance(spec, str):
        spec = SamplerSpec.parse(spec)
    counts = spec.counts(trials, seed)
    return {lam: Fraction(c, trials) for lam, c in counts.items()}


def total_variation(empirical: dict, exact: dict) -> Fraction:
    keys = set(empirical) | set(exact)
    return sum((abs(empirical.get(k, 0) - exact.get(k, 0)) for k in keys), Fraction(0)) / 2
