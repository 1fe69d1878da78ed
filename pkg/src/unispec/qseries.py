"""Exact q-series quantities and Hall-Littlewood evaluations.

Everything here returns :class:`fractions.Fraction`; the text form of a value
is ``str(value)``, which is already ``"num/den"`` in lowest terms.
"""

from fractions import Fraction
from itertools import permutations

from . import limits
from .partitions import Partition, multiplicities, n_stat, sum_conjugate_squares


def poch_inv(p: int, r: int) -> Fraction:
    """(1/p)_r = (1 - 1/p)(1 - 1/p^2)...(1 - 1/p^r); 1 for r = 0."""
    _check_p(p)
    if r < 0:
        raise ValueError("r must be non-negative")
    out = Fraction(1)
    for i in range(1, r + 1):
        out *= 1 - Fraction(1, p**i)
    return out


def euler_inf(p: int, terms: int) -> tuple:
    """Truncation of (1/p)_∞.

    Returns ``(value, error_bound)`` where value = (1/p)_terms and the true
    infinite product lies within error_bound = p^-terms below it.
    """
    return poch_inv(p, terms), Fraction(1, p**terms)


def q_product_range(p: int, lo: int, hi: int) -> Fraction:
    """Π_{k=lo..hi} (1 - p^-k).  Empty (lo > hi) gives 1; a range containing k = 0 gives 0."""
    if lo > hi:
        return Fraction(1)
    if lo <= 0:
        if hi < 0:
            raise ValueError("range lies below zero")
        return Fraction(0)
    out = Fraction(1)
    for k in range(lo, hi + 1):
        out *= 1 - Fraction(1, p**k)
    return out


def class_weight(lam, p: int) -> Fraction:
    """1 / (p^{Σ λ'_i^2} Π_i (1/p)_{m_i(λ)}), the common summand of the unipotent identities."""
    lam = Partition(lam)
    den = Fraction(p ** sum_conjugate_squares(lam))
    for m in multiplicities(lam).values():
        den *= poch_inv(p, m)
    return 1 / den


def hl_principal(lam, p: int, shifted: bool = False) -> Fraction:
    """Principal specialisation of the Hall-Littlewood polynomial at t = 1/p.

    Unshifted: P_λ(1/p, 1/p^2, ...; 1/p) = p^{n(λ)} / (p^{Σλ'^2} Π (1/p)_{m_i}).
    Shifted: P_λ(1, 1/p, 1/p^2, ...; 1/p), which is p^{|λ|} times the unshifted value
    by homogeneity.
    """
    _check_p(p)
    lam = Partition(lam)
    value = p ** n_stat(lam) * class_weight(lam, p)
    if shifted:
        value *= p**lam.size
    return value


def _distinct_permutations(seq):
    seq = sorted(seq, reverse=True)
    n = len(seq)
    # Standard next-permutation walk over a multiset, descending start.
    a = list(seq)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] <= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] >= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def _coset_sum(exponents, xs, t):
    total = Fraction(0)
    n = len(xs)
    for arrangement in _distinct_permutations(exponents):
        term = Fraction(1)
        for x, e in zip(xs, arrangement):
            if e:
                term *= x**e
        for k in range(n):
            for l in range(n):
                if arrangement[k] > arrangement[l]:
                    term *= (xs[k] - t * xs[l]) / (xs[k] - xs[l])
        total += term
    return total


def _lagrange_at(nodes, values, x):
    out = Fraction(0)
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        w = Fraction(yi)
        for j, xj in enumerate(nodes):
            if j != i:
                w *= Fraction(x - xj, xi - xj)
        out += w
    return out


def hl_evaluate(lam, xs, t, max_vars: int | None = None) -> Fraction:
    """P_λ(x_1, ..., x_N; t) by the sum over cosets S_N / S_N^λ.

    Repeated x-values make individual coset terms singular even though the
    polynomial is fine.  They are handled exactly: P_λ has degree at most λ_1
    in each variable, so a repeated coordinate is replaced by λ_1 + 1 fresh
    distinct nodes and the value recovered by Lagrange interpolation.
    """
    lam = Partition(lam)
    xs = [Fraction(x) for x in xs]
    t = Fraction(t)
    bound = max_vars if max_vars is not None else limits.HL_VARIABLE_BOUND
    limits.check(len(xs), bound, "number of variables")
    if len(lam) > len(xs):
        return Fraction(0)
    if not lam:
        return Fraction(1)
    seen = set()
    for k, x in enumerate(xs):
        if x in seen:
            others = set(xs[:k] + xs[k + 1:])
            nodes = []
            candidate = max(abs(v) for v in xs) + 1
            while len(nodes) < lam[0] + 1:
                if candidate not in others:
                    nodes.append(candidate)
                candidate += 1
            values = [hl_evaluate(lam, xs[:k] + [v] + xs[k + 1:], t, max_vars=bound) for v in nodes]
            return _lagrange_at(nodes, values, x)
        seen.add(x)
    exponents = list(lam) + [0] * (len(xs) - len(lam))
    return _coset_sum(exponents, xs, t)


def _q_integer(r: int, t: Fraction) -> Fraction:
    return sum((t**k for k in range(r)), Fraction(0))


def hl_evaluate_symmetrized(lam, xs, t) -> Fraction:
    """P_λ via the full S_N symmetrisation, divided by Π_i Π_{r≤m_i} (1-t^r)/(1-t).

    Here m_0 counts the zero parts after padding λ to N entries.  Used as an
    independent check on :func:`hl_evaluate`; needs distinct xs.
    """
    lam = Partition(lam)
    xs = [Fraction(x) for x in xs]
    t = Fraction(t)
    n = len(xs)
    if len(lam) > n:
        return Fraction(0)
    if len(set(xs)) != n:
        raise ValueError("symmetrised formula needs distinct variables")
    exps = list(lam) + [0] * (n - len(lam))
    total = Fraction(0)
    for w in permutations(range(n)):
        y = [xs[w[i]] for i in range(n)]
        term = Fraction(1)
        for yi, e in zip(y, exps):
            term *= yi**e
        for i in range(n):
            for j in range(i + 1, n):
                term *= (y[i] - t * y[j]) / (y[i] - y[j])
        total += term
    norm = Fraction(1)
    counts = multiplicities(lam)
    counts[0] = n - len(lam)
    for m in counts.values():
        for r in range(1, m + 1):
            norm *= _q_integer(r, t)
    return total / norm


def _check_p(p):
    if int(p) != p or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p}")
