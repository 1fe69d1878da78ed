"""Eigenvalues of the line permutation lying in an arc of the unit circle.

An orbit of size p^r on lines contributes one eigenvalue at each p^r-th root
of unity, so the number inside the half-open arc (1, e^{2πiθ}] is
floor(p^r θ) per orbit.  θ is always an exact fraction so the floor is exact
at boundary points such as θ = 1/2.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor

from .measures import GL, TRIANGULAR, jordan_dist
from .lines import orbit_profile_formula
from .partitions import Partition, partial_column_sum
from .qseries import q_product_range


def _theta(theta) -> Fraction:
    if isinstance(theta, float):
        raise TypeError("theta must be an exact fraction, not a float")
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie strictly between 0 and 1, got {theta}")
    return theta


def x_r(lam, p: int, r: int) -> int:
    """(p^{λ'_1+...+λ'_r} - p^{λ'_1+...+λ'_{r-1}}) / (p - 1)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    lam = Partition(lam)
    if r > lam.size:
        return 0
    return (p ** partial_column_sum(lam, r) - p ** partial_column_sum(lam, r - 1)) // (p - 1)


def x_theta_telescoped(lam, p: int, theta) -> int:
    """Σ_{r≥1} (X_{p^(r-1)+1} + ... + X_{p^r}) / p^r · floor(p^r θ)."""
    theta = _theta(theta)
    lam = Partition(lam)
    total = Fraction(0)
    r = 1
    while lam and p ** (r - 1) < lam[0]:
        block = sum(x_r(lam, p, i) for i in range(p ** (r - 1) + 1, p**r + 1))
        total += Fraction(block, p**r) * floor(p**r * theta)
        r += 1
    if total.denominator != 1:
        raise AssertionError(f"non-integral eigenvalue count {total}")
    return total.numerator


def x_theta_orbits(lam, p: int, theta) -> int:
    """Σ_r (#orbits of size p^r) · floor(p^r θ), read off the orbit profile."""
    theta = _theta(theta)
    counts = orbit_profile_formula(lam, p).orbit_counts()
    return sum(c * floor(p**r * theta) for r, c in counts.items())


def x_theta(lam, p: int, theta) -> int:
    a = x_theta_telescoped(lam, p, theta)
    b = x_theta_orbits(lam, p, theta)
    if a != b:
        raise AssertionError(f"eigenvalue counts disagree for {lam}, p={p}, theta={theta}: {a} != {b}")
    return a


def mean_xr_exact(model: str, n: int, p: int, r: int) -> Fraction:
    return jordan_dist(model, n, p).expect(lambda lam: x_r(lam, p, r))


def _check_r(n, r):
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")


def mean_xr_gl_closed(n: int, p: int, r: int) -> Fraction:
    """p^r (1 - p^{-(n-r+1)}) ... (1 - p^{-n}) / (p - 1)."""
    _check_r(n, r)
    return p**r * q_product_range(p, n - r + 1, n) / (p - 1)


def mean_xr_tn_closed(n: int, p: int, r: int) -> Fraction:
    """(p - 1)^{r-1} C(n, r)."""
    _check_r(n, r)
    return Fraction((p - 1) ** (r - 1) * comb(n, r))


def mean_xr_closed(model: str, n: int, p: int, r: int) -> Fraction:
    if model == GL:
        return mean_xr_gl_closed(n, p, r)
    if model == TRIANGULAR:
        return mean_xr_tn_closed(n, p, r)
    raise ValueError(f"unknown model {model!r}")


@dataclass(frozen=True)
class ArcMean:
    model: str
    n: int
    p: int
    theta: Fraction
    exact: Fraction
    leading: Fraction
    lower: Fraction
    upper: Fraction
    lower_naive: Fraction

    @property
    def within(self) -> bool:
        return self.lower <= self.exact <= self.upper


def _blocks(n, p):
    """Index ranges (p^(r-1), p^r] for r >= 1, cut off at n."""
    r = 1
    while p ** (r - 1) < n:
        yield r, range(p ** (r - 1) + 1, min(p**r, n) + 1)
        r += 1


def arc_lower_bound(model: str, n: int, p: int, theta, naive: bool = False) -> Fraction:
    """Lower bound on the mean arc count.

    GL: leading - θ E(X_1) - Σ_r E(X_{p^(r-1)+1} + ... + X_{p^r}) / p^r with
    the closed-form means.  Fixed lines (counted by X_1) only carry the
    eigenvalue 1, which is outside the arc, hence the θ E(X_1) term.  With
    ``naive=True`` that term is dropped, which is not a valid bound for
    small n and is kept only for reporting.
    """
    theta = _theta(theta)
    leading = theta * Fraction(p**n - 1, p - 1)
    if model == GL:
        if not naive:
            leading -= theta * mean_xr_gl_closed(n, p, 1)
        loss = sum(
            (sum((mean_xr_gl_closed(n, p, i) for i in idx), Fraction(0)) / p**r for r, idx in _blocks(n, p)),
            Fraction(0),
        )
    elif model == TRIANGULAR:
        loss = p * sum((mean_xr_tn_closed(n, p, r) / r for r in range(1, n + 1)), Fraction(0))
    else:
        raise ValueError(f"unknown model {model!r}")
    return leading - loss


def mean_arc(model: str, n: int, p: int, theta) -> ArcMean:
    theta = _theta(theta)
    exact = jordan_dist(model, n, p).expect(lambda lam: x_theta(lam, p, theta))
    leading = theta * Fraction(p**n - 1, p - 1)
    return ArcMean(
        model,
        n,
        p,
        theta,
        exact,
        leading,
        arc_lower_bound(model, n, p, theta),
        leading,
        arc_lower_bound(model, n, p, theta, naive=True),
    )


def second_moment_gl_closed(n: int, p: int, r: int, s: int) -> Fraction:
    """Closed form for E(X_r X_s) over unipotent GL(n, p), 1 <= r <= s <= n.

    Products whose index range reaches k = 0 vanish through the factor (1 - p^0).
    """
    if not 1 <= r <= s <= n:
        raise ValueError(f"need 1 <= r <= s <= n, got r={r}, s={s}, n={n}")
    head = Fraction(p, p - 1) * q_product_range(p, n - s - r + 1, n)
    tail = sum((q_product_range(p, n - a - s + 1, n) for a in range(r)), Fraction(0))
    return Fraction(p ** (r + s - 1), p - 1) * (head + tail)


def second_moment_exact(n: int, p: int, r: int, s: int) -> Fraction:
    return jordan_dist(GL, n, p).expect(lambda lam: x_r(lam, p, r) * x_r(lam, p, s))
