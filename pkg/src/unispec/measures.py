"""Exact Jordan-type distributions and the p-group identities behind them.

Two models are supported: a uniform unipotent element of GL(n, p) and a
uniform element of T(n, p), the upper unitriangular matrices.  Probabilities
are exact fractions keyed by :class:`~unispec.partitions.Partition`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import limits
from .partitions import (
    Partition,
    enumerate_partitions,
    enumerate_syt,
    m_star,
    n_stat,
    partial_column_sum,
)
from .pgroups import AbelianPGroup
from .qseries import class_weight, hl_principal, poch_inv

REF_SUM = "class-weight sum identity"
REF_SUBGROUP_SUM = "subgroup-count sum identity"
REF_DUALITY = "Hall polynomial duality"

GL = "gl-unipotent"
TRIANGULAR = "triangular"
MODELS = (GL, TRIANGULAR)


@dataclass(frozen=True)
class JordanDistribution:
    model: str
    n: int
    p: int
    probs: dict = field(repr=False)

    def __post_init__(self):
        if set(self.probs) != set(enumerate_partitions(self.n, bound=max(self.n, 0))):
            raise ValueError("keys must be exactly the partitions of n")
        if sum(self.probs.values()) != 1:
            raise ValueError(f"{self.model} distribution for n={self.n}, p={self.p} does not sum to 1")
        if any(not 0 <= v <= 1 for v in self.probs.values()):
            raise ValueError("probabilities must lie in [0, 1]")

    def __getitem__(self, lam):
        return self.probs[Partition(lam)]

    def items(self):
        """(partition, probability) pairs in reverse-lexicographic order."""
        return [(lam, self.probs[lam]) for lam in enumerate_partitions(self.n, bound=self.n)]

    def expect(self, f) -> Fraction:
        return sum((prob * f(lam) for lam, prob in self.items()), Fraction(0))


def _check_p(p):
    if int(p) != p or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p}")


def gl_class_probability(lam, p: int) -> Fraction:
    """p^n (1/p)_n / (p^{Σλ'^2} Π (1/p)_{m_i})."""
    lam = Partition(lam)
    n = lam.size
    return p**n * poch_inv(p, n) * class_weight(lam, p)


def gl_class_probability_hl(lam, p: int) -> Fraction:
    """The same probability through P_λ(1/p, 1/p^2, ...; 1/p)."""
    lam = Partition(lam)
    n = lam.size
    return p**n * poch_inv(p, n) * hl_principal(lam, p) / p ** n_stat(lam)


def gl_unipotent_dist(n: int, p: int) -> JordanDistribution:
    _check_p(p)
    if n < 1:
        raise ValueError("n must be at least 1")
    limits.check(n, limits.cells_bound(limits.GL_DIST_BOUND), "n")
    probs = {lam: gl_class_probability(lam, p) for lam in enumerate_partitions(n, bound=n)}
    return JordanDistribution(GL, n, p, probs)


@lru_cache(maxsize=None)
def tableau_weight_sum(lam, p: int) -> Fraction:
    """Σ over standard tableaux S of shape λ of Π_j (1 - p^{-m*(Λ_j)}).

    Summed over growth paths in Young's lattice rather than by listing the
    tableaux: the factor at step j only depends on Λ_j and the column of j.
    """
    lam = Partition(lam)
    if not lam:
        return Fraction(1)
    total = Fraction(0)
    for i in lam.removable_corners():
        column = lam.part(i)
        mult = sum(1 for x in lam if x == column)
        total += tableau_weight_sum(lam.remove_from_row(i), p) * (1 - Fraction(1, p**mult))
    return total


def tableau_weight_sum_listed(lam, p: int) -> Fraction:
    """Same sum as :func:`tableau_weight_sum`, by enumerating every tableau."""
    total = Fraction(0)
    for s in enumerate_syt(lam):
        w = Fraction(1)
        for j in range(1, s.size + 1):
            w *= 1 - Fraction(1, p ** m_star(s, j))
        total += w
    return total


def chain_count(lam, p: int) -> int:
    """Maximal chains of subgroups in the abelian p-group of type λ.

    p^{n(λ)} / (1 - 1/p)^n times the tableau sum; the result must be an integer.
    """
    _check_p(p)
    lam = Partition(lam)
    limits.check(lam.size, limits.cells_bound(limits.TABLEAU_BOUND), "|lambda|")
    value = p ** n_stat(lam) * tableau_weight_sum(lam, p) / (1 - Fraction(1, p)) ** lam.size
    if value.denominator != 1:
        raise AssertionError(f"chain count for {lam}, p={p} is not an integer: {value}")
    return value.numerator


def triangular_probability(lam, p: int, route: str = "tableau") -> Fraction:
    """P(Jordan type λ) for a uniform element of T(n, p).

    ``route="tableau"``: P_λ(1, 1/p, ...; 1/p) times the tableau sum.
    ``route="chain"``: (p-1)^n P_λ(1/p, ...; 1/p) chain_λ(p) / p^{n(λ)}.
    """
    lam = Partition(lam)
    if route == "tableau":
        return hl_principal(lam, p, shifted=True) * tableau_weight_sum(lam, p)
    if route == "chain":
        return (p - 1) ** lam.size * hl_principal(lam, p) * chain_count(lam, p) / p ** n_stat(lam)
    raise ValueError(f"unknown route {route!r}")


def triangular_dist(n: int, p: int, route: str = "tableau") -> JordanDistribution:
    _check_p(p)
    if n < 1:
        raise ValueError("n must be at least 1")
    limits.check(n, limits.cells_bound(limits.TABLEAU_BOUND), "n")
    probs = {lam: triangular_probability(lam, p, route) for lam in enumerate_partitions(n, bound=n)}
    return JordanDistribution(TRIANGULAR, n, p, probs)


def jordan_dist(model: str, n: int, p: int) -> JordanDistribution:
    if model == GL:
        return gl_unipotent_dist(n, p)
    if model == TRIANGULAR:
        return triangular_dist(n, p)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def subgroup_count_type_r(lam, p: int, r: int) -> int:
    """Number of cyclic subgroups of order p^r: elements of order p^r over p^r - p^(r-1)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    lam = Partition(lam)
    if not lam or r > lam[0]:
        return 0
    num = p ** partial_column_sum(lam, r) - p ** partial_column_sum(lam, r - 1)
    den = p**r - p ** (r - 1)
    if num % den:
        raise AssertionError(f"subgroup count for {lam}, r={r} is not an integer")
    return num // den


@dataclass
class IdentityReport:
    """Both sides of an exact identity check."""

    name: str
    ref: str
    lhs: Fraction
    rhs: Fraction
    context: dict = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ref": self.ref,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "context": self.context,
        }


def verify_sum_identity(n: int, p: int) -> IdentityReport:
    limits.check(n, 14, "n")
    lhs = sum((class_weight(lam, p) for lam in enumerate_partitions(n, bound=n)), Fraction(0))
    rhs = 1 / (p**n * poch_inv(p, n))
    return IdentityReport("sum-identity", REF_SUM, lhs, rhs, {"n": n, "p": p})


def _subgroup_counter(mu, p, use_oracle=False):
    mu = Partition(mu)
    if use_oracle:
        return lambda lam: AbelianPGroup(lam, p).count_subgroups_of_type(mu), "oracle"
    if len(mu) == 1:
        return lambda lam: subgroup_count_type_r(lam, p, mu[0]), "formula"
    if not mu:
        return lambda lam: 1, "trivial"
    return lambda lam: AbelianPGroup(lam, p).count_subgroups_of_type(mu), "oracle"


def verify_likemac(n: int, mu, p: int, use_oracle: bool = False) -> IdentityReport:
    """Σ_{λ⊢n} #{G_1 ≤ G_λ of type μ} · w(λ) = w(μ) / (p^{n-|μ|} (1/p)_{n-|μ|}).

    Subgroup counts come from the closed form when μ = (r) and from the
    exhaustive oracle otherwise, or always from the oracle with `use_oracle`.
    """
    mu = Partition(mu)
    if mu.size > n:
        raise ValueError("|mu| must not exceed n")
    count, source = _subgroup_counter(mu, p, use_oracle)
    lhs = sum(
        (count(lam) * class_weight(lam, p) for lam in enumerate_partitions(n, bound=n)),
        Fraction(0),
    )
    k = n - mu.size
    rhs = class_weight(mu, p) / (p**k * poch_inv(p, k))
    return IdentityReport(
        "subgroup-sum-identity", REF_SUBGROUP_SUM, lhs, rhs, {"n": n, "mu": str(mu), "p": p, "counts": source}
    )


def verify_duality(lam, p: int, mu, nu) -> IdentityReport:
    """#{G_1 : G/G_1 = μ, G_1 = ν} against the same count with μ and ν swapped."""
    group = AbelianPGroup(lam, p)
    lhs = group.count_sub_quotient(mu, nu)
    rhs = group.count_sub_quotient(nu, mu)
    return IdentityReport(
        "hall-duality",
        REF_DUALITY,
        Fraction(lhs),
        Fraction(rhs),
        {"lambda": str(Partition(lam)), "mu": str(Partition(mu)), "nu": str(Partition(nu)), "p": p},
    )
