"""Brute-force oracle for finite abelian p-groups Z/p^λ1 ⊕ Z/p^λ2 ⊕ ...

Elements are encoded as integers in mixed radix, subgroups as frozensets of
those codes.  Everything is exhaustive and meant for groups of at most a few
thousand elements.
"""

from functools import cached_property

from . import limits
from .partitions import Partition, conjugate

MAX_ORDER = 2**12


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class AbelianPGroup:
    def __init__(self, lam, p: int, max_order: int = MAX_ORDER):
        if not is_prime(p):
            raise ValueError(f"oracle needs a prime, got {p}")
        self.lam = Partition(lam)
        self.p = p
        self.moduli = [p**x for x in self.lam]
        self.order = p**self.lam.size
        limits.check(self.order, max_order, "group order")
        self.elements = []
        for code in range(self.order):
            digits = []
            for m in self.moduli:
                digits.append(code % m)
                code //= m
            self.elements.append(tuple(digits))

    def encode(self, digits) -> int:
        code = 0
        for d, m in zip(reversed(digits), reversed(self.moduli)):
            code = code * m + d % m
        return code

    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.elements[a], self.elements[b])])

    def scale(self, k: int, a: int) -> int:
        return self.encode([k * x for x in self.elements[a]])

    def cyclic(self, a: int) -> frozenset:
        out = {0}
        x = a
        while x not in out:
            out.add(x)
            x = self.add(x, a)
        return frozenset(out)

    def sumset(self, h, k) -> frozenset:
        return frozenset(self.add(a, b) for a in h for b in k)

    @cached_property
    def subgroups(self) -> list:
        """Every subgroup, found by closing the cyclic subgroups under joins."""
        cyclics = {self.cyclic(a) for a in range(self.order)}
        found = set(cyclics)
        found.add(frozenset({0}))
        frontier = list(found)
        while frontier:
            new = []
            for h in frontier:
                for c in cyclics:
                    if not c <= h:
                        j = self.sumset(h, c)
                        if j not in found:
                            found.add(j)
                            new.append(j)
            frontier = new
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def _type_from_torsion(self, torsion_sizes) -> Partition:
        # torsion_sizes[k-1] = log_p |X[p^k]|, nondecreasing, so column lengths are the jumps.
        cols = []
        prev = 0
        for c in torsion_sizes:
            if c == prev:
                break
            cols.append(c - prev)
            prev = c
        return conjugate(Partition(cols)) if cols else Partition()

    def _log_p(self, size):
        k = 0
        while size > 1:
            if size % self.p:
                raise AssertionError(f"{size} is not a power of {self.p}")
            size //= self.p
            k += 1
        return k

    def subgroup_type(self, h) -> Partition:
        exponent = self.lam[0] if self.lam else 0
        sizes = []
        for k in range(1, exponent + 1):
            pk = self.p**k
            sizes.append(self._log_p(sum(1 for a in h if self.scale(pk, a) == 0)))
        return self._type_from_torsion(sizes)

    def quotient_type(self, h) -> Partition:
        """Type of G/H from |(G/H)[p^k]| = |{x : p^k x ∈ H}| / |H|."""
        exponent = self.lam[0] if self.lam else 0
        sizes = []
        for k in range(1, exponent + 1):
            pk = self.p**k
            count = sum(1 for a in range(self.order) if self.scale(pk, a) in h)
            sizes.append(self._log_p(count // len(h)))
        return self._type_from_torsion(sizes)

    def count_subgroups_of_type(self, mu) -> int:
        mu = Partition(mu)
        return sum(1 for h in self.subgroups if self.subgroup_type(h) == mu)

    def count_sub_quotient(self, quotient, sub) -> int:
        """|{H ≤ G : G/H has type `quotient`, H has type `sub`}|."""
        quotient, sub = Partition(quotient), Partition(sub)
        return sum(
            1
            for h in self.subgroups
            if self.subgroup_type(h) == sub and self.quotient_type(h) == quotient
        )

    def count_maximal_chains(self) -> int:
        """Chains 0 = H_0 < H_1 < ... < H_n = G with every index equal to p."""
        by_size = {}
        for h in self.subgroups:
            by_size.setdefault(len(h), []).append(h)
        chains = {frozenset({0}): 1}
        size = 1
        while size < self.order:
            size *= self.p
            for h in by_size.get(size, []):
                chains[h] = sum(c for k, c in chains.items() if len(k) * self.p == size and k <= h)
        return chains[frozenset(range(self.order))]


def subgroups_of_type_oracle(lam, p: int, mu) -> int:
    """Count subgroups of type mu in the group of type lam by exhaustive search."""
    return AbelianPGroup(lam, p).count_subgroups_of_type(mu)


def maximal_chain_oracle(lam, p: int) -> int:
    return AbelianPGroup(lam, p).count_maximal_chains()
