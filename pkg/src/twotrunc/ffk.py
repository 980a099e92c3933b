"""Turan clique counts, Frankl-Furedi-Kalai representations and gamma-vector checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence


def turan_part_sizes(n: int, r: int) -> list[int]:
    """Balanced partition of n vertices into r parts, largest first."""
    if r < 1:
        raise ValueError("Turan graph needs at least one part")
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


@lru_cache(maxsize=None)
def turan_clique_count(n: int, k: int, r: int) -> int:
    """Number of k-cliques in T(n, r): the k-th elementary symmetric polynomial of its part sizes."""
    if r < 1:
        raise ValueError("Turan graph needs at least one part")
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    e = [1] + [0] * k
    for size in turan_part_sizes(n, r):
        for j in range(k, 0, -1):
            e[j] += size * e[j - 1]
    return e[k]


@dataclass(frozen=True)
class CanonicalRep:
    """m = sum of turan_clique_count(n_i, k_i, r_i) over ``terms``."""

    terms: tuple[tuple[int, int, int], ...]

    @property
    def value(self) -> int:
        return sum(turan_clique_count(*t) for t in self.terms)

    def digits_ok(self) -> bool:
        if not self.terms:
            return False
        for (n, k, r), (n_next, _, _) in zip(self.terms, self.terms[1:]):
            if not n - n // r > n_next:
                return False
        n_last, k_last, _ = self.terms[-1]
        return n_last >= k_last > 0


def canonical_rep(m: int, k: int, r: int) -> CanonicalRep:
    """Greedy canonical representation of m in the Turan (k, r) digit system."""
    if m < 1 or k < 1 or r < k:
        raise ValueError(f"canonical representation needs m >= 1 and r >= k >= 1 (got m={m}, k={k}, r={r})")
    terms = []
    rest, kk, rr = m, k, r
    while rest > 0:
        if kk < 1:
            raise ValueError(f"no canonical representation of {m} for k={k}, r={r}")
        n = kk
        if turan_clique_count(n, kk, rr) > rest:
            raise ValueError(f"no canonical representation of {m} for k={k}, r={r}")
        # counts grow in n, so double then bisect for the largest n with count <= rest
        hi = n + 1
        while turan_clique_count(hi, kk, rr) <= rest:
            hi *= 2
        lo = n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if turan_clique_count(mid, kk, rr) <= rest:
                lo = mid
            else:
                hi = mid
        terms.append((lo, kk, rr))
        rest -= turan_clique_count(lo, kk, rr)
        kk, rr = kk - 1, rr - 1
    rep = CanonicalRep(tuple(terms))
    if rep.value != m or not rep.digits_ok():
        raise ValueError(f"greedy representation of {m} violates the canonical digit conditions")
    return rep


def pseudo_power(m: int, k: int, r: int) -> int:
    """m^<k>_r: largest number of (k+1)-cliques allowed above m k-cliques."""
    if m == 0:
        return 0
    if k > r:
        raise ValueError(f"an {r}-colourable complex has no {k}-faces")
    rep = canonical_rep(m, k, r)
    return sum(turan_clique_count(n, kk + 1, rr) for n, kk, rr in rep.terms)


def ffk_bound(m: int, k: int, r: int) -> int:
    # faces with more than r vertices are impossible in an r-colourable complex
    if m == 0 or k > r:
        return 0
    return pseudo_power(m, k, r)


def ffk_feasible(f: Sequence[int], r: int) -> bool:
    """Whether f = (f_0, f_1, ...) satisfies f_k <= f_{k-1}^<k>_r for every k >= 1."""
    if any(x < 0 for x in f):
        return False
    return all(f[k] <= ffk_bound(f[k - 1], k, r) for k in range(1, len(f)))


@dataclass
class GammaCheck:
    gamma: tuple[int, ...]
    dim: int
    results: dict[str, bool] = field(default_factory=dict)
    info: dict[str, int | bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.results.values())


def gamma_ffk_check(gamma: Sequence[int], n: int) -> GammaCheck:
    """Inequalities on the gamma-vector of a 2-truncated n-cube.

    The FFK theorem is applied to the shifted sequence f_{i-1} := gamma_i,
    i.e. gamma_{k+1} <= gamma_k^<k>_r with r = floor(n/2).
    """
    gamma = tuple(int(g) for g in gamma)
    chk = GammaCheck(gamma, n)
    r = max(n // 2, 1)
    chk.results["nonnegative"] = all(g >= 0 for g in gamma)
    shifted = gamma[1:]
    chk.results["ffk"] = chk.results["nonnegative"] and _safe_feasible(shifted, r)
    if n in (4, 5):
        g1 = gamma[1] if len(gamma) > 1 else 0
        g2 = gamma[2] if len(gamma) > 2 else 0
        chk.results["gamma1_nonnegative"] = g1 >= 0
        chk.results["gamma2_nonnegative"] = g2 >= 0
        chk.results["gamma2_at_most_binomial"] = 2 * g2 <= g1 * (g1 - 1)
        chk.info["mantel_bound"] = g1 * g1 // 4
        chk.info["within_mantel"] = g2 <= g1 * g1 // 4
    return chk


def _safe_feasible(f: Sequence[int], r: int) -> bool:
    try:
        return ffk_feasible(f, r)
    except ValueError:
        return False
