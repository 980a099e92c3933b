from itertools import combinations

import numpy as np
import pytest

from twotrunc.ffk import (
    CanonicalRep,
    canonical_rep,
    ffk_feasible,
    gamma_ffk_check,
    pseudo_power,
    turan_clique_count,
    turan_part_sizes,
)


def turan_cliques_brute(n, k, r):
    """Enumerate k-subsets of the explicit Turan graph and keep the cliques."""
    part = []
    for i, size in enumerate(turan_part_sizes(n, r)):
        part += [i] * size
    return sum(1 for c in combinations(range(n), k) if len({part[v] for v in c}) == k)


def all_representations(k, r, limit):
    """Every digit sequence satisfying the canonical conditions with value <= limit."""
    found = {}

    def extend(terms, value, kk, rr, bound):
        if terms:
            n_last, k_last, _ = terms[-1]
            if n_last >= k_last > 0:
                found.setdefault(value, []).append(tuple(terms))
        if kk < 1:
            return
        n = kk
        while (bound is None or n < bound):
            c = turan_clique_count(n, kk, rr)
            if value + c > limit:
                break
            extend(terms + [(n, kk, rr)], value + c, kk - 1, rr - 1, n - n // rr)
            n += 1

    extend([], 0, k, r, None)
    return found


def max_triangles_3colorable(edges, max_vertices):
    """Exhaustive: most triangles in a 3-partite graph with exactly ``edges`` edges."""
    best = 0
    for a in range(1, max_vertices + 1):
        for b in range(1, a + 1):
            for c in range(1, min(b, max_vertices - a - b) + 1):
                parts = [0] * a + [1] * b + [2] * c
                nv = a + b + c
                E = [(u, v) for u, v in combinations(range(nv), 2) if parts[u] != parts[v]]
                if len(E) < edges:
                    continue
                index = {e: i for i, e in enumerate(E)}
                tri = np.array([[index[(u, v)], index[(u, w)], index[(v, w)]]
                                for u, v, w in combinations(range(nv), 3) if len({parts[u], parts[v], parts[w]}) == 3])
                combos = np.array(list(combinations(range(len(E)), edges)), dtype=np.int8)
                chosen = np.zeros((len(combos), len(E)), dtype=bool)
                np.put_along_axis(chosen, combos.astype(np.int64), True, axis=1)
                count = chosen[:, tri].all(axis=2).sum(axis=1).max()
                best = max(best, int(count))
    return best


def test_turan_examples():
    assert turan_clique_count(5, 2, 2) == 6
    assert turan_clique_count(7, 3, 3) == 12
    assert all(turan_clique_count(n, 1, r) == n for n in range(10) for r in range(1, 5))
    assert turan_clique_count(4, 0, 2) == 1
    assert turan_clique_count(6, 4, 3) == 0
    with pytest.raises(ValueError):
        turan_clique_count(3, 1, 0)


def test_turan_matches_brute_force():
    for n in range(13):
        for r in range(1, max(n, 1) + 1):
            for k in range(n + 1):
                assert turan_clique_count(n, k, r) == turan_cliques_brute(n, k, r), (n, k, r)


def test_canonical_examples():
    assert canonical_rep(6, 2, 2).terms == ((5, 2, 2),)
    assert canonical_rep(7, 2, 2).terms == ((5, 2, 2), (1, 1, 1))
    for k in range(1, 5):
        for r in range(k, 7):
            assert canonical_rep(1, k, r).terms == ((k, k, r),)


def test_canonical_rep_unique_and_valid():
    for k in range(1, 6):
        for r in range(k, 9):
            reps = all_representations(k, r, 1000)
            for m in range(1, 1001):
                rep = canonical_rep(m, k, r)
                assert rep.value == m and rep.digits_ok()
                assert reps.get(m) == [rep.terms], (m, k, r, reps.get(m))


def test_canonical_rep_errors():
    with pytest.raises(ValueError):
        canonical_rep(0, 2, 2)
    with pytest.raises(ValueError):
        canonical_rep(5, 3, 2)


def test_pseudo_power_examples():
    assert pseudo_power(6, 2, 2) == 0
    assert pseudo_power(0, 3, 3) == 0
    assert pseudo_power(5, 1, 2) == 6


def test_pseudo_power_7_2_3_against_exhaustive_search():
    expected = max_triangles_3colorable(7, 9)
    assert expected == 3
    assert pseudo_power(7, 2, 3) == expected


def test_pseudo_power_monotone():
    for k in range(1, 5):
        for r in range(k, 7):
            vals = [pseudo_power(m, k, r) for m in range(0, 400)]
            assert all(x <= y for x, y in zip(vals, vals[1:]))


def test_ffk_feasible_examples():
    assert ffk_feasible((5, 6), 2)
    assert not ffk_feasible((2, 2), 2)
    assert ffk_feasible((7,), 1) and ffk_feasible((7,), 3)
    assert not ffk_feasible((3, 1), 1)
    assert not ffk_feasible((-1,), 2)


def test_gamma_check_examples():
    assert gamma_ffk_check((1, 0, 0), 4).passed
    bad = gamma_ffk_check((1, 1, 1), 4)
    assert not bad.results["gamma2_at_most_binomial"] and not bad.passed
    ok = gamma_ffk_check((1, 3, 2), 4)
    assert ok.passed and ok.results["gamma2_at_most_binomial"]
    assert set(gamma_ffk_check((1, 2), 3).results) == {"nonnegative", "ffk"}
    assert not gamma_ffk_check((1, -1), 2).passed


def test_dataclass_digit_check():
    assert not CanonicalRep(()).digits_ok()
    assert not CanonicalRep(((5, 2, 2), (4, 1, 1))).digits_ok()
