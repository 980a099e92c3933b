"""Bitmask kernels for simplicial complexes.

A simplex is an ``int64`` whose set bits are its vertices.  Every kernel has a
numba implementation and a pure-numpy implementation with identical output.
The numba path is used when numba imports and ``TWOTRUNC_DISABLE_NUMBA`` is
unset (or ``0``); set it to ``1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

MAX_BITS = 62

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("TWOTRUNC_DISABLE_NUMBA", "0") in ("", "0")
BACKEND = "numba" if USE_NUMBA else "numpy"


def as_mask_array(masks) -> np.ndarray:
    return np.fromiter(masks, dtype=np.int64)


# ---------------------------------------------------------------------------
# numpy implementations

_SUBSET_PATTERNS: dict[int, np.ndarray] = {}


def _subset_pattern(p: int) -> np.ndarray:
    """(2**p, p) 0/1 matrix whose rows enumerate all subsets of p positions."""
    pat = _SUBSET_PATTERNS.get(p)
    if pat is None:
        rows = np.arange(1 << p, dtype=np.int64)
        pat = (rows[:, None] >> np.arange(p, dtype=np.int64)) & 1
        _SUBSET_PATTERNS[p] = pat
    return pat


def _bit_values(masks: np.ndarray, p: int) -> np.ndarray:
    # rows all have popcount p; returns the p single-bit values of each row
    bits = (masks[:, None] >> np.arange(MAX_BITS + 1, dtype=np.int64)) & 1
    rows, cols = np.nonzero(bits)
    return (np.int64(1) << cols.astype(np.int64)).reshape(len(masks), p)


def _submask_groups(masks: np.ndarray):
    """Yield (p, submasks) with submasks[i] listing every subset of the i-th mask of popcount p."""
    pop = np.bitwise_count(masks).astype(np.int64)
    for p in np.unique(pop):
        group = masks[pop == p]
        if p == 0:
            yield 0, np.zeros((len(group), 1), dtype=np.int64)
            continue
        vals = _bit_values(group, int(p))
        yield int(p), vals @ _subset_pattern(int(p)).T


def subset_closure_numpy(maximal: np.ndarray) -> np.ndarray:
    if len(maximal) == 0:
        return np.zeros(0, dtype=np.int64)
    parts = [subs.ravel() for _, subs in _submask_groups(maximal)]
    return np.unique(np.concatenate(parts))


def coface_counts_numpy(faces: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros((len(faces), width + 1), dtype=np.int64)
    if len(faces) == 0:
        return out
    for p, subs in _submask_groups(faces):
        idx = np.searchsorted(faces, subs.ravel())
        np.add.at(out[:, p], idx, 1)
    return out


def flag_violation_numpy(faces: np.ndarray, adjacency: np.ndarray) -> tuple[int, int]:
    nbits = len(adjacency)
    if len(faces) == 0 or nbits == 0:
        return -1, -1
    common = np.full(len(faces), -1, dtype=np.int64)
    for j in range(nbits):
        has = ((faces >> j) & 1).astype(bool)
        common = np.where(has, common & adjacency[j], common)
    common &= ~faces
    big = np.bitwise_count(faces) >= 2
    best = (-1, -1)
    for v in range(nbits):
        sel = big & (((common >> v) & 1) == 1)
        if not sel.any():
            continue
        cand = faces[sel] | (np.int64(1) << v)
        pos = np.searchsorted(faces, cand)
        pos_c = np.minimum(pos, len(faces) - 1)
        missing = faces[pos_c] != cand
        if missing.any():
            i = int(np.flatnonzero(sel)[np.argmax(missing)])
            if best[0] == -1 or (i, v) < best:
                best = (i, v)
    return best


# ---------------------------------------------------------------------------
# numba implementations

if _HAVE_NUMBA:

    @njit(cache=True)
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True)
    def _find(sorted_arr, x):
        lo = 0
        hi = len(sorted_arr)
        while lo < hi:
            mid = (lo + hi) >> 1
            if sorted_arr[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(sorted_arr) and sorted_arr[lo] == x:
            return lo
        return -1

    @njit(cache=True)
    def subset_closure_numba(maximal):
        total = 0
        for m in maximal:
            total += 1 << _popcount(m)
        buf = np.empty(total, dtype=np.int64)
        k = 0
        for m in maximal:
            s = m
            while True:
                buf[k] = s
                k += 1
                if s == 0:
                    break
                s = (s - 1) & m
        return np.unique(buf)

    @njit(cache=True)
    def coface_counts_numba(faces, width):
        out = np.zeros((len(faces), width + 1), dtype=np.int64)
        for t in faces:
            p = _popcount(t)
            s = t
            while True:
                out[_find(faces, s), p] += 1
                if s == 0:
                    break
                s = (s - 1) & t
        return out

    @njit(cache=True)
    def flag_violation_numba(faces, adjacency):
        nbits = len(adjacency)
        for i in range(len(faces)):
            t = faces[i]
            if _popcount(t) < 2:
                continue
            common = np.int64(-1)
            for j in range(nbits):
                if (t >> j) & 1:
                    common &= adjacency[j]
            common &= ~t
            for v in range(nbits):
                if (common >> v) & 1:
                    if _find(faces, t | (np.int64(1) << v)) < 0:
                        return i, v
        return -1, -1


# ---------------------------------------------------------------------------
# dispatch


def subset_closure(maximal: np.ndarray) -> np.ndarray:
    """Sorted unique array of every subset of every mask in ``maximal``."""
    if USE_NUMBA:
        if len(maximal) == 0:
            return np.zeros(0, dtype=np.int64)
        return subset_closure_numba(maximal)
    return subset_closure_numpy(maximal)


def coface_counts(faces: np.ndarray, width: int) -> np.ndarray:
    """``out[i, s]`` = number of faces of size ``s`` containing ``faces[i]``.

    ``faces`` must be sorted and downward closed; ``width`` bounds face sizes.
    """
    if USE_NUMBA:
        return coface_counts_numba(faces, width)
    return coface_counts_numpy(faces, width)


def flag_violation(faces: np.ndarray, adjacency: np.ndarray) -> tuple[int, int]:
    """Find a face ``faces[i]`` (size >= 2) and vertex ``v`` adjacent to all of it
    with ``faces[i] | 1 << v`` missing.  Returns ``(-1, -1)`` if the complex is flag.

    ``adjacency[j]`` is the neighbour mask of vertex ``j`` in the 1-skeleton.
    """
    if USE_NUMBA:
        i, v = flag_violation_numba(faces, adjacency)
        return int(i), int(v)
    return flag_violation_numpy(faces, adjacency)


def adjacency_masks(faces: np.ndarray, nbits: int) -> np.ndarray:
    adj = np.zeros(nbits, dtype=np.int64)
    for e in faces[np.bitwise_count(faces) == 2].tolist():
        lo = (e & -e).bit_length() - 1
        hi = e.bit_length() - 1
        adj[lo] |= 1 << hi
        adj[hi] |= 1 << lo
    return adj
