"""f-, h-, g- and gamma-vectors of simple polytopes, in exact integer arithmetic.

Homogeneous polynomials of degree n in (alpha, t) are stored dehomogenised as
dense coefficient lists indexed by the t-degree (alpha = 1).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels
from .polytope import FaceRef, SimplePolytope

FVector = tuple[int, ...]
HVector = tuple[int, ...]
GVector = tuple[int, ...]
GammaVector = tuple[int, ...]


class DehnSommervilleError(ValueError):
    """An h-vector that should be palindromic is not."""


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_pow(p: Sequence[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def f_vector(P: SimplePolytope) -> FVector:
    """(f_0, ..., f_n): f_i counts the (n-i-1)-simplices of the dual, f_n = 1."""
    sizes = np.bincount(np.bitwise_count(P.dual.simplices), minlength=P.dim + 1)
    return tuple(int(sizes[P.dim - i]) for i in range(P.dim + 1))


def face_f_vectors(P: SimplePolytope) -> dict[int, FVector]:
    """f-vector of every face (keyed by facet mask), read off coface counts."""
    simplices = P.dual.simplices
    counts = _kernels.coface_counts(simplices, P.dim)
    out = {}
    for mask, row in zip(simplices.tolist(), counts.tolist()):
        k = P.dim - mask.bit_count()
        out[mask] = tuple(row[P.dim - i] for i in range(k + 1))
    return out


def face_f_vector(P: SimplePolytope, Q: FaceRef | int) -> FVector:
    """f-vector of the face Q computed from its dual link."""
    mask = P.mask(Q)
    link = P.dual.link(mask)
    k = P.dim - mask.bit_count()
    if not link:
        raise KeyError(f"{Q} is not a face")
    sub = _kernels.subset_closure(_kernels.as_mask_array(sorted(link)))
    sizes = np.bincount(np.bitwise_count(sub), minlength=k + 1)
    return tuple(int(sizes[k - i]) for i in range(k + 1))


def h_vector(f: Sequence[int]) -> HVector:
    """Coefficients of H(alpha, t) = F(alpha - t, t).

    With alpha = 1 this is sum_j f_{n-j} (1 - t)^(n-j) t^j.
    """
    return _h_vector(tuple(int(x) for x in f))


@lru_cache(maxsize=65536)
def _h_vector(f: tuple[int, ...]) -> HVector:
    n = len(f) - 1
    h = [0] * (n + 1)
    for j in range(n + 1):
        term = poly_mul(poly_pow([1, -1], n - j), [0] * j + [1])
        for d, c in enumerate(term):
            h[d] += f[n - j] * c
    return tuple(h)


def check_dehn_sommerville(h: Sequence[int]) -> bool:
    return tuple(h) == tuple(reversed(h))


@lru_cache(maxsize=None)
def gamma_basis(n: int, i: int) -> tuple[int, ...]:
    """Coefficient list of t^i (1 + t)^(n - 2i)."""
    return (0,) * i + tuple(comb(n - 2 * i, d) for d in range(n - 2 * i + 1)) + (0,) * i


def gamma_vector(h: Sequence[int]) -> GammaVector:
    """Solve h = sum_i gamma_i t^i (1+t)^(n-2i) by forward elimination."""
    return _gamma_vector(tuple(int(x) for x in h))


@lru_cache(maxsize=65536)
def _gamma_vector(h: tuple[int, ...]) -> GammaVector:
    if not check_dehn_sommerville(h):
        raise DehnSommervilleError(f"h-vector {tuple(h)} violates the Dehn-Sommerville symmetry")
    n = len(h) - 1
    residual = list(h)
    gamma = []
    for i in range(n // 2 + 1):
        g = residual[i]
        gamma.append(g)
        for d, c in enumerate(gamma_basis(n, i)):
            residual[d] -= g * c
    if any(residual):
        raise DehnSommervilleError(f"h-vector {tuple(h)} is not in the gamma basis")
    return tuple(gamma)


def h_from_gamma(gamma: Sequence[int], n: int) -> HVector:
    h = [0] * (n + 1)
    for i, g in enumerate(gamma):
        for d, c in enumerate(gamma_basis(n, i)):
            h[d] += g * c
    return tuple(h)


def g_vector(h: Sequence[int]) -> GVector:
    n = len(h) - 1
    return (1,) + tuple(h[i] - h[i - 1] for i in range(1, n // 2 + 1))


def gamma_change_under_truncation(
    gamma_P: Sequence[int], gamma_G: Sequence[int], dim: int | None = None
) -> GammaVector:
    """gamma(P) + t * gamma(G) for the 2-truncation of the face G."""
    expected = len(gamma_P) - 1 if dim is None else (dim - 2) // 2 + 1
    if len(gamma_G) != expected or (dim is not None and len(gamma_P) != dim // 2 + 1):
        raise ValueError(
            f"gamma(G) has length {len(gamma_G)}, expected {expected} for a codimension-2 face"
        )
    out = list(gamma_P)
    for i, g in enumerate(gamma_G):
        out[i + 1] += g
    return tuple(out)


def gamma_of(P: SimplePolytope) -> GammaVector:
    return gamma_vector(h_vector(f_vector(P)))
