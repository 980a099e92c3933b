"""Simple polytopes stored through their dual boundary complex.

Facets are the vertices of the dual simplicial sphere and each face of the
polytope is named by the set of facets containing it.  Internally a facet set
is an integer bitmask: cube facet ``x<i>+`` owns bit ``2(i-1)``, ``x<i>-`` owns
bit ``2(i-1)+1`` and the k-th section facet ``s<k>`` owns bit ``2n+k-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, total_ordering
from typing import Iterable, Iterator

import numpy as np

from . import _kernels

_FACET_RE = re.compile(r"^(?:x(?P<axis>[1-9][0-9]*)(?P<sign>[+-])|s(?P<step>[1-9][0-9]*))$")


class PolytopeError(ValueError):
    """Raised when a polytope operation's precondition fails."""


@total_ordering
@dataclass(frozen=True)
class FacetId:
    """A facet label with provenance.

    Exactly one of ``(axis, sign)`` or ``step`` is set.
    """

    label: str = field(compare=False)
    axis: int | None = None
    sign: int | None = None
    step: int | None = None

    @classmethod
    def cube(cls, axis: int, sign: int) -> "FacetId":
        return cls(f"x{axis}{'+' if sign > 0 else '-'}", axis=axis, sign=1 if sign > 0 else -1)

    @classmethod
    def section(cls, step: int) -> "FacetId":
        return cls(f"s{step}", step=step)

    @classmethod
    def parse(cls, name: str) -> "FacetId":
        m = _FACET_RE.match(name)
        if m is None:
            raise PolytopeError(f"malformed facet name {name!r}")
        if m["step"] is not None:
            return cls.section(int(m["step"]))
        return cls.cube(int(m["axis"]), 1 if m["sign"] == "+" else -1)

    def sort_key(self) -> tuple[int, int, int]:
        if self.step is not None:
            return (1, self.step, 0)
        return (0, self.axis, 0 if self.sign > 0 else 1)

    def __lt__(self, other: "FacetId") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def is_section(self) -> bool:
        return self.step is not None

    def bit(self, dim: int) -> int:
        if self.step is not None:
            return 2 * dim + self.step - 1
        return 2 * (self.axis - 1) + (0 if self.sign > 0 else 1)

    def __str__(self) -> str:
        return self.label


def facet_from_bit(bit: int, dim: int) -> FacetId:
    if bit >= 2 * dim:
        return FacetId.section(bit - 2 * dim + 1)
    return FacetId.cube(bit // 2 + 1, 1 if bit % 2 == 0 else -1)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FaceRef:
    """A face, named by the facets that contain it; the empty set is the polytope."""

    facet_set: frozenset[FacetId]

    @classmethod
    def of(cls, *facets: FacetId | str) -> "FaceRef":
        return cls(frozenset(f if isinstance(f, FacetId) else FacetId.parse(f) for f in facets))

    def mask(self, dim: int) -> int:
        m = 0
        for f in self.facet_set:
            m |= 1 << f.bit(dim)
        return m

    @classmethod
    def from_mask(cls, mask: int, dim: int) -> "FaceRef":
        return cls(frozenset(facet_from_bit(b, dim) for b in iter_bits(mask)))

    def labels(self) -> list[str]:
        return [f.label for f in sorted(self.facet_set)]

    def __str__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


@dataclass(frozen=True)
class TruncationStep:
    a: FacetId
    b: FacetId
    new_facet: FacetId

    @property
    def facet_pair(self) -> frozenset[FacetId]:
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class DualComplex:
    """Pure simplicial complex stored by its maximal simplices (as bitmasks)."""

    maximal: frozenset[int]

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for s in self.maximal:
            m |= s
        return m

    @cached_property
    def simplices(self) -> np.ndarray:
        """Sorted array of every simplex, the empty one included."""
        return _kernels.subset_closure(_kernels.as_mask_array(sorted(self.maximal)))

    @cached_property
    def simplex_set(self) -> frozenset[int]:
        return frozenset(self.simplices.tolist())

    def index_of(self, mask: int) -> int:
        i = int(np.searchsorted(self.simplices, mask))
        if i >= len(self.simplices) or int(self.simplices[i]) != mask:
            raise KeyError(mask)
        return i

    def __contains__(self, mask: int) -> bool:
        return mask in self.simplex_set

    def link(self, mask: int) -> frozenset[int]:
        """Maximal simplices of the link of ``mask``."""
        return frozenset(m & ~mask for m in self.maximal if m & mask == mask)


class ParentTag(Enum):
    TRUNCATED = "Truncated"
    UNCHANGED = "Unchanged"
    PRODUCT_WITH_INTERVAL = "ProductWithInterval"


@dataclass(frozen=True)
class ParentCase:
    tag: ParentTag
    parent: int
    carried: int | None = None  # G∩Q, only for TRUNCATED


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    dual: DualComplex
    history: tuple[TruncationStep, ...] = ()

    @property
    def n_facets(self) -> int:
        return 2 * self.dim + len(self.history)

    @property
    def facets(self) -> list[FacetId]:
        return [facet_from_bit(b, self.dim) for b in range(self.n_facets)]

    def mask(self, face: FaceRef | int) -> int:
        return face if isinstance(face, int) else face.mask(self.dim)

    def face(self, mask: int) -> FaceRef:
        return FaceRef.from_mask(mask, self.dim)

    def face_dim(self, face: FaceRef | int) -> int:
        return self.dim - int(self.mask(face)).bit_count()

    def is_face(self, face: FaceRef | int) -> bool:
        if isinstance(face, FaceRef) and any(
            f.bit(self.dim) >= self.n_facets or (f.axis is not None and f.axis > self.dim)
            for f in face.facet_set
        ):
            return False
        return self.mask(face) in self.dual

    def resolve(self, name: str | FacetId) -> FacetId:
        f = name if isinstance(name, FacetId) else FacetId.parse(name)
        if (f.axis is not None and f.axis > self.dim) or (f.step is not None and f.step > len(self.history)):
            raise PolytopeError(f"facet {f.label} does not exist in this polytope")
        return f


def make_cube(n: int) -> SimplePolytope:
    """The n-cube; its dual is the boundary of the n-dimensional cross-polytope."""
    if n < 1:
        raise PolytopeError("cube dimension must be at least 1")
    if 2 * n > _kernels.MAX_BITS:
        raise PolytopeError(f"dimension {n} exceeds the {_kernels.MAX_BITS}-bit facet capacity")
    maximal = set()
    for choice in range(1 << n):
        m = 0
        for i in range(n):
            m |= 1 << (2 * i + ((choice >> i) & 1))
        maximal.add(m)
    return SimplePolytope(n, DualComplex(frozenset(maximal)))


def codim2_faces(P: SimplePolytope) -> list[FaceRef]:
    """Legal 2-truncation targets: the edges of the dual complex."""
    return [P.face(m) for m in _masks_of_size(P, 2)]


def _masks_of_size(P: SimplePolytope, size: int) -> list[int]:
    s = P.dual.simplices
    return s[np.bitwise_count(s) == size].tolist()


def faces(P: SimplePolytope, k: int) -> list[FaceRef]:
    """All k-dimensional faces, ordered by facet bitmask."""
    if not 0 <= k <= P.dim:
        raise PolytopeError(f"face dimension {k} out of range 0..{P.dim}")
    return [P.face(m) for m in _masks_of_size(P, P.dim - k)]


def truncate(P: SimplePolytope, G: FaceRef | tuple[FacetId | str, FacetId | str]) -> SimplePolytope:
    """2-truncate the codimension-2 face ``G`` (stellar subdivision of a dual edge)."""
    if isinstance(G, tuple):
        a, b = (P.resolve(x) for x in G)
        G = FaceRef(frozenset((a, b)))
    if len(G.facet_set) != 2:
        raise PolytopeError(
            f"face {G} is not of codimension 2 (it is contained in {len(G.facet_set)} facets)"
        )
    a, b = sorted(G.facet_set)
    for f in (a, b):
        P.resolve(f)
    if P.n_facets + 1 > _kernels.MAX_BITS:
        raise PolytopeError(f"facet count would exceed the {_kernels.MAX_BITS}-bit capacity")
    ma, mb = 1 << a.bit(P.dim), 1 << b.bit(P.dim)
    edge = ma | mb
    if edge not in P.dual:
        raise PolytopeError(f"face {G} does not exist: facets {a} and {b} do not intersect")
    k = len(P.history) + 1
    w = FacetId.section(k)
    mw = 1 << w.bit(P.dim)
    kept, added = set(), set()
    for m in P.dual.maximal:
        if m & edge == edge:
            added.add((m & ~ma) | mw)
            added.add((m & ~mb) | mw)
        else:
            kept.add(m)
    return SimplePolytope(P.dim, DualComplex(frozenset(kept | added)), P.history + (TruncationStep(a, b, w),))


def replay(P: SimplePolytope, steps: Iterable[TruncationStep]) -> SimplePolytope:
    for st in steps:
        P = truncate(P, FaceRef(st.facet_pair))
    return P


def step_masks(P_new: SimplePolytope, step: TruncationStep) -> tuple[int, int, int]:
    n = P_new.dim
    return 1 << step.a.bit(n), 1 << step.b.bit(n), 1 << step.new_facet.bit(n)


def classify_mask(old: DualComplex, ma: int, mb: int, mw: int, tau: int) -> ParentCase:
    """Parent of new face ``tau`` (bitmask) across the truncation of edge ``ma|mb``."""
    ab = ma | mb
    if tau & mw:
        parent = (tau & ~mw) | ab
        if tau & ab:
            return ParentCase(ParentTag.UNCHANGED, parent)
        return ParentCase(ParentTag.PRODUCT_WITH_INTERVAL, parent)
    if not tau & ab and (tau | ab) in old:
        return ParentCase(ParentTag.TRUNCATED, tau, tau | ab)
    return ParentCase(ParentTag.UNCHANGED, tau)


def previous(P: SimplePolytope) -> SimplePolytope:
    """The polytope before the last truncation (replayed from the cube)."""
    if not P.history:
        raise PolytopeError("polytope has no truncation history")
    return replay(make_cube(P.dim), P.history[:-1])


def classify_face_after_truncation(
    P: SimplePolytope, step: TruncationStep, tilde_Q: FaceRef, P_old: SimplePolytope | None = None
) -> tuple[ParentTag, FaceRef, FaceRef | None]:
    """Unique face of the pre-truncation polytope that ``tilde_Q`` comes from.

    Returns ``(tag, parent, carried)`` where ``carried`` is G∩Q for truncated faces.
    """
    if not P.history or P.history[-1] != step:
        raise PolytopeError("step is not the most recent truncation of this polytope")
    if not P.is_face(tilde_Q):
        raise PolytopeError(f"{tilde_Q} is not a face of the polytope")
    old = (P_old if P_old is not None else previous(P)).dual
    case = classify_mask(old, *step_masks(P, step), P.mask(tilde_Q))
    carried = None if case.carried is None else P.face(case.carried)
    return case.tag, P.face(case.parent), carried


def is_flag_polytope(P: SimplePolytope) -> bool:
    """True iff every clique in the dual 1-skeleton spans a simplex."""
    return flag_witness(P.dual.simplices, P.n_facets) is None


def flag_witness(simplices: np.ndarray, nbits: int) -> int | None:
    """Bitmask of a clique that is not a face, or None for a flag complex."""
    adj = _kernels.adjacency_masks(simplices, nbits)
    i, v = _kernels.flag_violation(simplices, adj)
    if i < 0:
        return None
    return int(simplices[i]) | (1 << v)


def is_cross_polytope(maximal: frozenset[int]) -> bool:
    """Whether a pure complex is the boundary of a cross-polytope (so its polytope is a cube)."""
    if not maximal:
        return False
    k = next(iter(maximal)).bit_count()
    if k == 0:
        return len(maximal) == 1
    verts = 0
    for m in maximal:
        verts |= m
    if verts.bit_count() != 2 * k or len(maximal) != 1 << k:
        return False
    adj = {v: 0 for v in iter_bits(verts)}
    for m in maximal:
        for v in iter_bits(m):
            adj[v] |= m & ~(1 << v)
    return all((verts & ~adj[v] & ~(1 << v)).bit_count() == 1 for v in adj)
