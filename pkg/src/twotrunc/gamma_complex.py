"""The complexes Delta(Q) realising gamma-vectors of 2-truncated cubes.

Delta vertices are the truncation steps: ``w<k>`` is bound to section facet
``s<k>`` and stored as bit ``k-1``.  A complex is a downward-closed set of
vertex bitmasks that always contains the empty face.

The table holds one complex per face, so its size tracks the face count of
the polytope, which grows quickly with dimension and truncation depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import _kernels
from .polytope import (
    FaceRef,
    ParentTag,
    PolytopeError,
    SimplePolytope,
    TruncationStep,
    classify_mask,
    flag_witness,
    iter_bits,
    step_masks,
)


class SimplicialComplex:
    """Finite simplicial complex on a fixed vertex universe."""

    __slots__ = ("universe", "masks", "_hash")

    def __init__(self, masks: Iterable[int], universe: int | None = None, *, check: bool = True):
        masks = frozenset(masks)
        span = 0
        for m in masks:
            span |= m
        if universe is None:
            universe = span
        if check:
            if span & ~universe:
                raise ValueError("face uses a vertex outside the vertex universe")
            masks = masks | {0}
            for m in masks:
                for v in iter_bits(m):
                    if m & ~(1 << v) not in masks:
                        raise ValueError(f"face set is not downward closed at {vertex_names(m)}")
        self.universe = universe
        self.masks = masks
        self._hash = None

    @classmethod
    def empty(cls, universe: int = 0) -> "SimplicialComplex":
        """The complex {∅}, whose f-polynomial is 1."""
        return cls(frozenset((0,)), universe, check=False)

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]], universe: Iterable[int] | None = None):
        """Downward closure of ``faces`` given as vertex-id collections (ids start at 1)."""
        out = {0}
        for f in faces:
            m = _mask(f)
            s = m
            while s:
                out.add(s)
                s = (s - 1) & m
        u = None if universe is None else _mask(universe)
        return cls(out, u)

    @property
    def faces(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(b + 1 for b in iter_bits(m)) for m in self.masks)

    @property
    def vertices(self) -> list[int]:
        return sorted(b + 1 for m in self.masks if m.bit_count() == 1 for b in iter_bits(m))

    @property
    def dimension(self) -> int:
        return max(m.bit_count() for m in self.masks) - 1

    def maximal_faces(self) -> list[tuple[int, ...]]:
        out = []
        for m in self.masks:
            if m and not any(o != m and o & m == m for o in self.masks):
                out.append(tuple(b + 1 for b in iter_bits(m)))
        return sorted(out, key=lambda f: (len(f), f))

    def with_universe(self, universe: int) -> "SimplicialComplex":
        return SimplicialComplex(self.masks, universe, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.masks == other.masks and self.universe == other.universe

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.masks, self.universe))
        return self._hash

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self.masks <= other.masks

    def __repr__(self) -> str:
        return f"SimplicialComplex({self.maximal_faces() or '{∅}'})"


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if v < 1:
            raise ValueError("Delta vertex ids start at 1")
        m |= 1 << (v - 1)
    return m


def vertex_names(mask: int) -> list[str]:
    return [f"w{b + 1}" for b in iter_bits(mask)]


def join_with_vertex(K: SimplicialComplex, w: int) -> SimplicialComplex:
    """Cone over K with apex w (a vertex id)."""
    bit = 1 << (w - 1)
    if K.universe & bit:
        raise ValueError(f"vertex w{w} already belongs to the complex's vertex universe")
    return SimplicialComplex(K.masks | {m | bit for m in K.masks}, K.universe | bit, check=False)


def union(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if K1.universe != K2.universe:
        raise ValueError("complexes live on different vertex universes")
    if K1.masks <= K2.masks:
        return K2
    if K2.masks <= K1.masks:
        return K1
    return SimplicialComplex(K1.masks | K2.masks, K1.universe, check=False)


def intersection(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    it = iter(complexes)
    first = next(it)
    masks = first.masks
    for K in it:
        masks = masks & K.masks
    return SimplicialComplex(masks, first.universe, check=False)


def f_polynomial(K: SimplicialComplex) -> tuple[int, ...]:
    """(1, f_0, ..., f_d); entry i counts faces with i vertices."""
    counts = [0] * (max(m.bit_count() for m in K.masks) + 1)
    for m in K.masks:
        counts[m.bit_count()] += 1
    return tuple(counts)


def minimal_non_faces(K: SimplicialComplex) -> list[int]:
    """Vertex sets (bitmasks, within the universe) that are not faces but whose proper subsets are."""
    out = []
    for v in iter_bits(K.universe):
        if 1 << v not in K.masks:
            out.append(1 << v)
    seen = set()
    for m in K.masks:
        for v in iter_bits(K.universe & ~m):
            cand = m | (1 << v)
            if cand in K.masks or cand in seen:
                continue
            if all(cand & ~(1 << u) in K.masks for u in iter_bits(cand)):
                seen.add(cand)
                out.append(cand)
    return sorted(out)


def is_flag(K: SimplicialComplex) -> bool:
    """True iff every minimal non-face has at most two vertices."""
    return flag_witness_complex(K) is None


def flag_witness_complex(K: SimplicialComplex) -> int | None:
    if K.dimension < 1:
        return None
    faces = _kernels.as_mask_array(sorted(K.masks))
    return flag_witness(faces, max(K.universe.bit_length(), 1))


def connected_components(K: SimplicialComplex) -> int:
    """Components of the 1-skeleton; the complex {∅} has none."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in K.masks:
        if m.bit_count() == 1:
            parent[m] = m
    for m in K.masks:
        if m.bit_count() == 2:
            lo = m & -m
            ra, rb = find(lo), find(m ^ lo)
            if ra != rb:
                parent[ra] = rb
    return len({find(x) for x in parent})


def is_r_colorable(K: SimplicialComplex, r: int) -> bool:
    """Exact backtracking search for a proper r-colouring of the 1-skeleton."""
    verts = [m for m in K.masks if m.bit_count() == 1]
    nbrs = {v: 0 for v in verts}
    for m in K.masks:
        if m.bit_count() == 2:
            lo = m & -m
            nbrs[lo] |= m ^ lo
            nbrs[m ^ lo] |= lo
    order = sorted(verts, key=lambda v: -nbrs[v].bit_count())
    colour: dict[int, int] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {colour[u] for u in colour if nbrs[v] & u}
        for c in range(r):
            if c not in used:
                colour[v] = c
                if place(i + 1):
                    return True
                del colour[v]
        return False

    return place(0)


@dataclass
class GammaComplexTable:
    """Delta(Q) for every face Q of ``polytope``, keyed by facet bitmask."""

    polytope: SimplePolytope
    entries: dict[int, SimplicialComplex]

    def __getitem__(self, face: FaceRef | int) -> SimplicialComplex:
        return self.entries[self.polytope.mask(face)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def delta(self) -> SimplicialComplex:
        """Delta(P) for the whole polytope."""
        return self.entries[0]

    @property
    def universe(self) -> int:
        return (1 << len(self.polytope.history)) - 1


def init_table(P: SimplePolytope) -> GammaComplexTable:
    if P.history:
        raise PolytopeError("the table must start from an untruncated cube")
    e = SimplicialComplex.empty()
    return GammaComplexTable(P, {m: e for m in P.dual.simplices.tolist()})


def update_on_truncation(
    table: GammaComplexTable,
    P_new: SimplePolytope,
    step: TruncationStep | None = None,
    *,
    recurrence_failures: list[int] | None = None,
) -> GammaComplexTable:
    """Extend the table across the truncation that produced ``P_new``.

    If ``recurrence_failures`` is given, faces where
    f(Delta(new Q)) != f(Delta(Q)) + t f(Delta(G∩Q)) are appended to it.
    """
    P_old = table.polytope
    step = P_new.history[-1] if step is None else step
    if P_new.history[:-1] != P_old.history or P_new.history[-1] != step or P_new.dim != P_old.dim:
        raise PolytopeError("table does not belong to the polytope preceding this truncation")
    ma, mb, mw = step_masks(P_new, step)
    w = step.new_facet.step
    universe = table.universe | (1 << (w - 1))
    old = table.entries
    widened: dict[int, SimplicialComplex] = {}

    def lift(mask: int) -> SimplicialComplex:
        K = widened.get(mask)
        if K is None:
            try:
                K = old[mask].with_universe(universe)
            except KeyError:
                raise PolytopeError(f"face {P_old.face(mask)} is missing from the table") from None
            widened[mask] = K
        return K

    joined: dict[int, SimplicialComplex] = {}
    entries = {}
    for tau in P_new.dual.simplices.tolist():
        case = classify_mask(P_old.dual, ma, mb, mw, tau)
        if case.tag is ParentTag.TRUNCATED:
            cone = joined.get(case.carried)
            if cone is None:
                try:
                    cone = join_with_vertex(old[case.carried], w).with_universe(universe)
                except KeyError:
                    raise PolytopeError(f"face {P_old.face(case.carried)} is missing from the table") from None
                joined[case.carried] = cone
            K = union(lift(case.parent), cone)
            if recurrence_failures is not None:
                lhs = f_polynomial(K)
                a, b = f_polynomial(old[case.parent]), (0,) + f_polynomial(old[case.carried])
                rhs = tuple(
                    (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                    for i in range(max(len(a), len(b)))
                )
                if lhs != rhs:
                    recurrence_failures.append(tau)
        else:
            K = lift(case.parent)
        entries[tau] = K
    return GammaComplexTable(P_new, entries)


def build_table(P: SimplePolytope) -> GammaComplexTable:
    """Replay the history of ``P`` from its cube and return the final table."""
    from .polytope import make_cube, truncate

    Q = make_cube(P.dim)
    table = init_table(Q)
    for st in P.history:
        Q = truncate(Q, FaceRef(st.facet_pair))
        table = update_on_truncation(table, Q, st)
    return table


def delta_by_intersection(table: GammaComplexTable, Q: FaceRef | int) -> SimplicialComplex:
    """Intersection of Delta(F) over the facets F containing Q."""
    mask = table.polytope.mask(Q)
    if mask == 0:
        raise ValueError("the whole polytope is contained in no facet")
    return intersection(table.entries[1 << b] for b in iter_bits(mask))
