"""Invariant checks over truncation sequences.

A :class:`Node` is one polytope reached from a cube together with its Delta
table.  :func:`check_node` runs every invariant on it and returns a mapping
from invariant name to a witness string (``None`` when the invariant holds).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from . import face_vectors as fv
from .ffk import ffk_feasible, gamma_ffk_check
from .gamma_complex import (
    GammaComplexTable,
    SimplicialComplex,
    connected_components,
    f_polynomial,
    flag_witness_complex,
    init_table,
    intersection,
    is_r_colorable,
    update_on_truncation,
    vertex_names,
)
from .polytope import (
    FaceRef,
    ParentTag,
    SimplePolytope,
    classify_mask,
    flag_witness,
    is_cross_polytope,
    iter_bits,
    make_cube,
    replay,
    step_masks,
    truncate,
)

log = logging.getLogger(__name__)

DEFAULT_DIM_MAX = 6
DEFAULT_STEPS_MAX = 12

# Checks whose failure makes a sequence a counterexample.
INVARIANTS = (
    "simplicity",
    "flag_polytope",
    "dehn_sommerville",
    "gamma_change_step",
    "recurrence",
    "gamma_equals_f_delta",
    "delta_intersection",
    "flag_delta",
    "monotonicity",
    "dimension_bound",
    "components_bound",
    "ffk_inequalities",
    "triangle_free_graph",
    "heredity",
)


def _fmt(mask: int, dim: int) -> str:
    return str(FaceRef.from_mask(mask, dim))


def _pad(v: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(v) + (0,) * (n - len(v))


# ---------------------------------------------------------------------------
# heredity: every face is rebuilt from a cube of its own dimension

Model = tuple[SimplePolytope, dict[int, int]]  # polytope R, map R facet bit -> P facet bit


def cube_face_models(P: SimplePolytope) -> dict[int, Model]:
    models = {}
    n = P.dim
    for tau in P.dual.simplices.tolist():
        used = {b // 2 for b in iter_bits(tau)}
        free = [i for i in range(n) if i not in used]
        k = len(free)
        R = make_cube(k) if k else None
        phi = {}
        for j, axis in enumerate(free):
            phi[2 * j] = 2 * axis
            phi[2 * j + 1] = 2 * axis + 1
        models[tau] = (R, phi)
    return models


def update_models(models: dict[int, Model], P_old: SimplePolytope, P_new: SimplePolytope) -> dict[int, Model]:
    ma, mb, mw = step_masks(P_new, P_new.history[-1])
    a, b, w = (m.bit_length() - 1 for m in (ma, mb, mw))
    out = {}
    for tau in P_new.dual.simplices.tolist():
        case = classify_mask(P_old.dual, ma, mb, mw, tau)
        R, phi = models[case.parent]
        if case.tag is ParentTag.TRUNCATED:
            inv = {p: r for r, p in phi.items()}
            k = R.dim
            R = truncate(R, R.face((1 << inv[a]) | (1 << inv[b])))
            phi = dict(phi)
            phi[2 * k + len(R.history) - 1] = w
        elif case.tag is ParentTag.PRODUCT_WITH_INTERVAL:
            k = R.dim if R is not None else 0
            base = make_cube(k + 1)
            R = replay(base, R.history) if R is not None else base
            phi = {(r + 2 if r >= 2 * k else r): p for r, p in phi.items()}
            phi[2 * k] = a
            phi[2 * k + 1] = b
        elif not tau & mw and tau & (ma | mb):
            gone = b if tau & ma else a
            if gone in phi.values():
                phi = {r: (w if p == gone else p) for r, p in phi.items()}
        out[tau] = (R, phi)
    return out


def _apply(phi: dict[int, int], mask: int) -> int:
    out = 0
    for b in iter_bits(mask):
        out |= 1 << phi[b]
    return out


def heredity_witness(P: SimplePolytope, models: dict[int, Model]) -> str | None:
    for tau in P.dual.simplices.tolist():
        R, phi = models[tau]
        link = P.dual.link(tau)
        if R is None:
            rebuilt = frozenset((0,))
        else:
            rebuilt = frozenset(_apply(phi, m) for m in R.dual.maximal)
        if rebuilt != link:
            return f"face {_fmt(tau, P.dim)} is not the rebuilt 2-truncated cube"
    return None


# ---------------------------------------------------------------------------


@dataclass
class Node:
    polytope: SimplePolytope
    table: GammaComplexTable
    models: dict[int, Model] | None = None
    empty_steps: int = 0
    cube_steps: int = 0
    recurrence_failures: list[int] = field(default_factory=list)
    # (gamma(P_old), gamma(G), G mask) for the step that produced this node
    gamma_step: tuple[tuple[int, ...], tuple[int, ...], int] | None = None
    step_log: list[dict] = field(default_factory=list)

    @cached_property
    def face_h(self) -> dict[int, tuple[int, ...]]:
        return {m: fv.h_vector(f) for m, f in fv.face_f_vectors(self.polytope).items()}

    @cached_property
    def face_f(self) -> dict[int, tuple[int, ...]]:
        return fv.face_f_vectors(self.polytope)

    @cached_property
    def face_gamma(self) -> dict[int, tuple[int, ...] | None]:
        out = {}
        for m, h in self.face_h.items():
            try:
                out[m] = fv.gamma_vector(h)
            except fv.DehnSommervilleError:
                out[m] = None
        return out

    @property
    def gamma(self) -> tuple[int, ...]:
        return self.face_gamma[0]


def root(dim: int, heredity: bool = True) -> Node:
    P = make_cube(dim)
    return Node(P, init_table(P), cube_face_models(P) if heredity else None)


def child(node: Node, a, b) -> Node:
    P_old = node.polytope
    P = truncate(P_old, (a, b) if not isinstance(a, FaceRef) else a)
    st = P.history[-1]
    ma, mb, _ = step_masks(P, st)
    G = ma | mb
    rec: list[int] = []
    table = update_on_truncation(node.table, P, st, recurrence_failures=rec)
    delta_G_empty = node.table.entries[G].masks == frozenset((0,))
    G_cube = is_cross_polytope(P_old.dual.link(G))
    models = update_models(node.models, P_old, P) if node.models is not None else None
    g_old, g_G = node.face_gamma.get(0), node.face_gamma.get(G)
    log_entry = {
        "index": len(P.history),
        "face": FaceRef.from_mask(G, P.dim).labels(),
        "new_facet": st.new_facet.label,
        "gamma_before": list(g_old) if g_old else None,
        "gamma_face": list(g_G) if g_G else None,
        "delta_face_empty": delta_G_empty,
        "face_is_cube": G_cube,
    }
    return Node(
        P,
        table,
        models,
        node.empty_steps + delta_G_empty,
        node.cube_steps + G_cube,
        rec,
        (g_old, g_G, G),
        node.step_log + [log_entry],
    )


def inject_fault(table: GammaComplexTable) -> GammaComplexTable:
    """Test hook: drop the last maximal face of Delta(P), if it has one."""
    K = table.delta
    tops = [m for m in K.masks if m and not any(o != m and o & m == m for o in K.masks)]
    if not tops:
        return table
    entries = dict(table.entries)
    entries[0] = SimplicialComplex(K.masks - {max(tops)}, K.universe, check=False)
    return GammaComplexTable(table.polytope, entries)


def check_node(node: Node, *, full: bool = True, fault: bool = False) -> tuple[dict[str, str | None], dict]:
    """Run the invariants on one node.

    ``full=False`` skips the per-face complex checks (used on intermediate
    nodes of random sequences).  Returns ``(results, info)``.
    """
    P = node.polytope
    n = P.dim
    table = inject_fault(node.table) if fault else node.table
    entries = table.entries
    res: dict[str, str | None] = {}
    info: dict = {}

    bad = next((m for m in P.dual.maximal if m.bit_count() != n), None)
    res["simplicity"] = None if bad is None else f"vertex {_fmt(bad, n)} lies on {bad.bit_count()} facets"

    clique = flag_witness(P.dual.simplices, P.n_facets)
    res["flag_polytope"] = None if clique is None else f"facets {_fmt(clique, n)} pairwise meet without a common face"

    asym = next((m for m, g in node.face_gamma.items() if g is None), None)
    res["dehn_sommerville"] = (
        None if asym is None else f"face {_fmt(asym, n)} has h-vector {node.face_h[asym]}"
    )

    if node.gamma_step is not None:
        g_old, g_G, G = node.gamma_step
        expected = fv.gamma_change_under_truncation(g_old, g_G) if g_old and g_G else None
        res["gamma_change_step"] = (
            None if expected == node.gamma
            else f"truncating {_fmt(G, n)}: gamma {node.gamma} != {expected}"
        )
        res["recurrence"] = (
            None if not node.recurrence_failures
            else f"f-recurrence fails at face {_fmt(node.recurrence_failures[0], n)}"
        )

    delta = entries[0]
    fd = f_polynomial(delta)
    r = n // 2

    if full:
        res["gamma_equals_f_delta"] = None
        res["dimension_bound"] = None
        for m, g in sorted(node.face_gamma.items()):
            f = f_polynomial(entries[m])
            k = n - m.bit_count()
            if res["dimension_bound"] is None and len(f) - 1 > k // 2:
                res["dimension_bound"] = f"face {_fmt(m, n)}: dim Delta = {len(f) - 2} too large"
            if g is None or len(f) > len(g) or _pad(f, len(g)) != g:
                res["gamma_equals_f_delta"] = f"face {_fmt(m, n)}: gamma {g} != f(Delta) {f}"
                break

        res["delta_intersection"] = None
        for m in entries:
            if m and intersection(entries[1 << b] for b in iter_bits(m)).masks != entries[m].masks:
                res["delta_intersection"] = f"face {_fmt(m, n)}: stored Delta differs from intersection over facets"
                break

        res["monotonicity"] = None
        for m in entries:
            K = entries[m].masks
            for b in iter_bits(m):
                if not K <= entries[m & ~(1 << b)].masks:
                    res["monotonicity"] = (
                        f"Delta({_fmt(m, n)}) not contained in Delta({_fmt(m & ~(1 << b), n)})"
                    )
                    break
            if res["monotonicity"]:
                break

        res["flag_delta"] = None
        seen: set[frozenset[int]] = set()
        for m in sorted(entries):
            K = entries[m]
            if K.masks in seen:
                continue
            seen.add(K.masks)
            wit = flag_witness_complex(K)
            if wit is not None:
                res["flag_delta"] = f"Delta({_fmt(m, n)}) has non-face clique {vertex_names(wit)}"
                break

        res["ffk_inequalities"] = None
        for m, g in sorted(node.face_gamma.items()):
            if g is None:
                continue
            bad_checks = _ffk_failures(g, n - m.bit_count())
            if bad_checks:
                res["ffk_inequalities"] = f"face {_fmt(m, n)} gamma {g} fails {list(bad_checks)}"
                break
    else:
        chk = gamma_ffk_check(node.gamma, n) if node.gamma else None
        res["ffk_inequalities"] = None if chk and chk.passed else f"gamma {node.gamma} fails FFK checks"

    if not ffk_feasible(fd[1:], max(r, 1)):
        res["ffk_inequalities"] = res.get("ffk_inequalities") or f"f(Delta(P)) = {fd} is not FFK-feasible"

    comps = connected_components(delta)
    res["components_bound"] = (
        None if comps <= node.empty_steps
        else f"{comps} components but only {node.empty_steps} steps truncated a face with empty Delta"
    )

    if n in (4, 5):
        tri_ok = delta.dimension <= 1 and flag_witness_complex(delta) is None
        res["triangle_free_graph"] = None if tri_ok else f"Delta(P) {delta.maximal_faces()} is not a triangle-free graph"

    if node.models is not None and (full or fault):
        res["heredity"] = heredity_witness(P, node.models)

    info["components"] = comps
    info["empty_delta_steps"] = node.empty_steps
    info["cube_steps"] = node.cube_steps
    info["components_le_cube_steps"] = comps <= node.cube_steps
    info["r_colorable"] = is_r_colorable(delta, max(r, 1))
    if n in (4, 5) and node.gamma:
        g1, g2 = _pad(node.gamma, 3)[1:3]
        info["within_mantel"] = g2 <= g1 * g1 // 4
    return res, info


@lru_cache(maxsize=65536)
def _ffk_failures(gamma: tuple[int, ...], dim: int) -> tuple[str, ...]:
    chk = gamma_ffk_check(gamma, dim)
    return tuple(name for name, ok in chk.results.items() if not ok)


def failed(res: dict[str, str | None]) -> list[str]:
    return [k for k, v in res.items() if v is not None]


# ---------------------------------------------------------------------------
# sequence generation


@dataclass
class Counterexample:
    dim: int
    steps: list[tuple[str, str]]
    invariants: list[str]
    witnesses: dict[str, str]

    def script(self) -> str:
        lines = [f"cube {self.dim}"] + [f"truncate {a} {b}" for a, b in self.steps]
        return "\n".join(lines) + "\n"


@dataclass
class Summary:
    mode: str
    dims: list[int]
    steps_max: int
    seed: int | None
    sequences: int = 0
    nodes: int = 0
    failures: list[Counterexample] = field(default_factory=list)
    passes: dict[str, int] = field(default_factory=dict)
    fails: dict[str, int] = field(default_factory=dict)
    info: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, node: Node, res: dict, info: dict) -> None:
        self.nodes += 1
        for k, v in res.items():
            if v is None:
                self.passes[k] = self.passes.get(k, 0) + 1
            else:
                self.fails[k] = self.fails.get(k, 0) + 1
        for k in ("components_le_cube_steps", "r_colorable", "within_mantel"):
            if k in info:
                key = f"{k}_false"
                self.info.setdefault(key, 0)
                self.info[key] += not info[k]

    def fail(self, node: Node, res: dict, max_failures: int) -> None:
        if len(self.failures) < max_failures:
            steps = [tuple(e["face"]) for e in node.step_log]
            self.failures.append(
                Counterexample(node.polytope.dim, steps, failed(res), {k: v for k, v in res.items() if v})
            )

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "dims": self.dims,
            "steps_max": self.steps_max,
            "seed": self.seed,
            "sequences_tested": self.sequences,
            "polytopes_checked": self.nodes,
            "passed": self.ok,
            "checks_passed": dict(sorted(self.passes.items())),
            "checks_failed": dict(sorted(self.fails.items())),
            "informational": dict(sorted(self.info.items())),
            "counterexamples": [
                {"script": c.script(), "invariants": c.invariants, "witnesses": c.witnesses} for c in self.failures
            ],
        }


def faces_to_truncate(P: SimplePolytope) -> list[int]:
    s = P.dual.simplices
    return [m for m in s.tolist() if m.bit_count() == 2]


def _pair(P: SimplePolytope, G: int) -> tuple[str, str]:
    a, b = FaceRef.from_mask(G, P.dim).labels()
    return a, b


def exhaustive_nodes(dim: int, steps: int, heredity: bool = True) -> Iterator[Node]:
    """Depth-first walk over every truncation sequence of length <= steps."""
    stack = [root(dim, heredity)]
    while stack:
        node = stack.pop()
        yield node
        if len(node.polytope.history) < steps:
            for G in reversed(faces_to_truncate(node.polytope)):
                stack.append(child(node, *_pair(node.polytope, G)))


def random_sequence(rng: random.Random, dim: int, steps_max: int) -> list[tuple[str, str]]:
    """A uniformly chosen truncation sequence with 1..steps_max steps."""
    length = rng.randint(1, steps_max)
    P = make_cube(dim)
    seq = []
    for _ in range(length):
        G = rng.choice(faces_to_truncate(P))
        pair = _pair(P, G)
        seq.append(pair)
        P = truncate(P, pair)
    return seq


def run_sequence(dim: int, seq: Iterable[tuple[str, str]], *, full_every_step: bool = True,
                 heredity: bool = True, fault: bool = False) -> Iterator[tuple[Node, dict, dict]]:
    """Yield ``(node, results, info)`` at the cube and after every step."""
    node = root(dim, heredity)
    seq = list(seq)
    nodes = [node]
    for a, b in seq:
        node = child(node, a, b)
        nodes.append(node)
    for i, nd in enumerate(nodes):
        last = i == len(nodes) - 1
        res, info = check_node(nd, full=full_every_step or last, fault=fault and bool(nd.polytope.history))
        yield nd, res, info


def verify(
    dims: Sequence[int] = (2, 3),
    steps_max: int = 4,
    mode: str = "exhaustive",
    count: int = 100,
    seed: int = 0,
    *,
    heredity: bool = True,
    fault: bool = False,
    max_failures: int = 10,
    allow_large: bool = False,
) -> Summary:
    """Check every invariant over generated truncation sequences.

    Exhaustive mode checks every node of the truncation tree.  Random mode
    draws ``count`` sequences (dimension uniform over ``dims``) and runs the
    full per-face checks on the final polytope of each, the cheap checks on
    every prefix.
    """
    dims = list(dims)
    if not allow_large and (max(dims) > DEFAULT_DIM_MAX or steps_max > DEFAULT_STEPS_MAX):
        raise ValueError(
            f"budget exceeds dim <= {DEFAULT_DIM_MAX}, steps <= {DEFAULT_STEPS_MAX}; pass allow_large to override"
        )
    summary = Summary(mode, dims, steps_max, seed if mode == "random" else None)
    if mode == "exhaustive":
        for dim in dims:
            for node in exhaustive_nodes(dim, steps_max, heredity):
                res, info = check_node(node, fault=fault and bool(node.polytope.history))
                summary.record(node, res, info)
                if len(node.polytope.history) == steps_max:
                    summary.sequences += 1
                if failed(res):
                    summary.fail(node, res, max_failures)
    elif mode == "random":
        rng = random.Random(seed)
        for _ in range(count):
            dim = rng.choice(dims)
            seq = random_sequence(rng, dim, steps_max)
            summary.sequences += 1
            for node, res, info in run_sequence(dim, seq, full_every_step=False, heredity=heredity, fault=fault):
                summary.record(node, res, info)
                if failed(res):
                    summary.fail(node, res, max_failures)
                    break
    else:
        raise ValueError(f"unknown mode {mode!r}")
    log.info("verified %d sequences, %d polytopes", summary.sequences, summary.nodes)
    return summary
