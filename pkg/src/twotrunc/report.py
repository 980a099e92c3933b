"""Run a truncation script and serialise the resulting report."""

from __future__ import annotations

import json

from . import face_vectors as fv
from .ffk import gamma_ffk_check
from .gamma_complex import SimplicialComplex, f_polynomial
from .polytope import FaceRef, PolytopeError
from .script import TruncationScript, parse_script
from .verify import INVARIANTS, check_node, child, root


class ScriptExecutionError(ValueError):
    """A script step whose truncation precondition fails."""


def _complex_dict(K: SimplicialComplex) -> dict:
    return {
        "vertices": [f"w{v}" for v in K.vertices],
        "maximal_faces": [[f"w{v}" for v in f] for f in K.maximal_faces()],
        "f_polynomial": list(f_polynomial(K)),
    }


def run(script: TruncationScript | str, *, faces: str = "top", fault: bool = False) -> dict:
    """Execute a script, check every invariant after each step and build the report."""
    if isinstance(script, str):
        script = parse_script(script)
    if faces not in ("top", "all"):
        raise ValueError(f"faces must be 'top' or 'all', not {faces!r}")
    try:
        node = root(script.dim)
    except PolytopeError as e:
        raise ScriptExecutionError(f"cube {script.dim}: {e}") from None

    checks: dict[str, dict] = {}

    def absorb(nd, step_index: int) -> dict:
        res, info = check_node(nd, fault=fault and bool(nd.polytope.history))
        for name, witness in res.items():
            entry = checks.setdefault(name, {"pass": True, "witness": None})
            if witness is not None and entry["pass"]:
                entry["pass"] = False
                entry["witness"] = f"after step {step_index}: {witness}"
        return info

    info = absorb(node, 0)
    for i, (a, b) in enumerate(script.steps, start=1):
        try:
            node = child(node, a, b)
        except PolytopeError as e:
            raise ScriptExecutionError(f"step {i} (truncate {a} {b}): {e}") from None
        info = absorb(node, i)

    P = node.polytope
    f = fv.f_vector(P)
    h = fv.h_vector(f)
    gamma = node.gamma
    delta = node.table.delta
    ffk = gamma_ffk_check(gamma, P.dim) if gamma is not None else None

    report = {
        "dim": P.dim,
        "script": script.to_text().splitlines(),
        "facets": [x.label for x in P.facets],
        "f_vector": list(f),
        "h_vector": list(h),
        "g_vector": list(fv.g_vector(h)),
        "gamma_vector": list(gamma) if gamma is not None else None,
        "delta": dict(_complex_dict(delta), components=info["components"]),
        "steps": node.step_log,
    }
    if faces == "all":
        rows = []
        for m in sorted(node.face_gamma, key=lambda m: (m.bit_count(), m)):
            g = node.face_gamma[m]
            rows.append({
                "facets": FaceRef.from_mask(m, P.dim).labels(),
                "dim": P.face_dim(m),
                "f_vector": list(node.face_f[m]),
                "gamma_vector": list(g) if g is not None else None,
                "delta_maximal_faces": [[f"w{v}" for v in fc] for fc in node.table.entries[m].maximal_faces()],
            })
        report["faces"] = rows
    report["ffk"] = None if ffk is None else {"results": ffk.results, "info": ffk.info}
    report["checks"] = {name: checks[name] for name in INVARIANTS if name in checks}
    report["informational"] = dict(sorted(info.items()))
    report["passed"] = all(c["pass"] for c in report["checks"].values())
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _vec(v) -> str:
    return "None" if v is None else "(" + ", ".join(str(x) for x in v) + ")"


def to_text(report: dict) -> str:
    lines = [f"dimension {report['dim']}, {len(report['steps'])} truncation(s)"]
    for st in report["steps"]:
        lines.append(f"  step {st['index']}: truncate {' '.join(st['face'])} -> {st['new_facet']}")
    for key in ("f_vector", "h_vector", "g_vector", "gamma_vector"):
        lines.append(f"{key.replace('_', '-')}: {_vec(report[key])}")
    d = report["delta"]
    faces = " ".join("{" + ",".join(f) + "}" for f in d["maximal_faces"]) or "{}"
    lines.append(f"Delta(P): {len(d['vertices'])} vertices, maximal faces {faces}, "
                 f"f = {_vec(d['f_polynomial'])}, {d['components']} component(s)")
    for row in report.get("faces", []):
        dl = " ".join("{" + ",".join(f) + "}" for f in row["delta_maximal_faces"]) or "{}"
        lines.append(f"  face {{{','.join(row['facets'])}}} dim {row['dim']}: "
                     f"gamma {_vec(row['gamma_vector'])}, Delta {dl}")
    lines.append("checks:")
    for name, c in report["checks"].items():
        lines.append(f"  [{'pass' if c['pass'] else 'FAIL'}] {name}" + (f": {c['witness']}" if c["witness"] else ""))
    for name, value in report["informational"].items():
        lines.append(f"  (info) {name} = {value}")
    lines.append("result: " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"
