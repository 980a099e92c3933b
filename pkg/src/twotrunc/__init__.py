"""Combinatorics of 2-truncated cubes and the flag complexes realising their gamma-vectors."""

from ._kernels import BACKEND
from .face_vectors import (
    check_dehn_sommerville,
    f_vector,
    g_vector,
    gamma_change_under_truncation,
    gamma_vector,
    h_vector,
)
from .ffk import canonical_rep, ffk_feasible, gamma_ffk_check, pseudo_power, turan_clique_count
from .gamma_complex import (
    GammaComplexTable,
    SimplicialComplex,
    build_table,
    connected_components,
    delta_by_intersection,
    f_polynomial,
    init_table,
    is_flag,
    join_with_vertex,
    union,
    update_on_truncation,
)
from .polytope import (
    FaceRef,
    FacetId,
    PolytopeError,
    SimplePolytope,
    classify_face_after_truncation,
    codim2_faces,
    faces,
    is_flag_polytope,
    make_cube,
    truncate,
)
from .report import run
from .script import parse_script
from .verify import verify

__version__ = "0.1.0"
