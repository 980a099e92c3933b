"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--dim 6] [--steps 8] [--seed 1] [--repeat 5]

Inputs are the dual complexes of seeded random truncation sequences.  Both
backends are run on identical arrays and their outputs compared before timing.
"""

from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from twotrunc import _kernels as K
from twotrunc.polytope import make_cube, truncate
from twotrunc.verify import random_sequence


def sample_polytope(dim: int, steps: int, seed: int):
    rng = random.Random(seed)
    while True:
        seq = random_sequence(rng, dim, steps)
        if len(seq) == steps:
            break
    P = make_cube(dim)
    for a, b in seq:
        P = truncate(P, (a, b))
    return P


def cases(P):
    maximal = K.as_mask_array(sorted(P.dual.maximal))
    faces = K.subset_closure_numpy(maximal)
    adj = K.adjacency_masks(faces, P.n_facets)
    return {
        "subset_closure": ((maximal,), K.subset_closure_numpy, K.subset_closure_numba),
        "coface_counts": ((faces, P.dim), K.coface_counts_numpy, K.coface_counts_numba),
        "flag_violation": ((faces, adj), K.flag_violation_numpy, K.flag_violation_numba),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=6)
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K._HAVE_NUMBA:
        raise SystemExit("numba is not importable, nothing to compare")

    P = sample_polytope(args.dim, args.steps, args.seed)
    print(f"dim {args.dim}, {args.steps} truncations: {P.n_facets} facets, "
          f"{len(P.dual.maximal)} vertices, {len(P.dual.simplices)} faces")
    print(f"{'kernel':<16}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, (inputs, f_np, f_nb) in cases(P).items():
        a, b = f_np(*inputs), f_nb(*inputs)  # also warms the jit
        assert np.array_equal(np.asarray(a), np.asarray(b)), name
        t_np = min(timeit.repeat(lambda: f_np(*inputs), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: f_nb(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<16}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
