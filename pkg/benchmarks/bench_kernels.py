"""Compiled vs numpy kernels on the table scans that dominate fusion work.

    python3 benchmarks/bench_kernels.py [--spec sym:7] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from fusionkit import _pykernels
from fusionkit.catalog import build_group
from fusionkit.groups import sylow_subgroup

try:
    from fusionkit import _ckernels
except ImportError:
    _ckernels = None


def cases(G, p, rng):
    M, inv = G.mult, G.inverse
    S = sylow_subgroup(G, p)
    elems = np.arange(G.order, dtype=np.int32)
    few = rng.choice(G.order, size=3, replace=False).astype(np.int32)
    img = _pykernels.conj_images(M, inv, elems, S.members)
    return {
        "closure": lambda k: k.closure(M, few),
        "conj_images": lambda k: k.conj_images(M, inv, elems, S.members),
        "rows_inside": lambda k: k.rows_inside(img, S.bitmap),
        "commute_mask": lambda k: k.commute_mask(M, elems, S.members),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", default="sym:7")
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    G = build_group(args.spec)
    rng = np.random.default_rng(0)
    print(f"{args.spec}: |G| = {G.order}")
    print(f"{'kernel':<14}{'numpy ms':>10}{'cython ms':>11}{'speedup':>9}")
    for name, fn in cases(G, args.prime, rng).items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<14}{py:>10.2f}{'n/a':>11}{'':>9}")
            continue
        assert np.array_equal(fn(_pykernels), fn(_ckernels))
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<14}{py:>10.2f}{cy:>11.2f}{py / cy:>8.1f}x")


if __name__ == "__main__":
    main()
