"""Pure numpy versions of the table-scan kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same output; ``fusionkit.kernels`` picks one at import time.
"""

import numpy as np


def closure(mult, seeds):
    """Sorted members of the subgroup generated by ``seeds``."""
    n = mult.shape[0]
    seen = np.zeros(n, dtype=np.uint8)
    seen[0] = 1
    gens = np.unique(np.asarray(seeds, dtype=np.int32))
    gens = gens[gens != 0]
    if len(gens) == 0:
        return np.zeros(1, dtype=np.int32)
    frontier = np.zeros(1, dtype=np.int32)
    while len(frontier):
        prod = mult[frontier][:, gens].ravel()
        prod = np.unique(prod)
        prod = prod[seen[prod] == 0]
        seen[prod] = 1
        frontier = prod.astype(np.int32)
    return np.flatnonzero(seen).astype(np.int32)


def conj_images(mult, inv, elems, members):
    """out[i, j] = elems[i]^-1 * members[j] * elems[i]."""
    elems = np.asarray(elems, dtype=np.int32)
    members = np.asarray(members, dtype=np.int32)
    left = mult[inv[elems][:, None], members[None, :]]
    return mult[left, elems[:, None]].astype(np.int32)


def rows_inside(images, bitmap):
    """1 for every row of ``images`` whose entries all lie in ``bitmap``."""
    if images.shape[1] == 0:
        return np.ones(images.shape[0], dtype=np.uint8)
    return bitmap[images].all(axis=1).astype(np.uint8)


def commute_mask(mult, elems, members):
    """1 for every element of ``elems`` commuting with all of ``members``."""
    elems = np.asarray(elems, dtype=np.int32)
    members = np.asarray(members, dtype=np.int32)
    ab = mult[elems[:, None], members[None, :]]
    ba = mult[members[None, :], elems[:, None]]
    return (ab == ba).all(axis=1).astype(np.uint8)
