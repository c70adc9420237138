# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table-scan kernels; see ``_pykernels`` for the reference versions."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def closure(const int[:, ::1] mult, seeds):
    cdef Py_ssize_t n = mult.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] gens_arr = np.unique(np.asarray(seeds, dtype=np.int32))
    cdef int[::1] gens = gens_arr
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 1, k, ng = gens.shape[0]
    cdef int x, y
    seen[0] = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(ng):
            y = mult[x, gens[k]]
            if not seen[y]:
                seen[y] = 1
                queue[tail] = y
                tail += 1
    return np.flatnonzero(seen_arr).astype(np.int32)


def conj_images(const int[:, ::1] mult, const int[::1] inv, elems, members):
    cdef const int[::1] e = np.ascontiguousarray(elems, dtype=np.int32)
    cdef const int[::1] m = np.ascontiguousarray(members, dtype=np.int32)
    cdef Py_ssize_t ne = e.shape[0], nm = m.shape[0], i, j
    cdef cnp.ndarray[cnp.int32_t, ndim=2] out_arr = np.empty((ne, nm), dtype=np.int32)
    cdef int[:, ::1] out = out_arr
    cdef int g, gi
    for i in range(ne):
        g = e[i]
        gi = inv[g]
        for j in range(nm):
            out[i, j] = mult[mult[gi, m[j]], g]
    return out_arr


def rows_inside(images, const unsigned char[::1] bitmap):
    cdef const int[:, ::1] img = np.ascontiguousarray(images, dtype=np.int32)
    cdef Py_ssize_t nr = img.shape[0], nc = img.shape[1], i, j
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out_arr = np.ones(nr, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    for i in range(nr):
        for j in range(nc):
            if not bitmap[img[i, j]]:
                out[i] = 0
                break
    return out_arr


def commute_mask(const int[:, ::1] mult, elems, members):
    cdef const int[::1] e = np.ascontiguousarray(elems, dtype=np.int32)
    cdef const int[::1] m = np.ascontiguousarray(members, dtype=np.int32)
    cdef Py_ssize_t ne = e.shape[0], nm = m.shape[0], i, j
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out_arr = np.ones(ne, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef int g
    for i in range(ne):
        g = e[i]
        for j in range(nm):
            if mult[g, m[j]] != mult[m[j], g]:
                out[i] = 0
                break
    return out_arr
