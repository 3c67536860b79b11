# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled versions of the hot kernels; see ``_pykernels`` for contracts."""
import numpy as np

BACKEND = "cython"


def prepare_table(table):
    return np.ascontiguousarray(table, dtype=np.int32)


def closure(int[:, ::1] t, seed, gens):
    cdef Py_ssize_t n = t.shape[0]
    mask_arr = np.zeros(n, dtype=np.uint8)
    queue_arr = np.empty(n, dtype=np.int32)
    gens_arr = np.asarray(gens, dtype=np.int32).ravel()
    cdef unsigned char[::1] mask = mask_arr
    cdef int[::1] queue = queue_arr
    cdef int[::1] gv = gens_arr
    cdef Py_ssize_t head = 0, tail = 0, k, ng = gv.shape[0]
    cdef int x, y
    mask[0] = 1
    queue[tail] = 0
    tail += 1
    for s in seed:
        x = s
        if not mask[x]:
            mask[x] = 1
            queue[tail] = x
            tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(ng):
            y = t[x, gv[k]]
            if not mask[y]:
                mask[y] = 1
                queue[tail] = y
                tail += 1
    return np.flatnonzero(mask_arr).astype(np.int32)


def right_cosets(int[:, ::1] t, sub):
    cdef Py_ssize_t n = t.shape[0]
    ids_arr = np.full(n, -1, dtype=np.int32)
    sub_arr = np.asarray(sub, dtype=np.int32).ravel()
    cdef int[::1] ids = ids_arr
    cdef int[::1] sv = sub_arr
    cdef Py_ssize_t x, j, m = sv.shape[0]
    cdef int c = 0
    for x in range(n):
        if ids[x] >= 0:
            continue
        for j in range(m):
            ids[t[sv[j], x]] = c
        c += 1
    return ids_arr, c


def element_orders(int[:, ::1] t):
    cdef Py_ssize_t n = t.shape[0], x
    out_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef int cur, k
    for x in range(n):
        cur = <int>x
        k = 1
        while cur != 0:
            cur = t[x, cur]
            k += 1
        out[x] = k
    out[0] = 1
    return out_arr


def extend_hom(int[:, ::1] t1, int[:, ::1] t2, order, parent, pgen, gens1, imgs):
    cdef Py_ssize_t n = t1.shape[0]
    f_arr = np.zeros(n, dtype=np.int32)
    order_arr = np.asarray(order, dtype=np.int32)
    parent_arr = np.asarray(parent, dtype=np.int32)
    pgen_arr = np.asarray(pgen, dtype=np.int32)
    g_arr = np.asarray(gens1, dtype=np.int32)
    i_arr = np.asarray(imgs, dtype=np.int32)
    cdef int[::1] f = f_arr
    cdef int[::1] od = order_arr
    cdef int[::1] par = parent_arr
    cdef int[::1] pg = pgen_arr
    cdef int[::1] g1 = g_arr
    cdef int[::1] im = i_arr
    cdef Py_ssize_t j, s, ns = g1.shape[0]
    cdef int x
    for j in range(1, od.shape[0]):
        x = od[j]
        f[x] = t2[f[par[x]], im[pg[x]]]
    for j in range(n):
        for s in range(ns):
            if f[t1[j, g1[s]]] != t2[f[j], im[s]]:
                return None
    return f_arr
