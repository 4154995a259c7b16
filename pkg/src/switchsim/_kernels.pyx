# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled accumulation kernels for brute-force switch expansions.

Semantics match switchsim._kernels_py exactly: multi-indices stream in
odometer order (last slot fastest) and rank-one contributions accumulate into
the output in place, keeping results deterministic.
"""

import numpy as np


def accumulate_switch_choi(
    double complex[:, :, ::1] ops,
    Py_ssize_t[::1] offsets,
    Py_ssize_t[::1] slot_sizes,
    Py_ssize_t[:, ::1] chain_slots,
    Py_ssize_t[:, ::1] chain_colls,
    double complex[:, ::1] ctrl,
    double complex[:, ::1] out,
):
    cdef Py_ssize_t n_slots = slot_sizes.shape[0]
    cdef Py_ssize_t n_branches = chain_slots.shape[0]
    cdef Py_ssize_t chain_len = chain_slots.shape[1]
    cdef Py_ssize_t d = ops.shape[1]
    cdef Py_ssize_t n_vecs = ctrl.shape[0]
    cdef Py_ssize_t dim = n_branches * d * d

    prod_arr = np.empty((n_branches, d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    u_arr = np.empty(dim, dtype=np.complex128)
    idx_arr = np.zeros(n_slots, dtype=np.intp)
    cdef double complex[:, :, ::1] prods = prod_arr
    cdef double complex[:, ::1] tmp = tmp_arr
    cdef double complex[::1] u = u_arr
    cdef Py_ssize_t[::1] idx = idx_arr

    cdef Py_ssize_t m, l, op, r, c, k, v, i, j, pos, s
    cdef double complex acc, cv, ui

    while True:
        for m in range(n_branches):
            op = offsets[chain_colls[m, 0]] + idx[chain_slots[m, 0]]
            for r in range(d):
                for c in range(d):
                    prods[m, r, c] = ops[op, r, c]
            for l in range(1, chain_len):
                op = offsets[chain_colls[m, l]] + idx[chain_slots[m, l]]
                for r in range(d):
                    for c in range(d):
                        acc = 0
                        for k in range(d):
                            acc = acc + prods[m, r, k] * ops[op, k, c]
                        tmp[r, c] = acc
                for r in range(d):
                    for c in range(d):
                        prods[m, r, c] = tmp[r, c]
        for v in range(n_vecs):
            pos = 0
            for m in range(n_branches):
                cv = ctrl[v, m]
                for r in range(d):
                    for c in range(d):
                        u[pos] = cv * prods[m, r, c]
                        pos = pos + 1
            for i in range(dim):
                ui = u[i]
                for j in range(dim):
                    out[i, j] = out[i, j] + ui * u[j].conjugate()
        s = n_slots - 1
        while s >= 0:
            idx[s] = idx[s] + 1
            if idx[s] < slot_sizes[s]:
                break
            idx[s] = 0
            s = s - 1
        if s < 0:
            break


def accumulate_pair_choi(
    double complex[:, :, ::1] ops,
    Py_ssize_t[::1] offsets,
    Py_ssize_t[::1] slot_sizes,
    Py_ssize_t[::1] a_slots,
    Py_ssize_t[::1] a_colls,
    Py_ssize_t[::1] b_slots,
    Py_ssize_t[::1] b_colls,
    double complex[:, ::1] out,
):
    cdef Py_ssize_t n_slots = slot_sizes.shape[0]
    cdef Py_ssize_t chain_len = a_slots.shape[0]
    cdef Py_ssize_t d = ops.shape[1]
    cdef Py_ssize_t dim = d * d

    buf_arr = np.empty((2, d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    idx_arr = np.zeros(n_slots, dtype=np.intp)
    cdef double complex[:, :, ::1] prods = buf_arr
    cdef double complex[:, ::1] tmp = tmp_arr
    cdef Py_ssize_t[::1] idx = idx_arr

    cdef Py_ssize_t side, l, op, r, c, k, i, j, s
    cdef double complex acc, ai

    while True:
        for side in range(2):
            if side == 0:
                op = offsets[a_colls[0]] + idx[a_slots[0]]
            else:
                op = offsets[b_colls[0]] + idx[b_slots[0]]
            for r in range(d):
                for c in range(d):
                    prods[side, r, c] = ops[op, r, c]
            for l in range(1, chain_len):
                if side == 0:
                    op = offsets[a_colls[l]] + idx[a_slots[l]]
                else:
                    op = offsets[b_colls[l]] + idx[b_slots[l]]
                for r in range(d):
                    for c in range(d):
                        acc = 0
                        for k in range(d):
                            acc = acc + prods[side, r, k] * ops[op, k, c]
                        tmp[r, c] = acc
                for r in range(d):
                    for c in range(d):
                        prods[side, r, c] = tmp[r, c]
        for i in range(dim):
            ai = prods[0, i // d, i % d]
            for j in range(dim):
                out[i, j] = out[i, j] + ai * prods[1, j // d, j % d].conjugate()
        s = n_slots - 1
        while s >= 0:
            idx[s] = idx[s] + 1
            if idx[s] < slot_sizes[s]:
                break
            idx[s] = 0
            s = s - 1
        if s < 0:
            break
