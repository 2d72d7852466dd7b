# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled DP kernels. Semantics must match ``_kernels_py`` exactly."""

from libc.math cimport INFINITY
from cpython.array cimport array, clone


def best_path(Py_ssize_t n, const long long[:] offsets, const long long[:] ends,
              const double[:] logps, double eps):
    cdef array score_arr = clone(array("d"), n + 1, False)
    cdef array nxt_arr = clone(array("q"), n + 1, False)
    cdef double[:] score = score_arr
    cdef long long[:] nxt = nxt_arr
    cdef Py_ssize_t i, k
    cdef long long j, bj
    cdef double s, best

    score[n] = 0.0
    nxt[n] = n
    for i in range(n - 1, -1, -1):
        best = -INFINITY
        bj = -1
        for k in range(offsets[i], offsets[i + 1]):
            j = ends[k]
            s = logps[k] + score[j]
            if bj < 0 or s > best + eps or (s >= best - eps and j > bj):
                best = s
                bj = j
        score[i] = best
        nxt[i] = bj
    return list(nxt_arr[:n]), score[0]


def viterbi(Py_ssize_t length, const double[:] emit, const double[:] start,
            const double[:] trans, double eps):
    cdef array v_arr = clone(array("d"), length * 4, False)
    cdef array bp_arr = clone(array("q"), length * 4, False)
    cdef double[:] v = v_arr
    cdef long long[:] bp = bp_arr
    cdef Py_ssize_t t, y, y0
    cdef double best, s
    cdef long long arg

    if length == 0:
        return []
    for y in range(4):
        v[y] = start[y] + emit[y]
        bp[y] = -1
    for t in range(1, length):
        for y in range(4):
            best = -INFINITY
            arg = -1
            for y0 in range(4):
                s = v[(t - 1) * 4 + y0] + trans[y0 * 4 + y]
                # within eps the earlier state keeps the pointer
                if s > best + eps:
                    best = s
                    arg = y0
            v[t * 4 + y] = best + emit[t * 4 + y]
            bp[t * 4 + y] = arg
    # legal final states: E (2) or S (3); E wins ties
    t = length - 1
    if v[t * 4 + 2] >= v[t * 4 + 3] - eps:
        arg = 2
    else:
        arg = 3
    if v[t * 4 + arg] == -INFINITY:
        raise ValueError("no state sequence with positive probability")
    states = [0] * length
    for t in range(length - 1, -1, -1):
        states[t] = arg
        arg = bp[t * 4 + arg]
    return states
