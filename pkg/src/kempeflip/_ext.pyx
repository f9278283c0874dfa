# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.int64_t i64

RESERVED = 2
SHARED_FLIP = 1
NO_CHANGE = 0


cdef struct Work:
    i64* queue
    i64* mark
    i64 stamp


cdef int work_init(Work* wk, i64 n) except -1:
    wk.queue = <i64*> malloc((n + 1) * sizeof(i64))
    wk.mark = <i64*> malloc((n + 1) * sizeof(i64))
    if wk.queue == NULL or wk.mark == NULL:
        free(wk.queue)
        free(wk.mark)
        raise MemoryError()
    cdef i64 i
    for i in range(n + 1):
        wk.mark[i] = 0
    wk.stamp = 0
    return 0


cdef void work_free(Work* wk):
    free(wk.queue)
    free(wk.mark)


cdef i64 bfs(const i64[:] indptr, const i64[:] indices, i64[:] col, i64 v, i64 c,
             Work* wk) nogil:
    """Fill ``wk.queue`` with S(v, c); return its size."""
    cdef i64 a = col[v]
    if c == a:
        return 0
    wk.stamp += 1
    cdef i64 st = wk.stamp
    cdef i64 head = 0, tail = 1, x, w, j, want
    wk.queue[0] = v
    wk.mark[v] = st
    while head < tail:
        x = wk.queue[head]
        head += 1
        want = c if col[x] == a else a
        for j in range(indptr[x], indptr[x + 1]):
            w = indices[j]
            if wk.mark[w] != st and col[w] == want:
                wk.mark[w] = st
                wk.queue[tail] = w
                tail += 1
    return tail


cdef void swap(i64[:] col, Work* wk, i64 size, i64 a, i64 c) nogil:
    cdef i64 i, w
    for i in range(size):
        w = wk.queue[i]
        col[w] = c if col[w] == a else a


def component(const i64[:] indptr, const i64[:] indices, i64[:] colors, i64 v, i64 c):
    cdef Work wk
    work_init(&wk, colors.shape[0])
    cdef i64 size = bfs(indptr, indices, colors, v, c, &wk)
    out = np.empty(size, dtype=np.int64)
    cdef i64[:] o = out
    cdef i64 i
    for i in range(size):
        o[i] = wk.queue[i]
    work_free(&wk)
    return out


def glauber_steps(const i64[:] indptr, const i64[:] indices, i64[:] colors,
                  const i64[:] vs, const i64[:] cs):
    cdef Py_ssize_t t, T = vs.shape[0]
    cdef i64 v, c, j
    cdef bint ok
    with nogil:
        for t in range(T):
            v = vs[t]
            c = cs[t]
            ok = True
            for j in range(indptr[v], indptr[v + 1]):
                if colors[indices[j]] == c:
                    ok = False
                    break
            if ok:
                colors[v] = c


def flip_steps(const i64[:] indptr, const i64[:] indices, i64[:] colors, const double[:] acc,
               const i64[:] vs, const i64[:] cs, const double[:] us):
    cdef Work wk
    work_init(&wk, colors.shape[0])
    cdef Py_ssize_t t, T = vs.shape[0]
    cdef i64 v, c, size
    with nogil:
        for t in range(T):
            v = vs[t]
            c = cs[t]
            size = bfs(indptr, indices, colors, v, c, &wk)
            if size > 0 and us[t] < acc[size]:
                swap(colors, &wk, size, colors[v], c)
    work_free(&wk)


def coupled_shared_step(const i64[:] indptr, const i64[:] indices, i64[:] sigma, i64[:] tau,
                        i64 v, i64 w, i64 c, double u, const double[:] acc):
    cdef i64 a = sigma[w]
    if c == a:
        return RESERVED
    cdef Work wk
    work_init(&wk, sigma.shape[0])
    cdef i64 size = bfs(indptr, indices, sigma, w, c, &wk)
    cdef i64 tv = tau[v], i, s, j, y
    cdef int res = -1
    if wk.mark[v] == wk.stamp:
        res = RESERVED
    elif tv == a or tv == c:
        for i in range(size):
            s = wk.queue[i]
            if sigma[s] != tv:
                for j in range(indptr[s], indptr[s + 1]):
                    if indices[j] == v:
                        res = RESERVED
                        break
            if res >= 0:
                break
    if res < 0:
        if u < acc[size]:
            for i in range(size):
                s = wk.queue[i]
                y = c if sigma[s] == a else a
                sigma[s] = y
                tau[s] = y
            res = SHARED_FLIP
        else:
            res = NO_CHANGE
    work_free(&wk)
    return res


def grand_coupling_steps(const i64[:] indptr, const i64[:] indices, i64[:] x, i64[:] y,
                         const double[:] acc, const i64[:] vs, const i64[:] cs, const double[:] us):
    cdef i64 n = x.shape[0]
    cdef Work wk
    work_init(&wk, n)
    cdef Py_ssize_t t, T = vs.shape[0]
    cdef i64 i, diff = 0, size, v, c, old, res = -1
    for i in range(n):
        if x[i] != y[i]:
            diff += 1
    if diff == 0:
        work_free(&wk)
        return 0
    with nogil:
        for t in range(T):
            v = vs[t]
            c = cs[t]
            size = bfs(indptr, indices, x, v, c, &wk)
            if size > 0 and us[t] < acc[size]:
                swap(x, &wk, size, x[v], c)
            size = bfs(indptr, indices, y, v, c, &wk)
            if size > 0 and us[t] < acc[size]:
                swap(y, &wk, size, y[v], c)
            diff = 0
            for i in range(n):
                if x[i] != y[i]:
                    diff = 1
                    break
            if diff == 0:
                res = t + 1
                break
    work_free(&wk)
    return res
