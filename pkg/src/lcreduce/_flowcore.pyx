# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Edmonds-Karp augmentation over a CSR residual graph.

Mirrors :func:`lcreduce._flowpy.augment` step for step so that both backends
return identical residual capacities.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def augment(int64_t n, const int64_t[::1] start, const int64_t[::1] adj,
            const int64_t[::1] head, int64_t[::1] cap,
            int64_t s, int64_t t, int64_t limit):
    cdef int64_t[::1] parent = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(n, dtype=np.int64)
    cdef int64_t total = 0
    cdef int64_t qh, qt, x, y, e, i, push
    cdef bint found
    while limit < 0 or total < limit:
        for i in range(n):
            parent[i] = -1
        parent[s] = -2
        queue[0] = s
        qh = 0
        qt = 1
        found = False
        while qh < qt and not found:
            x = queue[qh]
            qh += 1
            for i in range(start[x], start[x + 1]):
                e = adj[i]
                if cap[e] > 0:
                    y = head[e]
                    if parent[y] == -1:
                        parent[y] = e
                        if y == t:
                            found = True
                            break
                        queue[qt] = y
                        qt += 1
        if not found:
            break
        push = -1
        y = t
        while y != s:
            e = parent[y]
            if push < 0 or cap[e] < push:
                push = cap[e]
            y = head[e ^ 1]
        if limit >= 0 and push > limit - total:
            push = limit - total
        y = t
        while y != s:
            e = parent[y]
            cap[e] -= push
            cap[e ^ 1] += push
            y = head[e ^ 1]
        total += push
    return total
