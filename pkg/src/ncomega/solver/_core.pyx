# cython: boundscheck=False, wraparound=False
"""Compiled branch-and-bound maximum clique kernel.

Bitset rows are uint64 word arrays; the algorithm (greedy color bound,
candidates scanned highest color first, lowest index first inside a
color class) matches ncomega.solver._pure step for step, so both
engines return identical cliques.
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.time cimport CLOCKS_PER_SEC, clock

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef class _Search:
    cdef unsigned long long *adj
    cdef unsigned long long *best_set
    cdef unsigned long long *pbuf      # (n + 2) rows of w words
    cdef unsigned long long *ubuf      # w words, coloring scratch
    cdef unsigned long long *cbuf      # w words, coloring scratch
    cdef int *order_buf                # (n + 1) * n
    cdef int *col_buf
    cdef int *rstack
    cdef int n, w, best, target, stop
    cdef unsigned long long nodes, node_limit
    cdef double deadline

    def __cinit__(self, int n, int w):
        self.adj = NULL
        self.n = n
        self.w = w
        self.best_set = <unsigned long long *>malloc(w * sizeof(unsigned long long))
        self.pbuf = <unsigned long long *>malloc((n + 2) * w * sizeof(unsigned long long))
        self.ubuf = <unsigned long long *>malloc(w * sizeof(unsigned long long))
        self.cbuf = <unsigned long long *>malloc(w * sizeof(unsigned long long))
        self.order_buf = <int *>malloc((n + 1) * n * sizeof(int))
        self.col_buf = <int *>malloc((n + 1) * n * sizeof(int))
        self.rstack = <int *>malloc((n + 1) * sizeof(int))
        if (self.best_set == NULL or self.pbuf == NULL or self.ubuf == NULL
                or self.cbuf == NULL or self.order_buf == NULL
                or self.col_buf == NULL or self.rstack == NULL):
            raise MemoryError()

    def __dealloc__(self):
        free(self.best_set)
        free(self.pbuf)
        free(self.ubuf)
        free(self.cbuf)
        free(self.order_buf)
        free(self.col_buf)
        free(self.rstack)

    cdef int _color_sort(self, unsigned long long *P, int *order, int *cols) nogil:
        cdef int cnt = 0, color = 0, v, i
        cdef unsigned long long live, x
        for i in range(self.w):
            self.ubuf[i] = P[i]
        while True:
            live = 0
            for i in range(self.w):
                live |= self.ubuf[i]
            if live == 0:
                break
            color += 1
            for i in range(self.w):
                self.cbuf[i] = self.ubuf[i]
            while True:
                v = -1
                for i in range(self.w):
                    x = self.cbuf[i]
                    if x:
                        v = i * 64 + __builtin_ctzll(x)
                        break
                if v < 0:
                    break
                order[cnt] = v
                cols[cnt] = color
                cnt += 1
                self.ubuf[v >> 6] &= ~((<unsigned long long>1) << (v & 63))
                self.cbuf[v >> 6] &= ~((<unsigned long long>1) << (v & 63))
                for i in range(self.w):
                    self.cbuf[i] &= ~self.adj[v * self.w + i]
        return cnt

    cdef void _expand(self, unsigned long long *P, int depth) nogil:
        cdef int cnt, t, v, i
        cdef unsigned long long *child
        cdef unsigned long long live
        cdef int *order = self.order_buf + depth * self.n
        cdef int *cols = self.col_buf + depth * self.n
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            self.stop = 1
            return
        if self.deadline > 0 and self.nodes % 4096 == 0:
            if <double>clock() > self.deadline:
                self.stop = 1
                return
        cnt = self._color_sort(P, order, cols)
        child = self.pbuf + depth * self.w
        for t in range(cnt - 1, -1, -1):
            if self.stop:
                return
            if depth + cols[t] <= self.best:
                return
            v = order[t]
            self.rstack[depth] = v
            P[v >> 6] &= ~((<unsigned long long>1) << (v & 63))
            live = 0
            for i in range(self.w):
                child[i] = P[i] & self.adj[v * self.w + i]
                live |= child[i]
            if live == 0:
                if depth + 1 > self.best:
                    self.best = depth + 1
                    for i in range(self.w):
                        self.best_set[i] = 0
                    for i in range(depth + 1):
                        self.best_set[self.rstack[i] >> 6] |= (
                            (<unsigned long long>1) << (self.rstack[i] & 63))
                    if self.target and self.best >= self.target:
                        self.stop = 2
            else:
                self._expand(child, depth + 1)


def solve(cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] adj not None,
          list initial, int target, unsigned long long node_limit,
          double time_limit):
    """Returns (best_size, members, nodes, completed)."""
    cdef int n = adj.shape[0]
    cdef int w = adj.shape[1]
    cdef _Search st = _Search(n, w)
    cdef int i, v
    cdef unsigned long long *P = st.pbuf + (n + 1) * w
    st.adj = <unsigned long long *>adj.data
    st.nodes = 0
    st.node_limit = node_limit
    st.stop = 0
    st.target = target
    st.deadline = -1
    if time_limit > 0:
        st.deadline = <double>clock() + time_limit * CLOCKS_PER_SEC
    st.best = 0
    for i in range(w):
        st.best_set[i] = 0
    for x in initial:
        v = <int>x
        st.best_set[v >> 6] |= ((<unsigned long long>1) << (v & 63))
        st.best += 1
    if st.target and st.best >= st.target and st.best > 0:
        st.stop = 2
    for i in range(w):
        P[i] = 0
    for i in range(n):
        P[i >> 6] |= ((<unsigned long long>1) << (i & 63))
    if n > 0 and st.stop == 0:
        st._expand(P, 0)
    members = []
    for i in range(n):
        if st.best_set[i >> 6] & ((<unsigned long long>1) << (i & 63)):
            members.append(i)
    return st.best, members, st.nodes, st.stop != 1
