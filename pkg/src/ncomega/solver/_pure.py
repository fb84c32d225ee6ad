"""Pure-Python branch-and-bound maximum clique kernel.

Mirror of the compiled kernel in _core.pyx: same greedy color bound,
same candidate order (highest color first, lowest index first within a
color class), same tie-breaking, so both engines land on the same
clique for the same input.  Bitsets are plain Python ints.
"""

from __future__ import annotations

import sys
import time

__all__ = ["solve"]


class _Budget(Exception):
    pass


class _Done(Exception):
    pass


class _State:
    __slots__ = ("adj", "n", "best", "best_mask", "nodes", "node_limit",
                 "deadline", "target", "rstack")

    def __init__(self, adj: list[int], n: int) -> None:
        self.adj = adj
        self.n = n
        self.best = 0
        self.best_mask = 0
        self.nodes = 0
        self.node_limit = 0
        self.deadline = 0.0
        self.target = 0
        self.rstack = [0] * (n + 1)


def _color_sort(st: _State, pool: int) -> tuple[list[int], list[int]]:
    order: list[int] = []
    cols: list[int] = []
    adj = st.adj
    color = 0
    while pool:
        color += 1
        cur = pool
        while cur:
            v = (cur & -cur).bit_length() - 1
            order.append(v)
            cols.append(color)
            bit = 1 << v
            pool &= ~bit
            cur &= ~bit & ~adj[v]
    return order, cols


def _expand(st: _State, pool: int, depth: int) -> None:
    st.nodes += 1
    if st.node_limit and st.nodes > st.node_limit:
        raise _Budget
    if st.deadline and st.nodes % 4096 == 0 and time.monotonic() > st.deadline:
        raise _Budget
    order, cols = _color_sort(st, pool)
    adj = st.adj
    for t in range(len(order) - 1, -1, -1):
        if depth + cols[t] <= st.best:
            return
        v = order[t]
        st.rstack[depth] = v
        pool &= ~(1 << v)
        child = pool & adj[v]
        if child == 0:
            if depth + 1 > st.best:
                st.best = depth + 1
                mask = 0
                for i in range(depth + 1):
                    mask |= 1 << st.rstack[i]
                st.best_mask = mask
                if st.target and st.best >= st.target:
                    raise _Done
        else:
            _expand(st, child, depth + 1)


def solve(adj: list[int], n: int, initial: list[int], target: int,
          node_limit: int, time_limit: float) -> tuple[int, list[int], int, bool]:
    """Returns (best_size, members, nodes, completed)."""
    st = _State(adj, n)
    st.node_limit = node_limit
    st.target = target
    if n + 64 > sys.getrecursionlimit():
        sys.setrecursionlimit(n + 64)
    if time_limit > 0:
        st.deadline = time.monotonic() + time_limit
    for v in initial:
        st.best_mask |= 1 << v
        st.best += 1
    completed = True
    if not (st.target and st.best >= st.target > 0):
        pool = (1 << n) - 1
        if pool:
            try:
                _expand(st, pool, 0)
            except _Budget:
                completed = False
            except _Done:
                pass
    members = [i for i in range(n) if st.best_mask >> i & 1]
    return st.best, members, st.nodes, completed
