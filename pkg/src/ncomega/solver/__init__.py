"""Exact maximum clique solving.

Two interchangeable kernels sit behind one API: a compiled extension
(ncomega.solver._core, built from _core.pyx) and a pure-Python twin
(ncomega.solver._pure).  Both implement the same branch and bound with
a greedy coloring bound and identical tie-breaking, so results match
bit for bit.  Selection: the compiled kernel is preferred when it
imported cleanly, the NCOMEGA_PURE environment variable forces the
pure one, and every entry point takes an explicit engine override.

Adjacency comes in as a sequence of int bitsets, one per vertex, bit j
of adj[i] set iff i and j are adjacent.  Self-loops are ignored.  The
public entry points also accept any object with .adj and .n attributes
(an NCGraph) in place of the (adj, n) pair.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _pure

try:  # pragma: no cover - exercised only where the extension built
    from . import _core
except ImportError:  # pragma: no cover
    _core = None

__all__ = [
    "CliqueResult",
    "LowerBoundOnly",
    "available_engines",
    "brute_force_omega",
    "default_engine",
    "extend_clique",
    "greedy_coloring",
    "max_clique_exact",
]

_BRUTE_LIMIT = 24


def _unwrap(graph_or_adj, n):
    """Accept either (adjacency sequence, n) or a graph object."""
    if n is None:
        if hasattr(graph_or_adj, "adj") and hasattr(graph_or_adj, "n"):
            return list(graph_or_adj.adj), int(graph_or_adj.n)
        raise TypeError("pass a graph object, or an adjacency sequence with n")
    return list(graph_or_adj), int(n)


class LowerBoundOnly(RuntimeError):
    """Search hit a node or time budget before proving optimality.

    The incumbent is still available on .result (status LowerBoundOnly).
    """

    def __init__(self, result: "CliqueResult") -> None:
        super().__init__(
            f"budget exhausted after {result.nodes} nodes; "
            f"best clique found so far has size {result.size}")
        self.result = result


@dataclass(frozen=True)
class CliqueResult:
    """Outcome of a clique search.

    status is "Exact" when the search space was exhausted or the
    coloring bound met the incumbent, "LowerBoundOnly" when a budget
    cut the search short.  bound is the proven upper bound known at
    the root (the color-hint class count when one was supplied, else a
    greedy coloring count); elapsed is wall-clock seconds spent in the
    kernel.
    """

    size: int
    members: tuple[int, ...]
    status: str
    nodes: int
    elapsed: float
    bound: int
    engine: str

    @property
    def exact(self) -> bool:
        return self.status == "Exact"


def available_engines() -> tuple[str, ...]:
    return ("compiled", "pure") if _core is not None else ("pure",)


def default_engine() -> str:
    if os.environ.get("NCOMEGA_PURE"):
        return "pure"
    return "compiled" if _core is not None else "pure"


def _resolve_engine(engine: str) -> str:
    if engine == "auto":
        return default_engine()
    if engine == "pure":
        return "pure"
    if engine == "compiled":
        if _core is None:
            raise RuntimeError("compiled solver kernel is not available")
        return "compiled"
    raise ValueError(f"unknown engine {engine!r}")


def _check_adjacency(adj: Sequence[int], n: int) -> list[int]:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if len(adj) != n:
        raise ValueError("adjacency length does not match vertex count")
    full = (1 << n) - 1
    rows = []
    for i, mask in enumerate(adj):
        if mask & ~full:
            raise ValueError(f"adjacency row {i} has bits outside 0..{n - 1}")
        rows.append(mask & ~(1 << i))
    for i, mask in enumerate(rows):
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if not rows[j] >> i & 1:
                raise ValueError(f"adjacency is not symmetric at ({i}, {j})")
    return rows


def _check_clique(adj: Sequence[int], n: int, members: Sequence[int]) -> list[int]:
    seen = set()
    for v in members:
        if not 0 <= v < n:
            raise ValueError(f"clique vertex {v} out of range")
        if v in seen:
            raise ValueError(f"clique vertex {v} repeated")
        seen.add(v)
    ms = sorted(seen)
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            if not adj[ms[a]] >> ms[b] & 1:
                raise ValueError(
                    f"vertices {ms[a]} and {ms[b]} are not adjacent; "
                    "initial clique rejected")
    return ms


def _check_color_hint(adj: Sequence[int], n: int,
                      hint: Sequence[Sequence[int]]) -> int:
    seen = [False] * n
    for ci, cls in enumerate(hint):
        cmask = 0
        for v in cls:
            if not 0 <= v < n:
                raise ValueError(f"color class {ci} has out-of-range vertex {v}")
            if seen[v]:
                raise ValueError(f"vertex {v} appears in two color classes")
            seen[v] = True
            cmask |= 1 << v
        for v in cls:
            if adj[v] & cmask:
                raise ValueError(
                    f"color class {ci} is not an independent set at vertex {v}")
    if not all(seen):
        missing = seen.index(False)
        raise ValueError(f"color hint does not cover vertex {missing}")
    return len(hint)


def degeneracy_order(adj: Sequence[int], n: int) -> list[int]:
    """Vertices in min-degree elimination order, lowest index on ties."""
    deg = [adj[i].bit_count() for i in range(n)]
    alive = [True] * n
    order = []
    for _ in range(n):
        best = -1
        for i in range(n):
            if alive[i] and (best < 0 or deg[i] < deg[best]):
                best = i
        order.append(best)
        alive[best] = False
        m = adj[best]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if alive[j]:
                deg[j] -= 1
    return order


def _permute(adj: Sequence[int], n: int, order: Sequence[int]) -> list[int]:
    # order[k] = original label of new vertex k
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    out = [0] * n
    for v in range(n):
        m = adj[v]
        row = 0
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            row |= 1 << pos[j]
        out[pos[v]] = row
    return out


def _pack_rows(adj: Sequence[int], n: int) -> "np.ndarray":
    w = max(1, (n + 63) // 64)
    arr = np.zeros((n, w), dtype=np.uint64)
    mask64 = (1 << 64) - 1
    for i in range(n):
        m = adj[i]
        j = 0
        while m:
            arr[i, j] = m & mask64
            m >>= 64
            j += 1
    return arr


def greedy_coloring(adj, n: Optional[int] = None,
                    order: Optional[Sequence[int]] = None) -> list[list[int]]:
    """Greedy partition into independent sets.

    Vertices are assigned to the first class that can take them,
    scanned in the given order (default: ascending index).  The class
    count is an upper bound for the clique number.
    """
    adj, n = _unwrap(adj, n)
    rows = _check_adjacency(adj, n)
    if order is not None:
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the vertices")
        classes: list[list[int]] = []
        masks: list[int] = []
        for v in order:
            bit = 1 << v
            for ci, cmask in enumerate(masks):
                if not cmask & rows[v]:
                    classes[ci].append(v)
                    masks[ci] = cmask | bit
                    break
            else:
                classes.append([v])
                masks.append(bit)
        return classes
    pool = (1 << n) - 1
    classes: list[list[int]] = []
    while pool:
        cur = pool
        cls = []
        while cur:
            v = (cur & -cur).bit_length() - 1
            cls.append(v)
            bit = 1 << v
            pool &= ~bit
            cur &= ~bit & ~rows[v]
        classes.append(cls)
    return classes


def extend_clique(adj, n: Optional[int] = None,
                  seed: Sequence[int] = ()) -> list[int]:
    """Deterministically grow seed to a maximal clique (lowest index first)."""
    adj, n = _unwrap(adj, n)
    rows = _check_adjacency(adj, n)
    members = _check_clique(rows, n, seed)
    cand = (1 << n) - 1
    for v in members:
        cand &= rows[v]
    while cand:
        v = (cand & -cand).bit_length() - 1
        members.append(v)
        cand &= rows[v]
    return sorted(members)


def max_clique_exact(adj, n: Optional[int] = None, *,
                     initial_clique: Sequence[int] = (),
                     color_hint: Optional[Sequence[Sequence[int]]] = None,
                     node_limit: int = 100_000_000,
                     time_limit: float = 600.0,
                     engine: str = "auto",
                     reorder: bool = True) -> CliqueResult:
    """Exact maximum clique via branch and bound.

    initial_clique seeds the incumbent (must be a clique).  color_hint,
    when given, must be a valid partition into independent sets; its
    class count becomes a proven upper bound and the search stops as
    soon as the incumbent meets it.  A node or time budget that runs
    out raises LowerBoundOnly carrying the incumbent; pass 0 to lift a
    limit.
    """
    adj, n = _unwrap(adj, n)
    rows = _check_adjacency(adj, n)
    seed = _check_clique(rows, n, initial_clique)
    target = _check_color_hint(rows, n, color_hint) if color_hint is not None else 0
    eng = _resolve_engine(engine)
    if n == 0:
        return CliqueResult(0, (), "Exact", 0, 0.0, 0, eng)

    if reorder:
        order = degeneracy_order(rows, n)
        order.reverse()
    else:
        order = list(range(n))
    pos = {v: k for k, v in enumerate(order)}
    prows = _permute(rows, n, order)
    pseed = sorted(pos[v] for v in seed)
    bound = target if target else len(greedy_coloring(prows, n))

    t0 = time.perf_counter()
    if eng == "compiled":
        packed = _pack_rows(prows, n)
        best, members, nodes, completed = _core.solve(
            packed, list(pseed), target, node_limit, float(time_limit))
    else:
        best, members, nodes, completed = _pure.solve(
            prows, n, list(pseed), target, node_limit, float(time_limit))
    elapsed = time.perf_counter() - t0
    orig = tuple(sorted(order[v] for v in members))
    status = "Exact" if completed else "LowerBoundOnly"
    result = CliqueResult(best, orig, status, nodes, elapsed, bound, eng)
    if not completed:
        raise LowerBoundOnly(result)
    return result


def _brute(rows: Sequence[int], pool: int, size: int) -> int:
    best = size
    while pool:
        v = (pool & -pool).bit_length() - 1
        pool &= ~(1 << v)
        got = _brute(rows, pool & rows[v], size + 1)
        if got > best:
            best = got
    return best


def brute_force_omega(adj, n: Optional[int] = None) -> int:
    """Independent exhaustive clique number for cross-checking; n <= 24."""
    adj, n = _unwrap(adj, n)
    if n > _BRUTE_LIMIT:
        raise ValueError(f"brute force capped at {_BRUTE_LIMIT} vertices")
    rows = _check_adjacency(adj, n)
    return _brute(rows, (1 << n) - 1, 0)
