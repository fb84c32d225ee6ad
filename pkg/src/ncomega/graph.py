"""Non-commuting graphs of finite groups.

Vertices are the non-central elements; two vertices are adjacent when
they do not commute.  Cliques are therefore sets of pairwise
non-commuting elements.  Adjacency is stored as one int bitset per
vertex over vertex indices (not group element indices); labels maps a
vertex back to its group element.

Collapsing by the center identifies each coset gZ(G) to one vertex.
Non/commuting only depends on the coset, and a clique never meets a
coset twice, so the clique number is unchanged while the vertex count
drops by a factor of |Z(G)|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Optional

import numpy as np

from .groups.table import GroupTable, bits_list, mask_to_bits

__all__ = [
    "GraphBuildError",
    "NCGraph",
    "build_ncgraph",
    "collapse_by_center",
    "export_dimacs",
    "import_dimacs",
]

# Dense bitset adjacency is quadratic in vertices; past this an explicit
# opt-in is required (about 128 MiB at the limit).
DENSE_VERTEX_LIMIT = 8192


class GraphBuildError(ValueError):
    pass


@dataclass
class NCGraph:
    n: int
    adj: list[int]
    labels: tuple[int, ...]
    meta: dict = field(default_factory=dict)

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def vertex_of_label(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labeled {label}") from None


def _rows_from_masks(commute_rows: np.ndarray) -> list[int]:
    # commute_rows[i] over vertex indices; adjacency = not commuting, no loop
    n = commute_rows.shape[0]
    adj = []
    for i in range(n):
        row = ~commute_rows[i]
        row[i] = False
        adj.append(mask_to_bits(row))
    return adj


def build_ncgraph(G: GroupTable, allow_big: bool = False) -> NCGraph:
    """Full non-commuting graph on the non-central elements."""
    center = G.center_bits()
    labels = [i for i in range(G.order) if not center >> i & 1]
    n = len(labels)
    if n > DENSE_VERTEX_LIMIT and not allow_big:
        raise GraphBuildError(
            f"{n} vertices exceeds the dense-graph limit {DENSE_VERTEX_LIMIT}; "
            "pass allow_big=True (CLI: --allow-big-memory) or collapse first")
    idx = np.array(labels, dtype=np.int64)
    rows = np.zeros((n, n), dtype=bool)
    for vi, e in enumerate(labels):
        rows[vi] = G.commute_mask(e)[idx]
    return NCGraph(n, _rows_from_masks(rows), tuple(labels),
                   {"family": G.family, "params": dict(G.params),
                    "collapsed": False})


def collapse_by_center(G: GroupTable, graph: NCGraph, *,
                       allow_big: bool = False) -> NCGraph:
    """Quotient the vertex set of graph by central cosets gZ(G).

    meta["coset_map"] sends each group element index to its vertex (-1
    for central elements); the clique number is preserved.  Adjacency
    is recomputed from the group table (cheaper than permuting bitset
    rows); the input graph supplies the preconditions.
    """
    if graph.meta.get("collapsed"):
        raise GraphBuildError("graph is already collapsed")
    center = G.center_bits()
    if graph.n != G.order - center.bit_count():
        raise GraphBuildError("graph does not match the group's vertex count")
    zs = bits_list(center)
    coset_map = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for e in range(G.order):
        if center >> e & 1 or coset_map[e] >= 0:
            continue
        v = len(reps)
        reps.append(e)
        for z in zs:
            coset_map[G.mul_index(z, e)] = v
    n = len(reps)
    if n > DENSE_VERTEX_LIMIT and not allow_big:
        raise GraphBuildError(
            f"{n} vertices after collapsing exceeds the dense-graph limit "
            f"{DENSE_VERTEX_LIMIT}; pass allow_big=True (CLI: --allow-big-memory)")
    idx = np.array(reps, dtype=np.int64)
    rows = np.zeros((n, n), dtype=bool)
    for vi, e in enumerate(reps):
        rows[vi] = G.commute_mask(e)[idx]
    return NCGraph(n, _rows_from_masks(rows), tuple(reps),
                   {"family": G.family, "params": dict(G.params),
                    "collapsed": True, "center_order": len(zs),
                    "coset_map": coset_map})


def export_dimacs(g: NCGraph, fh: IO[str]) -> None:
    """DIMACS edge format, 1-indexed, with metadata in comment lines."""
    fh.write("c non-commuting graph\n")
    meta = g.meta
    if "family" in meta:
        fh.write(f"c family={meta['family']}\n")
        for k, v in sorted(meta.get("params", {}).items()):
            fh.write(f"c param.{k}={v}\n")
    fh.write(f"c collapsed={1 if meta.get('collapsed') else 0}\n")
    fh.write("c labels=" + ",".join(str(x) for x in g.labels) + "\n")
    fh.write(f"p edge {g.n} {g.edge_count()}\n")
    for u in range(g.n):
        m = g.adj[u] >> (u + 1) << (u + 1)
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            fh.write(f"e {u + 1} {v + 1}\n")


def import_dimacs(fh: IO[str]) -> NCGraph:
    n = -1
    declared_edges = -1
    adj: list[int] = []
    meta: dict = {"params": {}}
    labels: Optional[tuple[int, ...]] = None
    edges = 0
    for lineno, line in enumerate(fh, 1):
        parts = line.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            body = line[1:].strip()
            if body.startswith("family="):
                meta["family"] = body[7:]
            elif body.startswith("param."):
                k, _, v = body[6:].partition("=")
                meta["params"][k] = int(v)
            elif body.startswith("collapsed="):
                meta["collapsed"] = body[10:] == "1"
            elif body.startswith("labels="):
                labels = tuple(int(x) for x in body[7:].split(",") if x)
        elif tag == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphBuildError(f"line {lineno}: malformed problem line")
            n = int(parts[2])
            declared_edges = int(parts[3])
            adj = [0] * n
        elif tag == "e":
            if n < 0:
                raise GraphBuildError(f"line {lineno}: edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GraphBuildError(f"line {lineno}: bad edge {parts[1]} {parts[2]}")
            if not adj[u] >> v & 1:
                edges += 1
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    if n < 0:
        raise GraphBuildError("missing problem line")
    if edges != declared_edges:
        raise GraphBuildError(
            f"problem line declares {declared_edges} edges, file has {edges}")
    if labels is None or len(labels) != n:
        labels = tuple(range(n))
    return NCGraph(n, adj, labels, meta)
