"""Structural clique-number engine for non-commuting graphs.

The clique number is attacked through abelian covers rather than raw
search whenever possible.  The objects involved:

* centralizer classes.  In a group whose non-central centralizers are
  all abelian ("centralizer-abelian" below), the distinct centralizers
  of non-central elements partition the non-central elements, and the
  clique number equals their count: elements of one class commute,
  representatives of two classes never do.

* abelian cover classes.  In general, each non-central g yields the
  abelian subgroup C(C(g)) (the centralizer of the centralizer, equal
  to C(g) whenever C(g) is abelian).  A family of such subgroups that
  covers the non-central elements gives an upper bound (a clique meets
  each abelian class at most once).  If additionally every class holds
  a witness w with C(w) equal to the class, and no class holds two
  witnesses, the witnesses form a clique of the same size and the
  bound is exact.  Both facts are re-verified on the computed sets, so
  the certificate does not depend on the discovery heuristics.

* partitions into subgroups.  When the cover classes merge and close
  into subgroups A_1..A_k that pairwise intersect exactly in the
  center and satisfy C(x) <= A_i for non-central x in A_i, cliques
  split along the parts and omega(G) is the sum of the parts'
  contributions: 1 for an abelian part, the part's own clique number
  otherwise.  Each requirement is machine-checked and recorded as a
  flag; a failed flag makes the decomposition informational only.

omega() dispatches between these, a closed-form table, and the exact
branch-and-bound solver on the center-collapsed graph, cross-checking
whenever two sources are available.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import formulas
from .graph import build_ncgraph, collapse_by_center
from .groups.table import (GroupBuildError, GroupTable, bits_list, bits_size)
from .solver import extend_clique, greedy_coloring, max_clique_exact

__all__ = [
    "AbelianCoverClass",
    "ExtensionReport",
    "InconsistencyError",
    "OmegaCertificate",
    "OmegaReport",
    "PartitionDecomposition",
    "PartitionPart",
    "StructureError",
    "ac_omega",
    "class_membership_counts",
    "cover_certificate_omega",
    "extend_singleton",
    "is_ac_group",
    "maximal_bicentralizer_classes",
    "non_extendable_witness",
    "omega",
    "partition_decompose",
    "partition_omega",
    "singleton_extension_check",
    "subgroup_table",
]

METHODS = ("auto", "formula", "ac", "cover", "partition", "solver")

# closures during partition merging refuse to grow past this
PART_CLOSURE_CAP = 10_000


class StructureError(RuntimeError):
    """A structural method's hypotheses fail for this group."""


class InconsistencyError(RuntimeError):
    """Two independent omega computations disagree; nothing is trusted."""


@dataclass(frozen=True)
class AbelianCoverClass:
    """An abelian subgroup used as one color class of a cover.

    bits indexes group elements (center included); witness, when set,
    is a member whose full centralizer equals the class.
    """

    bits: int
    size: int
    witness: Optional[int]

    def members(self) -> list[int]:
        return bits_list(self.bits)


@dataclass(frozen=True)
class OmegaCertificate:
    method: str                      # "ac" or "cover"
    omega: int
    classes: tuple[AbelianCoverClass, ...]

    @property
    def witnesses(self) -> tuple[int, ...]:
        return tuple(c.witness for c in self.classes)


@dataclass(frozen=True)
class PartitionPart:
    bits: int
    size: int
    abelian: Optional[bool]          # None when hypotheses failed early
    contribution: Optional[int]


@dataclass(frozen=True)
class PartitionDecomposition:
    """Subgroup parts with machine-checked hypothesis flags.

    omega is the contribution sum when every flag holds, else None;
    failure carries the first recorded defect.  proper means at least
    two parts, which is what keeps the per-part recursion grounded.
    """

    parts: tuple[PartitionPart, ...]
    omega: Optional[int]
    center_bits: int
    covers: bool
    pairwise_center: bool
    centralizers_contained: bool
    proper: bool
    failure: Optional[str] = None

    @property
    def hypotheses_met(self) -> bool:
        return (self.covers and self.pairwise_center
                and self.centralizers_contained and self.proper)


@dataclass(frozen=True)
class ExtensionReport:
    """Whether every vertex lies on some maximum clique.

    For an element in k cover classes, any clique through it misses
    the other k-1 classes entirely, so k = 1 is exactly extendability.
    """

    all_extend: bool
    omega: int
    max_k: int
    offenders: tuple[tuple[int, int], ...]   # (element, k), k >= 2, capped


@dataclass(frozen=True)
class OmegaReport:
    omega: int
    method: str
    exact: bool
    formula: Optional[tuple[int, int]]       # (lo, hi) closed-form range if known
    certificate: Optional[OmegaCertificate]
    partition: Optional[PartitionDecomposition]
    details: dict = field(compare=False, default_factory=dict)


def _noncentral(G: GroupTable) -> tuple[int, int]:
    center = G.center_bits()
    full = (1 << G.order) - 1
    return center, full & ~center


def _scan_order(G: GroupTable) -> list[int]:
    """Non-central elements, highest element order first, then index.

    High-order elements have the smallest centralizers, which are the
    abelian ones; visiting them first lets their classes absorb the
    low-order elements before those are ever scanned.
    """
    center, noncentral = _noncentral(G)
    orders = G.element_orders()
    idx = bits_list(noncentral)
    idx.sort(key=lambda i: (-int(orders[i]), i))
    return idx


def is_ac_group(G: GroupTable) -> bool:
    """True when every non-central element has an abelian centralizer."""
    center, noncentral = _noncentral(G)
    checked = 0
    orders = G.element_orders()
    for i in bits_list(noncentral):
        if checked >> i & 1:
            continue
        c = G.centralizer_bits(i)
        if not G.subset_is_abelian(c):
            return False
        # generators of <i> share the same centralizer
        n = int(orders[i])
        p = i
        for k in range(1, n):
            p = G.mul_index(p, i)
            if np.gcd(k + 1, n) == 1:
                checked |= 1 << p
    return True


def ac_omega(G: GroupTable) -> OmegaCertificate:
    """Clique number of a centralizer-abelian group by counting classes."""
    center, noncentral = _noncentral(G)
    if noncentral == 0:
        raise StructureError("group is abelian; there are no non-central elements")
    if not is_ac_group(G):
        raise StructureError(
            "some non-central element has a non-abelian centralizer; "
            "centralizer counting does not apply")
    covered = center
    classes: list[AbelianCoverClass] = []
    for i in bits_list(noncentral):
        if covered >> i & 1:
            continue
        c = G.centralizer_bits(i)
        if not G.subset_is_abelian(c):
            raise StructureError(
                f"element {i} has a non-abelian centralizer of order "
                f"{bits_size(c)}; centralizer counting does not apply")
        classes.append(AbelianCoverClass(c, bits_size(c), i))
        covered |= c
    cert = OmegaCertificate("ac", len(classes), tuple(classes))
    _verify_certificate(G, cert)
    return cert


def maximal_bicentralizer_classes(G: GroupTable) -> list[AbelianCoverClass]:
    """Abelian cover classes, inclusion-maximal within the discovered family.

    Discovery scans uncovered elements (largest element order first) and
    takes C(C(g)) for each, then prunes classes contained in another.
    The result covers all non-central elements and every class is
    verified abelian; classes are ordered by least non-central member.
    """
    center, noncentral = _noncentral(G)
    discovered: dict[int, Optional[int]] = {}
    covered = center
    for i in _scan_order(G):
        if covered >> i & 1:
            continue
        c = G.centralizer_bits(i)
        if G.subset_is_abelian(c):
            cls, wit = c, i
        else:
            cls, wit = G.bicentralizer_bits(i), None
        if not cls >> i & 1:
            raise StructureError(
                f"element {i} missing from its own class; group data corrupt")
        if cls not in discovered or (discovered[cls] is None and wit is not None):
            discovered[cls] = wit
        covered |= cls

    # prune non-maximal classes: a class can only sit inside a class that
    # contains its least non-central member, so candidates come from a
    # member incidence map instead of all pairs
    keys = sorted(discovered, key=lambda b: bits_list(b & ~center)[0])
    incidence: dict[int, list[int]] = {}
    for ki, b in enumerate(keys):
        for m in bits_list(b & ~center):
            incidence.setdefault(m, []).append(ki)
    keep = []
    for ki, b in enumerate(keys):
        least = bits_list(b & ~center)[0]
        maximal = True
        for kj in incidence[least]:
            other = keys[kj]
            if kj != ki and b & ~other == 0 and b != other:
                maximal = False
                break
        if maximal:
            keep.append(b)

    union = center
    out = []
    for b in keep:
        if not G.subset_is_abelian(b):
            raise StructureError("discovered class is not abelian; group data corrupt")
        out.append(AbelianCoverClass(b, bits_size(b), discovered[b]))
        union |= b
    if union & noncentral != noncentral:
        missing = bits_list(noncentral & ~union)[0]
        raise StructureError(f"cover lost element {missing} during pruning")
    return out


def _verify_certificate(G: GroupTable, cert: OmegaCertificate) -> None:
    """Re-check everything the certificate's omega claim rests on."""
    center, noncentral = _noncentral(G)
    union = center
    wbits = 0
    for cls in cert.classes:
        if cls.witness is None:
            raise StructureError("certificate has a class without a witness")
        if not cls.bits >> cls.witness & 1:
            raise StructureError("witness lies outside its class")
        if G.centralizer_bits(cls.witness) != cls.bits:
            raise StructureError(
                f"witness {cls.witness}: centralizer differs from its class")
        union |= cls.bits
    if union & noncentral != noncentral:
        raise StructureError("classes do not cover the non-central elements")
    for cls in cert.classes:
        wbits |= 1 << cls.witness
    for cls in cert.classes:
        hits = cls.bits & wbits
        if hits.bit_count() != 1:
            raise StructureError(
                f"class holds {hits.bit_count()} witnesses; the witnesses "
                "cannot be a clique")
    if len(cert.classes) != cert.omega:
        raise StructureError("class count does not match claimed omega")


def cover_certificate_omega(G: GroupTable) -> OmegaCertificate:
    """Exact omega from a verified abelian cover with witnesses.

    Upper bound: the classes cover the non-central elements and a
    clique meets an abelian class at most once.  Lower bound: one
    witness per class, pairwise non-commuting because each witness's
    centralizer is exactly its own class and no class holds two.
    Raises StructureError when some class admits no witness (the
    certificate-gap outcome; the dispatcher then falls back).
    """
    center, _ = _noncentral(G)
    classes = maximal_bicentralizer_classes(G)
    if not classes:
        raise StructureError("group is abelian; there are no non-central elements")
    fixed = []
    for cls in classes:
        wit = cls.witness
        if wit is None:
            for m in bits_list(cls.bits & ~center):
                if G.centralizer_bits(m) == cls.bits:
                    wit = m
                    break
        if wit is None:
            raise StructureError(
                f"no witness: class of size {cls.size} contains no element "
                "whose centralizer equals the class")
        fixed.append(AbelianCoverClass(cls.bits, cls.size, wit))
    cert = OmegaCertificate("cover", len(fixed), tuple(fixed))
    _verify_certificate(G, cert)
    return cert


def class_membership_counts(G: GroupTable,
                            classes: tuple[AbelianCoverClass, ...]) -> dict[int, int]:
    """How many cover classes contain each non-central element."""
    center, _ = _noncentral(G)
    counts: dict[int, int] = {}
    for cls in classes:
        for m in bits_list(cls.bits & ~center):
            counts[m] = counts.get(m, 0) + 1
    return counts


def singleton_extension_check(G: GroupTable,
                              cert: Optional[OmegaCertificate] = None,
                              offender_cap: int = 16) -> ExtensionReport:
    if cert is None:
        cert = cover_certificate_omega(G)
    counts = class_membership_counts(G, cert.classes)
    offenders = [(e, k) for e, k in sorted(counts.items()) if k >= 2]
    max_k = max(counts.values(), default=0)
    return ExtensionReport(not offenders, cert.omega, max_k,
                           tuple(offenders[:offender_cap]))


def extend_singleton(G: GroupTable, x: int,
                     cert: Optional[OmegaCertificate] = None) -> tuple[int, ...]:
    """A maximum clique through x, when one exists.

    Swaps x for the witness of its unique class; raises StructureError
    when x sits in several classes, since any clique through such an x
    stops short of omega.
    """
    if cert is None:
        cert = cover_certificate_omega(G)
    center, noncentral = _noncentral(G)
    if not noncentral >> x & 1:
        raise StructureError(f"element {x} is central")
    holding = [ci for ci, cls in enumerate(cert.classes) if cls.bits >> x & 1]
    if len(holding) != 1:
        raise StructureError(
            f"element {x} lies in {len(holding)} cover classes; the largest "
            f"clique through it has at most {1 + cert.omega - len(holding)} "
            f"vertices, short of omega = {cert.omega}")
    clique = [x if ci == holding[0] else cls.witness
              for ci, cls in enumerate(cert.classes)]
    cm = G.centralizer_bits(x)
    for ci, w in enumerate(clique):
        if w != x and cm >> w & 1:
            raise StructureError(
                f"witness {w} commutes with {x}; certificate inconsistent")
    return tuple(sorted(clique))


def non_extendable_witness(G: GroupTable,
                           cert: Optional[OmegaCertificate] = None,
                           ) -> Optional[tuple[int, int, int]]:
    """(element, class count k, clique bound 1 + omega - k) for the least
    element no maximum clique passes through, or None when all extend."""
    if cert is None:
        cert = cover_certificate_omega(G)
    counts = class_membership_counts(G, cert.classes)
    for e, k in sorted(counts.items()):
        if k >= 2:
            return e, k, 1 + cert.omega - k
    return None


# -- partition into subgroups --


def subgroup_table(G: GroupTable, bits: int) -> GroupTable:
    """The subgroup on the given elements as a standalone group.

    The caller guarantees closure (use subgroup_closure); identity must
    be element 0 of the parent.
    """
    if not bits & 1:
        raise StructureError("subgroup bitset must contain the identity")
    members = bits_list(bits)
    enc = np.ascontiguousarray(G.enc[members])
    return GroupTable(family="subgroup",
                      params={"parent": G.family, "order": len(members)},
                      kernel=G.kernel, enc=enc,
                      generators=list(range(len(members))))


def _closure_of_support(G: GroupTable, bits: int, cap: int) -> int:
    """Subgroup generated by the members of bits, built incrementally so
    the generator list stays small."""
    gens: list[int] = []
    have = 1
    for m in bits_list(bits):
        if not have >> m & 1:
            gens.append(m)
            have = G.subgroup_closure(gens, cap=cap)
    return have


def partition_decompose(G: GroupTable, *,
                        part_cap: int = PART_CLOSURE_CAP) -> PartitionDecomposition:
    """Merge cover classes into subgroups partitioning G over its center.

    Classes sharing a non-central element are merged transitively, the
    merged supports are closed into subgroups, and closures that come
    to share non-central elements are merged again until stable.  The
    recorded flags then say whether the parts cover G, pairwise meet
    exactly in the center, contain the centralizer of each of their
    non-central members, and number at least two.  All flags true
    makes omega the sum of part contributions (1 for abelian parts,
    the part's recursive clique number otherwise); any false flag
    leaves omega None with the defect in failure.
    """
    center, noncentral = _noncentral(G)
    if noncentral == 0:
        raise StructureError("group is abelian; nothing to decompose")
    classes = maximal_bicentralizer_classes(G)

    parent = list(range(len(classes)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[int, int] = {}
    for ci, cls in enumerate(classes):
        for m in bits_list(cls.bits & ~center):
            if m in owner:
                ra, rb = find(owner[m]), find(ci)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[m] = ci

    merged: dict[int, int] = {}
    for ci, cls in enumerate(classes):
        r = find(ci)
        merged[r] = merged.get(r, 0) | cls.bits
    supports = [b | center for b in merged.values()]

    failure: Optional[str] = None
    try:
        while True:
            supports = [_closure_of_support(G, b, part_cap) | center
                        for b in supports]
            own: dict[int, int] = {}
            par2 = list(range(len(supports)))

            def find2(a: int) -> int:
                while par2[a] != a:
                    par2[a] = par2[par2[a]]
                    a = par2[a]
                return a

            merges = 0
            for ci, b in enumerate(supports):
                for m in bits_list(b & ~center):
                    if m in own:
                        ra, rb = find2(own[m]), find2(ci)
                        if ra != rb:
                            par2[rb] = ra
                            merges += 1
                    else:
                        own[m] = ci
            if not merges:
                break
            regroup: dict[int, int] = {}
            for ci, b in enumerate(supports):
                r = find2(ci)
                regroup[r] = regroup.get(r, 0) | b
            supports = list(regroup.values())
    except GroupBuildError:
        failure = (f"a merged part's closure exceeded the "
                   f"{part_cap}-element cap")

    parts_bits = sorted(supports, key=lambda b: bits_list(b & ~center)[0])

    covers = pairwise = contained = False
    if failure is None:
        union = center
        seen_twice = 0
        for b in parts_bits:
            seen_twice |= (union & b) & ~center
            union |= b
        covers = union == center | noncentral
        pairwise = seen_twice == 0
        if not covers:
            failure = "parts do not cover the group"
        elif not pairwise:
            e = bits_list(seen_twice)[0]
            failure = f"parts share non-central element {e}"
    if failure is None:
        contained = True
        orders = G.element_orders()
        for b in parts_bits:
            verified = center
            for x in bits_list(b & ~center):
                if verified >> x & 1:
                    continue
                cm = G.centralizer_bits(x)
                if cm & ~b:
                    outside = bits_list(cm & ~b)[0]
                    failure = (f"centralizer of {x} leaves its part "
                               f"(element {outside}); cliques do not split "
                               "along these parts")
                    contained = False
                    break
                n = int(orders[x])
                p = x
                for k in range(1, n):
                    p = G.mul_index(p, x)
                    if np.gcd(k + 1, n) == 1:
                        verified |= 1 << p
            if not contained:
                break
    proper = len(parts_bits) >= 2
    if failure is None and not proper:
        failure = "decomposition is a single part, which proves nothing"

    ok = covers and pairwise and contained and proper
    out = []
    total = 0
    for b in parts_bits:
        if not ok:
            out.append(PartitionPart(b, bits_size(b), None, None))
            continue
        if bits_size(b) <= 2048:
            ab = G.subset_is_abelian(b)
            sub = None
        else:
            sub = subgroup_table(G, b)
            ab = sub.center_order() == sub.order
        if ab:
            contrib = 1
        else:
            if sub is None:
                sub = subgroup_table(G, b)
            contrib = omega(sub).omega
        out.append(PartitionPart(b, bits_size(b), ab, contrib))
        total += contrib
    return PartitionDecomposition(tuple(out), total if ok else None, center,
                                  covers, pairwise, contained, proper, failure)


def partition_omega(G: GroupTable) -> PartitionDecomposition:
    """partition_decompose, demanding that every hypothesis holds."""
    d = partition_decompose(G)
    if d.omega is None:
        raise StructureError(f"subgroup partition does not apply: {d.failure}")
    return d


# -- dispatch --


def _solver_omega(G: GroupTable, engine: str, node_limit: int,
                  time_limit: float, allow_big: bool,
                  details: dict) -> int:
    g = build_ncgraph(G, allow_big=allow_big)
    if G.center_order() > 1:
        g = collapse_by_center(G, g, allow_big=allow_big)
    details["solver_vertices"] = g.n
    if g.n == 0:
        return 0
    hint = greedy_coloring(g.adj, g.n)
    seed = extend_clique(g.adj, g.n)
    res = max_clique_exact(g.adj, g.n, initial_clique=seed, color_hint=hint,
                           node_limit=node_limit, time_limit=time_limit,
                           engine=engine)
    details["solver_nodes"] = res.nodes
    details["solver_engine"] = res.engine
    return res.size


def omega(G: GroupTable, method: str = "auto", *, engine: str = "auto",
          node_limit: int = 100_000_000, time_limit: float = 600.0,
          allow_big: bool = False) -> OmegaReport:
    """Clique number of the non-commuting graph of G.

    method "auto" tries centralizer counting, then the witnessed cover,
    then the subgroup partition, then branch and bound on the collapsed
    graph, and cross-checks the winner against the closed-form table
    when the family has an entry.  A specific method runs just that
    one (still cross-checked) and raises StructureError if its
    hypotheses fail.  Disagreement raises InconsistencyError.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    t0 = time.monotonic()
    details: dict = {}
    center, noncentral = _noncentral(G)
    bounds = formulas.closed_form_bounds(G.family, G.params)
    if noncentral == 0:
        if method not in ("auto", "formula"):
            raise StructureError("group is abelian; there are no non-central elements")
        return OmegaReport(0, "trivial", True, bounds, None, None, details)

    cert: Optional[OmegaCertificate] = None
    decomp: Optional[PartitionDecomposition] = None
    value: Optional[int] = None
    used = method

    if method == "formula":
        if bounds is None:
            raise StructureError(
                f"no closed form for family {G.family!r} with these parameters")
        if bounds[0] != bounds[1]:
            raise StructureError(
                f"closed form only bounds omega in [{bounds[0]}, {bounds[1]}]; "
                "use another method for the exact value")
        value = bounds[0]
    elif method == "ac":
        cert = ac_omega(G)
        value = cert.omega
    elif method == "cover":
        cert = cover_certificate_omega(G)
        value = cert.omega
    elif method == "partition":
        decomp = partition_omega(G)
        value = decomp.omega
    elif method == "solver":
        value = _solver_omega(G, engine, node_limit, time_limit, allow_big, details)
    else:
        tried = []
        for name, run in (
                ("ac", lambda: ac_omega(G)),
                ("cover", lambda: cover_certificate_omega(G)),
                ("partition", lambda: partition_omega(G))):
            try:
                got = run()
            except StructureError as e:
                tried.append(f"{name}: {e}")
                continue
            if name == "partition":
                decomp = got
                value = got.omega
            else:
                cert = got
                value = got.omega
            used = name
            break
        else:
            used = "solver"
            value = _solver_omega(G, engine, node_limit, time_limit,
                                  allow_big, details)
        details["skipped"] = tried

    assert value is not None
    if bounds is not None and not bounds[0] <= value <= bounds[1]:
        lo, hi = bounds
        raise InconsistencyError(
            f"method {used} found omega = {value} but the closed form for "
            f"{G.family} gives [{lo}, {hi}]; results cannot both be right")
    details["seconds"] = round(time.monotonic() - t0, 3)
    return OmegaReport(value, used, True, bounds, cert, decomp, details)
