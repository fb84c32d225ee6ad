"""Concrete finite groups as enumerated element tables.

A group is a :class:`GroupTable`: a (N, width) uint8 array of canonical
element encodings plus a multiplication kernel that works on whole
batches of encodings at once.  Element indices are stable: the identity
sits at index 0 and the remaining elements appear in breadth-first
closure order from the generators, sorted within each level, so the
same build always yields the same table.

Subsets of a group (centralizers, subgroup parts, graph vertex sets)
are passed around as plain Python ints used as bitsets: bit i set means
element i is in the subset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..field import FieldSpec, field_tables

MAX_GROUP_ORDER = 1 << 20
MAX_SUBGROUP_CLOSURE = 10**4
_MAX_ORDER_ITER = 1 << 10


class GroupBuildError(ValueError):
    pass


# ---- bitset helpers ----


def mask_to_bits(mask: np.ndarray) -> int:
    """Bool array -> int bitset."""
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def bits_list(bits: int) -> list[int]:
    out = []
    while bits:
        b = bits & -bits
        out.append(b.bit_length() - 1)
        bits ^= b
    return out


def bits_size(bits: int) -> int:
    return bits.bit_count()


# ---- multiplication kernels ----


class MatrixKernel:
    """n x n matrices over GF(q), optionally scalar-normalized (projective).

    Encodings are row-major tuples of field codes.  Projective canonical
    form scales the first nonzero entry to 1, which identifies a matrix
    with all its scalar multiples.
    """

    def __init__(self, spec: FieldSpec, n: int, projective: bool):
        self.spec = spec
        self.n = n
        self.projective = projective
        self.width = n * n
        t = field_tables(spec)
        self._mul = t["mul"]
        self._add = t["add"]
        self._inv = t["inv"]
        self._xor = spec.p == 2
        eye = np.zeros(self.width, dtype=np.uint8)
        eye[:: n + 1] = 1
        self.identity = self.canon(eye[None, :])[0]

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        n = self.n
        A3 = A.reshape(A.shape[0], n, n)
        B3 = B.reshape(B.shape[0], n, n)
        N = max(A3.shape[0], B3.shape[0])
        out = np.empty((N, n, n), dtype=np.uint8)
        MUL = self._mul
        ADD = self._add
        for i in range(n):
            for j in range(n):
                acc = MUL[A3[:, i, 0], B3[:, 0, j]]
                for k in range(1, n):
                    t = MUL[A3[:, i, k], B3[:, k, j]]
                    acc = acc ^ t if self._xor else ADD[acc, t]
                out[:, i, j] = acc
        return self.canon(out.reshape(N, self.width))

    def canon(self, E: np.ndarray) -> np.ndarray:
        if not self.projective:
            return E
        first = np.argmax(E != 0, axis=1)
        lead = E[np.arange(E.shape[0]), first]
        f = self._inv[lead]
        return self._mul[f[:, None], E]


class ExtraspecialKernel:
    """Pairs (v, z) with v in Z_p^(2n), z in Z_p.

    Multiplication adds the vectors and accumulates the alternating form
    sum(u_{2i} * v_{2i+1}) into the central coordinate.  The 'minus'
    form twists the cocycle so the p = 2 group becomes the quaternion
    type and the odd-p group acquires exponent p^2.
    """

    def __init__(self, p: int, n: int, form: str):
        if form not in ("plus", "minus"):
            raise GroupBuildError(f"unknown extraspecial form {form!r}")
        self.p = p
        self.n = n
        self.form = form
        self.width = 2 * n + 1
        self.identity = np.zeros(self.width, dtype=np.uint8)

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        p = self.p
        n2 = 2 * self.n
        Av = A[:, :n2].astype(np.int32)
        Bv = B[:, :n2].astype(np.int32)
        form = (Av[:, 0::2] * Bv[:, 1::2]).sum(axis=1)
        z = A[:, n2].astype(np.int32) + B[:, n2] + form
        if self.form == "minus":
            if p == 2:
                z = z + Av[:, 0] * Bv[:, 0] + Av[:, 1] * Bv[:, 1]
            else:
                z = z + (Av[:, 0] + Bv[:, 0] >= p)
        N = max(A.shape[0], B.shape[0])
        out = np.empty((N, self.width), dtype=np.uint8)
        out[:, :n2] = (Av + Bv) % p
        out[:, n2] = z % p
        return out

    def canon(self, E: np.ndarray) -> np.ndarray:
        return E


class PermutationKernel:
    """Permutations of range(k) encoded as image tuples."""

    def __init__(self, k: int):
        self.k = k
        self.width = k
        self.identity = np.arange(k, dtype=np.uint8)

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        # (a b)(i) = a(b(i))
        if A.shape[0] == 1 and B.shape[0] > 1:
            A = np.broadcast_to(A, B.shape)
        if B.shape[0] == 1 and A.shape[0] > 1:
            B = np.broadcast_to(B, A.shape)
        return np.take_along_axis(A, B, axis=1)

    def canon(self, E: np.ndarray) -> np.ndarray:
        return E


# ---- the table ----


@dataclass
class GroupTable:
    family: str
    params: dict
    kernel: object
    enc: np.ndarray  # (N, width) uint8, canonical encodings
    generators: list[int]
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {row.tobytes(): i for i, row in enumerate(self.enc)}
        self._orders = None
        self._inverses = None
        self._center_bits = None
        self._centralizer_cache: dict[int, int] = {}

    def __len__(self) -> int:
        return self.enc.shape[0]

    @property
    def order(self) -> int:
        return self.enc.shape[0]

    def lookup(self, row: np.ndarray) -> int:
        return self.index[row.tobytes()]

    def mul_index(self, i: int, j: int) -> int:
        prod = self.kernel.mul(self.enc[i : i + 1], self.enc[j : j + 1])
        return self.lookup(prod[0])

    def batch_lookup(self, rows: np.ndarray) -> np.ndarray:
        idx = self.index
        return np.fromiter((idx[r.tobytes()] for r in rows), dtype=np.int64, count=rows.shape[0])

    # -- orders and inverses, one batched sweep --

    def _power_sweep(self) -> None:
        n = len(self)
        orders = np.zeros(n, dtype=np.int64)
        invs = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        invs[0] = 0
        alive = np.arange(n)
        cur = self.enc.copy()
        prev_idx = np.arange(n)
        ident = self.kernel.identity.tobytes()
        k = 1
        while alive.size:
            done = np.fromiter(
                (cur[i].tobytes() == ident for i in alive), dtype=bool, count=alive.size
            )
            hit = alive[done]
            orders[hit] = k
            invs[hit] = prev_idx[hit]
            alive = alive[~done]
            if not alive.size:
                break
            k += 1
            if k > _MAX_ORDER_ITER:
                raise GroupBuildError("element order iteration exceeded cap")
            prev_idx[alive] = self.batch_lookup(cur[alive])
            cur[alive] = self.kernel.mul(cur[alive], self.enc[alive])
        self._orders = orders
        self._inverses = invs

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._power_sweep()
        return self._orders

    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            self._power_sweep()
        return self._inverses

    def element_order(self, i: int) -> int:
        return int(self.element_orders()[i])

    def order_profile(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_orders().tolist()).items()))

    # -- commutation --

    def commute_mask(self, i: int) -> np.ndarray:
        """Bool mask of elements commuting with element i."""
        g = self.enc[i : i + 1]
        left = self.kernel.mul(g, self.enc)
        right = self.kernel.mul(self.enc, g)
        return (left == right).all(axis=1)

    def centralizer_bits(self, i: int) -> int:
        c = self._centralizer_cache.get(i)
        if c is None:
            c = mask_to_bits(self.commute_mask(i))
            self._centralizer_cache[i] = c
        return c

    def center_bits(self) -> int:
        if self._center_bits is None:
            mask = np.ones(len(self), dtype=bool)
            for g in self.generators:
                mask &= self.commute_mask(g)
            self._center_bits = mask_to_bits(mask)
        return self._center_bits

    def center_order(self) -> int:
        return bits_size(self.center_bits())

    def bicentralizer_bits(self, i: int) -> int:
        """C_G(C_G(i)): everything commuting with the whole centralizer of i.

        Always an abelian subgroup containing i when i is non-central in
        the usual cases of interest; computed by intersecting member
        centralizers and verified against the definition.
        """
        cent = self.centralizer_bits(i)
        members = bits_list(cent)
        if self.subset_is_abelian(cent):
            return cent
        inter = cent
        for m in members:
            if bits_size(inter) <= 1:
                break
            inter &= self.centralizer_bits(m)
        return inter

    def subset_is_abelian(self, bits: int) -> bool:
        idx = bits_list(bits)
        k = len(idx)
        if k > 2048:
            raise GroupBuildError(f"abelian check capped, subset has {k} elements")
        E = self.enc[idx]
        for t in range(k):
            g = E[t : t + 1]
            if not (self.kernel.mul(g, E) == self.kernel.mul(E, g)).all():
                return False
        return True

    # -- subgroup machinery --

    def subgroup_closure(self, seed: list[int], cap: int | None = None) -> int:
        """Bitset of <seed>, grown breadth-first; identity always included.

        Raises when the closure exceeds ``cap`` (default: whole group is
        permitted, so the caller can detect degenerate merges by size).
        """
        limit = cap if cap is not None else len(self)
        gens = sorted(set(seed) - {0})
        have = 1
        for g in gens:
            have |= 1 << g
        frontier = list(gens)
        genc = self.enc[gens] if gens else None
        while frontier:
            F = self.enc[frontier]
            new = []
            for t in range(genc.shape[0]):
                prods = self.kernel.mul(F, genc[t : t + 1])
                for j in self.batch_lookup(prods):
                    j = int(j)
                    if not (have >> j) & 1:
                        have |= 1 << j
                        new.append(j)
            if bits_size(have) > limit:
                raise GroupBuildError("subgroup closure exceeded cap")
            frontier = sorted(new)
        return have

    def conjugate_subset(self, bits: int, g: int) -> int:
        idx = bits_list(bits)
        ginv = int(self.inverses()[g])
        rows = self.kernel.mul(
            self.kernel.mul(self.enc[ginv : ginv + 1], self.enc[idx]), self.enc[g : g + 1]
        )
        out = 0
        for j in self.batch_lookup(rows):
            out |= 1 << int(j)
        return out

    def normal_closure(self, seed: list[int]) -> int:
        """Smallest normal subgroup containing the seed elements."""
        current = sorted(set(seed))
        while True:
            bits = self.subgroup_closure(current, cap=len(self))
            grown = bits
            for g in self.generators:
                grown |= self.conjugate_subset(bits, g)
            if grown == bits:
                return bits
            current = bits_list(grown)

    def commutator_index(self, i: int, j: int) -> int:
        inv = self.inverses()
        a = self.mul_index(int(inv[i]), int(inv[j]))
        b = self.mul_index(i, j)
        return self.mul_index(a, b)

    def derived_subgroup(self, subset_bits: int | None = None) -> int:
        """Commutator subgroup, as the normal closure of generator commutators."""
        if subset_bits is None:
            gens = self.generators
            comms = sorted({self.commutator_index(a, b) for a in gens for b in gens})
            return self.normal_closure(comms)
        idx = bits_list(subset_bits)
        if len(idx) > 2048:
            raise GroupBuildError("derived subgroup of large subset capped")
        comms = sorted({self.commutator_index(a, b) for a in idx for b in idx})
        # commutators of all members need no further normal closure inside <idx>
        return self.subgroup_closure(comms)

    def is_solvable(self) -> bool:
        current = self.derived_subgroup()
        seen = set()
        while bits_size(current) > 1:
            if current in seen:
                return False
            seen.add(current)
            nxt = self.derived_subgroup(current)
            if nxt == current:
                return False
            current = nxt
        return True

    # -- counting --

    def sylow_count_cyclic(self, p: int) -> int:
        """Number of Sylow p-subgroups when they are cyclic of prime order.

        Counts elements of order p and divides by p - 1.  Only valid
        when p divides the group order exactly once.
        """
        n = len(self)
        if n % p != 0:
            raise GroupBuildError(f"{p} does not divide the group order {n}")
        if (n // p) % p == 0:
            raise GroupBuildError(f"{p}^2 divides the group order, cyclic Sylow count invalid")
        k = int((self.element_orders() == p).sum())
        assert k % (p - 1) == 0
        return k // (p - 1)

    def sylow_two_count_by_centralizers(self) -> int:
        """Sylow 2-subgroup count for groups whose involution centralizers
        are exactly the Sylow 2-subgroups (verified, not assumed)."""
        n = len(self)
        two_part = 1
        while n % 2 == 0:
            two_part *= 2
            n //= 2
        orders = self.element_orders()
        involutions = np.flatnonzero(orders == 2)
        if involutions.size == 0:
            raise GroupBuildError("no involutions")
        distinct: set[int] = set()
        for i in involutions:
            distinct.add(self.centralizer_bits(int(i)))
        two_el_bits = mask_to_bits(np.isin(self.element_orders(), [2**k for k in range(1, 20)]))
        union = 0
        for c in distinct:
            if bits_size(c) != two_part:
                raise GroupBuildError("involution centralizer is not of full Sylow 2-order")
            for j in bits_list(c):
                o = self.element_order(j)
                if o != 1 and o & (o - 1):
                    raise GroupBuildError("involution centralizer contains odd-order elements")
            if union & c != (1 << 0) and union != 0 and bits_size(union & c) > 1:
                raise GroupBuildError("candidate Sylow 2-subgroups overlap non-trivially")
            union |= c
        if union | 1 != two_el_bits | 1:
            raise GroupBuildError("candidate Sylow 2-subgroups miss some 2-elements")
        return len(distinct)


# ---- breadth-first closure from generators ----


def closure_from_generators(
    kernel,
    gen_rows: np.ndarray,
    family: str,
    params: dict,
    expected_order: int | None = None,
) -> GroupTable:
    """Enumerate <generators> breadth-first.

    New elements are appended level by level in lexicographic encoding
    order, so indices are reproducible.  The enumeration aborts if it
    exceeds ``expected_order`` (wrong generators) or the global cap.
    """
    gen_rows = kernel.canon(np.ascontiguousarray(gen_rows, dtype=np.uint8))
    ident = kernel.identity
    index: dict[bytes, int] = {ident.tobytes(): 0}
    rows = [ident]
    frontier = []
    for row in np.unique(gen_rows, axis=0):
        key = row.tobytes()
        if key not in index:
            index[key] = len(rows)
            rows.append(row)
            frontier.append(row)
    gcount = gen_rows.shape[0]
    while frontier:
        F = np.asarray(frontier, dtype=np.uint8)
        prods = [kernel.mul(F, gen_rows[t : t + 1]) for t in range(gcount)]
        cand = np.unique(np.concatenate(prods, axis=0), axis=0)
        frontier = []
        for row in cand:
            key = row.tobytes()
            if key not in index:
                index[key] = len(rows)
                rows.append(row)
                frontier.append(row)
        size = len(rows)
        if expected_order is not None and size > expected_order:
            raise GroupBuildError(
                f"closure for {family} exceeded the expected order {expected_order}"
            )
        if size > MAX_GROUP_ORDER:
            raise GroupBuildError(f"closure exceeded the global cap {MAX_GROUP_ORDER}")
    enc = np.asarray(rows, dtype=np.uint8)
    if expected_order is not None and enc.shape[0] != expected_order:
        raise GroupBuildError(
            f"closure for {family} has order {enc.shape[0]}, expected {expected_order}"
        )
    gens = [index[row.tobytes()] for row in gen_rows]
    return GroupTable(family=family, params=params, kernel=kernel, enc=enc, generators=gens, index=index)
