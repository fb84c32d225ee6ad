"""Arithmetic in prime-power finite fields GF(p^n).

A field is described by a :class:`FieldSpec` carrying the characteristic
``p``, the degree ``n`` and the monic irreducible modulus used for the
extension.  The modulus is stored as the coefficient tuple
``(c_{n-1}, ..., c_0)`` of the non-leading terms, highest degree first;
the spec for a given ``(p, n)`` is deterministic: the scan picks the
lexicographically least such tuple that is irreducible, so two runs (or
two machines) always agree on the representation.

Field elements are coefficient tuples in little-endian order,
``(a_0, a_1, ..., a_{n-1})`` meaning ``a_0 + a_1 x + ... + a_{n-1} x^{n-1}``.
Every element also has an integer code ``sum(a_i * p^i)`` in
``range(p^n)``; the batch kernels in :mod:`ncomega.groups` work on codes
through the lookup tables built by :func:`field_tables`.

Fields are capped at 2^16 elements.  Lookup tables are only built for
small fields (the group constructions never need more than GF(32)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 16
MAX_TABLE_SIZE = 1 << 10


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^n): characteristic, degree and modulus."""

    p: int
    n: int
    irreducible: tuple[int, ...]  # (c_{n-1}, ..., c_0), leading 1 implicit

    @property
    def size(self) -> int:
        return self.p**self.n


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---- polynomial helpers (little-endian coefficient lists over Z_p) ----


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_mod(f: list[int], g: list[int], p: int) -> list[int]:
    # g must be monic
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1]
        if c:
            shift = len(f) - 1 - dg
            for j, b in enumerate(g):
                f[shift + j] = (f[shift + j] - c * b) % p
        f.pop()
    return _poly_trim(f)


def _modulus_poly(spec: FieldSpec) -> list[int]:
    # little-endian monic modulus, degree n
    return [c % spec.p for c in reversed(spec.irreducible)] + [1]


def _poly_is_irreducible(coeffs_low: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(coeffs_low) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            g = []
            c = code
            for _ in range(d):
                g.append(c % p)
                c //= p
            g.append(1)
            if len(_poly_mod(coeffs_low, g, p)) == 0:
                return False
    return True


def ff_make_spec(p: int, n: int) -> FieldSpec:
    """Deterministic spec for GF(p^n).

    Scans coefficient tuples ``(c_{n-1}, ..., c_0)`` in ascending
    lexicographic order and returns the first monic irreducible modulus.
    """
    if not _is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    if not 1 <= n <= 16:
        raise FieldError(f"degree n = {n} out of range 1..16")
    if p**n > MAX_FIELD_SIZE:
        raise FieldError(f"field size {p**n} exceeds cap {MAX_FIELD_SIZE}")
    for code in range(p**n):
        # code -> tuple (c_{n-1}, ..., c_0), most significant digit first
        digits = []
        c = code
        for _ in range(n):
            digits.append(c % p)
            c //= p
        tup = tuple(reversed(digits))
        low = list(reversed(tup)) + [1]
        if _poly_is_irreducible(low, p):
            return FieldSpec(p, n, tup)
    raise FieldError(f"no irreducible polynomial found for GF({p}^{n})")  # pragma: no cover


def _check_elem(spec: FieldSpec, a: tuple[int, ...]) -> None:
    if len(a) != spec.n or any(not 0 <= c < spec.p for c in a):
        raise FieldError(f"bad element {a!r} for GF({spec.p}^{spec.n})")


def ff_zero(spec: FieldSpec) -> tuple[int, ...]:
    return (0,) * spec.n


def ff_one(spec: FieldSpec) -> tuple[int, ...]:
    return (1,) + (0,) * (spec.n - 1)


def ff_add(spec: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    _check_elem(spec, a)
    _check_elem(spec, b)
    return tuple((x + y) % spec.p for x, y in zip(a, b))


def ff_neg(spec: FieldSpec, a: tuple[int, ...]) -> tuple[int, ...]:
    _check_elem(spec, a)
    return tuple((-x) % spec.p for x in a)


def ff_sub(spec: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return ff_add(spec, a, ff_neg(spec, b))


def ff_mul(spec: FieldSpec, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    _check_elem(spec, a)
    _check_elem(spec, b)
    prod = _poly_mod(_poly_mul(list(a), list(b), spec.p), _modulus_poly(spec), spec.p)
    return tuple(prod) + (0,) * (spec.n - len(prod))


def ff_pow(spec: FieldSpec, a: tuple[int, ...], k: int) -> tuple[int, ...]:
    if k < 0:
        return ff_pow(spec, ff_inv(spec, a), -k)
    out = ff_one(spec)
    base = a
    while k:
        if k & 1:
            out = ff_mul(spec, out, base)
        base = ff_mul(spec, base, base)
        k >>= 1
    return out


def ff_inv(spec: FieldSpec, a: tuple[int, ...]) -> tuple[int, ...]:
    _check_elem(spec, a)
    if all(c == 0 for c in a):
        raise FieldError("inverse of zero")
    # a^(q-2) = a^(-1) in GF(q)
    return ff_pow(spec, a, spec.size - 2)


def ff_code(spec: FieldSpec, a: tuple[int, ...]) -> int:
    _check_elem(spec, a)
    code = 0
    for c in reversed(a):
        code = code * spec.p + c
    return code


def ff_elem(spec: FieldSpec, code: int) -> tuple[int, ...]:
    if not 0 <= code < spec.size:
        raise FieldError(f"bad code {code} for GF({spec.p}^{spec.n})")
    digits = []
    for _ in range(spec.n):
        digits.append(code % spec.p)
        code //= spec.p
    return tuple(digits)


def suzuki_theta(spec: FieldSpec, a: tuple[int, ...], m: int) -> tuple[int, ...]:
    """The twisting automorphism a -> a^(2^(m+1)) of GF(2^(2m+1)).

    Applying it twice squares the argument, which is what the Suzuki
    matrix identities rely on.
    """
    if spec.p != 2 or spec.n != 2 * m + 1:
        raise FieldError(f"theta needs GF(2^(2m+1)) with m = {m}, got GF({spec.p}^{spec.n})")
    return ff_pow(spec, a, 1 << (m + 1))


@lru_cache(maxsize=None)
def _factorize(m: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.append(d)
            m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def multiplicative_order(spec: FieldSpec, a: tuple[int, ...]) -> int:
    if all(c == 0 for c in a):
        raise FieldError("zero has no multiplicative order")
    order = spec.size - 1
    for f in set(_factorize(order)):
        while order % f == 0 and ff_pow(spec, a, order // f) == ff_one(spec):
            order //= f
    return order


def primitive_element(spec: FieldSpec) -> tuple[int, ...]:
    """Least-code generator of the multiplicative group."""
    for code in range(1, spec.size):
        a = ff_elem(spec, code)
        if multiplicative_order(spec, a) == spec.size - 1:
            return a
    raise FieldError("no primitive element found")  # pragma: no cover


@lru_cache(maxsize=None)
def field_tables(spec: FieldSpec) -> dict[str, np.ndarray]:
    """Code-indexed lookup tables: ADD, MUL, NEG, INV (INV[0] stays 0)."""
    q = spec.size
    if q > MAX_TABLE_SIZE:
        raise FieldError(f"lookup tables capped at {MAX_TABLE_SIZE} elements, got {q}")
    dtype = np.uint8 if q <= 256 else np.uint16
    elems = [ff_elem(spec, c) for c in range(q)]
    add = np.zeros((q, q), dtype=dtype)
    mul = np.zeros((q, q), dtype=dtype)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i, j] = ff_code(spec, ff_add(spec, a, b))
            mul[i, j] = ff_code(spec, ff_mul(spec, a, b))
    neg = np.array([ff_code(spec, ff_neg(spec, a)) for a in elems], dtype=dtype)
    inv = np.zeros(q, dtype=dtype)
    for i in range(1, q):
        inv[i] = ff_code(spec, ff_inv(spec, elems[i]))
    return {"add": add, "mul": mul, "neg": neg, "inv": inv}
