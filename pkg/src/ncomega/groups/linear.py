"""Linear groups GL/SL/PGL/PSL(n, q) as matrix tables.

Generators are the elementary transvections on adjacent positions with
parameters running over a GF(p)-basis of GF(q), plus a primitive
diagonal for the general linear versions.  Projective groups reuse the
same generators under scalar normalization.  The known order formulas
are asserted after closure, never fed in.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from ..field import ff_code, ff_make_spec, primitive_element
from .table import GroupBuildError, MatrixKernel, closure_from_generators

_KINDS = ("GL", "SL", "PGL", "PSL")


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise GroupBuildError(f"q = {q} is not a prime power")
    p = 2
    while q % p != 0:
        p += 1
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise GroupBuildError(f"q = {q} is not a prime power")
    return p, e


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def sl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def pgl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def psl_order(n: int, q: int) -> int:
    return sl_order(n, q) // gcd(n, q - 1)


def linear_order(kind: str, n: int, q: int) -> int:
    return {"GL": gl_order, "SL": sl_order, "PGL": pgl_order, "PSL": psl_order}[kind](n, q)


def build_linear(kind: str, n: int, q: int):
    kind = kind.upper()
    if kind not in _KINDS:
        raise GroupBuildError(f"unknown linear kind {kind!r}")
    if n not in (2, 3):
        raise GroupBuildError(f"matrix degree n = {n} unsupported (need 2 or 3)")
    p, e = _prime_power(q)
    spec = ff_make_spec(p, e)
    kernel = MatrixKernel(spec, n, projective=kind in ("PGL", "PSL"))

    def mat(entries: dict[tuple[int, int], int]) -> np.ndarray:
        m = np.zeros(n * n, dtype=np.uint8)
        for i in range(n):
            m[i * n + i] = 1
        for (i, j), code in entries.items():
            m[i * n + j] = code
        return m

    basis = [ff_code(spec, tuple(1 if t == j else 0 for t in range(e))) for j in range(e)]
    gens = []
    for i in range(n - 1):
        for b in basis:
            gens.append(mat({(i, i + 1): b}))
            gens.append(mat({(i + 1, i): b}))
    if kind in ("GL", "PGL"):
        gamma = ff_code(spec, primitive_element(spec))
        d = mat({})
        d[0] = gamma
        gens.append(d)
    expected = linear_order(kind, n, q)
    if expected > 1 << 20:
        raise GroupBuildError(f"{kind}({n},{q}) order {expected} exceeds the build cap")
    return closure_from_generators(
        kernel,
        np.asarray(gens, dtype=np.uint8),
        family=kind.lower(),
        params={"n": n, "q": q},
        expected_order=expected,
    )
