"""Suzuki groups Sz(q), q = 2^(2m+1), as 4 x 4 matrices over GF(q).

The group is generated by the unipotent family S(a, b), a diagonal
torus element and the antidiagonal involution.  With t the twisting
automorphism x -> x^(2^(m+1)) (so t applied twice squares),

    S(a, b) = [ 1                    0            0    0 ]
              [ a                    1            0    0 ]
              [ a^(1+t) + b          a^t          1    0 ]
              [ a^(2+t) + a b + b^t  b            a    1 ]

satisfies S(a,b) S(c,d) = S(a+c, b+d+a*c^t), so the S(a,b) form a
subgroup of order q^2 (the Sylow 2-subgroup).  The closure order is
asserted against q^2 (q^2 + 1)(q - 1).
"""

from __future__ import annotations

import numpy as np

from ..field import (
    ff_add,
    ff_code,
    ff_elem,
    ff_inv,
    ff_make_spec,
    ff_mul,
    ff_pow,
    primitive_element,
    suzuki_theta,
)
from .table import GroupBuildError, MatrixKernel, closure_from_generators


def suzuki_order(m: int) -> int:
    q = 2 ** (2 * m + 1)
    return q * q * (q * q + 1) * (q - 1)


def suzuki_field(m: int):
    return ff_make_spec(2, 2 * m + 1)


def build_suzuki(m: int):
    if m < 1:
        raise GroupBuildError(f"suzuki parameter m = {m} must be >= 1")
    expected = suzuki_order(m)
    if expected > 1 << 20:
        raise GroupBuildError(f"Sz(2^{2*m+1}) order {expected} exceeds the build cap")
    spec = suzuki_field(m)
    kernel = MatrixKernel(spec, 4, projective=False)

    def s_matrix(a, b) -> np.ndarray:
        at = suzuki_theta(spec, a, m)
        bt = suzuki_theta(spec, b, m)
        f2 = ff_add(spec, ff_mul(spec, a, at), b)  # a^(1+t) + b
        f3 = ff_add(
            spec,
            ff_add(spec, ff_mul(spec, ff_mul(spec, a, a), at), ff_mul(spec, a, b)),
            bt,
        )  # a^(2+t) + ab + b^t
        rows = [
            [ff_elem(spec, 1), ff_elem(spec, 0), ff_elem(spec, 0), ff_elem(spec, 0)],
            [a, ff_elem(spec, 1), ff_elem(spec, 0), ff_elem(spec, 0)],
            [f2, at, ff_elem(spec, 1), ff_elem(spec, 0)],
            [f3, b, a, ff_elem(spec, 1)],
        ]
        return np.array([ff_code(spec, x) for r in rows for x in r], dtype=np.uint8)

    def torus(lam) -> np.ndarray:
        r = 2**m
        d = [
            ff_pow(spec, lam, r + 1),
            ff_pow(spec, lam, r),
            ff_inv(spec, ff_pow(spec, lam, r)),
            ff_inv(spec, ff_pow(spec, lam, r + 1)),
        ]
        out = np.zeros(16, dtype=np.uint8)
        for i in range(4):
            out[i * 4 + i] = ff_code(spec, d[i])
        return out

    tau = np.zeros(16, dtype=np.uint8)
    for i in range(4):
        tau[i * 4 + (3 - i)] = 1

    one = ff_elem(spec, 1)
    zero = ff_elem(spec, 0)
    gens = np.asarray(
        [s_matrix(one, zero), s_matrix(zero, one), torus(primitive_element(spec)), tau],
        dtype=np.uint8,
    )
    return closure_from_generators(
        kernel, gens, family="suzuki", params={"m": m}, expected_order=expected
    )
