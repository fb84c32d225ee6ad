"""Extra-special p-groups of order p^(2n+1).

Elements are pairs (v, z) with v in Z_p^(2n) and z central in Z_p; the
multiplication is the central extension of Z_p^(2n) by the alternating
form paired on consecutive coordinates (see ExtraspecialKernel).  The
'plus' form gives the exponent-p group for odd p and the dihedral-type
central product for p = 2; 'minus' gives the quaternion type (p = 2)
and the exponent-p^2 type (odd p).

All p^(2n+1) digit tuples are enumerated directly in code order, so the
identity (all zeros) is index 0 and indices are reproducible.
"""

from __future__ import annotations

import numpy as np

from .table import ExtraspecialKernel, GroupBuildError, GroupTable


def extraspecial_order(p: int, n: int) -> int:
    return p ** (2 * n + 1)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def build_extraspecial(p: int, n: int, form: str = "plus") -> GroupTable:
    if not _is_prime(p):
        raise GroupBuildError(f"extraspecial base p = {p} must be prime")
    if n < 1:
        raise GroupBuildError(f"extraspecial rank n = {n} must be >= 1")
    order = extraspecial_order(p, n)
    if order > 1 << 20:
        raise GroupBuildError(f"extraspecial order {order} exceeds the build cap")
    kernel = ExtraspecialKernel(p, n, form)
    width = 2 * n + 1
    codes = np.arange(order)
    enc = np.empty((order, width), dtype=np.uint8)
    for i in range(width):
        enc[:, i] = codes % p
        codes = codes // p
    gens = [int(p**i) for i in range(2 * n)]  # basis vectors (e_i, 0)
    table = GroupTable(
        family="extraspecial",
        params={"p": p, "n": n, "form": form},
        kernel=kernel,
        enc=enc,
        generators=gens,
    )
    # the defining properties are cheap to confirm at build time
    if table.center_order() != p:
        raise GroupBuildError("extraspecial construction has wrong center")
    return table
