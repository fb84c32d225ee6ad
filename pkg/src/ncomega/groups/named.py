"""Small named groups: dihedral, symmetric, alternating, quaternion.

Permutation groups are enumerated from standard generators; the
quaternion group of order 8 is the minus-type extra-special group
relabeled.  Names are single tokens like ``dihedral(6)``,
``symmetric(4)``, ``alternating(5)`` or ``quaternion8``.
"""

from __future__ import annotations

import re
from math import factorial

import numpy as np

from .extraspecial import build_extraspecial
from .table import GroupBuildError, PermutationKernel, closure_from_generators

_NAME_RE = re.compile(r"^(dihedral|symmetric|alternating)\((\d+)\)$")


def build_named(name: str):
    name = name.strip().replace(" ", "")
    if name == "quaternion8":
        base = build_extraspecial(2, 1, "minus")
        base.family = "named"
        base.params = {"name": "quaternion8"}
        return base
    m = _NAME_RE.match(name)
    if not m:
        raise GroupBuildError(f"unknown named group {name!r}")
    kind, k = m.group(1), int(m.group(2))
    if kind == "dihedral":
        if k < 3:
            raise GroupBuildError("dihedral(k) needs k >= 3")
        rot = np.array([(i + 1) % k for i in range(k)], dtype=np.uint8)
        ref = np.array([(-i) % k for i in range(k)], dtype=np.uint8)
        gens = np.stack([rot, ref])
        expected = 2 * k
    elif kind == "symmetric":
        if k < 3:
            raise GroupBuildError("symmetric(k) needs k >= 3")
        cyc = np.array([(i + 1) % k for i in range(k)], dtype=np.uint8)
        swap = np.arange(k, dtype=np.uint8)
        swap[0], swap[1] = 1, 0
        gens = np.stack([cyc, swap])
        expected = factorial(k)
    else:
        if k < 3:
            raise GroupBuildError("alternating(k) needs k >= 3")
        rows = []
        for i in range(k - 2):
            g = np.arange(k, dtype=np.uint8)
            g[i], g[i + 1], g[i + 2] = g[i + 1], g[i + 2], g[i]
            rows.append(g)
        gens = np.stack(rows)
        expected = factorial(k) // 2
    if expected > 1 << 20:
        raise GroupBuildError(f"{name} order {expected} exceeds the build cap")
    return closure_from_generators(
        PermutationKernel(k), gens, family="named", params={"name": name}, expected_order=expected
    )
