"""Group construction and elementwise structure queries."""

from __future__ import annotations

from functools import lru_cache

from .extraspecial import build_extraspecial, extraspecial_order
from .linear import build_linear, gl_order, linear_order, pgl_order, psl_order, sl_order
from .named import build_named
from .suzuki import build_suzuki, suzuki_order
from .table import (
    GroupBuildError,
    GroupTable,
    bits_list,
    bits_size,
    bits_to_mask,
    closure_from_generators,
    mask_to_bits,
)

_LINEAR = ("gl", "sl", "pgl", "psl")


def build_group(family: str, params: dict) -> GroupTable:
    """Single dispatch point used by the CLI and the cache layer."""
    family = family.lower()
    if family in _LINEAR:
        return build_linear(family, int(params["n"]), int(params["q"]))
    if family == "suzuki":
        return build_suzuki(int(params["m"]))
    if family == "extraspecial":
        return build_extraspecial(int(params["p"]), int(params["n"]), str(params.get("form", "plus")))
    if family == "named":
        return build_named(str(params["name"]))
    raise GroupBuildError(f"unknown family {family!r}")


@lru_cache(maxsize=64)
def cached_group(family: str, frozen_params: tuple) -> GroupTable:
    """In-process memo so heavy groups are enumerated once per run."""
    return build_group(family, dict(frozen_params))


def get_group(family: str, **params) -> GroupTable:
    return cached_group(family, tuple(sorted(params.items())))


__all__ = [
    "GroupBuildError",
    "GroupTable",
    "bits_list",
    "bits_size",
    "bits_to_mask",
    "build_extraspecial",
    "build_group",
    "build_linear",
    "build_named",
    "build_suzuki",
    "cached_group",
    "closure_from_generators",
    "extraspecial_order",
    "get_group",
    "gl_order",
    "linear_order",
    "mask_to_bits",
    "pgl_order",
    "psl_order",
    "sl_order",
    "suzuki_order",
]
