"""Binary on-disk cache of enumerated group tables.

Enumerating Sz(8) costs minutes of closure work; its element table is
a small array that round-trips losslessly.  File layout:

    8 bytes   magic  b"NCOGRP\\x00\\x01"
    4 bytes   little-endian header length L
    L bytes   UTF-8 JSON header: format version, code fingerprint,
              family, params, order, row width, generators
    rest      element encodings, uint8, row-major

The code fingerprint hashes the enumeration-relevant source files, so
a cache written by a different build of this package is silently
ignored and rebuilt; corrupt or truncated files load as None for the
same reason.  Writes go to a temp file in the target directory and
are renamed into place, so readers never see partial files.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np

from . import field as _field_mod
from .field import ff_make_spec
from .groups import linear as _linear_mod
from .groups import table as _table_mod
from .groups.linear import _prime_power
from .groups.table import (ExtraspecialKernel, GroupTable, MatrixKernel,
                           PermutationKernel)

__all__ = [
    "cache_path",
    "code_fingerprint",
    "load_group",
    "obtain_group",
    "save_group",
]

_MAGIC = b"NCOGRP\x00\x01"
CACHE_FORMAT = 1


def code_fingerprint() -> str:
    """Hash of the sources that define element encodings and products."""
    h = hashlib.sha256()
    h.update(str(CACHE_FORMAT).encode())
    for mod in (_field_mod, _table_mod, _linear_mod):
        with open(mod.__file__, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()[:16]


def _slug(params: dict) -> str:
    bits = []
    for k in sorted(params):
        v = str(params[k])
        bits.append(k + "".join(c if c.isalnum() else "_" for c in v))
    return "-".join(bits)


def cache_path(cache_dir: str | Path, family: str, params: dict) -> Path:
    name = f"{family}-{_slug(params)}-{code_fingerprint()}.grp"
    return Path(cache_dir) / name


def _kernel_for(family: str, params: dict):
    if family in ("gl", "sl", "pgl", "psl"):
        p, e = _prime_power(int(params["q"]))
        return MatrixKernel(ff_make_spec(p, e), int(params["n"]),
                            projective=family in ("pgl", "psl"))
    if family == "suzuki":
        m = int(params["m"])
        return MatrixKernel(ff_make_spec(2, 2 * m + 1), 4, projective=False)
    if family == "extraspecial":
        return ExtraspecialKernel(int(params["p"]), int(params["n"]),
                                  str(params["form"]))
    if family == "named":
        name = str(params["name"])
        if name == "quaternion8":
            return ExtraspecialKernel(2, 1, "minus")
        k = int(name.partition("(")[2].rstrip(")"))
        return PermutationKernel(k)
    return None


def save_group(G: GroupTable, cache_dir: str | Path) -> Optional[Path]:
    """Write G's element table; returns the path, or None for groups
    whose kernel cannot be rebuilt from (family, params) alone."""
    if _kernel_for(G.family, G.params) is None:
        return None
    directory = Path(cache_dir)
    directory.mkdir(parents=True, exist_ok=True)
    path = cache_path(directory, G.family, G.params)
    header = json.dumps({
        "format": CACHE_FORMAT,
        "code": code_fingerprint(),
        "family": G.family,
        "params": G.params,
        "order": G.order,
        "width": int(G.enc.shape[1]),
        "generators": [int(g) for g in G.generators],
    }, sort_keys=True).encode()
    body = np.ascontiguousarray(G.enc, dtype=np.uint8).tobytes()
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<I", len(header)))
            fh.write(header)
            fh.write(body)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path


def load_group(family: str, params: dict,
               cache_dir: str | Path) -> Optional[GroupTable]:
    """The cached table, or None when absent, stale, or unreadable."""
    path = cache_path(cache_dir, family, params)
    try:
        raw = path.read_bytes()
    except OSError:
        return None
    try:
        if raw[:len(_MAGIC)] != _MAGIC:
            return None
        off = len(_MAGIC)
        (hlen,) = struct.unpack_from("<I", raw, off)
        off += 4
        header = json.loads(raw[off:off + hlen].decode())
        off += hlen
        if header.get("format") != CACHE_FORMAT:
            return None
        if header.get("code") != code_fingerprint():
            return None
        if header.get("family") != family or header.get("params") != params:
            return None
        order, width = int(header["order"]), int(header["width"])
        body = raw[off:]
        if len(body) != order * width:
            return None
        kernel = _kernel_for(family, params)
        if kernel is None:
            return None
        enc = np.frombuffer(body, dtype=np.uint8).reshape(order, width).copy()
        return GroupTable(family=family, params=dict(params), kernel=kernel,
                          enc=enc, generators=list(header["generators"]))
    except (ValueError, KeyError, TypeError, struct.error,
            json.JSONDecodeError):
        return None


def obtain_group(family: str, params: dict,
                 cache_dir: Optional[str | Path] = None) -> GroupTable:
    """Build the group, going through the cache when a directory is given.

    Missing, stale, or unreadable entries are rebuilt and rewritten; a
    cache is a speedup, never a source of failure.
    """
    if cache_dir:
        G = load_group(family, params, cache_dir)
        if G is not None:
            return G
    from .groups import get_group
    G = get_group(family, **params)
    if cache_dir:
        save_group(G, cache_dir)
    return G
