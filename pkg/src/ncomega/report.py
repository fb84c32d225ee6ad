"""Stable JSON reports for jobs, groups, and omega results.

Reports carry a schema_version so downstream tooling can diff runs as
text; field order is fixed by sorted-key serialization and every value
is deterministic for a given job in single-threaded mode.
"""

from __future__ import annotations

import json
import sys
from collections import Counter
from typing import IO, Optional

from .groups.table import GroupTable
from .structure import OmegaReport, is_ac_group

__all__ = [
    "SCHEMA_VERSION",
    "group_info_report",
    "group_summary",
    "omega_report",
    "to_json",
    "write_report",
]

SCHEMA_VERSION = 1


def _order_profile(G: GroupTable) -> dict[str, int]:
    prof = Counter(int(o) for o in G.element_orders())
    return {str(k): prof[k] for k in sorted(prof)}


def group_summary(G: GroupTable) -> dict:
    return {
        "family": G.family,
        "params": {k: v for k, v in sorted(G.params.items())},
        "order": G.order,
        "center_order": G.center_order(),
        "order_profile": _order_profile(G),
    }


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def group_info_report(job: dict, G: GroupTable) -> dict:
    """Order data, cyclic-Sylow counts, and the abelian-centralizer flag.

    Sylow counts are reported for primes dividing the order exactly
    once (those Sylow subgroups are cyclic of prime order, so counting
    subgroups generated by elements of that order is exact).  The
    Suzuki family also gets its Sylow 2-count, recovered from
    involution centralizers.
    """
    sylow: dict[str, int] = {}
    factors = _prime_factors(G.order)
    for p, mult in sorted(factors.items()):
        if mult == 1:
            sylow[f"nu{p}"] = G.sylow_count_cyclic(p)
    if G.family == "suzuki":
        sylow["nu2"] = G.sylow_two_count_by_centralizers()
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "group",
        "job": dict(job),
        "group": group_summary(G),
        "ac": is_ac_group(G),
        "sylow_counts": sylow,
    }


def omega_report(job: dict, G: GroupTable, rep: OmegaReport,
                 elapsed: float) -> dict:
    cert = None
    checks: list[str] = []
    if rep.certificate is not None:
        c = rep.certificate
        census = Counter(cls.size for cls in c.classes)
        cert = {
            "method": c.method,
            "omega": c.omega,
            "class_count": len(c.classes),
            "class_size_census": {str(k): census[k] for k in sorted(census)},
            "witnesses": list(c.witnesses),
        }
        checks += [
            "classes re-verified abelian and covering the non-central elements",
            "each witness's centralizer equals its class",
            "no class holds two witnesses, so the witnesses form a clique",
        ]
    partition = None
    if rep.partition is not None:
        d = rep.partition
        census = Counter(p.size for p in d.parts)
        partition = {
            "part_count": len(d.parts),
            "part_size_census": {str(k): census[k] for k in sorted(census)},
            "omega": d.omega,
            "covers": d.covers,
            "pairwise_center": d.pairwise_center,
            "centralizers_contained": d.centralizers_contained,
            "proper": d.proper,
            "failure": d.failure,
        }
        if d.hypotheses_met:
            checks += [
                "parts cover the group and pairwise meet exactly in the center",
                "each part contains the centralizers of its non-central members",
            ]
    formula = None
    if rep.formula is not None:
        lo, hi = rep.formula
        formula = {"low": lo, "high": hi,
                   "matched": lo <= rep.omega <= hi}
    if rep.method == "solver":
        checks.append("solver result re-verified as a clique; "
                      "coloring bound certified optimality or search was exhausted")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "omega",
        "job": dict(job),
        "group": group_summary(G),
        "result": {"omega": rep.omega, "method": rep.method, "exact": rep.exact},
        "certificate": cert,
        "partition": partition,
        "formula": formula,
        "checks": checks,
        "details": {k: v for k, v in sorted(rep.details.items())
                    if isinstance(v, (int, float, str, bool, list))},
        "timing": {"seconds": round(elapsed, 3)},
    }


def to_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_report(data: dict, out: Optional[str]) -> None:
    text = to_json(data)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
