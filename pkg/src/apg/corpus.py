"""The fixed set of small groups used for corpus-wide property checks."""
from __future__ import annotations

from functools import lru_cache

from .families import build_family, parse_family
from .groups import direct_product

SINGLE = ["cyclic:2", "cyclic:6", "dihedral:4", "dihedral:6", "dihedral:8", "quaternion:8", "dihedral:10",
          "dihedral:12", "quaternion:12", "alternating:4", "dihedral:14", "dihedral:16", "quaternion:16",
          "dihedral:18", "frobenius:5:4", "frobenius:7:3", "dihedral:20", "quaternion:20", "symmetric:4",
          "heisenberg:3", "frobenius:11:5", "alternating:5", "psl2:7"]

PRODUCTS = [("dihedral:6", "cyclic:3"), ("dihedral:8", "cyclic:2"), ("quaternion:8", "cyclic:2"),
            ("dihedral:6", "dihedral:6"), ("alternating:4", "cyclic:2"), ("dihedral:8", "dihedral:8")]

# pairs (H, K) with both factors admitting abelian partitions
DIRECT_PAIRS = [("dihedral:8", "cyclic:2"), ("quaternion:8", "cyclic:2"), ("dihedral:8", "cyclic:3"),
                ("quaternion:8", "cyclic:3"), ("alternating:4", "cyclic:2"), ("alternating:4", "cyclic:3"),
                ("dihedral:12", "cyclic:2"), ("quaternion:12", "cyclic:2"), ("dihedral:8", "dihedral:8"),
                ("dihedral:8", "quaternion:8"), ("quaternion:8", "quaternion:8"), ("heisenberg:3", "cyclic:2"),
                ("symmetric:4", "cyclic:2"), ("frobenius:7:3", "cyclic:2"), ("dihedral:16", "cyclic:2")]


@lru_cache(maxsize=None)
def group(name: str):
    """A corpus group by name; products are written "H x K"."""
    if " x " in name:
        parts = [group(p) for p in name.split(" x ")]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H)
        return G
    return build_family(parse_family(name))


def family_of(name: str):
    return None if " x " in name else parse_family(name)


def names() -> list[str]:
    return SINGLE + [f"{a} x {b}" for a, b in PRODUCTS]
