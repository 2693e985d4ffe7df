"""JSON formats for group specs, partitions and certificates."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidParams
from .families import FamilyId, build_family, parse_family, validate_family
from .groups import GroupTable, PermSpec, direct_product, group_from_generators, group_from_json, wreath_product


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def family_from_spec(spec: dict) -> FamilyId | None:
    if "family" not in spec:
        return None
    fam = spec["family"]
    if ":" in str(fam):
        return parse_family(str(fam))
    fid = FamilyId(str(fam).lower(), tuple(int(p) for p in spec.get("params", [])))
    validate_family(fid)
    return fid


def _perm_spec(d: dict) -> PermSpec:
    return PermSpec(int(d["degree"]), tuple(tuple(g) for g in d["generators"]))


def group_from_spec(spec: dict):
    """Build a group from a spec dict; returns (group, family id or None).

    Accepted forms: {"family": name, "params": [...]}, {"family": "name:params"},
    {"family": "name:params x name:params"} for direct products,
    {"perm": {"degree": n, "generators": [[...]]}}, a bare {"degree", "generators"},
    {"product": [spec, ...]}, {"wreath": {"base": spec, "top": perm}} and the
    canonical table form {"size", "construction_tag", "mul"}.
    """
    if not isinstance(spec, dict):
        raise InvalidParams("group spec must be a JSON object")
    if "family" in spec and " x " in str(spec["family"]):
        return group_from_spec({"product": [{"family": f} for f in str(spec["family"]).split(" x ")]})
    if "family" in spec:
        fid = family_from_spec(spec)
        return build_family(fid), fid
    if "perm" in spec or "generators" in spec:
        ps = _perm_spec(spec.get("perm", spec))
        return group_from_generators(ps, tag=spec.get("tag", "generated")), None
    if "product" in spec:
        parts = [group_from_spec(s)[0] for s in spec["product"]]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H)
        return G, None
    if "wreath" in spec:
        base, _ = group_from_spec(spec["wreath"]["base"])
        return wreath_product(base, _perm_spec(spec["wreath"]["top"])), None
    if "mul" in spec:
        return group_from_json(json.dumps(spec)), None
    raise InvalidParams("unrecognised group spec")


def load_group(path):
    return group_from_spec(load_json(path))


def partition_to_json(group_spec: dict, blocks) -> str:
    return _dump({"group": group_spec, "blocks": [list(map(int, b)) for b in blocks]})


def load_partition(path):
    d = load_json(path)
    if "group" not in d or "blocks" not in d:
        raise InvalidParams("partition file needs 'group' and 'blocks'")
    G, fid = group_from_spec(d["group"])
    return G, fid, d["blocks"], d["group"]


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, float) and obj == float("inf"):
        return None
    return obj


def dumps(obj) -> str:
    return _dump(to_jsonable(obj))


def table_group_to_spec(G: GroupTable) -> dict:
    return {"size": G.order, "construction_tag": G.tag, "mul": G.table.ravel().tolist()}
