import json

import numpy as np
import pytest

from apg.errors import InvalidParams
from apg.families import build_family
from apg.io import (dumps, group_from_spec, load_group, load_partition, partition_to_json, table_group_to_spec,
                    to_jsonable)


def test_family_forms():
    G, fid = group_from_spec({"family": "dihedral:12"})
    H, fid2 = group_from_spec({"family": "dihedral", "params": [12]})
    assert G.order == H.order == 12 and fid == fid2


def test_product_family_form():
    G, fid = group_from_spec({"family": "dihedral:6 x cyclic:2"})
    assert G.order == 12 and fid is None


def test_perm_forms():
    spec = {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}
    assert group_from_spec(spec)[0].order == 6
    assert group_from_spec({"perm": spec})[0].order == 6


def test_product_and_wreath_forms():
    G, _ = group_from_spec({"product": [{"family": "cyclic:2"}, {"family": "symmetric:3"}]})
    assert G.order == 12
    W, _ = group_from_spec({"wreath": {"base": {"family": "cyclic:2"}, "top": {"degree": 2, "generators": [[1, 0]]}}})
    assert W.order == 8


def test_table_form_round_trip():
    G = build_family("quaternion:8")
    H, _ = group_from_spec(table_group_to_spec(G))
    assert np.array_equal(G.table, H.table)


@pytest.mark.parametrize("spec", [{"nonsense": 1}, [1, 2], {"family": "dihedral:7"}])
def test_bad_specs(spec):
    with pytest.raises(InvalidParams):
        group_from_spec(spec)


def test_partition_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(partition_to_json({"family": "quaternion:8"}, [[0, 1, 2, 3], [4, 6], [5, 7]]))
    G, fid, blocks, spec = load_partition(path)
    assert G.order == 8 and blocks == [[0, 1, 2, 3], [4, 6], [5, 7]] and spec == {"family": "quaternion:8"}


def test_partition_file_needs_fields(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"blocks": []}))
    with pytest.raises(InvalidParams):
        load_partition(path)


def test_load_group(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"family": "alternating:4"}))
    assert load_group(path)[0].order == 12


def test_jsonable_and_stable_dump():
    obj = {"b": np.int64(3), "a": [np.bool_(True), np.arange(2)], "c": float("inf")}
    assert to_jsonable(obj) == {"b": 3, "a": [True, [0, 1]], "c": None}
    assert dumps(obj) == dumps(dict(reversed(list(obj.items()))))
