"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""
import json
import math
import time

import pytest

from apg import corpus
from apg.cli import main
from apg.families import ac_partition, build_family, family_theta, frobenius_theta
from apg.graph import max_noncommuting_set
from apg.groups import class_number, commuting_pairs_count, direct_product
from apg.nap import (embed_in_nap, gamma, gamma_inequality, nap_dihedral_product, nap_wreath_check,
                     refute_nap_claim, self_centralizing_involution, wreath_as_permutation_group)
from apg.partition import (certify_minimal_via_centralizers, classify_small_theta, compute_bounds, erdos_turan_holds,
                           exact_theta, verify_certificate, verify_partition)
from apg.theta import theta


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


@pytest.mark.criterion(1, "theta(D8) = theta(Q8) = 3 by three routes")
def test_criterion_01():
    with Clock(1.0):
        for name in ("dihedral:8", "quaternion:8"):
            G = build_family(name)
            exact = exact_theta(G)
            assert exact.value == 3 and exact.status == "certified"
            b = compute_bounds(G)
            assert b.best_lb == b.best_ub == 3
            assert classify_small_theta(G) == 3


@pytest.mark.criterion(2, "theta(D4n) = theta(Q4n) = n+1, n = 2..15")
def test_criterion_02():
    with Clock(10.0):
        for n in range(2, 16):
            for kind in ("dihedral", "quaternion"):
                name = f"{kind}:{4 * n}"
                G = build_family(name)
                r = family_theta(name, G)
                assert r.value == n + 1, name
                assert verify_certificate(G, r), name
                assert certify_minimal_via_centralizers(G, r.partition, r.certificate.anchors), name
                assert exact_theta(G).value == n + 1, name


@pytest.mark.criterion(3, "theta(A4) = 5 by search and by the Frobenius formula")
def test_criterion_03():
    with Clock(1.0):
        G = build_family("alternating:4")
        assert exact_theta(G).value == 5
        r = frobenius_theta(G)
        d = r.certificate.detail
        assert (d["kernel_order"], d["theta_complement"], d["theta_kernel"]) == (4, 1, 1)
        assert r.value == 4 * 1 + 1 == 5


@pytest.mark.criterion(4, "theta(A5) = 21 as an AC-group")
def test_criterion_04():
    with Clock(30.0):
        G = build_family("alternating:5")
        n, witness = max_noncommuting_set(G)
        assert n == 21
        r = ac_partition(G)
        assert r.value == 21
        assert verify_certificate(G, r)


@pytest.mark.criterion(5, "theta(PSL(2,q)) = q^2+q+1, q in 7, 8, 9, 11, 13")
def test_criterion_05():
    with Clock(300.0):
        for q in (7, 8, 9, 11, 13):
            G = build_family(f"psl2:{q}")
            r = family_theta(f"psl2:{q}", G)
            assert r.value == q * q + q + 1
            assert verify_partition(G, r.partition)
            c = r.certificate.detail["census"]
            assert (c["P"], c["A"], c["B"]) == (q + 1, q * (q + 1) // 2, q * (q - 1) // 2)
            assert r.certificate.kind == "CentralizerMinimal" and verify_certificate(G, r)


@pytest.mark.criterion(6, "theta(Sz(8)) = 4551")
def test_criterion_06():
    with Clock(1200.0):
        G = build_family("suzuki:8")
        assert not G.is_dense
        r = family_theta("suzuki:8", G)
        assert r.value == 4551
        assert verify_partition(G, r.partition)
        assert verify_certificate(G, r)
        assert r.certificate.detail["census"]["blocks_per_sylow2"] == 8 - 1


@pytest.mark.criterion(7, "S3 is NAP by search (exit 1) and by a self-centralizing involution")
def test_criterion_07(tmp_path, capsys):
    with Clock(1.0):
        path = tmp_path / "s3.json"
        path.write_text(json.dumps({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}))
        code = main(["theta", "--perm", str(path), "--mode", "exact"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 1 and doc["value"] == 0 and doc["certificate"]["kind"] == "NapExhaustive"
        assert self_centralizing_involution(build_family("symmetric:3")) is not None


@pytest.mark.criterion(8, "D2k is NAP for odd k in 3, 5, 7, 9")
def test_criterion_08():
    with Clock(5.0):
        for k in (3, 5, 7, 9):
            G = build_family(f"dihedral:{2 * k}")
            assert self_centralizing_involution(G) is not None
            r = exact_theta(G)
            assert r.value == 0 and r.status == "certified"


@pytest.mark.criterion(9, "D6 x D6 is NAP by counting and by exhaustive search")
def test_criterion_09():
    with Clock(120.0):
        cert = nap_dihedral_product([3, 3])
        assert (3 + 1) * (3 + 1) - 2 * 3 * 3 == 16 - 18 < 0
        assert cert.holds and cert.cross_validated and cert.nap_established
        G = direct_product(build_family("dihedral:6"), build_family("dihedral:6"))
        r = exact_theta(G)
        assert r.value == 0 and r.status == "certified"


@pytest.mark.criterion(10, "D10 wr Z3 is NAP by the wreath counting certificate")
def test_criterion_10():
    """The counting argument needs every mate of the diagonal set in the whole group.

    The enumeration reproduces 120 and 91 inside the base group, but
    centralizers also reach elements with a nontrivial top component, and an
    explicit abelian partition of the group exists. Left failing on purpose.
    """
    with Clock(60.0):
        cert = nap_wreath_check(5, 3)
        assert cert.counts["inequality_value"] == 6 ** 3 + 5 - 2 * 5 ** 3 == -29
        assert cert.counts["Di_nc_enumerated"] == 120
        assert cert.counts["Dm_nc_enumerated_base"] == 91
        assert cert.counts["Dm_nc_enumerated_full"] == 91, (
            f"mates in the whole group: {cert.counts['Dm_nc_enumerated_full']}")
        assert cert.nap_established
        ref = refute_nap_claim(wreath_as_permutation_group(5, 3))
        assert not ref["partition_found"]


@pytest.mark.criterion(11, "commuting pairs = |G| c(G) on the corpus")
def test_criterion_11():
    with Clock(10.0):
        names = corpus.names()
        assert len(names) >= 25
        for name in names:
            G = corpus.group(name)
            assert commuting_pairs_count(G) == G.order * class_number(G), name


@pytest.mark.criterion(12, "bound sandwich on every certified AP-group")
def test_criterion_12():
    certified = 0
    for name in corpus.names():
        G = corpus.group(name)
        r = theta(G, family=corpus.family_of(name))
        if r.partition is not None and verify_partition(G, r.partition):
            assert erdos_turan_holds(G, r.partition), name
        if not (r.value and r.status == "certified"):
            continue
        assert verify_certificate(G, r), name
        certified += 1
        b = compute_bounds(G)
        assert b.lb_noncommuting <= r.value <= b.ub_abelian_cosets, name
        assert math.ceil(G.order / class_number(G)) <= r.value, name
    assert certified >= 10


@pytest.mark.criterion(13, "theta(H x K) <= theta(H) theta(K) on corpus pairs")
def test_criterion_13(capsys):
    checked, strict = 0, []
    for h, k in corpus.DIRECT_PAIRS:
        H, K = corpus.group(h), corpus.group(k)
        th = theta(H, family=corpus.family_of(h))
        tk = theta(K, family=corpus.family_of(k))
        tg = exact_theta(direct_product(H, K))
        if not (th.value and tk.value and tg.value and tg.status == "certified"):
            continue
        checked += 1
        assert tg.value <= th.value * tk.value, (h, k)
        if tg.value < th.value * tk.value:
            strict.append((h, k, tg.value, th.value * tk.value))
    with capsys.disabled():
        print(f"\ndirect-product pairs checked: {checked}; strict cases: {strict or 'none'}")
    assert checked >= 10


@pytest.mark.criterion(14, "gamma(1..3) = 2, 4, 7 and a certified NAP group of order 200 containing Z2")
def test_criterion_14():
    """The gamma values pass; D10 wr Z2 has an explicit abelian partition, so the NAP part is left failing."""
    with Clock(1.0):
        for n, want in ((1, 2), (2, 4), (3, 7)):
            assert gamma(n) == want
            assert gamma_inequality(want, n)
            assert all(not gamma_inequality(k, n) for k in range(n + 1, want))
        H = build_family("cyclic:2")
        emb = embed_in_nap(H)
        assert emb.group.order == 200
        inj = emb.injection
        assert all(emb.group.mul(int(inj[a]), int(inj[b])) == inj[H.table[a, b]] for a in range(2) for b in range(2))
        assert emb.certificate.nap_established, (
            f"counting argument fails: {emb.certificate.counts['Dm_fp_enumerated_full']} mates "
            f"for {emb.certificate.counts['Di_fp_enumerated']} diagonal involutions")
    ref = refute_nap_claim(emb.group)
    assert not ref["partition_found"]
