"""Named group families with their closed-form values and explicit partitions."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (CentralizerTooSmall, ComplementTooSmall, InvalidParams, InvariantBroken, NotACGroup,
                     NotFrobenius, UnsupportedFamily)
from .field import field_build, is_prime, suzuki_twist
from .graph import max_noncommuting_set
from .groups import (DEFAULT_DENSE_LIMIT, DEFAULT_ORDER_CAP, FiniteGroup, GroupTable, PermGroup, PermSpec,
                     SubgroupRef, conjugate_subgroups, group_from_generators, induced_group, is_commuting_set,
                     is_subgroup, subgroup_closure)
from .partition import (AbelianPartition, Certificate, ThetaResult, align_anchors,
                        certify_minimal_via_centralizers, normalize_first_block, verify_partition)


@dataclass(frozen=True)
class FamilyId:
    name: str
    params: tuple[int, ...]

    def __str__(self):
        return ":".join([self.name, *map(str, self.params)])


FAMILY_NAMES = ("cyclic", "dihedral", "quaternion", "symmetric", "alternating", "psl2", "suzuki",
                "frobenius", "heisenberg")


def parse_family(text: str) -> FamilyId:
    """``"dihedral:20"`` -> FamilyId("dihedral", (20,))."""
    name, *rest = text.strip().split(":")
    name = name.lower()
    if name not in FAMILY_NAMES:
        raise InvalidParams(f"unknown family {name!r}")
    try:
        params = tuple(int(p) for p in rest)
    except ValueError:
        raise InvalidParams(f"bad parameters in {text!r}") from None
    fid = FamilyId(name, params)
    validate_family(fid)
    return fid


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            return (p, m) if q == 1 else None
    return None


def validate_family(fid: FamilyId) -> None:
    n, ps = fid.name, fid.params
    need = {"frobenius": 2}.get(n, 1)
    if len(ps) != need:
        raise InvalidParams(f"{n} takes {need} parameter(s)")
    x = ps[0]
    if n == "cyclic" and x < 1:
        raise InvalidParams("cyclic order must be positive")
    if n == "dihedral" and (x < 2 or x % 2):
        raise InvalidParams("dihedral order must be even and at least 2")
    if n == "quaternion" and (x < 8 or x % 4):
        raise InvalidParams("generalized quaternion order must be a multiple of 4, at least 8")
    if n in ("symmetric", "alternating") and x < 1:
        raise InvalidParams("degree must be positive")
    if n == "psl2" and _prime_power(x) is None:
        raise InvalidParams(f"{x} is not a prime power")
    if n == "suzuki":
        m = _prime_power(x)
        if m is None or m[0] != 2 or m[1] % 2 == 0 or x < 8:
            raise InvalidParams("Suzuki groups need q = 2^(2n+1) >= 8")
    if n == "heisenberg" and not is_prime(x):
        raise InvalidParams("heisenberg needs a prime")
    if n == "frobenius":
        q, m = ps
        if _prime_power(q) is None or m < 2 or (q - 1) % m:
            raise InvalidParams("frobenius:q:m needs a prime power q and m >= 2 dividing q-1")


# --- constructions -------------------------------------------------------------------

def dihedral_or_quaternion(order: int, quaternion: bool = False) -> GroupTable:
    """Elements b^i -> i and a b^i -> k + i, k = order/2.

    (a^e b^i)(a^f b^j) = a^(e+f) b^((-1)^f i + j), and a^2 = b^(k/2) in the
    quaternion case, 1 otherwise.
    """
    k = order // 2
    e = np.repeat([0, 1], k)
    i = np.tile(np.arange(k), 2)
    f = e[None, :]
    sign = np.where(f == 1, -1, 1)
    shift = (e[:, None] & f) * (k // 2 if quaternion else 0)
    power = (sign * i[:, None] + i[None, :] + shift) % k
    table = (e[:, None] ^ f) * k + power
    name = "quaternion" if quaternion else "dihedral"
    labels = [f"b^{j}" for j in range(k)] + [f"ab^{j}" for j in range(k)]
    return GroupTable(table, tag=f"{name}:{order}", labels=labels)


def cyclic(n: int) -> GroupTable:
    idx = np.arange(n)
    return GroupTable((idx[:, None] + idx[None, :]) % n, tag=f"cyclic:{n}")


def heisenberg(p: int) -> GroupTable:
    """Unitriangular 3x3 matrices over GF(p): (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    idx = np.arange(p ** 3)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return GroupTable(A * p * p + B * p + C, tag=f"heisenberg:{p}")


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return GroupTable(np.zeros((1, 1)), tag="symmetric:1")
    gens = [[(0, 1)]] if n == 2 else [[tuple(range(n))], [(0, 1)]]
    return group_from_generators(PermSpec.from_cycles(n, *gens), tag=f"symmetric:{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return GroupTable(np.zeros((1, 1)), tag=f"alternating:{n}")
    if n == 3:
        gens = [[(0, 1, 2)]]
    else:
        long = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens = [[(0, 1, 2)], [long]]
    return group_from_generators(PermSpec.from_cycles(n, *gens), tag=f"alternating:{n}")


def psl2(q: int, dense_limit=DEFAULT_DENSE_LIMIT) -> FiniteGroup:
    """PSL(2, q) acting on the projective line; point q stands for infinity.

    Generators x -> x + 1, x -> w^2 x (w primitive) and x -> -1/x.
    """
    p, m = _prime_power(q)
    F = field_build(p, m)
    inf = q
    w2 = F.pow(F.primitive, 2)
    pts = range(q)
    trans = [F.add(x, 1) for x in pts] + [inf]
    scale = [F.mul(w2, x) for x in pts] + [inf]
    flip = [inf] + [F.neg(F.inv(x)) for x in range(1, q)] + [0]
    G = group_from_generators(PermSpec(q + 1, (tuple(trans), tuple(scale), tuple(flip))),
                              tag=f"psl2:{q}", dense_limit=dense_limit)
    d = math.gcd(2, q - 1)
    expect = q * (q - 1) * (q + 1) // d
    if G.order != expect:
        raise InvariantBroken(f"PSL(2,{q}) came out with order {G.order}, expected {expect}")
    return G


def suzuki_action(q: int = 8) -> PermSpec:
    """Sz(q) on the q^2 + 1 points of its ovoid.

    Row vectors times the standard 4x4 generators S(1,0), S(0,1), D(w), T over
    GF(q), projective points normalised so the first nonzero coordinate is 1.
    """
    F = field_build(2, q.bit_length() - 1)
    n = (F.m - 1) // 2
    th = lambda x: suzuki_twist(x, F)  # noqa: E731
    mul, add, pw = F.mul, F.add, F.pow

    def S(a, b):
        r3 = add(add(mul(pw(a, 2), th(a)), mul(a, b)), th(b))
        return [[1, 0, 0, 0], [a, 1, 0, 0], [b, th(a), 1, 0], [r3, add(mul(a, th(a)), b), a, 1]]

    def D(lam):
        e = 2 ** n
        li = F.inv(lam)
        return [[pw(lam, 1 + e), 0, 0, 0], [0, pw(lam, e), 0, 0], [0, 0, pw(li, e), 0], [0, 0, 0, pw(li, 1 + e)]]

    T = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]

    def act(v, M):
        out = []
        for j in range(4):
            s = 0
            for i in range(4):
                s = add(s, mul(v[i], M[i][j]))
            out.append(s)
        lead = next(x for x in out if x)
        inv = F.inv(lead)
        return tuple(mul(inv, x) for x in out)

    mats = [S(1, 0), S(0, 1), D(F.primitive), T]
    start = (0, 0, 0, 1)
    orbit, seen = [start], {start: 0}
    for v in orbit:
        for M in mats:
            w = act(v, M)
            if w not in seen:
                seen[w] = len(orbit)
                orbit.append(w)
    if len(orbit) != q * q + 1:
        raise InvariantBroken(f"ovoid orbit has {len(orbit)} points, expected {q * q + 1}")
    gens = tuple(tuple(seen[act(v, M)] for v in orbit) for M in mats)
    return PermSpec(len(orbit), gens)


def _cache_dir() -> Path | None:
    d = os.environ.get("APG_CACHE_DIR")
    return Path(d) if d else None


def suzuki(q: int = 8, cap=DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Sz(q) on the permutation backend, cached under $APG_CACHE_DIR if set."""
    tag = f"suzuki:{q}"
    expect = q * q * (q - 1) * (q * q + 1)
    cache = _cache_dir()
    path = cache / f"{tag.replace(':', '_')}.npz" if cache else None
    if path is not None and path.exists():
        data = np.load(path)
        if data["perms"].shape[0] == expect:
            return PermGroup(data["perms"], tag=tag, gens=data["gens"])
    G = group_from_generators(suzuki_action(q), tag=tag, cap=cap, dense_limit=0)
    if G.order != expect:
        raise InvariantBroken(f"Sz({q}) came out with order {G.order}, expected {expect}")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez_compressed(path, perms=G.perms, gens=G.gens)
    return G


def affine_frobenius(q: int, m: int) -> FiniteGroup:
    """x -> a x + b over GF(q) with a in the order-m subgroup of GF(q)*."""
    p, e = _prime_power(q)
    F = field_build(p, e)
    c = F.pow(F.primitive, (q - 1) // m)
    trans = tuple(F.add(x, 1) for x in range(q))
    scale = tuple(F.mul(c, x) for x in range(q))
    gens = (trans, scale) if q > 2 else (trans,)
    G = group_from_generators(PermSpec(q, gens), tag=f"frobenius:{q}:{m}")
    return G


def build_family(fid: FamilyId | str) -> FiniteGroup:
    if isinstance(fid, str):
        fid = parse_family(fid)
    validate_family(fid)
    n, ps = fid.name, fid.params
    if n == "cyclic":
        return cyclic(ps[0])
    if n == "dihedral":
        return dihedral_or_quaternion(ps[0])
    if n == "quaternion":
        return dihedral_or_quaternion(ps[0], quaternion=True)
    if n == "symmetric":
        return symmetric(ps[0])
    if n == "alternating":
        return alternating(ps[0])
    if n == "psl2":
        return psl2(ps[0])
    if n == "suzuki":
        return suzuki(ps[0])
    if n == "heisenberg":
        return heisenberg(ps[0])
    if n == "frobenius":
        return affine_frobenius(*ps)
    raise UnsupportedFamily(n)


# --- closed forms -------------------------------------------------------------------------

def psl2_theta_formula(q: int) -> int:
    if q == 2:
        return 0
    if q == 3:
        return 5
    if q in (4, 5):
        return 21
    return q * q + q + 1


def suzuki_theta_formula(q: int) -> int:
    return q ** 4 + q ** 3 - q ** 2 + q - 1


def _result(G, pairs, family, formula, extra=None, check_literal=False) -> ThetaResult:
    P = AbelianPartition([b for b, _ in pairs])
    anchors = align_anchors(P, pairs)
    detail = {"family": family, "formula": formula}
    if extra:
        detail.update(extra)
    if check_literal:
        detail["literal_centralizer_check"] = bool(certify_minimal_via_centralizers(G, P, anchors))
    if len(P) != formula:
        raise InvariantBroken(f"{family}: built {len(P)} blocks, formula says {formula}")
    return ThetaResult(formula, P, Certificate("CentralizerMinimal", anchors, detail))


def dihedral_partition(G: GroupTable, order: int) -> ThetaResult:
    """<b> and the pairs {ab^j, ab^(j+n)}; anchors b and a b^j."""
    k = order // 2
    n = k // 2
    pairs = [(list(range(k)), 1)]
    for j in range(n):
        pairs.append(([k + j, k + j + n], k + j))
    return _result(G, pairs, G.tag, n + 1, check_literal=True)


def _p_elements(G, members, p):
    o = G.orders[members]
    keep = np.ones(len(members), dtype=bool)
    for r in np.unique(o):
        x = int(r)
        while x % p == 0:
            x //= p
        if x != 1:
            keep &= o != r
    return members[keep]


def _stabilizer(G: FiniteGroup, points) -> np.ndarray:
    mask = np.ones(G.order, dtype=bool)
    for pt in points:
        mask &= G.perms[:, pt] == pt
    return np.nonzero(mask)[0]


def _least_of_order(G, k) -> int:
    return int(np.nonzero(G.orders == k)[0][0])


def _cyclic_members(G, x) -> np.ndarray:
    return subgroup_closure(G, [x])


def _conjugate_blocks(G, base_blocks, subgroup):
    """Conjugate a list of blocks of ``subgroup`` by a transversal of its normalizer."""
    out = []
    conj = conjugate_subgroups(G, subgroup)
    for g, _ in conj:
        for block, anchor in base_blocks:
            b = np.asarray(G.conj(np.asarray(block), g))
            out.append((b.tolist(), int(G.conj(anchor, g))))
    return out, len(conj)


def psl2_partition(G: FiniteGroup, q: int) -> ThetaResult:
    """Conjugates of P, A and B with the identity removed; the identity joins one P."""
    p = _prime_power(q)[0]
    d = math.gcd(2, q - 1)
    inf = q
    P = _p_elements(G, _stabilizer(G, [inf]), p)
    A = _stabilizer(G, [inf, 0])
    b = _least_of_order(G, (q + 1) // d)
    B = _cyclic_members(G, b)
    a = int(A[np.argmax(G.orders[A])])
    blocks_p, r = _conjugate_blocks(G, [(P[1:], int(P[1]))], P)
    blocks_a, s = _conjugate_blocks(G, [(A[1:], a)], A)
    blocks_b, t = _conjugate_blocks(G, [(B[1:], b)], B)
    pairs = blocks_p + blocks_a + blocks_b
    pairs[0] = (pairs[0][0] + [0], pairs[0][1])
    census = {"P": r, "A": s, "B": t}
    norms = {"N_P": G.order // r, "N_A": G.order // s, "N_B": G.order // t}
    return _result(G, pairs, f"psl2:{q}", psl2_theta_formula(q), {"census": census, "normalizers": norms},
                   check_literal=True)


def suzuki_partition(G: FiniteGroup, q: int = 8) -> ThetaResult:
    """Each Sylow 2-subgroup P splits as Z(P)x cosets (Z(P) minus 1 joins the first),
    plus the conjugates of the cyclic subgroups of orders q-1, q-r+1, q+r+1."""
    r = int(round(math.sqrt(2 * q)))
    stab = _stabilizer(G, [0])
    P = _p_elements(G, stab, 2)
    ZP = P[G.orders[P] <= 2]
    rest = np.setdiff1d(P, ZP)
    cosets = []
    seen = set()
    for x in rest:
        if int(x) in seen:
            continue
        coset = np.sort(np.asarray(G.mul(ZP, int(x))))
        seen.update(int(c) for c in coset)
        cosets.append(coset)
    split = [(np.concatenate([ZP[1:], cosets[0]]).tolist(), int(cosets[0][0]))]
    split += [(c.tolist(), int(c[0])) for c in cosets[1:]]
    blocks_p, n_p = _conjugate_blocks(G, split, P)
    A = _stabilizer(G, [0, 1])
    a = int(A[np.argmax(G.orders[A])])
    blocks_a, n_a = _conjugate_blocks(G, [(A[1:], a)], A)
    b = _least_of_order(G, q - r + 1)
    B = _cyclic_members(G, b)
    blocks_b, n_b = _conjugate_blocks(G, [(B[1:], b)], B)
    c = _least_of_order(G, q + r + 1)
    C = _cyclic_members(G, c)
    blocks_c, n_c = _conjugate_blocks(G, [(C[1:], c)], C)
    pairs = blocks_p + blocks_a + blocks_b + blocks_c
    pairs[0] = (pairs[0][0] + [0], pairs[0][1])
    census = {"sylow2": n_p, "blocks_per_sylow2": len(split), "A": n_a, "B": n_b, "C": n_c}
    return _result(G, pairs, f"suzuki:{q}", suzuki_theta_formula(q),
                   {"census": census, "center_of_sylow_order": len(ZP)})


# --- AC groups --------------------------------------------------------------------------------

def ac_group_check(G: FiniteGroup) -> bool:
    """Every noncentral element has an abelian centralizer.

    Conjugate elements have conjugate centralizers, so one representative per
    class suffices.
    """
    for cls in G.classes:
        if len(cls) == 1:
            continue
        C = np.nonzero(G.centralizer_mask(int(cls[0])))[0]
        if not is_commuting_set(G, C):
            return False
    return True


def ac_partition(G: FiniteGroup) -> ThetaResult:
    if G.is_abelian():
        return ThetaResult(1, AbelianPartition([list(range(G.order))]), Certificate("CentralizerMinimal", [0]))
    if not ac_group_check(G):
        raise NotACGroup(f"{G.tag} has a noncentral element with nonabelian centralizer")
    smallest = min(int(G.centralizer_mask(x).sum()) for x in range(G.order))
    if smallest < 3:
        raise CentralizerTooSmall(f"{G.tag} has a centralizer of size {smallest}")
    n, witness = max_noncommuting_set(G)
    Z = G.center_members
    pairs = []
    for i, x in enumerate(witness):
        C = np.nonzero(G.centralizer_mask(x))[0]
        pairs.append(((C if i == 0 else np.setdiff1d(C, Z)).tolist(), x))
    P = AbelianPartition([b for b, _ in pairs])
    anchors = align_anchors(P, pairs)
    if not verify_partition(G, P):
        raise InvariantBroken("centralizer blocks do not partition the group")
    # the canonical order may move block 0; re-check with an anchor whose centralizer is block 0
    return ThetaResult(n, P, Certificate("CentralizerMinimal", anchors, {"route": "AC", "n": n}))


# --- Frobenius groups --------------------------------------------------------------------------

@dataclass
class FrobeniusStructure:
    kernel: SubgroupRef
    complement: SubgroupRef


def _frobenius_for(G: FiniteGroup, H: np.ndarray) -> FrobeniusStructure | None:
    h = len(H)
    if h in (1, G.order) or G.order % h:
        return None
    conj = conjugate_subgroups(G, H)
    if len(conj) != G.order // h:
        return None
    covered = np.zeros(G.order, dtype=bool)
    for _, members in conj:
        inner = members[1:]
        if covered[inner].any():
            return None
        covered[inner] = True
    N = np.nonzero(~covered)[0]
    if len(N) != G.order // h or not is_subgroup(G, N):
        return None
    return FrobeniusStructure(SubgroupRef(G, N), SubgroupRef(G, H))


def frobenius_detect(G: FiniteGroup):
    """(kernel, complement) or None.

    Candidate complements are the centralizers and the normalizers of the
    cyclic subgroups of class representatives, tried in representative order.
    """
    tried = set()
    for cls in G.classes[1:]:
        x = int(cls[0])
        cyc = subgroup_closure(G, [x])
        conj = np.sort(np.asarray(G.conj(cyc[None, :], G.elements[:, None])), axis=1)
        normalizer = np.nonzero((conj == cyc[None, :]).all(axis=1))[0]
        for H in (np.nonzero(G.centralizer_mask(x))[0], normalizer):
            key = H.tobytes()
            if key in tried:
                continue
            tried.add(key)
            s = _frobenius_for(G, H)
            if s is not None:
                return s.kernel, s.complement
    return None


def frobenius_theta(G: FiniteGroup, solver=None) -> ThetaResult:
    """|N| theta(H) + theta(N), with the matching partition.

    Every conjugate H^n (n in the kernel) contributes a copy of a minimal
    partition of H whose first block contains Z(H), minus the identity; the
    kernel contributes its own minimal partition.
    """
    if solver is None:
        from .theta import theta as solver
    found = frobenius_detect(G)
    if found is None:
        raise NotFrobenius(f"{G.tag} has no Frobenius complement")
    N, H = found
    if H.order == 2:
        raise ComplementTooSmall("complement of order 2; the group has a self-centralizing involution")
    Ht, Hm = induced_group(G, H.members, tag="complement")
    Nt, Nm = induced_group(G, N.members, tag="kernel")
    rH, rN = solver(Ht), solver(Nt)
    if not (rH.value and rN.value):
        raise InvariantBroken("complement or kernel has no certified abelian partition")
    PH = normalize_first_block(Ht, rH.partition)
    if len(PH.blocks[0]) < 3:
        raise InvariantBroken("first block of the complement is too small to drop the identity")
    blocks = []
    for n in N.members:
        for i, b in enumerate(PH.blocks):
            gl = Hm[np.asarray(b)]
            if i == 0:
                gl = gl[gl != 0]
            blocks.append(np.asarray(G.conj(gl, int(n))).tolist())
    blocks += [Nm[np.asarray(b)].tolist() for b in rN.partition.blocks]
    P = AbelianPartition(blocks)
    value = N.order * rH.value + rN.value
    if len(P) != value or not verify_partition(G, P):
        raise InvariantBroken("glued Frobenius partition failed verification")
    detail = {"kernel_order": N.order, "complement_order": H.order, "theta_kernel": rN.value,
              "theta_complement": rH.value}
    anchors = []
    if G.order <= 2000:
        n, witness = max_noncommuting_set(G)
        detail["n"] = n
        if n == value:
            anchors = align_anchors(P, [(None, w) for w in witness])
    return ThetaResult(value, P, Certificate("Frobenius", anchors, detail))


# --- dispatcher ----------------------------------------------------------------------------------

def family_theta(fid: FamilyId | str, G: FiniteGroup | None = None) -> ThetaResult:
    if isinstance(fid, str):
        fid = parse_family(fid)
    n, ps = fid.name, fid.params
    if n == "cyclic" or (n == "dihedral" and ps[0] <= 4):
        G = G or build_family(fid)
        return ThetaResult(1, AbelianPartition([list(range(G.order))]),
                           Certificate("FamilyFormula", [0], {"family": str(fid), "formula": 1}))
    if n == "dihedral" and (ps[0] // 2) % 2 == 1:
        from .nap import self_centralizing_involution
        G = G or build_family(fid)
        cert = self_centralizing_involution(G)
        return ThetaResult(0, None, Certificate("NapSelfCentralizing", [cert.params["witness"]],
                                                {"family": str(fid)}))
    if n in ("dihedral", "quaternion"):
        G = G or build_family(fid)
        return dihedral_partition(G, ps[0])
    if n == "psl2":
        q = ps[0]
        if q in (2, 3):
            raise UnsupportedFamily(f"psl2:{q} has no formula route; use exact search")
        G = G or build_family(fid)
        if q in (4, 5):
            r = ac_partition(G)
            r.certificate.detail.update({"family": str(fid), "formula": 21})
            return r
        return psl2_partition(G, q)
    if n == "suzuki":
        q = ps[0]
        if q > 8:
            return ThetaResult(suzuki_theta_formula(q), None,
                               Certificate("FamilyFormula", [], {"family": str(fid), "partition": "skipped"}),
                               status="formula-only")
        G = G or build_family(fid)
        return suzuki_partition(G, q)
    if n == "heisenberg":
        G = G or build_family(fid)
        r = ac_partition(G)
        r.certificate.detail.update({"family": str(fid), "formula": ps[0] + 1})
        return r
    if n == "frobenius" and ps[1] >= 3:
        G = G or build_family(fid)
        return frobenius_theta(G)
    if n == "frobenius":
        from .nap import self_centralizing_involution
        G = G or build_family(fid)
        cert = self_centralizing_involution(G)
        return ThetaResult(0, None, Certificate("NapSelfCentralizing", [cert.params["witness"]],
                                                {"family": str(fid)}))
    raise UnsupportedFamily(f"{fid} has no closed form; use the exact or AC routes")
