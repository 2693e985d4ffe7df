"""Certificates that a group has no abelian partition, and embeddings.

The counting certificates rest on one observation. Suppose D is a set of
pairwise noncommuting elements, each commuting with nothing else in D. In an
abelian partition every x in D sits in its own block inside C(x), and that
block needs a second element outside D. Those partners are distinct, so they
need |M| >= |D| where M = (union of C(x), x in D) minus D. ``|M| < |D|``
therefore rules out every abelian partition; this is what
``nap_established`` records when the sets are enumerated on a built group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix

from .errors import BudgetExceeded, FactorOddOrder, NotAProduct, OrderCapExceeded
from .families import dihedral_or_quaternion
from .groups import (FiniteGroup, GroupTable, PermSpec, direct_product, group_from_generators, involutions,
                     is_commuting_set, odd_part_subgroup, wreath_product)
from .partition import AbelianPartition, check_partition, pair_triple_cover

CROSS_CHECK_LIMIT = 5_000


@dataclass
class NapCertificate:
    kind: str
    params: dict
    inequality: dict
    cross_validated: bool = False
    nap_established: bool | None = None
    counts: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        """The arithmetic inequality itself (lhs < rhs)."""
        return self.inequality["lhs"] < self.inequality["rhs"]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params,
                "inequality": {"lhs": str(self.inequality["lhs"]), "rhs": str(self.inequality["rhs"])},
                "cross_validated": self.cross_validated, "nap_established": self.nap_established,
                "counts": self.counts}


@dataclass
class DiagonalSets:
    di: np.ndarray
    dm: np.ndarray


def _mates(G: FiniteGroup, D: np.ndarray, exclude: np.ndarray) -> np.ndarray:
    cover = np.zeros(G.order, dtype=bool)
    for x in D:
        cover |= G.centralizer_mask(int(x))
    cover[exclude] = False
    return np.nonzero(cover)[0]


def counting_argument_holds(G: FiniteGroup, D, exclude=None) -> tuple[bool, int]:
    """(True, |M|) when D is pairwise noncommuting and |M| < |D| (see module doc)."""
    D = np.asarray(D, dtype=np.int64)
    exclude = D if exclude is None else np.asarray(exclude, dtype=np.int64)
    M = _mates(G, D, exclude)
    commuting_inside = any(np.asarray(G.commutes(int(x), D)).sum() != 1 for x in D)
    return (not commuting_inside) and len(M) < len(D), len(M)


# --- self-centralizing involutions ------------------------------------------------------

def self_centralizing_involution(G: FiniteGroup) -> NapCertificate | None:
    """An involution x with C(x) = <x>, plus the forced Frobenius structure."""
    for x in involutions(G):
        if G.centralizer_mask(int(x)).sum() == 2:
            x = int(x)
            N = odd_part_subgroup(G)
            frob = {}
            if N is not None:
                frob = {"kernel_order": N.order, "kernel_index": G.order // N.order,
                        "kernel_abelian": is_commuting_set(G, N.members),
                        "inverts_kernel": bool(np.all(G.conj(N.members, x) == G.inv[N.members]))}
            return NapCertificate("SelfCentralizingInvolution", {"witness": x},
                                  {"lhs": 2, "rhs": 3}, True, True, frob)
    return None


# --- direct products of dihedral groups -------------------------------------------------------

def _factor_orders(G: FiniteGroup) -> list[FiniteGroup]:
    return list(G.factors) if G.factors else [G]


def diagonal_sets(G: FiniteGroup) -> DiagonalSets:
    """Tuples of involutions in every coordinate, and their non-diagonal mates."""
    factors = _factor_orders(G)
    if G.factors is None and len(factors) != 1:
        raise NotAProduct("no factor structure")
    for F in factors:
        if F.order % 2:
            raise FactorOddOrder(f"factor {F.tag} has odd order")
    inv_lists = [involutions(F) for F in factors]
    sizes = [F.order for F in factors]
    di = []
    for combo in product(*inv_lists):
        idx = 0
        for c, s in zip(combo, sizes):
            idx = idx * s + int(c)
        di.append(idx)
    di = np.asarray(sorted(di), dtype=np.int64)
    return DiagonalSets(di, _mates(G, di, di))


def dihedral_product(k_list) -> GroupTable:
    G = dihedral_or_quaternion(2 * k_list[0])
    for k in k_list[1:]:
        G = direct_product(G, dihedral_or_quaternion(2 * k))
    return G


def nap_dihedral_product(k_list, cross_check_limit=CROSS_CHECK_LIMIT) -> NapCertificate | None:
    """prod(k_i + 1) - 2 prod(k_i) < 0 for odd k_i >= 3; None when not applicable."""
    k_list = [int(k) for k in k_list]
    if not k_list or any(k < 3 or k % 2 == 0 for k in k_list):
        return None
    di_count = math.prod(k_list)
    dm_count = math.prod(k + 1 for k in k_list) - di_count
    if not dm_count < di_count:
        return None
    cert = NapCertificate("DihedralProductCount", {"k": k_list},
                          {"lhs": dm_count, "rhs": di_count},
                          counts={"Di": di_count, "Dm": dm_count})
    if math.prod(2 * k for k in k_list) <= cross_check_limit:
        G = dihedral_product(k_list)
        sets = diagonal_sets(G)
        cert.counts.update({"Di_enumerated": len(sets.di), "Dm_enumerated": len(sets.dm)})
        cert.cross_validated = len(sets.di) == di_count and len(sets.dm) == dm_count
        cert.nap_established = counting_argument_holds(G, sets.di)[0]
    return cert


# --- wreath products ---------------------------------------------------------------------------

def cyclic_shift(p: int) -> PermSpec:
    return PermSpec(p, (tuple((i + 1) % p for i in range(p)),))


def regular_action(H: GroupTable) -> PermSpec:
    """H acting on itself by right multiplication (points are element indices)."""
    gens = H.generators
    return PermSpec(H.order, tuple(tuple(int(v) for v in H.table[:, g]) for g in gens))


def _diagonal_indices(G: GroupTable, coord_sets, keep) -> np.ndarray:
    info = G.wreath
    out = [info.encode(c) for c in product(*coord_sets) if keep(c)]
    return np.asarray(sorted(out), dtype=np.int64)


def wreath_diagonal_counts(G: GroupTable) -> dict:
    """Diagonal involutions of the base with not all coordinates equal, and mates.

    ``Dm_base`` counts mates lying in the base group only; ``Dm_full`` counts
    mates anywhere in the group, which is what the counting argument needs.
    """
    info = G.wreath
    refl = involutions(info.base)
    all_diag = _diagonal_indices(G, [refl] * info.degree, lambda c: True)
    nonconst = _diagonal_indices(G, [refl] * info.degree, lambda c: len(set(c)) > 1)
    full = _mates(G, nonconst, all_diag)
    base = full[full % info.top.order == 0]
    ok, _ = counting_argument_holds(G, nonconst, all_diag)
    return {"Di_nc": len(nonconst), "Dm_base": len(base), "Dm_full": len(full), "argument_holds": ok,
            "nonconstant": nonconst}


def nap_wreath_check(k: int, p: int, cross_check_limit=CROSS_CHECK_LIMIT) -> NapCertificate | None:
    """(k+1)^p + k - 2k^p < 0, with Di_nc = k^p - k and Dm_nc = (k+1)^p - k^p."""
    if k < 3 or k % 2 == 0 or p < 3 or any(p % d == 0 for d in range(2, p)):
        return None
    value = (k + 1) ** p + k - 2 * k ** p
    if value >= 0:
        return None
    di_nc = k ** p - k
    dm_nc = (k + 1) ** p - k ** p
    cert = NapCertificate("WreathCount", {"k": k, "p": p}, {"lhs": dm_nc, "rhs": di_nc},
                          counts={"Di_nc": di_nc, "Dm_nc": dm_nc, "inequality_value": value})
    if (2 * k) ** p * p <= cross_check_limit:
        G = wreath_product(dihedral_or_quaternion(2 * k), cyclic_shift(p), tag=f"D{2 * k} wr Z{p}")
        c = wreath_diagonal_counts(G)
        cert.counts.update({"Di_nc_enumerated": c["Di_nc"], "Dm_nc_enumerated_base": c["Dm_base"],
                            "Dm_nc_enumerated_full": c["Dm_full"]})
        cert.cross_validated = c["Di_nc"] == di_nc and c["Dm_base"] == dm_nc
        cert.nap_established = c["argument_holds"]
    return cert


# --- gamma ------------------------------------------------------------------------------------

def gamma_inequality(k: int, n: int) -> bool:
    """k!/n! > (1+k)^n - k^n, exactly (n! divides k! for k >= n)."""
    return math.factorial(k) // math.factorial(n) > (1 + k) ** n - k ** n


def gamma(n: int) -> int:
    k = n + 1
    while not gamma_inequality(k, n):
        k += 1
    return k


def gamma_odd(n: int) -> int:
    k = n + 1 if n % 2 == 0 else n + 2
    while not gamma_inequality(k, n):
        k += 2
    return k


# --- embeddings ----------------------------------------------------------------------------------

@dataclass
class Embedding:
    group: FiniteGroup | None
    certificate: NapCertificate | None
    injection: np.ndarray | None
    partition: AbelianPartition | None = None


def embed_in_nap(H: GroupTable, cap=200_000) -> Embedding:
    """D_{2k} wr H with H regular, k the least odd k > |H| meeting the gamma inequality.

    The certificate records the arithmetic as stated (k!/h! against
    (1+k)^h - k^h). On a built group it also enumerates the diagonal
    involutions with pairwise distinct coordinates (k!/(k-h)! of them), their
    mates inside the base and in the whole group, and runs the counting
    argument on the whole group.
    """
    h = H.order
    k = gamma_odd(h)
    lhs = math.factorial(k) // math.factorial(h)
    rhs = (1 + k) ** h - k ** h
    cert = NapCertificate("FixedPointFreeDiagonalCount", {"h": h, "k": k, "gamma": gamma(h)},
                          {"lhs": rhs, "rhs": lhs},
                          counts={"Di_fp_stated": lhs, "Dm_fp_stated": rhs,
                                  "Di_fp_distinct_coordinates": math.perm(k, h)})
    K = dihedral_or_quaternion(2 * k)
    order = (2 * k) ** h * h
    if order > cap:
        raise OrderCapExceeded(f"D{2 * k} wr H has order {order}; certificate is arithmetic only")
    if h == 1:
        G = K
        injection = np.array([0])
        D = involutions(G)
        cert.nap_established, m = counting_argument_holds(G, D)
        cert.counts.update({"Di_fp_enumerated": len(D), "Dm_fp_enumerated_full": m})
        cert.cross_validated = len(D) == lhs
        return Embedding(G, cert, injection)
    G = wreath_product(K, regular_action(H), cap=cap, tag=f"D{2 * k} wr {H.tag}")
    info = G.wreath
    # top copy of H: element (identity base, h); top index t corresponds to the BFS order of the regular action
    top_of = {}
    for t in range(info.top.order):
        perm = info.top_perms[t]
        top_of[int(perm[0])] = t  # regular action: image of the identity point names the element
    injection = np.array([info.encode([0] * h, top_of[x]) for x in range(h)])
    ok_hom = all(G.mul(int(injection[a]), int(injection[b])) == injection[H.table[a, b]]
                 for a in range(h) for b in range(h))
    refl = involutions(K)
    all_diag = _diagonal_indices(G, [refl] * h, lambda c: True)
    fp = _diagonal_indices(G, [refl] * h, lambda c: len(set(c)) == len(c))
    full = _mates(G, fp, all_diag)
    base = full[full % info.top.order == 0]
    holds, _ = counting_argument_holds(G, fp, all_diag)
    cert.counts.update({"Di_fp_enumerated": len(fp), "Dm_fp_enumerated_base": len(base),
                        "Dm_fp_enumerated_full": len(full), "injection_is_homomorphism": ok_hom})
    cert.cross_validated = len(fp) == lhs and len(base) <= rhs
    cert.nap_established = holds
    return Embedding(G, cert, injection)


def embed_in_ap(H: GroupTable) -> Embedding:
    """H x Z2 with the cosets of 1 x Z2 as blocks."""
    Z2 = GroupTable(np.array([[0, 1], [1, 0]]), tag="cyclic:2")
    G = direct_product(H, Z2)
    blocks = [[2 * x, 2 * x + 1] for x in range(H.order)]
    P = AbelianPartition(blocks)
    return Embedding(G, None, np.arange(H.order) * 2, P)


# --- explicit abelian partitions for larger groups ---------------------------------------------------

def find_abelian_partition(G: FiniteGroup, milp_column_cap=3_000_000):
    """Some abelian partition of G, or None when none exists.

    Greedy pairing by fewest partners, then leftover elements join any block
    they commute with. If that gets stuck the exact pair/triple cover is
    solved (exhaustive search for small groups, integer program otherwise).
    """
    C = G.commute_matrix.copy() if G.is_dense else np.array([G.centralizer_mask(x) for x in range(G.order)])
    np.fill_diagonal(C, False)
    deg = C.sum(axis=1)
    if deg.min() == 0:
        return None
    free = np.ones(G.order, dtype=bool)
    blocks = []
    for v in np.argsort(deg, kind="stable"):
        if not free[v]:
            continue
        cand = np.nonzero(C[v] & free)[0]
        if len(cand) == 0:
            continue
        w = cand[np.argmin(deg[cand])]
        free[[v, w]] = False
        blocks.append([int(v), int(w)])
    stuck = []
    for v in np.nonzero(free)[0]:
        for b in blocks:
            if C[v, b].all():
                b.append(int(v))
                break
        else:
            stuck.append(v)
    if not stuck:
        return AbelianPartition(blocks)
    if G.order <= 64:
        rows = [int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in C]
        cover = pair_triple_cover(rows, (1 << G.order) - 1)
        return None if cover is None else AbelianPartition(cover)
    return _milp_partition(C, milp_column_cap)


def _milp_partition(C: np.ndarray, column_cap: int):
    n = len(C)
    sets = []
    nbrs = [np.nonzero(C[i])[0] for i in range(n)]
    for i in range(n):
        for j in nbrs[i][nbrs[i] > i]:
            sets.append((i, int(j)))
            common = nbrs[i][(nbrs[i] > j) & C[j, nbrs[i]]]
            sets.extend((i, int(j), int(l)) for l in common)
            if len(sets) > column_cap:
                raise BudgetExceeded("too many candidate blocks for the integer program")
    rows = [v for s in sets for v in s]
    cols = [c for c, s in enumerate(sets) for _ in s]
    A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, len(sets)))
    res = milp(c=np.ones(len(sets)), constraints=LinearConstraint(A, 1, 1),
               integrality=np.ones(len(sets)), bounds=Bounds(0, 1))
    if res.status == 2:
        return None
    if res.x is None:
        raise BudgetExceeded(f"integer program ended without a solution: {res.message}")
    chosen = [list(sets[c]) for c in np.nonzero(np.round(res.x) > 0.5)[0]]
    return AbelianPartition(chosen)


def refute_nap_claim(G: FiniteGroup) -> dict:
    """Try to exhibit an abelian partition; reports whether one was found and verified."""
    P = find_abelian_partition(G)
    if P is None:
        return {"partition_found": False}
    chk = check_partition(G, P.blocks)
    return {"partition_found": True, "verified": chk.ok, "blocks": len(P), "partition": P}


def wreath_as_permutation_group(k: int, p: int) -> FiniteGroup:
    """D_{2k} wr Z_p built independently, as a group on k*p points (p blocks of k)."""
    gens = []
    for blk in range(p):
        off = blk * k
        rot = list(range(k * p))
        ref = list(range(k * p))
        for i in range(k):
            rot[off + i] = off + (i + 1) % k
            ref[off + i] = off + (-i) % k
        gens += [tuple(rot), tuple(ref)]
    shift = tuple(((i // k + 1) % p) * k + i % k for i in range(k * p))
    gens.append(shift)
    return group_from_generators(PermSpec(k * p, tuple(gens)), tag=f"D{2 * k} wr Z{p} (perm)")
