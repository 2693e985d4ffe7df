"""Abelian partitions: verification, bounds, constructions and exact search."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (AnchorMismatch, BudgetExceeded, CenterTrivial, EvenOrder, InvariantBroken,
                     NotCommuting, QuotientTooLarge, SearchBudgetExceeded)
from .graph import build_commuting_graph, max_noncommuting_set
from .groups import (FiniteGroup, class_number, is_commuting_set, max_abelian_subgroup, order_profile,
                     quotient)

INF = math.inf


@dataclass
class AbelianPartition:
    blocks: list[list[int]]

    def __post_init__(self):
        blocks = [sorted(int(x) for x in b) for b in self.blocks]
        first = [b for b in blocks if 0 in b]
        rest = sorted((b for b in blocks if 0 not in b), key=lambda b: (b[0], b))
        self.blocks = first + rest

    def __len__(self):
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def to_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


@dataclass
class PartitionCheck:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def check_partition(G: FiniteGroup, blocks) -> PartitionCheck:
    """Disjoint, covering, commuting blocks of size at least 2; reports the first failure."""
    seen = np.zeros(G.order, dtype=bool)
    for i, b in enumerate(blocks):
        b = np.asarray(list(b), dtype=np.int64)
        if len(b) and (b.min() < 0 or b.max() >= G.order):
            return PartitionCheck(False, "element out of range", (i,))
        if len(b) < 2:
            return PartitionCheck(False, "block smaller than 2", (i, *map(int, b)))
        if len(np.unique(b)) != len(b) or seen[b].any():
            dup = int(b[seen[b]][0]) if seen[b].any() else int(b[0])
            return PartitionCheck(False, "element in two blocks", (dup,))
        seen[b] = True
        comm = np.asarray(G.commutes(b[:, None], b[None, :]))
        if not comm.all():
            x, y = np.argwhere(~comm)[0]
            return PartitionCheck(False, "noncommuting pair in block", (int(b[x]), int(b[y])))
    if not seen.all():
        return PartitionCheck(False, "element not covered", (int(np.argmin(seen)),))
    return PartitionCheck(True)


def verify_partition(G: FiniteGroup, P) -> bool:
    blocks = P.blocks if isinstance(P, AbelianPartition) else P
    return check_partition(G, blocks).ok


@dataclass
class Certificate:
    kind: str
    anchors: list[int] = field(default_factory=list)
    detail: dict = field(default_factory=dict)


@dataclass
class BoundsReport:
    lb_noncommuting: int
    lb_classcount: int
    lb_floor: int
    ub_abelian_cosets: float
    ub_center_cosets: float
    n_exact: bool = True
    noncommuting_witness: list[int] = field(default_factory=list)
    abelian_order: int | None = None

    @property
    def best_lb(self) -> int:
        return max(self.lb_noncommuting, self.lb_classcount, self.lb_floor)

    @property
    def best_ub(self) -> float:
        return min(self.ub_abelian_cosets, self.ub_center_cosets)

    def as_dict(self) -> dict:
        def fin(v):
            return None if v == INF else int(v)
        return {"lb_noncommuting": self.lb_noncommuting, "lb_classcount": self.lb_classcount,
                "lb_floor": self.lb_floor, "ub_abelian_cosets": fin(self.ub_abelian_cosets),
                "ub_center_cosets": fin(self.ub_center_cosets), "best_lb": self.best_lb,
                "best_ub": fin(self.best_ub), "n_exact": self.n_exact,
                "ub_valid_only_if_ap": True}


@dataclass
class ThetaResult:
    value: int | None
    partition: AbelianPartition | None
    certificate: Certificate
    status: str = "certified"
    bounds: BoundsReport | None = None

    @property
    def is_nap(self) -> bool:
        return self.status == "certified" and self.value == 0

    def as_dict(self) -> dict:
        d = {"value": self.value, "status": self.status,
             "certificate": {"kind": self.certificate.kind, "anchors": list(map(int, self.certificate.anchors)),
                             "detail": self.certificate.detail}}
        if self.partition is not None:
            d["blocks"] = self.partition.to_lists()
        if self.bounds is not None:
            d["bounds"] = self.bounds.as_dict()
        return d


# --- bounds ----------------------------------------------------------------------

def compute_bounds(G: FiniteGroup, clique_budget=5_000_000) -> BoundsReport:
    if G.is_abelian():
        return BoundsReport(1, 1, 1, 1, 1, True, [0], G.order)
    try:
        n, witness = max_noncommuting_set(G, budget=clique_budget)
        exact = True
    except SearchBudgetExceeded as e:
        witness = e.best or []
        n, exact = max(len(witness), 3), False
    c = class_number(G)
    z = len(G.center_members)
    try:
        a = max_abelian_subgroup(G).order
        ub_c = G.order // z - a // z + 1
    except SearchBudgetExceeded:
        a, ub_c = None, INF
    ub_z = G.order // z if z >= 2 else INF
    return BoundsReport(n, -(-G.order // c), 3, ub_c, ub_z, exact, witness, a)


def erdos_turan_holds(G: FiniteGroup, P) -> bool:
    """Sum of squared block sizes is at most the number of commuting pairs."""
    blocks = P.blocks if isinstance(P, AbelianPartition) else P
    return sum(len(b) ** 2 for b in blocks) <= G.order * class_number(G)


# --- direct constructions ----------------------------------------------------------

def center_coset_partition(G: FiniteGroup) -> AbelianPartition:
    Z = G.center_members
    if len(Z) < 2:
        raise CenterTrivial("the center is trivial, its cosets are singletons")
    seen = np.zeros(G.order, dtype=bool)
    blocks = []
    for x in range(G.order):
        if not seen[x]:
            coset = np.asarray(G.mul(Z, x))
            seen[coset] = True
            blocks.append(coset.tolist())
    return AbelianPartition(blocks)


def abelian_subgroup_partition(G: FiniteGroup) -> AbelianPartition:
    """A largest abelian subgroup A plus the cosets of Z(G) outside it.

    A contains Z(G) by maximality, so the block count is [G:Z] - [A:Z] + 1.
    """
    Z = G.center_members
    if len(Z) < 2:
        raise CenterTrivial("the center is trivial, its cosets are singletons")
    A = max_abelian_subgroup(G).members
    seen = np.zeros(G.order, dtype=bool)
    seen[A] = True
    blocks = [A.tolist()]
    for x in range(G.order):
        if not seen[x]:
            coset = np.asarray(G.mul(Z, x))
            seen[coset] = True
            blocks.append(coset.tolist())
    return AbelianPartition(blocks)


def odd_order_partition(G: FiniteGroup) -> AbelianPartition:
    if G.order % 2 == 0:
        raise EvenOrder("inverse pairs need every nonidentity element to differ from its inverse")
    if G.order == 1:
        raise EvenOrder("the trivial group has no partition into blocks of size 2")
    blocks = []
    done = np.zeros(G.order, dtype=bool)
    done[0] = True
    for x in range(1, G.order):
        if not done[x]:
            y = int(G.inv[x])
            done[[x, y]] = True
            blocks.append([x, y])
    blocks[0].append(0)
    return AbelianPartition(blocks)


# --- exhaustive search ---------------------------------------------------------------

def _bits_of(b: int):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


def _popcount(b: int) -> int:
    return bin(b).count("1")


def pair_triple_cover(rows: list[int], universe: int, budget: int = 2_000_000):
    """Exact cover of ``universe`` by commuting pairs and triples, or None.

    Any commuting set of size at least 2 splits into pieces of sizes 2 and 3,
    so a group has an abelian partition iff this cover exists. Exhaustive:
    branches on the uncovered element with the fewest partners, memoising
    uncovered sets already shown infeasible.
    """
    dead = set()
    nodes = 0

    def rec(U):
        nonlocal nodes
        if U == 0:
            return []
        if U in dead:
            return None
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("pair/triple cover search budget exhausted")
        v, best = -1, None
        for u in _bits_of(U):
            d = _popcount(rows[u] & U)
            if d == 0:
                dead.add(U)
                return None
            if best is None or d < best:
                v, best = u, d
        nb = rows[v] & U
        for w in _bits_of(nb):
            r = rec(U & ~(1 << v) & ~(1 << w))
            if r is not None:
                return [[v, w]] + r
        for w in _bits_of(nb):
            for x in _bits_of(nb & rows[w] & ~((2 << w) - 1)):
                r = rec(U & ~((1 << v) | (1 << w) | (1 << x)))
                if r is not None:
                    return [[v, w, x]] + r
        dead.add(U)
        return None

    return rec(universe)


def _greedy_clique(rows, cand: int) -> int:
    size = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        size += 1
        cand &= rows[v]
    return size


def _min_colouring(G: FiniteGroup, ub_blocks: list[list[int]], lb: int, budget: int):
    """Fewest commuting classes (size >= 2) covering G, given a feasible start.

    Noncentral elements are coloured so that each class is pairwise commuting;
    central elements are held back and at the end patch singleton classes
    (each singleton takes one) with the rest joining the first class.
    Returns (classes, exhausted) with classes over noncentral elements.
    """
    graph = build_commuting_graph(G)
    com = graph.adj
    Z = set(int(z) for z in G.center_members)
    zc = len(Z)
    nc = [x for x in range(G.order) if x not in Z]
    nc_bits = sum(1 << x for x in nc)
    non = [(nc_bits & ~com[x] & ~(1 << x)) for x in range(G.order)]

    best = [len(ub_blocks)]
    best_classes = [None]
    nodes = 0
    classes: list[int] = []   # member bitsets
    common: list[int] = []    # elements commuting with every member

    def stuck_singletons(W):
        s = 0
        for members in classes:
            if members & (members - 1) == 0:
                u = members.bit_length() - 1
                if com[u] & W == 0:
                    s += 1
        return s

    def rec(W):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("partition search budget exhausted")
        if W == 0:
            if sum(1 for m in classes if m & (m - 1) == 0) <= zc and len(classes) < best[0]:
                best[0] = len(classes)
                best_classes[0] = list(classes)
            return
        if stuck_singletons(W) > zc:
            return
        # bound: vertices that fit no open class need new, mutually separate classes
        free = 0
        v, v_opts = -1, None
        for u in _bits_of(W):
            opts = sum(1 for c in common if c >> u & 1)
            if opts == 0:
                free |= 1 << u
            if v_opts is None or opts < v_opts:
                v, v_opts = u, opts
        if len(classes) + _greedy_clique(non, free) >= best[0]:
            return
        W2 = W & ~(1 << v)
        order = sorted((i for i, c in enumerate(common) if c >> v & 1), key=lambda i: -_popcount(classes[i]))
        for i in order:
            old_m, old_c = classes[i], common[i]
            classes[i] |= 1 << v
            common[i] &= com[v]
            rec(W2)
            classes[i], common[i] = old_m, old_c
            if best[0] <= lb:
                return
        if len(classes) + 1 < best[0]:
            classes.append(1 << v)
            common.append(com[v])
            rec(W2)
            classes.pop()
            common.pop()

    rec(nc_bits)
    return best_classes[0], nodes


def _attach_center(G: FiniteGroup, classes: list[int]) -> list[list[int]]:
    blocks = sorted((list(_bits_of(m)) for m in classes), key=lambda b: b[0])
    spare = sorted(int(z) for z in G.center_members)
    for b in blocks:
        if len(b) == 1:
            b.append(spare.pop())
    if blocks:
        blocks[0].extend(spare)
    else:
        blocks = [spare]
    return blocks


def exact_theta(G: FiniteGroup, budget: int = 5_000_000) -> ThetaResult:
    """Exact value by exhaustive search; 0 with a NapExhaustive certificate if none exists."""
    if G.is_abelian():
        return ThetaResult(1, AbelianPartition([list(range(G.order))]), Certificate("Exhaustive", [0]))
    graph = build_commuting_graph(G)
    try:
        cover = pair_triple_cover(graph.adj, graph.full, budget)
    except BudgetExceeded:
        return ThetaResult(None, None, Certificate("BoundsOnly"), "unknown", compute_bounds(G))
    if cover is None:
        return ThetaResult(0, None, Certificate("NapExhaustive", detail={"method": "pair-triple exact cover"}))
    bounds = compute_bounds(G)
    lb = bounds.best_lb
    start = cover
    if bounds.ub_center_cosets < len(start):
        start = center_coset_partition(G).blocks
    try:
        classes, nodes = _min_colouring(G, start, lb, budget)
    except BudgetExceeded:
        P = AbelianPartition(start)
        return ThetaResult(None, P, Certificate("BoundsOnly", detail={"upper": len(P)}), "unknown", bounds)
    P = AbelianPartition(start if classes is None else _attach_center(G, classes))
    anchors = []
    if len(P) == bounds.lb_noncommuting and bounds.n_exact:
        anchors = align_anchors(P, [(None, w) for w in bounds.noncommuting_witness])
    cert = Certificate("Exhaustive", anchors, {"nodes": nodes, "n": bounds.lb_noncommuting})
    return ThetaResult(len(P), P, cert, "certified", bounds)


def exists_abelian_partition(G: FiniteGroup, budget: int = 2_000_000) -> bool:
    graph = build_commuting_graph(G)
    return pair_triple_cover(graph.adj, graph.full, budget) is not None


# --- certificate checks -------------------------------------------------------------

def certify_minimal_via_centralizers(G: FiniteGroup, P: AbelianPartition, anchors) -> bool:
    """Block 0 = C(a_1) and block i = C(a_i) minus Z(G), each centralizer abelian.

    A wrong anchor count or an invalid partition raises AnchorMismatch; a
    centralizer that is nonabelian or differs from its block gives False.
    """
    anchors = [int(a) for a in anchors]
    if len(anchors) != len(P):
        raise AnchorMismatch(f"{len(anchors)} anchors for {len(P)} blocks")
    if not verify_partition(G, P):
        raise AnchorMismatch("the blocks do not form an abelian partition")
    Z = G.center_members
    for i, (a, block) in enumerate(zip(anchors, P.blocks)):
        C = np.nonzero(G.centralizer_mask(a))[0]
        if not is_commuting_set(G, C):
            return False
        want = C if i == 0 else np.setdiff1d(C, Z)
        if not np.array_equal(np.asarray(block), want):
            return False
    return True


def align_anchors(P: AbelianPartition, pairs) -> list[int]:
    """Reorder anchors so anchor i lies in block i; ``pairs`` holds (block, anchor)."""
    anchors = [int(a) for _, a in pairs]
    out = []
    for b in P.blocks:
        s = set(b)
        hit = [a for a in anchors if a in s]
        if len(hit) != 1:
            raise InvariantBroken("each block needs exactly one anchor")
        out.append(hit[0])
    return out


def anchors_certify(G: FiniteGroup, P: AbelianPartition, anchors) -> bool:
    """Anchor i lies in block i and the anchors pairwise fail to commute.

    A noncommuting set of size k forces at least k blocks in any abelian
    partition, so this proves the partition minimal.
    """
    anchors = [int(a) for a in anchors]
    if len(anchors) != len(P) or not verify_partition(G, P):
        return False
    if any(a not in block for a, block in zip(anchors, P.blocks)):
        return False
    a = np.asarray(anchors)
    chunk = max(1, 4_000_000 // (len(a) * (getattr(G, "degree", 1) or 1)))
    for s in range(0, len(a), chunk):
        part = a[s:s + chunk]
        comm = np.asarray(G.commutes(part[:, None], a[None, :]))
        if comm.sum() != len(part):
            return False
    return True


def verify_certificate(G: FiniteGroup, result: ThetaResult) -> bool:
    cert = result.certificate
    if result.status != "certified":
        return False
    if result.value and result.value >= 1:
        if result.partition is None or len(result.partition) != result.value:
            return False
        if not verify_partition(G, result.partition):
            return False
    kind = cert.kind
    if kind in ("CentralizerMinimal", "FamilyFormula", "SandwichedBounds"):
        if result.value == 1:
            return G.is_abelian()
        return anchors_certify(G, result.partition, cert.anchors)
    if kind == "Exhaustive":
        if result.value == 1:
            return G.is_abelian()
        if cert.anchors:
            return anchors_certify(G, result.partition, cert.anchors)
        return exact_theta(G).value == result.value
    if kind == "NapExhaustive":
        return not exists_abelian_partition(G)
    if kind == "NapSelfCentralizing":
        x = cert.anchors[0]
        return bool(G.orders[x] == 2 and G.centralizer_mask(x).sum() == 2)
    if kind == "Frobenius":
        if cert.anchors:
            return anchors_certify(G, result.partition, cert.anchors)
        return verify_partition(G, result.partition) and len(result.partition) == result.value
    return False


# --- structural checks ---------------------------------------------------------------

def normalize_first_block(G: FiniteGroup, P: AbelianPartition) -> AbelianPartition:
    """Move every central element into the identity's block."""
    Z = set(int(z) for z in G.center_members)
    if len(Z) == 1 or len(Z) == G.order:
        return P
    blocks = [list(b) for b in P.blocks]
    first = blocks[0]
    for i in range(1, len(blocks)):
        moving = [x for x in blocks[i] if x in Z]
        if moving and len(blocks[i]) - len(moving) < 2:
            raise InvariantBroken(f"block {i} would drop below size 2; the partition is not minimal")
        blocks[i] = [x for x in blocks[i] if x not in Z]
        first.extend(moving)
    if set(first) <= Z:
        raise InvariantBroken("the identity block holds only central elements; the partition is not minimal")
    return AbelianPartition(blocks)


def check_union_lemma(G: FiniteGroup, S) -> bool:
    """Union of C(a_i^-1 a_j) over pairs of S covers G."""
    S = [int(s) for s in S]
    if not is_commuting_set(G, S):
        raise NotCommuting("the given set is not commuting")
    covered = np.zeros(G.order, dtype=bool)
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            covered |= G.centralizer_mask(G.mul(int(G.inv[S[i]]), S[j]))
    return bool(covered.all())


def min_part_size_check(G: FiniteGroup, P: AbelianPartition) -> bool:
    return min(P.sizes()) <= class_number(G)


def blocks_have_noncentral(G: FiniteGroup, P: AbelianPartition) -> bool:
    Z = set(int(z) for z in G.center_members)
    return all(not set(b) <= Z for b in P.blocks)


def _is_v4(Q) -> bool:
    return Q.order == 4 and order_profile(Q) == {1: 1, 2: 3}


def _is_z3_squared(Q) -> bool:
    return Q.order == 9 and order_profile(Q) == {1: 1, 3: 8}


def _is_s3(Q) -> bool:
    return Q.order == 6 and not Q.is_abelian()


def classify_small_theta(G: FiniteGroup, max_order: int = 100_000):
    """1 for abelian, 3 or 4 by the central-quotient characterisations.

    Otherwise "NAP-candidate" for centerless groups of even order (neither the
    center-coset nor the inverse-pair construction applies) and "other".
    """
    if G.is_abelian():
        return 1
    if G.order > max_order:
        raise QuotientTooLarge(f"|G| = {G.order} above quotient limit {max_order}")
    Z = G.center_members
    if len(Z) == 1:
        return "NAP-candidate" if G.order % 2 == 0 else "other"
    if G.order // len(Z) > 9:
        return "other"
    Q, _ = quotient(G, Z)
    if _is_v4(Q):
        return 3
    if _is_z3_squared(Q) or _is_s3(Q):
        return 4
    return "other"
