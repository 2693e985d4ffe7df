"""Commuting graph of a group on a vertex subset, as Python-int bitsets."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedClaim, SearchBudgetExceeded
from .groups import FiniteGroup, mask_to_int


def _bits(vs) -> int:
    b = 0
    for v in vs:
        b |= 1 << int(v)
    return b


def _iter_bits(b: int):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


@dataclass
class CommGraph:
    """Delta(G) on ``vertex_map``: vertex i stands for element ``vertex_map[i]``.

    Row i has bit j set iff the two elements commute and i != j. The
    noncommuting graph is read through :meth:`non_row` without a copy.
    """

    vertex_map: np.ndarray
    adj: list[int] = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_map)

    @property
    def full(self) -> int:
        return (1 << self.n_vertices) - 1

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def non_row(self, i: int) -> int:
        return self.full & ~self.adj[i] & ~(1 << i)

    def degree(self, i: int) -> int:
        return bin(self.adj[i]).count("1")

    def n_edges(self) -> int:
        return sum(self.degree(i) for i in range(self.n_vertices)) // 2

    def is_clique(self, vs) -> bool:
        vs = list(vs)
        mask = _bits(vs)
        return all((mask & ~(1 << v)) & ~self.adj[v] == 0 for v in vs)

    def is_independent(self, vs) -> bool:
        mask = _bits(vs)
        return all(self.adj[v] & mask == 0 for v in vs)

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.n_vertices} {self.n_edges()}"]
        for i in range(self.n_vertices):
            for j in _iter_bits(self.adj[i] >> (i + 1)):
                lines.append(f"e {i + 1} {i + j + 2}")
        return "\n".join(lines) + "\n"


def build_commuting_graph(G: FiniteGroup, X=None) -> CommGraph:
    vm = np.arange(G.order) if X is None else np.asarray(list(X), dtype=np.int64)
    adj = []
    if G.is_dense:
        sub = G.commute_matrix[np.ix_(vm, vm)]
        for i in range(len(vm)):
            row = sub[i].copy()
            row[i] = False
            adj.append(mask_to_int(row))
    else:
        for i, x in enumerate(vm):
            row = G.centralizer_mask(int(x))[vm]
            row[i] = False
            adj.append(mask_to_int(row))
    return CommGraph(vm, adj)


def max_clique(rows: list[int], candidates: int, budget: int = 5_000_000) -> list[int]:
    """Maximum clique of the graph given by ``rows`` inside ``candidates``.

    Branch and bound with greedy colouring bounds, vertices taken in index
    order. Returns the first optimum found, sorted.
    """
    best: list[int] = []
    nodes = 0

    def colour(P):
        order, colours = [], []
        c = 0
        U = P
        while U:
            c += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~rows[v] & ~low
                U &= ~low
                order.append(v)
                colours.append(c)
        return order, colours

    def expand(R, P):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded("clique search budget exhausted", best=sorted(best),
                                       lower_bound=len(best))
        order, colours = colour(P)
        for v, c in zip(reversed(order), reversed(colours)):
            if len(R) + c <= len(best):
                return
            newP = P & rows[v]
            if newP:
                expand(R + [v], newP)
            elif len(R) + 1 > len(best):
                best = R + [v]
            P &= ~(1 << v)

    if candidates:
        expand([], candidates)
    return sorted(best)


def max_noncommuting_set(G: FiniteGroup, budget: int = 5_000_000) -> tuple[int, list[int]]:
    """n(G) with a witness set of element indices.

    Central elements commute with everything, so for nonabelian G the clique
    search in the noncommuting graph runs on noncentral elements only.
    """
    noncentral = np.setdiff1d(G.elements, G.center_members)
    if len(noncentral) == 0:
        return 1, [0]
    graph = build_commuting_graph(G, noncentral)
    rows = [graph.non_row(i) for i in range(graph.n_vertices)]
    try:
        clique = max_clique(rows, graph.full, budget)
    except SearchBudgetExceeded as e:
        best = [int(graph.vertex_map[v]) for v in (e.best or [])]
        raise SearchBudgetExceeded(str(e), best=best, lower_bound=len(best)) from None
    return len(clique), [int(graph.vertex_map[v]) for v in clique]


@dataclass
class SplitPartitionClaim:
    independent_blocks: list
    complete_blocks: list


def verify_mn_split(graph: CommGraph, claim: SplitPartitionClaim) -> bool:
    """Each independent block edge-free, each complete block a clique, blocks covering."""
    seen = set()
    for block in list(claim.independent_blocks) + list(claim.complete_blocks):
        for v in block:
            if not 0 <= v < graph.n_vertices:
                raise MalformedClaim(f"vertex {v} out of range")
            if v in seen:
                raise MalformedClaim(f"vertex {v} appears twice")
            seen.add(v)
    if len(seen) != graph.n_vertices:
        return False
    return (all(graph.is_independent(b) for b in claim.independent_blocks)
            and all(graph.is_clique(b) for b in claim.complete_blocks))
