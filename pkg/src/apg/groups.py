"""Finite groups as indexed element sets.

Two backends share one interface:

* :class:`GroupTable` keeps the full multiplication table (``table[a, b]`` is
  the index of ``a*b``).
* :class:`PermGroup` keeps every element as a permutation and multiplies by
  composition; used when a dense table would not fit (Sz(8) has 29120
  elements).

Element 0 is always the identity. Permutations compose left to right:
``a*b`` applies ``a`` first, so as arrays ``perm(a*b) = perm(b)[perm(a)]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import OrderCapExceeded, SearchBudgetExceeded

DEFAULT_ORDER_CAP = 200_000
DEFAULT_DENSE_LIMIT = 5_000
DEFAULT_SUBGROUP_SEARCH_CAP = 10_000


@dataclass(frozen=True)
class PermSpec:
    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.generators)
        for g in gens:
            if sorted(g) != list(range(self.degree)):
                raise ValueError(f"generator {g} is not a bijection on {self.degree} points")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_cycles(cls, degree: int, *gens) -> "PermSpec":
        """Each generator is a list of cycles, e.g. ``[(0, 1, 2)]``."""
        arrays = []
        for cycles in gens:
            img = list(range(degree))
            for cyc in cycles:
                for i, pt in enumerate(cyc):
                    img[pt] = cyc[(i + 1) % len(cyc)]
            arrays.append(tuple(img))
        return cls(degree, tuple(arrays))


@dataclass(frozen=True)
class Spectrum:
    omega: frozenset
    mu: frozenset


class SubgroupRef:
    """A subset of a parent group's indices, known to be a subgroup."""

    def __init__(self, parent: "FiniteGroup", members):
        self.parent = parent
        self.members = np.unique(np.asarray(members, dtype=np.int64))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.members, x)
        return bool(i < len(self.members) and self.members[i] == x)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.members] = True
        return m

    def __repr__(self):
        return f"SubgroupRef(order={self.order}, parent={self.parent.tag!r})"


class FiniteGroup:
    """Shared behaviour; subclasses provide ``mul`` and ``inv``."""

    order: int
    tag: str
    inv: np.ndarray
    identity = 0

    def __init__(self, tag: str, labels=None, perms=None, gens=None, factors=None):
        self.tag = tag
        self._labels = labels
        self.perms = perms
        self.gens = None if gens is None else np.asarray(gens, dtype=np.int64)
        # direct-product structure: factor groups in mixed-radix order
        self.factors = factors
        self.wreath = None
        self._centralizers = {}
        self._cbits = {}

    # -- arithmetic --------------------------------------------------------
    def mul(self, a, b):
        raise NotImplementedError

    def commutes(self, a, b):
        return self.mul(a, b) == self.mul(b, a)

    def conj(self, x, g):
        """g^-1 x g, vectorised over either argument."""
        return self.mul(self.mul(self.inv[g], x), g)

    def power(self, x: int, e: int) -> int:
        r, base = 0, int(x)
        if e < 0:
            base, e = int(self.inv[base]), -e
        while e:
            if e & 1:
                r = int(self.mul(r, base))
            base = int(self.mul(base, base))
            e >>= 1
        return r

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    @property
    def is_dense(self) -> bool:
        return False

    @property
    def labels(self) -> list[str]:
        if self._labels is None:
            if self.perms is not None:
                self._labels = [cycle_string(p) for p in self.perms]
            else:
                self._labels = [f"g{i}" for i in range(self.order)]
        return self._labels

    # -- cached structure ---------------------------------------------------
    def centralizer_mask(self, x: int) -> np.ndarray:
        x = int(x)
        m = self._centralizers.get(x)
        if m is None:
            m = self._centralizer_mask(x)
            self._centralizers[x] = m
        return m

    def _centralizer_mask(self, x: int) -> np.ndarray:
        els = self.elements
        return self.mul(x, els) == self.mul(els, x)

    def centralizer_bits(self, x: int) -> int:
        """Centralizer of ``x`` as a Python-int bitset over element indices."""
        x = int(x)
        b = self._cbits.get(x)
        if b is None:
            b = mask_to_int(self.centralizer_mask(x))
            self._cbits[x] = b
        return b

    @cached_property
    def generators(self) -> np.ndarray:
        if self.gens is not None:
            return self.gens
        return generating_set(self)

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        out = np.zeros(n, dtype=np.int64)
        out[0] = 1
        cur = self.elements.copy()
        k = 1
        pending = np.arange(1, n)
        while len(pending):
            cur_p = self.mul(cur[pending], pending)
            k += 1
            done = cur_p == 0
            out[pending[done]] = k
            cur[pending] = cur_p
            pending = pending[~done]
        return out

    @cached_property
    def center_members(self) -> np.ndarray:
        m = np.ones(self.order, dtype=bool)
        for g in self.generators:
            m &= self.centralizer_mask(int(g))
        return np.nonzero(m)[0]

    @cached_property
    def classes(self) -> list[np.ndarray]:
        seen = np.zeros(self.order, dtype=bool)
        out = []
        els = self.elements
        for x in range(self.order):
            if seen[x]:
                continue
            cls = np.unique(self.conj(x, els))
            seen[cls] = True
            out.append(cls)
        return out

    def is_abelian(self) -> bool:
        return len(self.center_members) == self.order

    def __repr__(self):
        return f"{type(self).__name__}(order={self.order}, tag={self.tag!r})"


class GroupTable(FiniteGroup):
    """Dense multiplication table backend."""

    def __init__(self, table, tag="generated", labels=None, perms=None, gens=None, factors=None):
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("table must be square")
        if not np.array_equal(table[0], np.arange(n)) or not np.array_equal(table[:, 0], np.arange(n)):
            raise ValueError("element 0 must be the identity")
        super().__init__(tag, labels, perms, gens, factors)
        self.table = table
        self.order = n
        self.inv = np.argmax(table == 0, axis=1).astype(np.int64)

    @property
    def size(self) -> int:
        return self.order

    @property
    def is_dense(self) -> bool:
        return True

    def mul(self, a, b):
        r = self.table[a, b]
        return int(r) if np.ndim(r) == 0 else r.astype(np.int64)

    def _centralizer_mask(self, x):
        return self.table[x, :] == self.table[:, x]

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        return self.table == self.table.T

    def centralizer_bits(self, x: int) -> int:
        x = int(x)
        b = self._cbits.get(x)
        if b is None:
            b = mask_to_int(self.commute_matrix[x])
            self._cbits[x] = b
        return b

    @cached_property
    def center_members(self) -> np.ndarray:
        return np.nonzero(self.commute_matrix.all(axis=1))[0]

    @cached_property
    def classes(self) -> list[np.ndarray]:
        t = self.table
        seen = np.zeros(self.order, dtype=bool)
        out = []
        els = np.arange(self.order)
        for x in range(self.order):
            if seen[x]:
                continue
            cls = np.unique(t[t[self.inv, x], els])
            seen[cls] = True
            out.append(cls)
        return out


class PermGroup(FiniteGroup):
    """Permutation backend: every element stored as its point images."""

    def __init__(self, perms, tag="generated", labels=None, gens=None, factors=None):
        perms = np.asarray(perms)
        super().__init__(tag, labels, perms, gens, factors)
        self.order, self.degree = perms.shape
        self._build_lookup()
        inv_perms = np.argsort(perms, axis=1).astype(perms.dtype)
        self.inv = self.index_of(inv_perms)

    @property
    def size(self) -> int:
        return self.order

    def _build_lookup(self):
        # a base: points whose images determine an element uniquely
        rows = np.arange(self.order)
        base = []
        while len(rows) > 1:
            sub = self.perms[rows]
            moved = np.nonzero((sub != np.arange(self.degree)).any(axis=0))[0]
            pt = int(moved[np.argmax([len(np.unique(sub[:, c])) for c in moved])])
            base.append(pt)
            rows = rows[sub[:, pt] == pt]
        self.base = base
        if self.degree ** max(len(base), 1) < 2 ** 62:
            keys = self._keys(self.perms)
            self._key_order = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._key_order]
            self._dict = None
        else:
            self._dict = {p.tobytes(): i for i, p in enumerate(self.perms)}

    def _keys(self, rows):
        k = np.zeros(rows.shape[:-1], dtype=np.int64)
        for pt in self.base:
            k = k * self.degree + rows[..., pt].astype(np.int64)
        return k

    def index_of(self, rows) -> np.ndarray:
        rows = np.asarray(rows, dtype=self.perms.dtype)
        if self._dict is not None:
            flat = rows.reshape(-1, self.degree)
            return np.array([self._dict[r.tobytes()] for r in flat]).reshape(rows.shape[:-1])
        keys = self._keys(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._key_order[np.minimum(pos, self.order - 1)]

    def _base_images(self, a, b):
        """Images of the base points under a*b; these determine the product."""
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        pa = self.perms[a_arr][..., self.base].astype(np.int64)
        return self.perms[b_arr[..., None], pa]

    def mul(self, a, b):
        if self._dict is not None:
            a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
            prod = np.take_along_axis(self.perms[b_arr], self.perms[a_arr].astype(np.int64), axis=-1)
            r = self.index_of(prod)
        else:
            keys = np.zeros(np.broadcast(np.asarray(a), np.asarray(b)).shape, dtype=np.int64)
            imgs = self._base_images(a, b)
            for i in range(len(self.base)):
                keys = keys * self.degree + imgs[..., i]
            pos = np.searchsorted(self._sorted_keys, keys)
            r = self._key_order[np.minimum(pos, self.order - 1)]
        return int(r) if np.ndim(r) == 0 else r

    def commutes(self, a, b):
        r = (self._base_images(a, b) == self._base_images(b, a)).all(axis=-1)
        return bool(r) if np.ndim(r) == 0 else r

    def _centralizer_mask(self, x):
        px = self.perms[x]
        # x*g applies x then g; g*x applies g then x
        xg = self.perms[:, px]
        gx = px[self.perms]
        return (xg == gx).all(axis=1)

    @cached_property
    def orders(self) -> np.ndarray:
        ident = np.arange(self.degree)
        cur = self.perms.astype(np.int64)
        out = np.zeros(self.order, dtype=np.int64)
        k = 1
        pending = np.arange(self.order)
        while len(pending):
            done = (cur[pending] == ident).all(axis=1)
            out[pending[done]] = k
            pending = pending[~done]
            cur[pending] = np.take_along_axis(self.perms[pending].astype(np.int64), cur[pending], axis=1)
            k += 1
        return out


# --- helpers ----------------------------------------------------------------

def mask_to_int(mask) -> int:
    return int.from_bytes(np.packbits(np.asarray(mask, dtype=bool), bitorder="little").tobytes(), "little")


def int_to_indices(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def cycle_string(perm) -> str:
    perm = list(map(int, perm))
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def group_from_generators(spec: PermSpec, tag="generated", cap=DEFAULT_ORDER_CAP,
                          dense_limit=DEFAULT_DENSE_LIMIT) -> FiniteGroup:
    """Closure of the generators, numbered in breadth-first order from the identity.

    Returns a :class:`GroupTable` when the order is at most ``dense_limit`` and a
    :class:`PermGroup` otherwise.
    """
    deg = spec.degree
    dtype = np.uint8 if deg <= 256 else np.uint16
    gens = [np.asarray(g, dtype=dtype) for g in spec.generators]
    ident = np.arange(deg, dtype=dtype)
    seen = {ident.tobytes(): 0}
    elems = [ident]
    parent, via = [-1], [-1]
    right = [[] for _ in gens]
    i = 0
    while i < len(elems):
        x = elems[i]
        for s, g in enumerate(gens):
            y = g[x]
            key = y.tobytes()
            j = seen.get(key)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                seen[key] = j
                elems.append(y)
                parent.append(i)
                via.append(s)
            right[s].append(j)
        i += 1
    perms = np.array(elems, dtype=dtype)
    n = len(elems)
    gen_idx = [seen[g.tobytes()] for g in gens]
    if n > dense_limit:
        return PermGroup(perms, tag=tag, gens=gen_idx)
    right = [np.asarray(r, dtype=np.int32) for r in right]
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for b in range(1, n):
        table[:, b] = right[via[b]][table[:, parent[b]]]
    return GroupTable(table, tag=tag, perms=perms, gens=gen_idx)


def direct_product(G: GroupTable, H: GroupTable, cap=DEFAULT_ORDER_CAP) -> GroupTable:
    """Componentwise product; (g, h) gets index g*|H| + h."""
    n, m = G.order, H.order
    if n * m > cap:
        raise OrderCapExceeded(f"|G x H| = {n * m} exceeds cap {cap}")
    t = (G.table.astype(np.int64)[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n * m, n * m)
    labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    factors = (G.factors or (G,)) + (H.factors or (H,))
    return GroupTable(t, tag=f"{G.tag} x {H.tag}", labels=labels, factors=factors)


def direct_power(G: GroupTable, k: int) -> GroupTable:
    out = G
    for _ in range(k - 1):
        out = direct_product(out, G)
    return out


@dataclass(frozen=True)
class WreathInfo:
    base: GroupTable
    top: GroupTable
    top_perms: np.ndarray
    degree: int

    def decode(self, x):
        """(base tuple, top index) of element index ``x``."""
        code, h = divmod(int(x), self.top.order)
        coords = []
        for _ in range(self.degree):
            code, c = divmod(code, self.base.order)
            coords.append(c)
        return tuple(reversed(coords)), h

    def encode(self, coords, h=0) -> int:
        code = 0
        for c in coords:
            code = code * self.base.order + int(c)
        return code * self.top.order + int(h)


def wreath_product(K: GroupTable, H: PermSpec, cap=DEFAULT_ORDER_CAP, tag=None) -> GroupTable:
    """K wr H with H permuting the coordinates of K^n.

    Element ``(f, h)`` is encoded as ``code(f) * |H| + h`` with ``f[0]`` the most
    significant base-|K| digit. ``(f, h)(f', h') = (i -> f[i] f'[h(i)], h h')``,
    which is the product of the imprimitive actions on K x {0..n-1}.
    """
    top = group_from_generators(H, tag="top") if H.generators else GroupTable(np.zeros((1, 1)), tag="trivial",
                                                                              perms=np.arange(H.degree)[None, :])
    if top.perms is None:
        raise ValueError("top group needs permutation images")
    deg, k, nh = H.degree, K.order, top.order
    total = k ** deg * nh
    if total > cap:
        raise OrderCapExceeded(f"|K wr H| = {total} exceeds cap {cap}")
    idx = np.arange(total)
    code, tops = np.divmod(idx, nh)
    F = np.zeros((total, deg), dtype=np.int64)
    for i in range(deg - 1, -1, -1):
        code, F[:, i] = np.divmod(code, k)
    tp = top.perms.astype(np.int64)
    Kt = K.table
    weights = k ** np.arange(deg - 1, -1, -1)
    table = np.empty((total, total), dtype=np.int32)
    for x in range(total):
        h = tops[x]
        coords = Kt[F[x][None, :], F[:, tp[h]]]
        table[x] = (coords @ weights) * nh + top.table[h, tops]
    G = GroupTable(table, tag=tag or f"{K.tag} wr <{H.degree} pts>")
    G.wreath = WreathInfo(K, top, top.perms, deg)
    return G


# --- subgroup utilities --------------------------------------------------------

def subgroup_closure(G: FiniteGroup, gens) -> np.ndarray:
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0])
    if len(gens) == 0:
        return frontier
    while len(frontier):
        prods = np.asarray(G.mul(frontier[:, None], gens[None, :])).ravel()
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return np.nonzero(mask)[0]


def generating_set(G: FiniteGroup) -> np.ndarray:
    """Greedy generating set: repeatedly add the least element not yet generated."""
    gens = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    while not mask.all():
        x = int(np.argmin(mask))
        gens.append(x)
        mask[:] = False
        mask[subgroup_closure(G, gens)] = True
    return np.asarray(gens, dtype=np.int64)


def is_subgroup(G: FiniteGroup, members) -> bool:
    members = np.unique(np.asarray(members, dtype=np.int64))
    if len(members) == 0 or members[0] != 0:
        return False
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    prods = np.asarray(G.mul(members[:, None], members[None, :]))
    return bool(mask[prods].all() and mask[G.inv[members]].all())


def is_commuting_set(G: FiniteGroup, elems) -> bool:
    e = np.asarray(list(elems), dtype=np.int64)
    if len(e) < 2:
        return True
    return bool(np.all(G.commutes(e[:, None], e[None, :])))


def induced_group(G: FiniteGroup, members, tag=None) -> tuple[GroupTable, np.ndarray]:
    """Dense table of a subgroup; local index i stands for ``members[i]``."""
    members = np.unique(np.asarray(members, dtype=np.int64))
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[members] = np.arange(len(members))
    prods = np.asarray(G.mul(members[:, None], members[None, :]))
    table = lookup[prods]
    if (table < 0).any():
        raise ValueError("members are not closed under multiplication")
    labels = [G.labels[m] for m in members] if G._labels is not None or G.perms is not None else None
    return GroupTable(table, tag=tag or f"subgroup of {G.tag}", labels=labels), members


def quotient(G: FiniteGroup, normal) -> tuple[GroupTable, np.ndarray]:
    """Table of G/N plus the coset id of every element (coset of 1 is 0)."""
    normal = np.asarray(normal, dtype=np.int64)
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset[x] < 0:
            coset[np.asarray(G.mul(normal, x))] = len(reps)
            reps.append(x)
    reps = np.asarray(reps)
    table = coset[np.asarray(G.mul(reps[:, None], reps[None, :]))]
    return GroupTable(table, tag=f"{G.tag} / N"), coset


# --- public analysis operations -------------------------------------------------

def centralizer(G: FiniteGroup, x: int) -> SubgroupRef:
    return SubgroupRef(G, np.nonzero(G.centralizer_mask(x))[0])


def center(G: FiniteGroup) -> SubgroupRef:
    return SubgroupRef(G, G.center_members)


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    return G.classes


def class_number(G: FiniteGroup) -> int:
    return len(G.classes)


def element_orders(G: FiniteGroup) -> Spectrum:
    omega = frozenset(int(o) for o in np.unique(G.orders))
    mu = frozenset(o for o in omega if not any(o2 != o and o2 % o == 0 for o2 in omega))
    return Spectrum(omega, mu)


def order_profile(G: FiniteGroup) -> dict[int, int]:
    vals, counts = np.unique(G.orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def commuting_pairs_count(G: FiniteGroup) -> int:
    """|{(x, y): xy = yx}|, checked against |G| * c(G)."""
    if G.is_dense:
        total = int(G.commute_matrix.sum())
    else:
        total = sum(int(G.centralizer_mask(x).sum()) for x in range(G.order))
    assert total == G.order * class_number(G), "commuting-pair count disagrees with |G| c(G)"
    return total


def involutions(G: FiniteGroup) -> np.ndarray:
    return np.nonzero(G.orders == 2)[0]


def odd_part_subgroup(G: FiniteGroup) -> SubgroupRef | None:
    odd = np.nonzero(G.orders % 2 == 1)[0]
    if is_subgroup(G, odd):
        return SubgroupRef(G, odd)
    return None


def conjugate_subgroups(G: FiniteGroup, members) -> list[tuple[int, np.ndarray]]:
    """Distinct conjugates g^-1 S g, each with its least-index conjugator.

    The least conjugator is the least element of its coset N_G(S) g, so the
    list doubles as a deterministic transversal of the normalizer.
    """
    members = np.asarray(members, dtype=np.int64)
    seen = {}
    out = []
    chunk = max(1, 2_000_000 // max(len(members), 1) // 64)
    for start in range(0, G.order, chunk):
        gs = np.arange(start, min(start + chunk, G.order))
        conj = np.asarray(G.conj(members[None, :], gs[:, None]))
        conj.sort(axis=1)
        for g, row in zip(gs, conj):
            key = row.tobytes()
            if key not in seen:
                seen[key] = len(out)
                out.append((int(g), row.copy()))
    return out


def normalizer_order(G: FiniteGroup, members) -> int:
    return G.order // len(conjugate_subgroups(G, members))


def max_abelian_subgroup(G: FiniteGroup, cap=DEFAULT_SUBGROUP_SEARCH_CAP, node_budget=200_000) -> SubgroupRef:
    """An abelian subgroup of maximal order (ties: least sorted member list).

    Branch and bound over abelian subgroups S; any abelian subgroup containing S
    lies in C_G(S), which bounds the branch. A branch closes as soon as C_G(S)
    is itself abelian.
    """
    if G.order > cap:
        raise SearchBudgetExceeded(f"|G| = {G.order} above subgroup-search cap {cap}")
    if G.is_abelian():
        return SubgroupRef(G, G.elements)
    full = (1 << G.order) - 1
    cb = G.centralizer_bits
    z_bits = mask_to_int(np.isin(G.elements, G.center_members))

    def closure_bits(gens):
        return mask_to_int(np.isin(G.elements, subgroup_closure(G, gens)))

    def is_abelian_bits(bits):
        for x in int_to_indices(bits):
            if bits & ~cb(x):
                return False
        return True

    best_bits, best_size = z_bits, bin(z_bits).count("1")
    visited = set()
    nodes = 0

    def consider(bits):
        nonlocal best_bits, best_size
        size = bin(bits).count("1")
        if size > best_size or (size == best_size and sorted(int_to_indices(bits)) < sorted(int_to_indices(best_bits))):
            best_bits, best_size = bits, size

    def extend(gens, s_bits, c_bits):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceeded("abelian subgroup search budget exhausted", best=best_bits)
        if is_abelian_bits(c_bits):
            consider(c_bits)
            return
        for y in int_to_indices(c_bits & ~s_bits):
            c2 = c_bits & cb(y)
            if bin(c2).count("1") < best_size:
                continue
            s2 = closure_bits(gens + [y])
            if s2 in visited:
                continue
            visited.add(s2)
            extend(gens + [y], s2, c2)

    order_by = sorted(range(1, G.order), key=lambda x: (-bin(cb(x)).count("1"), x))
    for x in order_by:
        cx = cb(x)
        if bin(cx).count("1") < best_size or (x in set(G.center_members)):
            continue
        s = closure_bits(list(G.center_members) + [x])
        if s in visited:
            continue
        visited.add(s)
        extend(list(G.center_members) + [x], s, cx & full)
    return SubgroupRef(G, int_to_indices(best_bits))


# --- serialization ---------------------------------------------------------------

def group_to_json(G: GroupTable) -> str:
    """Canonical text form: size, tag and the row-major table."""
    return json.dumps({"size": G.order, "construction_tag": G.tag,
                       "mul": G.table.ravel().tolist()}, separators=(",", ":"))


def group_from_json(text: str) -> GroupTable:
    d = json.loads(text)
    n = d["size"]
    return GroupTable(np.asarray(d["mul"], dtype=np.int32).reshape(n, n), tag=d["construction_tag"])


def check_group_axioms(G: FiniteGroup, exhaustive_limit=512, samples=20_000, seed=0) -> bool:
    """Associativity, identity and inverse laws; exhaustive up to ``exhaustive_limit``."""
    n = G.order
    els = G.elements
    if not (np.array_equal(G.mul(0, els), els) and np.array_equal(G.mul(els, 0), els)):
        return False
    if not (np.all(G.mul(els, G.inv) == 0) and np.all(G.mul(G.inv, els) == 0)):
        return False
    if n <= exhaustive_limit and G.is_dense:
        t = G.table
        for a in range(n):
            # (a*b)*c == a*(b*c) for all b, c
            if not np.array_equal(t[t[a], :], t[a][t]):
                return False
        return True
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, (3, samples))
    return bool(np.all(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))))
