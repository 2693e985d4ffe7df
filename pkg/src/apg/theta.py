"""Route a group to the strongest available method for its minimal partition size.

Auto order: abelian, named family, AC-group with centralizers of size >= 3,
Frobenius group with complement of order >= 3, self-centralizing involution,
exhaustive search up to ``exact_limit`` (and a budgeted attempt a little
beyond), then bounds only.
"""
from __future__ import annotations


from .errors import APGError, UnsupportedFamily
from .families import FamilyId, ac_group_check, ac_partition, family_theta, frobenius_detect, frobenius_theta
from .groups import FiniteGroup
from .nap import find_abelian_partition, self_centralizing_involution
from .partition import (AbelianPartition, Certificate, ThetaResult, abelian_subgroup_partition, align_anchors,
                        center_coset_partition,
                        compute_bounds, exact_theta)

EXACT_LIMIT = 60
# beyond EXACT_LIMIT a small-budget exhaustive attempt is still made
BUDGETED_EXACT_LIMIT = 256
BUDGETED_EXACT_NODES = 200_000
MODES = ("auto", "exact", "bounds", "family")


def abelian_result(G: FiniteGroup) -> ThetaResult:
    return ThetaResult(1, AbelianPartition([list(range(G.order))]), Certificate("Exhaustive", [0], {"route": "abelian"}))


def bounds_result(G: FiniteGroup) -> ThetaResult:
    """Bounds plus the best explicit partition at hand; certified when they meet."""
    b = compute_bounds(G)
    P = None
    if len(G.center_members) >= 2:
        P = center_coset_partition(G)
        if b.abelian_order is not None and b.ub_abelian_cosets < len(P):
            P = abelian_subgroup_partition(G)
    if P is None or len(P) > b.best_lb:
        try:
            Q = find_abelian_partition(G) if G.is_dense else None
        except APGError:
            Q = None
        if Q is not None and (P is None or len(Q) < len(P)):
            P = Q
    if P is not None and b.n_exact and len(P) == b.lb_noncommuting:
        anchors = align_anchors(P, [(None, w) for w in b.noncommuting_witness])
        return ThetaResult(len(P), P, Certificate("SandwichedBounds", anchors, {"n": b.lb_noncommuting}), bounds=b)
    detail = {"upper": len(P) if P is not None else None}
    return ThetaResult(None, P, Certificate("BoundsOnly", [], detail), status="bounds-only", bounds=b)


def theta(G: FiniteGroup, mode: str = "auto", family: FamilyId | None = None,
          exact_limit: int = EXACT_LIMIT, budget: int = 5_000_000) -> ThetaResult:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "exact":
        return exact_theta(G, budget)
    if mode == "bounds":
        return bounds_result(G)
    if mode == "family":
        if family is None:
            raise UnsupportedFamily("family mode needs a named family")
        return family_theta(family, G)

    if G.is_abelian():
        return abelian_result(G)
    if family is not None:
        try:
            return family_theta(family, G)
        except UnsupportedFamily:
            pass
    if G.order <= 20_000 and ac_group_check(G):
        smallest = min(int(G.centralizer_mask(x).sum()) for x in range(G.order))
        if smallest >= 3:
            return ac_partition(G)
    if G.order <= 2_000:
        found = frobenius_detect(G)
        if found is not None and found[1].order >= 3:
            return frobenius_theta(G, solver=lambda H: theta(H, exact_limit=exact_limit, budget=budget))
    sci = self_centralizing_involution(G)
    if sci is not None:
        return ThetaResult(0, None, Certificate("NapSelfCentralizing", [sci.params["witness"]], sci.counts))
    if G.order <= exact_limit:
        return exact_theta(G, budget)
    if G.order <= BUDGETED_EXACT_LIMIT:
        r = exact_theta(G, min(budget, BUDGETED_EXACT_NODES))
        if r.status == "certified":
            return r
    return bounds_result(G)


def theta_of(G: FiniteGroup, **kw) -> int | None:
    return theta(G, **kw).value


__all__ = ["theta", "theta_of", "bounds_result", "abelian_result", "MODES"]
