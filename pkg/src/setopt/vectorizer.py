"""Projected solution sets of the vectorized multiobjective problems.

Attaching a budget ``p`` of slack vectors ``y^1..y^p in F(x)`` to each
decision turns the set problem into a family of multiobjective
problems ordered by the product cone.  Decision membership reduces to
combinatorics over a candidate pool of minimal image points:

* Weak kind: a tuple survives a competitor exactly when some component
  escapes the competitor's strictly-dominated region, so membership at
  budget p is a hitting-set question over the escape sets (one per
  competitor), solved exactly by branch and bound.

* Min kind: a competitor dominates a tuple when every component is
  weakly dominated at the shift and at least one strictly so (with a
  witness distinct from the shifted component); the predicate is not
  monotone in the tuple's value set, so subsets are enumerated by
  increasing size under an explicit cap.

Pools are the minimal elements of finite images (exact at every
budget, any shift: replacing a tuple entry by a minimal point below it
preserves survival) and the minimal vertices of polytope images (exact
once the budget reaches the pool size; below that the verdict is sound
but flagged incomplete).  ``brute_force_vp`` re-derives membership
from the raw definitions over full images and serves as the oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .arith import Num, Vec, div, format_number, format_vector, ge, gt, \
    resolve_tol, veq, vscale, vsub
from .cone import DEFAULT_GAMMA, in_dual_cone, margin, r_epsilon_sq
from .errors import CapExceeded, ValidationError, WeightNotInDualCone
from .imagesets import (cover_by_sq_radius, min_elements, minimal_vertices,
                        point_margin_with_multipliers,
                        strong_membership_slack)
from .instance import Instance
from .solver_direct import WEAK as DIRECT_WEAK
from .solver_direct import solve_direct

VP_WEAK = "weak"
VP_MIN = "min"
VP_KINDS = (VP_WEAK, VP_MIN)

HITTING_CAP = 24
SUBSET_CAP = 2_000_000
TUPLE_CAP = 2_000_000


@dataclass(frozen=True)
class PoolResult:
    points: tuple
    complete: bool


@dataclass(frozen=True)
class ComponentWitness:
    point: Optional[tuple] = None
    multipliers: Optional[tuple] = None

    def to_json_dict(self) -> dict:
        return {
            "point": None if self.point is None else format_vector(self.point),
            "multipliers": (None if self.multipliers is None
                            else format_vector(self.multipliers)),
        }


@dataclass
class TupleCertificate:
    label: str
    tuple_points: tuple
    member: bool
    surviving: Optional[dict] = None       # competitor label -> component idx
    dominated_by: Optional[str] = None
    witnesses: Optional[tuple] = None      # ComponentWitness per component
    strict_component: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "member": self.member,
            "tuple": [format_vector(pt) for pt in self.tuple_points],
            "surviving": self.surviving,
            "dominated_by": self.dominated_by,
            "witnesses": (None if self.witnesses is None
                          else [w.to_json_dict() for w in self.witnesses]),
            "strict_component": self.strict_component,
        }


@dataclass
class VpReport:
    kind: str
    p: int
    epsilon: Num
    members: tuple
    certificates: dict = field(default_factory=dict)
    incomplete: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "epsilon": format_number(self.epsilon),
            "members": list(self.members),
            "incomplete": list(self.incomplete),
            "certificates": [self.certificates[lab].to_json_dict()
                             for lab in sorted(self.certificates)],
        }


@dataclass
class MinimalPResult:
    label: str
    kind: str
    epsilon: Num
    never: bool
    p_star: Optional[int] = None
    witness: Optional[TupleCertificate] = None
    reason: Optional[str] = None   # never: a competitor defeating every tuple
    incomplete: bool = False

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "epsilon": format_number(self.epsilon),
            "never": self.never,
            "p_star": self.p_star,
            "reason": self.reason,
            "incomplete": self.incomplete,
            "witness": (None if self.witness is None
                        else self.witness.to_json_dict()),
        }


class _MarginCache:
    """Point margins against every competitor image, memoized; every
    shifted comparison afterwards is a threshold on these numbers."""

    def __init__(self, inst: Instance, tol):
        self.inst = inst
        self.tol = tol
        self._pm = {}

    def pm(self, j: int, point: tuple):
        key = (j, point)
        if key not in self._pm:
            self._pm[key] = point_margin_with_multipliers(
                point, self.inst.images[j], self.inst.cone, self.tol)
        return self._pm[key]


def _instance_tol(inst: Instance, tol, eps) -> Num:
    return resolve_tol(tol, eps, *(v for img in inst.images
                                   for p in img.points for v in p))


def candidate_pool(inst: Instance, label: str, p: Optional[int] = None,
                   tol=None) -> PoolResult:
    """Minimal points (finite image) or minimal vertices (polytope).

    Finite pools certify membership at every budget; polytope pools
    are complete only once the budget reaches the pool size.
    """
    tol = _instance_tol(inst, tol, 0)
    img = inst.image_of(label)
    if img.is_finite:
        return PoolResult(min_elements(img, inst.cone, weak=False, tol=tol),
                          True)
    pool = minimal_vertices(img, inst.cone, tol)
    return PoolResult(pool, p is not None and p >= len(pool))


# ---------------------------------------------------------------------------
# Minimum hitting set (exact branch and bound)
# ---------------------------------------------------------------------------

def min_hitting_set(sets, limit: Optional[int] = None,
                    cap: int = HITTING_CAP):
    """Minimum-cardinality hitting set of a family of nonempty sets.

    With ``limit`` given, returns some hitting set of size <= limit or
    ``None`` when the minimum exceeds it.  Greedy warm start, branching
    on the smallest unhit set, lower bound from disjoint-set packing.
    """
    sets = [frozenset(s) for s in sets]
    if any(not s for s in sets):
        raise ValidationError("hitting set family must not contain empty sets")
    if not sets:
        return []
    universe = set().union(*sets)
    if len(universe) > cap:
        raise CapExceeded(f"hitting-set universe of {len(universe)} exceeds cap {cap}")

    uniq = []
    for s in sorted(set(sets), key=lambda s: (len(s), sorted(s))):
        if not any(t <= s for t in uniq):
            uniq.append(s)

    remaining = list(uniq)
    greedy = []
    while remaining:
        counts = {}
        for s in remaining:
            for e in s:
                counts[e] = counts.get(e, 0) + 1
        pick = min(counts, key=lambda e: (-counts[e], e))
        greedy.append(pick)
        remaining = [s for s in remaining if pick not in s]

    best = sorted(greedy)
    best_len = len(best)
    if limit is not None and limit + 1 < best_len:
        best, best_len = None, limit + 1

    def packing_bound(rem):
        used = set()
        count = 0
        for s in rem:
            if not (s & used):
                count += 1
                used |= s
        return count

    def search(rem, partial):
        nonlocal best, best_len
        if not rem:
            if len(partial) < best_len:
                best, best_len = sorted(partial), len(partial)
            return
        if len(partial) + packing_bound(rem) >= best_len:
            return
        target = min(rem, key=lambda s: (len(s), sorted(s)))
        for e in sorted(target):
            search([s for s in rem if e not in s], partial + [e])

    search(uniq, [])
    if best is not None and (limit is None or len(best) <= limit):
        return best
    return None


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def _shifted(point: Vec, eps: Num, cone) -> tuple:
    return vsub(point, vscale(eps, cone.e))


def _strict_witness(inst, j, point, eps, tol, cache) -> ComponentWitness:
    img = inst.images[j]
    if img.is_finite:
        for y in img.points:
            if gt(margin(y, point, inst.cone), eps, tol):
                return ComponentWitness(point=y)
        raise RuntimeError("internal: strict witness requested but absent")
    _, lam = cache.pm(j, point)
    return ComponentWitness(multipliers=lam)


def _weak_witness(inst, j, point, eps, tol) -> ComponentWitness:
    img = inst.images[j]
    if img.is_finite:
        for y in img.points:
            if ge(margin(y, point, inst.cone), eps, tol):
                return ComponentWitness(point=y)
        raise RuntimeError("internal: weak witness requested but absent")
    mu, lam = point_margin_with_multipliers(point, img, inst.cone, tol)
    return ComponentWitness(multipliers=lam)


def _extra_witness(inst, j, point, eps, tol) -> ComponentWitness:
    target = _shifted(point, eps, inst.cone)
    holds, wpoint, lam = strong_membership_slack(target, inst.images[j],
                                                 inst.cone, tol)
    if not holds:
        raise RuntimeError("internal: distinct witness requested but absent")
    return ComponentWitness(point=wpoint, multipliers=lam)


def _weak_tables(inst, pool, eps, tol, cache):
    """Escape sets: C[j] = pool indices not strictly dominated by x_j."""
    escape = []
    for j in range(len(inst.decisions)):
        escape.append(frozenset(
            i for i, q in enumerate(pool)
            if not gt(cache.pm(j, q)[0], eps, tol)))
    return escape


def _min_tables(inst, pool, eps, tol, cache):
    k = len(inst.decisions)
    weakdom = [[False] * len(pool) for _ in range(k)]
    extra = [[False] * len(pool) for _ in range(k)]
    for j in range(k):
        img = inst.images[j]
        for i, q in enumerate(pool):
            if not ge(cache.pm(j, q)[0], eps, tol):
                continue
            weakdom[j][i] = True
            if img.is_finite:
                shifted = _shifted(q, eps, inst.cone)
                extra[j][i] = any(
                    ge(margin(y, q, inst.cone), eps, tol)
                    and not veq(y, shifted, tol)
                    for y in img.points)
            else:
                holds, _, _ = strong_membership_slack(
                    _shifted(q, eps, inst.cone), img, inst.cone, tol)
                extra[j][i] = holds
    return weakdom, extra


def _pad(points, p):
    pts = list(points)
    while len(pts) < p:
        pts.append(pts[0])
    return tuple(pts[:p])


def _weak_decide(inst, idx, pool, p, eps, tol, cache, hitting_cap):
    label = inst.decisions[idx].label
    labels = inst.labels
    escape = _weak_tables(inst, pool, eps, tol, cache)
    for j, esc in enumerate(escape):
        if not esc:
            canonical = _pad(pool[:min(p, len(pool))], p)
            witnesses = tuple(_strict_witness(inst, j, q, eps, tol, cache)
                              for q in canonical)
            return TupleCertificate(label, canonical, False,
                                    dominated_by=labels[j],
                                    witnesses=witnesses)
    hit = min_hitting_set(escape, limit=p, cap=hitting_cap)
    if hit is not None:
        tuple_pts = _pad([pool[i] for i in hit], p)
        pool_idx = _pad(hit, p)
        surviving = {}
        for j, esc in enumerate(escape):
            surviving[labels[j]] = next(t for t in range(p)
                                        if pool_idx[t] in esc)
        return TupleCertificate(label, tuple_pts, True, surviving=surviving)
    canonical_idx = list(range(min(p, len(pool))))
    canonical = _pad([pool[i] for i in canonical_idx], p)
    dominator = next(j for j, esc in enumerate(escape)
                     if not (esc & set(canonical_idx)))
    witnesses = tuple(_strict_witness(inst, dominator, q, eps, tol, cache)
                      for q in canonical)
    return TupleCertificate(label, canonical, False,
                            dominated_by=labels[dominator],
                            witnesses=witnesses)


def _min_count(pool_size, kmax):
    return sum(math.comb(pool_size, s) for s in range(1, kmax + 1))


def _min_decide(inst, idx, pool, p, eps, tol, cache, subset_cap):
    label = inst.decisions[idx].label
    labels = inst.labels
    weakdom, extra = _min_tables(inst, pool, eps, tol, cache)
    k = len(inst.decisions)
    kmax = min(p, len(pool))
    if _min_count(len(pool), kmax) > subset_cap:
        raise CapExceeded(
            f"min-kind subset enumeration for {label!r} exceeds cap {subset_cap}")

    def dominator_of(subset):
        for j in range(k):
            if all(weakdom[j][i] for i in subset) and \
                    any(extra[j][i] for i in subset):
                return j
        return None

    for size in range(1, kmax + 1):
        for subset in itertools.combinations(range(len(pool)), size):
            if dominator_of(subset) is None:
                tuple_pts = _pad([pool[i] for i in subset], p)
                pool_idx = _pad(list(subset), p)
                surviving = {}
                for j in range(k):
                    pos = next((t for t in range(p)
                                if not weakdom[j][pool_idx[t]]), None)
                    surviving[labels[j]] = -1 if pos is None else pos
                return TupleCertificate(label, tuple_pts, True,
                                        surviving=surviving)
    canonical_idx = tuple(range(kmax))
    canonical = _pad([pool[i] for i in canonical_idx], p)
    dom = dominator_of(canonical_idx)
    witnesses = [None] * p
    strict_pos = None
    pool_idx = _pad(list(canonical_idx), p)
    for t in range(p):
        witnesses[t] = _weak_witness(inst, dom, canonical[t], eps, tol)
    for t in range(p):
        if extra[dom][pool_idx[t]]:
            witnesses[t] = _extra_witness(inst, dom, canonical[t], eps, tol)
            strict_pos = t
            break
    return TupleCertificate(label, canonical, False,
                            dominated_by=labels[dom],
                            witnesses=tuple(witnesses),
                            strict_component=strict_pos)


def membership_vp(inst: Instance, p: int, eps: Num = 0, kind: str = VP_WEAK,
                  tol=None, hitting_cap: int = HITTING_CAP,
                  subset_cap: int = SUBSET_CAP) -> VpReport:
    """Per-decision membership in the projected budget-p solution set."""
    if kind not in VP_KINDS:
        raise ValidationError(f"unknown vectorization kind {kind!r}")
    if p < 1:
        raise ValidationError("budget p must be at least 1")
    if eps < 0:
        raise ValidationError("eps must be nonnegative")
    tol = _instance_tol(inst, tol, eps)
    cache = _MarginCache(inst, tol)
    members = []
    certificates = {}
    incomplete = []
    for idx, dec in enumerate(inst.decisions):
        pr = candidate_pool(inst, dec.label, p, tol)
        if not pr.complete:
            incomplete.append(dec.label)
        if kind == VP_WEAK:
            cert = _weak_decide(inst, idx, pr.points, p, eps, tol, cache,
                                hitting_cap)
        else:
            cert = _min_decide(inst, idx, pr.points, p, eps, tol, cache,
                               subset_cap)
        certificates[dec.label] = cert
        if cert.member:
            members.append(dec.label)
    return VpReport(kind, p, eps, tuple(members), certificates,
                    tuple(incomplete))


def minimal_p(inst: Instance, label: str, eps: Num = 0, kind: str = VP_WEAK,
              tol=None, hitting_cap: int = HITTING_CAP,
              subset_cap: int = SUBSET_CAP) -> MinimalPResult:
    """Smallest budget at which the decision joins the projected
    solution set, or Never when no budget works."""
    if kind not in VP_KINDS:
        raise ValidationError(f"unknown vectorization kind {kind!r}")
    if eps < 0:
        raise ValidationError("eps must be nonnegative")
    tol = _instance_tol(inst, tol, eps)
    cache = _MarginCache(inst, tol)
    idx = inst.index_of(label)
    img = inst.images[idx]
    pr = candidate_pool(inst, label, None, tol)
    pool = pr.points
    incomplete = not img.is_finite
    if kind == VP_WEAK:
        escape = _weak_tables(inst, pool, eps, tol, cache)
        for j, esc in enumerate(escape):
            if not esc:
                # every pool element strictly dominated: no tuple at any
                # budget survives this competitor
                return MinimalPResult(label, kind, eps, never=True,
                                      reason=inst.labels[j],
                                      incomplete=False)
        hit = min_hitting_set(escape, cap=hitting_cap)
        p_star = len(hit)
        cert = _weak_decide(inst, idx, pool, p_star, eps, tol, cache,
                            hitting_cap)
        # vertex pools make p_star an upper bound only: a non-vertex
        # minimal point could hit more escape sets at once
        return MinimalPResult(label, kind, eps, never=False, p_star=p_star,
                              witness=cert,
                              incomplete=incomplete and p_star > 1)
    weakdom, extra = _min_tables(inst, pool, eps, tol, cache)
    if _min_count(len(pool), len(pool)) > subset_cap:
        raise CapExceeded(f"subset enumeration for {label!r} exceeds cap")
    k = len(inst.decisions)
    for size in range(1, len(pool) + 1):
        for subset in itertools.combinations(range(len(pool)), size):
            dominated = any(
                all(weakdom[j][i] for i in subset) and
                any(extra[j][i] for i in subset)
                for j in range(k))
            if not dominated:
                cert = _min_decide(inst, idx, pool, size, eps, tol, cache,
                                   subset_cap)
                return MinimalPResult(label, kind, eps, never=False,
                                      p_star=size, witness=cert,
                                      incomplete=incomplete and size > 1)
    # vertex pools cannot certify a Never verdict for the min kind:
    # non-vertex tuples remain unexplored
    return MinimalPResult(label, kind, eps, never=True,
                          incomplete=incomplete)


# ---------------------------------------------------------------------------
# Covering-based budget bound
# ---------------------------------------------------------------------------

def covering_p_bound(inst: Instance, label: str, eps: Num,
                     gamma: Num = DEFAULT_GAMMA, tol=None) -> int:
    """Budget from the internal covering number of the image at the
    safe-ball radius; always sufficient for weak membership at eps."""
    if eps <= 0:
        raise ValidationError("eps must be positive")
    img = inst.image_of(label)
    if not img.is_finite:
        raise ValidationError("covering budgets need a finite image")
    tol = _instance_tol(inst, tol, eps)
    radius_sq = div(r_epsilon_sq(inst.cone, eps, gamma), 4)
    return cover_by_sq_radius(img.points, radius_sq, tol=tol).count


def covering_p_bound_global(inst: Instance, eps: Num,
                            gamma: Num = DEFAULT_GAMMA, tol=None) -> int:
    """Max of the per-decision bounds over the weakly minimal members."""
    members = solve_direct(inst, DIRECT_WEAK, 0, tol).members
    return max(covering_p_bound(inst, lab, eps, gamma, tol)
               for lab in members)


# ---------------------------------------------------------------------------
# Weighted-sum scalarization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedSumSolution:
    label: str
    tuple_points: tuple
    value: Num

    def to_json_dict(self) -> dict:
        return {"label": self.label,
                "tuple": [format_vector(p) for p in self.tuple_points],
                "value": format_number(self.value)}


def solve_weighted_sum(inst: Instance, p: int, weights, tol=None):
    """Minimize sum_i w_i . y^i over decisions and image tuples.

    The objective separates across components, so each decision's inner
    optimum is a sum of independent point scans; every returned
    decision is weakly minimal for the budget-p problem.
    """
    weights = [tuple(w) for w in weights]
    if len(weights) != p:
        raise ValidationError(f"expected {p} weight vectors, got {len(weights)}")
    if all(all(v == 0 for v in w) for w in weights):
        raise ValidationError("weights must not all be zero")
    tol = _instance_tol(inst, tol, 0)
    for w in weights:
        if len(w) != inst.m:
            raise ValidationError("weight dimension differs from image dimension")
        if not in_dual_cone(w, inst.cone, tol):
            raise WeightNotInDualCone(f"weight {w!r} is outside the dual cone")

    scored = []
    for dec, img in zip(inst.decisions, inst.images):
        total = 0
        picks = []
        for w in weights:
            best_pt, best_val = None, None
            for y in img.points:
                val = sum(a * b for a, b in zip(w, y))
                if best_val is None or val < best_val:
                    best_pt, best_val = y, val
            total += best_val
            picks.append(best_pt)
        scored.append((dec.label, tuple(picks), total))
    best_total = min(s[2] for s in scored)
    return [WeightedSumSolution(lab, pts, val)
            for lab, pts, val in scored if val <= best_total + tol]


# ---------------------------------------------------------------------------
# Definition-level oracle
# ---------------------------------------------------------------------------

def brute_force_vp(inst: Instance, p: int, eps: Num = 0, kind: str = VP_WEAK,
                   tol=None, cap: int = TUPLE_CAP) -> VpReport:
    """Reference semantics for ``membership_vp`` on finite images.

    Candidate tuples are enumerated over the full image (no pool), and
    a competitor defeats a tuple per the raw product-order definition.
    Because each dominating component is drawn independently from the
    competitor's image, tuple-existence on the competitor side reduces
    to per-component existence; this is a logical identity, not an
    approximation, and keeps the oracle independent of the pool and
    hitting-set machinery it validates.
    """
    if kind not in VP_KINDS:
        raise ValidationError(f"unknown vectorization kind {kind!r}")
    if p < 1:
        raise ValidationError("budget p must be at least 1")
    if any(not img.is_finite for img in inst.images):
        raise ValidationError("the brute-force oracle needs finite images")
    tol = _instance_tol(inst, tol, eps)
    total = sum(len(img.points) ** p for img in inst.images)
    if total > cap:
        raise CapExceeded(f"{total} candidate tuples exceed cap {cap}")

    k = len(inst.decisions)
    members = []
    for idx, dec in enumerate(inst.decisions):
        pts = inst.images[idx].points
        strict = [[False] * len(pts) for _ in range(k)]
        weakdom = [[False] * len(pts) for _ in range(k)]
        extra = [[False] * len(pts) for _ in range(k)]
        for j in range(k):
            for qi, q in enumerate(pts):
                shifted = _shifted(q, eps, inst.cone)
                for y in inst.images[j].points:
                    mg = margin(y, q, inst.cone)
                    if gt(mg, eps, tol):
                        strict[j][qi] = True
                    if ge(mg, eps, tol):
                        weakdom[j][qi] = True
                        if not veq(y, shifted, tol):
                            extra[j][qi] = True
        found = False
        for tup in itertools.product(range(len(pts)), repeat=p):
            if kind == VP_WEAK:
                dominated = any(all(strict[j][t] for t in tup)
                                for j in range(k))
            else:
                dominated = any(
                    all(weakdom[j][t] for t in tup) and
                    any(extra[j][t] for t in tup)
                    for j in range(k))
            if not dominated:
                found = True
                break
        if found:
            members.append(dec.label)
    return VpReport(kind, p, eps, tuple(members), {}, ())
