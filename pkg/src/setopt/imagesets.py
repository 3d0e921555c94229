"""Image sets: finite point lists and polytopes given by vertices.

Operations on the values of a set-valued objective: minimal and weakly
minimal elements, the point margin against a shifted set, Hausdorff
distance, internal covering numbers, extreme-point pruning, and the
domination (external stability) check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import (Num, Vec, dist_sq, dot, ge, gt, num_finite,
                    resolve_tol)
from .cone import Cone, margin
from .errors import DimMismatch, EmptyImage, ValidationError
from .lp import LinearProgram, lp_feasible, lp_maximize

FINITE = "finite"
POLYTOPE = "polytope"


@dataclass(frozen=True)
class ImageSet:
    kind: str                 # "finite" or "polytope"
    points: tuple             # points, or polytope vertices

    @property
    def m(self) -> int:
        return len(self.points[0])

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE


def _checked(points) -> tuple:
    pts = tuple(tuple(p) for p in points)
    if not pts:
        raise EmptyImage("image set must be nonempty")
    m = len(pts[0])
    if m == 0:
        raise EmptyImage("points must have at least one coordinate")
    for p in pts:
        if len(p) != m:
            raise DimMismatch("points of mixed dimension in one image")
        for v in p:
            if not num_finite(v):
                raise ValidationError("non-finite coordinate in image set")
    return pts


def finite_set(points) -> ImageSet:
    return ImageSet(FINITE, _checked(points))


def polytope(vertices) -> ImageSet:
    return ImageSet(POLYTOPE, _checked(vertices))


def _dedupe(points):
    seen = []
    for p in points:
        if p not in seen:
            seen.append(p)
    return seen


def min_elements(image: ImageSet, cone: Cone, weak: bool = False,
                 tol=None) -> tuple:
    """Minimal (or, with ``weak=True``, weakly minimal) points of a finite set.

    A point survives when no distinct point dominates it through
    K minus the origin (interior of K for the weak variant).
    """
    if not image.is_finite:
        raise ValidationError("min_elements is defined for finite images only")
    tol = resolve_tol(tol, *(v for p in image.points for v in p))
    pts = _dedupe(image.points)
    kept = []
    for p in pts:
        dominated = False
        for q in pts:
            if q == p:
                continue
            mg = margin(q, p, cone)
            if (gt(mg, 0, tol) if weak else ge(mg, 0, tol)):
                dominated = True
                break
        if not dominated:
            kept.append(p)
    return tuple(kept)


def point_margin(b: Vec, image: ImageSet, cone: Cone, tol=None) -> Num:
    """Largest eps with ``b - eps*e`` inside ``image + K``.

    Finite images reduce to a max of margins; polytopes solve a small
    LP over convex multipliers.  Returns ``-inf`` only if the LP is
    numerically degenerate (impossible for finite images).
    """
    mu, _ = point_margin_with_multipliers(b, image, cone, tol)
    return mu


def point_margin_with_multipliers(b: Vec, image: ImageSet, cone: Cone,
                                  tol=None):
    """As ``point_margin`` but also returns the convex multipliers
    (``None`` for finite images, where the witness is the argmax point)."""
    if len(b) != cone.m:
        raise DimMismatch("point dimension differs from cone dimension")
    if image.is_finite:
        return max(margin(a, b, cone) for a in image.points), None
    verts = image.points
    k = len(verts)
    row_e = cone.row_dot_e()
    # max eps  s.t.  sum(lam) = 1,  A(b - eps*e - V lam) >= 0,  lam >= 0
    ge_lhs = []
    ge_rhs = []
    for row, de in zip(cone.rows, row_e):
        ge_lhs.append(tuple([-de] + [-dot(row, v) for v in verts]))
        ge_rhs.append(-dot(row, b))
    prog = LinearProgram(
        objective=tuple([1] + [0] * k),
        eq_lhs=(tuple([0] + [1] * k),),
        eq_rhs=(1,),
        ge_lhs=tuple(ge_lhs),
        ge_rhs=tuple(ge_rhs),
        lower_bounds=tuple([None] + [0] * k),
    )
    out = lp_maximize(prog, tol=tol)
    if not out.is_optimal:
        return float("-inf"), None
    return out.value, tuple(out.point[1:])


def strong_membership_slack(target: Vec, image: ImageSet, cone: Cone,
                            tol=None):
    """Decide ``target in image + K \\ {0}`` with a verifiable witness.

    Finite images: scan for a distinct dominating point.  Polytopes:
    maximize the total cone slack ``sum_j a_j.(target - V lam)`` over
    the membership system; pointedness (full row rank) makes a zero
    optimum collapse the cone element to the origin, so the relation
    holds exactly when the optimum is positive.

    Returns ``(holds, witness_point, multipliers)``.
    """
    tol = resolve_tol(tol, *target, *(v for p in image.points for v in p))
    if image.is_finite:
        for a in image.points:
            if ge(margin(a, target, cone), 0, tol) and not _close(a, target, tol):
                return True, a, None
        return False, None, None
    verts = image.points
    k = len(verts)
    total = tuple(sum(col) for col in zip(*cone.rows))  # sum_j a_j
    ge_lhs = []
    ge_rhs = []
    for row in cone.rows:
        ge_lhs.append(tuple(-dot(row, v) for v in verts))
        ge_rhs.append(-dot(row, target))
    prog = LinearProgram(
        objective=tuple(-dot(total, v) for v in verts),
        eq_lhs=((1,) * k,),
        eq_rhs=(1,),
        ge_lhs=tuple(ge_lhs),
        ge_rhs=tuple(ge_rhs),
        lower_bounds=(0,) * k,
    )
    out = lp_maximize(prog, tol=tol)
    if not out.is_optimal:
        return False, None, None
    value = out.value + dot(total, target)
    if gt(value, 0, tol):
        return True, None, tuple(out.point)
    return False, None, None


def _close(u, v, tol):
    return all(abs(a - b) <= tol for a, b in zip(u, v))


def minimal_vertices(image: ImageSet, cone: Cone, tol=None) -> tuple:
    """Vertices not dominated (through K minus the origin) by any point
    of their own polytope."""
    if image.is_finite:
        raise ValidationError("minimal_vertices expects a polytope image")
    kept = []
    for v in image.points:
        holds, _, _ = strong_membership_slack(v, image, cone, tol)
        if not holds:
            kept.append(v)
    return tuple(kept)


def directed_hausdorff_sq(points_a, points_b) -> Num:
    return max(min(dist_sq(a, b) for b in points_b) for a in points_a)


def hausdorff_sq(a: ImageSet, b: ImageSet) -> Num:
    if not (a.is_finite and b.is_finite):
        raise ValidationError("hausdorff distance is defined for finite images")
    if a.m != b.m:
        raise DimMismatch("images of different dimension")
    return max(directed_hausdorff_sq(a.points, b.points),
               directed_hausdorff_sq(b.points, a.points))


def hausdorff(a: ImageSet, b: ImageSet) -> float:
    return math.sqrt(float(hausdorff_sq(a, b)))


@dataclass(frozen=True)
class CoveringResult:
    count: int
    centers: tuple
    exact: bool


EXACT_COVER_CAP = 24


def covering_number_internal(image: ImageSet, eps: Num,
                             exact_cap: int = EXACT_COVER_CAP,
                             tol=None) -> CoveringResult:
    """Fewest points of the set itself whose eps-balls cover the set.

    Centers are restricted to the set, so the count sits between the
    free-center covering numbers at radii eps and eps/2 (a free center
    can be swapped for any set point its ball contains, doubling the
    radius); any overestimate of the budget it feeds stays valid.
    Exact branch-and-bound up to ``exact_cap`` distinct points, greedy
    beyond that (flagged ``exact=False``).
    """
    if not image.is_finite:
        raise ValidationError("covering numbers are computed for finite images")
    if eps <= 0:
        raise ValidationError("eps must be positive")
    return cover_by_sq_radius(image.points, eps * eps, exact_cap, tol)


def cover_by_sq_radius(points, radius_sq: Num, exact_cap: int = EXACT_COVER_CAP,
                       tol=None) -> CoveringResult:
    tol = resolve_tol(tol, *(v for p in points for v in p), radius_sq)
    pts = _dedupe(tuple(tuple(p) for p in points))
    n = len(pts)
    cover = [frozenset(j for j in range(n)
                       if dist_sq(pts[i], pts[j]) <= radius_sq + tol)
             for i in range(n)]
    chosen = _greedy_cover(cover, n)
    exact = n <= exact_cap
    if exact:
        chosen = _exact_cover(cover, n, chosen)
    return CoveringResult(len(chosen), tuple(pts[i] for i in chosen), exact)


def _greedy_cover(cover, n):
    uncovered = set(range(n))
    chosen = []
    while uncovered:
        best, best_gain = None, -1
        for i in range(n):
            gain = len(cover[i] & uncovered)
            if gain > best_gain:
                best, best_gain = i, gain
        chosen.append(best)
        uncovered -= cover[best]
    return chosen


def _exact_cover(cover, n, incumbent):
    """Branch-and-bound minimum set cover; branches on the element with
    the fewest candidate centers."""
    best = list(incumbent)

    def covers_of(elem, uncovered):
        return [i for i in range(n) if elem in cover[i]]

    def search(uncovered, chosen):
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        max_gain = max(len(cover[i] & uncovered) for i in range(n))
        lower = (len(uncovered) + max_gain - 1) // max_gain
        if len(chosen) + lower >= len(best):
            return
        elem = min(uncovered, key=lambda u: (len(covers_of(u, uncovered)), u))
        for i in covers_of(elem, uncovered):
            search(uncovered - cover[i], chosen + [i])

    search(frozenset(range(n)), [])
    return best


def prune_to_extreme(vertices, tol=None) -> tuple:
    """Drop duplicates and every point expressible as a convex
    combination of the others (idempotent)."""
    pts = _dedupe(tuple(tuple(p) for p in vertices))
    if not pts:
        raise EmptyImage("vertex list must be nonempty")
    if len(pts) == 1:
        return tuple(pts)
    tol = resolve_tol(tol, *(v for p in pts for v in p))
    kept = []
    for idx, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != idx]
        if not _in_hull(p, others, tol):
            kept.append(p)
    return tuple(kept)


def _in_hull(p, others, tol) -> bool:
    k = len(others)
    m = len(p)
    eq_lhs = [(1,) * k]
    eq_rhs = [1]
    for d in range(m):
        eq_lhs.append(tuple(q[d] for q in others))
        eq_rhs.append(p[d])
    prog = LinearProgram(
        objective=(0,) * k,
        eq_lhs=tuple(eq_lhs),
        eq_rhs=tuple(eq_rhs),
        lower_bounds=(0,) * k,
    )
    return lp_feasible(prog, tol=tol).feasible


def domination_check(image: ImageSet, cone: Cone, tol=None) -> bool:
    """External stability: minimal elements exist and dominate the set.

    Must hold for every nonempty finite image under a pointed closed
    convex cone; exposed as a test oracle.
    """
    tol = resolve_tol(tol, *(v for p in image.points for v in p))
    mins = min_elements(image, cone, weak=False, tol=tol)
    if not mins:
        return False
    for a in image.points:
        if not any(ge(margin(mn, a, cone), 0, tol) for mn in mins):
            return False
    return True
