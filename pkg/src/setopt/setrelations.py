"""The lower set less relation and its strong and strict variants.

``A rel (B - eps*e)`` is decided pointwise over the points (or
vertices) of B:

* ``lower``        B - eps*e inside A + K         <=>  eps <= set_margin
* ``lower_strict`` B - eps*e inside A + int K     <=>  eps <  set_margin
* ``lower_strong`` B - eps*e inside A + K \\ {0}   per-target slack test

Vertex reduction on the right argument is valid because A + K,
A + int K, and A + K \\ {0} are convex whenever A is (pointedness keeps
K \\ {0} convex).  Every verdict carries a certificate that re-checks
independently of the solver path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import Num, Vec, dot, ge, gt, resolve_tol, vscale, vsub
from .cone import Cone, margin
from .errors import DimMismatch
from .imagesets import (ImageSet, point_margin_with_multipliers,
                        strong_membership_slack)

LOWER = "lower"
LOWER_STRONG = "lower_strong"
LOWER_STRICT = "lower_strict"

RELATION_KINDS = (LOWER, LOWER_STRONG, LOWER_STRICT)


@dataclass(frozen=True)
class RelationWitness:
    target: tuple                      # point/vertex of B (unshifted)
    point: Optional[tuple] = None      # witness a in A (finite left arg)
    multipliers: Optional[tuple] = None  # convex weights over A's vertices


@dataclass(frozen=True)
class RelationCertificate:
    holds: bool
    kind: str
    epsilon: Num
    witnesses: tuple = ()
    failing_target: Optional[tuple] = None


def set_margin(a: ImageSet, b: ImageSet, cone: Cone, tol=None) -> Num:
    """Largest eps with ``A lower-set-less (B - eps*e)``."""
    if a.m != b.m:
        raise DimMismatch("images of different dimension")
    return min(point_margin_with_multipliers(pt, a, cone, tol)[0]
               for pt in b.points)


def _shifted(target: Vec, eps: Num, cone: Cone) -> tuple:
    return vsub(target, vscale(eps, cone.e))


def set_relation(a: ImageSet, b: ImageSet, cone: Cone, kind: str,
                 eps: Num = 0, tol=None):
    """Decide the eps-shifted relation; returns ``(holds, certificate)``."""
    if kind not in RELATION_KINDS:
        raise ValueError(f"unknown relation kind {kind!r}")
    if a.m != b.m:
        raise DimMismatch("images of different dimension")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    tol = resolve_tol(tol, eps, *(v for p in a.points for v in p),
                      *(v for p in b.points for v in p))
    witnesses = []
    for target in b.points:
        if kind == LOWER_STRONG:
            holds, point, lam = strong_membership_slack(
                _shifted(target, eps, cone), a, cone, tol)
            if not holds:
                return False, RelationCertificate(False, kind, eps,
                                                  failing_target=target)
            witnesses.append(RelationWitness(target, point, lam))
            continue
        mu, lam = point_margin_with_multipliers(target, a, cone, tol)
        ok = gt(mu, eps, tol) if kind == LOWER_STRICT else ge(mu, eps, tol)
        if not ok:
            return False, RelationCertificate(False, kind, eps,
                                              failing_target=target)
        point = None
        if a.is_finite:
            point = max(a.points, key=lambda p: margin(p, target, cone))
        witnesses.append(RelationWitness(target, point, lam))
    return True, RelationCertificate(True, kind, eps, tuple(witnesses))


def verify_certificate(a: ImageSet, b: ImageSet, cone: Cone,
                       cert: RelationCertificate, tol=None) -> bool:
    """Re-check a certificate from its raw ingredients only."""
    tol = resolve_tol(tol, cert.epsilon, *(v for p in a.points for v in p))
    eps = cert.epsilon
    if not cert.holds:
        target = cert.failing_target
        if target is None or tuple(target) not in set(b.points):
            return False
        shifted = _shifted(target, eps, cone)
        if cert.kind == LOWER_STRONG:
            holds, _, _ = strong_membership_slack(shifted, a, cone, tol)
            return not holds
        mu, _ = point_margin_with_multipliers(target, a, cone, tol)
        return not (gt(mu, eps, tol) if cert.kind == LOWER_STRICT
                    else ge(mu, eps, tol))
    targets = {tuple(w.target) for w in cert.witnesses}
    if targets != set(b.points):
        return False
    for w in cert.witnesses:
        shifted = _shifted(w.target, eps, cone)
        if w.point is not None:
            if tuple(w.point) not in set(a.points):
                return False
            mg = margin(w.point, w.target, cone)
            if cert.kind == LOWER_STRICT and not gt(mg, eps, tol):
                return False
            if cert.kind == LOWER and not ge(mg, eps, tol):
                return False
            if cert.kind == LOWER_STRONG:
                if not ge(mg, eps, tol):
                    return False
                if all(abs(x - y) <= tol for x, y in zip(w.point, shifted)):
                    return False
        elif w.multipliers is not None:
            lam = w.multipliers
            if len(lam) != len(a.points):
                return False
            if any(l < -tol for l in lam) or abs(sum(lam) - 1) > tol:
                return False
            y = tuple(sum(l * v[d] for l, v in zip(lam, a.points))
                      for d in range(a.m))
            diff = vsub(shifted, y)
            slacks = [dot(row, diff) for row in cone.rows]
            if cert.kind == LOWER and not all(ge(s, 0, tol) for s in slacks):
                return False
            # margin-LP multipliers at optimum mu > eps leave every slack
            # at least (mu - eps) * a_j.e, hence strictly positive
            if cert.kind == LOWER_STRICT and not all(s > 0 for s in slacks):
                return False
            if cert.kind == LOWER_STRONG:
                if not all(ge(s, 0, tol) for s in slacks):
                    return False
                if not gt(sum(slacks), 0, tol):
                    return False
        else:
            return False
    return True
