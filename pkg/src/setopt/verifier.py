"""Property suites: every library invariant exercised over built-in and
seeded random instances, plus the convex-graph budget experiment.

Failures are report content, never exceptions; a failing check always
carries a replayable counterexample payload (instance id, parameters,
offending labels).  Checks on finite instances are hard (the theory is
exact there); the convex experiment's disagreements are soft findings
because the grid restriction breaks its convexity hypothesis.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import imagesets, instance as instance_mod, setrelations, solver_direct, vectorizer
from .arith import as_float, dot, format_number, ge, gt
from .cone import margin, r_epsilon, validate_cone
from .errors import SetoptError
from .imagesets import finite_set
from .lp import LinearProgram, lp_feasible, lp_maximize


@dataclass
class CheckResult:
    name: str
    instance_id: str
    passed: bool
    hard: bool = True
    counterexample: Optional[dict] = None
    seconds: float = 0.0

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "instance": self.instance_id,
            "passed": self.passed,
            "hard": self.hard,
            "counterexample": self.counterexample,
        }
        if include_timing:
            out["seconds"] = self.seconds
        return out


@dataclass
class SuiteReport:
    checks: list = field(default_factory=list)

    @property
    def hard_failures(self) -> list:
        return [c for c in self.checks if not c.passed and c.hard]

    @property
    def soft_findings(self) -> list:
        return [c for c in self.checks if not c.passed and not c.hard]

    def to_json_dict(self, include_timing: bool = False) -> dict:
        return {
            "total": len(self.checks),
            "failed_hard": len(self.hard_failures),
            "failed_soft": len(self.soft_findings),
            "checks": [c.to_json_dict(include_timing) for c in self.checks],
        }


@dataclass
class SuiteConfig:
    seeds: tuple = (11, 22, 33, 44, 55, 66)
    random_count: int = 6
    image_max: int = 4
    eps_grid: tuple = (Fraction(1, 7), Fraction(7, 10))
    p_range: tuple = (1, 2, 3)
    polytope_seeds: tuple = (3, 4)
    polytope_grid: int = 4
    exact: bool = True


@dataclass
class ConvexExperimentConfig:
    seed: int = 0
    count: int = 10
    grid: int = 17
    n: int = 1
    exact: bool = False


def _labeled_instances(config: SuiteConfig):
    ex = config.exact
    out = [
        ("mfdvp", instance_mod.make_example("mfdvp", exact=ex)),
        ("strict_min", instance_mod.make_example("strict_min", {"g": 5}, exact=ex)),
        ("cantor[T=4,N=6]",
         instance_mod.make_example("cantor", {"T": 4, "N": 6}, exact=ex)),
    ]
    for seed in config.seeds:
        out.append((f"random_finite[seed={seed}]", instance_mod.make_example(
            "random_finite",
            {"seed": seed, "count": config.random_count,
             "s_max": config.image_max}, exact=ex)))
    return out


def _polytope_instances(config: SuiteConfig):
    out = [("mfdvp_polytope",
            instance_mod.make_example("mfdvp_polytope", exact=config.exact)),
           ("t_one[g=5]",
            instance_mod.make_example("t_one", {"g": 5}, exact=config.exact))]
    for seed in config.polytope_seeds:
        out.append((f"convex_polyhedral[seed={seed}]",
                    instance_mod.make_example(
                        "convex_polyhedral",
                        {"seed": seed, "g": config.polytope_grid},
                        exact=config.exact)))
    return out


def _result(name, inst_id, passed, counterexample=None, hard=True,
            started=None):
    return CheckResult(name, inst_id, passed, hard, counterexample,
                       0.0 if started is None else time.perf_counter() - started)


# ---------------------------------------------------------------------------
# Linear-programming checks
# ---------------------------------------------------------------------------

def _random_standard_lp(rng):
    nv = rng.randint(2, 5)
    nrows = rng.randint(1, 3)
    rows = tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(nv))
                 for _ in range(nrows))
    rhs = tuple(Fraction(rng.randint(-4, 4)) for _ in range(nrows))
    obj = tuple(Fraction(rng.randint(-3, 3)) for _ in range(nv))
    return LinearProgram(objective=obj, eq_lhs=rows, eq_rhs=rhs,
                         lower_bounds=(Fraction(0),) * nv)


def _enumerate_basic_optimum(prog):
    """Best objective over basic feasible solutions (independent oracle)."""
    nv = prog.num_vars
    rows = [list(r) for r in prog.eq_lhs]
    rhs = list(prog.eq_rhs)
    m = len(rows)
    best = None
    subsets = (cols for size in range(min(m, nv) + 1)
               for cols in itertools.combinations(range(nv), size))
    for cols in subsets:
        sol = _solve_square(rows, rhs, cols)
        if sol is None:
            continue
        point = [Fraction(0)] * nv
        for c, v in zip(cols, sol):
            point[c] = v
        if any(v < 0 for v in point):
            continue
        if any(sum(r[j] * point[j] for j in range(nv)) != b
               for r, b in zip(rows, rhs)):
            continue
        val = sum(o * v for o, v in zip(prog.objective, point))
        if best is None or val > best:
            best = val
    return best


def _solve_square(rows, rhs, cols):
    m = len(rows)
    a = [[rows[i][c] for c in cols] + [rhs[i]] for i in range(m)]
    n = len(cols)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[r], a[piv] = a[piv], a[r]
        a[r] = [v / a[r][c] for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        r += 1
    for i in range(r, m):
        if a[i][-1] != 0:
            return None
    return [a[i][-1] for i in range(r)]


def _check_lp(config: SuiteConfig):
    results = []
    for seed in config.seeds:
        rng = random.Random(seed * 7919)
        started = time.perf_counter()
        ok, ce = True, None
        for trial in range(8):
            prog = _random_standard_lp(rng)
            feas = lp_feasible(prog, tol=0)
            zero = LinearProgram(objective=(Fraction(0),) * prog.num_vars,
                                 eq_lhs=prog.eq_lhs, eq_rhs=prog.eq_rhs,
                                 lower_bounds=prog.lower_bounds)
            out0 = lp_maximize(zero, tol=0)
            if feas.feasible != out0.is_optimal:
                ok, ce = False, {"trial": trial, "law": "two-phase"}
                break
            out = lp_maximize(prog, tol=0)
            out_again = lp_maximize(prog, tol=0)
            if (out.status, out.value) != (out_again.status, out_again.value):
                ok, ce = False, {"trial": trial, "law": "determinism"}
                break
            oracle = _enumerate_basic_optimum(prog)
            if out.is_optimal:
                if oracle is None or out.value != oracle:
                    ok, ce = False, {"trial": trial, "law": "basic-solution",
                                     "simplex": format_number(out.value),
                                     "oracle": None if oracle is None
                                     else format_number(oracle)}
                    break
            elif out.status == "infeasible" and oracle is not None:
                ok, ce = False, {"trial": trial, "law": "infeasible-vs-basic"}
                break
        results.append(_result("lp_simplex_vs_basic_enumeration",
                               f"seed={seed}", ok, ce, started=started))
    return results


# ---------------------------------------------------------------------------
# Cone checks
# ---------------------------------------------------------------------------

def _suite_cones(exact):
    def n(v):
        return Fraction(v) if exact else float(v)
    orthant = validate_cone([[n(1), n(0)], [n(0), n(1)]], [n(1), n(1)])
    skew = validate_cone([[n(0), n(1)], [n(2), n(-1)]], [n(1), Fraction(1, 2) if exact else 0.5])
    return [("orthant", orthant), ("skew", skew)]


def _check_cone(config: SuiteConfig):
    results = []
    tol = 0 if config.exact else 1e-9
    for cone_id, cone in _suite_cones(config.exact):
        rng = random.Random(101)
        started = time.perf_counter()
        ok, ce = True, None
        for trial in range(60):
            pts = [tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4))
                         for _ in range(2)) for _ in range(3)]
            if not config.exact:
                pts = [tuple(float(v) for v in p) for p in pts]
            a, b, c = pts
            m_ac = margin(a, c, cone)
            m_ab = margin(a, b, cone)
            m_bc = margin(b, c, cone)
            if m_ac < m_ab + m_bc - tol:
                ok, ce = False, {"law": "superadditivity", "trial": trial}
                break
            shift = pts[0]
            lhs = margin(tuple(x + s for x, s in zip(a, shift)),
                         tuple(x + s for x, s in zip(b, shift)), cone)
            if abs(lhs - m_ab) > tol:
                ok, ce = False, {"law": "translation", "trial": trial}
                break
            diff = tuple(y - x for x, y in zip(a, b))
            in_cone = all(dot(row, diff) >= -tol for row in cone.rows)
            in_int = all(dot(row, diff) > tol for row in cone.rows)
            if ge(m_ab, 0, tol) != in_cone or gt(m_ab, 0, tol) != in_int:
                ok, ce = False, {"law": "order-consistency", "trial": trial}
                break
        results.append(_result("cone_margin_laws", cone_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        import math
        eps = Fraction(2) if config.exact else 2.0
        r = r_epsilon(cone, eps)
        center = [as_float(v) * as_float(eps) for v in cone.e]
        ok, ce = True, None
        for i in range(1000):
            ang = 2 * math.pi * i / 1000
            pt = (center[0] + r * math.cos(ang), center[1] + r * math.sin(ang))
            if any(sum(as_float(rv) * pv for rv, pv in zip(row, pt)) <= 0
                   for row in cone.rows):
                ok, ce = False, {"law": "ball-containment", "sample": i}
                break
        results.append(_result("cone_safe_ball_containment", cone_id, ok, ce,
                               started=started))
    return results


# ---------------------------------------------------------------------------
# Image-set checks
# ---------------------------------------------------------------------------

def _check_imagesets(config: SuiteConfig, finite_instances):
    results = []
    for inst_id, inst in finite_instances:
        started = time.perf_counter()
        ok, ce = True, None
        for dec, img in zip(inst.decisions, inst.images):
            mins = set(imagesets.min_elements(img, inst.cone, weak=False))
            weaks = set(imagesets.min_elements(img, inst.cone, weak=True))
            if not (mins <= weaks <= set(img.points)):
                ok, ce = False, {"law": "min-chain", "label": dec.label}
                break
            if not imagesets.domination_check(img, inst.cone):
                ok, ce = False, {"law": "domination", "label": dec.label}
                break
        results.append(_result("images_minimality_and_domination", inst_id,
                               ok, ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        eps_list = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)]
        if not inst.exact:
            eps_list = [float(e) for e in eps_list]
        for dec, img in zip(inst.decisions, inst.images):
            prev = None
            for eps in eps_list:
                res = imagesets.covering_number_internal(img, eps)
                greedy = imagesets.covering_number_internal(img, eps,
                                                            exact_cap=0)
                if res.count > greedy.count:
                    ok, ce = False, {"law": "exact<=greedy", "label": dec.label}
                    break
                if not set(res.centers) <= set(img.points):
                    ok, ce = False, {"law": "centers-subset", "label": dec.label}
                    break
                covered = all(
                    any(sum((a - c) ** 2 for a, c in zip(p, ctr)) <= eps * eps
                        for ctr in res.centers) for p in img.points)
                if not covered:
                    ok, ce = False, {"law": "covers", "label": dec.label}
                    break
                if prev is not None and res.count > prev:
                    ok, ce = False, {"law": "monotone-in-eps", "label": dec.label}
                    break
                prev = res.count
            if not ok:
                break
        results.append(_result("images_internal_covering_laws", inst_id, ok,
                               ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        imgs = list(inst.images)
        for a, b, c in itertools.islice(itertools.permutations(imgs, 3), 12):
            dab = imagesets.hausdorff(a, b)
            dba = imagesets.hausdorff(b, a)
            dac = imagesets.hausdorff(a, c)
            dcb = imagesets.hausdorff(c, b)
            if abs(dab - dba) > 1e-9 or imagesets.hausdorff(a, a) != 0:
                ok, ce = False, {"law": "symmetry/identity"}
                break
            if dab > dac + dcb + 1e-9:
                ok, ce = False, {"law": "triangle"}
                break
        results.append(_result("images_hausdorff_metric", inst_id, ok, ce,
                               started=started))
    return results


def _check_prune(config: SuiteConfig, polytope_instances):
    results = []
    for inst_id, inst in polytope_instances:
        started = time.perf_counter()
        ok, ce = True, None
        for dec, img in zip(inst.decisions, inst.images):
            once = imagesets.prune_to_extreme(img.points)
            twice = imagesets.prune_to_extreme(once)
            if set(once) != set(twice):
                ok, ce = False, {"label": dec.label}
                break
        results.append(_result("images_prune_idempotent", inst_id, ok, ce,
                               started=started))
    return results


# ---------------------------------------------------------------------------
# Relation checks
# ---------------------------------------------------------------------------

def _check_relations(config: SuiteConfig, all_instances):
    results = []
    for inst_id, inst in all_instances:
        eps_values = [0] + list(config.eps_grid)
        started = time.perf_counter()
        ok, ce = True, None
        pairs = list(itertools.product(range(len(inst.images)), repeat=2))[:25]
        for i, j in pairs:
            a, b = inst.images[i], inst.images[j]
            for eps in eps_values:
                strict, _ = setrelations.set_relation(a, b, inst.cone,
                                                      setrelations.LOWER_STRICT, eps)
                strong, _ = setrelations.set_relation(a, b, inst.cone,
                                                      setrelations.LOWER_STRONG, eps)
                lower, _ = setrelations.set_relation(a, b, inst.cone,
                                                     setrelations.LOWER, eps)
                if (strict and not strong) or (strong and not lower):
                    ok, ce = False, {"law": "chain", "pair": [i, j],
                                     "eps": format_number(eps)}
                    break
            if not ok:
                break
        results.append(_result("relations_implication_chain", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        ok, ce = True, None
        for i, j, k in itertools.islice(
                itertools.product(range(len(inst.images)), repeat=3), 64):
            ij, _ = setrelations.set_relation(inst.images[i], inst.images[j],
                                              inst.cone, setrelations.LOWER, 0)
            jk, _ = setrelations.set_relation(inst.images[j], inst.images[k],
                                              inst.cone, setrelations.LOWER, 0)
            if ij and jk:
                ik, _ = setrelations.set_relation(inst.images[i],
                                                  inst.images[k], inst.cone,
                                                  setrelations.LOWER, 0)
                if not ik:
                    ok, ce = False, {"triple": [i, j, k]}
                    break
        results.append(_result("relations_preorder_transitive", inst_id, ok,
                               ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        rng = random.Random(77)
        for i, j in pairs[:10]:
            a, b = inst.images[i], inst.images[j]
            sm = setrelations.set_margin(a, b, inst.cone)
            probes = []
            for _ in range(18):
                delta = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
                probes.append(sm + delta if inst.exact else float(sm) + float(delta))
            probes.append(sm)  # exact tie: strict must fail, non-strict hold
            for eps in probes:
                if eps < 0:
                    continue
                strict, _ = setrelations.set_relation(
                    a, b, inst.cone, setrelations.LOWER_STRICT, eps)
                expected = gt(sm, eps, 0 if inst.exact else 1e-9)
                if strict != expected:
                    ok, ce = False, {"pair": [i, j], "eps": format_number(eps)}
                    break
            if not ok:
                break
        results.append(_result("relations_strict_threshold_law", inst_id, ok,
                               ce, started=started))
    return results


def _check_encoding_agreement(config: SuiteConfig, polytope_instances):
    results = []
    for inst_id, inst in polytope_instances:
        started = time.perf_counter()
        ok, ce = True, None
        for i, j in itertools.product(range(len(inst.images)), repeat=2):
            a, b = inst.images[i], inst.images[j]
            as_fin = finite_set(b.points)
            if setrelations.set_margin(a, b, inst.cone) != \
                    setrelations.set_margin(a, as_fin, inst.cone):
                ok, ce = False, {"pair": [i, j]}
                break
        results.append(_result("relations_right_encoding_agreement", inst_id,
                               ok, ce, started=started))
    return results


# ---------------------------------------------------------------------------
# Direct-solver checks
# ---------------------------------------------------------------------------

def _check_direct(config: SuiteConfig, all_instances):
    results = []
    for inst_id, inst in all_instances:
        eps_values = [0] + list(config.eps_grid)
        started = time.perf_counter()
        ok, ce = True, None
        for eps in eps_values:
            t1 = set(solver_direct.solve_direct(inst, solver_direct.TYPE_ONE, eps).members)
            t2 = set(solver_direct.solve_direct(inst, solver_direct.TYPE_TWO, eps).members)
            wk = set(solver_direct.solve_direct(inst, solver_direct.WEAK, eps).members)
            if not (t1 <= t2 <= wk):
                ok, ce = False, {"eps": format_number(eps),
                                 "type1": sorted(t1), "type2": sorted(t2),
                                 "weak": sorted(wk)}
                break
        results.append(_result("direct_solution_chain", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        ok, ce = True, None
        ordered = sorted(eps_values)
        prev_w, prev_t2 = None, None
        for eps in ordered:
            wk = set(solver_direct.solve_direct(inst, solver_direct.WEAK, eps).members)
            t2 = set(solver_direct.solve_direct(inst, solver_direct.TYPE_TWO, eps).members)
            if prev_w is not None and not (prev_w <= wk and prev_t2 <= t2):
                ok, ce = False, {"eps": format_number(eps)}
                break
            prev_w, prev_t2 = wk, t2
        results.append(_result("direct_eps_monotonicity", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        thresholds = solver_direct.weak_threshold(inst)
        rng = random.Random(31)
        ok, ce = True, None
        tol = 0 if inst.exact else 1e-9
        probe_base = sorted(set(thresholds.values()))
        for _ in range(20):
            eps = Fraction(rng.randint(0, 40), rng.randint(1, 8))
            if not inst.exact:
                eps = float(eps)
            members = set(solver_direct.solve_direct(
                inst, solver_direct.WEAK, eps).members)
            expected = {lab for lab, t in thresholds.items()
                        if not gt(t, eps, tol)}
            if members != expected:
                ok, ce = False, {"eps": format_number(eps),
                                 "members": sorted(members),
                                 "expected": sorted(expected)}
                break
        results.append(_result("direct_weak_threshold_law", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        positive = [t for t in thresholds.values() if t > 0]
        adaptive = list(config.eps_grid)
        if positive:
            adaptive.append(min(positive) / 2)
        wk0 = set(solver_direct.solve_direct(inst, solver_direct.WEAK, 0).members)
        t20 = set(solver_direct.solve_direct(inst, solver_direct.TYPE_TWO, 0).members)
        inter = None
        ok, ce = True, None
        for eps in adaptive:
            wke = set(solver_direct.solve_direct(inst, solver_direct.WEAK, eps).members)
            t2e = set(solver_direct.solve_direct(inst, solver_direct.TYPE_TWO, eps).members)
            if not t20 <= t2e:
                ok, ce = False, {"law": "type2-in-eps", "eps": format_number(eps)}
                break
            inter = wke if inter is None else (inter & wke)
        if ok and adaptive and inter != wk0:
            ok, ce = False, {"law": "weak-intersection",
                             "intersection": sorted(inter),
                             "weak0": sorted(wk0)}
        results.append(_result("direct_intersection_law", inst_id, ok, ce,
                               started=started))
    return results


# ---------------------------------------------------------------------------
# Vectorizer checks
# ---------------------------------------------------------------------------

def _pmax(inst) -> int:
    return max(len(vectorizer.candidate_pool(inst, d.label).points)
               for d in inst.decisions)


def _check_vectorizer(config: SuiteConfig, finite_instances,
                      polytope_instances):
    results = []
    for inst_id, inst in finite_instances:
        eps_values = [0] + list(config.eps_grid)

        started = time.perf_counter()
        ok, ce = True, None
        for kind in vectorizer.VP_KINDS:
            for eps in eps_values:
                prev = None
                for p in config.p_range:
                    mem = set(vectorizer.membership_vp(inst, p, eps, kind).members)
                    if prev is not None and not prev <= mem:
                        ok, ce = False, {"law": "monotone-p", "kind": kind,
                                         "eps": format_number(eps), "p": p}
                        break
                    prev = mem
                if not ok:
                    break
            if not ok:
                break
        results.append(_result("vp_members_monotone_in_budget", inst_id, ok,
                               ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        for eps in eps_values:
            direct_w = set(solver_direct.solve_direct(
                inst, solver_direct.WEAK, eps).members)
            direct_t2 = set(solver_direct.solve_direct(
                inst, solver_direct.TYPE_TWO, eps).members)
            for p in config.p_range:
                vw = set(vectorizer.membership_vp(inst, p, eps,
                                                  vectorizer.VP_WEAK).members)
                vm = set(vectorizer.membership_vp(inst, p, eps,
                                                  vectorizer.VP_MIN).members)
                if not (vw <= direct_w and vm <= direct_t2):
                    ok, ce = False, {"eps": format_number(eps), "p": p,
                                     "law": "projection-subset"}
                    break
            if not ok:
                break
        results.append(_result("vp_projection_inside_direct", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        ok, ce = True, None
        for kind in vectorizer.VP_KINDS:
            for eps in eps_values:
                for p in config.p_range:
                    fast = set(vectorizer.membership_vp(inst, p, eps, kind).members)
                    slow = set(vectorizer.brute_force_vp(inst, p, eps, kind).members)
                    if fast != slow:
                        ok, ce = False, {"kind": kind, "p": p,
                                         "eps": format_number(eps),
                                         "fast": sorted(fast),
                                         "oracle": sorted(slow)}
                        break
                if not ok:
                    break
            if not ok:
                break
        results.append(_result("vp_oracle_equivalence", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        ok, ce = True, None
        direct_w0 = set(solver_direct.solve_direct(
            inst, solver_direct.WEAK, 0).members)
        for dec in inst.decisions:
            res = vectorizer.minimal_p(inst, dec.label, 0, vectorizer.VP_WEAK)
            if res.never == (dec.label in direct_w0):
                ok, ce = False, {"label": dec.label, "never": res.never}
                break
        results.append(_result("vp_minimal_budget_never_consistency", inst_id,
                               ok, ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        budgets = {
            "omega-minus-one": max(1, len(inst.decisions) - 1),
            "max-min-count": _pmax(inst),
        }
        for law, p_thm in budgets.items():
            mem = set(vectorizer.membership_vp(inst, p_thm, 0,
                                               vectorizer.VP_WEAK).members)
            if mem != direct_w0:
                ok, ce = False, {"law": law, "p": p_thm,
                                 "members": sorted(mem),
                                 "direct": sorted(direct_w0)}
                break
        results.append(_result("vp_finite_budget_equalities", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        ok, ce = True, None
        pmax = _pmax(inst)
        retained = set(vectorizer.membership_vp(inst, pmax, 0,
                                                vectorizer.VP_MIN).members)
        for dec, img in zip(inst.decisions, inst.images):
            if not any(ge(setrelations.set_margin(inst.image_of(r), img,
                                                  inst.cone), 0, 0)
                       for r in retained):
                ok, ce = False, {"label": dec.label,
                                 "retained": sorted(retained)}
                break
        results.append(_result("vp_min_members_retain_image_quality", inst_id,
                               ok, ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        for eps in config.eps_grid:
            uw = set(vectorizer.membership_vp(inst, pmax, eps,
                                              vectorizer.VP_WEAK).members)
            um = set(vectorizer.membership_vp(inst, pmax, eps,
                                              vectorizer.VP_MIN).members)
            if not (direct_w0 <= um and um <= uw and uw == um):
                ok, ce = False, {"eps": format_number(eps),
                                 "weak_union": sorted(uw),
                                 "min_union": sorted(um)}
                break
        results.append(_result("vp_positive_eps_union_laws", inst_id, ok, ce,
                               started=started))

        started = time.perf_counter()
        ok, ce = True, None
        for eps in (e for e in config.eps_grid if e > 0):
            for lab in direct_w0:
                bound = vectorizer.covering_p_bound(inst, lab, eps)
                mem = set(vectorizer.membership_vp(inst, bound, eps,
                                                   vectorizer.VP_WEAK).members)
                if lab not in mem:
                    ok, ce = False, {"label": lab, "eps": format_number(eps),
                                     "bound": bound}
                    break
            if not ok:
                break
        results.append(_result("vp_covering_budget_sufficient", inst_id, ok,
                               ce, started=started))

        started = time.perf_counter()
        ok, ce = True, None
        e = inst.cone.e
        weights_cases = [[e], [e, e],
                         [tuple(sum(row[d] for row in inst.cone.rows)
                                for d in range(inst.m))]]
        for weights in weights_cases:
            p = len(weights)
            sols = vectorizer.solve_weighted_sum(inst, p, weights)
            mem = set(vectorizer.membership_vp(inst, p, 0,
                                               vectorizer.VP_WEAK).members)
            if not {s.label for s in sols} <= mem:
                ok, ce = False, {"weights": [format_number(v) for w in weights
                                             for v in w]}
                break
        results.append(_result("vp_weighted_sum_soundness", inst_id, ok, ce,
                               started=started))

    for inst_id, inst in polytope_instances:
        started = time.perf_counter()
        direct_w0 = set(solver_direct.solve_direct(
            inst, solver_direct.WEAK, 0).members)
        p_thm = max(len(img.points) for img in inst.images)
        mem = set(vectorizer.membership_vp(inst, p_thm, 0,
                                           vectorizer.VP_WEAK).members)
        ok = mem == direct_w0
        ce = None if ok else {"p": p_thm, "members": sorted(mem),
                              "direct": sorted(direct_w0)}
        results.append(_result("vp_polytope_budget_equality", inst_id, ok, ce,
                               started=started))
    return results


# ---------------------------------------------------------------------------
# Instance checks
# ---------------------------------------------------------------------------

def _check_instances(config: SuiteConfig, finite_instances):
    results = []
    started = time.perf_counter()
    ok, ce = True, None
    T = 5
    for i in range(8):
        pt = instance_mod.cantor_limit_point(i)
        if pt[0] + pt[1] != 2:
            ok, ce = False, {"law": "limit-line", "i": i}
            break
    if ok:
        cone = _suite_cones(True)[0][1]
        pts = [instance_mod.cantor_limit_point(i) for i in range(T)]
        img = finite_set(pts)
        if set(imagesets.min_elements(img, cone)) != set(pts):
            ok, ce = False, {"law": "limit-antichain"}
    results.append(_result("cantor_limit_structure", "cantor", ok, ce,
                           started=started))

    started = time.perf_counter()
    ok, ce = True, None
    a = instance_mod.make_example("random_finite", {"seed": 5}, exact=config.exact)
    b = instance_mod.make_example("random_finite", {"seed": 5}, exact=config.exact)
    if a != b:
        ok, ce = False, {"law": "seed-reproducibility"}
    results.append(_result("generators_reproducible", "random_finite[seed=5]",
                           ok, ce, started=started))

    for inst_id, inst in finite_instances:
        started = time.perf_counter()
        ok, ce = True, None
        for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(3, 2)):
            if not inst.exact:
                eps = float(eps)
            disc = instance_mod.discretize_map(inst, eps)
            subsetted = all(set(d.points) <= set(o.points)
                            for d, o in zip(disc.images, inst.images))
            if not subsetted:
                ok, ce = False, {"law": "centers-subset", "eps": format_number(eps)}
                break
            if instance_mod.instance_distance_sq(inst, disc) > eps * eps:
                ok, ce = False, {"law": "distance-bound", "eps": format_number(eps)}
                break
            p_disc = max(len(img.points) for img in disc.images)
            wk = set(solver_direct.solve_direct(disc, solver_direct.WEAK, 0).members)
            vp = set(vectorizer.membership_vp(disc, p_disc, 0,
                                              vectorizer.VP_WEAK).members)
            if wk != vp:
                ok, ce = False, {"law": "discretized-budget-equality",
                                 "eps": format_number(eps)}
                break
        results.append(_result("discretization_laws", inst_id, ok, ce,
                               started=started))
    return results


# ---------------------------------------------------------------------------
# Golden examples
# ---------------------------------------------------------------------------

def _check_goldens(config: SuiteConfig):
    """The worked-example verdicts every release must reproduce."""
    ex = config.exact
    results = []

    started = time.perf_counter()
    inst = instance_mod.make_example("mfdvp", exact=ex)
    ok = solver_direct.solve_direct(inst, solver_direct.TYPE_TWO, 0).members \
        == ("0", "1", "2")
    ok = ok and "0" not in vectorizer.membership_vp(inst, 1, 0,
                                                    vectorizer.VP_WEAK).members
    ok = ok and "0" in vectorizer.membership_vp(inst, 2, 0,
                                                vectorizer.VP_WEAK).members
    ok = ok and vectorizer.minimal_p(inst, "0", 0,
                                     vectorizer.VP_WEAK).p_star == 2
    ok = ok and all(
        "0" not in vectorizer.membership_vp(inst, p, 0,
                                            vectorizer.VP_MIN).members
        for p in range(1, 7))
    results.append(_result("golden_three_decision_family", "mfdvp", ok,
                           started=started))

    started = time.perf_counter()
    fan = instance_mod.make_example("t_one", {"g": 5}, exact=ex)
    ok = solver_direct.solve_direct(fan, solver_direct.TYPE_ONE, 0).members \
        == ("1/4",)
    ok = ok and set(solver_direct.solve_direct(
        fan, solver_direct.TYPE_TWO, 0).members) == set(fan.labels)
    report_min = vectorizer.membership_vp(fan, 1, 0, vectorizer.VP_MIN)
    ok = ok and "1/2" in report_min.members
    ok = ok and report_min.certificates["1/2"].tuple_points[0][1] == 0
    results.append(_result("golden_polytope_fan", "t_one[g=5]", ok,
                           started=started))

    started = time.perf_counter()
    singles = instance_mod.make_example("strict_min", {"g": 5}, exact=ex)
    ok = solver_direct.solve_direct(singles, solver_direct.TYPE_TWO,
                                    0).members == ("0",)
    for eps in config.eps_grid:
        ok = ok and set(vectorizer.membership_vp(
            singles, 1, eps, vectorizer.VP_MIN).members) == set(singles.labels)
    results.append(_result("golden_drifting_singletons", "strict_min[g=5]",
                           ok, started=started))

    started = time.perf_counter()
    trunc = instance_mod.make_example("cantor", {"T": 4, "N": 6}, exact=ex)
    res = vectorizer.minimal_p(trunc, "1", 0, vectorizer.VP_WEAK)
    ok = not res.never and res.p_star == 4  # budget equals truncation depth
    results.append(_result("golden_truncated_nesting", "cantor[T=4,N=6]", ok,
                           started=started))
    return results


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def run_suite(config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Execute every invariant check plus the golden-example verdicts;
    deterministic given the config."""
    config = config or SuiteConfig()
    finites = _labeled_instances(config)
    polytopes = _polytope_instances(config)
    report = SuiteReport()
    report.checks.extend(_check_lp(config))
    report.checks.extend(_check_cone(config))
    report.checks.extend(_check_imagesets(config, finites))
    report.checks.extend(_check_prune(config, polytopes))
    report.checks.extend(_check_relations(config, finites + polytopes))
    report.checks.extend(_check_encoding_agreement(config, polytopes))
    report.checks.extend(_check_direct(config, finites + polytopes))
    report.checks.extend(_check_vectorizer(config, finites, polytopes))
    report.checks.extend(_check_instances(config, finites))
    report.checks.extend(_check_goldens(config))
    return report


def convex_experiment(config: Optional[ConvexExperimentConfig] = None) -> SuiteReport:
    """Budget n+1 on discretized convex-graph instances.

    The soundness direction (projected members inside the weak solution
    set) is a hard check; agreement of the two sets is reported softly
    because the grid breaks the convexity hypothesis of the exactness
    statement.
    """
    config = config or ConvexExperimentConfig()
    report = SuiteReport()
    for i in range(config.count):
        seed = config.seed + i
        inst_id = f"convex_polyhedral[seed={seed},g={config.grid}]"
        started = time.perf_counter()
        try:
            inst = instance_mod.make_example(
                "convex_polyhedral",
                {"seed": seed, "g": config.grid, "n": config.n},
                exact=config.exact)
        except SetoptError as exc:
            report.checks.append(_result("convex_generator", inst_id, False,
                                         {"error": str(exc)}, hard=False,
                                         started=started))
            continue
        wargmin = set(solver_direct.solve_direct(
            inst, solver_direct.WEAK, 0).members)
        vp = set(vectorizer.membership_vp(inst, config.n + 1, 0,
                                          vectorizer.VP_WEAK).members)
        report.checks.append(_result(
            "convex_soundness", inst_id, vp <= wargmin,
            None if vp <= wargmin else {"extra": sorted(vp - wargmin)},
            started=started))
        ratio = len(vp & wargmin) / len(wargmin) if wargmin else 1.0
        report.checks.append(CheckResult(
            "convex_agreement", inst_id, ratio == 1.0, hard=False,
            counterexample={"ratio": ratio,
                            "disagreeing": sorted(wargmin - vp)},
            seconds=time.perf_counter() - started))
    return report
