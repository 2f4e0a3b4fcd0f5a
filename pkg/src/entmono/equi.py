"""Constant-entropy ("equi-entangled") curves of rank-3 Schmidt vectors.

A curve is parameterised by the largest coefficient ``a1``.  For fixed
``a1`` the ordered branch ``a2 in [(1-a1)/2, min(a1, 1-a1)]`` covers every
sorted vector exactly once, and entropy is strictly decreasing along it, so
the ``a2`` hitting a target entropy is unique and bisection finds it.

Two curves whose concurrence ranges overlap yield four states A, B (low
entropy) and C, D (high entropy) with ``C(A) = C(D) > C(B) = C(C)``: the pair
(A, C) has higher concurrence but lower entropy, the pair (B, D) orders
both ways the same.  Neither pair is LOCC-comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .comparability import Relation, classify
from .errors import InfeasibleTarget, NoOverlap, PropertyViolation
from .schmidt import SchmidtVector, concurrence, concurrence_squared, make_schmidt, negativity

LOG2_3 = math.log2(3.0)
ENTROPY_TOL = 1e-12
EMIT_RESIDUAL = 1e-9
MAX_ITER = 200
CROSS_TOL = 1e-8


def _h(p: float) -> float:
    return -p * math.log2(p) if p > 0.0 else 0.0


def entropy3(a1: float, a2: float) -> float:
    return _h(a1) + _h(a2) + _h(max(1.0 - a1 - a2, 0.0))


def _bisect_decreasing(f: Callable[[float], float], lo: float, hi: float, target: float,
                       tol: float) -> float:
    """Root of ``f(x) = target`` for ``f`` decreasing on ``[lo, hi]``.

    Stops when the residual is within ``tol``, the bracket stops shrinking in
    floating point, or after ``MAX_ITER`` halvings; returns the best point.
    """
    best, best_res = lo, abs(f(lo) - target)
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        val = f(mid)
        res = abs(val - target)
        if res < best_res:
            best, best_res = mid, res
        if res <= tol or mid <= lo or mid >= hi:
            break
        if val > target:
            lo = mid
        else:
            hi = mid
    for end in (lo, hi):
        res = abs(f(end) - target)
        if res < best_res:
            best, best_res = end, res
    return best


def _branch(a1: float) -> tuple[float, float]:
    return (1.0 - a1) / 2.0, min(a1, 1.0 - a1)


def solve_alpha2(alpha1: float, target_entropy: float, tol: float = ENTROPY_TOL) -> Optional[float]:
    """The ``a2`` on the ordered branch with ``H(a1, a2, 1-a1-a2) = target``, or None."""
    if not (1.0 / 3.0 - 1e-15 <= alpha1 < 1.0):
        return None
    alpha1 = max(alpha1, 1.0 / 3.0)
    lo, hi = _branch(alpha1)
    hi = max(hi, lo)
    h_lo, h_hi = entropy3(alpha1, lo), entropy3(alpha1, hi)
    if target_entropy > h_lo + tol or target_entropy < h_hi - tol:
        return None
    if abs(h_lo - target_entropy) <= tol:
        return lo
    if abs(h_hi - target_entropy) <= tol:
        return hi
    return _bisect_decreasing(lambda x: entropy3(alpha1, x), lo, hi, target_entropy, tol)


def _check_target(target: float):
    if not (0.0 < target < LOG2_3):
        raise InfeasibleTarget(f"entropy {target!r} outside (0, log2 3)")


def _branch_max(a1: float) -> float:
    return entropy3(a1, (1.0 - a1) / 2.0)


def _branch_min(a1: float) -> float:
    return entropy3(a1, min(a1, 1.0 - a1))


def feasible_alpha1_range(target_entropy: float, tol: float = ENTROPY_TOL) -> tuple[float, float]:
    """Interval of ``a1`` on which the equi-entangled curve exists.

    Both boundary entropies decrease in ``a1`` on ``[1/3, 1)``: the upper end
    solves ``H(a1, (1-a1)/2, (1-a1)/2) = target`` and the lower end solves
    ``H(a1, min(a1, 1-a1), rest) = target``.
    """
    _check_target(target_entropy)
    third = 1.0 / 3.0
    low = _bisect_decreasing(_branch_min, third, 1.0, target_entropy, tol)
    high = _bisect_decreasing(_branch_max, third, 1.0, target_entropy, tol)
    # Shrink each end until the solver accepts it.
    for _ in range(64):
        if solve_alpha2(low, target_entropy, tol) is not None:
            break
        low = math.nextafter(low, 1.0)
    for _ in range(64):
        if solve_alpha2(high, target_entropy, tol) is not None:
            break
        high = math.nextafter(high, 0.0)
    if high < low:
        high = low
    for end in (low, high):
        if solve_alpha2(end, target_entropy, tol) is None:
            raise InfeasibleTarget(f"no rank-3 state at a1={end!r} for entropy {target_entropy!r}")
    return low, high


@dataclass(frozen=True)
class CurveSpec:
    target_entropy: float
    points: int = 200
    rank: int = 3

    def __post_init__(self):
        if self.rank != 3:
            raise ValueError("only rank-3 curves are supported")
        if self.points < 2:
            raise ValueError("a curve needs at least 2 points")
        _check_target(self.target_entropy)


@dataclass(frozen=True)
class CurvePoint:
    alpha1: float
    alpha2: float
    alpha3: float
    concurrence: float
    concurrence_squared: float
    negativity: float

    @property
    def vector(self) -> SchmidtVector:
        return make_schmidt((self.alpha1, self.alpha2, self.alpha3))


def curve_point(alpha1: float, target_entropy: float, tol: float = ENTROPY_TOL) -> Optional[CurvePoint]:
    a2 = solve_alpha2(alpha1, target_entropy, tol)
    if a2 is None:
        return None
    alpha1 = max(alpha1, 1.0 / 3.0)
    a3 = max(1.0 - alpha1 - a2, 0.0)
    v = make_schmidt((alpha1, a2, a3))
    return CurvePoint(alpha1, a2, a3, concurrence(v), concurrence_squared(v), negativity(v))


def trace_curve(spec: CurveSpec) -> list[CurvePoint]:
    low, high = feasible_alpha1_range(spec.target_entropy)
    grid = np.linspace(low, high, spec.points)
    grid[0], grid[-1] = low, high
    out = []
    for a1 in grid:
        pt = curve_point(float(a1), spec.target_entropy)
        if pt is None:
            raise InfeasibleTarget(f"solver failed at a1={a1!r}")
        res = abs(entropy3(pt.alpha1, pt.alpha2) - spec.target_entropy)
        if res > EMIT_RESIDUAL:
            raise PropertyViolation(f"entropy residual {res:.3g} at a1={a1!r}")
        out.append(pt)
    return out


def _solve_on_curve(curve: list[CurvePoint], target_entropy: float, c_target: float) -> SchmidtVector:
    """State on the curve whose concurrence equals ``c_target``.

    Locates the first grid segment bracketing ``c_target``, then bisects in
    ``a1`` with the exact solver starting from the linear-interpolation guess.
    """
    cs = [p.concurrence for p in curve]
    for k in range(len(curve) - 1):
        c0, c1 = cs[k], cs[k + 1]
        if (c0 - c_target) * (c1 - c_target) <= 0.0 and c0 != c1:
            break
    else:
        raise NoOverlap(f"concurrence {c_target!r} not attained on the {target_entropy} curve")
    lo, hi = curve[k].alpha1, curve[k + 1].alpha1
    sign = 1.0 if c1 > c0 else -1.0

    def g(a1):
        pt = curve_point(a1, target_entropy)
        # Segment interior stays feasible; fall back to the nearer grid value.
        c = pt.concurrence if pt is not None else (c0 if a1 - lo < hi - a1 else c1)
        return sign * (c - c_target)

    guess = lo + (hi - lo) * (c_target - c0) / (c1 - c0)
    if g(guess) > 0.0:
        hi = guess
    else:
        lo = guess
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        val = g(mid)
        if abs(val) <= 1e-14:
            lo = hi = mid
            break
        if val > 0.0:
            hi = mid
        else:
            lo = mid
    best = min((lo, hi, 0.5 * (lo + hi)), key=lambda x: abs(g(x)))
    return curve_point(best, target_entropy).vector


@dataclass(frozen=True)
class CrossingQuadruple:
    A: SchmidtVector
    B: SchmidtVector
    C: SchmidtVector
    D: SchmidtVector
    e_low: float
    e_high: float


def crossing_demo(e_low: float, e_high: float, points: int = 400) -> CrossingQuadruple:
    """Four states exhibiting opposite entropy/concurrence orderings.

    A, B lie on the ``e_low`` curve and C, D on the ``e_high`` curve, with
    ``C(A) = C(D)`` and ``C(B) = C(C)``, ``C(A) > C(C)``.  The two concurrence
    levels are taken at 2/3 and 1/3 of the overlap of the curves' ranges.
    """
    if not e_low < e_high:
        raise ValueError("need e_low < e_high")
    low_curve = trace_curve(CurveSpec(e_low, points))
    high_curve = trace_curve(CurveSpec(e_high, points))
    lc = [p.concurrence for p in low_curve]
    hc = [p.concurrence for p in high_curve]
    o_lo, o_hi = max(min(lc), min(hc)), min(max(lc), max(hc))
    if not o_hi - o_lo > 10 * CROSS_TOL:
        raise NoOverlap(f"concurrence ranges of {e_low} and {e_high} curves do not overlap")
    c_top = o_lo + (o_hi - o_lo) * 2.0 / 3.0
    c_bot = o_lo + (o_hi - o_lo) / 3.0
    q = CrossingQuadruple(
        A=_solve_on_curve(low_curve, e_low, c_top),
        B=_solve_on_curve(low_curve, e_low, c_bot),
        C=_solve_on_curve(high_curve, e_high, c_bot),
        D=_solve_on_curve(high_curve, e_high, c_top),
        e_low=e_low,
        e_high=e_high,
    )
    if abs(concurrence(q.A) - concurrence(q.D)) > CROSS_TOL:
        raise PropertyViolation("C(A) != C(D)")
    if abs(concurrence(q.B) - concurrence(q.C)) > CROSS_TOL:
        raise PropertyViolation("C(B) != C(C)")
    if not concurrence(q.A) > concurrence(q.C):
        raise PropertyViolation("C(A) <= C(C)")
    for x, y, name in ((q.A, q.C, "(A, C)"), (q.B, q.D, "(B, D)")):
        if classify(x, y).tag is not Relation.INCOMPARABLE:
            raise PropertyViolation(f"pair {name} is comparable", pair=(x, y))
    return q
