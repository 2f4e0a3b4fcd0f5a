"""LOCC comparability of pure states via majorization of Schmidt vectors.

Direction convention: ``a`` converts to ``b`` by deterministic LOCC iff every
prefix sum of ``a`` is at most the matching prefix sum of ``b`` (``a`` is
majorized by ``b``, written ``a < b``).  The source ``a`` is the more
entangled state.

"Equivalent" means the padded Schmidt vectors coincide componentwise, i.e.
the states differ only by local unitaries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Optional

from .errors import NotComparableInDirection, TargetShorterThanInput
from .schmidt import SchmidtVector, concurrence_squared

COMPARE_TOL = 1e-12


class Relation(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    A_CONVERTS_TO_B = "AConvertsToB"
    B_CONVERTS_TO_A = "BConvertsToA"
    INCOMPARABLE = "Incomparable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ComparabilityResult:
    """Classification of an ordered pair ``(a, b)``.

    For incomparable pairs ``witness = (k_a, k_b)`` holds 1-based prefix
    lengths with ``S_a(k_a) > S_b(k_a)`` and ``S_a(k_b) < S_b(k_b)``, both
    beyond the comparison tolerance.
    """

    tag: Relation
    witness: Optional[tuple[int, int]] = None

    @property
    def comparable(self) -> bool:
        return self.tag is not Relation.INCOMPARABLE


@dataclass(frozen=True)
class EpsilonProfile:
    """Prefix-sum slack ``eps_k = S_b(k) - S_a(k)`` for ``k = 0..m``, ends pinned to 0."""

    eps: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.eps) - 1

    def reconstruct(self, a: SchmidtVector) -> tuple[float, ...]:
        """Recover ``b_i = a_i + eps_i - eps_{i-1}`` from the source vector."""
        alpha = pad(a, self.m).coeffs
        return tuple(alpha[i - 1] + self.eps[i] - self.eps[i - 1] for i in range(1, self.m + 1))


def pad(v: SchmidtVector, m: int) -> SchmidtVector:
    if m < len(v):
        raise TargetShorterThanInput(f"cannot pad length {len(v)} vector to {m}")
    if m == len(v):
        return v
    return SchmidtVector(
        v.coeffs + (0.0,) * (m - len(v)), zero_threshold=v.zero_threshold, norm_tol=v.norm_tol
    )


def _prefix_gaps(a: SchmidtVector, b: SchmidtVector) -> list[float]:
    # gaps[k-1] = S_b(k) - S_a(k) for k = 1..m
    m = max(len(a), len(b))
    sa = accumulate(pad(a, m).coeffs)
    sb = accumulate(pad(b, m).coeffs)
    return [y - x for x, y in zip(sa, sb)]


def majorizes(a: SchmidtVector, b: SchmidtVector, tol: float = COMPARE_TOL) -> bool:
    """True iff ``b`` majorizes ``a``, i.e. ``|a> -> |b>`` is possible by LOCC.

    >>> from entmono.schmidt import make_schmidt
    >>> majorizes(make_schmidt([1/3, 1/3, 1/3]), make_schmidt([1.0]))
    True
    """
    return all(g >= -tol for g in _prefix_gaps(a, b))


def classify(a: SchmidtVector, b: SchmidtVector, tol: float = COMPARE_TOL) -> ComparabilityResult:
    m = max(len(a), len(b))
    pa, pb = pad(a, m).coeffs, pad(b, m).coeffs
    if all(abs(x - y) <= tol for x, y in zip(pa, pb)):
        return ComparabilityResult(Relation.EQUIVALENT)
    gaps = _prefix_gaps(a, b)
    if all(g >= -tol for g in gaps):
        return ComparabilityResult(Relation.A_CONVERTS_TO_B)
    if all(g <= tol for g in gaps):
        return ComparabilityResult(Relation.B_CONVERTS_TO_A)
    k_a = next(k for k, g in enumerate(gaps, 1) if g < -tol)
    k_b = next(k for k, g in enumerate(gaps, 1) if g > tol)
    return ComparabilityResult(Relation.INCOMPARABLE, (k_a, k_b))


def _require_forward(a, b, tol):
    tag = classify(a, b, tol).tag
    if tag not in (Relation.A_CONVERTS_TO_B, Relation.EQUIVALENT):
        raise NotComparableInDirection(f"pair classifies {tag}, need a -> b")


def epsilon_profile(a: SchmidtVector, b: SchmidtVector, tol: float = COMPARE_TOL) -> EpsilonProfile:
    _require_forward(a, b, tol)
    gaps = _prefix_gaps(a, b)
    return EpsilonProfile((0.0, *gaps[:-1], 0.0))


def concurrence_gap(a: SchmidtVector, b: SchmidtVector, tol: float = COMPARE_TOL) -> float:
    """``C^2(a) - C^2(b)`` for ``a -> b``, via the telescoped nonnegative form

    ``2 * (2 sum_{i<m} (a_i - a_{i+1}) eps_i + sum_{i<=m} (eps_i - eps_{i-1})^2)``.

    Each term is nonnegative because ``a`` is sorted and ``eps >= 0``.
    """
    prof = epsilon_profile(a, b, tol)
    eps, m = prof.eps, prof.m
    alpha = pad(a, m).coeffs
    drift = math.fsum((alpha[i - 1] - alpha[i]) * eps[i] for i in range(1, m))
    spread = math.fsum((eps[i] - eps[i - 1]) ** 2 for i in range(1, m + 1))
    return 2.0 * (2.0 * drift + spread)


def direct_concurrence_gap(a: SchmidtVector, b: SchmidtVector) -> float:
    return concurrence_squared(a) - concurrence_squared(b)
