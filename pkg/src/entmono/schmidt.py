"""Schmidt vectors and closed-form entanglement measures of pure bipartite states.

A pure state ``sum_i sqrt(mu_i) |a_i>|b_i>`` is characterised, up to local
unitaries, by its Schmidt vector ``(mu_1 >= mu_2 >= ... >= 0)``.  Every
measure here is a function of that vector alone:

* entropy of entanglement  ``E = -sum mu log2 mu``   (e-bits)
* concurrence squared      ``C^2 = 2 (1 - sum mu^2) = 4 sum_{i<j} mu_i mu_j``
* negativity               ``N = ((sum sqrt(mu))^2 - 1) / 2``
* purity of the reduced state ``Tr rho_A^2 = sum mu^2``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyInput, NegativeCoefficient, NotNormalized

NORM_TOL = 1e-9
ZERO_THRESHOLD = 1e-12

# Set to False to skip the pairwise-product cross-check in concurrence_squared.
SELF_CHECK = __debug__


@dataclass(frozen=True)
class SchmidtVector:
    """Non-increasing probability vector of Schmidt coefficients.

    Trailing zeros are allowed (they pad a vector to a common length when
    comparing states) and do not count towards :attr:`effective_rank`.
    Build instances with :func:`make_schmidt`; the constructor only validates.
    """

    coeffs: tuple[float, ...]
    zero_threshold: float = ZERO_THRESHOLD
    norm_tol: float = NORM_TOL

    def __post_init__(self):
        c = self.coeffs
        if len(c) == 0:
            raise EmptyInput("Schmidt vector needs at least one coefficient")
        if any(x < 0.0 for x in c):
            raise NegativeCoefficient(f"negative coefficient in {c}")
        if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
            raise ValueError(f"coefficients must be non-increasing: {c}")
        total = math.fsum(c)
        if abs(total - 1.0) > self.norm_tol:
            raise NotNormalized(f"coefficients sum to {total!r}, not 1")
        if self.effective_rank < 1:
            raise ValueError("at least one coefficient must exceed the zero threshold")

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def effective_rank(self) -> int:
        return sum(1 for x in self.coeffs if x > self.zero_threshold)

    def nonzero(self) -> tuple[float, ...]:
        return tuple(x for x in self.coeffs if x > 0.0)


@dataclass(frozen=True)
class MeasureSet:
    entropy: float
    concurrence: float
    concurrence_squared: float
    negativity: float
    purity: float
    effective_rank: int


def make_schmidt(
    raw: Iterable[float],
    normalize: bool = False,
    tol: float = NORM_TOL,
    zero_threshold: float = ZERO_THRESHOLD,
) -> SchmidtVector:
    """Build a :class:`SchmidtVector` from raw coefficients in any order.

    Entries in ``[-tol, 0)`` are clamped to zero.  With ``normalize`` the
    entries are rescaled to sum to one; otherwise their sum must already be
    within ``tol`` of one and the values are kept exactly as given.

    >>> make_schmidt([0.306, 0.46, 0.234]).coeffs
    (0.46, 0.306, 0.234)
    >>> make_schmidt([2, 1, 1], normalize=True).coeffs
    (0.5, 0.25, 0.25)
    """
    values = [float(x) for x in raw]
    if not values:
        raise EmptyInput("no coefficients given")
    for x in values:
        if not math.isfinite(x):
            raise ValueError(f"non-finite coefficient {x!r}")
        if x < -tol:
            raise NegativeCoefficient(f"coefficient {x!r} is negative")
    values = [max(x, 0.0) for x in values]
    total = math.fsum(values)
    if normalize:
        if total <= 0.0:
            raise NotNormalized("coefficients sum to zero; cannot normalise")
        values = [x / total for x in values]
    elif abs(total - 1.0) > tol:
        raise NotNormalized(f"coefficients sum to {total!r}, not 1 (tol {tol:g})")
    values.sort(reverse=True)
    return SchmidtVector(tuple(values), zero_threshold=zero_threshold, norm_tol=tol)


def _coeffs(v) -> Sequence[float]:
    return v.coeffs if isinstance(v, SchmidtVector) else tuple(v)


def entropy_of_entanglement(v: SchmidtVector) -> float:
    """Von Neumann entropy of the reduced state in e-bits, with ``0 log 0 = 0``."""
    return -math.fsum(x * math.log2(x) for x in _coeffs(v) if x > 0.0) + 0.0


def purity(v: SchmidtVector) -> float:
    return math.fsum(x * x for x in _coeffs(v))


def concurrence_squared(v: SchmidtVector) -> float:
    c = _coeffs(v)
    value = 2.0 * (1.0 - purity(c))
    if SELF_CHECK:
        pairwise = 4.0 * math.fsum(
            c[i] * c[j] for i in range(len(c)) for j in range(i + 1, len(c))
        )
        # The two forms coincide only for exactly normalised input.
        slack = 1e-12 + 4.0 * abs(math.fsum(c) - 1.0)
        assert abs(pairwise - value) <= slack, (pairwise, value)
    return max(value, 0.0)


def concurrence(v: SchmidtVector) -> float:
    return math.sqrt(concurrence_squared(v))


def negativity(v: SchmidtVector) -> float:
    s = math.fsum(math.sqrt(x) for x in _coeffs(v))
    return max((s * s - 1.0) / 2.0, 0.0)


def measures(v: SchmidtVector) -> MeasureSet:
    c2 = concurrence_squared(v)
    p = purity(v)
    assert abs(p + c2 / 2.0 - 1.0) <= 1e-12 + abs(math.fsum(_coeffs(v)) - 1.0) * 2
    return MeasureSet(
        entropy=entropy_of_entanglement(v),
        concurrence=math.sqrt(c2),
        concurrence_squared=c2,
        negativity=negativity(v),
        purity=p,
        effective_rank=v.effective_rank,
    )
