"""Seeded exploration of the Schmidt simplex.

Two jobs:

* build comparable pairs (``u`` majorized by ``v``) and confirm that entropy,
  concurrence and negativity all order them the same way;
* scan independent random pairs for *flips*, where entropy and a second
  measure order a pair oppositely.  Every flip must be an incomparable pair.

Randomness: sample ``idx`` of a search draws from its own substream
``PCG64(SeedSequence(seed, spawn_key=(idx,)))``, so results do not depend on
how indices are split across worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import comparability
from .comparability import ComparabilityResult, Relation, classify
from .errors import PropertyViolation
from .schmidt import (
    SchmidtVector,
    concurrence,
    concurrence_squared,
    entropy_of_entanglement,
    make_schmidt,
    negativity,
)

GENERATOR = f"numpy.random.PCG64 (numpy {np.__version__}), SeedSequence spawn_key=(index,)"
DEFAULT_SEED = 1729
DEFAULT_MARGIN = 1e-9
BLOCK = 2048
MEASURES = ("concurrence", "negativity")

_MEASURE_FNS = {"concurrence": concurrence, "negativity": negativity}


def substream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample_simplex(rank: int, rng: np.random.Generator) -> SchmidtVector:
    """Uniform draw from the ``(rank-1)``-simplex (normalised exponentials), sorted."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    return make_schmidt(rng.standard_exponential(rank), normalize=True)


def perturb(v: SchmidtVector, delta: float, rng: np.random.Generator) -> SchmidtVector:
    """Jitter each coefficient uniformly in ``[-delta, delta]``, clamp, renormalise, re-sort."""
    raw = np.maximum(np.asarray(v.coeffs) + rng.uniform(-delta, delta, len(v)), 0.0)
    if not raw.any():
        return v
    return make_schmidt(raw, normalize=True)


def random_majorized(v: SchmidtVector, steps: int, rng: np.random.Generator) -> SchmidtVector:
    """Apply ``steps`` random Robin-Hood transfers to ``v``.

    Each step picks two coordinates ``c_i >= c_j`` and moves ``f * (c_i - c_j) / 2``
    from the larger to the smaller, with ``f`` uniform on ``[0, 1)``.  The
    result is majorized by ``v``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    c = list(v.coeffs)
    n = len(c)
    if n < 2:
        return v
    for _ in range(steps):
        i = int(rng.integers(n))
        j = int(rng.integers(n - 1))
        if j >= i:
            j += 1
        if i > j:
            i, j = j, i
        gap = c[i] - c[j]
        if gap <= 0.0:
            continue
        amount = float(rng.random()) * gap / 2.0
        c[i] -= amount
        c[j] += amount
        c.sort(reverse=True)
    return make_schmidt(c, tol=v.norm_tol, zero_threshold=v.zero_threshold)


@dataclass(frozen=True)
class SearchConfig:
    rank: int
    samples: int
    seed: int = DEFAULT_SEED
    measure: str = "concurrence"
    strict_margin: float = DEFAULT_MARGIN
    perturb: Optional[float] = None

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("rank must be >= 2")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.measure not in MEASURES:
            raise ValueError(f"measure must be one of {MEASURES}")
        if not self.strict_margin > 0:
            raise ValueError("strict_margin must be positive")
        if self.perturb is not None and not self.perturb > 0:
            raise ValueError("perturb must be positive")


@dataclass(frozen=True)
class CounterexampleRecord:
    idx: int
    vec_a: SchmidtVector
    vec_b: SchmidtVector
    e_a: float
    e_b: float
    m_a: float
    m_b: float
    classification: ComparabilityResult


def is_flip(e_a, e_b, m_a, m_b, margin) -> bool:
    de, dm = e_a - e_b, m_a - m_b
    return abs(de) > margin and abs(dm) > margin and (de > 0) != (dm > 0)


def _record(idx, a, b, measure, margin) -> Optional[CounterexampleRecord]:
    fn = _MEASURE_FNS[measure]
    e_a, e_b = entropy_of_entanglement(a), entropy_of_entanglement(b)
    m_a, m_b = fn(a), fn(b)
    if not is_flip(e_a, e_b, m_a, m_b, margin):
        return None
    cls = classify(a, b)
    if cls.tag is not Relation.INCOMPARABLE:
        raise PropertyViolation(
            f"{measure} flip on a pair classified {cls.tag}; contradicts Schur-concavity",
            pair=(a, b),
        )
    return CounterexampleRecord(idx, a, b, e_a, e_b, m_a, m_b, cls)


def scan_pairs(pairs: Iterable[tuple[SchmidtVector, SchmidtVector]],
               measure: str = "concurrence",
               margin: float = DEFAULT_MARGIN) -> list[CounterexampleRecord]:
    """Flip records for explicitly supplied pairs, indexed by position."""
    out = []
    for idx, (a, b) in enumerate(pairs):
        rec = _record(idx, a, b, measure, margin)
        if rec is not None:
            out.append(rec)
    return out


def _vector_measures(x: np.ndarray, measure: str):
    with np.errstate(divide="ignore", invalid="ignore"):
        e = -np.sum(np.where(x > 0, x * np.log2(np.where(x > 0, x, 1.0)), 0.0), axis=1)
    if measure == "concurrence":
        m = np.sqrt(np.maximum(2.0 * (1.0 - np.sum(x * x, axis=1)), 0.0))
    else:
        m = (np.sum(np.sqrt(x), axis=1) ** 2 - 1.0) / 2.0
    return e, m


def _scan_block(cfg: SearchConfig, start: int, stop: int) -> list[CounterexampleRecord]:
    raw_a = np.empty((stop - start, cfg.rank))
    raw_b = np.empty_like(raw_a)
    for row, idx in enumerate(range(start, stop)):
        rng = substream(cfg.seed, idx)
        raw_a[row] = rng.standard_exponential(cfg.rank)
        if cfg.perturb is None:
            raw_b[row] = rng.standard_exponential(cfg.rank)
        else:
            a = make_schmidt(raw_a[row], normalize=True)
            raw_b[row] = perturb(a, cfg.perturb, rng).coeffs
    xa = -np.sort(-raw_a / raw_a.sum(axis=1, keepdims=True), axis=1)
    xb = -np.sort(-raw_b / raw_b.sum(axis=1, keepdims=True), axis=1)
    ea, ma = _vector_measures(xa, cfg.measure)
    eb, mb = _vector_measures(xb, cfg.measure)
    # Vectorised prefilter at half margin; survivors are decided by the scalar path.
    half = cfg.strict_margin / 2.0
    de, dm = ea - eb, ma - mb
    cand = (np.abs(de) > half) & (np.abs(dm) > half) & ((de > 0) != (dm > 0))
    out = []
    for row in np.flatnonzero(cand):
        a = make_schmidt(raw_a[row], normalize=True)
        b = make_schmidt(raw_b[row], normalize=True)
        rec = _record(start + int(row), a, b, cfg.measure, cfg.strict_margin)
        if rec is not None:
            out.append(rec)
    return out


def find_nonmonotonic_pairs(cfg: SearchConfig, workers: int = 1) -> list[CounterexampleRecord]:
    """All sampled pairs whose entropy and ``cfg.measure`` orderings strictly oppose.

    Output is sorted by sample index and identical for any ``workers``.
    """
    bounds = [(s, min(s + BLOCK, cfg.samples)) for s in range(0, cfg.samples, BLOCK)]
    if workers <= 1 or len(bounds) == 1:
        blocks = [_scan_block(cfg, s, e) for s, e in bounds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_scan_block, [cfg] * len(bounds), *zip(*bounds)))
    return [rec for block in blocks for rec in block]


@dataclass
class VerifyReport:
    rank: int
    trials: int
    seed: int
    equivalent: int = 0
    converts: int = 0
    strict_checked: int = 0
    max_gap_residual: float = 0.0
    min_gap: float = math.inf
    violations: int = 0


ORDER_TOL = 1e-12
STRICT_GAP = 1e-9


def comparable_pair(rank: int, rng: np.random.Generator) -> tuple[SchmidtVector, SchmidtVector]:
    """Random ``(u, v)`` with ``u`` majorized by ``v``, both of length ``rank``.

    ``v`` has a random Schmidt rank in ``1..rank`` (zero padded) so transfers
    can raise the rank of ``u``; one pair in sixteen is degenerate (``u = v``).
    """
    k = int(rng.integers(1, rank + 1))
    v = comparability.pad(sample_simplex(k, rng), rank)
    if rng.random() < 1.0 / 16.0:
        return v, v
    steps = int(rng.integers(1, 2 * rank + 1))
    return random_majorized(v, steps, rng), v


def verify_monotone_on_comparable(rank: int, trials: int, seed: int = DEFAULT_SEED) -> VerifyReport:
    """Check E, C, N orderings and the concurrence-gap identity on comparable pairs.

    Raises
    ------
    PropertyViolation
        On the first failing pair, which is attached to the exception.
    """
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(rank,))))
    rep = VerifyReport(rank=rank, trials=trials, seed=seed)
    for _ in range(trials):
        u, v = comparable_pair(rank, rng)
        tag = classify(u, v).tag
        if tag is Relation.EQUIVALENT:
            rep.equivalent += 1
        elif tag is Relation.A_CONVERTS_TO_B:
            rep.converts += 1
        else:
            raise PropertyViolation(f"majorized pair classified {tag}", pair=(u, v))

        e_u, e_v = entropy_of_entanglement(u), entropy_of_entanglement(v)
        c2_u, c2_v = concurrence_squared(u), concurrence_squared(v)
        c_u, c_v = math.sqrt(c2_u), math.sqrt(c2_v)
        n_u, n_v = negativity(u), negativity(v)
        for name, x, y in (("entropy", e_u, e_v), ("concurrence", c_u, c_v),
                           ("negativity", n_u, n_v)):
            if x < y - ORDER_TOL:
                raise PropertyViolation(f"{name} increased under LOCC: {x!r} < {y!r}", pair=(u, v))

        gap = comparability.concurrence_gap(u, v)
        residual = abs(gap - (c2_u - c2_v))
        rep.max_gap_residual = max(rep.max_gap_residual, residual)
        rep.min_gap = min(rep.min_gap, gap)
        if gap < -ORDER_TOL:
            raise PropertyViolation(f"closed-form concurrence gap negative: {gap!r}", pair=(u, v))
        if residual > 1e-10:
            raise PropertyViolation(f"gap identity residual {residual!r}", pair=(u, v))
        if tag is Relation.A_CONVERTS_TO_B and gap > STRICT_GAP:
            rep.strict_checked += 1
            if not (e_u > e_v and c_u > c_v):
                raise PropertyViolation("strict conversion without strict E and C decrease",
                                        pair=(u, v))
    return rep
