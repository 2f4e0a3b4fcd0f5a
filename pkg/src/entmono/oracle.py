"""First-principles recomputation of entanglement measures from explicit state vectors.

Nothing here uses the Schmidt-form shortcuts of :mod:`entmono.schmidt`.  A
Schmidt vector is embedded as a real amplitude vector in ``H_A (x) H_B``
(optionally scrambled by random local rotations), reduced density matrices
and partial transposes are formed explicitly, and spectra come from a
self-contained Jacobi eigensolver.  Agreement with the closed forms is the
point of the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotSymmetric, RankExceedsDims
from .schmidt import SchmidtVector

STATE_NORM_TOL = 1e-12
EIG_TOL = 1e-12
MAX_SWEEPS = 100
GIVENS_PER_SIDE = 20


@dataclass(frozen=True, eq=False)
class PureStateVector:
    """Real amplitudes ``amp[i * n + j]`` of ``sum_ij amp(i,j) |i>_A |j>_B``."""

    amplitudes: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        m, n = self.dims
        if m < 1 or n < 1:
            raise ValueError(f"local dimensions must be positive, got {self.dims}")
        amp = np.asarray(self.amplitudes, dtype=float).reshape(-1)
        if amp.size != m * n:
            raise ValueError(f"expected {m * n} amplitudes, got {amp.size}")
        norm2 = math.fsum(amp * amp)
        if abs(norm2 - 1.0) > STATE_NORM_TOL:
            raise ValueError(f"state norm^2 is {norm2!r}, not 1")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def matrix(self) -> np.ndarray:
        """Amplitudes as an ``m x n`` coefficient matrix."""
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))


def givens_rotation(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Orthogonal matrix composed of ``count`` random 2-plane rotations."""
    q = np.eye(dim)
    if dim < 2:
        return q
    for _ in range(count):
        p, r = rng.choice(dim, size=2, replace=False)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        c, s = math.cos(theta), math.sin(theta)
        rp, rr = q[p].copy(), q[r].copy()
        q[p] = c * rp - s * rr
        q[r] = s * rp + c * rr
    return q


def embed_state(v: SchmidtVector, dims: tuple[int, int], rng=None) -> PureStateVector:
    """Place ``sqrt(mu_i)`` on the ``(i, i)`` amplitudes of an ``m x n`` system.

    If ``rng`` (a numpy Generator or an integer seed) is given, independent
    random orthogonal rotations are applied on each side, which leaves every
    entanglement measure unchanged.
    """
    m, n = dims
    k = v.effective_rank
    if k > min(m, n):
        raise RankExceedsDims(f"Schmidt rank {k} does not fit in dims {dims}")
    psi = np.zeros((m, n))
    for i, mu in enumerate(v.coeffs[: min(m, n)]):
        psi[i, i] = math.sqrt(mu)
    if rng is not None:
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        u_a = givens_rotation(m, GIVENS_PER_SIDE, rng)
        u_b = givens_rotation(n, GIVENS_PER_SIDE, rng)
        psi = u_a @ psi @ u_b.T
    return PureStateVector(psi.reshape(-1), (m, n))


def reduce_A(s: PureStateVector) -> DensityMatrix:
    """Partial trace over B: ``rho_A[i, i'] = sum_j amp(i, j) amp(i', j)``."""
    psi = s.matrix()
    return DensityMatrix(psi @ psi.T)


def density_matrix(s: PureStateVector) -> DensityMatrix:
    return DensityMatrix(np.outer(s.amplitudes, s.amplitudes))


def partial_transpose_A(rho: DensityMatrix, dims: tuple[int, int]) -> DensityMatrix:
    """Transpose the A indices: ``rho^TA[(i,j),(i',j')] = rho[(i',j),(i,j')]``."""
    m, n = dims
    t = rho.entries.reshape(m, n, m, n).transpose(2, 1, 0, 3)
    return DensityMatrix(t.reshape(m * n, m * n))


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    # Circle-method tournament: every index pair meets exactly once per sweep.
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = []
        for i in range(size // 2):
            p, q = players[i], players[size - 1 - i]
            if p >= 0 and q >= 0:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def eig_sym(m, tol: float = EIG_TOL, max_sweeps: int = MAX_SWEEPS) -> list[float]:
    """Eigenvalues of a real symmetric matrix, sorted descending.

    Cyclic Jacobi with round-robin ordering: each step annihilates a set of
    disjoint off-diagonal pairs at once.  Iterates until the off-diagonal
    Frobenius norm is below ``tol * max(1, ||A||_F)``.

    Raises
    ------
    NotSymmetric
        If ``|A - A^T|`` exceeds ``tol`` anywhere.
    NoConvergence
        If ``max_sweeps`` full sweeps do not reach the tolerance.
    """
    a = np.array(m.entries if isinstance(m, DensityMatrix) else m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if np.max(np.abs(a - a.T), initial=0.0) > tol:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        if _off_norm(a) < threshold:
            return sorted(np.diag(a).tolist(), reverse=True)
        for pairs in rounds:
            if not pairs:
                continue
            p = np.array([pq[0] for pq in pairs])
            q = np.array([pq[1] for pq in pairs])
            apq = a[p, q]
            active = apq != 0.0
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            with np.errstate(over="ignore"):
                # For huge theta, t ~ 1/(2 theta); the overflow branch gives 0, harmless.
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a = 0.5 * (a + a.T)
    if _off_norm(a) < threshold:
        return sorted(np.diag(a).tolist(), reverse=True)
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def entropy_via_eigen(rho: DensityMatrix) -> float:
    lam = eig_sym(rho)
    return -math.fsum(x * math.log2(x) for x in lam if x > 1e-12) + 0.0


def purity_via_trace(rho: DensityMatrix) -> float:
    """``Tr rho^2`` computed from matrix entries."""
    return math.fsum((rho.entries * rho.entries.T).reshape(-1))


def concurrence_via_purity(rho_a: DensityMatrix) -> float:
    return math.sqrt(max(2.0 * (1.0 - purity_via_trace(rho_a)), 0.0))


def concurrence_via_minors(s: PureStateVector) -> float:
    """Concurrence from the amplitude matrix without forming ``1 - Tr rho_A^2``.

    ``2 (1 - Tr rho_A^2) = 4 e2(rho_A)`` and, by Cauchy-Binet,
    ``e2(Psi Psi^T)`` is the sum of squared 2x2 minors of ``Psi``.  This stays
    accurate near product states, where the purity form loses ~8 digits to
    the square root.
    """
    psi = s.matrix()
    minors = np.einsum("ij,kl->ikjl", psi, psi) - np.einsum("il,kj->ikjl", psi, psi)
    m, n = s.dims
    iu = np.triu(np.ones((m, m), dtype=bool), 1)[:, :, None, None]
    ju = np.triu(np.ones((n, n), dtype=bool), 1)[None, None, :, :]
    total = math.fsum((minors[iu & ju] ** 2).tolist()) if m > 1 and n > 1 else 0.0
    return 2.0 * math.sqrt(total)


def pt_spectrum(s: PureStateVector) -> list[float]:
    """Eigenvalues of the A-partial transpose of ``|psi><psi|``, descending."""
    return eig_sym(partial_transpose_A(density_matrix(s), s.dims))


def negativity_via_pt(s: PureStateVector) -> float:
    """``|sum of negative eigenvalues of rho^TA|``, cross-checked against the trace norm."""
    lam = pt_spectrum(s)
    from_negatives = -math.fsum(x for x in lam if x < 0.0)
    from_trace_norm = (math.fsum(abs(x) for x in lam) - 1.0) / 2.0
    if abs(from_negatives - from_trace_norm) > 1e-10:
        raise AssertionError(
            f"negativity forms disagree: {from_negatives!r} vs {from_trace_norm!r}"
        )
    return from_negatives + 0.0
