import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from entmono import oracle
from entmono.errors import NoConvergence, NotSymmetric, RankExceedsDims
from entmono.sampling import sample_simplex
from entmono.schmidt import entropy_of_entanglement, make_schmidt, measures, negativity


def inertia_below(a, x):
    """Eigenvalues of symmetric ``a`` below ``x``: negative pivots of LDL^T of ``a - x I``."""
    m = np.array(a, dtype=float) - x * np.eye(len(a))
    n = len(m)
    count = 0
    for k in range(n):
        piv = m[k, k]
        if piv == 0.0:
            piv = 1e-300
        if piv < 0:
            count += 1
        m[k + 1:, k + 1:] -= np.outer(m[k + 1:, k], m[k, k + 1:]) / piv
    return count


def eigenvalues_by_bisection(a, tol=1e-13):
    """Independent oracle: each eigenvalue located by bisection on the inertia count."""
    a = np.asarray(a, dtype=float)
    n = len(a)
    r = max(abs(a[i, i]) + sum(abs(a[i, j]) for j in range(n) if j != i) for i in range(n))
    out = []
    for k in range(n):
        lo, hi = -r - 1.0, r + 1.0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if inertia_below(a, mid) > k:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return sorted(out, reverse=True)


class TestEmbed:
    def test_bell(self):
        s = oracle.embed_state(make_schmidt([0.5, 0.5]), (2, 2))
        assert_allclose(s.amplitudes, [math.sqrt(0.5), 0, 0, math.sqrt(0.5)])

    def test_product(self):
        s = oracle.embed_state(make_schmidt([1.0]), (2, 2))
        assert_allclose(s.amplitudes, [1, 0, 0, 0])

    def test_diagonal_qutrits(self):
        s = oracle.embed_state(make_schmidt([0.46, 0.306, 0.234]), (3, 3))
        assert_allclose(np.diag(s.matrix()), np.sqrt([0.46, 0.306, 0.234]))
        assert np.count_nonzero(s.matrix()) == 3

    def test_rank_exceeds_dims(self):
        with pytest.raises(RankExceedsDims):
            oracle.embed_state(make_schmidt([1 / 3] * 3), (2, 4))

    def test_padded_vector_fits(self):
        s = oracle.embed_state(make_schmidt([0.5, 0.5, 0.0, 0.0]), (2, 2))
        assert_allclose(s.amplitudes, [math.sqrt(0.5), 0, 0, math.sqrt(0.5)])

    def test_rotations_preserve_norm_and_are_seeded(self):
        v = make_schmidt([0.4, 0.3, 0.2, 0.1])
        s1 = oracle.embed_state(v, (4, 4), rng=3)
        s2 = oracle.embed_state(v, (4, 4), rng=3)
        assert np.array_equal(s1.amplitudes, s2.amplitudes)
        assert abs(np.sum(s1.amplitudes ** 2) - 1) < 1e-12
        assert np.count_nonzero(np.abs(s1.matrix()) > 1e-6) > 4


class TestReduce:
    def test_diagonal_embedding(self):
        v = make_schmidt([0.46, 0.306, 0.234])
        rho = oracle.reduce_A(oracle.embed_state(v, (3, 4)))
        assert_allclose(rho.entries, np.diag(v.coeffs), atol=1e-15)
        assert abs(rho.trace() - 1) < 1e-12

    def test_rotated_spectrum(self):
        v = make_schmidt([0.46, 0.306, 0.234])
        rho = oracle.reduce_A(oracle.embed_state(v, (4, 3), rng=11))
        assert_allclose(oracle.eig_sym(rho), list(v.coeffs) + [0.0], atol=1e-10)

    def test_product_is_projector(self):
        rho = oracle.reduce_A(oracle.embed_state(make_schmidt([1.0]), (3, 3), rng=2))
        assert_allclose(rho.entries @ rho.entries, rho.entries, atol=1e-14)
        assert_allclose(oracle.eig_sym(rho), [1, 0, 0], atol=1e-12)


class TestEigSym:
    def test_diagonal(self):
        assert oracle.eig_sym(np.diag([0.2, 0.5, 0.3])) == [0.5, 0.3, 0.2]

    def test_antidiagonal(self):
        assert_allclose(oracle.eig_sym([[0.0, 0.7], [0.7, 0.0]]), [0.7, -0.7], atol=1e-15)

    def test_one_by_one(self):
        assert oracle.eig_sym([[2.5]]) == [2.5]

    @pytest.mark.parametrize("seed", range(10))
    def test_random_4x4_against_bisection(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(4, 4))
        a = a + a.T
        lam = oracle.eig_sym(a)
        assert_allclose(lam, eigenvalues_by_bisection(a), atol=1e-9)
        assert abs(sum(lam) - np.trace(a)) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 5, 9, 16])
    def test_against_lapack(self, n):
        rng = np.random.default_rng(n)
        a = rng.normal(size=(n, n))
        a = a + a.T
        assert_allclose(oracle.eig_sym(a), np.linalg.eigvalsh(a)[::-1], atol=1e-12)

    def test_repeated_eigenvalues(self):
        q = oracle.givens_rotation(5, 30, np.random.default_rng(0))
        a = q @ np.diag([1.0, 1.0, 1.0, -2.0, 0.0]) @ q.T
        assert_allclose(oracle.eig_sym(a), [1, 1, 1, 0, -2], atol=1e-12)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            oracle.eig_sym([[1.0, 2.0], [0.0, 1.0]])

    def test_sweep_cap(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(6, 6))
        with pytest.raises(NoConvergence):
            oracle.eig_sym(a + a.T, max_sweeps=1)


class TestNegativityViaPT:
    def test_product(self):
        s = oracle.embed_state(make_schmidt([1.0]), (3, 2), rng=4)
        assert abs(oracle.negativity_via_pt(s)) < 1e-12

    def test_bell(self):
        s = oracle.embed_state(make_schmidt([0.5, 0.5]), (2, 2))
        assert_allclose(oracle.negativity_via_pt(s), 0.5, atol=1e-15)
        assert_allclose(min(oracle.pt_spectrum(s)), -0.5, atol=1e-15)

    def test_qutrit_fixture(self):
        v = make_schmidt([0.46, 0.306, 0.234])
        n = oracle.negativity_via_pt(oracle.embed_state(v, (3, 3)))
        assert abs(n - negativity(v)) <= 1e-10
        assert abs(n - 0.9709) < 1e-4

    @pytest.mark.parametrize("coeffs, dims", [
        ((0.46, 0.306, 0.234), (3, 3)),
        ((0.4, 0.3, 0.2, 0.1), (4, 4)),
        ((0.7, 0.3), (2, 4)),
        ((0.5, 0.25, 0.25), (4, 3)),
    ])
    def test_pt_spectrum_structure(self, coeffs, dims):
        v = make_schmidt(coeffs)
        lam = oracle.pt_spectrum(oracle.embed_state(v, dims))
        expected = list(coeffs)
        for i, j in itertools.combinations(range(len(coeffs)), 2):
            r = math.sqrt(coeffs[i] * coeffs[j])
            expected += [r, -r]
        expected += [0.0] * (dims[0] * dims[1] - len(expected))
        assert_allclose(lam, sorted(expected, reverse=True), atol=1e-10)


class TestEntropyViaEigen:
    def test_values(self):
        assert oracle.entropy_via_eigen(oracle.DensityMatrix([[1.0]])) == 0.0
        third = oracle.DensityMatrix(np.eye(3) / 3)
        assert abs(oracle.entropy_via_eigen(third) - math.log2(3)) < 1e-15

    def test_cross_module(self):
        v = make_schmidt([0.46, 0.306, 0.234])
        rho = oracle.DensityMatrix(np.diag(v.coeffs))
        assert abs(oracle.entropy_via_eigen(rho) - entropy_of_entanglement(v)) <= 1e-10


def test_purity_route_on_entangled_states():
    rng = np.random.default_rng(99)
    for _ in range(200):
        k = int(rng.integers(2, 5))
        v = sample_simplex(k, rng)
        s = oracle.embed_state(v, (4, 4), rng)
        c = oracle.concurrence_via_purity(oracle.reduce_A(s))
        assert abs(c - measures(v).concurrence) <= 1e-10


def test_minors_route_exact_on_product_states():
    s = oracle.embed_state(make_schmidt([1.0]), (4, 3), rng=5)
    assert oracle.concurrence_via_minors(s) < 1e-14
