from fractions import Fraction

import numpy as np
import pytest

from ccomplex.model import EpsMatrixFamily, ValidationError
from ccomplex.moves import (congruence, random_symmetric_family,
                            random_torus_point, random_unimodular)
from ccomplex.signature import (HermitianEval, SigNull, TorusPoint,
                                hermitian_at, hermitian_eigenvalues, inertia,
                                jacobi_eigenvalues, sig_null,
                                signature_nullity, torus_grid)

from conftest import descartes_inertia, fixture, random_gaussian_hermitian

V = np.array([[-1, 1], [0, -1]])


# -- points ---------------------------------------------------------------------

def test_point_from_angles():
    w = TorusPoint.from_angles(["1/2", Fraction(1, 4)])
    assert w.coords == (-1 + 0j, 1j)
    assert w.labels() == ["1/2", "1/4"]


@pytest.mark.parametrize("coords", [[1.0], [0.5j], [2.0]])
def test_point_rejects(coords):
    with pytest.raises(ValueError):
        TorusPoint.from_complex(coords)


def test_point_rejects_integer_angle():
    with pytest.raises(ValueError):
        TorusPoint.from_angles([1])


# -- the Hermitian matrix -----------------------------------------------------------

def test_hermitian_empty():
    w = TorusPoint.from_angles(["1/3", "1/3"])
    assert hermitian_at(EpsMatrixFamily.empty(2), w).size == 0


def test_hermitian_n1_at_minus_one():
    fam = EpsMatrixFamily.from_matrices(1, {(1,): V, (-1,): V.T})
    h = hermitian_at(fam, TorusPoint.from_angles(["1/2"]))
    assert np.allclose(h.matrix, 2 * (V + V.T))


def test_hermitian_all_ones_at_minus_one():
    # every weight prod_i (1 - conj(w_i)^eps_i) equals 2 * 2 at (-1, -1)
    fam = EpsMatrixFamily.from_function(2, 1, lambda eps: np.ones((1, 1)))
    h = hermitian_at(fam, TorusPoint.from_angles(["1/2", "1/2"]))
    assert np.allclose(h.matrix, [[16]])


def test_hermitian_point_dimension():
    fam = EpsMatrixFamily.from_matrices(1, {(1,): V, (-1,): V.T})
    with pytest.raises(ValueError):
        hermitian_at(fam, TorusPoint.from_angles(["1/2", "1/2"]))


def test_non_hermitian_rejected():
    with pytest.raises(ValueError):
        HermitianEval(np.array([[0, 1j], [1j, 0]]))


# -- signature and nullity --------------------------------------------------------

def test_trefoil_at_minus_one(trefoil):
    w = TorusPoint.from_angles(["1/2"])
    assert signature_nullity(trefoil, w) == SigNull(-2, 0)
    assert np.allclose(hermitian_eigenvalues(2 * (V + V.T)), [-6, -2])


def test_hopf_any_point(hopf):
    for a, b in [("1/2", "1/3"), ("2/7", "5/9")]:
        w = TorusPoint.from_angles([a, b])
        assert signature_nullity(hopf, w) == SigNull(0, 0)


def test_unlink_nullity():
    c = fixture("unlink2.json")
    w = TorusPoint.from_angles(["1/5", "3/4"])
    assert signature_nullity(c, w) == SigNull(0, 1)


def test_sig_null_rejects_non_hermitian(hopf):
    with pytest.raises(ValueError):
        sig_null(np.array([[1, 2], [0, 1]]), hopf)


def test_invalid_data(trefoil):
    bad = trefoil.with_family(EpsMatrixFamily.empty(1))
    with pytest.raises(ValidationError):
        signature_nullity(bad, TorusPoint.from_angles(["1/2"]))


def test_grid_examples(trefoil, hopf):
    rows = torus_grid(trefoil, 2)
    assert len(rows) == 1 and rows[0][1].signature == -2
    assert len(torus_grid(fixture("ribbon_F.json"), 2)) == 1
    rows = torus_grid(hopf, 4)
    assert len(rows) == 9
    assert all(sn == SigNull(0, 0) for _, sn in rows)
    labels = [w.labels() for w, _ in rows]
    assert labels[:3] == [["1/4", "1/4"], ["1/4", "1/2"], ["1/4", "3/4"]]
    with pytest.raises(ValueError):
        torus_grid(hopf, 1)


def test_zero_threshold():
    h = np.diag([1.0, 1e-10, -3.0])
    assert inertia(h) == (1, 1, 1)
    assert inertia(h, tol=1e-12) == (2, 1, 0)


# -- properties -------------------------------------------------------------------

def test_jacobi_matches_numpy():
    rng = np.random.default_rng(1)
    for _ in range(50):
        k = int(rng.integers(1, 9))
        a = rng.normal(size=(k, k))
        s = a + a.T
        assert np.allclose(jacobi_eigenvalues(s), np.linalg.eigvalsh(s),
                           atol=1e-9)


def test_hermitian_1000_random():
    rng = np.random.default_rng(77)
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        fam = random_symmetric_family(n, int(rng.integers(0, 5)), rng)
        h = hermitian_at(fam, random_torus_point(rng, n)).matrix
        assert h.size == 0 or np.max(np.abs(h - h.conj().T)) <= 1e-10


def test_conjugate_point_same_signature(trefoil):
    rng = np.random.default_rng(4)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        fam = random_symmetric_family(n, int(rng.integers(1, 5)), rng)
        w = random_torus_point(rng, n)
        a = inertia(hermitian_at(fam, w).matrix)
        b = inertia(hermitian_at(fam, w.conjugate()).matrix)
        assert a == b


def test_congruence_preserves_inertia():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        size = int(rng.integers(1, 5))
        fam = random_symmetric_family(n, size, rng)
        moved = congruence(fam, random_unimodular(size, rng))
        w = random_torus_point(rng, n)
        assert inertia(hermitian_at(fam, w).matrix) == \
            inertia(hermitian_at(moved, w).matrix)


# -- oracle: characteristic polynomial sign counts ---------------------------------

def test_inertia_matches_charpoly_sign_count():
    rng = np.random.default_rng(31)
    for _ in range(300):
        k = int(rng.integers(1, 4))
        h = random_gaussian_hermitian(rng, k)
        hh = [[complex(int(h[i, j].real), int(h[i, j].imag)) for j in range(k)]
              for i in range(k)]
        assert inertia(h) == descartes_inertia(hh)
