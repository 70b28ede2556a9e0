import itertools
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from ccomplex.laurent import LaurentPoly, PolyMatrix
from ccomplex.model import CComplexData

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "ccomplex" / "fixtures"

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def fixture(name):
    with open(FIXTURES / name) as fh:
        return CComplexData.from_json(json.load(fh))


@pytest.fixture
def hopf():
    return fixture("hopf.json")


@pytest.fixture
def trefoil():
    return fixture("trefoil.json")


def polys(nvars, max_terms=6, lo=-4, hi=4, coef=5):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    coefs = st.integers(-coef, coef).filter(bool)
    return st.dictionaries(exps, coefs, max_size=max_terms).map(
        lambda d: LaurentPoly(d, nvars))


def random_poly(rng, nvars, max_terms=4, lo=-2, hi=2, coef=3):
    terms = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        e = tuple(int(x) for x in rng.integers(lo, hi + 1, size=nvars))
        terms[e] = terms.get(e, 0) + int(rng.integers(-coef, coef + 1))
    return LaurentPoly(terms, nvars)


def random_poly_matrix(rng, size, nvars, **kw):
    return PolyMatrix([[random_poly(rng, nvars, **kw) for _ in range(size)]
                       for _ in range(size)], nvars)


def seifert_aggregate(v):
    """tV - t^{-1}V^T written out entry by entry, independently of aggregate()."""
    v = np.asarray(v)
    k = v.shape[0]
    rows = []
    for i in range(k):
        rows.append([LaurentPoly({(1,): int(v[i, j]), (-1,): -int(v[j, i])}, 1)
                     for j in range(k)])
    return PolyMatrix(rows, 1)


# -- characteristic-polynomial oracle for small Hermitian matrices ----------------

def gaussian_charpoly(h):
    """Coefficients of det(x I - h), highest degree first, for a Hermitian
    matrix with Gaussian-integer entries (exact in Python complex)."""
    k = len(h)
    coeffs = [0] * (k + 1)
    # det(xI - H) = sum over permutations; expand each product as a
    # polynomial in x
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k)
                  if perm[i] > perm[j])
        poly = [1]
        for i in range(k):
            if perm[i] == i:
                factor = [1, -h[i][i]]
            else:
                factor = [-h[i][perm[i]]]
            out = [0] * (len(poly) + len(factor) - 1)
            for a, pa in enumerate(poly):
                for b, fb in enumerate(factor):
                    out[a + b] += pa * fb
            poly = out
        sign = -1 if inv % 2 else 1
        pad = k + 1 - len(poly)
        for d, c in enumerate(poly):
            coeffs[pad + d] += sign * c
    real = []
    for c in coeffs:
        c = complex(c)
        assert c.imag == 0
        real.append(int(c.real))
    return real


def sign_changes(seq):
    s = [x for x in seq if x]
    return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))


def descartes_inertia(h):
    c = gaussian_charpoly(h)
    k = len(c) - 1
    zero = 0
    while zero < k and c[k - zero] == 0:
        zero += 1
    pos = sign_changes(c)
    neg = sign_changes([x * (-1) ** (k - d) for d, x in enumerate(c)])
    return pos, neg, zero


def random_gaussian_hermitian(rng, k):
    a = rng.integers(-3, 4, size=(k, k)) + 1j * rng.integers(-3, 4, size=(k, k))
    h = a + a.conj().T
    if k > 1 and rng.random() < 0.4:
        # force a kernel: last row/column a combination of the others
        c = rng.integers(-1, 2, size=k - 1)
        b = h[:k - 1, :k - 1]
        col = b @ c
        h = np.zeros((k, k), dtype=complex)
        h[:k - 1, :k - 1] = b
        h[:k - 1, k - 1] = col
        h[k - 1, :k - 1] = col.conj()
        h[k - 1, k - 1] = np.real(c.conj() @ b @ c)
    return h
