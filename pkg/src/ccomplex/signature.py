"""
Colored-link signature and nullity from a C-complex.

H_F(w) = sum over eps of prod_i (1 - conj(w_i)^eps(i)) A^eps is Hermitian
for every point w of the torus with no coordinate equal to 1.  Its inertia
is computed with cyclic Jacobi rotations on the real symmetric embedding
[[Re H, -Im H], [Im H, Re H]], whose spectrum is that of H, doubled.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .model import CComplexData, EpsMatrixFamily, ValidationError, validate

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

__all__ = [
    "TorusPoint",
    "HermitianEval",
    "SigNull",
    "DEFAULT_ZERO_TOL",
    "hermitian_at",
    "sig_null",
    "inertia",
    "hermitian_eigenvalues",
    "jacobi_eigenvalues",
    "signature_nullity",
    "torus_grid",
]

DEFAULT_ZERO_TOL = 1e-8
UNIT_TOL = 1e-12
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class TorusPoint:
    """A point (w_1, ..., w_n) with |w_i| = 1 and w_i != 1.

    ``angles`` holds the exact form: w_i = exp(2 pi i angles[i]).
    """

    coords: tuple[complex, ...]
    angles: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        for z in self.coords:
            if abs(abs(z) - 1.0) > UNIT_TOL:
                raise ValueError(f"{z} is not on the unit circle")
            if abs(z - 1.0) <= UNIT_TOL:
                raise ValueError("torus coordinates must differ from 1")

    @classmethod
    def from_angles(cls, angles: Sequence[Fraction | str | int]) -> "TorusPoint":
        fr = tuple(Fraction(a) for a in angles)
        for a in fr:
            if a.denominator == 1:
                raise ValueError(f"angle {a} gives the excluded value 1")
        coords = tuple(_unit(a) for a in fr)
        return cls(coords, fr)

    @classmethod
    def from_complex(cls, coords: Sequence[complex]) -> "TorusPoint":
        return cls(tuple(complex(z) for z in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def conjugate(self) -> "TorusPoint":
        angles = None if self.angles is None else tuple(-a for a in self.angles)
        return TorusPoint(tuple(z.conjugate() for z in self.coords), angles)

    def labels(self) -> list[str]:
        if self.angles is None:
            return [repr(z) for z in self.coords]
        return [f"{a.numerator}/{a.denominator}" for a in self.angles]


def _unit(a: Fraction) -> complex:
    a = a - math.floor(a)
    # Exact values at the quarter turns keep the common cases free of
    # rounding noise.
    exact = {Fraction(1, 2): -1 + 0j, Fraction(1, 4): 1j,
             Fraction(3, 4): -1j}
    if a in exact:
        return exact[a]
    return cmath.exp(2j * math.pi * float(a))


@dataclass(frozen=True, eq=False)
class HermitianEval:
    matrix: np.ndarray
    point: TorusPoint | None = None

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("Hermitian evaluation must be a square matrix")
        if m.size and np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SigNull:
    signature: int
    nullity: int

    def to_json(self) -> dict:
        return {"signature": self.signature, "nullity": self.nullity}


def hermitian_at(f: EpsMatrixFamily, w: TorusPoint) -> HermitianEval:
    if w.n != f.n:
        raise ValueError(f"point has {w.n} coordinates, family has n={f.n}")
    problems = f.problems()
    if problems:
        raise ValueError("; ".join(str(v) for v in problems))
    wbar = [z.conjugate() for z in w.coords]
    h = np.zeros((f.size, f.size), dtype=complex)
    for eps, m in f.items():
        weight = 1 + 0j
        for z, e in zip(wbar, eps):
            weight *= 1 - (z if e > 0 else 1 / z)
        h += weight * m
    return HermitianEval(h, w)


@njit(cache=True)
def _jacobi_diagonal(a, tol, max_sweeps):
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if math.sqrt(2.0 * off) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
    out = np.empty(n)
    for i in range(n):
        out[i] = a[i, i]
    return out


def jacobi_eigenvalues(s: np.ndarray, rel_tol: float = 1e-12,
                       max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``rel_tol * ||s||_F``.
    """
    a = np.array(s, dtype=np.float64, copy=True)
    if a.size == 0:
        return np.zeros(0)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(a.shape[0])
    return np.sort(_jacobi_diagonal(a, rel_tol * scale, max_sweeps))


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, via its real symmetric double."""
    h = np.asarray(h, dtype=complex)
    re, im = h.real, h.imag
    big = np.block([[re, -im], [im, re]])
    return jacobi_eigenvalues(big)[::2]


def inertia(h: np.ndarray, tol: float = DEFAULT_ZERO_TOL) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a Hermitian matrix.

    An eigenvalue is zero when |lambda| < tol * max(1, ||H||_F).
    """
    h = np.asarray(h, dtype=complex)
    if h.size == 0:
        return 0, 0, 0
    n = h.shape[0]
    # Each eigenvalue of H appears twice in the real double; count all
    # 2n values and halve rather than trusting the pairing.
    re, im = h.real, h.imag
    vals = jacobi_eigenvalues(np.block([[re, -im], [im, re]]))
    cut = tol * max(1.0, float(np.linalg.norm(h)))
    pos = int(np.sum(vals >= cut))
    neg = int(np.sum(vals <= -cut))
    zero = 2 * n - pos - neg
    return pos // 2, neg // 2, zero // 2


def sig_null(h: HermitianEval | np.ndarray, c: CComplexData,
             tol: float = DEFAULT_ZERO_TOL) -> SigNull:
    m = h.matrix if isinstance(h, HermitianEval) else np.asarray(h)
    if m.size and np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    pos, neg, zero = inertia(m, tol)
    return SigNull(pos - neg, zero + c.beta0() - 1)


def signature_nullity(c: CComplexData, w: TorusPoint,
                      tol: float = DEFAULT_ZERO_TOL) -> SigNull:
    """Validate ``c`` and return (sigma_L(w), eta_L(w))."""
    report = validate(c)
    if not report.ok:
        raise ValidationError(report)
    return sig_null(hermitian_at(c.family, w), c, tol)


def torus_grid(c: CComplexData, q: int, tol: float = DEFAULT_ZERO_TOL
               ) -> list[tuple[TorusPoint, SigNull]]:
    """Signature and nullity at every w with w_j = exp(2 pi i p_j / q).

    Points are listed in lexicographic order of (p_1, ..., p_n), each p_j
    running over 1..q-1.
    """
    if q < 2:
        raise ValueError("grid resolution q must be at least 2")
    report = validate(c)
    if not report.ok:
        raise ValidationError(report)
    out = []
    for ps in itertools.product(range(1, q), repeat=c.n):
        w = TorusPoint.from_angles([Fraction(p, q) for p in ps])
        out.append((w, sig_null(hermitian_at(c.family, w), c, tol)))
    return out
