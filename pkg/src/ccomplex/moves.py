"""
Matrix-level effects of C-complex moves and the invariance harness.

Only what the linking matrices can see is modelled: changes of H_1 basis
(simultaneous unimodular congruence), the (T4) row/column scaling, the
displayed block matrices for the two sides of a (T4) move, and handle
attachment with caller-supplied linking data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .laurent import PolyMatrix, int_det
from .model import (CComplexData, Clasp, EpsMatrixFamily, SurfacePiece,
                    attach_handle, negate, sign_assignments, validate)
from .potential import AggregateMatrix, aggregate, conway_potential
from .signature import (DEFAULT_ZERO_TOL, HermitianEval, TorusPoint,
                        hermitian_at, sig_null)

__all__ = [
    "T4Spec",
    "T4Site",
    "PaperBlockParams",
    "InvarianceReport",
    "t4_scale_aggregate",
    "t4_scale_hermitian",
    "congruence",
    "random_unimodular",
    "random_symmetric_family",
    "random_block_params",
    "paper_block_fixture",
    "block_ccomplex",
    "disk_ccomplex",
    "find_t4_sites",
    "t4_partner",
    "verify_invariance",
    "make_rng",
    "spawn_rngs",
]


# -- randomness --------------------------------------------------------------

def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Counter-based (Philox) generator from a 64-bit seed."""
    ss = seed if isinstance(seed, np.random.SeedSequence) \
        else np.random.SeedSequence(int(seed) & (2 ** 64 - 1))
    return np.random.Generator(np.random.Philox(ss))


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    ss = np.random.SeedSequence(int(seed) & (2 ** 64 - 1))
    return [make_rng(child) for child in ss.spawn(count)]


# -- (T4) scaling --------------------------------------------------------------

@dataclass(frozen=True)
class T4Spec:
    """Scale row ``row_index`` (0-based) using the variable of ``color``."""

    color: int
    row_index: int


def _check_spec(s: T4Spec, n: int, size: int) -> None:
    if not 1 <= s.color <= n:
        raise IndexError(f"color {s.color} outside 1..{n}")
    if not 0 <= s.row_index < size:
        raise IndexError(f"row {s.row_index} outside 0..{size - 1}")


def t4_scale_aggregate(a: AggregateMatrix, s: T4Spec) -> AggregateMatrix:
    """Multiply row k by t_i^{-2} and column k by t_i^2."""
    m = a.matrix
    _check_spec(s, a.n, m.size)
    k = s.row_index
    down = [0] * a.n
    down[s.color - 1] = -2
    up = [-e for e in down]
    rows = []
    for i, row in enumerate(m.rows):
        new = []
        for j, p in enumerate(row):
            if i == k and j != k:
                p = p.shift(down)
            elif j == k and i != k:
                p = p.shift(up)
            new.append(p)
        rows.append(new)
    return AggregateMatrix(PolyMatrix(rows, a.n), a.n)


def t4_scale_hermitian(h: HermitianEval, s: T4Spec,
                       point: TorusPoint | None = None) -> HermitianEval:
    """D H D^* with D = diag(1, ..., w_i at position k, ..., 1)."""
    w = point or h.point
    if w is None:
        raise ValueError("need the torus point the matrix was evaluated at")
    _check_spec(s, w.n, h.size)
    d = np.ones(h.size, dtype=complex)
    d[s.row_index] = w.coords[s.color - 1]
    return HermitianEval(d[:, None] * h.matrix * d.conj()[None, :], w)


# -- basis change ---------------------------------------------------------------

def congruence(f: EpsMatrixFamily, p) -> EpsMatrixFamily:
    """Replace every A^eps by P^T A^eps P."""
    p = np.asarray(p, dtype=np.int64)
    if p.shape != (f.size, f.size):
        raise ValueError(f"P must be {f.size}x{f.size}")
    if f.size and int_det(p.tolist()) not in (1, -1):
        raise ValueError("P is not unimodular")
    return f.map(lambda m: p.T @ m @ p)


def random_unimodular(size: int, rng: np.random.Generator,
                      shears: int | None = None, bound: int = 2) -> np.ndarray:
    """Random product of elementary shears, a signed permutation and sign flips."""
    p = np.eye(size, dtype=np.int64)
    if size == 0:
        return p
    p = p[rng.permutation(size)]
    p = p * rng.choice(np.array([1, -1]), size=size)[:, None]
    for _ in range(shears if shears is not None else 2 * size):
        if size < 2:
            break
        i, j = rng.choice(size, size=2, replace=False)
        c = int(rng.integers(-bound, bound + 1))
        p[i] += c * p[j]
    return p


def random_symmetric_family(n: int, size: int, rng: np.random.Generator,
                            lo: int = -3, hi: int = 3) -> EpsMatrixFamily:
    """Random integer matrices with A^{-eps} = (A^eps)^T imposed."""
    mats = {}
    for eps in sign_assignments(n):
        if negate(eps) in mats:
            mats[eps] = mats[negate(eps)].T
        else:
            mats[eps] = rng.integers(lo, hi + 1, size=(size, size))
    return EpsMatrixFamily.from_matrices(n, mats, size)


# -- the displayed block matrices ----------------------------------------------

@dataclass(frozen=True)
class PaperBlockParams:
    """Free data of the two block matrices around a (T4) move.

    ``interior`` carries the epsilon-matrices on basis curves 2..N (the
    a_ij, B, C and A blocks); it must satisfy the family symmetry.
    """

    n: int
    interior: EpsMatrixFamily

    @property
    def size(self) -> int:
        return self.interior.size + 1

    @classmethod
    def zero(cls, n: int, size: int) -> "PaperBlockParams":
        return cls(n, EpsMatrixFamily.from_function(
            n, size - 1, lambda eps: np.zeros((size - 1, size - 1))))


def random_block_params(rng: np.random.Generator, n: int, size: int,
                              lo: int = -3, hi: int = 3) -> PaperBlockParams:
    return PaperBlockParams(n, random_symmetric_family(n, size - 1, rng, lo, hi))


def _first_row_F(eps) -> dict[int, int]:
    # lk(alpha_1, alpha_2^eps) and lk(alpha_1, alpha_4^eps) before the move
    return {1: -1 if eps[0] > 0 else 0,
            3: -1 if eps[0] > 0 and eps[1] > 0 else 0}


def _first_row_Fp(eps) -> dict[int, int]:
    return {1: 1 if eps[0] < 0 else 0,
            3: 1 if eps[0] < 0 and eps[1] > 0 else 0}


def paper_block_fixture(params: PaperBlockParams
                        ) -> tuple[EpsMatrixFamily, EpsMatrixFamily]:
    """Families whose aggregates are the block matrices A_F and A_F'.

    The first basis curve links only curves 2 and 4; everything from curve
    2 on is the shared ``interior``.
    """
    n, size = params.n, params.size
    if n < 2:
        raise ValueError("the block pattern needs at least two colors")
    if size < 4:
        raise ValueError("the block pattern needs at least four basis curves")
    problems = params.interior.problems()
    if problems:
        raise ValueError("; ".join(str(v) for v in problems))

    def build(first_row):
        def f(eps):
            m = np.zeros((size, size), dtype=np.int64)
            m[1:, 1:] = params.interior[eps]
            for j, v in first_row(eps).items():
                m[0, j] = v
            for j, v in first_row(negate(eps)).items():
                m[j, 0] = v
            return m
        return EpsMatrixFamily.from_function(n, size, f)

    return build(_first_row_F), build(_first_row_Fp)


def disk_ccomplex(family: EpsMatrixFamily,
                  clasp_signs: Sequence[int] | None = None,
                  name: str = "") -> CComplexData:
    """Smallest C-complex shape carrying ``family``: one disk per color.

    The clasps form a chain 1-2-...-n, and the surplus needed to reach
    H_1 rank ``family.size`` is placed between colors 1 and 2.
    """
    n, size = family.n, family.size
    if n < 2 and size:
        raise ValueError("disks of a single color carry no H_1")
    pieces = [SurfacePiece(f"D{i}", i) for i in range(1, n + 1)]
    pairs = [(i, i + 1) for i in range(1, n)]
    pairs += [(1, 2)] * (size + n - 1 - len(pairs))
    signs = list(clasp_signs) if clasp_signs is not None else [1] * len(pairs)
    if len(signs) != len(pairs):
        raise ValueError(f"need {len(pairs)} clasp signs")
    clasps = [Clasp(f"c{k + 1}", f"D{a}", f"D{b}", s)
              for k, ((a, b), s) in enumerate(zip(pairs, signs))]
    return CComplexData(n, tuple(pieces), tuple(clasps), family, name=name)


def block_ccomplex(params: PaperBlockParams,
                         clasp_signs: Sequence[int] | None = None
                         ) -> tuple[CComplexData, CComplexData]:
    """Wrap the two block families as C-complexes sharing pieces and clasps."""
    fam_f, fam_fp = paper_block_fixture(params)
    return (disk_ccomplex(fam_f, clasp_signs, name="block F"),
            disk_ccomplex(fam_fp, clasp_signs, name="block F'"))


# -- detecting (T4) sites in arbitrary families -----------------------------------

@dataclass(frozen=True)
class T4Site:
    row: int
    col_a: int
    col_b: int
    color_i: int
    color_j: int
    before: bool  # True: the A_F side; False: the A_F' side

    @property
    def spec(self) -> T4Spec:
        return T4Spec(self.color_i, self.row)


def _pattern(eps, i, j, before):
    ei, ej = eps[i - 1], eps[j - 1]
    if before:
        return (-1 if ei > 0 else 0), (-1 if ei > 0 and ej > 0 else 0)
    return (1 if ei < 0 else 0), (1 if ei < 0 and ej > 0 else 0)


def find_t4_sites(f: EpsMatrixFamily) -> list[T4Site]:
    """Rows whose linking data has the shape of either side of a (T4) move."""
    sites = []
    if f.n < 2 or f.problems():
        return sites
    eps_list = sign_assignments(f.n)
    for k in range(f.size):
        support = sorted({int(j) for eps in eps_list
                          for j in np.flatnonzero(f[eps][k])})
        if len(support) != 2 or k in support:
            continue
        for a, b in (support, support[::-1]):
            for i in range(1, f.n + 1):
                for j in range(1, f.n + 1):
                    if i == j:
                        continue
                    for before in (True, False):
                        if all((f[eps][k, a], f[eps][k, b])
                               == _pattern(eps, i, j, before)
                               for eps in eps_list):
                            sites.append(T4Site(k, a, b, i, j, before))
    return sites


def t4_partner(f: EpsMatrixFamily, site: T4Site) -> EpsMatrixFamily:
    """The family on the other side of the (T4) move at ``site``."""
    k = site.row

    def g(eps):
        m = np.array(f[eps])
        m[k, :] = 0
        m[:, k] = 0
        va, vb = _pattern(eps, site.color_i, site.color_j, not site.before)
        m[k, site.col_a], m[k, site.col_b] = va, vb
        wa, wb = _pattern(negate(eps), site.color_i, site.color_j,
                          not site.before)
        m[site.col_a, k], m[site.col_b, k] = wa, wb
        return m

    return EpsMatrixFamily.from_function(f.n, f.size, g)


# -- the harness -------------------------------------------------------------------

@dataclass
class InvarianceReport:
    seed: int
    trials: int
    omega_points: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, kind: str, detail: str) -> None:
        self.failures.append({"kind": kind, "detail": detail})

    def to_json(self) -> dict:
        return {"seed": self.seed, "trials": self.trials,
                "omega_points": self.omega_points,
                "failures": list(self.failures)}


def random_torus_point(rng: np.random.Generator, n: int,
                       max_q: int = 12) -> TorusPoint:
    angles = []
    for _ in range(n):
        q = int(rng.integers(2, max_q + 1))
        angles.append(Fraction(int(rng.integers(1, q)), q))
    return TorusPoint.from_angles(angles)


def _compare_sig(report, kind, c0, c1, points, tol):
    for w in points:
        s0 = sig_null(hermitian_at(c0.family, w), c0, tol)
        s1 = sig_null(hermitian_at(c1.family, w), c1, tol)
        if s0 != s1:
            report.fail(kind, f"(sigma, eta) at {w.labels()}: "
                        f"{(s0.signature, s0.nullity)} vs "
                        f"{(s1.signature, s1.nullity)}")


def verify_invariance(c: CComplexData, trials: int = 50, seed: int = 0,
                      points_per_trial: int = 3,
                      tol: float = DEFAULT_ZERO_TOL) -> InvarianceReport:
    """Check Omega, sigma and eta against random moves applied to ``c``.

    Every trial applies a random basis change and a handle attachment with
    random linking data for the new curve; every (T4) site found in the
    family is additionally swapped to its other side.  Failures are
    collected, not raised.
    """
    report = InvarianceReport(seed=seed, trials=trials)
    v = validate(c)
    if not v.ok:
        for viol in v.violations:
            report.fail("validation", str(viol))
        return report

    base = conway_potential(c).value
    sites = find_t4_sites(c.family)
    for site in sites:
        partner = c.with_family(t4_partner(c.family, site))
        if conway_potential(partner).value != base:
            report.fail("t4-potential", f"Omega changed at {site}")
        # the scaling always runs from the F side to the F' side
        src, dst = (c, partner) if site.before else (partner, c)
        scaled = t4_scale_aggregate(aggregate(src.family), site.spec)
        if scaled.matrix != aggregate(dst.family).matrix:
            report.fail("t4-aggregate", f"row scaling mismatch at {site}")

    for rng in spawn_rngs(seed, trials):
        points = [random_torus_point(rng, c.n) for _ in range(points_per_trial)]
        report.omega_points += len(points)

        p = random_unimodular(c.family.size, rng)
        moved = c.with_family(congruence(c.family, p))
        if conway_potential(moved).value != base:
            report.fail("congruence-potential",
                        f"Omega changed under P={p.tolist()}")
        _compare_sig(report, "congruence-signature", c, moved, points, tol)

        piece = c.pieces[int(rng.integers(len(c.pieces)))]
        links = {eps: rng.integers(-2, 3, size=c.family.size)
                 for eps in sign_assignments(c.n)}
        selfs = {}
        for eps in sign_assignments(c.n):
            selfs[eps] = selfs.get(negate(eps), int(rng.integers(-2, 3)))
        grown = attach_handle(c, piece.id, links, selfs)
        if conway_potential(grown).value != base:
            report.fail("handle-potential",
                        f"Omega changed by a handle on {piece.id}")
        _compare_sig(report, "handle-signature", c, grown, points, tol)

        for site in sites:
            partner = c.with_family(t4_partner(c.family, site))
            _compare_sig(report, "t4-signature", c, partner, points, tol)
            src, dst = (c, partner) if site.before else (partner, c)
            for w in points:
                h = hermitian_at(src.family, w)
                h2 = t4_scale_hermitian(h, site.spec)
                target = hermitian_at(dst.family, w).matrix
                if not np.allclose(h2.matrix, target, atol=1e-9):
                    report.fail("t4-hermitian",
                                f"D H D* differs from H_F' at {w.labels()}")
    return report
