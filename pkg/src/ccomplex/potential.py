"""
The aggregate matrix A_F and the Conway potential function of a C-complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, PolyMatrix, RationalForm, det
from .model import CComplexData, EpsMatrixFamily, ValidationError, validate

__all__ = [
    "AggregateMatrix",
    "PotentialResult",
    "aggregate",
    "conway_potential",
    "check_aggregate_symmetry",
]


@dataclass(frozen=True)
class AggregateMatrix:
    matrix: PolyMatrix
    n: int

    @property
    def size(self) -> int:
        return self.matrix.size

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        return self.matrix[ij]


@dataclass(frozen=True)
class PotentialResult:
    value: RationalForm
    sign: int
    exponents: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "denominator_exponents": list(self.value.denom_exponents),
            "numerator": self.value.numerator.to_json(),
        }


def aggregate(f: EpsMatrixFamily) -> AggregateMatrix:
    """Sum over eps of eps(1)...eps(n) t^eps A^eps, entry by entry."""
    problems = f.problems()
    if problems:
        raise ValueError("; ".join(str(v) for v in problems))
    n, size = f.n, f.size
    terms = [[{} for _ in range(size)] for _ in range(size)]
    for eps, m in f.items():
        sign = 1
        for e in eps:
            sign *= e
        for i in range(size):
            row = m[i]
            for j in range(size):
                if row[j]:
                    terms[i][j][eps] = sign * int(row[j])
    rows = [[LaurentPoly(t, n) for t in r] for r in terms]
    return AggregateMatrix(PolyMatrix(rows, n), n)


def check_aggregate_symmetry(a: AggregateMatrix | PolyMatrix) -> bool:
    """True iff A^T equals A with every t_i replaced by -t_i^{-1}."""
    m = a.matrix if isinstance(a, AggregateMatrix) else a
    return m.transpose() == m.map(LaurentPoly.subst_bar)


def conway_potential(c: CComplexData, method: str = "packed") -> PotentialResult:
    """sgn(F) * prod_i (t_i - t_i^{-1})^(chi(F - F_i) - 1) * det(-A_F)."""
    report = validate(c)
    if not report.ok:
        raise ValidationError(report)
    a = aggregate(c.family)
    d = det(-a.matrix, method=method)
    sign = c.sign()
    exps = tuple(c.euler_complement(i) - 1 for i in range(1, c.n + 1))
    value = RationalForm.from_exponents(d * sign, exps)
    return PotentialResult(value, sign, exps)
