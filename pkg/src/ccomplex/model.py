"""
Combinatorial description of a C-complex bounded by an n-colored link.

A C-complex is recorded by its surface pieces (color, genus, number of
boundary circles), its signed clasps, and the 2^n epsilon-linking matrices
computed in a fixed basis of H_1.  Nothing about the embedding is stored;
the matrices are taken as given.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "SurfacePiece",
    "Clasp",
    "EpsMatrixFamily",
    "CComplexData",
    "Violation",
    "ValidationReport",
    "ValidationError",
    "SchemaError",
    "sign_assignments",
    "sign_string",
    "parse_sign_string",
    "negate",
    "validate",
    "sign_of",
    "euler_complement",
    "beta0",
    "h1_rank",
    "attach_handle",
    "load_ccomplex",
]

Signs = tuple[int, ...]


class SchemaError(ValueError):
    """Input does not follow the C-complex JSON schema."""


class ValidationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


def sign_assignments(n: int) -> list[Signs]:
    """All 2^n maps {1..n} -> {+1, -1}, starting from (+1, ..., +1)."""
    return list(itertools.product((1, -1), repeat=n))


def sign_string(eps: Sequence[int]) -> str:
    return "".join("+" if e > 0 else "-" for e in eps)


def parse_sign_string(s: str) -> Signs:
    if not s or any(ch not in "+-" for ch in s):
        raise SchemaError(f"bad sign string {s!r}")
    return tuple(1 if ch == "+" else -1 for ch in s)


def negate(eps: Signs) -> Signs:
    return tuple(-e for e in eps)


def _frozen_int_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.size == 0:
        a = np.zeros((len(m), len(m)), dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SurfacePiece:
    id: str
    color: int
    genus: int = 0
    boundary_components: int = 1

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_components


@dataclass(frozen=True)
class Clasp:
    id: str
    piece_a: str
    piece_b: str
    sign: int


@dataclass(frozen=True, eq=False)
class EpsMatrixFamily:
    """The epsilon-linking matrices A^eps, one per sign assignment."""

    n: int
    size: int
    matrices: Mapping[Signs, np.ndarray]

    @classmethod
    def from_matrices(cls, n: int,
                      matrices: Mapping[Sequence[int], Sequence[Sequence[int]]],
                      size: int | None = None) -> "EpsMatrixFamily":
        mats = {tuple(int(x) for x in k): _frozen_int_matrix(v)
                for k, v in matrices.items()}
        if size is None:
            size = next(iter(mats.values())).shape[0] if mats else 0
        return cls(n, size, mats)

    @classmethod
    def empty(cls, n: int) -> "EpsMatrixFamily":
        z = _frozen_int_matrix(np.zeros((0, 0)))
        return cls(n, 0, {eps: z for eps in sign_assignments(n)})

    @classmethod
    def from_function(cls, n: int, size: int, f) -> "EpsMatrixFamily":
        """Build the family from ``f(eps) -> matrix``."""
        return cls(n, size, {eps: _frozen_int_matrix(
            np.asarray(f(eps), dtype=np.int64).reshape(size, size))
            for eps in sign_assignments(n)})

    def __getitem__(self, eps: Sequence[int]) -> np.ndarray:
        return self.matrices[tuple(eps)]

    def items(self) -> Iterator[tuple[Signs, np.ndarray]]:
        for eps in sign_assignments(self.n):
            if eps in self.matrices:
                yield eps, self.matrices[eps]

    def map(self, f) -> "EpsMatrixFamily":
        out = {eps: _frozen_int_matrix(f(m)) for eps, m in self.matrices.items()}
        size = next(iter(out.values())).shape[0] if out else self.size
        return EpsMatrixFamily(self.n, size, out)

    def problems(self) -> list["Violation"]:
        out = []
        for eps in sign_assignments(self.n):
            if eps not in self.matrices:
                out.append(Violation("missing-eps",
                                     f"no matrix for {sign_string(eps)}"))
        for eps, m in self.matrices.items():
            if len(eps) != self.n or any(e not in (1, -1) for e in eps):
                out.append(Violation("bad-eps", f"invalid sign key {eps}"))
            elif m.shape != (self.size, self.size):
                out.append(Violation(
                    "shape", f"matrix {sign_string(eps)} has shape {m.shape},"
                    f" expected {(self.size, self.size)}"))
        if out:
            return out
        seen = set()
        for eps, m in self.items():
            other = negate(eps)
            if other in seen:
                continue
            seen.add(eps)
            if not np.array_equal(m.T, self.matrices[other]):
                out.append(Violation(
                    "symmetry", f"A^{sign_string(eps)} transposed differs"
                    f" from A^{sign_string(other)}"))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpsMatrixFamily):
            return NotImplemented
        return (self.n == other.n and self.size == other.size
                and self.matrices.keys() == other.matrices.keys()
                and all(np.array_equal(m, other.matrices[k])
                        for k, m in self.matrices.items()))

    def to_json(self) -> dict[str, list[list[int]]]:
        return {sign_string(eps): m.tolist() for eps, m in self.items()}


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out: dict = {"valid": self.ok}
        if self.violations:
            out["violations"] = [{"kind": v.kind, "detail": v.detail}
                                 for v in self.violations]
        return out


@dataclass(frozen=True, eq=False)
class CComplexData:
    n: int
    pieces: tuple[SurfacePiece, ...]
    clasps: tuple[Clasp, ...]
    family: EpsMatrixFamily
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "clasps", tuple(self.clasps))

    def piece(self, pid: str) -> SurfacePiece:
        for p in self.pieces:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def colors_of(self, clasp: Clasp) -> tuple[int, int]:
        return self.piece(clasp.piece_a).color, self.piece(clasp.piece_b).color

    @property
    def euler_characteristic(self) -> int:
        return (sum(p.euler_characteristic for p in self.pieces)
                - len(self.clasps))

    def validate(self) -> ValidationReport:
        return validate(self)

    def sign(self) -> int:
        return sign_of(self)

    def euler_complement(self, i: int) -> int:
        return euler_complement(self, i)

    def beta0(self) -> int:
        return beta0(self)

    def h1_rank(self) -> int:
        return h1_rank(self)

    def with_family(self, family: EpsMatrixFamily) -> "CComplexData":
        return replace(self, family=family)

    # -- JSON ----------------------------------------------------------------

    @classmethod
    def from_json(cls, data: Mapping) -> "CComplexData":
        try:
            n = int(data["n"])
            pieces = [SurfacePiece(str(p["id"]), int(p["color"]),
                                   int(p.get("genus", 0)),
                                   int(p.get("boundary", 1)))
                      for p in data["pieces"]]
            clasps = [Clasp(str(c.get("id", f"c{k + 1}")), str(c["a"]),
                            str(c["b"]), int(c["sign"]))
                      for k, c in enumerate(data.get("clasps", []))]
            raw = data.get("eps_matrices", {})
            mats = {}
            for key, m in raw.items():
                eps = parse_sign_string(key)
                if len(eps) != n:
                    raise SchemaError(f"sign string {key!r} has length"
                                      f" {len(eps)}, expected {n}")
                rows = [[int(x) for x in r] for r in m]
                if any(len(r) != len(rows) for r in rows):
                    raise SchemaError(f"matrix {key!r} is not square")
                mats[eps] = rows
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"malformed C-complex data: {exc!r}") from exc
        if n < 1:
            raise SchemaError("n must be positive")
        # An absent or empty matrix map means H_1(F) = 0.
        family = (EpsMatrixFamily.from_matrices(n, mats) if mats
                  else EpsMatrixFamily.empty(n))
        return cls(n, tuple(pieces), tuple(clasps), family,
                   name=str(data.get("name", "")))

    def to_json(self) -> dict:
        out: dict = {}
        if self.name:
            out["name"] = self.name
        out["n"] = self.n
        out["pieces"] = [{"id": p.id, "color": p.color, "genus": p.genus,
                          "boundary": p.boundary_components}
                         for p in self.pieces]
        out["clasps"] = [{"id": c.id, "a": c.piece_a, "b": c.piece_b,
                          "sign": c.sign} for c in self.clasps]
        out["eps_matrices"] = self.family.to_json()
        return out


def load_ccomplex(path: str | Path) -> CComplexData:
    with open(path) as fh:
        return CComplexData.from_json(json.load(fh))


# -- derived quantities ------------------------------------------------------

def _structure_problems(c: CComplexData) -> list[Violation]:
    out = []
    ids = [p.id for p in c.pieces]
    if len(set(ids)) != len(ids):
        out.append(Violation("duplicate-piece", "piece ids are not unique"))
    by_id = {p.id: p for p in c.pieces}
    for p in c.pieces:
        if not 1 <= p.color <= c.n:
            out.append(Violation("color", f"piece {p.id} has color {p.color}"
                                 f" outside 1..{c.n}"))
        if p.genus < 0:
            out.append(Violation("genus", f"piece {p.id} has negative genus"))
        if p.boundary_components < 1:
            out.append(Violation("closed-piece", f"piece {p.id} has no"
                                 " boundary (closed components are not"
                                 " allowed)"))
    for k in range(1, c.n + 1):
        if not any(p.color == k for p in c.pieces):
            out.append(Violation("color-gap", f"color {k} has no piece"))
    for cl in c.clasps:
        if cl.sign not in (1, -1):
            out.append(Violation("clasp-sign", f"clasp {cl.id} has sign"
                                 f" {cl.sign}"))
        missing = [x for x in (cl.piece_a, cl.piece_b) if x not in by_id]
        if missing:
            out.append(Violation("clasp-piece", f"clasp {cl.id} references"
                                 f" unknown piece(s) {missing}"))
        elif by_id[cl.piece_a].color == by_id[cl.piece_b].color:
            out.append(Violation("clasp-color", f"clasp {cl.id} joins two"
                                 " pieces of the same color"))
    return out


def validate(c: CComplexData) -> ValidationReport:
    """Collect every structural and matrix-family violation of ``c``."""
    out = _structure_problems(c)
    if c.family.n != c.n:
        out.append(Violation("family-n", f"family has n={c.family.n},"
                             f" complex has n={c.n}"))
    else:
        out.extend(c.family.problems())
    if not out:
        rank = h1_rank(c)
        if c.family.size != rank:
            out.append(Violation(
                "size", f"matrices have size {c.family.size} but H_1 has"
                f" rank beta0 - chi = {rank}"))
    return ValidationReport(tuple(out))


def sign_of(c: CComplexData) -> int:
    s = 1
    for cl in c.clasps:
        s *= cl.sign
    return s


def euler_complement(c: CComplexData, i: int) -> int:
    """Euler characteristic of F minus F_i.

    Each clasp is a contractible arc shared by two pieces, so it is
    subtracted once for every clasp whose pieces both survive.
    """
    if not 1 <= i <= c.n:
        raise ValueError(f"color {i} outside 1..{c.n}")
    colors = {p.id: p.color for p in c.pieces}
    chi = sum(p.euler_characteristic for p in c.pieces if p.color != i)
    chi -= sum(1 for cl in c.clasps
               if colors[cl.piece_a] != i and colors[cl.piece_b] != i)
    return chi


def beta0(c: CComplexData) -> int:
    parent = {p.id: p.id for p in c.pieces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cl in c.clasps:
        ra, rb = find(cl.piece_a), find(cl.piece_b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in parent})


def h1_rank(c: CComplexData) -> int:
    return beta0(c) - c.euler_characteristic


def attach_handle(c: CComplexData, piece_id: str,
                  beta_links: Mapping[Sequence[int], Sequence[int]] | None = None,
                  beta_self: Mapping[Sequence[int], int] | None = None
                  ) -> CComplexData:
    """Attach a trivial 1-handle to one piece.

    The genus of the piece goes up by one and two basis curves are appended
    to H_1: ``a`` (the meridian of the tube) and ``b`` (running over the
    handle).  ``a`` links nothing but ``b``: lk(a, b^eps) = 1 when the sign
    of the piece's color is +1 and 0 otherwise.  ``beta_links[eps][j]`` is
    lk(b, alpha_j^eps) for the existing basis curves and ``beta_self[eps]``
    is lk(b, b^eps); the transposed entries follow from A^{-eps} = (A^eps)^T.
    Both default to zero.
    """
    piece = c.piece(piece_id)
    color = piece.color
    fam = c.family
    size = fam.size

    def links(eps) -> np.ndarray:
        if beta_links is None:
            return np.zeros(size, dtype=np.int64)
        return np.asarray(beta_links[tuple(eps)], dtype=np.int64)

    def selflink(eps) -> int:
        return 0 if beta_self is None else int(beta_self[tuple(eps)])

    for eps in sign_assignments(c.n):
        if selflink(eps) != selflink(negate(eps)):
            raise ValueError("beta_self must satisfy b(eps) = b(-eps)")

    def grow(eps):
        m = np.zeros((size + 2, size + 2), dtype=np.int64)
        m[:size, :size] = fam[eps]
        a, b = size, size + 1
        m[a, b] = 1 if eps[color - 1] > 0 else 0
        m[b, a] = 1 if eps[color - 1] < 0 else 0
        m[b, :size] = links(eps)
        m[:size, b] = links(negate(eps))
        m[b, b] = selflink(eps)
        return m

    new_family = EpsMatrixFamily.from_function(c.n, size + 2, grow)
    pieces = tuple(replace(p, genus=p.genus + 1) if p.id == piece_id else p
                   for p in c.pieces)
    return replace(c, pieces=pieces, family=new_family)
