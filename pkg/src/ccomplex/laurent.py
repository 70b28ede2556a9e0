"""
Exact multivariate Laurent polynomials over the integers.

Polynomials live in Z[t_1^{+-1}, ..., t_n^{+-1}] and are stored as a map
from exponent tuples to nonzero Python integers.  Matrices over this ring
and their determinants are provided as well, together with quotients by
powers of (t_i - t_i^{-1}).
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Mapping, Sequence

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

__all__ = [
    "LaurentPoly",
    "PolyMatrix",
    "RationalForm",
    "NotDivisibleError",
    "variables",
    "poly_add",
    "poly_mul",
    "poly_subst_bar",
    "poly_eval",
    "det",
    "cofactor_det",
    "int_det",
    "rational_mul",
    "bar_factor",
]

Exps = tuple[int, ...]


class NotDivisibleError(ArithmeticError):
    pass


def _check_nvars(a: "LaurentPoly", b: "LaurentPoly") -> None:
    if a.nvars != b.nvars:
        raise ValueError(
            f"variable count mismatch: {a.nvars} vs {b.nvars}")


class LaurentPoly:
    """An immutable Laurent polynomial with integer coefficients.

    Terms are kept in canonical form: no zero coefficients, every exponent
    tuple of length ``nvars``.  The canonical term order is descending
    lexicographic order on exponent tuples.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None,
                 nvars: int = 1):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[Exps, int] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(
                    f"monomial {exps} does not have {nvars} exponents")
            coef = int(coef)
            if coef:
                clean[exps] = clean.get(exps, 0) + coef
        self.nvars = nvars
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exps, int], nvars: int) -> "LaurentPoly":
        # Trusted constructor: terms already canonical.
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        c = int(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: int = 1) -> "LaurentPoly":
        exps = tuple(int(e) for e in exps)
        return cls({exps: coef}, len(exps))

    # -- inspection ------------------------------------------------------

    def terms(self) -> list[tuple[Exps, int]]:
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def min_exponents(self) -> Exps:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def max_exponents(self) -> Exps:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self._terms) for i in range(self.nvars))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def norm1(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _check_nvars(self, other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._terms.items()},
                                self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return LaurentPoly.zero(self.nvars)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                k = tuple(x + y for x, y in zip(ea, eb))
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw({k: v for k, v in out.items() if v},
                                self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NotDivisibleError(
                    "only monomials are units of the Laurent ring")
            (exps, c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisibleError("coefficient is not a unit")
            return LaurentPoly._raw(
                {tuple(k * e for e in exps): c ** (-k)}, self.nvars)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exps."""
        return LaurentPoly._raw(
            {tuple(x + y for x, y in zip(k, exps)): v
             for k, v in self._terms.items()}, self.nvars)

    def subst_bar(self) -> "LaurentPoly":
        """Substitute t_i -> -t_i^{-1} in every variable."""
        return LaurentPoly._raw(
            {tuple(-e for e in k): (-v if sum(k) % 2 else v)
             for k, v in self._terms.items()}, self.nvars)

    def evaluate(self, point: Sequence[complex]) -> complex:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        if any(z == 0 for z in point):
            raise ValueError("cannot evaluate a Laurent polynomial at zero")
        total = 0j
        for exps, c in self._terms.items():
            term = complex(c)
            for z, e in zip(point, exps):
                if e:
                    term *= z ** e
            total += term
        return total

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other`` in the Laurent ring.

        Raises NotDivisibleError when ``other`` does not divide ``self``.
        """
        _check_nvars(self, other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return LaurentPoly.zero(self.nvars)
        n = self.nvars
        # The Newton polytope of a product is the Minkowski sum, so every
        # quotient exponent lies in this box.
        lo_a, hi_a = self.min_exponents(), self.max_exponents()
        lo_b, hi_b = other.min_exponents(), other.max_exponents()
        lo = [lo_a[i] - lo_b[i] for i in range(n)]
        hi = [hi_a[i] - hi_b[i] for i in range(n)]
        lead_b = max(other._terms)
        lead_c = other._terms[lead_b]
        rem = dict(self._terms)
        quot: dict[Exps, int] = {}
        while rem:
            lead_r = max(rem)
            q, r = divmod(rem[lead_r], lead_c)
            qe = tuple(x - y for x, y in zip(lead_r, lead_b))
            if r or any(not lo[i] <= qe[i] <= hi[i] for i in range(n)):
                raise NotDivisibleError("polynomial is not divisible")
            quot[qe] = q
            for eb, cb in other._terms.items():
                k = tuple(x + y for x, y in zip(qe, eb))
                v = rem.get(k, 0) - q * cb
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(quot, n)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.terms())))
        return self._hash

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coef": str(c)} for e, c in self.terms()]

    @classmethod
    def from_json(cls, records: Iterable[Mapping], nvars: int) -> "LaurentPoly":
        return cls({tuple(r["exps"]): int(r["coef"]) for r in records}, nvars)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = ["t"] if self.nvars == 1 else [
            f"t{i + 1}" for i in range(self.nvars)]
        pieces = []
        for exps, c in self.terms():
            mono = []
            for name, e in zip(names, exps):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            pieces.append((c < 0, text))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, text in pieces[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, nvars={self.nvars})"


def variables(nvars: int) -> tuple[LaurentPoly, ...]:
    """The generators t_1, ..., t_n."""
    return tuple(
        LaurentPoly.monomial([1 if j == i else 0 for j in range(nvars)])
        for i in range(nvars))


def bar_factor(i: int, nvars: int) -> LaurentPoly:
    """(t_i - t_i^{-1}) with ``i`` counted from 1."""
    e = [0] * nvars
    e[i - 1] = 1
    up = tuple(e)
    e[i - 1] = -1
    return LaurentPoly._raw({up: 1, tuple(e): -1}, nvars)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_nvars(a, b)
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_nvars(a, b)
    return a * b


def poly_subst_bar(a: LaurentPoly) -> LaurentPoly:
    return a.subst_bar()


def poly_eval(a: LaurentPoly, point: Sequence[complex]) -> complex:
    return a.evaluate(point)


class PolyMatrix:
    """Square matrix of Laurent polynomials in a fixed number of variables."""

    __slots__ = ("nvars", "rows")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]], nvars: int):
        rows = tuple(tuple(r) for r in rows)
        for r in rows:
            if len(r) != len(rows):
                raise ValueError("PolyMatrix must be square")
            for p in r:
                if p.nvars != nvars:
                    raise ValueError("entry has the wrong variable count")
        self.rows = rows
        self.nvars = nvars

    @classmethod
    def from_ints(cls, m: Sequence[Sequence[int]], nvars: int) -> "PolyMatrix":
        return cls([[LaurentPoly.constant(x, nvars) for x in r] for r in m],
                   nvars)

    @classmethod
    def identity(cls, size: int, nvars: int) -> "PolyMatrix":
        return cls.from_ints(
            [[int(i == j) for j in range(size)] for i in range(size)], nvars)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.rows[i][j]

    def map(self, f) -> "PolyMatrix":
        return PolyMatrix([[f(p) for p in r] for r in self.rows], self.nvars)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.rows)), self.nvars)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.rows, other.rows)],
                          self.nvars)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.size
        cols = list(zip(*other.rows))
        zero = LaurentPoly.zero(self.nvars)
        return PolyMatrix(
            [[sum((a * b for a, b in zip(self.rows[i], cols[j])), zero)
              for j in range(n)] for i in range(n)], self.nvars)

    def swap_rows(self, i: int, j: int) -> "PolyMatrix":
        rows = list(self.rows)
        rows[i], rows[j] = rows[j], rows[i]
        return PolyMatrix(rows, self.nvars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nvars, self.rows))

    def to_json(self) -> list[list[list[dict]]]:
        return [[p.to_json() for p in r] for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(p) for p in r) for r in self.rows)
        return f"PolyMatrix([{body}], nvars={self.nvars})"


# -- determinants ---------------------------------------------------------

def _bareiss(rows: list[list], zero, one, divexact):
    """Fraction-free Gaussian elimination over an integral domain.

    ``rows`` is consumed.  ``divexact(a, b)`` must return the exact
    quotient a/b, which exists for every division Bareiss performs.
    """
    n = len(rows)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if rows[k][k] == zero:
            for r in range(k + 1, n):
                if rows[r][k] != zero:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = rows[k][k]
        row_k = rows[k]
        for i in range(k + 1, n):
            row_i = rows[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = divexact(row_i[j] * pivot - lead * row_k[j], prev)
            row_i[k] = zero
        prev = pivot
    d = rows[n - 1][n - 1]
    return -d if sign < 0 else d


def _packed_det(m: PolyMatrix) -> LaurentPoly:
    # Shift into the polynomial ring, encode each polynomial as one big
    # integer (Kronecker substitution followed by evaluation at 2^B), run
    # Bareiss over Z, then decode.  Both encodings are injective ring maps
    # on polynomials within the degree and coefficient bounds below, and
    # every Bareiss intermediate is a minor, so it stays within them.
    n, nv = m.size, m.nvars
    entries = [p for r in m.rows for p in r if p]
    if not entries:
        return LaurentPoly.zero(nv)
    lo = [min(p.min_exponents()[i] for p in entries) for i in range(nv)]
    # Exponents of the shifted entries may all be multiples of some g_i
    # (aggregate matrices only carry odd exponents); t_i^{g_i} -> u_i is
    # then an injective ring map that shrinks the encoding.
    step = [0] * nv
    for p in entries:
        for exps in p._terms:
            for i in range(nv):
                step[i] = math.gcd(step[i], exps[i] - lo[i])
    step = [g or 1 for g in step]
    hi = [max(p.max_exponents()[i] for p in entries) for i in range(nv)]
    span = [(hi[i] - lo[i]) // step[i] for i in range(nv)]
    base = [n * s + 1 for s in span]
    weights = [1] * nv
    for i in range(1, nv):
        weights[i] = weights[i - 1] * base[i - 1]
    coef_bound = 1
    for r in m.rows:
        coef_bound *= max(1, sum(p.norm1() for p in r))
    bits = -(-(coef_bound.bit_length() + 2) // 8) * 8
    mpz = gmpy2.mpz if gmpy2 is not None else int

    def encode(p: LaurentPoly):
        v = 0
        for exps, c in p._terms.items():
            k = sum((e - l) // g * w
                    for e, l, g, w in zip(exps, lo, step, weights))
            v += c << (bits * k)
        return mpz(v)

    rows = [[encode(p) for p in r] for r in m.rows]
    if gmpy2 is not None:
        divexact = gmpy2.divexact
    else:
        def divexact(a, b):
            return a // b
    value = int(_bareiss(rows, mpz(0), mpz(1), divexact))
    if value == 0:
        return LaurentPoly.zero(nv)

    ndigits = sum(s * n * w for s, w in zip(span, weights)) + 1
    half = 1 << (bits - 1)
    width = bits // 8
    pattern = half.to_bytes(width, "little")
    offset = int.from_bytes(pattern * ndigits, "little")
    raw = (value + offset).to_bytes(width * ndigits, "little")
    terms: dict[Exps, int] = {}
    for k in range(ndigits):
        chunk = raw[k * width:(k + 1) * width]
        if chunk == pattern:
            continue
        c = int.from_bytes(chunk, "little") - half
        exps = []
        rest = k
        for i in range(nv):
            rest, e = divmod(rest, base[i])
            exps.append(e * step[i] + n * lo[i])
        terms[tuple(exps)] = c
    return LaurentPoly._raw(terms, nv)


def det(m: PolyMatrix, method: str = "packed") -> LaurentPoly:
    """Exact determinant of a square Laurent polynomial matrix.

    ``method="packed"`` (default) runs Bareiss on a big-integer encoding of
    the shifted matrix; ``method="bareiss"`` runs Bareiss directly on
    Laurent polynomials with exact division.  The 0x0 matrix has
    determinant 1.
    """
    nv = m.nvars
    if m.size == 0:
        return LaurentPoly.one(nv)
    if method == "packed":
        return _packed_det(m)
    if method == "bareiss":
        rows = [list(r) for r in m.rows]
        return _bareiss(rows, LaurentPoly.zero(nv), LaurentPoly.one(nv),
                        LaurentPoly.divexact)
    raise ValueError(f"unknown determinant method {method!r}")


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss over Z)."""
    rows = [[int(x) for x in r] for r in m]
    return int(_bareiss(rows, 0, 1, lambda a, b: a // b))


def cofactor_det(m: PolyMatrix) -> LaurentPoly:
    """Determinant by Laplace expansion along the first row (slow oracle)."""
    def expand(rows, cols):
        if not rows:
            return LaurentPoly.one(m.nvars)
        i = rows[0]
        total = LaurentPoly.zero(m.nvars)
        for pos, j in enumerate(cols):
            entry = m.rows[i][j]
            if not entry:
                continue
            minor = expand(rows[1:], cols[:pos] + cols[pos + 1:])
            term = entry * minor
            total = total - term if pos % 2 else total + term
        return total

    idx = tuple(range(m.size))
    return expand(idx, idx)


def permutation_det(m: PolyMatrix) -> LaurentPoly:
    """Leibniz-formula determinant; only for tiny matrices."""
    total = LaurentPoly.zero(m.nvars)
    n = m.size
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j]
                         for i in range(n) for j in range(i + 1, n))
        term = LaurentPoly.one(m.nvars)
        for i, j in enumerate(perm):
            term = term * m.rows[i][j]
        total = total - term if inversions % 2 else total + term
    return total


# -- quotients by powers of (t_i - t_i^{-1}) --------------------------------

class RationalForm:
    """numerator / prod_i (t_i - t_i^{-1})^{d_i} with every d_i >= 0.

    Equality is decided by cross-multiplication, never by division.
    """

    __slots__ = ("numerator", "denom_exponents")

    def __init__(self, numerator: LaurentPoly,
                 denom_exponents: Sequence[int] | None = None):
        nv = numerator.nvars
        d = tuple(int(x) for x in (denom_exponents or (0,) * nv))
        if len(d) != nv:
            raise ValueError("need one denominator exponent per variable")
        if any(x < 0 for x in d):
            raise ValueError("denominator exponents must be nonnegative")
        self.numerator = numerator
        self.denom_exponents = d

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @classmethod
    def from_exponents(cls, numerator: LaurentPoly,
                       exponents: Sequence[int]) -> "RationalForm":
        """numerator * prod (t_i - t_i^{-1})^{e_i} for integer e_i of any sign."""
        nv = numerator.nvars
        num = numerator
        for i, e in enumerate(exponents):
            if e > 0:
                num = num * bar_factor(i + 1, nv) ** e
        return cls(num, [max(0, -e) for e in exponents])

    def _scaled(self, extra: Sequence[int]) -> LaurentPoly:
        num = self.numerator
        for i, e in enumerate(extra):
            if e:
                num = num * bar_factor(i + 1, self.nvars) ** e
        return num

    def __mul__(self, other: "RationalForm") -> "RationalForm":
        if not isinstance(other, RationalForm):
            return NotImplemented
        _check_nvars(self.numerator, other.numerator)
        return RationalForm(
            self.numerator * other.numerator,
            [a + b for a, b in zip(self.denom_exponents, other.denom_exponents)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalForm):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        common = [min(a, b) for a, b in
                  zip(self.denom_exponents, other.denom_exponents)]
        lhs = self._scaled([b - c for b, c in
                            zip(other.denom_exponents, common)])
        rhs = other._scaled([a - c for a, c in
                             zip(self.denom_exponents, common)])
        return lhs == rhs

    def reduced(self) -> "RationalForm":
        """Cancel every factor (t_i - t_i^{-1}) the numerator allows."""
        num = self.numerator
        d = list(self.denom_exponents)
        for i in range(self.nvars):
            f = bar_factor(i + 1, self.nvars)
            while d[i] > 0 and num:
                try:
                    num = num.divexact(f)
                except NotDivisibleError:
                    break
                d[i] -= 1
            if not num:
                d[i] = 0
        return RationalForm(num, d)

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.numerator, r.denom_exponents))

    def __str__(self) -> str:
        den = []
        for i, d in enumerate(self.denom_exponents):
            if d:
                name = "t" if self.nvars == 1 else f"t{i + 1}"
                f = f"({name} - {name}^-1)"
                den.append(f if d == 1 else f"{f}^{d}")
        if not den:
            return str(self.numerator)
        return f"({self.numerator}) / " + "*".join(den)

    def __repr__(self) -> str:
        return f"RationalForm({str(self)!r})"


def rational_mul(a: RationalForm, b: RationalForm) -> RationalForm:
    return a * b
