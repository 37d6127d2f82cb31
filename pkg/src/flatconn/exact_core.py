"""Exact scalars, sparse multivariate polynomials over Q, and dense linear algebra.

Rationals are :class:`fractions.Fraction`. Matrices are tuples of row tuples;
entries are either all rationals or all :class:`Polynomial` values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ShapeError(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


class NonConstantDeterminant(ArithmeticError):
    def __init__(self, determinant: "Polynomial"):
        super().__init__(f"determinant is not a nonzero constant: {determinant}")
        self.determinant = determinant


class InexactDivision(ArithmeticError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and exponents are rejected."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    value = Fraction(text.strip())
    return value


def format_rational(q: Scalar) -> str:
    return str(Fraction(q))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients.

    Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
    dropped, so structural equality is polynomial equality.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent {exps} for {nvars} variables")
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # construction

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # inspection

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        exps = max(self._terms)  # lex order on exponent tuples
        return exps, self._terms[exps]

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ShapeError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            value = terms.get(exps, 0) + coeff
            if value:
                terms[exps] = value
            else:
                terms.pop(exps, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                value = terms.get(exps, 0) + c1 * c2
                if value:
                    terms[exps] = value
                else:
                    terms.pop(exps, None)
        return Polynomial._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, divisor: "Polynomial | Scalar") -> "Polynomial":
        """Quotient ``self / divisor``; raises :class:`InexactDivision` if it is not a polynomial."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            return self * (1 / divisor.constant_value())
        lead_e, lead_c = divisor.leading_term()
        quotient: dict[Exponent, Fraction] = {}
        rem = self
        while not rem.is_zero():
            e, c = rem.leading_term()
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise InexactDivision(f"{divisor} does not divide {self}")
            coeff = c / lead_c
            quotient[shift] = quotient.get(shift, 0) + coeff
            rem = rem - divisor * Polynomial._raw(self.nvars, {shift: coeff})
        return Polynomial(self.nvars, quotient)

    def partial(self, var_index: int) -> "Polynomial":
        if not 0 <= var_index < self.nvars:
            raise IndexError(f"variable index {var_index} out of range for {self.nvars} variables")
        terms: dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms.items():
            k = exps[var_index]
            if k:
                new = exps[:var_index] + (k - 1,) + exps[var_index + 1:]
                terms[new] = coeff * k
        return Polynomial._raw(self.nvars, terms)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ShapeError("point has wrong length")
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # text

    def to_json(self) -> list[dict]:
        return [
            {"coeff": format_rational(c), "exponents": list(e)}
            for e, c in sorted(self._terms.items(), reverse=True)
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], nvars: int) -> "Polynomial":
        terms: dict[Exponent, Fraction] = {}
        for item in data:
            exps = tuple(item["exponents"])
            if len(exps) != nvars or not all(isinstance(e, int) and e >= 0 for e in exps):
                raise ShapeError(f"bad exponent list {list(exps)} for {nvars} variables")
            terms[exps] = terms.get(exps, 0) + parse_rational(item["coeff"])
        return cls(nvars, terms)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_partial(p: Polynomial, var_index: int) -> Polynomial:
    return p.partial(var_index)


# matrices


def is_zero(x) -> bool:
    return not x


def identity(n: int, one=Fraction(1), zero=Fraction(0)):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int, zero=Fraction(0)):
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def shape(m) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ShapeError("ragged matrix")
    return rows, cols


def to_matrix(rows) -> tuple[tuple, ...]:
    """Freeze nested sequences into a tuple matrix, coercing ints to Fraction."""
    out = tuple(tuple(x if isinstance(x, (Fraction, Polynomial)) else Fraction(x) for x in r) for r in rows)
    shape(out)
    return out


def transpose(m):
    return tuple(zip(*m))


def mat_mul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    cols = transpose(b)
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def mat_vec(m, v):
    rows, cols = shape(m)
    if cols != len(v):
        raise ShapeError(f"cannot apply {rows}x{cols} matrix to length-{len(v)} vector")
    return tuple(_dot(row, v) for row in m)


def _dot(u, v):
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = a * b + total
    if isinstance(total, int):
        total = Fraction(total)
    return total


def mat_add(a, b):
    if shape(a) != shape(b):
        raise ShapeError("shape mismatch")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, s):
    return tuple(tuple(x * s for x in r) for r in a)


def rref(m) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    rows = [list(map(Fraction, r)) for r in m]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        nz = [k for k, y in enumerate(rows[r]) if y]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                row = rows[i]
                for k in nz:
                    row[k] -= f * rows[r][k]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(m) -> int:
    return len(rref(m)[0])


def nullspace(m) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0} over Q."""
    _, ncols = shape(m)
    return _nullspace_from_rref(*rref(m), ncols)


def _nullspace_from_rref(reduced, pivots, ncols) -> list[tuple[Fraction, ...]]:
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_linear_system(a, b) -> tuple[tuple[Fraction, ...] | None, list[tuple[Fraction, ...]]]:
    """General solution of ``a x = b``: (particular solution or None, nullspace basis)."""
    rows, cols = shape(a)
    if len(b) != rows:
        raise ShapeError("right-hand side length mismatch")
    augmented = [tuple(r) + (bi,) for r, bi in zip(a, b)]
    reduced, pivots = rref(augmented)
    if cols in pivots:
        return None, nullspace(a)
    # consistent: dropping the last column leaves the echelon form of a
    x = [Fraction(0)] * cols
    for row, p in zip(reduced, pivots):
        x[p] = row[cols]
    return tuple(x), _nullspace_from_rref([row[:cols] for row in reduced], pivots, cols)


def solve_exact_linear(a, b) -> tuple[Fraction, ...]:
    """Solve a square invertible rational system exactly."""
    n, m = shape(a)
    if n != m:
        raise ShapeError(f"expected a square matrix, got {n}x{m}")
    if len(b) != n:
        raise ShapeError("right-hand side length mismatch")
    rows = [list(map(Fraction, r)) + [Fraction(bi)] for r, bi in zip(a, b)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return tuple(r[n] for r in rows)


def inverse(a):
    """Inverse of a square invertible rational matrix."""
    n, m = shape(a)
    if n != m:
        raise ShapeError(f"expected a square matrix, got {n}x{m}")
    cols = [solve_exact_linear(a, e) for e in identity(n)]
    return transpose(cols)


def rational_det(a) -> Fraction:
    n, m = shape(a)
    if n != m:
        raise ShapeError(f"expected a square matrix, got {n}x{m}")
    rows = [list(map(Fraction, r)) for r in a]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] / rows[col][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


def leading_minors(a) -> list[Fraction]:
    n, _ = shape(a)
    return [rational_det([row[:k] for row in a[:k]]) for k in range(1, n + 1)]


# polynomial matrices


def _poly_nvars(m) -> int:
    for row in m:
        for x in row:
            if isinstance(x, Polynomial):
                return x.nvars
    return 0


def _as_poly(x, nvars: int) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.constant(nvars, x)


def poly_matrix_det(m) -> Polynomial:
    """Determinant of a square polynomial matrix by Bareiss fraction-free elimination."""
    n, cols = shape(m) if m else (0, 0)
    if n != cols:
        raise ShapeError(f"expected a square matrix, got {n}x{cols}")
    nvars = _poly_nvars(m)
    if n == 0:
        return Polynomial.one(nvars)
    a = [[_as_poly(x, nvars) for x in row] for row in m]
    sign = 1
    prev = Polynomial.one(nvars)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def leibniz_det(m):
    """Permutation-sum determinant; only for small matrices and cross-checks."""
    n, cols = shape(m)
    if n != cols:
        raise ShapeError(f"expected a square matrix, got {n}x{cols}")
    total = 0
    for perm in permutations(range(n)):
        term = _perm_sign(perm)
        for i, j in enumerate(perm):
            term = term * m[i][j]
        total = total + term
    return total


def invert_unimodular_matrix(m):
    """Polynomial inverse of a matrix whose determinant is a nonzero constant."""
    n, cols = shape(m)
    if n != cols:
        raise ShapeError(f"expected a square matrix, got {n}x{cols}")
    nvars = _poly_nvars(m)
    det = poly_matrix_det(m)
    if det.is_zero() or not det.is_constant():
        raise NonConstantDeterminant(det)
    inv_det = 1 / det.constant_value()
    a = [[_as_poly(x, nvars) for x in row] for row in m]
    if n == 1:
        return ((Polynomial.constant(nvars, inv_det),),)
    result = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
            cofactor = poly_matrix_det(minor) * (1 if (i + j) % 2 == 0 else -1)
            # adjugate is the transposed cofactor matrix
            result[j][i] = cofactor * inv_det
    return tuple(tuple(r) for r in result)
