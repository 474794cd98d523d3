"""Exact dense linear algebra over the rationals and over prime fields GF(p).

Scalars are plain Python values: ``fractions.Fraction`` over the rationals
(always in lowest terms with positive denominator) and canonical ``int``
representatives in ``[0, p)`` over GF(p).  Matrices are immutable after
construction.  GF(p) data lives in int64 numpy arrays with the prime bounded
by 2**31 so every intermediate product fits in 64-bit arithmetic; rational
data lives in object arrays of Fractions.

Determinants over the rationals use fraction-free (Bareiss) elimination on a
denominator-cleared integer matrix, which keeps intermediate entries at minor
size instead of exploding; over GF(p) plain elimination is exact already.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Sequence

import numpy as np

_PRIME_LIMIT = 2**31
# chunk the contraction axis so partial dot products stay below 2**62
_INT64_BUDGET = 2**62


class MatrixFormatError(ValueError):
    """Malformed matrix or monad text input."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """An exact coefficient field: the rationals or GF(p) for an odd prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if p % 2 == 0 or p >= _PRIME_LIMIT or not _is_prime(p):
                raise ValueError(f"field modulus must be an odd prime < 2**31, got {p}")
        self.p = p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def spec(self) -> str:
        """Header token used by the text formats: 'rational' or 'gf:P'."""
        return "rational" if self.p is None else f"gf:{self.p}"

    def coerce(self, x):
        """Canonical field element from an int, Fraction or string token."""
        if self.p is not None:
            if isinstance(x, str):
                x = int(x)
            elif isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"cannot coerce {x} into GF({self.p})")
                x = x.numerator
            return int(x) % self.p
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("monadlab.Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(spec: str) -> Field:
    """Inverse of ``Field.spec``."""
    spec = spec.strip()
    if spec == "rational":
        return QQ
    m = re.fullmatch(r"gf:(\d+)", spec)
    if not m:
        raise MatrixFormatError(f"unknown field spec {spec!r}")
    try:
        return GF(int(m.group(1)))
    except ValueError as e:
        raise MatrixFormatError(str(e)) from None


def _check_same_field(a: "ExactMatrix", b: "ExactMatrix"):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


class ExactMatrix:
    """Immutable dense matrix with all entries in one exact field."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        data = [[field.coerce(x) for x in r] for r in rows]
        ncols = len(rows[0]) if rows else 0
        if field.is_prime_field:
            a = np.array(data, dtype=np.int64).reshape(len(rows), ncols)
        else:
            a = np.empty((len(rows), ncols), dtype=object)
            for i, r in enumerate(data):
                for j, x in enumerate(r):
                    a[i, j] = x
        self.field = field
        self._a = a
        a.flags.writeable = False

    @classmethod
    def _wrap(cls, field: Field, a: np.ndarray) -> "ExactMatrix":
        """Adopt an ndarray that is already canonical for ``field``."""
        m = cls.__new__(cls)
        m.field = field
        m._a = a
        a.flags.writeable = False
        return m

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        if field.is_prime_field:
            a = np.zeros((rows, cols), dtype=np.int64)
        else:
            a = np.empty((rows, cols), dtype=object)
            a[...] = Fraction(0)
        return cls._wrap(field, a)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        m = cls.zeros(field, n, n)
        a = m._a.copy()
        for i in range(n):
            a[i, i] = field.one()
        return cls._wrap(field, a)

    @classmethod
    def from_blocks(cls, field: Field, grid: Sequence[Sequence["ExactMatrix | None"]],
                    block_rows: int, block_cols: int) -> "ExactMatrix":
        """Assemble a block matrix; ``None`` cells are zero blocks."""
        nbr = len(grid)
        nbc = len(grid[0]) if nbr else 0
        if field.is_prime_field:
            a = np.zeros((nbr * block_rows, nbc * block_cols), dtype=np.int64)
        else:
            a = np.empty((nbr * block_rows, nbc * block_cols), dtype=object)
            a[...] = Fraction(0)
        for i, row in enumerate(grid):
            if len(row) != nbc:
                raise ValueError("ragged block grid")
            for j, blk in enumerate(row):
                if blk is None:
                    continue
                if blk.field != field:
                    raise ValueError(f"field mismatch: {blk.field} vs {field}")
                if blk.shape != (block_rows, block_cols):
                    raise ValueError(f"block ({i},{j}) has shape {blk.shape}, "
                                     f"expected {(block_rows, block_cols)}")
                a[i * block_rows:(i + 1) * block_rows,
                  j * block_cols:(j + 1) * block_cols] = blk._a
        return cls._wrap(field, a)

    @classmethod
    def random(cls, field: Field, rows: int, cols: int, rng: np.random.Generator,
               box: int = 10) -> "ExactMatrix":
        """Uniform entries: all of GF(p), or integers in [-box, box] over Q."""
        if field.is_prime_field:
            return cls._wrap(field, rng.integers(0, field.p, size=(rows, cols),
                                                 dtype=np.int64))
        ints = rng.integers(-box, box + 1, size=(rows, cols))
        return cls(field, ints.tolist())

    # -- shape and access --------------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape  # type: ignore[return-value]

    def __getitem__(self, ij):
        i, j = ij
        x = self._a[i, j]
        return int(x) if self.field.is_prime_field else x

    def row_list(self, i: int) -> list:
        return [self[i, j] for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [self.row_list(i) for i in range(self.rows)]

    def block(self, i: int, j: int, block_rows: int, block_cols: int) -> "ExactMatrix":
        """The (i, j) block (0-based) of the block partition with given sizes."""
        sub = self._a[i * block_rows:(i + 1) * block_rows,
                      j * block_cols:(j + 1) * block_cols]
        return ExactMatrix._wrap(self.field, sub.copy())

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        if self.field.is_prime_field:
            return ExactMatrix._wrap(self.field,
                                     _matmul_gf(self._a, other._a, self.field.p))
        return ExactMatrix._wrap(self.field, _matmul_object(self._a, other._a))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        a = self._a + other._a
        if self.field.is_prime_field:
            a %= self.field.p
        return ExactMatrix._wrap(self.field, a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} - {other.shape}")
        a = self._a - other._a
        if self.field.is_prime_field:
            a %= self.field.p
        return ExactMatrix._wrap(self.field, a)

    def __neg__(self) -> "ExactMatrix":
        a = -self._a
        if self.field.is_prime_field:
            a %= self.field.p
        return ExactMatrix._wrap(self.field, a)

    def scale(self, s) -> "ExactMatrix":
        s = self.field.coerce(s)
        a = self._a * s
        if self.field.is_prime_field:
            a %= self.field.p
        return ExactMatrix._wrap(self.field, a)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.field, self._a.T.copy())

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        if self.field.is_prime_field:
            return not np.any(self._a)
        return all(x == 0 for x in self._a.flat)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self._a, other._a)))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self._a.flat)))

    def __repr__(self):
        return f"ExactMatrix({self.field!r}, {self.tolist()!r})"

    # -- elimination-based operations -----------------------------------------

    def det(self):
        """Exact determinant (Bareiss over Q, ordinary elimination over GF(p))."""
        if self.rows != self.cols:
            raise ValueError(f"determinant of non-square {self.shape} matrix")
        if self.rows == 0:
            return self.field.one()
        if self.field.is_prime_field:
            return _det_gf(self._a, self.field.p)
        return _det_rational(self.tolist())

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.field.is_prime_field:
            return len(_rref_gf(self._a, self.field.p)[1])
        return len(_rref_rational(self.tolist())[1])

    def kernel_basis(self) -> list["ExactMatrix"]:
        """Basis of the right null space, as column vectors; [] iff full column rank."""
        n = self.cols
        if n == 0:
            return []
        if self.rows == 0:
            return [ExactMatrix.identity(self.field, n).block(0, j, n, 1)
                    for j in range(n)]
        if self.field.is_prime_field:
            r, pivots = _rref_gf(self._a, self.field.p)
            rr = r.tolist()
            neg = lambda x: (-x) % self.field.p
        else:
            rr, pivots = _rref_rational(self.tolist())
            neg = lambda x: -x
        pivot_set = set(pivots)
        basis = []
        for f in range(n):
            if f in pivot_set:
                continue
            v = [self.field.zero()] * n
            v[f] = self.field.one()
            for r_i, c in enumerate(pivots):
                v[c] = neg(rr[r_i][f])
            basis.append(ExactMatrix(self.field, [[x] for x in v]))
        return basis


def hstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    first = mats[0]
    for m in mats[1:]:
        _check_same_field(first, m)
        if m.rows != first.rows:
            raise ValueError("hstack row mismatch")
    return ExactMatrix._wrap(first.field, np.hstack([m._a for m in mats]))


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    first = mats[0]
    for m in mats[1:]:
        _check_same_field(first, m)
        if m.cols != first.cols:
            raise ValueError("vstack column mismatch")
    return ExactMatrix._wrap(first.field, np.vstack([m._a for m in mats]))


# -- GF(p) kernels -------------------------------------------------------------


def _matmul_gf(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[1]
    if n == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    chunk = max(1, _INT64_BUDGET // ((p - 1) ** 2))
    if chunk >= n:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, n, chunk):
        acc = (acc + a[:, s:s + chunk] @ b[s:s + chunk, :]) % p
    return acc


def _matmul_object(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        out = np.empty((a.shape[0], b.shape[1]), dtype=object)
        out[...] = Fraction(0)
        return out
    return a @ b


def _det_gf(a: np.ndarray, p: int) -> int:
    a = a.copy()
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            det = p - det
        piv = int(a[c, c])
        det = det * piv % p
        if c + 1 < n:
            inv = pow(piv, -1, p)
            factors = a[c + 1:, c] * inv % p
            a[c + 1:, c:] = (a[c + 1:, c:] - np.outer(factors, a[c, c:])) % p
    return det


def _rref_gf(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns over GF(p)."""
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


# -- rational kernels -----------------------------------------------------------


def _det_rational(rows: list[list[Fraction]]) -> Fraction:
    denom = 1
    int_rows: list[list[int]] = []
    for row in rows:
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        int_rows.append([int(x * scale) for x in row])
        denom *= scale
    return Fraction(_det_bareiss_int(int_rows), denom)


def _det_bareiss_int(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        for r in range(c + 1, n):
            arc = a[r][c]
            row_r = a[r]
            row_c = a[c]
            for j in range(c + 1, n):
                # exact division: the quotient is a minor determinant
                row_r[j] = (row_r[j] * piv - arc * row_c[j]) // prev
            row_r[c] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def _rref_rational(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [row[:] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        i = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


# -- text format ------------------------------------------------------------------
#
# line 1:  matrix rows=<R> cols=<C> field=<rational|gf:P>
# then R lines of C whitespace-separated entries; '#' lines are comments.

_MATRIX_HEADER = re.compile(r"matrix rows=(\d+) cols=(\d+) field=(\S+)")


def format_matrix(m: ExactMatrix) -> str:
    lines = [f"matrix rows={m.rows} cols={m.cols} field={m.field.spec}"]
    for i in range(m.rows):
        lines.append(" ".join(m.field.format(x) for x in m.row_list(i)))
    return "\n".join(lines) + "\n"


def content_lines(text: str) -> list[str]:
    """Non-comment, non-blank lines."""
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def parse_entry_row(field: Field, line: str, expected: int) -> list:
    toks = line.split()
    if len(toks) != expected:
        raise MatrixFormatError(f"expected {expected} entries, got {len(toks)}: {line!r}")
    try:
        return [field.coerce(t) for t in toks]
    except (ValueError, ZeroDivisionError) as e:
        raise MatrixFormatError(f"bad entry in {line!r}: {e}") from None


def parse_matrix(text: str) -> ExactMatrix:
    lines = content_lines(text)
    if not lines:
        raise MatrixFormatError("empty matrix input")
    m = _MATRIX_HEADER.fullmatch(lines[0])
    if not m:
        raise MatrixFormatError(f"bad matrix header: {lines[0]!r}")
    rows, cols = int(m.group(1)), int(m.group(2))
    field = parse_field(m.group(3))
    if len(lines) - 1 != rows:
        raise MatrixFormatError(f"expected {rows} entry rows, got {len(lines) - 1}")
    data = [parse_entry_row(field, line, cols) for line in lines[1:]]
    return ExactMatrix(field, data) if rows else ExactMatrix.zeros(field, 0, cols)
