"""Monad block data, pairing forms, quadratic conditions and rank probes.

The central object is :class:`MonadData`: k blocks M_1, ..., M_k, each a
(2n+2) x (2n+2k) matrix over an exact field.  Block j packages row j of the
linear-form matrix A via  row_j(A) = x^t * M_j,  where x runs over the 2n+2
homogeneous coordinates.  The quadratic condition A*J*A^t = 0 (J a symmetric
or skew pairing) holds identically in x iff every symmetrised block product

    D_ab = M_a * J * M_b^t + (M_a * J * M_b^t)^t

vanishes; those defects are what :func:`quadratic_defect` computes.  Maximal
rank of A and B = A*J on all of projective space is probed at random points
only: a passing probe is evidence, a failing point is a certificate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exact import (ExactMatrix, Field, MatrixFormatError, content_lines,
                    hstack, parse_entry_row, parse_field, vstack)

ORTHOGONAL_IDENTITY = "orthogonal-identity"
SYMPLECTIC_CANONICAL = "symplectic-canonical"
CUSTOM = "custom"


@dataclass(frozen=True)
class MonadData:
    """Blocks M_1..M_k of size (2n+2) x (2n+2k), all over one field."""

    n: int
    k: int
    field: Field
    blocks: tuple[ExactMatrix, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("need n >= 1 and k >= 1")
        if len(self.blocks) != self.k:
            raise ValueError(f"expected {self.k} blocks, got {len(self.blocks)}")
        shape = (self.block_rows, self.block_cols)
        for j, b in enumerate(self.blocks, start=1):
            if b.field != self.field:
                raise ValueError(f"block {j} is over {b.field}, data is over {self.field}")
            if b.shape != shape:
                raise ValueError(f"block {j} has shape {b.shape}, expected {shape}")

    @property
    def block_rows(self) -> int:
        return 2 * self.n + 2

    @property
    def block_cols(self) -> int:
        return 2 * self.n + 2 * self.k

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)


@dataclass(frozen=True)
class PairingForm:
    """Non-degenerate symmetric or skew-symmetric (2n+2k) x (2n+2k) matrix."""

    kind: str
    matrix: ExactMatrix

    def __post_init__(self):
        if self.kind not in (ORTHOGONAL_IDENTITY, SYMPLECTIC_CANONICAL, CUSTOM):
            raise ValueError(f"unknown pairing kind {self.kind!r}")
        m = self.matrix
        if m.rows != m.cols:
            raise ValueError("pairing matrix must be square")
        if self.kind == CUSTOM:
            t = m.transpose()
            if m != t and m != -t:
                raise ValueError("custom pairing must be symmetric or skew-symmetric")
            if m.rank() != m.rows:
                raise ValueError("pairing matrix must be invertible")

    @property
    def is_skew(self) -> bool:
        return self.matrix.transpose() == -self.matrix


def canonical_j(kind: str, n: int, k: int, field: Field) -> PairingForm:
    """The identity pairing, or the canonical skew block form [[0, I], [-I, 0]]."""
    size = 2 * n + 2 * k
    if kind == ORTHOGONAL_IDENTITY:
        return PairingForm(kind, ExactMatrix.identity(field, size))
    if kind == SYMPLECTIC_CANONICAL:
        half = size // 2
        eye = ExactMatrix.identity(field, half)
        zero = ExactMatrix.zeros(field, half, half)
        mat = vstack([hstack([zero, eye]), hstack([-eye, zero])])
        return PairingForm(kind, mat)
    raise ValueError(f"no canonical pairing of kind {kind!r}")


@dataclass(frozen=True)
class Point:
    """A nonzero coordinate vector, representing a point of projective space."""

    field: Field
    coords: tuple

    def __post_init__(self):
        if not self.coords or all(x == 0 for x in self.coords):
            raise ValueError("point must have a nonzero coordinate")

    @classmethod
    def of(cls, field: Field, values) -> "Point":
        return cls(field, tuple(field.coerce(v) for v in values))

    def as_row(self) -> ExactMatrix:
        return ExactMatrix(self.field, [list(self.coords)])


# -- operations -----------------------------------------------------------------


def assemble_m(d: MonadData) -> ExactMatrix:
    """Stack the blocks into the (k(2n+2)) x (2n+2k) matrix M."""
    return vstack(list(d.blocks))


def evaluate_a(d: MonadData, x: Point) -> ExactMatrix:
    """The k x (2n+2k) matrix A(x): row j is x^t * M_j."""
    if x.field != d.field:
        raise ValueError(f"point is over {x.field}, data over {d.field}")
    if len(x.coords) != d.block_rows:
        raise ValueError(f"point has {len(x.coords)} coordinates, expected {d.block_rows}")
    row = x.as_row()
    return vstack([row @ b for b in d.blocks])


def evaluate_b(d: MonadData, j: PairingForm, x: Point) -> ExactMatrix:
    """B(x) = A(x) * J."""
    return evaluate_a(d, x) @ j.matrix


def quadratic_defect(d: MonadData, j: PairingForm) -> list[tuple[int, int, ExactMatrix]]:
    """Defects D_ab = sym(M_a * J * M_b^t) for 1 <= a <= b <= k.

    All defects vanish iff A * J * A^t = 0 identically in the coordinates.
    """
    if j.matrix.rows != d.block_cols:
        raise ValueError(f"pairing has size {j.matrix.rows}, expected {d.block_cols}")
    if j.matrix.field != d.field:
        raise ValueError(f"pairing is over {j.matrix.field}, data over {d.field}")
    transposed = [b.transpose() for b in d.blocks]
    out = []
    for a in range(1, d.k + 1):
        left = d.blocks[a - 1] @ j.matrix
        for b in range(a, d.k + 1):
            x = left @ transposed[b - 1]
            out.append((a, b, x + x.transpose()))
    return out


def defects_vanish(defects: list[tuple[int, int, ExactMatrix]]) -> bool:
    return all(mat.is_zero() for _, _, mat in defects)


@dataclass(frozen=True)
class RankCounterexample:
    point: Point
    which_map: str  # "alpha" (A drops rank) or "beta" (B does)
    observed_rank: int


@dataclass(frozen=True)
class RankProbeVerdict:
    ok: bool
    points_tested: int
    counterexample: Optional[RankCounterexample] = None


def random_point(field: Field, dim: int, rng: np.random.Generator, box: int = 10) -> Point:
    """A nonzero point: uniform coordinates over GF(p), integers in [-box, box] over Q."""
    while True:
        if field.is_prime_field:
            coords = rng.integers(0, field.p, size=dim, dtype=np.int64)
        else:
            coords = rng.integers(-box, box + 1, size=dim)
        if np.any(coords):
            return Point.of(field, coords.tolist())


def max_rank_probe(d: MonadData, j: PairingForm, trials: int, seed: int,
                   box: int = 10) -> RankProbeVerdict:
    """Check rank A(x) = rank B(x) = k at ``trials`` distinct random points.

    A returned counterexample is an exact certificate that the data fails the
    everywhere-maximal-rank requirement; ``ok`` is probabilistic evidence only.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    seen: set[tuple] = set()
    tested = 0
    attempts = 0
    max_attempts = 50 * trials + 100
    while tested < trials and attempts < max_attempts:
        attempts += 1
        x = random_point(d.field, d.block_rows, rng, box=box)
        if x.coords in seen:
            continue
        seen.add(x.coords)
        tested += 1
        a = evaluate_a(d, x)
        ra = a.rank()
        if ra != d.k:
            return RankProbeVerdict(False, tested, RankCounterexample(x, "alpha", ra))
        rb = (a @ j.matrix).rank()
        if rb != d.k:
            return RankProbeVerdict(False, tested, RankCounterexample(x, "beta", rb))
    return RankProbeVerdict(True, tested)


def chern_coefficients(k: int, terms: int) -> list[int]:
    """Coefficients [c_0, c_2, c_4, ...] of the total Chern series (1 - t^2)^(-k)."""
    if k < 1 or terms < 1:
        raise ValueError("need k >= 1 and terms >= 1")
    return [math.comb(k + m - 1, m) for m in range(terms)]


# -- text format --------------------------------------------------------------------
#
# line 1:  monad n=<N> k=<K> field=<rational|gf:P>
# then for j = 1..k:  a line 'block <j>' followed by 2n+2 rows of 2n+2k entries.

_MONAD_HEADER = re.compile(r"monad n=(\d+) k=(\d+) field=(\S+)")


def format_monad(d: MonadData) -> str:
    lines = [f"monad n={d.n} k={d.k} field={d.field.spec}"]
    for j, b in enumerate(d.blocks, start=1):
        lines.append(f"block {j}")
        for i in range(b.rows):
            lines.append(" ".join(d.field.format(x) for x in b.row_list(i)))
    return "\n".join(lines) + "\n"


def parse_monad(text: str) -> MonadData:
    lines = content_lines(text)
    if not lines:
        raise MatrixFormatError("empty monad input")
    m = _MONAD_HEADER.fullmatch(lines[0])
    if not m:
        raise MatrixFormatError(f"bad monad header: {lines[0]!r}")
    n, k = int(m.group(1)), int(m.group(2))
    field = parse_field(m.group(3))
    if n < 1 or k < 1:
        raise MatrixFormatError(f"bad parameters n={n}, k={k}")
    rows_per_block = 2 * n + 2
    cols = 2 * n + 2 * k
    pos = 1
    blocks = []
    for j in range(1, k + 1):
        if pos >= len(lines) or lines[pos] != f"block {j}":
            got = lines[pos] if pos < len(lines) else "<eof>"
            raise MatrixFormatError(f"expected 'block {j}', got {got!r}")
        pos += 1
        if pos + rows_per_block > len(lines):
            raise MatrixFormatError(f"block {j} is truncated")
        data = [parse_entry_row(field, lines[pos + i], cols) for i in range(rows_per_block)]
        blocks.append(ExactMatrix(field, data))
        pos += rows_per_block
    if pos != len(lines):
        raise MatrixFormatError(f"trailing content after block {k}: {lines[pos]!r}")
    return MonadData(n, k, field, tuple(blocks))
