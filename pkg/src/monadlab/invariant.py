"""The big multiplication matrix Q, its determinant, and the explicit syzygy.

Q is the square matrix of the map  W tensor S^n I  ->  V tensor S^{n+1} I
induced by the block data: in the block partition indexed by the two monomial
bases, block (i, j) is M_alpha when eta_i = zeta_j * i_alpha and zero
otherwise.  Both sides have dimension (2n+2k)*C(k+n-1, n) = (2n+2)*C(k+n, n+1).

The syzygy S stacks M_1^t..M_k^t over zero blocks.  Row block i of Q*S equals
M_a*M_b^t + M_b*M_a^t (or M_a*M_a^t on the diagonal) for the rows indexed by
monomials i_1^{n-1} i_a i_b, and vanishes identically elsewhere; hence when
the identity-pairing quadratic conditions hold, Q*S = 0 with S != 0 and Q is
singular.  :func:`orthogonal_verdict` packages that chain of implications.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .exact import ExactMatrix, vstack
from .monad import (ORTHOGONAL_IDENTITY, MonadData, canonical_j, defects_vanish,
                    quadratic_defect)
from .symcomb import QLayout, q_layout


def dimension_identity(n: int, k: int) -> tuple[int, int, bool]:
    """Dimensions of both sides of the map; they agree for every n, k >= 1."""
    lhs = (2 * n + 2 * k) * math.comb(k + n - 1, n)
    rhs = (2 * n + 2) * math.comb(k + n, n + 1)
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class QMatrix:
    n: int
    k: int
    layout: QLayout
    matrix: ExactMatrix


@dataclass(frozen=True)
class SyzygyMatrix:
    n: int
    k: int
    matrix: ExactMatrix


def build_q(d: MonadData) -> QMatrix:
    """Assemble the square matrix from the sparse block layout."""
    layout = q_layout(d.n, d.k)
    grid = [[None] * layout.block_cols for _ in range(layout.block_rows)]
    for (i, j), alpha in layout.entries.items():
        grid[i - 1][j - 1] = d.blocks[alpha - 1]
    matrix = ExactMatrix.from_blocks(d.field, grid, d.block_rows, d.block_cols)
    assert matrix.rows == matrix.cols
    return QMatrix(d.n, d.k, layout, matrix)


def det_q(d: MonadData):
    """Exact determinant of the assembled matrix."""
    return build_q(d).matrix.det()


def build_syzygy(d: MonadData) -> SyzygyMatrix:
    """Stack M_1^t..M_k^t over s-k zero blocks; shape ((2n+2k)*s) x (2n+2)."""
    s = math.comb(d.k + d.n - 1, d.n)
    zero = ExactMatrix.zeros(d.field, d.block_cols, d.block_rows)
    parts = [b.transpose() for b in d.blocks] + [zero] * (s - d.k)
    return SyzygyMatrix(d.n, d.k, vstack(parts))


@dataclass(frozen=True)
class SyzygyReport:
    residual: ExactMatrix
    residual_is_zero: bool
    syzygy_is_zero: bool
    defects: list[tuple[int, int, ExactMatrix]]
    defects_all_zero: bool
    degenerate: bool  # all blocks zero: S = 0 and the singularity argument is vacuous

    @property
    def det_zero_forced(self) -> bool:
        return self.residual_is_zero and not self.syzygy_is_zero


def verify_syzygy(d: MonadData) -> SyzygyReport:
    """Residual Q*S, identity-pairing defects, and whether singularity is forced."""
    q = build_q(d)
    s = build_syzygy(d)
    residual = q.matrix @ s.matrix
    defects = quadratic_defect(d, canonical_j(ORTHOGONAL_IDENTITY, d.n, d.k, d.field))
    return SyzygyReport(
        residual=residual,
        residual_is_zero=residual.is_zero(),
        syzygy_is_zero=s.matrix.is_zero(),
        defects=defects,
        defects_all_zero=defects_vanish(defects),
        degenerate=d.is_zero(),
    )


DET_ZERO_BY_SYZYGY = "det-zero-by-syzygy"
DEFECT_NONZERO = "defect-nonzero"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class OrthogonalVerdict:
    """Outcome of testing data against the orthogonal-instanton requirements."""

    status: str
    message: str
    first_bad_pair: Optional[tuple[int, int]] = None
    det_value: object = None

    @property
    def excluded(self) -> bool:
        """True when the data provably cannot define an instanton bundle."""
        return self.status in (DET_ZERO_BY_SYZYGY, DEGENERATE)


def orthogonal_verdict(d: MonadData) -> OrthogonalVerdict:
    """Executable form of the non-existence argument for one candidate.

    If the identity-pairing quadratic conditions hold and the syzygy is
    nonzero, the determinant is computed exactly and must be zero, so the
    candidate fails the non-degeneracy requirement and cannot define an
    instanton bundle.  Otherwise the violated condition is reported.
    """
    if d.is_zero():
        return OrthogonalVerdict(DEGENERATE, "degenerate: A = 0, never of maximal rank")
    defects = quadratic_defect(d, canonical_j(ORTHOGONAL_IDENTITY, d.n, d.k, d.field))
    for a, b, mat in defects:
        if not mat.is_zero():
            return OrthogonalVerdict(
                DEFECT_NONZERO,
                f"orthogonal conditions violated at (alpha,beta)=({a},{b})",
                first_bad_pair=(a, b),
            )
    det = det_q(d)
    if det != 0:
        raise RuntimeError("syzygy argument violated: quadratic conditions hold "
                           f"but det = {det}; this is a bug")
    return OrthogonalVerdict(
        DET_ZERO_BY_SYZYGY,
        "not an instanton: det Q = 0 by syzygy",
        det_value=det,
    )
