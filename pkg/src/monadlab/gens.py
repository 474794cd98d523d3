"""Generators for test data: symplectic instanton families, isotropic
orthogonal candidates, and the randomized orthogonal-search harness.

Every generator re-verifies its own claims through the public defect, probe
and determinant operations before returning; a failed self-check raises
:class:`GeneratorError` and is never an accepted outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import GF, ExactMatrix, Field
from .invariant import det_q
from .monad import (ORTHOGONAL_IDENTITY, SYMPLECTIC_CANONICAL, MonadData,
                    PairingForm, RankProbeVerdict, canonical_j, defects_vanish,
                    max_rank_probe, quadratic_defect)


class GeneratorError(RuntimeError):
    """A generator's construction failed its own verification."""


@dataclass(frozen=True)
class GeneratorReport:
    data: MonadData
    form: PairingForm
    defects_ok: bool           # recomputed from data, never trusted from the construction
    rank_probe: RankProbeVerdict
    det_q_value: object = None  # None when not computed


def random_sl(field: Field, size: int, rng: np.random.Generator,
              steps: int | None = None) -> ExactMatrix:
    """Unit-determinant matrix built as a product of random transvections."""
    if steps is None:
        steps = 3 * size
    a = ExactMatrix.identity(field, size)._a.copy()
    for _ in range(steps):
        i = int(rng.integers(0, size))
        j = int(rng.integers(0, size - 1))
        if j >= i:
            j += 1
        if field.is_prime_field:
            lam = int(rng.integers(0, field.p))
            a[i] = (a[i] + lam * a[j]) % field.p
        else:
            lam = field.coerce(int(rng.integers(-3, 4)))
            a[i] = a[i] + lam * a[j]
    return ExactMatrix._wrap(field, a)


def transform_monad(d: MonadData, on_w: ExactMatrix | None = None,
                    on_v: ExactMatrix | None = None,
                    on_i: ExactMatrix | None = None) -> MonadData:
    """Apply basis changes: M_j -> h M_j g on V/W, and mix the blocks by a
    k x k coefficient matrix for the action on the k-dimensional factor."""
    blocks = list(d.blocks)
    if on_i is not None:
        if on_i.shape != (d.k, d.k):
            raise ValueError(f"block-mixing matrix must be {d.k} x {d.k}")
        blocks = [
            _linear_mix([on_i[a, j] for j in range(d.k)], blocks)
            for a in range(d.k)
        ]
    if on_v is not None:
        blocks = [on_v @ b for b in blocks]
    if on_w is not None:
        blocks = [b @ on_w for b in blocks]
    return MonadData(d.n, d.k, d.field, tuple(blocks))


def _linear_mix(coeffs, mats: list[ExactMatrix]) -> ExactMatrix:
    out = mats[0].scale(coeffs[0])
    for c, m in zip(coeffs[1:], mats[1:]):
        out = out + m.scale(c)
    return out


# -- special symplectic family -----------------------------------------------------


def _special_blocks(n: int, k: int, field: Field) -> tuple[ExactMatrix, ...]:
    """Banded 0/1 blocks encoding A = (X | Y') in split coordinates.

    X is the k x (n+k) band with x_0..x_n along row j starting at column j;
    Y' is the same band in the y coordinates with its columns reversed.  The
    reversal makes the canonical skew pairing work: the nonzero entries of
    (A J A^t)_{ab} collect the products x_c y_d with c + d depending only on
    a + b, a symmetric expression, so the skew pairing cancels it exactly.
    """
    half = n + k
    blocks = []
    for j in range(k):
        a = ExactMatrix.zeros(field, 2 * n + 2, 2 * n + 2 * k)._a.copy()
        one = field.one()
        for c in range(n + 1):
            a[c, j + c] = one
            a[n + 1 + c, half + (half - 1 - j - c)] = one
        blocks.append(ExactMatrix._wrap(field, a))
    return tuple(blocks)


def gen_special_symplectic(n: int, k: int, field: Field, probe_trials: int = 50,
                           seed: int = 0, compute_det: bool = True) -> GeneratorReport:
    """Symplectic instanton data with identically vanishing skew defects.

    The construction is deterministic; only the rank probe consumes the seed.
    Any failed self-check raises, because the family is supposed to satisfy
    the quadratic conditions and the maximal-rank requirement by design.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    data = MonadData(n, k, field, _special_blocks(n, k, field))
    form = canonical_j(SYMPLECTIC_CANONICAL, n, k, field)
    defects_ok = defects_vanish(quadratic_defect(data, form))
    if not defects_ok:
        raise GeneratorError("special symplectic construction has a nonzero defect")
    probe = max_rank_probe(data, form, probe_trials, seed)
    if not probe.ok:
        raise GeneratorError(f"special symplectic construction dropped rank at "
                             f"{probe.counterexample.point.coords}")
    det = det_q(data) if compute_det else None
    return GeneratorReport(data, form, defects_ok, probe, det)


# -- isotropic orthogonal candidates --------------------------------------------------


def isotropic_basis(field: Field, dim: int) -> ExactMatrix:
    """Rows spanning a maximal totally isotropic subspace for the dot product.

    Over GF(p) with p = 1 mod 4 the rows e_{2t} + sqrt(-1) e_{2t+1} give
    dimension dim/2; for p = 3 mod 4 each group of four coordinates carries
    two isotropic rows built from a solution of a^2 + b^2 = -1, giving the
    Witt index in all cases.  The standard form is anisotropic over the
    rationals, so only prime fields are supported.
    """
    if not field.is_prime_field:
        raise GeneratorError("the dot product has no isotropic vectors over the rationals")
    p = field.p
    rows: list[list[int]] = []
    if p % 4 == 1:
        root = _sqrt_minus_one(p)
        for t in range(dim // 2):
            row = [0] * dim
            row[2 * t] = 1
            row[2 * t + 1] = root
            rows.append(row)
    else:
        a, b = _sum_of_squares_minus_one(p)
        for t in range(dim // 4):
            u = [0] * dim
            u[4 * t], u[4 * t + 2], u[4 * t + 3] = 1, a, b
            v = [0] * dim
            v[4 * t + 1], v[4 * t + 2], v[4 * t + 3] = 1, b, (p - a) % p
            rows.extend([u, v])
    if not rows:
        raise GeneratorError(f"no isotropic subspace in dimension {dim} over GF({p})")
    basis = ExactMatrix(field, rows)
    if not (basis @ basis.transpose()).is_zero():
        raise GeneratorError("isotropic construction failed its self-check")
    return basis


def _sqrt_minus_one(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return pow(a, (p - 1) // 4, p)
    raise GeneratorError(f"no square root of -1 mod {p}")


def _sum_of_squares_minus_one(p: int) -> tuple[int, int]:
    for b in range(1, p):
        t = (-1 - b * b) % p
        if t and pow(t, (p - 1) // 2, p) == 1:
            a = pow(t, (p + 1) // 4, p)
            return a, b
    raise GeneratorError(f"cannot write -1 as a sum of two squares mod {p}")


def _blocks_in_span(n: int, k: int, span: ExactMatrix,
                    rng: np.random.Generator) -> tuple[ExactMatrix, ...]:
    """Random blocks whose rows are combinations of the span's rows."""
    field = span.field
    blocks = tuple(
        ExactMatrix.random(field, 2 * n + 2, span.rows, rng) @ span
        for _ in range(k)
    )
    return blocks


def gen_isotropic_orthogonal(n: int, k: int, p: int, seed: int,
                             probe_trials: int = 20) -> GeneratorReport:
    """Nonzero data satisfying the identity-pairing quadratic conditions.

    All block rows are drawn from one totally isotropic subspace, so every
    product M_a * M_b^t vanishes outright, which is stronger than the
    symmetrised conditions.  The determinant is always computed: the syzygy
    forces it to zero, and that is re-verified here.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    field = GF(p)
    span = isotropic_basis(field, 2 * n + 2 * k)
    rng = np.random.default_rng(seed)
    for _ in range(100):
        blocks = _blocks_in_span(n, k, span, rng)
        if not all(b.is_zero() for b in blocks):
            break
    else:
        raise GeneratorError("could not draw nonzero blocks")
    data = MonadData(n, k, field, blocks)
    form = canonical_j(ORTHOGONAL_IDENTITY, n, k, field)
    defects_ok = defects_vanish(quadratic_defect(data, form))
    if not defects_ok:
        raise GeneratorError("isotropic construction has a nonzero defect")
    det = det_q(data)
    if det != 0:
        raise GeneratorError("isotropic construction has nonzero determinant; "
                             "the syzygy argument should force zero")
    probe = max_rank_probe(data, form, probe_trials, seed)
    return GeneratorReport(data, form, defects_ok, probe, det)


# -- orthogonal search harness -----------------------------------------------------------


@dataclass(frozen=True)
class TrialRow:
    seed: int
    perturbed: bool
    defects_ok: bool
    det_q_zero: bool
    rank_counterexample: bool


@dataclass(frozen=True)
class SearchSummary:
    n: int
    k: int
    p: int
    trials: int
    rows: tuple[TrialRow, ...]

    @property
    def det_zero_count(self) -> int:
        return sum(r.det_q_zero for r in self.rows)

    @property
    def rank_counterexample_count(self) -> int:
        return sum(r.rank_counterexample for r in self.rows)

    @property
    def instanton_candidates(self) -> int:
        """Candidates passing every requirement at once; provably always zero."""
        return sum(r.defects_ok and not r.det_q_zero and not r.rank_counterexample
                   for r in self.rows)


def search_orthogonal(n: int, k: int, p: int, trials: int, seed: int) -> SearchSummary:
    """Run seeded isotropic draws, perturbing every other one within the
    isotropic subspace, and tabulate how each candidate fails."""
    if trials < 1:
        raise ValueError("need at least one trial")
    field = GF(p)
    form = canonical_j(ORTHOGONAL_IDENTITY, n, k, field)
    span = isotropic_basis(field, 2 * n + 2 * k)
    rows = []
    for t in range(trials):
        trial_seed = seed + t
        report = gen_isotropic_orthogonal(n, k, p, trial_seed)
        perturbed = t % 2 == 1
        if perturbed:
            # row operations inside the isotropic span keep the conditions exact
            rng = np.random.default_rng(trial_seed + 0x5EED)
            blocks = tuple(
                random_sl(field, 2 * n + 2, rng) @ b + mix
                for b, mix in zip(report.data.blocks, _blocks_in_span(n, k, span, rng))
            )
            data = MonadData(n, k, field, blocks)
            defects_ok = defects_vanish(quadratic_defect(data, form))
            det = det_q(data)
            probe = max_rank_probe(data, form, 20, trial_seed)
        else:
            defects_ok = report.defects_ok
            det = report.det_q_value
            probe = report.rank_probe
        rows.append(TrialRow(trial_seed, perturbed, defects_ok, det == 0, not probe.ok))
    return SearchSummary(n, k, p, trials, tuple(rows))
