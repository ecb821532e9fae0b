"""Independent oracle backends: finite measures and PSD trace matrices.

These two worked-out settings (commutative algebras <-> weight vectors on a
finite atom set; full matrix algebras <-> PSD matrices under trace duality)
double-check the generic pipeline.  Everything here is implemented with its
own numerics -- plain ``np.linalg.pinv``/``svd`` call sites and a Richardson
extrapolation loop -- and never calls into the pipeline's linear-algebra
helpers, so a differential test between the two routes is meaningful.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import _frozen_array
from .errors import (
    ConstructionError,
    CrossCheckFailedError,
    NotMatrixAlgebraError,
)
from .functional import Functional

WEIGHT_FLOOR = -1e-12          # measures tolerate this much negative noise
MATRIX_CROSS_TOL = 1e-6        # closed-form vs doubling-limit agreement
_NULL_RTOL = 1e-10             # singular-value cut for null spaces


@dataclass(frozen=True)
class Measure:
    """Nonnegative weights on a finite set of atoms."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=float)
        if w.ndim != 1:
            raise ConstructionError("measure weights must be a vector")
        if w.size and w.min() < WEIGHT_FLOOR:
            raise ConstructionError(
                f"measure has a negative weight ({w.min():.3e})")
        w = np.clip(w, 0.0, None)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def total(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class TraceMatrix:
    """Hermitian PSD matrix representing a functional by T -> trace(F T)."""

    entries: np.ndarray

    def __post_init__(self):
        m = _frozen_array(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ConstructionError("trace matrix must be square")
        object.__setattr__(self, "entries", m)


def _check_atoms(mu: Measure, nu: Measure):
    if mu.weights.shape != nu.weights.shape:
        raise ConstructionError("measures live on different atom sets")


def _check_size(a: TraceMatrix, b: TraceMatrix):
    if a.entries.shape != b.entries.shape:
        raise ConstructionError("trace matrices have different sizes")


# ---------------------------------------------------------------------------
# Finite-measure oracle


def measure_parallel_sum(mu: Measure, nu: Measure) -> Measure:
    """Atomwise harmonic mean; zero wherever either measure vanishes."""
    _check_atoms(mu, nu)
    a, b = mu.weights, nu.weights
    s = a + b
    out = np.zeros_like(a)
    mask = s > 0.0
    out[mask] = a[mask] * b[mask] / s[mask]
    return Measure(out)


def measure_lebesgue(mu: Measure, nu: Measure) -> tuple[Measure, Measure]:
    """Classical decomposition on atoms: restrict mu to the support of nu."""
    _check_atoms(mu, nu)
    support = nu.weights > 0.0
    return (Measure(np.where(support, mu.weights, 0.0)),
            Measure(np.where(support, 0.0, mu.weights)))


def measure_infimum(mu: Measure, nu: Measure) -> Measure:
    """Lattice infimum of two finite measures: the atomwise minimum.

    For up to 10 atoms the set-splitting definition
    inf_F [mu(E & F) + nu(E - F)] is brute-forced over every subset F, for
    E the full set and each singleton, as an internal self-check.
    """
    _check_atoms(mu, nu)
    met = np.minimum(mu.weights, nu.weights)
    m = met.size
    if 0 < m <= 10:
        atoms = np.arange(m)
        events = [atoms] + [np.array([i]) for i in atoms]
        for event in events:
            best = np.inf
            for bits in itertools.product((False, True), repeat=event.size):
                inside = event[np.array(bits, dtype=bool)]
                outside = event[~np.array(bits, dtype=bool)]
                best = min(best, mu.weights[inside].sum()
                           + nu.weights[outside].sum())
            expected = met[event].sum()
            if abs(best - expected) > 1e-12 * (1.0 + abs(expected)):
                raise CrossCheckFailedError(
                    "atomwise minimum disagrees with the set-splitting "
                    f"infimum on event {event.tolist()}")
    return Measure(met)


# ---------------------------------------------------------------------------
# PSD-matrix oracle


def _herm(m):
    return 0.5 * (m + m.conj().T)


def _range_proj(m):
    u, s, _ = np.linalg.svd(_herm(m))
    if s.size == 0 or s[0] <= 0.0:
        return np.zeros_like(np.asarray(m, dtype=complex))
    cols = u[:, s > _NULL_RTOL * s[0]]
    return cols @ cols.conj().T


def _psd_root(m):
    lam, vec = np.linalg.eigh(_herm(m))
    return (vec * np.sqrt(np.clip(lam, 0.0, None))) @ vec.conj().T


def _raw_parallel(a, b):
    pin = np.linalg.pinv(_herm(a + b), hermitian=True)
    return _herm(a - a @ pin @ a)


def matrix_parallel_sum(a: TraceMatrix, b: TraceMatrix) -> TraceMatrix:
    """Parallel sum A - A (A+B)^+ A of two PSD matrices.

    Self-checked against the variational characterization
    x^H (A:B) x = min_y [(x-y)^H A (x-y) + y^H B y] on fixed probe vectors,
    using the closed-form minimizer y = (A+B)^+ A x.
    """
    _check_size(a, b)
    am, bm = a.entries, b.entries
    out = _raw_parallel(am, bm)
    pin = np.linalg.pinv(_herm(am + bm), hermitian=True)
    probes = np.random.default_rng(7).normal(size=(4, 2, am.shape[0]))
    scale = 1.0 + float(np.abs(am).max() + np.abs(bm).max())
    for re, im in probes:
        x = re + 1j * im
        y = pin @ (am @ x)
        direct = np.real(np.conj(x) @ out @ x)
        varied = np.real(np.conj(x - y) @ am @ (x - y)
                         + np.conj(y) @ bm @ y)
        if abs(direct - varied) > 1e-9 * scale * float(np.vdot(x, x).real):
            raise CrossCheckFailedError(
                "parallel sum disagrees with its variational form "
                f"({direct:.6e} vs {varied:.6e})")
    return TraceMatrix(out)


def _shorted_closed_form(a, b):
    """Largest PSD minorant of A whose square root lands in range(B)."""
    root = _psd_root(a)
    outside = (np.eye(a.shape[0]) - _range_proj(b)) @ root
    _, sing, vh = np.linalg.svd(outside)
    if sing.size and sing[0] > 0.0:
        null = vh.conj().T[:, sing <= _NULL_RTOL * sing[0]]
    else:
        null = np.eye(a.shape[0], dtype=complex)
    return _herm(root @ (null @ null.conj().T) @ root)


def _shorted_limit(a, b):
    """Doubling limit of A:(nB), accelerated by two-point Richardson."""
    last = None
    for k in range(10, 37):
        n = 2.0 ** k
        s1 = _raw_parallel(a, n * b)
        s2 = _raw_parallel(a, 2.0 * n * b)
        rich = 2.0 * s2 - s1
        if last is not None:
            gap = float(np.max(np.abs(rich - last)))
            if gap < 1e-9 * (1.0 + float(np.abs(a).max())):
                return rich
        last = rich
    return last


def matrix_regular_part(a: TraceMatrix, b: TraceMatrix) -> TraceMatrix:
    """Absolutely continuous part of A with respect to B (PSD matrices).

    Computed by the closed form and always cross-validated against the
    doubling limit of the parallel sums; disagreement raises rather than
    picking a side.
    """
    _check_size(a, b)
    closed = _shorted_closed_form(a.entries, b.entries)
    limit = _shorted_limit(a.entries, b.entries)
    gap = float(np.max(np.abs(closed - limit)))
    if gap > MATRIX_CROSS_TOL * (1.0 + float(np.abs(a.entries).max())):
        raise CrossCheckFailedError(
            f"closed-form regular part deviates from the doubling limit "
            f"by {gap:.3e}")
    return TraceMatrix(closed)


def matrix_singular(a: TraceMatrix, b: TraceMatrix,
                    tol: float = 1e-8) -> bool:
    """Whether the matrix parallel sum vanishes."""
    ps = matrix_parallel_sum(a, b)
    scale = 1.0 + min(float(np.abs(a.entries).max(initial=0.0)),
                      float(np.abs(b.entries).max(initial=0.0)))
    return float(np.abs(ps.entries).max(initial=0.0)) <= tol * scale


def matrix_domination_constant(a: TraceMatrix, b: TraceMatrix) -> float | None:
    """Smallest c with A <= c B, or None when no finite c exists."""
    _check_size(a, b)
    am, bm = a.entries, b.entries
    proj = _range_proj(bm)
    leak = float(np.linalg.norm(am - proj @ am @ proj, 2))
    if leak > 1e-8 * (1.0 + float(np.abs(am).max(initial=0.0))):
        return None
    lam, vec = np.linalg.eigh(_herm(bm))
    keep = lam > _NULL_RTOL * max(float(lam[-1]), 0.0) if lam.size else lam > 0
    if not keep.any():
        return 0.0 if float(np.abs(am).max(initial=0.0)) == 0.0 else None
    white = vec[:, keep] * (1.0 / np.sqrt(lam[keep]))[None, :]
    eigs = np.linalg.eigvalsh(_herm(white.conj().T @ am @ white))
    return float(max(eigs[-1], 0.0))


# ---------------------------------------------------------------------------
# Trace duality with functionals on a full matrix algebra


def _matrix_side(algebra) -> int:
    if algebra.kind != "matrix":
        raise NotMatrixAlgebraError(
            f"trace duality needs a full matrix algebra, got {algebra.kind!r}")
    return int(round(np.sqrt(algebra.dim)))


def functional_to_trace_matrix(f: Functional) -> TraceMatrix:
    """The matrix F with f(T) = trace(F T); entrywise F[q, p] = f(e_pq)."""
    n = _matrix_side(f.algebra)
    return TraceMatrix(f.values.reshape(n, n).T.copy())


def trace_matrix_to_functional(algebra, F: TraceMatrix) -> Functional:
    n = _matrix_side(algebra)
    if F.entries.shape != (n, n):
        raise ConstructionError("trace matrix size does not match the algebra")
    return Functional(algebra, F.entries.T.reshape(n * n).copy())


def trace_dual_roundtrip(f: Functional) -> tuple[TraceMatrix, Functional]:
    """Map a functional to its trace matrix and back; the trip is exact."""
    F = functional_to_trace_matrix(f)
    return F, trace_matrix_to_functional(f.algebra, F)


# ---------------------------------------------------------------------------
# Truncated diagonal trend


def truncated_counterexample_trend(d: int) -> list[tuple[int, float]]:
    """Minimal domination constants for truncated diagonal pairs.

    With weights n^-2 and n^-4 on the first m basis vectors, the regular
    part of the first matrix w.r.t. the second is the matrix itself (full
    mutual support), while the smallest c with F <= c G grows like m^2 --
    the finite shadow of a domination constant blowing up in the limit.
    Returns (m, c_min(m)) for every m from 2 to d.
    """
    if d < 2:
        raise ConstructionError("trend needs a truncation size of at least 2")
    rows = []
    for m in range(2, d + 1):
        n = np.arange(1, m + 1, dtype=float)
        F = TraceMatrix(np.diag(n ** -2.0).astype(complex))
        G = TraceMatrix(np.diag(n ** -4.0).astype(complex))
        regular = matrix_regular_part(F, G)
        drift = float(np.max(np.abs(regular.entries - F.entries)))
        if drift > MATRIX_CROSS_TOL * (1.0 + float(np.abs(F.entries).max())):
            raise CrossCheckFailedError(
                f"regular part of the truncated pair drifted by {drift:.3e}")
        c = matrix_domination_constant(F, G)
        rows.append((m, float(c)))
    return rows
