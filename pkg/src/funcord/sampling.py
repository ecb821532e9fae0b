"""Random representable functionals for randomized suites and tests.

Sampling dispatches on the constructor kind: weight vectors on function
algebras, PSD trace matrices on matrix algebras, componentwise recursion on
direct sums.  Rank-deficient samples are drawn regularly so the degenerate
code paths (Gram kernels, range checks) stay exercised.
"""
from __future__ import annotations

import numpy as np

from .algebra import StarAlgebra
from .errors import ConstructionError
from .functional import Functional


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    """Random Hermitian PSD matrix with the given rank (default: full)."""
    r = n if rank is None else rank
    if r == 0:
        return np.zeros((n, n), dtype=complex)
    x = rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r))
    return x @ x.conj().T / r


def random_element(algebra: StarAlgebra, rng: np.random.Generator):
    coeffs = rng.normal(size=algebra.dim) + 1j * rng.normal(size=algebra.dim)
    return algebra.element(coeffs)


def _matrix_values(F: np.ndarray) -> np.ndarray:
    n = F.shape[0]
    return F.T.reshape(n * n).copy()


def random_functional(algebra: StarAlgebra, rng: np.random.Generator,
                      full_rank: bool = False) -> Functional:
    """Random representable functional on one of the stock algebras."""
    kind = algebra.kind
    if kind == "functions":
        weights = rng.uniform(0.2, 2.0, size=algebra.dim)
        if not full_rank and rng.random() < 0.3:
            weights[rng.random(size=algebra.dim) < 0.4] = 0.0
        return Functional(algebra, weights.astype(complex))
    if kind == "matrix":
        n = int(round(np.sqrt(algebra.dim)))
        rank = n
        if not full_rank and rng.random() < 0.3:
            rank = int(rng.integers(1, n + 1))
        return Functional(algebra, _matrix_values(random_psd(rng, n, rank)))
    if kind == "direct_sum":
        a, b = algebra.summands
        fa = random_functional(a, rng, full_rank)
        fb = random_functional(b, rng, full_rank)
        return Functional(algebra, np.concatenate([fa.values, fb.values]))
    if kind == "zero_product":
        return Functional(algebra, np.zeros(algebra.dim, dtype=complex))
    raise ConstructionError(f"no sampler for algebra kind {kind!r}")


def random_singular_pair(algebra: StarAlgebra,
                         rng: np.random.Generator) -> tuple[Functional, Functional]:
    """Two mutually singular representable functionals (disjoint supports
    on atoms, orthogonal ranges on matrices)."""
    kind = algebra.kind
    if kind == "functions":
        m = algebra.dim
        split = rng.permutation(m)
        cut = int(rng.integers(1, m)) if m > 1 else 1
        wf = np.zeros(m)
        wg = np.zeros(m)
        wf[split[:cut]] = rng.uniform(0.2, 2.0, size=cut)
        wg[split[cut:]] = rng.uniform(0.2, 2.0, size=m - cut)
        return (Functional(algebra, wf.astype(complex)),
                Functional(algebra, wg.astype(complex)))
    if kind == "matrix":
        n = int(round(np.sqrt(algebra.dim)))
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        q, _ = np.linalg.qr(x)
        cut = int(rng.integers(1, n)) if n > 1 else 1
        qa, qb = q[:, :cut], q[:, cut:]
        F = qa @ np.diag(rng.uniform(0.2, 2.0, size=cut)) @ qa.conj().T
        G = qb @ np.diag(rng.uniform(0.2, 2.0, size=n - cut)) @ qb.conj().T
        return (Functional(algebra, _matrix_values(F)),
                Functional(algebra, _matrix_values(G)))
    if kind == "direct_sum":
        a, b = algebra.summands
        fa, ga = random_singular_pair(a, rng)
        fb, gb = random_singular_pair(b, rng)
        return (Functional(algebra, np.concatenate([fa.values, fb.values])),
                Functional(algebra, np.concatenate([ga.values, gb.values])))
    raise ConstructionError(f"no singular-pair sampler for kind {kind!r}")
