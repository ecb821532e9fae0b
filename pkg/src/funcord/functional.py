"""Positive functionals: order, representability, Hilbert bound, GNS data.

A functional is stored by its values on the algebra basis.  The Gram matrix
``M[i, j] = f(b_j* b_i)`` encodes the quadratic form ``a -> f(a*a)``: writing
``x`` for the coefficient vector of ``a``,

    f(a*a) = x^H @ M.T @ x.

All quadratic-form computations therefore run on the transposed matrix
``N = M.T`` (same spectrum, since ``M`` is Hermitian for positive
functionals).  Getting this transposition right is what makes the GNS
reconstruction, the Hilbert bound and the parallel-sum formulas agree on
complex data; the helper :func:`coefficient_gram` is the single place the
convention lives.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg as la
from .algebra import AlgebraElement, StarAlgebra, _check_same_algebra, _frozen_array
from .errors import NotRepresentableError, VerificationFailedError

GRAM_TOL = 1e-9        # Hermitian/PSD slack, times (1 + gram scale)
RANGE_TOL = 1e-8       # cyclic-bound range residual, times (1 + |values|)
GNS_VERIFY_TOL = 1e-7  # reconstruction residual, times (1 + |values|)
VALUES_TOL = 1e-8      # value-vector closeness, times (1 + scale)


@dataclass(frozen=True)
class Functional:
    """Linear functional given by its values on the algebra basis."""

    algebra: StarAlgebra
    values: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.shape != (self.algebra.dim,):
            raise ValueError(
                f"value vector length {values.shape} does not match "
                f"algebra dimension {self.algebra.dim}")
        object.__setattr__(self, "values", values)

    @property
    def scale(self) -> float:
        """Largest absolute value, used to make tolerances scale-relative."""
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def __call__(self, a: AlgebraElement) -> complex:
        return evaluate(self, a)

    def __add__(self, other: "Functional") -> "Functional":
        _check_same_algebra(self, other)
        return Functional(self.algebra, self.values + other.values)

    def __sub__(self, other: "Functional") -> "Functional":
        _check_same_algebra(self, other)
        return Functional(self.algebra, self.values - other.values)

    def scaled(self, c: float) -> "Functional":
        return Functional(self.algebra, c * self.values)

    def __rmul__(self, c) -> "Functional":
        return self.scaled(float(c))


def zero_functional(algebra: StarAlgebra) -> Functional:
    return Functional(algebra, np.zeros(algebra.dim, dtype=complex))


def evaluate(f: Functional, a: AlgebraElement) -> complex:
    """Linear extension of the basis values: f(a) = sum_i a_i f(b_i)."""
    _check_same_algebra(f, a)
    return complex(np.dot(a.coeffs, f.values))


@dataclass(frozen=True)
class GramMatrix:
    """Matrix of the quadratic form a -> f(a*a) in the algebra basis.

    ``entries[i, j] = f(b_j* b_i)``; Hermitian PSD for positive f.
    """

    entries: np.ndarray
    scale: float


def gram_matrix(f: Functional) -> GramMatrix:
    a = f.algebra
    entries = np.einsum("jp,pil,l->ij", a.involution, a.structure, f.values)
    scale = float(np.max(np.abs(entries))) if entries.size else 0.0
    return GramMatrix(entries, scale)


def coefficient_gram(f: Functional) -> np.ndarray:
    """N with f(a*a) = x^H N x for coefficient vectors x (N = gram.T)."""
    return gram_matrix(f).entries.T


def square_value(f: Functional, a: AlgebraElement) -> float:
    """f(a*a), evaluated through the Gram form."""
    x = a.coeffs
    return float(np.real(np.conj(x) @ coefficient_gram(f) @ x))


# ---------------------------------------------------------------------------
# Positivity and order


@dataclass(frozen=True)
class PositivityResult:
    positive: bool
    witness: AlgebraElement | None
    min_eigenvalue: float
    hermitian_defect: float

    def __bool__(self):
        return self.positive


def is_positive(f: Functional) -> PositivityResult:
    """Whether the Gram matrix is Hermitian PSD within tolerance.

    On failure the witness is an element ``a`` with f(a*a) < 0 (or with a
    non-real square value when Hermiticity itself fails).
    """
    gram = gram_matrix(f)
    m = gram.entries
    tol = GRAM_TOL * (1.0 + gram.scale)
    defect = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    n = m.T
    lam, vec = la.psd_eig(n)
    min_eig = float(lam[0]) if lam.size else 0.0
    positive = defect <= tol and min_eig >= -tol
    witness = None
    if min_eig < -tol:
        witness = f.algebra.element(vec[:, 0])
    elif defect > tol:
        skew = (n - n.conj().T) / 2j
        slam, svec = np.linalg.eigh(la.hermitize(skew))
        pick = int(np.argmax(np.abs(slam)))
        witness = f.algebra.element(svec[:, pick])
    return PositivityResult(positive, witness, min_eig, defect)


def leq(f: Functional, g: Functional) -> bool:
    """Order comparison f <= g, i.e. g - f has a PSD Gram matrix."""
    _check_same_algebra(f, g)
    return bool(is_positive(g - f))


def values_close(f: Functional, g: Functional, tol: float = VALUES_TOL) -> bool:
    """Equality test on the full value vector (max-norm, scale-relative)."""
    _check_same_algebra(f, g)
    gap = float(np.max(np.abs(f.values - g.values))) if f.values.size else 0.0
    return gap <= tol * (1.0 + max(f.scale, g.scale))


# ---------------------------------------------------------------------------
# Representability


@dataclass(frozen=True)
class RepresentabilityReport:
    """Outcome of the two representability conditions plus positivity.

    ``failed_condition`` is one of "positivity", "cyclic_bound",
    "quotient_action" or None.  The cyclic bound demands that the value
    vector be reachable from the Gram range (else no finite constant M has
    |f(a)|^2 <= M f(a*a)); the quotient action demands that left
    multiplication by each basis element preserve the null space of the
    Gram form, so that the GNS representation is well defined.
    """

    representable: bool
    failed_condition: str | None
    witness: AlgebraElement | None
    hilbert_bound: float | None

    def __bool__(self):
        return self.representable

    def to_json(self) -> dict:
        return {
            "representable": self.representable,
            "failed_condition": self.failed_condition,
            "hilbert_bound": self.hilbert_bound,
        }


def _gram_eig(f: Functional):
    n = coefficient_gram(f)
    lam, vec = la.psd_eig(n)
    keep = la.rank_keep(lam)
    return n, lam, vec, keep


def is_representable(f: Functional) -> RepresentabilityReport:
    pos = is_positive(f)
    if not pos.positive:
        return RepresentabilityReport(False, "positivity", pos.witness, None)

    n, lam, vec, keep = _gram_eig(f)
    vk, lk = vec[:, keep], lam[keep]
    kernel = vec[:, ~keep]
    w = np.conj(f.values)

    coords = vk.conj().T @ w
    residual = float(np.linalg.norm(w - vk @ coords))
    if residual > RANGE_TOL * (1.0 + float(np.linalg.norm(w))):
        overlaps = np.abs(kernel.conj().T @ w)
        pick = int(np.argmax(overlaps)) if overlaps.size else 0
        witness = f.algebra.element(kernel[:, pick]) if kernel.size else None
        return RepresentabilityReport(False, "cyclic_bound", witness, None)
    bound = float(np.sum(np.abs(coords) ** 2 / lk)) if lk.size else 0.0

    if kernel.size:
        scale = gram_matrix(f).scale
        qtol = GRAM_TOL * (1.0 + scale)
        left = f.algebra.left_mult_tensor()
        for i in range(f.algebra.dim):
            moved = left[i] @ kernel
            quad = np.real(np.einsum("kc,kl,lc->c", np.conj(moved), n, moved))
            norms = np.real(np.einsum("kc,kc->c", np.conj(moved), moved))
            bad = quad > qtol * (1.0 + norms)
            if bad.any():
                witness = f.algebra.element(kernel[:, int(np.argmax(quad))])
                return RepresentabilityReport(
                    False, "quotient_action", witness, bound)

    return RepresentabilityReport(True, None, None, bound)


def hilbert_bound(f: Functional) -> float:
    """Smallest M with |f(a)|^2 <= M f(a*a); equals |cyclic vector|^2.

    Raises NotRepresentableError when no finite M exists (the value vector
    sticks out of the Gram range) or when f is not positive.
    """
    pos = is_positive(f)
    if not pos.positive:
        raise NotRepresentableError(
            "functional is not positive", "positivity")
    n, lam, vec, keep = _gram_eig(f)
    vk, lk = vec[:, keep], lam[keep]
    w = np.conj(f.values)
    coords = vk.conj().T @ w
    residual = float(np.linalg.norm(w - vk @ coords))
    if residual > RANGE_TOL * (1.0 + float(np.linalg.norm(w))):
        raise NotRepresentableError(
            "no finite Hilbert bound: value vector escapes the Gram range "
            f"(residual {residual:.3e})", "cyclic_bound")
    return float(np.sum(np.abs(coords) ** 2 / lk)) if lk.size else 0.0


# ---------------------------------------------------------------------------
# GNS construction


@dataclass(frozen=True)
class GnsTriple:
    """Finite-dimensional GNS data of a representable functional.

    Attributes:
        space_dim: rank r of the Gram form.
        rep: array (dim, r, r); rep[i] is the representation of ``b_i``.
        cyclic: the cyclic vector in the r coordinates; f(a) = <rep(a) z, z>.
        quotient: array (r, dim) sending coefficient vectors to GNS
            coordinates.  The standard inner product on the r coordinates
            realizes <[a], [b]> = f(b*a).
    """

    space_dim: int
    rep: np.ndarray
    cyclic: np.ndarray
    quotient: np.ndarray

    @property
    def hilbert_bound(self) -> float:
        return float(np.real(np.vdot(self.cyclic, self.cyclic)))

    def represent(self, coeffs: np.ndarray) -> np.ndarray:
        """Matrix of the element with the given coefficient vector."""
        return np.tensordot(np.asarray(coeffs, dtype=complex),
                            self.rep, axes=(0, 0))


def gns_triple(f: Functional) -> GnsTriple:
    """Build and verify the GNS triple of a representable functional.

    The Gram form is orthonormalized by eigendecomposition; eigenpairs below
    the relative rank cut span the null space and are quotiented away.  The
    cyclic vector solves the Riesz problem <[a], z> = f(a), and the values
    f(b_i) = <rep[i] z, z> are re-checked before returning.
    """
    report = is_representable(f)
    if not report.representable:
        raise NotRepresentableError(
            f"functional is not representable: {report.failed_condition}",
            report.failed_condition)

    n, lam, vec, keep = _gram_eig(f)
    vk, lk = vec[:, keep], lam[keep]
    r = int(keep.sum())
    root = np.sqrt(lk)
    quotient = root[:, None] * vk.conj().T          # (r, dim)
    back = vk * (1.0 / root)[None, :]               # right inverse, (dim, r)
    left = f.algebra.left_mult_tensor()
    rep = np.einsum("rd,idk,ks->irs", quotient, left, back)
    cyclic = (vk.conj().T @ np.conj(f.values)) / root if r else np.zeros(0, complex)

    triple = GnsTriple(r, rep, cyclic, quotient)
    recon = np.einsum("k,ikl,l->i", np.conj(cyclic), rep, cyclic)
    residual = float(np.max(np.abs(f.values - recon))) if f.values.size else 0.0
    if residual > GNS_VERIFY_TOL * (1.0 + f.scale):
        raise VerificationFailedError(
            f"GNS reconstruction residual {residual:.3e} exceeds tolerance")
    return triple
