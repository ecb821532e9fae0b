"""Finite-dimensional complex *-algebras given by structure constants.

An algebra of dimension ``d`` is stored as a rank-3 tensor ``c`` with
``b_i b_j = sum_k c[i, j, k] b_k`` over a fixed basis, together with an
involution matrix ``s`` with ``b_i* = sum_k s[i, k] b_k``.  Elements are
coefficient vectors over that basis.  Everything is immutable after
construction, so instances can be shared freely between threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraMismatchError, ConstructionError

# Absolute validation slack is this times (1 + largest |structure constant|).
# The built-in constructors produce exact integer tensors; the tolerance only
# guards user-supplied structure data.
VALIDATION_TOL = 1e-9


def _frozen_array(a, dtype=complex) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class StarAlgebra:
    """A finite-dimensional *-algebra presented by structure constants.

    Attributes:
        dim: number of basis elements.
        structure: complex tensor of shape (dim, dim, dim); entry [i, j, k]
            is the coefficient of ``b_k`` in the product ``b_i b_j``.
        involution: complex matrix of shape (dim, dim); row i holds the
            coefficients of ``b_i*``.
        unit: coefficients of the multiplicative identity, or None.
        label: human-readable identifier used in JSON files.
        kind: constructor tag ("matrix", "functions", "direct_sum",
            "zero_product" or "custom"), used for backend dispatch.
        summands: component algebras when kind == "direct_sum".
    """

    dim: int
    structure: np.ndarray
    involution: np.ndarray
    unit: np.ndarray | None = None
    label: str = ""
    kind: str = "custom"
    summands: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ConstructionError("algebra dimension must be positive")
        structure = _frozen_array(self.structure)
        involution = _frozen_array(self.involution)
        if structure.shape != (self.dim,) * 3:
            raise ConstructionError(
                f"structure tensor has shape {structure.shape}, "
                f"expected {(self.dim,) * 3}")
        if involution.shape != (self.dim, self.dim):
            raise ConstructionError(
                f"involution matrix has shape {involution.shape}, "
                f"expected {(self.dim, self.dim)}")
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "involution", involution)
        if self.unit is not None:
            unit = _frozen_array(self.unit)
            if unit.shape != (self.dim,):
                raise ConstructionError("unit vector length mismatch")
            object.__setattr__(self, "unit", unit)

    def left_mult_tensor(self) -> np.ndarray:
        """Tensor L with L[i] the matrix of left multiplication by ``b_i``.

        Acting on coefficient vectors: coeffs(b_i x) = L[i] @ coeffs(x).
        """
        return self.structure.transpose(0, 2, 1)

    def square_coefficients(self) -> np.ndarray:
        """Matrix Z with row i the coefficient vector of ``b_i* b_i``."""
        return np.einsum("ip,pil->il", self.involution, self.structure)

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, np.asarray(coeffs, dtype=complex))

    def basis_element(self, i: int) -> "AlgebraElement":
        coeffs = np.zeros(self.dim, dtype=complex)
        coeffs[i] = 1.0
        return AlgebraElement(self, coeffs)

    def zero_element(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.dim, dtype=complex))

    def __repr__(self):
        return f"StarAlgebra({self.label or self.kind}, dim={self.dim})"


@dataclass(frozen=True)
class AlgebraElement:
    """An algebra element as a coefficient vector over the basis."""

    algebra: StarAlgebra
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen_array(self.coeffs)
        if coeffs.shape != (self.algebra.dim,):
            raise ConstructionError(
                f"coefficient vector length {coeffs.shape} does not match "
                f"algebra dimension {self.algebra.dim}")
        object.__setattr__(self, "coeffs", coeffs)

    def star(self) -> "AlgebraElement":
        return involute(self)

    def __add__(self, other):
        _check_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.algebra, self.coeffs * complex(other))

    def __rmul__(self, other):
        return AlgebraElement(self.algebra, complex(other) * self.coeffs)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.coeffs)


def _check_same_algebra(x, y):
    if x.algebra is not y.algebra:
        raise AlgebraMismatchError(
            f"operands live on different algebras: "
            f"{x.algebra!r} vs {y.algebra!r}")


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product of two elements via structure-tensor contraction."""
    _check_same_algebra(x, y)
    z = np.einsum("i,j,ijl->l", x.coeffs, y.coeffs, x.algebra.structure)
    return AlgebraElement(x.algebra, z)


def involute(x: AlgebraElement) -> AlgebraElement:
    """Adjoint x* (conjugate-linear in the coefficients)."""
    s = x.algebra.involution
    return AlgebraElement(x.algebra, s.T @ np.conj(x.coeffs))


# ---------------------------------------------------------------------------
# Structure validation


@dataclass(frozen=True)
class StructureViolation:
    """One violated algebra axiom with its worst offender."""

    kind: str            # "associativity" | "involutive" | "antimultiplicative" | "unit"
    indices: tuple       # worst-offending basis index tuple
    residual: float


@dataclass(frozen=True)
class StructureReport:
    violations: tuple
    tolerance: float

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def _worst(residual_tensor) -> tuple:
    flat = int(np.argmax(residual_tensor))
    return tuple(int(t) for t in np.unravel_index(flat, residual_tensor.shape))


def validate_structure(algebra: StarAlgebra) -> StructureReport:
    """Check the *-algebra axioms, reporting every violated invariant.

    Returns a report listing, for each failed axiom, the worst-offending
    basis index tuple and the residual magnitude.  An empty report means
    the structure data defines a genuine *-algebra (with unit, if given).
    """
    c = algebra.structure
    s = algebra.involution
    tol = VALIDATION_TOL * (1.0 + float(np.max(np.abs(c))))
    violations = []

    # (b_i b_j) b_k == b_i (b_j b_k), coefficient-wise over the last axis.
    lhs = np.einsum("ijm,mkl->ijkl", c, c)
    rhs = np.einsum("jkm,iml->ijkl", c, c)
    assoc = np.abs(lhs - rhs)
    if assoc.size and assoc.max() > tol:
        worst = _worst(assoc.max(axis=-1))
        violations.append(StructureViolation(
            "associativity", worst, float(assoc.max())))

    # Applying the involution twice is the identity on the basis.
    invol2 = np.abs(s @ np.conj(s) - np.eye(algebra.dim))
    if invol2.max() > tol:
        violations.append(StructureViolation(
            "involutive", _worst(invol2), float(invol2.max())))

    # (b_i b_j)* == b_j* b_i*.
    star_of_product = np.einsum("ijk,kl->ijl", np.conj(c), s)
    product_of_stars = np.einsum("jp,iq,pql->ijl", s, s, c)
    anti = np.abs(star_of_product - product_of_stars)
    if anti.max() > tol:
        worst = _worst(anti.max(axis=-1))
        violations.append(StructureViolation(
            "antimultiplicative", worst, float(anti.max())))

    if algebra.unit is not None:
        u = algebra.unit
        eye = np.eye(algebra.dim)
        left = np.abs(np.einsum("p,pil->il", u, c) - eye)
        right = np.abs(np.einsum("p,ipl->il", u, c) - eye)
        unit_res = np.maximum(left, right)
        if unit_res.max() > tol:
            violations.append(StructureViolation(
                "unit", _worst(unit_res), float(unit_res.max())))

    return StructureReport(tuple(violations), tol)


# ---------------------------------------------------------------------------
# Constructors


def matrix_algebra(n: int) -> StarAlgebra:
    """Full matrix algebra M_n in the matrix-unit basis e_{pq}.

    Basis index is row-major: ``i = p*n + q``.  Products follow
    ``e_{pq} e_{rs} = delta_{qr} e_{ps}`` and the involution swaps indices.
    """
    if n < 1:
        raise ConstructionError("matrix algebra needs n >= 1")
    dim = n * n
    c = np.zeros((dim, dim, dim), dtype=complex)
    s = np.zeros((dim, dim), dtype=complex)
    for p in range(n):
        for q in range(n):
            i = p * n + q
            s[i, q * n + p] = 1.0
            for r in range(n):
                c[i, q * n + r, p * n + r] = 1.0
    unit = np.zeros(dim, dtype=complex)
    unit[[p * n + p for p in range(n)]] = 1.0
    return StarAlgebra(dim, c, s, unit, label=f"matrix({n})", kind="matrix")


def function_algebra(m: int) -> StarAlgebra:
    """Functions on an m-point set, basis of point indicators."""
    if m < 1:
        raise ConstructionError("function algebra needs m >= 1")
    c = np.zeros((m, m, m), dtype=complex)
    idx = np.arange(m)
    c[idx, idx, idx] = 1.0
    return StarAlgebra(m, c, np.eye(m, dtype=complex),
                       np.ones(m, dtype=complex),
                       label=f"functions({m})", kind="functions")


def zero_product_algebra(n: int) -> StarAlgebra:
    """All products zero, identity involution.  Has no unit.

    The smallest home of positive-but-not-representable functionals: every
    square vanishes, so positivity is vacuous while the cyclic bound fails
    for any nonzero functional.
    """
    if n < 1:
        raise ConstructionError("zero-product algebra needs n >= 1")
    c = np.zeros((n, n, n), dtype=complex)
    return StarAlgebra(n, c, np.eye(n, dtype=complex), None,
                       label=f"zero_product({n})", kind="zero_product")


def direct_sum(a: StarAlgebra, b: StarAlgebra) -> StarAlgebra:
    """Direct sum with block-diagonal products and involution.

    The sum carries a unit exactly when both summands do.
    """
    dim = a.dim + b.dim
    c = np.zeros((dim, dim, dim), dtype=complex)
    c[:a.dim, :a.dim, :a.dim] = a.structure
    c[a.dim:, a.dim:, a.dim:] = b.structure
    s = np.zeros((dim, dim), dtype=complex)
    s[:a.dim, :a.dim] = a.involution
    s[a.dim:, a.dim:] = b.involution
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = np.concatenate([a.unit, b.unit])
    return StarAlgebra(dim, c, s, unit,
                       label=f"direct_sum({a.label},{b.label})",
                       kind="direct_sum", summands=(a, b))


def construct_algebra(kind: str, **params) -> StarAlgebra:
    """Build one of the stock algebras and validate it.

    Kinds: ``matrix`` (param n), ``functions`` (param m or n),
    ``direct_sum`` (params a, b), ``zero_product`` (param n).
    """
    try:
        if kind == "matrix":
            algebra = matrix_algebra(int(params["n"]))
        elif kind == "functions":
            size = params.get("m", params.get("n"))
            if size is None:
                raise KeyError("m")
            algebra = function_algebra(int(size))
        elif kind == "zero_product":
            algebra = zero_product_algebra(int(params["n"]))
        elif kind == "direct_sum":
            algebra = direct_sum(params["a"], params["b"])
        else:
            raise ConstructionError(f"unknown algebra kind {kind!r}")
    except KeyError as exc:
        raise ConstructionError(
            f"missing parameter {exc} for algebra kind {kind!r}") from None
    report = validate_structure(algebra)
    if not report.valid:
        raise ConstructionError(
            f"constructed algebra failed validation: {report.violations}")
    return algebra
