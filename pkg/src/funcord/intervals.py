"""Extreme points of order intervals and infima of representable functionals.

A functional h inside the interval [lo, hi] is extreme exactly when the
two gap functionals h - lo and hi - h are mutually singular; at lo = 0 the
extreme points are the disjoint parts of hi.  The infimum of two
functionals exists whenever their mutual regular parts are comparable, in
which case it equals the smaller one.  On a full matrix algebra the
comparability condition is also necessary (via trace duality), while on a
commutative algebra the infimum always exists and is computed atomwise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OrderViolationError, ToleranceConflictError
from .functional import Functional, leq, zero_functional
from .lebesgue import DEFAULT_TOL, regular_part
from .parallel import is_singular, parallel_sum

HYSTERESIS = 10.0   # a residual above tol but below 10*tol is "marginal"


def is_extreme_in_interval(h: Functional, lo: Functional,
                           hi: Functional) -> bool:
    """Whether h is an extreme point of the order interval [lo, hi]."""
    if not (leq(lo, h) and leq(h, hi)):
        raise OrderViolationError("h does not lie in the interval [lo, hi]")
    return is_singular(h - lo, hi - h)


@dataclass(frozen=True)
class ExtremeEquivalenceReport:
    """Two independent tests of extremality in [0, f], with residuals.

    ``disjoint_part`` holds when g and f - g are mutually singular;
    ``regular_fixed_point`` holds when the g-regular part of f equals g.
    The two classifications must agree; a residual in the marginal band
    [tol, 10*tol] is treated as tolerance noise rather than disagreement.
    """

    disjoint_part: bool
    regular_fixed_point: bool
    singularity_residual: float
    regular_residual: float
    band: tuple

    @property
    def agree(self) -> bool:
        return self.disjoint_part == self.regular_fixed_point


def extreme_equivalences(g: Functional, f: Functional,
                         tol: float = DEFAULT_TOL) -> ExtremeEquivalenceReport:
    """Evaluate both extremality characterizations of g inside [0, f]."""
    if not leq(g, f):
        raise OrderViolationError("g is not below f")
    scale = 1.0 + max(f.scale, g.scale)
    lo, hi = tol * scale, HYSTERESIS * tol * scale

    gap = parallel_sum(g, f - g).value
    singularity_residual = float(np.max(np.abs(gap.values))) if gap.values.size else 0.0
    reg = regular_part(f, g, tol)
    regular_residual = float(np.max(np.abs(reg.values - g.values))) if g.values.size else 0.0

    def classify(r):
        return "pass" if r <= lo else ("fail" if r >= hi else "marginal")

    c_sing, c_reg = classify(singularity_residual), classify(regular_residual)
    if {c_sing, c_reg} == {"pass", "fail"}:
        raise ToleranceConflictError(
            f"extremality tests disagree beyond the hysteresis band: "
            f"singularity residual {singularity_residual:.3e}, "
            f"regular-part residual {regular_residual:.3e}")

    # A marginal test adopts the decisive verdict of the other one.
    if c_sing == "marginal" and c_reg != "marginal":
        disjoint = c_reg == "pass"
    else:
        disjoint = singularity_residual <= lo
    if c_reg == "marginal" and c_sing != "marginal":
        fixed = c_sing == "pass"
    else:
        fixed = regular_residual <= lo
    return ExtremeEquivalenceReport(disjoint, fixed, singularity_residual,
                                    regular_residual, (lo, hi))


@dataclass(frozen=True)
class InfimumResult:
    """Outcome of the infimum computation.

    status: "exists" (value holds the infimum), "not_exists" (proven absent,
    full matrix algebras only) or "unknown" (the sufficient condition failed
    and no necessity argument applies).
    """

    status: str
    value: Functional | None
    reason: str


def infimum(f: Functional, g: Functional, tol: float = DEFAULT_TOL,
            backend: str | None = None) -> InfimumResult:
    """Greatest lower bound of f and g, when decidable.

    The generic rule compares the two mutual regular parts and returns the
    smaller one when they are comparable.  backend picks the decision
    refinement: "matrix" upgrades incomparability to non-existence (valid on
    full matrix algebras), "commutative" computes the always-existing
    atomwise infimum on function algebras, "generic" gives the bare rule.
    Default: inferred from the algebra kind.
    """
    if backend is None:
        backend = "matrix" if f.algebra.kind == "matrix" else "generic"
    if backend not in ("generic", "matrix", "commutative"):
        raise ValueError(f"unknown backend {backend!r}")

    if backend == "commutative":
        if f.algebra.kind != "functions":
            raise ValueError("commutative backend requires a function algebra")
        from .oracles import Measure, measure_infimum
        mu = Measure(np.real(f.values))
        nu = Measure(np.real(g.values))
        met = measure_infimum(mu, nu)
        return InfimumResult(
            "exists", Functional(f.algebra, met.weights.astype(complex)),
            "atomwise minimum of the representing measures")

    u = regular_part(g, f, tol)   # f-absolutely-continuous part of g
    v = regular_part(f, g, tol)   # g-absolutely-continuous part of f
    u_below = leq(u, v)
    v_below = leq(v, u)
    if u_below and v_below:
        return InfimumResult("exists", u,
                             "mutual regular parts agree within tolerance")
    if u_below:
        return InfimumResult("exists", u, "regular parts comparable; "
                             "the f-regular part of g is the smaller one")
    if v_below:
        return InfimumResult("exists", v, "regular parts comparable; "
                             "the g-regular part of f is the smaller one")
    if backend == "matrix":
        return InfimumResult("not_exists", None,
                             "mutual regular parts are incomparable, which "
                             "rules out the infimum on a full matrix algebra")
    return InfimumResult("unknown", None, "sufficient condition failed")


def extreme_meet(u: Functional, h: Functional, f: Functional,
                 tol: float = DEFAULT_TOL) -> Functional:
    """Infimum of an extreme point u of [0, f] with any h in [0, f].

    Always exists and equals the u-regular part of h.  When h is itself
    extreme, the symmetric computation must agree and is verified.
    """
    zero = zero_functional(f.algebra)
    if not is_extreme_in_interval(u, zero, f):
        raise OrderViolationError("u is not an extreme point of [0, f]")
    if not leq(h, f):
        raise OrderViolationError("h is not below f")
    meet = regular_part(h, u, tol)
    if is_extreme_in_interval(h, zero, f):
        other = regular_part(u, h, tol)
        gap = float(np.max(np.abs(meet.values - other.values)))
        if gap > tol * (1.0 + max(u.scale, h.scale)):
            raise ToleranceConflictError(
                f"symmetric meet computations disagree by {gap:.3e}")
    return meet
