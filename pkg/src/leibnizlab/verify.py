"""Checkers for the product-rule and chain-rule inequalities and their kin.

Every checker returns a VerificationReport with the full instance echoed, so
a failing report is replayable from its JSON serialization alone.  Inequality
checks default to an absolute slack tolerance of 1e-9; exact linear-algebra
identities use 1e-10.

The replication map turns a rational-weight measure (r_1/m, ..., r_n/m) into
the uniform measure on m points by repeating the i-th coordinate r_i times;
weighted norms and centered products are preserved exactly, which is how
statements proved for uniform measures extend to rational (and by continuity
to arbitrary) measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    IDENTITY_TOL,
    INEQUALITY_TOL,
    DimensionMismatchError,
    HolderTriple,
    ProbVector,
    as_vector,
    center,
    check_exponent,
    expectation,
    lp_norm,
    sup_norm,
    variance,
)
from .operators import PiecewiseLinearFn, theta_matrix
from .reports import VerificationReport

#: Largest admissible common denominator for replication.
REPLICATION_CAP = 100_000

#: Smallest |f_i| accepted as invertible.
INVERTIBILITY_FLOOR = 1e-6


def _exp_tag(p: float):
    return "inf" if math.isinf(p) else float(p)


def _echo_vec(x) -> list[float]:
    return [float(v) for v in np.asarray(x, dtype=float)]


@dataclass(frozen=True)
class RationalProbVector:
    """A probability measure with weights r_i / m for positive integers r_i."""

    numerators: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        nums = tuple(int(r) for r in self.numerators)
        m = int(self.denominator)
        if len(nums) < 1:
            raise ValueError("need at least one atom")
        if any(r < 1 for r in nums):
            raise ValueError("numerators must be positive integers")
        if sum(nums) != m:
            raise ValueError(f"numerators sum to {sum(nums)}, expected denominator {m}")
        if m > REPLICATION_CAP:
            raise ValueError(f"denominator {m} exceeds replication cap {REPLICATION_CAP}")
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominator", m)

    @property
    def n(self) -> int:
        return len(self.numerators)

    def weights(self) -> np.ndarray:
        return np.asarray(self.numerators, dtype=float) / self.denominator

    def to_prob_vector(self) -> ProbVector:
        return ProbVector(self.weights())


def check_decomposition(f, g, tol: float = IDENTITY_TOL) -> VerificationReport:
    """fg - E(fg) = -Theta_f (g - Eg) - Theta_g (f - Ef) under the uniform measure.

    Also checks the uncentered form -Theta_f g - Theta_g f; reports the larger
    of the two maximal deviations.
    """
    fv = as_vector(f)
    gv = as_vector(g)
    if fv.size != gv.size:
        raise DimensionMismatchError(f"lengths differ: {fv.size} vs {gv.size}")
    n = fv.size
    uniform = np.full(n, 1.0 / n)
    lhs = fv * gv - float(np.dot(uniform, fv * gv))
    Tf, Tg = theta_matrix(fv), theta_matrix(gv)
    centered = -Tf @ (gv - float(np.dot(uniform, gv))) - Tg @ (fv - float(np.dot(uniform, fv)))
    plain = -Tf @ gv - Tg @ fv
    deviation = max(
        float(np.max(np.abs(lhs - centered), initial=0.0)),
        float(np.max(np.abs(lhs - plain), initial=0.0)),
    )
    return VerificationReport.from_values(
        "centered_product_decomposition", deviation, 0.0, tol,
        {"f": _echo_vec(fv), "g": _echo_vec(gv)},
    )


def check_holder_theta(x, y, triple: HolderTriple, tol: float = INEQUALITY_TOL) -> VerificationReport:
    """||Theta_x (y - Ey)||_r <= ||x||_p ||y - Ey||_q under the uniform measure."""
    xv = as_vector(x)
    yv = as_vector(y)
    if xv.size != yv.size:
        raise DimensionMismatchError(f"lengths differ: {xv.size} vs {yv.size}")
    mu = ProbVector.uniform(xv.size)
    yc = center(yv, mu)
    lhs = lp_norm(theta_matrix(xv) @ yc, mu, triple.r)
    rhs = lp_norm(xv, mu, triple.p) * lp_norm(yc, mu, triple.q)
    instance = {
        "x": _echo_vec(xv),
        "y": _echo_vec(yv),
        "exponents": {"r": _exp_tag(triple.r), "p": _exp_tag(triple.p), "q": _exp_tag(triple.q)},
    }
    return VerificationReport.from_values("holder_theta_bound", lhs, rhs, tol, instance)


def check_leibniz(
    mu: ProbVector,
    f,
    g,
    t1: HolderTriple,
    t2: HolderTriple,
    tol: float = INEQUALITY_TOL,
) -> VerificationReport:
    """||fg - E(fg)||_r <= ||f||_p1 ||g - Eg||_q1 + ||g||_p2 ||f - Ef||_q2."""
    if t1.r != t2.r:
        raise ValueError(f"the two triples must share r, got {t1.r} and {t2.r}")
    fv = as_vector(f)
    gv = as_vector(g)
    if fv.size != gv.size:
        raise DimensionMismatchError(f"lengths differ: {fv.size} vs {gv.size}")
    lhs = lp_norm(fv * gv - expectation(fv * gv, mu), mu, t1.r)
    term_f = lp_norm(fv, mu, t1.p) * lp_norm(center(gv, mu), mu, t1.q)
    term_g = lp_norm(gv, mu, t2.p) * lp_norm(center(fv, mu), mu, t2.q)
    instance = {
        "mu": mu.to_list(),
        "f": _echo_vec(fv),
        "g": _echo_vec(gv),
        "exponents": {
            "r": _exp_tag(t1.r),
            "p1": _exp_tag(t1.p), "q1": _exp_tag(t1.q),
            "p2": _exp_tag(t2.p), "q2": _exp_tag(t2.q),
        },
        "rhs_terms": [term_f, term_g],
    }
    return VerificationReport.from_values("leibniz_inequality", lhs, term_f + term_g, tol, instance)


def check_chain_rule(
    mu: ProbVector,
    f,
    phi: PiecewiseLinearFn,
    p: float,
    tol: float = INEQUALITY_TOL,
) -> VerificationReport:
    """||phi(f) - E phi(f)||_p <= Lip(phi) ||f - Ef||_p.

    Monotonicity of phi is recorded in the instance but not required; probing
    non-monotone phi is exactly how counterexamples are found.
    """
    fv = as_vector(f)
    p = check_exponent(p)
    values = np.asarray(phi(fv), dtype=float)
    lhs = lp_norm(center(values, mu), mu, p)
    rhs = phi.lipschitz * lp_norm(center(fv, mu), mu, p)
    instance = {
        "mu": mu.to_list(),
        "f": _echo_vec(fv),
        "phi": phi.to_dict(),
        "exponents": {"p": _exp_tag(p)},
        "lipschitz": phi.lipschitz,
        "monotone": phi.is_monotone,
    }
    return VerificationReport.from_values("chain_rule", lhs, rhs, tol, instance)


def check_strong_leibniz(mu: ProbVector, f, p: float, tol: float = INEQUALITY_TOL) -> VerificationReport:
    """||f^-1 - E f^-1||_p <= ||f^-1||_inf^2 ||f - Ef||_p for invertible f."""
    fv = as_vector(f)
    p = check_exponent(p)
    if float(np.min(np.abs(fv))) < INVERTIBILITY_FLOOR:
        raise ValueError(f"f is not invertible: some |f_i| < {INVERTIBILITY_FLOOR}")
    inv = 1.0 / fv
    lhs = lp_norm(center(inv, mu), mu, p)
    rhs = sup_norm(inv) ** 2 * lp_norm(center(fv, mu), mu, p)
    instance = {"mu": mu.to_list(), "f": _echo_vec(fv), "exponents": {"p": _exp_tag(p)}}
    return VerificationReport.from_values("strong_leibniz", lhs, rhs, tol, instance)


def check_markov_variance(
    mu: ProbVector,
    f,
    phi: PiecewiseLinearFn,
    tol: float = INEQUALITY_TOL,
) -> VerificationReport:
    """Var(phi(f)) <= Lip(phi)^2 Var(f); holds for every Lipschitz phi."""
    fv = as_vector(f)
    values = np.asarray(phi(fv), dtype=float)
    lhs = variance(values, mu)
    rhs = phi.lipschitz**2 * variance(fv, mu)
    instance = {"mu": mu.to_list(), "f": _echo_vec(fv), "phi": phi.to_dict(),
                "lipschitz": phi.lipschitz, "monotone": phi.is_monotone}
    return VerificationReport.from_values("markov_variance", lhs, rhs, tol, instance)


def check_square_bound(mu: ProbVector, f, p: float, tol: float = INEQUALITY_TOL) -> VerificationReport:
    """||f^2 - E f^2||_p <= 2 ||f||_inf ||f - Ef||_p."""
    fv = as_vector(f)
    p = check_exponent(p)
    sq = fv * fv
    lhs = lp_norm(center(sq, mu), mu, p)
    rhs = 2.0 * sup_norm(fv) * lp_norm(center(fv, mu), mu, p)
    instance = {"mu": mu.to_list(), "f": _echo_vec(fv), "exponents": {"p": _exp_tag(p)}}
    return VerificationReport.from_values("square_function_bound", lhs, rhs, tol, instance)


def replicate(x, mu: RationalProbVector) -> np.ndarray:
    """Repeat x_i exactly r_i times, mapping (x, mu) to length-m uniform data.

    Preserves weighted norms and centered products exactly: the i-th weight
    r_i/m contributes the same mass as r_i uniform atoms of mass 1/m.
    """
    xv = as_vector(x)
    if xv.size != mu.n:
        raise DimensionMismatchError(f"vector has {xv.size} entries, measure has {mu.n} atoms")
    return np.repeat(xv, mu.numerators)


def rationalize(mu: ProbVector, max_denominator: int) -> RationalProbVector:
    """Approximate mu by a rational measure with common denominator <= max_denominator.

    Exactly representable measures are returned exactly.  Otherwise the
    weights are apportioned by the largest-remainder method at the full
    denominator, which is deterministic and keeps every per-atom error below
    1/max_denominator (ties broken by atom index).
    """
    m_cap = int(max_denominator)
    if m_cap < mu.n:
        raise ValueError(f"max_denominator {m_cap} cannot carry {mu.n} positive atoms")
    if m_cap > REPLICATION_CAP:
        raise ValueError(f"max_denominator {m_cap} exceeds replication cap {REPLICATION_CAP}")

    fracs = [Fraction(float(w)).limit_denominator(m_cap) for w in mu.weights]
    if sum(fracs) == 1:
        m = math.lcm(*(fr.denominator for fr in fracs))
        if m <= m_cap and all(fr * m >= 1 for fr in fracs):
            return RationalProbVector(tuple(int(fr * m) for fr in fracs), m)

    scaled = mu.weights * m_cap
    base = np.floor(scaled).astype(int)
    remainders = scaled - base
    missing = m_cap - int(base.sum())
    order = np.lexsort((np.arange(mu.n), -remainders))
    for i in order[:missing]:
        base[i] += 1
    # every atom must keep positive mass
    for i in range(mu.n):
        if base[i] == 0:
            donor = int(np.argmax(base))
            base[donor] -= 1
            base[i] += 1
    return RationalProbVector(tuple(int(r) for r in base), m_cap)
