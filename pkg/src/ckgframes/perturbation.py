"""Perturbation analysis: admissibility, predicted bounds, and sampled checks.

Given a frame family Lam with optimal bounds (A, B), a perturbed family Gam
is again a frame for the same reference operator whenever the pointwise
condition

    int |<(Lam* Lam - Gam* Gam) f, g>| dmu
        <= l1 * int |<Lam* Lam f, g>| dmu
         + l2 * int |<Gam* Gam f, g>| dmu
         + gamma * ||K* f||^2

holds for all f, g with max(l2, gamma/A + l1) < 1, and the perturbed bounds
bracket ((1-l1)A - gamma)/(1+l2) and ((1+l1)B + gamma ||K||^2)/(1-l2).

The universally quantified condition is never proved here: it is sampled on
seeded random unit pairs plus adversarial eigenvector pairs.  A positive
slack disproves the condition; a nonpositive slack is evidence, not proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InadmissibleParams, InvalidDelta, NotAFrame
from .frames import FrameBounds, OperatorFamily, check_synthesis_range, frame_operator, optimal_bounds
from .linalg import DEFAULT_TOL, TolerancePolicy, as_matrix, operator_norm, pseudo_inverse

__all__ = [
    "PerturbationParams",
    "PerturbationReport",
    "predicted_bounds",
    "sample_condition",
    "verify_perturbation",
    "scalar_perturbation_params",
    "project_out_range",
]

# Sampled slack at or below this (scaled) level counts as zero: the exact
# equality cases land at accumulated roundoff, orders below any real violation.
SLACK_ROUNDOFF = 1e-12


@dataclass(frozen=True)
class PerturbationParams:
    """Nonnegative perturbation constants (l1, l2, gamma)."""

    lambda1: float
    lambda2: float
    gamma: float

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "gamma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise InadmissibleParams(f"{name} must be finite and >= 0, got {value!r}")

    def admissible(self, lower: float) -> bool:
        """True iff ``max(l2, gamma/A + l1) < 1`` for the given lower bound A."""
        if not lower > 0.0:
            raise InadmissibleParams(f"lower bound must be positive, got {lower!r}")
        return max(self.lambda2, self.gamma / lower + self.lambda1) < 1.0


@dataclass(frozen=True)
class PerturbationReport:
    """Predicted vs. measured bounds plus the sampled condition slack."""

    predicted: FrameBounds
    empirical: FrameBounds
    max_condition_slack: float
    samples: int
    seed: int
    success: bool


def scalar_perturbation_params(delta: float) -> PerturbationParams:
    """Exact parameters for the scalar perturbation ``Gam = (1-delta) Lam``.

    Then ``Gam* Gam = (1-delta)^2 Lam* Lam``, so the condition holds with
    equality at ``l1 = 1 - (1-delta)^2`` and ``l2 = gamma = 0``.
    """
    if not (0.0 <= delta < 1.0):
        raise InvalidDelta(f"delta must lie in [0, 1), got {delta!r}")
    return PerturbationParams(lambda1=1.0 - (1.0 - delta) ** 2, lambda2=0.0, gamma=0.0)


def predicted_bounds(
    lower: float,
    upper: float,
    k,
    params: PerturbationParams,
) -> FrameBounds:
    """Frame bounds guaranteed for the perturbed family.

    ``(((1-l1) A - gamma)/(1+l2), ((1+l1) B + gamma ||K||^2)/(1-l2))``;
    admissibility makes the lower value positive.
    """
    if not lower > 0.0:
        raise InadmissibleParams(f"lower bound must be positive, got {lower!r}")
    if not upper >= lower:
        raise InadmissibleParams(
            f"upper bound {upper!r} must be >= lower bound {lower!r}"
        )
    if not params.admissible(lower):
        raise InadmissibleParams(
            f"max(l2, gamma/A + l1) = "
            f"{max(params.lambda2, params.gamma / lower + params.lambda1)!r} >= 1"
        )
    k = as_matrix(k)
    k_norm_sq = operator_norm(k) ** 2
    new_lower = ((1.0 - params.lambda1) * lower - params.gamma) / (1.0 + params.lambda2)
    new_upper = ((1.0 + params.lambda1) * upper + params.gamma * k_norm_sq) / (
        1.0 - params.lambda2
    )
    return FrameBounds(lower=new_lower, upper=new_upper)


def _unit_samples(dim: int, n_samples: int, seed: int) -> np.ndarray:
    """Deterministic complex-Gaussian unit vectors, one per column."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, n_samples)) + 1j * rng.standard_normal((dim, n_samples))
    norms = np.linalg.norm(z, axis=0)
    norms[norms == 0.0] = 1.0
    return z / norms


def _adversarial_vectors(lam: OperatorFamily, gam: OperatorFamily, k: np.ndarray) -> np.ndarray:
    """Eigenvectors of both frame operators and of K K*, as candidate extremes."""
    candidates = []
    for h in (frame_operator(lam), frame_operator(gam), k @ k.conj().T):
        sym = (h + h.conj().T) / 2.0
        _, v = np.linalg.eigh(sym)
        candidates.append(v)
    return np.hstack(candidates)


def sample_condition(
    lam: OperatorFamily,
    gam: OperatorFamily,
    k,
    params: PerturbationParams,
    n_samples: int,
    seed: int,
) -> float:
    """Max over sampled unit pairs (f, g) of LHS - RHS of the condition.

    A value <= 0 means no sampled violation (necessary evidence for the
    universally quantified condition, not a proof); any positive value is a
    certified violation.  The sample set is the seeded random pairs plus
    eigenvector pairs of both frame operators and of K K*.  Deterministic
    given (seed, n_samples).
    """
    if lam.ambient_dim != gam.ambient_dim or len(lam.space) != len(gam.space):
        raise DimensionMismatch("families must share a measure space and ambient dim")
    for a, b in zip(lam.space.atoms, gam.space.atoms):
        if a.fiber_dim != b.fiber_dim:
            raise DimensionMismatch("families must share per-atom fiber dimensions")
    k = as_matrix(k)
    if k.shape[0] != lam.ambient_dim:
        raise DimensionMismatch(
            f"reference operator has {k.shape[0]} rows, ambient dim is {lam.ambient_dim}"
        )

    weights = lam.space.weights
    lam_grams = [op.conj().T @ op for op in lam.ops]
    gam_grams = [op.conj().T @ op for op in gam.ops]

    fs = _unit_samples(lam.ambient_dim, n_samples, seed)
    gs = _unit_samples(lam.ambient_dim, n_samples, seed + 1)
    adversarial = _adversarial_vectors(lam, gam, k)
    fs = np.hstack([fs, adversarial])
    gs = np.hstack([gs, adversarial])

    def pairing(grams: list[np.ndarray]) -> np.ndarray:
        # row k, column s: |<G_k f_s, g_s>|, weighted sum over atoms
        rows = [np.abs(np.einsum("is,is->s", gs.conj(), g @ fs)) for g in grams]
        return weights @ np.vstack(rows) if rows else np.zeros(fs.shape[1])

    lhs = pairing([lg - gg for lg, gg in zip(lam_grams, gam_grams)])
    rhs = (
        params.lambda1 * pairing(lam_grams)
        + params.lambda2 * pairing(gam_grams)
        + params.gamma * np.linalg.norm(k.conj().T @ fs, axis=0) ** 2
    )
    return float(np.max(lhs - rhs))


def verify_perturbation(
    lam: OperatorFamily,
    gam: OperatorFamily,
    k,
    params: PerturbationParams,
    n_samples: int,
    seed: int,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> PerturbationReport:
    """Predicted-vs-empirical bound bracket plus sampled condition slack.

    The unperturbed family must be a frame for K; its optimal bounds feed
    the prediction.  Success means: no sampled condition violation (slack at
    roundoff level or below) and the measured optimal bounds of the
    perturbed family lie inside the predicted bracket.
    """
    k = as_matrix(k)
    if not check_synthesis_range(lam, k, tol):
        raise NotAFrame("unperturbed family is not a frame for the reference operator")
    base = optimal_bounds(lam, k, tol)
    if not base.lower > 0.0:
        raise NotAFrame("unperturbed family has no positive lower bound")
    if not params.admissible(base.lower):
        raise InadmissibleParams(
            f"parameters inadmissible for lower bound {base.lower!r}"
        )
    predicted = predicted_bounds(base.lower, base.upper, k, params)
    empirical = optimal_bounds(gam, k, tol)
    slack = sample_condition(lam, gam, k, params, n_samples, seed)

    slack_ok = slack <= SLACK_ROUNDOFF * max(1.0, base.upper)
    bracket_ok = (
        predicted.lower <= empirical.lower + tol.residual_tol
        and empirical.upper <= predicted.upper + tol.residual_tol
    )
    return PerturbationReport(
        predicted=predicted,
        empirical=empirical,
        max_condition_slack=slack,
        samples=n_samples,
        seed=seed,
        success=bool(slack_ok and bracket_ok),
    )


def project_out_range(fam: OperatorFamily, k, tol: TolerancePolicy = DEFAULT_TOL) -> OperatorFamily:
    """Deliberately broken perturbation: compose with the projector onto
    the orthogonal complement of ``range(K)``.

    The result annihilates ``range(K)``, so it cannot be a frame for K; use
    it to exercise failure reporting.
    """
    k = as_matrix(k)
    if k.shape[0] != fam.ambient_dim:
        raise DimensionMismatch(
            f"reference operator has {k.shape[0]} rows, ambient dim is {fam.ambient_dim}"
        )
    projector = np.eye(fam.ambient_dim) - k @ pseudo_inverse(k, tol)
    ops = []
    for op in fam.ops:
        projected = op @ projector
        # rows that lie inside range(K) must come out exactly zero, not as
        # projection roundoff whose own relative range would be meaningless
        chop = tol.rel_rank_cutoff * max(1.0, operator_norm(op))
        projected[np.abs(projected) <= chop] = 0.0
        ops.append(projected)
    return OperatorFamily(space=fam.space, ops=ops, ambient_dim=fam.ambient_dim)
