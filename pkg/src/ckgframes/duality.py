"""Dual-type families: Douglas factors, pseudo-inverse duals, canonical duals,
and pullbacks along a bounded operator.

The central construction factors a reference operator K through the synthesis
operator of a frame family: ``K = T Gamma`` with the minimal-norm factor
``Gamma = pinv(T) K``.  From it derive a lower frame bound (via the dual's
Bessel constant), the pseudo-inverse dual that reconstructs on ``range(K)``,
and the canonical dual when the frame operator is invertible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDual, DimensionMismatch, InvalidPair, NotAFrame
from .frames import (
    OperatorFamily,
    check_synthesis_range,
    frame_operator,
    synthesis_matrix,
)
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    loewner_gap,
    operator_norm,
    pseudo_inverse,
)

__all__ = [
    "DualPair",
    "douglas_gamma",
    "bessel_constant",
    "lower_bound_from_dual",
    "theta_dual",
    "canonical_dual",
    "pullback_by",
    "k_power_family",
]


@dataclass(frozen=True, eq=False)
class DualPair:
    """A frame family, a Bessel factor, and the operator their pairing reproduces."""

    primary_family: OperatorFamily
    dual_family: OperatorFamily
    reproduced_operator: np.ndarray
    residual: float


def _square_reference(fam: OperatorFamily, k) -> np.ndarray:
    k = as_matrix(k)
    n = fam.ambient_dim
    if k.shape != (n, n):
        raise DimensionMismatch(
            f"reference operator must be {n}x{n} to act on the ambient space, "
            f"got {k.shape}"
        )
    return k


def _unpack_rows(packed: np.ndarray, fam: OperatorFamily) -> tuple[np.ndarray, ...]:
    """Undo the sqrt-weight folding of the packed coefficient coordinates."""
    ops = []
    offset = 0
    for atom in fam.space.atoms:
        rows = packed[offset : offset + atom.fiber_dim]
        ops.append(rows / math.sqrt(atom.weight))
        offset += atom.fiber_dim
    return tuple(ops)


def douglas_gamma(lam: OperatorFamily, k, tol: TolerancePolicy = DEFAULT_TOL) -> DualPair:
    """Minimal-norm Bessel factor ``Gamma`` with ``T_Lam o analysis_Gamma = K``.

    Requires ``range(K) <= range(T)`` (the frame condition for K); otherwise
    raises :class:`NotAFrame`.  Among all factorizations the pseudo-inverse
    solution ``pinv(T) K`` has minimal norm, which makes the derived lower
    bound ``1/B_Gamma`` optimal.
    """
    k = _square_reference(lam, k)
    if not check_synthesis_range(lam, k, tol):
        raise NotAFrame(
            "range(K) is not contained in the range of the synthesis operator; "
            "the family is not a frame for this reference operator"
        )
    t = synthesis_matrix(lam)
    packed = pseudo_inverse(t, tol) @ k
    residual = operator_norm(t @ packed - k)
    allowed = tol.residual_tol * max(1.0, operator_norm(k))
    if residual > allowed:
        raise NotAFrame(
            f"factorization residual {residual:.3e} exceeds {allowed:.3e}; "
            "the range inclusion is numerically marginal"
        )
    dual = OperatorFamily(
        space=lam.space,
        ops=_unpack_rows(packed, lam),
        ambient_dim=lam.ambient_dim,
    )
    return DualPair(
        primary_family=lam,
        dual_family=dual,
        reproduced_operator=k,
        residual=residual,
    )


def bessel_constant(fam: OperatorFamily) -> float:
    """Optimal Bessel constant: ``lambda_max`` of the frame operator."""
    s = frame_operator(fam)
    return float(np.linalg.eigvalsh(s)[-1]) if s.size else 0.0


def lower_bound_from_dual(pair: DualPair) -> float:
    """Lower frame bound ``1/B_Gamma`` derived from the dual's Bessel constant.

    Never exceeds the optimal lower bound of the primary family; for the
    minimal-norm factor it attains it.
    """
    b_gamma = bessel_constant(pair.dual_family)
    if b_gamma <= 0.0:
        raise DegenerateDual("dual family is zero (reference operator is zero)")
    return 1.0 / b_gamma


def theta_dual(pair: DualPair, tol: TolerancePolicy = DEFAULT_TOL) -> OperatorFamily:
    """Pseudo-inverse dual ``Theta_k = Gamma_k pinv(K)``.

    Interchangeable with the primary family on ``range(K)``: for f there,
    ``synthesis(lam, analysis(theta, f)) == f`` and the order may be swapped.
    Vanishes on the orthogonal complement of ``range(K)`` because
    ``pinv(K)`` annihilates it.
    """
    k = pair.reproduced_operator
    allowed = tol.residual_tol * max(1.0, operator_norm(k))
    if pair.residual > allowed:
        raise InvalidPair(
            f"pair residual {pair.residual:.3e} exceeds {allowed:.3e}"
        )
    k_pinv = pseudo_inverse(k, tol)
    return OperatorFamily(
        space=pair.dual_family.space,
        ops=tuple(op @ k_pinv for op in pair.dual_family.ops),
        ambient_dim=pair.dual_family.ambient_dim,
    )


def canonical_dual(fam: OperatorFamily, tol: TolerancePolicy = DEFAULT_TOL) -> OperatorFamily:
    """Family ``ops[k] @ inv(S)``; reproduces every vector of the ambient space.

    Requires the family to be a frame for the whole space (S invertible),
    i.e. a positive Loewner gap against the identity.
    """
    s = frame_operator(fam)
    eye = np.eye(fam.ambient_dim)
    gap = loewner_gap(s, eye, tol)
    if not gap > 0.0:
        raise NotAFrame("frame operator is singular; no canonical dual exists")
    w, v = np.linalg.eigh(s)
    s_inv = (v / w) @ v.conj().T
    return OperatorFamily(
        space=fam.space,
        ops=tuple(op @ s_inv for op in fam.ops),
        ambient_dim=fam.ambient_dim,
    )


def pullback_by(fam: OperatorFamily, t) -> OperatorFamily:
    """Family ``ops[k] @ T*``; its frame operator is ``T S T*``.

    Maps a frame for K to a frame for ``T K`` with upper bound inflated by
    ``||T*||^2``.
    """
    t = _square_reference(fam, t)
    t_adj = t.conj().T
    return OperatorFamily(
        space=fam.space,
        ops=tuple(op @ t_adj for op in fam.ops),
        ambient_dim=fam.ambient_dim,
    )


def k_power_family(
    fam: OperatorFamily,
    k,
    n_power: int,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> OperatorFamily:
    """Iterated pullback ``ops[j] @ (K*)^N``, a frame for ``K^(N+1)``."""
    if n_power < 1:
        raise ValueError(f"power must be >= 1, got {n_power}")
    k = _square_reference(fam, k)
    if not check_synthesis_range(fam, k, tol):
        raise NotAFrame("family is not a frame for the reference operator")
    result = fam
    for _ in range(n_power):
        result = pullback_by(result, k)
    return result
