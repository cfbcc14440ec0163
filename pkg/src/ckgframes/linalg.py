"""Deterministic dense complex linear algebra kernels.

Adjoints, SVD-based pseudo-inverses, Hermitian eigendecompositions, and the
decision procedures built on them: positive-semidefiniteness, Loewner-order
gaps, and range inclusion.  Every rank or residual decision is governed by an
explicit :class:`TolerancePolicy` so results are reproducible.

All functions are pure: they never mutate their arguments and hold no state,
so they are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPsd

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOL",
    "HermitianEigen",
    "as_matrix",
    "adjoint",
    "pseudo_inverse",
    "hermitian_eigen",
    "operator_norm",
    "is_psd",
    "loewner_gap",
    "range_inclusion",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical thresholds used by every decision procedure.

    rel_rank_cutoff
        Singular values below ``rel_rank_cutoff * sigma_max`` count as zero
        (numerical rank, pseudo-inverse truncation, range tests).
    psd_slack
        Eigenvalues above ``-psd_slack * max(1, norm)`` count as nonnegative.
    residual_tol
        Relative residual below which an operator identity is accepted.
    """

    rel_rank_cutoff: float = 1e-12
    psd_slack: float = 1e-10
    residual_tol: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("rel_rank_cutoff", "psd_slack", "residual_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly in (0, 1), got {value!r}")


DEFAULT_TOL = TolerancePolicy()


@dataclass(frozen=True, eq=False)
class HermitianEigen:
    """Spectral decomposition ``H = V diag(w) V*`` with eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(values) -> np.ndarray:
    """Coerce to a finite complex 2-d array (the working matrix type)."""
    m = np.asarray(values, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def adjoint(m) -> np.ndarray:
    """Conjugate transpose, so that <M f, g> = <f, adjoint(M) g>."""
    return as_matrix(m).conj().T.copy()


def operator_norm(m) -> float:
    """Largest singular value of ``m`` (spectral norm)."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def pseudo_inverse(m, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse via SVD with relative rank cutoff.

    Singular values at or below ``rel_rank_cutoff * sigma_max`` are treated
    as zero.  A (numerically) zero matrix maps to the zero matrix of the
    transposed shape.  The result satisfies the four Penrose identities and
    ``M pinv(M) f = f`` for ``f`` in the range of ``M``.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if m.size == 0 or not m.any():
        return np.zeros((cols, rows), dtype=np.complex128)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    keep = s > tol.rel_rank_cutoff * s[0]
    if not keep.any():
        return np.zeros((cols, rows), dtype=np.complex128)
    return (vh[keep].conj().T / s[keep]) @ u[:, keep].conj().T


def _square(m, what: str) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {m.shape}")
    return m


def _symmetrize_or_raise(h, tol: TolerancePolicy, what: str) -> np.ndarray:
    """Return (H + H*)/2, rejecting inputs that are not Hermitian to tolerance."""
    h = _square(h, what)
    hnorm = operator_norm(h)
    deviation = operator_norm(h - h.conj().T)
    if deviation > tol.residual_tol * hnorm:
        raise NotHermitian(
            f"{what} deviates from Hermitian by {deviation:.3e} "
            f"(allowed {tol.residual_tol * hnorm:.3e})"
        )
    return (h + h.conj().T) / 2.0


def hermitian_eigen(h, tol: TolerancePolicy = DEFAULT_TOL) -> HermitianEigen:
    """Full spectral decomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized as ``(H + H*)/2`` to absorb roundoff; inputs
    that deviate from Hermitian beyond ``residual_tol * ||H||`` raise
    :class:`NotHermitian`.
    """
    sym = _symmetrize_or_raise(h, tol, "hermitian_eigen input")
    w, v = np.linalg.eigh(sym)
    return HermitianEigen(eigenvalues=w, eigenvectors=v)


def is_psd(h, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff ``lambda_min(H) >= -psd_slack * max(1, ||H||)``."""
    sym = _symmetrize_or_raise(h, tol, "is_psd input")
    if sym.size == 0:
        return True
    w = np.linalg.eigvalsh(sym)
    scale = max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] >= -tol.psd_slack * scale)


def loewner_gap(s, m, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Largest ``A >= 0`` such that ``S - A*M`` is positive semidefinite.

    For Hermitian PSD ``S`` and ``M`` this is the optimal constant in the
    operator inequality ``S >= A*M``.  It is computed by reducing to the
    range of ``S``: with ``S = V diag(d) V*`` restricted to its numerical
    rank, the gap equals ``1 / lambda_max(D^{-1/2} V* M V D^{-1/2})``.
    Directions outside the range of ``S`` admit no positive ``A`` unless
    ``M`` vanishes there, so a range leak of ``M`` out of ``range(S)``
    yields 0, and a numerically zero ``M`` yields ``+inf`` (the constraint
    is vacuous).

    Raises
    ------
    NotHermitian, NotPsd
        If either input fails its cone membership test.
    """
    s_sym = _symmetrize_or_raise(s, tol, "loewner_gap S")
    m_sym = _symmetrize_or_raise(m, tol, "loewner_gap M")
    if s_sym.shape != m_sym.shape:
        raise DimensionMismatch(f"shape mismatch: S {s_sym.shape} vs M {m_sym.shape}")
    if not is_psd(s_sym, tol):
        raise NotPsd("loewner_gap: S is not positive semidefinite")
    if not is_psd(m_sym, tol):
        raise NotPsd("loewner_gap: M is not positive semidefinite")

    s_norm = operator_norm(s_sym)
    m_norm = operator_norm(m_sym)
    if m_norm <= tol.rel_rank_cutoff * max(1.0, s_norm):
        return float("inf")

    d, v = np.linalg.eigh(s_sym)
    keep = d > tol.rel_rank_cutoff * max(d[-1], 0.0)
    rank = int(np.count_nonzero(keep))
    if rank < s_sym.shape[0]:
        v0 = v[:, ~keep]
        leak = operator_norm(v0.conj().T @ m_sym @ v0)
        if leak > tol.residual_tol * max(1.0, m_norm):
            return 0.0
    if rank == 0:
        # S ~ 0 with M supported nowhere detectable: constraint vacuous.
        return float("inf")

    vr = v[:, keep]
    scale = 1.0 / np.sqrt(d[keep])
    g = (vr * scale).conj().T @ m_sym @ (vr * scale)
    g = (g + g.conj().T) / 2.0
    top = float(np.linalg.eigvalsh(g)[-1])
    if top <= 0.0:
        return float("inf")
    return 1.0 / top


def range_inclusion(bm, am, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Decide ``range(B) <= range(A)`` via the orthogonal projector of ``A``.

    True iff ``||(I - A pinv(A)) B|| <= residual_tol * max(1, ||B||)``.
    """
    bm = as_matrix(bm)
    am = as_matrix(am)
    if bm.shape[0] != am.shape[0]:
        raise DimensionMismatch(
            f"row counts differ: B has {bm.shape[0]}, A has {am.shape[0]}"
        )
    projector = am @ pseudo_inverse(am, tol)
    residual = operator_norm(bm - projector @ bm)
    return bool(residual <= tol.residual_tol * max(1.0, operator_norm(bm)))
