"""Shared deterministic generators for the test suite."""

import numpy as np

from ckgframes.frames import OperatorFamily
from ckgframes.measure import Atom, DiscreteMeasureSpace


def complex_randn(rng, *shape):
    """Standard complex Gaussian entries (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unit(rng, dim):
    z = complex_randn(rng, dim)
    return z / np.linalg.norm(z)


def random_psd(rng, n, rank=None):
    """Random PSD matrix of the given rank (full rank by default)."""
    rank = n if rank is None else rank
    x = complex_randn(rng, n, rank)
    h = x @ x.conj().T
    return (h + h.conj().T) / 2.0


def random_family(rng, n, n_atoms=None, max_fiber=3, unit_weights=False):
    """Random operator family; total fiber dim at least 2n so the frame
    operator stays well conditioned."""
    if n_atoms is None:
        n_atoms = int(rng.integers(2, 6))
    fiber_dims = [int(rng.integers(1, max_fiber + 1)) for _ in range(n_atoms)]
    while sum(fiber_dims) < 2 * n:
        fiber_dims.append(int(rng.integers(1, max_fiber + 1)))
    weights = (
        np.ones(len(fiber_dims))
        if unit_weights
        else rng.uniform(0.5, 1.5, len(fiber_dims))
    )
    space = DiscreteMeasureSpace(
        Atom(atom_id=f"a{k}", weight=float(w), fiber_dim=d)
        for k, (w, d) in enumerate(zip(weights, fiber_dims))
    )
    ops = [complex_randn(rng, d, n) for d in fiber_dims]
    return OperatorFamily(space=space, ops=ops, ambient_dim=n)
