"""Shared random-object generators for the test suite."""

import numpy as np
from scipy.stats import unitary_group

from teleportsim import AliceMeasurement, standard_measurement


def random_lambdas(d, rng):
    """Random Schmidt spectrum: nonnegative, descending, unit sum of squares."""
    lam = np.abs(rng.standard_normal(d))
    lam /= np.linalg.norm(lam)
    return np.sort(lam)[::-1].copy()


def random_unitary(d, rng):
    return unitary_group.rvs(d, random_state=rng)


def random_unitaries(d, n, rng):
    return unitary_group.rvs(d, size=n, random_state=rng)


def random_kraus_set(d, n_ops, rng):
    """Random valid Kraus set: sum_s B†B = I."""
    g = rng.standard_normal((n_ops, d, d)) + 1j * rng.standard_normal((n_ops, d, d))
    total = np.einsum("sij,sik->jk", g.conj(), g)
    w, u = np.linalg.eigh(total)
    inv_sqrt = (u / np.sqrt(w)) @ u.conj().T
    return np.einsum("sij,jk->sik", g, inv_sqrt)


def random_optimal_measurement(d, n_blocks, rng):
    """Random measurement passing the optimality conditions.

    Stacks n_blocks rotated and rescaled copies of the standard measurement:
    each copy keeps per-outcome orthogonality and equal norms, and the
    squared weights sum to one so completeness is preserved.
    """
    weights = np.abs(rng.standard_normal(n_blocks))
    weights /= np.linalg.norm(weights)
    std = standard_measurement(d).phi
    blocks = []
    for w in weights:
        u = random_unitary(d, rng)
        phases = np.exp(2j * np.pi * rng.random(d))
        blocks.append(w * phases[None, :, None] * std @ u.T)
    return AliceMeasurement(np.concatenate(blocks, axis=0))
