"""Mean teleportation fidelity: exact evaluators, Monte Carlo, and bounds.

The mean fidelity of a protocol is the squared overlap between the input
and Bob's corrected output, averaged over measurement outcomes, Kraus
branches, and Haar-random inputs. For a resource with Schmidt coefficients
lambda_k it can never exceed

    (1 + (sum_k lambda_k)^2) / (d + 1),

and the standard protocol attains that value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .haar import McEstimate, m_kl_exact, sample_haar_states
from .protocol import AliceMeasurement, Protocol
from .qcore import _freeze, check_schmidt_coefficients


@dataclass(frozen=True)
class AOperators:
    """Per-outcome matrices A_r = sum_k lambda_k |k><phi_r^k|.

    Row k of A_r is lambda_k * conj(phi_r^k); column k is the image of |k>.
    Under completeness the total weight sum_r Tr(A_r† A_r) equals the
    dimension d.
    """

    matrices: np.ndarray

    def __post_init__(self) -> None:
        mats = np.array(self.matrices, dtype=complex)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"expected shape (R, d, d), got {mats.shape}")
        object.__setattr__(self, "matrices", _freeze(mats))

    @property
    def n_outcomes(self) -> int:
        return self.matrices.shape[0]

    @property
    def d(self) -> int:
        return self.matrices.shape[1]

    def nuclear_norms(self) -> np.ndarray:
        """Sum of singular values of each A_r."""
        return np.sum(np.linalg.svd(self.matrices, compute_uv=False), axis=1)

    @property
    def total_weight(self) -> float:
        """sum_r Tr(A_r† A_r); equals d when the measurement is complete."""
        return float(np.sum(np.abs(self.matrices) ** 2))


def compute_a_operators(meas: AliceMeasurement, lambdas) -> AOperators:
    """Assemble the per-outcome matrices A_r from measurement blocks and coefficients."""
    lam = check_schmidt_coefficients(lambdas)
    if lam.size != meas.d:
        raise ValueError(f"got {lam.size} Schmidt coefficients for dimension {meas.d}")
    return AOperators(lam[None, :, None] * meas.phi.conj())


def mean_fidelity_exact(proto: Protocol) -> float:
    """Exact Haar-average fidelity of a protocol.

    Uses the reduced form

        (1 / (d (d + 1))) * sum_r [ sum_k lambda_k^2 |phi_r^k|^2
                                    + sum_s |Tr(B_rs A_r)|^2 ],

    which equals the moment-operator sandwich of
    :func:`mean_fidelity_mkl_form` at O(R d^3) instead of O(R d^5) cost.
    """
    lam = proto.schmidt.lambdas
    phi = proto.measurement.phi
    d = proto.d
    weight = float(np.sum(lam**2 * np.sum(np.abs(phi) ** 2, axis=2)))
    a = lam[None, :, None] * phi.conj()
    coherent = 0.0
    for r, block in enumerate(proto.corrections.kraus):
        traces = np.einsum("sij,ji->s", block, a[r])
        coherent += float(np.sum(np.abs(traces) ** 2))
    return (weight + coherent) / (d * (d + 1))


def mean_fidelity_mkl_form(proto: Protocol) -> float:
    """Exact mean fidelity assembled from the measure's moment operators.

    Independent cross-check of :func:`mean_fidelity_exact`: evaluates the
    full double sum  sum_{r,s,k,l} <u_r^k| B_rs† M(k,l) B_rs |u_r^l>  with
    u_r^k the columns of A_r. Scales poorly with d; meant for validation.
    """
    d = proto.d
    m = np.empty((d, d, d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            m[k, l] = m_kl_exact(d, k, l).matrix
    a = compute_a_operators(proto.measurement, proto.schmidt.lambdas).matrices
    total = 0.0
    for r, block in enumerate(proto.corrections.kraus):
        for b_op in block:
            c = b_op @ a[r]  # column l holds B|u_r^l>
            total += float(np.real(np.einsum("ak,klab,bl->", c.conj(), m, c)))
    return total


def mean_fidelity_monte_carlo(proto: Protocol, n: int, rng: np.random.Generator) -> McEstimate:
    """Monte-Carlo mean fidelity over Haar-random inputs.

    For each sampled input the full conditional fidelity
    sum_{r,s} |<psi| B_rs |b_r>|^2 is accumulated (no outcome or branch
    sampling), so the only statistical noise left is the Haar average.
    """
    if n < 1000:
        raise ValueError(f"need at least 1000 samples, got {n}")
    psi = sample_haar_states(proto.d, n, rng)
    overlaps = np.einsum("rkj,nj->rnk", proto.measurement.phi.conj(), psi)
    b = overlaps * proto.schmidt.lambdas[None, None, :]
    f = np.zeros(n)
    for r, block in enumerate(proto.corrections.kraus):
        corrected = np.einsum("sij,nj->sni", block, b[r])
        amp = np.einsum("ni,sni->sn", psi.conj(), corrected)
        f += np.sum(np.abs(amp) ** 2, axis=0)
    return McEstimate(
        value=float(f.mean()),
        std_error=float(f.std(ddof=1) / np.sqrt(n)),
        n_samples=n,
    )


def fidelity_bound(lambdas) -> float:
    """Optimal mean teleportation fidelity: (1 + (sum_k lambda_k)^2) / (d + 1)."""
    lam = check_schmidt_coefficients(lambdas)
    return (1.0 + float(lam.sum()) ** 2) / (lam.size + 1)


def optimal_fidelity_given_measurement(meas: AliceMeasurement, lambdas) -> float:
    """Best mean fidelity achievable with a fixed complete measurement.

    With optimal unitary corrections each outcome's coherent term becomes
    the squared nuclear norm of A_r, giving

        (d + sum_r ||A_r||_nuc^2) / (d (d + 1)).

    Completeness of the measurement is assumed (the incoherent term is then
    exactly d).
    """
    a = compute_a_operators(meas, lambdas)
    return (meas.d + float(np.sum(a.nuclear_norms() ** 2))) / (meas.d * (meas.d + 1))


def max_singlet_fraction(lambdas) -> float:
    """Largest overlap with a maximally entangled state: (sum_k lambda_k)^2 / d.

    Related to the optimal fidelity F through F = (f * d + 1) / (d + 1).
    """
    lam = check_schmidt_coefficients(lambdas)
    return float(lam.sum()) ** 2 / lam.size
