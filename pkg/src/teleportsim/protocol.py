"""Measurement/correction data model and single-shot teleportation.

Alice measures her two particles with a rank-one POVM whose outcome r is a
(possibly unnormalized) joint vector Phi_r = sum_k |phi_r^k> x |k>, written
in the Schmidt basis of her half of the shared pair. Completeness of the
POVM is equivalent to the block conditions

    sum_r |phi_r^k><phi_r^l| = delta_kl * I   for every pair (k, l),

which is what :func:`validate_completeness` checks. After learning r, Bob
applies a correction channel with Kraus operators B_rs; the conditional
state of his particle before correction is b_r = sum_k lambda_k
<phi_r^k|psi> |k>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .qcore import (
    BipartiteVector,
    PureState,
    SchmidtDecomposition,
    _freeze,
)

#: completeness and Kraus-normalization tolerance for assembled protocols
COMPLETENESS_ATOL = 1e-10
KRAUS_ATOL = 1e-10

PROTOCOL_SCHEMA = 1


@dataclass(frozen=True)
class AliceMeasurement:
    """Rank-one joint measurement in Schmidt-block form.

    ``phi[r, k]`` is the d-dimensional block of outcome r attached to the
    k-th Schmidt basis vector; blocks may be zero or unnormalized.
    Completeness is deliberately not enforced here, so that broken
    measurements can be constructed and diagnosed; it is enforced when a
    full :class:`Protocol` is assembled.
    """

    phi: np.ndarray

    def __post_init__(self) -> None:
        phi = np.array(self.phi, dtype=complex)
        if phi.ndim != 3 or phi.shape[1] != phi.shape[2]:
            raise ValueError(f"phi must have shape (R, d, d), got {phi.shape}")
        if phi.shape[1] < 2:
            raise ValueError("dimension must be at least 2")
        object.__setattr__(self, "phi", _freeze(phi))

    @property
    def d(self) -> int:
        return self.phi.shape[1]

    @property
    def n_outcomes(self) -> int:
        return self.phi.shape[0]

    def joint_vector(self, r: int) -> BipartiteVector:
        """Outcome r as an (unnormalized) vector on the joint 1 x 2 space."""
        return BipartiteVector(self.phi[r].T, normalized=False)


@dataclass(frozen=True)
class BobCorrections:
    """Per-outcome correction channels as Kraus operator lists.

    ``kraus[r]`` is an (S_r, d, d) array with sum_s B†B = I; the common case
    is a single unitary per outcome. A bare (d, d) matrix is accepted as a
    one-element list.
    """

    kraus: tuple

    def __post_init__(self) -> None:
        blocks = []
        d = None
        for r, block in enumerate(self.kraus):
            arr = np.array(block, dtype=complex)
            if arr.ndim == 2:
                arr = arr[None]
            if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
                raise ValueError(
                    f"outcome {r}: Kraus block must have shape (S, d, d), got {arr.shape}"
                )
            if d is None:
                d = arr.shape[1]
            elif arr.shape[1] != d:
                raise ValueError(f"outcome {r}: dimension {arr.shape[1]} != {d}")
            total = np.einsum("sij,sik->jk", arr.conj(), arr)
            if np.max(np.abs(total - np.eye(d))) > KRAUS_ATOL:
                raise ValueError(
                    f"outcome {r}: Kraus operators do not compose to the identity"
                )
            blocks.append(_freeze(arr))
        if not blocks:
            raise ValueError("need at least one outcome")
        object.__setattr__(self, "kraus", tuple(blocks))

    @property
    def d(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def n_outcomes(self) -> int:
        return len(self.kraus)

    @property
    def unitary(self) -> bool:
        """True when every outcome has a single (hence unitary) Kraus operator."""
        return all(block.shape[0] == 1 for block in self.kraus)

    @classmethod
    def from_unitaries(cls, mats) -> "BobCorrections":
        return cls(tuple(np.asarray(m, dtype=complex)[None] for m in mats))


@dataclass(frozen=True)
class Protocol:
    """Complete teleportation protocol: resource state, measurement, corrections."""

    schmidt: SchmidtDecomposition
    measurement: AliceMeasurement
    corrections: BobCorrections

    def __post_init__(self) -> None:
        d = self.schmidt.dim
        if self.measurement.d != d:
            raise ValueError(
                f"measurement dimension {self.measurement.d} != resource dimension {d}"
            )
        if self.corrections.d != d:
            raise ValueError(
                f"correction dimension {self.corrections.d} != resource dimension {d}"
            )
        if self.corrections.n_outcomes != self.measurement.n_outcomes:
            raise ValueError(
                f"{self.corrections.n_outcomes} correction blocks for "
                f"{self.measurement.n_outcomes} outcomes"
            )
        report = validate_completeness(self.measurement, COMPLETENESS_ATOL)
        if not report.passed:
            raise ValueError(
                f"measurement is not complete: max entrywise error {report.max_error:.3e}"
            )

    @property
    def d(self) -> int:
        return self.schmidt.dim

    @property
    def n_outcomes(self) -> int:
        return self.measurement.n_outcomes


@dataclass(frozen=True)
class TeleportOutcome:
    """Result of one simulated round: outcome index, its probability, Bob's state."""

    outcome: int
    probability: float
    output_state: PureState


def standard_measurement(d: int) -> AliceMeasurement:
    """Generalized Bell measurement with d^2 outcomes indexed r = p + q*d.

    Outcome (p, q) combines the phase ramp exp(2 pi i k p / d) with a cyclic
    shift by q; the 1/sqrt(d) scale makes the POVM resolve the identity
    exactly.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    phi = np.zeros((d * d, d, d), dtype=complex)
    scale = 1.0 / np.sqrt(d)
    for p in range(d):
        for q in range(d):
            for k in range(d):
                phi[p + q * d, k, (k + q) % d] = scale * np.exp(2j * np.pi * k * p / d)
    return AliceMeasurement(phi)


@dataclass(frozen=True)
class CompletenessReport:
    """Outcome of the resolution-of-identity check."""

    passed: bool
    max_error: float
    worst_pair: tuple[int, int]
    tol: float


def validate_completeness(
    meas: AliceMeasurement, tol: float = COMPLETENESS_ATOL
) -> CompletenessReport:
    """Check sum_r |phi_r^k><phi_r^l| = delta_kl * I entrywise against tol."""
    d = meas.d
    gram = np.einsum("rki,rlj->klij", meas.phi, meas.phi.conj())
    gram[np.arange(d), np.arange(d)] -= np.eye(d)
    err = np.abs(gram).reshape(d, d, -1).max(axis=2)
    k, l = np.unravel_index(int(np.argmax(err)), err.shape)
    worst = float(err[k, l])
    return CompletenessReport(worst <= tol, worst, (int(k), int(l)), tol)


@dataclass(frozen=True)
class OptimalityViolation:
    outcome: int
    k: int
    l: int
    error: float
    kind: str  # "unequal_norm" or "non_orthogonal"


@dataclass(frozen=True)
class OptimalityReport:
    """Outcome of the per-outcome equal-norm and orthogonality conditions.

    The conditions apply to the blocks k <= m, where m + 1 is the number of
    nonzero Schmidt coefficients: within each outcome all such blocks must
    share the norm of block 0 and be mutually orthogonal. Together with
    completeness they are necessary and sufficient for the measurement to
    admit corrections that attain the optimal-fidelity bound.
    """

    passed: bool
    max_error: float
    violations: tuple[OptimalityViolation, ...]
    effective_rank: int
    tol: float


def check_optimality(
    meas: AliceMeasurement, schmidt: SchmidtDecomposition, tol: float = 1e-10
) -> OptimalityReport:
    """Check |<phi_r^k|phi_r^l> - delta_kl |phi_r^0|^2| <= tol for k, l <= m."""
    if meas.d != schmidt.dim:
        raise ValueError(f"measurement dimension {meas.d} != resource dimension {schmidt.dim}")
    m1 = schmidt.effective_rank
    blocks = meas.phi[:, :m1]
    violations = []
    max_err = 0.0
    for r in range(meas.n_outcomes):
        gram = blocks[r] @ blocks[r].conj().T
        ref = float(gram[0, 0].real)
        for k in range(m1):
            for l in range(k, m1):
                if k == l:
                    err = abs(float(gram[k, k].real) - ref)
                    kind = "unequal_norm"
                else:
                    err = float(abs(gram[k, l]))
                    kind = "non_orthogonal"
                max_err = max(max_err, err)
                if err > tol:
                    violations.append(OptimalityViolation(r, k, l, err, kind))
    return OptimalityReport(not violations, max_err, tuple(violations), m1, tol)


def optimal_bob_corrections(
    meas: AliceMeasurement, schmidt: SchmidtDecomposition
) -> BobCorrections:
    """Best unitary correction for each outcome of a measurement.

    For outcome r the relevant data is A_r = sum_k lambda_k |k><phi_r^k|; the
    unitary maximizing |Tr(B A_r)| is the adjoint of the polar factor of A_r,
    recovered here from its SVD. When A_r is rank deficient the SVD supplies
    an arbitrary orthonormal completion on the null space, where the mean
    fidelity is insensitive to the choice.
    """
    if meas.d != schmidt.dim:
        raise ValueError(f"measurement dimension {meas.d} != resource dimension {schmidt.dim}")
    a = schmidt.lambdas[None, :, None] * meas.phi.conj()
    if not np.any(a):
        raise ValueError(
            "every outcome has zero weight; measurement and Schmidt coefficients "
            "are mutually inconsistent"
        )
    u, _, vh = np.linalg.svd(a)
    polar = np.einsum("rij,rjk->rik", u, vh)
    return BobCorrections.from_unitaries(polar.conj().transpose(0, 2, 1))


def standard_protocol(lambdas) -> Protocol:
    """Standard protocol for a resource with the given Schmidt coefficients.

    Pairs the generalized Bell measurement with the per-outcome unitaries
    that maximize the mean fidelity. The result attains the optimal-fidelity
    bound for any Schmidt spectrum.
    """
    schmidt = SchmidtDecomposition.from_lambdas(lambdas)
    meas = standard_measurement(schmidt.dim)
    return Protocol(schmidt, meas, optimal_bob_corrections(meas, schmidt))


def _conditional_vectors(proto: Protocol, psi: PureState) -> np.ndarray:
    """Unnormalized conditional states b_r, as rows of an (R, d) array."""
    overlaps = np.einsum("rkj,j->rk", proto.measurement.phi.conj(), psi.amplitudes)
    return proto.schmidt.lambdas[None, :] * overlaps


def outcome_distribution(proto: Protocol, psi: PureState) -> np.ndarray:
    """Probability of each measurement outcome for the input psi."""
    if psi.dim != proto.d:
        raise ValueError(f"input dimension {psi.dim} != protocol dimension {proto.d}")
    b = _conditional_vectors(proto, psi)
    return np.sum(np.abs(b) ** 2, axis=1)


def teleport_once(proto: Protocol, psi: PureState, rng: np.random.Generator) -> TeleportOutcome:
    """Simulate one teleportation round.

    Samples the measurement outcome with probability |b_r|^2, then a Kraus
    branch with probability |B_rs b_r|^2 / |b_r|^2, and returns Bob's
    normalized output state.
    """
    if psi.dim != proto.d:
        raise ValueError(f"input dimension {psi.dim} != protocol dimension {proto.d}")
    b = _conditional_vectors(proto, psi)
    probs = np.sum(np.abs(b) ** 2, axis=1)
    total = float(probs.sum())
    if total <= 0.0:
        raise ValueError("all outcome probabilities vanish; protocol state is corrupted")
    r = int(rng.choice(probs.size, p=probs / total))
    branches = np.einsum("sij,j->si", proto.corrections.kraus[r], b[r])
    weights = np.sum(np.abs(branches) ** 2, axis=1)
    s = int(rng.choice(weights.size, p=weights / weights.sum()))
    out = branches[s] / np.sqrt(weights[s])
    return TeleportOutcome(outcome=r, probability=float(probs[r]), output_state=PureState(out))


def _pairs(arr: np.ndarray) -> list:
    """Nested lists with [re, im] innermost, for JSON transport."""
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def _unpairs(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ValueError("complex data must be nested [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def protocol_to_dict(proto: Protocol) -> dict:
    """JSON-ready description: Schmidt coefficients, measurement blocks, Kraus lists.

    Only the Schmidt coefficients of the resource are stored; the local
    Schmidt bases are a frame choice that the protocol's action does not
    depend on.
    """
    return {
        "schema": PROTOCOL_SCHEMA,
        "d": proto.d,
        "lambdas": [float(x) for x in proto.schmidt.lambdas],
        "phi": _pairs(proto.measurement.phi),
        "corrections": [_pairs(block) for block in proto.corrections.kraus],
    }


def protocol_from_dict(data: dict) -> Protocol:
    d = int(data["d"])
    schmidt = SchmidtDecomposition.from_lambdas(np.asarray(data["lambdas"], dtype=float))
    meas = AliceMeasurement(_unpairs(data["phi"]))
    corrections = BobCorrections(tuple(_unpairs(block) for block in data["corrections"]))
    proto = Protocol(schmidt, meas, corrections)
    if proto.d != d:
        raise ValueError(f"declared dimension {d} does not match measurement blocks ({proto.d})")
    return proto


def protocol_to_json(proto: Protocol) -> str:
    """Serialize a protocol; floats survive the round trip bit-exactly."""
    return json.dumps(protocol_to_dict(proto), indent=2) + "\n"


def protocol_from_json(text: str) -> Protocol:
    return protocol_from_dict(json.loads(text))
