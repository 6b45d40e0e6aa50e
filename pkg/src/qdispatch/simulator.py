"""Ideal statevector simulation and seeded measurement sampling.

State layout: amplitude index b has qubit 0 in its least significant bit.
Simulation is noiseless and ignores MEASURE gates (deferred measurement);
sampling draws from the marginal |amplitude|^2 distribution afterwards.

Sampling PRNG: SplitMix64, chosen because the algorithm fits in a few
lines and reproduces bit-identically on any platform or language. Each
draw takes the top 53 bits of the next output as a double in [0, 1) and
inverts the cumulative marginal distribution. Seeded identically, counts
are therefore byte-identical everywhere.
"""
from __future__ import annotations

import numpy as np

from .circuit import QuantumCircuit
from .gates import GateKind, gate_matrix

SIMULATOR_QUBIT_LIMIT = 20

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele et al.): 64-bit state, one multiply-xorshift chain."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        return (self.next_uint64() >> 11) * (1.0 / (1 << 53))


def _apply(state: np.ndarray, matrix: np.ndarray, operands: tuple[int, ...], n: int) -> np.ndarray:
    """Apply a k-qubit gate to the state tensor (axis n-1-q holds qubit q)."""
    k = len(operands)
    axes = [n - 1 - q for q in operands]
    tensor = matrix.reshape([2] * (2 * k))
    state = np.tensordot(tensor, state, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(state, range(k), axes)


def simulate(circuit: QuantumCircuit) -> np.ndarray:
    """Statevector after applying all gates to |0...0>, MEASUREs skipped."""
    n = circuit.num_qubits
    if n > SIMULATOR_QUBIT_LIMIT:
        raise ValueError(
            f"{n} qubits exceeds the {SIMULATOR_QUBIT_LIMIT}-qubit simulator limit"
        )
    state = np.zeros([2] * n, dtype=complex)
    state[(0,) * n] = 1.0
    for gate in circuit.gates:
        if gate.kind is GateKind.MEASURE:
            continue
        state = _apply(state, gate_matrix(gate.kind, gate.params), gate.operands, n)
    vector = state.reshape(-1)
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) > 1e-9:
        raise RuntimeError(f"statevector norm drifted to {norm}")
    return vector


def marginal_probabilities(state: np.ndarray, measured_qubits: tuple[int, ...]) -> np.ndarray:
    """|amplitude|^2 marginal over the given qubits.

    Entry m of the result packs measured_qubits[i] into bit i of m.
    """
    n = int(np.log2(len(state)))
    probs = np.abs(state.reshape([2] * n)) ** 2
    keep = set(measured_qubits)
    drop = tuple(n - 1 - q for q in range(n) if q not in keep)
    if drop:
        probs = probs.sum(axis=drop)
    # remaining axes are ascending-qubit from the back; reorder to the
    # requested measured order with measured_qubits[0] as the last axis
    remaining = sorted(keep)
    order = [len(remaining) - 1 - remaining.index(q) for q in measured_qubits]
    marg = np.transpose(probs, [order[len(order) - 1 - i] for i in range(len(order))])
    return marg.reshape(-1)


def sample(
    state: np.ndarray,
    measured_qubits: tuple[int, ...],
    shots: int,
    seed: int,
) -> dict[str, int]:
    """Draw `shots` outcomes over the measured qubits.

    Bitstring convention: measured_qubits[0] is the rightmost character.
    Zero-probability outcomes are never drawn; counts sum to shots.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if not measured_qubits:
        raise ValueError("no qubits to measure")
    if len(set(measured_qubits)) != len(measured_qubits):
        raise ValueError(f"measured qubits must be distinct: {measured_qubits}")
    n = int(np.log2(len(state)))
    if any(not 0 <= q < n for q in measured_qubits):
        raise ValueError(f"measured qubit out of range for {n}-qubit state")

    marg = marginal_probabilities(state, measured_qubits)
    cumulative = np.cumsum(marg)
    cumulative[-1] = max(cumulative[-1], 1.0)
    rng = SplitMix64(seed)
    m = len(measured_qubits)
    counts: dict[str, int] = {}
    for _ in range(shots):
        u = rng.next_double()
        outcome = int(np.searchsorted(cumulative, u, side="right"))
        key = format(outcome, f"0{m}b")
        counts[key] = counts.get(key, 0) + 1
    return counts
