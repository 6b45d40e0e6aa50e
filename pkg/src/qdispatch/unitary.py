"""Dense unitary construction and comparison, used as a test oracle.

Builds the full 2^n matrix of a circuit by embedding each gate with an
explicit Kronecker product and index permutation. Amplitude ordering puts
qubit 0 in the least significant bit of the basis index. Capped at 10
qubits; matrices beyond that are not oracle material.
"""
from __future__ import annotations

import numpy as np

from .circuit import QuantumCircuit
from .gates import GateKind, gate_matrix

UNITARY_QUBIT_LIMIT = 10


def _embed(matrix: np.ndarray, operands: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Lift a k-qubit gate matrix to the full 2^n space.

    Conjugates (matrix tensored with identity) by the index permutation that
    moves the operand bits to the front, big-endian in operand order.
    """
    k = len(operands)
    rest = [q for q in range(num_qubits) if q not in operands]
    dim = 1 << num_qubits
    big = np.kron(matrix, np.eye(1 << (num_qubits - k), dtype=complex))
    # reindex[b] = position of basis state b once operand bits lead
    reindex = np.zeros(dim, dtype=np.int64)
    for b in range(dim):
        loc = 0
        for q in operands:
            loc = (loc << 1) | ((b >> q) & 1)
        tail = 0
        for q in rest:
            tail = (tail << 1) | ((b >> q) & 1)
        reindex[b] = (loc << (num_qubits - k)) | tail
    return big[np.ix_(reindex, reindex)]


def unitary_of(circuit: QuantumCircuit) -> np.ndarray:
    """Full unitary of a measurement-free circuit, gates applied in order."""
    if circuit.has_measurements():
        raise ValueError("circuit contains measurements; no unitary exists")
    if circuit.num_qubits > UNITARY_QUBIT_LIMIT:
        raise ValueError(
            f"{circuit.num_qubits} qubits exceeds the "
            f"{UNITARY_QUBIT_LIMIT}-qubit unitary limit"
        )
    dim = 1 << circuit.num_qubits
    u = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        u = _embed(gate_matrix(gate.kind, gate.params), gate.operands, circuit.num_qubits) @ u
    return u


def permutation_matrix(perm: dict[int, int] | list[int], num_qubits: int) -> np.ndarray:
    """Matrix of the qubit relabeling |x> -> |y> with bit perm[l] of y = bit l of x.

    `perm` maps each source qubit to its destination position and must be a
    bijection on range(num_qubits).
    """
    mapping = [perm[q] for q in range(num_qubits)]
    if sorted(mapping) != list(range(num_qubits)):
        raise ValueError(f"not a permutation of 0..{num_qubits - 1}: {mapping}")
    dim = 1 << num_qubits
    p = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        y = 0
        for q in range(num_qubits):
            y |= ((x >> q) & 1) << mapping[q]
        p[y, x] = 1
    return p


def allclose_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True when a == e^{i phi} * b within tol (max absolute entry difference).

    The phase is aligned on the largest-magnitude entry of b.
    """
    if a.shape != b.shape:
        return False
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) <= tol:
        return bool(np.max(np.abs(a - b)) <= tol)
    phase = a[idx] / b[idx]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(a - phase * b)) <= tol)
