"""Hardware-specific transpilation: basis rewrite, routing, metrics.

The pipeline is decompose -> route -> decompose (the second pass expands
the SWAPs routing inserted) -> measure width and depth. The result is
unitary-equivalent to the source up to global phase and the reported
output permutation, which circuits_equivalent checks at oracle scale.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .circuit import QuantumCircuit, depth as circuit_depth
from .decompose import DecompositionTable, decompose
from .routing import route
from .unitary import allclose_up_to_phase, permutation_matrix, unitary_of

if TYPE_CHECKING:
    from .registry import QuantumComputer


@dataclass(frozen=True)
class TranspiledCircuit:
    circuit: QuantumCircuit
    source_id: str
    target_id: str
    width: int
    depth: int
    final_layout: tuple[int, ...]  # entry l = physical qubit of logical l


def transpile(
    circuit: QuantumCircuit,
    qpu: "QuantumComputer",
    table: DecompositionTable | None = None,
) -> TranspiledCircuit:
    """Rewrite the circuit for one quantum computer and report its metrics."""
    qpu.gate_set.validate()
    native = decompose(circuit, qpu.gate_set, table)
    routed, final_layout = route(native, qpu.coupling)
    flattened = decompose(routed, qpu.gate_set, table)
    return TranspiledCircuit(
        circuit=flattened,
        source_id=circuit.name,
        target_id=qpu.id,
        width=flattened.num_qubits,
        depth=circuit_depth(flattened),
        final_layout=final_layout,
    )


def circuits_equivalent(
    a: QuantumCircuit,
    b: QuantumCircuit,
    perm: tuple[int, ...] | dict[int, int] | None = None,
    tol: float = 1e-6,
) -> bool:
    """True when b's unitary equals a's after relabeling qubits by perm.

    perm maps each qubit l of `a` to its position in `b` (identity when
    omitted), matching the final_layout reported by transpile. Comparison
    is up to global phase, aligned on the largest-magnitude entry, with
    `tol` as the maximum absolute entry difference.
    """
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"cannot compare {a.num_qubits}-qubit and {b.num_qubits}-qubit circuits"
        )
    n = a.num_qubits
    if perm is None:
        perm = tuple(range(n))
    ua = unitary_of(a)
    ub = unitary_of(b)
    p = permutation_matrix(
        dict(enumerate(perm)) if not isinstance(perm, dict) else perm, n
    )
    return allclose_up_to_phase(ub, np.asarray(p @ ua), tol)
