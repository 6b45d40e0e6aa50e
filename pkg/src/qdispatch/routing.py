"""Greedy SWAP-insertion routing onto a coupling map.

Keeps a logical-to-physical layout, initially the identity. Whenever a
2-qubit gate lands on an uncoupled pair, SWAPs are inserted along the
BFS-shortest coupling path (ties toward lower physical indices) to walk
the first operand next to the second, updating the layout as it goes.
The final layout is reported, not undone with extra SWAPs.

Not an optimal router; a deterministic stand-in that keeps the output
unitary-equivalent to the input up to the returned output permutation.
"""
from __future__ import annotations

from .circuit import GateApplication, QuantumCircuit
from .gates import GateKind
from .gateset import CouplingMap


class RoutingError(ValueError):
    """Raised when a circuit cannot be placed on the coupling map."""


def route(
    circuit: QuantumCircuit, coupling: CouplingMap
) -> tuple[QuantumCircuit, tuple[int, ...]]:
    """Map the circuit onto physical qubits; returns (circuit, final_layout).

    final_layout[l] is the physical qubit holding logical qubit l after the
    last gate. The output circuit's operands are physical indices, and its
    qubit count covers every touched physical qubit plus the layout image.
    """
    n = circuit.num_qubits
    if n > coupling.num_physical_qubits:
        raise RoutingError(
            f"circuit width {n} exceeds {coupling.num_physical_qubits} physical qubits"
        )
    log_to_phys = list(range(n))
    phys_to_log = {p: l for l, p in enumerate(log_to_phys)}
    out: list[GateApplication] = []
    touched: set[int] = set()

    def emit(kind: GateKind, operands: tuple[int, ...], params: tuple[float, ...] = ()):
        touched.update(operands)
        out.append(GateApplication(kind, operands, params))

    def swap_physical(pa: int, pb: int) -> None:
        emit(GateKind.SWAP, (pa, pb))
        la, lb = phys_to_log.get(pa), phys_to_log.get(pb)
        if la is not None:
            log_to_phys[la] = pb
            phys_to_log[pb] = la
        else:
            phys_to_log.pop(pb, None)
        if lb is not None:
            log_to_phys[lb] = pa
            phys_to_log[pa] = lb
        else:
            phys_to_log.pop(pa, None)

    for gate in circuit.gates:
        if gate.kind.arity > 2:
            raise RoutingError(
                f"{gate.kind.value} has arity {gate.kind.arity}; "
                "route expects 1- and 2-qubit gates (decompose first)"
            )
        if gate.kind.arity == 1:
            emit(gate.kind, (log_to_phys[gate.operands[0]],), gate.params)
            continue
        a, b = gate.operands
        pa, pb = log_to_phys[a], log_to_phys[b]
        if not coupling.has_edge(pa, pb):
            path = coupling.shortest_path(pa, pb)
            for i in range(len(path) - 2):
                swap_physical(path[i], path[i + 1])
            pa = log_to_phys[a]
        emit(gate.kind, (pa, pb), gate.params)

    used = touched | set(log_to_phys)
    routed = QuantumCircuit(circuit.name, max(used) + 1, tuple(out))
    return routed, tuple(log_to_phys)
