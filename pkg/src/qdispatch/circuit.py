"""Circuit representation and layer/width/depth metrics.

A circuit is an ordered list of gate applications over indexed qubits.
Layering groups gates into sets that act on pairwise disjoint qubits and
can run simultaneously; the number of layers is the depth. Measurements
are terminal per qubit and occupy a layer slot like any 1-qubit gate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

from .gates import GateKind


class CircuitError(ValueError):
    """Raised when a circuit or gate application violates an invariant."""


@dataclass(frozen=True)
class GateApplication:
    kind: GateKind
    operands: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(self.operands) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.arity} operand(s), "
                f"got {len(self.operands)}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise CircuitError(
                f"{self.kind.value} operands must be distinct, got {self.operands}"
            )
        if any(q < 0 for q in self.operands):
            raise CircuitError(f"negative qubit index in {self.operands}")
        if len(self.params) != self.kind.param_count:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.param_count} parameter(s), "
                f"got {len(self.params)}"
            )


@dataclass(frozen=True)
class QuantumCircuit:
    name: str
    num_qubits: int
    gates: tuple[GateApplication, ...] = ()

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise CircuitError(f"circuit needs at least one qubit, got {self.num_qubits}")
        measured: set[int] = set()
        for gate in self.gates:
            for q in gate.operands:
                if q >= self.num_qubits:
                    raise CircuitError(
                        f"operand {q} out of range for {self.num_qubits}-qubit circuit"
                    )
                if q in measured:
                    raise CircuitError(
                        f"qubit {q} is used after being measured (measurement is terminal)"
                    )
            if gate.kind is GateKind.MEASURE:
                measured.add(gate.operands[0])

    @property
    def measured_qubits(self) -> tuple[int, ...]:
        """Qubits carrying a MEASURE, in ascending index order."""
        return tuple(
            sorted(g.operands[0] for g in self.gates if g.kind is GateKind.MEASURE)
        )

    def has_measurements(self) -> bool:
        return any(g.kind is GateKind.MEASURE for g in self.gates)


@dataclass(frozen=True)
class LayeredCircuit:
    layers: tuple[tuple[GateApplication, ...], ...] = field(default_factory=tuple)

    @property
    def depth(self) -> int:
        return len(self.layers)


def compute_layers(circuit: QuantumCircuit) -> LayeredCircuit:
    """Greedy as-soon-as-possible layering.

    Each gate lands in the earliest layer strictly after the last layer
    holding a gate on any shared qubit, so per-qubit gate order is
    preserved and every layer touches each qubit at most once.
    Deterministic for a given gate order.
    """
    next_free: dict[int, int] = {}
    layers: list[list[GateApplication]] = []
    for gate in circuit.gates:
        slot = max((next_free.get(q, 0) for q in gate.operands), default=0)
        if slot == len(layers):
            layers.append([])
        layers[slot].append(gate)
        for q in gate.operands:
            next_free[q] = slot + 1
    return LayeredCircuit(tuple(tuple(layer) for layer in layers))


def width(circuit: QuantumCircuit) -> int:
    return circuit.num_qubits


def depth(circuit: QuantumCircuit) -> int:
    return compute_layers(circuit).depth


def _angle_close(a: float, b: float, tol: float) -> bool:
    d = (a - b) % (2 * pi)
    return min(d, 2 * pi - d) <= tol


def gates_equivalent(a: GateApplication, b: GateApplication, tol: float = 1e-9) -> bool:
    """Same kind and operands, angles equal modulo 2*pi within tol."""
    if a.kind is not b.kind or a.operands != b.operands:
        return False
    return all(_angle_close(x, y, tol) for x, y in zip(a.params, b.params))
