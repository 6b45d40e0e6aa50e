"""Hardware capability descriptions: native gate sets and coupling maps."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .gates import GateKind


class GateSetError(ValueError):
    """Raised for gate sets that cannot express arbitrary circuits."""


class CouplingError(ValueError):
    """Raised for malformed or disconnected coupling maps."""


# Any of these single-qubit subsets can build an arbitrary single-qubit
# unitary, which is what makes a basis usable as a decomposition target.
_UNIVERSAL_1Q = (
    frozenset({GateKind.RZ, GateKind.SX}),
    frozenset({GateKind.RX, GateKind.RZ}),
    frozenset({GateKind.U3}),
)


@dataclass(frozen=True)
class NativeGateSet:
    name: str
    basis: frozenset[GateKind]

    def validate(self) -> None:
        if not any(core <= self.basis for core in _UNIVERSAL_1Q):
            raise GateSetError(
                f"gate set {self.name!r} cannot express arbitrary 1-qubit unitaries; "
                "needs {rz, sx}, {rx, rz}, or u3"
            )
        if not any(kind.is_entangling for kind in self.basis):
            raise GateSetError(
                f"gate set {self.name!r} has no entangling gate (cx or cz)"
            )

    def __contains__(self, kind: GateKind) -> bool:
        return kind in self.basis


@dataclass(frozen=True)
class CouplingMap:
    num_physical_qubits: int
    edges: frozenset[tuple[int, int]]  # each stored as (low, high)
    _adjacency: dict[int, tuple[int, ...]] = field(
        default=None, repr=False, compare=False
    )

    @classmethod
    def from_pairs(cls, num_physical_qubits: int, pairs) -> "CouplingMap":
        edges = set()
        for a, b in pairs:
            if a == b:
                raise CouplingError(f"self-loop edge ({a}, {b})")
            edges.add((min(a, b), max(a, b)))
        return cls(num_physical_qubits, frozenset(edges))

    def __post_init__(self) -> None:
        if self.num_physical_qubits < 1:
            raise CouplingError("coupling map needs at least one physical qubit")
        adjacency: dict[int, list[int]] = {q: [] for q in range(self.num_physical_qubits)}
        for a, b in self.edges:
            if not (0 <= a < self.num_physical_qubits and 0 <= b < self.num_physical_qubits):
                raise CouplingError(
                    f"edge ({a}, {b}) out of range for {self.num_physical_qubits} qubits"
                )
            adjacency[a].append(b)
            adjacency[b].append(a)
        object.__setattr__(
            self, "_adjacency", {q: tuple(sorted(ns)) for q, ns in adjacency.items()}
        )

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self, q: int) -> tuple[int, ...]:
        return self._adjacency[q]

    def components(self) -> list[set[int]]:
        """Connected components over all declared physical qubits."""
        seen: set[int] = set()
        parts: list[set[int]] = []
        for start in range(self.num_physical_qubits):
            if start in seen:
                continue
            part = {start}
            queue = deque([start])
            while queue:
                q = queue.popleft()
                for nb in self.neighbors(q):
                    if nb not in part:
                        part.add(nb)
                        queue.append(nb)
            seen |= part
            parts.append(part)
        return parts

    def validate(self) -> None:
        parts = self.components()
        if len(parts) > 1:
            shown = " vs ".join(str(sorted(p)) for p in parts)
            raise CouplingError(f"coupling graph is disconnected: {shown}")

    def shortest_path(self, a: int, b: int) -> list[int]:
        """BFS shortest path; ties resolved toward lower physical indices."""
        if a == b:
            return [a]
        parent: dict[int, int] = {a: -1}
        queue = deque([a])
        while queue:
            q = queue.popleft()
            for nb in self.neighbors(q):  # ascending order fixes tie-breaks
                if nb not in parent:
                    parent[nb] = q
                    if nb == b:
                        path = [b]
                        while path[-1] != a:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(nb)
        raise CouplingError(f"no path between physical qubits {a} and {b}")
