"""Rule-driven gate decomposition into a native basis.

The rewrite table lives in data/decompositions.json, not in code, so a
gate-set file can carry additional rules (custom rules take precedence
over the packaged defaults). Each rule maps one catalog gate to an
expansion whose angle parameters are arithmetic expressions over the
source gate's parameters and pi.

Every expansion preserves the gate's unitary up to global phase; the
rewrite recurses until the whole circuit sits inside the target basis.
MEASURE always passes through. Expansion depth is capped at 16 per gate:
a basis nobody validated can make rules ping-pong (cx <-> cz), and the
cap turns that into an error instead of a hang.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from importlib import resources
from math import pi

from .circuit import GateApplication, QuantumCircuit
from .gates import GateKind, kind_from_name
from .gateset import NativeGateSet

EXPANSION_DEPTH_CAP = 16

# parameter names available in rule expressions, per source gate kind
_PARAM_NAMES = {
    GateKind.RX: ("theta",),
    GateKind.RY: ("theta",),
    GateKind.RZ: ("theta",),
    GateKind.U3: ("theta", "phi", "lam"),
}


class DecompositionError(ValueError):
    """Raised when no rule chain reaches the target basis."""


class _NoPath(Exception):
    pass


def _eval_angle(node: ast.AST, env: dict[str, float]) -> float:
    if isinstance(node, ast.Expression):
        return _eval_angle(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise DecompositionError(f"unknown name {node.id!r} in angle expression")
        return env[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _eval_angle(node.operand, env)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp) and isinstance(
        node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)
    ):
        left = _eval_angle(node.left, env)
        right = _eval_angle(node.right, env)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        return left / right
    raise DecompositionError(f"unsupported angle expression node {type(node).__name__}")


@dataclass(frozen=True)
class ExpansionStep:
    kind: GateKind
    operand_slots: tuple[int, ...]
    angle_exprs: tuple[ast.Expression, ...]


@dataclass(frozen=True)
class DecompositionRule:
    source: GateKind
    steps: tuple[ExpansionStep, ...]

    @classmethod
    def from_document(cls, doc: dict) -> "DecompositionRule":
        source = kind_from_name(doc["from"])
        steps = []
        for entry in doc["expansion"]:
            kind = kind_from_name(entry["gate"])
            slots = tuple(entry["qubits"])
            if len(slots) != kind.arity:
                raise DecompositionError(
                    f"rule for {source.value}: {kind.value} takes {kind.arity} operand(s)"
                )
            exprs = tuple(
                ast.parse(text, mode="eval") for text in entry.get("params", ())
            )
            if len(exprs) != kind.param_count:
                raise DecompositionError(
                    f"rule for {source.value}: {kind.value} takes "
                    f"{kind.param_count} parameter(s)"
                )
            steps.append(ExpansionStep(kind, slots, exprs))
        return cls(source, tuple(steps))

    def apply(self, gate: GateApplication) -> list[GateApplication]:
        env = {"pi": pi}
        for name, value in zip(_PARAM_NAMES.get(gate.kind, ()), gate.params):
            env[name] = value
        out = []
        for step in self.steps:
            operands = tuple(gate.operands[slot] for slot in step.operand_slots)
            params = tuple(_eval_angle(expr, env) for expr in step.angle_exprs)
            out.append(GateApplication(step.kind, operands, params))
        return out


class DecompositionTable:
    """Ordered rules per gate kind; the first chain that reaches the basis wins."""

    def __init__(self, rules: list[DecompositionRule]):
        self._rules: dict[GateKind, list[DecompositionRule]] = {}
        for rule in rules:
            self._rules.setdefault(rule.source, []).append(rule)

    def rules_for(self, kind: GateKind) -> list[DecompositionRule]:
        return self._rules.get(kind, [])

    def with_extra(self, rules: list[DecompositionRule]) -> "DecompositionTable":
        """New table where the given rules are tried before the existing ones."""
        merged = DecompositionTable(rules)
        for kind, existing in self._rules.items():
            merged._rules.setdefault(kind, []).extend(existing)
        return merged


_default_table: DecompositionTable | None = None


def default_table() -> DecompositionTable:
    global _default_table
    if _default_table is None:
        doc = json.loads(
            resources.files("qdispatch.data").joinpath("decompositions.json").read_text()
        )
        _default_table = DecompositionTable(
            [DecompositionRule.from_document(entry) for entry in doc["rules"]]
        )
    return _default_table


def _expand(
    gate: GateApplication,
    gateset: NativeGateSet,
    table: DecompositionTable,
    depth: int,
) -> list[GateApplication]:
    if gate.kind is GateKind.MEASURE or gate.kind in gateset:
        return [gate]
    if depth >= EXPANSION_DEPTH_CAP:
        raise _NoPath()
    for rule in table.rules_for(gate.kind):
        expanded: list[GateApplication] = []
        try:
            for sub in rule.apply(gate):
                expanded.extend(_expand(sub, gateset, table, depth + 1))
        except _NoPath:
            continue
        return expanded
    raise _NoPath()


def decompose(
    circuit: QuantumCircuit,
    gateset: NativeGateSet,
    table: DecompositionTable | None = None,
) -> QuantumCircuit:
    """Rewrite the circuit so every gate kind lies in the target basis."""
    table = table or default_table()
    out: list[GateApplication] = []
    for gate in circuit.gates:
        try:
            out.extend(_expand(gate, gateset, table, 0))
        except _NoPath:
            raise DecompositionError(
                f"no expansion of {gate.kind.value} reaches basis {gateset.name!r} "
                f"within depth {EXPANSION_DEPTH_CAP}"
            ) from None
    return QuantumCircuit(circuit.name, circuit.num_qubits, tuple(out))
