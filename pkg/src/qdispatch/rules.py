"""Selection rule evaluation: input processability and hardware executability.

An implementation is processable for input n exactly when n lies in its
inclusive bound interval. A (QPU, implementation) pair is executable
exactly when the QPU provides at least the qubits and depth budget the
transpiled circuit needs and both sides share an SDK; equality passes on
both resource comparisons. Additional criteria plug in as named
predicates that can veto a pair without touching either rule.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Callable, Iterable

if TYPE_CHECKING:
    from .registry import Implementation, QuantumComputer
    from .transpile import TranspiledCircuit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectionRule:
    implementation_id: str
    parameter_name: str
    lower_bound: int
    upper_bound: int

    def __post_init__(self) -> None:
        if self.lower_bound > self.upper_bound:
            raise ValueError(
                f"rule for {self.implementation_id!r}: lower bound "
                f"{self.lower_bound} exceeds upper bound {self.upper_bound}"
            )


@dataclass(frozen=True)
class ExecutabilityFacts:
    provided_qubits: int      # q0: qubits of the QPU
    required_qubits: int      # q1: width of the transpiled circuit
    max_depth: int            # d0: depth budget of the QPU
    required_depth: int       # d1: depth of the transpiled circuit
    qpu_sdks: frozenset[str]
    implementation_sdk: str

    def __post_init__(self) -> None:
        for field_name in ("provided_qubits", "required_qubits", "max_depth", "required_depth"):
            if getattr(self, field_name) < 0:
                raise ValueError(f"{field_name} must be non-negative")
        if not self.implementation_sdk:
            raise ValueError("implementation_sdk must be non-empty")


def processable(n: int, rule: SelectionRule) -> bool:
    """Inclusive interval membership: lower <= n <= upper."""
    return rule.lower_bound <= n <= rule.upper_bound


def executable(facts: ExecutabilityFacts) -> bool:
    return (
        facts.provided_qubits >= facts.required_qubits
        and facts.max_depth >= facts.required_depth
        and facts.implementation_sdk in facts.qpu_sdks
    )


def filter_implementations(
    n: int, implementations: Iterable["Implementation"]
) -> list["Implementation"]:
    """Keep implementations whose rule accepts n, preserving order.

    Implementations without a rule are excluded with a logged warning:
    lacking a processability statement, they cannot claim to process n.
    """
    kept = []
    for impl in implementations:
        if impl.selection_rule is None:
            logger.warning(
                "implementation %s has no selection rule; excluded", impl.id
            )
            continue
        if processable(n, impl.selection_rule):
            kept.append(impl)
    return kept


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CriterionPlugin:
    """A named extra selection criterion; must be pure and deterministic."""

    name: str
    evaluate: Callable[
        ["Implementation", "QuantumComputer", "TranspiledCircuit"],
        tuple[Verdict, str],
    ]


@dataclass(frozen=True)
class PluginVerdict:
    name: str
    verdict: Verdict
    reason: str


def run_plugins(
    plugins: Iterable[CriterionPlugin],
    implementation: "Implementation",
    qpu: "QuantumComputer",
    transpiled: "TranspiledCircuit",
) -> tuple[PluginVerdict, ...]:
    """Evaluate every plugin in registration order.

    A plugin that raises yields a FAIL verdict carrying the error text;
    selection must keep going no matter how a criterion misbehaves.
    """
    verdicts = []
    for plugin in plugins:
        try:
            verdict, reason = plugin.evaluate(implementation, qpu, transpiled)
        except Exception as exc:  # noqa: BLE001 - plugin isolation
            verdict, reason = Verdict.FAIL, f"plugin error: {exc}"
        verdicts.append(PluginVerdict(plugin.name, verdict, reason))
    return tuple(verdicts)


def max_gate_count_plugin(limit: int) -> CriterionPlugin:
    """Reference criterion: veto transpiled circuits with too many gates."""

    def check(implementation, qpu, transpiled) -> tuple[Verdict, str]:
        count = len(transpiled.circuit.gates)
        if count <= limit:
            return Verdict.PASS, f"{count} gates within limit {limit}"
        return Verdict.FAIL, f"{count} gates exceed limit {limit}"

    return CriterionPlugin(name=f"max-gate-count<={limit}", evaluate=check)
