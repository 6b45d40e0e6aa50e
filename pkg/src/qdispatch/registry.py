"""File-backed catalog of algorithms, implementations, QPUs, and SDKs.

A registry root holds one JSON document per entity under `algorithms/`,
`implementations/`, `qpus/`, and `sdks/`, plus optional `gatesets/` and
circuit text files (see docs/registry-format.md for the exact schemas).
Loading is all-or-nothing: every cross-reference must resolve, every
circuit must parse, every gate set and coupling map must validate.
`validate_registry` runs the same checks but reports all findings
instead of aborting on the first.

The depth budget of a QPU (the d0 consumed by the executability rule) is
derived here: floor(decoherence_time_us / layer_time_us). It is a
deliberately simple model, isolated in max_depth so a richer estimator
can replace it.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .circuit import CircuitError, GateApplication, QuantumCircuit
from .decompose import DecompositionError, DecompositionRule, DecompositionTable, default_table
from .gates import GateKind, kind_from_name
from .gateset import CouplingError, CouplingMap, GateSetError, NativeGateSet
from .qasm import parse_circuit
from .rules import SelectionRule


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class RegistryError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        lines = "\n".join(f"  - {d}" for d in diagnostics)
        super().__init__(f"registry failed to load:\n{lines}")


@dataclass(frozen=True)
class AlgorithmParameter:
    name: str
    type: str
    description: str = ""


@dataclass(frozen=True)
class Algorithm:
    id: str
    name: str
    description: str = ""
    parameters: tuple[AlgorithmParameter, ...] = ()


@dataclass(frozen=True)
class Implementation:
    id: str
    algorithm_id: str
    sdk: str
    circuit: QuantumCircuit | None = None
    generator: str | None = None
    selection_rule: SelectionRule | None = None

    def circuit_for(self, inputs: dict[str, int]) -> QuantumCircuit:
        """Materialize the circuit, running the generator for dynamic ones."""
        if self.circuit is not None:
            return self.circuit
        build = GENERATORS[self.generator]
        built = build(inputs)
        return QuantumCircuit(self.id, built.num_qubits, built.gates)


@dataclass(frozen=True)
class QuantumComputer:
    id: str
    vendor: str
    num_qubits: int
    gate_set: NativeGateSet
    coupling: CouplingMap
    decoherence_time_us: float
    layer_time_us: float
    sdks: frozenset[str]


@dataclass(frozen=True)
class Sdk:
    id: str
    vendor: str
    description: str = ""


def max_depth(qpu: QuantumComputer) -> int:
    """Depth budget d0: how many layers fit into the decoherence window."""
    return math.floor(qpu.decoherence_time_us / qpu.layer_time_us)


def _ghz(inputs: dict[str, int]) -> QuantumCircuit:
    """Entangled chain on n qubits, all measured."""
    n = inputs["n"]
    if n < 1:
        raise ValueError(f"ghz generator needs n >= 1, got {n}")
    gates = [GateApplication(GateKind.H, (0,))]
    gates += [GateApplication(GateKind.CX, (q, q + 1)) for q in range(n - 1)]
    gates += [GateApplication(GateKind.MEASURE, (q,)) for q in range(n)]
    return QuantumCircuit(f"ghz-{n}", n, tuple(gates))


GENERATORS: dict[str, Callable[[dict[str, int]], QuantumCircuit]] = {
    "ghz": _ghz,
}


@dataclass(frozen=True)
class Registry:
    algorithms: tuple[Algorithm, ...]
    implementations: tuple[Implementation, ...]
    qpus: tuple[QuantumComputer, ...]
    sdks: tuple[Sdk, ...]
    gate_sets: tuple[NativeGateSet, ...] = ()
    decomposition_table: DecompositionTable = field(
        default_factory=default_table, compare=False
    )
    raw_documents: dict[str, dict[str, dict]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def algorithm(self, algorithm_id: str) -> Algorithm:
        return self._get("algorithm", self.algorithms, algorithm_id)

    def implementation(self, implementation_id: str) -> Implementation:
        return self._get("implementation", self.implementations, implementation_id)

    def qpu(self, qpu_id: str) -> QuantumComputer:
        return self._get("qpu", self.qpus, qpu_id)

    def sdk(self, sdk_id: str) -> Sdk:
        return self._get("sdk", self.sdks, sdk_id)

    def implementations_for(self, algorithm_id: str) -> tuple[Implementation, ...]:
        return tuple(i for i in self.implementations if i.algorithm_id == algorithm_id)

    @staticmethod
    def _get(kind: str, entities, entity_id: str):
        for entity in entities:
            if entity.id == entity_id:
                return entity
        raise KeyError(f"unknown {kind} {entity_id!r}")


_REQUIRED_DIRS = ("algorithms", "implementations", "qpus", "sdks")

_SCHEMAS = {
    "algorithm": {"id", "name", "description", "parameters", "parameterless"},
    "implementation": {"id", "algorithm", "sdk", "circuit", "generator", "rule", "description"},
    "qpu": {
        "id", "vendor", "qubits", "gateset", "coupling",
        "decoherence_us", "layer_time_us", "sdks", "description",
    },
    "sdk": {"id", "vendor", "description"},
    "gateset": {"name", "basis", "rules", "description"},
}


class _Scan:
    """One pass over a registry root, collecting diagnostics instead of raising."""

    def __init__(self, root: Path):
        self.root = root
        self.diagnostics: list[Diagnostic] = []
        self._docs: dict[str, list[tuple[Path, dict]]] = {}

    def report(self, path: Path | str, message: str) -> None:
        shown = str(path.relative_to(self.root)) if isinstance(path, Path) else path
        self.diagnostics.append(Diagnostic(shown, message))

    def documents(self, directory: str) -> list[tuple[Path, dict]]:
        if directory in self._docs:
            return self._docs[directory]
        folder = self.root / directory
        docs: list[tuple[Path, dict]] = []
        if not folder.is_dir():
            if directory in _REQUIRED_DIRS:
                self.report(directory, "required registry directory is missing")
            self._docs[directory] = docs
            return docs
        for path in sorted(folder.glob("*.json")):
            try:
                doc = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                self.report(path, f"unreadable JSON: {exc}")
                continue
            if not isinstance(doc, dict):
                self.report(path, "document must be a JSON object")
                continue
            docs.append((path, doc))
        self._docs[directory] = docs
        return docs

    def check_keys(self, path: Path, doc: dict, kind: str) -> bool:
        unknown = set(doc) - _SCHEMAS[kind]
        if unknown:
            self.report(path, f"unknown field(s) {sorted(unknown)} in {kind} document")
            return False
        return True

    def field(self, path: Path, doc: dict, name: str, expected: type, default=None):
        if name not in doc:
            if default is not None:
                return default
            self.report(path, f"missing required field {name!r}")
            return None
        value = doc[name]
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, expected) or isinstance(value, bool):
            self.report(path, f"field {name!r} must be {expected.__name__}")
            return None
        return value


def _scan(root: Path) -> tuple[Registry | None, list[Diagnostic]]:
    scan = _Scan(root)
    if not root.is_dir():
        scan.report(str(root), "registry root is not a directory")
        return None, scan.diagnostics

    sdks = _load_sdks(scan)
    gate_sets, extra_rules = _load_gatesets(scan)
    algorithms = _load_algorithms(scan)
    qpus = _load_qpus(scan, gate_sets, sdks)
    implementations = _load_implementations(scan, algorithms, sdks)

    if scan.diagnostics:
        return None, scan.diagnostics

    table = default_table()
    if extra_rules:
        table = table.with_extra(extra_rules)
    raw = {
        kind: {doc["id"]: doc for _, doc in scan.documents(kind + "s")}
        for kind in ("algorithm", "implementation", "qpu", "sdk")
    }
    registry = Registry(
        algorithms=tuple(sorted(algorithms.values(), key=lambda a: a.id)),
        implementations=tuple(sorted(implementations.values(), key=lambda i: i.id)),
        qpus=tuple(sorted(qpus.values(), key=lambda q: q.id)),
        sdks=tuple(sorted(sdks.values(), key=lambda s: s.id)),
        gate_sets=tuple(sorted(gate_sets.values(), key=lambda g: g.name)),
        decomposition_table=table,
        raw_documents=raw,
    )
    return registry, []


def _unique_id(scan: _Scan, path: Path, doc: dict, seen: dict, kind: str, key: str = "id") -> str | None:
    entity_id = scan.field(path, doc, key, str)
    if entity_id is None:
        return None
    if entity_id in seen:
        scan.report(path, f"duplicate {kind} {key} {entity_id!r}")
        return None
    return entity_id


def _load_sdks(scan: _Scan) -> dict[str, Sdk]:
    sdks: dict[str, Sdk] = {}
    for path, doc in scan.documents("sdks"):
        if not scan.check_keys(path, doc, "sdk"):
            continue
        sdk_id = _unique_id(scan, path, doc, sdks, "sdk")
        vendor = scan.field(path, doc, "vendor", str)
        if sdk_id is None or vendor is None:
            continue
        sdks[sdk_id] = Sdk(sdk_id, vendor, doc.get("description", ""))
    return sdks


def _load_gatesets(scan: _Scan) -> tuple[dict[str, NativeGateSet], list[DecompositionRule]]:
    gate_sets: dict[str, NativeGateSet] = {}
    extra_rules: list[DecompositionRule] = []
    for path, doc in scan.documents("gatesets"):
        if not scan.check_keys(path, doc, "gateset"):
            continue
        name = _unique_id(scan, path, doc, gate_sets, "gateset", key="name")
        basis_names = scan.field(path, doc, "basis", list)
        if name is None or basis_names is None:
            continue
        basis = set()
        for entry in basis_names:
            try:
                basis.add(kind_from_name(entry))
            except (KeyError, TypeError):
                scan.report(path, f"unknown gate {entry!r} in basis")
        gate_set = NativeGateSet(name, frozenset(basis))
        try:
            gate_set.validate()
        except GateSetError as exc:
            scan.report(path, str(exc))
            continue
        for rule_doc in doc.get("rules", []):
            try:
                extra_rules.append(DecompositionRule.from_document(rule_doc))
            except (DecompositionError, KeyError, SyntaxError, TypeError) as exc:
                scan.report(path, f"bad decomposition rule: {exc}")
        gate_sets[name] = gate_set
    return gate_sets, extra_rules


def _load_algorithms(scan: _Scan) -> dict[str, Algorithm]:
    algorithms: dict[str, Algorithm] = {}
    for path, doc in scan.documents("algorithms"):
        if not scan.check_keys(path, doc, "algorithm"):
            continue
        algo_id = _unique_id(scan, path, doc, algorithms, "algorithm")
        name = scan.field(path, doc, "name", str)
        raw_params = scan.field(path, doc, "parameters", list, default=[])
        if algo_id is None or name is None or raw_params is None:
            continue
        parameters = []
        for entry in raw_params:
            if not isinstance(entry, dict) or "name" not in entry:
                scan.report(path, f"malformed parameter entry {entry!r}")
                continue
            ptype = entry.get("type", "integer")
            if ptype != "integer":
                scan.report(path, f"unsupported parameter type {ptype!r}")
                continue
            parameters.append(
                AlgorithmParameter(entry["name"], ptype, entry.get("description", ""))
            )
        if not parameters and not doc.get("parameterless", False):
            scan.report(
                path, "algorithm declares no parameters and is not marked parameterless"
            )
            continue
        algorithms[algo_id] = Algorithm(
            algo_id, name, doc.get("description", ""), tuple(parameters)
        )
    return algorithms


def _load_qpus(
    scan: _Scan, gate_sets: dict[str, NativeGateSet], sdks: dict[str, Sdk]
) -> dict[str, QuantumComputer]:
    qpus: dict[str, QuantumComputer] = {}
    for path, doc in scan.documents("qpus"):
        if not scan.check_keys(path, doc, "qpu"):
            continue
        qpu_id = _unique_id(scan, path, doc, qpus, "qpu")
        vendor = scan.field(path, doc, "vendor", str)
        qubits = scan.field(path, doc, "qubits", int)
        gateset_name = scan.field(path, doc, "gateset", str)
        coupling_doc = scan.field(path, doc, "coupling", dict)
        decoherence = scan.field(path, doc, "decoherence_us", float)
        layer_time = scan.field(path, doc, "layer_time_us", float)
        sdk_names = scan.field(path, doc, "sdks", list)
        if None in (qpu_id, vendor, qubits, gateset_name, coupling_doc, decoherence, layer_time, sdk_names):
            continue
        ok = True
        if gateset_name not in gate_sets:
            scan.report(path, f"unknown gateset {gateset_name!r}")
            ok = False
        for sdk_name in sdk_names:
            if sdk_name not in sdks:
                scan.report(path, f"unknown sdk {sdk_name!r}")
                ok = False
        if not sdk_names:
            scan.report(path, "qpu must support at least one sdk")
            ok = False
        if qubits < 1:
            scan.report(path, f"qubit count must be positive, got {qubits}")
            ok = False
        if decoherence <= 0 or layer_time <= 0:
            scan.report(path, "decoherence_us and layer_time_us must be positive")
            ok = False
        coupling = None
        if ok:
            try:
                coupling = CouplingMap.from_pairs(qubits, coupling_doc.get("edges", []))
                coupling.validate()
            except (CouplingError, TypeError, ValueError) as exc:
                scan.report(path, str(exc))
                ok = False
        if not ok:
            continue
        qpus[qpu_id] = QuantumComputer(
            id=qpu_id,
            vendor=vendor,
            num_qubits=qubits,
            gate_set=gate_sets[gateset_name],
            coupling=coupling,
            decoherence_time_us=decoherence,
            layer_time_us=layer_time,
            sdks=frozenset(sdk_names),
        )
    return qpus


def _load_implementations(
    scan: _Scan, algorithms: dict[str, Algorithm], sdks: dict[str, Sdk]
) -> dict[str, Implementation]:
    implementations: dict[str, Implementation] = {}
    for path, doc in scan.documents("implementations"):
        if not scan.check_keys(path, doc, "implementation"):
            continue
        impl_id = _unique_id(scan, path, doc, implementations, "implementation")
        algorithm_id = scan.field(path, doc, "algorithm", str)
        sdk_name = scan.field(path, doc, "sdk", str)
        if None in (impl_id, algorithm_id, sdk_name):
            continue
        ok = True
        if algorithm_id not in algorithms:
            scan.report(path, f"unknown algorithm {algorithm_id!r}")
            ok = False
        if sdk_name not in sdks:
            scan.report(path, f"unknown sdk {sdk_name!r}")
            ok = False

        circuit = None
        generator = None
        if ("circuit" in doc) == ("generator" in doc):
            scan.report(path, "exactly one of 'circuit' or 'generator' is required")
            ok = False
        elif "generator" in doc:
            generator = doc["generator"]
            if generator not in GENERATORS:
                scan.report(path, f"unknown generator {generator!r}")
                ok = False
        else:
            source = doc["circuit"]
            if not isinstance(source, str):
                scan.report(path, "field 'circuit' must be a string")
                ok = False
            else:
                if ";" not in source:  # relative path, not inline text
                    circuit_path = scan.root / source
                    try:
                        source = circuit_path.read_text()
                    except OSError:
                        scan.report(path, f"circuit file {doc['circuit']!r} is unreadable")
                        ok = False
                if ok:
                    try:
                        circuit = parse_circuit(source, name=impl_id)
                    except CircuitError as exc:
                        scan.report(path, f"circuit does not parse: {exc}")
                        ok = False

        rule = None
        if "rule" in doc:
            rule_doc = doc["rule"]
            keys_ok = isinstance(rule_doc, dict) and set(rule_doc) == {"parameter", "min", "max"}
            if not keys_ok:
                scan.report(path, "rule must be {parameter, min, max}")
                ok = False
            else:
                try:
                    rule = SelectionRule(
                        implementation_id=impl_id,
                        parameter_name=rule_doc["parameter"],
                        lower_bound=int(rule_doc["min"]),
                        upper_bound=int(rule_doc["max"]),
                    )
                except (TypeError, ValueError) as exc:
                    scan.report(path, f"bad rule: {exc}")
                    ok = False
            if rule is not None and algorithm_id in algorithms:
                declared = {p.name for p in algorithms[algorithm_id].parameters}
                if rule.parameter_name not in declared:
                    scan.report(
                        path,
                        f"rule parameter {rule.parameter_name!r} is not declared by "
                        f"algorithm {algorithm_id!r}",
                    )
                    ok = False
        if not ok:
            continue
        implementations[impl_id] = Implementation(
            id=impl_id,
            algorithm_id=algorithm_id,
            sdk=sdk_name,
            circuit=circuit,
            generator=generator,
            selection_rule=rule,
        )
    return implementations


def validate_registry(root: str | Path) -> list[Diagnostic]:
    """All invariant violations and dangling references, without aborting."""
    _, diagnostics = _scan(Path(root))
    return diagnostics


def load_registry(root: str | Path) -> Registry:
    """Load and validate a registry; raises RegistryError listing every problem."""
    registry, diagnostics = _scan(Path(root))
    if diagnostics:
        raise RegistryError(diagnostics)
    return registry
