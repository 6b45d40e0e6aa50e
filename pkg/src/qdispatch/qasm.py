"""Parser and renderer for the circuit text format.

The format is a small OpenQASM-2-style subset (see docs/circuit-format.md
for the exact grammar): a single `qreg <id>[<n>];` header, then one gate
statement per `;`. Gate names are lowercase catalog names, angle
parameters are decimal literals in parentheses, operands are
`<reg>[<index>]` separated by commas. `//` starts a line comment.
Anything outside that grammar is a parse error, never silently skipped.
"""
from __future__ import annotations

import re

from .circuit import CircuitError, GateApplication, QuantumCircuit
from .gates import GateKind, kind_from_name


class ParseError(CircuitError):
    """Syntax or validity error in circuit text, with source location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*)
  | (?P<number>[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<punct>[\[\](),;])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append((kind, m.group(), line, m.start() - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
        pos = m.end()
    return tokens


class _Cursor:
    def __init__(self, tokens: list[tuple[str, str, int, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> tuple[str, str, int, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def loc(self) -> tuple[int, int]:
        if self.i < len(self.tokens):
            tok = self.tokens[self.i]
            return tok[2], tok[3]
        if self.tokens:
            tok = self.tokens[-1]
            return tok[2], tok[3] + len(tok[1])
        return 1, 1

    def take(self, kind: str, text: str | None = None, what: str = "") -> tuple[str, str, int, int]:
        tok = self.peek()
        expected = what or (repr(text) if text else kind)
        if tok is None:
            line, col = self.loc()
            raise ParseError(f"expected {expected}, found end of input", line, col)
        if tok[0] != kind or (text is not None and tok[1] != text):
            raise ParseError(f"expected {expected}, found {tok[1]!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def take_uint(self, what: str) -> int:
        tok = self.take("number", what=what)
        if not tok[1].isdigit():
            raise ParseError(f"expected {what}, found {tok[1]!r}", tok[2], tok[3])
        return int(tok[1])


def parse_circuit(text: str, name: str = "circuit") -> QuantumCircuit:
    """Parse circuit text into a validated circuit."""
    cur = _Cursor(_tokenize(text))
    cur.take("ident", "qreg", what="'qreg' header")
    register = cur.take("ident", what="register name")[1]
    cur.take("punct", "[")
    size = cur.take_uint("register size")
    cur.take("punct", "]")
    cur.take("punct", ";")
    if size < 1:
        raise ParseError("register size must be at least 1", 1, 1)

    gates: list[GateApplication] = []
    measured: set[int] = set()
    while cur.peek() is not None:
        tok = cur.take("ident", what="gate name")
        gname, gline, gcol = tok[1], tok[2], tok[3]
        if gname == "qreg":
            raise ParseError("only one qreg declaration is allowed", gline, gcol)
        try:
            kind = kind_from_name(gname)
        except KeyError:
            raise ParseError(f"unknown gate {gname!r}", gline, gcol) from None

        params: list[float] = []
        nxt = cur.peek()
        if nxt is not None and nxt[1] == "(":
            cur.take("punct", "(")
            while True:
                ptok = cur.take("number", what="angle literal")
                params.append(float(ptok[1]))
                if cur.peek() is not None and cur.peek()[1] == ",":
                    cur.take("punct", ",")
                    continue
                break
            cur.take("punct", ")")

        operands: list[int] = []
        while True:
            rtok = cur.take("ident", what="operand register")
            if rtok[1] != register:
                raise ParseError(
                    f"unknown register {rtok[1]!r} (declared: {register!r})",
                    rtok[2], rtok[3],
                )
            cur.take("punct", "[")
            itok_loc = cur.loc()
            index = cur.take_uint("qubit index")
            cur.take("punct", "]")
            if index >= size:
                raise ParseError(
                    f"qubit index {index} out of range for {register}[{size}]",
                    itok_loc[0], itok_loc[1],
                )
            operands.append(index)
            if cur.peek() is not None and cur.peek()[1] == ",":
                cur.take("punct", ",")
                continue
            break
        cur.take("punct", ";")

        if len(params) != kind.param_count:
            raise ParseError(
                f"{gname} takes {kind.param_count} parameter(s), got {len(params)}",
                gline, gcol,
            )
        if len(operands) != kind.arity:
            raise ParseError(
                f"{gname} takes {kind.arity} operand(s), got {len(operands)}",
                gline, gcol,
            )
        if len(set(operands)) != len(operands):
            raise ParseError(f"duplicate operands {tuple(operands)}", gline, gcol)
        for q in operands:
            if q in measured:
                raise ParseError(
                    f"qubit {q} is used after being measured", gline, gcol
                )
        if kind is GateKind.MEASURE:
            measured.add(operands[0])
        gates.append(GateApplication(kind, tuple(operands), tuple(params)))

    return QuantumCircuit(name=name, num_qubits=size, gates=tuple(gates))


def render_circuit(circuit: QuantumCircuit, register: str = "q") -> str:
    """Canonical text form; parse_circuit(render_circuit(c)) == c."""
    lines = [f"qreg {register}[{circuit.num_qubits}];"]
    for gate in circuit.gates:
        params = f"({', '.join(repr(p) for p in gate.params)})" if gate.params else ""
        operands = ", ".join(f"{register}[{q}]" for q in gate.operands)
        lines.append(f"{gate.kind.value}{params} {operands};")
    return "\n".join(lines) + "\n"
