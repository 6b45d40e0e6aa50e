"""Gate catalog: the fixed set of gate kinds and their matrices.

Every circuit in this package is built from this catalog. Each kind has a
fixed arity (qubit operand count) and a fixed number of real angle
parameters. Matrix conventions:

- single-qubit matrices act on (|0>, |1>),
- multi-qubit matrices index basis states big-endian in operand order,
  i.e. operand 0 is the most significant bit of the local index (CX with
  operands (control, target) maps |10> -> |11>).
"""
from __future__ import annotations

from enum import Enum
from math import cos, pi, sin

import numpy as np

_SQRT2_INV = 1 / np.sqrt(2)


class GateKind(Enum):
    """Universal gate catalog (plus terminal measurement)."""

    I = "i"
    X = "x"
    Y = "y"
    Z = "z"
    H = "h"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    SX = "sx"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    U3 = "u3"
    CX = "cx"
    CZ = "cz"
    SWAP = "swap"
    CCX = "ccx"
    MEASURE = "measure"

    @property
    def arity(self) -> int:
        if self in (GateKind.CX, GateKind.CZ, GateKind.SWAP):
            return 2
        if self is GateKind.CCX:
            return 3
        return 1

    @property
    def param_count(self) -> int:
        if self in (GateKind.RX, GateKind.RY, GateKind.RZ):
            return 1
        if self is GateKind.U3:
            return 3
        return 0

    @property
    def is_entangling(self) -> bool:
        """SWAP permutes but never entangles; CX and CZ do."""
        return self in (GateKind.CX, GateKind.CZ)


_BY_NAME = {kind.value: kind for kind in GateKind}


def kind_from_name(name: str) -> GateKind:
    """Resolve a lowercase gate name; raises KeyError for unknown names."""
    return _BY_NAME[name]


_FIXED_1Q = {
    GateKind.I: np.eye(2, dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * pi / 4)]], dtype=complex),
    GateKind.SX: np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2,
}

_FIXED_2Q = {
    GateKind.CX: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def _ccx_matrix() -> np.ndarray:
    m = np.eye(8, dtype=complex)
    m[[6, 7]] = m[[7, 6]]
    return m


def gate_matrix(kind: GateKind, params: tuple[float, ...] = ()) -> np.ndarray:
    """Unitary of a single gate application, in the conventions above.

    MEASURE has no matrix; asking for one is an error.
    """
    if kind is GateKind.MEASURE:
        raise ValueError("measure has no unitary matrix")
    if len(params) != kind.param_count:
        raise ValueError(
            f"{kind.value} takes {kind.param_count} parameter(s), got {len(params)}"
        )
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind].copy()
    if kind in _FIXED_2Q:
        return _FIXED_2Q[kind].copy()
    if kind is GateKind.CCX:
        return _ccx_matrix()
    if kind is GateKind.RX:
        (t,) = params
        return np.array(
            [[cos(t / 2), -1j * sin(t / 2)], [-1j * sin(t / 2), cos(t / 2)]],
            dtype=complex,
        )
    if kind is GateKind.RY:
        (t,) = params
        return np.array(
            [[cos(t / 2), -sin(t / 2)], [sin(t / 2), cos(t / 2)]], dtype=complex
        )
    if kind is GateKind.RZ:
        (t,) = params
        return np.array(
            [[np.exp(-1j * t / 2), 0], [0, np.exp(1j * t / 2)]], dtype=complex
        )
    if kind is GateKind.U3:
        t, p, l = params
        return np.array(
            [
                [cos(t / 2), -np.exp(1j * l) * sin(t / 2)],
                [np.exp(1j * p) * sin(t / 2), np.exp(1j * (p + l)) * cos(t / 2)],
            ],
            dtype=complex,
        )
    raise ValueError(f"no matrix for {kind}")  # pragma: no cover
