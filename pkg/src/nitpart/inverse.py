"""Conjugated nit operators for a prescribed orthonormal basis.

Given a unitary U whose columns are the target states, U D U^dagger has the
columns of U as eigenvectors with the entries of D as eigenvalues. Applied to
the k diagonal nit operators this yields k commuting observables separating
the target basis; their product is the conjugated context operator.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from nitpart.errors import ParameterError, ValidationError
from nitpart.operators import ContextDiagonal, DiagonalOperator, nit_operators
from nitpart.partitions import NitParams, canonical_nit_set

UNITARY_TOL = 1e-10
EIGEN_TOL = 1e-10
COMMUTATOR_TOL = 1e-10
READOUT_TOL = 1e-6

# floats are exact only up to 2**53
_EXACT_FLOAT_LIMIT = 2**53


@dataclass(frozen=True)
class UnitaryBasis:
    """Square complex matrix; column j is the target state |phi_{j+1}>."""

    matrix: np.ndarray
    tol: float = UNITARY_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ParameterError(f"unitary must be square, got shape {m.shape}")
        dev = unitarity_deviation(m)
        if dev > self.tol:
            raise ValidationError(f"matrix is not unitary: max |U U^dagger - I| = {dev:.3e}", deviation=dev)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def column(self, j: int) -> np.ndarray:
        return self.matrix[:, j]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> UnitaryBasis:
        entries = np.array(data["entries"], dtype=float)
        m = entries[..., 0] + 1j * entries[..., 1]
        if m.shape != (data["dim"], data["dim"]):
            raise ParameterError(f"entries have shape {m.shape[:2]}, dim says {data['dim']}")
        return cls(m)


def unitarity_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def _as_float_diagonal(d: DiagonalOperator | ContextDiagonal | Sequence[int]) -> np.ndarray:
    entries = d.entries if hasattr(d, "entries") else tuple(d)
    if any(abs(int(x)) >= _EXACT_FLOAT_LIMIT for x in entries):
        raise ParameterError("diagonal entries too large to represent exactly as floats")
    return np.array(entries, dtype=float)


def conjugated_nit_operators(U: UnitaryBasis, diagonals: Sequence[DiagonalOperator]) -> list[np.ndarray]:
    """U D U^dagger for every diagonal."""
    out = []
    for i, d in enumerate(diagonals, start=1):
        entries = _as_float_diagonal(d)
        if entries.size != U.dim:
            raise ParameterError(f"diagonal {i} has length {entries.size}, unitary has dim {U.dim}")
        out.append((U.matrix * entries) @ U.matrix.conj().T)
    return out


def build_w_basis() -> UnitaryBasis:
    """The 8x8 unitary whose second column is a W-type state; it mixes states
    2..4 and 5..7 and fixes states 1 and 8."""
    r2, r3, r6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
    block = np.array(
        [
            [1 / r3, -1 / r2, -1 / r6],
            [1 / r3, 0.0, 2 / r6],
            [1 / r3, 1 / r2, -1 / r6],
        ]
    )
    m = np.zeros((8, 8), dtype=complex)
    m[0, 0] = 1.0
    m[1:4, 1:4] = block
    m[4:7, 4:7] = block
    m[7, 7] = 1.0
    return UnitaryBasis(m, tol=1e-12)


def w_diagonals() -> list[DiagonalOperator]:
    """Bit operators for three particles with primes (2,3), (5,7), (11,13)."""
    return nit_operators(canonical_nit_set(NitParams(2, 3)))


def context_dense(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix product F_1 F_2 ... F_k."""
    if not ops:
        raise ParameterError("need at least one operator")
    shape = np.shape(ops[0])
    out = np.array(ops[0], dtype=complex)
    for i, op in enumerate(ops[1:], start=2):
        if np.shape(op) != shape:
            raise ParameterError(f"operator {i} has shape {np.shape(op)}, expected {shape}")
        out = out @ op
    return out


def commutator_max_entry(A: np.ndarray, B: np.ndarray) -> float:
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise ParameterError(f"shape mismatch {A.shape} vs {B.shape}")
    return float(np.max(np.abs(A @ B - B @ A)))


@dataclass
class Check:
    passed: bool
    worst: float | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"passed": self.passed, "worst_deviation": self.worst, "detail": self.detail}


@dataclass
class SeparationReport:
    """Outcome of :func:`verify_separation`.

    ``eigenvalues`` holds the integer readout <phi_j|C|phi_j> for each column
    (``None`` where it is not within the readout tolerance of an integer).
    """

    checks: dict[str, Check]
    eigenvalues: list[int | None]
    decode_table: list[dict]
    hermiticity: float
    cross_order_deviation: float
    operators: list[np.ndarray] = field(repr=False, default_factory=list)
    context: np.ndarray | None = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
            "context_eigenvalues": self.eigenvalues,
            "decode_table": self.decode_table,
            "max_hermiticity_deviation": self.hermiticity,
            "max_cross_order_deviation": self.cross_order_deviation,
        }


def _readout(x: complex) -> int | None:
    r = round(x.real)
    if abs(x - r) < READOUT_TOL:
        return int(r)
    return None


def verify_separation(U: UnitaryBasis, diagonals: Sequence[DiagonalOperator]) -> SeparationReport:
    """Check that the conjugated operators separate the columns of U.

    a. every column is a common eigenvector (eigenvalue = diagonal entry);
    b. the operators pairwise commute;
    c. the context eigenvalues are pairwise distinct;
    d. eigenvalue -> column is a bijection.
    """
    ops = conjugated_nit_operators(U, diagonals)
    floats = [_as_float_diagonal(d) for d in diagonals]
    N = U.dim

    eig_worst = 0.0
    for op, d in zip(ops, floats):
        for j in range(N):
            phi = U.column(j)
            eig_worst = max(eig_worst, float(np.max(np.abs(op @ phi - d[j] * phi))))
    eig = Check(eig_worst <= EIGEN_TOL, eig_worst, f"tolerance {EIGEN_TOL:g}")

    comm_worst = 0.0
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            comm_worst = max(comm_worst, commutator_max_entry(ops[a], ops[b]))
    comm = Check(comm_worst <= COMMUTATOR_TOL, comm_worst, f"tolerance {COMMUTATOR_TOL:g}")

    C = context_dense(ops)
    reverse = context_dense(ops[::-1])
    cross = float(np.max(np.abs(C - reverse)))
    readout_raw = [complex(U.column(j).conj() @ C @ U.column(j)) for j in range(N)]
    values = [_readout(x) for x in readout_raw]
    defect = max(abs(x - round(x.real)) for x in readout_raw)
    non_integer = [j + 1 for j, v in enumerate(values) if v is None]
    clean = [v for v in values if v is not None]
    dupes = sorted({v for v in clean if clean.count(v) > 1})
    distinct = Check(
        not non_integer and not dupes,
        defect,
        f"duplicates {dupes}" if dupes else (f"non-integer readout at columns {non_integer}" if non_integer else ""),
    )

    table = [{"value": v, "column": j + 1} for j, v in enumerate(values) if v is not None]
    bijective = len(table) == N and len({r["value"] for r in table}) == N
    bij = Check(bijective, None, "" if bijective else "eigenvalue -> column map is not one-to-one")

    herm = max(float(np.max(np.abs(op - op.conj().T))) for op in ops)
    return SeparationReport(
        checks={"common_eigenvectors": eig, "commuting": comm, "distinct_eigenvalues": distinct, "decode_bijection": bij},
        eigenvalues=values,
        decode_table=table,
        hermiticity=herm,
        cross_order_deviation=cross,
        operators=ops,
        context=C,
    )
