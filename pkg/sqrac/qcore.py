"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from common.exceptions import InvalidParameterException

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

ALLOWED_DIMENSIONS = (2, 4)
STATE_TOLERANCE = 1e-12
EIGENVALUE_TOLERANCE = 1e-10


def as_matrix(values, dimension: Optional[int] = None) -> np.ndarray:
    """
    Coerces input into a complex square matrix of dimension 2 or 4.
    """
    matrix = np.asarray(values, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] not in ALLOWED_DIMENSIONS:
        raise InvalidParameterException(uid='matrix', message=f'unsupported shape {matrix.shape}')
    if dimension is not None and matrix.shape[0] != dimension:
        raise InvalidParameterException(uid='matrix', message=f'expected dimension {dimension}, got {matrix.shape[0]}')
    return matrix


def dagger(matrix: np.ndarray) -> np.ndarray:
    return matrix.conj().T


def is_hermitian(matrix: np.ndarray, tolerance: float = STATE_TOLERANCE) -> bool:
    return bool(np.allclose(matrix, dagger(matrix), rtol=0, atol=tolerance))


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(as_matrix(matrix))


def hermitian_eigen_decomposition(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.linalg.eigh(as_matrix(matrix))


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def to_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, values) -> 'BlochVector':
        return cls(x=float(values[0]), y=float(values[1]), z=float(values[2]))

    @classmethod
    def in_xz_plane(cls, angle: float) -> 'BlochVector':
        """
        Unit vector cos(angle) x + sin(angle) z.
        """
        return cls(x=math.cos(angle), y=0.0, z=math.sin(angle))

    def is_physical(self) -> bool:
        return self.norm <= 1 + STATE_TOLERANCE

    def dot(self, other: 'BlochVector') -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> 'BlochVector':
        return BlochVector(x=-self.x, y=-self.y, z=-self.z)

    def __sub__(self, other: 'BlochVector') -> 'BlochVector':
        return BlochVector(x=self.x - other.x, y=self.y - other.y, z=self.z - other.z)

    def __add__(self, other: 'BlochVector') -> 'BlochVector':
        return BlochVector(x=self.x + other.x, y=self.y + other.y, z=self.z + other.z)

    def scaled(self, factor: float) -> 'BlochVector':
        return BlochVector(x=factor * self.x, y=factor * self.y, z=factor * self.z)

    def sigma(self) -> np.ndarray:
        """
        The operator v·σ.
        """
        return self.x * SIGMA_X + self.y * SIGMA_Y + self.z * SIGMA_Z


def pauli_expand(vector: BlochVector) -> np.ndarray:
    return (IDENTITY + vector.sigma()) / 2


def bloch_vector(matrix: np.ndarray) -> BlochVector:
    """
    Bloch vector of a 2x2 operator normalised to unit trace.
    """
    matrix = as_matrix(matrix, dimension=2)
    trace = np.trace(matrix).real
    if abs(trace) < STATE_TOLERANCE:
        raise InvalidParameterException(uid='bloch_vector', message='operator has vanishing trace')
    return BlochVector(
        x=float(np.trace(matrix @ SIGMA_X).real / trace),
        y=float(np.trace(matrix @ SIGMA_Y).real / trace),
        z=float(np.trace(matrix @ SIGMA_Z).real / trace),
    )


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(as_matrix(a, dimension=2), as_matrix(b, dimension=2))


def partial_trace(matrix: np.ndarray, keep: int) -> np.ndarray:
    """
    Reduces a two-qubit operator to qubit `keep` (0 = first factor, 1 = second factor).
    """
    if keep not in (0, 1):
        raise InvalidParameterException(uid='partial_trace', message=f'invalid subsystem {keep}')
    blocks = as_matrix(matrix, dimension=4).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum('ijkj->ik', blocks)
    return np.einsum('ijil->jl', blocks)


def expectation(operator: np.ndarray, matrix: np.ndarray) -> float:
    return float(np.trace(operator @ matrix).real)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    matrix: np.ndarray

    def __post_init__(self):
        matrix = as_matrix(np.array(self.matrix, dtype=complex), dimension=4)
        if abs(np.trace(matrix) - 1) > STATE_TOLERANCE:
            raise InvalidParameterException(uid='state', message=f'trace {np.trace(matrix).real} differs from 1')
        if not is_hermitian(matrix):
            raise InvalidParameterException(uid='state', message='matrix is not hermitian')
        if hermitian_eigenvalues(matrix).min() < -EIGENVALUE_TOLERANCE:
            raise InvalidParameterException(uid='state', message='matrix has negative eigenvalues')
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def reduced(self, keep: int) -> np.ndarray:
        return partial_trace(self.matrix, keep)

    def expectation(self, operator: np.ndarray) -> float:
        return expectation(as_matrix(operator, dimension=4), self.matrix)


def max_entangled_state() -> TwoQubitState:
    ket = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    return TwoQubitState(matrix=np.outer(ket, ket.conj()))
