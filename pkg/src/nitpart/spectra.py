"""Block eigenstates and their Schmidt ranks.

Amplitude vectors are plain complex numpy arrays indexed by state - 1, with
the lexicographic product ordering used everywhere in the package.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from nitpart.errors import ParameterError
from nitpart.partitions import NitSet

DEFAULT_TOL = 1e-8


def block_representative_state(block: Iterable[int], N: int) -> np.ndarray:
    """Uniform superposition of the basis states in ``block``."""
    block = sorted(set(block))
    if not block:
        raise ParameterError("empty block")
    if block[0] < 1 or block[-1] > N:
        raise ParameterError(f"block {block} not inside 1..{N}")
    v = np.zeros(N, dtype=complex)
    v[np.array(block) - 1] = 1.0 / np.sqrt(len(block))
    return v


def schmidt_rank(v: np.ndarray, dims: tuple[int, int], tol: float = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol`` times the largest, for the
    amplitude matrix of shape ``dims`` (first factor indexes rows)."""
    v = np.asarray(v, dtype=complex)
    left, right = dims
    if left * right != v.size:
        raise ParameterError(f"dims {left}x{right} do not match vector length {v.size}")
    sv = np.linalg.svd(v.reshape(left, right), compute_uv=False)
    if sv[0] == 0:
        raise ParameterError("zero vector has no Schmidt decomposition")
    return int(np.count_nonzero(sv > tol * sv[0]))


def single_factor_ranks(v: np.ndarray, factor_dims: Sequence[int], tol: float = DEFAULT_TOL) -> list[int]:
    """Schmidt rank of each factor against the rest, in factor order."""
    v = np.asarray(v, dtype=complex)
    factor_dims = [int(d) for d in factor_dims]
    if int(np.prod(factor_dims)) != v.size:
        raise ParameterError(f"factor dims {factor_dims} do not match vector length {v.size}")
    if len(factor_dims) < 2:
        return []
    tensor = v.reshape(factor_dims)
    ranks = []
    for j, d in enumerate(factor_dims):
        moved = np.moveaxis(tensor, j, 0).reshape(d, -1)
        ranks.append(schmidt_rank(moved.ravel(), (d, v.size // d), tol))
    return ranks


def is_product_state(v: np.ndarray, factor_dims: Sequence[int], tol: float = DEFAULT_TOL) -> bool:
    """Fully factorizes iff every single factor has Schmidt rank 1 against the
    rest. A single factor counts as product."""
    return all(r == 1 for r in single_factor_ranks(v, factor_dims, tol))


@dataclass
class BlockReport:
    partition: int
    block: int
    states: tuple[int, ...]
    representative: np.ndarray
    schmidt_ranks: list[int]
    product: bool

    def to_dict(self) -> dict:
        return {
            "partition": self.partition,
            "block": self.block,
            "states": list(self.states),
            "schmidt_ranks": list(self.schmidt_ranks),
            "product": self.product,
        }


def classify_nit_set_eigenstates(s: NitSet, tol: float = DEFAULT_TOL) -> list[BlockReport]:
    """Representative of every block (1-based partition/block numbers) and
    whether it is a product state of the k particles."""
    dims = [s.n] * s.k
    out = []
    for j, p in enumerate(s.partitions, start=1):
        for b, block in enumerate(p, start=1):
            v = block_representative_state(block, s.params.N)
            ranks = single_factor_ranks(v, dims, tol)
            out.append(BlockReport(j, b, tuple(block), v, ranks, all(r == 1 for r in ranks)))
    return out
