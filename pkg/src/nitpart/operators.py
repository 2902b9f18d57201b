"""Nit operators as integer diagonals and their prime-product context operator.

All arithmetic is exact (Python ints). A nit operator puts one prime per block
on the diagonal; multiplying k such operators built from disjoint primes gives
a context operator whose n^k entries are pairwise distinct, and each entry
factors back into exactly one block per partition.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from sympy import isprime, prime

from nitpart.errors import CompositionError, DecodeError, ParameterError, UnsupportedCase
from nitpart.partitions import NitSet, Partition


@dataclass(frozen=True)
class PrimeAssignment:
    """``primes[j][b]`` is the prime for block b of partition j."""

    primes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        primes = tuple(tuple(int(q) for q in row) for row in self.primes)
        object.__setattr__(self, "primes", primes)
        flat = [q for row in primes for q in row]
        bad = [q for q in flat if not isprime(q)]
        if bad:
            raise ParameterError(f"not prime: {bad}")
        if len(set(flat)) != len(flat):
            raise ParameterError(f"primes must be pairwise distinct across all partitions: {primes}")

    @classmethod
    def default(cls, n: int, k: int) -> PrimeAssignment:
        """First k*n primes, row-major: partition 1 gets the first n."""
        return cls(tuple(tuple(prime(j * n + b + 1) for b in range(n)) for j in range(k)))

    @classmethod
    def from_flat(cls, flat: Sequence[int], n: int, k: int) -> PrimeAssignment:
        if len(flat) != n * k:
            raise ParameterError(f"need {n * k} primes for n={n}, k={k}, got {len(flat)}")
        return cls(tuple(tuple(flat[j * n : (j + 1) * n]) for j in range(k)))

    @property
    def k(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class DiagonalOperator:
    entries: tuple[int, ...]
    partition: Partition | None = None
    primes: tuple[int, ...] | None = None

    def __len__(self):
        return len(self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": list(self.entries),
            "partition": [list(b) for b in self.partition] if self.partition is not None else None,
            "primes": list(self.primes) if self.primes is not None else None,
        }


@dataclass(frozen=True)
class ContextDiagonal:
    entries: tuple[int, ...]
    assignment: PrimeAssignment | None = None

    def __len__(self):
        return len(self.entries)


def nit_operator(p: Partition, primes: Sequence[int]) -> DiagonalOperator:
    """Diagonal with ``primes[b]`` at every state of block b."""
    primes = tuple(int(q) for q in primes)
    if len(primes) != len(p):
        raise ParameterError(f"{len(p)} blocks need {len(p)} primes, got {len(primes)}")
    if len(set(primes)) != len(primes):
        raise ParameterError(f"repeated primes: {primes}")
    sizes = {len(b) for b in p}
    if len(sizes) != 1:
        raise ParameterError(f"unbalanced partition, block sizes {sorted(sizes)}")
    N = sum(len(b) for b in p)
    entries = [0] * N
    for q, block in zip(primes, p):
        for s in block:
            if not 1 <= s <= N or entries[s - 1]:
                raise ParameterError(f"partition does not cover 1..{N} exactly once")
            entries[s - 1] = q
    return DiagonalOperator(tuple(entries), tuple(tuple(b) for b in p), primes)


def nit_operators(s: NitSet, assignment: PrimeAssignment | None = None) -> list[DiagonalOperator]:
    if assignment is None:
        assignment = PrimeAssignment.default(s.n, s.k)
    if assignment.k != len(s.partitions):
        raise ParameterError(f"assignment has {assignment.k} rows for {len(s.partitions)} partitions")
    return [nit_operator(p, qs) for p, qs in zip(s.partitions, assignment.primes)]


def context_operator(ops: Sequence[DiagonalOperator]) -> ContextDiagonal:
    if not ops:
        raise ParameterError("need at least one operator")
    N = len(ops[0])
    if any(len(op) != N for op in ops):
        raise ParameterError("operators differ in dimension")
    seen: dict[int, int] = {}
    for i, op in enumerate(ops):
        for q in set(op.entries):
            if q in seen:
                raise CompositionError(f"value {q} occurs in operators {seen[q] + 1} and {i + 1}")
            seen[q] = i
    entries = tuple(math.prod(col) for col in zip(*(op.entries for op in ops)))
    if len(set(entries)) != N:
        raise CompositionError("context entries are not pairwise distinct")
    assignment = None
    if all(op.primes is not None for op in ops):
        assignment = PrimeAssignment(tuple(op.primes for op in ops))
    return ContextDiagonal(entries, assignment)


def decode_outcome(value: int, assignment: PrimeAssignment) -> tuple[int, ...]:
    """0-based block per partition whose prime divides ``value``.

    ``value`` must be a product of exactly one prime per partition, each
    appearing once; anything else raises :class:`DecodeError`.
    """
    if value < 1:
        raise DecodeError(f"{value} is not a positive integer")
    rest = value
    out = []
    for j, row in enumerate(assignment.primes):
        hits = [b for b, q in enumerate(row) if value % q == 0]
        if len(hits) != 1:
            raise DecodeError(f"{value}: {len(hits)} primes of partition {j + 1} divide it, need exactly 1")
        q = row[hits[0]]
        if value % (q * q) == 0:
            raise DecodeError(f"{value}: prime {q} divides it more than once")
        rest //= q
        out.append(hits[0])
    if rest != 1:
        raise DecodeError(f"{value}: leftover factor {rest} outside the assignment")
    return tuple(out)


def state_of_outcome(outcome: Sequence[int], s: NitSet) -> int:
    """The single state in the intersection of the chosen blocks (0-based)."""
    if len(outcome) != len(s.partitions):
        raise ParameterError(f"need one block per partition ({len(s.partitions)}), got {len(outcome)}")
    inter: set[int] | None = None
    for p, b in zip(s.partitions, outcome):
        if not 0 <= b < len(p):
            raise ParameterError(f"block index {b} out of range")
        inter = set(p[b]) if inter is None else inter & set(p[b])
    if len(inter) != 1:
        raise ParameterError(f"blocks {tuple(outcome)} intersect in {sorted(inter)}, not a single state")
    return inter.pop()


def decode_table(context: ContextDiagonal, s: NitSet, assignment: PrimeAssignment) -> list[dict]:
    rows = []
    for value in context.entries:
        blocks = decode_outcome(value, assignment)
        rows.append({"value": value, "state": state_of_outcome(blocks, s), "blocks": [b + 1 for b in blocks]})
    return rows


def binary_projectors(s: NitSet) -> list[DiagonalOperator]:
    """0/1 diagonals marking block 1 of each partition. Only meaningful for
    n = 2, where the complement is the other block."""
    if s.n != 2:
        raise UnsupportedCase(
            f"binary projectors need n = 2, got n = {s.n}: substituting 1 and 0 for the "
            "primes only works in the binary case"
        )
    out = []
    for p in s.partitions:
        entries = [0] * s.params.N
        for x in p[0]:
            entries[x - 1] = 1
        out.append(DiagonalOperator(tuple(entries), p, (1, 0)))
    return out
