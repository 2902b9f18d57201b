"""Nit sets: families of k balanced partitions of the product states {1..n^k}.

States are 1-based. State ``s`` is the lexicographically ordered product
state whose particle-j outcome is digit j (most significant first) of
``s - 1`` written in base n.

A partition is a tuple of blocks, a block a tuple of state indices. A
:class:`NitSet` is compared by its canonical form, in which blocks are sorted,
ordered by their minimum, and the partitions are ordered by their flattened
block lists. Families are therefore unordered and blocks unlabeled.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from nitpart.errors import BudgetExceeded, ParameterError, ParseError

Block = tuple[int, ...]
Partition = tuple[Block, ...]

DEFAULT_BUDGET = 40_000_000
_CHUNK = 40_320


@dataclass(frozen=True)
class NitParams:
    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise ParameterError(f"n and k must be integers, got n={self.n!r}, k={self.k!r}")
        if self.n < 2:
            raise ParameterError(f"n must be at least 2 (got {self.n}); a 1-outcome observable carries nothing")
        if self.k < 1:
            raise ParameterError(f"k must be at least 1 (got {self.k})")

    @property
    def N(self) -> int:
        return self.n**self.k

    @property
    def block_size(self) -> int:
        return self.n ** (self.k - 1)

    def digits(self, state: int) -> tuple[int, ...]:
        """0-based per-particle outcomes of a 1-based state, particle 1 first."""
        rest = state - 1
        out = []
        for _ in range(self.k):
            rest, d = divmod(rest, self.n)
            out.append(d)
        return tuple(reversed(out))


@dataclass(frozen=True)
class NitSet:
    """k partitions of {1..n^k}. Not validated on construction; see
    :func:`is_valid_nit_set`."""

    params: NitParams
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        parts = tuple(tuple(tuple(int(x) for x in b) for b in p) for p in self.partitions)
        object.__setattr__(self, "partitions", parts)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def block_of(self, state: int) -> tuple[int, ...]:
        """0-based block index of ``state`` in every partition."""
        out = []
        for p in self.partitions:
            for b, block in enumerate(p):
                if state in block:
                    out.append(b)
                    break
            else:
                raise ParameterError(f"state {state} is in no block")
        return tuple(out)

    def labels(self) -> np.ndarray:
        """(k, N) array: entry [j, s-1] is the block of state s in partition j."""
        lab = np.full((len(self.partitions), self.params.N), -1, dtype=np.int64)
        for j, p in enumerate(self.partitions):
            for b, block in enumerate(p):
                for s in block:
                    lab[j, s - 1] = b
        return lab

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Total-order key: flattened block lists of the canonical partitions."""
        c = canonicalize(self)
        return tuple(tuple(x for b in p for x in b) for p in c.partitions)

    def __eq__(self, other):
        if not isinstance(other, NitSet):
            return NotImplemented
        return self.params == other.params and self.key() == other.key()

    def __hash__(self):
        return hash((self.params, self.key()))

    def __lt__(self, other: NitSet) -> bool:
        return (self.params.n, self.params.k, self.key()) < (other.params.n, other.params.k, other.key())

    def __str__(self):
        def fmt(p):
            return "{" + ", ".join("{" + ", ".join(map(str, b)) + "}" for b in p) + "}"

        return " x ".join(fmt(p) for p in self.partitions)


@dataclass(frozen=True)
class Permutation:
    """Bijection on 1..N stored as its images: ``images[s-1] = p(s)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ParameterError(f"not a bijection on 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, N: int) -> Permutation:
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def from_cycles(cls, text: str, N: int) -> Permutation:
        return parse_cycle_notation(text, N)

    def __len__(self):
        return len(self.images)

    def __call__(self, s: int) -> int:
        return self.images[s - 1]

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for s, t in enumerate(self.images, start=1):
            inv[t - 1] = s
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())


@dataclass
class ValidityReport:
    """Outcome of :func:`is_valid_nit_set`.

    ``structural`` lists shape problems (wrong block count, unbalanced,
    overlapping or non-covering blocks). ``violations`` lists every block
    combination (0-based block index per partition) whose intersection does
    not have exactly one element, with that intersection. ``uncovered`` lists
    states missing from the union of singleton intersections.
    """

    valid: bool
    structural: list[str] = field(default_factory=list)
    violations: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    uncovered: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.valid

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "structural": list(self.structural),
            "violations": [
                {"blocks": [b + 1 for b in combo], "intersection": list(inter), "size": len(inter)}
                for combo, inter in self.violations
            ],
            "uncovered": list(self.uncovered),
        }


def _params(n_or_params, k=None) -> NitParams:
    if isinstance(n_or_params, NitParams):
        return n_or_params
    return NitParams(n_or_params, k)


def canonical_nit_set(params: NitParams) -> NitSet:
    """The unentangled nit set: partition j groups states by particle j's outcome."""
    params = _params(params)
    parts = []
    for j in range(params.k):
        blocks: list[list[int]] = [[] for _ in range(params.n)]
        for s in range(1, params.N + 1):
            blocks[params.digits(s)[j]].append(s)
        parts.append(tuple(tuple(b) for b in blocks))
    return NitSet(params, tuple(parts))


def _structural_problems(s: NitSet) -> list[str]:
    n, N, size = s.params.n, s.params.N, s.params.block_size
    problems = []
    if len(s.partitions) != s.params.k:
        problems.append(f"expected {s.params.k} partitions, got {len(s.partitions)}")
    universe = set(range(1, N + 1))
    for j, p in enumerate(s.partitions, start=1):
        if len(p) != n:
            problems.append(f"partition {j}: expected {n} blocks, got {len(p)}")
        seen: set[int] = set()
        for b, block in enumerate(p, start=1):
            if len(block) != size:
                problems.append(f"partition {j} block {b}: unbalanced, {len(block)} elements instead of {size}")
            if len(set(block)) != len(block):
                problems.append(f"partition {j} block {b}: repeated elements")
            out_of_range = sorted(x for x in block if x not in universe)
            if out_of_range:
                problems.append(f"partition {j} block {b}: states out of range {out_of_range}")
            overlap = seen.intersection(block)
            if overlap:
                problems.append(f"partition {j} block {b}: overlaps earlier blocks at {sorted(overlap)}")
            seen.update(block)
        missing = sorted(universe - seen)
        if missing:
            problems.append(f"partition {j}: does not cover {missing}")
    return problems


def is_valid_nit_set(s: NitSet) -> ValidityReport:
    """Check the separation properties; structural problems are reported separately
    and short-circuit the separation check."""
    structural = _structural_problems(s)
    if structural:
        return ValidityReport(False, structural=structural)
    violations = []
    covered: set[int] = set()
    for combo in itertools.product(*(range(len(p)) for p in s.partitions)):
        inter = set(s.partitions[0][combo[0]])
        for j in range(1, len(combo)):
            inter &= set(s.partitions[j][combo[j]])
        if len(inter) == 1:
            covered |= inter
        else:
            violations.append((combo, tuple(sorted(inter))))
    uncovered = sorted(set(range(1, s.params.N + 1)) - covered)
    return ValidityReport(not violations and not uncovered, violations=violations, uncovered=uncovered)


def apply_state_permutation(s: NitSet, p: Permutation) -> NitSet:
    """Relabel states: every block B becomes p(B)."""
    if len(p) != s.params.N:
        raise ParameterError(f"permutation acts on {len(p)} states, nit set has {s.params.N}")
    return NitSet(s.params, tuple(tuple(tuple(p(x) for x in b) for b in part) for part in s.partitions))


def _canonical_partition(p: Sequence[Sequence[int]]) -> Partition:
    return tuple(sorted(tuple(sorted(b)) for b in p))


def canonicalize(s: NitSet) -> NitSet:
    parts = [_canonical_partition(p) for p in s.partitions]
    parts.sort(key=lambda p: tuple(x for b in p for x in b))
    out = NitSet.__new__(NitSet)
    object.__setattr__(out, "params", s.params)
    object.__setattr__(out, "partitions", tuple(parts))
    return out


def parse_cycle_notation(text: str, N: int) -> Permutation:
    """Parse ``"(1)(2,5,6,7,3,9,8,4)"``. Omitted elements are fixed points."""
    if N < 1:
        raise ParseError(f"N must be positive, got {N}")
    stripped = re.sub(r"\s+", "", text)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))*", stripped):
        raise ParseError(f"malformed cycle notation: {text!r}")
    images = list(range(1, N + 1))
    seen: set[int] = set()
    for body in re.findall(r"\(([^)]*)\)", stripped):
        cyc = [int(x) for x in body.split(",")]
        for x in cyc:
            if not 1 <= x <= N:
                raise ParseError(f"element {x} out of range 1..{N} in {text!r}")
            if x in seen:
                raise ParseError(f"element {x} repeated in {text!r}")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b
    return Permutation(tuple(images))


# -- exhaustive sweeps ------------------------------------------------------


def _check_budget(N: int, budget: int) -> int:
    required = math.factorial(N)
    if required > budget:
        raise BudgetExceeded(required, budget)
    return required


def _perm_chunks(N: int, first: int | None = None) -> Iterator[np.ndarray]:
    """All permutations of range(N) as (m, N) arrays, optionally restricted to
    those with ``first`` at position 0."""
    if first is None:
        it: Iterable[tuple[int, ...]] = itertools.permutations(range(N))
    else:
        rest = [x for x in range(N) if x != first]
        it = ((first,) + t for t in itertools.permutations(rest))
    while True:
        chunk = list(itertools.islice(it, _CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def _relabel_codes(labels: np.ndarray, n: int) -> np.ndarray:
    """Encode each row of block labels (m, N) as an integer that identifies the
    partition regardless of block naming: blocks are renamed in order of first
    appearance and the resulting string is read in base n."""
    m, N = labels.shape
    first = np.stack([np.argmax(labels == b, axis=1) for b in range(n)], axis=1)
    rank = np.argsort(np.argsort(first, axis=1), axis=1)
    rgs = np.take_along_axis(rank, labels, axis=1)
    weights = n ** np.arange(N - 1, -1, -1, dtype=np.int64)
    return rgs @ weights


def _family_codes(base_labels: np.ndarray, perms: np.ndarray, n: int) -> np.ndarray:
    """(m, k) sorted partition codes of the images of the base family under each
    row of ``perms`` (0-based images). The image of block B is p(B), so the new
    label of state t is the old label of p^-1(t)."""
    inv = np.argsort(perms, axis=1)
    codes = np.stack([_relabel_codes(lab[inv], n) for lab in base_labels], axis=1)
    codes.sort(axis=1)
    return codes


def _decode_partition(code: int, n: int, N: int) -> Partition:
    digits = []
    for _ in range(N):
        code, d = divmod(code, n)
        digits.append(d)
    digits.reverse()
    blocks: list[list[int]] = [[] for _ in range(n)]
    for s, d in enumerate(digits, start=1):
        blocks[d].append(s)
    return tuple(tuple(b) for b in blocks)


def _orbit_shard(args) -> set[tuple[int, ...]]:
    base_labels, n, N, firsts = args
    found: set[tuple[int, ...]] = set()
    for first in firsts:
        for chunk in _perm_chunks(N, first):
            uniq = np.unique(_family_codes(base_labels, chunk, n), axis=0)
            found.update(tuple(int(x) for x in row) for row in uniq)
    return found


@dataclass
class Enumeration:
    """Result of :func:`enumerate_nit_sets`; iterates over the nit sets."""

    params: NitParams
    sets: list[NitSet]

    @property
    def count(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, i):
        return self.sets[i]


def enumerate_nit_sets(params: NitParams, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Enumeration:
    """Every distinct nit set in the orbit of the canonical one under all
    (n^k)! state relabelings, sorted by canonical key.

    ``jobs > 1`` splits the sweep by the image of state 1 over a process pool;
    the merged, sorted result does not depend on ``jobs``.
    """
    params = _params(params)
    n, N = params.n, params.N
    _check_budget(N, budget)
    if n**N >= 2**62:
        raise ParameterError(f"state space {N} too large for integer partition codes")
    base = canonical_nit_set(params).labels()
    jobs = max(1, min(int(jobs), N))
    shards = [(base, n, N, list(range(w, N, jobs))) for w in range(jobs)]
    if jobs == 1:
        results = [_orbit_shard(shards[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_orbit_shard, shards))
    codes = set().union(*results)
    sets = [
        canonicalize(NitSet(params, tuple(_decode_partition(c, n, N) for c in row)))
        for row in codes
    ]
    sets.sort(key=NitSet.key)
    return Enumeration(params, sets)


def balanced_partitions(N: int, n: int) -> Iterator[Partition]:
    """All partitions of {1..N} into n blocks of equal size, each yielded once,
    in canonical form."""
    if N % n:
        raise ParameterError(f"{N} states cannot be split into {n} equal blocks")
    size = N // n

    def rec(remaining: tuple[int, ...]) -> Iterator[tuple[Block, ...]]:
        if not remaining:
            yield ()
            return
        head, rest = remaining[0], remaining[1:]
        for others in itertools.combinations(rest, size - 1):
            block = (head,) + others
            left = tuple(x for x in rest if x not in others)
            for tail in rec(left):
                yield (block,) + tail

    yield from rec(tuple(range(1, N + 1)))


BRUTE_FORCE_GUARD = 5_000_000


def brute_force_nit_sets(params: NitParams, guard: int = BRUTE_FORCE_GUARD) -> set[NitSet]:
    """Independent oracle for :func:`enumerate_nit_sets`: try every unordered
    k-family of balanced partitions and keep the ones that separate."""
    params = _params(params)
    n, k, N = params.n, params.k, params.N
    size = N // n
    n_parts = math.factorial(N) // (math.factorial(size) ** n * math.factorial(n))
    required = math.comb(n_parts, k)
    if required > guard:
        raise BudgetExceeded(required, guard, what="partition families")
    parts = list(balanced_partitions(N, n))
    out = set()
    for family in itertools.combinations(parts, k):
        s = NitSet(params, family)
        if is_valid_nit_set(s):
            out.add(canonicalize(s))
    return out


def find_mapping_permutations(source: NitSet, target: NitSet, budget: int = DEFAULT_BUDGET) -> list[Permutation]:
    """All p with apply_state_permutation(source, p) equal to target as
    unordered families, in lexicographic order of their image lists."""
    if source.params != target.params:
        raise ParameterError(f"parameter mismatch: {source.params} vs {target.params}")
    params = source.params
    n, N = params.n, params.N
    _check_budget(N, budget)
    src = source.labels()
    tgt = np.array(sorted(_relabel_codes(target.labels(), n)), dtype=np.int64)
    found = []
    for chunk in _perm_chunks(N):
        codes = _family_codes(src, chunk, n)
        hits = np.nonzero((codes == tgt).all(axis=1))[0]
        found.extend(Permutation(tuple(int(x) + 1 for x in chunk[i])) for i in hits)
    return found
