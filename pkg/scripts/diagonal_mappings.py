"""Which relabelings take the canonical trit pair to the (counter)diagonal pair?

Also reports what the cycle (1)(2,5,6,7,3,9,8,4) and its inverse produce.
"""

from nitpart import (
    NitParams,
    NitSet,
    apply_state_permutation,
    canonical_nit_set,
    canonicalize,
    find_mapping_permutations,
    parse_cycle_notation,
)

CYCLE = "(1)(2,5,6,7,3,9,8,4)"


def main():
    trits = canonical_nit_set(NitParams(3, 2))
    diagonal = NitSet(NitParams(3, 2), [[[1, 5, 9], [2, 6, 7], [3, 4, 8]], [[1, 6, 8], [2, 4, 9], [3, 5, 7]]])
    found = find_mapping_permutations(trits, diagonal)
    print(f"{len(found)} permutations map the canonical pair onto the diagonal pair")
    for p in found[:8]:
        print("  ", p.cycle_notation())
    p = parse_cycle_notation(CYCLE, 9)
    for label, q in (("cycle", p), ("inverse", p.inverse())):
        image = canonicalize(apply_state_permutation(trits, q))
        print(f"{label} {q.cycle_notation()}: {image}  in list: {q in found}")


if __name__ == "__main__":
    main()
