"""Enumerate all two-trit sets and locate the displayed ones in our order.

    python scripts/two_trit_listing.py [--head 5]
"""

import argparse
import time

from nitpart import NitParams, NitSet, enumerate_nit_sets
from nitpart.spectra import classify_nit_set_eigenstates

DISPLAYED = [
    [[[1, 2, 3], [4, 6, 8], [5, 7, 9]], [[1, 4, 5], [2, 6, 7], [3, 8, 9]]],
    [[[1, 2, 3], [4, 6, 9], [5, 7, 8]], [[1, 4, 5], [2, 6, 7], [3, 8, 9]]],
    [[[1, 5, 9], [2, 6, 7], [3, 4, 8]], [[1, 6, 8], [2, 4, 9], [3, 5, 7]]],
    [[[1, 6, 9], [2, 5, 7], [3, 4, 8]], [[1, 7, 8], [2, 4, 9], [3, 5, 6]]],
    [[[1, 6, 9], [2, 5, 8], [3, 4, 7]], [[1, 7, 8], [2, 4, 9], [3, 5, 6]]],
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--head", type=int, default=5)
    args = parser.parse_args()

    t0 = time.perf_counter()
    result = enumerate_nit_sets(NitParams(3, 2))
    print(f"{result.count} two-trit sets in {time.perf_counter() - t0:.2f} s")
    for s in result.sets[: args.head]:
        print("  ", s)
    print("  ...")
    for s in result.sets[-2:]:
        print("  ", s)

    index = {s: i for i, s in enumerate(result.sets)}
    for pair in DISPLAYED:
        s = NitSet(NitParams(3, 2), pair)
        print(f"position {index[s]:5d}: {s}")

    # how many sets have no product-state block at all
    fully = sum(1 for s in result if not any(r.product for r in classify_nit_set_eigenstates(s)))
    print(f"sets whose every block representative is entangled: {fully}")


if __name__ == "__main__":
    main()
