"""W-state inverse problem, plus the Schmidt ranks of each target state."""

import numpy as np

from nitpart.cli import w_demo_report
from nitpart.inverse import build_w_basis
from nitpart.spectra import single_factor_ranks


def main():
    text, _, ok = w_demo_report()
    print(text, end="")
    U = build_w_basis()
    for j in range(8):
        ranks = single_factor_ranks(U.column(j), [2, 2, 2])
        print(f"column {j + 1}: single-particle Schmidt ranks {ranks}")
    w = np.array([0, 1, 1, 0, 1, 0, 0, 0]) / np.sqrt(3)
    print(f"(|++-> + |+-+> + |-++>)/sqrt(3): ranks {single_factor_ranks(w, [2, 2, 2])}")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
