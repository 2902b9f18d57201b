"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (or ``python scripts/run_acceptance.py``).
"""

import io
import math
import random
import time
from contextlib import redirect_stdout

import numpy as np
import pytest
from sympy import primerange

from conftest import LISTED_PAIRS, make
from nitpart import (
    NitParams,
    Permutation,
    apply_state_permutation,
    brute_force_nit_sets,
    canonical_nit_set,
    enumerate_nit_sets,
    find_mapping_permutations,
    is_valid_nit_set,
)
from nitpart.cli import main
from nitpart.errors import UnsupportedCase
from nitpart.inverse import build_w_basis, commutator_max_entry, conjugated_nit_operators, verify_separation, w_diagonals
from nitpart.operators import PrimeAssignment, binary_projectors, context_operator, decode_outcome, nit_operators, state_of_outcome
from nitpart.spectra import block_representative_state, classify_nit_set_eigenstates, single_factor_ranks
from nitpart.urn import BROADENED, MONOSPECTRAL, Lens, NoAnswer, Symbol, SymbolSet, draws, look, run_session, urn_from_nit_set


@pytest.fixture
def verdict(capsys):
    def report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"

    return report


def test_01_enumeration_count(verdict):
    buf = io.StringIO()
    start = time.perf_counter()
    with redirect_stdout(buf):
        code = main(["enumerate", "--n", "3", "--k", "2", "--count-only"])
    elapsed = time.perf_counter() - start
    ok = code == 0 and buf.getvalue() == "5040\n" and elapsed < 60
    verdict(1, "enumerate --n 3 --k 2 --count-only = 5040 in < 60 s", ok, f"output {buf.getvalue().strip()}, {elapsed:.2f} s")


def test_02_oracle_equivalence(verdict):
    counts = {}
    ok = True
    for n, k in [(2, 2), (2, 3), (3, 2)]:
        fast = set(enumerate_nit_sets(NitParams(n, k)))
        slow = brute_force_nit_sets(NitParams(n, k))
        ok &= fast == slow
        counts[(n, k)] = len(fast)
    ok &= counts[(2, 2)] == 3 and counts[(3, 2)] == 5040
    verdict(2, "enumeration equals brute-force oracle", ok, f"counts {counts}")


def test_03_listed_pairs(verdict):
    sets = set(enumerate_nit_sets(NitParams(3, 2)))
    members = [make(3, 2, *pair) in sets for pair in LISTED_PAIRS]
    valid = [bool(is_valid_nit_set(make(3, 2, *pair))) for pair in LISTED_PAIRS]
    verdict(3, "five listed two-trit sets are enumerated and valid", all(members) and all(valid), f"members {members}, valid {valid}")


def test_04_orbit_stabilizer(verdict):
    trits = canonical_nit_set(NitParams(3, 2))
    bits = canonical_nit_set(NitParams(2, 2))
    st3 = len(find_mapping_permutations(trits, trits))
    st2 = len(find_mapping_permutations(bits, bits))
    orbit3 = enumerate_nit_sets(NitParams(3, 2)).count
    orbit2 = enumerate_nit_sets(NitParams(2, 2)).count
    ok = st3 == 72 and st3 * orbit3 == math.factorial(9) and st2 == 8 and st2 * orbit2 == math.factorial(4)
    verdict(4, "stabilizer x orbit = N!", ok, f"(3,2): {st3} x {orbit3}; (2,2): {st2} x {orbit2}")


def test_05_w_state(verdict):
    start = time.perf_counter()
    U = build_w_basis()
    diagonals = w_diagonals()
    F1, F2, F3 = conjugated_nit_operators(U, diagonals)
    report = verify_separation(U, diagonals)
    elapsed = time.perf_counter() - start

    off = np.max(np.abs(F1 - np.diag(np.diag(F1))))
    diag_ok = np.max(np.abs(np.diag(F1) - [2, 2, 2, 2, 3, 3, 3, 3])) < 1e-10 and off < 1e-10
    eig = report.eigenvalues == [110, 130, 154, 182, 165, 195, 231, 273] and report.checks["distinct_eigenvalues"].worst < 1e-6
    comm = max(commutator_max_entry(F1, F2), commutator_max_entry(F1, F3), commutator_max_entry(F2, F3))
    vec = report.checks["common_eigenvectors"].worst
    ok = bool(diag_ok and eig and comm < 1e-10 and vec < 1e-10 and elapsed < 1.0)
    verdict(
        5,
        "W-state inverse problem",
        ok,
        f"F1 off-diagonal {off:.1e}, commutators {comm:.1e}, eigenvectors {vec:.1e}, {elapsed * 1000:.0f} ms",
    )


def test_06_decode_round_trip(verdict):
    rnd = random.Random(20021)
    primes = list(primerange(2, 300))
    failures = 0
    trials = 0
    for n, k in [(2, 2), (3, 2), (2, 3)]:
        s = canonical_nit_set(NitParams(n, k))
        for _ in range(20):
            a = PrimeAssignment.from_flat(rnd.sample(primes, n * k), n, k)
            ctx = context_operator(nit_operators(s, a))
            for i, value in enumerate(ctx.entries, start=1):
                trials += 1
                failures += state_of_outcome(decode_outcome(value, a), s) != i
    verdict(6, "context decode round trip", failures == 0, f"{trials} decodes, {failures} failures")


def test_07_entanglement(verdict):
    trits = canonical_nit_set(NitParams(3, 2))
    diagonal = make(3, 2, *LISTED_PAIRS[2])
    canon = all(r.product and r.schmidt_ranks == [1, 1] for r in classify_nit_set_eigenstates(trits))
    diag = all(r.schmidt_ranks == [3, 3] and not r.product for r in classify_nit_set_eigenstates(diagonal))
    psi1 = block_representative_state({1, 5, 9}, 9)
    psi_ok = np.max(np.abs(psi1 - np.array([1, 0, 0, 0, 1, 0, 0, 0, 1]) / np.sqrt(3))) < 1e-12
    w = np.array([0, 1, 1, 0, 1, 0, 0, 0]) / np.sqrt(3)
    w_ranks = single_factor_ranks(w, [2, 2, 2])
    ok = canon and diag and psi_ok and w_ranks == [2, 2, 2]
    verdict(7, "entanglement classification", ok, f"canonical product {canon}, diagonal rank 3 {diag}, W ranks {w_ranks}")


def test_08_binary_projectors(verdict):
    ps = binary_projectors(canonical_nit_set(NitParams(2, 3)))
    idempotent = len(ps) == 3 and all(tuple(x * x for x in p.entries) == p.entries for p in ps)
    try:
        binary_projectors(canonical_nit_set(NitParams(3, 2)))
        rejected = False
    except UnsupportedCase as exc:
        rejected = "binary" in str(exc)
    verdict(8, "binary projectors idempotent, trits rejected", idempotent and rejected)


def test_09_urn(verdict):
    trits = canonical_nit_set(NitParams(3, 2))
    urn = urn_from_nit_set(trits, ["blue", "yellow"])
    a = PrimeAssignment.default(3, 2)
    ctx = context_operator(nit_operators(trits, a))
    matched = all(
        look(i, urn, Lens(color)) == Symbol(urn.symbols[j][decode_outcome(ctx.entries[i - 1], a)[j]])
        for i in range(1, 10)
        for j, color in enumerate(urn.colors)
    )
    balls = draws(urn, 10000, 424242)
    mono = all(look(b, urn, Lens("green", MONOSPECTRAL)) == NoAnswer() for b in balls)
    broad = all(
        isinstance(r := look(b, urn, Lens("green", BROADENED)), SymbolSet) and len(r.glyphs) == 2 for b in balls
    )
    t1 = run_session(urn, Lens("blue"), 10000, 424242).to_dict()
    t2 = run_session(urn, Lens("blue"), 10000, 424242).to_dict()
    ok = matched and mono and broad and t1 == t2
    verdict(9, "urn semantics", ok, f"matched {matched}, monospectral {mono}, broadened {broad}, reproducible {t1 == t2}")


def test_10_relabeling_closure(verdict):
    rnd = random.Random(1000)
    failures = 0
    for n, k in [(3, 2), (2, 3)]:
        s = canonical_nit_set(NitParams(n, k))
        for _ in range(1000):
            images = list(range(1, n**k + 1))
            rnd.shuffle(images)
            failures += not is_valid_nit_set(apply_state_permutation(s, Permutation(tuple(images))))
    verdict(10, "relabeling closure over 2 x 1000 random permutations", failures == 0, f"{failures} failures")
