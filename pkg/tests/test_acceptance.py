"""The nine acceptance criteria, each at zero tolerance.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import random
import time
import timeit
from fractions import Fraction

import pytest

from eulercat import builders, ratmat
from eulercat.catcore import adjacency
from eulercat.constructions import chi_inclusion_exclusion
from eulercat.fileio import load_category, load_diagram, load_matrix
from eulercat.laws import LawRunConfig, run_laws
from eulercat.manifest import CORPUS_DIR, load_manifest
from eulercat.ratmat import RatMatrix, penrose_violations, pinv, pinv_full_rank
from eulercat.weights import chi, check_sls, coweighting, total, weighting

M = RatMatrix.from_rows
criterion = pytest.mark.criterion


def best_time(fn, repeat=200):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def pinv_and_chi(m):
    p = pinv(m)
    return p, total(m, p)


@criterion(1, "EX1: pinv([[3,2],[3,2]]) and chi = 5/13 exactly, < 1 ms")
def test_ex1():
    m = load_matrix(CORPUS_DIR / "ex1_matrix.json")
    p, x = pinv_and_chi(m)
    assert p == M([["3/26", "3/26"], ["1/13", "1/13"]])
    assert x == Fraction(5, 13)
    assert chi(load_category(CORPUS_DIR / "c1.json")) == Fraction(5, 13)
    assert best_time(lambda: pinv_and_chi(m)) < 1e-3


@criterion(2, "EX2: pinv of [[3,2,2]x3] and chi = 7/17 exactly, < 1 ms")
def test_ex2():
    m = load_matrix(CORPUS_DIR / "ex2_matrix.json")
    p, x = pinv_and_chi(m)
    assert p == M([["1/17"] * 3, ["2/51"] * 3, ["2/51"] * 3])
    assert x == Fraction(7, 17)
    assert chi(load_category(CORPUS_DIR / "c2.json")) == Fraction(7, 17)
    assert best_time(lambda: pinv_and_chi(m)) < 1e-3


@criterion(3, "EX3: actual 7/17, predicted 5/13, applies false")
def test_ex3():
    r = chi_inclusion_exclusion(load_diagram(CORPUS_DIR / "ex3_diagram.json"))
    assert r.actual == Fraction(7, 17)
    assert r.predicted == Fraction(5, 13)
    assert r.applies is False


@criterion(4, "poset example: [P]+, [P]+1 = [-1,1,1], inclusion-exclusion on >= 3 fiber assignments")
def test_poset_example():
    pbc = load_category(CORPUS_DIR / "poset_pbc.json")
    a = adjacency(pbc)
    assert pinv(a) == M([[1, -1, -1], [0, 1, 0], [0, 0, 1]])
    assert pinv(a) @ ratmat.ones(3) == M([[-1], [1], [1]])
    seen_half = False
    names = ["poset_terminal_diagram.json", "poset_mixed_diagram.json", "poset_z2_diagram.json"]
    for name in names:
        d = load_diagram(CORPUS_DIR / name)
        f = d.fibers
        expected = chi(f["b"]) + chi(f["c"]) - chi(f["a"])
        r = chi_inclusion_exclusion(d)
        assert r.applies and r.actual == r.predicted == expected
        seen_half = seen_half or Fraction(1, 2) in [chi(c) for c in f.values()]
    assert seen_half
    assert chi_inclusion_exclusion(load_diagram(CORPUS_DIR / names[1])).actual == Fraction(3, 2)


@criterion(5, "Penrose suite: 200 random square matrices, four equations + oracle, < 10 s")
def test_penrose_suite():
    rng = random.Random(20240501)
    start = time.perf_counter()
    for _ in range(200):
        n = rng.randint(1, 8)
        m = M([[rng.randint(-3, 5) for _ in range(n)] for _ in range(n)])
        p = pinv(m)
        assert penrose_violations(m, p) == [], m
        assert p == pinv_full_rank(m), m
    assert time.perf_counter() - start < 10


@criterion(6, "law suite: 50 pairs (sum, product), 50 poset diagrams, separation, < 30 s")
def test_law_suite():
    start = time.perf_counter()
    summary = run_laws(LawRunConfig(seed=1, count=50, max_objects=4, max_hom=3),
                       laws=["additivity", "multiplicativity", "inclusion-exclusion", "separation",
                             "weighting-assembly"])
    elapsed = time.perf_counter() - start
    assert summary.ok, summary.first_failure
    for law in ("additivity", "multiplicativity", "inclusion-exclusion", "separation"):
        assert summary.tallies[law].passed == 50
    assert elapsed < 30


@criterion(7, "permutation invariance on 50 random categories")
def test_permutation_invariance():
    summary = run_laws(LawRunConfig(seed=1, count=50), laws=["permutation-invariance"])
    assert summary.ok and summary.tallies["permutation-invariance"].passed == 50


@criterion(8, "SLS: sum(w) = sum(v) = 1*M+1 on every corpus matrix with both")
def test_sls_corpus():
    mats = []
    for e in load_manifest():
        if e.kind == "matrix":
            mats.append(load_matrix(CORPUS_DIR / e.path))
        elif e.kind == "category":
            mats.append(adjacency(load_category(CORPUS_DIR / e.path)))
    both = [m for m in mats if weighting(m) is not None and coweighting(m) is not None]
    assert len(both) >= 5
    for m in both:
        assert check_sls(m)


@criterion(9, "known values: discrete n, groups of order 1,2,3,4,6, terminal")
def test_known_values():
    for n in range(1, 7):
        assert chi(builders.discrete(n)) == n
    for k in (1, 2, 3, 4, 6):
        assert chi(builders.cyclic_group(k)) == Fraction(1, k)
    assert chi(builders.symmetric_group(3)) == Fraction(1, 6)
    assert chi(builders.terminal()) == 1
