import json
import random
from pathlib import Path

import pytest

from toritally.arith import QuadField, fundamental_discs
from toritally.cubics import CyclicInput, enumerate_cubics
from toritally.sextics import (
    ResolventCollision, ab_table, common_radical, conductor_D6, count_H12A, d6_pairs, galois_closure_check,
    verify_exponents, wang_consistency,
)

from oracles import brute_d6

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def s3_fields():
    return [F for F in enumerate_cubics(12000) if F.gal == "S3"]


@pytest.fixture(scope="module")
def pairs1000():
    return list(d6_pairs(1000))


def _field(D):
    return next(F for F in enumerate_cubics(D) if F.D == D)


def test_smallest_example():
    s = conductor_D6(_field(23), -4)
    assert (s.C, s.D_L) == (368, 33856)
    assert verify_exponents(s) == (0, 0, 1)


def test_bad_inputs():
    with pytest.raises(ResolventCollision):
        conductor_D6(_field(23), -23)
    with pytest.raises(CyclicInput):
        conductor_D6(_field(49), -4)
    with pytest.raises(CyclicInput):
        galois_closure_check(_field(49))


def test_counts_small():
    assert count_H12A(0) == 0
    assert count_H12A(100) == 2
    assert count_H12A(1000) == 334


def test_pairs_match_exact_conductor(pairs1000):
    rng = random.Random(1)
    for q in rng.sample(pairs1000, 80):
        s = conductor_D6(q.F, q.D_K)
        assert s.C == q.C and s.D_L == q.D_L
        assert verify_exponents(s) == (q.a, q.b, q.m)


def test_pairs_against_frozen_brute_slice():
    # exhaustive over D_F <= max_DF, which reaches past the D_F <= 12 X cutoff of the search
    ref = json.loads((DATA / "d6_slice.json").read_text())
    X, D0 = ref["X"], ref["max_DF"]
    assert 12 * X < D0
    got = sorted([q.C, q.D_F, q.D_K] for q in d6_pairs(X) if q.D_F <= D0)
    assert got == ref["pairs"]


def test_pairs_against_brute_search_small():
    assert sorted((q.C, q.D_F, q.D_K) for q in d6_pairs(30) if q.D_F <= 400) == brute_d6(30, 400)


def test_exponents_random_pairs(s3_fields):
    rng = random.Random(5)
    quads = fundamental_discs(1, 400)
    for _ in range(150):
        F = rng.choice(s3_fields)
        d = rng.choice(quads)
        if d == F.resolvent[0]:
            continue
        a, b, m = verify_exponents(conductor_D6(F, d))
        assert a <= 9 and b <= 3 and m == common_radical(F.D, abs(d))


def test_wang_formula(s3_fields):
    rng = random.Random(2)
    quads = fundamental_discs(1, 600)
    checked = 0
    for F in rng.sample(s3_fields, 300):
        common = [d for d in quads if any(F.D % p == 0 and d % p == 0 for p in (5, 7, 11, 13, 17))]
        for dK in rng.sample(common, min(3, len(common))):
            if dK == F.resolvent[0]:
                continue
            for row in wang_consistency(F, dK):
                assert row["ok"], (F.disc, dK, row)
                checked += 1
    assert checked >= 100


def test_hasse_relation(s3_fields):
    for F in random.Random(4).sample(s3_fields, 25):
        D6, D3, D2 = galois_closure_check(F)
        assert D6 == D3 ** 2 * D2


def test_lower_bound_from_gaussian_twist(pairs1000):
    # K = Q(i) gives C = 16 D_F / N <= 16 D_F
    cubics = [F for F in enumerate_cubics(1000) if F.gal == "S3"]
    for X in (100, 300, 1000):
        assert sum(1 for q in pairs1000 if q.C <= X) >= sum(1 for F in cubics if 16 * F.D <= X)


def test_ab_table(pairs1000):
    t = ab_table(pairs1000)
    assert sum(t.values()) == len(pairs1000)
    assert all(0 <= a <= 9 and 0 <= b <= 3 for a, b in t)


def test_pairs_unique_and_bounded(pairs1000):
    keys = [(q.D_F, q.F.form, q.D_K) for q in pairs1000]
    assert len(keys) == len(set(keys))
    assert all(q.C <= 1000 and q.D_F <= 12 * 1000 for q in pairs1000)
