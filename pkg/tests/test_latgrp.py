import random

import pytest
from hypothesis import given, settings, strategies as st

from toritally import latgrp
from toritally.latgrp import (
    EXPECTED_INVARIANTS, ClosureExceeded, MalleInvariants, NonUnimodular, TrivialGroup,
    catalogue, conjugacy_invariant, cyclotomic_orbits, direct_sum, direct_sum_prediction,
    generate_group, index_of, lookup, malle_from_permutations, malle_invariants,
    parse_matrix, permutation_embed, random_unimodular, smith_diagonal, trivial_group,
)

from groupgen import PERMUTATION_GROUPS, base_groups

CAT = {G.label: G for G in catalogue()}
ORDERS = {"H2A": 2, "H2B": 2, "H2C": 2, "H3A": 3, "H4A": 4, "H4B": 4, "H4C": 4,
          "H6A": 6, "H6B": 6, "H6C": 6, "H8A": 8, "H12A": 12}


def test_catalogue_orders():
    assert {k: G.order for k, G in CAT.items()} == ORDERS


@pytest.mark.parametrize("label", list(EXPECTED_INVARIANTS))
def test_catalogue_invariants(label):
    m = malle_invariants(CAT[label])
    assert (m.a, m.b) == EXPECTED_INVARIANTS[label]


def test_lookup_spellings():
    G = lookup("H_{8,A}")
    assert G.order == 8
    assert parse_matrix("0,1;-1,0") in G and parse_matrix("0,1;1,0") in G
    assert lookup("H_{2,C}").elements == CAT["H2C"].elements
    with pytest.raises(KeyError):
        lookup("H5A")


def test_generate_group_errors():
    with pytest.raises(NonUnimodular):
        generate_group([parse_matrix("2,0;0,1")])
    with pytest.raises(ClosureExceeded):
        generate_group([parse_matrix("1,1;0,1")], cap=50)


def test_trivial_group_raises():
    with pytest.raises(TrivialGroup):
        malle_invariants(trivial_group(2))
    with pytest.raises(TrivialGroup):
        malle_invariants(permutation_embed([(0, 1, 2)]))


def test_cyclotomic_orbits_examples():
    G = CAT["H6A"]
    orbits = cyclotomic_orbits(G)
    sizes = sorted(len(o) for o in orbits)
    # {[g], [g^5]}, {[g^2], [g^4]}, {[g^3]}, {[I]}
    assert sizes == [1, 1, 2, 2]
    assert len(cyclotomic_orbits(CAT["H3A"])) == 2
    for lab in ("H2A", "H2B", "H4B", "H4C"):
        # exponent 2: only k = 1 acts
        G = CAT[lab]
        assert len(cyclotomic_orbits(G)) == len(latgrp.conjugacy_classes(G))


@pytest.mark.parametrize("label", list(ORDERS))
def test_cyclotomic_modulus_choice_irrelevant(label):
    G = CAT[label]
    a = sorted(sorted(map(sorted, o)) for o in cyclotomic_orbits(G))
    b = sorted(sorted(map(sorted, o)) for o in cyclotomic_orbits(G, modulus=G.order))
    assert a == b


@pytest.mark.parametrize("label", list(ORDERS))
def test_rank_constant_on_orbits(label):
    for orb in cyclotomic_orbits(CAT[label]):
        ranks = {index_of(h) for c in orb for h in c}
        assert len(ranks) == 1


def test_fingerprints_separate_catalogue():
    fps = {conjugacy_invariant(G) for G in CAT.values()}
    assert len(fps) == 12


def test_elementwise_snf_examples():
    assert smith_diagonal(parse_matrix("0,0;0,-2")) == (2, 0)
    assert smith_diagonal(parse_matrix("-1,1;1,-1")) == (1, 0)
    assert conjugacy_invariant(CAT["H2B"]) != conjugacy_invariant(CAT["H2C"])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ORDERS)), st.integers(0, 10 ** 6))
def test_conjugation_invariance(label, seed):
    G = CAT[label]
    M = random_unimodular(2, random.Random(seed))
    H = G.conjugate(M)
    assert conjugacy_invariant(H) == conjugacy_invariant(G)
    assert malle_invariants(H) == malle_invariants(G)


def test_direct_sum_examples():
    B = CAT["H2B"]
    assert malle_invariants(direct_sum(B, B)) == MalleInvariants(1, 2)
    assert malle_invariants(direct_sum(CAT["H2A"], B)) == MalleInvariants(1, 1)
    for G in CAT.values():
        assert malle_invariants(direct_sum(G, trivial_group(1))) == malle_invariants(G)


@pytest.mark.parametrize("pair", [("H2A", "H3A"), ("H6A", "H4A"), ("H12A", "H2B"), ("H8A", "H4B"),
                                  ("H2C", "H6B"), ("H6A", "H6A")])
def test_direct_sum_case_table(pair):
    G1, G2 = CAT[pair[0]], CAT[pair[1]]
    pred = direct_sum_prediction(malle_invariants(G1), malle_invariants(G2))
    assert malle_invariants(direct_sum(G1, G2)) == pred


@pytest.mark.parametrize("name", list(PERMUTATION_GROUPS))
def test_permutation_embedding_matches_cycle_types(name):
    perms, n = PERMUTATION_GROUPS[name]
    assert malle_invariants(permutation_embed(perms, n)) == malle_from_permutations(perms, n)


def test_permutation_examples():
    assert permutation_embed([(1, 0)]).elements == CAT["H2C"].elements
    assert malle_invariants(permutation_embed([(1, 0, 2), (1, 2, 0)])) == MalleInvariants(1, 1)


def test_bound_b_at_most_n_on_base_groups():
    for name, G in base_groups():
        m = malle_invariants(G)
        if m.a == 1:
            assert m.b <= G.n, name
