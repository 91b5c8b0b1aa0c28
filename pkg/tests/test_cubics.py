import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from toritally.arith import class_group_imaginary, factor, fundamental_discs, is_fundamental
from toritally.cubics import (
    CubicCounts, CubicField, CyclicInput, act, cubic_disc, dh_average_report, enumerate_cubics,
    g_function, h3, is_reduced, resolvent_data,
)
from toritally.nforder import field_disc_info

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def fields2000():
    return enumerate_cubics(2000)


def test_smallest_fields(fields2000):
    s3_imag = [F for F in fields2000 if F.sign < 0]
    s3_real = [F for F in fields2000 if F.sign > 0 and F.gal == "S3"]
    c3 = [F for F in fields2000 if F.gal == "C3"]
    assert s3_imag[0].D == 23
    assert c3[0].D == 49
    assert s3_real[0].D == 148
    assert [F.D for F in c3] == [49, 81, 169, 361, 961, 1369, 1849]


def test_against_frozen_hunter_oracle(fields2000):
    ref = json.loads((DATA / "cubics_2000.json").read_text())
    got = sorted(F.disc for F in fields2000)
    assert got == sorted(d for d, _ in ref["fields"])


def test_forms_reproduce_field_discriminant(fields2000):
    for F in fields2000:
        info = field_disc_info(F.poly())
        assert info.sign * info.field_disc == F.disc
        assert cubic_disc(*F.form) == F.disc


def test_no_duplicates(fields2000):
    keys = [(F.disc, F.form) for F in fields2000]
    assert len(keys) == len(set(keys))


def test_forms_are_reduced(fields2000):
    for F in fields2000:
        assert is_reduced(F.form)


def test_resolvent_examples():
    F23 = next(F for F in enumerate_cubics(23) if F.D == 23)
    assert resolvent_data(F23) == (-23, 1)
    F108 = next(F for F in enumerate_cubics(108) if F.D == 108)
    assert resolvent_data(F108) == (-3, 6)
    F49 = next(F for F in enumerate_cubics(49) if F.D == 49)
    with pytest.raises(CyclicInput):
        resolvent_data(F49)


def test_resolvent_invariants(fields2000):
    for F in fields2000:
        if F.gal != "S3":
            continue
        dE, f = F.resolvent
        assert is_fundamental(dE) and dE * f * f == F.disc
        assert all(e == 1 for p, e in factor(f) if p != 3) if f > 1 else True


def test_h3_examples():
    assert h3(-23) == 3
    assert h3(-4) == 1
    assert h3(229) == 3
    with pytest.raises(ValueError):
        h3(18)


def test_h3_two_routes_small():
    counts = CubicCounts(3000)
    for d in fundamental_discs(1, 3000):
        if d < 0:
            assert counts.h3(d) == class_group_imaginary(d, with_table=False).h3, d


def test_h3_powers_of_three():
    counts = CubicCounts(5000)
    for d in fundamental_discs(1, 5000):
        h = counts.h3(d)
        while h % 3 == 0:
            h //= 3
        assert h == 1


def test_g_function():
    assert g_function(3, [3]) == [(3, 0)]
    assert dict(g_function(10, [10]))[10] == 17
    vals = [g for _, g in g_function(5000, list(range(100, 5001, 100)))]
    assert vals == sorted(vals)


def test_dh_means_at_least_one():
    rep = dh_average_report(20000, [1000, 5000, 20000])
    assert all(m >= 1 for m in rep.imag_mean + rep.real_mean)
    assert all(x <= 2.0 for x in rep.imag_mean) and all(x <= 4 / 3 + 0.05 for x in rep.real_mean)


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(-6, 6)] * 4), st.sampled_from([(1, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, -1), (2, 1, 1, 1)]))
def test_disc_invariant_under_gl2(form, g):
    assert cubic_disc(*act(form, g)) == cubic_disc(*form)


def test_sign_filter():
    real = enumerate_cubics(1000, "real")
    imag = enumerate_cubics(1000, "imag")
    both = enumerate_cubics(1000)
    assert all(F.sign > 0 for F in real) and all(F.sign < 0 for F in imag)
    assert sorted(F.disc for F in real + imag) == sorted(F.disc for F in both)


def test_cubic_field_dataclass():
    F = CubicField(23, -1, (1, -1, 2, -1))
    assert F.disc == -23 and F.gal == "S3"
