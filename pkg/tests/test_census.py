import json
import math
import xml.etree.ElementTree as ET

import pytest

from toritally import latgrp
from toritally.abelian import count_C3_by_conductor, count_C6_by_conductor
from toritally.census import (
    CSV_HEADER, LABELS, CensusTable, InsufficientGrid, bounds_report, check_table, default_grid, emit,
    fit_constant, fit_report, moments_report, parse_groups, row_counts, run_census, to_csv_rows,
    write_violations,
)
from toritally.quartics import count_H8A
from toritally.sextics import count_H12A

X = 2000


@pytest.fixture(scope="module")
def table():
    t = run_census(X, grid=8)
    fit_report(t)
    return t


def test_default_grid():
    g = default_grid(10 ** 6)
    assert g[0] == 100 and g[-1] == 10 ** 6 and g == sorted(set(g)) and len(g) == 16
    assert default_grid(50) == [50]


def test_parse_groups():
    assert parse_groups("all") == list(LABELS)
    assert parse_groups("h2a,H4B") == ["H2A", "H4B"]
    with pytest.raises(ValueError):
        parse_groups("H5A")


def test_table_shape(table):
    assert list(table.rows) == list(LABELS) and len(LABELS) == 12
    assert table.x_grid[-1] == X and len(table.x_grid) == 8
    assert table.violations == []


def test_symmetric_rows(table):
    for p, q in (("H2B", "H2C"), ("H4B", "H4C"), ("H6B", "H6C")):
        assert table.rows[p].counts == table.rows[q].counts


def test_total_is_sum_of_rows(table):
    for i, t in enumerate(table.total):
        assert t == sum(r.counts[i] for r in table.rows.values())


def test_rows_against_direct_counts(table):
    g = table.x_grid
    assert row_counts("H2A", [100]) == [6]
    assert table.rows["H3A"].counts == [count_C3_by_conductor(math.isqrt(x)) for x in g]
    assert table.rows["H6A"].counts == [count_C6_by_conductor(math.isqrt(x)) for x in g]
    assert table.rows["H8A"].counts == [count_H8A(x) for x in g]
    assert table.rows["H12A"].counts[-1] == count_H12A(X)


def test_rows_carry_malle_invariants(table):
    for lab, r in table.rows.items():
        inv = latgrp.malle_invariants(latgrp.lookup(lab))
        assert (r.a, r.b) == (inv.a, inv.b)


def test_json_round_trip(table):
    obj = json.loads(json.dumps(table.to_json()))
    t2 = CensusTable.from_json(obj)
    assert t2.x_grid == table.x_grid and t2.total == table.total
    assert {k: r.counts for k, r in t2.rows.items()} == {k: r.counts for k, r in table.rows.items()}
    obj["total"][0] += 1
    with pytest.raises(ValueError):
        CensusTable.from_json(obj)


def test_caps_leave_total_unknown():
    t = run_census(300, groups="H2A,H8A", grid=[100, 200, 300], caps={"H8A": 150})
    assert t.rows["H8A"].counts[1:] == [None, None]
    assert t.total == [t.rows["H2A"].counts[0] + t.rows["H8A"].counts[0], None, None]


def test_include_trivial():
    t = run_census(100, groups="H2A", grid=[100], include_trivial=True)
    assert t.total == [7]


def test_check_table_flags_asymmetry(table):
    t = CensusTable.from_json(table.to_json())
    t.rows["H4C"].counts[-1] += 1
    assert any(v["check"] == "symmetry" for v in check_table(t))


def test_emit_formats(table, tmp_path):
    paths = emit(table, "csv,json,svg", tmp_path)
    assert [p.suffix for p in paths] == [".csv", ".json", ".svg"]
    lines = paths[0].read_text().splitlines()
    assert lines[0].split(",") == CSV_HEADER
    assert len(lines) == 1 + len(table.x_grid) * (len(table.rows) + 1)
    assert json.loads(paths[1].read_text())["total"] == table.total
    root = ET.parse(paths[2]).getroot()
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 12
    v = write_violations([], tmp_path)
    assert json.loads(v.read_text()) == []
    with pytest.raises(ValueError):
        emit(table, "png", tmp_path)


def test_csv_rows_include_total(table):
    rows = to_csv_rows(table)
    assert sum(1 for r in rows if r[1] == "total") == len(table.x_grid)


def test_insufficient_grid():
    with pytest.raises(InsufficientGrid):
        fit_constant([10, 100, 1000], [1, 2, 3], 1, 0)
    t = run_census(1000, groups="H2A", grid=[100, 1000])
    with pytest.raises(InsufficientGrid):
        fit_report(t)


def test_sparse_row_is_degenerate():
    t = run_census(400, groups="H12A,H2A", grid=[30, 60, 100, 200, 300, 400])
    rep = fit_report(t)
    assert rep["H12A"].get("degenerate") or rep["H12A"]["points"] >= 5
    assert not rep["H2A"].get("degenerate")


def test_fit_recovers_synthetic_constant():
    xs = [10 ** k for k in range(2, 8)]
    ns = [0.7 * x ** 0.5 * math.log(x) ** 2 for x in xs]
    fit = fit_constant(xs, ns, 2, 2)
    assert abs(fit["c"] - 0.7) < 1e-9 and fit["rss"] < 1e-18


def test_fit_prefers_log_power_for_c6():
    grid = default_grid(10 ** 5, 12)
    counts = row_counts("H6A", grid)
    assert fit_constant(grid, counts, 2, 2)["rss"] < fit_constant(grid, counts, 2, 1)["rss"]


def test_quadratic_constant():
    N = row_counts("H2B", [10 ** 6])[0]
    assert abs(N / 10 ** 6 - 6 / math.pi ** 2) < 0.02 * 6 / math.pi ** 2


def test_parallel_matches_serial():
    a = run_census(500, groups="H2A,H3A,H4B,H6B", grid=5)
    b = run_census(500, groups="H2A,H3A,H4B,H6B", grid=5, jobs=2)
    assert {k: r.counts for k, r in a.rows.items()} == {k: r.counts for k, r in b.rows.items()}


def test_bounds_report(table):
    rep = bounds_report(table)
    assert rep["violations"] == []
    assert rep["c0"] > 0 and len(rep["ratio_XlogX"]) == len(table.x_grid)
    assert all(e["ok"] for e in rep["h12a_lower"])


def test_moments_report():
    rep = moments_report(20000, 2, [2000, 5000, 20000])
    assert rep.violations == []
    assert {(r["alpha"], r["side"]) for r in rep.rows} == {(1, "imaginary"), (1, "real"), (2, "imaginary"),
                                                          (2, "real")}
