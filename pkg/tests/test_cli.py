import csv
import io
import json

import pytest

from toritally.cli import main


def _run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def _csv(out):
    return list(csv.reader(io.StringIO(out)))


def test_disc(capsys):
    rc, out, _ = _run(capsys, "disc", "--poly", "1,0,-1,-1")
    assert rc == 0 and json.loads(out) == {"poly_disc": -23, "field_disc": 23, "index": 1}
    rc, out, _ = _run(capsys, "disc", "--poly", "1,0,-5")
    assert json.loads(out)["field_disc"] == 5 and json.loads(out)["index"] == 2


def test_disc_reducible_is_an_error(capsys):
    rc, _, err = _run(capsys, "disc", "--poly", "1,0,-1")
    assert rc == 2 and "error" in err


def test_abh(capsys):
    rc, out, _ = _run(capsys, "abh", "--gens", "0,-1;1,0")
    d = json.loads(out)
    assert rc == 0 and d["order"] == 4


def test_h3(capsys):
    rc, out, _ = _run(capsys, "h3", "--dmax", "300")
    rows = {int(r[0]): (int(r[1]), r[2]) for r in _csv(out)[1:]}
    assert rows[-23] == (3, "bqf") and rows[229] == (3, "cubic") and rows[5] == (1, "cubic")


def test_quad(capsys):
    rc, out, _ = _run(capsys, "quad", "--dmax", "30")
    rows = {int(r[0]): r[1:] for r in _csv(out)[1:]}
    assert rows[-23][0] == "3" and rows[5][1:] == ["1", "1"]


def test_cubics(capsys):
    rc, out, _ = _run(capsys, "cubics", "--dmax", "200", "--sign", "imag")
    rows = _csv(out)
    assert rows[0] == ["D_F", "sign", "gal", "D_E", "f"]
    assert rows[1][:3] == ["-23", "-1", "S3"]


def test_g_and_abelian(capsys):
    rc, out, _ = _run(capsys, "g", "--xmax", "1e3", "--grid", "4")
    assert _csv(out)[-1][0] == "1000"
    rc, out, _ = _run(capsys, "abelian", "--group", "C3", "--ymax", "100", "--grid", "3")
    # conductors 7, 9, 13, 19, 31, 37, 43, 61, 63 (twice), 67, 73, 79, 91 (twice), 97
    assert _csv(out)[1:] == [["10", "2"], ["32", "5"], ["100", "16"]]


def test_d4_and_d6(capsys):
    rc, out, _ = _run(capsys, "d4", "--xmax", "300")
    rows = _csv(out)[1:]
    assert rows and all(r[3] == "D4" and int(r[2]) <= 300 for r in rows)
    rc, out, _ = _run(capsys, "d6", "--xmax", "100", "--emit-ab-table")
    body = out.split("\n\n")
    assert len(_csv(body[0])) == 3  # header and two fields
    assert _csv(body[1])[0] == ["a", "b", "count"]


def test_census_writes_outputs(capsys, tmp_path):
    rc, out, err = _run(capsys, "census", "--xmax", "500", "--grid", "5", "--out", str(tmp_path))
    assert rc == 0
    for name in ("census.csv", "census.json", "census.svg", "violations.json"):
        assert (tmp_path / name).exists()
    assert json.loads((tmp_path / "violations.json").read_text()) == []
    assert "total=" in err


def test_bad_integer():
    with pytest.raises(SystemExit):
        main(["g", "--xmax", "1.5"])
