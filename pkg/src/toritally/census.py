"""Census of two-dimensional tori by Artin conductor.

Each row counts the tori split by one of the twelve nontrivial finite
subgroups H of GL_2(Z), up to conjugacy, with conductor at most X.  Rows are
reduced to counts of number fields whose conductor invariant is bounded.
"""
from __future__ import annotations

import bisect
import json
import math
import xml.etree.ElementTree as ET
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import latgrp
from .abelian import conductor_grid_counts
from .arith import fundamental_discs, isqrt
from .cubics import CubicField, dh_average_report, enumerate_cubics
from .quartics import conductor_histogram, cumulative_counts
from .sextics import d6_pairs

LABELS = latgrp.LABELS
DEFAULT_CAPS = {"H8A": 10 ** 5, "H12A": 10 ** 4}
SYMMETRIC_PAIRS = (("H2B", "H2C"), ("H4B", "H4C"), ("H6B", "H6C"))


class InsufficientGrid(ValueError):
    pass


def default_grid(Xmax: int, points: int = 16, start: int = 100) -> list[int]:
    """Geometric grid of integers from start to Xmax (deduplicated)."""
    Xmax = int(Xmax)
    start = min(start, Xmax)
    if points < 2 or start == Xmax:
        return [Xmax]
    r = (Xmax / start) ** (1 / (points - 1))
    out = sorted({int(round(start * r ** i)) for i in range(points - 1)} | {Xmax})
    return out


def parse_groups(spec: str | list[str] | None) -> list[str]:
    if spec is None or spec == "all" or spec == ["all"]:
        return list(LABELS)
    if isinstance(spec, str):
        spec = [s for s in spec.split(",") if s.strip()]
    labs = set()
    for s in spec:
        try:
            labs.add(latgrp.normalize_label(s.strip()))
        except KeyError:
            raise ValueError(f"unknown group {s!r}; expected one of {', '.join(LABELS)}") from None
    return [lab for lab in LABELS if lab in labs]


# ------------------------------------------------------------ row counts

@lru_cache(maxsize=4)
def _quad_abs(X: int) -> tuple[int, ...]:
    return tuple(abs(d) for d in fundamental_discs(1, X))


@lru_cache(maxsize=2)
def _s3_cubics(X: int) -> tuple[CubicField, ...]:
    return tuple(F for F in enumerate_cubics(X) if F.gal == "S3")


def _count_le(sorted_vals, grid) -> list[int]:
    return [bisect.bisect_right(sorted_vals, x) for x in grid]


def _pair_count(D: tuple[int, ...], X: int) -> int:
    """Unordered pairs of distinct quadratic fields with |D_1 D_2| <= X."""
    n = 0
    for i, a in enumerate(D):
        if a * a > X:
            break
        # entries after i in the sorted list with b <= X / a
        n += max(0, bisect.bisect_right(D, X // a) - i - 1)
    return n


def row_counts(label: str, grid: list[int]) -> list[int]:
    """N(X; H) at each X in grid."""
    label = latgrp.normalize_label(label)
    grid = [int(x) for x in grid]
    Xmax = max(grid)
    if label == "H2A":
        return _count_le(_quad_abs(isqrt(Xmax)), [isqrt(x) for x in grid])
    if label in ("H2B", "H2C"):
        return _count_le(_quad_abs(Xmax), grid)
    if label in ("H4B", "H4C"):
        D = _quad_abs(Xmax // 3)
        return [_pair_count(D, x) for x in grid]
    if label in ("H3A", "H4A", "H6A"):
        group = {"H3A": "C3", "H4A": "C4", "H6A": "C6"}[label]
        ys = [isqrt(x) for x in grid]
        return [c for _, c in conductor_grid_counts(group, max(ys), ys)]
    if label in ("H6B", "H6C"):
        return _count_le([F.D for F in _s3_cubics(Xmax)], grid)
    if label == "H8A":
        return cumulative_counts(conductor_histogram(Xmax, ("D4",))["D4"], grid)
    if label == "H12A":
        Cs = sorted(p.C for p in d6_pairs(Xmax, list(_s3_cubics(12 * Xmax))))
        return _count_le(Cs, grid)
    raise KeyError(label)


def _row_job(args):
    label, grid = args
    return label, row_counts(label, grid) if grid else []


# ------------------------------------------------------------ table

@dataclass
class CensusRow:
    label: str
    a: int
    b: int
    counts: list  # int, or None above the row cap
    cap: int | None = None
    fit: dict | None = None


@dataclass
class CensusTable:
    x_grid: list[int]
    rows: dict[str, CensusRow]
    include_trivial: bool = False
    violations: list[dict] = field(default_factory=list)

    @property
    def total(self) -> list:
        """Sum of the rows at each grid point, None where some row is capped."""
        out = []
        for i in range(len(self.x_grid)):
            vals = [r.counts[i] for r in self.rows.values()]
            if any(v is None for v in vals):
                out.append(None)
            else:
                out.append(sum(vals) + int(self.include_trivial))
        return out

    def to_json(self) -> dict:
        return {
            "x_grid": list(self.x_grid),
            "rows": [{"label": r.label, "a": r.a, "b": r.b, "counts": list(r.counts),
                      "cap": r.cap, "fit": r.fit} for r in self.rows.values()],
            "total": self.total,
            "include_trivial": self.include_trivial,
            "caps": {r.label: r.cap for r in self.rows.values() if r.cap is not None},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CensusTable":
        rows = {r["label"]: CensusRow(r["label"], r["a"], r["b"], list(r["counts"]), r.get("cap"), r.get("fit"))
                for r in obj["rows"]}
        t = cls(list(obj["x_grid"]), rows, bool(obj.get("include_trivial", False)))
        if t.total != obj["total"]:
            raise ValueError("total row does not match the sum of rows")
        return t


def malle_ab(label: str) -> tuple[int, int]:
    inv = latgrp.malle_invariants(latgrp.lookup(label))
    return inv.a, inv.b


def run_census(Xmax: int, groups=None, grid: list[int] | int | None = None, jobs: int = 1,
               caps: dict[str, int] | None = None, include_trivial: bool = False) -> CensusTable:
    """Count every requested row at every grid point (None above a row's cap)."""
    Xmax = int(Xmax)
    if Xmax < 1:
        raise ValueError("Xmax must be positive")
    labels = parse_groups(groups)
    if grid is None or isinstance(grid, int):
        grid = default_grid(Xmax, grid or 16)
    grid = sorted({int(x) for x in grid if 1 <= x <= Xmax})
    caps = dict(DEFAULT_CAPS if caps is None else caps)
    tasks = []
    for lab in labels:
        cap = caps.get(lab)
        tasks.append((lab, [x for x in grid if cap is None or x <= cap]))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = dict(ex.map(_row_job, tasks))
    else:
        results = dict(map(_row_job, tasks))
    rows = {}
    for lab in labels:
        got = results[lab]
        counts = got + [None] * (len(grid) - len(got))
        a, b = malle_ab(lab)
        rows[lab] = CensusRow(lab, a, b, counts, caps.get(lab))
    table = CensusTable(grid, rows, include_trivial)
    table.violations = check_table(table)
    return table


def check_table(table: CensusTable) -> list[dict]:
    """Symmetry and monotonicity checks on a computed table."""
    out = []
    for p, q in SYMMETRIC_PAIRS:
        if p in table.rows and q in table.rows:
            for X, u, v in zip(table.x_grid, table.rows[p].counts, table.rows[q].counts):
                if u is not None and v is not None and u != v:
                    out.append({"check": "symmetry", "rows": [p, q], "X": X, "counts": [u, v]})
    for r in table.rows.values():
        vals = [c for c in r.counts if c is not None]
        if any(x > y for x, y in zip(vals, vals[1:])):
            out.append({"check": "monotone", "row": r.label})
    return out


# ------------------------------------------------------------ fits

def _design(X: np.ndarray, a: int, k: float):
    L = np.log(X)
    return L / a + k * np.log(L)


def fit_constant(xs, counts, a: int, k: float) -> dict:
    """Fit log N = log c + (1/a) log X + k log log X with a, k fixed."""
    pts = [(x, n) for x, n in zip(xs, counts) if n is not None and n > 0 and x > 2]
    if len(pts) < 5:
        raise InsufficientGrid(f"{len(pts)} usable points, need 5")
    X = np.array([p[0] for p in pts], dtype=float)
    N = np.array([p[1] for p in pts], dtype=float)
    r = np.log(N) - _design(X, a, k)
    logc = float(r.mean())
    res = r - logc
    return {"c": math.exp(logc), "residuals": [float(v) for v in res], "rss": float(res @ res), "points": len(pts)}


def fit_free_b(xs, counts, a: int) -> dict:
    """Fit log N - (1/a) log X = log c + k log log X with k free; b = k + 1."""
    pts = [(x, n) for x, n in zip(xs, counts) if n is not None and n > 0 and x > 2]
    if len(pts) < 5:
        raise InsufficientGrid(f"{len(pts)} usable points, need 5")
    X = np.array([p[0] for p in pts], dtype=float)
    N = np.array([p[1] for p in pts], dtype=float)
    y = np.log(N) - np.log(X) / a
    A = np.column_stack([np.ones_like(X), np.log(np.log(X))])
    (logc, k), *_ = np.linalg.lstsq(A, y, rcond=None)
    res = y - A @ np.array([logc, k])
    return {"c": float(math.exp(logc)), "b": float(k + 1), "rss": float(res @ res)}


def fit_report(table: CensusTable) -> dict[str, dict]:
    """Per-row fit with (a, b) fixed from the group, plus a free-b comparison."""
    if len(table.x_grid) < 5:
        raise InsufficientGrid(f"grid has {len(table.x_grid)} points, need 5")
    out = {}
    for r in table.rows.values():
        try:
            fit = fit_constant(table.x_grid, r.counts, r.a, r.b - 1)
            fit["a"], fit["b"] = r.a, r.b
            fit["free_b"] = fit_free_b(table.x_grid, r.counts, r.a)
        except InsufficientGrid as e:
            fit = {"a": r.a, "b": r.b, "degenerate": True, "reason": str(e)}
        r.fit = fit
        out[r.label] = fit
    return out


def prediction(fit: dict | None, X: int) -> float | None:
    if not fit or fit.get("degenerate"):
        return None
    L = math.log(X)
    return fit["c"] * X ** (1 / fit["a"]) * L ** (fit["b"] - 1)


# ------------------------------------------------------------ bounds and moments

def s3_count_upto(X: int) -> int:
    return sum(1 for F in _s3_cubics(max(int(X), 1)) if F.D <= X)


def bounds_report(table: CensusTable, calibration: float = 0.5) -> dict:
    """Envelope of the total count against X log X, and the sextic lower bound.

    The lower constant c0 is calibration times the ratio at the smallest grid
    point where the total is known; every later ratio must stay above it.
    The (log X)^1.5 ratio is reported only.
    """
    xs, r1, r15 = [], [], []
    for X, t in zip(table.x_grid, table.total):
        if t is None or X < 3:
            continue
        L = math.log(X)
        xs.append(X)
        r1.append(t / (X * L))
        r15.append(t / (X * L ** 1.5))
    violations = []
    c0 = calibration * r1[0] if r1 else None
    for X, v in zip(xs, r1):
        if v < c0:
            violations.append({"check": "lower_envelope", "X": X, "ratio": v, "c0": c0})
    lower = []
    if "H12A" in table.rows:
        for X, n in zip(table.x_grid, table.rows["H12A"].counts):
            if n is None:
                continue
            need = s3_count_upto(X // 16)
            lower.append({"X": X, "count_H12A": n, "s3_bound": need, "ok": n >= need})
            if n < need:
                violations.append({"check": "H12A_lower_bound", "X": X, "count": n, "bound": need})
    return {"x": xs, "ratio_XlogX": r1, "ratio_XlogX15": r15, "c0": c0,
            "h12a_lower": lower, "violations": violations}


@dataclass
class MomentReport:
    grid: list[int]
    rows: list[dict]  # {alpha, side, values, target, asserted}
    violations: list[dict]


def moments_report(Xmax: int, alpha_max: int = 2, grid: list[int] | None = None) -> MomentReport:
    """Averages of prod_{i<alpha}(h3 - 3^i) over real and imaginary quadratic fields.

    Only alpha = 1 is checked: the values must be positive, not overshoot the
    limit (1 imaginary, 1/3 real) by more than 10%, and end closer to it than
    they start.
    """
    rep = dh_average_report(int(Xmax), grid, alpha_max)
    rows, violations = [], []
    for side, mom, target in (("imaginary", rep.imag_moment, 1.0), ("real", rep.real_moment, 1 / 3)):
        for alpha in range(1, alpha_max + 1):
            vals = mom[alpha]
            row = {"alpha": alpha, "side": side, "values": vals,
                   "target": target if alpha == 1 else None, "asserted": alpha == 1}
            rows.append(row)
            if alpha == 1 and vals:
                ok = all(0 < v <= 1.1 * target for v in vals) and abs(vals[-1] - target) <= abs(vals[0] - target)
                if not ok:
                    violations.append({"check": "moment", "side": side, "alpha": 1, "values": vals})
    return MomentReport(rep.grid, rows, violations)


# ------------------------------------------------------------ output

CSV_HEADER = ["X", "group", "count", "a", "b", "fitted_c", "prediction", "ratio"]


def to_csv_rows(table: CensusTable) -> list[list]:
    out = [CSV_HEADER]
    for r in table.rows.values():
        for X, n in zip(table.x_grid, r.counts):
            pred = prediction(r.fit, X)
            c = r.fit.get("c") if r.fit and not r.fit.get("degenerate") else None
            ratio = n / pred if (pred and n is not None) else None
            out.append([X, r.label, n, r.a, r.b, c, pred, ratio])
    for X, t in zip(table.x_grid, table.total):
        out.append([X, "total", t, None, None, None, None, None])
    return out


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _svg(table: CensusTable) -> str:
    W, H, pad = 720, 480, 60
    pts = [(X, n) for r in table.rows.values() for X, n in zip(table.x_grid, r.counts) if n]
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(W), height=str(H))
    ET.SubElement(svg, "title").text = "N(X; H) against X, log-log"
    if not pts:
        return ET.tostring(svg, encoding="unicode")
    lx = [math.log10(x) for x, _ in pts]
    ly = [math.log10(n) for _, n in pts]
    x0, x1 = min(lx), max(lx) or 1
    y0, y1 = min(ly), max(ly)
    sx = (W - 2 * pad) / ((x1 - x0) or 1)
    sy = (H - 2 * pad) / ((y1 - y0) or 1)

    def px(x, y):
        return f"{pad + (math.log10(x) - x0) * sx:.2f},{H - pad - (math.log10(y) - y0) * sy:.2f}"

    ET.SubElement(svg, "rect", x=str(pad), y=str(pad), width=str(W - 2 * pad), height=str(H - 2 * pad),
                  fill="none", stroke="black")
    ET.SubElement(svg, "text", x=str(W // 2), y=str(H - 15), attrib={"text-anchor": "middle"}).text = \
        f"log10 X from {x0:.1f} to {x1:.1f}"
    ET.SubElement(svg, "text", x="10", y=str(pad - 20)).text = f"log10 N from {y0:.1f} to {y1:.1f}"
    for i, r in enumerate(table.rows.values()):
        line = [px(X, n) for X, n in zip(table.x_grid, r.counts) if n]
        if not line:
            continue
        color = f"hsl({(i * 360) // max(len(table.rows), 1)},70%,40%)"
        ET.SubElement(svg, "polyline", points=" ".join(line), fill="none", stroke=color)
        ET.SubElement(svg, "text", x=str(W - pad + 4), y=line[-1].split(",")[1], fill=color,
                      attrib={"font-size": "10"}).text = r.label
    return ET.tostring(svg, encoding="unicode")


def emit(table: CensusTable, formats, out_dir, prefix: str = "census") -> list[Path]:
    """Write the table as csv, json and/or svg into out_dir; returns the paths written."""
    import csv

    if isinstance(formats, str):
        formats = [f for f in formats.split(",") if f]
    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for fmt in formats:
            path = out_dir / f"{prefix}.{fmt}"
            if fmt == "csv":
                with open(path, "w", newline="") as fh:
                    w = csv.writer(fh, lineterminator="\n")
                    for row in to_csv_rows(table):
                        w.writerow([_fmt(v) for v in row])
            elif fmt == "json":
                path.write_text(json.dumps(table.to_json(), indent=1, sort_keys=True) + "\n")
            elif fmt == "svg":
                path.write_text(_svg(table) + "\n")
            else:
                raise ValueError(f"unknown format {fmt}")
            written.append(path)
    except OSError as e:
        raise OSError(f"cannot write census output to {out_dir}: {e}") from e
    return written


def write_violations(violations: list[dict], out_dir) -> Path:
    path = Path(out_dir) / "violations.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(violations, indent=1, sort_keys=True, default=str) + "\n")
    return path


def row_summary(table: CensusTable) -> list[dict]:
    return [asdict(r) for r in table.rows.values()]
