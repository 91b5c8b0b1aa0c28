"""Cubic fields from reduced integral binary cubic forms.

Isomorphism classes of cubic fields correspond to GL2(Z)-classes of
irreducible binary cubic forms that are maximal at every prime.  One
representative per class is produced:

* disc > 0: the Hessian H = (P, Q, R) = (b^2-3ac, bc-9ad, c^2-3bd) is positive
  definite; the form is kept when H is GL2-reduced (0 <= Q <= P <= R) and the
  form is minimal among its images under the automorphisms of H.
* disc < 0: the complex root rho of F(x, 1) is moved into the open region
  0 < Re(rho) < 1/2, |rho| > 1.  An irreducible form never has rho on the
  boundary, so the conditions are strict and decided by exact sign tests:
  bc < ad < (a+b)^2 + c(a+b) and d^2 - bd + ac - a^2 > 0, with a > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .arith import SieveFactorizer, fundamental_discs, is_fundamental, is_square, isqrt, tau_w_mu


class CyclicInput(ValueError):
    pass


# ---------------------------------------------------------------- forms

def cubic_disc(a: int, b: int, c: int, d: int) -> int:
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def hessian(a: int, b: int, c: int, d: int) -> tuple[int, int, int]:
    return b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d


def act(form: tuple[int, int, int, int], g: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    """Twisted action: F(x, y) -> F(px + qy, rx + sy) / det(g), g = (p, q, r, s)."""
    a, b, c, d = form
    p, q, r, s = g
    # coefficients of F(p x + q y, r x + s y)
    A = a * p ** 3 + b * p * p * r + c * p * r * r + d * r ** 3
    B = 3 * a * p * p * q + b * (p * p * s + 2 * p * q * r) + c * (2 * p * r * s + q * r * r) + 3 * d * r * r * s
    C = 3 * a * p * q * q + b * (2 * p * q * s + q * q * r) + c * (p * s * s + 2 * q * r * s) + 3 * d * r * s * s
    D = a * q ** 3 + b * q * q * s + c * q * s * s + d * s ** 3
    det = p * s - q * r
    if det == -1:
        return -A, -B, -C, -D
    return A, B, C, D


def _sign_normal(form):
    return form if form[0] > 0 or (form[0] == 0 and form > (0, 0, 0, 0)) else tuple(-x for x in form)


_GL2_SMALL = [(p, q, r, s) for p in (-1, 0, 1) for q in (-1, 0, 1) for r in (-1, 0, 1) for s in (-1, 0, 1)
              if p * s - q * r in (1, -1)]


@lru_cache(maxsize=4096)
def _quad_automorphs(P: int, Q: int, R: int) -> tuple:
    """GL2(Z) matrices (entries in -1..1) fixing the reduced form P x^2 + Q xy + R y^2."""
    out = []
    for g in _GL2_SMALL:
        p, q, r, s = g
        P2 = P * p * p + Q * p * r + R * r * r
        Q2 = 2 * P * p * q + Q * (p * s + q * r) + 2 * R * r * s
        R2 = P * q * q + Q * q * s + R * s * s
        if (P2, Q2, R2) == (P, Q, R):
            out.append(g)
    return tuple(out)


def is_reduced(form) -> bool:
    """Whether the form is the chosen representative of its GL2(Z)-class."""
    a, b, c, d = form
    D = cubic_disc(a, b, c, d)
    if D == 0 or a <= 0:
        return False
    if D < 0:
        return b * c < a * d < (a + b) ** 2 + c * (a + b) and d * d - b * d + a * c - a * a > 0
    P, Q, R = hessian(a, b, c, d)
    if not (0 <= Q <= P <= R):
        return False
    if Q == 0 or Q == P or P == R:
        best = min(_sign_normal(act(form, g)) for g in _quad_automorphs(P, Q, R))
        return best == tuple(form)
    return True


def has_rational_root(form) -> bool:
    """Exact test whether the binary cubic form has a linear factor over Q."""
    a, b, c, d = form
    if a == 0 or d == 0:
        return True
    roots = np.roots([a, b, c, d])
    for r in roots:
        if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)):
            continue
        for q in _divisors_small(abs(a)):
            p0 = int(round(r.real * q))
            for p in (p0 - 1, p0, p0 + 1):
                if a * p ** 3 + b * p * p * q + c * p * q * q + d * q ** 3 == 0:
                    return True
    return False


@lru_cache(maxsize=None)
def _divisors_small(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if n % k == 0)


def is_maximal_at(form, p: int) -> bool:
    """Maximality of the cubic ring of the form at p (only meaningful when p^2 | disc)."""
    a, b, c, d = form
    if a % p == 0 and b % p == 0 and c % p == 0 and d % p == 0:
        return False
    F = lambda x, y: a * x ** 3 + b * x * x * y + c * x * y * y + d * y ** 3
    Fx = lambda x, y: 3 * a * x * x + 2 * b * x * y + c * y * y
    Fy = lambda x, y: b * x * x + 2 * c * x * y + 3 * d * y * y
    points = [(1, 0)] + [(x, 1) for x in range(p)]
    for x, y in points:
        if F(x, y) % p == 0 and Fx(x, y) % p == 0 and Fy(x, y) % p == 0:
            return F(x, y) % (p * p) != 0
    return True


def monic_poly(form) -> list[int]:
    """Monic polynomial (low degree first) of a*theta for the root theta of F(x, 1)."""
    a, b, c, d = form
    return [a * a * d, a * c, b, 1]


# -------------------------------------------------------------- enumeration

def _positive_forms(X: int) -> Iterator[tuple[int, int, int, int]]:
    """Forms with 0 < disc <= X whose Hessian is GL2-reduced, a > 0."""
    amax = int((2 / 3) ** 1.5 * X ** 0.25) + 1
    Pmax = isqrt(X)
    for a in range(1, amax + 1):
        m3 = 3 * a
        roots_by_res: dict[int, list[int]] = {}
        for r in range(m3):
            roots_by_res.setdefault(r * r % m3, []).append(r)
        lim27 = 27 * a * a * X
        for P in range(1, Pmax + 1):
            res = roots_by_res.get(P % m3)
            if not res:
                continue
            sP = math.sqrt(P)
            blo = math.floor(-sP) - 1
            bhi = math.ceil(1.5 * a + sP) + 1
            fourP3 = 4 * P ** 3
            for r in res:
                b = blo + ((r - blo) % m3)
                while b <= bhi:
                    num = b ** 3 - b * P
                    q0 = (num // m3) % (9 * a)
                    c = (b * b - P) // m3
                    for Q in range(q0, P + 1, 9 * a):
                        t = 2 * P * b - m3 * Q
                        rem = fourP3 - t * t
                        if rem <= 0:
                            if t > 0:
                                continue
                            break
                        if rem > lim27:
                            continue
                        dnum = num - m3 * Q
                        if dnum % (27 * a * a):
                            continue
                        d = dnum // (27 * a * a)
                        R = c * c - 3 * b * d
                        if R < P:
                            continue
                        yield (a, b, c, d)
                    b += m3


def _negative_forms(X: int) -> Iterator[tuple[int, int, int, int]]:
    """Reduced forms with -X <= disc < 0."""
    amax = int((16 * X / 27) ** 0.25) + 1
    for a in range(1, amax + 1):
        T = (X / (3 * a ** 4)) ** 0.25
        S = (X / (4 * a ** 4)) ** (1 / 3)
        bmin = math.floor(-a * (T + 1.5)) - 1
        bmax = math.ceil(a * T) + 1
        cmin = math.floor(-a * T) - 1
        cmax = math.ceil(a * (T + 0.75 + S)) + 1
        a2_27 = 27 * a * a
        for b in range(bmin, bmax + 1):
            for c in range(cmin, cmax + 1):
                P = b * b - 3 * a * c
                top = 4 * P ** 3 + a2_27 * X
                if top < 0:
                    continue
                # linear window bc < ad < (a+b)^2 + c(a+b)
                dlo = (b * c) // a + 1
                dhi = -((-((a + b) ** 2 + c * (a + b))) // a) - 1
                if dlo > dhi:
                    continue
                G0 = 2 * b ** 3 - 9 * a * b * c
                Gmax = isqrt(top)
                # d values with |G| <= Gmax, G = G0 + 27 a^2 d
                lo = max(dlo, -((Gmax + G0) // a2_27))
                hi = min(dhi, (Gmax - G0) // a2_27)
                for d in range(lo, hi + 1):
                    D = cubic_disc(a, b, c, d)
                    if D >= 0 or D < -X:
                        continue
                    if d * d - b * d + a * c - a * a <= 0:
                        continue
                    yield (a, b, c, d)


@dataclass(frozen=True, order=True)
class CubicField:
    D: int  # absolute discriminant
    sign: int  # sign of the discriminant
    form: tuple[int, int, int, int]

    @property
    def disc(self) -> int:
        return self.sign * self.D

    @property
    def gal(self) -> str:
        return "C3" if self.sign > 0 and is_square(self.D) else "S3"

    @property
    def resolvent(self) -> tuple[int, int]:
        """(signed D_E, f) with disc = D_E f^2, D_E fundamental (S3 only)."""
        return resolvent_split(self.disc)

    def poly(self) -> list[int]:
        return monic_poly(self.form)


def resolvent_split(disc: int) -> tuple[int, int]:
    s = -1 if disc < 0 else 1
    n = abs(disc)
    core, sq = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            core *= p
        sq *= p ** (e // 2)
        p += 1
    core *= m
    dE = s * core
    f = sq
    if dE % 4 != 1:
        dE *= 4
        if f % 2:
            raise ValueError(f"{disc} is not a discriminant")
        f //= 2
    if not is_fundamental(dE):
        raise ValueError(f"{disc} has no fundamental part")
    return dE, f


def resolvent_data(F: CubicField) -> tuple[int, int]:
    if F.gal == "C3":
        raise CyclicInput(F)
    return F.resolvent


def _field_forms(X: int, sign: str) -> list[tuple[int, int, int, int]]:
    gens = []
    if sign in ("both", "real"):
        gens.append(_positive_forms(X))
    if sign in ("both", "imag"):
        gens.append(_negative_forms(X))
    forms = [f for g in gens for f in g]
    return forms


def enumerate_cubics(Xmax: int, sign: str = "both", factorizer: SieveFactorizer | None = None) -> list[CubicField]:
    """All cubic fields with |disc| <= Xmax (sign in both/real/imag), sorted by (D, sign, form)."""
    Xmax = int(Xmax)
    if Xmax < 1:
        return []
    sf = factorizer if factorizer is not None and factorizer.limit >= Xmax else SieveFactorizer(Xmax)
    out = []
    for form in _field_forms(Xmax, sign):
        D = cubic_disc(*form)
        if D > 0 and not is_reduced(form):
            continue
        ok = True
        for p, e in sf.factor(D):
            if e >= 2 and not is_maximal_at(form, p):
                ok = False
                break
        if not ok or has_rational_root(form):
            continue
        out.append(CubicField(abs(D), 1 if D > 0 else -1, form))
    out.sort()
    return out


def count_by_disc(fields: list[CubicField]) -> dict[int, int]:
    """Number of fields for each signed discriminant."""
    out: dict[int, int] = {}
    for F in fields:
        out[F.disc] = out.get(F.disc, 0) + 1
    return out


# ------------------------------------------------------------ h3 and g(X)

class CubicCounts:
    """Counts of cubic fields by signed discriminant, for the h3 bridge."""

    def __init__(self, Xmax: int, fields: list[CubicField] | None = None):
        self.Xmax = int(Xmax)
        if fields is None:
            fields = enumerate_cubics(self.Xmax)
        self.fields = fields
        self.by_disc = count_by_disc(fields)

    def h3(self, d: int) -> int:
        if abs(d) > self.Xmax:
            raise ValueError(f"|{d}| exceeds the enumerated range {self.Xmax}")
        return 2 * self.by_disc.get(d, 0) + 1


def h3(d: int, counts: CubicCounts | None = None) -> int:
    """3-torsion size of the class group of Q(sqrt d), via cubic fields of disc d."""
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    if counts is None or abs(d) > counts.Xmax:
        counts = CubicCounts(abs(d), [F for F in enumerate_cubics(abs(d)) if F.D == abs(d)])
    return counts.h3(d)


def g_function(Xmax: int, grid: list[int] | None = None, counts: CubicCounts | None = None) -> list[tuple[int, int]]:
    """Partial sums g(X) = sum over quadratic E with D_E < X of h3(E) tau(D_E)."""
    Xmax = int(Xmax)
    if counts is None or counts.Xmax < Xmax:
        counts = CubicCounts(Xmax)
    grid = sorted(set(grid or []) | {Xmax})
    discs = fundamental_discs(1, Xmax)
    out = []
    total = 0
    i = 0
    for X in grid:
        while i < len(discs) and abs(discs[i]) < X:
            d = discs[i]
            total += counts.h3(d) * tau_w_mu(abs(d))[0]
            i += 1
        out.append((X, total))
    return out


@dataclass
class DHReport:
    grid: list[int]
    imag_mean: list[float]
    real_mean: list[float]
    imag_moment: dict[int, list[float]]
    real_moment: dict[int, list[float]]


def dh_average_report(Xmax: int, grid: list[int] | None = None, alpha_max: int = 2,
                      counts: CubicCounts | None = None) -> DHReport:
    """Means of h3 and of prod_{i<alpha}(h3 - 3^i) over real and imaginary fields."""
    Xmax = int(Xmax)
    if counts is None or counts.Xmax < Xmax:
        counts = CubicCounts(Xmax)
    if grid is None:
        grid = [int(round(10 ** k)) for k in np.linspace(3, math.log10(Xmax), 8)]
    grid = sorted(set(min(g, Xmax) for g in grid))
    discs = fundamental_discs(1, Xmax)
    sums = {s: [0, 0] + [0] * alpha_max for s in (1, -1)}
    rep = DHReport(grid, [], [], {k: [] for k in range(1, alpha_max + 1)},
                   {k: [] for k in range(1, alpha_max + 1)})
    i = 0
    for X in grid:
        while i < len(discs) and abs(discs[i]) <= X:
            d = discs[i]
            h = counts.h3(d)
            s = sums[1 if d > 0 else -1]
            s[0] += 1
            s[1] += h
            prod = 1
            for k in range(1, alpha_max + 1):
                prod *= h - 3 ** (k - 1)
                s[1 + k] += prod
            i += 1
        for sgn, mean_list, mom in ((-1, rep.imag_mean, rep.imag_moment), (1, rep.real_mean, rep.real_moment)):
            s = sums[sgn]
            mean_list.append(s[1] / s[0] if s[0] else float("nan"))
            for k in range(1, alpha_max + 1):
                mom[k].append(s[1 + k] / s[0] if s[0] else float("nan"))
    return rep
