"""Quartic fields with a quadratic subfield, ordered by C = D_L / D_K.

A quartic L containing K = Q(sqrt d) is K(sqrt alpha) for alpha in
K*/K*^2, up to conjugation. The norm class n = N(alpha) mod Q*^2 fixes
the Galois type: n = 1 gives V4, n = d gives C4, anything else D4. For a
fixed norm class the admissible alpha are r * beta0 with r rational, where
beta0 is one solution of the Legendre conic x^2 - d y^2 = n z^2. The
relative discriminant of K(sqrt alpha)/K is read off locally: an odd prime
ideal contributes when v(alpha) is odd, and the primes above 2 are handled
by the quadratic defect of alpha.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .arith import (
    NotFundamental,
    QuadField,
    factor,
    fundamental_discs,
    hilbert_symbol,
    is_fundamental,
    is_square,
    isqrt,
    kronecker,
    spf_table,
    sqrt_mod_squarefree,
    squarefree_part,
)
from .nforder import Reducible, _integer_divisors, is_irreducible, poly_disc, trim


def d_sf_of(D: int) -> int:
    """Squarefree d with K = Q(sqrt d) for a fundamental discriminant D."""
    return D // 4 if D % 4 == 0 else D


# ----------------------------------------------------------- local at 2

def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def _v2q(x: Fraction) -> int:
    return _v2(x.numerator) - _v2(x.denominator)


def _sqrt_2adic(d: int, M: int) -> int:
    """s with s^2 = d mod 2^M, for d = 1 mod 8."""
    s = 1
    for k in range(3, M):
        if (s * s - d) % (1 << (k + 1)):
            s += 1 << (k - 1)
    return s


def _q2_exponent(a: int) -> int:
    """Discriminant exponent of Q_2(sqrt a)/Q_2."""
    v = _v2(a)
    if v % 2:
        return 3
    u = (a >> v) % 8
    return 2 if u % 4 == 3 else 0


def two_adic_exponent(d: int, x: int, y: int) -> int:
    """v_2 of N(disc(K(sqrt alpha)/K)) for alpha = x + y sqrt(d), d squarefree, alpha != 0."""
    N = x * x - d * y * y
    if N == 0:
        raise ValueError("alpha must be nonzero and d not a square")
    if d % 8 == 1:
        M = _v2(N) + 8
        s = _sqrt_2adic(d, M)
        mod = 1 << M
        return sum(_q2_exponent((x + e * y * s) % mod or mod) for e in (1, -1))
    if d % 8 == 5:
        v = _v2(N) // 2
        if v % 2:
            return 6
        # u = alpha / 2^v; units mod 2 are 1, w, 1 + w with w = (1 + sqrt d)/2
        ux, uy = Fraction(x, 1 << v), Fraction(y, 1 << v)
        for wx, wy in ((1, 0), (Fraction(1, 2), Fraction(1, 2)), (Fraction(3, 2), Fraction(1, 2))):
            sx, sy = wx * wx + d * wy * wy, 2 * wx * wy
            dx, dy = ux - sx, uy - sy
            nn = dx * dx - d * dy * dy
            if nn == 0 or _v2q(nn) >= 4:
                return 0
        return 4
    # ramified: e = 2, f = 1
    v = _v2(N)
    if v % 2:
        return 5
    px, py = (1, 1) if d % 4 == 3 else (0, 1)
    Np = px * px - d * py * py
    # u = alpha * conj(pi)^v / N(pi)^v
    ux, uy = Fraction(x), Fraction(y)
    for _ in range(v):
        ux, uy = (ux * px - d * uy * py) / Np, (uy * px - ux * py) / Np
    t = 0
    for a in range(4):
        for b in range(4):
            if (a * a - d * b * b) % 2 == 0:
                continue
            sx, sy = a * a + d * b * b, 2 * a * b
            dx, dy = ux - sx, uy - sy
            nn = dx * dx - d * dy * dy
            k = 99 if nn == 0 else _v2q(nn)
            t = max(t, k)
    if t >= 4:
        return 0
    return 5 - t


# --------------------------------------------------------- Legendre conic

def _sqf_with_square(n: int) -> tuple[int, int]:
    """n = k * m^2 with k squarefree (sign kept in k)."""
    k = 1 if n > 0 else -1
    m = 1
    for p, e in factor(abs(n)):
        k *= p ** (e % 2)
        m *= p ** (e // 2)
    return k, m


def legendre_solve(a: int, b: int) -> tuple[int, int, int] | None:
    """Nontrivial integer (x, y, z) with x^2 = a y^2 + b z^2, a and b squarefree; None if none exists."""
    for p in {0, 2} | {q for q, _ in factor(abs(a))} | {q for q, _ in factor(abs(b))}:
        if hilbert_symbol(a, b, p) != 1:
            return None
    return _descent(a, b)


def _descent(a: int, b: int) -> tuple[int, int, int]:
    if a == 1:
        return 1, 1, 0
    if b == 1:
        return 1, 0, 1
    if a + b == 0:
        return 0, 1, 1
    if abs(a) > abs(b):
        x, y, z = _descent(b, a)
        return x, z, y
    m = abs(b)
    t = sqrt_mod_squarefree(a % m, [p for p, _ in factor(m)]) if m > 1 else 0
    if t > m // 2:
        t -= m
    k, s = _sqf_with_square((t * t - a) // b)
    X, Y, Z = _descent(a, k)
    x, y, z = t * X + a * Y, X + t * Y, k * s * Z
    g = math.gcd(math.gcd(x, y), z)
    return x // g, y // g, z // g


# ------------------------------------------------------- Galois type

def _integer_roots(f: list[int]) -> list[int]:
    """Integer roots of a monic integer polynomial (low degree first)."""
    f = trim(f)
    out = set()
    if f[0] == 0:
        out.add(0)
    while len(f) > 1 and f[0] == 0:
        f = f[1:]
    if len(f) <= 1:
        return sorted(out)
    for q in _integer_divisors(f[0]):
        for r in (q, -q):
            v = 0
            for c in reversed(f):
                v = v * r + c
            if v == 0:
                out.add(r)
    return sorted(out)


def _is_rat_square(x: Fraction) -> bool:
    return x >= 0 and is_square(x.numerator) and is_square(x.denominator)


def resolvent_cubic(f: list[int]) -> list[int]:
    """Resolvent cubic with roots r1 r2 + r3 r4 etc. of a monic quartic."""
    d, c, b, a, _ = trim(f)
    return [-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1]


def galois_type_quartic(f: list[int]) -> str:
    """C4, V4, D4, A4 or S4 for an irreducible monic quartic (low degree first)."""
    f = trim(f)
    if len(f) != 5 or f[-1] != 1:
        raise ValueError("monic quartic expected")
    if not is_irreducible(f):
        raise Reducible(f)
    d, c, b, a, _ = f
    R = resolvent_cubic(f)
    roots = _integer_roots(R)
    Delta = poly_disc(f)
    if not roots:
        return "A4" if is_square(Delta) else "S4"
    if len(roots) == 3 or (len(roots) == 2):
        return "V4"
    th = Fraction(roots[0])
    # Kappe-Warren: C4 iff both quadratics split over Q(sqrt Delta)
    for disc in (th * th - 4 * d, a * a - 4 * (b - th)):
        if disc != 0 and not _is_rat_square(disc) and not _is_rat_square(disc * Delta):
            return "D4"
    return "C4"


# ------------------------------------------------------------- families

_CLASS_REPS = (1, 3, 5, 7, 2, 6, 10, 14)


def q2_class(r: int) -> int:
    """Representative in {1,3,5,7,2,6,10,14} of the class of r in Q_2*/Q_2*^2."""
    v = _v2(r)
    return ((r >> v) % 8) << (v % 2)


def _span(gens) -> set[int]:
    out = {1}
    for g in gens:
        out |= {q2_class(g * x) for x in out}
    return out


@dataclass(frozen=True)
class RelQuadCandidate:
    """alpha = x + y sqrt(d) in K = Q(sqrt d); L = K(sqrt alpha)."""
    K: QuadField
    x: int
    y: int

    @property
    def d(self) -> int:
        return d_sf_of(self.K.d)

    def poly(self) -> list[int]:
        """Defining polynomial of L over Q, low degree first.

        This is the minimal polynomial of sqrt(alpha), or of sqrt(x) + sqrt(d)
        when alpha = x is rational (then sqrt(alpha) has degree 2 only).
        """
        x, y, d = self.x, self.y, self.d
        if y == 0:
            return [(x - d) ** 2, 0, -2 * (x + d), 0, 1]
        return [x * x - d * y * y, 0, -2 * x, 0, 1]


@dataclass(frozen=True, order=True)
class QuarticD4:
    C: int
    D_K: int
    D_L: int
    gal: str
    candidate: RelQuadCandidate = field(compare=False)


@dataclass
class NormFamily:
    """All alpha in K with N(alpha) in n Q*^2, as r * beta0 for rational r."""
    D_K: int  # signed fundamental discriminant
    d: int
    n: int
    beta0: tuple[int, int]
    c2: dict[int, int]  # 2-adic class of r -> v_2 of N(relative disc) of r beta0
    odd_primes: tuple[int, ...]  # odd primes dividing d n

    @property
    def gal(self) -> str:
        if self.n == 1:
            return "V4"
        if self.n == self.d:
            return "C4"
        return "D4"

    @property
    def base(self) -> int:
        """|D_K| times the odd part of the relative discriminant norm coming from beta0."""
        m = abs(self.n)
        return abs(self.D_K) * (m >> _v2(m))

    @property
    def H(self) -> tuple[int, ...]:
        """Rational r giving the same field (up to isomorphism) as r = 1."""
        out = {1, self.d, self.n, squarefree_part(self.d * self.n)}
        return tuple(sorted(out))


def is_norm_class(d: int, n: int, d_primes, n_primes) -> bool:
    """Whether the squarefree n is a norm from Q(sqrt d) (Hilbert symbols at all places)."""
    if d < 0 and n < 0:
        return False
    for p in n_primes:
        if p == 2:
            continue
        if d % p:
            if kronecker(d, p) != 1:
                return False
        elif hilbert_symbol(d, n, p) != 1:
            return False
    for p in d_primes:
        if p != 2 and n % p and kronecker(n, p) != 1:
            return False
    # the symbol at 2 follows from the product formula
    return True


def _split_valuations(d: int, x: int, y: int, p: int) -> tuple[int, int]:
    """(v_P, v_P') of x + y sqrt d at the two primes above an odd split p."""
    k = 0
    while x % p == 0 and y % p == 0:
        x //= p
        y //= p
        k += 1
    N = x * x - d * y * y
    e = 0
    while N % p == 0:
        N //= p
        e += 1
    if e == 0:
        return k, k
    s = sqrt_mod_squarefree(d % p, [p])
    if (x + y * s) % p == 0:
        return k + e, k
    return k, k + e


def _normalize_beta(d: int, n: int, x: int, y: int, z: int) -> tuple[int, int]:
    """Multiply beta = x + y sqrt d by a rational so that v_P(beta) is odd only above primes of 2n."""
    r0 = 1
    for p, _ in factor(abs(z)):
        if p == 2 or n % p == 0 or d % p == 0:
            continue
        if kronecker(d, p) == 1:
            e1, e2 = _split_valuations(d, x, y, p)
            if e1 % 2 and e2 % 2:
                r0 *= p
        else:
            k = 0
            xx, yy = x, y
            while xx % p == 0 and yy % p == 0:
                xx //= p
                yy //= p
                k += 1
            if k % 2:
                r0 *= p
    x, y = r0 * x, r0 * y
    # strip rational square factors to keep numbers small
    g = math.gcd(x, y)
    s = 1
    for p, e in factor(g) if g > 1 else []:
        s *= p ** (e // 2)
    return x // (s * s), y // (s * s)


def norm_family(D_K: int, n: int, d_primes=None, n_primes=None) -> NormFamily | None:
    """The family of alpha with N(alpha) in n Q*^2, or None when n is not a norm from K."""
    d = d_sf_of(D_K)
    if d_primes is None:
        d_primes = [p for p, _ in factor(abs(d))]
    if n_primes is None:
        n_primes = [p for p, _ in factor(abs(n))]
    if not is_norm_class(d, n, d_primes, n_primes):
        return None
    if n == 1:
        x, y = 1, 0
    else:
        sol = _descent(d, n)
        x, y, z = sol
        x, y = _normalize_beta(d, n, x, y, z)
    c2 = {rho: two_adic_exponent(d, rho * x, rho * y) for rho in _CLASS_REPS}
    odd = tuple(sorted({p for p in list(d_primes) + list(n_primes) if p != 2}))
    return NormFamily(D_K, d, n, (x, y), c2, odd)


def _odd_squarefree(limit: int) -> list[int]:
    spf = spf_table(max(limit, 2))
    out = []
    for m in range(1, limit + 1, 2):
        k, ok = m, True
        while k > 1:
            p = spf[k]
            k //= p
            if k % p == 0:
                ok = False
                break
        if ok:
            out.append(m)
    return out


def family_weights(fam: NormFamily, Y: int, rout: list[int] | None = None) -> list[tuple[int, int]]:
    """(C, multiplicity) for the fields of the family with C <= Y."""
    B = fam.base
    if B > Y:
        return []
    if rout is None:
        rout = _odd_squarefree(isqrt(Y // B))
    dn = 1
    for p in fam.odd_primes:
        dn *= p
    im = _span([7, 2] + [p % 8 for p in fam.odd_primes])
    Hgens = [fam.d, fam.n]
    phiH = _span(Hgens)
    H_order = len(fam.H)
    reps = []
    covered: set[int] = set()
    for c in sorted(im):
        if c not in covered:
            reps.append(c)
            covered |= {q2_class(c * h) for h in phiH}
    G = 1 << (len(fam.odd_primes) + 2)
    W, rem = divmod(G * len(phiH), len(im) * H_order)
    assert rem == 0
    out: dict[int, int] = {}
    R2 = Y // B
    for r in rout:
        rr = r * r
        if rr > R2:
            break
        if math.gcd(r, dn) != 1:
            continue
        for c in reps:
            C = B * rr << fam.c2[q2_class(c * r)]
            if C <= Y:
                out[C] = out.get(C, 0) + W
    if fam.n == 1:
        # r in <d> gives alpha a square
        C0 = abs(fam.D_K)
        out[C0] -= 1
        if not out[C0]:
            del out[C0]
    return sorted(out.items())


def _coset_reps(fam: NormFamily) -> list[int]:
    basis = [-1, 2] + list(fam.odd_primes)
    seen = set()
    reps = []
    for mask in range(1 << len(basis)):
        r = 1
        for i, b in enumerate(basis):
            if mask >> i & 1:
                r *= b
        key = min((abs(squarefree_part(r * h)), squarefree_part(r * h) < 0) for h in fam.H)
        if key in seen:
            continue
        seen.add(key)
        reps.append(key[0] * (-1 if key[1] else 1))
    return sorted(reps, key=lambda r: (abs(r), r < 0))


def family_fields(fam: NormFamily, Y: int) -> Iterator[QuarticD4]:
    """Explicit fields of the family with C <= Y, one per isomorphism class."""
    B = fam.base
    if B > Y:
        return
    K = QuadField(fam.D_K)
    dn = 1
    for p in fam.odd_primes:
        dn *= p
    x0, y0 = fam.beta0
    for rS in _coset_reps(fam):
        for r in _odd_squarefree(isqrt(Y // B)):
            if math.gcd(r, dn) != 1 or (fam.n == 1 and r == 1 and rS in fam.H):
                continue
            C = B * r * r << fam.c2[q2_class(rS * r)]
            if C <= Y:
                rho = rS * r
                yield QuarticD4(C, abs(fam.D_K), abs(fam.D_K) * C, fam.gal,
                                RelQuadCandidate(K, rho * x0, rho * y0))


def _norm_candidates(D_K: int, Y: int, spf, odd_sqf, types) -> Iterator[tuple[int, list[int]]]:
    """Squarefree n (with their primes) whose family can reach C <= Y."""
    d = d_sf_of(D_K)
    nmax = Y // abs(D_K)
    for m in odd_sqf:
        if m > nmax:
            break
        primes = []
        k = m
        while k > 1:
            primes.append(spf[k])
            k //= spf[k]
        for s in (1, -1):
            for two in (1, 2):
                n = s * two * m
                g = "V4" if n == 1 else "C4" if n == d else "D4"
                if g in types:
                    yield n, primes + ([2] if two == 2 else [])


def enumerate_relquad(K, Ymax: int, types=("C4", "V4", "D4")) -> list[QuarticD4]:
    """Every quartic L containing K with D_L/D_K <= Ymax, once per isomorphism class."""
    if not isinstance(K, QuadField):
        K = QuadField(int(K))
    Y = int(Ymax)
    out: list[QuarticD4] = []
    if abs(K.d) > Y:
        return out
    d = d_sf_of(K.d)
    d_primes = [p for p, _ in factor(abs(d))]
    nmax = Y // abs(K.d)
    spf = spf_table(max(nmax, 2))
    for n, n_primes in _norm_candidates(K.d, Y, spf, _odd_squarefree(nmax), types):
        fam = norm_family(K.d, n, d_primes, n_primes)
        if fam is not None:
            out.extend(family_fields(fam, Y))
    out.sort(key=lambda q: (q.C, q.D_K, q.candidate.x, q.candidate.y))
    return out


def conductor_histogram(X: int, types=("D4",)) -> dict[str, dict[int, int]]:
    """For each Galois type, C -> number of quartic fields (with quadratic subfield) of that C, C <= X.

    V4 fields are counted once for each of their three quadratic subfields.
    """
    X = int(X)
    hist: dict[str, dict[int, int]] = {t: {} for t in types}
    if X < 3:
        return hist
    spf = spf_table(X)
    odd_sqf = _odd_squarefree(X)
    rout = _odd_squarefree(isqrt(X))
    for D in fundamental_discs(1, X):
        d = d_sf_of(D)
        d_primes = [p for p, _ in factor(abs(d))]
        for n, n_primes in _norm_candidates(D, X, spf, odd_sqf, types):
            fam = norm_family(D, n, d_primes, n_primes)
            if fam is None:
                continue
            h = hist[fam.gal]
            for C, w in family_weights(fam, X, rout):
                h[C] = h.get(C, 0) + w
    return hist


def cumulative_counts(hist: dict[int, int], grid) -> list[int]:
    items = sorted(hist.items())
    out = []
    i = 0
    s = 0
    for y in sorted(grid):
        while i < len(items) and items[i][0] <= y:
            s += items[i][1]
            i += 1
        out.append(s)
    return out


def count_H8A(X) -> int:
    """Number of D4 quartic fields L with D_L / D_K <= X."""
    X = int(X)
    if X < 1:
        return 0
    return sum(conductor_histogram(X, ("D4",))["D4"].values())


def c_D4(P: int = 2 * 10 ** 6) -> float:
    """(3/4) prod_p (1 - p^-2 - 2 p^-3 + 2 p^-4).

    Primes up to P are multiplied in; the tail is approximated by
    exp(-sum_{p > P} p^-2) with sum_{p > P} p^-2 ~ 1 / (P log P).
    """
    from .arith import primes_up_to

    out = 0.75
    for p in primes_up_to(P):
        out *= 1 - p ** -2 - 2 * p ** -3 + 2 * p ** -4
    return out * math.exp(-1 / (P * math.log(P)))
