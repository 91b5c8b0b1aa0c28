"""D6 sextic fields as composita L = F K of an S3 cubic F and a quadratic K.

C(L) = D_L / (D_F D_K). Writing N = D_F^2 D_K^3 / D_L, the tame formula
gives v_p(N) = 2 at every prime p > 3 dividing both discriminants and 0 at
other primes p > 3, so only v_2(N) and v_3(N) need a Round-2 computation.
Since L (x) Q_p = (F (x) Q_p) (x) (K (x) Q_p), those valuations depend only
on the local algebras, and the census caches them by local invariants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .arith import QuadField, factor, spf_table
from .cubics import CubicField, CyclicInput, enumerate_cubics
from .nforder import (
    TameLocalType,
    compositum_poly,
    field_disc_info,
    p_index_exponent,
    poly_disc,
    product_cycles,
    quadratic_poly,
    tame_vp,
)
from .quartics import q2_class

BETA = 2 ** 9 * 3 ** 3


class ResolventCollision(ValueError):
    """K is the quadratic resolvent of F, so F K is the Galois closure of F, not a D6 field."""


class ViolationReport(AssertionError):
    def __init__(self, message: str, **fields):
        super().__init__(f"{message}: {fields}")
        self.fields = fields


def _v(n: int, p: int) -> int:
    n = abs(n)
    e = 0
    while n and n % p == 0:
        n //= p
        e += 1
    return e


def _primes(n: int) -> list[int]:
    return [p for p, _ in factor(abs(n))]


def cubic_cycles(vp: int) -> tuple[int, ...]:
    """Inertia cycle type of a cubic field at a prime p > 3 from v_p(D_F)."""
    return {0: (1, 1, 1), 1: (2, 1), 2: (3,)}[vp]


def quad_cycles(vp: int) -> tuple[int, ...]:
    return (2,) if vp else (1, 1)


@dataclass(frozen=True, order=True)
class SexticD6:
    C: int
    D_F: int
    D_K: int
    D_L: int
    F: CubicField = field(compare=False)
    K: QuadField = field(compare=False)

    @property
    def N(self) -> int:
        return self.D_F ** 2 * self.D_K ** 3 // self.D_L


def _check_pair(F: CubicField, K: QuadField) -> None:
    if F.gal != "S3":
        raise CyclicInput("F must be an S3 cubic field")
    if K.d == F.resolvent[0]:
        raise ResolventCollision(f"K = Q(sqrt {K.d}) is the resolvent of F")


def sextic_poly(F: CubicField, K: QuadField) -> list[int]:
    return compositum_poly(F.poly(), quadratic_poly(K.d))[0]


def conductor_D6(F: CubicField, K) -> SexticD6:
    """Exact D_L and C(L) for L = F K, via the maximal order of the compositum."""
    if not isinstance(K, QuadField):
        K = QuadField(int(K))
    _check_pair(F, K)
    h = sextic_poly(F, K)
    DF, DK = F.D, K.D
    primes = sorted(set(_primes(DF)) | set(_primes(DK)))
    hints = []
    for p in primes:
        if p > 3:
            cyc = product_cycles(cubic_cycles(_v(DF, p)), quad_cycles(_v(DK, p)))
            hints.append(TameLocalType(p, cyc))
    info = field_disc_info(h, hints, primes=primes, check_irreducible=False)
    DL = info.field_disc
    if DL % (DF * DK):
        raise ViolationReport("D_F D_K does not divide D_L", D_F=DF, D_K=DK, D_L=DL)
    return SexticD6(DL // (DF * DK), DF, DK, DL, F, K)


def common_radical(DF: int, DK: int) -> int:
    m = 1
    for p in _primes(math.gcd(DF, DK)):
        if p > 3:
            m *= p
    return m


def verify_exponents(s: SexticD6) -> tuple[int, int, int]:
    """(a, b, m) with D_F^2 D_K^3 / D_L = 2^a 3^b m^2; raises ViolationReport otherwise."""
    num = s.D_F ** 2 * s.D_K ** 3
    if num % s.D_L:
        raise ViolationReport("D_L does not divide D_F^2 D_K^3", D_F=s.D_F, D_K=s.D_K, D_L=s.D_L)
    N = num // s.D_L
    a, b = _v(N, 2), _v(N, 3)
    rest = N // (2 ** a * 3 ** b)
    m = common_radical(s.D_F, s.D_K)
    if rest != m * m or not (0 <= a <= 9 and 0 <= b <= 3):
        raise ViolationReport("N is not 2^a 3^b m^2 in range", D_F=s.D_F, D_K=s.D_K, D_L=s.D_L,
                              N=N, a=a, b=b, m=m)
    if s.C * N != s.D_F * s.D_K ** 2:
        raise ViolationReport("C inconsistent with N", C=s.C, N=N)
    return a, b, m


def wang_consistency(F: CubicField, K) -> list[dict]:
    """At each common prime p > 3, compare v_p(D_L) from Round-2 with the tame formula."""
    if not isinstance(K, QuadField):
        K = QuadField(int(K))
    _check_pair(F, K)
    h = sextic_poly(F, K)
    D0 = poly_disc(h)
    out = []
    for p in _primes(math.gcd(F.D, K.D)):
        if p <= 3:
            continue
        r2 = _v(D0, p) - 2 * p_index_exponent(h, p)
        cF = TameLocalType(p, cubic_cycles(_v(F.D, p)))
        cK = TameLocalType(p, quad_cycles(_v(K.D, p)))
        formula = tame_vp(cF, cK, p)
        out.append({"p": p, "round2": r2, "formula": formula, "ok": r2 == formula})
    return out


def galois_closure_check(F: CubicField) -> tuple[int, int, int]:
    """(D_6, D_3, D_2) for the Galois closure of an S3 cubic; Hasse's relation is D_6 = D_3^2 D_2."""
    if F.gal != "S3":
        raise CyclicInput("F must be an S3 cubic field")
    dE = F.resolvent[0]
    h = compositum_poly(F.poly(), quadratic_poly(dE))[0]
    primes = _primes(F.D)
    D6 = field_disc_info(h, primes=primes, check_irreducible=False).field_disc
    return D6, F.D, abs(dE)


# ------------------------------------------------------------ census

class _LocalCache:
    """v_2(N) and v_3(N) for pairs, cached by the local algebras at 2 and 3."""

    def __init__(self):
        self.a: dict[tuple, int] = {}
        self.b: dict[tuple, int] = {}
        self.round2_calls = 0

    def _vp_DL(self, F: CubicField, dK: int, p: int) -> int:
        self.round2_calls += 1
        h = compositum_poly(F.poly(), quadratic_poly(dK))[0]
        return _v(poly_disc(h), p) - 2 * p_index_exponent(h, p)

    def v2N(self, F: CubicField, dK: int) -> int:
        v2F, v2K = _v(F.D, 2), _v(dK, 2)
        if not v2F or not v2K:
            return 0
        key = (v2F, q2_class(F.disc), q2_class(dK))
        if key not in self.a:
            self.a[key] = 2 * v2F + 3 * v2K - self._vp_DL(F, dK, 2)
        return self.a[key]

    def v3N(self, F: CubicField, dK: int) -> int:
        v3F, v3K = _v(F.D, 3), _v(dK, 3)
        if not v3F or not v3K:
            return 0
        if v3F == 1:
            # partially ramified cubic: tame at 3, inertia (2,1) against (2)
            return 2 * v3F + 3 * v3K - (6 - len(product_cycles((2, 1), (2,))))
        # totally ramified cubic at 3 is wild: key on the field itself and the class of K at 3
        key = (F.disc, F.form, (dK // 3) % 3 if dK % 4 else (dK // 12) % 3)
        if key not in self.b:
            self.b[key] = 2 * v3F + 3 * v3K - self._vp_DL(F, dK, 3)
        return self.b[key]


@dataclass(frozen=True, order=True)
class D6Pair:
    C: int
    D_F: int
    D_K: int  # signed
    a: int
    b: int
    m: int
    F: CubicField = field(compare=False)

    @property
    def D_L(self) -> int:
        return self.C * self.D_F * abs(self.D_K)


def _squarefree_coprime6(limit: int) -> list[int]:
    spf = spf_table(max(limit, 2))
    out = []
    for s in range(1, limit + 1):
        if s % 2 == 0 or s % 3 == 0:
            continue
        k, ok = s, True
        while k > 1:
            p = spf[k]
            k //= p
            if k % p == 0:
                ok = False
                break
        if ok:
            out.append(s)
    return out


def d6_pairs(X: int, fields: list[CubicField] | None = None, cache: _LocalCache | None = None) -> Iterator[D6Pair]:
    """All D6 sextics L = F K with C(L) <= X, one per pair (F, K).

    The search region comes from C >= D_F D_K^2 / (2^amax 3^bmax m^2) where
    amax = min(2 v_2 D_F, 3 v_2 D_K), bmax = min(2 v_3 D_F, 3 v_3 D_K) bound
    v_2(N), v_3(N) and m is the common radical above 3; it gives D_F <= 12 X.
    """
    X = int(X)
    if fields is None:
        fields = enumerate_cubics(12 * X)
    cache = cache or _LocalCache()
    # s <= sqrt(X 4^v2F 3^bmax / D_F) <= sqrt(1728 X)
    smax_all = math.isqrt(BETA // 8 * X) + 1
    sq6 = _squarefree_coprime6(smax_all)
    for F in fields:
        if F.gal != "S3" or F.D > 12 * X:
            continue
        DF = F.D
        dE = F.resolvent[0]
        v2F, v3F = _v(DF, 2), _v(DF, 3)
        P = [p for p in _primes(DF) if p > 3]
        rad = 1
        for p in P:
            rad *= p
        for mask in range(1 << len(P)):
            m = 1
            for i, p in enumerate(P):
                if mask >> i & 1:
                    m *= p
            for t in (0, 1):
                for e3 in (0, 1):
                    base = 2 ** t * 3 ** e3 * m
                    bmax = min(2 * v3F, 3 * e3)
                    # |D_K| >= base s and v_2(N) <= 2 v_2(D_F)
                    lim = X * 4 ** v2F * 3 ** bmax * m * m
                    for sign in (1, -1):
                        for s in sq6:
                            if DF * (base * s) ** 2 > lim:
                                break
                            if math.gcd(s, rad) != 1:
                                continue
                            d = sign * base * s
                            if d == 1:
                                continue
                            dK = d if d % 4 == 1 else 4 * d
                            if dK == dE:
                                continue
                            a = cache.v2N(F, dK)
                            b = cache.v3N(F, dK)
                            num = DF * dK * dK
                            den = 2 ** a * 3 ** b * m * m
                            C, r = divmod(num, den)
                            if r:
                                raise ViolationReport("non-integral C", D_F=DF, D_K=dK, a=a, b=b, m=m)
                            if C <= X:
                                yield D6Pair(C, DF, dK, a, b, m, F)


def count_H12A(X, fields: list[CubicField] | None = None) -> int:
    """Number of D6 sextic fields L with C(L) = D_L / (D_F D_K) <= X."""
    X = int(X)
    if X < 1:
        return 0
    return sum(1 for _ in d6_pairs(X, fields))


def ab_table(pairs) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for q in pairs:
        out[(q.a, q.b)] = out.get((q.a, q.b), 0) + 1
    return dict(sorted(out.items()))
