"""Counting C3, C4 and C6 fields by conductor.

Characters are handled through their local components: the number of
primitive Dirichlet characters of conductor f with chi^m = 1 is a product
over p^k || f of local counts, and fields of cyclic degree m correspond to
primitive characters of exact order m up to the phi(m) generators of the
group they span.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .arith import fundamental_discs, isqrt, spf_table


# ---------------------------------------------------------- local counts

def _unit_group_orders(p: int, k: int) -> list[int]:
    """Cyclic factor orders of (Z/p^k)^*."""
    if k == 0:
        return []
    if p == 2:
        if k == 1:
            return []
        if k == 2:
            return [2]
        return [2, 2 ** (k - 2)]
    return [(p - 1) * p ** (k - 1)]


def _chars_killed_by(m: int, p: int, k: int) -> int:
    """Number of characters mod p^k with chi^m = 1."""
    out = 1
    for n in _unit_group_orders(p, k):
        out *= math.gcd(m, n)
    return out


@lru_cache(maxsize=None)
def local_primitive(m: int, p: int, k: int) -> int:
    """Number of primitive characters of conductor exactly p^k with chi^m = 1."""
    if k == 0:
        return 1
    return _chars_killed_by(m, p, k) - _chars_killed_by(m, p, k - 1)


def _mobius(n: int) -> int:
    out = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def exact_order_primitive(m: int, fac: list[tuple[int, int]]) -> int:
    """Primitive characters of conductor prod p^k (fac) and exact order m."""
    total = 0
    for d in range(1, m + 1):
        if m % d:
            continue
        mu = _mobius(m // d)
        if mu == 0:
            continue
        prod = 1
        for p, k in fac:
            prod *= local_primitive(d, p, k)
            if not prod:
                break
        total += mu * prod
    return total


def _totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def _factor_with(spf: list[int], n: int) -> list[tuple[int, int]]:
    out = []
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def cyclic_counts_by_conductor(m: int, Y: int) -> list[int]:
    """cnt[f] = number of cyclic degree-m fields with conductor f, 0 <= f <= Y."""
    Y = int(Y)
    spf = spf_table(max(Y, 1))
    phi = _totient(m)
    cnt = [0] * (Y + 1)
    for f in range(2, Y + 1):
        c = exact_order_primitive(m, _factor_with(spf, f))
        if c:
            assert c % phi == 0
            cnt[f] = c // phi
    return cnt


# ------------------------------------------------------------------ C3

def c3_conductor_multiplicities(Y: int) -> list[int]:
    """cnt[f] = 2^(t-1) for admissible C3 conductors f <= Y, else 0.

    Admissible: f = (1 or 9) times distinct primes = 1 mod 3; t counts
    the prime factors with 9 counted once.
    """
    Y = int(Y)
    cnt = [0] * (Y + 1)
    spf = spf_table(max(Y, 1))
    for f in range(2, Y + 1):
        fac = _factor_with(spf, f)
        good = True
        tt = 0
        for p, e in fac:
            if p == 3:
                if e != 2:
                    good = False
                    break
            elif p % 3 != 1 or e != 1:
                good = False
                break
            tt += 1
        if good:
            cnt[f] = 2 ** (tt - 1)
    return cnt


def count_C3_by_conductor(Y: int) -> int:
    if Y < 1:
        return 0
    return sum(c3_conductor_multiplicities(int(Y)))


def count_C4_by_conductor(Y: int) -> int:
    if Y < 1:
        return 0
    return sum(cyclic_counts_by_conductor(4, int(Y)))


def count_C6_by_conductor(Y: int) -> int:
    """C6 fields with conductor <= Y, as pairs (C3 field, quadratic field) with lcm of conductors <= Y."""
    Y = int(Y)
    if Y < 1:
        return 0
    c3 = c3_conductor_multiplicities(Y)
    # sgn[D] = number of quadratic fields with |disc| = D
    sgn = [0] * (Y + 1)
    for d in fundamental_discs(1, Y):
        sgn[abs(d)] += 1
    spf = spf_table(Y)
    total = 0
    for f3 in range(7, Y + 1):
        m3 = c3[f3]
        if not m3:
            continue
        emax = Y // f3
        n = 0
        for g in range(1, f3 + 1):
            if f3 % g:
                continue
            # D = g e with gcd(e, f3/g) = 1, by inclusion-exclusion on the primes of f3/g
            primes = [p for p, _ in _factor_with(spf, f3 // g)]
            for mask in range(1 << len(primes)):
                k, mu = 1, 1
                for i, p in enumerate(primes):
                    if mask >> i & 1:
                        k *= p
                        mu = -mu
                step = g * k
                top = step * (emax // k)
                if top:
                    n += mu * sum(sgn[step:top + 1:step])
        total += m3 * n
    return total


def count_by_conductor(group: str, Y: int) -> int:
    group = group.upper()
    if group == "C3":
        return count_C3_by_conductor(Y)
    if group == "C4":
        return count_C4_by_conductor(Y)
    if group == "C6":
        return count_C6_by_conductor(Y)
    raise ValueError(f"unsupported group {group}")


def cumulative(cnt: list[int]) -> list[int]:
    out = []
    s = 0
    for c in cnt:
        s += c
        out.append(s)
    return out


def conductor_grid_counts(group: str, Y: int, grid: list[int]) -> list[tuple[int, int]]:
    """(y, count with conductor <= y) for y in grid, from a single sieve up to Y."""
    group = group.upper()
    Y = int(Y)
    if group == "C3":
        cum = cumulative(c3_conductor_multiplicities(Y))
    elif group == "C4":
        cum = cumulative(cyclic_counts_by_conductor(4, Y))
    elif group == "C6":
        cum = cumulative(cyclic_counts_by_conductor(6, Y))
    else:
        raise ValueError(group)
    return [(y, cum[min(int(y), Y)]) for y in grid]


def census_rows(X: int) -> dict[str, int]:
    """Rows H3A, H4A, H6A: conductor squared is the torus conductor."""
    y = isqrt(int(X))
    return {
        "H3A": count_C3_by_conductor(y),
        "H4A": count_C4_by_conductor(y),
        "H6A": count_C6_by_conductor(y),
    }


def log_power_fit(points: list[tuple[int, int]], k: int) -> tuple[float, float]:
    """Fit count ~ c * Y * (log Y)^k on a log scale; returns (c, residual sum of squares)."""
    pts = [(y, n) for y, n in points if n > 0 and y > 2]
    if len(pts) < 2:
        raise ValueError("not enough points")
    r = [math.log(n) - math.log(y) - k * math.log(math.log(y)) for y, n in pts]
    mean = sum(r) / len(r)
    rss = sum((x - mean) ** 2 for x in r)
    return math.exp(mean), rss
