"""Integer arithmetic and quadratic-field primitives.

Factorization, multiplicative functions, fundamental discriminants,
imaginary class groups through reduced binary quadratic forms and
fundamental units of real quadratic fields.
"""
from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from gmpy2 import is_square as _gmp_is_square
from gmpy2 import isqrt as _gmp_isqrt
from gmpy2 import mpz


class NotFundamental(ValueError):
    pass


# ---------------------------------------------------------------- sieves

def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if sieve[i]]


_SMALL_PRIMES = primes_up_to(1000)


def spf_table(n: int) -> list[int]:
    """Smallest prime factor of every integer 0..n (spf[0] = spf[1] = 0)."""
    spf = list(range(n + 1))
    if n >= 0:
        spf[0] = 0
    if n >= 1:
        spf[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


class SieveFactorizer:
    """Fast factorization of many integers below a fixed limit."""

    def __init__(self, limit: int):
        self.limit = limit
        self.spf = spf_table(limit)

    def factor(self, n: int) -> list[tuple[int, int]]:
        n = abs(n)
        if n > self.limit:
            return factor(n)
        out: list[tuple[int, int]] = []
        spf = self.spf
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def primes(self, n: int) -> list[int]:
        return [p for p, _ in self.factor(n)]


# ---------------------------------------------------------- primality

# These witnesses make Miller-Rabin deterministic below 3.317e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    if n > MR_LIMIT:
        raise ValueError(f"primality of {n} cannot be certified by the fixed witness set")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor(n: int) -> list[tuple[int, int]]:
    """Complete factorization as a sorted list of (prime, exponent)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            counts[p] = e
    if n > 1:
        stack = [n]
        rng = random.Random(n)  # deterministic per input
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                counts[m] = counts.get(m, 0) + 1
                continue
            r = int(_gmp_isqrt(mpz(m)))
            if r * r == m:
                stack += [r, r]
                continue
            d = _pollard_brent(m, rng)
            stack += [d, m // d]
    return sorted(counts.items())


def tau_w_mu(n: int) -> tuple[int, int, int]:
    fac = factor(n)
    tau = 1
    for _, e in fac:
        tau *= e + 1
    w = len(fac)
    mu = 0 if any(e > 1 for _, e in fac) else (-1) ** w
    return tau, w, mu


def is_square(n: int) -> bool:
    return n >= 0 and bool(_gmp_is_square(mpz(n)))


def isqrt(n: int) -> int:
    return int(_gmp_isqrt(mpz(n)))


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = sqf * k^2."""
    if n == 0:
        return 0
    s = -1 if n < 0 else 1
    out = 1
    for p, e in factor(abs(n)):
        if e % 2:
            out *= p
    return s * out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ------------------------------------------------- quadratic residues

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_squarefree(a: int, factors: Iterable[int]) -> int:
    """Square root of a modulo a squarefree odd-or-2 modulus given its primes."""
    roots = []
    mods = []
    for p in factors:
        roots.append(sqrt_mod_prime(a, p))
        mods.append(p)
    return crt(roots, mods)


def crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x % m if m > 1 else 0


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p for nonzero integers; p = 0 means the real place."""
    if p == 0:
        return -1 if (a < 0 and b < 0) else 1
    va, vb = valuation(a, p), valuation(b, p)
    u, w = a // p ** va, b // p ** vb
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + va * omega(w) + vb * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** (va * vb * ((p - 1) // 2) % 2)
    s *= kronecker(u, p) ** vb * kronecker(w, p) ** va
    return s


# ------------------------------------------- fundamental discriminants

def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    r = d % 4
    if r == 1:
        return _squarefree(d)
    if r == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n == 1:
        return True
    return all(e == 1 for _, e in factor(n))


def fundamental_discs(lo: int, hi: int) -> list[int]:
    """All fundamental discriminants d with lo <= |d| <= hi, ascending |d|.

    For equal |d| the positive one comes first.
    """
    hi = int(hi)
    if hi < 3:
        return []
    sqf = bytearray([1]) * (hi + 1)
    for p in range(2, math.isqrt(hi) + 1):
        sqf[p * p::p * p] = bytearray(len(range(p * p, hi + 1, p * p)))
    out = []
    for n in range(max(lo, 3), hi + 1):
        r = n % 4
        if r == 1 or r == 3:
            if sqf[n]:
                out.append(n if r == 1 else -n)
        elif r == 0:
            m = n // 4
            if sqf[m]:
                if m % 4 == 2:
                    out.append(n)
                    out.append(-n)
                elif m % 4 == 1:
                    out.append(-n)  # -m = 3 mod 4
                elif m % 4 == 3:
                    out.append(n)
    return out


def fundamental_disc_stream(lo: int, hi: int) -> Iterator["QuadField"]:
    for d in fundamental_discs(lo, hi):
        yield QuadField(d)


@dataclass(frozen=True, order=True)
class QuadField:
    d: int

    def __post_init__(self):
        if not is_fundamental(self.d):
            raise NotFundamental(self.d)

    @property
    def sign(self) -> str:
        return "real" if self.d > 0 else "imaginary"

    @property
    def D(self) -> int:
        return abs(self.d)

    def min_poly(self) -> list[int]:
        """Monic minimal polynomial of the standard integral generator, low degree first."""
        d = self.d
        if d % 4 == 0:
            return [-(d // 4), 0, 1]
        return [(1 - d) // 4, -1, 1]


# ------------------------------------------------ imaginary class groups

class Form(tuple):
    """A primitive positive definite binary quadratic form (a, b, c)."""

    def __new__(cls, a, b, c):
        return tuple.__new__(cls, (a, b, c))

    @property
    def disc(self) -> int:
        a, b, c = self
        return b * b - 4 * a * c

    def reduced(self) -> "Form":
        a, b, c = self
        while True:
            if a > c:
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                k = (a - b) // (2 * a)
                # b' = b + 2ak in (-a, a]
                b2 = b + 2 * a * k
                c = (b2 * b2 - (b * b - 4 * a * c)) // (4 * a)
                b = b2
                continue
            break
        if a == c and b < 0:
            b = -b
        return Form(a, b, c)

    def __mul__(self, other: "Form") -> "Form":
        # Dirichlet composition of two forms of the same discriminant.
        a1, b1, c1 = self
        a2, b2, c2 = other
        D = b1 * b1 - 4 * a1 * c1
        s = (b1 + b2) // 2
        g0, x0, y0 = _xgcd(a1, a2)
        g, u, z = _xgcd(g0, s)
        x, y = u * x0, u * y0
        A = a1 * a2 // (g * g)
        B = (a1 * b2 * x + a2 * b1 * y + z * (b1 * b2 + D) // 2) // g
        B %= 2 * A
        C = (B * B - D) // (4 * A)
        return Form(A, B, C).reduced()

    def inverse(self) -> "Form":
        a, b, c = self
        return Form(a, -b, c).reduced()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def reduced_forms(d: int) -> list[Form]:
    """All reduced primitive positive definite forms of discriminant d < 0."""
    out = []
    amax = math.isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(Form(a, b, c))
    return out


def identity_form(d: int) -> Form:
    return Form(1, d % 2, (d % 2 - d) // 4)


@dataclass
class FormClassGroup:
    d: int
    forms: list[Form]
    table: dict[tuple[Form, Form], Form]
    elementary_divisors: list[int]

    @property
    def order(self) -> int:
        return len(self.forms)

    def p_rank(self, p: int) -> int:
        return sum(1 for m in self.elementary_divisors if m % p == 0)

    def torsion_size(self, m: int) -> int:
        """Number of classes x with x^m = 1."""
        out = 1
        for e in self.elementary_divisors:
            out *= math.gcd(m, e)
        return out

    @property
    def h3(self) -> int:
        return self.torsion_size(3)


def _power(f: Form, k: int, e: Form) -> Form:
    result, base = e, f
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def class_group_imaginary(d: int, with_table: bool = True) -> FormClassGroup:
    """Class group of the imaginary quadratic order of fundamental discriminant d."""
    if d >= 0 or not is_fundamental(d):
        raise NotFundamental(d)
    forms = reduced_forms(d)
    e = identity_form(d)
    h = len(forms)
    table: dict[tuple[Form, Form], Form] = {}
    if with_table and h <= 200:
        for f in forms:
            for g in forms:
                table[(f, g)] = f * g
    # structure from counts of p^k-torsion for each prime p | h
    divisors: list[int] = []
    invariants_by_p: dict[int, list[int]] = {}
    for p, ep in factor(h) if h > 1 else []:
        counts = [1]
        k = 0
        while counts[-1] < p ** ep:
            k += 1
            counts.append(sum(1 for f in forms if _power(f, p ** k, e) == e))
        # number of cyclic factors of order >= p^j is log_p(counts[j]/counts[j-1])
        ge = [round(math.log(counts[j] // counts[j - 1], p)) for j in range(1, len(counts))]
        ge.append(0)
        exps = []
        for j in range(1, len(ge)):
            exps += [j] * (ge[j - 1] - ge[j])
        invariants_by_p[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in invariants_by_p.values()), default=0)
    for i in range(width):
        m = 1
        for p, exps in invariants_by_p.items():
            if i < len(exps):
                m *= p ** exps[i]
        divisors.append(m)
    divisors.sort()  # d_1 | d_2 | ...
    return FormClassGroup(d, forms, table, divisors)


# ------------------------------------------------------ fundamental units

def fundamental_unit(d: int) -> tuple[int, int]:
    """Fundamental unit (x + y*sqrt(d))/2 of the real quadratic field of disc d.

    Walks the continued fraction of theta = (sqrt(d) - b)/2, b = d mod 2,
    until a convergent h/k makes h - k*theta a unit.
    """
    if d <= 0 or not is_fundamental(d):
        raise NotFundamental(d)
    b = d % 2
    P, Q = -b, 2
    sd = isqrt(d)
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        a = (P + sd) // Q  # Q > 0 throughout for this expansion
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if h * h + b * h * k + k * k * (b - d) // 4 in (1, -1):
            return 2 * h + b * k, k
        P = a * Q - P
        Q = (d - P * P) // Q


def unit_norm(d: int, x: int, y: int) -> int:
    return (x * x - d * y * y) // 4


# -------------------------------------------------------- product counts

def product_distribution_check(S1: Iterable[float], S2: Iterable[float], X: float) -> int:
    """Number of pairs (s1, s2) in S1 x S2 with s1*s2 <= X."""
    if X < 1:
        return 0
    b = sorted(S2)
    total = 0
    for s in S1:
        if s > X:
            continue
        total += bisect.bisect_right(b, X / s)
    return total


@lru_cache(maxsize=None)
def _cached_factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(factor(n))
