"""Discriminants of number fields of degree <= 6.

Polynomials are lists of integers, lowest degree first, monic.  Orders are
stored as a lower-triangular integer matrix M and a denominator: the i-th
basis element is (M[i][0] + M[i][1] x + ... + M[i][i] x^i) / den.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import factor, is_prime, primes_up_to

Poly = list[int]


class Reducible(ValueError):
    pass


class NotDisjoint(ValueError):
    pass


class WildPrime(ValueError):
    pass


# ------------------------------------------------------- integer polynomials

def trim(f: Sequence[int]) -> list[int]:
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence[int]) -> int:
    f = trim(f)
    return -1 if f == [0] else len(f) - 1


def poly_mul(f: Sequence[int], g: Sequence[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def poly_add(f: Sequence[int], g: Sequence[int]) -> list[int]:
    n = max(len(f), len(g))
    return [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]


def poly_scale(f: Sequence[int], c: int) -> list[int]:
    return [c * a for a in f]


def poly_deriv(f: Sequence[int]) -> list[int]:
    return [i * f[i] for i in range(1, len(f))] or [0]


def poly_eval(f: Sequence[int], x):
    r = 0
    for a in reversed(f):
        r = r * x + a
    return r


def poly_divmod_monic(f: Sequence[int], g: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [0], trim(f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    return trim(q), trim(f[:dg] or [0])


def poly_shift(f: Sequence[int], a: int) -> list[int]:
    """f(x + a)."""
    out = [0]
    for c in reversed(f):
        out = poly_add(poly_mul(out, [a, 1]), [c])
    return trim(out)


def poly_compose_linear(f: Sequence[int], a: int, b: int) -> list[int]:
    """f(a*x + b)."""
    out = [0]
    for c in reversed(f):
        out = poly_add(poly_mul(out, [b, a]), [c])
    return trim(out)


def bareiss_det(rows: list[list[int]]) -> int:
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant via the Sylvester matrix (Bareiss elimination)."""
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def poly_disc(f: Sequence[int]) -> int:
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, poly_deriv(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r // f[-1]


# ----------------------------------------------------- polynomials over F_p

def fp_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def fp(f: Iterable[int], p: int) -> list[int]:
    return fp_trim([a % p for a in f])


def fp_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return fp_trim(out)


def fp_sub(f, g, p):
    n = max(len(f), len(g))
    return fp_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def fp_divmod(f, g, p):
    f = list(f)
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], fp_trim(f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
    return fp_trim(q), fp_trim(f[:dg])


def fp_monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [a * inv % p for a in f]


def fp_gcd(f, g, p):
    f, g = fp_trim(list(f)), fp_trim(list(g))
    while g:
        f, g = g, fp_divmod(f, g, p)[1]
    return fp_monic(f, p)


def fp_deriv(f, p):
    return fp_trim([i * f[i] % p for i in range(1, len(f))])


def fp_powmod(base, e, mod, p):
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def fp_pth_root(f, p):
    return [f[i] for i in range(0, len(f), p)]


def fp_squarefree_factors(f, p) -> list[tuple[list[int], int]]:
    """Squarefree decomposition: list of (g, e) with f = prod g^e, g squarefree."""
    f = fp_monic(f, p)
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out
    d = fp_deriv(f, p)
    if not d:
        for g, e in fp_squarefree_factors(fp_pth_root(f, p), p):
            out.append((g, e * p))
        return out
    c = fp_gcd(f, d, p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = fp_gcd(w, c, p)
        z = fp_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((fp_monic(z, p), i))
        i += 1
        w = y
        c = fp_divmod(c, y, p)[0]
    if len(c) > 1:
        for g, e in fp_squarefree_factors(fp_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def fp_ddf(f, p) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a squarefree monic f: (product, degree)."""
    out = []
    f = fp_monic(f, p)
    h = [0, 1]
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, k))
            f = fp_divmod(f, g, p)[0]
            h = fp_divmod(h, f, p)[1] if len(f) > 1 else h
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def fp_degree_pattern(f, p) -> list[int] | None:
    """Degrees of the irreducible factors of f mod p, or None if f mod p is not squarefree."""
    fb = fp(f, p)
    if len(fb) != len(trim(f)):
        return None
    if len(fp_gcd(fb, fp_deriv(fb, p), p)) > 1:
        return None
    degs = []
    for g, k in fp_ddf(fb, p):
        degs += [k] * ((len(g) - 1) // k)
    return sorted(degs)


# ------------------------------------------------------------ irreducibility

def _subset_sums(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, e in factor(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return divs


def _lagrange(xs: list[int], ys: list[int]) -> list[Fraction]:
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j != i:
                basis = [Fraction(0)] + basis
                for k in range(len(basis) - 1):
                    basis[k] -= xs[j] * basis[k + 1]
                denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += Fraction(ys[i], denom) * basis[k]
    return coeffs


def _has_factor_of_degree(f: list[int], k: int) -> bool:
    """Kronecker's method: does monic f have a monic integer factor of degree k?"""
    xs = []
    x = 0
    while len(xs) < k + 1:
        if poly_eval(f, x) == 0:
            return True  # rational root means a linear factor; caller handles k >= 1
        xs.append(x)
        x = -x if x > 0 else -x + 1
    vals = [poly_eval(f, x) for x in xs]
    choices = [[s * d for d in _integer_divisors(v) for s in (1, -1)] for v in vals]
    for ys in itertools.product(*choices):
        g = _lagrange(xs, list(ys))
        if g[-1] != 1 or any(c.denominator != 1 for c in g):
            continue
        gi = [int(c) for c in g]
        _, r = poly_divmod_monic(f, gi)
        if r == [0]:
            return True
    return False


def _has_root(f: list[int]) -> bool:
    if f[0] == 0:
        return True
    return any(poly_eval(f, s * r) == 0 for r in _integer_divisors(f[0]) for s in (1, -1))


def _has_quadratic_factor_quartic(f: list[int]) -> bool:
    """Monic quartic f = (x^2 + a x + b)(x^2 + c x + e) over Z?"""
    A0, A1, A2, A3, _ = f
    if A0 == 0:
        return True
    for b0 in _integer_divisors(A0):
        for b in (b0, -b0):
            e = A0 // b
            if e != b:
                num = A1 - A3 * b
                if num % (e - b):
                    continue
                avals = [num // (e - b)]
            else:
                if A1 != A3 * b:
                    continue
                # a + c = A3, a c = A2 - 2b
                disc = A3 * A3 - 4 * (A2 - 2 * b)
                if disc < 0 or math.isqrt(disc) ** 2 != disc or (A3 + math.isqrt(disc)) % 2:
                    continue
                avals = [(A3 + math.isqrt(disc)) // 2]
            for a in avals:
                c = A3 - a
                if b + e + a * c == A2 and a * e + c * b == A1:
                    return True
    return False


def is_irreducible(f: Sequence[int]) -> bool:
    f = trim(f)
    n = len(f) - 1
    if f[-1] != 1:
        raise ValueError("monic polynomial expected")
    if n <= 0:
        return False
    if n == 1:
        return True
    possible = set(range(1, n // 2 + 1))
    D = poly_disc(f)
    if D == 0:
        return False
    for p in primes_up_to(200):
        if D % p == 0:
            continue
        degs = fp_degree_pattern(f, p)
        if degs is None:
            continue
        if degs == [n]:
            return True
        possible &= _subset_sums(degs)
        if not possible:
            return True
    f = list(f)
    if 1 in possible and _has_root(f):
        return False
    if n <= 3:
        return True
    if n == 4:
        return not _has_quadratic_factor_quartic(f)
    for k in sorted(possible - {1}):
        if _has_factor_of_degree(f, k):
            return False
    return True


# -------------------------------------------------------------- linear algebra

def fp_left_kernel(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {c : c . rows = 0 mod p}."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    # work on the transpose: columns of A^T are rows of A
    A = [[rows[i][j] % p for i in range(n)] for j in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc] % p
        basis.append(v)
    return basis


def hnf_lower(rows: list[list[int]], n: int) -> list[list[int]]:
    """Lower-triangular Hermite basis of a full-rank lattice spanned by rows."""
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int] | None] = [None] * n
    for col in range(n - 1, -1, -1):
        active = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            new = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            active = new
        if not active:
            raise ValueError("lattice is not of full rank")
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis[col] = piv
        work = rest
    # reduce entries left of the diagonal
    for i in range(n):
        row = basis[i]
        for j in range(i - 1, -1, -1):
            q = row[j] // basis[j][j]
            if q:
                row = [a - q * b for a, b in zip(row, basis[j])]
        basis[i] = row
    return basis


def solve_lower(M: list[list[int]], w: Sequence) -> list:
    """Solve c . M = w for lower-triangular M; exact (ints when possible)."""
    n = len(M)
    w = list(w)
    c = [0] * n
    for j in range(n - 1, -1, -1):
        s = w[j] - sum(c[i] * M[i][j] for i in range(j + 1, n))
        d = M[j][j]
        if isinstance(s, int) and s % d == 0:
            c[j] = s // d
        else:
            c[j] = Fraction(s) / d
    return c


# ---------------------------------------------------------------- orders

@dataclass
class OrderBasis:
    f: list[int]
    M: list[list[int]]
    den: int

    @property
    def n(self) -> int:
        return len(self.f) - 1

    @classmethod
    def equation_order(cls, f: Sequence[int]) -> "OrderBasis":
        f = trim(f)
        n = len(f) - 1
        return cls(list(f), [[int(i == j) for j in range(n)] for i in range(n)], 1)

    def index(self) -> Fraction:
        """[O : Z[x]] as a rational number (an integer for orders containing Z[x])."""
        d = 1
        for i in range(self.n):
            d *= self.M[i][i]
        return Fraction(self.den ** self.n, d)

    def disc(self) -> int:
        idx = self.index()
        D = Fraction(poly_disc(self.f)) / (idx * idx)
        assert D.denominator == 1
        return int(D)

    def _mulmod(self, a: list[int], b: list[int]) -> list[int]:
        prod = poly_mul(a, b)
        _, r = poly_divmod_monic(prod, self.f)
        r = list(r) + [0] * (self.n - len(r))
        return r[: self.n]

    def coords(self, v: Sequence[int], vden: int = 1) -> list:
        """Coordinates of the element v/vden (power basis) in this basis."""
        w = [Fraction(a * self.den, vden) if vden != 1 else a * self.den for a in v]
        w = [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in w]
        return solve_lower(self.M, w)

    def mult_table(self) -> list[list[list[int]]]:
        """T[i][j] = coordinates of w_i * w_j."""
        n = self.n
        T = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = self._mulmod(self.M[i], self.M[j])
                c = self.coords(prod, self.den * self.den)
                if any(isinstance(x, Fraction) for x in c):
                    raise ValueError("basis does not span a ring")
                T[i][j] = T[j][i] = c
        return T

    def contains_equation_order(self) -> bool:
        for k in range(self.n):
            e = [int(i == k) for i in range(self.n)]
            if any(isinstance(x, Fraction) for x in self.coords(e)):
                return False
        return True

    def is_ring(self) -> bool:
        try:
            self.mult_table()
        except ValueError:
            return False
        return True


def _mul_coords(T, x, y, p):
    n = len(x)
    out = [0] * n
    for i in range(n):
        if x[i] % p == 0:
            continue
        for j in range(n):
            if y[j] % p == 0:
                continue
            c = x[i] * y[j]
            Tij = T[i][j]
            for k in range(n):
                out[k] += c * Tij[k]
    return [v % p for v in out]


def _order_from_rows(f, rows_num: list[list[int]], den: int) -> OrderBasis:
    n = len(f) - 1
    H = hnf_lower(rows_num, n)
    g = den
    for r in H:
        for a in r:
            g = math.gcd(g, a)
    if g > 1:
        H = [[a // g for a in r] for r in H]
        den //= g
    return OrderBasis(list(f), H, den)


def p_radical(O: OrderBasis, T, p: int) -> list[list[int]]:
    """HNF basis (in O-coordinates) of the p-radical of O."""
    n = O.n
    q = p
    while q < n:
        q *= p
    frob = []
    for i in range(n):
        x = [int(k == i) for k in range(n)]
        r = [1 if k == 0 else 0 for k in range(n)]
        r = O.coords(_one_vec(n))  # identity element in O-coordinates
        r = [int(a) % p for a in r]
        e = q
        base = x
        while e:
            if e & 1:
                r = _mul_coords(T, r, base, p)
            base = _mul_coords(T, base, base, p)
            e >>= 1
        frob.append(r)
    ker = fp_left_kernel(frob, p)
    gens = [[p * int(i == j) for j in range(n)] for i in range(n)] + ker
    return hnf_lower(gens, n)


def _one_vec(n: int) -> list[int]:
    return [1] + [0] * (n - 1)


def pmaximalize(O: OrderBasis, f: Sequence[int] | None = None, p: int = 2,
                max_rounds: int = 64) -> OrderBasis:
    """Round-2 enlargement of O until it is p-maximal."""
    if f is not None and trim(f) != O.f:
        raise ValueError("order does not belong to f")
    n = O.n
    for _ in range(max_rounds):
        T = O.mult_table()
        G = p_radical(O, T, p)
        # U/pO = kernel of O/pO -> End(I/pI), y -> (gamma_j -> y gamma_j)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = [0] * n
                for l in range(n):
                    g = G[j][l]
                    if g:
                        Til = T[i][l]
                        for k in range(n):
                            prod[k] += g * Til[k]
                c = solve_lower(G, prod)
                row += [int(x) % p for x in c]
            rows.append(row)
        ker = fp_left_kernel(rows, p)
        if not ker:
            return O
        gens = [[p * int(i == j) for j in range(n)] for i in range(n)] + ker
        U = hnf_lower(gens, n)
        # new basis rows (in power basis numerators) = U . M / (p * den)
        new_rows = [[sum(U[i][k] * O.M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        O2 = _order_from_rows(O.f, new_rows, O.den * p)
        if O2.index() == O.index():
            return O
        O = O2
    raise RuntimeError("Round-2 did not stabilize")


def dedekind_test(f: Sequence[int], p: int) -> tuple[bool, OrderBasis]:
    """Dedekind criterion for Z[x]/(f) at p.

    Returns (True, equation order) when p-maximal, else (False, larger order).
    """
    f = trim(f)
    n = len(f) - 1
    E = OrderBasis.equation_order(f)
    fb = fp(f, p)
    parts = fp_squarefree_factors(fb, p)
    g = [1]
    for gi, _ in parts:
        g = fp_mul(g, gi, p)
    h = fp_divmod(fb, g, p)[0]
    # F = (g h - f) / p with integer lifts of g and h
    gh = poly_mul(g, h)
    diff = [a - b for a, b in itertools.zip_longest(gh, f, fillvalue=0)]
    assert all(a % p == 0 for a in diff)
    F = fp([a // p for a in diff], p)
    Z = fp_gcd(fp_gcd(F, g, p), h, p) if F else fp_gcd(g, h, p)
    if len(Z) <= 1:
        return True, E
    # enlargement: O' = Z[x] + (U(x)/p) Z[x], U = f / Z mod p
    U = fp_divmod(fb, Z, p)[0]
    rows = [[p * int(i == j) for j in range(n)] for i in range(n)]
    x_pow = list(U) + [0] * (n - len(U))
    for k in range(n):
        rows.append(x_pow[:n])
        # multiply by x modulo f
        shifted = [0] + x_pow
        _, r = poly_divmod_monic(shifted, f)
        x_pow = list(r) + [0] * (n - len(r))
    O2 = _order_from_rows(f, rows, p)
    return False, O2


def p_index_exponent(f: Sequence[int], p: int) -> int:
    """v_p([O_K : Z[x]]) for the field defined by f."""
    ok, O = dedekind_test(f, p)
    if ok:
        return 0
    O = pmaximalize(O, None, p)
    idx = O.index()
    assert idx.denominator == 1
    e = 0
    k = idx.numerator
    while k % p == 0:
        k //= p
        e += 1
    return e


# ------------------------------------------------------------ tame hints

@dataclass(frozen=True)
class TameLocalType:
    p: int
    cycles: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.cycles)

    @property
    def valuation(self) -> int:
        """v_p of the discriminant: degree minus the number of cycles."""
        return self.degree - len(self.cycles)

    @property
    def tame(self) -> bool:
        return all(c % self.p for c in self.cycles)


def product_cycles(c1: Sequence[int], c2: Sequence[int]) -> tuple[int, ...]:
    """Cycle type of (g1, g2) acting on the product of the two point sets."""
    out = []
    for a in c1:
        for b in c2:
            out += [a * b // math.gcd(a, b)] * math.gcd(a, b)
    return tuple(sorted(out))


def tame_vp(cycleF: TameLocalType, cycleK: TameLocalType, p: int) -> int:
    if p in (2, 3) or not cycleF.tame or not cycleK.tame or cycleF.p != p or cycleK.p != p:
        raise WildPrime(p)
    m1, m2 = cycleF.degree, cycleK.degree
    return m1 * m2 - sum(math.gcd(a, b) for a in cycleF.cycles for b in cycleK.cycles)


@dataclass(frozen=True)
class DiscInfo:
    poly_disc: int
    field_disc: int  # absolute value
    sign: int
    index: int


def field_disc_info(f: Sequence[int], tame_hints: Iterable[TameLocalType] = (),
                    primes: Iterable[int] | None = None, check_irreducible: bool = True) -> DiscInfo:
    """Discriminant of the maximal order of Q[x]/(f).

    tame_hints fixes v_p(D) at those primes from the inertia cycle type.
    primes, when given, must contain every prime dividing the field
    discriminant; other primes are then never factored out of poly_disc.
    """
    f = trim(f)
    if check_irreducible and not is_irreducible(f):
        raise Reducible(f)
    D0 = poly_disc(f)
    sign = 1 if D0 > 0 else -1
    hints = {t.p: t.valuation for t in tame_hints}
    if primes is None:
        fac = dict(factor(abs(D0)))
    else:
        fac = {}
        for p in set(primes) | set(hints):
            e = 0
            m = abs(D0)
            while m % p == 0:
                m //= p
                e += 1
            if e:
                fac[p] = e
    D = 1
    index = 1
    for p, e in sorted(fac.items()):
        if p in hints:
            v = hints[p]
            if (e - v) % 2 or v > e:
                raise ValueError(f"tame hint at {p} inconsistent with poly_disc")
        elif e < 2:
            v = e
        else:
            v = e - 2 * p_index_exponent(f, p)
        D *= p ** v
        index *= p ** ((e - v) // 2)
    if primes is None:
        assert index * index * D == abs(D0)
    return DiscInfo(D0, D, sign, index)


def field_disc(f: Sequence[int], tame_hints: Iterable[TameLocalType] = (),
               primes: Iterable[int] | None = None) -> int:
    return field_disc_info(f, tame_hints, primes).field_disc


# ------------------------------------------------------------- composita

def compositum_poly(f: Sequence[int], g: Sequence[int], tmax: int = 50) -> tuple[list[int], int]:
    """Minimal polynomial of alpha + t*beta (f(alpha) = 0, g(beta) = 0, g quadratic).

    Returns (h, t) for the smallest t >= 1 with h squarefree.
    """
    f = trim(f)
    g = trim(g)
    if len(g) != 3 or g[-1] != 1:
        raise ValueError("monic quadratic expected for g")
    nm, tr = g[0], -g[1]
    for t in range(1, tmax + 1):
        # f(x - t*beta) = A(x) + B(x) beta with beta^2 = tr*beta - nm
        A, B = [0], [0]
        powA, powB = [1], [0]  # (x - t beta)^k
        for k, c in enumerate(f):
            if k:
                # multiply (powA + powB beta) by (x - t beta)
                nA = poly_add(poly_mul(powA, [0, 1]), poly_scale(powB, t * nm))
                nB = poly_add(poly_add(poly_mul(powB, [0, 1]), poly_scale(powA, -t)),
                              poly_scale(powB, -t * tr))
                powA, powB = nA, nB
            A = poly_add(A, poly_scale(powA, c))
            B = poly_add(B, poly_scale(powB, c))
        h = poly_add(poly_add(poly_mul(A, A), poly_scale(poly_mul(A, B), tr)),
                     poly_scale(poly_mul(B, B), nm))
        h = trim(h)
        if len(h) - 1 == 2 * (len(f) - 1) and poly_disc(h) != 0:
            return h, t
    raise NotDisjoint("no squarefree compositum polynomial found")


def quadratic_poly(d: int) -> list[int]:
    """Minimal polynomial of the standard generator of the quadratic order of disc d."""
    if d % 4 == 0:
        return [-(d // 4), 0, 1]
    return [(1 - d) // 4, -1, 1]
