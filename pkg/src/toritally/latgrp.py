"""Finite subgroups of GL_n(Z) and their Malle invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]


class ClosureExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"group closure exceeded cap {cap}")
        self.cap = cap


class NonUnimodular(ValueError):
    pass


class TrivialGroup(ValueError):
    pass


# ------------------------------------------------------------ matrices

def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def det(A: Matrix) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    M = [list(r) for r in A]
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
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Matrix) -> int:
    """Rank over Q by fraction-free row reduction."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, rows):
            if M[i][c]:
                f, g = M[i][c], M[r][c]
                M[i] = [g * x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def smith_diagonal(A: Matrix) -> tuple[int, ...]:
    """Invariant factors of A (including zeros), in divisibility order."""
    M = [list(r) for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                q = M[i][t] // M[t][t]
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                if M[i][t]:
                    M[t], M[i] = M[i], M[t]
                    changed = True
            for j in range(t + 1, n):
                q = M[t][j] // M[t][t]
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    for row in M:
                        row[t], row[j] = row[j], row[t]
                    changed = True
            if changed:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            M[t] = [x + y for x, y in zip(M[t], M[bad[0]])]
        diag.append(abs(M[t][t]))
        t += 1
    diag += [0] * (min(m, n) - len(diag))
    return tuple(diag)


def mat_order(A: Matrix, cap: int = 10000) -> int:
    I = identity(len(A))
    P, k = A, 1
    while P != I:
        P = mat_mul(P, A)
        k += 1
        if k > cap:
            raise ClosureExceeded(cap)
    return k


def mat_pow(A: Matrix, k: int) -> Matrix:
    R = identity(len(A))
    B = A
    while k:
        if k & 1:
            R = mat_mul(R, B)
        B = mat_mul(B, B)
        k >>= 1
    return R


def mat_inverse_unimodular(A: Matrix) -> Matrix:
    """Inverse of a unimodular matrix via its adjugate."""
    n = len(A)
    d = det(A)
    if d not in (1, -1):
        raise NonUnimodular(A)
    if n == 1:
        return ((d,),)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(tuple(A[r][c] for c in range(n) if c != j) for r in range(n) if r != i)
            row.append((-1) ** (i + j) * det(minor))
        cof.append(row)
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


def parse_matrix(text: str) -> Matrix:
    """Parse 'a,b;c,d' into a square matrix."""
    return as_matrix([int(x) for x in row.split(",")] for row in text.strip().split(";"))


# -------------------------------------------------------------- groups

@dataclass
class MatrixGroup:
    n: int
    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...] = ()
    label: str | None = None
    _classes: list | None = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, A: Matrix) -> bool:
        return A in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def exponent(self) -> int:
        e = 1
        for h in self.elements:
            e = math.lcm(e, mat_order(h))
        return e

    def conjugate(self, M: Matrix) -> "MatrixGroup":
        """The group M G M^-1."""
        Mi = mat_inverse_unimodular(M)
        conj = lambda h: mat_mul(mat_mul(M, h), Mi)
        return MatrixGroup(self.n, tuple(sorted(conj(h) for h in self.elements)),
                           tuple(conj(g) for g in self.generators), self.label)


def generate_group(gens: Sequence[Matrix], cap: int = 10000, n: int | None = None,
                   label: str | None = None) -> MatrixGroup:
    gens = [as_matrix(g) for g in gens]
    if n is None:
        if not gens:
            raise ValueError("dimension needed for an empty generator list")
        n = len(gens[0])
    for g in gens:
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("generators must be square of equal dimension")
        if det(g) not in (1, -1):
            raise NonUnimodular(g)
    I = identity(n)
    seen = {I}
    frontier = [I]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = mat_mul(h, g)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
                    if len(seen) > cap:
                        raise ClosureExceeded(cap)
        frontier = nxt
    return MatrixGroup(n, tuple(sorted(seen)), tuple(gens), label)


def conjugacy_classes(G: MatrixGroup) -> list[frozenset]:
    if G._classes is not None:
        return G._classes
    inv = {h: mat_inverse_unimodular(h) for h in G.elements}
    left = set(G.elements)
    classes = []
    for h in G.elements:
        if h not in left:
            continue
        cls = frozenset(mat_mul(mat_mul(g, h), inv[g]) for g in G.elements)
        left -= cls
        classes.append(cls)
    G._classes = classes
    return classes


def cyclotomic_orbits(G: MatrixGroup, modulus: int | None = None) -> list[list[frozenset]]:
    """Orbits of conjugacy classes under h -> h^k, gcd(k, modulus) = 1.

    The modulus defaults to the exponent of G.
    """
    classes = conjugacy_classes(G)
    m = modulus if modulus is not None else G.exponent
    ks = [k for k in range(1, m + 1) if math.gcd(k, m) == 1] or [1]
    where = {}
    for i, c in enumerate(classes):
        for h in c:
            where[h] = i
    parent = list(range(len(classes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, c in enumerate(classes):
        h = next(iter(c))
        for k in ks:
            j = where[mat_pow(h, k)]
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    groups: dict[int, list[frozenset]] = {}
    for i, c in enumerate(classes):
        groups.setdefault(find(i), []).append(c)
    return list(groups.values())


@dataclass(frozen=True)
class MalleInvariants:
    a: int
    b: int


def index_of(h: Matrix) -> int:
    return rank(mat_sub(h, identity(len(h))))


def malle_invariants(G: MatrixGroup) -> MalleInvariants:
    I = identity(G.n)
    if all(h == I for h in G.elements):
        raise TrivialGroup("malle invariants of the trivial group")
    orbits = cyclotomic_orbits(G)
    ranks = []
    for orb in orbits:
        h = next(iter(orb[0]))
        ranks.append(None if h == I else index_of(h))
    a = min(r for r in ranks if r is not None)
    b = sum(1 for r in ranks if r == a)
    return MalleInvariants(a, b)


def direct_sum(G1: MatrixGroup, G2: MatrixGroup, cap: int = 10000) -> MatrixGroup:
    n1, n2 = G1.n, G2.n
    if G1.order * G2.order > cap:
        raise ClosureExceeded(cap)

    def block(A, B):
        rows = [tuple(r) + (0,) * n2 for r in A]
        rows += [(0,) * n1 + tuple(r) for r in B]
        return tuple(rows)

    elems = tuple(sorted(block(a, b) for a in G1.elements for b in G2.elements))
    gens = tuple(block(g, identity(n2)) for g in G1.generators)
    gens += tuple(block(identity(n1), g) for g in G2.generators)
    label = f"{G1.label}+{G2.label}" if G1.label and G2.label else None
    return MatrixGroup(n1 + n2, elems, gens, label)


def direct_sum_prediction(m1: MalleInvariants | None, m2: MalleInvariants | None) -> MalleInvariants:
    """Invariants of a direct sum from those of the summands (None = trivial)."""
    if m1 is None:
        return m2
    if m2 is None:
        return m1
    if m1.a < m2.a:
        return m1
    if m2.a < m1.a:
        return m2
    return MalleInvariants(m1.a, m1.b + m2.b)


def trivial_group(n: int) -> MatrixGroup:
    return MatrixGroup(n, (identity(n),), (), "trivial")


# ---------------------------------------------------------- permutations

def perm_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending basis vector e_i to e_perm[i]."""
    n = len(perm)
    return tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n))


def permutation_embed(perms: Sequence[Sequence[int]], n: int | None = None) -> MatrixGroup:
    if n is None:
        n = len(perms[0])
    for p in perms:
        if sorted(p) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {p}")
    return generate_group([perm_matrix(p) for p in perms], n=n)


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def perm_closure(perms: Sequence[Sequence[int]], n: int) -> set[tuple[int, ...]]:
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            for g in perms:
                x = _compose(h, tuple(g))
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def cycle_lengths(p: Sequence[int]) -> list[int]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            out.append(L)
    return sorted(out)


def perm_index(p: Sequence[int]) -> int:
    return len(p) - len(cycle_lengths(p))


def malle_from_permutations(perms: Sequence[Sequence[int]], n: int | None = None) -> MalleInvariants:
    """Malle's (a, b) for a permutation group, from cycle types alone."""
    if n is None:
        n = len(perms[0])
    G = perm_closure(perms, n)
    e = tuple(range(n))
    exp = 1
    for g in G:
        for L in cycle_lengths(g):
            exp = math.lcm(exp, L)

    def ppow(g, k):
        r = e
        for _ in range(k % exp if exp else 0):
            r = _compose(r, g)
        return r

    inv = {g: tuple(sorted(range(n), key=lambda i: g[i])) for g in G}
    classes = []
    left = set(G)
    for g in sorted(G):
        if g in left:
            c = frozenset(_compose(_compose(x, g), inv[x]) for x in G)
            left -= c
            classes.append(c)
    where = {g: i for i, c in enumerate(classes) for g in c}
    parent = list(range(len(classes)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, c in enumerate(classes):
        g = next(iter(c))
        for k in range(1, exp + 1):
            if math.gcd(k, exp) == 1:
                a, b = find(i), find(where[ppow(g, k)])
                if a != b:
                    parent[a] = b
    orbit_index = {}
    for i, c in enumerate(classes):
        g = next(iter(c))
        if g != e:
            orbit_index.setdefault(find(i), perm_index(g))
    if not orbit_index:
        raise TrivialGroup("trivial permutation group")
    a = min(orbit_index.values())
    return MalleInvariants(a, sum(1 for v in orbit_index.values() if v == a))


# -------------------------------------------------------------- catalogue

_CATALOGUE_GENS = {
    "H2A": ["-1,0;0,-1"],
    "H2B": ["1,0;0,-1"],
    "H2C": ["0,1;1,0"],
    "H3A": ["0,-1;1,-1"],
    "H4A": ["0,1;-1,0"],
    "H4B": ["-1,0;0,-1", "0,1;1,0"],
    "H4C": ["1,0;0,-1", "-1,0;0,1"],
    "H6A": ["1,-1;1,0"],
    "H6B": ["0,-1;1,-1", "0,1;1,0"],
    "H6C": ["0,-1;1,-1", "0,-1;-1,0"],
    "H8A": ["0,1;-1,0", "0,1;1,0"],
    "H12A": ["1,-1;1,0", "0,1;1,0"],
}

# Hand-derived invariant table for the catalogue.
EXPECTED_INVARIANTS = {
    "H2A": (2, 1), "H2B": (1, 1), "H2C": (1, 1), "H3A": (2, 1),
    "H4A": (2, 2), "H4B": (1, 2), "H4C": (1, 2), "H6A": (2, 3),
    "H6B": (1, 1), "H6C": (1, 1), "H8A": (1, 2), "H12A": (1, 2),
}

LABELS = tuple(_CATALOGUE_GENS)


def normalize_label(label: str) -> str:
    """Accept 'H12A', 'H_{12,A}' and similar spellings."""
    s = label.replace("_", "").replace("{", "").replace("}", "").replace(",", "").upper()
    if s not in _CATALOGUE_GENS:
        raise KeyError(label)
    return s


def catalogue() -> list[MatrixGroup]:
    return [generate_group([parse_matrix(g) for g in gens], label=lab)
            for lab, gens in _CATALOGUE_GENS.items()]


def lookup(label: str) -> MatrixGroup:
    lab = normalize_label(label)
    return generate_group([parse_matrix(g) for g in _CATALOGUE_GENS[lab]], label=lab)


def coinvariant_snf(G: MatrixGroup, dual: bool = False) -> tuple[int, ...]:
    """Invariant factors of the span of all (h - I), i.e. the coinvariant lattice.

    With dual=True the transposed group is used.
    """
    I = identity(G.n)
    blocks = []
    for h in G.elements:
        D = mat_sub(h, I)
        blocks.append(tuple(zip(*D)) if dual else D)
    big = tuple(tuple(x for B in blocks for x in B[i]) for i in range(G.n))
    return smith_diagonal(big)


def conjugacy_invariant(G: MatrixGroup) -> tuple:
    """Fingerprint preserved by GL_n(Z)-conjugation.

    The sorted multiset of (order, trace, det, SNF(h - I)) over the elements,
    followed by the SNF of the coinvariant lattice of G and of its dual.
    The elementwise part alone cannot tell the two S3 actions apart.
    """
    I = identity(G.n)
    items = []
    for h in G.elements:
        items.append((mat_order(h), sum(h[i][i] for i in range(G.n)), det(h),
                      smith_diagonal(mat_sub(h, I))))
    return tuple(sorted(items)), coinvariant_snf(G), coinvariant_snf(G, dual=True)


def random_unimodular(n: int, rng, steps: int = 6, bound: int = 2) -> Matrix:
    """Random product of elementary matrices (entries stay small)."""
    M = [list(r) for r in identity(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if n == 1:
            M[0][0] = -M[0][0]
            continue
        c = rng.choice([x for x in range(-bound, bound + 1) if x])
        M[i] = [x + c * y for x, y in zip(M[i], M[j])]
        if rng.random() < 0.3:
            M[i] = [-x for x in M[i]]
    return as_matrix(M)


def describe(G: MatrixGroup) -> dict:
    classes = conjugacy_classes(G)
    orbits = cyclotomic_orbits(G)
    out = {
        "order": G.order,
        "classes": [sorted([list(map(list, h)) for h in c]) for c in classes],
        "orbits": [[sorted([list(map(list, h)) for h in c]) for c in orb] for orb in orbits],
    }
    try:
        m = malle_invariants(G)
        out["a"], out["b"] = m.a, m.b
    except TrivialGroup:
        out["a"] = out["b"] = None
    return out
