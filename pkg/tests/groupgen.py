"""Deterministic supply of finite subgroups of GL_n(Z) for property checks."""
from __future__ import annotations

import itertools
import random

from toritally import latgrp

PERMUTATION_GROUPS = {
    "S2": ([(1, 0)], 2),
    "C3": ([(1, 2, 0)], 3),
    "S3": ([(1, 0, 2), (1, 2, 0)], 3),
    "C4": ([(1, 2, 3, 0)], 4),
    "V4": ([(1, 0, 3, 2), (2, 3, 0, 1)], 4),
    "D4": ([(1, 2, 3, 0), (0, 3, 2, 1)], 4),
    "A4": ([(1, 2, 0, 3), (1, 0, 3, 2)], 4),
    "S4": ([(1, 0, 2, 3), (1, 2, 3, 0)], 4),
    "S2xS2": ([(1, 0, 2, 3), (0, 1, 3, 2)], 4),
}


def base_groups() -> list[tuple[str, latgrp.MatrixGroup]]:
    cat = latgrp.catalogue()
    out = [(G.label, G) for G in cat]
    for G1, G2 in itertools.combinations_with_replacement(cat, 2):
        out.append((f"{G1.label}+{G2.label}", latgrp.direct_sum(G1, G2)))
    for G in cat:
        out.append((f"{G.label}+I1", latgrp.direct_sum(G, latgrp.trivial_group(1))))
    for name, (perms, n) in PERMUTATION_GROUPS.items():
        out.append((f"perm:{name}", latgrp.permutation_embed(perms, n)))
    return out


def generated_groups(count: int = 1000, seed: int = 0):
    """Base groups first, then random unimodular conjugates of them until count is reached."""
    rng = random.Random(seed)
    base = base_groups()
    out = list(base[:count])
    i = 0
    while len(out) < count:
        name, G = base[i % len(base)]
        M = latgrp.random_unimodular(G.n, rng)
        out.append((f"{name}^M{i}", G.conjugate(M)))
        i += 1
    return out
