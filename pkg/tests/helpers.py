"""Shared instance builders and hypothesis strategies."""
from __future__ import annotations

import random
from fractions import Fraction as F

from hypothesis import strategies as st

from imprecise_triangles import Instance, generate
from imprecise_triangles.geometry import LabeledPoint, Point


def inst(*triples) -> Instance:
    return Instance.from_triples(triples)


def lp(x, y, seg=None) -> LabeledPoint:
    return LabeledPoint(Point(F(x), F(y)), seg)


UNIT3 = inst((0, 0, 1), (1, 0, 1), (2, 0, 1))
# two fixed points with a raised segment between them
PEAK = inst((0, 0, 0), (2, 1, 2), (4, 0, 0))
# three fixed points spanning a triangle of area 6
TRI6 = inst((0, 0, 0), (4, 0, 0), (1, 3, 3))
QUAD = inst((0, 0, 0), (2, 1, 3), (4, 1, 3), (6, 0, 0))


@st.composite
def instances(draw, min_n=3, max_n=7, max_len=6, span=10, point_extremes=False):
    n = draw(st.integers(min_n, max_n))
    xs = draw(st.lists(st.integers(-3 * n, 3 * n), min_size=n, max_size=n, unique=True))
    xs.sort()
    denom = draw(st.sampled_from([1, 1, 2, 3]))
    triples = []
    for i, x in enumerate(xs):
        lo = draw(st.integers(-span, span))
        length = draw(st.integers(0, max_len))
        if point_extremes and i in (0, n - 1):
            length = 0
        triples.append((F(x), F(lo, denom), F(lo + length, denom)))
    return Instance.from_triples(triples)


def corpus(count: int = 500, seed: int = 2024, min_n: int = 3, max_n: int = 10) -> list[Instance]:
    """Seeded mix of general, equal-length, collinear-uppers and point-extreme
    instances, some with half-integer coordinates."""
    rng = random.Random(seed)
    kinds = ("random", "random", "equal", "collinear-uppers", "fixed-extremes")
    out = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        n = rng.randint(min_n, max_n)
        params = {"span": rng.choice([3, 10, 40]), "max_len": rng.choice([0, 1, 2, 8, 20])}
        if kind == "equal":
            params["length"] = rng.choice([0, 1, 2, 5])
        made = generate(kind, n, seed=rng.randrange(10**6), **params)
        if rng.random() < 0.25:
            made = Instance.from_triples((x, lo / 2, hi / 2) for x, lo, hi in made.triples())
        out.append(made)
    return out
