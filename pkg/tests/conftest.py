import os
import random

import pytest

from extquot.ring import Ring
from extquot.modules import PolyMatrix, PresentedModule

GOLDEN = os.path.join(os.path.dirname(__file__), "..", "golden")


@pytest.fixture
def R5():
    return Ring(5, 2)


@pytest.fixture
def R2():
    return Ring(2, 2)


def mat(ring, rows):
    """Matrix from a list of rows of polynomial strings."""
    entries = [[ring.parse(s) for s in row] for row in rows]
    return PolyMatrix(ring, len(entries), len(entries[0]) if entries else 0, entries)


def mod(ring, ambient, rows=None):
    if not rows:
        return PresentedModule(ring, ambient)
    return PresentedModule(ring, ambient, mat(ring, rows))


def cyc(ring, *gens):
    return PresentedModule.cyclic(ring, [ring.parse(g) for g in gens])


def random_poly(rng, ring, max_deg=3, terms=4):
    out = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(ring.r))
        if sum(e) <= max_deg + 1:
            out[e] = rng.randint(1, ring.p - 1)
    return ring.poly(out)


def random_finite_length_module(rng, ring, points=None):
    """A module over F_p[x,y] with support inside a small rational grid.

    Relations include pure products of (x - a) and of (y - b) factors in
    every position, which forces finite length.  The support may hit any
    crossing of the used coordinate lines, so the returned point list is
    the full grid {a_i} x {b_j}.
    """
    if points is None:
        k = rng.randint(1, 2)
        coords = rng.sample(range(ring.p), min(2 * k, ring.p))
        points = [(coords[2 * i % len(coords)], coords[(2 * i + 1) % len(coords)])
                  for i in range(k)]
    x, y = ring.var(0), ring.var(1)
    amb = rng.randint(1, 2)
    cols = []
    for pos in range(amb):
        fx = ring.one()
        fy = ring.one()
        for (a, b) in points:
            for _ in range(rng.randint(1, 2)):
                fx = fx * (x - ring.const(a))
            for _ in range(rng.randint(1, 2)):
                fy = fy * (y - ring.const(b))
        for f in (fx, fy):
            col = [ring.zero()] * amb
            col[pos] = f
            cols.append(col)
    # a couple of mixed extra relations keep presentations from being diagonal
    for _ in range(rng.randint(0, 2)):
        pos = rng.randrange(amb)
        (a, b) = rng.choice(points)
        f = (x - ring.const(a)) * (y - ring.const(b))
        col = [ring.zero()] * amb
        col[pos] = f
        cols.append(col)
    matx = PolyMatrix.from_columns(ring, amb, cols)
    grid = sorted({(a, b) for a, _ in points for _, b in points})
    return PresentedModule(ring, amb, matx), grid
