import os
import random
from fractions import Fraction

import pytest

from acdol import catalog, pipeline
from acdol.liealg import make_spec

_CACHE = {}


def builtin_analysis(name):
    """Analysis of a builtin, computed once per session."""
    if name not in _CACHE:
        _CACHE[name] = pipeline.analyze_document(catalog.builtin(name))
    return _CACHE[name]


@pytest.fixture
def analysis():
    return builtin_analysis


def golden_dir():
    override = os.environ.get("ACDOL_TEST_DATA")
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data", "golden")


def random_nilpotent_spec(rng, m):
    """A random two-step nilpotent algebra of dimension 2m with a random
    rational J and a matching compatible metric.

    Brackets of the first block land in a central block, so the Jacobi
    identity holds automatically; J = P J0 P^{-1} for a random invertible P
    and the metric (P^{-1})^t P^{-1} is J-compatible by construction.
    """
    n = 2 * m
    centre = rng.randint(1, m)
    nc = n - centre
    brackets = {}
    for i in range(nc):
        for j in range(i + 1, nc):
            if rng.random() < 0.5:
                coeffs = {}
                for k in range(nc, n):
                    c = rng.choice([-2, -1, 0, 1, 1, 2])
                    if c:
                        coeffs[k] = Fraction(c)
                if coeffs:
                    brackets[(i, j)] = coeffs
    while True:
        P = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        try:
            Pinv = _invert(P)
        except ZeroDivisionError:
            continue
        break
    J0 = [[Fraction(0)] * n for _ in range(n)]
    for a in range(m):
        J0[2 * a + 1][2 * a] = Fraction(1)
        J0[2 * a][2 * a + 1] = Fraction(-1)
    PJ0 = _matmul(P, J0)
    J = _matmul(PJ0, Pinv)
    metric = _matmul(_transpose(Pinv), Pinv)
    return make_spec(n, brackets=brackets, J=J, metric=metric,
                     name="random-%d" % rng.randint(0, 10 ** 6))


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _transpose(a):
    n = len(a)
    return [[a[j][i] for j in range(n)] for i in range(n)]


def _invert(a):
    n = len(a)
    m = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[c])]
    return [row[n:] for row in m]


def seeded_rng(seed=20240801):
    return random.Random(seed)
