"""Exact rational oracles and frozen random-instance families.

Everything here recomputes quantities from scratch with Fraction (or
plain integer) arithmetic so the package's own compensated paths are
never used to check themselves.
"""

import json
import math
import random
from fractions import Fraction

from qrefine import DyadicVector, LinearSystem


def dyadic_fractions(vec: DyadicVector) -> list[Fraction]:
    """Exact component values straight from the stored fields."""
    scale = Fraction(2) ** vec.exponent
    return [Fraction(m) * scale for m in vec.mantissas]


def frac_residual_sq(a, b, x: list[Fraction]) -> Fraction:
    """||Ax - b||^2 exactly; a, b are float rows, x exact rationals."""
    total = Fraction(0)
    for r in range(len(b)):
        acc = -Fraction(float(b[r]))
        for i, xi in enumerate(x):
            acc += Fraction(float(a[r][i])) * xi
        total += acc * acc
    return total


def frac_energy(q, bits) -> Fraction:
    total = Fraction(0)
    for u, coeff in enumerate(q.linear):
        if bits[u]:
            total += Fraction(coeff)
    for (u, v), coeff in q.quadratic.items():
        if bits[u] and bits[v]:
            total += Fraction(coeff)
    return total


def frac_error(center: DyadicVector, truth) -> float:
    """2-norm distance via exact squared sum, one final sqrt."""
    sq = Fraction(0)
    for ci, ti in zip(dyadic_fractions(center), truth):
        d = ci - Fraction(float(ti))
        sq += d * d
    return math.sqrt(float(sq))


def random_bits(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, 1) for _ in range(n))


def random_instance(rng: random.Random):
    """(a, b, center, k, l) family used by the energy-identity checks.

    The center exponent sits 6 bits below the window floor so the
    builder's exact-shift path is always exercised.
    """
    n = rng.randint(1, 4)
    k = rng.randint(1, 3)
    l = rng.randint(-10, 10)
    a = [[rng.uniform(-2.0, 2.0) for _ in range(n)] for _ in range(n)]
    b = [rng.uniform(-4.0, 4.0) for _ in range(n)]
    center = DyadicVector(tuple(rng.randint(-512, 512) for _ in range(n)), l + k - 1 - 6)
    return a, b, center, k, l


def random_grid_instance(rng: random.Random):
    """(a, b, center, k, l) with 2kn <= 12 so windows stay enumerable."""
    while True:
        n = rng.randint(1, 3)
        k = rng.randint(1, 2)
        if 2 * k * n <= 12:
            break
    l = rng.randint(-8, 8)
    a = [[rng.uniform(-2.0, 2.0) for _ in range(n)] for _ in range(n)]
    b = [rng.uniform(-4.0, 4.0) for _ in range(n)]
    center = DyadicVector(tuple(rng.randint(-64, 64) for _ in range(n)), l - 2)
    return a, b, center, k, l


def random_qubo_coeffs(rng: random.Random, nq: int):
    """Dense-ish random QUBO pieces with coefficients spanning signs."""
    linear = tuple(rng.uniform(-8.0, 8.0) for _ in range(nq))
    quadratic = {}
    for u in range(nq):
        for v in range(u + 1, nq):
            if rng.random() < 0.6:
                quadratic[(u, v)] = rng.uniform(-8.0, 8.0)
    return linear, quadratic


def irrational_system() -> tuple[LinearSystem, tuple[float, float]]:
    """The built-in irrational 2x2 system, rebuilt from stdlib constants."""
    r2, r3, r5, r7 = math.sqrt(2), math.sqrt(3), math.sqrt(5), math.sqrt(7)
    truth = (1024.0 * math.pi, -32.0 * math.e)
    a = [[r2, -r3], [r5, r7]]
    b = [1024.0 * r2 * math.pi + 32.0 * r3 * math.e,
         1024.0 * r5 * math.pi - 32.0 * r7 * math.e]
    return LinearSystem(a=a, b=b), truth


def irrational_problem_text(with_truth: bool = True) -> str:
    system, truth = irrational_system()
    doc = {"a": [[float(v) for v in row] for row in system.a],
           "b": [float(v) for v in system.b]}
    if with_truth:
        doc["x_true"] = list(truth)
    return json.dumps(doc)


def build_illcond(theta_deg: float = 44.0):
    """Rotated diag(1, 1/129.44) with b = A.(1,1); truth is (1,1)."""
    th = math.radians(theta_deg)
    c, s = math.cos(th), math.sin(th)
    rot = [[c, -s], [s, c]]
    d = [1.0, 1.0 / 129.44]
    a = [[math.fsum(rot[i][m] * d[m] * rot[j][m] for m in range(2)) for j in range(2)]
         for i in range(2)]
    b = [math.fsum(a[i]) for i in range(2)]
    return LinearSystem(a=a, b=b), (1.0, 1.0)
