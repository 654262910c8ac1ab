"""Shifted least-squares QUBO construction and evaluation.

For a window spec around an exact center c, the model assigns every
bitvector q the energy ||A(c + y(q)) - b||^2 - ||b - Ac||^2 where y(q)
is the decoded increment. Writing b' = b - Ac and w_u for the signed
scale 2^t of qubit u on variable i(u), the coefficients are

    linear[u]  = w_u^2 (A^T A)_{i(u),i(u)} - 2 w_u (A^T b')_{i(u)}
    quad[u,v]  = 2 w_u w_v (A^T A)_{i(u),i(v)}        (u < v)

The shift b' is computed in exact dyadic arithmetic and rounded once
per coefficient; since every w_u is a signed power of two, the only
other rounding is in A^T A itself. The constant ||b'||^2 is kept out of
the matrix (all-zero bits then cost exactly zero) and exposed through
target_min_energy instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .encoding import BitVector, DyadicVector, EncodingSpec
from .errors import DimensionMismatch, LengthMismatch, ParseError, TooLarge
from .linalg import LinearSystem, residual_norm_sq
from .precision import DoubleDouble, dyadic_of_float, dyadic_sum, dyadic_to_float

_PRUNE = 1e-300


@dataclass(frozen=True, eq=True)
class QuboMatrix:
    n_qubits: int
    linear: tuple[float, ...]
    quadratic: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.linear) != self.n_qubits:
            raise DimensionMismatch("linear term count != n_qubits")
        for (i, j), val in self.quadratic.items():
            if not (0 <= i < j < self.n_qubits):
                raise DimensionMismatch(f"quadratic index pair {(i, j)} not upper-triangular")
            if not math.isfinite(val):
                raise DimensionMismatch(f"non-finite coefficient at {(i, j)}")
        for val in self.linear:
            if not math.isfinite(val):
                raise DimensionMismatch("non-finite linear coefficient")
        object.__setattr__(
            self, "quadratic", dict(sorted(self.quadratic.items()))
        )

    __hash__ = None  # dict field; value identity is via ==


@dataclass(frozen=True)
class IsingModel:
    h: tuple[float, ...]
    j: dict[tuple[int, int], float]
    offset: float

    __hash__ = None


def build_window(
    system: LinearSystem, center: DyadicVector, spec: EncodingSpec
) -> QuboMatrix:
    n = system.n
    if spec.n_vars != n or len(center) != n:
        raise DimensionMismatch("system, center and spec sizes disagree")
    if spec.total_qubits > 10**6:
        raise TooLarge(f"{spec.total_qubits} qubits exceeds the 1e6 bound")

    a = system.a
    # b' = b - A c exactly, then g = A^T b' exactly, rounded once per entry
    ady = [[dyadic_of_float(float(a[r, i])) for i in range(n)] for r in range(n)]
    bprime = []
    for r in range(n):
        terms = [dyadic_of_float(float(system.b[r]))]
        for i in range(n):
            am, ae = ady[r][i]
            terms.append((-am * center.mantissas[i], ae + center.exponent))
        bprime.append(dyadic_sum(terms))
    g = []
    for i in range(n):
        terms = []
        for r in range(n):
            am, ae = ady[r][i]
            bm, be = bprime[r]
            terms.append((am * bm, ae + be))
        g.append(dyadic_to_float(*dyadic_sum(terms)))

    gram = [
        [math.fsum(float(a[r, i]) * float(a[r, j]) for r in range(n)) for j in range(n)]
        for i in range(n)
    ]

    k = spec.bits_per_sign
    nq = spec.total_qubits
    weight = [0.0] * nq
    var = [0] * nq
    for i in range(n):
        for s, block in ((1.0, 0), (-1.0, k)):
            for t in range(k):
                u = i * 2 * k + block + t
                weight[u] = s * 2.0 ** (spec.l_lo + t)
                var[u] = i
    linear = tuple(
        weight[u] * weight[u] * gram[var[u]][var[u]] - 2.0 * weight[u] * g[var[u]]
        for u in range(nq)
    )
    quadratic = {}
    for u in range(nq):
        for v in range(u + 1, nq):
            q = 2.0 * weight[u] * weight[v] * gram[var[u]][var[v]]
            if abs(q) >= _PRUNE:
                quadratic[(u, v)] = q
    return QuboMatrix(n_qubits=nq, linear=linear, quadratic=quadratic)


def energy(q: QuboMatrix, bits: BitVector) -> float:
    if len(bits) != q.n_qubits:
        raise LengthMismatch(f"expected {q.n_qubits} bits, got {len(bits)}")
    lin = q.linear
    terms = [lin[u] for u in range(len(bits)) if bits[u]]
    terms += [c for (u, v), c in q.quadratic.items() if bits[u] and bits[v]]
    return math.fsum(terms)


def target_min_energy(system: LinearSystem, center: DyadicVector) -> DoubleDouble:
    """-(b - Ac)^T (b - Ac): the floor any window around c is chasing."""
    return -residual_norm_sq(system, center)


def qubo_to_ising(q: QuboMatrix) -> IsingModel:
    nq = q.n_qubits
    h_terms: list[list[float]] = [[q.linear[i] / 2.0] for i in range(nq)]
    offset_terms = [q.linear[i] / 2.0 for i in range(nq)]
    j = {}
    for (u, v), c in q.quadratic.items():
        quarter = c / 4.0
        j[(u, v)] = quarter
        h_terms[u].append(quarter)
        h_terms[v].append(quarter)
        offset_terms.append(quarter)
    h = tuple(math.fsum(t) for t in h_terms)
    return IsingModel(h=h, j=j, offset=math.fsum(offset_terms))


def ising_energy(model: IsingModel, spins: tuple[int, ...]) -> float:
    """Energy sum h.s + sum J s s, excluding the offset."""
    if len(spins) != len(model.h):
        raise LengthMismatch("spin count != field count")
    terms = [model.h[i] * spins[i] for i in range(len(spins))]
    terms += [c * spins[u] * spins[v] for (u, v), c in model.j.items()]
    return math.fsum(terms)


def dump(q: QuboMatrix) -> str:
    doc = {
        "num_qubits": q.n_qubits,
        "linear": {str(i): q.linear[i] for i in range(q.n_qubits)},
        "quadratic": {f"{u},{v}": c for (u, v), c in q.quadratic.items()},
    }
    return json.dumps(doc, separators=(",", ":"), allow_nan=False)


def parse(text: str) -> QuboMatrix:
    def reject_const(name: str) -> float:
        raise ParseError(f"non-finite constant {name} not allowed")

    def no_dupes(pairs):
        d = {}
        for key, val in pairs:
            if key in d:
                raise ParseError(f"duplicate key {key!r}")
            d[key] = val
        return d

    try:
        doc = json.loads(text, parse_constant=reject_const, object_pairs_hook=no_dupes)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad QUBO JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"num_qubits", "linear", "quadratic"}:
        raise ParseError("QUBO document must have exactly num_qubits, linear, quadratic")
    nq = doc["num_qubits"]
    if isinstance(nq, bool) or not isinstance(nq, int) or nq < 0:
        raise ParseError("num_qubits must be a non-negative integer")
    if not isinstance(doc["linear"], dict) or not isinstance(doc["quadratic"], dict):
        raise ParseError("linear and quadratic must be JSON objects")
    linear = [0.0] * nq
    for key, val in doc["linear"].items():
        try:
            i = int(key)
        except ValueError as exc:
            raise ParseError(f"bad linear index {key!r}") from exc
        if not 0 <= i < nq or not isinstance(val, (int, float)):
            raise ParseError(f"bad linear entry {key!r}")
        linear[i] = float(val)
    quadratic = {}
    for key, val in doc["quadratic"].items():
        try:
            u, v = (int(p) for p in key.split(","))
        except ValueError as exc:
            raise ParseError(f"bad quadratic index {key!r}") from exc
        if not 0 <= u < v < nq or not isinstance(val, (int, float)):
            raise ParseError(f"bad quadratic entry {key!r}")
        quadratic[(u, v)] = float(val)
    return QuboMatrix(n_qubits=nq, linear=tuple(linear), quadratic=quadratic)
