"""Classical QUBO minimization backends.

Both samplers return a SampleSet ordered by (energy, bits); the
exhaustive backend is the exact oracle, the annealer is the scalable
stand-in whose occurrence counts play the role of hardware read
statistics.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qubo
from .encoding import BitVector
from .errors import DimensionMismatch, TooManyQubits

_EXHAUSTIVE_LIMIT = 24


class SampleEntry(NamedTuple):
    bits: BitVector
    energy: float
    occurrences: int


@dataclass(frozen=True)
class SampleSet:
    entries: tuple[SampleEntry, ...]

    def best(self) -> SampleEntry:
        return self.entries[0]

    def ground_occurrences(self) -> int:
        """Total occurrences across entries tied with the minimum energy."""
        e0 = self.entries[0].energy
        return sum(e.occurrences for e in self.entries if e.energy == e0)


@dataclass(frozen=True)
class AnnealConfig:
    """Seeded single-bit-flip Metropolis annealer settings.

    beta_start/beta_end omitted means the geometric schedule is scaled
    by the QUBO itself: 0.05/E to 10/E with E the largest coefficient
    magnitude, so the same settings work at scale 2^40 and 2^-80.
    """

    reads: int = 1000
    sweeps: int = 100
    beta_start: float | None = None
    beta_end: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.reads < 1 or self.sweeps < 1:
            raise ValueError("reads and sweeps must be >= 1")
        if (self.beta_start is None) != (self.beta_end is None):
            raise ValueError("give both beta endpoints or neither")
        if self.beta_start is not None and not 0 < self.beta_start < self.beta_end:
            raise ValueError("need 0 < beta_start < beta_end")


def sample_exhaustive(q: qubo.QuboMatrix) -> SampleSet:
    if q.n_qubits > _EXHAUSTIVE_LIMIT:
        raise TooManyQubits(f"{q.n_qubits} qubits exceeds exhaustive limit {_EXHAUSTIVE_LIMIT}")
    nq = q.n_qubits
    scored = []
    for state in range(1 << nq):
        bits = tuple((state >> u) & 1 for u in range(nq))
        scored.append((qubo.energy(q, bits), bits))
    scored.sort()
    return SampleSet(entries=tuple(SampleEntry(bits, e, 1) for e, bits in scored))


def sample_anneal(q: qubo.QuboMatrix, config: AnnealConfig) -> SampleSet:
    nq = q.n_qubits
    if nq < 1:
        raise DimensionMismatch("annealer needs at least one qubit")
    lin = np.array(q.linear, dtype=float)
    coupling = np.zeros((nq, nq))
    for (u, v), c in q.quadratic.items():
        coupling[u, v] = c
        coupling[v, u] = c

    scale = max(float(np.max(np.abs(lin))) if nq else 0.0,
                max((abs(c) for c in q.quadratic.values()), default=0.0))
    if scale == 0.0:
        scale = 1.0
    beta_lo = config.beta_start if config.beta_start is not None else 0.05 / scale
    beta_hi = config.beta_end if config.beta_end is not None else 10.0 / scale
    betas = np.geomspace(beta_lo, beta_hi, config.sweeps)

    rng = np.random.Generator(np.random.PCG64(config.seed))
    reads = config.reads
    state = rng.integers(0, 2, size=(reads, nq)).astype(float)
    e_now = state @ lin + 0.5 * np.einsum("ri,ij,rj->r", state, coupling, state)
    best_e = e_now.copy()
    best_state = state.copy()

    for beta in betas:
        for u in range(nq):
            field = lin[u] + state @ coupling[:, u]
            delta = (1.0 - 2.0 * state[:, u]) * field
            accept = (delta <= 0.0) | (rng.random(reads) < np.exp(-beta * np.maximum(delta, 0.0)))
            state[:, u] = np.where(accept, 1.0 - state[:, u], state[:, u])
            e_now = e_now + np.where(accept, delta, 0.0)
            improved = e_now < best_e
            if improved.any():
                best_e[improved] = e_now[improved]
                best_state[improved] = state[improved]

    # each read reports the best state it visited; exact energies are
    # recomputed per distinct state so SampleSet stays sampler-agnostic
    counts = Counter(tuple(int(b) for b in row) for row in best_state)
    entries = [
        SampleEntry(bits, qubo.energy(q, bits), occ) for bits, occ in counts.items()
    ]
    entries.sort(key=lambda e: (e.energy, e.bits))
    return SampleSet(entries=tuple(entries))
