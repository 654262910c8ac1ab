"""Iterative QUBO refinement for linear systems.

Each unknown gets a small window of binary variables at scale 2^l; the
shifted least-squares QUBO over those bits is minimized by a classical
sampler, the center moves by the decoded increment, and the scale drops
until the solution is pinned to ~2^-40. Centers are exact dyadic
rationals throughout, so sixty levels of descent never round.
"""

from .encoding import (
    BitVector,
    DyadicVector,
    EncodingSpec,
    canonical_bits,
    decode,
    decode_increments,
    enumerate_grid,
    qubit_index,
)
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    LengthMismatch,
    NotSymmetric,
    ParseError,
    QrefineError,
    SingularMatrix,
    TooLarge,
    TooManyQubits,
)
from .linalg import (
    EigenBasis,
    LinearSystem,
    condition_number,
    residual_norm_sq,
    solve_direct,
    symmetric_eigen,
)
from .precision import DoubleDouble
from .problems import ProblemDocument, load_problem, parse_problem
from .qubo import (
    IsingModel,
    QuboMatrix,
    build_window,
    dump,
    energy,
    ising_energy,
    parse,
    qubo_to_ising,
    target_min_energy,
)
from .refine import (
    IterationRecord,
    RefinementConfig,
    RefinementTrace,
    error_vs_truth,
    recenter_level,
    refine,
    refine_eigenbasis,
)
from .samplers import AnnealConfig, SampleEntry, SampleSet, sample_anneal, sample_exhaustive

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig",
    "BitVector",
    "DimensionMismatch",
    "DoubleDouble",
    "DyadicVector",
    "EigenBasis",
    "EncodingSpec",
    "IndexOutOfRange",
    "IsingModel",
    "IterationRecord",
    "LengthMismatch",
    "LinearSystem",
    "NotSymmetric",
    "ParseError",
    "ProblemDocument",
    "QrefineError",
    "QuboMatrix",
    "RefinementConfig",
    "RefinementTrace",
    "SampleEntry",
    "SampleSet",
    "SingularMatrix",
    "TooLarge",
    "TooManyQubits",
    "build_window",
    "canonical_bits",
    "condition_number",
    "decode",
    "decode_increments",
    "dump",
    "energy",
    "enumerate_grid",
    "error_vs_truth",
    "ising_energy",
    "load_problem",
    "parse",
    "parse_problem",
    "qubit_index",
    "qubo_to_ising",
    "recenter_level",
    "refine",
    "refine_eigenbasis",
    "residual_norm_sq",
    "sample_anneal",
    "sample_exhaustive",
    "solve_direct",
    "symmetric_eigen",
    "target_min_energy",
]
