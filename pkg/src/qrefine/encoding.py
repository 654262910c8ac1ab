"""Two-sided radix-2 window encoding and exact dyadic center points.

A window [l_lo, l_hi] gives every unknown k = l_hi - l_lo + 1 bits per
sign, so variable i contributes the increment

    sum_{t=l_lo}^{l_hi} 2^t * (qplus_{i,t} - qminus_{i,t})

around its current center. Qubit layout is variable-major, plus block
before minus block, least significant bit first:

    index = var * 2k + (0 if plus else k) + bit
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import IndexOutOfRange, LengthMismatch, TooLarge
from .precision import dyadic_to_float

BitVector = tuple[int, ...]


def _normalize(mantissas: tuple[int, ...], exponent: int) -> tuple[tuple[int, ...], int]:
    if all(m == 0 for m in mantissas):
        return mantissas, 0
    shift = min((m & -m).bit_length() - 1 for m in mantissas if m)
    if shift:
        return tuple(m >> shift for m in mantissas), exponent + shift
    return mantissas, exponent


@dataclass(frozen=True)
class DyadicVector:
    """Vector with components mantissa_i * 2^exponent, stored exactly.

    The constructor normalizes to the largest representable exponent, so
    equality and hashing follow the represented values, not the chosen
    scaling. All arithmetic is integer arithmetic; nothing ever rounds.
    """

    mantissas: tuple[int, ...]
    exponent: int

    def __post_init__(self) -> None:
        mants, ex = _normalize(tuple(self.mantissas), self.exponent)
        object.__setattr__(self, "mantissas", mants)
        object.__setattr__(self, "exponent", ex)

    @staticmethod
    def zero(n: int) -> "DyadicVector":
        return DyadicVector((0,) * n, 0)

    @staticmethod
    def from_floats(values: Sequence[float]) -> "DyadicVector":
        # every finite float is dyadic: scale all to the common exponent
        pairs = []
        for v in values:
            f = Fraction(v)
            if f.denominator == 1:
                pairs.append((f.numerator, 0))
            else:
                pairs.append((f.numerator, -(f.denominator.bit_length() - 1)))
        if not pairs:
            return DyadicVector((), 0)
        e = min(ex for _, ex in pairs)
        return DyadicVector(tuple(m << (ex - e) for m, ex in pairs), e)

    def __len__(self) -> int:
        return len(self.mantissas)

    def add_increments(self, increments: Sequence[int], scale: int) -> "DyadicVector":
        """New vector equal to self + increments * 2^scale, exactly."""
        if len(increments) != len(self.mantissas):
            raise LengthMismatch("increment count != component count")
        e = min(self.exponent, scale)
        return DyadicVector(
            tuple(
                (m << (self.exponent - e)) + (d << (scale - e))
                for m, d in zip(self.mantissas, increments)
            ),
            e,
        )

    def to_floats(self) -> tuple[float, ...]:
        return tuple(dyadic_to_float(m, self.exponent) for m in self.mantissas)

    def to_fractions(self) -> tuple[Fraction, ...]:
        two = Fraction(2)
        return tuple(Fraction(m) * two**self.exponent for m in self.mantissas)

    def to_decimal_strings(self) -> tuple[str, ...]:
        """Exact finite decimal expansion of each component."""
        return tuple(_dyadic_decimal(m, self.exponent) for m in self.mantissas)


def _dyadic_decimal(m: int, e: int) -> str:
    if e >= 0:
        return str(m << e)
    scaled = m * 5 ** (-e)  # m * 2^e = m * 5^-e / 10^-e
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(-e + 1, "0")
    whole, frac = digits[:e], digits[e:].rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


@dataclass(frozen=True)
class EncodingSpec:
    """Window geometry: n_vars unknowns, bit exponents l_lo..l_hi."""

    n_vars: int
    l_lo: int
    l_hi: int

    def __post_init__(self) -> None:
        if self.n_vars < 1:
            raise IndexOutOfRange("n_vars must be >= 1")
        if self.l_lo > self.l_hi:
            raise IndexOutOfRange("l_lo must not exceed l_hi")

    @property
    def bits_per_sign(self) -> int:
        return self.l_hi - self.l_lo + 1

    @property
    def total_qubits(self) -> int:
        return 2 * self.bits_per_sign * self.n_vars


def qubit_index(spec: EncodingSpec, var: int, sign: str, bit: int) -> int:
    if not 0 <= var < spec.n_vars:
        raise IndexOutOfRange(f"variable {var} outside [0, {spec.n_vars})")
    if not 0 <= bit < spec.bits_per_sign:
        raise IndexOutOfRange(f"bit {bit} outside [0, {spec.bits_per_sign})")
    if sign not in ("plus", "minus"):
        raise IndexOutOfRange(f"sign must be 'plus' or 'minus', got {sign!r}")
    k = spec.bits_per_sign
    return var * 2 * k + (0 if sign == "plus" else k) + bit


def decode_increments(bits: BitVector, spec: EncodingSpec) -> tuple[int, ...]:
    """Integer increment per variable, in units of 2^l_lo."""
    if len(bits) != spec.total_qubits:
        raise LengthMismatch(f"expected {spec.total_qubits} bits, got {len(bits)}")
    k = spec.bits_per_sign
    out = []
    for i in range(spec.n_vars):
        base = i * 2 * k
        plus = sum(bits[base + t] << t for t in range(k))
        minus = sum(bits[base + k + t] << t for t in range(k))
        out.append(plus - minus)
    return tuple(out)


def decode(bits: BitVector, spec: EncodingSpec, center: DyadicVector) -> DyadicVector:
    """Exact decoded point center + increment(bits)."""
    if len(center) != spec.n_vars:
        raise LengthMismatch("center length != n_vars")
    return center.add_increments(decode_increments(bits, spec), spec.l_lo)


def canonical_bits(increments: Sequence[int], spec: EncodingSpec) -> BitVector:
    """Representative bits for integer increments: one sign block active per
    variable, never both (the redundant (1,1) pairings are avoided)."""
    if len(increments) != spec.n_vars:
        raise LengthMismatch("increment count != n_vars")
    k = spec.bits_per_sign
    limit = (1 << k) - 1
    bits = [0] * spec.total_qubits
    for i, d in enumerate(increments):
        if abs(d) > limit:
            raise IndexOutOfRange(f"increment {d} exceeds window capacity {limit}")
        base = i * 2 * k + (0 if d >= 0 else k)
        for t in range(k):
            bits[base + t] = (abs(d) >> t) & 1
    return tuple(bits)


def enumerate_grid(spec: EncodingSpec, center: DyadicVector) -> Iterator[DyadicVector]:
    """Every distinct decodable point around center, each exactly once."""
    per_var = (1 << (spec.bits_per_sign + 1)) - 1
    if per_var ** spec.n_vars > 10**6:
        raise TooLarge(f"grid has {per_var}^{spec.n_vars} points, over the 1e6 bound")
    half = (1 << spec.bits_per_sign) - 1
    offsets = range(-half, half + 1)
    for combo in itertools.product(offsets, repeat=spec.n_vars):
        yield center.add_increments(combo, spec.l_lo)
