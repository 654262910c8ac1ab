"""Window QUBO construction against the exact residual-difference oracle."""

import math
import random
from fractions import Fraction

import pytest

from helpers import (
    dyadic_fractions,
    irrational_system,
    frac_energy,
    frac_residual_sq,
    random_bits,
    random_instance,
    random_qubo_coeffs,
)
from qrefine import (
    DimensionMismatch,
    DyadicVector,
    EncodingSpec,
    LengthMismatch,
    LinearSystem,
    ParseError,
    QuboMatrix,
    build_window,
    decode_increments,
    dump,
    energy,
    ising_energy,
    parse,
    qubo_to_ising,
    target_min_energy,
)

ONE_D = LinearSystem(a=[[1.0]], b=[0.0])


def window(n, l, k):
    return EncodingSpec(n_vars=n, l_lo=l, l_hi=l + k - 1)


def test_build_unit_system_b0():
    q = build_window(ONE_D, DyadicVector.zero(1), window(1, 0, 1))
    assert q.linear == (1.0, 1.0)
    assert q.quadratic == {(0, 1): -2.0}


def test_build_unit_system_b1():
    system = LinearSystem(a=[[1.0]], b=[1.0])
    q = build_window(system, DyadicVector.zero(1), window(1, 0, 1))
    assert q.linear == (-1.0, 3.0)
    assert q.quadratic == {(0, 1): -2.0}
    energies = {bits: energy(q, bits) for bits in [(0, 0), (1, 0), (0, 1), (1, 1)]}
    assert min(energies.values()) == -1.0
    assert energies[(1, 0)] == -1.0


def test_build_unit_system_b2_level1():
    system = LinearSystem(a=[[1.0]], b=[2.0])
    q = build_window(system, DyadicVector.zero(1), window(1, 1, 1))
    assert q.linear == (-4.0, 12.0)
    assert q.quadratic == {(0, 1): -8.0}
    assert energy(q, (1, 0)) == -4.0
    assert min(energy(q, b) for b in [(0, 0), (1, 0), (0, 1), (1, 1)]) == -4.0


def test_build_dimension_checks():
    with pytest.raises(DimensionMismatch):
        build_window(ONE_D, DyadicVector.zero(2), window(1, 0, 1))
    with pytest.raises(DimensionMismatch):
        build_window(ONE_D, DyadicVector.zero(1), window(2, 0, 1))


def test_energy_trivials():
    q = QuboMatrix(n_qubits=2, linear=(1.0, 1.0), quadratic={(0, 1): -2.0})
    assert energy(q, (0, 0)) == 0.0
    assert energy(q, (1, 1)) == 0.0
    single = QuboMatrix(n_qubits=1, linear=(2.0,), quadratic={})
    assert energy(single, (1,)) == 2.0
    with pytest.raises(LengthMismatch):
        energy(q, (0,))


def test_quadratic_validation():
    with pytest.raises(DimensionMismatch):
        QuboMatrix(n_qubits=2, linear=(0.0, 0.0), quadratic={(1, 0): 1.0})
    with pytest.raises(DimensionMismatch):
        QuboMatrix(n_qubits=2, linear=(0.0, 0.0), quadratic={(0, 0): 1.0})
    with pytest.raises(DimensionMismatch):
        QuboMatrix(n_qubits=2, linear=(0.0, math.inf), quadratic={})


def test_energy_identity_random_windows():
    rng = random.Random(98431)
    worst = Fraction(0)
    for _ in range(30):
        a, b, center, k, l = random_instance(rng)
        system = LinearSystem(a=a, b=b)
        spec = window(len(b), l, k)
        q = build_window(system, center, spec)
        cf = dyadic_fractions(center)
        r0 = frac_residual_sq(a, b, cf)
        bound = Fraction(1, 10**9) * max(Fraction(1), abs(r0))
        scale = Fraction(2) ** l
        for _ in range(40):
            bits = random_bits(rng, spec.total_qubits)
            incs = decode_increments(bits, spec)
            point = [c + d * scale for c, d in zip(cf, incs)]
            true_drop = frac_residual_sq(a, b, point) - r0
            dev = abs(Fraction(energy(q, bits)) - true_drop)
            worst = max(worst, dev / max(Fraction(1), abs(r0)))
            assert dev <= bound
    assert worst <= Fraction(1, 10**12)  # typical deviation is far below the bound


def test_energy_zero_bits_exact_zero():
    rng = random.Random(555)
    for _ in range(10):
        a, b, center, k, l = random_instance(rng)
        spec = window(len(b), l, k)
        q = build_window(LinearSystem(a=a, b=b), center, spec)
        assert energy(q, (0,) * spec.total_qubits) == 0.0


def test_energy_floor_is_target():
    rng = random.Random(777)
    for _ in range(10):
        while True:
            a, b, center, k, l = random_instance(rng)
            if 2 * k * len(b) <= 12:
                break
        system = LinearSystem(a=a, b=b)
        spec = window(len(b), l, k)
        q = build_window(system, center, spec)
        target = target_min_energy(system, center).to_float()
        assert target <= 0.0
        floor = target - 1e-9 * max(1.0, abs(target))
        for state in range(1 << spec.total_qubits):
            bits = tuple((state >> u) & 1 for u in range(spec.total_qubits))
            assert energy(q, bits) >= floor


def test_negation_symmetry_of_energy():
    rng = random.Random(31337)
    for _ in range(10):
        a, b, center, k, l = random_instance(rng)
        system = LinearSystem(a=a, b=b)
        n = len(b)
        spec = window(n, l, k)
        q = build_window(system, center, spec)
        bits = random_bits(rng, spec.total_qubits)
        swapped = []
        for i in range(n):
            base = i * 2 * k
            swapped.extend(bits[base + k : base + 2 * k])
            swapped.extend(bits[base : base + k])
        cf = dyadic_fractions(center)
        r0 = frac_residual_sq(a, b, cf)
        incs = decode_increments(bits, spec)
        scale = Fraction(2) ** l
        mirrored = [c - d * scale for c, d in zip(cf, incs)]
        true_drop = frac_residual_sq(a, b, mirrored) - r0
        bound = Fraction(1, 10**9) * max(Fraction(1), abs(r0))
        assert abs(Fraction(energy(q, tuple(swapped))) - true_drop) <= bound


def test_target_min_energy_values():
    system = LinearSystem(a=[[1.0, 0.0], [0.0, 1.0]], b=[3.0, -2.0])
    at_solution = target_min_energy(system, DyadicVector((3, -2), 0))
    assert (at_solution.hi, at_solution.lo) == (0.0, 0.0)
    at_zero = target_min_energy(system, DyadicVector.zero(2)).to_float()
    assert at_zero == -13.0


def test_target_min_energy_irrational_system():
    system, _ = irrational_system()
    got = target_min_energy(system, DyadicVector.zero(2)).to_float()
    true = -frac_residual_sq(system.a, system.b, [Fraction(0), Fraction(0)])
    assert abs(Fraction(got) - true) <= abs(true) * Fraction(1, 10**12)
    # magnitude ~7.06e7: b = (4700.17..., 6963.26...)
    assert -7.1e7 < got < -7.0e7


def test_ising_single_qubit():
    model = qubo_to_ising(QuboMatrix(n_qubits=1, linear=(1.0,), quadratic={}))
    assert model.h == (0.5,)
    assert model.offset == 0.5
    assert model.j == {}


def test_ising_coupler_example():
    model = qubo_to_ising(QuboMatrix(n_qubits=2, linear=(0.0, 0.0), quadratic={(0, 1): 4.0}))
    assert model.j == {(0, 1): 1.0}
    assert model.h == (1.0, 1.0)
    assert model.offset == 1.0


def test_ising_empty():
    model = qubo_to_ising(QuboMatrix(n_qubits=0, linear=(), quadratic={}))
    assert model.h == ()
    assert model.offset == 0.0


def test_ising_equivalence_random():
    rng = random.Random(246810)
    for _ in range(50):
        nq = rng.randint(1, 12)
        linear, quadratic = random_qubo_coeffs(rng, nq)
        q = QuboMatrix(n_qubits=nq, linear=linear, quadratic=quadratic)
        model = qubo_to_ising(q)
        for _ in range(min(1 << nq, 64)):
            bits = random_bits(rng, nq)
            spins = tuple(2 * b - 1 for b in bits)
            eq = energy(q, bits)
            ei = ising_energy(model, spins) + model.offset
            assert abs(eq - ei) <= 1e-12 * max(1.0, abs(eq))


def test_dump_examples():
    q = QuboMatrix(n_qubits=2, linear=(1.0, 1.0), quadratic={(0, 1): -2.0})
    assert dump(q) == '{"num_qubits":2,"linear":{"0":1.0,"1":1.0},"quadratic":{"0,1":-2.0}}'
    empty = QuboMatrix(n_qubits=0, linear=(), quadratic={})
    assert dump(empty) == '{"num_qubits":0,"linear":{},"quadratic":{}}'


def test_dump_17_digit_coefficients():
    q = QuboMatrix(n_qubits=1, linear=(0.1,), quadratic={})
    text = dump(q)
    assert '"0":0.1' in text
    assert parse(text).linear == (0.1,)


def test_dump_parse_roundtrip_random():
    rng = random.Random(1213)
    for _ in range(25):
        nq = rng.randint(0, 10)
        linear, quadratic = random_qubo_coeffs(rng, nq)
        q = QuboMatrix(n_qubits=nq, linear=linear, quadratic=quadratic)
        back = parse(dump(q))
        assert back == q
        assert dump(back) == dump(q)


def test_parse_rejects_malformed():
    bad = [
        "not json",
        '{"num_qubits":1,"linear":{}}',
        '{"num_qubits":1,"linear":{},"quadratic":{},"extra":1}',
        '{"num_qubits":-1,"linear":{},"quadratic":{}}',
        '{"num_qubits":true,"linear":{},"quadratic":{}}',
        '{"num_qubits":2,"linear":[0.0],"quadratic":{}}',
        '{"num_qubits":2,"linear":{},"quadratic":[]}',
        '{"num_qubits":2,"linear":{"9":1.0},"quadratic":{}}',
        '{"num_qubits":2,"linear":{"x":1.0},"quadratic":{}}',
        '{"num_qubits":2,"linear":{},"quadratic":{"1,0":1.0}}',
        '{"num_qubits":2,"linear":{},"quadratic":{"0,0":1.0}}',
        '{"num_qubits":2,"linear":{},"quadratic":{"0":1.0}}',
        '{"num_qubits":2,"linear":{"0":"big"},"quadratic":{}}',
        '{"num_qubits":1,"linear":{"0":Infinity},"quadratic":{}}',
        '{"num_qubits":1,"linear":{"0":1.0,"0":2.0},"quadratic":{}}',
    ]
    for text in bad:
        with pytest.raises(ParseError):
            parse(text)


def test_build_matches_fraction_coefficients():
    # independent coefficient oracle for one concrete window: the exact
    # shifted expansion with g rounded once and gram entries as floats
    a = [[1.5, -0.75], [2.0, 0.5]]
    b = [3.25, -1.125]
    center = DyadicVector((5, -3), -2)
    spec = window(2, -1, 1)
    q = build_window(LinearSystem(a=a, b=b), center, spec)

    af = [[Fraction(v) for v in row] for row in a]
    bf = [Fraction(v) for v in b]
    cf = dyadic_fractions(center)
    bprime = [bf[r] - sum(af[r][i] * cf[i] for i in range(2)) for r in range(2)]
    g = [float(sum(af[r][i] * bprime[r] for r in range(2))) for i in range(2)]
    gram = [[math.fsum(a[r][i] * a[r][j] for r in range(2)) for j in range(2)] for i in range(2)]
    weights = [0.5, -0.5, 0.5, -0.5]
    owner = [0, 0, 1, 1]
    for u in range(4):
        expect = weights[u] * weights[u] * gram[owner[u]][owner[u]] - 2.0 * weights[u] * g[owner[u]]
        assert q.linear[u] == expect
    assert len(q.quadratic) == 6
    for (u, v), coeff in q.quadratic.items():
        assert coeff == 2.0 * weights[u] * weights[v] * gram[owner[u]][owner[v]]


def test_frac_energy_helper_agrees():
    # sanity-check the test oracle itself on a tiny case
    q = QuboMatrix(n_qubits=2, linear=(1.0, 1.0), quadratic={(0, 1): -2.0})
    assert frac_energy(q, (1, 1)) == 0
    assert frac_energy(q, (1, 0)) == 1
