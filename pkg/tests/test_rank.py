import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankswap.bracket import bracket_det_boundary, boundary_order
from rankswap.errors import InvalidInput
from rankswap.rank import (
    GeometricConfiguration,
    RankContext,
    Verdict,
    determinant,
    evaluate_config,
    is_nonzero,
    is_zero_rank_n,
    minor_generators,
    random_config,
    reduce,
    reduce_with_trace,
)
from rankswap.ring import PointSet, gen
from rankswap.verify import random_poly

P = PointSet.standard(5)
a1, a2, a3, a4, a5 = P
CTX2 = RankContext.standard(2, 5)


def test_determinant_small_cases():
    assert determinant((a1,), (a2,)) == gen(a1, a2)
    x1, x2, y1, y2 = a1, a2, a3, a4
    assert determinant((x1, x2), (y1, y2)) == gen(x1, y1) * gen(x2, y2) - gen(x1, y2) * gen(x2, y1)


def test_determinant_repeated_row():
    assert determinant((a1, a1), (a3, a4)).is_zero()


def test_determinant_with_diagonal_entry():
    # x1 = y1 kills the entry x1y1
    x1, x2, y2 = a1, a2, a3
    assert determinant((x1, x2), (x1, y2)) == -(gen(x1, y2) * gen(x2, x1))


def test_minor_counts():
    assert len(minor_generators(RankContext.standard(2, 3))) == 1
    assert minor_generators(RankContext.standard(2, 3))[0] == determinant((a1, a2, a3), (a1, a2, a3))
    assert len(minor_generators(RankContext.standard(2, 4))) == 16
    assert len(minor_generators(CTX2)) == 100


def test_reduce_minors_to_zero():
    for M in minor_generators(CTX2):
        assert reduce(M, CTX2).is_zero()


def test_reduce_leaves_degree_one_alone():
    assert reduce(gen(a1, a2), CTX2) == gen(a1, a2)


def test_four_minor_lies_in_ideal_of_three_minors():
    ctx = RankContext.standard(2, 4)
    pts = tuple(ctx.points)
    D4 = determinant(pts, pts)
    assert reduce(D4, ctx).is_zero()
    assert is_zero_rank_n(D4, ctx.with_seed(99), use_reducer=False).is_zero


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_division_trace_reconstructs_input(seed):
    rng = random.Random(seed)
    f = random_poly(P, rng, terms=3, degree=2)
    f = f * determinant(*(tuple(rng.sample(list(P), 3)) for _ in range(2))) + random_poly(P, rng)
    rem, quots = reduce_with_trace(f, CTX2)
    total = rem
    for (rows, cols), q in quots.items():
        total = total + q * determinant(rows, cols)
    assert total == f


def test_config_pairing_constraint_and_determinism():
    c1 = random_config(CTX2, 5)
    c2 = random_config(CTX2, 5)
    for q in P:
        v, phi = c1.vector(q), c1.covector(q)
        assert sum(x * y for x, y in zip(v, phi)) % CTX2.prime == 0
        assert c1.vector(q) == c2.vector(q) and c1.covector(q) == c2.covector(q)
        assert evaluate_config(gen(q, q), c1) == 0
        assert c1.pairing(q, q) == 0


def test_minors_vanish_at_every_sample():
    for seed in range(5):
        c = random_config(CTX2, seed)
        for M in minor_generators(CTX2):
            assert evaluate_config(M, c) == 0


def test_unit_vector_configuration():
    c = GeometricConfiguration(2, CTX2.prime, "units")
    c._data[a1.pos] = ([1, 0], [0, 1])
    c._data[a2.pos] = ([0, 1], [1, 0])
    assert evaluate_config(gen(a1, a2), c) == 1


def test_zero_certificates():
    M = minor_generators(CTX2)[7]
    assert is_zero_rank_n(M, CTX2).verdict is Verdict.PROVED_ZERO
    cert = is_zero_rank_n(gen(a1, a2), CTX2)
    assert cert.verdict is Verdict.NON_ZERO
    assert evaluate_config(gen(a1, a2), cert.witness) == cert.value != 0


def test_boundary_difference_is_zero():
    a, b = a1, a3
    xs, ys = boundary_order(a, b, (a2, a4)), boundary_order(a, b, (a1, a5))
    diff = bracket_det_boundary(a, b, xs, ys, "right") - bracket_det_boundary(a, b, xs, ys, "left")
    assert is_zero_rank_n(diff, CTX2).is_zero


def test_oracle_soundness_on_fresh_samples():
    rng = random.Random(3)
    extra = CTX2.with_seed(12345)
    for _ in range(10):
        f = random_poly(P, rng) * minor_generators(CTX2)[rng.randrange(100)]
        f = f + random_poly(P, rng) * minor_generators(CTX2)[rng.randrange(100)]
        assert is_zero_rank_n(f, CTX2).is_zero
        for t in range(100):
            assert evaluate_config(f, extra.config(t, "fresh")) == 0


def test_oracle_only_path_agrees_with_reducer():
    f = gen(a1, a2) * minor_generators(CTX2)[3]
    assert is_zero_rank_n(f, CTX2, use_reducer=False).verdict is Verdict.PROBABLY_ZERO
    assert is_zero_rank_n(f, CTX2).verdict is Verdict.PROVED_ZERO


def test_nonzero_check():
    assert is_nonzero(gen(a1, a2) * gen(a3, a4), CTX2)
    assert not is_nonzero(minor_generators(CTX2)[0], CTX2)


def test_context_validation():
    with pytest.raises(InvalidInput):
        RankContext.standard(1, 4)
    with pytest.raises(InvalidInput):
        RankContext.standard(2, 4, prime=(1 << 61) - 3)  # composite
    with pytest.raises(InvalidInput):
        RankContext.standard(2, 4, prime=101)
    with pytest.raises(InvalidInput):
        RankContext.standard(2, 4, trials=0)


def test_certificate_serialization():
    d = is_zero_rank_n(gen(a1, a2), CTX2).to_dict()
    assert d["verdict"] == "NonZero" and "witness" in d and d["method"] == "oracle"
