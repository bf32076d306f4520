"""Lattice layer: ordering laws, join against a chord oracle, combiners."""

from __future__ import annotations

import numpy as np
import pytest

from cmur import (
    COMBINERS,
    DomainError,
    LorenzCurve,
    UncertaintyVec,
    aggregate,
    combine,
    lattice_join,
    least_concave_majorant,
    lorenz_samples,
    majorizes,
)

from oracles import lcm_chords
from properties import (
    check_combiner_monotonicity,
    check_join_lub,
    check_matrix_oracles,
    check_partial_order_laws,
)


def test_vec_canonicalizes_descending():
    v = UncertaintyVec((0.1, 0.6, 0.3))
    assert np.allclose(v.components, [0.6, 0.3, 0.1])
    assert abs(v.weight - 1.0) < 1e-15
    assert len(v) == 3


def test_vec_clips_roundoff_but_rejects_real_negatives():
    v = UncertaintyVec((0.5, 0.5, -1e-13))
    assert v.components.min() == 0.0
    with pytest.raises(DomainError):
        UncertaintyVec((0.8, 0.3, -0.1))
    with pytest.raises(DomainError):
        UncertaintyVec(())
    assert np.allclose(UncertaintyVec.of([0.2, 0.8]).components, [0.8, 0.2])


def test_vec_padding_and_prefix_sums():
    v = UncertaintyVec((0.6, 0.4))
    assert np.allclose(v.padded(4), [0.6, 0.4, 0.0, 0.0])
    assert np.allclose(v.prefix_sums(4), [0.0, 0.6, 1.0, 1.0, 1.0])
    with pytest.raises(DomainError):
        v.padded(1)


def test_majorizes_basic_cases():
    point = UncertaintyVec((1.0, 0.0))
    uniform = UncertaintyVec((0.5, 0.5))
    assert majorizes(uniform, point)
    assert not majorizes(point, uniform)
    # Different lengths compare after zero padding.
    assert majorizes(UncertaintyVec((0.25, 0.25, 0.25, 0.25)), UncertaintyVec((1.0,)))
    # Incomparable pair.
    a = UncertaintyVec((0.6, 0.2, 0.2))
    b = UncertaintyVec((0.5, 0.4, 0.1))
    assert not majorizes(a, b) and not majorizes(b, a)


def test_majorizes_weight_modes():
    short = UncertaintyVec((0.4, 0.3))
    full = UncertaintyVec((0.5, 0.5))
    assert not majorizes(short, full)  # strict mode requires equal weights
    assert majorizes(short, full, mode="weak")
    assert not majorizes(full, short, mode="weak")
    with pytest.raises(DomainError):
        majorizes(short, full, mode="nope")


def test_combine_direct_sum_example():
    out = combine(UncertaintyVec((1.0, 0.0)), UncertaintyVec((1.0, 0.0)), "direct_sum")
    assert np.allclose(out.components, [1.0, 1.0, 0.0, 0.0])
    assert abs(out.weight - 2.0) < 1e-12


def test_combine_direct_product_example():
    v = UncertaintyVec((0.85355, 0.14645))
    out = combine(v, v, "direct_product")
    want = np.sort(np.outer(v.components, v.components).ravel())[::-1]
    assert np.allclose(out.components, want, atol=1e-15)
    assert abs(out.weight - 1.0) < 1e-9


def test_combine_vector_sum_and_hadamard():
    a = UncertaintyVec((0.6, 0.4))
    b = UncertaintyVec((0.7, 0.2, 0.1))
    vs = combine(a, b, "vector_sum")
    assert np.allclose(vs.components, [1.3, 0.6, 0.1])
    hd = combine(a, b, "hadamard")
    assert np.allclose(hd.components, [0.42, 0.08, 0.0])
    with pytest.raises(DomainError):
        combine(a, b, "tensor")


def test_combine_vector_sum_copies():
    # M repeats of any unit-weight vec stay below the one-hot vec of weight M.
    v = UncertaintyVec((0.5, 0.3, 0.2))
    acc = v
    for _ in range(4):
        acc = combine(acc, v, "vector_sum")
    assert abs(acc.weight - 5.0) < 1e-12
    assert majorizes(acc, UncertaintyVec((5.0, 0.0, 0.0)))


def test_combiners_tuple_is_complete():
    assert set(COMBINERS) == {"direct_sum", "direct_product", "vector_sum", "hadamard"}


def test_lcm_matches_chord_oracle():
    rng = np.random.default_rng(99)
    for trial in range(300):
        n = int(rng.integers(2, 9))
        prefix = np.concatenate([[0.0], np.sort(rng.random(n))])
        got = least_concave_majorant(prefix)
        want = lcm_chords(prefix)
        assert np.allclose(got, want, atol=1e-12), f"trial {trial}"
        # Concave and never below the input.
        assert np.all(np.diff(got, 2) < 1e-10)
        assert np.all(got >= prefix - 1e-12)


def test_lattice_join_three_member_example():
    a = UncertaintyVec((0.6, 0.2, 0.2))
    b = UncertaintyVec((0.5, 0.4, 0.1))
    join = lattice_join([a, b])
    assert np.allclose(join.components, [0.6, 0.3, 0.1], atol=1e-12)
    assert majorizes(a, join) and majorizes(b, join)


def test_lattice_join_single_and_errors():
    v = UncertaintyVec((0.9, 0.1))
    assert np.allclose(lattice_join([v]).components, v.components)
    with pytest.raises(DomainError):
        lattice_join([])
    with pytest.raises(DomainError):
        lattice_join([v, UncertaintyVec((0.9, 0.3))])


def test_lattice_join_is_least_upper_bound():
    ok, detail = check_join_lub(seed=2024, n_cases=40)
    assert ok, detail


def test_partial_order_laws():
    ok, detail = check_partial_order_laws(seed=77, n_cases=120)
    assert ok, detail


def test_combiner_monotonicity():
    ok, detail = check_combiner_monotonicity(seed=55, n_cases=120)
    assert ok, detail


def test_matrix_spectral_oracles():
    ok, detail = check_matrix_oracles(seed=303, n_pairs=120)
    assert ok, detail


def test_aggregate_block_sums():
    s = UncertaintyVec((0.4, 0.3, 0.15, 0.1, 0.03, 0.02))
    out = aggregate(s, 3, 2)
    assert np.allclose(out.components, [0.7, 0.25, 0.05])
    with pytest.raises(DomainError):
        aggregate(s, 4, 2)
    with pytest.raises(DomainError):
        aggregate(s, 0, 2)


def test_lorenz_curve_validation_and_csv():
    curve = LorenzCurve(((0, 0.0), (1, 0.6), (2, 0.9), (3, 1.0)))
    lines = curve.to_csv().strip().split("\n")
    assert lines[0] == "k,cumulative"
    assert lines[1] == "0,0"
    assert lines[-1] == "3,1"
    assert np.allclose(curve.cumulative(), [0.0, 0.6, 0.9, 1.0])
    with pytest.raises(DomainError):
        LorenzCurve(((0, 0.0), (1, 0.5), (2, 0.4)))
    with pytest.raises(DomainError):
        LorenzCurve(((0, 0.0), (1, 0.2), (2, 0.9), (3, 1.0)))


def test_lorenz_samples_prefix_points():
    curve = lorenz_samples(UncertaintyVec((0.3, 0.7)))
    ks = [k for k, _ in curve.points]
    assert ks == [0, 1, 2]
    assert np.allclose(curve.cumulative(), [0.0, 0.7, 1.0], atol=1e-12)


def test_join_dominates_every_member_random():
    rng = np.random.default_rng(4242)
    for _ in range(60):
        members = [
            UncertaintyVec(rng.dirichlet(np.full(int(rng.integers(2, 6)), 0.7)))
            for _ in range(int(rng.integers(2, 6)))
        ]
        join = lattice_join(members)
        for m in members:
            assert majorizes(m, join)
