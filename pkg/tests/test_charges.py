import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chargedpoly import charges


def test_binary_is_reproducible_and_pm1():
    a = charges.make_binary(500, 3)
    b = charges.make_binary(500, 3)
    assert np.array_equal(a.values, b.values)
    assert set(np.unique(a.values)) <= {-1, 1}
    assert not np.array_equal(a.values, charges.make_binary(500, 4).values)


def test_prefix_sums():
    w = charges.make_gaussian(40, 1)
    assert w.prefix[0] == 0
    assert np.allclose(w.prefix[1:], np.cumsum(w.values))
    assert np.allclose(w.sq_prefix[1:], np.cumsum(w.values ** 2))


def test_values_are_read_only():
    w = charges.make_binary(5, 0)
    with pytest.raises(ValueError):
        w.values[0] = 3


def test_diblock_is_neutral():
    w = charges.make_diblock(7)
    assert w.n == 14
    assert w.prefix[-1] == 0
    assert list(w.values[:7]) == [1] * 7 and list(w.values[7:]) == [-1] * 7


def test_make_charges_dispatch():
    assert charges.make_charges("binary", 6, 1).dist_tag == "binary"
    assert charges.make_charges("gaussian", 6, 1).dist_tag == "gaussian"
    assert charges.make_charges("diblock", 6, 1).n == 6
    with pytest.raises(ValueError):
        charges.make_charges("diblock", 7, 1)
    with pytest.raises(ValueError):
        charges.make_charges("poisson", 7, 1)


def test_tilted_mean():
    w = charges.make_tilted(20000, 0.5, 9, "binary")
    assert abs(np.mean(w.values) - np.tanh(0.5)) < 0.02
    g = charges.make_tilted(20000, 1.5, 9, "gaussian")
    assert abs(np.mean(g.values) - 1.5) < 0.03


def test_interval_charge_bounds():
    w = charges.ChargeSequence(np.array([1, 1, -1, 1]), "binary")
    assert charges.interval_charge(w, 0, 4) == 2
    assert charges.interval_charge(w, 1, 3) == 0
    assert charges.interval_charge(w, 2, 2) == 0
    with pytest.raises(IndexError):
        charges.interval_charge(w, 3, 5)


def test_shift_and_head():
    w = charges.make_binary(10, 2)
    assert np.array_equal(w.shift(4).values, w.values[4:])
    assert np.array_equal(w.head(4).values, w.values[:4])


@pytest.mark.parametrize("dist", ["binary", "gaussian", "diblock"])
def test_dump_roundtrip(tmp_path, dist):
    w = charges.make_charges(dist, 12, 5)
    p = tmp_path / "w.txt"
    charges.write_charges(w, p)
    r = charges.read_charges(p)
    assert r.dist_tag == w.dist_tag and r.n == w.n
    assert np.array_equal(r.values, w.values)


def test_derive_seed_streams_differ():
    seeds = {charges.derive_seed(42, j) for j in range(100)}
    assert len(seeds) == 100
    assert charges.derive_seed(42, 3) == charges.derive_seed(42, 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=40),
       st.integers(0, 40), st.integers(0, 40))
def test_interval_charge_matches_slice(vals, a, b):
    w = charges.ChargeSequence(np.array(vals), "binary")
    a, b = sorted((min(a, w.n), min(b, w.n)))
    assert charges.interval_charge(w, a, b) == sum(vals[a:b])
