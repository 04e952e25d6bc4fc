import numpy as np
import pytest

from latmult.lattice import box, centered_window, delta, sequence, translate
from latmult.norms import lp_norm
from latmult.torus import (
    TorusGrid,
    TorusSamples,
    dft,
    inverse_dft,
    load_csv,
    lq_torus_norm,
    sample_function,
    save_csv,
)


def random_seq(rng, span=6, count=5):
    pts = rng.choice(np.arange(-span, span + 1), size=count, replace=False)
    vals = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    return sequence(1, {(int(p),): complex(v) for p, v in zip(pts, vals)})


def test_dft_of_delta_is_constant_one():
    F = dft(delta(0), TorusGrid(1, 8))
    assert np.allclose(F.values, 1.0, atol=0)


def test_dft_of_shifted_delta_is_phase():
    grid = TorusGrid(1, 8)
    F = dft(delta(1), grid)
    xi = grid.nodes()[:, 0]
    assert np.max(np.abs(F.values - np.exp(-2j * np.pi * xi))) < 1e-15


def test_dft_matches_direct_summation_oracle():
    rng = np.random.default_rng(21)
    grid = TorusGrid(1, 16)
    f = random_seq(rng, count=5)
    F = dft(f, grid)
    for node, value in zip(grid.nodes(), F.values):
        acc = sum(
            v * np.exp(-2j * np.pi * idx[0] * node[0]) for idx, v in f.items()
        )
        assert abs(value - acc) <= 1e-13 * max(abs(acc), 1.0)


def test_dft_dim2():
    grid = TorusGrid(2, 4)
    f = delta((1, -1))
    F = dft(f, grid)
    for node, value in zip(grid.nodes(), F.values):
        expect = np.exp(-2j * np.pi * (node[0] - node[1]))
        assert abs(value - expect) < 1e-14


def test_inverse_dft_recovers_delta():
    grid = TorusGrid(1, 8)
    out = inverse_dft(dft(delta(0), grid), centered_window(3))
    assert abs(out[(0,)] - 1.0) < 1e-14
    assert all(abs(out[(n,)]) < 1e-13 for n in range(-3, 4) if n != 0)


def test_inverse_dft_round_trip():
    rng = np.random.default_rng(22)
    grid = TorusGrid(1, 16)
    f = random_seq(rng, span=3, count=5)
    g = inverse_dft(dft(f, grid), box((-8,), (7,)))
    for n in range(-8, 8):
        assert abs(g[(n,)] - f[(n,)]) < 1e-12


def test_inverse_dft_aliasing_contract():
    # a delta at M e_1 folds onto the origin: e^{-2 pi i M xi} = 1 at all nodes
    M = 16
    grid = TorusGrid(1, M)
    out = inverse_dft(dft(delta(M), grid), centered_window(2))
    assert abs(out[(0,)] - 1.0) < 1e-13


def test_lq_norm_constant_and_unimodular():
    grid = TorusGrid(1, 32)
    c = TorusSamples(grid, np.full(32, 3.0 - 4.0j))
    for q in (1.0, 2.0, 4.0):
        assert lq_torus_norm(c, q) == pytest.approx(5.0, rel=1e-14)
    wave = sample_function(grid, lambda x: np.exp(2j * np.pi * x[0]))
    assert lq_torus_norm(wave, 4.0) == pytest.approx(1.0, rel=1e-14)


def test_lq_norm_parseval_two_deltas():
    for M in (2, 5, 16):
        grid = TorusGrid(1, M)
        F = dft(sequence(1, {(0,): 1.0, (1,): 1.0}), grid)
        assert lq_torus_norm(F, 2.0) == pytest.approx(np.sqrt(2), rel=1e-13)


def test_lq_norm_rejects_small_q():
    grid = TorusGrid(1, 4)
    with pytest.raises(ValueError):
        lq_torus_norm(TorusSamples(grid, np.ones(4)), 0.5)


def test_parseval_random():
    rng = np.random.default_rng(23)
    grid = TorusGrid(1, 16)
    for _ in range(50):
        f = random_seq(rng)
        assert lq_torus_norm(dft(f, grid), 2.0) == pytest.approx(
            lp_norm(f, 2.0), rel=1e-12
        )


def test_modulation_law():
    rng = np.random.default_rng(24)
    grid = TorusGrid(1, 16)
    xi = grid.nodes()[:, 0]
    for shift in (-3, 1, 5):
        f = random_seq(rng)
        lhs = dft(translate(f, shift), grid).values
        rhs = np.exp(-2j * np.pi * shift * xi) * dft(f, grid).values
        assert np.max(np.abs(lhs - rhs)) < 1e-13 * max(np.max(np.abs(rhs)), 1.0)


def test_node_cap_enforced():
    with pytest.raises(ValueError):
        TorusGrid(2, 3000)


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(25)
    grid = TorusGrid(1, 8)
    F = TorusSamples(
        grid, rng.standard_normal(8) + 1j * rng.standard_normal(8)
    )
    path = tmp_path / "samples.csv"
    save_csv(F, path)
    G = load_csv(path)
    assert G == F


def test_csv_round_trip_dim2(tmp_path):
    rng = np.random.default_rng(26)
    grid = TorusGrid(2, 3)
    F = TorusSamples(
        grid, rng.standard_normal(9) + 1j * rng.standard_normal(9)
    )
    path = tmp_path / "samples2.csv"
    save_csv(F, path)
    assert load_csv(path) == F
