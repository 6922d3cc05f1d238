import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadamard_rw.engine import (
    CapacityError,
    ConfigurationError,
    LatticeConfig,
    MAX_DENSE_SITES,
    QuantumState,
    RwState,
    build_dense,
    devectorize,
    evolve,
    evolve_dense,
    init_quantum,
    init_rw,
    shift_matrices,
    step_quantum,
    step_rw,
    step_rw_scaled,
    trajectory,
    vectorize,
)

from oracles import brute_evolve_chain, brute_evolve_quantum

R = 1 / np.sqrt(2)


def random_quantum(rng, d):
    return QuantumState(rng.standard_normal(2 * d) + 1j * rng.standard_normal(2 * d))


def random_rw(rng, d):
    return RwState(rng.standard_normal(4 * d) + 1j * rng.standard_normal(4 * d))


class TestLatticeConfig:
    def test_valid(self):
        cfg = LatticeConfig(80, 40, 20)
        assert cfg.interior_safe

    @pytest.mark.parametrize("d,start,n", [(3, 2, 0), (10, 0, 1), (10, 11, 1), (10, 5, -1)])
    def test_invalid(self, d, start, n):
        with pytest.raises(ConfigurationError):
            LatticeConfig(d, start, n)

    def test_non_integer_rejected(self):
        with pytest.raises(ConfigurationError):
            LatticeConfig(10.0, 5, 1)

    def test_interior_safe_boundary(self):
        # support after n steps spans [start-n, start+n]
        assert LatticeConfig(10, 5, 3).interior_safe
        assert not LatticeConfig(10, 5, 4).interior_safe
        assert not LatticeConfig(10, 1, 0).interior_safe

    def test_centered(self):
        assert LatticeConfig.centered(80, 20).start == 40


class TestInit:
    def test_quantum_point(self):
        s = QuantumState.point(3, 2, (1, 0))
        assert np.flatnonzero(s.amp).tolist() == [2]  # 1-based index 3
        assert s.amp[2] == 1

    def test_quantum_default(self):
        s = init_quantum(LatticeConfig(80, 40, 20), (1j, 0))
        assert s.amp[2 * 39] == 1j
        assert np.count_nonzero(s.amp) == 1

    def test_quantum_zero(self):
        s = init_quantum(LatticeConfig(4, 1), (0, 0))
        assert s.norm2() == 0.0

    def test_rw_default_layout(self):
        s = init_rw(LatticeConfig(80, 40, 20), (1 + 0.5j, 0, 0, 1 - 0.5j))
        assert s.scale_exp == 0
        assert s.pop[4 * 39] == 1 + 0.5j
        assert s.pop[4 * 39 + 3] == 1 - 0.5j
        assert s.total() == 2

    def test_rw_point(self):
        s = init_rw(LatticeConfig(5, 3), (1, 0, 0, 0))
        assert np.flatnonzero(s.pop).tolist() == [8]

    def test_rejects_bad_config(self):
        with pytest.raises(ConfigurationError):
            init_quantum((10, 5), (1, 0))
        with pytest.raises(ConfigurationError):
            QuantumState.point(5, 6, (1, 0))

    def test_states_are_immutable(self):
        s = QuantumState.point(4, 2, (1, 0))
        with pytest.raises(ValueError):
            s.amp[0] = 1
        arr = np.zeros(8, dtype=complex)
        s2 = RwState(arr)
        arr[0] = 5
        assert s2.pop[0] == 0


class TestStepQuantum:
    def test_coin_zero_hand(self):
        out = step_quantum(QuantumState.point(3, 2, (1, 0)))
        expected = np.zeros(6, dtype=complex)
        expected[0] = R   # site 1, coin |0>
        expected[5] = R   # site 3, coin |1>
        np.testing.assert_allclose(out.amp, expected, atol=0)

    def test_coin_one_hand(self):
        out = step_quantum(QuantumState.point(3, 2, (0, 1)))
        expected = np.zeros(6, dtype=complex)
        expected[0] = R
        expected[5] = -R
        np.testing.assert_allclose(out.amp, expected, atol=0)

    def test_norm_conserved_interior(self, rng):
        d = 20
        amp = np.zeros(2 * d, dtype=complex)
        amp[10:30] = rng.standard_normal(20) + 1j * rng.standard_normal(20)
        s = QuantumState(amp)
        assert abs(step_quantum(s).norm2() - s.norm2()) <= 1e-14 * max(1.0, s.norm2())

    def test_matches_dense(self, rng):
        s = random_quantum(rng, 9)
        u = build_dense(9, "u")
        np.testing.assert_allclose(step_quantum(s).amp, u @ s.amp, rtol=0, atol=1e-15)


class TestStepRw:
    def test_hand_example(self):
        out = step_rw(RwState.point(5, 3, (1, 0, 0, 0)))
        rows = devectorize(out)
        expected = np.zeros((4, 5))
        expected[0, 1] = 0.5   # row |0>, site 2
        expected[1, 3] = 0.5   # row |1>, site 4
        np.testing.assert_array_equal(rows, expected)
        np.testing.assert_array_equal(
            out.pop, build_dense(5, "U") @ RwState.point(5, 3, (1, 0, 0, 0)).pop)

    def test_population_conserved_interior(self, rng):
        d = 12
        pop = np.zeros(4 * d, dtype=complex)
        pop[8:40] = rng.random(32)
        s = RwState(pop)
        assert abs(step_rw(s).total() - s.total()) <= 1e-15 * 32

    def test_scaled_zero_state(self):
        s = RwState(np.zeros(16))
        out = step_rw(s, scaled=True)
        assert out.scale_exp == 1
        assert not np.any(out.pop)
        assert step_rw_scaled(out).scale_exp == 2
        assert step_rw(out).scale_exp == 1

    def test_matches_dense(self, rng):
        s = random_rw(rng, 7)
        np.testing.assert_allclose(step_rw(s).pop, build_dense(7, "U") @ s.pop, rtol=0, atol=1e-15)


class TestEvolve:
    def test_zero_steps_identity(self, rng):
        s = random_quantum(rng, 5)
        assert evolve(s, 0, step_quantum) is s

    def test_negative_steps(self, rng):
        with pytest.raises(ValueError):
            evolve(random_quantum(rng, 5), -1, step_quantum)
        with pytest.raises(ValueError):
            list(trajectory(random_quantum(rng, 5), -1, step_quantum))

    def test_trajectory_length(self, rng):
        hist = list(trajectory(random_rw(rng, 5), 4, step_rw))
        assert len(hist) == 5

    def test_default_quantum_matches_brute_force(self):
        s = init_quantum(LatticeConfig(80, 40, 20), (1j, 0))
        out = evolve(s, 20, step_quantum)
        ref = brute_evolve_quantum(s.amp, 20)
        np.testing.assert_allclose(out.amp, ref, rtol=0, atol=1e-14)
        assert abs(out.norm2() - 1) <= 1e-12

    def test_matrix_free_vs_dense_power(self, rng):
        q = random_quantum(rng, 16)
        r = random_rw(rng, 16)
        np.testing.assert_allclose(evolve(q, 10, step_quantum).amp, evolve_dense(q, 10).amp,
                                   rtol=0, atol=1e-12)
        np.testing.assert_allclose(evolve(r, 10, step_rw).pop, evolve_dense(r, 10).pop,
                                   rtol=0, atol=1e-12)

    def test_brute_force_chain(self, rng):
        r = random_rw(rng, 6)
        np.testing.assert_allclose(evolve(r, 5, step_rw).pop, brute_evolve_chain(r.pop, 5),
                                   rtol=0, atol=1e-14)

    def test_dense_scaled_tracks_exponent(self, rng):
        r = random_rw(rng, 6)
        assert evolve_dense(r, 3, scaled=True).scale_exp == 3
        assert evolve(r, 3, step_rw_scaled).scale_exp == 3


class TestDense:
    def test_x_nonzeros(self):
        x = build_dense(3, "x").matrix
        nz = x[x != 0]
        assert nz.size == 4
        assert np.all(nz == 1)

    def test_big_y_block_diagonal(self):
        y = build_dense(3, "Y").matrix
        for i in range(3):
            for j in range(3):
                block = y[4 * i:4 * i + 4, 4 * j:4 * j + 4]
                np.testing.assert_array_equal(block, np.array(
                    [[0.5, 0.5, 0, 0], [0.5, 0, 0.5, 0], [0, 0.5, 0, 0.5], [0, 0, 0.5, 0.5]])
                    if i == j else np.zeros((4, 4)))

    @pytest.mark.parametrize("d", [3, 8, 17])
    def test_products(self, d):
        u = build_dense(d, "u")
        assert np.max(np.abs(u.matrix - build_dense(d, "x") @ build_dense(d, "y"))) <= 1e-15
        big_u = build_dense(d, "U")
        assert np.max(np.abs(big_u.matrix - build_dense(d, "X") @ build_dense(d, "Y"))) <= 1e-15

    def test_shift_matrices_by_definition(self):
        right, left = shift_matrices(5)
        for j in range(4):
            assert right[j, j + 1] == 1 and left[j + 1, j] == 1
        assert right.sum() == 4 and left.sum() == 4

    def test_interior_columns_of_big_u_sum_to_one(self):
        big_u = build_dense(8, "U").matrix
        col_sums = big_u.sum(axis=0)
        np.testing.assert_array_equal(col_sums[8:-8], 1)

    def test_capacity_guard(self):
        build_dense(16, "u")
        with pytest.raises(CapacityError):
            build_dense(MAX_DENSE_SITES + 1, "U")
        with pytest.raises(CapacityError):
            build_dense(10**5, "U")

    def test_bad_role(self):
        with pytest.raises(ValueError):
            build_dense(4, "z")

    def test_right_shift_drops_edge(self):
        # coin |0> on site 1 leaves the lattice under x
        s = QuantumState.point(4, 1, (1, 0))
        assert not np.any(build_dense(4, "x") @ s.amp)


class TestLayout:
    def test_devectorize_default(self):
        rows = devectorize(init_rw(LatticeConfig(80, 40), (1 + 0.5j, 0, 0, 1 - 0.5j)))
        assert rows.shape == (4, 80)
        assert set(np.flatnonzero(rows.any(axis=0))) == {39}
        assert rows[0, 39] == 1 + 0.5j and rows[3, 39] == 1 - 0.5j

    def test_round_trip(self, rng):
        arr = rng.standard_normal((4, 9)) + 1j * rng.standard_normal((4, 9))
        np.testing.assert_array_equal(devectorize(vectorize(arr)), arr)

    def test_strides(self, rng):
        s = random_rw(rng, 6)
        rows = devectorize(s)
        for r in range(4):
            np.testing.assert_array_equal(rows[r], s.pop[r::4])

    def test_vectorize_shape_check(self):
        with pytest.raises(ValueError):
            vectorize(np.zeros((3, 5)))


# -- properties ---------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(d=st.integers(4, 40), n=st.integers(0, 30), seed=st.integers(0, 2**32 - 1))
def test_nonnegative_stays_nonnegative(d, n, seed):
    rng = np.random.default_rng(seed)
    s = RwState(rng.random(4 * d))
    out = evolve(s, n, step_rw)
    assert np.all(out.pop.imag == 0)
    assert np.all(out.pop.real >= 0)


@settings(max_examples=60, deadline=None)
@given(d=st.integers(6, 60), data=st.data())
def test_interior_conservation(d, data):
    start = data.draw(st.integers(2, d - 1))
    limit = min(start - 1, d - start)
    if limit < 1:
        return
    n = data.draw(st.integers(0, limit - 1))
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    cfg = LatticeConfig(d, start, n)
    assert cfg.interior_safe
    q0 = init_quantum(cfg, rng.standard_normal(2) + 1j * rng.standard_normal(2))
    r0 = init_rw(cfg, rng.standard_normal(4) + 1j * rng.standard_normal(4))
    assert abs(evolve(q0, n, step_quantum).norm2() - q0.norm2()) <= 1e-12
    assert abs(evolve(r0, n, step_rw).total() - r0.total()) <= 1e-12
