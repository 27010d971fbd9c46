"""Unit tests for the potential/configuration data model and exact evaluation."""

import math

import numpy as np
import pytest

from powermin import (
    CoincidentPointsError,
    Configuration,
    Potential,
    PotentialClass,
    canonicalize,
    classify_potential,
    diameter,
    eval_energy,
    eval_energy_continuum,
    eval_gradient,
    eval_w,
    eval_w_prime,
    min_gap,
    sorted_distances,
)


def brute_force_energy(gamma, alpha, coords):
    """Independent oracle: double loop over ordered pairs, scalar math."""
    coords = np.asarray(coords, dtype=float)
    total = 0.0
    n = coords.shape[0]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r = math.dist(coords[i], coords[j])
            term_g = math.log(r) if gamma == 0 else r**gamma / gamma
            term_a = math.log(r) if alpha == 0 else r**alpha / alpha
            total += term_g - term_a
    return total


def fd_gradient(p, coords, h_scale=1e-6):
    """Independent oracle: central differences of eval_energy."""
    coords = np.asarray(coords, dtype=float)
    grad = np.zeros_like(coords)
    for k in range(coords.shape[0]):
        for a in range(coords.shape[1]):
            h = h_scale * max(1.0, abs(coords[k, a]))
            up = coords.copy()
            up[k, a] += h
            down = coords.copy()
            down[k, a] -= h
            grad[k, a] = (
                eval_energy(p, Configuration(up)).total
                - eval_energy(p, Configuration(down)).total
            ) / (2 * h)
    return grad


def random_potential(rng, singular=None):
    while True:
        gamma = rng.uniform(-4.0, 4.0)
        alpha = rng.uniform(-4.0, 4.0)
        if gamma - alpha < 0.1:
            continue
        p = Potential(gamma=gamma, alpha=alpha)
        if singular is None or p.singular == singular:
            return p


def separated_config(rng, n, dim, gap=0.2, box=3.0):
    while True:
        coords = rng.uniform(-box, box, size=(n, dim))
        c = Configuration(coords)
        if n < 2 or min_gap(c) > gap:
            return c


class TestPotential:
    def test_classification_examples(self):
        assert classify_potential(Potential(2, 1)) is PotentialClass.BOTH_POSITIVE
        assert classify_potential(Potential(1, 0)) is PotentialClass.MIXED
        assert classify_potential(Potential(-0.5, -2.5)) is PotentialClass.BOTH_NEGATIVE

    def test_classification_boundaries(self):
        assert classify_potential(Potential(0, -1)) is PotentialClass.MIXED
        assert classify_potential(Potential(2, 0)) is PotentialClass.MIXED
        assert classify_potential(Potential(2, -1)) is PotentialClass.MIXED

    def test_gamma_must_exceed_alpha(self):
        with pytest.raises(ValueError):
            Potential(1, 1)
        with pytest.raises(ValueError):
            Potential(0.5, 2)
        with pytest.raises(ValueError):
            Potential(math.nan, 0)

    def test_singular_flag(self):
        assert Potential(1, 0).singular
        assert Potential(-0.5, -2.5).singular
        assert not Potential(2, 1).singular


class TestKernel:
    def test_w_values(self):
        assert eval_w(Potential(2, 1), 1.0) == -0.5
        assert eval_w(Potential(1, 0), 1.0) == 1.0  # log 1 = 0
        assert eval_w(Potential(2, 1), 2.0) == 0.0  # 4/2 - 2

    def test_w_at_zero(self):
        assert eval_w(Potential(1, 0), 0.0) == math.inf
        assert eval_w(Potential(2, 1), 0.0) == 0.0
        with pytest.raises(ValueError):
            eval_w(Potential(2, 1), -1.0)

    def test_w_prime_values(self):
        for p in (Potential(2, 1), Potential(1, 0), Potential(-0.5, -2.5)):
            assert eval_w_prime(p, 1.0) == 0.0
        assert eval_w_prime(Potential(2, 1), 2.0) == 1.0
        assert eval_w_prime(Potential(0, -1), 2.0) == 0.25  # 1/2 - 1/4
        with pytest.raises(ValueError):
            eval_w_prime(Potential(2, 1), 0.0)

    def test_w_prime_matches_difference_quotient(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            p = random_potential(rng)
            r = rng.uniform(0.3, 3.0)
            h = 1e-7 * r
            numeric = (eval_w(p, r + h) - eval_w(p, r - h)) / (2 * h)
            assert eval_w_prime(p, r) == pytest.approx(numeric, rel=1e-5, abs=1e-7)

    def test_w_minimum_at_one(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            p = random_potential(rng)
            floor = eval_w(p, 1.0)
            for r in (0.5, 0.9, 1.1, 2.0):
                assert eval_w(p, r) >= floor - 1e-12 * max(1.0, abs(floor))


class TestConfiguration:
    def test_validation(self):
        with pytest.raises(ValueError):
            Configuration(np.array([[math.inf]]))
        with pytest.raises(ValueError):
            Configuration(np.empty((0, 1)))

    def test_coords_read_only(self):
        c = Configuration([[0.0], [1.0]])
        with pytest.raises(ValueError):
            c.coords[0, 0] = 5.0

    def test_json_round_trip(self):
        c = Configuration([[0.25, -1.5], [3.0, 4.0]])
        again = Configuration.from_dict(c.to_dict())
        assert np.array_equal(again.coords, c.coords)
        assert again.dim == 2 and again.n == 2

    def test_dict_shape_mismatch(self):
        with pytest.raises(ValueError):
            Configuration.from_dict({"dim": 2, "points": [[1.0], [2.0]]})


class TestEnergy:
    def test_two_points(self):
        out = eval_energy(Potential(2, 1), Configuration([[0.0], [1.0]]))
        assert out.total == pytest.approx(-1.0, abs=1e-15)

    def test_three_point_hand_sum(self):
        # Unordered distances 2/3, 2/3, 4/3; w = -4/9 each; doubled: -8/3.
        c = Configuration([[-2 / 3], [0.0], [2 / 3]])
        out = eval_energy(Potential(2, 1), c)
        assert out.total == pytest.approx(-8 / 3, rel=1e-14)

    def test_breakdown_sums_to_total(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            p = random_potential(rng)
            c = separated_config(rng, rng.integers(2, 9), rng.integers(1, 4))
            out = eval_energy(p, c)
            assert out.total == out.attractive_part + out.repulsive_part

    def test_matches_brute_force(self):
        rng = np.random.default_rng(22)
        for _ in range(40):
            p = random_potential(rng)
            c = separated_config(rng, rng.integers(2, 8), rng.integers(1, 4))
            expected = brute_force_energy(p.gamma, p.alpha, c.coords)
            assert eval_energy(p, c).total == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_coincident_points_singular(self):
        c = Configuration([[0.0], [0.0]])
        with pytest.raises(CoincidentPointsError):
            eval_energy(Potential(1, -1), c)
        with pytest.raises(CoincidentPointsError):
            eval_gradient(Potential(1, -1), c)

    def test_coincident_points_nonsingular_fine(self):
        c = Configuration([[0.0], [0.0], [1.0]])
        out = eval_energy(Potential(3, 2), c)
        assert math.isfinite(out.total)

    def test_continuum_scaling(self):
        p = Potential(2, 1)
        assert eval_energy_continuum(p, Configuration([[0.0], [1.0]])) == -1 / 8
        c3 = Configuration([[-2 / 3], [0.0], [2 / 3]])
        assert eval_energy_continuum(p, c3) == pytest.approx(-4 / 27, rel=1e-14)
        assert eval_energy_continuum(p, c3) == eval_energy(p, c3).total / 18.0

    def test_single_point_zero(self):
        assert eval_energy(Potential(2, 1), Configuration([[5.0]])).total == 0.0
        assert eval_energy_continuum(Potential(2, 1), Configuration([[5.0]])) == 0.0

    def test_lower_bound_non_mixed(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            while True:
                p = random_potential(rng)
                if classify_potential(p) is not PotentialClass.MIXED:
                    break
            n = int(rng.integers(2, 9))
            c = separated_config(rng, n, rng.integers(1, 3))
            bound = n * n * (1.0 / p.gamma - 1.0 / p.alpha)
            assert eval_energy(p, c).total >= bound

    def test_mixed_energy_positive(self):
        # For alpha <= 0 <= gamma, w > 0 everywhere, so E_n > 0.
        rng = np.random.default_rng(24)
        for _ in range(50):
            while True:
                p = random_potential(rng)
                if classify_potential(p) is PotentialClass.MIXED:
                    break
            c = separated_config(rng, rng.integers(2, 8), 1)
            assert eval_energy(p, c).total > 0.0


class TestInvariances:
    def test_permutation(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            p = random_potential(rng)
            c = separated_config(rng, 12, rng.integers(1, 4))
            perm = rng.permutation(12)
            base = eval_energy(p, c).total
            permuted = eval_energy(p, Configuration(c.coords[perm])).total
            assert permuted == pytest.approx(base, rel=1e-12)

    def test_translation(self):
        rng = np.random.default_rng(32)
        for _ in range(30):
            p = random_potential(rng)
            d = int(rng.integers(1, 4))
            c = separated_config(rng, 10, d)
            shift = rng.uniform(-5, 5, size=d)
            base = eval_energy(p, c).total
            moved = eval_energy(p, Configuration(c.coords + shift)).total
            assert moved == pytest.approx(base, rel=1e-10)

    def test_rotation(self):
        rng = np.random.default_rng(33)
        for _ in range(30):
            p = random_potential(rng)
            d = int(rng.integers(2, 4))
            c = separated_config(rng, 10, d)
            q, _ = np.linalg.qr(rng.normal(size=(d, d)))
            base = eval_energy(p, c).total
            rotated = eval_energy(p, Configuration(c.coords @ q.T)).total
            assert rotated == pytest.approx(base, rel=1e-10)
            assert np.allclose(
                sorted_distances(c), sorted_distances(Configuration(c.coords @ q.T)),
                rtol=1e-10,
            )


class TestGradient:
    def test_stationary_examples(self):
        p = Potential(2, 1)
        g = eval_gradient(p, Configuration([[-2 / 3], [0.0], [2 / 3]]))
        assert np.abs(g).max() < 1e-12
        g = eval_gradient(p, Configuration([[0.0], [1.0]]))
        assert np.abs(g).max() == 0.0

    def test_two_points_hand_value(self):
        p = Potential(2, 1)
        c = Configuration([[0.0], [2.0]])
        g = eval_gradient(p, c)
        # 2 (r^0 - r^-1) (x_1 - x_2) = 2 (1 - 1/2)(-2) = -2 on the first point
        assert g[:, 0] == pytest.approx([-2.0, 2.0], abs=1e-12)
        assert g == pytest.approx(fd_gradient(p, c.coords), rel=1e-7)

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(41)
        potentials = [Potential(2, 1), Potential(3, 1.5), Potential(1, 0), Potential(-0.5, -2.5)]
        for p in potentials:
            for d in (1, 2, 3):
                c = separated_config(rng, 7, d, gap=0.3)
                grad = eval_gradient(p, c)
                approx = fd_gradient(p, c.coords)
                scale = max(1.0, np.abs(grad).max())
                denom = np.maximum(np.abs(grad), 1e-3 * scale)
                assert (np.abs(approx - grad) / denom).max() < 1e-6

    def test_gradient_rows_sum_to_zero(self):
        rng = np.random.default_rng(42)
        for _ in range(30):
            p = random_potential(rng)
            c = separated_config(rng, 9, rng.integers(1, 4))
            grad = eval_gradient(p, c)
            scale = max(1.0, np.abs(grad).max())
            assert np.abs(grad.sum(axis=0)).max() <= 1e-10 * scale


class TestGeometry:
    def test_diameter(self):
        assert diameter(Configuration([[0.0], [1.0], [0.5]])) == 1.0
        assert diameter(Configuration([[0.0, 0.0], [3.0, 4.0]])) == 5.0
        assert diameter(Configuration([[7.0]])) == 0.0

    def test_min_gap(self):
        assert min_gap(Configuration([[0.0], [1.0], [3.0]])) == 1.0
        assert min_gap(Configuration([[0.0], [0.0]])) == 0.0
        with pytest.raises(ValueError):
            min_gap(Configuration([[0.0]]))

    def test_min_gap_uniform_grid(self):
        n = 10
        grid = Configuration((2.0 * np.arange(n) / n).reshape(-1, 1))
        assert min_gap(grid) == pytest.approx(2.0 / n, rel=1e-15)


class TestCanonicalize:
    def test_examples(self):
        out = canonicalize(Configuration([[2.0], [0.0], [1.0]]))
        assert out.coords[:, 0] == pytest.approx([-1.0, 0.0, 1.0], abs=1e-15)
        out = canonicalize(Configuration([[-1.1], [-0.1], [1.2]]))
        assert out.coords[:, 0] == pytest.approx([-1.2, 0.1, 1.1], abs=1e-15)
        out = canonicalize(Configuration([[1.0, 1.0], [3.0, 1.0]]))
        assert out.coords == pytest.approx(np.array([[-1.0, 0.0], [1.0, 0.0]]), abs=1e-15)

    def test_idempotent_exactly(self):
        rng = np.random.default_rng(51)
        for _ in range(300):
            n = int(rng.integers(1, 12))
            d = int(rng.integers(1, 4))
            scale = float(rng.choice([1e-8, 1.0, 1e6]))
            c = Configuration(rng.normal(scale=scale, size=(n, d)))
            once = canonicalize(c)
            twice = canonicalize(once)
            assert np.array_equal(once.coords, twice.coords)

    def test_centroid_near_zero(self):
        rng = np.random.default_rng(52)
        for _ in range(50):
            c = Configuration(rng.uniform(-10, 10, size=(8, 2)))
            out = canonicalize(c)
            assert np.abs(out.coords.mean(axis=0)).max() < 1e-13

    def test_reflection_tie_break_prefers_smaller(self):
        # Already-symmetric input stays put.
        sym = canonicalize(Configuration([[-1.0], [0.0], [1.0]]))
        assert sym.coords[:, 0] == pytest.approx([-1.0, 0.0, 1.0], abs=0)
