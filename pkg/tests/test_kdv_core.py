import numpy as np
import pytest

from zklab import kdv_core as kc


@pytest.fixture(scope="module")
def grid():
    return kc.Grid1D.default()


class TestGrid:
    def test_default_shape(self, grid):
        assert grid.L == 50.0 and grid.n == 4001
        assert grid.h == pytest.approx(0.025)

    def test_nodes_symmetric_increasing(self, grid):
        x = grid.nodes
        assert np.all(np.diff(x) > 0)
        np.testing.assert_allclose(x + x[::-1], 0.0, atol=1e-12)
        assert x[grid.n // 2] == 0.0

    def test_weights(self, grid):
        w = grid.weights
        assert np.all(w > 0)
        assert np.sum(w) == pytest.approx(2 * grid.L, abs=1e-9)

    def test_rejects_even_n(self):
        with pytest.raises(ValueError):
            kc.Grid1D(L=10.0, n=100)

    def test_rejects_bad_L(self):
        with pytest.raises(ValueError):
            kc.Grid1D(L=-1.0, n=11)


class TestSolitonProfile:
    def test_peak_value(self):
        assert kc.line_soliton(0.2, 0.0) == pytest.approx(0.2, abs=0)

    @pytest.mark.parametrize("xi", [0.5, 1.0, 3.0])
    def test_even_symmetry(self, xi):
        assert kc.line_soliton(0.2, xi) == pytest.approx(kc.line_soliton(0.2, -xi), abs=0)

    def test_mass_quadrature_matches_closed_form(self, grid):
        # oracle: integral of c sech^2(sqrt(c) xi) = 2 sqrt(c) (tanh antiderivative)
        assert abs(kc.mass_quadrature(0.2, grid) - 2.0 * np.sqrt(0.2)) < 1e-10
        # slower decay at small c leaves an exp(-2 sqrt(c) L) truncation tail
        for c in (0.05, 1.0):
            assert abs(kc.mass_quadrature(c, grid) - 2.0 * np.sqrt(c)) < 1e-9

    def test_params_validation(self):
        with pytest.raises(ValueError):
            kc.SolitonParams(c=-0.1)
        with pytest.raises(ValueError):
            kc.SolitonParams(c=np.nan)
        p = kc.SolitonParams(c=0.2, x0=1.5)
        assert kc.eval_line_soliton(p, 0.0) == pytest.approx(0.2)

    def test_dxi_matches_finite_difference(self, grid):
        xi = np.linspace(-5, 5, 41)
        d = 1e-6
        fd = (kc.line_soliton(0.3, xi + d) - kc.line_soliton(0.3, xi - d)) / (2 * d)
        np.testing.assert_allclose(kc.soliton_dxi(0.3, xi), fd, atol=1e-9)

    def test_dc_matches_finite_difference(self, grid):
        # central-difference oracle in c
        d = 1e-5
        fd = (kc.line_soliton(kc.C_STAR + d, grid.nodes) - kc.line_soliton(kc.C_STAR - d, grid.nodes)) / (2 * d)
        np.testing.assert_allclose(kc.soliton_dc(kc.C_STAR, grid.nodes), fd, atol=1e-8)

    def test_dc_antiderivative_limits_and_slope(self, grid):
        p = kc.soliton_dc_antiderivative(0.2, grid.nodes)
        assert abs(p[0]) < 1e-12
        assert p[-1] == pytest.approx(kc.mass_slope(0.2), abs=1e-12)
        # derivative recovers soliton_dc
        dp = np.gradient(p, grid.nodes)
        np.testing.assert_allclose(dp[1:-1], kc.soliton_dc(0.2, grid.nodes)[1:-1], atol=1e-4)


class TestEigenpairs:
    def test_lambda1_exact(self, grid):
        ep1, ep2, ep3 = kc.eigenpairs(0.2, grid)
        assert ep1.eigenvalue == -1.0
        assert ep2.eigenvalue == 0.0
        assert ep3.eigenvalue == pytest.approx(0.6)

    def test_second_eigenfunction_odd(self, grid):
        _, ep2, _ = kc.eigenpairs(0.2, grid)
        v = ep2.eigenfunction.values
        np.testing.assert_allclose(v, -v[::-1], atol=1e-15)

    def test_residuals_small_on_default_grid(self, grid):
        for ep in kc.eigenpairs(0.2, grid):
            assert ep.residual_norm <= 1e-6

    @pytest.mark.parametrize("c", [0.05, 0.2, 1.0])
    def test_second_order_residual_scaling(self, c):
        # the 3-point stencil residual must drop by ~4 when h is halved
        res = []
        for n in (2001, 4001):
            g = kc.Grid1D(L=50.0, n=n)
            for ep in kc.eigenpairs(c, g):
                f = ep.eigenfunction
                r = kc.apply_hessian(f, c, order=2).values - ep.eigenvalue * f.values
                res.append(kc.Field1D(g, r).norm())
        coarse, fine = res[:3], res[3:]
        for rc, rf in zip(coarse, fine):
            assert 3.0 < rc / rf < 5.0


class TestNeutralPair:
    def test_eta_vanishes_at_left_boundary(self, grid):
        eta = kc.eta_star(grid)
        assert abs(eta.values[0]) <= 1e-12

    def test_eta_right_limit(self, grid):
        # total integral of sech^3(sqrt(c*) xi) = pi / (2 sqrt(c*))
        eta = kc.eta_star(grid)
        assert eta.values[-1] == pytest.approx(np.pi / (2 * np.sqrt(kc.C_STAR)), abs=1e-10)

    def test_eta_psi_pairing(self, grid):
        val = kc.inner(kc.eta_star(grid), kc.psi_star(grid))
        assert val == pytest.approx(np.pi**2 / (8 * kc.C_STAR), abs=1e-8)

    def test_pairing_equals_half_square_of_total_integral(self, grid):
        # <eta, psi> = (1/2) (integral of psi)^2, both by quadrature
        psi = kc.psi_star(grid)
        total = float(np.dot(grid.weights, psi.values))
        val = kc.inner(kc.eta_star(grid), psi)
        assert val == pytest.approx(0.5 * total**2, abs=1e-8)

    def test_eta_derivative_is_psi(self, grid):
        eta = kc.eta_star(grid).values
        d = np.gradient(eta, grid.nodes)
        np.testing.assert_allclose(d[1:-1], kc.psi_star(grid).values[1:-1], atol=1e-4)


class TestMassMomentum:
    def test_momentum_slope_value(self):
        assert kc.momentum_slope(0.2) == pytest.approx(np.sqrt(0.2), abs=1e-15)

    def test_momentum_quadrature_vs_closed_form(self, grid):
        assert abs(kc.momentum_quadrature(0.2, grid) - (2.0 / 3.0) * 0.2**1.5) < 1e-10

    @pytest.mark.parametrize("c", [0.05, 0.11, 0.2, 0.5, 1.0])
    def test_slope_product_identity(self, c):
        assert kc.mass_slope(c) * kc.momentum_slope(c) == pytest.approx(1.0, abs=1e-14)

    def test_closed_forms_match_quadrature_under_refinement(self):
        # doubling n changes quadrature results by < 1e-8
        vals = []
        for n in (4001, 8001):
            g = kc.Grid1D(L=50.0, n=n)
            vals.append((kc.mass_quadrature(0.2, g), kc.momentum_quadrature(0.2, g),
                         kc.inner(kc.eta_star(g), kc.psi_star(g))))
        for a, b in zip(*vals):
            assert abs(a - b) < 1e-8


class TestInner:
    def test_psi_norm_squared(self, grid):
        # oracle: integral of sech^6 = 16/15 in the stretched variable
        val = kc.inner(kc.psi_star(grid), kc.psi_star(grid))
        assert val == pytest.approx(16.0 / (15.0 * np.sqrt(kc.C_STAR)), abs=1e-8)

    def test_odd_even_orthogonality(self, grid):
        _, ep2, _ = kc.eigenpairs(kc.C_STAR, grid)
        assert abs(kc.inner(ep2.eigenfunction, kc.psi_star(grid))) < 1e-14

    def test_hessian_dc_pairing(self, grid):
        psi = kc.psi_star(grid)
        lp = kc.Field1D(grid, kc.hessian_potential_dc(kc.C_STAR, grid.nodes) * psi.values)
        assert kc.inner(psi, lp) == pytest.approx(-16.0 / (3.0 * np.sqrt(kc.C_STAR)), abs=1e-6)

    def test_grid_mismatch_raises(self, grid):
        other = kc.Grid1D(L=40.0, n=4001)
        with pytest.raises(kc.GridMismatchError):
            kc.inner(kc.psi_star(grid), kc.psi_star(other))


class TestFieldValidation:
    def test_wrong_length_rejected(self, grid):
        with pytest.raises(ValueError):
            kc.Field1D(grid, np.zeros(17))

    def test_nonfinite_rejected(self, grid):
        v = np.zeros(grid.n)
        v[3] = np.inf
        with pytest.raises(ValueError):
            kc.Field1D(grid, v)
