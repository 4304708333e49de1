import math

import numpy as np
import pytest

from macroqho import asymptotics as asy
from macroqho import fourier as ft
from macroqho.averaging import default_window, local_average
from macroqho.errors import ContractError
from macroqho.oscillator import NATURAL, OscillatorParams, Superposition, density_matrix_xt, energy
from macroqho import specfun
from macroqho.specfun import bessel_j
from oracles import laguerre_coefficients

SUPPRESSION_VS = (1, 2, 50, 100)


class TestAsymptoticIndex:
    def test_n_and_prefactor(self):
        idx = asy.AsymptoticIndex(100, 3)
        assert idx.N == 99.0
        assert idx.prefactor == pytest.approx((1 - 2 / 200) ** -1.5, rel=1e-15)
        assert asy.AsymptoticIndex(7, 0).prefactor == 1.0
        assert asy.AsymptoticIndex(7, 1).prefactor == 1.0

    @pytest.mark.parametrize("v", [1, 2, 5, 50])
    def test_prefactor_at_least_one(self, v):
        assert asy.AsymptoticIndex(100, v).prefactor >= 1.0

    def test_contract(self):
        with pytest.raises(ContractError):
            asy.AsymptoticIndex(0, 0)
        with pytest.raises(ContractError):
            asy.AsymptoticIndex(3, 4)

    @pytest.mark.parametrize("n", [0, 1, 10, 12345, 10**6])
    def test_chi_zero_offset_is_classical_amplitude(self, n):
        params = OscillatorParams(2.5, 0.3, 0.7)
        xn = asy.turning_amplitude(n + 0.5, params)
        assert 0.5 * params.mass * params.omega**2 * xn**2 == pytest.approx(energy(n, params), rel=1e-14)
        if n:
            assert asy.AsymptoticIndex(n, 0).chi(params) == pytest.approx(params.amplitude(n), rel=1e-15)


class TestFourierAsymptotic:
    def test_leading_forms(self):
        xi = np.linspace(-4, 4, 17)
        p = ft.momentum_from_xi0(xi)
        n = 40
        np.testing.assert_allclose(asy.fourier_asymptotic(n, 0, p), bessel_j(0, 2 * math.sqrt(n + 0.5) * xi), rtol=1e-14)
        np.testing.assert_allclose(
            asy.fourier_asymptotic(n, 1, p), -1j * bessel_j(1, 2 * math.sqrt(n) * xi), rtol=1e-13, atol=1e-16
        )

    def test_origin(self):
        assert asy.fourier_asymptotic(9, 0, 0.0) == 1.0
        assert ft.fourier_exact(9, 9, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_bounded_by_prefactor(self):
        p = ft.momentum_from_xi0(np.linspace(-10, 10, 401))
        for v in (0, 2, 7):
            idx = asy.AsymptoticIndex(30, v)
            assert np.max(np.abs(asy.fourier_asymptotic(30, v, p))) <= idx.prefactor

    @pytest.mark.parametrize("v", [0, 1, 2])
    def test_convergence_in_n(self, v):
        p = ft.momentum_from_xi0(np.linspace(-4, 4, 801))
        errs = [np.max(np.abs(ft.fourier_exact(n, n - v, p) - asy.fourier_asymptotic(n, v, p))) for n in (50, 500, 5000)]
        assert errs[0] > errs[1] > errs[2]


class TestDensityAsymptotic:
    def test_center_value(self):
        for n in (1, 100, 10000):
            assert asy.density_asymptotic(n, 0, 0.0) == pytest.approx(1 / (math.pi * NATURAL.amplitude(n)), rel=1e-15)

    def test_classical_density_examples(self):
        assert asy.classical_density(0, 0.0) == pytest.approx(1 / math.pi / math.sqrt(1.0), rel=1e-15)
        x = np.linspace(-20, 20, 101)
        np.testing.assert_array_equal(asy.classical_density(50, x), asy.density_asymptotic(50, 0, x))

    @pytest.mark.parametrize("n,v", [(10, 0), (300, 0), (300, 1), (300, 2), (10000, 50)])
    def test_parity(self, n, v):
        x = np.linspace(0, 1.1 * NATURAL.amplitude(n), 333)
        np.testing.assert_array_equal(asy.density_asymptotic(n, v, -x), (-1) ** v * asy.density_asymptotic(n, v, x))

    def test_zero_outside_window(self):
        chi = asy.AsymptoticIndex(20, 3).chi()
        assert asy.density_asymptotic(20, 3, 1.001 * chi) == 0.0
        assert asy.density_asymptotic(20, 3, -5 * chi) == 0.0

    def test_endpoint_never_infinite(self):
        n, v = 10000, 2
        chi = asy.AsymptoticIndex(n, v).chi()
        grid = np.array([-chi, -chi * (1 - 1e-14), 0.0, chi * (1 - 1e-13), chi])
        field = asy.density_asymptotic_field(n, v, grid)
        assert np.all(np.isfinite(field.values))
        assert field.meta["clamped"] == [0, 1, 3, 4]
        # Rect halves the exact boundary point
        assert field.values[4] == pytest.approx(field.values[3] / 2, rel=1e-9)

    @pytest.mark.parametrize("params", [NATURAL, OscillatorParams(3.0, 0.2, 0.5)])
    @pytest.mark.parametrize("n", [1, 10, 10000])
    def test_arcsine_normalization(self, n, params):
        xn = params.amplitude(n)
        # theta substitution absorbs the singularity: the integral of rho over (-x_n, x_n)
        # becomes the mean of pi x_n cos(theta) rho(x_n sin theta)
        theta = (np.arange(4000) + 0.5) * np.pi / 4000 - np.pi / 2
        vals = asy.classical_density(n, xn * np.sin(theta), params) * math.pi * xn * np.cos(theta)
        assert float(np.mean(vals)) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("v", [1, 2, 3, 8])
    def test_off_diagonal_integrates_to_zero(self, v):
        chi = asy.AsymptoticIndex(500, v).chi()
        theta = (np.arange(2000) + 0.5) * np.pi / 2000 - np.pi / 2
        vals = asy.density_asymptotic(500, v, chi * np.sin(theta)) * math.pi * chi * np.cos(theta)
        assert abs(np.mean(vals)) <= 1e-12

    def test_suppression_interior(self):
        # the arcsine factor diverges at the turning points, so the bound is read on |x| <= 0.75 chi
        n = 10000
        for v in SUPPRESSION_VS:
            chi = asy.AsymptoticIndex(n, v).chi()
            x = np.linspace(-0.75 * chi, 0.75 * chi, 4001)
            peak = np.max(np.abs(asy.density_asymptotic(n, v, x)))  # natural units: rho_bar = rho
            assert 0 < peak < 0.01

    def test_sign_changes_grow_with_v(self):
        n = 10000
        counts = []
        for v in SUPPRESSION_VS:
            chi = asy.AsymptoticIndex(n, v).chi()
            vals = asy.density_asymptotic(n, v, np.linspace(-chi, chi, 4001)[1:-1])
            s = np.sign(vals[vals != 0])
            counts.append(int(np.sum(s[1:] != s[:-1])))
        assert counts == [1, 2, 48, 98]

    def test_first_order_accuracy_against_exact_average(self):
        # away from the turning points the exact component, averaged over a few wavelengths,
        # follows the Chebyshev form with the leading-order error
        from macroqho.oscillator import density_component

        n, v = 400, 1
        chi = asy.AsymptoticIndex(n, v).chi()
        x = np.linspace(-0.6 * chi, 0.6 * chi, 13)
        avg = [local_average(lambda y: density_component(n, n - v, y), xi, default_window(n, xi)) for xi in x]
        np.testing.assert_allclose(avg, asy.density_asymptotic(n, v, x), atol=0.03 / chi)


class TestSzego:
    def test_zero_offset_is_bessel(self):
        x = np.linspace(0, 3, 31)
        N = 40 + 0.5
        np.testing.assert_array_equal(asy.szego_first_order(40, 0, x), bessel_j(0, 2 * math.sqrt(N) * x))

    def test_deviation_shrinks_with_n(self):
        # exact e^{-x^2/2} x^v L_n^v(x^2) from exact rational coefficients; the printed comparison
        # is read relative to the size of the function (the raw values grow like n^{v/2})
        x = np.linspace(0.05, 2, 40)
        v = 2

        def rel_dev(n):
            exact = np.array([math.exp(-t * t / 2) * t**v * laguerre_coefficients(n, v, t * t) for t in x])
            return np.max(np.abs(asy.szego_first_order(n, v, x) - exact)) / np.max(np.abs(exact))

        assert rel_dev(200) < rel_dev(50)

    def test_ratio_to_fourier_form(self):
        # With Laguerre order m = n - v both forms share N = n - (v-1)/2, so the Bessel factors
        # cancel. After the sqrt(m!/n!) normalization of the closed form, the ratio is
        # sqrt(n!/(m! n^v)), which goes to 1 as n grows.
        n, v = 10**4, 2
        m = n - v
        xi = np.array([0.003, 0.011, 0.02])
        norm = math.exp(0.5 * specfun.log_ratio_factorial(n, m))
        ratio = asy.szego_first_order(m, v, xi) * norm / np.abs(asy.fourier_asymptotic(n, v, ft.momentum_from_xi0(xi)))
        oracle = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(m + 1) - v * math.log(n)))
        np.testing.assert_allclose(ratio, oracle, rtol=1e-12)
        assert np.all(np.abs(ratio - 1) <= 2e-4)

    def test_contract(self):
        with pytest.raises(ContractError):
            asy.szego_first_order(0, 1, 0.5)


class TestMacroscopicDensity:
    def test_eigenstate_is_classical_and_static(self):
        s = Superposition.eigenstate(60)
        x = np.linspace(-12, 12, 49)
        for t in (0.0, 1.7, 40.0):
            np.testing.assert_array_equal(asy.macroscopic_density_xt(s, x, t), asy.classical_density(60, x))

    def test_time_average_drops_interference(self):
        n = 80
        s = Superposition({n: 1, n - 1: 1})
        x = np.linspace(-10, 10, 21)
        ts = np.arange(64) * 2 * math.pi / 64  # uniform rule is exact for trigonometric polynomials
        avg = np.mean([asy.macroscopic_density_xt(s, x, t) for t in ts], axis=0)
        expect = 0.5 * (asy.classical_density(n, x) + asy.classical_density(n - 1, x))
        np.testing.assert_allclose(avg, expect, rtol=1e-12, atol=1e-15)

    def test_matches_averaged_exact_density(self):
        s = Superposition({100: 1, 99: 1})
        xn = NATURAL.amplitude(100)
        x = np.linspace(-0.75 * xn, 0.75 * xn, 31)
        exact = np.array([local_average(lambda y: density_matrix_xt(s, y, 0.0), xi, default_window(100, xi)) for xi in x])
        macro = asy.macroscopic_density_xt(s, x, 0.0)
        assert np.max(np.abs(exact - macro) / np.abs(macro)) <= 0.05

    def test_real_and_periodic(self):
        s = Superposition.gaussian(200, 2)
        x = np.linspace(-15, 15, 31)
        a = asy.macroscopic_density_xt(s, x, 0.4)
        assert a.dtype == float
        np.testing.assert_allclose(asy.macroscopic_density_xt(s, x, 0.4 + 2 * math.pi), a, atol=1e-13)

    def test_vmax_cuts_interference(self):
        s = Superposition({50: 1, 49: 1})
        x = np.array([0.5, 3.0])
        diag = 0.5 * (asy.classical_density(50, x) + asy.classical_density(49, x))
        np.testing.assert_allclose(asy.macroscopic_density_xt(s, x, 0.3, vmax=0), diag, rtol=1e-14)
        with pytest.raises(ContractError):
            asy.macroscopic_density_xt(s, x, 0.0, vmax=-1)


def test_default_vmax():
    assert asy.default_vmax(Superposition({10: 1, 7: 1})) == 3 * Superposition({10: 1, 7: 1}).support_width()
