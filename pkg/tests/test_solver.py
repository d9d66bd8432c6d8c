import math

import numpy as np
import pytest

from arch_resonance import (
    ArchProblem,
    CrackJoint,
    NoRootsInRange,
    RootFlag,
    SearchConfig,
    boundary_determinant,
    characteristic_coefficients,
    find_frequencies,
    mode_shape,
    quartic_roots,
    refine_root,
    scan_and_bracket,
    uncracked_K_closed_form,
)
from conftest import make_problem, rel_err

K1_B1_E0 = 78.6698822318237
K1_B1_E1 = 7.237603074490859


class TestSearchConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(k_min=-1.0)
        with pytest.raises(ValueError):
            SearchConfig(k_min=5.0, k_max=4.0)
        with pytest.raises(ValueError):
            SearchConfig(grid_points=4)
        with pytest.raises(ValueError):
            SearchConfig(refine_tol=0.0)
        with pytest.raises(ValueError):
            SearchConfig(max_modes=0)


class TestScanAndBracket:
    def test_single_bracket_contains_fundamental(self):
        result = scan_and_bracket(make_problem(), SearchConfig(k_max=100.0))
        assert len(result.brackets) == 1
        lo, hi = result.brackets[0]
        assert lo <= K1_B1_E0 <= hi
        assert result.suspects == ()

    def test_no_roots_below_fundamental(self):
        with pytest.raises(NoRootsInRange):
            scan_and_bracket(make_problem(), SearchConfig(k_max=10.0))

    def test_zero_compliance_same_bracket_count(self):
        cfg = SearchConfig(k_max=10000.0)
        plain = scan_and_bracket(make_problem(), cfg)
        cracked = scan_and_bracket(make_problem(alpha=0.4, theta=0.0), cfg)
        assert len(plain.brackets) == len(cracked.brackets)

    def test_bracket_endpoints_straddle(self):
        problem = make_problem(eta=0.5)
        result = scan_and_bracket(problem, SearchConfig(k_max=5000.0))
        for lo, hi in result.brackets:
            s_lo, _ = boundary_determinant(problem, lo)
            s_hi, _ = boundary_determinant(problem, hi)
            assert s_lo * s_hi == -1


class TestRefineRoot:
    def test_fundamental(self):
        k = refine_root((70.0, 90.0), make_problem())
        assert rel_err(k, K1_B1_E0) < 1e-8

    def test_fundamental_nonlocal(self):
        k = refine_root((7.0, 7.5), make_problem(eta=1.0))
        assert rel_err(k, K1_B1_E1) < 1e-8

    def test_degenerate_bracket_returns_endpoint(self):
        assert refine_root((42.0, 42.0), make_problem()) == 42.0

    def test_unbracketed_rejected(self):
        with pytest.raises(ValueError):
            refine_root((1.0, 2.0), make_problem())

    def test_deterministic(self):
        a = refine_root((70.0, 90.0), make_problem())
        b = refine_root((70.0, 90.0), make_problem())
        assert a == b


class TestFindFrequencies:
    def test_matches_closed_form_classical(self):
        spectrum = find_frequencies(make_problem(), SearchConfig(max_modes=3))
        for n, root in enumerate(spectrum.roots, start=1):
            assert rel_err(root.K, uncracked_K_closed_form(n, 1.0, 0.0)) < 1e-8
            assert root.flag is RootFlag.BRACKETED

    def test_matches_closed_form_nonlocal(self):
        spectrum = find_frequencies(make_problem(eta=1.0), SearchConfig(max_modes=3))
        for n, root in enumerate(spectrum.roots, start=1):
            assert rel_err(root.K, uncracked_K_closed_form(n, 1.0, 1.0)) < 1e-8

    def test_crack_lowers_fundamental(self):
        plain = find_frequencies(make_problem(), SearchConfig(max_modes=1))
        cracked = find_frequencies(
            make_problem(alpha=0.5, theta=1.0), SearchConfig(max_modes=1)
        )
        assert cracked.roots[0].K < plain.roots[0].K

    def test_roots_strictly_increasing_above_k_min(self):
        cfg = SearchConfig(max_modes=5)
        spectrum = find_frequencies(make_problem(eta=0.5), cfg)
        ks = spectrum.K_values
        assert all(b > a for a, b in zip(ks, ks[1:]))
        assert ks[0] > cfg.k_min

    def test_rank_deficiency_at_roots(self):
        spectrum = find_frequencies(make_problem(), SearchConfig(max_modes=3))
        for root in spectrum.roots:
            assert root.min_pivot <= 1e-7

    def test_inextensional_artifact_excluded(self):
        # At beta = pi the n = 1 closed form collapses to K = 0; the first
        # reported root must be the n = 2 eigenvalue.
        problem = make_problem(beta=math.pi)
        spectrum = find_frequencies(problem, SearchConfig(max_modes=2))
        assert rel_err(spectrum.roots[0].K, uncracked_K_closed_form(2, math.pi, 0.0)) < 1e-8

    def test_bit_identical_reruns(self):
        a = find_frequencies(make_problem(eta=0.5, alpha=0.3, theta=0.7))
        b = find_frequencies(make_problem(eta=0.5, alpha=0.3, theta=0.7))
        assert a.K_values == b.K_values
        assert all(
            ra.coefficients == rb.coefficients for ra, rb in zip(a.roots, b.roots)
        )

    def test_propagates_no_roots(self):
        with pytest.raises(NoRootsInRange):
            find_frequencies(make_problem(), SearchConfig(k_max=10.0))


class TestOracleEquivalence:
    def test_closed_form_grid(self):
        # Subset here; the full acceptance grid lives in test_acceptance.
        cfg = SearchConfig(max_modes=3)
        for beta in (0.5, 2.0):
            for eta in (0.0, 2.0):
                spectrum = find_frequencies(make_problem(beta=beta, eta=eta), cfg)
                for n, root in enumerate(spectrum.roots, start=1):
                    expected = uncracked_K_closed_form(n, beta, eta)
                    assert rel_err(root.K, expected) < 1e-8


class TestModeShape:
    def test_fundamental_is_sine(self):
        problem = make_problem()
        spectrum = find_frequencies(problem, SearchConfig(max_modes=1))
        shape = mode_shape(problem, spectrum.roots[0], samples=257)
        phi, x = shape[:, 0], shape[:, 1]
        reference = np.sin(math.pi * phi)
        reference /= np.abs(reference).max()
        assert np.abs(x - reference).max() < 1e-8

    def test_boundary_values(self):
        problem = make_problem(eta=1.0)
        spectrum = find_frequencies(problem, SearchConfig(max_modes=2))
        for root in spectrum.roots:
            shape = mode_shape(problem, root, samples=101)
            assert abs(shape[0, 1]) <= 1e-9
            assert abs(shape[-1, 1]) <= 1e-9

    def test_normalization_exact(self):
        problem = make_problem()
        spectrum = find_frequencies(problem, SearchConfig(max_modes=1))
        shape = mode_shape(problem, spectrum.roots[0], samples=64)
        assert shape[:, 1].max() == 1.0

    def test_sample_count_and_grid(self):
        problem = make_problem()
        spectrum = find_frequencies(problem, SearchConfig(max_modes=1))
        shape = mode_shape(problem, spectrum.roots[0], samples=11)
        assert shape.shape == (11, 2)
        assert shape[0, 0] == 0.0
        assert shape[-1, 0] == 1.0

    def test_cracked_slope_jump(self):
        theta = 2.0
        problem = make_problem(alpha=0.5, theta=theta)
        spectrum = find_frequencies(problem, SearchConfig(max_modes=1))
        root = spectrum.roots[0]
        basis = quartic_roots(
            characteristic_coefficients(root.K, problem.eta_nd), phi_max=problem.beta
        )
        rows = basis.derivative_rows(0.5, nrows=3)
        c = root.coefficients
        left_slope = sum(c[j] * rows[1][j] for j in range(4))
        right_slope = sum(c[4 + j] * rows[1][j] for j in range(4))
        left_curvature = sum(c[j] * rows[2][j] for j in range(4))
        jump = right_slope - left_slope
        assert abs(jump) > 1e-3
        assert jump / left_curvature == pytest.approx(theta, rel=1e-6)

    def test_rejects_tiny_sample_count(self):
        problem = make_problem()
        spectrum = find_frequencies(problem, SearchConfig(max_modes=1))
        with pytest.raises(ValueError):
            mode_shape(problem, spectrum.roots[0], samples=1)


class TestEtaMonotonicity:
    def test_fundamental_decreases_with_nonlocal_parameter(self):
        cfg = SearchConfig(max_modes=1)
        for crack in (None, CrackJoint(alpha=0.5, theta_c=1.0)):
            ks = []
            for eta in (0.0, 0.5, 1.0, 2.0, 4.0):
                problem = ArchProblem(beta=1.0, eta_nd=eta, crack=crack)
                ks.append(find_frequencies(problem, cfg).roots[0].K)
            assert all(b < a for a, b in zip(ks, ks[1:]))
