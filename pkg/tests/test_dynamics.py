"""Limit detection, the prediction dispatcher, suites, scans, and curves."""

import math

import numpy as np
import pytest

from sisi.model import ModelParams, SimplexPoint, iterate
from sisi.fixpoints import DegenerateRegime, interior_quadratic
from sisi.dynamics import (
    GridSpec,
    conjecture_scan,
    default_grid,
    detect_limit,
    equilibrium_curves,
    list_regimes,
    predicted_limit,
    verify_proposition,
)

FIG1 = ModelParams(b=0.6, alpha=0.2, beta1=0.5, beta2=0.0, k1=1.0, k2=0.3)
FIG2 = ModelParams(b=0.1, alpha=0.2, beta1=0.5, beta2=0.0, k1=1.0, k2=0.3)
WORKED = ModelParams(b=0.2, alpha=0.3, beta1=0.6, beta2=0.4, k1=1.0, k2=1.0)


class TestDetectLimit:
    def test_fixed_start_converges_immediately(self):
        report = detect_limit(SimplexPoint(1, 0, 0, 0), FIG1)
        assert report.converged and report.iterations == 0
        assert report.snapped == "lambda_1"

    def test_reference_disease_free_limit(self):
        report = detect_limit(SimplexPoint(0.1, 0.01, 0.2, 0.69), FIG1)
        assert report.converged and report.snapped == "lambda_1"

    def test_reference_boundary_limit(self):
        report = detect_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), FIG2)
        assert report.converged and report.snapped == "lambda_10"
        assert np.max(np.abs(report.limit - [0.6, 2 / 15, 4 / 15, 0])) <= 1e-5

    def test_honest_nonconvergence(self):
        report = detect_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), FIG2, max_iter=3)
        assert not report.converged and report.limit is None
        assert report.iterations == 3

    def test_no_snap_for_initial_dependent_limits(self):
        # beta1 = beta2 = 0, b = 0, alpha > 0: the limit (x0, 0, ., v0) is
        # not a cataloged point, so the report converges without snapping
        p = ModelParams(0.0, 0.3, 0.0, 0.0, 1.0, 0.5)
        report = detect_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), p)
        assert report.converged and report.snapped is None
        assert np.allclose(report.limit, [0.3, 0.0, 0.6, 0.1], atol=1e-9)

    def test_identity_regime_stops_at_zero_iterations(self):
        p = ModelParams(0.0, 0.0, 0.7, 0.4, 0.0, 0.0)  # no infectivity
        report = detect_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), p)
        assert report.converged and report.iterations == 0
        assert report.final_step == 0.0


class TestPredictedLimit:
    def test_no_susceptibility_goes_disease_free(self):
        p = ModelParams(0.3, 0.1, 0.0, 0.0, 1.0, 1.0)
        pred = predicted_limit(SimplexPoint(0.2, 0.3, 0.1, 0.4), p)
        assert pred.regime == "no-susceptibility/b>0"
        assert not pred.conjectural and np.array_equal(pred.target, [1, 0, 0, 0])

    def test_no_turnover_edge_limit_reading(self):
        p = ModelParams(0.0, 0.0, 0.5, 0.5, 1.0, 1.0)
        pred = predicted_limit(SimplexPoint(0.2, 0.3, 0.1, 0.4), p)
        assert pred.regime == "no-turnover/beta1>0,beta2>0"
        assert np.isnan(pred.target[1]) and np.isnan(pred.target[3])
        assert pred.target[0] == 0.0 and pred.target[2] == 0.0
        assert "u-limit" in pred.note

    def test_no_recovery_persistent_target(self):
        p = ModelParams(0.2, 0.0, 0.6, 0.1, 1.0, 0.0)
        pred = predicted_limit(SimplexPoint(0.3, 0.3, 0.2, 0.2), p)
        assert pred.regime == "no-recovery/persistent"
        assert np.allclose(pred.target, [1 / 3, 2 / 3, 0, 0], atol=1e-12)

    def test_conjectural_flags(self):
        pred1 = predicted_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), FIG2)
        assert pred1.conjectural and pred1.regime.startswith("boundary-conjecture")
        pred2 = predicted_limit(SimplexPoint(0.2, 0.4, 0.1, 0.3),
                                ModelParams(0.1, 0.01, 0.8, 0.2, 0.5, 1.2))
        assert pred2.conjectural and pred2.regime.startswith("interior-conjecture")

    def test_uncovered_corner_returns_none(self):
        # beta2 = 0, alpha = 0, k2 > 0, b > 0: no rule speaks
        p = ModelParams(0.2, 0.0, 0.6, 0.0, 1.0, 0.5)
        assert predicted_limit(SimplexPoint(0.2, 0.3, 0.1, 0.4), p) is None

    def test_interior_conjecture_silent_region_returns_none(self):
        # beta1*k1 <= b+alpha but b(b+alpha) < alpha*beta2*k2
        p = ModelParams(0.02, 0.9, 0.1, 1.0, 1.0, 0.9)
        assert p.admissible
        assert p.beta1 * p.k1 <= p.b + p.alpha
        assert p.b * (p.b + p.alpha) < p.alpha * p.beta2 * p.k2
        assert predicted_limit(SimplexPoint(0.2, 0.3, 0.1, 0.4), p) is None

    def test_match_wiring(self):
        pred = predicted_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), FIG2)
        report = detect_limit(SimplexPoint(0.3, 0.2, 0.4, 0.1), FIG2,
                              predicted=pred)
        assert report.match is True
        assert report.deviation <= 1e-6


class TestVerifyProposition:
    @pytest.mark.parametrize("regime", list_regimes())
    def test_regime_agreement(self, regime):
        report = verify_proposition(regime, trials=30, seed=7)
        assert report.passed, f"{report}\nfirst failure: " + (
            str(report.failures[0]) if report.failures else "")
        assert report.passes == 30

    def test_unknown_regime_rejected(self):
        from sisi.dynamics import RegimeUnsatisfiable

        with pytest.raises(RegimeUnsatisfiable):
            verify_proposition("no-such-regime", trials=1)

    def test_identity_regime_zero_iterations(self):
        report = verify_proposition("no-turnover/k1=k2=0", trials=10, seed=3)
        assert report.passed

    def test_edge_limit_u_reading(self):
        # the u-limit strictly exceeds u0 whenever x0 > 0 and A0 > 0:
        # the pinned-coordinate reading (x = y = 0) is what holds, not u = u0
        report = verify_proposition("no-turnover/beta1>0,beta2>0",
                                    trials=30, seed=11)
        assert report.passed
        assert report.extra["u_lift_min"] > 1e-4
        assert report.extra["u_stays_at_u0_count"] == 0


class TestConjectureScan:
    def test_small_grid_cells_and_verdicts(self):
        grid = GridSpec(
            b=(0.6, 0.1), alpha=(0.2,), beta1=(0.5,), beta2=(0.0,),
            k1=(1.0,), k2=(0.3,),
        )
        report = conjecture_scan(1, grid=grid, n_init=3, seed=5)
        assert len(report.records) == 2 * 3
        # b=0.6: subcritical -> lambda_1; b=0.1: supercritical -> lambda_10
        for rec in report.records:
            assert rec.verdict == "match"
        labels = {report.records[0].target, report.records[3].target}
        assert labels == {"lambda_1", "lambda_10"}

    def test_interior_reference_cells_match(self):
        # the two all-rates-positive reference settings: subcritical cell
        # goes disease-free, supercritical cell reaches the interior point
        grid = GridSpec(
            b=(0.6, 0.1), alpha=(0.1, 0.01), beta1=(0.5, 0.8), beta2=(0.01, 0.2),
            k1=(1.2, 0.5), k2=(1.1, 1.2),
        )
        report = conjecture_scan(2, grid=grid, n_init=2, seed=5)
        cells = report.cells
        by_cell = {}
        for rec in report.records:
            by_cell.setdefault(rec.cell, []).append(rec)
        fig3 = np.array([0.6, 0.1, 0.5, 0.01, 1.2, 1.1])
        fig4 = np.array([0.1, 0.01, 0.8, 0.2, 0.5, 1.2])
        for ref, label in ((fig3, "lambda_1"), (fig4, "lambda_11")):
            idx = int(np.nonzero(np.all(cells == ref, axis=1))[0][0])
            for rec in by_cell[idx]:
                assert rec.verdict == "match" and rec.target == label

    def test_inadmissible_cells_reported(self):
        grid = GridSpec(
            b=(0.9,), alpha=(0.5,), beta1=(0.5,), beta2=(0.0,),
            k1=(1.0,), k2=(0.3,),
        )
        report = conjecture_scan(1, grid=grid, n_init=2, seed=5)
        assert all(r.verdict == "inadmissible" for r in report.records)

    def test_determinism_same_seed(self):
        grid = GridSpec(
            b=(0.1, 0.35), alpha=(0.05, 0.2), beta1=(0.5,), beta2=(0.01, 0.2),
            k1=(0.5, 1.0), k2=(0.6,),
        )
        a = conjecture_scan(2, grid=grid, n_init=2, seed=9)
        c = conjecture_scan(2, grid=grid, n_init=2, seed=9)
        assert a.summary == c.summary
        for ra, rc in zip(a.records, c.records):
            assert (ra.verdict, ra.target, ra.iterations) == (rc.verdict, rc.target, rc.iterations)
            assert ra.limit == rc.limit

    def test_default_grids_cover_reference_cells(self):
        g1 = default_grid(1)
        cells = g1.cells()
        for ref in ((0.6, 0.2, 0.5, 0.0, 1.0, 0.3), (0.1, 0.2, 0.5, 0.0, 1.0, 0.3)):
            assert np.any(np.all(cells == np.array(ref), axis=1))
        g2 = default_grid(2)
        cells = g2.cells()
        for ref in ((0.6, 0.1, 0.5, 0.01, 1.2, 1.1), (0.1, 0.01, 0.8, 0.2, 0.5, 1.2)):
            assert np.any(np.all(cells == np.array(ref), axis=1))
        assert g1.n_cells == 5 ** 6 and g2.n_cells == 5 ** 6


class TestRegimeLemmas:
    def test_weighted_balance_stays_nonnegative(self, rng):
        # beta2 = k2 = 0, b, alpha > 0, beta1*k1 <= b + alpha:
        # b*y - alpha*u >= 0 is forward-invariant
        for _ in range(20):
            b = rng.uniform(0.05, 0.5)
            al = rng.uniform(0.05, min(0.9 - b, 0.5))
            b1 = rng.uniform(0.2, 1.0)
            k1 = rng.uniform(0.0, (b + al) / b1)
            p = ModelParams(b, al, b1, 0.0, k1, 0.0)
            if not p.admissible:
                continue
            # choose a start with b*y - alpha*u >= 0
            u0 = rng.uniform(0.0, 0.2)
            y0 = min(0.9 - u0, max(al * u0 / b + 0.05, 0.2))
            x0 = (1.0 - u0 - y0) / 2
            s = np.array([x0, u0, y0, 1.0 - x0 - u0 - y0])
            traj = iterate(SimplexPoint.from_array(s), p, 200)
            balance = b * traj.states[:, 2] - al * traj.states[:, 1]
            assert np.all(balance >= -1e-15)

    def test_exact_decay_of_recovered_mass(self, rng):
        # alpha = k2 = 0: y+v halves exactly at rate (1-b); y is dominated
        for _ in range(20):
            b = rng.uniform(0.05, 0.6)
            p = ModelParams(b, 0.0, rng.uniform(0.2, 1.0), rng.uniform(0.0, 0.5),
                            rng.uniform(0.2, 1.2), 0.0)
            if not p.admissible:
                continue
            s0 = np.array([0.3, 0.3, 0.25, 0.15])
            traj = iterate(SimplexPoint.from_array(s0), p, 400)
            yv = traj.states[:, 2] + traj.states[:, 3]
            n = np.arange(401)
            expected = yv[0] * (1.0 - b) ** n
            scale = np.maximum(expected, 1e-300)
            assert np.max(np.abs(yv - expected) / scale) <= 1e-12
            assert np.all(traj.states[:, 2] <= s0[2] * (1.0 - b) ** n + 1e-15)


class TestEquilibriumCurves:
    def test_supercritical_single_crossing(self):
        cur = equilibrium_curves(WORKED)
        assert cur.sign_changes == 1
        quad = interior_quadratic(WORKED)
        assert cur.crossings[0] == pytest.approx(quad.positive_root, abs=1e-10)

    def test_subcritical_no_crossing(self):
        p = ModelParams(0.6, 0.1, 0.5, 0.01, 1.2, 1.1)
        assert p.b * (p.b + p.alpha) > p.alpha * p.beta2 * p.k2
        cur = equilibrium_curves(p)
        assert cur.sign_changes == 0

    def test_analytic_markers(self):
        cur = equilibrium_curves(WORKED)
        b, al, b1, b2, k1, k2 = WORKED.as_tuple()
        assert cur.value_at_zero == pytest.approx(b * b1 * k1 / (b + al), abs=1e-15)
        assert cur.asymptote == pytest.approx(b1 * (b * k1 + al * k2) / (b + al),
                                              abs=1e-15)
        assert cur.slope_linear == b1
        assert cur.slope_saturating_at_zero == pytest.approx(
            al * b1 * b2 * k2 / (b * (b + al)), abs=1e-15)

    def test_degenerate_without_turnover(self):
        with pytest.raises(DegenerateRegime):
            equilibrium_curves(ModelParams(0.0, 0.3, 0.6, 0.4, 1.0, 1.0))
