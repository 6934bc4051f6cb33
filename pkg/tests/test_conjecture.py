import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specht_young.conjecture import (
    Certification,
    GapSample,
    SearchConfig,
    SimplexWeights,
    certify,
    corner_probes,
    gap,
    gap_batch,
    local_descent,
    random_search,
    recheck_gap,
    run_certification,
)
from specht_young.errors import DomainError, InputError
from specht_young.scalar import arithmetic_mean, mult_refined_lower_bound

from . import constants as C

SMALL = SearchConfig(n=3, samples=2000, restarts=4, descent_iters=50, seed=5)


class TestTypes:
    def test_weights_validation(self):
        with pytest.raises(InputError):
            SimplexWeights((0.5, 0.6))
        with pytest.raises(DomainError):
            SimplexWeights((1.5, -0.5))
        with pytest.raises(InputError):
            SimplexWeights((1.0,))

    @pytest.mark.parametrize("kw", [dict(n=1), dict(box_lo=0.0), dict(box_lo=2.0, box_hi=1.0),
                                    dict(samples=-1), dict(box_hi=float("inf"))])
    def test_config_validation(self, kw):
        with pytest.raises(InputError):
            SearchConfig(**kw)


class TestGap:
    def test_equal_points(self):
        s = gap([2.5, 2.5, 2.5], (0.2, 0.3, 0.5))
        assert s.h == 1.0 and s.gap == pytest.approx(0.0, abs=1e-15)

    def test_worked_point(self):
        s = gap([1.0, 2.0, 9.0], (0.1, 0.3, 0.6))
        assert s.gap == pytest.approx(C.CONJ_GAP_129, rel=1e-14)
        assert s.h == 9.0 and s.r == 0.1

    @given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3), st.floats(1e-6, 1 - 1e-6))
    def test_two_term_reduction(self, a, b, nu):
        s = gap([a, b], (1.0 - nu, nu))
        expected = arithmetic_mean(a, b, nu) - mult_refined_lower_bound(a, b, nu)
        assert abs(s.gap - expected) <= 1e-12 * s.scale
        assert s.gap >= -1e-10 * s.scale

    def test_permutation_invariance_is_exact(self):
        pts = np.array([0.3, 7.0, 2.2, 2.2])
        wts = np.array([0.1, 0.2, 0.3, 0.4])
        ref = gap(pts, wts).gap
        for perm in itertools.permutations(range(4)):
            perm = list(perm)
            assert gap(pts[perm], wts[perm]).gap == ref

    @given(st.lists(st.floats(0.1, 10.0), min_size=3, max_size=3), st.floats(1e-2, 1e2))
    def test_scale_homogeneity(self, pts, t):
        w = (0.2, 0.3, 0.5)
        base = gap(pts, w)
        scaled = gap([t * p for p in pts], w)
        assert scaled.gap == pytest.approx(t * base.gap, rel=1e-12, abs=1e-12 * t * base.scale)

    def test_batch_matches_single(self):
        pts = np.array([[1.0, 2.0, 9.0], [0.5, 0.5, 3.0]])
        wts = np.array([[0.1, 0.3, 0.6], [0.3, 0.3, 0.4]])
        g = gap_batch(pts, wts)[0]
        assert g[0] == gap(pts[0], wts[0]).gap
        assert g[1] == gap(pts[1], wts[1]).gap

    def test_errors(self):
        with pytest.raises(InputError):
            gap([1.0, 2.0, 3.0], (0.5, 0.5))
        with pytest.raises(InputError):
            gap([1.0, -2.0], (0.5, 0.5))


class TestDescent:
    def test_from_equal_points(self):
        start = gap([3.0, 3.0, 3.0], (0.2, 0.3, 0.5))
        end = local_descent(start, SMALL)
        assert end.gap <= start.gap
        assert end.gap >= -1e-12

    def test_two_terms_stays_nonnegative(self):
        cfg = SearchConfig(n=2, descent_iters=300)
        start = gap([0.2, 8.0], (0.3, 0.7))
        end = local_descent(start, cfg)
        assert end.gap <= start.gap
        assert end.gap >= -1e-12

    def test_worked_start(self):
        start = gap([1.0, 2.0, 9.0], (0.1, 0.3, 0.6))
        end = local_descent(start, SearchConfig(n=3, box_lo=0.1, box_hi=10.0, descent_iters=100))
        assert end.gap <= start.gap
        assert all(0.1 <= p <= 10.0 for p in end.points)
        assert min(end.weights.w) >= 1e-9 * 0.999

    def test_rejects_out_of_box(self):
        with pytest.raises(InputError):
            local_descent(gap([0.01, 1.0, 2.0], (0.2, 0.3, 0.5)), SMALL)


class TestSearch:
    def test_corner_probes(self):
        pts, wts = corner_probes(SMALL)
        assert pts.shape == (8 * 4, 3)
        np.testing.assert_allclose(wts.sum(axis=1), 1.0, rtol=0, atol=1e-15)

    def test_empty_search_counts_probes(self):
        res = random_search(SearchConfig(n=3, samples=0, restarts=0, seed=1))
        assert res.total_evaluated == 8 * 4
        assert res.min_gap == res.argmin.gap

    def test_deterministic(self):
        assert random_search(SMALL) == random_search(SMALL)

    def test_workers_do_not_change_result(self):
        assert random_search(SMALL, workers=1) == random_search(SMALL, workers=3)

    def test_no_negatives_small(self):
        res = random_search(SMALL)
        assert res.negatives_found == 0
        assert res.min_gap >= -1e-9 * res.argmin.scale

    def test_argmin_attains_minimum(self):
        res = random_search(SearchConfig(n=4, samples=500, restarts=0, seed=3))
        assert res.argmin.gap == res.min_gap

    def test_recheck_agrees(self):
        s = gap([1.0, 2.0, 9.0], (0.1, 0.3, 0.6))
        assert recheck_gap(s) == pytest.approx(s.gap, rel=1e-14)


class TestCertify:
    def test_default_verdict(self):
        text = certify(SMALL)
        assert text.splitlines()[-1] == "verdict: no counterexample found"
        assert "negatives_found   0" in text

    def test_two_term(self):
        cert = run_certification(SearchConfig(n=2, samples=5000, restarts=4, seed=2))
        assert not cert.candidate

    def test_collapsed_box(self):
        c = 3.0
        cert = run_certification(SearchConfig(n=3, box_lo=c, box_hi=c * (1 + 1e-12), samples=1000, restarts=2))
        assert abs(cert.result.min_gap) <= 1e-11
        assert not cert.candidate

    def test_candidate_is_flagged(self):
        # hand-built negative sample to exercise the reporting path
        bad = GapSample((1.0, 2.0), SimplexWeights((0.5, 0.5)), 2.0, 0.5, -1.0, 1.5, 2.5)
        res = random_search(SearchConfig(n=2, samples=0, restarts=0))
        from dataclasses import replace
        cert = Certification(SMALL, replace(res, argmin=bad, min_gap=-1.0, negatives_found=1), -1.0, True)
        assert "CANDIDATE COUNTEREXAMPLE" in cert.text()
        assert cert.to_dict()["needs_high_precision_confirmation"] is True
