"""
Tests for the property suites behind ``cv-storage verify``.
"""

import numpy as np
import pytest

from cv_storage.exceptions import DomainError
from cv_storage.gaussian_core import SYMPLECTIC_FORM, is_physical
from cv_storage.verification import (
    SUITES,
    CheckResult,
    VerifySettings,
    all_hard_checks_passed,
    random_physical_cm,
    random_symplectic,
    run_suite,
)


class TestRandomStates:
    def test_random_symplectic(self):
        """Sampled matrices preserve the symplectic form."""
        rng = np.random.default_rng(0)
        for _ in range(20):
            s = random_symplectic(rng)
            assert np.allclose(s @ SYMPLECTIC_FORM @ s.T, SYMPLECTIC_FORM, atol=1e-10)

    def test_random_cm_is_physical_and_symmetric(self):
        """Sampled covariance matrices are symmetric and physical."""
        rng = np.random.default_rng(1)
        for _ in range(20):
            sigma = random_physical_cm(rng)
            assert np.array_equal(sigma, sigma.T)
            assert is_physical(sigma)


class TestSuites:
    @pytest.mark.parametrize("suite", SUITES)
    def test_suite_passes_with_small_samples(self, suite):
        """Each suite passes its hard checks on a small sample."""
        results = run_suite(suite, VerifySettings(seed=0, samples=20))
        failed = [r for r in results if not r.passed and not r.soft]
        assert not failed, [(r.name, r.detail, r.counterexamples) for r in failed]

    def test_all_runs_every_suite(self, monkeypatch):
        """"all" runs every suite with the same seed."""
        from cv_storage import verification

        calls = []

        def fake_check(settings):
            calls.append(settings.seed)
            return CheckResult("fake", True)

        monkeypatch.setattr(verification, "SUITE_CHECKS", {name: (fake_check,) for name in SUITES})
        results = run_suite("all", VerifySettings(seed=9))
        assert len(results) == len(SUITES)
        assert calls == [9] * len(SUITES)

    def test_raising_check_is_reported_as_failure(self, monkeypatch):
        """An exception inside a check becomes a failed result."""
        from cv_storage import verification

        def broken(settings):
            raise RuntimeError("boom")

        monkeypatch.setattr(verification, "SUITE_CHECKS", {"core": (broken,)})
        [result] = run_suite("core")
        assert not result.passed
        assert "boom" in result.detail

    def test_unknown_suite(self):
        """Unknown suite names are rejected."""
        with pytest.raises(DomainError):
            run_suite("everything")

    def test_soft_failures_do_not_count(self):
        """Soft checks never fail a run."""
        results = [CheckResult("hard", True), CheckResult("soft", False, soft=True)]
        assert all_hard_checks_passed(results)
        assert not all_hard_checks_passed(results + [CheckResult("hard2", False)])

    def test_sample_override(self):
        """--samples overrides each check's default count."""
        assert VerifySettings().count(1000) == 1000
        assert VerifySettings(samples=7).count(1000) == 7
