"""Both kernel backends must implement the same contract bit-for-bit-ish."""

import numpy as np
import pytest

from cyberalloc import EUTParams, eval_prob_array, optimize_allocation, template
from cyberalloc._kernels import _reference, available_backends, backend_name


def test_selected_backend_reported():
    assert backend_name() in ("compiled", "python")


def test_reference_always_available():
    assert any(b.NAME == "python" for b in available_backends())


class TestKernelContract:
    C = np.linspace(0.0, 45.0, 500)

    def test_pt_edge_cases(self, kernel_backend):
        # pi = 0 and pi = 1 exercise the weight endpoints; c = 0 with no
        # coverage exercises the zero-magnitude guard
        c = np.array([0.0, 0.0, 10.0])
        pi = np.array([0.0, 1.0, 0.5])
        out = kernel_backend.pt_objective(c, pi, 1000.0, 0.3, 0.0, 0.88, 2.25, 0.65)
        assert np.all(np.isfinite(out))
        assert out[0] == 0.0  # w(0)*v(-L) + w(1)*v(0) = 0 + 0

    def test_pt_matches_reference(self, kernel_backend, any_template):
        pi = eval_prob_array(any_template, self.C)
        for ir in (0.0, 0.8, 1.0):
            ours = kernel_backend.pt_objective(self.C, pi, 1000.0, 0.3, ir, 0.88, 2.25, 0.65)
            ref = _reference.pt_objective(self.C, pi, 1000.0, 0.3, ir, 0.88, 2.25, 0.65)
            np.testing.assert_allclose(ours, ref, rtol=1e-12)

    def test_eut_matches_reference(self, kernel_backend, any_template):
        pi = eval_prob_array(any_template, self.C)
        for r in (0.88, 1.0):
            ours = kernel_backend.eut_objective(self.C, pi, 10_000.0, 1000.0, 0.3, 1.0, r)
            ref = _reference.eut_objective(self.C, pi, 10_000.0, 1000.0, 0.3, 1.0, r)
            np.testing.assert_allclose(ours, ref, rtol=1e-12)

    def test_eut_rejects_negative_wealth(self, kernel_backend):
        c = np.array([900.0])
        pi = np.array([0.5])
        with pytest.raises(ValueError):
            kernel_backend.eut_objective(c, pi, 1000.0, 1000.0, 0.3, 0.0, 1.0)

    def test_mismatched_lengths(self, kernel_backend):
        with pytest.raises(ValueError):
            kernel_backend.pt_objective(np.zeros(3), np.zeros(2), 1000.0, 0.3, 1.0, 0.88, 2.25, 0.65)


def test_solver_agrees_across_backends(monkeypatch, base_scenario, pt_base):
    """The optimum must not depend on which kernel implementation ran."""
    import cyberalloc._kernels as kernels

    results = {}
    for backend in available_backends():
        monkeypatch.setattr(kernels, "pt_objective", backend.pt_objective)
        monkeypatch.setattr(kernels, "eut_objective", backend.eut_objective)
        res = optimize_allocation(base_scenario, template("pi1"), pt_base)
        eut = optimize_allocation(base_scenario, template("pi4"), EUTParams(r=0.88))
        results[backend.NAME] = (res.c_cs_star, eut.c_cs_star)
    values = list(results.values())
    for got in values[1:]:
        assert got[0] == pytest.approx(values[0][0], abs=1e-5)
        assert got[1] == pytest.approx(values[0][1], abs=1e-5)
