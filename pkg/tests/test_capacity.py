import math

import numpy as np
import pytest

from renyi_lab import capacity as cap
from renyi_lab import divergence, instances, oracle
from renyi_lab import mutual_information as mi
from renyi_lab.errors import PropertyViolation, UnsupportedOrderError

LOG2 = math.log(2)


class TestRadius:
    def test_constant_channel(self, cfg):
        r = cap.renyi_radius(instances.constant_channel([0.2, 0.8], n=3), 2, cfg)
        assert r.value == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(r.center.masses, [0.2, 0.8], atol=1e-8)

    def test_bsc(self, cfg):
        r = cap.renyi_radius(instances.bsc(0.25), 2, cfg)
        assert r.value == pytest.approx(math.log(5 / 4), abs=1e-8)
        np.testing.assert_allclose(r.center.masses, [0.5, 0.5], atol=1e-6)
        assert r.converged and r.certificate_gap <= cap.CERT_TOL

    @pytest.mark.parametrize("a", [0.3, 0.5, 1.0, 2.0, 7.0, math.inf])
    def test_identity(self, a, cfg):
        r = cap.renyi_radius(instances.identity_channel(2), a, cfg)
        assert r.value == pytest.approx(LOG2, abs=1e-8)
        np.testing.assert_allclose(r.center.masses, [0.5, 0.5], atol=1e-6)

    def test_order_zero_refused(self):
        with pytest.raises(UnsupportedOrderError):
            cap.renyi_radius(instances.bsc(0.1), 0)

    def test_center_and_weak_duality(self, rng, cfg):
        for _ in range(5):
            ch = instances.random_channel(rng, 3, 3)
            W = ch.masses
            for a in (0.5, 2.0, 4.0):
                r = cap.renyi_radius(ch, a, cfg)
                q = r.center.masses
                top = divergence.divergence_rows(W, q, a).max()
                assert top <= r.value + cfg.tol
                for _ in range(20):
                    d = rng.standard_normal(3)
                    d -= d.mean()
                    v = np.clip(q + 1e-3 * d / np.linalg.norm(d), 1e-12, None)
                    v /= v.sum()
                    assert divergence.divergence_rows(W, v, a).max() >= top - 1e-6
                for _ in range(20):
                    assert mi.sibson_value(rng.dirichlet(np.ones(3)), W, a) <= r.value + 1e-8

    def test_monotone_in_order(self, rng, cfg):
        ch = instances.random_channel(rng, 3, 4)
        vals = [cap.renyi_radius(ch, a, cfg).value for a in (0.2, 0.5, 0.9, 1.0, 1.5, 3.0, 10.0, math.inf)]
        assert all(b >= a - 1e-8 for a, b in zip(vals, vals[1:]))


class TestCapacity:
    @pytest.mark.parametrize("f", cap.FUNCTIONALS)
    def test_constant_channel(self, f, cfg):
        ch = instances.constant_channel([0.3, 0.7], n=2)
        assert cap.capacity(ch, f, 2, cfg).value == pytest.approx(0.0, abs=1e-8)

    def test_identity_xy(self, cfg):
        r = cap.capacity(instances.identity_channel(2), "I_xy", 2, cfg)
        assert r.value == pytest.approx(LOG2, abs=1e-10)
        np.testing.assert_allclose(r.argmax_input.masses, [0.5, 0.5], atol=1e-6)
        assert r.converged

    def test_bsc_j(self, cfg):
        r = cap.capacity(instances.bsc(0.25), "J", 2, cfg)
        assert r.value == pytest.approx(math.log(5 / 4), abs=1e-4)

    def test_order_domain(self, cfg):
        ch = instances.bsc(0.1)
        assert cap.capacity(ch, "I_xy", math.inf, cfg).value == pytest.approx(math.log(1.8))
        for f in ("I_yx", "K_xy", "K_yx", "J"):
            with pytest.raises(UnsupportedOrderError):
                cap.capacity(ch, f, math.inf, cfg)
        with pytest.raises(UnsupportedOrderError):
            cap.capacity(ch, "I_xy", 0, cfg)
        with pytest.raises(ValueError):
            cap.capacity(ch, "nope", 2, cfg)

    def test_shannon_collapse(self, rng, cfg):
        for _ in range(3):
            ch = instances.random_channel(rng, 3, 3)
            c, _ = oracle.blahut_arimoto(ch.masses)
            for f in cap.FUNCTIONALS:
                assert cap.capacity(ch, f, 1, cfg).value == pytest.approx(c, abs=1e-5), f

    def test_one_dimensional_sweep(self):
        # two inputs: compare against a 1-D sweep of the input probability
        W = np.array([[0.7, 0.2, 0.1], [0.1, 0.3, 0.6]])
        ch = instances.channel_from_rows(W)
        ps = np.linspace(0.0, 1.0, 10_001)
        inner = mi.SolverConfig(restarts=0)

        def yx(p):
            return cap._swap_parts(np.array([p, 1 - p]), W)

        sweeps = {
            (2.0, "I_xy"): lambda p: mi.sibson_value(np.array([p, 1 - p]), W, 2.0),
            (2.0, "I_yx"): lambda p: mi.sibson_value(*yx(p), 2.0),
            (2.0, "K_xy"): lambda p: mi.augustin_kernel(np.array([p, 1 - p]), W, 2.0).value,
            (2.0, "K_yx"): lambda p: mi.augustin_kernel(*yx(p), 2.0).value,
            (0.7, "J"): lambda p: mi.lp_kernel(np.array([p, 1 - p])[:, None] * W, 0.7, inner).value,
        }
        for (a, f), fn in sweeps.items():
            best = max(fn(p) for p in ps)
            assert cap.capacity(ch, f, a).value == pytest.approx(best, abs=1e-4), f


class TestReports:
    def test_bsc_all_equal(self, cfg):
        rep = cap.capacity_equalities_check(instances.bsc(0.2), 2, cfg)
        assert rep.status == "pass"
        vals = list(rep.values.values())
        assert max(vals) - min(vals) <= 1e-4
        d = rep.to_dict()
        assert set(d["values"]) == {"radius", "I_xy", "J", "K_xy", "K_yx", "I_yx"}

    def test_random_channel(self, rng, cfg):
        ch = instances.random_channel(rng, 3, 3)
        rep = cap.capacity_equalities_check(ch, 2, cfg)
        S = rep.values["radius"]
        for k in ("I_xy", "J", "K_xy"):
            assert abs(rep.values[k] - S) <= 1e-4
        ch = instances.random_channel(rng, 2, 3)
        rep = cap.capacity_equalities_check(ch, 1, cfg)
        vals = list(rep.values.values())
        assert max(vals) - min(vals) <= 1e-5

    def test_order_guard(self, cfg):
        with pytest.raises(UnsupportedOrderError):
            cap.capacity_equalities_check(instances.bsc(0.1), 0.8, cfg)
        with pytest.raises(UnsupportedOrderError):
            cap.capacity_equalities_check(instances.bsc(0.1), math.inf, cfg)

    def test_strict_failure_raises(self, monkeypatch, cfg):
        real = cap.capacity

        def broken(channel, functional, order, cfg=None, **kw):
            r = real(channel, functional, order, cfg, **kw)
            if functional == "K_xy":
                return cap.CapacityResult(r.value + 0.1, r.argmax_input)
            return r

        monkeypatch.setattr(cap, "capacity", broken)
        with pytest.raises(PropertyViolation) as err:
            cap.capacity_equalities_check(instances.bsc(0.2), 2, cfg)
        assert err.value.report.status == "fail"
        rep = cap.capacity_equalities_check(instances.bsc(0.2), 2, cfg, strict=False)
        assert rep.violations and rep.violations[0].startswith("|C_K_xy - S|")

    def test_lp_radius(self, cfg):
        rep = cap.lp_capacity_radius_check(instances.identity_channel(2), 0.5, cfg)
        assert rep.values["J"] == pytest.approx(LOG2, abs=1e-4)
        assert rep.values["radius"] == pytest.approx(LOG2, abs=1e-8)
        rep = cap.lp_capacity_radius_check(instances.bsc(0.25), 0.7, cfg)
        assert rep.status == "pass"
        rep = cap.lp_capacity_radius_check(instances.constant_channel([0.4, 0.6]), 0.7, cfg)
        assert rep.values["J"] == pytest.approx(0.0, abs=1e-8)
        assert rep.details["inner_excess"] <= 1e-10

    def test_lp_radius_domain(self, cfg):
        ch = instances.bsc(0.1)
        with pytest.raises(UnsupportedOrderError):
            cap.lp_capacity_radius_check(ch, 0.3, cfg)
        with pytest.raises(UnsupportedOrderError):
            cap.lp_capacity_radius_check(ch, 1.0, cfg)
        rep = cap.lp_capacity_radius_check(ch, 0.3, cfg, exploratory=True)
        assert rep.status == "exploratory"
