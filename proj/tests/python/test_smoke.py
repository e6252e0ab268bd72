import math

import pytest

import qkdrate as qk


def h(x):
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def test_entropy_and_params():
    assert qk.binary_entropy(0.0) == 0.0
    assert qk.binary_entropy(0.05) == pytest.approx(0.28639695711595613, abs=1e-15)
    p = qk.ProtocolParams(0.1, 0.3)
    assert p.raw_key == pytest.approx(0.49 * 0.9)
    with pytest.raises(ValueError):
        qk.ProtocolParams(0.6, 0.1)


def test_inversion_hits_constraint():
    p = qk.ProtocolParams(0.1, 0.3)
    r = qk.s_by_inversion(qk.Basis.phase, p, 0.05, 1e-4)
    assert qk.exponent(qk.Basis.phase, r.s, p, 0.05) == pytest.approx(1e-4, abs=1e-9)
    report = qk.cross_check(qk.Basis.phase, p, 0.05, 1e-4)
    assert report.error == ""
    assert report.closed.branch == qk.Branch.interior
    assert report.discrepancy < 1e-6


def test_rates():
    point = qk.rate_asymmetric(qk.ProtocolParams(0.05, 0.1), qk.ErrorRates(0.05, 0.05), 1e-4)
    assert point.r_raw == pytest.approx(0.1953832558668005, abs=1e-9)
    sym = qk.rate_symmetric(0.5, qk.ErrorRates(0.05, 0.05), 1e-4)
    assert sym.p2 == 0.5
    assert sym.r < point.r
    opt = qk.basis_ratio_optimality_check(0.09, 1001)
    assert opt.a == pytest.approx(0.3, abs=opt.grid_step)


def test_optimizer_limit():
    res = qk.optimize_asymmetric(0.05, 0.0)
    assert res.best.r == pytest.approx(1 - 2 * h(0.05), abs=1e-6)
    assert res.coarse_best_r_raw <= res.best.r_raw
    rows = qk.sweep([0.05], 1e-4, [qk.Mode.symmetric], threads=1)
    assert len(rows) == 1 and rows[0].result is not None
    assert rows[0].result.argmax_p2 == 0.5


def test_finite_n_and_simulation():
    assert qk.hypergeom_log_pmf(20, 30, 2, 6) == pytest.approx(-2.250608358753277, abs=1e-12)
    layout = qk.make_layout(200, qk.ProtocolParams(0.2, 0.4), qk.Basis.phase)
    assert qk.verify_hypergeom_bound(layout, 0.1).max_violation <= 1e-9
    res = qk.b_exact(qk.Basis.bit, 10000, qk.ProtocolParams(0.5, 0.5), 0.05, 0.041308817393614389)
    assert res.log2_b == pytest.approx(16.253111676560721, abs=1e-7)
    table = qk.simulate_estimation(qk.CountLayout(100, 50, 50), 10, 2000, 42)
    again = qk.simulate_estimation(qk.CountLayout(100, 50, 50), 10, 2000, 42, threads=2)
    assert [c.count for c in table.cells] == [c.count for c in again.cells]
    assert sum(c.count for c in table.cells) == 2000
