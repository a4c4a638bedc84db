from __future__ import annotations

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpplab import bounds
from tpplab.bounds import (
    ALPHA_TABLE,
    BoundReport,
    Formula,
    InapplicableBound,
    Provenance,
    alpha_from_tensor,
    alpha_interval,
    chapter6_report,
    conditional_full_kn,
    gamma_of,
    gamma_window,
    headline,
    log_factorial,
    minimize_formula,
    omega_abelian_tensor,
    omega_certificate,
    omega_simultaneous,
    omega_single,
    omega_wreath,
    power_family,
    triangle_alpha_exact,
    triangle_alpha_leading,
    wreath2,
)
from tpplab.chars import degree_set
from tpplab.groups import Cyclic, Symmetric


def independent_wreath_min(k: int, lo: int = 3, hi: int = 200) -> tuple:
    # same expression written out with log10 to cross-check base independence
    vals = [((6 * math.log10(n) - math.log10(2) - math.log10(k)) / (2 * math.log10(n - 1)), n)
            for n in range(lo, hi + 1)]
    v, n = min(vals)
    return n, v


def test_alpha_from_tensor():
    assert alpha_from_tensor(27, (3, 3, 3)) == pytest.approx(3)
    assert alpha_from_tensor(6, (2, 2, 2)) == pytest.approx(math.log(6) / math.log(2))
    assert alpha_from_tensor(10, (10, 1, 1)) == pytest.approx(3)
    with pytest.raises(InapplicableBound):
        alpha_from_tensor(10, (1, 1, 1))
    lo, hi = alpha_interval(6, (2, 2, 2))
    assert lo == 2 and hi == pytest.approx(2.584962500721156)


def test_gamma():
    assert gamma_of(degree_set(Symmetric(3))) == pytest.approx(math.log2(6), abs=1e-12)
    assert gamma_of(degree_set(Cyclic(9))) == math.inf
    assert gamma_of(degree_set(Symmetric(4))) == pytest.approx(math.log(24) / math.log(3))


@pytest.mark.parametrize("n", range(3, 9))
def test_gamma_window(n):
    ds = degree_set(Symmetric(n))
    lo, hi = gamma_window(ds)
    assert lo < gamma_of(ds) < hi


def test_omega_single():
    assert omega_single(2.2, 2.8) == pytest.approx(2.2 * 0.8 / 0.6)
    assert omega_single(2 + 1e-9, 2.8) == pytest.approx(2, abs=1e-6)
    with pytest.raises(InapplicableBound):
        omega_single(2.8, 2.8)
    with pytest.raises(InapplicableBound):
        omega_single(2.0, 2.8)
    assert omega_single(2.5, math.inf) == 2.5


def test_omega_certificate():
    assert omega_certificate(64, 64, 1, 3)
    assert not omega_certificate(6, 8, 2, 2.9)
    assert not omega_certificate(6, 8, 3, 2.9)
    with pytest.raises(ValueError):
        omega_certificate(6, 8, 1, 2)
    with pytest.raises(ValueError):
        omega_certificate(6, 8, 1, 3.5)


def test_abelian_tensor_and_simultaneous():
    r = omega_abelian_tensor(16**3, (15, 15, 15))
    assert r.value == pytest.approx(3 * math.log(16) / math.log(15))
    assert r.value == pytest.approx(3.0715, abs=1e-4)
    s = omega_simultaneous(16**3, 2, 15)
    assert s.value == pytest.approx(2.81553, abs=1e-5)
    assert omega_simultaneous(16**3, 1, 15).value == pytest.approx(r.value)
    assert omega_simultaneous(7**3, 7, 7).value == pytest.approx(2)
    assert omega_abelian_tensor(64, (4, 4, 4)).value == pytest.approx(3)
    assert omega_abelian_tensor(64, (4, 4, 3)).value > omega_abelian_tensor(64, (4, 4, 4)).value


def test_omega_wreath():
    r = omega_wreath(41**3, 2, [(40, 40, 40)] * 2)
    assert r.value == pytest.approx(2.92613048, abs=1e-8)
    assert r.provenance is Provenance.VERIFIED and r.assumption is None
    c = omega_wreath(6**3, 2, [(5, 5, 5)] * 2, k_n=8)
    assert c.value == pytest.approx(2.478495, abs=1e-6)
    assert c.provenance is Provenance.CONDITIONAL and "k_2" in c.assumption
    with pytest.raises(ValueError):
        omega_wreath(6**3, 2, [(5, 5, 5)] * 2, k_n=9)


def test_wreath_strictly_decreasing_in_k():
    vals = [omega_wreath(20**3, 2, [(19, 19, 19)] * 2, k_n=k).value for k in range(1, 9)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_triangle_alpha():
    assert triangle_alpha_exact(2) == pytest.approx(math.log(6) / math.log(2))
    assert triangle_alpha_exact(3) == pytest.approx(math.log(720) / math.log(12))
    assert all(triangle_alpha_exact(n) > 2 for n in range(2, 40))
    assert [round(triangle_alpha_leading(n), 5) for n in range(2, 11)] == ALPHA_TABLE


def test_log_factorial():
    for n in (0, 1, 5, 64, 1000):
        assert log_factorial(n) == pytest.approx(sum(math.log(k) for k in range(2, n + 1)), rel=1e-12)
    assert log_factorial(5000) == pytest.approx(sum(math.log(k) for k in range(2, 5001)), rel=1e-12)


def test_minimize_formula():
    n, v = minimize_formula("cyc3-r2", 3, 100)
    assert n == 16 and v == pytest.approx(2.81553827, abs=1e-8)
    n, v = minimize_formula("wreath2", 3, 200)
    assert (n, round(v, 8)) == (41, 2.92613048)
    n, v = minimize_formula("wreath2-k8", 3, 100)
    assert n == 6 and v == pytest.approx(2.478495, abs=1e-6)
    n, v = minimize_formula("conditional-2n", 3, 25)
    assert n == 6 and v == pytest.approx(2.012, abs=1e-3)
    with pytest.raises(ValueError):
        minimize_formula("nope", 3, 4)
    with pytest.raises(ValueError):
        minimize_formula("cyc3-r2", 5, 4)


def test_minimizer_ties_go_low():
    assert minimize_formula(lambda n: 0.0, 3, 9) == (3, 0.0)


@pytest.mark.parametrize("k", range(1, 9))
def test_k2_rows_against_independent_scan(k):
    n, v = independent_wreath_min(k)
    got_n, got_v = minimize_formula(wreath2, 3, 200, k=k)
    assert got_n == n and got_v == pytest.approx(v, abs=1e-12)


def test_conditional_formula_written_out():
    # (2^n 3n ln n - 4 ln(2^n!)) / (2^n n ln(n-1))
    for n in range(3, 10):
        N = 2**n
        direct = (N * 3 * n * math.log(n) - 4 * log_factorial(N)) / (N * n * math.log(n - 1))
        assert conditional_full_kn(n) == pytest.approx(direct, rel=1e-12)


def test_power_family_approaches_limit():
    vals = [power_family(16, m) for m in (1, 2, 4, 8, 12)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > bounds.power_family_limit(16)
    assert power_family(16, 1) == pytest.approx(wreath2(16))


@settings(max_examples=200, deadline=None)
@given(n=st.integers(3, 500), r=st.integers(1, 4))
def test_emitted_bounds_at_least_two(n, r):
    assert bounds.cyc3_r2(n) >= 2
    assert wreath2(n, r) >= 2
    assert omega_simultaneous(n**3, r, n - 1).value >= 2


def test_report_json_round_trip():
    r = omega_wreath(6**3, 2, [(5, 5, 5)] * 2, k_n=3, group="cyc(6)^3 wr sym(2)")
    d = json.loads(r.to_json())
    assert set(d) >= {"formula", "params", "value", "provenance"}
    assert BoundReport.from_dict(d) == r


def test_chapter6_report():
    reports = chapter6_report(verify=True)
    values = [round(r.value, 4) for r in reports if r.formula is Formula.WREATH_KN and "k2" in r.note]
    assert len(values) == 8
    assert any(r.formula is Formula.SIMULTANEOUS and abs(r.value - 2.81554) < 1e-5 for r in reports)
    cond = [r for r in reports if r.provenance is Provenance.CONDITIONAL]
    assert all(r.assumption for r in cond)
    assert any(abs(r.value - 2.012) < 1e-2 for r in cond)
    assert len([r for r in reports if r.formula is Formula.TRIANGLE_ALPHA]) == 9
    best = headline(reports)
    assert best.provenance is not Provenance.CONDITIONAL
    assert best.value >= 2
    for r in reports:
        if r.formula is not Formula.TRIANGLE_ALPHA:
            assert r.value >= 2
