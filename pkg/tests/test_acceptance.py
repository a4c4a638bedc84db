"""Acceptance criteria, one check per criterion at the stated tolerance.

Each check prints a PASS/FAIL line (collected into the pytest terminal
summary as well).  Run directly with ``python tests/test_acceptance.py``
for the bare report.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
import time

import numpy as np
import pytest

from tpplab import bounds
from tpplab.algebra import (
    SYM3_DEGREES,
    AlgebraElement,
    abelian_dft,
    abelian_idft,
    cyclic_factors,
    matmul_via_group,
    simultaneous_matmul,
    sym3_dft,
    sym3_idft,
    to_dense,
)
from tpplab.chars import d_prime, d_r_sum, degree_set
from tpplab.groups import Cyclic, DirectProduct, Symmetric, build_group, parse_group_spec, power
from tpplab.strassen import STRASSEN, OpCounter, op_count, strassen_2x2, strassen_recursive, verify_scheme
from tpplab.tpp import (
    IndexTriple,
    check_stpp,
    check_tpp,
    check_tpp_abelian_oracle,
    cyc_stpp_triples,
    triangle_subgroup_triple,
    wreath_triple,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []

# printed k2 table, kept separate from the library constant on purpose
PRINTED_K2 = [2.9261, 2.8163, 2.7351, 2.6700, 2.6142, 2.5647, 2.5200, 2.4785]
PRINTED_ALPHA = [3.88539, 3.18955, 2.94270, 2.81199, 2.72937, 2.67159, 2.62846, 2.59477, 2.56756]


def report(label: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail} ({seconds:.2f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def loops(A, B):
    A, B = np.asarray(A).tolist(), np.asarray(B).tolist()
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


# --------------------------------------------------------------------------
# 1. minima


def c1_minima():
    n1, v1 = bounds.minimize_formula("cyc3-r2", 3, 100)
    n2, v2 = bounds.minimize_formula("wreath2", 3, 200)
    n3, v3 = bounds.minimize_formula("conditional-2n", 3, 25)
    ok = (n1 == 16 and abs(v1 - 2.81553) <= 1e-4
          and n2 == 41 and abs(v2 - 2.92613048) <= 1e-6
          and n3 == 6 and abs(v3 - 2.012) <= 1e-2)
    return ok, f"(16, {v1:.6f}) (41, {v2:.8f}) conditional ({n3}, {v3:.4f})"


def c1_k2_table():
    rows = [round(bounds.minimize_formula(bounds.wreath2, 3, 200, k=k)[1], 4) for k in range(1, 9)]
    bad = [(k, got, want) for k, got, want in zip(range(1, 9), rows, PRINTED_K2) if got != want]
    detail = f"computed {rows}"
    if bad:
        detail += "; mismatched " + ", ".join(f"k={k} {g:.4f}!={w:.4f}" for k, g, w in bad)
    return not bad, detail


# --------------------------------------------------------------------------
# 2. alpha table


def c2_alpha_table():
    vals = [round(bounds.triangle_alpha_leading(n), 5) for n in range(2, 11)]
    return vals == PRINTED_ALPHA, str(vals)


# --------------------------------------------------------------------------
# 3. triples


def c3_triples():
    t0 = time.perf_counter()
    stpp = all(check_stpp(cyc_stpp_triples(n)) for n in range(2, 26))
    t_stpp = time.perf_counter() - t0
    t0 = time.perf_counter()
    tri = all(check_tpp(triangle_subgroup_triple(n)) for n in (2, 3, 4))
    t_tri = time.perf_counter() - t0
    t0 = time.perf_counter()
    wt = wreath_triple(cyc_stpp_triples(3))
    wr = check_tpp(wt)
    t_wr = time.perf_counter() - t0
    ok = stpp and tri and wr and t_stpp < 60 and t_tri < 600 and t_wr < 60
    return ok, (f"STPP n=2..25 {stpp} ({t_stpp:.1f}s); triangle n=2,3,4 {tri} ({t_tri:.1f}s); "
                f"wreath {wt.tensor} {wr} ({t_wr:.1f}s)")


# --------------------------------------------------------------------------
# 4. group-algebra multiplication


def c4_matmul():
    rng = np.random.default_rng(2024)
    triples = [cyc_stpp_triples(4)[0], cyc_stpp_triples(8)[0], cyc_stpp_triples(16)[0],
               triangle_subgroup_triple(2)]
    pairs = 0
    exact_ok = True
    dft_err = 0.0
    for t in triples:
        n, m, p = t.tensor
        for _ in range(30):
            A = rng.integers(-1000, 1001, (n, m))
            B = rng.integers(-1000, 1001, (m, p))
            exact_ok &= matmul_via_group(t, A, B).tolist() == loops(A, B)
            pairs += 1
        for _ in range(5):
            A = rng.normal(size=(n, m))
            B = rng.normal(size=(m, p))
            naive = matmul_via_group(t, A, B, mode="float")
            fast = matmul_via_group(t, A, B, mode="float", path="dft")
            dft_err = max(dft_err, float(np.abs(naive - fast).max()))
    fam = cyc_stpp_triples(4)
    sim_ok = True
    for _ in range(10):
        two = [(rng.integers(-100, 101, (3, 3)), rng.integers(-100, 101, (3, 3))) for _ in range(2)]
        got = simultaneous_matmul(fam, two)
        sim_ok &= all(C.tolist() == loops(A, B) for C, (A, B) in zip(got, two))
    ok = exact_ok and pairs >= 100 and dft_err < 1e-9 and sim_ok
    return ok, f"{pairs} exact pairs {exact_ok}; dft vs naive {dft_err:.1e}; simultaneous {sim_ok}"


# --------------------------------------------------------------------------
# 5. DFT properties


def dense_circular_convolution(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    for idx in itertools.product(*(range(n) for n in x.shape)):
        out += x[idx] * np.roll(y, idx, axis=tuple(range(x.ndim)))
    return out


def c5_dft():
    g = build_group(Symmetric(3))
    els = g.enumerate()
    rng = np.random.default_rng(5)
    rt, hom = 0.0, 0.0
    for _ in range(200):
        f = AlgebraElement(g, dict(zip(els, (rng.normal(size=6) + 1j * rng.normal(size=6)).tolist())))
        h = AlgebraElement(g, dict(zip(els, (rng.normal(size=6) + 1j * rng.normal(size=6)).tolist())))
        F, H = sym3_dft(f), sym3_dft(h)
        hom = max(hom, float(np.abs(sym3_dft(f * h) - F @ H).max()))
        rt = max(rt, sym3_idft(F, g).max_abs_diff(f))
    dims = sum(d * d for d in SYM3_DEGREES.values()) == 6
    ab_rt, ab_conv = 0.0, 0.0
    for n in range(1, 17):
        for k in range(1, 4):
            grp = build_group(power(Cyclic(n), k))
            size = grp.order
            f = AlgebraElement(grp, dict(zip(grp.enumerate(), rng.normal(size=size).tolist())))
            h = AlgebraElement(grp, dict(zip(grp.enumerate(), rng.normal(size=size).tolist())))
            F, H = abelian_dft(grp, f), abelian_dft(grp, h)
            ab_rt = max(ab_rt, abelian_idft(grp, F).max_abs_diff(f))
            if size <= 512:
                fh = f * h
            else:
                # direct convolution is slow in pure Python here; a dense numpy one stands in
                conv = dense_circular_convolution(to_dense(f), to_dense(h))
                _, flatten = cyclic_factors(grp)
                fh = AlgebraElement(grp, {x: conv[flatten(x)] for x in grp.enumerate()})
            ab_conv = max(ab_conv, float(np.abs(abelian_dft(grp, fh) - F * H).max()))
    ok = rt < 1e-9 and hom < 1e-9 and dims and ab_rt < 1e-9 and ab_conv < 1e-9
    return ok, (f"Sym_3 round trip {rt:.1e}, multiplicative {hom:.1e}, 1+1+4=6 {dims}; "
                f"abelian n<=16,k<=3 round trip {ab_rt:.1e}, convolution {ab_conv:.1e}")


# --------------------------------------------------------------------------
# 6. Strassen


def c6_strassen():
    exhaustive = all(
        strassen_2x2([list(b[0:2]), list(b[2:4])], [list(b[4:6]), list(b[6:8])])
        == loops([b[0:2], b[2:4]], [b[4:6], b[6:8]])
        for b in itertools.product((0, 1), repeat=8)
    ) and verify_scheme(STRASSEN)
    rng = np.random.default_rng(6)
    rec_ok, counts_ok = True, True
    for k in range(1, 6):
        n = 2**k
        for _ in range(200):
            A = rng.integers(-1000, 1001, (n, n))
            B = rng.integers(-1000, 1001, (n, n))
            c = OpCounter()
            rec_ok &= strassen_recursive(A, B, counter=c).tolist() == loops(A, B)
            counts_ok &= c.mults == 7**k
    t_ok = op_count(2) == 25 and op_count(4) == 247
    ok = exhaustive and rec_ok and counts_ok and t_ok
    return ok, (f"0/1 exhaustive {exhaustive}; sizes 2..32 x200 {rec_ok}; mults 7^k {counts_ok}; "
                f"T(2)={op_count(2)} T(4)={op_count(4)}")


# --------------------------------------------------------------------------
# 7. character degrees


def c7_chars():
    sq_sym = all(d_r_sum(degree_set(Symmetric(n)), 2) == math.factorial(n) for n in range(1, 11))
    abelian_specs = ["cyc(1)", "cyc(12)", "cyc(4)^3", "cyc(2) x cyc(6)", "cyc(41)^3", "cyc(3)^2 x cyc(5)"]
    sq_ab = all(d_r_sum(degree_set(parse_group_spec(s)), 2) == build_group(parse_group_spec(s)).order
                for s in abelian_specs)
    grid = (1, 1.5, 2, 2.5, 3)
    rel = 1 + 1e-12
    sets = [degree_set(Symmetric(n)) for n in range(1, 9)]
    rnd = random.Random(7)
    for _ in range(10):
        mods = [rnd.randint(1, 9) for _ in range(rnd.randint(1, 3))]
        sets.append(degree_set(DirectProduct(tuple(Cyclic(m) for m in mods))))
    ineq = True
    for ds in sets:
        D = lambda r, ds=ds: d_r_sum(ds, r)  # noqa: E731
        for r in grid:
            ineq &= D(r) <= D(1) ** r * rel
            if r >= 2:
                ineq &= D(r) <= d_prime(ds) ** (r - 2) * ds.order * rel
            for s in grid:
                ineq &= D(r + s) <= D(r) * D(s) * rel
                if r <= s:
                    ineq &= D(s) ** (1 / s) <= D(r) ** (1 / r) * rel
    ds3 = degree_set(Symmetric(3))
    gam = bounds.gamma_of(ds3)
    lo, hi = bounds.gamma_window(ds3)
    gam_ok = abs(gam - math.log2(6)) <= 1e-9 and lo < gam < hi
    ok = sq_sym and sq_ab and ineq and gam_ok
    return ok, (f"sum d^2: Sym_n<=10 {sq_sym}, abelian {sq_ab}; D_r inequalities {ineq}; "
                f"gamma(Sym_3)={gam:.10f} in ({lo:.4f}, {hi:.4f})")


# --------------------------------------------------------------------------
# 8. property suites


def random_triple(group, rnd, max_size=4):
    els = group.enumerate()
    sets = [rnd.sample(els, rnd.randint(1, min(max_size, len(els)))) for _ in range(3)]
    return IndexTriple(group, *sets)


def c8_properties():
    rnd = random.Random(8)
    abelian = [build_group(parse_group_spec(s)) for s in
               ("cyc(12)", "cyc(2)^3", "cyc(3) x cyc(4)", "cyc(4)^2", "cyc(5)^2", "cyc(2)^4")]
    nonab = [build_group(parse_group_spec(s)) for s in ("sym(3)", "sym(4)", "cyc(2) wr sym(2)")]
    oracle_ok = True
    for _ in range(500):
        t = random_triple(rnd.choice(abelian), rnd)
        oracle_ok &= check_tpp(t) == check_tpp_abelian_oracle(t)
    size_ok, alpha_ok, passing = True, True, 0
    for _ in range(500):
        t = random_triple(rnd.choice(abelian + nonab), rnd)
        if not check_tpp(t):
            continue
        passing += 1
        G = t.group.order
        n, m, p = t.tensor
        size_ok &= n * m <= G and n * p <= G and m * p <= G and n * m * p < G**1.5
        if n * m * p > 1:
            alpha_ok &= bounds.alpha_from_tensor(G, t.tensor) > 2
    for t in (triangle_subgroup_triple(2), triangle_subgroup_triple(3), *cyc_stpp_triples(16)):
        alpha_ok &= bounds.alpha_from_tensor(t.group.order, t.tensor) > 2
    alpha_ok &= all(bounds.triangle_alpha_exact(n) > 2 for n in range(2, 60))
    ok = oracle_ok and size_ok and alpha_ok and passing > 0
    return ok, (f"abelian oracle x500 {oracle_ok}; size bounds on {passing} TPP triples {size_ok}; "
                f"alpha > 2 {alpha_ok}")


# --------------------------------------------------------------------------


CRITERIA = [
    ("1a bound minima", c1_minima, 5.0),
    ("1b k2 table to 4 decimals", c1_k2_table, 5.0),
    ("2 alpha table", c2_alpha_table, 1.0),
    ("3 triple verification", c3_triples, 720.0),
    ("4 group-algebra multiplication", c4_matmul, None),
    ("5 DFT properties", c5_dft, None),
    ("6 Strassen", c6_strassen, None),
    ("7 character degrees", c7_chars, None),
    ("8 property suites", c8_properties, None),
]

# two printed rows disagree with the formula's true minima; see the decisions ledger
KNOWN_UNATTAINABLE = {"1b k2 table to 4 decimals"}


def _run(label, fn, limit):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail += f"; over the {limit:.0f}s budget"
    report(label, ok, detail, dt)
    return ok, detail


@pytest.mark.parametrize(
    "label,fn,limit",
    [
        pytest.param(
            *c,
            id=c[0].split()[0],
            marks=pytest.mark.xfail(strict=True, reason="printed k2 rows 2 and 4 are not the formula's minima")
            if c[0] in KNOWN_UNATTAINABLE else (),
        )
        for c in CRITERIA
    ],
)
def test_criterion(label, fn, limit):
    ok, detail = _run(label, fn, limit)
    assert ok, detail


if __name__ == "__main__":
    results = [_run(*c)[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
