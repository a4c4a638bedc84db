"""Upper bounds on the matrix multiplication exponent omega.

Every logarithm is natural; the quantities are ratios of logs so the base
does not matter.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .chars import DegreeSet


class Provenance(str, enum.Enum):
    VERIFIED = "verified-triple"
    PAPER_TABLE = "paper-table"
    CONDITIONAL = "conditional"


class Formula(str, enum.Enum):
    ABELIAN_TENSOR = "ABELIAN_TENSOR"
    SIMULTANEOUS = "SIMULTANEOUS"
    WREATH_KN = "WREATH_KN"
    SINGLE_ALPHA_GAMMA = "SINGLE_ALPHA_GAMMA"
    CERTIFICATE_T = "CERTIFICATE_T"
    TRIANGLE_ALPHA = "TRIANGLE_ALPHA"
    STRASSEN_RECURSION = "STRASSEN_RECURSION"


class InapplicableBound(ValueError):
    """The hypothesis of a bound formula does not hold."""


@dataclass
class BoundReport:
    formula: Formula
    params: dict
    value: float
    provenance: Provenance
    assumption: Optional[str] = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "formula": self.formula.value,
            "params": self.params,
            "value": self.value,
            "provenance": self.provenance.value,
        }
        if self.assumption:
            d["assumption"] = self.assumption
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            Formula(d["formula"]),
            dict(d["params"]),
            float(d["value"]),
            Provenance(d["provenance"]),
            d.get("assumption"),
            d.get("note", ""),
        )


def log_factorial(n: int) -> float:
    """``ln(n!)``; exact big-integer log for small ``n``, lgamma beyond."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= 1000:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1)


# --------------------------------------------------------------------------
# alpha, gamma and the single-group bounds


def _tensor_size(tensor) -> int:
    n, m, p = tensor
    return n * m * p


def alpha_from_tensor(group_order: int, tensor) -> float:
    """``3 ln|G| / ln(nmp)``: upper bound on the pseudoexponent from a realized tensor."""
    size = _tensor_size(tensor)
    if size <= 1:
        raise InapplicableBound("the tensor <1,1,1> gives no information")
    return 3 * math.log(group_order) / math.log(size)


def alpha_interval(group_order: int, tensor) -> tuple:
    """``(2, upper)``: a found tensor bounds alpha above; maximality is not certified."""
    return 2.0, alpha_from_tensor(group_order, tensor)


def gamma_of(ds: DegreeSet) -> float:
    """``ln|G| / ln d'``; infinite for abelian groups."""
    if ds.max_degree == 1:
        return math.inf
    return math.log(ds.order) / math.log(ds.max_degree)


def gamma_window(ds: DegreeSet) -> tuple:
    """Open interval that contains gamma for any non-abelian group."""
    G = ds.order
    c = ds.class_number
    return 2 * math.log(G) / math.log(G - 1), 2 * math.log(G) / (math.log(G) - math.log(c))


def omega_single(alpha: float, gamma: float) -> float:
    """``alpha (gamma - 2) / (gamma - alpha)``, valid when ``2 < alpha < gamma``."""
    if not alpha < gamma:
        raise InapplicableBound(f"need alpha < gamma, got alpha={alpha}, gamma={gamma}")
    if alpha <= 2:
        raise InapplicableBound("alpha must exceed 2")
    if math.isinf(gamma):
        return alpha
    return alpha * (gamma - 2) / (gamma - alpha)


def omega_certificate(group_order: int, z_prime: int, d_prime: int, t: float) -> bool:
    """True when ``z'^(1/3) > d'`` and ``|G| <= z'^(t/3) / d'^(t-2)``; then omega <= t.

    ``t = 3`` is accepted as the boundary case.
    """
    if not 2 < t <= 3:
        raise ValueError("t must lie in (2, 3]")
    # compare in logs to dodge overflow; the first clause is z' > d'^3 in integers
    if not z_prime > d_prime**3:
        return False
    lhs = math.log(group_order)
    rhs = t / 3 * math.log(z_prime) - (t - 2) * math.log(d_prime)
    return lhs <= rhs + 1e-12 * max(1.0, abs(rhs))


def omega_abelian_tensor(group_order: int, tensor, *, group: str = "",
                         provenance: Provenance = Provenance.VERIFIED) -> BoundReport:
    """``omega <= 3 ln|G| / ln(nmp)`` for an abelian group realizing ``<n,m,p>``."""
    value = alpha_from_tensor(group_order, tensor)
    return BoundReport(
        Formula.ABELIAN_TENSOR,
        {"group": group, "order": group_order, "tensor": list(tensor)},
        value,
        provenance,
    )


def omega_simultaneous(group_order: int, r: int, n: int, *, group: str = "",
                       provenance: Provenance = Provenance.VERIFIED) -> BoundReport:
    """``omega <= (ln|G| - ln r) / ln n`` for ``r`` simultaneous ``<n,n,n>``."""
    if n < 2 or r < 1:
        raise InapplicableBound("need n >= 2 and r >= 1")
    value = (math.log(group_order) - math.log(r)) / math.log(n)
    return BoundReport(
        Formula.SIMULTANEOUS,
        {"group": group, "order": group_order, "r": r, "n": n},
        value,
        provenance,
    )


def wreath_value(h_order: int, n: int, triple_sizes: Sequence[tuple], k_n: float = 1) -> float:
    """``(n ln|H| - ln n! - ln k_n) / ln (prod m_i p_i q_i)^(1/3)``."""
    if len(triple_sizes) != n:
        raise ValueError(f"need {n} triple sizes, got {len(triple_sizes)}")
    log_size = sum(math.log(_tensor_size(s)) for s in triple_sizes) / 3
    if log_size <= 0:
        raise InapplicableBound("triples must not all be <1,1,1>")
    return (n * math.log(h_order) - log_factorial(n) - math.log(k_n)) / log_size


def omega_wreath(h_order: int, n: int, triple_sizes: Sequence[tuple], k_n: int = 1,
                 *, verified_k: int = 1, group: str = "") -> BoundReport:
    """Wreath bound for ``H wr Sym_n``; conditional when ``k_n`` exceeds the verified count."""
    if not 1 <= k_n <= math.factorial(n) ** 3:
        raise ValueError("k_n must lie in [1, (n!)^3]")
    value = wreath_value(h_order, n, triple_sizes, k_n)
    conditional = k_n > verified_k
    return BoundReport(
        Formula.WREATH_KN,
        {"group": group, "h_order": h_order, "n": n,
         "triple_sizes": [list(s) for s in triple_sizes], "k_n": k_n},
        value,
        Provenance.CONDITIONAL if conditional else Provenance.VERIFIED,
        assumption=f"k_{n} = {k_n} permuted triples satisfy the STPP" if conditional else None,
    )


# --------------------------------------------------------------------------
# Triangle groups


def triangle_alpha_exact(n: int) -> float:
    """``ln((n(n+1)/2)!) / ln(prod_{k<=n} k!)``."""
    if n < 2:
        raise ValueError("need n >= 2")
    num = math.log(math.factorial(n * (n + 1) // 2))
    den = math.log(math.prod(math.factorial(k) for k in range(1, n + 1)))
    return num / den


def triangle_alpha_leading(n: int) -> float:
    """Leading term ``2 + (2 - ln 2) / ln n``."""
    if n < 2:
        raise ValueError("need n >= 2")
    return 2 + (2 - math.log(2)) / math.log(n)


# --------------------------------------------------------------------------
# Named formulas of one integer variable, and their minimizer


def cyc3_r2(n: int) -> float:
    """Two simultaneous ``<n-1,n-1,n-1>`` in ``Cyc_n^3``."""
    return (3 * math.log(n) - math.log(2)) / math.log(n - 1)


def wreath2(n: int, k: float = 1) -> float:
    """``Cyc_n^3 wr Sym_2`` with ``k`` permuted triples."""
    return (6 * math.log(n) - math.log(2) - math.log(k)) / (2 * math.log(n - 1))


def power_family(n: int, m: int, log_k: float = 0.0) -> float:
    """``(Cyc_n^3)^m wr Sym_{2^m}`` with ``ln k = log_k``."""
    N = 2**m
    return (N * 3 * m * math.log(n) - log_factorial(N) - log_k) / (N * m * math.log(n - 1))


def power_family_limit(n: int) -> float:
    """Limit of ``power_family(n, m)`` as ``m`` grows (k = 1)."""
    return cyc3_r2(n)


def conditional_full_kn(n: int) -> float:
    """``(Cyc_n^3)^n wr Sym_{2^n}`` assuming ``k = (2^n !)^3``."""
    return power_family(n, n, log_k=3 * log_factorial(2**n))


FORMULAS: dict = {
    "cyc3-r2": (cyc3_r2, "(3 ln n - ln 2) / ln(n-1)"),
    "wreath2": (wreath2, "(6 ln n - ln 2 - ln k) / (2 ln(n-1))"),
    "wreath2-k8": (lambda n: wreath2(n, 8), "(6 ln n - ln 16) / (2 ln(n-1))"),
    "conditional-2n": (conditional_full_kn, "(2^n 3n ln n - 4 ln(2^n!)) / (2^n n ln(n-1))"),
    "triangle-alpha": (triangle_alpha_exact, "ln((n(n+1)/2)!) / ln(prod k!)"),
    "triangle-alpha-leading": (triangle_alpha_leading, "2 + (2 - ln 2) / ln n"),
}


def minimize_formula(f: Callable[[int], float] | str, lo: int, hi: int, **params) -> tuple:
    """Exhaustive scan of ``f`` over ``lo..hi``; ties go to the smallest ``n``."""
    if isinstance(f, str):
        try:
            f = FORMULAS[f][0]
        except KeyError:
            raise ValueError(f"unknown formula {f!r}; known: {sorted(FORMULAS)}") from None
    if lo > hi:
        raise ValueError("empty range")
    best_n, best = None, math.inf
    for n in range(lo, hi + 1):
        v = f(n, **params)
        if v < best:
            best_n, best = n, v
    return best_n, best


# --------------------------------------------------------------------------
# Full bound report


K2_TABLE = [2.9261, 2.8163, 2.7351, 2.6700, 2.6142, 2.5647, 2.5200, 2.4785]
ALPHA_TABLE = [3.88539, 3.18955, 2.94270, 2.81199, 2.72937, 2.67159, 2.62846, 2.59477, 2.56756]


def k2_table(lo: int = 3, hi: int = 200) -> list:
    """``(k, argmin n, min value)`` for ``k = 1..8``."""
    return [(k, *minimize_formula(wreath2, lo, hi, k=k)) for k in range(1, 9)]


def chapter6_report(verify: bool = True) -> list:
    """Every named bound, plus the alpha table and the Strassen baseline, as BoundReports.

    With ``verify`` the STPP families behind the verified rows are checked.
    """
    from .tpp import check_stpp, cyc_stpp_triples

    reports = []

    n16, v16 = minimize_formula(cyc3_r2, 3, 100)
    ok16 = check_stpp(cyc_stpp_triples(n16)) if verify else True
    r = omega_simultaneous(n16**3, 2, n16 - 1, group=f"cyc({n16})^3",
                           provenance=Provenance.VERIFIED if ok16 else Provenance.CONDITIONAL)
    r.note = "two simultaneous <15,15,15>"
    reports.append(r)

    n41, _ = minimize_formula(wreath2, 3, 200)
    ok41 = check_stpp(cyc_stpp_triples(n41)) if verify else True
    for k, n, _ in k2_table():
        rep = omega_wreath(n**3, 2, [(n - 1,) * 3] * 2, k_n=k, verified_k=1 if ok41 else 0,
                           group=f"cyc({n})^3 wr sym(2)")
        rep.note = f"k2 table row k={k}"
        reports.append(rep)

    reports.append(BoundReport(
        Formula.WREATH_KN,
        {"group": "(cyc(n)^3)^m wr sym(2^m)", "n": 16, "m": "limit"},
        power_family_limit(16),
        Provenance.PAPER_TABLE,
        note="limit m -> infinity of the power-family bound with k = 1",
    ))

    n_c, v_c = minimize_formula(conditional_full_kn, 3, 25)
    reports.append(BoundReport(
        Formula.WREATH_KN,
        {"group": f"(cyc({n_c})^3)^{n_c} wr sym({2**n_c})", "n": n_c, "k": f"({2**n_c}!)^3"},
        v_c,
        Provenance.CONDITIONAL,
        assumption=f"all ({2**n_c}!)^3 permuted triples satisfy the STPP",
    ))

    for n, _ in zip(range(2, 11), ALPHA_TABLE):
        reports.append(BoundReport(
            Formula.TRIANGLE_ALPHA,
            {"group": f"tri({n})", "n": n, "exact_ratio": triangle_alpha_exact(n)},
            triangle_alpha_leading(n),
            Provenance.PAPER_TABLE,
            note="leading term 2 + (2 - ln 2)/ln n; alpha bound, not an omega bound",
        ))

    from .strassen import STRASSEN, verify_scheme

    ok = verify_scheme(STRASSEN, samples=20) if verify else True
    reports.append(BoundReport(
        Formula.STRASSEN_RECURSION,
        {"scheme": "strassen", "rank": 7, "block": 2},
        math.log(7) / math.log(2),
        Provenance.VERIFIED if ok else Provenance.CONDITIONAL,
        note="verified object is the rank-7 bilinear scheme",
    ))
    return reports


def headline(reports: Sequence[BoundReport]) -> BoundReport:
    """Best group-theoretic omega bound among non-conditional reports.

    Alpha rows are not omega bounds and the Strassen row is the classical
    baseline, so both are left out.
    """
    skip = (Formula.TRIANGLE_ALPHA, Formula.STRASSEN_RECURSION)
    candidates = [
        r for r in reports
        if r.provenance is not Provenance.CONDITIONAL and r.formula not in skip
    ]
    return min(candidates, key=lambda r: r.value)


def summary_rows(reports: Sequence[BoundReport]) -> list:
    """The three unconditional group-theoretic rows: wreath k=1, Cyc_16^3, power-family limit."""
    wreath = next(r for r in reports if r.formula is Formula.WREATH_KN
                  and r.params.get("k_n") == 1)
    simul = next(r for r in reports if r.formula is Formula.SIMULTANEOUS)
    family = next(r for r in reports if r.formula is Formula.WREATH_KN
                  and r.params.get("m") == "limit")
    return [wreath, simul, family]
