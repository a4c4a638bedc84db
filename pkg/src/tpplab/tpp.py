"""Index triples, quotient sets and the (simultaneous) triple product property."""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .groups import (
    Cyclic,
    DirectProduct,
    Group,
    GroupError,
    TriangleSymmetric,
    UnsupportedGroup,
    Wreath,
    build_group,
    power,
    triangle_set,
)


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class Tensor:
    n: int
    m: int
    p: int

    @property
    def size(self) -> int:
        return self.n * self.m * self.p

    @property
    def mean_size(self) -> float:
        return self.size ** (1 / 3)

    def __mul__(self, other: "Tensor") -> "Tensor":
        return Tensor(self.n * other.n, self.m * other.m, self.p * other.p)

    def __iter__(self):
        return iter((self.n, self.m, self.p))

    def __str__(self) -> str:
        return f"<{self.n},{self.m},{self.p}>"


def _as_subset(group: Group, elements: Iterable, name: str) -> tuple:
    out = tuple(elements)
    if not out:
        raise GroupError(f"subset {name} is empty")
    if len(set(out)) != len(out):
        raise GroupError(f"subset {name} has repeated elements")
    for x in out:
        group.check(x)
    return out


@dataclass(frozen=True)
class IndexTriple:
    """Three subsets of one group.  Matrix indices follow the stored order."""

    group: Group
    S: tuple
    T: tuple
    U: tuple

    def __post_init__(self):
        for name in "STU":
            object.__setattr__(self, name, _as_subset(self.group, getattr(self, name), name))

    @property
    def tensor(self) -> Tensor:
        return Tensor(len(self.S), len(self.T), len(self.U))

    @property
    def sets(self) -> tuple:
        return (self.S, self.T, self.U)


@dataclass(frozen=True)
class TripleFamily:
    group: Group
    triples: tuple

    def __post_init__(self):
        triples = tuple(self.triples)
        if not triples:
            raise GroupError("triple family is empty")
        if any(t.group != self.group for t in triples):
            raise GroupError("all triples of a family must live in the same group")
        object.__setattr__(self, "triples", triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __getitem__(self, i):
        return self.triples[i]


@dataclass(frozen=True)
class Violation:
    """Witness ``q1 q2 q3 = 1`` breaking the (S)TPP; ``indices`` is ``(i, j, k)`` for STPP."""

    q1: object
    q2: object
    q3: object
    indices: Optional[tuple] = None


# --------------------------------------------------------------------------
# Quotient sets


def quotient_set(group: Group, S: Iterable) -> frozenset:
    """Right quotient set ``{s' s^-1 : s, s' in S}``."""
    return pair_quotient_set(group, S, S)


def pair_quotient_set(group: Group, X: Iterable, Y: Iterable) -> frozenset:
    """``{x y^-1 : x in X, y in Y}``."""
    mul = group.mul
    inv_y = [group.inv(y) for y in Y]
    return frozenset(mul(x, yi) for x in X for yi in inv_y)


# --------------------------------------------------------------------------
# q1 q2 q3 = 1 solver


def _worker_count(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("TPPLAB_THREADS", "1")))
    except ValueError:
        return 1


def _scan(group: Group, A: Sequence, B: Sequence, C: frozenset, skip_trivial: bool):
    mul, inv, e = group.mul, group.inv, group.identity
    for x in A:
        for y in B:
            z = inv(mul(x, y))
            if z in C and not (skip_trivial and x == e and y == e):
                return x, y, z
    return None


def _scan_chunk(args):
    return _scan(*args)


_PARALLEL_THRESHOLD = 2_000_000


def solve_product_one(
    group: Group,
    Q1: frozenset,
    Q2: frozenset,
    Q3: frozenset,
    *,
    skip_trivial: bool = True,
    workers: Optional[int] = None,
) -> Optional[tuple]:
    """Find ``(q1, q2, q3)`` in ``Q1 x Q2 x Q3`` with ``q1 q2 q3 = 1``.

    The all-identity solution is ignored when ``skip_trivial``.  Costs
    ``|A||B|`` products for the cheapest cyclic rotation ``(A, B, C)``.
    """
    sets = (Q1, Q2, Q3)
    # q1 q2 q3 = 1 iff q2 q3 q1 = 1 iff q3 q1 q2 = 1
    rot = min(range(3), key=lambda r: len(sets[r]) * len(sets[(r + 1) % 3]))
    A = sorted(sets[rot])
    B = sorted(sets[(rot + 1) % 3])
    C = sets[(rot + 2) % 3]

    nworkers = _worker_count(workers)
    if nworkers > 1 and len(A) * len(B) >= _PARALLEL_THRESHOLD and len(A) > 1:
        size = math.ceil(len(A) / (4 * nworkers))
        chunks = [(group, A[i:i + size], B, C, skip_trivial) for i in range(0, len(A), size)]
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            # map preserves chunk order, so the reported witness is partition independent
            hit = next((h for h in pool.map(_scan_chunk, chunks) if h is not None), None)
    else:
        hit = _scan(group, A, B, C, skip_trivial)
    if hit is None:
        return None
    x, y, z = hit
    # undo the rotation
    out = [None, None, None]
    out[rot], out[(rot + 1) % 3], out[(rot + 2) % 3] = x, y, z
    return tuple(out)


# --------------------------------------------------------------------------
# TPP / STPP


def find_tpp_violation(t: IndexTriple, workers: Optional[int] = None) -> Optional[Violation]:
    g = t.group
    Q = [quotient_set(g, X) for X in t.sets]
    hit = solve_product_one(g, *Q, workers=workers)
    return None if hit is None else Violation(*hit)


def check_tpp(t: IndexTriple, workers: Optional[int] = None) -> bool:
    """True iff ``q1 q2 q3 = 1`` over the quotient sets forces ``q1 = q2 = q3 = 1``."""
    return find_tpp_violation(t, workers) is None


def check_tpp_abelian_oracle(t: IndexTriple) -> bool:
    """Injectivity of ``(s, t, u) -> s t u``; only valid for abelian groups."""
    g = t.group
    if not g.is_abelian:
        raise UnsupportedGroup(f"{g.spec} is not abelian")
    if t.tensor.size > g.order:
        return False
    seen = set()
    mul = g.mul
    for s in t.S:
        for x in t.T:
            st = mul(s, x)
            for u in t.U:
                y = mul(st, u)
                if y in seen:
                    return False
                seen.add(y)
    return True


def find_stpp_violation(fam: TripleFamily, workers: Optional[int] = None) -> Optional[Violation]:
    g = fam.group
    for i, t in enumerate(fam):
        bad = find_tpp_violation(t, workers)
        if bad is not None:
            return Violation(bad.q1, bad.q2, bad.q3, (i, i, i))
    r = len(fam)
    qs, qt, qu = {}, {}, {}

    def q(cache, which, a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = pair_quotient_set(g, fam[a].sets[which], fam[b].sets[which])
        return cache[key]

    for i, j, k in itertools.product(range(r), repeat=3):
        if i == j == k:
            continue
        hit = solve_product_one(
            g, q(qs, 0, i, j), q(qt, 1, j, k), q(qu, 2, k, i),
            skip_trivial=False, workers=workers,
        )
        if hit is not None:
            return Violation(*hit, (i, j, k))
    return None


def check_stpp(fam: TripleFamily, workers: Optional[int] = None) -> bool:
    """Simultaneous triple product property of a family of triples."""
    return find_stpp_violation(fam, workers) is None


# --------------------------------------------------------------------------
# Constructions


def permute_triple(t: IndexTriple, perm: Sequence[int]) -> IndexTriple:
    """Reorder ``(S, T, U)``: output position ``i`` holds input set ``perm[i]``."""
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"{perm!r} is not a permutation of (0, 1, 2)")
    sets = t.sets
    return IndexTriple(t.group, *(sets[k] for k in perm))


def product_triple(t1: IndexTriple, t2: IndexTriple) -> IndexTriple:
    """Cartesian triple in ``G1 x G2``; TPP is preserved."""
    g = build_group(DirectProduct((t1.group.spec, t2.group.spec)))
    sets = [[(a, b) for a in X for b in Y] for X, Y in zip(t1.sets, t2.sets)]
    return IndexTriple(g, *sets)


def product_family(f1: TripleFamily, f2: TripleFamily) -> TripleFamily:
    """All ``r1 * r2`` pairwise products; STPP is preserved."""
    triples = [product_triple(a, b) for a in f1 for b in f2]
    return TripleFamily(triples[0].group, tuple(triples))


def trivial_triple(group: Group) -> IndexTriple:
    """``(G, {1}, {1})``, realizing ``<|G|, 1, 1>``."""
    e = group.identity
    return IndexTriple(group, group.enumerate(), (e,), (e,))


def wreath_triple(fam: TripleFamily) -> IndexTriple:
    """``(prod S_i wr Sym_n, prod T_i wr Sym_n, prod U_i wr Sym_n)`` for an n-triple family."""
    return wreath_family(fam, [((), (), ())])[0]


def wreath_family(fam: TripleFamily, perm_triples: Sequence[tuple]) -> TripleFamily:
    """Permuted wreath triples, one per ``(sigma, tau, upsilon)`` in ``perm_triples``.

    Triple ``j`` places ``S_{sigma_j(i)}`` in coordinate ``i`` (likewise T, U).
    An empty tuple stands for the identity permutation.
    """
    n = len(fam)
    g = build_group(Wreath(fam.group.spec, n))
    top = g.top.enumerate()
    ident = tuple(range(n))
    out = []
    for perms in perm_triples:
        if len(perms) != 3:
            raise ValueError("need a (sigma, tau, upsilon) triple of permutations")
        sets = []
        for which, perm in enumerate(perms):
            perm = tuple(perm) or ident
            if sorted(perm) != list(ident):
                raise ValueError(f"{perm!r} is not a permutation of {n} points")
            factors = [fam[perm[i]].sets[which] for i in range(n)]
            sets.append([(h, mu) for h in itertools.product(*factors) for mu in top])
        out.append(IndexTriple(g, *sets))
    return TripleFamily(g, tuple(out))


def cyc_stpp_triples(n: int) -> TripleFamily:
    """The two axis triples in ``Cyc_n^3`` realizing ``<n-1, n-1, n-1>`` twice."""
    if n < 2:
        raise ValueError("need n >= 2")
    g = build_group(power(Cyclic(n), 3))
    axis = [
        [(a, 0, 0) for a in range(1, n)],
        [(0, a, 0) for a in range(1, n)],
        [(0, 0, a) for a in range(1, n)],
    ]
    t1 = IndexTriple(g, axis[0], axis[1], axis[2])
    t2 = IndexTriple(g, axis[1], axis[2], axis[0])
    return TripleFamily(g, (t1, t2))


def triangle_fixing_subgroup(n: int, coord: int) -> list:
    """Permutations of the triangle set that preserve coordinate ``coord`` of every point."""
    pts = triangle_set(n)
    blocks = {}
    for idx, x in enumerate(pts):
        blocks.setdefault(x[coord], []).append(idx)
    blocks = list(blocks.values())
    out = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        img = [0] * len(pts)
        for block, images in zip(blocks, choice):
            for src, dst in zip(block, images):
                img[src] = dst
        out.append(tuple(img))
    out.sort()
    return out


def triangle_subgroup_triple(n: int) -> IndexTriple:
    """The three coordinate-fixing subgroups of ``Sym(Delta_n)``."""
    g = build_group(TriangleSymmetric(n))
    return IndexTriple(g, *(triangle_fixing_subgroup(n, i) for i in range(3)))


# --------------------------------------------------------------------------
# k_n harness for permuted wreath families


def search_kn(fam: TripleFamily, limit: Optional[int] = None, workers: Optional[int] = None) -> list:
    """Greedy lower bound for k_n: permutation triples whose wreath family stays STPP.

    Candidates are scanned in lexicographic order of ``(sigma, tau, upsilon)``
    with the identity triple first.  The result certifies ``k_n >= len(result)``
    and makes no maximality claim.
    """
    n = len(fam)
    perms = list(itertools.permutations(range(n)))
    chosen: list = []
    for cand in itertools.product(perms, repeat=3):
        if limit is not None and len(chosen) >= limit:
            break
        trial = chosen + [cand]
        if check_stpp(wreath_family(fam, trial), workers):
            chosen = trial
    return chosen


# --------------------------------------------------------------------------
# Search


@dataclass
class SearchResult:
    triple: IndexTriple
    exhaustive: bool
    examined: int
    budget_exhausted: bool = False

    @property
    def tensor(self) -> Tensor:
        return self.triple.tensor


EXHAUSTIVE_ORDER = 12
EXHAUSTIVE_SUBSET = 4


def _size_profiles(order: int, max_size: int, abelian: bool) -> list:
    """Size triples ``a >= b >= c`` allowed by the TPP size bounds, largest product first."""
    out = []
    for a in range(1, max_size + 1):
        for b in range(1, a + 1):
            for c in range(1, b + 1):
                if a * b > order or (abelian and a * b * c > order):
                    continue
                if (a * b * c) ** 2 >= order**3:
                    continue
                out.append((a, b, c))
    out.sort(key=lambda s: (-(s[0] * s[1] * s[2]), s))
    return out


def _exhaustive(group: Group, elements: list, max_size: int) -> tuple:
    """Largest TPP triple with all subset sizes ``<= max_size``.

    Quotient sets are translation invariant and TPP is invariant under
    reordering (S, T, U), so each set contains the identity and sizes are
    taken in nonincreasing order.
    """
    e = group.identity
    others = [x for x in elements if x != e]
    examined = 0
    by_size = {}
    for k in range(1, max_size + 1):
        subs = []
        for rest in itertools.combinations(others, k - 1):
            sub = (e,) + rest
            subs.append((sub, quotient_set(group, sub)))
        by_size[k] = subs
    ident = frozenset([e])
    for a, b, c in _size_profiles(group.order, max_size, group.is_abelian):
        for S, QS in by_size.get(a, []):
            for T, QT in by_size.get(b, []):
                if QS & QT != ident:
                    continue
                for U, QU in by_size.get(c, []):
                    if QS & QU != ident or QT & QU != ident:
                        continue
                    examined += 1
                    if solve_product_one(group, QS, QT, QU, workers=1) is None:
                        return IndexTriple(group, S, T, U), examined
    return IndexTriple(group, (e,), (e,), (e,)), examined


def search_triples(
    group: Group,
    budget: int,
    seed: int = 0,
    *,
    max_subset: Optional[int] = None,
    cap: int = 10**5,
) -> SearchResult:
    """Best TPP triple (largest ``nmp``) found within ``budget`` candidate checks.

    Groups with ``order <= 12`` are scanned exhaustively over subsets of size
    at most 4; larger groups use seeded random growth with greedy repair.
    The trivial triple ``(G, {1}, {1})`` is always a candidate.
    """
    if budget < 1:
        raise SearchError("search budget must be at least 1")
    elements = group.enumerate(cap)
    if group.order <= EXHAUSTIVE_ORDER:
        size = min(max_subset or EXHAUSTIVE_SUBSET, EXHAUSTIVE_SUBSET, group.order)
        triple, examined = _exhaustive(group, elements, size)
        if triple.tensor.size < group.order:
            triple = trivial_triple(group)
        return SearchResult(triple, exhaustive=True, examined=examined)

    rng = random.Random(seed)
    e = group.identity
    best = trivial_triple(group)
    examined = 0
    max_size = max_subset or group.order
    while examined < budget:
        # one restart: grow S, T, U from the identity, dropping additions that break TPP
        sets = [[e], [e], [e]]
        qsets = [frozenset([e])] * 3
        stale = 0
        while examined < budget and stale < 3 * len(elements):
            which = rng.randrange(3)
            x = rng.choice(elements)
            if x in sets[which] or len(sets[which]) >= max_size:
                stale += 1
                continue
            cand = sets[which] + [x]
            q = quotient_set(group, cand)
            trial = list(qsets)
            trial[which] = q
            examined += 1
            if solve_product_one(group, *trial, workers=1) is None:
                sets[which] = cand
                qsets = trial
                stale = 0
                size = math.prod(len(s) for s in sets)
                if size > best.tensor.size:
                    best = IndexTriple(group, *sets)
            else:
                stale += 1
    return SearchResult(best, exhaustive=False, examined=examined, budget_exhausted=True)


# --------------------------------------------------------------------------
# JSON


def triple_to_json(t: IndexTriple, with_check: bool = False) -> dict:
    fmt = t.group.format_element
    doc = {
        "group": str(t.group.spec),
        "S": [fmt(x) for x in t.S],
        "T": [fmt(x) for x in t.T],
        "U": [fmt(x) for x in t.U],
        "tensor": list(t.tensor),
    }
    if with_check:
        doc["tpp"] = check_tpp(t)
    return doc


def triple_from_json(doc, group: Optional[Group] = None) -> IndexTriple:
    """Read ``{"group", "S", "T", "U"}`` or a bare ``[S, T, U]`` list (then ``group`` is required)."""
    from .groups import parse_group_spec

    if isinstance(doc, list):
        if group is None:
            raise ValueError("a bare [S, T, U] list needs an explicit group")
        if len(doc) != 3:
            raise ValueError(f"expected three element lists, got {len(doc)}")
        raw = doc
    else:
        if group is None:
            group = build_group(parse_group_spec(doc["group"]))
        raw = [doc[k] for k in "STU"]
    sets = [[group.parse_element(x) for x in part] for part in raw]
    return IndexTriple(group, *sets)


def family_to_json(fam: TripleFamily) -> dict:
    return {"group": str(fam.group.spec), "triples": [triple_to_json(t) for t in fam]}


def family_from_json(doc, group: Optional[Group] = None) -> TripleFamily:
    """Read ``{"group", "triples"}`` or a bare list of ``[S, T, U]`` lists."""
    from .groups import parse_group_spec

    if isinstance(doc, list):
        if group is None:
            raise ValueError("a bare list of triples needs an explicit group")
        items = doc
    else:
        if group is None:
            group = build_group(parse_group_spec(doc["group"]))
        items = doc["triples"]
    return TripleFamily(group, tuple(triple_from_json(t, group) for t in items))


def is_family_doc(doc) -> bool:
    """Distinguish a family document from a single-triple document."""
    if isinstance(doc, dict):
        return "triples" in doc
    return bool(doc) and isinstance(doc[0], list) and bool(doc[0]) and isinstance(doc[0][0], list)
