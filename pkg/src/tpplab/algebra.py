"""Group algebra arithmetic and matrix multiplication through index triples.

Two numeric modes: ``"exact"`` keeps Python ints/Fractions end to end,
``"float"`` works in complex floating point (required by the DFT paths).
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Number
from typing import Optional, Sequence

import numpy as np

from .groups import (
    CyclicGroup,
    DirectProductGroup,
    Group,
    GroupError,
    SymmetricGroup,
    UnsupportedGroup,
)
from .tpp import IndexTriple, TripleFamily

MODES = ("exact", "float")


class AlgebraElement:
    """Finitely supported map ``G -> coefficients``; zero coefficients are dropped."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: Group, coeffs: Optional[dict] = None):
        self.group = group
        self.coeffs = {g: c for g, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def delta(cls, group: Group, g, coeff=1) -> "AlgebraElement":
        return cls(group, {group.check(g): coeff})

    @classmethod
    def zero(cls, group: Group) -> "AlgebraElement":
        return cls(group)

    def __getitem__(self, g):
        return self.coeffs.get(g, 0)

    @property
    def support(self) -> set:
        return set(self.coeffs)

    def _same(self, other: "AlgebraElement"):
        if other.group != self.group:
            raise GroupError(f"group mismatch: {self.group.spec} vs {other.group.spec}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return AlgebraElement(self.group, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        if isinstance(other, Number):
            return AlgebraElement(self.group, {g: c * other for g, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and other.group == self.group
            and other.coeffs == self.coeffs
        )

    def max_abs_diff(self, other: "AlgebraElement") -> float:
        self._same(other)
        keys = self.support | other.support
        return max((abs(self[g] - other[g]) for g in keys), default=0.0)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.group.spec}, {len(self.coeffs)} terms)"


def convolve(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``(x * y)(g) = sum over ab = g of x(a) y(b)``."""
    x._same(y)
    mul = x.group.mul
    out: dict = defaultdict(int)
    ys = list(y.coeffs.items())
    for a, ca in x.coeffs.items():
        for b, cb in ys:
            out[mul(a, b)] += ca * cb
    return AlgebraElement(x.group, out)


# --------------------------------------------------------------------------
# Matrices


def _prepare(M, mode: str) -> np.ndarray:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "exact":
        arr = np.array(M, dtype=object)
        if arr.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        for v in arr.flat:
            if not isinstance(v, (int, Fraction)) or isinstance(v, bool):
                raise TypeError(f"exact mode needs int or Fraction entries, got {type(v).__name__}")
        return arr
    arr = np.asarray(M)
    if arr.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return arr.astype(complex)


def _int_entries(M) -> np.ndarray:
    # numpy integer scalars become Python ints so exact arithmetic never overflows
    arr = np.asarray(M)
    if arr.dtype.kind in "iu":
        return np.array(arr.tolist(), dtype=object)
    return np.array(M, dtype=object)


def embed_pair(A, B, t: IndexTriple, mode: str = "exact") -> tuple:
    """``A -> sum A[s,t] s^-1 t`` and ``B -> sum B[t',u] t'^-1 u``.

    Matrices smaller than the tensor are treated as zero-padded.
    """
    A = _prepare(_int_entries(A) if mode == "exact" else A, mode)
    B = _prepare(_int_entries(B) if mode == "exact" else B, mode)
    n, m, p = t.tensor
    if A.shape[1] != B.shape[0] or A.shape[0] > n or A.shape[1] > m or B.shape[1] > p:
        raise ValueError(f"matrix shapes {A.shape}, {B.shape} do not fit tensor {t.tensor}")
    g = t.group
    mul, inv = g.mul, g.inv
    s_inv = [inv(s) for s in t.S[: A.shape[0]]]
    t_inv = [inv(x) for x in t.T[: B.shape[0]]]
    a = {}
    for i, si in enumerate(s_inv):
        for j, tj in enumerate(t.T[: A.shape[1]]):
            a[mul(si, tj)] = A[i, j]
    b = {}
    for j, ti in enumerate(t_inv):
        for k, uk in enumerate(t.U[: B.shape[1]]):
            b[mul(ti, uk)] = B[j, k]
    return AlgebraElement(g, a), AlgebraElement(g, b)


def extract_product(z: AlgebraElement, t: IndexTriple, mode: str = "exact",
                    shape: Optional[tuple] = None) -> np.ndarray:
    """``C[s, u] = z(s^-1 u)``, cropped to ``shape`` when given."""
    g = t.group
    mul, inv = g.mul, g.inv
    rows_n, cols_p = shape if shape is not None else (len(t.S), len(t.U))
    rows = []
    for s in t.S[:rows_n]:
        si = inv(s)
        rows.append([z[mul(si, u)] for u in t.U[:cols_p]])
    return np.array(rows, dtype=object if mode == "exact" else complex)


def _finish(C: np.ndarray, A, B, mode: str) -> np.ndarray:
    if mode == "float" and np.isrealobj(np.asarray(A)) and np.isrealobj(np.asarray(B)):
        return C.real.copy()
    return C


def matmul_via_group(t: IndexTriple, A, B, mode: str = "exact", path: str = "naive") -> np.ndarray:
    """Multiply ``A`` (n x m) by ``B`` (m x p) inside the group algebra of ``t.group``.

    ``path="naive"`` convolves directly; ``path="dft"`` multiplies in the
    Fourier domain (abelian groups and Sym_3, float mode only).
    """
    shape = (np.shape(A)[0], np.shape(B)[-1])
    if path == "naive":
        a, b = embed_pair(A, B, t, mode)
        return _finish(extract_product(convolve(a, b), t, mode, shape), A, B, mode)
    if path != "dft":
        raise ValueError("path must be 'naive' or 'dft'")
    if mode != "float":
        raise ValueError("the DFT path needs mode='float'")
    a, b = embed_pair(A, B, t, mode)
    z = dft_convolve(a, b)
    return _finish(extract_product(z, t, mode, shape), A, B, mode)


def simultaneous_matmul(fam: TripleFamily, pairs: Sequence[tuple], mode: str = "exact") -> list:
    """All products ``A_v B_v`` from one convolution of the summed embeddings."""
    if len(pairs) != len(fam):
        raise ValueError(f"{len(pairs)} matrix pairs for a family of {len(fam)} triples")
    g = fam.group
    a_sum = AlgebraElement.zero(g)
    b_sum = AlgebraElement.zero(g)
    for t, (A, B) in zip(fam, pairs):
        a, b = embed_pair(A, B, t, mode)
        a_sum = a_sum + a
        b_sum = b_sum + b
    z = convolve(a_sum, b_sum)
    return [
        _finish(extract_product(z, t, mode, (np.shape(A)[0], np.shape(B)[-1])), A, B, mode)
        for t, (A, B) in zip(fam, pairs)
    ]


def schoolbook(A, B) -> np.ndarray:
    """Triple-loop product, used as the reference answer."""
    A = _int_entries(A)
    B = _int_entries(B)
    n, m = A.shape
    m2, p = B.shape
    if m != m2:
        raise ValueError("inner dimensions differ")
    C = np.empty((n, p), dtype=object)
    for i in range(n):
        for k in range(p):
            acc = 0
            for j in range(m):
                acc += A[i, j] * B[j, k]
            C[i, k] = acc
    return C


# --------------------------------------------------------------------------
# Abelian DFT


def cyclic_factors(group: Group) -> tuple:
    """Moduli and flattening map for a (nested) direct product of cyclic groups."""
    if isinstance(group, CyclicGroup):
        return (group.n,), lambda x: (x,)
    if isinstance(group, DirectProductGroup):
        subs = [cyclic_factors(p) for p in group.parts]
        moduli = tuple(m for mods, _ in subs for m in mods)
        flats = [f for _, f in subs]

        def flatten(x):
            out = ()
            for f, xi in zip(flats, x):
                out += f(xi)
            return out

        return moduli, flatten
    raise UnsupportedGroup(f"{group.spec} is not a product of cyclic groups")


def _character_matrix(n: int, conj: bool = False) -> np.ndarray:
    sign = -1 if conj else 1
    k = np.arange(n)
    return np.exp(sign * 2j * np.pi * np.outer(k, k) / n)


def to_dense(f: AlgebraElement) -> np.ndarray:
    moduli, flatten = cyclic_factors(f.group)
    arr = np.zeros(moduli, dtype=complex)
    for g, c in f.coeffs.items():
        arr[flatten(g)] += complex(c)
    return arr


def _contract(arr: np.ndarray, conj: bool) -> np.ndarray:
    out = arr
    for axis, n in enumerate(arr.shape):
        W = _character_matrix(n, conj)
        out = np.moveaxis(np.tensordot(W, out, axes=([1], [axis])), 0, axis)
    return out


def abelian_dft(group: Group, f: AlgebraElement) -> np.ndarray:
    """``fhat[k] = sum_g f(g) chi_k(g)`` with ``chi_k(g) = prod exp(2 pi i k_j g_j / n_j)``.

    Returned as an array indexed by the character multi-index ``k``.
    """
    if f.group != group:
        raise GroupError("element does not belong to this group")
    return _contract(to_dense(f), conj=False)


def abelian_idft_dense(fhat: np.ndarray) -> np.ndarray:
    """``f(g) = |G|^-1 sum_k fhat[k] conj(chi_k(g))`` as a dense array."""
    return _contract(np.asarray(fhat, dtype=complex), conj=True) / fhat.size


def abelian_idft(group: Group, fhat: np.ndarray, tol: float = 0.0) -> AlgebraElement:
    moduli, flatten = cyclic_factors(group)
    if tuple(fhat.shape) != moduli:
        raise ValueError(f"transform shape {fhat.shape} does not match {moduli}")
    dense = abelian_idft_dense(fhat)
    coeffs = {}
    for g in group._iter():
        c = dense[flatten(g)]
        if abs(c) > tol:
            coeffs[g] = c
    return AlgebraElement(group, coeffs)


# --------------------------------------------------------------------------
# Sym_3


def _sym3_elements() -> list:
    # (1), (12), (13), (23), (123), (132) as image arrays on {0, 1, 2}
    return [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]


SYM3_ELEMENTS = _sym3_elements()
SYM3_LABELS = ["(1)", "(12)", "(13)", "(23)", "(123)", "(132)"]

_DELTA = dict(zip(SYM3_ELEMENTS, [
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((-1, 0), (-1, 1)),
    ((1, -1), (0, -1)),
    ((0, -1), (1, -1)),
    ((-1, 1), (-1, 0)),
]))


def sign(perm: tuple) -> int:
    seen = [False] * len(perm)
    s = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def sym3_representations() -> dict:
    """``name -> {element: matrix}`` for the trivial, sign and 2-dimensional irreps."""
    return {
        "iota": {g: np.array([[1.0]]) for g in SYM3_ELEMENTS},
        "sigma": {g: np.array([[float(sign(g))]]) for g in SYM3_ELEMENTS},
        "delta": {g: np.array(m, dtype=float) for g, m in _DELTA.items()},
    }


SYM3_DEGREES = {"iota": 1, "sigma": 1, "delta": 2}


def _check_sym3(group: Group):
    if not (isinstance(group, SymmetricGroup) and group.degree == 3):
        raise UnsupportedGroup(f"{group.spec} is not Sym_3")


def sym3_blocks(f: AlgebraElement) -> dict:
    """``fhat(rho) = sum_g f(g) rho(g)`` for each irreducible ``rho``."""
    _check_sym3(f.group)
    reps = sym3_representations()
    return {
        name: sum((complex(f[g]) * rho[g] for g in SYM3_ELEMENTS), np.zeros((d, d), complex))
        for (name, rho), d in zip(reps.items(), SYM3_DEGREES.values())
    }


def sym3_dft(f: AlgebraElement) -> np.ndarray:
    """Block-diagonal ``1 + 1 + 2`` transform as a 4 x 4 matrix."""
    b = sym3_blocks(f)
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = b["iota"][0, 0]
    out[1, 1] = b["sigma"][0, 0]
    out[2:, 2:] = b["delta"]
    return out


def sym3_idft(fhat: np.ndarray, group: Optional[Group] = None, tol: float = 0.0) -> AlgebraElement:
    """``f(g) = |G|^-1 sum_rho d_rho Tr[fhat(rho) rho(g^-1)]``."""
    from .groups import Symmetric, build_group

    group = group or build_group(Symmetric(3))
    _check_sym3(group)
    fhat = np.asarray(fhat)
    if fhat.shape != (4, 4):
        raise ValueError("expected a 4 x 4 block-diagonal transform")
    blocks = {"iota": fhat[:1, :1], "sigma": fhat[1:2, 1:2], "delta": fhat[2:, 2:]}
    reps = sym3_representations()
    coeffs = {}
    for g in SYM3_ELEMENTS:
        gi = group.inv(g)
        val = sum(SYM3_DEGREES[name] * np.trace(blocks[name] @ reps[name][gi]) for name in blocks) / 6
        if abs(val) > tol:
            coeffs[g] = complex(val)
    return AlgebraElement(group, coeffs)


def sym3_dft_matrix() -> np.ndarray:
    """6 x 6 matrix with entry ``[rho, k, l ; g] = rho(g)[k, l]``.

    Rows: iota, sigma, delta_11, delta_12, delta_21, delta_22.
    Columns: (1), (12), (13), (23), (123), (132).
    """
    reps = sym3_representations()
    rows = [
        [reps["iota"][g][0, 0] for g in SYM3_ELEMENTS],
        [reps["sigma"][g][0, 0] for g in SYM3_ELEMENTS],
    ]
    for k in range(2):
        for l in range(2):
            rows.append([reps["delta"][g][k, l] for g in SYM3_ELEMENTS])
    return np.array(rows)


# --------------------------------------------------------------------------


def dft_convolve(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Convolution computed in the Fourier domain (abelian groups or Sym_3)."""
    x._same(y)
    g = x.group
    if isinstance(g, SymmetricGroup) and g.degree == 3:
        return sym3_idft(sym3_dft(x) @ sym3_dft(y), g)
    if not g.is_abelian:
        raise UnsupportedGroup(f"no DFT available for {g.spec}")
    if isinstance(g, SymmetricGroup):
        # Sym_1 and Sym_2 are abelian but not cyclic products; convolve directly
        return convolve(x, y)
    fhat = abelian_dft(g, x) * abelian_dft(g, y)
    return abelian_idft(g, fhat)
