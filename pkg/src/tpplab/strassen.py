"""Strassen's rank-7 scheme for 2 x 2 blocks and its recursive use."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np


@dataclass
class OpCounter:
    mults: int = 0
    adds: int = 0

    @property
    def total(self) -> int:
        return self.mults + self.adds


@dataclass(frozen=True)
class BilinearScheme:
    """``AB = sum_i f_i(A) g_i(B) C_i`` with coefficient matrices for each form."""

    left: tuple  # r arrays of shape (n, m)
    right: tuple  # r arrays of shape (m, p)
    targets: tuple  # r arrays of shape (n, p)
    name: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.left)

    @property
    def shape(self) -> tuple:
        n, m = np.shape(self.left[0])
        p = np.shape(self.right[0])[1]
        return n, m, p

    def evaluate(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=object)
        B = np.asarray(B, dtype=object)
        n, _, p = self.shape
        out = np.zeros((n, p), dtype=object)
        for f, g, c in zip(self.left, self.right, self.targets):
            fa = (np.asarray(f, dtype=object) * A).sum()
            gb = (np.asarray(g, dtype=object) * B).sum()
            out = out + fa * gb * np.asarray(c, dtype=object)
        return out

    def drop(self, i: int) -> "BilinearScheme":
        keep = [k for k in range(self.rank) if k != i]
        return BilinearScheme(
            tuple(self.left[k] for k in keep),
            tuple(self.right[k] for k in keep),
            tuple(self.targets[k] for k in keep),
            f"{self.name} without term {i + 1}",
        )


STRASSEN = BilinearScheme(
    left=(
        ((1, 0), (0, 1)),
        ((0, 0), (1, 1)),
        ((1, 0), (0, 0)),
        ((-1, 0), (1, 0)),
        ((1, 1), (0, 0)),
        ((0, 0), (0, 1)),
        ((0, 1), (0, -1)),
    ),
    right=(
        ((1, 0), (0, 1)),
        ((1, 0), (0, 0)),
        ((0, 1), (0, -1)),
        ((1, 1), (0, 0)),
        ((0, 0), (0, 1)),
        ((-1, 0), (1, 0)),
        ((0, 0), (1, 1)),
    ),
    targets=(
        ((1, 0), (0, 1)),
        ((0, 0), (1, -1)),
        ((0, 1), (0, 1)),
        ((0, 0), (0, 1)),
        ((-1, 1), (0, 0)),
        ((1, 0), (1, 0)),
        ((1, 0), (0, 0)),
    ),
    name="strassen",
)


def schoolbook_scheme(n: int = 2, m: int = 2, p: int = 2) -> BilinearScheme:
    """The rank ``nmp`` scheme ``A_ij B_jk -> C_ik``."""
    left, right, targets = [], [], []
    for i, j, k in itertools.product(range(n), range(m), range(p)):
        f = np.zeros((n, m), dtype=int)
        g = np.zeros((m, p), dtype=int)
        c = np.zeros((n, p), dtype=int)
        f[i, j] = g[j, k] = c[i, k] = 1
        left.append(f)
        right.append(g)
        targets.append(c)
    return BilinearScheme(tuple(left), tuple(right), tuple(targets), "schoolbook")


def _classical(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    return A.dot(B)


def verify_scheme(s: BilinearScheme, samples: int = 200, seed: int = 0) -> bool:
    """Exhaustive 0/1 check (when small) plus random integer matrices."""
    n, m, p = s.shape
    if n * m + m * p <= 16:
        for bits in itertools.product((0, 1), repeat=n * m + m * p):
            A = np.array(bits[: n * m], dtype=object).reshape(n, m)
            B = np.array(bits[n * m:], dtype=object).reshape(m, p)
            if not (s.evaluate(A, B) == _classical(A, B)).all():
                return False
    rng = random.Random(seed)
    for _ in range(samples):
        A = np.array([[rng.randint(-50, 50) for _ in range(m)] for _ in range(n)], dtype=object)
        B = np.array([[rng.randint(-50, 50) for _ in range(p)] for _ in range(m)], dtype=object)
        if not (s.evaluate(A, B) == _classical(A, B)).all():
            return False
    return True


def strassen_2x2(A, B, counter: OpCounter | None = None):
    """Seven multiplications and eighteen additions/subtractions."""
    (a11, a12), (a21, a22) = A
    (b11, b12), (b21, b22) = B
    c = counter if counter is not None else OpCounter()
    p1 = (a11 + a22) * (b11 + b22)
    p2 = (a21 + a22) * b11
    p3 = a11 * (b12 - b22)
    p4 = (-a11 + a21) * (b11 + b12)
    p5 = (a11 + a12) * b22
    p6 = a22 * (-b11 + b21)
    p7 = (a12 - a22) * (b21 + b22)
    c.mults += 7
    c11 = p1 + p6 - p5 + p7
    c12 = p3 + p5
    c21 = p2 + p6
    c22 = p1 - p2 + p3 + p4
    # 10 on the operands (the leading negations count as subtractions), 8 on products
    c.adds += 18
    return [[c11, c12], [c21, c22]]


def _recurse(A: np.ndarray, B: np.ndarray, cutoff: int, c: OpCounter) -> np.ndarray:
    n = A.shape[0]
    if n <= cutoff:
        c.mults += n**3
        c.adds += n * n * (n - 1)
        return A.dot(B)
    h = n // 2
    a11, a12, a21, a22 = A[:h, :h], A[:h, h:], A[h:, :h], A[h:, h:]
    b11, b12, b21, b22 = B[:h, :h], B[:h, h:], B[h:, :h], B[h:, h:]
    p1 = _recurse(a11 + a22, b11 + b22, cutoff, c)
    p2 = _recurse(a21 + a22, b11, cutoff, c)
    p3 = _recurse(a11, b12 - b22, cutoff, c)
    p4 = _recurse(a21 - a11, b11 + b12, cutoff, c)
    p5 = _recurse(a11 + a12, b22, cutoff, c)
    p6 = _recurse(a22, b21 - b11, cutoff, c)
    p7 = _recurse(a12 - a22, b21 + b22, cutoff, c)
    c.adds += 18 * h * h
    out = np.empty((n, n), dtype=A.dtype)
    out[:h, :h] = p1 + p6 - p5 + p7
    out[:h, h:] = p3 + p5
    out[h:, :h] = p2 + p6
    out[h:, h:] = p1 - p2 + p3 + p4
    return out


def strassen_recursive(A, B, cutoff: int = 1, counter: OpCounter | None = None) -> np.ndarray:
    """Multiply square matrices, zero-padding to the next power of two."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError("need two square matrices of the same size")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    n = A.shape[0]
    size = 1
    while size < n:
        size *= 2
    dtype = object if A.dtype.kind in "iuO" and B.dtype.kind in "iuO" else np.result_type(A, B)
    Ap = np.zeros((size, size), dtype=dtype)
    Bp = np.zeros((size, size), dtype=dtype)
    Ap[:n, :n] = A.tolist() if dtype is object else A
    Bp[:n, :n] = B.tolist() if dtype is object else B
    c = counter if counter is not None else OpCounter()
    return _recurse(Ap, Bp, cutoff, c)[:n, :n]


def op_count(n: int) -> int:
    """Unrolled ``T(n) = 7 T(n/2) + 18 (n/2)^2`` with ``T(1) = 1``."""
    if n < 1 or n & (n - 1):
        raise ValueError("n must be a power of two")
    if n == 1:
        return 1
    return 7 * op_count(n // 2) + 18 * (n // 2) ** 2
