"""Root data of sl(n) realized inside M_n with the trace form.

A positive root ``alpha_i + ... + alpha_j`` is the interval ``(i, j)``;
its root vector is ``e_{i, j+1}`` and ``e_{-alpha} = e_{j+1, i}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactring import Scalar
from .tensorops import SparseMatrix, kron, leg_index, matmul, madd, mscale, identity

__all__ = [
    "RootSystem",
    "root_system",
    "gram",
    "matrix_unit",
    "root_vector",
    "coroot",
    "trace_form",
    "casimir",
    "casimir_cartan",
    "c_plus",
    "is_positive_root",
]


def gram(i: int, j: int) -> int:
    """Trace-form pairing of simple roots ``alpha_i`` and ``alpha_j`` (A-type)."""
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


@dataclass(frozen=True)
class RootSystem:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"sl(n) needs n >= 2, got {self.n}")

    @property
    def rank(self) -> int:
        return self.n - 1

    @property
    def simple_roots(self) -> tuple:
        return tuple(range(1, self.n))

    @property
    def positive_roots(self) -> tuple:
        return tuple(
            (i, j) for i in range(1, self.n) for j in range(i, self.n)
        )

    def cartan_matrix(self) -> list:
        r = self.simple_roots
        return [[gram(i, j) for j in r] for i in r]

    def pairing(self, alpha: tuple, beta: tuple) -> int:
        """Trace-form pairing of two positive roots given as intervals."""
        return sum(
            gram(a, b)
            for a in range(alpha[0], alpha[1] + 1)
            for b in range(beta[0], beta[1] + 1)
        )


@lru_cache(maxsize=None)
def root_system(n: int) -> RootSystem:
    return RootSystem(n)


def is_positive_root(root, n: int) -> bool:
    i, j = root
    return 1 <= i <= j <= n - 1


def matrix_unit(i: int, j: int, n: int) -> SparseMatrix:
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"e_({i},{j}) out of range for n={n}")
    return SparseMatrix(n, {(i, j): 1})


def root_vector(root, n: int, negative: bool = False) -> tuple:
    """Matrix-unit indices of ``e_alpha`` (or ``e_{-alpha}``) for ``root = (i, j)``."""
    if not is_positive_root(root, n):
        raise ValueError(f"{root} is not a positive root of sl({n})")
    i, j = root
    return (j + 1, i) if negative else (i, j + 1)


def coroot(i: int, n: int) -> SparseMatrix:
    """``h_{alpha_i} = e_ii - e_{i+1,i+1}``."""
    return SparseMatrix(n, {(i, i): 1, (i + 1, i + 1): -1})


def trace_form(x: SparseMatrix, y: SparseMatrix) -> Scalar:
    p = matmul(x, y)
    total = Scalar()
    for i in range(1, p.dim + 1):
        total = total + p[(i, i)]
    return total


@lru_cache(maxsize=None)
def casimir_cartan(n: int) -> SparseMatrix:
    """``t^0 = sum_i e_ii (x) e_ii - (1/n) I (x) I``."""
    entries = {}
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            v = Fraction(int(i == k)) - Fraction(1, n)
            idx = leg_index(i, k, n)
            entries[(idx, idx)] = v
    return SparseMatrix(n * n, entries)


@lru_cache(maxsize=None)
def c_plus(n: int) -> SparseMatrix:
    """``sum_{alpha > 0} e_{-alpha} (x) e_alpha = sum_{i > j} e_ij (x) e_ji``."""
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, i):
            entries[(leg_index(i, j, n), leg_index(j, i, n))] = 1
    return SparseMatrix(n * n, entries)


@lru_cache(maxsize=None)
def casimir(n: int) -> SparseMatrix:
    """``t = sum_{i,j} e_ij (x) e_ji - (1/n) I (x) I``."""
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            entries[(leg_index(i, j, n), leg_index(j, i, n))] = Fraction(1)
    gl = SparseMatrix(n * n, entries)
    return madd(gl, mscale(identity(n * n), Fraction(-1, n)))


def tensor(x: SparseMatrix, y: SparseMatrix) -> SparseMatrix:
    return kron(x, y)
