"""Sparse square matrices over :class:`~ggsr.exactring.Scalar`.

Indices are 1-based.  For ``M_n (x) M_n`` the pair ``(i, k)`` sits at
``(i - 1) * n + k``; triple tensors extend this lexicographically.
"""
from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .exactring import Scalar

__all__ = [
    "SparseMatrix",
    "DimensionError",
    "identity",
    "matmul",
    "madd",
    "msub",
    "mscale",
    "kron",
    "embed",
    "flip21",
    "permutation",
    "commutator",
    "leg_index",
    "leg_pair",
    "rational_matrix",
]


class DimensionError(ValueError):
    pass


class SparseMatrix:
    __slots__ = ("dim", "_entries")

    def __init__(self, dim: int, entries=None):
        if dim < 1:
            raise DimensionError(f"dimension must be positive, got {dim}")
        self.dim = dim
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (1 <= r <= dim and 1 <= c <= dim):
                raise IndexError(f"entry ({r}, {c}) outside a {dim}x{dim} matrix")
            v = Scalar.coerce(v)
            if v:
                clean[(r, c)] = v
        self._entries = clean

    @classmethod
    def _raw(cls, dim: int, entries: dict) -> "SparseMatrix":
        m = object.__new__(cls)
        m.dim = dim
        m._entries = entries
        return m

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self):
        return sorted(self._entries.items())

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __getitem__(self, rc) -> Scalar:
        return self._entries.get(rc, Scalar._raw({}))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, frozenset(self._entries.items())))

    def __repr__(self):
        return f"SparseMatrix(dim={self.dim}, nnz={self.nnz()})"

    def __add__(self, other):
        return madd(self, other)

    def __sub__(self, other):
        return msub(self, other)

    def __neg__(self):
        return mscale(self, -1)

    def __matmul__(self, other):
        return matmul(self, other)

    def map(self, fn) -> "SparseMatrix":
        """Apply ``fn`` to every stored entry; zero results are dropped."""
        return SparseMatrix(self.dim, {rc: fn(v) for rc, v in self._entries.items()})

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix._raw(
            self.dim, {(c, r): v for (r, c), v in self._entries.items()}
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [
                {"row": r, "col": c, "value": v.to_json()} for (r, c), v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SparseMatrix":
        entries = {}
        for item in data["entries"]:
            key = (int(item["row"]), int(item["col"]))
            if key in entries:
                raise ValueError(f"duplicate entry {key} in matrix JSON")
            entries[key] = Scalar.from_json(item["value"])
        return cls(int(data["dim"]), entries)


def _check_same(a: SparseMatrix, b: SparseMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def identity(dim: int) -> SparseMatrix:
    one = Scalar.const(1)
    return SparseMatrix._raw(dim, {(i, i): one for i in range(1, dim + 1)})


def madd(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    _check_same(a, b)
    out = dict(a._entries)
    for rc, v in b._entries.items():
        s = out[rc] + v if rc in out else v
        if s:
            out[rc] = s
        else:
            out.pop(rc, None)
    return SparseMatrix._raw(a.dim, out)


def msub(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return madd(a, mscale(b, -1))


def mscale(a: SparseMatrix, s) -> SparseMatrix:
    s = Scalar.coerce(s)
    out = {}
    for rc, v in a._entries.items():
        p = v * s
        if p:
            out[rc] = p
    return SparseMatrix._raw(a.dim, out)


def _worker_count() -> int:
    env = os.environ.get("YBE_THREADS")
    if env:
        return max(1, int(env))
    # threads only pay off without the GIL
    gil = getattr(sys, "_is_gil_enabled", lambda: True)()
    return 1 if gil else min(8, os.cpu_count() or 1)


def _mul_rows(rows, a_rows, b_rows) -> dict:
    out = {}
    for r in rows:
        acc: dict = {}
        for k, av in a_rows[r]:
            brow = b_rows.get(k)
            if not brow:
                continue
            at = av._terms
            for c, bv in brow:
                terms = acc.get(c)
                if terms is None:
                    terms = acc[c] = {}
                for e1, c1 in at.items():
                    for e2, c2 in bv._terms.items():
                        e = e1 + e2
                        terms[e] = terms.get(e, 0) + c1 * c2
        for c, terms in acc.items():
            clean = {e: v for e, v in terms.items() if v}
            if clean:
                out[(r, c)] = Scalar._raw(clean)
    return out


def matmul(a: SparseMatrix, b: SparseMatrix, workers: int | None = None) -> SparseMatrix:
    """Exact product.  Row blocks may run on a thread pool; the result is
    independent of the worker count."""
    _check_same(a, b)
    a_rows: dict = {}
    for (r, k), v in a._entries.items():
        a_rows.setdefault(r, []).append((k, v))
    b_rows: dict = {}
    for (k, c), v in b._entries.items():
        b_rows.setdefault(k, []).append((c, v))
    rows = sorted(a_rows)
    workers = _worker_count() if workers is None else workers
    if workers <= 1 or len(rows) < 64:
        return SparseMatrix._raw(a.dim, _mul_rows(rows, a_rows, b_rows))
    chunks = [rows[i::workers] for i in range(workers)]
    out: dict = {}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(lambda ch: _mul_rows(ch, a_rows, b_rows), chunks):
            out.update(part)
    return SparseMatrix._raw(a.dim, out)


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return msub(matmul(a, b), matmul(b, a))


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    db = b.dim
    out = {}
    for (i, j), av in a._entries.items():
        for (k, l), bv in b._entries.items():
            out[((i - 1) * db + k, (j - 1) * db + l)] = av * bv
    return SparseMatrix._raw(a.dim * db, out)


def leg_index(i: int, k: int, n: int) -> int:
    """Row/column index of the basis pair ``(i, k)`` in ``C^n (x) C^n``."""
    return (i - 1) * n + k


def leg_pair(idx: int, n: int) -> tuple:
    """Inverse of :func:`leg_index`."""
    return (idx - 1) // n + 1, (idx - 1) % n + 1


def _side(dim: int) -> int:
    n = round(dim ** 0.5)
    if n * n != dim:
        raise DimensionError(f"{dim} is not a square dimension n^2")
    return n


def embed(a: SparseMatrix, legs: str, n: int) -> SparseMatrix:
    """Place ``a`` acting on ``M_n (x) M_n`` into legs ``12``, ``13`` or ``23``
    of ``M_n (x) M_n (x) M_n``."""
    legs = str(legs)
    if a.dim != n * n:
        raise DimensionError(f"expected dimension {n * n}, got {a.dim}")
    if legs == "12":
        return kron(a, identity(n))
    if legs == "23":
        return kron(identity(n), a)
    if legs != "13":
        raise ValueError(f"legs must be one of 12, 13, 23; got {legs!r}")
    out = {}
    n2 = n * n
    for (r, c), v in a._entries.items():
        i, m = leg_pair(r, n)
        j, p = leg_pair(c, n)
        for k in range(1, n + 1):
            out[((i - 1) * n2 + (k - 1) * n + m, (j - 1) * n2 + (k - 1) * n + p)] = v
    return SparseMatrix._raw(n * n2, out)


def flip21(a: SparseMatrix) -> SparseMatrix:
    """Swap the two tensor legs: ``x (x) y -> y (x) x``."""
    n = _side(a.dim)
    out = {}
    for (r, c), v in a._entries.items():
        i, k = leg_pair(r, n)
        j, l = leg_pair(c, n)
        out[(leg_index(k, i, n), leg_index(l, j, n))] = v
    return SparseMatrix._raw(a.dim, out)


def permutation(n: int) -> SparseMatrix:
    if n < 1:
        raise DimensionError("n must be positive")
    one = Scalar.const(1)
    return SparseMatrix._raw(
        n * n,
        {
            (leg_index(i, k, n), leg_index(k, i, n)): one
            for i in range(1, n + 1)
            for k in range(1, n + 1)
        },
    )


def rational_matrix(dim: int, entries: dict) -> SparseMatrix:
    """Build a matrix from exact rational entries."""
    return SparseMatrix(dim, {rc: Scalar.const(Fraction(v)) for rc, v in entries.items()})
