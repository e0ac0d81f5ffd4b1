from __future__ import annotations

import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from ggsr.exactring import Scalar
from ggsr.tensorops import SparseMatrix

settings.register_profile("default", deadline=None)
settings.load_profile("default")

small_fracs = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
exponents = st.builds(Fraction, st.integers(-10, 10), st.sampled_from([1, 2, 3, 5]))


@st.composite
def scalars(draw, max_terms=4):
    terms = draw(st.dictionaries(exponents, small_fracs, max_size=max_terms))
    return Scalar(terms)


@st.composite
def sparse_matrices(draw, dim=3, max_entries=5, values=None):
    values = values or scalars(max_terms=2)
    idx = st.tuples(st.integers(1, dim), st.integers(1, dim))
    entries = draw(st.dictionaries(idx, values, max_size=max_entries))
    return SparseMatrix(dim, entries)


def dense(m: SparseMatrix) -> list:
    """Dense list-of-lists copy (0-based) for oracle computations."""
    out = [[Scalar() for _ in range(m.dim)] for _ in range(m.dim)]
    for (r, c), v in m.entries.items():
        out[r - 1][c - 1] = v
    return out


def dense_mul(a: list, b: list) -> list:
    n = len(a)
    out = [[Scalar() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k]:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def from_dense(d: list) -> SparseMatrix:
    return SparseMatrix(len(d), {(i + 1, j + 1): v for i, row in enumerate(d) for j, v in enumerate(row)})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results is None:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 10):
        terminalreporter.write_line(results.get(num, f"criterion {num}: FAIL (did not complete)"))
