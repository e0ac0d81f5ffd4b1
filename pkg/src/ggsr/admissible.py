"""Admissible Cartan parts ``r^0 = t^0/2 + r~0`` for a BD triple.

``r~0`` lives in ``h ^ h`` and is written in the basis ``h_{alpha_a} ^ h_{alpha_b}``
(``a < b``) with ``x ^ y = (x (x) y - y (x) x) / 2``.  The admissibility
constraints are linear in these coordinates and are solved by exact row
reduction.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .bdtriples import BDTriple, validate
from .exactring import as_rational
from .rootdata import casimir_cartan
from .tensorops import SparseMatrix, leg_index, madd, mscale

__all__ = [
    "Interpretation",
    "CartanTensor",
    "AdmissibleFamily",
    "AdmissibilityError",
    "LinearSystem",
    "wedge_pairs",
    "admissibility_system",
    "solve",
    "instantiate",
    "contains",
    "rref",
]


class AdmissibilityError(ValueError):
    pass


class Interpretation(enum.Enum):
    """Readings of the second admissibility condition.

    ``A``: ``(tau(a) (x) 1) r0 + (1 (x) a) r0 = 0``.
    ``B``: ``(tau(a) (x) 1) r0 + (1 (x) a) r0`` equals the same contraction of ``t0``.
    ``C``: ``(a (x) 1) r0 + (1 (x) tau(a)) r0 = 0``.
    """

    A = "A"
    B = "B"
    C = "C"


def wedge_pairs(n: int) -> list:
    """Index pairs ``(a, b)``, ``1 <= a < b <= n-1``, in lexicographic order."""
    return [(a, b) for a in range(1, n) for b in range(a + 1, n)]


def _h(a: int, n: int) -> list:
    v = [Fraction(0)] * (n + 1)
    v[a] += 1
    v[a + 1] -= 1
    return v


@dataclass(frozen=True)
class CartanTensor:
    """An element of ``h ^ h`` given by its ``h_a ^ h_b`` coordinates."""

    n: int
    coeffs: tuple  # ((a, b), Fraction) for every wedge pair, lexicographic

    @classmethod
    def from_dict(cls, n: int, coeffs: dict) -> "CartanTensor":
        pairs = wedge_pairs(n)
        unknown = set(coeffs) - set(pairs)
        if unknown:
            raise ValueError(f"not wedge pairs for sl({n}): {sorted(unknown)}")
        return cls(n, tuple((p, as_rational(coeffs.get(p, 0))) for p in pairs))

    @classmethod
    def zero(cls, n: int) -> "CartanTensor":
        return cls.from_dict(n, {})

    @property
    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def vector(self) -> list:
        return [c for _, c in self.coeffs]

    def __add__(self, other):
        return CartanTensor(
            self.n, tuple((p, c + d) for (p, c), (_, d) in zip(self.coeffs, other.coeffs))
        )

    def scaled(self, s) -> "CartanTensor":
        s = as_rational(s)
        return CartanTensor(self.n, tuple((p, c * s) for p, c in self.coeffs))

    def tensor_matrix(self) -> list:
        """``M`` with ``r~0 = sum_{i,j} M[i][j] e_ii (x) e_jj`` (1-based, row 0 unused)."""
        n = self.n
        m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for (a, b), k in self.coeffs:
            if not k:
                continue
            ha, hb = _h(a, n), _h(b, n)
            for i in (a, a + 1):
                for j in (b, b + 1):
                    m[i][j] += k * ha[i] * hb[j] / 2
                    m[j][i] -= k * ha[i] * hb[j] / 2
        return m

    def e_wedge_coeffs(self) -> dict:
        """``c_ij`` (``i < j``) with ``r~0 = sum c_ij e_ii ^ e_jj``."""
        m = self.tensor_matrix()
        return {
            (i, j): 2 * m[i][j]
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            if m[i][j]
        }

    def as_matrix(self) -> SparseMatrix:
        """``r~0`` as a diagonal ``n^2 x n^2`` matrix."""
        n = self.n
        m = self.tensor_matrix()
        return SparseMatrix(
            n * n,
            {
                (leg_index(i, k, n), leg_index(i, k, n)): m[i][k]
                for i in range(1, n + 1)
                for k in range(1, n + 1)
                if m[i][k]
            },
        )

    def to_json(self) -> list:
        return [
            {"pair": list(p), "value": [c.numerator, c.denominator]}
            for p, c in self.coeffs
        ]


def _contract(vec_functional, m, leg: int, n: int) -> list:
    """Contract a root functional (coefficient vector on e_ii) into one leg."""
    out = [Fraction(0)] * (n + 1)
    for i in range(1, n + 1):
        f = vec_functional[i]
        if not f:
            continue
        for j in range(1, n + 1):
            out[j] += f * (m[i][j] if leg == 1 else m[j][i])
    return out


@dataclass
class LinearSystem:
    """``rows . x = rhs`` over Q; ``x`` is indexed by :func:`wedge_pairs`."""

    unknowns: list
    rows: list = field(default_factory=list)
    rhs: list = field(default_factory=list)


def _t0_matrix(n: int) -> list:
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            m[i][j] = Fraction(int(i == j)) - Fraction(1, n)
    return m


def admissibility_system(t: BDTriple, interpretation=Interpretation.A) -> LinearSystem:
    """Linear equations on the ``h_a ^ h_b`` coordinates of ``r~0``.

    The symmetric condition holds by the ansatz ``t0/2 + antisymmetric``; each
    ``alpha`` in ``gamma1`` contributes one vector equation with ``n``
    components (one of them redundant).
    """
    interpretation = Interpretation(interpretation)
    n = t.n
    pairs = wedge_pairs(n)
    system = LinearSystem(pairs)
    basis = [CartanTensor.from_dict(n, {p: 1}).tensor_matrix() for p in pairs]
    t0 = _t0_matrix(n)
    for a, b in t.tau:
        if interpretation is Interpretation.C:
            left, right = _h(a, n), _h(b, n)
        else:
            left, right = _h(b, n), _h(a, n)

        def lhs(m):
            x = _contract(left, m, 1, n)
            y = _contract(right, m, 2, n)
            return [x[j] + y[j] for j in range(n + 1)]

        cols = [lhs(m) for m in basis]
        half_t0 = [v / 2 for v in lhs(t0)]
        for j in range(1, n + 1):
            system.rows.append([col[j] for col in cols])
            if interpretation is Interpretation.B:
                system.rhs.append(half_t0[j])
            else:
                system.rhs.append(-half_t0[j])
    return system


def rref(rows: list, rhs: list):
    """Exact reduced row echelon form of ``[rows | rhs]``.

    Pivot is the first nonzero entry in the column.  Returns
    ``(reduced_rows, reduced_rhs, pivot_columns)``; raises when inconsistent.
    """
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for row in m[r:]:
        if row[-1]:
            raise AdmissibilityError("admissibility system is inconsistent")
    return [row[:-1] for row in m[:r]], [row[-1] for row in m[:r]], pivots


@dataclass(frozen=True)
class AdmissibleFamily:
    triple: BDTriple
    particular: CartanTensor
    basis: tuple
    interpretation: Interpretation = Interpretation.A

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "triple": self.triple.encode(),
            "dim": self.dim,
            "particular": self.particular.to_json(),
            "basis": [b.to_json() for b in self.basis],
        }


def _solve_system(t: BDTriple, interpretation) -> AdmissibleFamily:
    n = t.n
    system = admissibility_system(t, interpretation)
    pairs = system.unknowns
    nvars = len(pairs)
    if system.rows:
        rows, rhs, pivots = rref(system.rows, system.rhs)
    else:
        rows, rhs, pivots = [], [], []
    free = [c for c in range(nvars) if c not in pivots]
    part = [Fraction(0)] * nvars
    for row, v, p in zip(rows, rhs, pivots):
        part[p] = v
    basis = []
    for f in free:
        vec = [Fraction(0)] * nvars
        vec[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            vec[p] = -row[f]
        basis.append(CartanTensor(n, tuple(zip(pairs, vec))))
    return AdmissibleFamily(
        t, CartanTensor(n, tuple(zip(pairs, part))), tuple(basis), Interpretation(interpretation)
    )


def solve(t: BDTriple, interpretation=Interpretation.A, check_dim: bool = True) -> AdmissibleFamily:
    """Affine family of admissible ``r~0`` for a valid triple.

    With ``check_dim`` the family dimension must equal ``C(d, 2)``,
    ``d = #(Gamma - gamma1)``.
    """
    if not validate(t):
        raise AdmissibilityError(f"{t} is not a Belavin-Drinfeld triple")
    fam = _solve_system(t, interpretation)
    d = (t.n - 1) - len(t.gamma1)
    if check_dim and fam.dim != comb(d, 2):
        raise AdmissibilityError(
            f"family of {t} has dimension {fam.dim}, expected C({d},2) = {comb(d, 2)}"
        )
    return fam


def instantiate(f: AdmissibleFamily, params) -> CartanTensor:
    params = [as_rational(p) for p in params]
    if len(params) != f.dim:
        raise ValueError(f"family has {f.dim} parameters, got {len(params)}")
    out = f.particular
    for p, b in zip(params, f.basis):
        out = out + b.scaled(p)
    return out


def residual(t: BDTriple, r0tilde: CartanTensor, interpretation=Interpretation.A) -> list:
    """``rows . x - rhs`` for the given ``r~0``; all zero iff admissible."""
    system = admissibility_system(t, interpretation)
    x = r0tilde.vector()
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) - v
            for row, v in zip(system.rows, system.rhs)]


def contains(f: AdmissibleFamily, r0tilde: CartanTensor) -> bool:
    """Exact membership of ``r0tilde`` in the family."""
    return r0tilde.n == f.triple.n and not any(
        residual(f.triple, r0tilde, f.interpretation)
    )


def r0_matrix(r0tilde: CartanTensor) -> SparseMatrix:
    """``r0 = t0/2 + r~0`` as a diagonal matrix."""
    return madd(mscale(casimir_cartan(r0tilde.n), Fraction(1, 2)), r0tilde.as_matrix())
