"""Classical r-matrices and the GGS quantum R-matrix of a BD triple.

Wedge normalizations are carried by :class:`Convention`.  The default was
selected by probing candidate conventions against the golden generalized
Cremmer-Gervais matrix, QYBE/Hecke for every sl(5) orbit and CYBE for the
classical side (see :func:`ggsr.reproduce.probe_conventions`):

* the classical ``r`` uses ``x ^ y = x (x) y - y (x) x`` for the ``a`` part;
* in the quantum part ``a`` is unit-normalized, ``c`` is half-normalized and
  ``epsilon = ac + ca + a^2``.

The Cartan part ``r~0`` always uses the half-normalized wedge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .admissible import AdmissibilityError, CartanTensor, contains, r0_matrix, solve
from .bdtriples import BDTriple, prec_pairs
from .exactring import Q, QHAT, Scalar, monomial
from .rootdata import c_plus, root_system, root_vector
from .tensorops import SparseMatrix, leg_index, madd, matmul, mscale

__all__ = [
    "Convention",
    "DEFAULT_CONVENTION",
    "CANDIDATE_CONVENTIONS",
    "GGSIntermediates",
    "RMatrixBundle",
    "DecompositionError",
    "wedge_matrix",
    "build_a",
    "build_c",
    "epsilon",
    "build_classical_r",
    "build_Rs",
    "build_multiparam_R",
    "multiparam_R_by_conjugation",
    "diag_q_power",
    "conjugate_by_q_power",
    "build_a_tilde",
    "build_R",
]

HALF = Fraction(1, 2)


class DecompositionError(ValueError):
    """Conjugated a~ is not a sum of quantized wedges over the BD ordering."""


@dataclass(frozen=True)
class Convention:
    name: str
    classical_a: Fraction  # scale of a inside the classical r
    quantum_a: Fraction  # scale of a inside a~ and epsilon
    quantum_c: Fraction  # scale of c inside epsilon
    eps_sign: int  # epsilon = eps_sign * (ac + ca + a^2)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "classical_a": str(self.classical_a),
            "quantum_a": str(self.quantum_a),
            "quantum_c": str(self.quantum_c),
            "eps_sign": self.eps_sign,
        }


CANDIDATE_CONVENTIONS = (
    Convention("half-classical/unit-quantum", HALF, Fraction(1), Fraction(1), -1),
    Convention("half-everywhere", HALF, HALF, HALF, -1),
    Convention("unit-everywhere", Fraction(1), Fraction(1), Fraction(1), -1),
    Convention("unit-a/half-c/positive-eps", Fraction(1), Fraction(1), HALF, 1),
)

DEFAULT_CONVENTION = CANDIDATE_CONVENTIONS[3]


def wedge_matrix(n: int, terms, scale) -> SparseMatrix:
    """``sum sign * scale * (x (x) y - y (x) x)`` for matrix units ``x, y``.

    ``terms`` holds ``((i, j), (k, l), sign)`` meaning ``x = e_ij``, ``y = e_kl``.
    """
    scale = Fraction(scale)
    entries: dict = {}
    for (i, j), (k, l), s in terms:
        fwd = (leg_index(i, k, n), leg_index(j, l, n))
        bwd = (leg_index(k, i, n), leg_index(l, j, n))
        entries[fwd] = entries.get(fwd, 0) + s * scale
        entries[bwd] = entries.get(bwd, 0) - s * scale
    return SparseMatrix(n * n, {rc: Scalar.const(v) for rc, v in entries.items()})


def _prec_units(t: BDTriple) -> list:
    n = t.n
    return [
        (root_vector(alpha, n, negative=True), root_vector(beta, n), sign, alpha, beta)
        for alpha, beta, sign in prec_pairs(t)
    ]


def build_a(t: BDTriple, scale=1) -> SparseMatrix:
    """``a = sum_{alpha < beta} e_{-alpha} ^ e_beta`` with signed root vectors."""
    return wedge_matrix(t.n, [p[:3] for p in _prec_units(t)], scale)


def build_c(n: int, scale=1) -> SparseMatrix:
    """``c = sum_{alpha > 0} e_{-alpha} ^ e_alpha``."""
    roots = root_system(n).positive_roots
    return wedge_matrix(
        n, [(root_vector(r, n, negative=True), root_vector(r, n), 1) for r in roots], scale
    )


def epsilon(a: SparseMatrix, c: SparseMatrix, sign: int = 1) -> SparseMatrix:
    total = madd(madd(matmul(a, c), matmul(c, a)), matmul(a, a))
    return mscale(total, sign)


def _require_admissible(t: BDTriple, r0tilde: CartanTensor) -> None:
    if r0tilde.n != t.n:
        raise AdmissibilityError(f"r~0 is for sl({r0tilde.n}), triple for sl({t.n})")
    if not contains(solve(t), r0tilde):
        raise AdmissibilityError(f"r~0 is not admissible for {t}")


def build_classical_r(
    t: BDTriple, r0tilde: CartanTensor, convention: Convention = DEFAULT_CONVENTION
) -> SparseMatrix:
    """``r = t0/2 + r~0 + c_+ + a`` for an admissible ``r~0``."""
    _require_admissible(t, r0tilde)
    n = t.n
    return madd(madd(r0_matrix(r0tilde), c_plus(n)), build_a(t, convention.classical_a))


def build_Rs(n: int) -> SparseMatrix:
    """Standard R-matrix ``q^{t0 + 1/n} + q^ c_+``."""
    entries = {}
    one = Scalar.const(1)
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            idx = leg_index(i, k, n)
            entries[(idx, idx)] = Q if i == k else one
            if i > k:
                entries[(idx, leg_index(k, i, n))] = QHAT
    return SparseMatrix(n * n, entries)


def diag_q_power(r0tilde: CartanTensor) -> SparseMatrix:
    """``q^{r~0}``: diagonal, entry at ``(i, k)`` is ``q`` to the ``e_ii (x) e_kk``
    coefficient of ``r~0``."""
    n = r0tilde.n
    m = r0tilde.tensor_matrix()
    return SparseMatrix(
        n * n,
        {
            (leg_index(i, k, n), leg_index(i, k, n)): monomial(1, m[i][k])
            for i in range(1, n + 1)
            for k in range(1, n + 1)
        },
    )


def conjugate_by_q_power(x: SparseMatrix, r0tilde: CartanTensor) -> SparseMatrix:
    """``q^{r~0} x q^{r~0}`` (diagonal scaling of rows and columns)."""
    d = diag_q_power(r0tilde)
    return matmul(matmul(d, x), d)


def build_multiparam_R(r0tilde: CartanTensor) -> SparseMatrix:
    """Closed form of ``R(r0)``: ``q`` on ``e_ii (x) e_ii``, ``q^{+-c_ij}`` on
    ``e_ii (x) e_jj``, ``q^`` on the ``c_+`` positions."""
    n = r0tilde.n
    cw = r0tilde.e_wedge_coeffs()
    entries = {}
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            idx = leg_index(i, k, n)
            if i == k:
                entries[(idx, idx)] = Q
            elif i < k:
                entries[(idx, idx)] = monomial(1, cw.get((i, k), 0))
            else:
                entries[(idx, idx)] = monomial(1, -cw.get((k, i), 0))
                entries[(idx, leg_index(k, i, n))] = QHAT
    return SparseMatrix(n * n, entries)


def multiparam_R_by_conjugation(r0tilde: CartanTensor) -> SparseMatrix:
    return conjugate_by_q_power(build_Rs(r0tilde.n), r0tilde)


@dataclass(frozen=True)
class GGSIntermediates:
    a: SparseMatrix
    c_plus: SparseMatrix
    c: SparseMatrix
    epsilon: SparseMatrix
    a_tilde: SparseMatrix
    a_tilde_conj: SparseMatrix
    wedge_constants: dict  # (alpha, beta) -> (sign, c)


def _exponentiate(a: SparseMatrix, eps: SparseMatrix) -> SparseMatrix:
    # a~ = sum a_x q^{a_x eps_x} over the support of a
    out = {}
    for rc, v in a.entries.items():
        av = v.constant_value()
        out[rc] = monomial(av, av * eps[rc].constant_value())
    return SparseMatrix(a.dim, out)


def _decompose(t: BDTriple, conj: SparseMatrix, scale: Fraction) -> dict:
    """Read off ``c(alpha, beta)`` from ``sum s e_{-alpha} ^_c (s e_beta)``."""
    n = t.n
    seen = set()
    constants = {}
    for (i, j), (k, l), sign, alpha, beta in _prec_units(t):
        fwd = (leg_index(i, k, n), leg_index(j, l, n))
        bwd = (leg_index(k, i, n), leg_index(l, j, n))
        x, y = conj[fwd], conj[bwd]
        if not (x.is_monomial() and y.is_monomial()):
            raise DecompositionError(f"entries for {alpha} < {beta} are not monomials")
        (ex, cx), = x.items()
        (ey, cy), = y.items()
        if cx != sign * scale or cy != -sign * scale or ex != -ey:
            raise DecompositionError(
                f"entries for {alpha} < {beta} do not form a quantized wedge: {x}, {y}"
            )
        constants[(alpha, beta)] = (sign, ey)
        seen |= {fwd, bwd}
    stray = set(conj.entries) - seen
    if stray:
        raise DecompositionError(f"stray entries outside the BD ordering: {sorted(stray)[:5]}")
    return constants


def build_a_tilde(
    t: BDTriple, r0tilde: CartanTensor, convention: Convention = DEFAULT_CONVENTION
):
    """Return ``(a_tilde, wedge_constants, intermediates)``.

    ``wedge_constants`` maps ``(alpha, beta)`` to ``(sign, c)`` such that
    ``q^{r~0} a~ q^{r~0} = sum e_{-alpha} ^_c (sign * e_beta)``.
    """
    _require_admissible(t, r0tilde)
    n = t.n
    a = build_a(t, convention.quantum_a)
    c = build_c(n, convention.quantum_c)
    eps = epsilon(a, c, convention.eps_sign)
    a_tilde = _exponentiate(a, eps)
    conj = conjugate_by_q_power(a_tilde, r0tilde)
    constants = _decompose(t, conj, convention.quantum_a)
    inter = GGSIntermediates(a, c_plus(n), c, eps, a_tilde, conj, constants)
    return a_tilde, constants, inter


@dataclass
class RMatrixBundle:
    triple: BDTriple
    params: dict  # name -> Fraction, insertion-ordered
    r0tilde: CartanTensor
    r_classical: SparseMatrix
    R: SparseMatrix
    intermediates: GGSIntermediates
    convention: Convention = DEFAULT_CONVENTION
    label: str | None = None
    certificate: object = field(default=None)

    @property
    def n(self) -> int:
        return self.triple.n

    def to_json(self) -> dict:
        consts = [
            {
                "alpha": list(alpha),
                "beta": list(beta),
                "sign": sign,
                "c": [c.numerator, c.denominator],
            }
            for (alpha, beta), (sign, c) in sorted(self.intermediates.wedge_constants.items())
        ]
        out = {
            "label": self.label,
            "triple": self.triple.encode(),
            "params": {k: [v.numerator, v.denominator] for k, v in self.params.items()},
            "r0tilde": self.r0tilde.to_json(),
            "convention": self.convention.to_json(),
            "matrix": self.R.to_json(),
            "classical_r": self.r_classical.to_json(),
            "wedge_constants": consts,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def build_R(
    t: BDTriple,
    r0tilde: CartanTensor,
    params: dict | None = None,
    convention: Convention = DEFAULT_CONVENTION,
    label: str | None = None,
) -> RMatrixBundle:
    """GGS matrix ``q^{r~0} (R_s + q^ a~) q^{r~0}`` with its classical partner."""
    _, _, inter = build_a_tilde(t, r0tilde, convention)
    R = madd(build_multiparam_R(r0tilde), mscale(inter.a_tilde_conj, QHAT))
    r = build_classical_r(t, r0tilde, convention)
    return RMatrixBundle(
        triple=t,
        params=dict(params or {}),
        r0tilde=r0tilde,
        r_classical=r,
        R=R,
        intermediates=inter,
        convention=convention,
        label=label,
    )

