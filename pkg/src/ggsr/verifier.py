"""Exact checks: QYBE, Hecke, CYBE, non-unitarity and the semiclassical limit.

Every check reduces to "this residual matrix has no stored entries"; there are
no tolerances anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactring import Q, Scalar, monomial
from .rootdata import c_plus, casimir, casimir_cartan
from .tensorops import (
    DimensionError,
    SparseMatrix,
    embed,
    flip21,
    identity,
    madd,
    matmul,
    mscale,
    msub,
    permutation,
)

__all__ = [
    "Certificate",
    "qybe_residual",
    "hecke_residual",
    "cybe_residual",
    "nonunitary_residual",
    "check_qybe",
    "check_hecke",
    "check_cybe",
    "check_nonunitary",
    "check_semiclassical",
    "semiclassical_parts",
    "standard_semiclassical_constant",
    "certify",
    "CHECKS",
]

CHECKS = ("qybe", "hecke", "cybe", "nonunitary", "semiclassical")
SAMPLE_LIMIT = 10


def _need(m: SparseMatrix, n: int) -> None:
    if m.dim != n * n:
        raise DimensionError(f"expected a {n * n}x{n * n} matrix, got {m.dim}x{m.dim}")


def qybe_residual(R: SparseMatrix, n: int) -> SparseMatrix:
    """``R12 R13 R23 - R23 R13 R12``."""
    _need(R, n)
    r12, r13, r23 = embed(R, "12", n), embed(R, "13", n), embed(R, "23", n)
    return msub(matmul(matmul(r12, r13), r23), matmul(matmul(r23, r13), r12))


def hecke_residual(R: SparseMatrix, n: int) -> SparseMatrix:
    """``(PR - q)(PR + q^-1)``."""
    _need(R, n)
    pr = matmul(permutation(n), R)
    eye = identity(n * n)
    return matmul(msub(pr, mscale(eye, Q)), madd(pr, mscale(eye, monomial(1, -1))))


def cybe_residual(r: SparseMatrix, n: int) -> SparseMatrix:
    """``[r12, r13] + [r12, r23] + [r13, r23]``."""
    _need(r, n)
    r12, r13, r23 = embed(r, "12", n), embed(r, "13", n), embed(r, "23", n)
    a = matmul(r12, r13)
    b = matmul(r12, r23)
    c = matmul(r13, r23)
    total = madd(madd(a, b), c)
    total = msub(total, matmul(r13, r12))
    total = msub(total, matmul(r23, r12))
    return msub(total, matmul(r23, r13))


def nonunitary_residual(r: SparseMatrix, n: int) -> SparseMatrix:
    """``r + r21 - t``."""
    _need(r, n)
    return msub(madd(r, flip21(r)), casimir(n))


def check_qybe(R: SparseMatrix, n: int) -> bool:
    return qybe_residual(R, n).is_zero()


def check_hecke(R: SparseMatrix, n: int) -> bool:
    return hecke_residual(R, n).is_zero()


def check_cybe(r: SparseMatrix, n: int) -> bool:
    return cybe_residual(r, n).is_zero()


def check_nonunitary(r: SparseMatrix, n: int) -> bool:
    return nonunitary_residual(r, n).is_zero()


def _first_order(R: SparseMatrix) -> SparseMatrix:
    return R.map(lambda v: Scalar.const(v.d_dh_at_zero()))


def _antisym(x: SparseMatrix) -> SparseMatrix:
    return mscale(msub(x, flip21(x)), Fraction(1, 2))


def _fit_ratio(num: SparseMatrix, den: SparseMatrix):
    """``k`` with ``num == k * den`` exactly, or None."""
    if den.is_zero():
        return Fraction(0) if num.is_zero() else None
    (rc, v), = den.items()[:1]
    k = num[rc].constant_value() / v.constant_value()
    return k if msub(num, mscale(den, k)).is_zero() else None


def semiclassical_parts(R: SparseMatrix, r: SparseMatrix, n: int):
    """Return ``(symmetric_residual, fitted_constant)``.

    With ``rho`` the first-order term of ``R`` under ``q = e^h``, the symmetric
    residual is ``rho + rho21 - 2t - (2/n) I``; the constant is ``k`` with
    ``antisym(rho) = k * antisym(r)``, or None if no such ``k`` exists.
    """
    _need(R, n)
    _need(r, n)
    rho = _first_order(R)
    sym = madd(rho, flip21(rho))
    target = madd(mscale(casimir(n), 2), mscale(identity(n * n), Fraction(2, n)))
    return msub(sym, target), _fit_ratio(_antisym(rho), _antisym(r))


@lru_cache(maxsize=None)
def standard_semiclassical_constant(n: int) -> Fraction:
    """Constant fitted on the standard pair ``R_s``, ``r = t0/2 + c_+``."""
    from .ggsbuild import build_Rs

    r_std = madd(mscale(casimir_cartan(n), Fraction(1, 2)), c_plus(n))
    _, k = semiclassical_parts(build_Rs(n), r_std, n)
    if k is None:
        raise AssertionError("standard R-matrix has no semiclassical constant")
    return k


def check_semiclassical(R: SparseMatrix, r: SparseMatrix, n: int, constant=None) -> bool:
    """Symmetric first-order identity plus ``antisym(rho) = k antisym(r)`` with
    ``k`` the constant of the standard triple (or ``constant`` if given)."""
    sym_res, k = semiclassical_parts(R, r, n)
    expected = standard_semiclassical_constant(n) if constant is None else Fraction(constant)
    return sym_res.is_zero() and k == expected


def _summary(res: SparseMatrix) -> dict:
    return {
        "nonzero": res.nnz(),
        "samples": [
            {"row": rc[0], "col": rc[1], "value": str(v)} for rc, v in res.items()[:SAMPLE_LIMIT]
        ],
    }


@dataclass
class Certificate:
    qybe_ok: bool | None = None
    hecke_ok: bool | None = None
    cybe_ok: bool | None = None
    nonunitary_ok: bool | None = None
    semiclassical_ok: bool | None = None
    semiclassical_constant: Fraction | None = None
    residual_summaries: dict = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        flags = [getattr(self, f"{c}_ok") for c in CHECKS]
        return all(f is not False for f in flags) and any(f is not None for f in flags)

    def to_json(self) -> dict:
        k = self.semiclassical_constant
        return {
            **{f"{c}_ok": getattr(self, f"{c}_ok") for c in CHECKS},
            "semiclassical_constant": None if k is None else str(k),
            "residual_summaries": self.residual_summaries,
        }


def certify_matrices(R: SparseMatrix, r: SparseMatrix | None, n: int, checks=CHECKS) -> Certificate:
    """Run the requested checks; failures are recorded, never raised."""
    checks = tuple(checks)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    cert = Certificate()
    if "qybe" in checks:
        res = qybe_residual(R, n)
        cert.qybe_ok = res.is_zero()
        cert.residual_summaries["qybe"] = _summary(res)
    if "hecke" in checks:
        res = hecke_residual(R, n)
        cert.hecke_ok = res.is_zero()
        cert.residual_summaries["hecke"] = _summary(res)
    if r is not None:
        if "cybe" in checks:
            res = cybe_residual(r, n)
            cert.cybe_ok = res.is_zero()
            cert.residual_summaries["cybe"] = _summary(res)
        if "nonunitary" in checks:
            res = nonunitary_residual(r, n)
            cert.nonunitary_ok = res.is_zero()
            cert.residual_summaries["nonunitary"] = _summary(res)
        if "semiclassical" in checks:
            sym_res, k = semiclassical_parts(R, r, n)
            cert.semiclassical_constant = k
            cert.semiclassical_ok = sym_res.is_zero() and k == standard_semiclassical_constant(n)
            summary = _summary(sym_res)
            summary["antisymmetric_fit"] = k is not None
            cert.residual_summaries["semiclassical"] = summary
    return cert


def certify(bundle, checks=CHECKS) -> Certificate:
    """Certify an :class:`~ggsr.ggsbuild.RMatrixBundle` and attach the result."""
    cert = certify_matrices(bundle.R, bundle.r_classical, bundle.n, checks)
    bundle.certificate = cert
    return cert
