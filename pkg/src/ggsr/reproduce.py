"""End-to-end reproduction of the sl(5) results as one deterministic report."""
from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb

from .admissible import AdmissibilityError, Interpretation, contains, solve
from .bdtriples import enumerate_triples, orbit_of, orbits, validate
from .exactring import QHAT, Scalar, monomial
from .ggsbuild import (
    CANDIDATE_CONVENTIONS,
    DEFAULT_CONVENTION,
    DecompositionError,
    build_multiparam_R,
    build_R,
)
from .paperdata import fixture, fixtures, golden
from .tensorops import SparseMatrix, leg_index, madd, mscale
from .verifier import (
    check_cybe,
    check_hecke,
    check_qybe,
    certify,
    standard_semiclassical_constant,
)

__all__ = [
    "SAMPLE_VALUES",
    "parameter_samples",
    "quantized_wedge_sum",
    "printed_R",
    "probe_conventions",
    "probe_interpretations",
    "paper_check",
]

SAMPLE_VALUES = (Fraction(0), Fraction(1), Fraction(-1, 2))


def parameter_samples(k: int) -> list:
    """Three parameter tuples (one when ``k = 0``) built from cyclic shifts of
    ``SAMPLE_VALUES``, so every parameter takes every sample value."""
    if k == 0:
        return [()]
    m = len(SAMPLE_VALUES)
    return [tuple(SAMPLE_VALUES[(i + j) % m] for j in range(k)) for i in range(m)]


def quantized_wedge_sum(n: int, terms) -> SparseMatrix:
    """``sum s (q^{-c} x (x) y - q^{c} y (x) x)`` for ``(x, y, c, s)`` with
    matrix units ``x = e_{-alpha}``, ``y = e_beta``."""
    entries: dict = {}
    for (i, j), (k, l), c, s in terms:
        fwd = (leg_index(i, k, n), leg_index(j, l, n))
        bwd = (leg_index(k, i, n), leg_index(l, j, n))
        entries[fwd] = entries.get(fwd, Scalar()) + monomial(s, -c)
        entries[bwd] = entries.get(bwd, Scalar()) + monomial(-s, c)
    return SparseMatrix(n * n, entries)


def printed_R(label: str, values: dict | None = None, corrected: bool = False) -> SparseMatrix:
    """``R(r0) + q^ sum e_{-alpha} ^_c e_beta`` assembled from transcribed terms."""
    fx = fixture(label)
    terms = fx.corrected_wedge_terms() if corrected else fx.wedge_terms
    n = fx.triple.n
    wedge = quantized_wedge_sum(n, [(w.minus_alpha, w.beta, w.c(values), w.sign) for w in terms])
    return madd(build_multiparam_R(fx.r0tilde(values)), mscale(wedge, QHAT))


def _fixture_samples(fx) -> list:
    return [dict(zip(fx.params, s)) for s in parameter_samples(len(fx.params))]


def _fmt_values(values: dict) -> dict:
    return {k: str(v) for k, v in values.items()}


def _probe_one(conv) -> dict:
    """Golden equality, QYBE/Hecke on every representative, then CYBE."""
    # None marks a test skipped after an earlier failure
    outcome = {"convention": conv.to_json(), "golden": None, "qybe_hecke": None, "cybe": None}
    gx = fixture("1b")
    try:
        outcome["golden"] = build_R(gx.triple, gx.r0tilde(), convention=conv).R == golden()
        if not outcome["golden"]:
            return outcome
        bundles = []
        for fx in fixtures():
            values = _fixture_samples(fx)[0]
            bundles.append(build_R(fx.triple, fx.r0tilde(values), values, conv))
        outcome["qybe_hecke"] = all(check_qybe(b.R, b.n) and check_hecke(b.R, b.n) for b in bundles)
        if not outcome["qybe_hecke"]:
            return outcome
        outcome["cybe"] = all(check_cybe(b.r_classical, b.n) for b in bundles)
    except (DecompositionError, AdmissibilityError) as exc:
        outcome["error"] = f"{type(exc).__name__}: {exc}"
    return outcome


def probe_conventions() -> dict:
    """Try the candidate wedge conventions in order; the first that survives
    every test wins."""
    tried = []
    winner = None
    for conv in CANDIDATE_CONVENTIONS:
        res = _probe_one(conv)
        tried.append(res)
        if res["golden"] is True and res["qybe_hecke"] is True and res["cybe"] is True:
            winner = conv
            break
    return {
        "tried": tried,
        "winner": None if winner is None else winner.name,
        "matches_default": winner == DEFAULT_CONVENTION,
    }


def probe_interpretations() -> dict:
    """Try the readings of the admissibility condition in order A, B, C.

    A reading wins when every sl(5) representative family has dimension
    ``C(d, 2)`` and contains every transcribed r0 at every sample.
    """
    tried = []
    winner = None
    for interp in Interpretation:
        dims_ok = True
        members_ok = True
        for fx in fixtures():
            try:
                fam = solve(fx.triple, interp)
            except AdmissibilityError:
                dims_ok = members_ok = False
                break
            members_ok = members_ok and all(
                contains(fam, fx.r0tilde(v)) for v in _fixture_samples(fx)
            )
        tried.append({"interpretation": interp.value, "dimensions": dims_ok, "membership": members_ok})
        if dims_ok and members_ok:
            winner = interp
            break
    return {
        "tried": tried,
        "winner": None if winner is None else winner.value,
        "matches_default": winner is Interpretation.A,
    }


def _enumeration_section() -> dict:
    out = {}
    for n in range(2, 6):
        ts = enumerate_triples(n)
        orbs = orbits(ts)
        out[str(n)] = {
            "triples": len(ts),
            "orbits": len(orbs),
            "nontrivial_orbits": sum(1 for o in orbs if o.representative.gamma1),
        }
    orbs5 = orbits(enumerate_triples(5))
    sizes = Counter(len(o.representative.gamma1) for o in orbs5)
    out["sl5_orbits_by_gamma1_size"] = {str(k): sizes[k] for k in sorted(sizes, reverse=True)}
    return out


def _orbit_section() -> dict:
    all5 = set(enumerate_triples(5))
    seen = []
    items = {}
    for fx in fixtures():
        t = fx.triple
        orb = orbit_of(t)
        items[fx.label] = {
            "triple": t.encode(),
            "valid": t in all5 and validate(t),
            "orbit_size": len(orb),
        }
        seen.append(orb)
    distinct = len(set(seen))
    return {
        "fixtures": items,
        "distinct_orbits": distinct,
        "covers_all_orbits": distinct == len(orbits(all5)),
    }


def _dimension_section() -> dict:
    out = {}
    for fx in fixtures():
        fam = solve(fx.triple, check_dim=False)
        d = fx.triple.n - 1 - len(fx.triple.gamma1)
        out[fx.label] = {
            "dim": fam.dim,
            "expected": comb(d, 2),
            "printed_parameters": len(fx.params),
        }
    return out


def _sweep_job(args):
    label, values = args
    fx = fixture(label)
    r0 = fx.r0tilde(values)
    member = contains(solve(fx.triple), r0)
    bundle = build_R(fx.triple, r0, values, label=label)
    cert = certify(bundle)
    computed = bundle.intermediates.wedge_constants
    return {
        "label": label,
        "params": _fmt_values(values),
        "member": member,
        "wedge_constants_match": computed == fx.wedge_constants(values),
        "printed_wedge_constants_match": computed == fx.wedge_constants(values, corrected=False),
        "certificate": {
            "qybe": cert.qybe_ok,
            "hecke": cert.hecke_ok,
            "cybe": cert.cybe_ok,
            "nonunitary": cert.nonunitary_ok,
            "semiclassical": cert.semiclassical_ok,
            "semiclassical_constant": None
            if cert.semiclassical_constant is None
            else str(cert.semiclassical_constant),
            "residual_nonzero": {k: v["nonzero"] for k, v in cert.residual_summaries.items()},
        },
    }


def _workers() -> int:
    env = os.environ.get("YBE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return os.cpu_count() or 1


def _run_jobs(jobs: list) -> list:
    workers = min(_workers(), len(jobs))
    if workers <= 1:
        return [_sweep_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_job, jobs))


def _errata_section() -> dict:
    """Printed wedge sums with known misprints must fail QYBE, corrected ones pass."""
    out = {}
    for fx in fixtures():
        if not fx.has_wedge_errata:
            continue
        rows = []
        for values in _fixture_samples(fx):
            printed = printed_R(fx.label, values)
            corrected = printed_R(fx.label, values, corrected=True)
            rows.append(
                {
                    "params": _fmt_values(values),
                    "printed_qybe": check_qybe(printed, fx.triple.n),
                    "corrected_qybe": check_qybe(corrected, fx.triple.n),
                    "corrected_hecke": check_hecke(corrected, fx.triple.n),
                }
            )
        out[fx.label] = {
            "kinds": [e.kind for e in fx.errata],
            "samples": rows,
        }
    return out


def _golden_section() -> dict:
    fx = fixture("1b")
    g = golden()
    built = build_R(fx.triple, fx.r0tilde()).R
    return {
        "equal": built == g,
        "nonzero_built": built.nnz(),
        "nonzero_golden": g.nnz(),
        "golden_qybe": check_qybe(g, 5),
        "golden_hecke": check_hecke(g, 5),
    }


def _verdict(report: dict) -> dict:
    enum = report["enumeration"]
    checks = {
        "enumeration": (
            enum["2"]["nontrivial_orbits"] == 0
            and enum["3"]["nontrivial_orbits"] == 1
            and enum["4"]["nontrivial_orbits"] == 3
            and enum["5"]["orbits"] == 13
            and enum["sl5_orbits_by_gamma1_size"] == {"3": 2, "2": 6, "1": 4, "0": 1}
        ),
        "orbit_representatives": report["orbits"]["covers_all_orbits"]
        and all(v["valid"] for v in report["orbits"]["fixtures"].values()),
        "dimensions": all(
            v["dim"] == v["expected"] == v["printed_parameters"]
            for v in report["dimensions"].values()
        ),
        "membership": all(s["member"] for s in report["sweep"]),
        "wedge_constants": all(s["wedge_constants_match"] for s in report["sweep"]),
        "errata": all(
            not r["printed_qybe"] and r["corrected_qybe"] and r["corrected_hecke"]
            for v in report["errata"].values()
            for r in v["samples"]
        ),
        "golden": report["golden"]["equal"]
        and report["golden"]["nonzero_built"] == report["golden"]["nonzero_golden"],
        "certificates": all(
            all(s["certificate"][k] for k in ("qybe", "hecke", "cybe", "nonunitary", "semiclassical"))
            for s in report["sweep"]
        ),
        "semiclassical_constant_uniform": len(
            {s["certificate"]["semiclassical_constant"] for s in report["sweep"]}
        ) == 1,
        "convention_probe": report["convention_probe"]["matches_default"],
        "interpretation_probe": report["interpretation_probe"]["matches_default"],
    }
    return checks


def paper_check(timing: bool = False) -> dict:
    """Run the full reproduction.  ``report["passed"]`` is the overall verdict.

    Without ``timing`` the report is a pure function of the code and data.
    """
    clock = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        clock[name] = round(time.perf_counter() - t0, 3)
        return out

    report = {}
    report["enumeration"] = timed("enumeration", _enumeration_section)
    report["orbits"] = timed("orbits", _orbit_section)
    report["dimensions"] = timed("dimensions", _dimension_section)
    report["golden"] = timed("golden", _golden_section)
    jobs = [(fx.label, values) for fx in fixtures() for values in _fixture_samples(fx)]
    report["sweep"] = timed("sweep", lambda: _run_jobs(jobs))
    report["errata"] = timed("errata", _errata_section)
    report["semiclassical_constant"] = str(standard_semiclassical_constant(5))
    report["interpretation_probe"] = timed("interpretation_probe", probe_interpretations)
    report["convention_probe"] = timed("convention_probe", probe_conventions)
    report["default_convention"] = DEFAULT_CONVENTION.name
    report["checks"] = _verdict(report)
    report["certified_triples"] = len(
        {
            s["label"]
            for s in report["sweep"]
            if all(s["certificate"][k] for k in ("qybe", "hecke", "cybe", "nonunitary", "semiclassical"))
        }
    )
    report["passed"] = all(report["checks"].values())
    if timing:
        report["timing_seconds"] = clock
    return report
