"""Transcribed sl(5) data: orbit representatives, r0 tables, wedge constants and
the generalized Cremmer-Gervais matrix.

The JSON files under ``data/`` are the source of truth; this module only
parses them.  Wedge terms are kept as printed, and known misprints are listed
next to them as errata so both versions stay auditable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .admissible import CartanTensor
from .bdtriples import BDTriple
from .tensorops import SparseMatrix

__all__ = [
    "Affine",
    "WedgeTerm",
    "Erratum",
    "PaperTripleFixture",
    "LABELS",
    "fixture",
    "fixtures",
    "golden",
    "golden_label",
]

LABELS = ("1a", "1b", "2a", "2b", "2c", "2d", "2e", "2f", "3a", "3b", "3c", "3d", "4")


@dataclass(frozen=True)
class Affine:
    """``const + sum coeff[name] * name`` over Q."""

    const: Fraction
    coeffs: tuple  # ((name, Fraction), ...) sorted by name

    @classmethod
    def from_json(cls, data: dict) -> "Affine":
        const = Fraction(data.get("const", "0"))
        coeffs = tuple(sorted((k, Fraction(v)) for k, v in data.items() if k != "const"))
        return cls(const, coeffs)

    def __call__(self, values: dict | None = None) -> Fraction:
        values = values or {}
        total = self.const
        for name, k in self.coeffs:
            if k:
                if name not in values:
                    raise KeyError(f"no value for parameter {name!r}")
                total += k * Fraction(values[name])
        return total

    def __str__(self):
        parts = [str(self.const)] + [f"{k}*{name}" for name, k in self.coeffs if k]
        return " + ".join(parts)


def _unit_to_root(unit, negative: bool) -> tuple:
    i, j = unit
    if negative:
        if i <= j:
            raise ValueError(f"e_{i}{j} is not a negative root vector")
        return (j, i - 1)
    if i >= j:
        raise ValueError(f"e_{i}{j} is not a positive root vector")
    return (i, j - 1)


@dataclass(frozen=True)
class WedgeTerm:
    """``e_{-alpha} ^_c (sign * e_beta)`` with matrix units as printed."""

    minus_alpha: tuple
    beta: tuple
    c: Affine
    sign: int

    @classmethod
    def from_json(cls, data: dict) -> "WedgeTerm":
        return cls(
            tuple(data["minus_alpha"]), tuple(data["beta"]), Affine.from_json(data["c"]),
            int(data["sign"]),
        )

    @property
    def roots(self) -> tuple:
        """``(alpha, beta)`` as positive-root intervals."""
        return _unit_to_root(self.minus_alpha, True), _unit_to_root(self.beta, False)


@dataclass(frozen=True)
class Erratum:
    kind: str  # "wedge_constant", "missing_term" or "triple"
    data: dict
    note: str


@dataclass(frozen=True)
class PaperTripleFixture:
    label: str
    note: str
    triple: BDTriple
    params: tuple
    r0_coeffs: dict  # (a, b) -> Affine, coordinates on h_a ^ h_b
    wedge_terms: tuple
    errata: tuple

    def r0tilde(self, values: dict | None = None) -> CartanTensor:
        values = dict(values or {})
        extra = set(values) - set(self.params)
        if extra:
            raise KeyError(f"fixture {self.label} has no parameters {sorted(extra)}")
        return CartanTensor.from_dict(
            self.triple.n, {p: f(values) for p, f in self.r0_coeffs.items()}
        )

    def wedge_constants(self, values: dict | None = None, corrected: bool = True) -> dict:
        """``{(alpha, beta): (sign, c)}`` at ``values``."""
        terms = self.corrected_wedge_terms() if corrected else self.wedge_terms
        return {w.roots: (w.sign, w.c(values)) for w in terms}

    def corrected_wedge_terms(self) -> tuple:
        terms = list(self.wedge_terms)
        for e in self.errata:
            if e.kind == "wedge_constant":
                w = terms[e.data["term"]]
                terms[e.data["term"]] = WedgeTerm(
                    w.minus_alpha, w.beta, Affine.from_json(e.data["corrected"]), w.sign
                )
            elif e.kind == "missing_term":
                terms.append(WedgeTerm.from_json(e.data["term"]))
        return tuple(terms)

    @property
    def has_wedge_errata(self) -> bool:
        return any(e.kind in ("wedge_constant", "missing_term") for e in self.errata)


def _triple_from_json(data: dict) -> BDTriple:
    t = BDTriple.from_map(data["n"], {a: b for a, b in data["tau"]})
    if list(t.gamma1) != sorted(data["gamma1"]) or list(t.gamma2) != sorted(data["gamma2"]):
        raise ValueError(f"inconsistent triple record {data}")
    return t


def _fixture_from_json(data: dict) -> PaperTripleFixture:
    r0 = {(int(k[0]), int(k[1])): Affine.from_json(v) for k, v in data["r0"].items()}
    errata = tuple(
        Erratum(e["kind"], {k: v for k, v in e.items() if k not in ("kind", "note")}, e["note"])
        for e in data.get("errata", [])
    )
    return PaperTripleFixture(
        label=data["label"],
        note=data["note"],
        triple=_triple_from_json(data["triple"]),
        params=tuple(data["params"]),
        r0_coeffs=r0,
        wedge_terms=tuple(WedgeTerm.from_json(w) for w in data["wedge_terms"]),
        errata=errata,
    )


def _load(name: str) -> dict:
    return json.loads(resources.files("ggsr").joinpath("data", name).read_text())


@lru_cache(maxsize=None)
def _fixture_table() -> dict:
    data = _load("fixtures.json")
    table = {f["label"]: _fixture_from_json(f) for f in data["fixtures"]}
    if tuple(table) != LABELS:
        raise ValueError(f"fixture labels {tuple(table)} differ from {LABELS}")
    return table


def fixture(label: str) -> PaperTripleFixture:
    try:
        return _fixture_table()[label]
    except KeyError:
        raise KeyError(f"unknown fixture label {label!r}; expected one of {', '.join(LABELS)}") from None


def fixtures() -> list:
    return list(_fixture_table().values())


@lru_cache(maxsize=None)
def _golden_data() -> dict:
    return _load("golden_gcg25.json")


def golden() -> SparseMatrix:
    """The printed 25x25 generalized Cremmer-Gervais matrix (``p^ = -q^``)."""
    return SparseMatrix.from_json(_golden_data())


def golden_label() -> str:
    return _golden_data()["label"]
