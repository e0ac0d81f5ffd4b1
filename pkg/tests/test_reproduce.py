from __future__ import annotations

from fractions import Fraction

import pytest

from ggsr.ggsbuild import DEFAULT_CONVENTION
from ggsr.paperdata import fixture, fixtures
from ggsr.reproduce import (
    SAMPLE_VALUES,
    parameter_samples,
    printed_R,
    probe_conventions,
    probe_interpretations,
    quantized_wedge_sum,
)
from ggsr.exactring import monomial
from ggsr.tensorops import leg_index
from ggsr.verifier import check_hecke, check_qybe

F = Fraction


def test_parameter_samples_cover_every_value():
    assert parameter_samples(0) == [()]
    assert parameter_samples(1) == [(F(0),), (F(1),), (F(-1, 2),)]
    for k in (3, 6):
        rows = parameter_samples(k)
        assert len(rows) == 3 and len(set(rows)) == 3
        for j in range(k):
            assert {r[j] for r in rows} == set(SAMPLE_VALUES)


def test_quantized_wedge_layout():
    w = quantized_wedge_sum(3, [((2, 1), (1, 2), F(1, 3), -1)])
    assert w[(leg_index(2, 1, 3), leg_index(1, 2, 3))] == monomial(-1, F(-1, 3))
    assert w[(leg_index(1, 2, 3), leg_index(2, 1, 3))] == monomial(1, F(1, 3))
    assert w.nnz() == 2


def test_printed_R_equals_build_where_no_errata():
    from ggsr.ggsbuild import build_R

    for fx in fixtures():
        if fx.has_wedge_errata:
            continue
        values = dict(zip(fx.params, parameter_samples(len(fx.params))[-1]))
        assert printed_R(fx.label, values) == build_R(fx.triple, fx.r0tilde(values)).R


@pytest.mark.parametrize("label", ["2b", "2f", "3b"])
def test_errata_are_forced_by_qybe(label):
    fx = fixture(label)
    for s in parameter_samples(len(fx.params)):
        values = dict(zip(fx.params, s))
        assert not check_qybe(printed_R(label, values), 5)
        fixed = printed_R(label, values, corrected=True)
        assert check_qybe(fixed, 5) and check_hecke(fixed, 5)


def test_3b_printed_constant_fine_only_at_z_two():
    # (z-2)/4 and (2-z)/4 coincide at z = 2
    values = {"x": F(1), "y": F(0), "z": F(2)}
    assert check_qybe(printed_R("3b", values), 5)


def test_probes_agree_with_defaults():
    conv = probe_conventions()
    assert conv["winner"] == DEFAULT_CONVENTION.name and conv["matches_default"]
    assert [t["golden"] for t in conv["tried"][:-1]] == [False] * (len(conv["tried"]) - 1)
    interp = probe_interpretations()
    assert interp["winner"] == "A"
