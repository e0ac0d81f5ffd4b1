from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ggsr.admissible import AdmissibilityError, CartanTensor, instantiate, solve
from ggsr.bdtriples import BDTriple, enumerate_triples, orbits, prec_pairs
from ggsr.exactring import Q, QHAT, Scalar, monomial
from ggsr.ggsbuild import (
    CANDIDATE_CONVENTIONS,
    DEFAULT_CONVENTION,
    DecompositionError,
    build_a,
    build_a_tilde,
    build_c,
    build_classical_r,
    build_multiparam_R,
    build_R,
    build_Rs,
    diag_q_power,
    multiparam_R_by_conjugation,
    wedge_matrix,
)
from ggsr.paperdata import fixture, golden
from ggsr.rootdata import c_plus, casimir_cartan
from ggsr.tensorops import SparseMatrix, flip21, identity, leg_index, madd, mscale, msub
from ggsr.verifier import check_hecke, check_qybe

F = Fraction
CG5 = BDTriple.from_map(5, {2: 1, 3: 2, 4: 3})
GCG5 = BDTriple.from_map(5, {1: 4, 3: 1, 4: 2})


def _cg_bundle():
    return build_R(CG5, solve(CG5).particular)


def test_rs_on_sl2():
    R = build_Rs(2)
    one = Scalar.const(1)
    assert R == SparseMatrix(4, {(1, 1): Q, (2, 2): one, (3, 3): one, (4, 4): Q, (3, 2): QHAT})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rs_is_hecke_and_solves_qybe(n):
    R = build_Rs(n)
    assert check_qybe(R, n) and check_hecke(R, n)


def test_diag_q_power():
    assert diag_q_power(CartanTensor.zero(4)) == identity(16)
    d = diag_q_power(CartanTensor.from_dict(3, {(1, 2): 1}))
    # h1 ^ h2 = (1/2)(e11^e22 - e11^e33 + e22^e33) in the e-wedge basis
    assert d[(leg_index(1, 2, 3), leg_index(1, 2, 3))] == monomial(1, F(1, 2))
    assert d[(leg_index(2, 1, 3), leg_index(2, 1, 3))] == monomial(1, F(-1, 2))
    assert d[(leg_index(1, 3, 3), leg_index(1, 3, 3))] == monomial(1, F(-1, 2))
    sq = SparseMatrix(9, {rc: v * v for rc, v in d.entries.items()})
    assert sq[(leg_index(2, 3, 3), leg_index(2, 3, 3))] == monomial(1, 1)


def test_multiparam_closed_form_matches_conjugation():
    rng = random.Random(5)
    for n in (3, 4, 5):
        for _ in range(4):
            coeffs = {p: F(rng.randint(-6, 6), rng.randint(1, 5)) for p in solve(BDTriple.trivial(n)).particular.as_dict}
            r = CartanTensor.from_dict(n, coeffs)
            assert build_multiparam_R(r) == multiparam_R_by_conjugation(r)
        assert build_multiparam_R(CartanTensor.zero(n)) == build_Rs(n)


def test_multiparam_entries_follow_e_wedge_coefficients():
    r = CartanTensor.from_dict(3, {(1, 2): F(2, 3)})
    R = build_multiparam_R(r)
    for (i, j), c in r.e_wedge_coeffs().items():
        assert R[(leg_index(i, j, 3), leg_index(i, j, 3))] == monomial(1, c)
        assert R[(leg_index(j, i, 3), leg_index(j, i, 3))] == monomial(1, -c)


def test_a_and_c_are_antisymmetric():
    for t in (CG5, GCG5):
        for scale in (1, F(1, 2)):
            a = build_a(t, scale)
            assert flip21(a) == mscale(a, -1)
    c = build_c(5, F(1, 2))
    assert flip21(c) == mscale(c, -1)
    assert wedge_matrix(3, [((2, 1), (1, 2), 1)], 1) == msub(
        SparseMatrix(9, {(leg_index(2, 1, 3), leg_index(1, 2, 3)): 1}),
        SparseMatrix(9, {(leg_index(1, 2, 3), leg_index(2, 1, 3)): 1}),
    )


def test_wedge_sum_is_order_independent():
    terms = _units(GCG5)
    shuffled = list(terms)
    random.Random(1).shuffle(shuffled)
    assert wedge_matrix(5, terms, 1) == wedge_matrix(5, shuffled, 1)


def _units(t):
    from ggsr.rootdata import root_vector

    return [(root_vector(a, t.n, True), root_vector(b, t.n), s) for a, b, s in prec_pairs(t)]


def test_cg_wedge_constants():
    _, consts, inter = build_a_tilde(CG5, solve(CG5).particular)
    assert consts[((4, 4), (3, 3))] == (1, F(2, 5))
    assert consts[((4, 4), (2, 2))] == (1, F(4, 5))
    assert consts[((4, 4), (1, 1))] == (1, F(6, 5))
    assert len(consts) == 10
    assert all(v.is_constant() for v in inter.epsilon.entries.values())


def test_gcg_wedge_constant():
    _, consts, _ = build_a_tilde(GCG5, solve(GCG5).particular)
    assert consts[((3, 4), (1, 2))] == (1, F(2, 5))


def test_a_tilde_at_one_is_a():
    for t in (CG5, GCG5, BDTriple.from_map(5, {3: 2, 4: 1})):
        fam = solve(t)
        r = instantiate(fam, [F(1, 3)] * fam.dim)
        a_tilde, _, inter = build_a_tilde(t, r)
        assert a_tilde.map(lambda v: Scalar.const(v.eval_at_one())) == inter.a


def test_trivial_triple_is_multiparameter():
    t = BDTriple.trivial(4)
    r = instantiate(solve(t), [F(1, 2), F(-1), F(2)])
    b = build_R(t, r)
    assert b.intermediates.a_tilde.is_zero()
    assert b.R == build_multiparam_R(r)
    assert b.r_classical == madd(madd(mscale(casimir_cartan(4), F(1, 2)), r.as_matrix()), c_plus(4))


def test_zero_r0_trivial_gives_standard():
    b = build_R(BDTriple.trivial(5), CartanTensor.zero(5))
    assert b.R == build_Rs(5)
    assert b.r_classical == madd(mscale(casimir_cartan(5), F(1, 2)), c_plus(5))


def test_cg_classical_r_has_ten_wedges():
    r = build_classical_r(CG5, solve(CG5).particular)
    a = msub(msub(r, madd(mscale(casimir_cartan(5), F(1, 2)), solve(CG5).particular.as_matrix())), c_plus(5))
    assert a.nnz() == 20


def test_golden_equality():
    fx = fixture("1b")
    assert build_R(fx.triple, fx.r0tilde()).R == golden()


def test_R_decomposes_by_construction_and_has_no_stray_entries():
    for o in orbits(enumerate_triples(5)):
        t = o.representative
        fam = solve(t)
        r = instantiate(fam, [F(k + 1, 3) for k in range(fam.dim)])
        b = build_R(t, r)
        expected = madd(build_multiparam_R(r), mscale(b.intermediates.a_tilde_conj, QHAT))
        assert b.R == expected
        allowed = {rc for rc in build_Rs(5).entries}
        allowed |= set(b.intermediates.a_tilde_conj.entries)
        assert set(b.R.entries) <= allowed


def test_all_representatives_pass_qybe_and_hecke():
    for o in orbits(enumerate_triples(5)):
        t = o.representative
        fam = solve(t)
        b = build_R(t, instantiate(fam, [F(-1, 2)] * fam.dim))
        assert check_qybe(b.R, 5) and check_hecke(b.R, 5), t


def test_exponent_denominators_divide_n_without_parameters():
    for t in (CG5, GCG5):
        b = build_R(t, solve(t).particular)
        for v in b.R.entries.values():
            assert all(5 % e.denominator == 0 for e in v.exponents())


def test_non_admissible_r0_rejected():
    with pytest.raises(AdmissibilityError):
        build_R(CG5, CartanTensor.zero(5))
    with pytest.raises(AdmissibilityError):
        build_R(CG5, CartanTensor.zero(4))


def test_other_conventions_do_not_reproduce_golden():
    fx = fixture("1b")
    for conv in CANDIDATE_CONVENTIONS:
        if conv == DEFAULT_CONVENTION:
            continue
        try:
            R = build_R(fx.triple, fx.r0tilde(), convention=conv).R
        except DecompositionError:
            continue
        assert R != golden()


def test_bundle_json():
    b = _cg_bundle()
    js = b.to_json()
    assert js["triple"] == CG5.encode()
    assert js["matrix"]["dim"] == 25
    assert {"alpha": [4, 4], "beta": [1, 1], "sign": 1, "c": [6, 5]} in js["wedge_constants"]
    assert SparseMatrix.from_json(js["matrix"]) == b.R
