# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

from bouquet_o.errors import RegimeOutOfScopeError, UserInputError
from bouquet_o.paramcat import (
    HomDigraph,
    Regime,
    ResConvention,
    audit,
    classify,
    hom_digraph,
    mn_exact,
    multiplicity_table,
    reflect,
    res_table,
    ringel_symmetric,
    sample_lambdas,
    slice_lambda,
    socle_table,
    support_cross_check,
    support_dims_ambient,
)


@pytest.mark.parametrize(
    "ell, lam, regime",
    [
        (2, "-1/2", Regime.SINGULAR),
        (2, 0, Regime.SINGULAR),
        (3, -2, Regime.SINGULAR),
        (2, 1, Regime.INTEGRAL_LARGE),
        (2, -2, Regime.INTEGRAL_LARGE),
        (2, "-5/2", Regime.HALF_INTEGRAL_LARGE),
        (2, "3/2", Regime.HALF_INTEGRAL_LARGE),
        (2, "1/2", Regime.IN_WINDOW_NONSINGULAR),
        (2, "1/3", Regime.GENERIC_LARGE),
        (3, "1/3", Regime.IN_WINDOW_NONSINGULAR),
        (3, "-7/3", Regime.GENERIC_LARGE),
    ],
)
def test_classify_examples(ell, lam, regime):
    result = classify(ell, lam)
    assert result.regime is regime
    assert result.singular is (regime is Regime.SINGULAR)


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_classify_sampled_properties(ell):
    for lam in sample_lambdas(ell, 200, seed=ell):
        result = classify(ell, lam)
        assert result.abelian_localization is not result.singular
        assert result.finite_hom_dim is not result.singular
        assert (result.regime is Regime.SINGULAR) is result.singular
        assert classify(ell, reflect(lam)).regime is result.regime


def test_classify_rejects_single_loop():
    with pytest.raises(UserInputError):
        classify(1, 3)


def test_reflect_and_slice_lambda():
    assert reflect(Fraction(1, 3)) == Fraction(-4, 3)
    assert reflect(reflect("2/5")) == Fraction(2, 5)
    assert slice_lambda(-3) == -3
    assert slice_lambda(2) == -3


def test_sample_lambdas_deterministic():
    first = sample_lambdas(3, 50, seed=7)
    assert first == sample_lambdas(3, 50, seed=7)
    assert all(abs(x) <= 6 and x.denominator <= 12 for x in first)


@pytest.mark.parametrize(
    "n, ell, lam, sign, expected",
    [
        (2, 3, "3/2", "-", False),
        (2, 3, "-7/4", "-", True),
        (2, 2, -2, "+", False),
        (2, 2, -2, "-", True),
        (1, 4, 0, "−", False),
    ],
)
def test_mn_exact_examples(n, ell, lam, sign, expected):
    assert mn_exact(n, ell, lam, sign) is expected


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_mn_exact_matches_two_dimensional_rule(ell):
    for q in range(1, 5):
        for p in range(-6 * q, 6 * q + 1):
            lam = Fraction(p, q)
            hit = (2 * lam).denominator == 1 and 2 * lam >= 0
            hit = hit or ((lam - (ell - 1)).denominator == 1 and lam - (ell - 1) >= 0)
            assert mn_exact(2, ell, lam, "-") is (not hit)
            assert mn_exact(2, ell, lam, "+") is mn_exact(2, ell, reflect(lam), "-")


def test_mn_exact_rejects_bad_arguments():
    with pytest.raises(UserInputError):
        mn_exact(2, 2, 1, "x")
    with pytest.raises(UserInputError):
        mn_exact(0, 2, 1, "+")


@pytest.mark.parametrize(
    "ell, regime, edges",
    [
        (2, Regime.INTEGRAL_LARGE, {(2, 1), (4, 3), (4, 2), (3, 1), (4, 1)}),
        (3, Regime.INTEGRAL_LARGE, {(2, 1), (3, 2), (5, 4), (6, 5), (5, 3), (4, 2), (6, 1), (5, 2)}),
        (3, Regime.HALF_INTEGRAL_LARGE, {(6, 1), (5, 2), (4, 3)}),
        (3, Regime.GENERIC_LARGE, set()),
    ],
)
def test_hom_digraph(ell, regime, edges):
    digraph = hom_digraph(ell, regime)
    assert set(digraph.edges) == edges
    assert ringel_symmetric(digraph)


@pytest.mark.parametrize("ell", range(2, 8))
def test_ringel_symmetry_all_levels(ell):
    assert ringel_symmetric(hom_digraph(ell, Regime.INTEGRAL_LARGE))
    assert ringel_symmetric(hom_digraph(ell, Regime.HALF_INTEGRAL_LARGE))


def test_ringel_detects_asymmetry():
    assert not ringel_symmetric(HomDigraph(2, Regime.INTEGRAL_LARGE, ((2, 1),)))


@pytest.mark.parametrize("ell", range(2, 8))
@pytest.mark.parametrize("regime", [Regime.INTEGRAL_LARGE, Regime.HALF_INTEGRAL_LARGE, Regime.GENERIC_LARGE])
def test_hom_edges_match_multiplicities(ell, regime):
    edges = hom_digraph(ell, regime).edges
    rows = multiplicity_table(ell, regime).rows
    from_rows = {(s, t) for t, row in rows.items() for s in row if s != t}
    assert set(edges) == from_rows
    assert len(set(edges)) == len(edges)
    assert all(s > t for s, t in edges)


@pytest.mark.parametrize("ell", range(2, 9))
def test_half_integral_homs_are_a_perfect_matching(ell):
    edges = hom_digraph(ell, Regime.HALF_INTEGRAL_LARGE).edges
    assert len(edges) == ell
    assert sorted(v for edge in edges for v in edge) == list(range(1, 2 * ell + 1))
    assert all(s + t == 2 * ell + 1 for s, t in edges)


def test_closed_forms_need_large_regime():
    with pytest.raises(RegimeOutOfScopeError):
        hom_digraph(2, Regime.SINGULAR)
    with pytest.raises(RegimeOutOfScopeError):
        multiplicity_table(2, Regime.IN_WINDOW_NONSINGULAR)
    with pytest.raises(RegimeOutOfScopeError):
        res_table(2, Regime.GENERIC_LARGE)


def test_multiplicity_tables():
    two = multiplicity_table(2, Regime.INTEGRAL_LARGE)
    assert two.rows == {1: (1, 2, 3, 4), 2: (2, 4), 3: (3, 4), 4: (4,)}
    three = multiplicity_table(3, Regime.INTEGRAL_LARGE)
    assert three.rows == {1: (1, 2, 6), 2: (2, 3, 4, 5), 3: (3, 5), 4: (4, 5), 5: (5, 6), 6: (6,)}
    half = multiplicity_table(3, Regime.HALF_INTEGRAL_LARGE)
    assert half.rows == {1: (1, 6), 2: (2, 5), 3: (3, 4), 4: (4,), 5: (5,), 6: (6,)}
    generic = multiplicity_table(3, Regime.GENERIC_LARGE)
    assert all(row == (i,) for i, row in generic.rows.items())


def test_multiplicity_frame():
    frame = multiplicity_table(2, Regime.INTEGRAL_LARGE).to_frame()
    assert list(frame.columns) == ["simple", "Δ1", "Δ2", "Δ3", "Δ4"]
    assert list(frame["Δ1"]) == [1, 1, 1, 1]
    assert list(frame["Δ4"]) == [0, 0, 0, 1]


@pytest.mark.parametrize("ell", range(2, 7))
def test_socle_is_a_constituent(ell):
    for regime in (Regime.INTEGRAL_LARGE, Regime.HALF_INTEGRAL_LARGE, Regime.GENERIC_LARGE):
        rows = multiplicity_table(ell, regime).rows
        for k, index in socle_table(ell, regime).items():
            assert index in rows[k]


def test_socle_tables_level_three():
    assert socle_table(3, Regime.INTEGRAL_LARGE) == {1: 6, 2: 5, 3: 5, 4: 5, 5: 6, 6: 6}
    assert socle_table(3, Regime.HALF_INTEGRAL_LARGE) == {1: 6, 2: 5, 3: 4, 4: 4, 5: 5, 6: 6}


def test_res_table_printed_level_three():
    table = res_table(3, Regime.INTEGRAL_LARGE)
    assert table.delta_images[1] == ("α2", "β2")
    assert table.delta_images[2] == ("α_mid", "α_mid")
    assert table.delta_images[3] == table.delta_images[4] == ("α_mid",)
    assert table.delta_images[5] == ("α5", "β5")
    assert table.delta_images[6] is None
    assert table.flags == {2: "FORCED", 6: "AMBIGUOUS"}


def test_res_table_support_aligned_and_half():
    table = res_table(2, Regime.HALF_INTEGRAL_LARGE, ResConvention.SUPPORT_ALIGNED)
    assert table.delta_images[1] == ("α1", "β1")
    assert table.delta_images[4] == ("α3", "β3")
    assert table.simple_images[2] == ()
    assert table.delta_images[2] == ("α_mid",)
    rendered = table.to_json()
    assert rendered["simple_images"]["S2"] == "0"
    assert rendered["delta_images"]["Δ1"] == "Δ_α1 ⊕ Δ_β1"


def test_support_dims_ambient():
    assert support_dims_ambient(2) == {1: 4, 2: 5, 3: 5, 4: 6}


@pytest.mark.parametrize("ell", range(2, 7))
def test_support_cross_check_agrees(ell):
    frame = support_cross_check(ell)
    assert len(frame) == 2 * ell
    assert frame["match"].all()
    assert list(frame.columns) == ["simple", "closed_form", "slice_label", "slice_dim", "engine", "match"]


def _expected_status(ell, regime, index):
    if index in {ell - 1, 2 * ell}:
        return "AMBIGUOUS"
    if regime is Regime.INTEGRAL_LARGE and 2 <= index <= ell - 2:
        return "DRIFT"
    return "PASS"


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
@pytest.mark.parametrize("regime", [Regime.INTEGRAL_LARGE, Regime.HALF_INTEGRAL_LARGE])
def test_audit_has_no_unexplained_failures(ell, regime):
    report = audit(ell, regime)
    assert len(report.checks) == 4 * ell
    for check in report.checks:
        assert check.status == _expected_status(ell, regime, check.index), check.detail
    assert report.counts()["FAIL"] == 0


@pytest.mark.parametrize("ell", [4, 5])
def test_audit_drift_rows_name_the_mismatch(ell):
    report = audit(ell, Regime.INTEGRAL_LARGE)
    drift = [check for check in report.checks if check.status == "DRIFT"]
    assert sorted({check.index for check in drift}) == list(range(2, ell - 1))
    assert {check.name.split("[")[0] for check in drift} == {"res_exact", "socle"}
    for check in drift:
        i = check.index
        assert f"β{2 * ell - i + 1}" in check.detail
        assert f"S{2 * ell + 1 - i} 三项" in check.detail
    assert "DRIFT" in report.to_text()
    assert report.to_json()["summary"]["DRIFT"] == len(drift)


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
def test_audit_generic_is_trivial_at_every_level(ell):
    assert audit(ell, Regime.GENERIC_LARGE).counts() == {"PASS": 4 * ell}


def test_audit_generic_is_trivial():
    report = audit(3, Regime.GENERIC_LARGE)
    assert report.counts() == {"PASS": 12}
    assert report.slice_lambda == Fraction(-10, 3)


def test_audit_uses_slice_lambda_and_renders():
    report = audit(2, Regime.INTEGRAL_LARGE, lam=2)
    assert report.slice_lambda == -3
    text = report.to_text()
    assert "=" * 60 in text
    assert "res_exact[1]" in text
    assert report.to_json()["slice_lambda"] == "-3"
