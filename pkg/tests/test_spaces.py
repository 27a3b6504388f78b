"""Catalog integrity: dimensions, dictionaries, sequences, restriction."""

import pytest

from roofflop import bundle_expr as be
from roofflop.spaces import (
    CatalogError,
    catalog_from_json,
    catalog_to_json,
    check_sequence_rule,
    describe,
    expr_det,
    expr_rank,
    load_standard_catalog,
    restrict,
)


@pytest.fixture(scope="module")
def catalog():
    return load_standard_catalog()


DIMENSIONS = {
    "E_D4": 9,   # root count of D4 outside the {1,2} parabolic; also 6 + 3
    "S_plus": 6,
    "S_minus": 6,
    "Q6": 6,
    "Q5": 5,
    "FlagB3": 8,  # P^3-bundle over the five-quadric
    "R": 7,       # P^2-bundle over the five-quadric; host dimension minus one
}

CANONICALS = {
    "S_plus": (-6,),
    "S_minus": (-6,),
    "Q6": (-6,),
    "Q5": (-5,),
    "E_D4": (-4, -4),
    "FlagB3": (-3, -4),
    "R": (-3, -3),
}


@pytest.mark.parametrize("name,dim", sorted(DIMENSIONS.items()))
def test_dimensions(catalog, name, dim):
    assert catalog.space(name).dimension == dim


@pytest.mark.parametrize("name,omega", sorted(CANONICALS.items()))
def test_canonical_twists(catalog, name, omega):
    assert catalog.space(name).canonical_twist == omega


def test_unknown_space(catalog):
    with pytest.raises(CatalogError):
        catalog.space("P2")


def test_dictionary_ranks(catalog):
    e = catalog.space("E_D4")
    assert expr_rank(e, be.parse_bundle_expr("V")) == 3
    assert expr_rank(e, be.parse_bundle_expr("V^v")) == 3
    assert expr_rank(e, be.parse_bundle_expr("U+")) == 4
    assert expr_rank(e, be.parse_bundle_expr("U-^v")) == 4
    q5 = catalog.space("Q5")
    assert expr_rank(q5, be.parse_bundle_expr("S")) == 4
    assert expr_rank(q5, be.parse_bundle_expr("G")) == 3
    r = catalog.space("R")
    assert expr_rank(r, be.parse_bundle_expr("S")) == 4
    assert expr_rank(r, be.parse_bundle_expr("S'")) == 4
    assert expr_rank(r, be.parse_bundle_expr("EE")) == 3
    assert expr_rank(r, be.parse_bundle_expr("G'")) == 3


def test_every_sequence_rule_is_consistent(catalog):
    # rank and determinant additivity for all registered exact sequences
    for rule in catalog.sequences.values():
        report = check_sequence_rule(catalog, rule)
        assert report["rank_ok"], report
        assert report["det_ok"], report


def test_sequence_symbols_resolve(catalog):
    for rule in catalog.sequences.values():
        entry = catalog.space(rule.space)
        for term in (rule.left, rule.middle, rule.right):
            for name in be.atoms_of(term):
                assert any(name in m.dictionary for m in entry.models.values()), (
                    rule.name,
                    name,
                )


def test_fibration_entries(catalog):
    p_plus = catalog.fibrations["p_plus"]
    assert p_plus.total == "E_D4" and p_plus.base == "S_plus"
    assert p_plus.pushforward_rules[(1, 1)] == "U+(2)"
    assert catalog.fibrations["p_minus"].pushforward_rules[(1, 1)] == "U-(2)"
    assert catalog.fibrations["p_R"].fiber_dim == 2


# -- restriction ------------------------------------------------------------


def test_restrict_line_bundle(catalog):
    e = restrict(be.parse_bundle_expr("O(1,1)"), "FlagB3", "R", catalog)
    assert e == be.Line((1, 1))


def test_restrict_spinor_to_quadric_section(catalog):
    # the two spinor bundles on the six-quadric restrict to the unique one
    assert restrict(be.parse_bundle_expr("S+"), "Q6", "Q5", catalog) == be.Atom("S")
    assert restrict(be.parse_bundle_expr("S-"), "Q6", "Q5", catalog) == be.Atom("S")
    e = restrict(be.parse_bundle_expr("S+^v(2)"), "Q6", "Q5", catalog)
    assert e == be.Twist(be.Dual(be.Atom("S")), (2,))


def test_restrict_identity_line(catalog):
    assert restrict(be.Line((0, 0)), "FlagB3", "R", catalog) == be.Line((0, 0))


def test_restrict_requires_registered_path(catalog):
    with pytest.raises(CatalogError):
        restrict(be.Line((1,)), "Q5", "Q6", catalog)
    with pytest.raises(CatalogError):
        restrict(be.Atom("V"), "FlagB3", "R", catalog)


# -- serialization ----------------------------------------------------------


def test_describe_mentions_every_space(catalog):
    text = describe(catalog)
    for name in DIMENSIONS:
        assert name in text
    assert "seqfund1" in text and "p_plus" in text


def test_catalog_json_round_trip(catalog):
    dumped = catalog_to_json(catalog)
    loaded = catalog_from_json(dumped)
    assert catalog_to_json(loaded) == dumped
    assert loaded.space("R").dimension == 7


def test_env_override(tmp_path, monkeypatch):
    path = tmp_path / "alt.json"
    path.write_text(catalog_to_json(load_standard_catalog()), encoding="utf-8")
    monkeypatch.setenv("ROOFFLOP_CATALOG", str(path))
    alt = load_standard_catalog()
    assert alt.space("E_D4").dimension == 9
    monkeypatch.delenv("ROOFFLOP_CATALOG")


def test_rank_additivity_through_determinants(catalog):
    # det(middle) = det(left) (x) det(right) spelled out for one rule
    rule = catalog.sequences["seqfund1"]
    entry = catalog.space(rule.space)
    d_left = expr_det(entry, rule.left)
    d_mid = expr_det(entry, rule.middle)
    d_right = expr_det(entry, rule.right)
    assert tuple(l + r for l, r in zip(d_left, d_right)) == d_mid
