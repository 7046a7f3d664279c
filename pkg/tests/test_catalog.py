"""Catalog oracles against independent bottom-up set constructions."""

import pytest

import oracles
from treebox.catalog import catalog_entry, catalog_tree, standard_entries
from treebox.errors import UnknownTreeError
from treebox.trees import materialize, rel_ball, spot_check_prefix_closure, act
from treebox.words import power, text_to_letters


def mat(name, params, window):
    return set(materialize(catalog_tree(name, *params), window, check=False).vertices)


@pytest.mark.parametrize(
    "name,params,window,builder",
    [
        ("full", (2,), 6, lambda w: oracles.full_set(w, 2)),
        ("ray", (1,), 12, lambda w: oracles.ray_set(w, 1)),
        ("line", (1,), 12, lambda w: oracles.line_set(w, 1)),
        ("B0", (), 12, lambda w: oracles.line_set(w, 2)),
        ("cross", (1, 2), 12, oracles.cross_set),
        ("B", (1,), 12, lambda w: oracles.bm_set(w, 1)),
        ("B", (2,), 12, lambda w: oracles.bm_set(w, 2)),
        ("B", (5,), 12, lambda w: oracles.bm_set(w, 5)),
        ("B0prime", (), 12, oracles.b0prime_set),
        ("C", (), 10, oracles.c_set),
        ("Tlevel2", (), 10, oracles.tlevel2_set),
        ("F1", (), 12, lambda w: oracles.ray_set(w, 1)),
        ("F2", (), 7, oracles.f2_set),
        ("K", (), 12, oracles.k_set),
    ],
)
def test_oracle_matches_bottom_up(name, params, window, builder):
    assert mat(name, params, window) == builder(window)


def test_k_matches_bottom_up_window_20():
    assert mat("K", (), 20) == oracles.k_set(20)


def test_bm_membership_examples():
    b2 = catalog_tree("B", 2)
    assert b2.member(text_to_letters("bba", 2))
    assert not b2.member(text_to_letters("ba", 2))


def test_f2_membership_examples():
    f2 = catalog_tree("F2")
    assert f2.member(text_to_letters("ab", 2))
    assert not f2.member(text_to_letters("Ba", 2))


def test_k_membership_examples():
    # frozen from the bottom-up stage sets: the level-1 block at b carries
    # tip pairs, so "ba" is a vertex; decoration extents double with the
    # 2-adic depth of the column, pinning the other cases
    k = catalog_tree("K")
    cases = {
        "aaaa": True,
        "ba": True,
        "bba": True,
        "aaba": True,
        "aab": True,
        "aabb": True,
        "aabba": False,
        "aabbb": False,
        "a4b4": True,
        "a4b5": False,
        "a4b3a": True,
    }
    for text, expect in cases.items():
        v = text_to_letters(text, 2)
        assert k.member(v) == expect, text
        assert (v in oracles.k_set(len(v))) == expect, text


def test_prefix_closure_spot_checks():
    for entry in standard_entries():
        report = spot_check_prefix_closure(entry.tree, max_len=12, samples=400)
        assert report.ok, (entry.name, report.violations)


def test_strict_growth_in_window():
    for entry in standard_entries():
        small = materialize(entry.tree, 4, check=False)
        big = materialize(entry.tree, 8, check=False)
        assert len(big) > len(small), entry.name


def test_bm_invariance_under_period():
    for m in (1, 2, 3):
        bm = catalog_tree("B", m)
        moved = act(bm, power(2, m))
        assert (
            materialize(moved, 8, check=False).vertices
            == materialize(bm, 8, check=False).vertices
        )


def test_k_recurrence_seed():
    k = catalog_tree("K")
    for i in (1, 2, 3):
        step, radius = 1 << i, (1 << i) - 1
        assert rel_ball(k.member, power(1, step), radius, 2) == rel_ball(
            k.member, (), radius, 2
        )


def test_catalog_errors():
    with pytest.raises(UnknownTreeError):
        catalog_tree("nosuch")
    with pytest.raises(UnknownTreeError):
        catalog_tree("B", 0)
    with pytest.raises(UnknownTreeError):
        catalog_tree("cross", 1, 1)
    with pytest.raises(UnknownTreeError):
        catalog_tree("full", 0)


def test_entry_metadata():
    entry = catalog_entry("B", 2)
    assert entry.name == "B" and entry.params == (2,)
    assert "b^(mk)" in entry.citation or "mk" in entry.citation
