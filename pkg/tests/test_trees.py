"""Window semantics: materialization, action, balls, metric, keys, JSON."""

import math
import random

import pytest

from treebox.catalog import catalog_tree
from treebox.errors import (
    ActionUndefinedError,
    ContractViolationError,
    TreeJSONError,
    WindowExceededError,
)
from treebox.trees import (
    FiniteTree,
    LazyTree,
    act,
    ball,
    ball_metric,
    canonical_key,
    materialize,
    rel_ball,
    spot_check_prefix_closure,
    tree_dumps,
    tree_from_json,
    tree_loads,
    tree_to_dot,
    tree_to_json,
    truncate,
    validate,
)
from treebox.words import text_to_letters


def lt(name, *params):
    return catalog_tree(name, *params)


def verts(ft):
    return set(ft.vertex_texts())


def test_materialize_examples():
    assert verts(materialize(lt("F1"), 3)) == {"e", "a", "aa", "aaa"}
    assert verts(materialize(lt("B0"), 2)) == {"e", "b", "B", "bb", "BB"}
    assert verts(materialize(lt("K"), 1)) == {"e", "a", "A", "b", "B"}


def test_materialize_contract_violation():
    broken = LazyTree(2, lambda v: v == () or v == (1, 1), "broken")
    with pytest.raises(ContractViolationError) as err:
        materialize(broken, 3)
    assert err.value.offender == "a"


def test_act_finite_example():
    t = materialize(lt("F1"), 6)
    shifted = act(t, "aa")
    assert shifted.window == 4
    assert verts(shifted) == {"e", "a", "aa", "aaa", "aaaa", "A", "AA"}


def test_act_lazy_line_invariance():
    b0 = lt("B0")
    moved = act(b0, "b")
    assert materialize(moved, 5, check=False).vertices == materialize(b0, 5, check=False).vertices


def test_act_identity_and_errors():
    t = materialize(lt("C"), 4)
    same = act(t, "e")
    assert same.window == 4 and same.vertices == t.vertices
    with pytest.raises(ActionUndefinedError):
        act(t, "ba")  # not a vertex of the grid... the b-column at e has no tips
    with pytest.raises(ActionUndefinedError):
        act(lt("B0"), "a")


def test_ball_examples():
    assert verts(ball(lt("K"), "e", 1)) == {"e", "a", "A", "b", "B"}
    assert verts(ball(lt("B", 2), "e", 2)) == {"e", "a", "A", "b", "B", "bb", "BB"}
    assert verts(ball(lt("F1"), "a", 1)) == {"A", "e", "a"}


def test_ball_window_guard():
    t = materialize(lt("C"), 5)
    with pytest.raises(WindowExceededError) as err:
        ball(t, "aa", 4)
    assert err.value.max_valid == 3


def test_metric_examples():
    b2 = materialize(lt("B", 2), 8)
    b4 = materialize(lt("B", 4), 8)
    m = ball_metric(b2, b4)
    assert (m.agreement_radius, m.exact) == (2, True)
    assert math.isclose(m.distance, math.exp(-2))

    self_m = ball_metric(b2, b2)
    assert (self_m.agreement_radius, self_m.exact) == (8, False)

    m0 = ball_metric(materialize(lt("B0"), 6), materialize(lt("C"), 6))
    assert (m0.agreement_radius, m0.distance, m0.exact) == (0, 1.0, True)


def test_metric_symmetric_and_bounded():
    rng = random.Random(5)
    entries = [lt("B", 1), lt("B", 3), lt("C"), lt("K"), lt("B0prime")]
    for _ in range(40):
        t1 = materialize(rng.choice(entries), 6, check=False)
        t2 = materialize(rng.choice(entries), 6, check=False)
        m12, m21 = ball_metric(t1, t2), ball_metric(t2, t1)
        assert m12 == m21
        assert m12.distance <= 1.0


def test_canonical_key_examples():
    b1 = lt("B", 1)
    assert canonical_key(ball(b1, "e", 2)) == canonical_key(ball(b1, "b", 2))
    f1 = lt("F1")
    assert canonical_key(ball(f1, "e", 2)) != canonical_key(ball(f1, "a", 2))
    k1 = canonical_key(ball(b1, "e", 2))
    assert k1 == canonical_key(ball(b1, "e", 2))
    assert k1.text() == canonical_key(ball(b1, "e", 2)).text()


def test_validate_reports():
    missing = FiniteTree(2, 2, frozenset({(), (1, 2)}))
    report = validate(missing)
    assert not report.ok and any("missing prefix a" in v for v in report.violations)

    ok_tree = FiniteTree(2, 2, frozenset({(), (1,), (1, 1)}))
    assert validate(ok_tree).ok

    bad = FiniteTree(2, 2, frozenset({(), (1, -1)}))
    report = validate(bad)
    assert not report.ok and any("non-reduced" in v for v in report.violations)


def test_action_composition_restricted():
    t = materialize(lt("Tlevel2"), 10)
    g = text_to_letters("aa", 2)
    h = text_to_letters("Ab", 2)
    left = act(act(t, g), h)
    right = act(t, "ab")
    w = min(left.window, right.window)
    assert truncate(left, w).vertices == truncate(right, w).vertices


def test_materialize_act_commutes_with_truncation():
    k = lt("K")
    g = text_to_letters("aaaa", 2)
    via_lazy = materialize(act(k, g), 4, check=False)
    via_finite = act(materialize(k, 10, check=False), g)
    assert truncate(via_finite, 4).vertices == via_lazy.vertices


def test_rel_ball_matches_ball():
    c = lt("C")
    g = text_to_letters("ab", 2)
    assert rel_ball(c.member, g, 3, 2) == ball(c, g, 3).vertices


def test_json_round_trip_and_errors(tmp_path):
    ft = materialize(lt("K"), 6, check=False)
    again = tree_from_json(tree_to_json(ft))
    assert again == ft
    assert tree_loads(tree_dumps(ft)) == ft

    with pytest.raises(TreeJSONError) as err:
        tree_from_json({"rank": 2, "window": 2, "vertices": ["e", "ab"]})
    assert "missing prefix a" in str(err.value)
    with pytest.raises(TreeJSONError):
        tree_from_json({"rank": 2, "vertices": []})
    with pytest.raises(TreeJSONError):
        tree_from_json({"rank": 0, "window": 1, "vertices": ["e"]})
    with pytest.raises(TreeJSONError):
        tree_loads("{not json")


def test_dot_export_orientation():
    dot = tree_to_dot(materialize(lt("B0prime"), 1))
    assert '"e" -> "a" [label="a"];' in dot
    assert '"A" -> "e" [label="a"];' in dot


def test_spot_check_catches_broken_oracle():
    broken = LazyTree(2, lambda v: len(v) != 1, "holes")
    report = spot_check_prefix_closure(broken, max_len=6, samples=300)
    assert not report.ok
