import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplecurves import atlas, classify
from simplecurves.classify import NOT_SIMPLE, SIMPLE, UNKNOWN, nonsimple_rules, recognize
from simplecurves.germ import signature
from simplecurves.linalg import rank
from simplecurves.notation import parse_germ


@pytest.mark.parametrize(
    "text,label",
    [
        ("(1)", "A0"),
        ("(2,3)", "A2"),
        ("(1,-,-)+(-,1,-)+(-,-,1)", "L3"),
        ("(4,5,6,7)", "(4,5,6,7)"),
        ("(5,6,7,8)", "(5,6,7,8)"),
    ],
)
def test_simple_examples(text, label):
    res = recognize(parse_germ(text))
    assert res.verdict == SIMPLE and res.label == label


@pytest.mark.parametrize(
    "text,rule",
    [
        ("(5,6,7,11)", "v(phi_4)>10"),
        ("(5,6,8,9)", "v(phi_3)>=8"),
        ("(3,10,11)", "multiplicity 3, v(phi_3)>9"),
        ("(6,7,8,9,10,11)", "multiplicity >= 6"),
    ],
)
def test_valuation_rules(text, rule):
    res = recognize(parse_germ(text))
    assert res.verdict == NOT_SIMPLE and res.rule == rule
    assert res.citation


def test_congruence_example_has_witness():
    res = recognize(parse_germ("(5,6,7,9)"))
    assert res.verdict == NOT_SIMPLE
    assert res.witness == "(5,6,7,9) to L(3,1)"


def test_mixed_collision_is_unknown():
    res = recognize(parse_germ("(2,3,-,-)+(5,-,4,3)"))
    assert res.verdict == UNKNOWN
    assert "(2,3,-,-)+(-,4,5,3)" in res.ambiguity


def test_plane_confining_curve():
    res = recognize(parse_germ("(1,-)+(-,1)+(1,1)+(t,2*t)"))
    assert res.verdict == NOT_SIMPLE and res.label == "E7~"


@pytest.mark.parametrize("inst", atlas.catalog(kmax=4, nmax=3, mmax=1, kinds=("confining",)), ids=lambda i: i.label)
def test_confining_never_simple(inst):
    assert recognize(inst.germ).verdict != SIMPLE


SIMPLE_SAMPLE = atlas.catalog(kmax=4, nmax=3, mmax=0, kinds=("simple",))
invertible = st.lists(st.integers(-2, 2), min_size=16, max_size=16).map(
    lambda xs: [xs[i:i + 4] for i in range(0, 16, 4)]
).filter(lambda m: rank(m) == 4)


@settings(max_examples=15)
@given(st.sampled_from(SIMPLE_SAMPLE), invertible)
def test_verdict_invariant_under_coordinate_change(inst, m):
    g = inst.germ
    if g.n > 4:
        return
    g = g.padded(4)
    moved = g.transformed(m)
    a, b = recognize(g), recognize(moved)
    assert (a.verdict, a.label, a.ambiguity) == (b.verdict, b.label, b.ambiguity)


def test_rule_order_and_first_hit():
    g = parse_germ("(6,7,8,9,10,11)")
    rule, _ = nonsimple_rules(g, signature(g))
    assert rule.name == "multiplicity >= 6"
    assert classify.RULES[0].name == "multiplicity >= 6"
    assert nonsimple_rules(parse_germ("(2,3)"), signature(parse_germ("(2,3)"))) is None


def test_normalized_valuations():
    vals = classify.normalized_valuations(parse_germ("(5,6,7,9)").branches[0])
    assert vals[0] == 5 and sorted(v for v in vals if v is not None) == [5, 6, 7, 9]


def test_records_and_render():
    res = recognize(parse_germ("(2,3)"))
    rec = res.records()
    assert rec["verdict"] == SIMPLE and rec["label"] == "A2"
    assert "A2" in res.render()
