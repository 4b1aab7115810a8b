from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import random_plane_corpus
from simplecurves.germ import delta
from simplecurves.notation import parse_germ
from simplecurves.plane import (
    ade_recognize,
    bpv_simple,
    multiplicity_sequence,
    resolution_tree,
    resolve_report,
    wall_modality,
)


def euclid_sequence(m: int, n: int) -> list[int]:
    """Multiplicity sequence of ``x^n = y^m`` from the Euclidean algorithm."""
    seq = []
    while m > 1:
        q, rem = divmod(n, m)
        seq += [m] * q
        m, n = rem, m
    return seq + [1]


@given(st.integers(2, 6), st.integers(3, 15))
def test_monomial_multiplicity_sequence(m, n):
    assume(n > m and gcd(m, n) == 1)
    g = parse_germ(f"({m},{n})")
    assert multiplicity_sequence(g.branches[0]) == euclid_sequence(m, n)
    tree = resolution_tree(g)
    assert tree.milnor() == (m - 1) * (n - 1)
    assert tree.delta() == delta(g)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_tree_delta_agrees_with_jet_delta(seed):
    for g in random_plane_corpus(seed=seed, size=15):
        tree = resolution_tree(g)
        assert tree.delta() == delta(g)
        assert tree.milnor() == 2 * delta(g) - g.r + 1


@pytest.mark.parametrize(
    "text,name",
    [
        ("(1,-)", None),
        ("(2,3)", "A2"),
        ("(1,-)+(-,1)", "A1"),
        ("(t,t^2)+(t,-t^2)", "A3"),
        ("(2,5)", "A4"),
        ("(1,-)+(-,1)+(1,1)", "D4"),
        ("(2,3)+(-,1)", "D5"),
        ("(3,4)", "E6"),
        ("(2,3)+(1,-)", "E7"),
        ("(3,5)", "E8"),
    ],
)
def test_ade_names(text, name):
    tree = resolution_tree(parse_germ(text))
    if name is None:
        assert ade_recognize(tree) in (None, "A0")
        return
    assert ade_recognize(tree) == name
    assert bpv_simple(tree)
    assert wall_modality(tree) == 0


@pytest.mark.parametrize(
    "text",
    [
        "(1,-)+(-,1)+(1,1)+(t,2*t)",  # four lines
        "(-,1)+(2,1)+(3*t^2,t)",
        "(3,7)",
        "(2,3)+(2,3*t^3)",
    ],
)
def test_unimodal_or_worse_not_simple(text):
    tree = resolution_tree(parse_germ(text))
    assert wall_modality(tree) >= 1
    assert not bpv_simple(tree)
    assert ade_recognize(tree) is None


def test_satellites():
    assert resolution_tree(parse_germ("(2,3)")).satellite_count() == 1
    assert resolution_tree(parse_germ("(3,4)")).satellite_count() == 2
    assert resolution_tree(parse_germ("(1,-)+(-,1)")).satellite_count() == 0


def test_export_lists_every_node():
    tree = resolution_tree(parse_germ("(2,3)"))
    lines = tree.export().splitlines()
    assert lines[0].startswith("node=0 parent=- chart=root")
    assert sum("satellite=true" in ln for ln in lines) == tree.satellite_count()


def test_resolve_report_fields():
    rep = resolve_report(parse_germ("(3,5)"))
    assert rep["multiplicity_sequences"] == [[3, 2, 1]]
    assert rep["modality"] == 0 and rep["bpv_simple"] and rep["ade"] == "E8"
