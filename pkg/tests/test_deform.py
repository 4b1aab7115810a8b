from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplecurves import deform
from simplecurves.deform import DeformationError, DeformationFamily, specialize
from simplecurves.germ import delta, signature
from simplecurves.notation import parse_germ


def test_corrected_congruence_relations():
    f = deform.CONGRUENCE_FAMILY
    assert deform.verify_congruence(f, "s*z - x^2", "t^3 - s", 3)
    assert deform.verify_congruence(f, "w", "t^3 - s", 3)
    assert not deform.verify_congruence(f, "s*z - x^2", "t^3 - s", 4)


def test_corrected_surface_contains_both_branches():
    f = deform.SURFACE_FAMILY_RESCALED
    assert deform.verify_on_surface(f, deform.SURFACE_CORRECTED, branch=1, mode="exact")
    assert deform.verify_on_surface(f, deform.SURFACE_CORRECTED, branch=0, mode="mod-degree-3")


def test_uncorrected_surface_coefficient_misses_a3_branch():
    f = deform.SURFACE_FAMILY
    assert deform.verify_on_surface(f, deform.SURFACE, branch=0, mode="mod-degree-3")
    assert not deform.verify_on_surface(f, deform.SURFACE, branch=1, mode="exact")
    assert not deform.verify_on_surface(deform.SURFACE_FAMILY_RESCALED, deform.SURFACE, branch=1)


def test_rescaled_family_has_same_end_fibres():
    for s0 in (0, 1):
        a = specialize(deform.SURFACE_FAMILY, s0)
        b = specialize(deform.SURFACE_FAMILY_RESCALED, s0)
        assert signature(a) == signature(b)


def test_linear_form_as_coefficients():
    f = deform.CONGRUENCE_FAMILY
    as_text = deform.evaluate_form(f, "s*z - x^2", 0)
    assert as_text == deform.evaluate_form(f, "s*z3 - z1^2", 0)
    assert deform.evaluate_form(f, [0, 0, 0, 1], 0) == deform.evaluate_form(f, "w", 0)


def test_shipped_families_verify():
    reports = deform.verify_families()
    assert len(reports) == len(deform.shipped_families())
    assert all(r.ok for r in reports), [r.render() for r in reports if not r.ok]


@pytest.mark.parametrize("k", range(2, 13))
def test_akl_family_lies_on_rank_condition(k):
    f = deform.akl_to_dk_family(k)
    for minor in deform.akl_minors(k):
        for b in range(len(f.branches)):
            assert deform.evaluate_form(f, minor, b).is_zero()
    rep = deform.verify_family(f)
    assert rep.ok, rep.render()


partitions = st.integers(2, 5).flatmap(
    lambda m: st.lists(st.integers(1, m), min_size=2, max_size=m)
    .filter(lambda ps: sum(ps) == m)
    .map(lambda ps: (m, tuple(sorted(ps, reverse=True))))
)


@given(partitions)
def test_partition_families_are_delta_constant(mp):
    m, parts = mp
    f = deform.partition_family(m, parts)
    rep = deform.verify_family(f)
    assert rep.ok, rep.render()
    assert rep.deltas == (m - 1, m - 1)
    assert rep.branch_counts == (1, len(parts))


def test_monomialize():
    b = parse_germ("(t^3, t^4 + t^5)").branches[0]
    f = deform.monomialize_family(b)
    assert deform.verify_family(f).ok
    assert delta(specialize(f, 1)) <= delta(specialize(f, 0))
    with pytest.raises(DeformationError):
        deform.monomialize_family(parse_germ("(t^2+t^3, t^2+t^5)").branches[0])


def test_specialize_failures():
    collapsing = DeformationFamily.from_text("c", "(s*t, s*t^2)", "?", "?")
    with pytest.raises(DeformationError):
        specialize(collapsing, 0)
    irrational = DeformationFamily.from_text("i", "(t^2 - s, t^3 - s*t)", "?", "?")
    with pytest.raises(DeformationError):
        specialize(irrational, 2)
    empty = DeformationFamily.from_text("e", "(t^2 + s, t^3)", "?", "?")
    with pytest.raises(DeformationError):
        specialize(empty, 1)


def test_specialize_recentres_base_points():
    f = DeformationFamily.from_text("shift", "(t^2 - s*t, t^3 - s*t^2)", "A2", "A1")
    g = specialize(f, 1)
    assert g.r == 2
    assert all(c[0] == 0 for b in g.branches for c in b.components)


def test_line_pulled_off_counts_missing_branch():
    f = DeformationFamily.from_text("off", "(t,-)+(s,t)", "A1", "(1)")
    assert deform.fibre_branch_count(f, 0) == 2
    assert deform.fibre_branch_count(f, 1) == 2
    assert specialize(f, 1).r == 1


def test_text_round_trip_and_record():
    for f in deform.shipped_families():
        g = DeformationFamily.from_text(f.name, f.text(), f.source, f.target)
        assert g.branches == f.branches
        rec = f.record()
        assert rec["branches"] == f.text()
        assert rec["s0"] == ("-" if f.s0 is None else str(f.s0))


def test_reference_germ_labels():
    assert signature(deform.reference_germ("M3")) == signature(parse_germ("(3,4,5)"))
    assert deform.reference_germ("A2∨A2").r == 2
    assert deform.reference_germ("(2,3)") == parse_germ("(2,3)")
    assert Fraction(1) == deform.DeformationFamily.from_text("x", "(t)", "a", "b", s0=1).s0
