from fractions import Fraction
from functools import reduce
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import lines_delta, numerical_semigroup_gaps
from simplecurves.germ import (
    Branch,
    GermError,
    MultiGerm,
    StabilizationError,
    decompose,
    delta,
    delta_certificate,
    embedding_dimension,
    lines,
    planar_2jet,
    semigroup_of_generators,
    signature,
    stable_reduce,
    tangent_data,
    value_semigroup,
    wedge,
)
from simplecurves.linalg import rank
from simplecurves.notation import parse_germ
from simplecurves.powerseries import Poly

POOL = [
    "(2,3)",
    "(3,4,5)",
    "(4,6,7)",
    "(1,-)+(-,1)",
    "(2,3,-)+(-,-,1)",
    "(2,5)+(1,-)",
    "(3,4)+(1,1)",
    "(t,t^2)+(t,-t^2)",
    "(1,-,-)+(1,2,-)+(1,-,2)",
]


def invariants(g):
    sig = signature(g)
    return (sig.r, sig.multiplicities, sig.semigroups, sig.delta, sig.embedding_dimension,
            sig.tangent_span, sig.planar_2jet, len(sig.decomposition))


generator_sets = (
    st.lists(st.integers(2, 9), min_size=2, max_size=4, unique=True)
    .map(sorted)
    .filter(lambda gs: reduce(gcd, gs) == 1)
)


@given(generator_sets)
def test_monomial_delta_is_gap_count(gens):
    g = MultiGerm((Branch.monomial(gens),))
    gaps = numerical_semigroup_gaps(gens)
    assert delta(g) == len(gaps)
    sg = value_semigroup(g.branches[0])
    assert set(sg.gaps) == gaps
    assert semigroup_of_generators(gens).gaps == sg.gaps


directions = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=5
)


def _pairwise_independent(vs):
    return all(rank([list(a), list(b)]) == 2 for i, a in enumerate(vs) for b in vs[i + 1:])


@given(directions)
def test_lines_delta_matches_hilbert_count(vs):
    assume(all(any(v) for v in vs) and _pairwise_independent(vs))
    g = MultiGerm(tuple(Branch(tuple(Poly([0, c], "t") for c in v)) for v in vs))
    assert delta(g) == lines_delta(vs)


@pytest.mark.parametrize("r", range(1, 7))
def test_coordinate_axes(r):
    assert delta(lines(r)) == r - 1
    assert embedding_dimension(lines(r)) == r


def test_known_small_values():
    assert delta(parse_germ("(4,6,7)")) == 5
    assert value_semigroup(parse_germ("(4,6,7)").branches[0]).gaps == (1, 2, 3, 5, 9)
    assert value_semigroup(parse_germ("(2,3)").branches[0]).symmetric
    assert not value_semigroup(parse_germ("(3,4,5)").branches[0]).symmetric


invertible = st.lists(st.integers(-2, 2), min_size=9, max_size=9).map(
    lambda xs: [xs[0:3], xs[3:6], xs[6:9]]
).filter(lambda m: rank(m) == 3)


@given(st.sampled_from(POOL), invertible)
def test_invariants_under_linear_change(text, m):
    g = parse_germ(text).padded(3) if parse_germ(text).n < 3 else parse_germ(text)
    assert invariants(g.transformed(m)) == invariants(g)


@given(st.sampled_from(POOL), st.integers(-3, 3), st.integers(-3, 3))
def test_invariants_under_reparametrisation(text, a, b):
    g = parse_germ(text)
    unit = Poly([1, a, b], "t")
    h = MultiGerm(tuple(br.reparametrised(unit) for br in g.branches))
    assert invariants(h) == invariants(g)


@given(st.sampled_from(POOL), st.randoms(use_true_random=False))
def test_invariants_under_branch_permutation(text, rnd):
    g = parse_germ(text)
    order = list(range(g.r))
    rnd.shuffle(order)
    assert invariants(g.permuted(order)) == invariants(g)


@pytest.mark.parametrize("text", POOL)
def test_padding_is_stable(text):
    g = parse_germ(text)
    assert invariants(g.padded(g.n + 2)) == invariants(g)


@pytest.mark.parametrize("a,b", [("(2,3)", "(2,3)"), ("(2,3)", "(3,4,5)"), ("(1,-)+(-,1)", "(2,5)")])
def test_wedge_delta_additivity(a, b):
    g1, g2 = parse_germ(a), parse_germ(b)
    assert delta(wedge(g1, g2)) == delta(g1) + delta(g2) + 1


def test_decompose():
    assert decompose(wedge(parse_germ("(2,3)"), parse_germ("(2,3)"))) == [(0,), (1,)]
    assert len(decompose(lines(3))) == 3
    assert decompose(parse_germ("(1,-)+(-,1)+(1,1)")) == [(0, 1, 2)]


def test_stable_reduce_drops_dependent_coordinates():
    g = parse_germ("(t,t^2,t^3)")
    h = stable_reduce(g)
    assert h.n == 1 and delta(h) == delta(g) == 0
    g = parse_germ("(t^2,t^3,t^4)")
    assert stable_reduce(g).n == 2


def test_planar_2jet_examples():
    assert planar_2jet(parse_germ("(2,3)+(1,-)"))
    assert not planar_2jet(parse_germ("(1,-,-)+(1,2,-)+(1,-,2)"))


def test_tangent_data():
    vecs, span = tangent_data(parse_germ("(1,-,-)+(-,1,-)+(1,1,-)"))
    assert span == 2 and len(vecs) == 3


def test_certificate_is_stable_at_double():
    g = parse_germ("(5,6,7,9)")
    cert = delta_certificate(g)
    assert delta(g, N0=2 * cert.N) == cert.delta
    assert all(c <= cert.N for c in cert.conductors)


def test_non_reduced_germ_does_not_stabilise():
    g = parse_germ("(1,-)+(1,-)")
    with pytest.raises(StabilizationError):
        delta(g, N_max=32)


def test_invalid_branches_rejected():
    with pytest.raises(GermError):
        Branch((Poly([1, 1], "t"),))
    with pytest.raises(GermError):
        Branch((Poly((), "t"),))
    with pytest.raises(GermError):
        MultiGerm((Branch.monomial([2, 3]), Branch.monomial([1])))
    assert Branch.monomial([2, None]).components[1].is_zero()
    assert Fraction(1) == Branch.monomial([1]).coefficient_vector(1)[0]
