"""Invariants of parametrised curve germs.

Run with ``python3 demos/01_invariants.py``.
"""
# %% A germ is written as branches of exponents or polynomials in t.
from simplecurves.germ import delta, delta_certificate, signature, value_semigroup
from simplecurves.notation import format_germ, parse_germ

cusp_curve = parse_germ("(4,6,7)")
print("germ:", format_germ(cusp_curve))

# %% δ is computed in jet space and certified by doubling the truncation.
cert = delta_certificate(cusp_curve)
print(f"delta = {cert.delta}, certified at N = {cert.N}, conductors {cert.conductors}")

# %% For an irreducible germ δ is the number of gaps of the value semigroup.
sg = value_semigroup(cusp_curve.branches[0])
print("generators", sg.generators, "gaps", sg.gaps, "symmetric", sg.symmetric)
assert sg.delta == cert.delta

# %% Multi-germs: two cusps on complementary axes, and three coordinate lines.
for text in ["(2,3)∨(2,3)", "(1,-,-)+(-,1,-)+(-,-,1)", "(2,3,-,-)+(-,5,4,3)"]:
    g = parse_germ(text)
    sig = signature(g)
    print(f"{text:<26} r={sig.r} delta={delta(g)} emb={sig.embedding_dimension} "
          f"tangent span={sig.tangent_span} planar 2-jet={sig.planar_2jet} pieces={len(sig.decomposition)}")
