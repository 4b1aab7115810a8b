"""Embedded resolution of plane germs and the ADE list.

Run with ``python3 demos/02_plane_resolution.py``.
"""
# %%
from simplecurves.notation import parse_germ
from simplecurves.plane import ade_recognize, bpv_simple, multiplicity_sequence, resolution_tree, wall_modality

# %% The resolution tree records multiplicities, charts and satellite points.
tree = resolution_tree(parse_germ("(3,5)"))
print(tree.export())
print("delta", tree.delta(), "milnor", tree.milnor(), "satellites", tree.satellite_count())

# %% Multiplicity sequences follow the Euclidean algorithm for monomial branches.
for m, n in [(2, 7), (3, 7), (5, 7)]:
    print((m, n), multiplicity_sequence(parse_germ(f"({m},{n})").branches[0]))

# %% Modality and simplicity straight from the tree.
for text in ["(2,5)", "(2,3)+(1,-)", "(3,4)", "(1,-)+(-,1)+(1,1)+(t,2*t)", "(3,7)"]:
    tr = resolution_tree(parse_germ(text))
    print(f"{text:<28} modality={wall_modality(tr)} simple={bpv_simple(tr)} type={ade_recognize(tr)}")
