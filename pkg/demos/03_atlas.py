"""The atlas of normal forms: equations, expected invariants and collisions.

Run with ``python3 demos/03_atlas.py``.
"""
# %%
from simplecurves import atlas

print(len(atlas.entries("simple")), "simple entries,", len(atlas.table_rows()), "table rows")

# %% Every table row is checked: equations vanish on each branch, rank
# conditions hold, and the recorded δ and branch count are recomputed.
reports = atlas.verify_table()
print(sum(r.ok for r in reports), "of", len(reports), "table instances verified")
print(atlas.verify_entry("L(4,2)", lam=3).render())

# %% One row is stated in coordinates that need a linear change first.
print(atlas.verify_entry("Z9", literal=True).render())

# %% Distinct normal forms may share every discrete invariant we compute.
print(atlas.shipped_ambiguity_report())

# %% The adjacency graph as Graphviz text.
print(atlas.adjacency_dot()[:300], "...")
