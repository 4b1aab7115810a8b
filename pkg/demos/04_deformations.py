"""One-parameter families certifying adjacencies.

Run with ``python3 demos/04_deformations.py``.
"""
# %%
from simplecurves import deform
from simplecurves.deform import specialize
from simplecurves.germ import delta

# %% A family is a list of branches in (t, s). The fibre over s0 is re-centred
# at every rational base point through the origin.
f = deform.partition_family(4, (2, 1, 1))
print(f.text())
for s0 in (0, 1):
    g = specialize(f, s0)
    print(f"s={s0}: r={g.r} delta={delta(g)}")

# %% Every shipped family is checked against the atlas at both ends.
for rep in deform.verify_families()[:6]:
    print(rep.render().splitlines()[0], rep.deltas)

# %% Congruences in Q[s][t]: the relations that do hold along the
# (5,6,7,9) family modulo (t^3 - s)^3.
fam = deform.CONGRUENCE_FAMILY
for form in ["s*z - x^2", "w", "s*z - x"]:
    print(form, deform.verify_congruence(fam, form, "t^3 - s", 3))

# %% A surface containing the A3 branch exactly and the cusp to order three.
fam = deform.SURFACE_FAMILY_RESCALED
print(deform.verify_on_surface(fam, deform.SURFACE_CORRECTED, branch=1),
      deform.verify_on_surface(fam, deform.SURFACE_CORRECTED, branch=0, mode="mod-degree-3"))
