"""The ``simplecurves`` command, driven from Python.

Each call below is equivalent to ``simplecurves <args>`` in a shell.
"""
# %%
from simplecurves.cli import run

for args in (
    ["invariants", "(2,3,-,-)+(-,5,4,3)"],
    ["classify", "(5,6,8,9)", "--format", "records"],
    ["resolve", "(2,3)+(1,-)"],
):
    status, out = run(args)
    print("$ simplecurves", " ".join(args), f"# exit {status}")
    print(out, end="\n\n")
