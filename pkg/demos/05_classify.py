"""Recognising simple germs and certifying non-simple ones.

Run with ``python3 demos/05_classify.py``.
"""
# %%
from simplecurves import parse_germ, recognize

examples = [
    "(2,3)",
    "(4,5,6,7)",
    "(5,6,7,8)",
    "(5,6,7,9)",
    "(5,6,7,11)",
    "(3,10,11)",
    "(2,3,-,-)+(5,-,4,3)",
    "(1,-)+(-,1)+(1,1)+(t,2*t)",
]
for text in examples:
    print(text)
    print("   ", recognize(parse_germ(text)).render().replace("\n", "\n    "))
