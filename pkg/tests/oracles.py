"""Independent reference computations used by the tests.

None of these go through the jet-space machinery of the package.
"""
import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, prod

from simplecurves.germ import Branch, MultiGerm, StabilizationError, delta
from simplecurves.linalg import rank
from simplecurves.powerseries import Poly


def numerical_semigroup_gaps(gens) -> set[int]:
    """Brute-force gaps of the semigroup generated by ``gens`` (gcd 1)."""
    a = min(gens)
    limit = a * max(gens) + a
    reach = [False] * (limit + 1)
    reach[0] = True
    for k in range(1, limit + 1):
        reach[k] = any(k >= g and reach[k - g] for g in gens)
    return {k for k in range(limit + 1) if not reach[k]}


def lines_delta(directions) -> int:
    """δ of a union of lines through the origin, by Hilbert function counting.

    In degree ``k`` the normalisation contributes one monomial per line and the
    curve contributes the rank of the degree-``k`` forms evaluated at the
    directions.
    """
    r = len(directions)
    n = len(directions[0])
    total, k = 0, 0
    while True:
        monos = list(combinations_with_replacement(range(n), k))
        rows = [[prod((Fraction(v[i]) for i in m), start=Fraction(1)) for v in directions] for m in monos]
        rk = rank(rows)
        if rk == r:
            return total
        total += r - rk
        k += 1


def random_plane_corpus(seed: int = 7, size: int = 60, max_mult: int = 4, max_delta: int = 8) -> list[MultiGerm]:
    """Reproducible random reduced plane germs of bounded multiplicity and δ."""
    rng = random.Random(seed)
    out: list[MultiGerm] = []
    while len(out) < size:
        branches = []
        for _ in range(rng.randint(1, 3)):
            m = rng.choice([1, 1, 2, 2, 3, 4])
            if m == 1:
                a, b = rng.randint(-2, 2), rng.randint(-2, 2)
                x, y = Poly([0, 1], "t"), Poly([0, a, b], "t")
            else:
                n = rng.randint(m + 1, m + 5)
                d = rng.randint(-1, 1)
                if d == 0 and gcd(m, n) != 1:
                    d = 1
                x = Poly.monomial(m, 1, "t")
                y = Poly.monomial(n, 1, "t") + Poly.monomial(n + 1, d, "t")
            if rng.random() < 0.5:
                x, y = y, x
            branches.append(Branch((x, y)))
        g = MultiGerm(tuple(branches))
        if sum(b.multiplicity for b in g.branches) > max_mult:
            continue
        try:
            if delta(g) > max_delta:
                continue
        except StabilizationError:
            continue  # two coincident branches
        out.append(g)
    return out
