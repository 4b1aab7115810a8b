"""Parametrised curve multi-germs and their invariants.

A :class:`MultiGerm` is a finite list of branches, each a vector of
polynomials in its own local parameter ``t`` vanishing at ``t = 0``.  The
invariants are computed from the image of the curve algebra (the subalgebra
generated by the coordinate functions) inside the jet space
``⊕_i Q[t_i]/(t_i^(N+1))``.  Jets are sparse dicts keyed by
``k * r + i`` (exponent ``k`` on branch ``i``), so ordering by key is ordering
by order in ``t``.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .powerseries import Poly

log = logging.getLogger(__name__)

DEFAULT_N = 8
DEFAULT_N_MAX = 256


class GermError(ValueError):
    """Malformed branch or multi-germ."""


class StabilizationError(RuntimeError):
    """The jet computation did not stabilise below the configured ``N_max``."""


@dataclass(frozen=True)
class Branch:
    """One parametrised branch ``t -> (phi_1(t), ..., phi_n(t))``."""

    components: tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(
            c if isinstance(c, Poly) and c.var == "t" else Poly(getattr(c, "coeffs", c), "t")
            for c in self.components
        )
        object.__setattr__(self, "components", comps)
        if not comps:
            raise GermError("a branch needs at least one component")
        if any(c[0] != 0 for c in comps):
            raise GermError("branch components must vanish at the base point")
        if all(c.is_zero() for c in comps):
            raise GermError("branch is identically zero")

    @classmethod
    def monomial(cls, exponents: Sequence[int | None]) -> "Branch":
        """Branch from exponents; ``None`` (a dash) is the zero component."""
        return cls(tuple(Poly.monomial(e, 1, "t") if e else Poly((), "t") for e in exponents))

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def multiplicity(self) -> int:
        return multiplicity(self)

    def coefficient_vector(self, k: int) -> list[Fraction]:
        return [c[k] for c in self.components]

    def padded(self, n: int, offset: int = 0) -> "Branch":
        zero = Poly((), "t")
        comps = [zero] * offset + list(self.components)
        comps += [zero] * (n - len(comps))
        return Branch(tuple(comps))

    def transformed(self, matrix: Sequence[Sequence]) -> "Branch":
        """Apply a linear change of target coordinates ``x -> M x``."""
        out = []
        for row in matrix:
            acc = Poly((), "t")
            for a, c in zip(row, self.components):
                if a:
                    acc = acc + c * Fraction(a)
            out.append(acc)
        return Branch(tuple(out))

    def reparametrised(self, unit: Poly) -> "Branch":
        """Substitute ``t -> t * unit(t)`` with ``unit(0) != 0``."""
        if unit[0] == 0:
            raise GermError("reparametrisation factor must be a unit")
        sub = Poly([0], "t") + Poly.gen("t") * Poly(unit.coeffs, "t")
        return Branch(tuple(c(sub) if not c.is_zero() else c for c in self.components))


@dataclass(frozen=True)
class MultiGerm:
    """A parametrised curve germ with one or more branches in ``C^n``."""

    branches: tuple[Branch, ...]

    def __post_init__(self):
        brs = tuple(self.branches)
        object.__setattr__(self, "branches", brs)
        if not brs:
            raise GermError("a multi-germ needs at least one branch")
        n = brs[0].n
        if any(b.n != n for b in brs):
            raise GermError("all branches must have the same number of components")

    @property
    def n(self) -> int:
        return self.branches[0].n

    @property
    def r(self) -> int:
        return len(self.branches)

    def sub(self, indices: Iterable[int]) -> "MultiGerm":
        return MultiGerm(tuple(self.branches[i] for i in sorted(indices)))

    def padded(self, n: int) -> "MultiGerm":
        return MultiGerm(tuple(b.padded(n) for b in self.branches))

    def transformed(self, matrix) -> "MultiGerm":
        return MultiGerm(tuple(b.transformed(matrix) for b in self.branches))

    def permuted(self, order: Sequence[int]) -> "MultiGerm":
        return MultiGerm(tuple(self.branches[i] for i in order))

    def max_degree(self) -> int:
        return max(c.degree for b in self.branches for c in b.components)


def wedge(g1: MultiGerm, g2: MultiGerm) -> MultiGerm:
    """``g1 ∨ g2`` in ``C^(n1+n2)``: the two germs on complementary axes."""
    n = g1.n + g2.n
    return MultiGerm(
        tuple(b.padded(n) for b in g1.branches) + tuple(b.padded(n, g1.n) for b in g2.branches)
    )


def lines(n: int) -> MultiGerm:
    """``L_n^n``: the ``n`` coordinate axes of ``C^n``."""
    return MultiGerm(tuple(Branch.monomial([1 if j == i else None for j in range(n)]) for i in range(n)))


# ---------------------------------------------------------------------------
# jet space machinery


def multiplicity(b: Branch) -> int:
    """Least order among the components."""
    return min(c.order() for c in b.components if not c.is_zero())


def _jets(g: MultiGerm, N: int) -> list[dict[int, Fraction]]:
    """Jet vectors of the coordinate functions, one per component."""
    r = g.r
    out = []
    for j in range(g.n):
        v = {}
        for i, b in enumerate(g.branches):
            for k, c in enumerate(b.components[j].coeffs[: N + 1]):
                if c:
                    v[k * r + i] = c
        out.append(v)
    return out


def _vmul(u: dict, v: dict, r: int, N: int) -> dict:
    out: dict[int, Fraction] = {}
    limit = (N + 1) * r
    for a, ca in u.items():
        ia, ka = a % r, a // r
        for b, cb in v.items():
            if b % r != ia:
                continue
            idx = (ka + b // r) * r + ia
            if idx < limit:
                out[idx] = out.get(idx, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


class JetSpan:
    """A subspace of jet space kept in semi-echelon form.

    Every basis vector is normalised so its least index (its pivot) carries
    coefficient 1; pivots are distinct.
    """

    def __init__(self):
        self.basis: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.basis)

    def reduce_lead(self, v: dict) -> dict:
        """Eliminate leading terms until the leading index is not a pivot."""
        v = dict(v)
        while v:
            p = min(v)
            b = self.basis.get(p)
            if b is None:
                break
            c = v[p]
            for k, x in b.items():
                y = v.get(k, 0) - c * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def normal_form(self, v: dict) -> dict:
        """Canonical representative modulo the span (no pivot indices left)."""
        v = dict(v)
        heap = [k for k in v if k in self.basis]
        heapq.heapify(heap)
        while heap:
            p = heapq.heappop(heap)
            c = v.get(p)
            if not c:
                continue
            for k, x in self.basis[p].items():
                y = v.get(k, 0) - c * x
                if y:
                    if k not in v and k in self.basis:
                        heapq.heappush(heap, k)
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> dict | None:
        """Insert ``v``; returns the new basis vector or ``None`` if dependent."""
        w = self.reduce_lead(v)
        if not w:
            return None
        p = min(w)
        c = w[p]
        w = {k: x / c for k, x in w.items()}
        self.basis[p] = w
        return w

    def contains(self, v: dict) -> bool:
        return not self.reduce_lead(v)

    def pivots(self) -> list[int]:
        return sorted(self.basis)


def _closure(seeds: Iterable[dict], gens: Sequence[dict], r: int, N: int) -> JetSpan:
    """Smallest subspace containing ``seeds`` and stable under multiplication by ``gens``."""
    span = JetSpan()
    stack = list(seeds)
    while stack:
        w = span.add(stack.pop())
        if w is None:
            continue
        for g in gens:
            if g:
                prod = _vmul(w, g, r, N)
                if prod:
                    stack.append(prod)
    return span


def _algebra_span(g: MultiGerm, N: int) -> JetSpan:
    r = g.r
    one = {i: Fraction(1) for i in range(r)}
    return _closure([one], _jets(g, N), r, N)


def _max_ideal_square_span(g: MultiGerm, N: int) -> JetSpan:
    r = g.r
    jets = _jets(g, N)
    seeds = [_vmul(a, b, r, N) for a, b in combinations(jets + [], 2)]
    seeds += [_vmul(a, a, r, N) for a in jets]
    return _closure([s for s in seeds if s], jets, r, N)


@dataclass(frozen=True)
class DeltaCertificate:
    delta: int
    N: int
    conductors: tuple[int, ...]


def _branch_conductor(span: JetSpan, i: int, r: int, N: int) -> int:
    """Least ``c`` with ``t_i^k`` in the span for every ``c <= k <= N``."""
    c = N + 1
    for k in range(N, -1, -1):
        if span.contains({k * r + i: Fraction(1)}):
            c = k
        else:
            break
    return c


@lru_cache(maxsize=4096)
def delta_certificate(g: MultiGerm, N0: int | None = None, N_max: int = DEFAULT_N_MAX) -> DeltaCertificate:
    """δ together with the truncation at which it was certified.

    δ_N is the codimension of the algebra image in jets of order ``<= N``.
    It is accepted when ``δ_N == δ_2N`` and every branch's pure jets
    ``t_i^k`` for ``c_i <= k <= 2N`` lie in the image with ``c_i <= N``.
    """
    N = N0 or max(DEFAULT_N, 2 * max(b.multiplicity for b in g.branches) + 2)
    r = g.r
    while N <= N_max:
        small = _algebra_span(g, N)
        big = _algebra_span(g, 2 * N)
        d_small = r * (N + 1) - len(small)
        d_big = r * (2 * N + 1) - len(big)
        conductors = tuple(_branch_conductor(big, i, r, 2 * N) for i in range(r))
        if d_small == d_big and all(c <= N for c in conductors):
            return DeltaCertificate(d_small, N, conductors)
        log.debug("delta not stable at N=%d (%d vs %d), doubling", N, d_small, d_big)
        N *= 2
    raise StabilizationError(f"delta did not stabilise below N_max={N_max}")


def delta(g: MultiGerm, N0: int | None = None, N_max: int = DEFAULT_N_MAX) -> int:
    """δ-invariant: dim of the normalisation algebra modulo the curve algebra."""
    if isinstance(g, Branch):
        g = MultiGerm((g,))
    return delta_certificate(g, N0, N_max).delta


# ---------------------------------------------------------------------------
# value semigroup


@dataclass(frozen=True)
class SemigroupData:
    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    conductor: int
    symmetric: bool

    @property
    def delta(self) -> int:
        return len(self.gaps)

    def __contains__(self, k: int) -> bool:
        return k >= 0 and (k >= self.conductor or k not in self.gaps)


def semigroup_from_elements(elements: Iterable[int], window: int) -> SemigroupData:
    """Semigroup data from the members found in ``[0, window]``."""
    members = set(elements) | {0}
    c = window + 1
    for k in range(window, -1, -1):
        if k in members:
            c = k
        else:
            break
    if c > window:
        raise StabilizationError("no conductor inside the window")
    if c > 0 and c - 1 in members:
        raise AssertionError("conductor computation inconsistent")
    gaps = tuple(k for k in range(1, c) if k not in members)
    mem = lambda k: k >= c or (k >= 0 and k not in gaps)  # noqa: E731
    m = next(k for k in range(1, c + 2) if mem(k))
    # minimal generators lie below c + m
    gens = [
        k
        for k in range(m, max(c + m, m + 1))
        if mem(k) and not any(mem(a) and mem(k - a) for a in range(m, k - m + 1))
    ]
    symmetric = all(mem(k) != mem(c - 1 - k) for k in range(c)) if c > 0 else True
    return SemigroupData(tuple(gens), gaps, c, symmetric)


def semigroup_of_generators(gens: Sequence[int]) -> SemigroupData:
    """Brute-force semigroup data for a numerical semigroup given by generators."""
    from math import gcd
    from functools import reduce as _reduce

    if _reduce(gcd, gens) != 1:
        raise ValueError("generators must be coprime")
    bound = (min(gens) - 1) * (max(gens) - 1) + max(gens) + 1
    bound = max(bound, 2 * max(gens) + 2)
    members = {0}
    for k in range(1, 2 * bound + 1):
        if any(k - a in members for a in gens if k - a >= 0):
            members.add(k)
    return semigroup_from_elements(members, 2 * bound)


@lru_cache(maxsize=4096)
def value_semigroup(b: Branch, window: int | None = None) -> SemigroupData:
    """Orders of the elements of the curve algebra of one branch.

    Raises :class:`StabilizationError` when ``window`` is too small to certify
    the conductor (``conductor + max generator < window`` is required).
    """
    g = MultiGerm((b,))
    auto = window is None
    if auto:
        window = max(2 * max(c.order() or 0 for c in b.components), 2 * b.multiplicity + 2, 8)
    while True:
        span = _algebra_span(g, window)
        try:
            sg = semigroup_from_elements(span.pivots(), window)
            if sg.conductor + max(sg.generators) < window:
                return sg
        except StabilizationError:
            pass
        if not auto or window > DEFAULT_N_MAX:
            raise StabilizationError(f"window {window} does not certify the conductor")
        window *= 2


def gorenstein_irreducible(b: Branch) -> bool:
    """Gorenstein test for an irreducible germ: symmetric value semigroup."""
    return value_semigroup(b).symmetric


# ---------------------------------------------------------------------------
# embedding dimension and tangent data


@lru_cache(maxsize=4096)
def _linear_relations(g: MultiGerm) -> tuple[tuple[Fraction, ...], ...]:
    """Basis of linear forms ``l`` with ``l(phi)`` in ``m^2``."""
    N = 2 * delta_certificate(g).N
    N += max(b.multiplicity for b in g.branches)
    sq = _max_ideal_square_span(g, N)
    jets = _jets(g, N)
    forms = [sq.normal_form(v) for v in jets]
    keys = sorted({k for f in forms for k in f})
    if not keys:
        return tuple(tuple(row) for row in linalg.nullspace([], g.n))
    # columns = components, rows = jet coordinates
    mat = [[f.get(k, Fraction(0)) for f in forms] for k in keys]
    return tuple(tuple(v) for v in linalg.nullspace(mat, g.n))


def embedding_dimension(g: MultiGerm) -> int:
    """dim m/m^2 of the curve algebra."""
    return g.n - len(_linear_relations(g))


def zariski_tangent_space(g: MultiGerm) -> list[list[Fraction]]:
    """Basis of the Zariski tangent space as a subspace of ``Q^n``."""
    rel = [list(v) for v in _linear_relations(g)]
    if not rel:
        return [[Fraction(int(i == j)) for j in range(g.n)] for i in range(g.n)]
    return linalg.nullspace(rel, g.n)


def tangent_vector(b: Branch) -> tuple[Fraction, ...]:
    """Coefficient vector of ``t^m``, scaled so its first nonzero entry is 1."""
    v = b.coefficient_vector(b.multiplicity)
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def tangent_data(g: MultiGerm) -> tuple[list[tuple[Fraction, ...]], int]:
    """Per-branch tangent directions and the dimension of their span."""
    tv = [tangent_vector(b) for b in g.branches]
    return tv, linalg.rank([list(v) for v in tv])


def _planar_feasible(P: list[list[Fraction]], n: int, smooth, doubles) -> bool:
    basis = linalg.complete_basis(P, n)
    cols = [[basis[j][i] for j in range(n)] for i in range(n)]  # basis vectors as columns

    def coords(v):
        return linalg.solve(cols, v)

    for w in doubles:
        c = coords(w)
        if any(c[2:]):
            return False
    rows, rhs = [], []
    for a, b in smooth:
        ca, cb = coords(a), coords(b)
        if any(ca[2:]):
            return False
        x, y = ca[0], ca[1]
        rows.append([x * x, x * y, y * y])
        rhs.append(cb[2:])
    if not rows:
        return True
    base_rank = linalg.rank(rows)
    for w in range(n - 2):
        aug = [row + [r[w]] for row, r in zip(rows, rhs)]
        if linalg.rank(aug) != base_rank:
            return False
    return True


def planar_2jet(g: MultiGerm) -> bool:
    """Whether the image lies on a smooth surface modulo third order terms.

    The surface is written as the graph of a quadratic map over its tangent
    plane ``P``.  Smooth branches must have their tangent in ``P`` and their
    second-order term transverse to ``P`` given by the quadratic map;
    branches of multiplicity two need their leading vector in ``P``; higher
    multiplicity branches impose nothing modulo degree three.
    """
    n = g.n
    if n <= 2:
        return True
    smooth, doubles = [], []
    for b in g.branches:
        m = b.multiplicity
        if m == 1:
            smooth.append((b.coefficient_vector(1), b.coefficient_vector(2)))
        elif m == 2:
            doubles.append(b.coefficient_vector(2))
    tvecs = [a for a, _ in smooth] + doubles
    T = linalg.row_basis(tvecs)
    if len(T) >= 3:
        return False
    if len(T) == 2:
        return _planar_feasible(T, n, smooth, doubles)
    if len(T) == 0:
        return True
    v = T[0]
    lead = next(i for i, x in enumerate(v) if x)
    normalized = []
    for a, b in smooth:
        c = a[lead] / v[lead]
        normalized.append([x / (c * c) for x in b])
    candidates = [b for _, b in smooth] + [
        [x - y for x, y in zip(p, q)] for p, q in combinations(normalized, 2)
    ]
    candidates += [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for w in candidates:
        if linalg.rank([v, w]) < 2:
            continue
        if _planar_feasible([v, list(w)], n, smooth, doubles):
            return True
    return False


# ---------------------------------------------------------------------------
# decomposition


def _tangent_rank(g: MultiGerm, idx: Sequence[int]) -> int:
    return linalg.rank([list(tangent_vector(g.branches[i])) for i in idx])


def _is_wedge_split(g: MultiGerm, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    whole = a + b
    if _tangent_rank(g, a) + _tangent_rank(g, b) != _tangent_rank(g, whole):
        return False
    ga, gb, gw = g.sub(a), g.sub(b), g.sub(whole)
    ta, tb = zariski_tangent_space(ga), zariski_tangent_space(gb)
    if linalg.rank(ta + tb) != len(ta) + len(tb):
        return False
    return delta(gw) == delta(ga) + delta(gb) + 1


def decompose(g: MultiGerm) -> list[tuple[int, ...]]:
    """Finest splitting of the branches into wedge summands.

    A bipartition is accepted when the Zariski tangent spaces of the two
    parts are independent and δ is additive (plus one).  These are certified
    necessary conditions for a wedge decomposition.
    """

    def split(idx: tuple[int, ...]) -> list[tuple[int, ...]]:
        if len(idx) == 1:
            return [idx]
        first, rest = idx[0], idx[1:]
        for size in range(1, len(idx)):
            for part in combinations(rest, size):
                other = tuple(i for i in idx if i not in part)
                if first not in other:
                    continue
                if _is_wedge_split(g, other, part):
                    return split(other) + split(part)
        return [idx]

    return sorted(split(tuple(range(g.r))))


# ---------------------------------------------------------------------------
# stable equivalence


def stable_reduce(g: MultiGerm) -> MultiGerm:
    """Drop coordinate functions that are dependent modulo ``m^2``.

    The remaining components generate the same (complete) algebra, so the
    result is stably equivalent with ambient dimension equal to the embedding
    dimension.
    """
    rel = [list(v) for v in _linear_relations(g)]
    if not rel:
        return g
    # keep a set of components whose coordinates are independent modulo the relations
    keep: list[int] = []
    for j in range(g.n):
        trial = keep + [j]
        sub_rows = [[row[k] for k in trial] for row in rel]
        if linalg.rank(sub_rows) == 0 or not _dependent_on(rel, keep, j):
            keep.append(j)
    return MultiGerm(tuple(Branch(tuple(b.components[j] for j in keep)) for b in g.branches))


def _dependent_on(rel, keep, j) -> bool:
    """Whether component ``j`` is a combination of ``keep`` modulo m^2."""
    # component j is dependent iff some relation has nonzero j-coefficient
    # and is supported on keep ∪ {j}
    allowed = set(keep) | {j}
    n = len(rel[0])
    others = [k for k in range(n) if k not in allowed]
    # relations restricted to vanish on the other coordinates
    if others:
        sub = linalg.nullspace([[row[k] for row in rel] for k in others], len(rel))
        combos = [[sum(c * row[k] for c, row in zip(v, rel)) for k in range(n)] for v in sub]
    else:
        combos = rel
    return any(row[j] != 0 for row in combos)


# ---------------------------------------------------------------------------
# signature


@dataclass(frozen=True)
class PieceKey:
    r: int
    multiplicities: tuple[int, ...]
    semigroups: tuple[tuple[int, ...], ...]
    delta: int
    embedding_dimension: int
    tangent_span: int
    planar_2jet: bool


@dataclass(frozen=True)
class Signature:
    """Discrete invariants of a multi-germ."""

    r: int
    multiplicities: tuple[int, ...]
    semigroups: tuple[tuple[int, ...], ...]
    delta: int
    embedding_dimension: int
    tangent_span: int
    planar_2jet: bool
    decomposition: tuple[PieceKey, ...]

    def as_records(self) -> dict[str, str]:
        return {
            "r": str(self.r),
            "multiplicities": ",".join(map(str, self.multiplicities)),
            "semigroups": ";".join("<" + ",".join(map(str, s)) + ">" for s in self.semigroups),
            "delta": str(self.delta),
            "embedding_dimension": str(self.embedding_dimension),
            "tangent_span": str(self.tangent_span),
            "planar_2jet": str(self.planar_2jet).lower(),
            "decomposition": " | ".join(
                f"r={p.r} delta={p.delta} emb={p.embedding_dimension}" for p in self.decomposition
            ),
        }


@lru_cache(maxsize=8192)
def piece_key(g: MultiGerm) -> PieceKey:
    """The signature fields that do not need the decomposition."""
    return PieceKey(
        r=g.r,
        multiplicities=tuple(sorted(b.multiplicity for b in g.branches)),
        semigroups=tuple(sorted(value_semigroup(b).generators for b in g.branches)),
        delta=delta(g),
        embedding_dimension=embedding_dimension(g),
        tangent_span=tangent_data(g)[1],
        planar_2jet=planar_2jet(g),
    )


@lru_cache(maxsize=4096)
def signature(g: MultiGerm) -> Signature:
    key = piece_key(g)
    parts = decompose(g)
    pieces = tuple(sorted((piece_key(g.sub(p)) for p in parts), key=repr))
    return Signature(
        r=key.r,
        multiplicities=key.multiplicities,
        semigroups=key.semigroups,
        delta=key.delta,
        embedding_dimension=key.embedding_dimension,
        tangent_span=key.tangent_span,
        planar_2jet=key.planar_2jet,
        decomposition=pieces,
    )
