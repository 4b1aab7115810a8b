"""Embedded resolution of plane multi-germs by point blow-ups.

Branches are carried as pairs of truncated rational power series with an
explicit precision.  A blow-up divides by ``t^m`` and so costs ``m``
coefficients of precision; when precision runs out the whole resolution is
restarted at twice the truncation.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .germ import Branch, GermError, MultiGerm, StabilizationError

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 64
MAX_PRECISION = 1024


class PrecisionExhausted(StabilizationError):
    """The truncation was too small to decide the next resolution step."""


@dataclass(frozen=True)
class LocalBranch:
    """A plane branch ``(x(t), y(t))`` known modulo ``t^(prec+1)``."""

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    prec: int

    @classmethod
    def from_branch(cls, b: Branch, prec: int) -> "LocalBranch":
        if b.n != 2:
            raise GermError("plane branches need exactly two components")
        pad = lambda p: tuple(p[k] for k in range(prec + 1))  # noqa: E731
        return cls(pad(b.components[0]), pad(b.components[1]), prec)

    @staticmethod
    def _order(c) -> int | None:
        return next((k for k, v in enumerate(c) if v), None)

    def orders(self) -> tuple[int | None, int | None]:
        return self._order(self.x), self._order(self.y)

    @property
    def multiplicity(self) -> int:
        ox, oy = self.orders()
        known = [o for o in (ox, oy) if o is not None]
        if not known:
            raise PrecisionExhausted("branch vanishes to the working precision")
        return min(known)

    def tangent(self) -> tuple[Fraction, Fraction]:
        """Leading direction, scaled so the first nonzero entry is 1."""
        m = self.multiplicity
        a, b = self.x[m], self.y[m]
        return (Fraction(1), b / a) if a else (Fraction(0), Fraction(1))


def _series_div(num: Sequence[Fraction], den: Sequence[Fraction], prec: int) -> tuple[Fraction, ...]:
    """Quotient of series with ``den[0] != 0`` to ``prec``."""
    out: list[Fraction] = []
    inv = 1 / den[0]
    for k in range(prec + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc * inv)
    return tuple(out)


def blowup_branch(b: LocalBranch | Branch, prec: int = DEFAULT_PRECISION):
    """One blow-up of a plane branch at the origin.

    Returns ``(chart, strict transform, centre)``.  Chart ``"A"`` uses
    coordinates ``(x, y/x)`` and is chosen when ``ord x <= ord y``; the
    centre is ``(0, c)`` and the returned branch is recentred at it.  Chart
    ``"B"`` uses ``(x/y, y)`` and the centre is its origin.
    """
    if isinstance(b, Branch):
        b = LocalBranch.from_branch(b, prec)
    ox, oy = b.orders()
    if ox is None and oy is None:
        raise PrecisionExhausted("branch vanishes to the working precision")
    chart_a = oy is None or (ox is not None and ox <= oy)
    m = ox if chart_a else oy
    new_prec = b.prec - m
    if new_prec < 1:
        raise PrecisionExhausted("precision exhausted by blow-up")
    if chart_a:
        q = list(_series_div(b.y[m:], b.x[m:], new_prec))
        c = q[0]
        q[0] = Fraction(0)
        return "A", LocalBranch(b.x[: new_prec + 1], tuple(q), new_prec), (Fraction(0), c)
    q = _series_div(b.x[m:], b.y[m:], new_prec)
    if q[0]:
        raise AssertionError("chart B centre must be the origin")
    return "B", LocalBranch(q, b.y[: new_prec + 1], new_prec), (Fraction(0), Fraction(0))


@dataclass
class NearPoint:
    """A node of the resolution tree (an infinitely near point)."""

    id: int
    parent: int | None
    chart: str
    centre: Fraction | None
    branches: tuple[int, ...]
    multiplicity: int
    exceptional: int
    on_x_exceptional: bool = False
    on_y_exceptional: bool = False
    blown_up: bool = False
    children: list[int] = field(default_factory=list)

    @property
    def satellite(self) -> bool:
        return self.exceptional == 2

    @property
    def free(self) -> bool:
        return self.parent is not None and not self.satellite

    @property
    def total_multiplicity(self) -> int:
        """Multiplicity of the reduced total transform."""
        return self.multiplicity + self.exceptional


@dataclass
class ResolutionTree:
    nodes: list[NearPoint]
    paths: list[list[int]]
    r: int
    branch_mult: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def root(self) -> NearPoint:
        return self.nodes[0]

    def node(self, i: int) -> NearPoint:
        return self.nodes[i]

    def satellites(self) -> list[NearPoint]:
        return [p for p in self.nodes if p.satellite]

    def satellite_count(self) -> int:
        return len(self.satellites())

    def branch_multiplicities(self, i: int) -> list[int]:
        """Multiplicities of branch ``i`` along its path (leaf included)."""
        return [self.branch_mult[(i, p)] for p in self.paths[i]]

    def delta(self) -> int:
        return sum(p.multiplicity * (p.multiplicity - 1) // 2 for p in self.nodes)

    def milnor(self) -> int:
        return 2 * self.delta() - self.r + 1

    def export(self) -> str:
        """Structured text, one record per node in breadth-first order."""
        lines = []
        for p in self.nodes:
            lines.append(
                " ".join(
                    [
                        f"node={p.id}",
                        f"parent={'-' if p.parent is None else p.parent}",
                        f"chart={p.chart}",
                        f"centre={'-' if p.centre is None else p.centre}",
                        f"branches={','.join(map(str, p.branches))}",
                        f"m={p.multiplicity}",
                        f"exceptional={p.exceptional}",
                        f"total={p.total_multiplicity}",
                        f"satellite={str(p.satellite).lower()}",
                        f"free={str(p.free).lower()}",
                        f"blown_up={str(p.blown_up).lower()}",
                    ]
                )
            )
        return "\n".join(lines)


def _resolved(local: list[LocalBranch], ex_x: bool, ex_y: bool) -> bool:
    """Normal crossings of the reduced total transform at this point."""
    m = sum(b.multiplicity for b in local)
    e = int(ex_x) + int(ex_y)
    if m + e > 2:
        return False
    if any(b.multiplicity > 1 for b in local):
        return False
    tangents = [b.tangent() for b in local]
    if len(set(tangents)) != len(tangents):
        return False
    for tx, ty in tangents:
        if ex_x and tx == 0:
            return False
        if ex_y and ty == 0:
            return False
    return True


def _build(g: MultiGerm, prec: int, max_depth: int) -> ResolutionTree:
    root_local = [LocalBranch.from_branch(b, prec) for b in g.branches]
    nodes: list[NearPoint] = []
    paths: list[list[int]] = [[] for _ in g.branches]
    bmult: dict[tuple[int, int], int] = {}
    queue = deque([(None, "root", None, list(range(g.r)), root_local, False, False, 0)])
    while queue:
        parent, chart, centre, idx, local, ex_x, ex_y, depth = queue.popleft()
        if depth > max_depth:
            raise StabilizationError("resolution exceeded its depth bound")
        node = NearPoint(
            id=len(nodes),
            parent=parent,
            chart=chart,
            centre=centre,
            branches=tuple(idx),
            multiplicity=sum(b.multiplicity for b in local),
            exceptional=int(ex_x) + int(ex_y),
            on_x_exceptional=ex_x,
            on_y_exceptional=ex_y,
        )
        nodes.append(node)
        if parent is not None:
            nodes[parent].children.append(node.id)
        for i, b in zip(idx, local):
            paths[i].append(node.id)
            bmult[(i, node.id)] = b.multiplicity
        if _resolved(local, ex_x, ex_y):
            continue
        node.blown_up = True
        groups: dict[tuple, list] = {}
        for i, b in zip(idx, local):
            ch, nb, (_, c) = blowup_branch(b)
            key = (ch, c if ch == "A" else None)
            groups.setdefault(key, []).append((i, nb))
        for key in sorted(groups, key=lambda k: (k[0], k[1] if k[1] is not None else 0)):
            ch, c = key
            members = groups[key]
            if ch == "A":
                nx, ny = True, ex_y and c == 0
            else:
                nx, ny = ex_x, True
            queue.append(
                (node.id, ch, c, [i for i, _ in members], [b for _, b in members], nx, ny, depth + 1)
            )
    return ResolutionTree(nodes, paths, g.r, bmult)


def resolution_tree(g: MultiGerm | Branch, prec: int = DEFAULT_PRECISION) -> ResolutionTree:
    """Minimal embedded resolution of a plane multi-germ with rational coefficients.

    The tree is expanded breadth first; siblings are ordered by chart and
    centre.  Branches of the same point stay together until they separate.
    """
    if isinstance(g, Branch):
        g = MultiGerm((g,))
    if g.n != 2:
        raise GermError("resolution is implemented for plane germs only")
    from .germ import delta as _delta

    bound = _delta(g) + max(b.multiplicity for b in g.branches) + 2 * g.r + 4
    while True:
        try:
            return _build(g, prec, bound)
        except PrecisionExhausted:
            if prec >= MAX_PRECISION:
                raise
            log.debug("precision %d exhausted, doubling", prec)
            prec *= 2


def multiplicity_sequence(b: Branch, prec: int = DEFAULT_PRECISION) -> list[int]:
    """Strict transform multiplicities up to and including the first 1."""
    while True:
        try:
            lb = LocalBranch.from_branch(b, prec)
            seq = [lb.multiplicity]
            while seq[-1] > 1:
                _, lb, _ = blowup_branch(lb)
                seq.append(lb.multiplicity)
            return seq
        except PrecisionExhausted:
            if prec >= MAX_PRECISION:
                raise
            prec *= 2


def wall_modality(tree: ResolutionTree) -> int:
    """Modality from resolution data.

    ``sum (m_P - 1)(m_P - 2)/2 - r - s + 2`` over the nodes met by the strict
    transform, ``s`` counting satellite nodes.
    """
    total = sum((p.multiplicity - 1) * (p.multiplicity - 2) // 2 for p in tree.nodes)
    return total - tree.r - tree.satellite_count() + 2


def bpv_simple(tree: ResolutionTree) -> bool:
    """Simple iff the reduced total transform never has multiplicity above 3."""
    if tree.root.multiplicity > 3:
        return False
    return all(p.total_multiplicity <= 3 for p in tree.nodes)


def ade_recognize(tree: ResolutionTree) -> str | None:
    """Name of the simple plane singularity or ``None``.

    The label is read off the root multiplicity, the tangent cone and the
    Milnor number ``2 delta - r + 1`` with ``delta`` summed over the tree.
    ``A0`` denotes a smooth germ.
    """
    m = tree.root.multiplicity
    mu = tree.milnor()
    if m <= 1:
        return "A0"
    if m == 2:
        return f"A{mu}"
    if m != 3:
        return None
    # a triple tangent line sends every branch to one first-order point
    if len(tree.root.children) != 1:
        return f"D{mu}"
    if mu == 6 and tree.r == 1:
        return "E6"
    if mu == 7 and tree.r == 2:
        return "E7"
    if mu == 8 and tree.r == 1:
        return "E8"
    return None


def resolve_report(g: MultiGerm) -> dict:
    tree = resolution_tree(g)
    return {
        "tree": tree,
        "multiplicity_sequences": [multiplicity_sequence(b) for b in g.branches],
        "satellites": tree.satellite_count(),
        "modality": wall_modality(tree),
        "bpv_simple": bpv_simple(tree),
        "ade": ade_recognize(tree),
    }
