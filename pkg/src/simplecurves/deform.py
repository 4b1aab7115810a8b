"""One-parameter deformations of parametrisations over ``Q[s]``.

A family is a list of branches whose components are polynomials in the
parameter ``t`` and the deformation parameter ``s``.  The fibre at a value
``s0`` is the multi-germ obtained by collecting, for every branch, the local
branches at all common zeros of its components; each is re-centred with
``t = t0 + u``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .atlas import Check, VerificationReport, find_instance
from .germ import Branch, GermError, MultiGerm, delta, signature
from .notation import format_germ, parse_branch_list
from .powerseries import MPoly, Poly, SeriesError, ps_reduce_mod

log = logging.getLogger(__name__)

FAMILY_VARS = ("t", "s")
AMBIENT_NAMES = ("x", "y", "z", "w")


class DeformationError(ValueError):
    """A fibre could not be formed (no base point, irrational base point...)."""


def _fmt_q(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DeformationFamily:
    """Branches ``(phi_1(t, s), ..., phi_n(t, s))`` with labelled end fibres.

    ``source`` names the fibre at ``s = 0`` and ``target`` the fibre at the
    sample value ``s0``.  ``s0 = None`` marks a family whose general fibre
    has irrational base points; only its algebraic identities are checked.
    """

    name: str
    branches: tuple[tuple[MPoly, ...], ...]
    source: str
    target: str
    citation: str = ""
    s0: Fraction | None = Fraction(1)
    delta_constant: bool = False
    kind: str = "param"

    @classmethod
    def from_text(cls, name: str, text: str, source: str, target: str, **kw) -> "DeformationFamily":
        comps = parse_branch_list(text, FAMILY_VARS)
        if "s0" in kw and kw["s0"] is not None:
            kw["s0"] = Fraction(kw["s0"])
        return cls(name, tuple(tuple(c) for c in comps), source, target, **kw)

    @property
    def n(self) -> int:
        return len(self.branches[0])

    def text(self) -> str:
        def comp(c: MPoly) -> str:
            return "0" if c.is_zero() else c.format()

        return "+".join("(" + ",".join(comp(c) for c in b) + ")" for b in self.branches)

    def record(self) -> dict[str, str]:
        return {
            "family": self.name,
            "n": str(self.n),
            "branches": self.text(),
            "source": self.source,
            "target": self.target,
            "s0": "-" if self.s0 is None else _fmt_q(self.s0),
            "delta_constant": str(self.delta_constant).lower(),
            "kind": self.kind,
            "citation": self.citation,
        }


def _branch_at(comps: Sequence[MPoly], s0) -> list[Poly]:
    return [Poly(c.substitute("s", s0).to_poly("t").coeffs, "t") for c in comps]


def specialize(f: DeformationFamily, s0) -> MultiGerm:
    """The multi-germ of the fibre over ``s0`` at the origin."""
    s0 = Fraction(s0)
    local: list[Branch] = []
    for idx, comps in enumerate(f.branches):
        polys = _branch_at(comps, s0)
        nonzero = [p for p in polys if not p.is_zero()]
        if not nonzero:
            raise DeformationError(f"branch {idx} collapses to a point at s={s0}")
        g = nonzero[0]
        for p in nonzero[1:]:
            g = g.gcd(p)
        if g.degree <= 0:
            log.debug("branch %d misses the origin at s=%s", idx, s0)
            continue
        roots = g.rational_roots()
        if sum(m for _, m in roots) != g.degree:
            raise DeformationError(f"branch {idx} has irrational base points at s={s0}")
        for t0, _ in sorted(roots):
            shifted = [p.shift(t0) for p in polys]
            try:
                local.append(Branch(tuple(shifted)))
            except GermError as exc:
                raise DeformationError(f"branch {idx} at t={t0}: {exc}") from None
    if not local:
        raise DeformationError(f"no branch passes through the origin at s={s0}")
    return MultiGerm(tuple(local))


# ---------------------------------------------------------------------------
# algebraic identities


def _coordinate_names(n: int) -> tuple[str, ...]:
    names = tuple(f"z{i + 1}" for i in range(n))
    if n <= len(AMBIENT_NAMES):
        names += AMBIENT_NAMES[:n]
    return names


def _as_form(form, n: int) -> MPoly:
    """A polynomial in ``s`` and the ambient coordinates.

    ``form`` is text (``"s*z - x"`` or ``"s*z3 - z1"``), an :class:`MPoly`
    or a sequence of ``n`` coefficients (numbers, text or :class:`Poly` in
    ``s``) of a linear form.
    """
    names = _coordinate_names(n)
    vars_ = ("s",) + names
    if isinstance(form, MPoly):
        vals = {v: MPoly.var(vars_, v) for v in vars_}
        return form.evaluate({v: vals[v] for v in form.vars}, one=MPoly.const(vars_, 1))
    if isinstance(form, str):
        return MPoly.parse(form, vars_)
    if len(form) != n:
        raise ValueError(f"linear form needs {n} coefficients")
    acc = MPoly(vars_)
    for i, c in enumerate(form):
        if isinstance(c, Poly):
            c = MPoly(vars_, {(k,) + (0,) * len(names): x for k, x in enumerate(c.coeffs)})
        elif isinstance(c, str):
            c = MPoly.parse(c, vars_)
        else:
            c = MPoly.const(vars_, c)
        acc = acc + c * MPoly.var(vars_, names[i])
    return acc


def _on_branch(form: MPoly, comps: Sequence[MPoly]) -> MPoly:
    n = len(comps)
    names = _coordinate_names(n)
    values = {"s": MPoly.var(FAMILY_VARS, "s")}
    for i, name in enumerate(names):
        values[name] = comps[i % n]
    return form.evaluate({v: values[v] for v in form.vars}, one=MPoly.const(FAMILY_VARS, 1))


def evaluate_form(f: DeformationFamily, form, branch: int) -> MPoly:
    """The form pulled back along one branch, a polynomial in ``(t, s)``."""
    return _on_branch(_as_form(form, f.n), f.branches[branch])


def verify_congruence(f: DeformationFamily, linear_form, g, k: int) -> bool:
    """True iff the form vanishes on every branch modulo ``g**k`` in ``Q[s][t]``.

    ``g`` is text or an :class:`MPoly` in ``(t, s)`` and must be monic in ``t``.
    """
    if isinstance(g, str):
        g = MPoly.parse(g, FAMILY_VARS)
    deg = g.degree_in("t")
    if deg < 1:
        raise SeriesError("modulus must have positive degree in t")
    gs = g.to_series("t", deg, "s")
    for b in range(len(f.branches)):
        val = evaluate_form(f, linear_form, b)
        a = val.to_series("t", max(val.degree_in("t"), 0), "s")
        if not ps_reduce_mod(a, gs, k).is_zero():
            return False
    return True


def verify_on_surface(f: DeformationFamily, surface, branch: int = 0, mode: str = "exact") -> bool:
    """Whether one branch lies on ``surface`` (exactly, or modulo ``t^3``)."""
    if mode not in ("exact", "mod-degree-3"):
        raise ValueError(f"unknown mode {mode!r}")
    val = evaluate_form(f, surface, branch)
    if mode == "exact":
        return val.is_zero()
    ti = val.vars.index("t")
    return all(e[ti] >= 3 for e in val.terms)


# ---------------------------------------------------------------------------
# constructors


def _mp(p: Poly, scale: MPoly | None = None) -> MPoly:
    m = MPoly(FAMILY_VARS, {(k, 0): c for k, c in enumerate(p.coeffs)})
    return m if scale is None else m * scale


def _family_from_polys(name, rows, source, target, **kw) -> DeformationFamily:
    return DeformationFamily(name, tuple(tuple(r) for r in rows), source, target, **kw)


def wedge_family(g1: MultiGerm, g2: MultiGerm, source: str | None = None, target: str | None = None) -> DeformationFamily:
    """Branches ``(phi1, 0)`` and ``(phi2, s*phi2)`` in ``C^(2n)``.

    At ``s = 0`` both germs sit on the diagonal copy of ``C^n``; for
    ``s != 0`` the second is moved off it and the fibre is ``g1 ∨ g2``.
    """
    if g1.n != g2.n:
        raise ValueError("wedge family needs germs in the same ambient dimension")
    s = MPoly.var(FAMILY_VARS, "s")
    zero = MPoly(FAMILY_VARS)
    rows = [[_mp(c) for c in b.components] + [zero] * g1.n for b in g1.branches]
    rows += [[_mp(c) for c in b.components] + [_mp(c, s) for c in b.components] for b in g2.branches]
    t1, t2 = format_germ(g1), format_germ(g2)
    return _family_from_polys(
        f"wedge {t1} {t2}", rows, source or f"{t1} ∪ {t2}", target or f"{t1} ∨ {t2}",
        citation="union to wedge", delta_constant=False,
    )


def monomialize_family(b: Branch, target: str | None = None) -> DeformationFamily:
    """``z_1 = t^m``, ``z_i = phi_i + s t^(m+i-1)``; the general fibre is ``M_m``.

    The branch is padded with zero components to at least ``m`` of them.
    """
    m = b.multiplicity
    lead = [i for i, c in enumerate(b.components) if not c.is_zero() and c.order() == m]
    prepared = next((i for i in lead if b.components[i] == Poly.monomial(m, b.components[i][m], "t")), None)
    if prepared is None:
        raise DeformationError("no component of least order is a monomial c*t^m")
    first = b.components[prepared] * (1 / b.components[prepared][m])
    rest = [c for i, c in enumerate(b.components) if i != prepared]
    rest += [Poly((), "t")] * max(0, m - 1 - len(rest))
    t = MPoly.var(FAMILY_VARS, "t")
    s = MPoly.var(FAMILY_VARS, "s")
    rows = [_mp(first)]
    for i, c in enumerate(rest, start=2):
        extra = s * t ** (m + i - 1) if i <= m else MPoly(FAMILY_VARS)
        rows.append(_mp(c) + extra)
    src = format_germ(MultiGerm((b,)))
    return _family_from_polys(
        f"monomialize {src}", [rows], src, target or f"M{m}", citation="deformation to the monomial curve"
    )


PARTITION_POINTS = (0, 1, -1, 2, -2, 3, -3, 4)


def partition_family(m: int, parts: Sequence[int], target: str | None = None) -> DeformationFamily:
    """``(p, t p, ..., t^(m-1) p)`` with ``p = prod (t - b_i s)^(m_i)``.

    The fibre at ``s = 0`` is ``M_m``; at ``s = 1`` the local branch at
    ``t = b_i`` is ``M_(m_i)``.
    """
    parts = list(parts)
    if any(p < 1 for p in parts) or sum(parts) != m:
        raise ValueError("parts must be positive and sum to m")
    if len(parts) > len(PARTITION_POINTS):
        raise ValueError("too many parts")
    t = MPoly.var(FAMILY_VARS, "t")
    s = MPoly.var(FAMILY_VARS, "s")
    p = MPoly.const(FAMILY_VARS, 1)
    for b, mi in zip(PARTITION_POINTS, parts):
        p = p * (t - s * b) ** mi
    rows = [[p * t**i for i in range(m)]]
    return _family_from_polys(
        f"partition {m}:{','.join(map(str, parts))}", rows, f"M{m}",
        target or "∨".join(f"M{q}" for q in parts), citation="partition of the monomial curve",
    )


def akl_to_dk_family(k: int) -> DeformationFamily:
    """``A_k ∨ L -> D_(k+1)`` inside ``rank ((x^k, y, z), (y, x, s)) <= 1``.

    Even ``k``: branches ``(0, 0, t)`` and ``(t^2, t^(k+1), s t^(k-1))``.
    Odd ``k = 2j - 1``: the ``A_k`` splits into ``(t, ±t^j, ±s t^(j-1))``.
    """
    if not 2 <= k <= 12:
        raise ValueError("k must lie in 2..12")
    if k % 2 == 0:
        text = f"(0,0,t)+(t^2,t^{k + 1},s*t^{k - 1})"
    else:
        j = (k + 1) // 2
        text = f"(t,t^{j},s*t^{j - 1})+(t,-t^{j},-s*t^{j - 1})+(0,0,t)"
    target = "A3" if k == 2 else "D4" if k == 3 else f"D{k + 1}"
    return DeformationFamily.from_text(
        f"A{k}∨L to D{k + 1}", text, f"A{k}∨L", target, citation="rank condition A_k ∨ L -> D_(k+1)"
    )


AKL_MATRIX = (("x^{k}", "y", "z"), ("y", "x", "s"))


def akl_minors(k: int) -> list[MPoly]:
    """The 2x2 minors of the rank condition as polynomials in ``s, x, y, z``."""
    vars_ = ("s",) + _coordinate_names(3)
    m = [[MPoly.parse(e.format(k=k), vars_) for e in row] for row in AKL_MATRIX]
    return [m[0][a] * m[1][b] - m[0][b] * m[1][a] for a, b in ((0, 1), (0, 2), (1, 2))]


# ---------------------------------------------------------------------------
# shipped families

CONGRUENCE_FAMILY = DeformationFamily.from_text(
    "(5,6,7,9) to L(3,1)",
    "((t^3-s)*t^2,(t^3-s)^2,(t^3-s)^2*t,(t^3-s)^3)",
    "(5,6,7,9)",
    "L(3,1)",
    citation="valuation bound for multiplicity five; planar 2-jet congruence",
    s0=None,
    kind="param",
)

SURFACE_FAMILY = DeformationFamily.from_text(
    "(2,3,-,-)+(5,-,4,3) to L(3,1)",
    "(t^2,t^3,0,2*s*t)+((t^2-s^2)^2*t,0,(t^2-s^2)^2,(t^2-s^2)*(t+2*s))",
    "(2,3,-,-)+(5,-,4,3)",
    "L(3,1)",
    citation="cusp with M3 to A3; the A3 lies on a smooth surface",
)

SURFACE = "12*x*s^6 - 3*w^2*s^4 - x*w + z^2 + 2*z*w*s^2 + 12*z*s^8"

# same configuration with s -> s^2 on the A3 branch; lies on SURFACE_CORRECTED
SURFACE_FAMILY_RESCALED = DeformationFamily.from_text(
    "(2,3,-,-)+(5,-,4,3) to L(3,1), rescaled",
    "(t^2,t^3,0,2*s*t)+((t^2-s^4)^2*t,0,(t^2-s^4)^2,(t^2-s^4)*(t+2*s^2))",
    "(2,3,-,-)+(5,-,4,3)",
    "L(3,1)",
    citation="cusp with M3 to A3; the A3 lies on a smooth surface",
)

SURFACE_CORRECTED = "12*x*s^6 - 3*w^2*s^4 - x*w + z^2 + 2*z*w*s^2 + 15*z*s^8"


def _f(name, text, source, target, citation, **kw) -> DeformationFamily:
    return DeformationFamily.from_text(name, text, source, target, citation=citation, **kw)


LIFTS = "adding a higher order term"

_SHIPPED: list[DeformationFamily] = [
    SURFACE_FAMILY,
    SURFACE_FAMILY_RESCALED,
    _f("W8* to T7*", "(t^2*(t-s)^2,t^3*(t-s)^2,t^4*(t-s)^3)", "(4,5,7)", "(2,3,-)+(-,2,3)",
       "W8* deforms to T7*", kind="param"),
    _f("line pulled off", "(t,0,0)+(0,t,s)", "A1", "A0", "pulling the two lines apart"),
    _f("(5,6,7,8) to (5,6,7,8,9)", "(t^5,t^6,t^7,t^8,s*t^9)", "(5,6,7,8)", "(5,6,7,8,9)", LIFTS),
    _f("(4,6,7) to (4,6,7,9)", "(t^4,t^6,t^7,s*t^9)", "(4,6,7)", "(4,6,7,9)", LIFTS),
    _f("(4,5,6) to (4,5,6,7)", "(t^4,t^5,t^6,s*t^7)", "(4,5,6)", "(4,5,6,7)", LIFTS),
    _f("E6 to (3,4,5)", "(t^3,t^4,s*t^5)", "E6", "(3,4,5)", LIFTS),
    _f("E8 to (3,5,7)", "(t^3,t^5,s*t^7)", "E8", "(3,5,7)", LIFTS),
    _f("E7 to (2,3,-)+(1,-,2)", "(t^2,t^3,0)+(t,0,s*t^2)", "E7", "(2,3,-)+(1,-,2)", LIFTS),
    _f("(4,5,7) to (4,5,6)", "(t^4,t^5,t^7+s*t^6)", "(4,5,7)", "(4,5,6)", "lowering a valuation",
       delta_constant=True, kind="both"),
    _f("(4,6,7,9) to (4,5,7)", "(t^4,t^6+s*t^5,t^7,t^9)", "(4,6,7,9)", "(4,5,7)", "lowering a valuation",
       delta_constant=True, kind="both"),
    _f("T9 to A2∨A4", "(t^2,t^3,0,0)+(0,(1-s)*t^5,t^2,s*t^5)", "(2,3,-)+(-,5,2)", "A2∨A4",
       "moving the second branch off the plane"),
]


def _wedge_examples() -> list[DeformationFamily]:
    from .notation import parse_germ

    a2 = parse_germ("(2,3,-)")
    m3 = parse_germ("(3,4,5)")
    cusp = parse_germ("(2,3)")
    return [
        wedge_family(a2, m3, "(2,3,-)+(3,4,5)", "A2∨M3"),
        wedge_family(a2, parse_germ("(2,-,3)"), "(2,3,-)+(2,-,3)", "A2∨A2"),
        wedge_family(cusp, parse_germ("(3,4)"), "(2,3)+(3,4)", "A2∨E6"),
    ]


def _constructor_examples() -> list[DeformationFamily]:
    from .notation import parse_germ

    out = [
        monomialize_family(parse_germ("(3,7,8)").branches[0], "(3,4,5)"),
        monomialize_family(parse_germ("(4,6,7)").branches[0], "(4,5,6,7)"),
        partition_family(2, (1, 1), "A1"),
        partition_family(3, (1, 1, 1), "L3"),
        partition_family(3, (2, 1), "A2∨L"),
        partition_family(4, (2, 2), "A2∨A2"),
    ]
    out += [akl_to_dk_family(k) for k in range(2, 9)]
    return out


def shipped_families() -> list[DeformationFamily]:
    """Every family whose end fibres are checked against the atlas."""
    return list(_SHIPPED) + _wedge_examples() + _constructor_examples()


# ---------------------------------------------------------------------------
# verification


def reference_germ(label: str) -> MultiGerm:
    """Germ for a label: an atlas instance, ``M_m``, germ text, or a wedge of these."""
    from .atlas import AtlasError
    from .germ import wedge
    from .notation import GermSyntaxError, parse_germ

    if label.startswith("M") and label[1:].isdigit():
        m = int(label[1:])
        return parse_germ("(" + ",".join(str(e) for e in range(m, 2 * m)) + ")")
    try:
        return find_instance(label).germ
    except AtlasError:
        pass
    if label.startswith("("):
        try:
            return parse_germ(label)
        except GermSyntaxError:
            pass
    if "∨" in label:
        pieces = [reference_germ(p) for p in label.split("∨")]
        g = pieces[0]
        for p in pieces[1:]:
            g = wedge(g, p)
        return g
    raise AtlasError(f"unknown label {label!r}")


@dataclass
class FamilyReport(VerificationReport):
    deltas: tuple[int, int] | None = None
    branch_counts: tuple[int, int] | None = None
    genus_like: tuple[int, int] | None = field(default=None, repr=False)


def fibre_branch_count(f: DeformationFamily, s0) -> int:
    """Branches of the whole fibre: local branches at the origin, plus one
    for every branch of the family that misses it."""
    s0 = Fraction(s0)
    total = 0
    for comps in f.branches:
        polys = [p for p in _branch_at(comps, s0) if not p.is_zero()]
        g = polys[0]
        for p in polys[1:]:
            g = g.gcd(p)
        total += max(1, len(g.rational_roots())) if g.degree > 0 else 1
    return total


def verify_family(f: DeformationFamily) -> FamilyReport:
    """Source and target signatures and the semicontinuity checks."""
    rep = FamilyReport(f.name, {})
    g0 = specialize(f, 0)
    rep.checks.append(Check("source signature", signature(g0) == signature(reference_germ(f.source)), f.source))
    if f.s0 is None:
        rep.checks.append(Check("target", True, "general fibre has irrational base points; identities only"))
        return rep
    g1 = specialize(f, f.s0)
    rep.checks.append(Check("target signature", signature(g1) == signature(reference_germ(f.target)), f.target))
    d0, d1 = delta(g0), delta(g1)
    rep.deltas = (d0, d1)
    rep.branch_counts = (fibre_branch_count(f, 0), fibre_branch_count(f, f.s0))
    rep.genus_like = (d0 - g0.r + 1, d1 - g1.r + 1)
    rep.checks.append(Check("delta semicontinuous", d1 <= d0, f"{d0} -> {d1}"))
    c0, c1 = rep.branch_counts
    rep.checks.append(Check("branch count", c1 >= c0, f"{c0} -> {c1}"))
    if f.delta_constant:
        rep.checks.append(Check("delta constant", d0 == d1, f"{d0} -> {d1}"))
    if f.kind in ("param", "both"):
        rep.checks.append(
            Check("delta - r + 1 semicontinuous", rep.genus_like[1] <= rep.genus_like[0],
                  f"{rep.genus_like[0]} -> {rep.genus_like[1]}")
        )
    return rep


def verify_families(families: Sequence[DeformationFamily] | None = None) -> list[FamilyReport]:
    return [verify_family(f) for f in (shipped_families() if families is None else families)]
