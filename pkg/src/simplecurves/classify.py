"""Recognition of simple parametrisations.

A germ is first compared with the atlas by its :class:`Signature`.  When
nothing matches, a list of reduction rules is tried in order; each rule
names a deformation to a non-simple curve.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import atlas, linalg
from .germ import (
    Branch,
    MultiGerm,
    Signature,
    _closure,
    delta,
    piece_key,
    signature,
    stable_reduce,
    tangent_vector,
)
from .powerseries import Poly

log = logging.getLogger(__name__)

SIMPLE, NOT_SIMPLE, UNKNOWN = "Simple", "NotSimple", "Unknown"


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict with its supporting data.

    ``label`` and ``params`` are set for ``Simple`` verdicts and for
    ``NotSimple`` verdicts that matched a non-simple atlas entry.  ``rule``
    and ``citation`` name the reduction that applied, ``witness`` the name
    of a shipped deformation family, ``ambiguity`` the colliding labels.
    """

    verdict: str
    label: str | None = None
    params: tuple[tuple[str, int], ...] = ()
    rule: str | None = None
    citation: str | None = None
    witness: str | None = None
    target: str | None = None
    ambiguity: tuple[str, ...] = ()
    reason: str = ""
    signature: Signature | None = field(default=None, compare=False, repr=False)

    def records(self) -> dict[str, str]:
        return {
            "verdict": self.verdict,
            "label": self.label or "-",
            "params": ",".join(f"{k}={v}" for k, v in self.params) or "-",
            "rule": self.rule or "-",
            "citation": self.citation or "-",
            "witness": self.witness or "-",
            "target": self.target or "-",
            "ambiguity": " | ".join(self.ambiguity) or "-",
            "reason": self.reason or "-",
        }

    def render(self) -> str:
        if self.verdict == SIMPLE:
            extra = f" ({', '.join(f'{k}={v}' for k, v in self.params)})" if self.params else ""
            return f"Simple: {self.label}{extra}"
        if self.verdict == NOT_SIMPLE:
            parts = [f"NotSimple: {self.rule}"]
            if self.label:
                parts.append(f"  matches {self.label}")
            if self.target:
                parts.append(f"  deforms into {self.target}")
            if self.citation:
                parts.append(f"  citation: {self.citation}")
            if self.witness:
                parts.append(f"  witness: {self.witness}")
            return "\n".join(parts)
        lines = [f"Unknown: {self.reason}"]
        if self.ambiguity:
            lines.append("  candidates: " + " | ".join(self.ambiguity))
        return "\n".join(lines)


def signature_of(g: MultiGerm) -> Signature:
    return signature(g)


# ---------------------------------------------------------------------------
# atlas lookup


def _candidates(sig: Signature) -> list[atlas.Instance]:
    """Atlas instances whose parameters are compatible with the signature's size."""
    kmax = max(6, 2 * sig.delta + 2)
    nmax = max(4, sig.r + 3)
    out = []
    for entry in atlas.entries():
        for params in atlas._param_grid(entry, kmax, nmax):
            if entry.label == "L_n" and params["n"] != sig.r:
                continue
            exp = entry.expected_invariants(**params)
            ms = range(0, sig.r) if entry.wedgeable else (0,)
            for m in ms:
                if m and entry.label == "A_k" and params["k"] <= 1:
                    continue
                if exp is not None and (exp["delta"] + m != sig.delta or exp["r"] + m != sig.r):
                    continue
                g = atlas.instantiate(entry, m=m, **params)
                if g.r != sig.r:
                    continue
                key = tuple(sorted(dict(params, m=m).items() if m else params.items()))
                out.append(atlas.Instance(entry, key, g))
    return out


def atlas_matches(g: MultiGerm, sig: Signature | None = None) -> list[atlas.Instance]:
    sig = sig or signature(g)
    head = piece_key(g)

    # cheap fields first; the decomposition is by far the most expensive
    def same(h: MultiGerm) -> bool:
        return (
            tuple(sorted(b.multiplicity for b in h.branches)) == sig.multiplicities
            and delta(h) == sig.delta
            and piece_key(h) == head
            and signature(h) == sig
        )

    return [inst for inst in _candidates(sig) if same(inst.germ)]


# ---------------------------------------------------------------------------
# valuations of irreducible germs


def normalized_valuations(b: Branch, N: int = 24) -> list[int | None]:
    """Orders ``v(phi_1) < v(phi_2) < ...`` after normalising the components.

    Repeatedly the component of least order is kept and the others are
    reduced against the algebra generated by the kept ones.  Components
    that become zero modulo ``t^(N+1)`` are reported as ``None``
    (valuation above ``N``).
    """
    jets = [{k: c for k, c in enumerate(p.coeffs[: N + 1]) if c} for p in b.components]
    jets = [j for j in jets if j]
    chosen: list[dict] = []
    vanished = 0
    while jets:
        span = _closure([{0: Fraction(1)}], chosen, 1, N)
        jets = [span.reduce_lead(j) for j in jets]
        vanished += sum(1 for j in jets if not j)
        jets = sorted((j for j in jets if j), key=min)
        if jets:
            chosen.append(jets.pop(0))
    return [min(j) for j in chosen] + [None] * vanished


def _val(vals: Sequence[int | None], i: int) -> float:
    """``v(phi_i)`` (1-based); missing or vanishing components count as infinite."""
    if i > len(vals) or vals[i - 1] is None:
        return float("inf")
    return vals[i - 1]


# ---------------------------------------------------------------------------
# reduction rules


@dataclass(frozen=True)
class Rule:
    name: str
    citation: str
    test: Callable[["_Context"], bool]
    target: str | None = None


class _Context:
    """Lazily computed data shared by the rules."""

    def __init__(self, g: MultiGerm, sig: Signature):
        self.g = g
        self.sig = sig
        self.mults = [b.multiplicity for b in g.branches]
        self.singular = [i for i, m in enumerate(self.mults) if m > 1]
        self.smooth = [i for i, m in enumerate(self.mults) if m == 1]
        self._vals = None

    @property
    def valuations(self) -> list[int | None]:
        if self._vals is None:
            self._vals = normalized_valuations(self.g.branches[0])
        return self._vals

    def v(self, i: int) -> float:
        return _val(self.valuations, i)

    def irreducible(self, m: int) -> bool:
        return self.g.r == 1 and self.mults[0] == m

    def smooth_tangent_groups(self) -> list[list[int]]:
        groups: list[list[int]] = []
        for i in self.smooth:
            v = list(tangent_vector(self.g.branches[i]))
            for grp in groups:
                if linalg.rank([list(tangent_vector(self.g.branches[grp[0]])), v]) == 1:
                    grp.append(i)
                    break
            else:
                groups.append([i])
        return groups

    def semigroup(self, i: int) -> tuple[int, ...]:
        from .germ import value_semigroup

        return value_semigroup(self.g.branches[i]).generators


ALLOWED_PARTNERS = {(2, 3), (2, 5), (3, 4, 5)}


def _two_singular_bad(c: _Context) -> bool:
    if len(c.singular) != 2:
        return False
    a, b = (c.semigroup(i) for i in c.singular)
    return not ((a == (2, 3) and b in ALLOWED_PARTNERS) or (b == (2, 3) and a in ALLOWED_PARTNERS))


def _mult3_plus_lines(c: _Context) -> bool:
    if len(c.singular) != 1 or c.mults[c.singular[0]] != 3:
        return False
    n_lines = len(c.smooth)
    return n_lines >= 1 and c.sig.embedding_dimension < n_lines + 2 and c.g.r >= 3


def _plane_not_bpv(c: _Context) -> bool:
    if c.sig.embedding_dimension > 2:
        return False
    from .plane import bpv_simple, resolution_tree

    g2 = stable_reduce(c.g)
    if g2.n != 2:
        return False
    return not bpv_simple(resolution_tree(g2))


RULES: tuple[Rule, ...] = (
    Rule("multiplicity >= 6", "irreducible curves of multiplicity at least 6 are not simple",
         lambda c: any(m >= 6 for m in c.mults)),
    Rule("four branches with two singular components",
         "a simple curve with at least four branches has at most one singular component, of multiplicity at most three",
         lambda c: c.g.r >= 4 and (len(c.singular) >= 2 or any(c.mults[i] >= 4 for i in c.singular))),
    Rule("three singular components", "A2∨A2∨A2 is not simple", lambda c: len(c.singular) >= 3),
    Rule("v(phi_4)>10", "multiplicity 5: deforms into L(5,3) when v(phi_4) > 10",
         lambda c: c.irreducible(5) and c.v(4) > 10, "L(5,3)"),
    Rule("v(phi_3)>=8", "multiplicity 5: deforms into L(4,2) when v(phi_3) >= 8",
         lambda c: c.irreducible(5) and c.v(3) >= 8, "L(4,2)"),
    Rule("multiplicity 4, v(phi_3)>8", "multiplicity 4: not simple when v(phi_3) > 8",
         lambda c: c.irreducible(4) and c.v(3) > 8),
    Rule("multiplicity 3, v(phi_3)>9", "multiplicity 3: deforms into L(3,1), a curve with planar 2-jet, when v(phi_3) > 9",
         lambda c: c.irreducible(3) and c.v(3) > 9, "L(3,1)"),
    Rule("two singular components other than A2 with A2, A4 or M3",
         "every irreducible curve other than A2 deforms into A3, and A2∨A5 deforms into L(3,1)",
         _two_singular_bad),
    Rule("multiplicity 5 with another branch", "M5∨L is not simple",
         lambda c: c.g.r >= 2 and any(m == 5 for m in c.mults)),
    Rule("multiplicity 4 with two more branches", "M4∨L2 is not simple",
         lambda c: any(m == 4 for m in c.mults) and (c.g.r >= 3 or len(c.singular) >= 2)),
    Rule("two pairs of tangent smooth branches", "A3∨A3 deforms into L(4,2)",
         lambda c: sum(1 for grp in c.smooth_tangent_groups() if len(grp) >= 2) >= 2, "L(4,2)"),
    Rule("three tangent smooth branches and a fourth branch", "three tangent lines and a line deform into L(4,2)",
         lambda c: c.g.r >= 4 and any(len(grp) >= 3 for grp in c.smooth_tangent_groups()), "L(4,2)"),
    Rule("three tangent smooth branches with planar 2-jet", "L(3,1) is three tangent lines with planar 2-jet",
         lambda c: not c.singular and any(len(grp) >= 3 for grp in c.smooth_tangent_groups())
         and c.sig.planar_2jet, "L(3,1)"),
    Rule("too many smooth branches for their tangent span", "n+2 lines in C^n deform into L(n+2,n)",
         lambda c: not c.singular and c.sig.tangent_span >= 2 and c.g.r >= c.sig.tangent_span + 2),
    Rule("M3 with lines not transverse to its tangent space", "the line must be transverse to the Zariski tangent space",
         _mult3_plus_lines),
    Rule("plane curve with a point of total multiplicity above 3",
         "plane curve singularities are simple exactly when the reduced total transform never has multiplicity above 3",
         _plane_not_bpv),
)


def nonsimple_rules(g: MultiGerm, sig: Signature | None = None) -> tuple[Rule, str | None] | None:
    """First applicable reduction rule and the name of a witness family, if any."""
    sig = sig or signature(g)
    ctx = _Context(g, sig)
    for rule in RULES:
        if rule.test(ctx):
            return rule, _witness_for(g, rule)
    return None


def _witness_for(g: MultiGerm, rule: Rule | None = None, label: str | None = None) -> str | None:
    from .deform import CONGRUENCE_FAMILY, SURFACE_FAMILY

    known = {"(5,6,7,9)": CONGRUENCE_FAMILY.name, "(2,3,-,-)+(5,-,4,3)": SURFACE_FAMILY.name}
    return known.get(label) if label else None


def recognize(g: MultiGerm) -> ClassificationResult:
    """Simple / NotSimple / Unknown verdict for a parametrised germ."""
    sig = signature(g)
    matches = atlas_matches(g, sig)
    labels = sorted({m.label for m in matches})
    kinds = {m.kind for m in matches}
    if matches and kinds == {"simple"}:
        if len(labels) == 1:
            m = matches[0]
            return ClassificationResult(SIMPLE, m.label, m.params, signature=sig)
        return ClassificationResult(UNKNOWN, ambiguity=tuple(labels), reason="signature matches several atlas entries", signature=sig)
    if matches and "simple" in kinds:
        return ClassificationResult(
            UNKNOWN, ambiguity=tuple(labels), reason="signature matches simple and non-simple atlas entries", signature=sig
        )
    hit = nonsimple_rules(g, sig)
    if matches:
        m = sorted(matches, key=lambda i: i.label)[0]
        if hit and m.kind != "confining":
            rule, _ = hit
            return ClassificationResult(
                NOT_SIMPLE, m.label, m.params, rule=rule.name, citation=rule.citation,
                witness=_witness_for(g, label=m.label), target=rule.target, signature=sig,
            )
        kind = "confining curve" if m.kind == "confining" else "non-simple curve"
        return ClassificationResult(
            NOT_SIMPLE, m.label, m.params, rule=f"is the {kind} {m.label}", citation=m.entry.citation or m.entry.group,
            witness=_witness_for(g, label=m.label), signature=sig,
        )
    if hit:
        rule, witness = hit
        return ClassificationResult(NOT_SIMPLE, rule=rule.name, citation=rule.citation, witness=witness,
                                    target=rule.target, signature=sig)
    return ClassificationResult(UNKNOWN, reason="no rule applies", signature=sig)
