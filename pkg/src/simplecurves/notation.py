"""Text notation for multi-germs.

A germ is a ``+``-separated list of branches, each a parenthesised,
comma-separated list of components.  A component is either a positive
integer ``e`` (meaning ``t^e``), a dash or ``0`` (the zero function), or a polynomial
in ``t`` with rational coefficients such as ``t^3+1/2*t^4``.  Two germs
joined by ``∨`` (or ``\\/``) are placed on complementary coordinate axes.

>>> format_germ(parse_germ("(2,3,-,-)+(-,5,4,3)"))
'(2,3,-,-)+(-,5,4,3)'
"""
from __future__ import annotations

from dataclasses import dataclass

from .germ import Branch, GermError, MultiGerm, wedge
from .powerseries import MPoly, Poly

DASHES = {"-", "−", "–"}
WEDGE = ("∨", "\\/")


class GermSyntaxError(ValueError):
    """Malformed germ text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


@dataclass(frozen=True)
class _Chunk:
    text: str
    start: int


def _split_top(text: str, seps: tuple[str, ...], start: int) -> list[_Chunk]:
    out, depth, last, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GermSyntaxError("unbalanced ')'", start + i, text)
        elif depth == 0:
            sep = next((s for s in seps if text.startswith(s, i)), None)
            if sep:
                out.append(_Chunk(text[last:i], start + last))
                i += len(sep)
                last = i
                continue
        i += 1
    if depth != 0:
        raise GermSyntaxError("unbalanced '('", start + len(text), text)
    out.append(_Chunk(text[last:], start + last))
    return out


def _strip(chunk: _Chunk) -> _Chunk:
    lead = len(chunk.text) - len(chunk.text.lstrip())
    return _Chunk(chunk.text.strip(), chunk.start + lead)


def parse_component(text: str, position: int = 0, variables=("t",)) -> MPoly:
    """One component as a polynomial in ``variables`` (``t`` first)."""
    src = text.strip()
    if not src:
        raise GermSyntaxError("empty component", position)
    if src in DASHES or src == "0":
        return MPoly(variables)
    if src.isdigit():
        e = int(src)
        if e < 1:
            raise GermSyntaxError("exponents must be positive", position)
        exps = [0] * len(variables)
        exps[0] = e
        return MPoly(variables, {tuple(exps): 1})
    try:
        return MPoly.parse(src, variables)
    except SyntaxError as exc:
        raise GermSyntaxError(f"bad component {src!r}: {exc.msg if hasattr(exc, 'msg') else exc}", position) from None


def parse_branch_components(text: str, position: int = 0, variables=("t",)) -> list[MPoly]:
    chunk = _strip(_Chunk(text, position))
    if not (chunk.text.startswith("(") and chunk.text.endswith(")")):
        raise GermSyntaxError("branch must be enclosed in parentheses", chunk.start)
    inner = chunk.text[1:-1]
    parts = _split_top(inner, (",",), chunk.start + 1)
    return [parse_component(p.text, p.start, variables) for p in parts]


def _parse_sum(text: str, start: int) -> MultiGerm:
    branches = []
    width = None
    for chunk in _split_top(text, ("+",), start):
        chunk = _strip(chunk)
        comps = parse_branch_components(chunk.text, chunk.start)
        if width is None:
            width = len(comps)
        elif len(comps) != width:
            raise GermSyntaxError(
                f"branch has {len(comps)} components, expected {width}", chunk.start
            )
        polys = [c.to_poly("t") for c in comps]
        polys = [Poly(p.coeffs, "t") for p in polys]
        try:
            branches.append(Branch(tuple(polys)))
        except GermError as exc:
            raise GermSyntaxError(str(exc), chunk.start) from None
    return MultiGerm(tuple(branches))


def parse_branch_list(text: str, variables=("t", "s")) -> list[list[MPoly]]:
    """``+``-separated branches whose components are polynomials in ``variables``."""
    if not text.strip():
        raise GermSyntaxError("empty branch list", 0, text)
    out: list[list[MPoly]] = []
    for chunk in _split_top(text, ("+",), 0):
        chunk = _strip(chunk)
        comps = parse_branch_components(chunk.text, chunk.start, variables)
        if out and len(comps) != len(out[0]):
            raise GermSyntaxError(
                f"branch has {len(comps)} components, expected {len(out[0])}", chunk.start
            )
        out.append(comps)
    return out


def parse_germ(text: str) -> MultiGerm:
    """Parse germ text into a :class:`MultiGerm`."""
    if not text.strip():
        raise GermSyntaxError("empty germ", 0, text)
    pieces = _split_top(text, WEDGE, 0)
    germ = None
    for piece in pieces:
        piece = _strip(piece)
        if not piece.text:
            raise GermSyntaxError("empty wedge summand", piece.start, text)
        g = _parse_sum(piece.text, piece.start)
        germ = g if germ is None else wedge(germ, g)
    return germ


def format_component(p: Poly) -> str:
    if p.is_zero():
        return "-"
    if p.coeffs[-1] == 1 and all(c == 0 for c in p.coeffs[:-1]):
        return str(p.degree)
    return p.format("t")


def _is_monomial_branch(b: Branch) -> bool:
    return all(format_component(c).isdigit() or c.is_zero() for c in b.components)


def format_branch(b: Branch) -> str:
    if _is_monomial_branch(b):
        return "(" + ",".join(format_component(c) for c in b.components) + ")"
    return "(" + ",".join("0" if c.is_zero() else c.format("t") for c in b.components) + ")"


def format_germ(g: MultiGerm) -> str:
    """Canonical text: exponents for monomial branches, polynomials otherwise."""
    return "+".join(format_branch(b) for b in g.branches)
