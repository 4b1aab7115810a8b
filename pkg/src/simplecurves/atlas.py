"""Catalogue of simple parametrisations, confining curves and adjacencies.

Every entry is a named normal form with a builder for its parametrisation.
Entries from the table of indecomposable space curves also carry defining
equations (or a 2x3 matrix whose minors define the curve) which
:func:`verify_entry` checks by exact substitution.

Labels follow the exponent notation of :mod:`simplecurves.notation`, with
``∨`` for a wedge and ``L{m}`` for ``m`` lines on fresh coordinate axes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping

from . import linalg
from .germ import Branch, MultiGerm, Signature, lines, signature, wedge
from .notation import parse_germ
from .powerseries import MPoly, Poly, certified_zero

log = logging.getLogger(__name__)

DEFAULT_LAMBDA = Fraction(2)
CHECK_LAMBDAS = (Fraction(2), Fraction(3))
VARS = ("x", "y", "z", "w")


class AtlasError(KeyError):
    """Unknown label or parameter outside the declared range."""


def _ones(n: int) -> str:
    return ",".join(["1"] * n)


def _wl(count: int) -> str:
    """Suffix for a wedge with ``count`` lines."""
    return "" if count == 0 else "∨L" if count == 1 else f"∨L{count}"


@dataclass(frozen=True)
class Param:
    name: str
    low: int
    high: int | None = None  # inclusive, None = unbounded


@dataclass(frozen=True)
class AtlasEntry:
    """A named normal form.

    ``germ`` is either fixed germ text or a callable mapping parameter
    values to germ text.  Equation strings may contain ``{k}`` and
    ``{lam}`` placeholders.  ``coordinate_change`` lists the expressions to
    substitute for ``x, y, z`` before the printed equations vanish.
    """

    label: str
    kind: str  # "simple", "confining" or "example"
    group: str
    germ: str | Callable[..., str]
    params: tuple[Param, ...] = ()
    equations: tuple[str, ...] = ()
    matrix: tuple[tuple[str, ...], ...] | None = None
    coordinate_change: tuple[str, ...] | None = None
    alias: str | None = None
    expected: Callable[..., Mapping[str, int]] | Mapping[str, int] | None = None
    naming: Callable[..., str] | None = None
    wedgeable: bool = False
    uses_lambda: bool = False
    citation: str = ""
    table_row: bool = False

    # -- parameters -------------------------------------------------------
    def check_params(self, values: Mapping[str, int]) -> dict[str, int]:
        out = {}
        for p in self.params:
            if p.name not in values:
                raise AtlasError(f"{self.label}: missing parameter {p.name}")
            v = values[p.name]
            if v < p.low or (p.high is not None and v > p.high):
                raise AtlasError(f"{self.label}: parameter {p.name}={v} out of range")
            out[p.name] = int(v)
        extra = set(values) - {p.name for p in self.params} - {"lam", "m"}
        if extra:
            raise AtlasError(f"{self.label}: unexpected parameters {sorted(extra)}")
        return out

    def text(self, lam: Fraction = DEFAULT_LAMBDA, **params) -> str:
        if callable(self.germ):
            kw = dict(params)
            if self.uses_lambda:
                kw["lam"] = lam
            return self.germ(**kw)
        return self.germ

    def instance_label(self, **params) -> str:
        params = {k: v for k, v in params.items() if k not in ("lam",)}
        m = params.pop("m", 0)
        base = self.naming(**params) if self.naming else self.label
        return base + _wl(m)

    def expected_invariants(self, **params) -> dict[str, int] | None:
        if self.expected is None:
            return None
        if callable(self.expected):
            return dict(self.expected(**params))
        return dict(self.expected)


@dataclass(frozen=True)
class Instance:
    """A concrete germ drawn from an entry."""

    entry: AtlasEntry
    params: tuple[tuple[str, int], ...]
    germ: MultiGerm

    @property
    def label(self) -> str:
        return self.entry.instance_label(**dict(self.params))

    @property
    def kind(self) -> str:
        return self.entry.kind


# ---------------------------------------------------------------------------
# germ text builders for the series


def _a_text(k: int) -> str:
    if k == 0:
        return "(1,-)"
    if k % 2:
        return f"(1,-)+(1,{(k + 1) // 2})"
    return f"(2,{k + 1})"


def _embed(branch_texts: list[list[str]], n: int) -> str:
    return "+".join("(" + ",".join(b + ["-"] * (n - len(b))) + ")" for b in branch_texts)


def _lines_block(offset: int, count: int, n: int) -> list[list[str]]:
    out = []
    for i in range(count):
        row = ["-"] * n
        row[offset + i] = "1"
        out.append(row)
    return out


def _series_text(head: list[list[str]], head_dim: int, n: int, extra: list[str]) -> str:
    """``head ∨ L_{n-head_dim} + extra`` in C^n."""
    rows = [b + ["-"] * (n - len(b)) for b in head]
    rows += _lines_block(head_dim, n - head_dim, n)
    rows.append(extra)
    return "+".join("(" + ",".join(r) + ")" for r in rows)


def _a_rows(j: int) -> list[list[str]]:
    if j % 2:
        return [["1", "-"], ["1", str((j + 1) // 2)]]
    return [["2", str(j + 1)]]


def _d_from_a(j: int, n: int) -> str:
    return _series_text(_a_rows(j), 2, n, ["-"] + ["1"] * (n - 1))


def _d_lines(n: int) -> str:
    rows = _lines_block(0, n, n) + [["1"] * n]
    return "+".join("(" + ",".join(r) + ")" for r in rows)


def _e_series(head: str, pattern: str, n: int) -> str:
    heads = {"357": [["3", "5", "7"]], "345": [["3", "4", "5"]], "a2": [["2", "3"]]}
    dims = {"357": 3, "345": 3, "a2": 2}
    d = dims[head]
    tail = n - d
    extras = {
        "--1": ["-", "-", "1"] + ["1"] * tail,
        "-1-": ["-", "1", "-"] + ["1"] * tail,
        "1-1": ["1", "-"] + ["1"] * tail,
        "1-2": ["1", "-"] + ["2"] * tail,
    }
    return _series_text(heads[head], d, n, extras[pattern])


def _vandermonde_lines(n: int) -> str:
    rows = []
    for a in range(n + 2):
        comps = []
        for i in range(n):
            c = a**i
            comps.append("0" if c == 0 else ("t" if c == 1 else f"{c}*t"))
        rows.append("(" + ",".join(comps) + ")")
    return "+".join(rows)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _l31_text(lam: Fraction) -> str:
    return f"(0,t,0)+(t^2,t,0)+({_frac_text(lam)}*t^2,t,t^3)"


def _l42_text(lam: Fraction) -> str:
    return f"(0,t,0)+(t,0,0)+(t,t,0)+({_frac_text(lam)}*t,t,t^2)"


def _e7_tilde(lam: Fraction) -> str:
    return f"(0,t)+(t,0)+(t,t)+({_frac_text(lam)}*t,t)"


def _e8_tilde(lam: Fraction) -> str:
    return f"(0,t)+(t^2,t)+({_frac_text(lam)}*t^2,t)"


# ---------------------------------------------------------------------------
# the entries

IRR = "irreducible sporadic curves"
MULT4 = "multiplicity four branch and a line"
A2M3 = "cusp and a triple point"
CUSPS_LINE = "two cusps and a line"
TWO_A = "union of two A_k singularities"
OTHER = "other sporadic curves"
TYPE_E = "indecomposable curves of type E"
E_SERIES = "deformations of E_k wedge lines"
TYPE_A = "indecomposable curves of type A"
D_SERIES = "deformations of D_k wedge lines"
CONFINING = "confining singularities"
TABLE = "table of indecomposable simple space curves"
EXAMPLES = "non-simple examples"


def _sporadic(label, group, delta, emb, r=1, alias=None, germ=None, **kw):
    return AtlasEntry(
        label=label,
        kind="simple",
        group=group,
        germ=germ or label,
        alias=alias,
        expected={"delta": delta, "r": r, "embedding_dimension": emb},
        citation=f"{group} diagram",
        **kw,
    )


_ENTRIES: list[AtlasEntry] = [
    # irreducible sporadic curves
    _sporadic("(5,6,7,8,9)", IRR, 4, 5),
    _sporadic("(5,6,7,8)", IRR, 5, 4),
    _sporadic("(4,5,6,7)", IRR, 3, 4),
    _sporadic("(4,5,6)", IRR, 4, 3, alias="W8"),
    _sporadic("(4,5,7)", IRR, 4, 3, alias="W8*"),
    _sporadic("(4,6,7,9)", IRR, 4, 4),
    _sporadic("(4,6,7)", IRR, 5, 3, alias="Z10"),
    _sporadic("(3,7,8)", IRR, 4, 3, alias="E12(2)"),
    # one branch of multiplicity four and a line
    _sporadic("(4,5,6,7)+(-,-,1,-)", MULT4, 5, 4, r=2),
    _sporadic("(4,5,7)∨L", MULT4, 5, 4, r=2, germ="(4,5,7,-)+(-,-,-,1)"),
    _sporadic("(4,5,6,7)∨L", MULT4, 4, 5, r=2, germ="(4,5,6,7,-)+(-,-,-,-,1)"),
    _sporadic("(4,5,6,7)+(-,-,-,1)", MULT4, 5, 4, r=2),
    _sporadic("(4,5,6)∨L", MULT4, 5, 4, r=2, germ="(4,5,6,-)+(-,-,-,1)"),
    # a cusp and a triple point
    _sporadic("A2∨M3", A2M3, 4, 5, r=2, germ="(2,3,-,-,-)+(-,-,3,4,5)"),
    _sporadic("(2,3,-,-)+(-,5,4,3)", A2M3, 5, 4, r=2),
    _sporadic("(2,3,-,-)+(-,4,5,3)", A2M3, 5, 4, r=2),
    # two cusps and a line
    _sporadic("(2,3,-,-)+(-,3,2,-)+(-,-,-,1)", CUSPS_LINE, 5, 4, r=3),
    _sporadic("(2,3,-,-)+(3,-,2,-)+(-,-,-,1)", CUSPS_LINE, 5, 4, r=3),
    _sporadic("A2∨A2∨L", CUSPS_LINE, 4, 5, r=3, germ="(2,3,-,-,-)+(-,-,2,3,-)+(-,-,-,-,1)"),
    _sporadic("(2,3,-,-)+(-,-,3,2)+(-,1,1,-)", CUSPS_LINE, 5, 4, r=3),
    _sporadic("(2,3,-,-)+(-,-,3,2)+(1,-,1,-)", CUSPS_LINE, 5, 4, r=3),
    # two A_k singularities
    _sporadic("A2∨A4", TWO_A, 4, 4, r=2, germ="(2,3,-,-)+(-,-,2,5)"),
    _sporadic("(2,3,-)+(-,5,2)", TWO_A, 5, 3, r=2, alias="T9"),
    _sporadic("(2,3,-)+(2,-,3)", TWO_A, 5, 3, r=2, alias="Z9"),
    _sporadic("A2∨A3", TWO_A, 4, 4, r=3, germ="(2,3,-,-)+(-,-,1,-)+(-,-,1,2)"),
    _sporadic("(2,3,-)+(-,-,1)+(-,2,1)", TWO_A, 5, 3, r=3, alias="T8"),
    _sporadic("(2,3,-,-)+(2,-,3,4)", TWO_A, 4, 4, r=2, alias="Z9(1)"),
    _sporadic("A2∨A2", TWO_A, 3, 4, r=2, germ="(2,3,-,-)+(-,-,2,3)"),
    _sporadic("(2,3,-)+(-,3,2)", TWO_A, 4, 3, r=2, alias="T7"),
    _sporadic("(2,3,-)+(-,2,3)", TWO_A, 4, 3, r=2, alias="T7*"),
    # other sporadic curves
    _sporadic("(3,4,5,-)+(1,-,-,2)", OTHER, 4, 4, r=2),
    _sporadic("(3,4,5)+(1,-,-)", OTHER, 5, 3, r=2, alias="W9"),
    _sporadic("(1,-,-)+(1,2,-)+(1,-,2)", OTHER, 4, 3, r=3, alias="J2,0(2)"),
    _sporadic("(2,5,-)+(1,-,2)", OTHER, 4, 3, r=2, alias="J2,1(2)"),
    # indecomposable curves of type E (each wedges with lines)
    _sporadic("(3,4,5)", TYPE_E, 2, 3, alias="E6(1)", wedgeable=True),
    _sporadic("E6", TYPE_E, 3, 2, germ="(3,4)", wedgeable=True),
    _sporadic("(3,5,7)", TYPE_E, 3, 3, alias="E8(1)", wedgeable=True),
    _sporadic("E8", TYPE_E, 4, 2, germ="(3,5)", wedgeable=True),
    _sporadic("(2,3,-)+(1,-,2)", TYPE_E, 3, 3, r=2, alias="E7(1)", wedgeable=True),
    _sporadic("E7", TYPE_E, 4, 2, r=2, germ="(2,3)+(1,-)", wedgeable=True),
    # series with embedding dimension n from E8 / E6 and from E7
    AtlasEntry(
        label="(3,5,7)∨L_{n-3}+(-,-,1,…,1)",
        kind="simple",
        group=E_SERIES,
        germ=lambda n: _e_series("357", "--1", n),
        params=(Param("n", 3),),
        naming=lambda n: f"(3,5,7){_wl(n - 3)}+(-,-,{_ones(n - 2)})",
        wedgeable=True,
        alias=None,
        citation=f"{E_SERIES} list",
    ),
    AtlasEntry(
        label="(3,4,5)∨L_{n-3}+(-,1,-,1,…,1)",
        kind="simple",
        group=E_SERIES,
        germ=lambda n: _e_series("345", "-1-", n),
        params=(Param("n", 3),),
        naming=lambda n: f"(3,4,5){_wl(n - 3)}+(-,1,-{',1' * (n - 3)})",
        wedgeable=True,
        citation=f"{E_SERIES} list",
    ),
    AtlasEntry(
        label="(3,4,5)∨L_{n-3}+(-,-,1,…,1)",
        kind="simple",
        group=E_SERIES,
        germ=lambda n: _e_series("345", "--1", n),
        params=(Param("n", 3),),
        naming=lambda n: f"(3,4,5){_wl(n - 3)}+(-,-,{_ones(n - 2)})",
        wedgeable=True,
        citation=f"{E_SERIES} list",
    ),
    AtlasEntry(
        label="A2∨L_{n-2}+(1,-,1,…,1)",
        kind="simple",
        group=E_SERIES,
        germ=lambda n: _e_series("a2", "1-1", n),
        params=(Param("n", 3),),
        naming=lambda n: f"A2{_wl(n - 2)}+(1,-,{_ones(n - 2)})",
        wedgeable=True,
        citation=f"{E_SERIES} list",
    ),
    AtlasEntry(
        label="A2∨L_{n-2}+(1,-,2,…,2)",
        kind="simple",
        group=E_SERIES,
        germ=lambda n: _e_series("a2", "1-2", n),
        params=(Param("n", 3),),
        naming=lambda n: f"A2{_wl(n - 2)}+(1,-,{','.join(['2'] * (n - 2))})",
        wedgeable=True,
        citation=f"{E_SERIES} list",
    ),
    # type A and the lines
    AtlasEntry(
        label="A_k",
        kind="simple",
        group=TYPE_A,
        germ=lambda k: _a_text(k),
        params=(Param("k", 0),),
        naming=lambda k: f"A{k}",
        expected=lambda k: {"delta": (k + 1) // 2, "r": 1 + k % 2, "embedding_dimension": min(k + 1, 2)},
        wedgeable=True,
        citation=f"{TYPE_A} list",
    ),
    AtlasEntry(
        label="L_n",
        kind="simple",
        group=TYPE_A,
        germ=lambda n: _embed(_lines_block(0, n, n), n),
        params=(Param("n", 3),),
        naming=lambda n: f"L{n}",
        expected=lambda n: {"delta": n - 1, "r": n, "embedding_dimension": n},
        citation="totally decomposable curve",
    ),
    # type D
    AtlasEntry(
        label="L_n+(1,…,1)",
        kind="simple",
        group=D_SERIES,
        germ=lambda n: _d_lines(n),
        params=(Param("n", 2),),
        naming=lambda n: "D4" if n == 2 else f"L{n}+({_ones(n)})",
        expected=lambda n: {"delta": n + 1, "r": n + 1, "embedding_dimension": n},
        wedgeable=True,
        citation=f"{D_SERIES} list",
    ),
    AtlasEntry(
        label="A_j∨L_{n-2}+(-,1,…,1)",
        kind="simple",
        group=D_SERIES,
        germ=lambda j, n: _d_from_a(j, n),
        params=(Param("j", 2), Param("n", 2)),
        naming=lambda j, n: f"D{j + 3}" if n == 2 else f"A{j}{_wl(n - 2)}+(-,{_ones(n - 1)})",
        wedgeable=True,
        citation=f"{D_SERIES} list",
    ),
    # confining singularities
    AtlasEntry(
        label="L(3,1)",
        kind="confining",
        group=CONFINING,
        germ=_l31_text,
        uses_lambda=True,
        matrix=(("z", "{lam}*({lam}-1)*y", "{lam}*x"), ("0", "x-{lam}*y^2", "{lam}*z-x*y")),
        expected={"delta": 5, "r": 3, "embedding_dimension": 3},
        citation="three smooth branches with common tangent and planar 2-jet",
    ),
    AtlasEntry(
        label="L(4,2)",
        kind="confining",
        group=CONFINING,
        germ=_l42_text,
        uses_lambda=True,
        matrix=(("z", "{lam}*(x-y)", "y*(x-y)"), ("0", "x-{lam}*y", "z-y^2")),
        expected={"delta": 5, "r": 4, "embedding_dimension": 3},
        citation="four lines with one lifted out of the plane",
    ),
    AtlasEntry(
        label="L(n+2,n)",
        kind="confining",
        group=CONFINING,
        germ=lambda n: _vandermonde_lines(n),
        params=(Param("n", 3),),
        naming=lambda n: f"L({n + 2},{n})",
        expected=lambda n: {"delta": n + 3, "r": n + 2, "embedding_dimension": n},
        citation="n+2 lines in generic position",
    ),
    AtlasEntry(
        label="E7~",
        kind="confining",
        group=CONFINING,
        germ=_e7_tilde,
        uses_lambda=True,
        equations=("x*y*(x-y)*(x-{lam}*y)",),
        expected={"delta": 6, "r": 4, "embedding_dimension": 2},
        citation="plane confining singularity, four lines",
    ),
    AtlasEntry(
        label="E8~",
        kind="confining",
        group=CONFINING,
        germ=_e8_tilde,
        uses_lambda=True,
        equations=("x*(x-y^2)*(x-{lam}*y^2)",),
        expected={"delta": 6, "r": 3, "embedding_dimension": 2},
        citation="plane confining singularity, three tangent branches",
    ),
    # non-simple examples quoted in the classification argument
    AtlasEntry("(5,6,7,9)", "example", EXAMPLES, "(5,6,7,9)", citation="deforms to L(3,1)"),
    AtlasEntry("(2,3,-,-)+(5,-,4,3)", "example", EXAMPLES, "(2,3,-,-)+(5,-,4,3)", citation="deforms to L(3,1)"),
    AtlasEntry("(2,3,-,-)+(4,-,5,3)", "example", EXAMPLES, "(2,3,-,-)+(4,-,5,3)", citation="deforms to L(3,1)"),
    AtlasEntry("A3∨A3", "example", EXAMPLES, "(1,-,-,-)+(1,2,-,-)+(-,-,1,-)+(-,-,1,2)", citation="deforms to L(4,2)"),
    AtlasEntry(
        "A2∨A2∨A2", "example", EXAMPLES, "(2,3,-,-,-,-)+(-,-,2,3,-,-)+(-,-,-,-,2,3)",
        citation="three singular components",
    ),
    AtlasEntry("(6,7,8,9,10,11)", "example", EXAMPLES, "(6,7,8,9,10,11)", citation="multiplicity six"),
]

# alternative presentations that must share the signature of their entry
ALIASES: dict[str, tuple[str, str]] = {
    "T7 (second form)": ("(3,2,-)+(3,-,2)", "(2,3,-)+(-,3,2)"),
    "T7* (second form)": ("(2,3,-)+(3,-,2)", "(2,3,-)+(-,2,3)"),
    "D3": ("(1,-)+(1,2)", "A_k"),
}


def _table(label, alias, germ, equations=(), matrix=None, change=None, params=(), expected=None, naming=None):
    return AtlasEntry(
        label=label,
        kind="simple",
        group=TABLE,
        germ=germ,
        params=params,
        equations=equations,
        matrix=matrix,
        coordinate_change=change,
        alias=alias,
        expected=expected,
        naming=naming,
        citation=f"{TABLE}, row {alias}",
        table_row=True,
    )


def _milnor_delta(mu: int, r: int) -> dict[str, int]:
    # Milnor's formula mu = 2 delta - r + 1 for complete intersections
    return {"delta": (mu + r - 1) // 2, "r": r}


TABLE_ROWS: list[AtlasEntry] = [
    _table("Z10", "Z10", "(4,6,7)", ("y^2-x^3", "z^2-y*x^2"), expected=_milnor_delta(10, 1)),
    _table("Z9", "Z9", "(2,3,-)+(2,-,3)", ("y^2-x^3", "z^2-x^3"), change=("x", "y+z", "y-z"), expected=_milnor_delta(9, 2)),
    _table("W9", "W9", "(3,4,5)+(1,-,-)", ("y^2-x*z", "z^2-y*x^2"), expected=_milnor_delta(9, 2)),
    _table("W8*", "W8*", "(4,5,7)", matrix=(("x", "y", "z"), ("z", "x^2", "y^2"))),
    _table("W8", "W8", "(4,5,6)", ("y^2-x*z", "z^2-x^3"), expected=_milnor_delta(8, 1)),
    _table("U9", "U9", "(3,5,7)+(-,-,1)", ("y^2-x*z", "y*z-x^4"), expected=_milnor_delta(9, 2)),
    _table("U8", "U8", "(2,3,-)+(1,-,2)+(-,-,1)", ("z*y", "y^2-x^3+z*x"), expected=_milnor_delta(8, 3)),
    _table("U7*", "U7*", "(3,4,5)+(-,1,-)", matrix=(("x", "y", "z"), ("z", "x^2", "x*y"))),
    _table("U7", "U7", "(3,4,5)+(-,-,1)", ("y^2-x*z", "y*z-x^3"), expected=_milnor_delta(7, 2)),
    _table("T9", "T9", "(2,3,-)+(-,5,2)", ("x*z", "y^2-z^5-x^3"), expected=_milnor_delta(9, 2)),
    _table("T8", "T8", "(2,3,-)+(-,-,1)+(-,2,1)", ("x*z", "y^2-y*z^2-x^3"), expected=_milnor_delta(8, 3)),
    _table("T7*", "T7*", "(2,3,-)+(-,2,3)", matrix=(("x", "y", "z"), ("0", "z", "y^2-x^3"))),
    _table("T7", "T7", "(2,3,-)+(-,3,2)", ("x*z", "y^2-z^3-x^3"), expected=_milnor_delta(7, 2)),
    _table("E12(2)", "E12(2)", "(3,7,8)", matrix=(("x^2", "y", "z"), ("y", "z", "x^3"))),
    _table("J2,1(2)", "J2,1(2)", "(2,5,-)+(1,-,2)", matrix=(("z", "y", "x^3"), ("0", "x^2-z", "y"))),
    _table("J2,0(2)", "J2,0(2)", "(1,-,-)+(1,2,-)+(1,-,2)", matrix=(("z", "y-x^2", "0"), ("0", "x^2-z", "y"))),
    _table("E8(1)", "E8(1)", "(3,5,7)", matrix=(("x", "y", "z"), ("y", "z", "x^3"))),
    _table("E7(1)", "E7(1)", "(2,3,-)+(1,-,2)", matrix=(("z", "x", "y"), ("0", "y", "x^2-z"))),
    _table("E6(1)", "E6(1)", "(3,4,5)", matrix=(("x", "y", "z"), ("y", "z", "x^2"))),
    _table(
        "S_{2k+3}", "S_{2k+3}",
        lambda k: f"(1,-,-)+(1,{k},-)+(-,-,1)+(-,1,1)",
        ("x*z", "y^2-y*x^{k}-y*z"),
        params=(Param("k", 1),),
        expected=lambda k: _milnor_delta(2 * k + 3, 4),
        naming=lambda k: f"S{2 * k + 3}",
    ),
    _table(
        "S_{2k+4}", "S_{2k+4}",
        lambda k: f"(2,{2 * k + 1},-)+(-,-,1)+(-,1,1)",
        ("x*z", "y^2-x^{k1}-y*z"),
        params=(Param("k", 1),),
        expected=lambda k: _milnor_delta(2 * k + 4, 3),
        naming=lambda k: f"S{2 * k + 4}",
    ),
    _table("S6*", "S6*", "(2,3,-)+(-,-,1)+(1,-,1)", matrix=(("z", "x", "y"), ("0", "y", "x^2-x*z"))),
]


def entries(kind: str | None = None) -> list[AtlasEntry]:
    """All catalogue entries (table rows excluded), optionally of one kind."""
    return [e for e in _ENTRIES if kind is None or e.kind == kind]


def table_rows() -> list[AtlasEntry]:
    return list(TABLE_ROWS)


def get(label: str) -> AtlasEntry:
    pool = _ENTRIES + TABLE_ROWS
    for e in pool:
        if e.label == label:
            return e
    for e in pool:
        if e.alias == label:
            return e
    raise AtlasError(f"unknown label {label!r}")


def instantiate(label: str | AtlasEntry, lam=DEFAULT_LAMBDA, m: int = 0, **params) -> MultiGerm:
    """Concrete germ for an entry; ``m`` wedges ``m`` extra lines on fresh axes."""
    entry = get(label) if isinstance(label, str) else entry_or_raise(label)
    vals = entry.check_params(params)
    lam = Fraction(lam)
    if entry.uses_lambda and lam in (0, 1):
        raise AtlasError(f"{entry.label}: lambda must avoid 0 and 1")
    g = parse_germ(entry.text(lam=lam, **vals))
    if m:
        if not entry.wedgeable:
            raise AtlasError(f"{entry.label} is not part of a wedge series")
        g = wedge(g, lines(m))
    return g


def entry_or_raise(e) -> AtlasEntry:
    if not isinstance(e, AtlasEntry):
        raise AtlasError(f"not an atlas entry: {e!r}")
    return e


# ---------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    label: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        head = f"{self.label} {self.params or ''}".rstrip()
        lines_ = [f"{head}: {'ok' if self.ok else 'FAILED'}"]
        lines_ += [f"  {'ok  ' if c.ok else 'FAIL'} {c.name} {c.detail}".rstrip() for c in self.checks]
        return "\n".join(lines_)


def _fill(template: str, lam: Fraction, params: Mapping[str, int]) -> str:
    values = dict(params)
    values["lam"] = f"({_frac_text(lam)})"
    if "k" in values:
        values["k1"] = 2 * values["k"] + 1
    return template.format(**values)


def _substituted(text: str, variables, change) -> MPoly:
    p = MPoly.parse(text, variables)
    if change is None:
        return p
    images = [MPoly.parse(c, variables) for c in change]
    return p.evaluate(images, one=MPoly.const(variables, 1))


def entry_equations(entry: AtlasEntry, lam=DEFAULT_LAMBDA, literal: bool = False, **params):
    """Equations (matrix minors expanded) as ``(name, MPoly)`` pairs."""
    n = parse_germ(entry.text(lam=Fraction(lam), **params)).n
    variables = VARS[:n]
    change = None if literal else entry.coordinate_change
    out = []
    for text in entry.equations:
        filled = _fill(text, Fraction(lam), params)
        out.append((filled, _substituted(filled, variables, change)))
    if entry.matrix is not None:
        rows = [[_substituted(_fill(c, Fraction(lam), params), variables, change) for c in row] for row in entry.matrix]
        for i, j in combinations(range(3), 2):
            minor = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
            out.append((f"minor[{i + 1},{j + 1}]", minor))
    return out


def vanishes_on(equations, g: MultiGerm) -> list[tuple[str, int, bool]]:
    """``(equation, branch, certified zero)`` for every pair."""
    results = []
    for name, p in equations:
        for i, b in enumerate(g.branches):
            comps = [Poly(c.coeffs, "t") for c in b.components]
            results.append((name, i, certified_zero(p, comps)))
    return results


def _matrix_rank_ok(entry: AtlasEntry, g: MultiGerm, lam, params) -> list[Check]:
    """Rank of the matrix over Q(t) on each branch, evaluated at t = 2, 3, 5."""
    checks = []
    variables = VARS[: g.n]
    rows = [[_substituted(_fill(c, Fraction(lam), params), variables, entry.coordinate_change) for c in row] for row in entry.matrix]
    for i, b in enumerate(g.branches):
        ranks = []
        for t0 in (2, 3, 5):
            point = [c(Fraction(t0)) for c in b.components]
            numeric = [[e.evaluate(point) for e in row] for row in rows]
            ranks.append(linalg.rank(numeric))
        checks.append(Check(f"rank<=1 on branch {i}", max(ranks) <= 1, f"ranks at sample points {ranks}"))
    return checks


def verify_entry(entry: AtlasEntry | str, lam=DEFAULT_LAMBDA, literal: bool = False, **params) -> VerificationReport:
    """Check equations and invariants of one entry at the given parameters."""
    if isinstance(entry, str):
        entry = get(entry)
    vals = entry.check_params(params)
    report = VerificationReport(entry.instance_label(**vals), vals)
    g = instantiate(entry, lam=lam, **vals)
    if entry.coordinate_change and not literal:
        report.checks.append(
            Check("coordinate change", True, "(x,y,z) -> (" + ",".join(entry.coordinate_change) + ")")
        )
    eqs = entry_equations(entry, lam=lam, literal=literal, **vals)
    for name, i, ok in vanishes_on(eqs, g):
        report.checks.append(Check(f"{name} on branch {i}", ok, "" if ok else "does not vanish"))
    if entry.matrix is not None:
        report.checks.extend(_matrix_rank_ok(entry, g, lam, vals))
    expected = entry.expected_invariants(**vals)
    if expected:
        sig = signature(g)
        for key, want in expected.items():
            got = getattr(sig, key)
            report.checks.append(Check(f"{key}", got == want, f"expected {want}, computed {got}"))
    return report


def verify_table(k_values: Iterable[int] = (1, 2, 3, 4)) -> list[VerificationReport]:
    out = []
    for row in TABLE_ROWS:
        if row.params:
            out.extend(verify_entry(row, k=k) for k in k_values)
        else:
            out.append(verify_entry(row))
    return out


# ---------------------------------------------------------------------------
# confining set


def confining_set(n: int, plane: bool = False) -> list[Instance]:
    """Confining curves ``L(n+2, n)``; with ``plane`` also the plane ones."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    if n == 1:
        e = get("L(3,1)")
        out.append(Instance(e, (), instantiate(e)))
    elif n == 2:
        e = get("L(4,2)")
        out.append(Instance(e, (), instantiate(e)))
    else:
        e = get("L(n+2,n)")
        out.append(Instance(e, (("n", n),), instantiate(e, n=n)))
    if plane:
        for label in ("E7~", "E8~"):
            e = get(label)
            out.append(Instance(e, (), instantiate(e)))
    return out


# ---------------------------------------------------------------------------
# catalogue of concrete instances


def _param_grid(entry: AtlasEntry, kmax: int, nmax: int) -> list[dict[str, int]]:
    grid: list[dict[str, int]] = [{}]
    for p in entry.params:
        top = kmax if p.name in ("k", "j") else nmax
        if p.high is not None:
            top = min(top, p.high)
        grid = [dict(g, **{p.name: v}) for g in grid for v in range(p.low, top + 1)]
    return grid


def catalog(kmax: int = 6, nmax: int = 4, mmax: int = 2, kinds=("simple", "confining")) -> list[Instance]:
    """Concrete instances of the entries for bounded parameters.

    Series entries are also wedged with up to ``mmax`` lines.  ``A1`` is
    not wedged since ``A1 ∨ L_m`` is the entry ``L_{m+2}``.
    """
    out: list[Instance] = []
    for entry in _ENTRIES:
        if entry.kind not in kinds:
            continue
        for params in _param_grid(entry, kmax, nmax):
            if entry.label == "L_n" and params["n"] > max(nmax, 3) + mmax:
                continue
            g = instantiate(entry, **params)
            out.append(Instance(entry, tuple(sorted(params.items())), g))
            if not entry.wedgeable:
                continue
            if entry.label == "A_k" and params["k"] <= 1:
                continue
            for m in range(1, mmax + 1):
                gm = wedge(g, lines(m))
                out.append(Instance(entry, tuple(sorted(dict(params, m=m).items())), gm))
    return out


@lru_cache(maxsize=16)
def signature_index(kmax: int = 6, nmax: int = 4, mmax: int = 2, kinds=("simple", "confining")) -> dict[Signature, list[Instance]]:
    index: dict[Signature, list[Instance]] = {}
    for inst in catalog(kmax, nmax, mmax, kinds):
        index.setdefault(signature(inst.germ), []).append(inst)
    return index


def ambiguity_report(kmax: int = 6, nmax: int = 4, mmax: int = 2) -> list[tuple[str, ...]]:
    """Groups of distinct simple labels whose signatures coincide."""
    groups = []
    for insts in signature_index(kmax, nmax, mmax).values():
        labels = sorted({i.label for i in insts if i.kind == "simple"})
        if len(labels) > 1:
            groups.append(tuple(labels))
    return sorted(groups)


def mixed_collisions(kmax: int = 6, nmax: int = 4, mmax: int = 2) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Simple labels sharing a signature with a non-simple entry: ``(simple, other)``."""
    out = []
    for insts in signature_index(kmax, nmax, mmax, ("simple", "confining", "example")).values():
        simple = tuple(sorted({i.label for i in insts if i.kind == "simple"}))
        other = tuple(sorted({i.label for i in insts if i.kind != "simple"}))
        if simple and other:
            out.append((simple, other))
    return sorted(out)


def render_ambiguity_report(kmax: int = 6, nmax: int = 4, mmax: int = 2) -> str:
    head = f"# signature collisions among simple entries (k<={kmax}, n<={nmax}, wedge lines<={mmax})"
    lines_ = [head] + [" | ".join(g) for g in ambiguity_report(kmax, nmax, mmax)]
    lines_.append("# simple entries sharing a signature with non-simple entries (simple || non-simple)")
    lines_ += [" | ".join(a) + " || " + " | ".join(b) for a, b in mixed_collisions(kmax, nmax, mmax)]
    return "\n".join(lines_) + "\n"


def ambiguous_labels(report: str | None = None) -> set[str]:
    """Every label named in an ambiguity report."""
    text = shipped_ambiguity_report() if report is None else report
    out: set[str] = set()
    for line in text.splitlines():
        if line.startswith("#") or not line.strip():
            continue
        for part in line.replace("||", "|").split("|"):
            out.add(part.strip())
    return out


@lru_cache(maxsize=1)
def _label_table(kmax: int = 12, nmax: int = 6, mmax: int = 3) -> dict[str, Instance]:
    out: dict[str, Instance] = {}
    for inst in catalog(kmax, nmax, mmax, kinds=("simple", "confining", "example")):
        out.setdefault(inst.label, inst)
    for e in TABLE_ROWS:
        if not e.params and e.label not in out:
            out[e.label] = Instance(e, (), instantiate(e))
    return out


def find_instance(label: str) -> Instance:
    """Instance whose rendered label is ``label`` (``"A3"``, ``"D5"``, ``"(4,5,6)"``...)."""
    table = _label_table()
    if label in table:
        return table[label]
    entry = get(label)
    if entry.params:
        raise AtlasError(f"{label} needs parameters")
    return Instance(entry, (), instantiate(entry))


def shipped_ambiguity_report() -> str:
    from importlib.resources import files

    return files("simplecurves").joinpath("data/ambiguity_report.txt").read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# adjacency graph

KINDS = ("both", "param", "curve")


@dataclass(frozen=True)
class AdjacencyEdge:
    source: str
    target: str
    kind: str
    citation: str
    note: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown arrow kind {self.kind!r}")


def _edges(group: str, rows: list[tuple]) -> list[AdjacencyEdge]:
    return [AdjacencyEdge(s, t, k, f"{group} diagram", *note) for s, t, k, *note in rows]


A2K = "A_{2k}∨L_{n-2}+(-,1,…,1)"
A2K1 = "A_{2k-1}∨L_{n-2}+(-,1,…,1)"

EDGES: list[AdjacencyEdge] = (
    _edges(IRR, [
        ("(5,6,7,8)", "(5,6,7,8,9)", "param"),
        ("(5,6,7,8,9)", "(4,5,7)", "both"),
        ("(5,6,7,8)", "(4,6,7,9)", "param"),
        ("(4,5,6)", "(4,5,6,7)", "param"),
        ("(4,5,7)", "(4,5,6)", "both"),
        ("(4,6,7,9)", "(4,5,7)", "both"),
        ("(4,6,7)", "(4,6,7,9)", "param"),
        ("(4,6,7,9)", "(3,7,8)", "both"),
    ])
    + _edges(MULT4, [
        ("(4,5,7)∨L", "(4,5,6,7)+(-,-,1,-)", "both"),
        ("(4,5,6,7)+(-,-,1,-)", "(4,5,6,7)+(-,-,-,1)", "both"),
        ("(4,5,7)∨L", "(4,5,6)∨L", "both"),
        ("(4,5,6,7)+(-,-,-,1)", "(4,5,6,7)∨L", "param"),
        ("(4,5,6)∨L", "(4,5,6,7)+(-,-,-,1)", "both"),
    ])
    + _edges(A2M3, [
        ("(2,3,-,-)+(-,4,5,3)", "(2,3,-,-)+(-,5,4,3)", "both", "printed with the same source and target"),
        ("(2,3,-,-)+(-,5,4,3)", "A2∨M3", "param"),
    ])
    + _edges(CUSPS_LINE, [
        ("(2,3,-,-)+(3,-,2,-)+(-,-,-,1)", "(2,3,-,-)+(-,3,2,-)+(-,-,-,1)", "both"),
        ("(2,3,-,-)+(-,3,2,-)+(-,-,-,1)", "(2,3,-,-)+(-,-,3,2)+(-,1,1,-)", "both"),
        ("(2,3,-,-)+(3,-,2,-)+(-,-,-,1)", "(2,3,-,-)+(-,-,3,2)+(1,-,1,-)", "both"),
        ("(2,3,-,-)+(-,-,3,2)+(-,1,1,-)", "A2∨A2∨L", "param"),
        ("(2,3,-,-)+(-,-,3,2)+(1,-,1,-)", "(2,3,-,-)+(-,-,3,2)+(-,1,1,-)", "both"),
    ])
    + _edges(TWO_A, [
        ("(2,3,-)+(-,5,2)", "A2∨A4", "param"),
        ("A2∨A4", "A2∨A3", "both"),
        ("(2,3,-)+(-,5,2)", "(2,3,-)+(-,-,1)+(-,2,1)", "both"),
        ("(2,3,-)+(2,-,3)", "(2,3,-,-)+(2,-,3,4)", "param"),
        ("(2,3,-)+(-,-,1)+(-,2,1)", "A2∨A3", "param"),
        ("A2∨A3", "A2∨A2", "curve"),
        ("(2,3,-)+(-,-,1)+(-,2,1)", "(2,3,-)+(-,3,2)", "curve"),
        ("(2,3,-,-)+(2,-,3,4)", "(2,3,-)+(-,2,3)", "both"),
        ("(2,3,-)+(-,3,2)", "A2∨A2", "param"),
        ("(2,3,-)+(-,2,3)", "(2,3,-)+(-,3,2)", "both"),
    ])
    + _edges(OTHER, [
        ("(3,4,5)+(1,-,-)", "(3,4,5,-)+(1,-,-,2)", "param"),
        ("(3,4,5,-)+(1,-,-,2)", "(1,-,-)+(1,2,-)+(1,-,2)", "both"),
        ("(3,4,5)+(1,-,-)", "(2,5,-)+(1,-,2)", "param"),
        ("(2,5,-)+(1,-,2)", "(1,-,-)+(1,2,-)+(1,-,2)", "both"),
    ])
    + _edges(TYPE_E, [
        ("E6", "(3,4,5)", "param"),
        ("(3,5,7)", "E6", "both"),
        ("E8", "(3,5,7)", "param"),
        ("(3,5,7)", "(2,3,-)+(1,-,2)", "both"),
        ("E8", "E7", "both"),
        ("E7", "(2,3,-)+(1,-,2)", "param"),
    ])
    + _edges(E_SERIES, [
        ("(3,5,7)∨L_{n-3}+(-,-,1,…,1)", "(3,4,5)∨L_{n-3}+(-,1,-,1,…,1)", "param"),
        ("(3,4,5)∨L_{n-3}+(-,1,-,1,…,1)", "(3,4,5)∨L_{n-3}+(-,-,1,…,1)", "both"),
        ("A2∨L_{n-2}+(1,-,2,…,2)", "A2∨L_{n-2}+(1,-,1,…,1)", "param"),
    ])
    + _edges(TYPE_A, [("A_{2k}", "A_{2k-1}", "both")])
    + _edges(D_SERIES, [(A2K, A2K1, "both", "printed arrow points the other way")])
)


def adjacency_graph() -> list[AdjacencyEdge]:
    return list(EDGES)


def edges_from(label: str) -> list[AdjacencyEdge]:
    return [e for e in EDGES if e.source == label]


def edges_to(label: str) -> list[AdjacencyEdge]:
    return [e for e in EDGES if e.target == label]


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def adjacency_dot(edges: Iterable[AdjacencyEdge] | None = None) -> str:
    """DOT digraph with quoted labels and a ``kind`` attribute per edge."""
    edges = list(EDGES if edges is None else edges)
    nodes = []
    for e in edges:
        for n in (e.source, e.target):
            if n not in nodes:
                nodes.append(n)
    out = ["digraph adjacency {"]
    out += [f"  {_dot_quote(n)};" for n in nodes]
    out += [f"  {_dot_quote(e.source)} -> {_dot_quote(e.target)} [kind=\"{e.kind}\"];" for e in edges]
    out.append("}")
    return "\n".join(out) + "\n"


def atlas_records() -> list[dict[str, str]]:
    """One structured record per entry and table row."""
    recs = []
    for e in _ENTRIES + TABLE_ROWS:
        params = ",".join(f"{p.name}>={p.low}" for p in e.params)
        try:
            sample = {p.name: p.low for p in e.params}
            text = e.text(**sample)
        except Exception:  # pragma: no cover - defensive
            text = "?"
        eqs = list(e.equations)
        if e.matrix is not None:
            eqs.append("rank[" + ";".join(",".join(r) for r in e.matrix) + "]<=1")
        recs.append(
            {
                "label": e.label,
                "kind": e.kind,
                "params": params or "-",
                "parametrisation": text,
                "equations": " ; ".join(eqs) or "-",
                "alias": e.alias or "-",
                "citation": e.citation,
            }
        )
    return recs
