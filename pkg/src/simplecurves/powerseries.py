"""Exact polynomial and truncated power-series arithmetic.

Everything here works over the rationals (:class:`fractions.Fraction`) or over
``Q[s]``, the ring of polynomials in a single deformation parameter, which is
represented by :class:`Poly`.  Series keep their truncation order explicitly;
nothing is ever silently widened.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import reduce
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union


class SeriesError(ValueError):
    """Raised on inconsistent series operands or uncertifiable results."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Poly:
    """Dense univariate polynomial with rational coefficients.

    Used both as a coefficient in ``Q[s]`` and for polynomial parametrisations
    in the local parameter ``t``.  Trailing zero coefficients are stripped, so
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "s"):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coeff=1, var: str = "s") -> "Poly":
        return cls([0] * exponent + [coeff], var)

    @classmethod
    def gen(cls, var: str = "s") -> "Poly":
        return cls([0, 1], var)

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, ``None`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, (Poly, TruncatedSeries)) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Rational)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(
            (a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=Fraction(0))),
            self.var,
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        c = _frac(other)
        return Poly((a / c for a in self.coeffs), self.var)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash(self.coeffs)

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over Q."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(divisor.coeffs)
        if dq < 0:
            return Poly((), self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = divisor.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(divisor.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, d in enumerate(divisor.coeffs):
                    rem[i + j] -= c * d
        return Poly(quot, self.var), Poly(rem, self.var)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a / a.coeffs[-1]

    def shift(self, t0) -> "Poly":
        """Return ``p(t0 + u)`` as a polynomial in ``u``."""
        t0 = _frac(t0)
        out = Poly((), self.var)
        lin = Poly([t0, 1], self.var)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def derivative(self) -> "Poly":
        return Poly((i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def map_coeffs(self, f) -> "Poly":
        return Poly((f(c) for c in self.coeffs), self.var)

    def rational_roots(self) -> list[tuple[Fraction, int]]:
        """Rational roots with multiplicities (rational root theorem)."""
        if self.is_zero():
            raise ValueError("zero polynomial has every number as a root")
        p = self
        roots: list[tuple[Fraction, int]] = []
        o = p.order() or 0
        if o:
            roots.append((Fraction(0), o))
            p = Poly(p.coeffs[o:], p.var)
        if p.degree <= 0:
            return roots
        den = reduce(lambda a, b: a * b // _gcd(a, b), (c.denominator for c in p.coeffs), 1)
        ints = [int(c * den) for c in p.coeffs]
        cands = set()
        for a in _divisors(abs(ints[0])):
            for b in _divisors(abs(ints[-1])):
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
        for r in sorted(cands):
            mult = 0
            lin = Poly([-r, 1], p.var)
            while p.degree > 0:
                q, rem = p.divmod(lin)
                if not rem.is_zero():
                    break
                p, mult = q, mult + 1
            if mult:
                roots.append((r, mult))
        return roots

    def __repr__(self) -> str:
        return f"Poly({self.format()!r})"

    def format(self, var: str | None = None) -> str:
        return _format_univariate(self.coeffs, var or self.var)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return out


def _format_univariate(coeffs: Sequence[Fraction], var: str) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(_term(c, mono))
    return _join_terms(parts)


def _term(c: Fraction, mono: str) -> str:
    if not mono:
        return _fmt_rational(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_fmt_rational(c)}*{mono}"


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


Coefficient = Union[Fraction, Poly]


def coeff_is_zero(c) -> bool:
    return not c


class TruncatedSeries:
    """A power series in one variable known modulo ``var^(N+1)``.

    ``coeffs[i]`` is the coefficient of ``var^i`` for ``0 <= i <= N``.
    Coefficients are exact rationals or :class:`Poly` elements of ``Q[s]``.
    """

    __slots__ = ("coeffs", "N", "var")

    def __init__(self, coeffs: Sequence, N: int, var: str = "t"):
        if N < 0:
            raise SeriesError("truncation order must be non-negative")
        cs = [c if isinstance(c, Poly) else _frac(c) for c in list(coeffs)[: N + 1]]
        cs.extend([Fraction(0)] * (N + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.N = N
        self.var = var

    @classmethod
    def from_poly(cls, p: Poly, N: int, var: str = "t") -> "TruncatedSeries":
        return cls(p.coeffs, N, var)

    @classmethod
    def monomial(cls, exponent: int, N: int, coeff=1, var: str = "t") -> "TruncatedSeries":
        cs = [0] * (N + 1)
        if exponent <= N:
            cs[exponent] = coeff
        return cls(cs, N, var)

    @classmethod
    def zero(cls, N: int, var: str = "t") -> "TruncatedSeries":
        return cls((), N, var)

    def _check(self, other: "TruncatedSeries") -> None:
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")

    def order(self) -> int | None:
        """Valuation, or ``None`` when the series is zero modulo the truncation.

        ``None`` must be read as "order >= N+1": the value is unknown.
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __getitem__(self, i: int):
        if i > self.N:
            raise SeriesError(f"coefficient {i} beyond truncation {self.N}")
        return self.coeffs[i]

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.N:
            raise SeriesError("cannot widen a truncation")
        return TruncatedSeries(self.coeffs[: N + 1], N, self.var)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_add(self, other)
        if isinstance(other, (int, Rational, Poly)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncatedSeries(cs, self.N, self.var)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.N, self.var)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_add(self, -other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_mul(self, other)
        if isinstance(other, (int, Rational, Poly)):
            return TruncatedSeries([c * other for c in self.coeffs], self.N, self.var)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncatedSeries.monomial(0, self.N, var=self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.N, self.var, self.coeffs) == (other.N, other.var, other.coeffs)

    def __hash__(self):
        return hash((self.N, self.var, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.format()} + O({self.var}^{self.N + 1}))"

    def format(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if isinstance(c, Poly):
                cs = c.format()
                if len(c.coeffs) > 1 or c.order():
                    cs = f"({cs})"
                parts.append(cs if not mono else f"{cs}*{mono}")
            else:
                parts.append(_term(c, mono))
        return _join_terms(parts)

    def poly_coeffs(self) -> list[Poly]:
        """Coefficients promoted to ``Q[s]``."""
        return [c if isinstance(c, Poly) else Poly([c]) for c in self.coeffs]


def ps_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum, valid up to the smaller truncation."""
    a._check(b)
    N = min(a.N, b.N)
    return TruncatedSeries([a.coeffs[i] + b.coeffs[i] for i in range(N + 1)], N, a.var)


def ps_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, valid up to the smaller truncation."""
    a._check(b)
    N = min(a.N, b.N)
    out: list = [Fraction(0)] * (N + 1)
    ac, bc = a.coeffs, b.coeffs
    for i in range(N + 1):
        ai = ac[i]
        if not ai:
            continue
        for j in range(N + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return TruncatedSeries(out, N, a.var)


class MPoly:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        self.terms = {}
        for e, c in (terms or {}).items():
            c = _frac(c)
            if c:
                if len(e) != len(self.vars):
                    raise ValueError("exponent length does not match variables")
                self.terms[tuple(e)] = c

    @classmethod
    def const(cls, vars, c) -> "MPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars, name: str) -> "MPoly":
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "MPoly":
        """Parse ``text`` such as ``"y^2 - x*z + 1/2*x^3"``.

        Only ``+ - * / ^ **`` with constant divisors, integer literals, and the
        given variable names are accepted.
        """
        src = text.replace("^", "**").strip()
        if not src:
            raise SyntaxError("empty polynomial")
        tree = ast.parse(src, mode="eval")
        return _eval_ast(tree.body, tuple(vars))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def _same(self, other: "MPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(self.vars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def evaluate(self, values: Mapping[str, object] | Sequence, one=None):
        """Substitute ring elements for the variables.

        ``values`` is a mapping or a sequence aligned with ``vars``.  The
        values only need ``+``, ``*`` and integer powers.  ``one`` is the
        multiplicative unit of the target ring (defaults to ``1``).
        """
        if isinstance(values, Mapping):
            vals = [values[v] for v in self.vars]
        else:
            vals = list(values)
        if len(vals) != len(self.vars):
            raise ValueError("wrong number of values")
        powers: list[dict[int, object]] = [{} for _ in vals]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = vals[i] ** k
            return cache[k]

        acc = None
        for e, c in sorted(self.terms.items()):
            term = None
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) if term is None else term * pw(i, k)
            if term is None:
                term = c if one is None else one * c
            else:
                term = term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return 0 if one is None else one * 0
        return acc

    def substitute(self, name: str, value) -> "MPoly":
        """Substitute a rational number for one variable."""
        i = self.vars.index(name)
        value = _frac(value)
        out: dict = {}
        for e, c in self.terms.items():
            e2 = e[:i] + (0,) + e[i + 1 :]
            out[e2] = out.get(e2, 0) + c * value ** e[i]
        return MPoly(self.vars, out)

    def to_poly(self, name: str) -> Poly:
        """Convert to a univariate :class:`Poly` in ``name``."""
        i = self.vars.index(name)
        deg = self.degree_in(name)
        cs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial is not univariate in {name}")
            cs[e[i]] += c
        return Poly(cs, name)

    def to_series(self, tvar: str, N: int, svar: str | None = None) -> TruncatedSeries:
        """Series in ``tvar`` with coefficients in ``Q[svar]`` (or Q)."""
        ti = self.vars.index(tvar)
        si = self.vars.index(svar) if svar else None
        cs: list = [Fraction(0)] * (N + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j not in (ti, si)):
                raise ValueError("unexpected variable in series conversion")
            if e[ti] > N:
                continue
            if si is None:
                cs[e[ti]] += c
            else:
                cs[e[ti]] = cs[e[ti]] + Poly.monomial(e[si], c, svar)
        return TruncatedSeries(cs, N, tvar)

    def format(self) -> str:
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            parts.append(_term(c, mono))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.format()!r}, vars={self.vars})"


def _eval_ast(node, vars: tuple[str, ...]) -> MPoly:
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, vars)
        if isinstance(node.op, ast.Pow):
            exp = _eval_ast(node.right, vars)
            if exp.total_degree() != 0:
                raise SyntaxError("exponent must be a constant")
            k = exp.terms.get((0,) * len(vars), Fraction(0))
            if k.denominator != 1 or k < 0:
                raise SyntaxError("exponent must be a non-negative integer")
            return left ** int(k)
        right = _eval_ast(node.right, vars)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.total_degree() != 0 or right.is_zero():
                raise SyntaxError("division only by nonzero constants")
            return left * (1 / right.terms[(0,) * len(vars)])
        raise SyntaxError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.UnaryOp):
        inner = _eval_ast(node.operand, vars)
        if isinstance(node.op, ast.USub):
            return -inner
        if isinstance(node.op, ast.UAdd):
            return inner
        raise SyntaxError("unsupported unary operator")
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MPoly.const(vars, node.value)
    if isinstance(node, ast.Name):
        if node.id not in vars:
            raise SyntaxError(f"unknown variable {node.id!r}")
        return MPoly.var(vars, node.id)
    raise SyntaxError(f"unsupported expression {ast.dump(node)}")


def ps_substitute(p: MPoly, v: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Evaluate ``p(v_1, ..., v_n)`` by exact series arithmetic."""
    if len(v) != len(p.vars):
        raise SeriesError("number of series does not match number of variables")
    if not v:
        raise SeriesError("nothing to substitute")
    var, N = v[0].var, v[0].N
    for s in v:
        if s.var != var or s.N != N:
            raise SeriesError("substituted series must share variable and truncation")
    one = TruncatedSeries.monomial(0, N, var=var)
    out = p.evaluate(v, one=one)
    return out


def certified_zero(p: MPoly, components: Sequence[Poly]) -> bool:
    """True iff ``p`` vanishes identically on the polynomial curve ``components``.

    The truncation is chosen as ``deg(p) * max(deg component)``, an a-priori
    bound on the degree of the substituted polynomial, so an all-zero jet is
    an exact statement.
    """
    D = max((c.degree for c in components), default=0)
    N = max(p.total_degree() * max(D, 0), 0)
    series = [TruncatedSeries.from_poly(c, N) for c in components]
    return ps_substitute_checked(p, series, N).is_zero()


def ps_substitute_checked(p: MPoly, v: Sequence[TruncatedSeries], bound: int) -> TruncatedSeries:
    """:func:`ps_substitute`, refusing truncations below the degree bound."""
    if any(s.N < bound for s in v):
        raise SeriesError(f"truncation below the certification bound {bound}")
    return ps_substitute(p, v)


def _as_tpoly(a: TruncatedSeries) -> list[Poly]:
    cs = a.poly_coeffs()
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def ps_reduce_mod(a: TruncatedSeries, g: TruncatedSeries, k: int) -> TruncatedSeries:
    """Remainder of the polynomial ``a`` on division by ``g**k`` in ``Q[s][t]``.

    ``g`` must be monic in ``t``; ``a`` is read as the polynomial given by its
    stored coefficients.
    """
    if k < 1:
        raise SeriesError("k must be positive")
    a._check(g)
    gp = _as_tpoly(g)
    if len(gp) < 2:
        raise SeriesError("modulus must have positive degree in t")
    if gp[-1] != Poly([1]):
        raise SeriesError("modulus is not monic in t")
    mod = [Poly([1])]
    for _ in range(k):
        out = [Poly(()) for _ in range(len(mod) + len(gp) - 1)]
        for i, x in enumerate(mod):
            for j, y in enumerate(gp):
                out[i + j] = out[i + j] + x * y
        mod = out
    rem = _as_tpoly(a)
    dm = len(mod) - 1
    for i in range(len(rem) - 1, dm - 1, -1):
        c = rem[i]
        if c.is_zero():
            continue
        for j, m in enumerate(mod):
            rem[i - dm + j] = rem[i - dm + j] - c * m
    rem = rem[:dm]
    plain = all(c.degree <= 0 for c in rem)
    coeffs = [c[0] if plain else c for c in rem]
    return TruncatedSeries(coeffs, max(len(coeffs) - 1, 0) if coeffs else 0, a.var)
