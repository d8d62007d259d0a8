"""Exact differential-polynomial algebra over the rationals.

A :class:`DiffPoly` is a polynomial with :class:`~fractions.Fraction`
coefficients in finitely many *variables* ``(symbol, k)``, where ``k`` is the
order of the x-derivative.  Field symbols (``V``, ``f``, ``g``, ``h``, ``K``)
carry derivatives; constant symbols (``C1``, ``Cstar``, ``kappa``) behave like
scalars and are annihilated by both ``dx`` and ``dt``.

Text format::

    -1/4*V_xxx + 3/2*V*V_x
    3/8*V^2 - 1/8*V_xx
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping

from .errors import MissingFlowAssignment, NotExactDerivative

__all__ = [
    "Symbol",
    "DiffPoly",
    "ZDiffPoly",
    "FlowRule",
    "field",
    "const",
    "parse",
    "dx",
    "dt",
    "integrate_x",
    "euler",
    "zadd",
    "zmul",
    "zdx",
    "zdt",
    "zcoeff",
    "DEFAULT_CONSTANT_PATTERN",
]

# Names treated as constants by ``parse`` when the caller does not say otherwise.
DEFAULT_CONSTANT_PATTERN = re.compile(r"^(C\d+|Cstar\d*|kappa|κ)$")


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    constant: bool = False

    def __post_init__(self):
        if not self.name or "_" in self.name or not self.name[0].isalpha():
            raise ValueError(f"invalid symbol name {self.name!r}")

    def sort_key(self):
        return (not self.constant, self.name)

    def __str__(self):
        return self.name


# A variable is (symbol, derivative order); a monomial is a sorted tuple of
# (variable, exponent) pairs.  Both are plain tuples for speed.


def _var_key(var):
    sym, k = var
    return (not sym.constant, sym.name, k)


def _mono(items: Mapping) -> tuple:
    return tuple(sorted(((v, e) for v, e in items.items() if e), key=lambda it: _var_key(it[0])))


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return _mono(acc)


def _var_str(var) -> str:
    sym, k = var
    return sym.name if k == 0 else f"{sym.name}_{'x' * k}"


def _mono_str(mono: tuple) -> str:
    return "*".join(_var_str(v) if e == 1 else f"{_var_str(v)}^{e}" for v, e in mono)


def _term_key(mono: tuple):
    orders = [v[1] for v, _ in mono if not v[0].constant]
    top = max(orders) if orders else -1
    degree = sum(e for v, e in mono if not v[0].constant)
    return (-top, -degree, [(_var_key(v), -e) for v, e in mono])


def _coerce_scalar(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


class DiffPoly:
    """Immutable differential polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = _coerce_scalar(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "DiffPoly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # construction ---------------------------------------------------------
    @classmethod
    def constant(cls, value) -> "DiffPoly":
        value = _coerce_scalar(value)
        return cls._raw({(): value} if value else {})

    @classmethod
    def var(cls, symbol: Symbol, order: int = 0) -> "DiffPoly":
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if symbol.constant and order:
            return cls._raw({})
        return cls._raw({(((symbol, order), 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "DiffPoly":
        if isinstance(value, DiffPoly):
            return value
        if isinstance(value, Symbol):
            return cls.var(value)
        return cls.constant(value)

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def symbols(self) -> set:
        return {v[0] for mono in self._terms for v, _ in mono}

    def field_symbols(self) -> set:
        return {s for s in self.symbols() if not s.constant}

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def order(self, symbol: Symbol | None = None) -> int:
        """Highest derivative order present (-1 if none)."""
        orders = [k for (s, k) in self.variables() if not s.constant and (symbol is None or s == symbol)]
        return max(orders, default=-1)

    def constant_part(self) -> "DiffPoly":
        """Terms free of field symbols (numbers and constant symbols)."""
        return DiffPoly._raw({m: c for m, c in self._terms.items() if all(v[0].constant for v, _ in m)})

    def coefficient_of(self, value) -> Fraction:
        """Rational coefficient of the monomial ``value`` (a DiffPoly with one term)."""
        p = DiffPoly.coerce(value)
        if len(p) != 1:
            raise ValueError("expected a single monomial")
        (mono, c), = p.items()
        return self._terms.get(mono, Fraction(0)) / c

    def as_rational(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {()}:
            return self._terms[()]
        raise ValueError(f"{self} is not a rational constant")

    # arithmetic -----------------------------------------------------------
    def __eq__(self, other):
        try:
            other = DiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        try:
            other = DiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = DiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return DiffPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, ZDiffPoly):
            return NotImplemented
        try:
            other = DiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DiffPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        if not c:
            raise ZeroDivisionError("division of a DiffPoly by zero")
        return DiffPoly._raw({m: v / c for m, v in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = DiffPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # calculus -------------------------------------------------------------
    def dx(self) -> "DiffPoly":
        """Total x-derivative (Leibniz rule, ``(s, k) -> (s, k+1)``)."""
        out: dict = {}
        for mono, c in self._terms.items():
            for i, ((sym, k), e) in enumerate(mono):
                if sym.constant:
                    continue
                rest = dict(mono)
                if e == 1:
                    del rest[(sym, k)]
                else:
                    rest[(sym, k)] = e - 1
                rest[(sym, k + 1)] = rest.get((sym, k + 1), 0) + 1
                m = _mono(rest)
                s = out.get(m, 0) + c * e
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DiffPoly._raw(out)

    def dxn(self, n: int) -> "DiffPoly":
        p = self
        for _ in range(n):
            p = p.dx()
        return p

    def partial(self, var) -> "DiffPoly":
        """Partial derivative with respect to the variable ``(symbol, k)``."""
        out: dict = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            e = d.get(var)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            m = _mono(d)
            out[m] = out.get(m, 0) + c * e
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    def dt(self, flow: "FlowRule") -> "DiffPoly":
        """Time derivative induced by ``flow`` (``dt s^(k) = dx^k flow[s]``)."""
        cache: dict = {}
        total = DiffPoly()
        for var in self.variables():
            sym, k = var
            if sym.constant:
                continue
            key = (sym, k)
            if key not in cache:
                cache[key] = flow.rhs(sym).dxn(k)
            total = total + self.partial(var) * cache[key]
        return total

    def subs(self, mapping: Mapping) -> "DiffPoly":
        """Substitute symbols by DiffPolys; ``(s, k)`` becomes ``dx^k`` of the image."""
        repl = {}
        for key, value in mapping.items():
            sym = key if isinstance(key, Symbol) else _lookup_symbol(self, key)
            if sym is not None:
                repl[sym] = DiffPoly.coerce(value)
        if not repl:
            return self
        cache: dict = {}

        def image(var):
            if var not in cache:
                sym, k = var
                cache[var] = repl[sym].dxn(k) if sym in repl else DiffPoly.var(sym, k)
            return cache[var]

        total = DiffPoly()
        for mono, c in self._terms.items():
            term = DiffPoly.constant(c)
            for var, e in mono:
                term = term * image(var) ** e
            total = total + term
        return total

    def evaluate(self, values: Mapping, constants: Mapping | None = None):
        """Numeric evaluation.

        ``values`` maps ``(name, k)`` (or ``name`` for ``k = 0``) to a number or
        array; ``constants`` maps constant-symbol names to numbers.
        """
        constants = dict(constants or {})
        total = 0
        for mono, c in self._terms.items():
            term = float(c)
            for (sym, k), e in mono:
                if sym.constant:
                    if sym.name not in constants:
                        raise KeyError(f"no value for constant {sym.name!r}")
                    x = constants[sym.name]
                else:
                    key = (sym.name, k)
                    if key in values:
                        x = values[key]
                    elif k == 0 and sym.name in values:
                        x = values[sym.name]
                    else:
                        raise KeyError(f"no value for {_var_str((sym, k))}")
                term = term * x**e
            total = total + term
        return total

    # text -----------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_term_key):
            c = self._terms[mono]
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = _mono_str(mono)
            else:
                body = f"{a}*{_mono_str(mono)}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"DiffPoly({str(self)!r})"


def _lookup_symbol(p: DiffPoly, name: str):
    for s in p.symbols():
        if s.name == name:
            return s
    return None


def field(name: str, order: int = 0) -> DiffPoly:
    return DiffPoly.var(Symbol(name), order)


def const(name: str) -> DiffPoly:
    return DiffPoly.var(Symbol(name, constant=True))


class FlowRule:
    """Assignment ``symbol -> time derivative`` defining ``dt`` on the algebra."""

    def __init__(self, assignments: Mapping | None = None):
        self._rules: dict = {}
        for key, value in (assignments or {}).items():
            sym = key if isinstance(key, Symbol) else Symbol(key)
            if sym.constant:
                raise ValueError(f"constant {sym.name!r} cannot carry a flow")
            self._rules[sym] = DiffPoly.coerce(value)

    @classmethod
    def zero(cls, names: Iterable) -> "FlowRule":
        return cls({n: 0 for n in names})

    def rhs(self, symbol: Symbol) -> DiffPoly:
        try:
            return self._rules[symbol]
        except KeyError:
            raise MissingFlowAssignment(symbol.name) from None

    def __getitem__(self, name: str) -> DiffPoly:
        return self.rhs(Symbol(name) if isinstance(name, str) else name)

    def __contains__(self, name):
        return (Symbol(name) if isinstance(name, str) else name) in self._rules

    def items(self):
        return self._rules.items()

    def __repr__(self):
        inner = ", ".join(f"{s.name}: {p}" for s, p in sorted(self._rules.items()))
        return f"FlowRule({{{inner}}})"


# --------------------------------------------------------------------------
# free functions mirroring the methods


def dx(p) -> DiffPoly:
    return DiffPoly.coerce(p).dx()


def dt(p, flow: FlowRule) -> DiffPoly:
    return DiffPoly.coerce(p).dt(flow)


def euler(q, symbol: Symbol) -> DiffPoly:
    """Variational derivative ``sum_k (-D)^k dq/d(symbol, k)``."""
    q = DiffPoly.coerce(q)
    total = DiffPoly()
    for k in range(q.order(symbol) + 1):
        term = q.partial((symbol, k)).dxn(k)
        total = total + (term if k % 2 == 0 else -term)
    return total


def integrate_x(q) -> DiffPoly:
    """Antiderivative ``p`` with ``dx(p) == q`` and no constant part.

    Raises :class:`NotExactDerivative` when ``q`` is not a total derivative
    in the free differential algebra.
    """
    q = DiffPoly.coerce(q)
    if q.is_zero():
        return q
    if q.constant_part():
        raise NotExactDerivative(f"constant term {q.constant_part()} has no differential-polynomial antiderivative")
    for sym in sorted(q.field_symbols()):
        if euler(q, sym):
            raise NotExactDerivative(f"{q} is not a total x-derivative (variational derivative in {sym.name} is nonzero)")

    result = DiffPoly()
    rest = q
    for _ in range(10_000):
        if rest.is_zero():
            return result
        top = max((v for v in rest.variables() if not v[0].constant), key=lambda v: (v[1], _var_key(v)))
        sym, n = top
        if n == 0:
            raise NotExactDerivative(f"reduction stalled at {rest}")
        coeff_terms = {}
        for mono, c in rest.items():
            d = dict(mono)
            e = d.get(top, 0)
            if e > 1:
                raise NotExactDerivative(f"{rest} is nonlinear in its top derivative {_var_str(top)}")
            if e == 1:
                del d[top]
                coeff_terms[_mono(d)] = c
        coeff = DiffPoly._raw(coeff_terms)
        if coeff.order() >= n:
            raise NotExactDerivative(f"coefficient of {_var_str(top)} has order >= {n}")
        below = (sym, n - 1)
        prim = {}
        for mono, c in coeff.items():
            d = dict(mono)
            e = d.get(below, 0) + 1
            d[below] = e
            prim[_mono(d)] = c / e
        step = DiffPoly._raw(prim)
        result = result + step
        rest = rest - step.dx()
    raise NotExactDerivative("integration did not terminate")


# --------------------------------------------------------------------------
# polynomials in the spectral parameter z


class ZDiffPoly:
    """Polynomial in ``z`` with :class:`DiffPoly` coefficients (index = power)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [DiffPoly.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def z(cls, power: int = 1) -> "ZDiffPoly":
        return cls([0] * power + [1])

    @classmethod
    def coerce(cls, value) -> "ZDiffPoly":
        if isinstance(value, ZDiffPoly):
            return value
        return cls([DiffPoly.coerce(value)])

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "ZDiffPoly":
        if not mapping:
            return cls()
        top = max(int(k) for k in mapping)
        cs = [DiffPoly() for _ in range(top + 1)]
        for k, v in mapping.items():
            cs[int(k)] = DiffPoly.coerce(v)
        return cls(cs)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, k: int) -> DiffPoly:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return DiffPoly()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        try:
            other = ZDiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        try:
            other = ZDiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return ZDiffPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ZDiffPoly(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-ZDiffPoly.coerce(other))

    def __rsub__(self, other):
        return ZDiffPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ZDiffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return ZDiffPoly()
        out = [DiffPoly() for _ in range(len(self._coeffs) + len(other._coeffs) - 1)]
        for i, a in enumerate(self._coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = out[i + j] + a * b
        return ZDiffPoly(out)

    __rmul__ = __mul__

    def map(self, fn) -> "ZDiffPoly":
        return ZDiffPoly(fn(c) for c in self._coeffs)

    def dx(self) -> "ZDiffPoly":
        return self.map(DiffPoly.dx)

    def dxn(self, n: int) -> "ZDiffPoly":
        return self.map(lambda c: c.dxn(n))

    def dt(self, flow: FlowRule) -> "ZDiffPoly":
        return self.map(lambda c: c.dt(flow))

    def subs(self, mapping: Mapping) -> "ZDiffPoly":
        return self.map(lambda c: c.subs(mapping))

    def to_json(self) -> dict:
        """``{power: text}`` with string keys, zero coefficients omitted."""
        return {str(k): str(c) for k, c in enumerate(self._coeffs) if not c.is_zero()}

    def evaluate(self, z, values: Mapping, constants: Mapping | None = None):
        total = 0
        for k, c in enumerate(self._coeffs):
            if not c.is_zero():
                total = total + c.evaluate(values, constants) * z**k
        return total

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c.is_zero():
                continue
            zpart = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            body = f"({c})" if len(c) > 1 or not zpart else str(c)
            if zpart:
                body = zpart if c == 1 else (f"-{zpart}" if c == -1 else f"{body}*{zpart}")
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self):
        return f"ZDiffPoly({str(self)!r})"


def zadd(p, q) -> ZDiffPoly:
    return ZDiffPoly.coerce(p) + ZDiffPoly.coerce(q)


def zmul(p, q) -> ZDiffPoly:
    return ZDiffPoly.coerce(p) * ZDiffPoly.coerce(q)


def zdx(p) -> ZDiffPoly:
    return ZDiffPoly.coerce(p).dx()


def zdt(p, flow: FlowRule) -> ZDiffPoly:
    return ZDiffPoly.coerce(p).dt(flow)


def zcoeff(p, k: int) -> DiffPoly:
    return ZDiffPoly.coerce(p).coeff(k)


# --------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-zͰ-Ͽ⋆][A-Za-z0-9Ͱ-Ͽ⋆]*)(?:_(?P<der>x+))?|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    text = text.replace("−", "-").replace("·", "*").replace("⋆", "star")
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        if m.group("num") is not None:
            out.append(("num", int(m.group("num"))))
        elif m.group("name") is not None:
            der = m.group("der")
            out.append(("name", (m.group("name"), len(der) if der else 0)))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, is_constant):
        self.toks = tokens
        self.i = 0
        self.is_constant = is_constant

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, got {val!r}")

    def expr(self) -> DiffPoly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> DiffPoly:
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                kind2, num = self.take()
                if kind2 != "num":
                    raise ValueError("only division by integers is supported")
                acc = acc / num
            else:
                return acc

    def power(self) -> DiffPoly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind2, n = self.take()
            if kind2 != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base**n
        return base

    def atom(self) -> DiffPoly:
        kind, val = self.take()
        if kind == "num":
            return DiffPoly.constant(val)
        if kind == "name":
            name, k = val
            return DiffPoly.var(Symbol(name, constant=self.is_constant(name)), k)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")


def parse(text: str, *, fields: Iterable[str] | None = None, constants: Iterable[str] | None = None) -> DiffPoly:
    """Parse the text format.

    With ``fields`` given, every other name is a constant; with ``constants``
    given, every other name is a field; otherwise names matching
    :data:`DEFAULT_CONSTANT_PATTERN` are constants.
    """
    if fields is not None:
        fset = set(fields)
        is_constant = lambda n: n not in fset  # noqa: E731
    elif constants is not None:
        cset = set(constants)
        is_constant = lambda n: n in cset  # noqa: E731
    else:
        is_constant = lambda n: bool(DEFAULT_CONSTANT_PATTERN.match(n))  # noqa: E731
    parser = _Parser(_tokenize(str(text)), is_constant)
    if not parser.toks:
        raise ValueError("empty expression")
    out = parser.expr()
    if parser.i != len(parser.toks):
        raise ValueError(f"trailing input in {text!r}")
    return out


def product(items: Iterable) -> DiffPoly:
    return reduce(lambda a, b: a * b, items, DiffPoly.constant(1))
