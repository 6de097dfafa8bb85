"""Multivariate Laurent polynomials over the integers.

A :class:`LaurentPoly` is an element of Z[t1^±1, ..., tn^±1].  Values are
immutable; arithmetic returns new objects.  Equality up to a unit
``±t^a`` is decided through :func:`normalize`, which picks the canonical
representative: minimal exponent zero in every variable and a positive
leading coefficient in graded-lex order with ``t1 > t2 > ...``.

gcd and factorization of the shifted (ordinary) polynomials are delegated to
sympy; everything else is implemented here on sparse dicts.
"""

import re
from collections import namedtuple
from fractions import Fraction
from functools import reduce
from math import gcd as igcd

import sympy

from .errors import UNLIMITED, FactorizationUnavailable, ParseError


def _glex_key(exps):
    return (sum(exps), exps)


class LaurentPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, nvars, terms):
        # terms already clean: no zero coefficients, tuple keys
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars, c):
        c = int(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars, i):
        """The variable ``t_{i+1}`` (0-based index)."""
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        return cls._raw(len(exps), {exps: int(c)} if c else {})

    # -- basic queries ----------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def is_unit(self):
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def min_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def max_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self._terms) for i in range(self.nvars))

    def degree_span(self):
        """Total degree of the shifted polynomial ``t^-min * p``."""
        lo, hi = self.min_exponents(), self.max_exponents()
        return sum(h - l for h, l in zip(hi, lo))

    def leading_term(self):
        exps = max(self._terms, key=_glex_key)
        return exps, self._terms[exps]

    def content(self):
        return reduce(igcd, self._terms.values(), 0)

    def coefficients(self):
        return [self._terms[e] for e in sorted(self._terms, key=_glex_key, reverse=True)]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        n = self.nvars
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(e1[i] + e2[i] for i in range(n))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only units have negative powers")
            return LaurentPoly.monomial(tuple(x * k for x in e), c ** (-k))
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps):
        """Multiply by the monomial ``t^exps``."""
        n = self.nvars
        return LaurentPoly._raw(
            n, {tuple(e[i] + exps[i] for i in range(n)): c for e, c in self._terms.items()}
        )

    def scale(self, c):
        return self * int(c)

    def exquo(self, other):
        """Exact quotient ``self / other``; raises ValueError if it does not exist."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPoly.zero(self.nvars)
        n = self.nvars
        if other.is_monomial():
            (de, dc), = other._terms.items()
            out = {}
            for e, c in self._terms.items():
                qc, rem = divmod(c, dc)
                if rem:
                    raise ValueError("not divisible")
                out[tuple(e[i] - de[i] for i in range(n))] = qc
            return LaurentPoly._raw(n, out)
        # quotient exponents are confined to a box and a total-degree band
        lo = [a - b for a, b in zip(self.min_exponents(), other.min_exponents())]
        hi = [a - b for a, b in zip(self.max_exponents(), other.max_exponents())]
        if any(l > h for l, h in zip(lo, hi)):
            raise ValueError("not divisible")
        dlo = min(sum(e) for e in self._terms) - min(sum(e) for e in other._terms)
        lead_e, lead_c = other.leading_term()
        rem = dict(self._terms)
        quo = {}
        dterms = list(other._terms.items())
        while rem:
            re_, rc = max(rem.items(), key=lambda kv: _glex_key(kv[0]))
            qe = tuple(re_[i] - lead_e[i] for i in range(n))
            qc, r = divmod(rc, lead_c)
            if r or sum(qe) < dlo or any(not (lo[i] <= qe[i] <= hi[i]) for i in range(n)):
                raise ValueError("not divisible")
            quo[qe] = qc
            for de, dc in dterms:
                e = tuple(qe[i] + de[i] for i in range(n))
                v = rem.get(e, 0) - qc * dc
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return LaurentPoly._raw(n, quo)

    def divides(self, other):
        """True iff ``self`` divides ``other`` in the Laurent ring."""
        if not self:
            return not other
        try:
            other.exquo(self)
        except ValueError:
            return False
        return True

    # -- ring structure ---------------------------------------------------

    def involve(self):
        return involve(self)

    def evaluate(self, point):
        return evaluate(self, point)

    def substitute_int(self, point):
        """Evaluate at integer ±1 points exactly, as an int."""
        value = evaluate(self, point)
        if value.denominator != 1:
            raise ValueError("value is not an integer")
        return int(value)

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


UnitNormalForm = namedtuple("UnitNormalForm", ["poly", "sign", "shift"])
UnitNormalForm.__doc__ = "``original == sign * t^shift * poly`` with ``poly`` canonical."


def involve(p):
    """The ring involution ``t_i -> t_i^-1``."""
    return LaurentPoly._raw(p.nvars, {tuple(-x for x in e): c for e, c in p._terms.items()})


def evaluate(p, point):
    """Substitute nonzero rationals for the variables."""
    point = tuple(Fraction(x) for x in point)
    if len(point) != p.nvars:
        raise ValueError(f"expected {p.nvars} coordinates")
    if any(x == 0 for x in point):
        raise ValueError("evaluation point must have nonzero coordinates")
    total = Fraction(0)
    for e, c in p._terms.items():
        term = Fraction(c)
        for x, k in zip(point, e):
            if k:
                term *= x ** k
        total += term
    return total


def normalize(p):
    n = p.nvars
    if not p:
        return UnitNormalForm(p, 1, (0,) * n)
    shift = p.min_exponents()
    q = p.shift(tuple(-s for s in shift))
    sign = 1 if q.leading_term()[1] > 0 else -1
    if sign < 0:
        q = -q
    return UnitNormalForm(q, sign, shift)


def canonical(p):
    """Shorthand for ``normalize(p).poly``."""
    return normalize(p).poly


def associated(p, q):
    """``p ≐ q``: equal up to a unit ``±t^a``."""
    return canonical(p) == canonical(q)


# -- sympy bridge -----------------------------------------------------------

_SYMBOL_CACHE = {}


def _symbols(n):
    if n not in _SYMBOL_CACHE:
        _SYMBOL_CACHE[n] = sympy.symbols(f"t1:{n + 1}") if n else ()
    return _SYMBOL_CACHE[n]


def _to_sympy(p):
    """Shifted polynomial as a sympy Poly (n >= 1)."""
    q = p.shift(tuple(-s for s in p.min_exponents()))
    return sympy.Poly.from_dict(q.terms or {(0,) * p.nvars: 0}, *_symbols(p.nvars), domain="ZZ")


def _from_sympy(poly, n):
    return LaurentPoly(n, {tuple(e): int(c) for e, c in poly.as_dict().items()})


def gcd(p, q):
    """Greatest common divisor in the Laurent ring, unit-normalized.

    ``gcd(p, 0) ≐ p`` and ``gcd(0, 0) == 0``.
    """
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    if not p:
        return canonical(q)
    if not q:
        return canonical(p)
    n = p.nvars
    if n == 0:
        return LaurentPoly.const(0, igcd(p.content(), q.content()))
    if p.is_monomial() or q.is_monomial():
        return LaurentPoly.const(n, igcd(p.content(), q.content()))
    g = _to_sympy(p).gcd(_to_sympy(q))
    return canonical(_from_sympy(g, n))


def gcd_many(polys, nvars=None, stop_at_one=True):
    """Fold :func:`gcd` over an iterable.  The empty gcd is 0 (needs ``nvars``)."""
    acc = None
    for f in polys:
        acc = canonical(f) if acc is None else gcd(acc, f)
        if stop_at_one and acc == 1:
            return acc
    if acc is None:
        if nvars is None:
            raise ValueError("nvars required for an empty gcd")
        return LaurentPoly.zero(nvars)
    return acc


class FactorBudget:
    """Size limits for :func:`factor`.  Defaults: total degree <= 24, <= 2 variables."""

    def __init__(self, max_degree=24, max_vars=2, budget=UNLIMITED):
        self.max_degree = max_degree
        self.max_vars = max_vars
        self.budget = budget


DEFAULT_FACTOR_BUDGET = FactorBudget()


def _factor_sort_key(f):
    return (f.degree_span(), len(f), sorted(f.items(), key=lambda kv: _glex_key(kv[0]), reverse=True))


def factor(p, limits=DEFAULT_FACTOR_BUDGET):
    """Irreducible factorization up to a unit.

    Returns ``(content, [(factor, multiplicity), ...])`` with positive integer
    content and unit-normalized, primitive, non-unit irreducible factors in a
    deterministic order.  Raises :class:`FactorizationUnavailable` outside
    ``limits``.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    n = p.nvars
    q = canonical(p)
    c = q.content()
    if q.is_monomial():
        return c, []
    if n > limits.max_vars:
        raise FactorizationUnavailable(
            f"{n} variables exceeds factorization budget of {limits.max_vars}"
        )
    if q.degree_span() > limits.max_degree:
        raise FactorizationUnavailable(
            f"total degree {q.degree_span()} exceeds budget {limits.max_degree}"
        )
    limits.budget.check()
    _, facs = _to_sympy(q).factor_list()
    limits.budget.check()
    out = []
    for f, k in facs:
        f = canonical(_from_sympy(f, n))
        if f.is_unit():
            continue
        out.append((f, k))
    out.sort(key=lambda fk: _factor_sort_key(fk[0]))
    return c, out


def expand_factorization(content, factors, nvars):
    result = LaurentPoly.const(nvars, content)
    for f, k in factors:
        result = result * f ** k
    return result


# -- text syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t\d*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        kinds = ("int", "var", "^", "*", "+", "-", "(", ")")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val, m.start(m.lastindex)))
                break
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, nvars):
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def var_index(self, name, pos):
        idx = int(name[1:]) if len(name) > 1 else 1
        if idx < 1 or idx > self.nvars:
            raise ParseError(f"variable {name} out of range for {self.nvars} variables", pos)
        return idx - 1

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.power()
            elif kind in ("int", "var", "("):
                acc = acc * self.power()
            else:
                return acc

    def exponent(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        return sign * int(self.take("int")[1])

    def power(self):
        kind, val, pos = self.take()
        if kind == "int":
            base = LaurentPoly.const(self.nvars, int(val))
        elif kind == "var":
            base = LaurentPoly.var(self.nvars, self.var_index(val, pos))
        elif kind == "(":
            base = self.expr()
            self.take(")")
        else:
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos)
        if self.peek()[0] == "^":
            _, _, epos = self.take()
            k = self.exponent()
            if k < 0 and not base.is_unit():
                raise ParseError("negative exponent on a non-unit", epos)
            base = base ** k
        return base


def parse_poly(text, nvars=None):
    """Parse ``3*t1^2*t2^-1 - 1``.  ``t`` is an alias of ``t1``.

    Without ``nvars`` the variable count is the largest index used (at least 1).
    """
    if not text.strip():
        raise ParseError("empty polynomial", 0)
    if nvars is None:
        idx = [int(m.group(1) or 1) for m in re.finditer(r"t(\d*)", text)]
        nvars = max(idx, default=1)
    parser = _Parser(text, nvars)
    value = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return value


def _format_monomial(exps, single):
    parts = []
    for i, k in enumerate(exps):
        if k == 0:
            continue
        name = "t" if single else f"t{i + 1}"
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def format_poly(p, short=None):
    """Inverse of :func:`parse_poly`.  Single-variable polys print with ``t``."""
    if not p:
        return "0"
    single = p.nvars == 1 if short is None else short
    out = []
    for exps in sorted(p._terms, key=_glex_key, reverse=True):
        c = p._terms[exps]
        mono = _format_monomial(exps, single)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)
