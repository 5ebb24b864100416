"""Multivariate polynomials over a FieldSpec.

A polynomial is a dict from exponent tuples to nonzero coefficients,
together with its ring context (coefficient spec, ordered variable
names).  Monomials are plain tuples; the helpers below operate on them
directly.  Printing is canonical: terms descend in the active monomial
order and coefficients stay in their canonical form, so equal
polynomials always print identically.
"""

import re
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    DimensionMismatch,
    ParseError,
    RingMismatch,
    UnknownVariable,
)
from .field import FieldElement, common_spec, embed, parse_t_poly


# ---------------------------------------------------------------- monomials

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when the monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent vector of a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ------------------------------------------------------------------ orders

@dataclass(frozen=True)
class MonomialOrder:
    """Total order on exponent tuples; larger key means larger monomial.

    Kinds: lex, degrevlex, and block(k).  A block order compares the
    first k exponents degrevlex, then the rest degrevlex, which makes it
    an elimination order for the leading k variables.
    """

    kind: str
    block: int = 0

    def key(self, exps):
        if self.kind == "lex":
            return exps
        if self.kind == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        k = self.block
        head, tail = exps[:k], exps[k:]
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(tail), tuple(-e for e in reversed(tail)))

    def __str__(self):
        if self.kind == "block":
            return f"block({self.block})"
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(k):
    return MonomialOrder("block", k)


# ------------------------------------------------------------- polynomials

class Polynomial:
    """Element of spec[vars]; immutable by convention."""

    __slots__ = ("spec", "vars", "terms", "_hash")

    def __init__(self, spec, vars, terms):
        self.spec = spec
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in terms.items() if c.idx != 0}
        self._hash = None

    @classmethod
    def zero(cls, spec, vars):
        return cls(spec, vars, {})

    @classmethod
    def constant(cls, spec, vars, value):
        c = value if isinstance(value, FieldElement) else spec.element(
            (value % spec.p,))
        n = len(vars)
        return cls(spec, vars, {(0,) * n: c})

    @classmethod
    def variable(cls, spec, vars, name):
        if name not in vars:
            raise UnknownVariable(f"{name} is not a ring variable")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(spec, vars, {exps: spec.one})

    @classmethod
    def monomial(cls, spec, vars, exps, coef=None):
        c = spec.one if coef is None else coef
        return cls(spec, vars, {tuple(exps): c})

    def _same_ring(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected a polynomial, got {other!r}")
        if self.spec is not other.spec or self.vars != other.vars:
            raise RingMismatch(
                f"{self.spec}[{','.join(self.vars)}] vs "
                f"{other.spec}[{','.join(other.vars)}]")

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.spec is other.spec and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            items = frozenset((e, c.idx) for e, c in self.terms.items())
            self._hash = hash((id(self.spec), self.vars, items))
        return self._hash

    def __add__(self, other):
        self._same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s.idx:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.spec, self.vars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial(self.spec, self.vars,
                          {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._same_ring(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                prev = out.get(key)
                if prev is None:
                    if c.idx:
                        out[key] = c
                elif (s := prev + c).idx:
                    out[key] = s
                else:
                    del out[key]
        return Polynomial(self.spec, self.vars, out)

    def __rmul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if not isinstance(c, FieldElement):
            c = self.spec.element((c % self.spec.p,))
        if c.spec is not self.spec:
            c = embed(c, self.spec)
        if c.idx == 0:
            return Polynomial.zero(self.spec, self.vars)
        return Polynomial(self.spec, self.vars,
                          {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Polynomial.constant(self.spec, self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def total_degree(self):
        """Maximal term degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_components(self):
        """List of (degree, component) pairs, ascending in degree."""
        buckets = {}
        for e, c in self.terms.items():
            buckets.setdefault(sum(e), {})[e] = c
        return [(d, Polynomial(self.spec, self.vars, buckets[d]))
                for d in sorted(buckets)]

    @property
    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self, order=DEGREVLEX):
        """Leading (exponent tuple, coefficient) in the given order."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order=DEGREVLEX):
        return [(e, self.terms[e])
                for e in sorted(self.terms, key=order.key, reverse=True)]

    def evaluate(self, point):
        """Value at a point; coordinates may live in an extension."""
        if len(point) != len(self.vars):
            raise DimensionMismatch(
                f"{len(point)} coordinates for {len(self.vars)} variables")
        target = self.spec
        for a in point:
            target = common_spec(target, a.spec)
        coords = [embed(a, target) for a in point]
        pows = [{0: target.one} for _ in coords]
        total = target.zero
        for exps, c in self.terms.items():
            v = embed(c, target)
            for i, e in enumerate(exps):
                if e:
                    cache = pows[i]
                    if e not in cache:
                        cache[e] = coords[i] ** e
                    v = v * cache[e]
            total = total + v
        return total

    def compose(self, args):
        """Substitute args[i] for the i-th variable."""
        if len(args) != len(self.vars):
            raise ArityMismatch(
                f"{len(args)} arguments for {len(self.vars)} variables")
        if not args:
            raise ArityMismatch("composition needs at least one argument")
        ring = args[0]
        for g in args[1:]:
            ring._same_ring(g)
        target = common_spec(self.spec, ring.spec)
        if target is not ring.spec:
            args = [lift(g, target) for g in args]
            ring = args[0]
        one = Polynomial.constant(target, ring.vars, 1)
        pows = [{0: one} for _ in args]
        total = Polynomial.zero(target, ring.vars)
        for exps, c in self.terms.items():
            v = one.scale(embed(c, target))
            for i, e in enumerate(exps):
                if e:
                    cache = pows[i]
                    if e not in cache:
                        cache[e] = args[i] ** e
                    v = v * cache[e]
            total = total + v
        return total

    def __str__(self):
        return self.to_string(DEGREVLEX)

    def __repr__(self):
        return f"<{self} over {self.spec}[{','.join(self.vars)}]>"

    def _mono_str(self, exps):
        parts = []
        for name, e in zip(self.vars, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def _coef_str(self, c):
        return str(c.idx) if self.spec.e == 1 else f"({c})"

    def to_string(self, order=DEGREVLEX):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms(order):
            mono = self._mono_str(exps)
            if not mono:
                parts.append(self._coef_str(c))
            elif c.idx == 1:
                parts.append(mono)
            else:
                parts.append(f"{self._coef_str(c)}*{mono}")
        return " + ".join(parts)


def lift(f, target):
    """The same polynomial with coefficients embedded into target."""
    if f.spec is target:
        return f
    return Polynomial(target, f.vars,
                      {e: embed(c, target) for e, c in f.terms.items()})


def insert_variable(f, position, name):
    """Adjoin a fresh variable (exponent 0 everywhere) at position."""
    if name in f.vars:
        raise RingMismatch(f"{name} already is a ring variable")
    vars = f.vars[:position] + (name,) + f.vars[position:]
    terms = {e[:position] + (0,) + e[position:]: c
             for e, c in f.terms.items()}
    return Polynomial(f.spec, vars, terms)


def drop_variable(f, position):
    """Remove a variable the polynomial does not use."""
    if any(e[position] for e in f.terms):
        raise RingMismatch(
            f"{f.vars[position]} occurs in {f}; cannot drop it")
    vars = f.vars[:position] + f.vars[position + 1:]
    terms = {e[:position] + e[position + 1:]: c for e, c in f.terms.items()}
    return Polynomial(f.spec, vars, terms)


def homogenize(f, position=0, name=None):
    """Homogenize with a fresh variable inserted at position."""
    if name is None:
        i = 0
        while f"X{i}" in f.vars:
            i += 1
        name = f"X{i}"
    if f.is_zero:
        return insert_variable(f, position, name)
    d = f.total_degree()
    vars = f.vars[:position] + (name,) + f.vars[position:]
    terms = {e[:position] + (d - sum(e),) + e[position:]: c
             for e, c in f.terms.items()}
    return Polynomial(f.spec, vars, terms)


def dehomogenize(f, position, value=1):
    """Substitute a constant for one variable and remove it."""
    c = value if isinstance(value, FieldElement) else f.spec.element(
        (value % f.spec.p,))
    out = {}
    for e, v in f.terms.items():
        w = v * c ** e[position]
        key = e[:position] + e[position + 1:]
        prev = out.get(key)
        if prev is None:
            if w.idx:
                out[key] = w
        elif (s := prev + w).idx:
            out[key] = s
        else:
            del out[key]
    return Polynomial(f.spec, f.vars[:position] + f.vars[position + 1:], out)


# ------------------------------------------------------------------ parser

_TOKEN_RE = re.compile(
    r"(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()])")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


def parse_polynomial(text, vars, spec):
    """Parse the canonical surface syntax into a Polynomial.

    Terms are joined by + or -; a term is an optional coefficient
    (an integer, or for extension fields a parenthesized polynomial in
    t) and monomial factors like X0^2 joined by *.
    """
    tokens = _tokenize(text)
    i = 0
    nvars = len(vars)
    index = {name: k for k, name in enumerate(vars)}
    result = {}

    def peek():
        return tokens[i]

    def advance():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def add_term(exps, coef):
        prev = result.get(exps)
        if prev is None:
            if coef.idx:
                result[exps] = coef
        elif (s := prev + coef).idx:
            result[exps] = s
        else:
            del result[exps]

    def parse_coef_parens(pos):
        depth_start = pos
        j = i
        while tokens[j][0] != "end" and tokens[j][1] != ")":
            j += 1
        if tokens[j][0] == "end":
            raise ParseError("unclosed parenthesis", depth_start)
        start = tokens[i][2] if j > i else tokens[j][2]
        end = tokens[j][2]
        content = text[start:end]
        rep = parse_t_poly(content, spec.p, offset=start)
        if len(rep) > 1 and spec.e == 1:
            raise ParseError("t is undefined over a prime field", start)
        return rep, j + 1

    def parse_term():
        nonlocal i
        coef = spec.one
        exps = [0] * nvars
        saw_factor = False
        while True:
            kind, value, pos = peek()
            if kind == "int":
                advance()
                coef = coef * spec.element((int(value) % spec.p,))
                saw_factor = True
            elif kind == "op" and value == "(":
                advance()
                rep, nxt = parse_coef_parens(pos)
                i = nxt
                coef = coef * spec.element(rep)
                saw_factor = True
            elif kind == "name":
                advance()
                if value not in index and not (value == "t" and spec.e > 1):
                    raise UnknownVariable(
                        f"unknown variable {value!r}", pos)
                power = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    advance()
                    k2, v2, p2 = peek()
                    if k2 != "int":
                        raise ParseError("expected an exponent", p2)
                    advance()
                    power = int(v2)
                if value in index:
                    exps[index[value]] += power
                else:
                    # bare generator of the extension field as coefficient
                    coef = coef * spec.element((0, 1)) ** power
                saw_factor = True
            else:
                raise ParseError("expected a coefficient or variable", pos)
            kind, value, pos = peek()
            if kind == "op" and value == "*":
                advance()
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", peek()[2])
        return tuple(exps), coef

    kind, value, pos = peek()
    sign = 1
    if kind == "op" and value in "+-":
        advance()
        sign = 1 if value == "+" else -1
    if peek()[0] == "end":
        raise ParseError("empty polynomial", peek()[2])
    while True:
        exps, coef = parse_term()
        if sign < 0:
            coef = -coef
        add_term(exps, coef)
        kind, value, pos = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            advance()
            sign = 1 if value == "+" else -1
            continue
        raise ParseError(f"expected + or - before {value!r}", pos)
    return Polynomial(spec, vars, result)
