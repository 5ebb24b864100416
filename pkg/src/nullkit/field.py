"""Exact arithmetic in small finite fields GF(p^e).

A field is described by an interned FieldSpec (characteristic, extension
degree, modulus).  Elements are coefficient vectors over GF(p) in the
generator t, stored little endian and reduced modulo the modulus.  For
small fields the spec precomputes full operation tables and interns all
elements, so coefficient arithmetic inside polynomial code is cheap.

The canonical enumeration order of GF(p^e) is by the integer encoding
sum(rep[i] * p**i), so GF(4) enumerates as 0, 1, t, t+1.
"""

import re

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NoDefaultModulus,
    NotPrime,
    ParseError,
    ReducibleModulus,
)

# Interned specs keyed by (p, e, modulus); same inputs give the same object.
_SPECS = {}

# Moduli used when make_field is not given one, little endian.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),        # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),     # t^3 + t + 1
    (3, 2): (1, 0, 1),        # t^2 + 1
    (2, 4): (1, 1, 0, 0, 1),  # t^4 + t + 1
}

# Beyond this degree the brute-force irreducibility check is refused.
_MAX_EXT_DEGREE = 8

# Fields at most this large get interned elements and operation tables.
_TABLE_LIMIT = 4096


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _upoly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _upoly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, over GF(p)."""
    a = list(a)
    _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        lead = a[-1]
        for i, cm in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * cm) % p
        _trim(a)
    return a


def _upoly_divides(d, a, p):
    """True when the monic d divides a over GF(p)."""
    return not _upoly_mod(a, d, p)


def _monic_polys(p, deg):
    """All monic univariate polynomials of the given degree over GF(p)."""
    if deg == 0:
        yield [1]
        return
    lower = [[]]
    for _ in range(deg):
        lower = [poly + [c] for poly in lower for c in range(p)]
    for tail in lower:
        yield tail + [1]


def _is_irreducible(m, p):
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            if _upoly_divides(cand, m, p):
                return False
    return True


class FieldElement:
    """One element of a FieldSpec; immutable and hashable."""

    __slots__ = ("spec", "rep", "idx")

    def __init__(self, spec, rep, idx):
        self.spec = spec
        self.rep = rep
        self.idx = idx

    def _same(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected a field element, got {other!r}")
        if self.spec is not other.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __bool__(self):
        return self.idx != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec is other.spec and self.idx == other.idx

    def __hash__(self):
        return hash((id(self.spec), self.idx))

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._same(other)
        s = self.spec
        if s._add is not None:
            return s.elements[s._add[self.idx][other.idx]]
        return s._from_rep(s._rep_add(self.rep, other.rep))

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._same(other)
        s = self.spec
        if s._add is not None:
            return s.elements[s._add[self.idx][s._neg[other.idx]]]
        return s._from_rep(s._rep_add(self.rep, s._rep_neg(other.rep)))

    def __neg__(self):
        s = self.spec
        if s._neg is not None:
            return s.elements[s._neg[self.idx]]
        return s._from_rep(s._rep_neg(self.rep))

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._same(other)
        s = self.spec
        if s._mul is not None:
            return s.elements[s._mul[self.idx][other.idx]]
        return s._from_rep(s._rep_mul(self.rep, other.rep))

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.inv()

    def inv(self):
        s = self.spec
        if self.idx == 0:
            raise DivisionByZero(f"inverse of 0 in {s}")
        if s._inv is not None:
            return s.elements[s._inv[self.idx]]
        if s.e == 1:
            return s.element(pow(self.idx, s.p - 2, s.p))
        return self ** (s.q - 2)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        base = self
        if k < 0:
            base = self.inv()
            k = -k
        out = self.spec.one
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        if self.spec.e == 1:
            return str(self.idx)
        parts = []
        for i in range(len(self.rep) - 1, -1, -1):
            c = self.rep[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "t" if i == 1 else f"t^{i}"
                parts.append(head if c == 1 else f"{c}*{head}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"{self} in {self.spec}"


class FieldSpec:
    """Description of GF(p^e); construct through make_field only."""

    __slots__ = ("p", "e", "q", "modulus", "elements",
                 "_add", "_mul", "_neg", "_inv", "_cache")

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._cache = {}
        if self.q <= _TABLE_LIMIT:
            self._build_tables()
        else:
            self.elements = None
            self._add = self._mul = self._neg = self._inv = None

    # Representation helpers used on the untabled path.

    def _rep_add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _rep_neg(self, a):
        return tuple((-x) % self.p for x in a)

    def _rep_mul(self, a, b):
        prod = _upoly_mul(list(a), list(b), self.p)
        if self.e > 1:
            prod = _upoly_mod(prod, list(self.modulus), self.p)
        prod = prod + [0] * (self.e - len(prod))
        return tuple(prod)

    def _rep_to_idx(self, rep):
        idx = 0
        for c in reversed(rep):
            idx = idx * self.p + c
        return idx

    def _idx_to_rep(self, idx):
        rep = []
        for _ in range(self.e):
            rep.append(idx % self.p)
            idx //= self.p
        return tuple(rep)

    def _from_rep(self, rep):
        idx = self._rep_to_idx(rep)
        if self.elements is not None:
            return self.elements[idx]
        return FieldElement(self, rep, idx)

    def _build_tables(self):
        q = self.q
        elems = tuple(FieldElement(self, self._idx_to_rep(i), i)
                      for i in range(q))
        self.elements = elems
        self._neg = [self._rep_to_idx(self._rep_neg(x.rep)) for x in elems]
        self._add = [[self._rep_to_idx(self._rep_add(x.rep, y.rep))
                      for y in elems] for x in elems]
        self._mul = [[self._rep_to_idx(self._rep_mul(x.rep, y.rep))
                      for y in elems] for x in elems]
        inv = [None] * q
        for i in range(1, q):
            for j in range(1, q):
                if self._mul[i][j] == 1:
                    inv[i] = j
                    break
        self._inv = inv

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def element(self, value):
        """Element from an integer encoding or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.spec is not self:
                raise FieldMismatch(f"{value.spec} vs {self}")
            return value
        if isinstance(value, int):
            idx = value % self.q if self.e == 1 else value
            if not 0 <= idx < self.q:
                raise ValueError(f"encoding {value} out of range for {self}")
            if self.elements is not None:
                return self.elements[idx]
            return FieldElement(self, self._idx_to_rep(idx), idx)
        rep = [c % self.p for c in value]
        if len(rep) > self.e:
            rep = _upoly_mod(rep, list(self.modulus), self.p)
        rep = tuple(rep + [0] * (self.e - len(rep)))
        return self._from_rep(rep)

    def __str__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"

    def literal(self):
        """Field literal, spelling out a non-default modulus."""
        if self.e == 1:
            return f"GF({self.p})"
        if DEFAULT_MODULI.get((self.p, self.e)) == self.modulus:
            return f"GF({self.p}^{self.e})"
        return f"GF({self.p}^{self.e}; m={_format_t_poly(self.modulus)})"

    __repr__ = __str__


def _format_t_poly(coeffs):
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "t" if i == 1 else f"t^{i}"
            parts.append(head if c == 1 else f"{c}*{head}")
    return "+".join(parts) if parts else "0"


def make_field(p, e=1, modulus=None):
    """Interned spec for GF(p^e), checking primality and irreducibility."""
    if not isinstance(p, int) or not isinstance(e, int):
        raise TypeError("p and e must be integers")
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if e == 1:
        if modulus is not None:
            raise ValueError("prime fields take no modulus")
        key = (p, 1, None)
    else:
        if e > _MAX_EXT_DEGREE:
            raise ReducibleModulus(
                f"irreducibility checks are limited to degree {_MAX_EXT_DEGREE}")
        if modulus is None:
            if (p, e) not in DEFAULT_MODULI:
                raise NoDefaultModulus(f"no built-in modulus for GF({p}^{e})")
            modulus = DEFAULT_MODULI[(p, e)]
        m = _trim([c % p for c in modulus])
        if len(m) - 1 != e:
            raise ReducibleModulus(
                f"modulus must have degree {e}, got degree {len(m) - 1}")
        if m[-1] != 1:
            lead_inv = pow(m[-1], p - 2, p)
            m = [(c * lead_inv) % p for c in m]
        if not _is_irreducible(m, p):
            raise ReducibleModulus(f"{_format_t_poly(m)} is reducible mod {p}")
        key = (p, e, tuple(m))
    if key not in _SPECS:
        _SPECS[key] = FieldSpec(key[0], key[1], key[2])
    return _SPECS[key]


def enumerate_field(spec):
    """All elements of the field in canonical order, starting with 0."""
    if spec.elements is not None:
        return spec.elements
    return tuple(spec.element(i) for i in range(spec.q))


def is_subfield(small, big):
    """True when elements of small embed into big (identity or prime base)."""
    if small is big:
        return True
    return small.e == 1 and small.p == big.p


def embed(a, target):
    """Carry an element into target along the supported embeddings."""
    if a.spec is target:
        return a
    if not is_subfield(a.spec, target):
        raise FieldMismatch(f"no embedding of {a.spec} into {target}")
    return target.element((a.idx,) + (0,) * (target.e - 1))


def in_subfield_image(a, small):
    """True when a lies in the embedded image of the subfield small."""
    if a.spec is small:
        return True
    if not is_subfield(small, a.spec):
        raise FieldMismatch(f"{small} is not a subfield of {a.spec}")
    return all(c == 0 for c in a.rep[1:]) and a.rep[0] < small.p


def common_spec(s1, s2):
    """The larger of two comparable specs; FieldMismatch otherwise."""
    if s1 is s2 or is_subfield(s1, s2):
        return s2
    if is_subfield(s2, s1):
        return s1
    raise FieldMismatch(f"{s1} and {s2} do not sit in one tower")


def parse_t_poly(text, p, offset=0):
    """Coefficient list of a polynomial in t over GF(p), little endian.

    Accepts the same shapes the printer emits: terms like t^2, 2*t, 1,
    joined by + or -.  Positions in errors are offset into the caller's
    original string.
    """
    coeffs = []
    pos = 0
    n = len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    def add_term(power, coef):
        while len(coeffs) <= power:
            coeffs.append(0)
        coeffs[power] = (coeffs[power] + coef) % p

    pos = skip_ws(pos)
    if pos == n:
        raise ParseError("empty coefficient", offset + pos)
    sign = 1
    first = True
    while pos < n:
        pos = skip_ws(pos)
        if not first:
            if pos >= n or text[pos] not in "+-":
                raise ParseError("expected + or -", offset + pos)
            sign = 1 if text[pos] == "+" else -1
            pos = skip_ws(pos + 1)
        elif pos < n and text[pos] in "+-":
            sign = 1 if text[pos] == "+" else -1
            pos = skip_ws(pos + 1)
        first = False
        coef = 1
        power = 0
        seen = False
        m = re.match(r"\d+", text[pos:])
        if m:
            coef = int(m.group()) % p
            pos = skip_ws(pos + m.end())
            seen = True
            if pos < n and text[pos] == "*":
                pos = skip_ws(pos + 1)
                if pos >= n or text[pos] != "t":
                    raise ParseError("expected t", offset + pos)
        if pos < n and text[pos] == "t":
            pos += 1
            power = 1
            seen = True
            if pos < n and text[pos] == "^":
                m = re.match(r"\d+", text[pos + 1:])
                if not m:
                    raise ParseError("expected exponent", offset + pos + 1)
                power = int(m.group())
                pos += 1 + m.end()
        if not seen:
            raise ParseError("expected a coefficient term", offset + pos)
        add_term(power, sign * coef)
        pos = skip_ws(pos)
    return _trim(coeffs)


_FIELD_RE = re.compile(
    r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*m\s*=\s*([^)]+?)\s*)?\)\s*$")


def parse_field_literal(text):
    """FieldSpec from a literal like GF(2), GF(4), GF(2^2; m=t^2+t+1)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"bad field literal {text!r}", 0)
    p = int(m.group(1))
    e = int(m.group(2)) if m.group(2) else 1
    if e == 1 and not _is_prime(p):
        # GF(4) means GF(2^2); factor composite sizes written flat
        base, ee = _factor_prime_power(p)
        if base is not None:
            p, e = base, ee
    modulus = None
    if m.group(3) is not None:
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        modulus = parse_t_poly(m.group(3), p, offset=text.index(m.group(3)))
    return make_field(p, e, modulus)


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if p * p > q and p != q:
            break
        if not _is_prime(p):
            continue
        e = 0
        rest = q
        while rest % p == 0:
            rest //= p
            e += 1
        if rest == 1:
            return p, e
        if e:
            return None, None
    return None, None
