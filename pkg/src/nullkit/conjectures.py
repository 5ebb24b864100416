"""Bounded search for composed-form membership witnesses.

The claim under test: whenever f lies in the vanishing ideal of the
affine zero set of I, some composed form with only the trivial zero
should certify the membership.  Three families of composed forms are
searched (written in fresh variables y0, y1, ...):

  r1  p(y0^n, y1, ..., ym) for an anisotropic p and inner exponent n;
  r2  p(s(y0, ..., yn), y_{n+1}, ..., y_{n+m}), one nested form;
  r3  chains p_i(...p_2(p_1(y0..y_{m_1}), y_{m_1+1}..y_{m_2})...) with
      breakpoints m_1 <= ... <= m_i.

A witness is such a composed form plus ring arguments f_1, ..., f_m
with p(f, f_1, ..., f_m) in I, verified through a Groebner membership
test.  Candidates run in a documented canonical order (family
structure ascending, then forms, then argument tuples in pool order)
and an exhausted search reports exactly how many candidates the bounds
admit.  The search prunes soundly: a composed form with only the
trivial zero forces every argument to vanish on the zero set of I, and
membership only depends on argument residues modulo I, so distinct
arguments with equal residues share one composition test.

The fourth family from the same source is stated over an infinite
product and has no finite candidate enumeration at these bounds, so it
is not searched.

counterexample_suite packages the standing counterexample: over GF(2)
with I = <X1>, the vanishing ideal of Z(I) is <X1, X2^2 - X2>, yet no
bounded witness places X2^2 - X2 there, while the easy member X1 is
witnessed immediately.
"""

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import NotPrime, RingMismatch, SizeOverflow, SuiteFailure
from .field import enumerate_field, is_subfield, make_field
from .groebner import normal_form
from .ideals import (
    Ideal,
    ideal_quotient,
    ideal_sum,
    is_homogeneous_ideal,
    radical_membership,
    reduced,
)
from .nullstellensatz import (
    NullConfig,
    affine_vanishing,
    degree_bound,
    gamma_q_star,
    power_ideal,
)
from .poly import DEGREVLEX, Polynomial, parse_polynomial
from .varieties import (
    AFFINE,
    PROJECTIVE,
    enumerate_space,
    oracle_vanishing_ideal,
    zero_set,
)

FAMILIES = ("r1", "r2", "r3")

# Candidate coefficient vectors per enumeration are capped here.
_ENUM_LIMIT = 2_000_000


@dataclass(frozen=True)
class SearchBounds:
    """Caps for the candidate enumeration; the defaults finish in minutes."""

    max_m: int = 2
    max_deg_p: int = 4
    max_deg_args: int = 2
    max_chain: int = 2
    max_inner_exp: int = 3

    def __str__(self):
        return (f"m<={self.max_m} degp<={self.max_deg_p} "
                f"degargs<={self.max_deg_args} chain<={self.max_chain} "
                f"exp<={self.max_inner_exp}")


@dataclass(frozen=True)
class FormClass:
    """A form p in y0..ym tagged with its class: P_K or P_K0."""

    kind: str
    m: int
    p: Polynomial


@dataclass
class RWitness:
    """A verified composed-form membership witness.

    forms holds the constituent anisotropic forms: one form for r1
    (with inner_exp), the inner and outer form for r2, the whole chain
    for r3.  breakpoints holds (m,) for r1 and the partial variable
    counts (m_1, ..., m_i) for r2/r3.  args are the m_i ring
    polynomials substituted after the target.
    """

    family: str
    forms: tuple
    breakpoints: tuple
    args: tuple
    target: Polynomial
    ideal: Ideal
    inner_exp: int | None = None

    def substituted_form(self):
        """The composed polynomial in the y variables."""
        K = self.forms[0].spec
        if self.family == "r1":
            m = self.breakpoints[0]
            vars = _yvars(m)
            ys = [Polynomial.variable(K, vars, v) for v in vars]
            ys[0] = ys[0] ** self.inner_exp
            return self.forms[0].compose(ys)
        total = self.breakpoints[-1]
        vars = _yvars(total)
        ys = [Polynomial.variable(K, vars, v) for v in vars]
        h = ys[0]
        prev = 0
        for p, stop in zip(self.forms, self.breakpoints):
            h = p.compose([h] + ys[prev + 1:stop + 1])
            prev = stop
        return h

    def composition(self):
        return self.substituted_form().compose([self.target, *self.args])

    def describe(self):
        lines = [f"family: {self.family}"]
        for i, p in enumerate(self.forms):
            lines.append(f"form {i}: {p}")
        if self.inner_exp is not None:
            lines.append(f"inner exponent: {self.inner_exp}")
        lines.append(f"breakpoints: {list(self.breakpoints)}")
        lines.append("args: [" + ", ".join(str(a) for a in self.args) + "]")
        lines.append(f"composition: {self.composition()}")
        return "\n".join(lines)


@dataclass
class Exhausted:
    """Negative search outcome with the exact candidate count."""

    family: str
    candidates: int
    bounds: SearchBounds


def _yvars(m):
    return tuple(f"y{i}" for i in range(m + 1))


def _degree_monomials(nvars, d):
    """Exponent tuples of total degree d, descending in degrevlex."""
    monos = set()
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        monos.add(tuple(exps))
    return sorted(monos, key=DEGREVLEX.key, reverse=True)


def check_form_class(p, kind, K):
    """Decide membership of p in P_K (zeros inside y0 = 0) or P_K0
    (only the trivial zero); false rather than an error on anything
    non-homogeneous."""
    if kind not in ("P_K", "P_K0"):
        raise ValueError(f"unknown form class {kind!r}")
    if not is_subfield(p.spec, K):
        raise RingMismatch(f"{p.spec} does not embed into {K}")
    if not p.is_homogeneous:
        return False
    space = enumerate_space(K, len(p.vars), AFFINE)
    if kind == "P_K":
        return all(a.coords[0].idx == 0 or p.evaluate(a.coords)
                   for a in space.points)
    for a in space.points:
        trivial = all(c.idx == 0 for c in a.coords)
        if bool(p.evaluate(a.coords)) == trivial:
            return False
    return True


_FORM_CACHE = {}


def _anisotropic_forms_of_degree(K, m, d):
    """Monic forms in y0..ym of degree d with only the trivial zero,
    in canonical order (coefficient vectors over the descending
    monomial basis, lexicographically)."""
    key = (K, m, d)
    cached = _FORM_CACHE.get(key)
    if cached is not None:
        return cached
    vars = _yvars(m)
    monos = _degree_monomials(m + 1, d)
    if K.q ** len(monos) > _ENUM_LIMIT:
        raise SizeOverflow(
            f"{K.q}^{len(monos)} candidate forms exceed the search limit")
    pts = [a.coords for a in enumerate_space(K, m + 1, AFFINE).points
           if any(c.idx for c in a.coords)]
    table = [[_eval_mono(mono, coords, K) for coords in pts]
             for mono in monos]
    elems = enumerate_field(K)
    out = []
    for vec in itertools.product(range(K.q), repeat=len(monos)):
        lead = next((v for v in vec if v), 0)
        if lead != 1:
            continue
        ok = True
        for pi in range(len(pts)):
            s = K.zero
            for mi, v in enumerate(vec):
                if v:
                    cell = table[mi][pi]
                    s = s + (cell if v == 1 else elems[v] * cell)
            if not s.idx:
                ok = False
                break
        if ok:
            out.append(Polynomial(K, vars, {
                monos[mi]: elems[v] for mi, v in enumerate(vec) if v}))
    out = tuple(out)
    _FORM_CACHE[key] = out
    return out


def _eval_mono(exps, coords, K):
    v = K.one
    for c, e in zip(coords, exps):
        if e:
            v = v * c ** e
    return v


def enumerate_forms(K, m, max_deg):
    """All anisotropic monic forms in y0..ym up to max_deg, by degree."""
    out = []
    for d in range(1, max_deg + 1):
        out.extend(_anisotropic_forms_of_degree(K, m, d))
    return tuple(out)


def argument_pool(spec, vars, max_deg):
    """Every polynomial of total degree <= max_deg, zero first, in
    canonical vector order over the descending monomial basis."""
    monos = []
    for d in range(max_deg, -1, -1):
        monos.extend(_degree_monomials(len(vars), d))
    if spec.q ** len(monos) > _ENUM_LIMIT:
        raise SizeOverflow(
            f"{spec.q}^{len(monos)} argument candidates exceed the limit")
    elems = enumerate_field(spec)
    pool = []
    for vec in itertools.product(range(spec.q), repeat=len(monos)):
        pool.append(Polynomial(spec, vars, {
            monos[mi]: elems[v] for mi, v in enumerate(vec) if v}))
    return tuple(pool)


class _SearchContext:
    """Shared state for one bounded search over one target and ideal."""

    def __init__(self, f, I, bounds, K):
        if f.spec is not I.spec or f.vars != I.vars:
            raise RingMismatch("target and ideal live in different rings")
        self.f = f
        self.ideal = I
        self.bounds = bounds
        self.K = K
        self.basis = I.gb()
        self.zero_pts = [p.coords
                         for p in zero_set(I, K, AFFINE).points]
        self.f_vanishes = all(not f.evaluate(c) for c in self.zero_pts)
        self.f_res = normal_form(f, self.basis)
        self.pool = argument_pool(I.spec, I.vars, bounds.max_deg_args)
        self.residue_of = {}
        residues = {}
        for g in self.pool:
            r = normal_form(g, self.basis)
            self.residue_of[g] = r
            if r not in residues:
                residues[r] = all(not r.evaluate(c) for c in self.zero_pts)
        # Only residues vanishing on the zero set can take part in a
        # membership: the composed form kills nonzero argument values.
        self.vanishing_residues = tuple(
            r for r, ok in residues.items() if ok)
        self.forms = {m: enumerate_forms(K, m, bounds.max_deg_p)
                      for m in range(bounds.max_m + 1)}
        self._pow = {}
        self._compose = {}

    def _pow_mod(self, a, e):
        if e == 0:
            return Polynomial.constant(a.spec, a.vars, 1)
        if e == 1:
            return a
        key = (a, e)
        out = self._pow.get(key)
        if out is None:
            out = normal_form(self._pow_mod(a, e - 1) * a, self.basis)
            self._pow[key] = out
        return out

    def compose_mod(self, p, args):
        """Residue of p(args) modulo the ideal, memoized."""
        key = (p, args)
        out = self._compose.get(key)
        if out is None:
            spec, vars = args[0].spec, args[0].vars
            total = Polynomial.zero(spec, vars)
            for exps, c in p.terms.items():
                v = Polynomial.constant(spec, vars, 1).scale(c)
                for i, e in enumerate(exps):
                    if e:
                        v = normal_form(v * self._pow_mod(args[i], e),
                                        self.basis)
                total = total + v
            out = total
            self._compose[key] = out
        return out

    def first_passing_args(self, nargs, passing):
        """Canonically first argument tuple whose residues pass."""
        for args in itertools.product(self.pool, repeat=nargs):
            if tuple(self.residue_of[g] for g in args) in passing:
                return args
        return None


def _r1_structures(ctx):
    b = ctx.bounds
    for m in range(b.max_m + 1):
        for p in ctx.forms[m]:
            for nexp in range(1, b.max_inner_exp + 1):
                yield (p, nexp, m)


def search_witness(f, I, family, bounds=None, K=None):
    """First verified witness in canonical order, or Exhausted.

    The candidate count in an Exhausted result is exact over the full
    structural space (every form choice, inner datum and argument
    tuple within bounds), even though testing collapses arguments by
    residue.
    """
    family = family.lower()
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    bounds = bounds or SearchBounds()
    K = K or I.spec
    if K is not I.spec:
        raise RingMismatch("searches run with coefficients in the point field")
    ctx = _SearchContext(f, I, bounds, K)
    count = 0
    npool = len(ctx.pool)

    def finish(structure_args):
        # structure_args: (test_fn, witness_fn, nargs)
        nonlocal count
        test, build, nargs = structure_args
        count += npool ** nargs
        if not ctx.f_vanishes:
            return None
        passing = set()
        for combo in itertools.product(ctx.vanishing_residues,
                                       repeat=nargs):
            if test(combo):
                passing.add(combo)
        if not passing:
            return None
        args = ctx.first_passing_args(nargs, passing)
        if args is None:
            return None
        return build(args)

    if family == "r1":
        for p, nexp, m in _r1_structures(ctx):
            subst = _substitute_inner_power(p, nexp)

            def test(combo, subst=subst):
                return ctx.compose_mod(subst, (ctx.f_res, *combo)).is_zero

            def build(args, p=p, nexp=nexp, m=m):
                return RWitness("r1", (p,), (m,), args, f, I,
                                inner_exp=nexp)

            w = finish((test, build, m))
            if w is not None and verify_kradical_witness(w):
                return w
    elif family == "r2":
        b = ctx.bounds
        for total in range(b.max_m + 1):
            for n_in in range(total + 1):
                m_out = total - n_in
                for s in ctx.forms[n_in]:
                    for p in ctx.forms[m_out]:

                        def test(combo, s=s, p=p, n_in=n_in):
                            inner = ctx.compose_mod(
                                s, (ctx.f_res, *combo[:n_in]))
                            return ctx.compose_mod(
                                p, (inner, *combo[n_in:])).is_zero

                        def build(args, s=s, p=p, n_in=n_in, total=total):
                            return RWitness("r2", (s, p), (n_in, total),
                                            args, f, I)

                        w = finish((test, build, total))
                        if w is not None and verify_kradical_witness(w):
                            return w
    else:
        b = ctx.bounds
        for chain_len in range(1, b.max_chain + 1):
            for bps in itertools.combinations_with_replacement(
                    range(b.max_m + 1), chain_len):
                slots = [bps[0]] + [bps[i] - bps[i - 1]
                                    for i in range(1, chain_len)]
                for forms in itertools.product(
                        *[ctx.forms[s] for s in slots]):

                    def test(combo, forms=forms, bps=bps):
                        h = ctx.f_res
                        prev = 0
                        for p, stop in zip(forms, bps):
                            h = ctx.compose_mod(p, (h, *combo[prev:stop]))
                            prev = stop
                        return h.is_zero

                    def build(args, forms=forms, bps=bps):
                        return RWitness("r3", forms, bps, args, f, I)

                    w = finish((test, build, bps[-1]))
                    if w is not None and verify_kradical_witness(w):
                        return w
    return Exhausted(family, count, bounds)


def _substitute_inner_power(p, nexp):
    if nexp == 1:
        return p
    K = p.spec
    ys = [Polynomial.variable(K, p.vars, v) for v in p.vars]
    ys[0] = ys[0] ** nexp
    return p.compose(ys)


def verify_kradical_witness(w):
    """Bound-free check of a witness: form classes plus membership."""
    K = w.forms[0].spec
    for p in w.forms:
        if not check_form_class(p, "P_K0", K):
            return False
    if w.family == "r1" and (w.inner_exp is None or w.inner_exp < 1):
        return False
    if len(w.args) != w.breakpoints[-1]:
        return False
    return w.ideal.contains(w.composition())


def as_r2(w):
    """Embed an r1 witness: the inner power becomes a nested form."""
    if w.family != "r1":
        raise ValueError("expected an r1 witness")
    K = w.forms[0].spec
    y0 = ("y0",)
    inner = Polynomial.variable(K, y0, "y0") ** w.inner_exp
    return RWitness("r2", (inner, w.forms[0]), (0, w.breakpoints[0]),
                    w.args, w.target, w.ideal)


def as_r3(w):
    """Embed an r2 witness as a chain of length two."""
    if w.family != "r2":
        raise ValueError("expected an r2 witness")
    return RWitness("r3", w.forms, w.breakpoints, w.args, w.target, w.ideal)


@dataclass
class SuiteStep:
    name: str
    passed: bool
    detail: str
    vacuous: bool = False
    group: str = ""


@dataclass
class SuiteReport:
    steps: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(s.passed for s in self.steps)

    def groups(self):
        """Ordered (group, all-steps-passed) pairs."""
        seen = {}
        for s in self.steps:
            seen[s.group] = seen.get(s.group, True) and s.passed
        return list(seen.items())

    def add(self, name, passed, detail, vacuous=False, group=""):
        self.steps.append(SuiteStep(name, passed, detail, vacuous, group))

    def format(self):
        lines = []
        total = len(self.steps)
        for i, s in enumerate(self.steps, 1):
            status = "PASS" if s.passed else (
                "VACUOUS" if s.vacuous else "FAIL")
            lines.append(f"[{i}/{total}] {s.name}: {status} ({s.detail})")
        groups = self.groups()
        lines.append(f"groups passed: {sum(ok for _, ok in groups)}"
                     f"/{len(groups)}")
        lines.append("suite: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def counterexample_suite(K=None, bounds=None, ideal_override=None,
                         raise_on_failure=True):
    """Checked walk through the standing counterexample over GF(2).

    Steps: the affine vanishing ideal of I = <X1> matches the oracle
    and equals <X1, X2^2 - X2>; that ideal is not homogeneous; every
    family search for X2^2 - X2 exhausts with a positive candidate
    count; every family finds and verifies a witness for the easy
    member X1.  Searches admitting zero candidates are flagged vacuous
    and fail the suite rather than passing silently.
    """
    K = K or make_field(2)
    bounds = bounds or SearchBounds()
    vars = ("X1", "X2")
    I = ideal_override if ideal_override is not None else Ideal.from_strings(
        K, vars, ["X1"])
    f = parse_polynomial("X2^2 - X2", vars, K)
    easy = parse_polynomial("X1", vars, K)
    cfg = NullConfig(K, K, vars)
    report = SuiteReport()

    try:
        van = affine_vanishing(I, cfg)
        orc = reduced(oracle_vanishing_ideal(
            zero_set(I, K, AFFINE), spec=K, vars=vars))
        agree = van.gb().gens == orc.gb().gens
        detail = f"I(Z) = {van}"
        if ideal_override is None:
            expected = Ideal.from_strings(K, vars, ["X1", "X2^2 - X2"])
            agree = agree and van.gb().gens == expected.gb().gens
        report.add("affine formula matches oracle", agree, detail,
                   group="formula")
    except Exception as exc:  # noqa: BLE001 - a failing step is reported
        van = None
        report.add("affine formula matches oracle", False, str(exc),
                   group="formula")

    if van is not None:
        inhomog = (not is_homogeneous_ideal(van)) and not f.is_homogeneous
        member = van.contains(f)
        report.add("target is a non-homogeneous member", inhomog and member,
                   f"f = {f}", group="membership")
    else:
        report.add("target is a non-homogeneous member", False,
                   "no vanishing ideal to test", group="membership")

    for family in FAMILIES:
        try:
            out = search_witness(f, I, family, bounds, K)
        except Exception as exc:  # noqa: BLE001
            report.add(f"{family} search exhausts for f", False, str(exc),
                       group="exhaustion")
            continue
        if isinstance(out, Exhausted):
            if out.candidates > 0:
                report.add(f"{family} search exhausts for f", True,
                           f"{out.candidates} candidates",
                           group="exhaustion")
            else:
                report.add(f"{family} search exhausts for f", False,
                           "vacuous: bounds admit no candidates",
                           vacuous=True, group="exhaustion")
        else:
            report.add(f"{family} search exhausts for f", False,
                       f"unexpected witness: {out.describe()}",
                       group="exhaustion")

    for family in FAMILIES:
        try:
            out = search_witness(easy, I, family, bounds, K)
        except Exception as exc:  # noqa: BLE001
            report.add(f"{family} finds the easy member", False, str(exc),
                       group="controls")
            continue
        if isinstance(out, RWitness) and verify_kradical_witness(out):
            report.add(f"{family} finds the easy member", True,
                       f"forms = {[str(p) for p in out.forms]}",
                       group="controls")
        elif isinstance(out, Exhausted) and out.candidates == 0:
            report.add(f"{family} finds the easy member", False,
                       "vacuous: bounds admit no candidates", vacuous=True,
                       group="controls")
        else:
            report.add(f"{family} finds the easy member", False,
                       "no witness found", group="controls")

    if raise_on_failure and not report.ok:
        first = next(s for s in report.steps if not s.passed)
        err = SuiteFailure(f"suite step failed: {first.name} ({first.detail})")
        err.report = report
        raise err
    return report


@dataclass
class NonRadicalInstance:
    """An ideal whose homogeneous field-equation sum is not radical."""

    ideal: Ideal
    witness: Polynomial
    with_gamma: Ideal


def _spec_from_q(q):
    for e in range(1, max(q, 2).bit_length() + 1):
        root = round(q ** (1.0 / e))
        for cand in (root - 1, root, root + 1):
            if cand < 2 or cand ** e != q:
                continue
            try:
                return make_field(cand, e)
            except NotPrime:
                break
    raise NotPrime(f"{q} is not a prime power")


def find_nonradical_instance(q, n, max_gen_degree):
    """Smallest-first search for I with (I + Gamma_q^*) not radical.

    Enumerates homogeneous ideals with at most two monic generators of
    degree <= max_gen_degree in n+1 variables, skips empty zero sets,
    and returns the first instance where the colon result strictly
    exceeds I + Gamma_q^*, together with a verified witness member of
    the radical that is not in the ideal itself.
    """
    spec = _spec_from_q(q)
    vars = tuple(f"X{i}" for i in range(n + 1))
    cfg = NullConfig(spec, spec, vars)
    elems = enumerate_field(spec)
    forms = []
    for d in range(1, max_gen_degree + 1):
        monos = _degree_monomials(n + 1, d)
        if spec.q ** len(monos) > _ENUM_LIMIT:
            raise SizeOverflow("generator enumeration exceeds the limit")
        for vec in itertools.product(range(spec.q), repeat=len(monos)):
            lead = next((v for v in vec if v), 0)
            if lead != 1:
                continue
            forms.append(Polynomial(spec, vars, {
                monos[mi]: elems[v] for mi, v in enumerate(vec) if v}))
    candidates = itertools.chain(
        ((g,) for g in forms),
        itertools.combinations(forms, 2))
    gamma = gamma_q_star(cfg)
    for gens in candidates:
        I = Ideal(spec, vars, gens)
        if not zero_set(I, spec, PROJECTIVE).points:
            continue
        J = ideal_sum(I, gamma)
        d = degree_bound(I, spec.q)
        colon = reduced(ideal_quotient(J, power_ideal(spec, vars, d)))
        if colon.gb().gens == J.gb().gens:
            continue
        jbasis = J.gb()
        witness = next(g for g in colon.gens
                       if not normal_form(g, jbasis).is_zero)
        if not radical_membership(witness, J) or J.contains(witness):
            continue
        return NonRadicalInstance(I, witness, J)
    return None
