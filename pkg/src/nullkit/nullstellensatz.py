"""Closed formulas for vanishing ideals over a finite point field.

Everything here is parameterized by a NullConfig: the coefficient field
of the ring, the field the points live in (of size q), and the ambient
variable list.  The affine vanishing ideal is I plus the field equations
X_i^q - X_i.  The projective one comes in three interchangeable ways:

  colon       (I + Gamma_q^*) : <X_0^d, ..., X_n^d> with
              d = (sum of generator degrees)(q - 1) + 1, one quotient;
  saturation  (I + Gamma_q^*) : <X_0, ..., X_n>^infinity, iterated;
  oracle      intersection of point ideals over the enumerated zero set.

An empty projective zero set is never answered with a unit ideal
silently; classify_empty names which branch of the dichotomy holds.
Certificates make the colon result constructive: for each j the pair
g_j, l_j splits X_j^d into a part inside I and a part vanishing off the
zero set, and for a member f the products give an explicit identity
X_j^d * f = g_j * f + l_j * f with g_j * f in I and l_j * f in
Gamma_q^*.
"""

import time
from dataclasses import dataclass, field as dc_field

from .errors import (
    ClassificationFailure,
    DimensionMismatch,
    EmptyVariety,
    FieldMismatch,
    InconsistentTower,
    NonHomogeneousGenerator,
    NotInVanishingIdeal,
    NullkitError,
    RingMismatch,
    ZeroGeneratorCount,
)
from .field import in_subfield_image, is_subfield
from .ideals import (
    Ideal,
    ideal_quotient,
    ideal_saturate,
    ideal_sum,
    is_homogeneous_ideal,
    reduced,
)
from .groebner import normal_form
from .poly import Polynomial
from .varieties import (
    AFFINE,
    PROJECTIVE,
    enumerate_space,
    oracle_vanishing_ideal,
    zero_set,
)

METHODS = ("colon", "saturation", "oracle")

NONEMPTY = "nonempty"
EMPTY_UNIT = "empty_unit"
EMPTY_IRRELEVANT = "empty_irrelevant"


@dataclass
class NullConfig:
    """Ring and point-field context for the vanishing-ideal formulas.

    k_spec carries the ring coefficients and K_spec the points; q always
    means the size of K_spec.  The two specs must sit in one tower: the
    usual case is k inside K, and a larger coefficient field on top of
    the point field covers the extension-scalars variant.
    """

    k_spec: object
    K_spec: object
    vars: tuple
    method: str = "colon"

    def __post_init__(self):
        self.vars = tuple(self.vars)
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if not (is_subfield(self.k_spec, self.K_spec)
                or is_subfield(self.K_spec, self.k_spec)):
            raise InconsistentTower(
                f"{self.k_spec} and {self.K_spec} do not form a tower")

    @property
    def q(self):
        return self.K_spec.q

    @property
    def n_vars(self):
        return len(self.vars)


@dataclass
class MethodReport:
    method: str
    wall_ms: float
    quotient_rounds: int
    gb_size: int
    degree_bound: int | None = None


def _check_ring(I, cfg):
    if I.spec is not cfg.k_spec or I.vars != cfg.vars:
        raise RingMismatch(
            f"{I} does not live in {cfg.k_spec}[{','.join(cfg.vars)}]")


def _check_coefficients(I, cfg):
    """Extension-scalars inputs must keep coefficients in the point field."""
    if cfg.k_spec is cfg.K_spec or is_subfield(cfg.k_spec, cfg.K_spec):
        return
    for g in I.gens:
        for c in g.terms.values():
            if not in_subfield_image(c, cfg.K_spec):
                raise FieldMismatch(
                    f"coefficient {c} of {g} lies outside the image of "
                    f"{cfg.K_spec}; mixed-coefficient inputs are rejected")


def _check_homogeneous_gens(I):
    for g in I.gens:
        if not g.is_homogeneous:
            raise NonHomogeneousGenerator(f"{g} is not homogeneous")


def gamma_q(cfg):
    """Field equations <X_i^q - X_i> of the point field, one per variable."""
    spec, vars, q = cfg.k_spec, cfg.vars, cfg.q
    gens = []
    for name in vars:
        x = Polynomial.variable(spec, vars, name)
        gens.append(x ** q - x)
    return Ideal(spec, vars, tuple(gens))


def gamma_q_star(cfg):
    """Homogeneous field equations <X_i^q X_j - X_j^q X_i> for i < j."""
    spec, vars, q = cfg.k_spec, cfg.vars, cfg.q
    gens = []
    for i in range(len(vars)):
        xi = Polynomial.variable(spec, vars, vars[i])
        for j in range(i + 1, len(vars)):
            xj = Polynomial.variable(spec, vars, vars[j])
            gens.append(xi ** q * xj - xj ** q * xi)
    return Ideal(spec, vars, tuple(gens))


def irrelevant_ideal(spec, vars):
    return Ideal(spec, vars, tuple(
        Polynomial.variable(spec, vars, v) for v in vars))


def power_ideal(spec, vars, d):
    return Ideal(spec, vars, tuple(
        Polynomial.variable(spec, vars, v) ** d for v in vars))


def affine_vanishing(I, cfg):
    """I(Z_K(I)) = I + Gamma_q, returned as a reduced basis.

    An empty zero set falls out as the unit ideal with no special case.
    """
    _check_ring(I, cfg)
    _check_coefficients(I, cfg)
    return reduced(ideal_sum(I, gamma_q(cfg)))


def degree_bound(I, q):
    """d = (d_1 + ... + d_r)(q - 1) + 1 over the stored generator list.

    The bound depends on the presentation, not just the ideal; zero
    generators contribute nothing.
    """
    total = 0
    for h in I.gens:
        if h.is_zero:
            continue
        if not h.is_homogeneous:
            raise NonHomogeneousGenerator(f"{h} is not homogeneous")
        total += h.total_degree()
    return total * (q - 1) + 1


def projective_vanishing(I, cfg, method=None):
    """I(V_K(I)) for a nonempty projective zero set, plus a run report."""
    _check_ring(I, cfg)
    _check_coefficients(I, cfg)
    _check_homogeneous_gens(I)
    method = cfg.method if method is None else method
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    V = zero_set(I, cfg.K_spec, PROJECTIVE)
    if not V.points:
        raise EmptyVariety(
            "the projective zero set is empty; use classify_empty")
    start = time.perf_counter()
    d = None
    if method == "colon":
        d = degree_bound(I, cfg.q)
        J = ideal_sum(I, gamma_q_star(cfg))
        result = ideal_quotient(J, power_ideal(cfg.k_spec, cfg.vars, d))
        rounds = 1
    elif method == "saturation":
        J = ideal_sum(I, gamma_q_star(cfg))
        result, rounds = ideal_saturate(
            J, irrelevant_ideal(cfg.k_spec, cfg.vars))
    else:
        result = oracle_vanishing_ideal(V, spec=cfg.k_spec, vars=cfg.vars)
        rounds = 0
    result = reduced(result)
    wall_ms = (time.perf_counter() - start) * 1000.0
    report = MethodReport(method, wall_ms, rounds, len(result.gens), d)
    return result, report


def classify_empty(I, cfg):
    """Which branch of the emptiness dichotomy holds for V_K(I).

    Returns "nonempty", "empty_unit" (1 lies in I) or "empty_irrelevant"
    (I plus the affine field equations is exactly the irrelevant
    maximal ideal).  Anything else raises ClassificationFailure loudly.
    """
    _check_ring(I, cfg)
    _check_coefficients(I, cfg)
    _check_homogeneous_gens(I)
    V = zero_set(I, cfg.K_spec, PROJECTIVE)
    if V.points:
        return NONEMPTY
    if I.gb().is_unit:
        return EMPTY_UNIT
    with_gamma = ideal_sum(I, gamma_q(cfg))
    m = irrelevant_ideal(cfg.k_spec, cfg.vars)
    if with_gamma.gb().gens == m.gb().gens:
        return EMPTY_IRRELEVANT
    raise ClassificationFailure(
        f"{I} has an empty zero set but fits neither branch")


@dataclass
class Certificate:
    """Split of X_j^d into g (inside I) and l (vanishing off V).

    After certify_membership the product fields are filled in:
    X_j^d * f = g * f + l * f with g * f in I and l * f in Gamma_q^*.
    """

    j: int
    d: int
    g: Polynomial
    l: Polynomial
    f: Polynomial | None = dc_field(default=None, repr=False)
    g_times_f: Polynomial | None = dc_field(default=None, repr=False)
    l_times_f: Polynomial | None = dc_field(default=None, repr=False)


def _certificate_parts(I, j, d, cfg):
    """g_j = X_j^d - X_j prod_i (X_j^{d_i(q-1)} - h_i^{q-1}) and its mate."""
    spec, vars, q = cfg.k_spec, cfg.vars, cfg.q
    xj = Polynomial.variable(spec, vars, vars[j])
    prod = Polynomial.constant(spec, vars, 1)
    for h in I.gens:
        if h.is_zero:
            continue
        di = h.total_degree()
        prod = prod * (xj ** (di * (q - 1)) - h ** (q - 1))
    head = xj ** d
    g = head - xj * prod
    return g, head - g


def make_certificate(I, j, cfg):
    """Certificate pair for index j, verified before it is returned."""
    _check_ring(I, cfg)
    _check_coefficients(I, cfg)
    _check_homogeneous_gens(I)
    if not 0 <= j < len(cfg.vars):
        raise DimensionMismatch(f"index {j} outside 0..{len(cfg.vars) - 1}")
    live = [h for h in I.gens if not h.is_zero]
    if not live or len(live) != len(I.gens):
        raise ZeroGeneratorCount(
            "certificates need at least one generator and no zero ones")
    V = zero_set(I, cfg.K_spec, PROJECTIVE)
    if not V.points:
        raise EmptyVariety("certificates need a nonempty zero set")
    d = degree_bound(I, cfg.q)
    g, l = _certificate_parts(I, j, d, cfg)
    _verify_certificate(I, j, d, g, l, V, cfg)
    return Certificate(j, d, g, l)


def _verify_certificate(I, j, d, g, l, V, cfg):
    xj = Polynomial.variable(cfg.k_spec, cfg.vars, cfg.vars[j])
    if g + l != xj ** d:
        raise NullkitError(f"certificate split for j={j} does not sum")
    if not g.is_homogeneous or (g and g.total_degree() != d):
        raise NullkitError(f"g_{j} is not homogeneous of degree {d}")
    if not I.contains(g):
        raise NullkitError(f"g_{j} fell outside the input ideal")
    in_v = set(V.points)
    space = enumerate_space(cfg.K_spec, len(cfg.vars) - 1, PROJECTIVE)
    for p in space.points:
        if p in in_v:
            if g.evaluate(p.coords):
                raise NullkitError(f"g_{j} does not vanish at {p}")
        elif l.evaluate(p.coords):
            raise NullkitError(f"l_{j} does not vanish at {p}")


def certify_membership(f, I, cfg):
    """Explicit identities placing f in the colon result, one per index.

    Accepts the degenerate zero ideal, where every g side collapses to
    zero and the l side carries everything.
    """
    _check_ring(I, cfg)
    _check_coefficients(I, cfg)
    _check_homogeneous_gens(I)
    if f.spec is not cfg.k_spec or f.vars != cfg.vars:
        raise RingMismatch(f"{f} does not live in the configured ring")
    if not f.is_homogeneous:
        raise NonHomogeneousGenerator(f"{f} is not homogeneous")
    if any(h.is_zero for h in I.gens):
        raise ZeroGeneratorCount("stored generators must be nonzero")
    vanishing, _ = projective_vanishing(I, cfg, method="colon")
    if not vanishing.contains(f):
        raise NotInVanishingIdeal(f"{f} is not in {vanishing}")
    V = zero_set(I, cfg.K_spec, PROJECTIVE)
    d = degree_bound(I, cfg.q)
    gamma_star_basis = ideal_sum(
        Ideal(cfg.k_spec, cfg.vars, ()), gamma_q_star(cfg)).gb()
    certs = []
    for j in range(len(cfg.vars)):
        g, l = _certificate_parts(I, j, d, cfg)
        _verify_certificate(I, j, d, g, l, V, cfg)
        gf = g * f
        lf = l * f
        xj = Polynomial.variable(cfg.k_spec, cfg.vars, cfg.vars[j])
        if gf + lf != xj ** d * f:
            raise NullkitError(f"membership split for j={j} does not sum")
        if not I.contains(gf):
            raise NullkitError(f"g_{j} * f fell outside the input ideal")
        if not normal_form(lf, gamma_star_basis).is_zero:
            raise NullkitError(f"l_{j} * f fell outside Gamma_q^*")
        certs.append(Certificate(j, d, g, l, f, gf, lf))
    return certs
