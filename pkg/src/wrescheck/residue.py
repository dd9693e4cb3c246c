"""Sphere-moment integration and the residue-density pipeline.

Densities are reported in units of 2^m * Vol(S^(n-1)): a jet integrates to
sum over terms of (normalized trace of the coefficient) * (monomial moment
of the sphere), with every ||xi||-power set to 1 on the sphere.  In these
units the flat calibration jet Id * ||xi||^(-n) integrates to exactly 1.

The two evaluation routes for the second residue piece:

* transcribed: hand-transcribed product symbols times the transcribed
  inverse-power symbols, split into the six composition contributions
  H1..H6 (order-zero pairings, the two first-derivative pairings, and the
  second xi-derivative against the x-quadratic leading symbol);
* oracle: generic asymptotic composition of the raw operator families.

They must agree exactly; that agreement is the engine's core guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .clifford import CliffordElement, clifford_of, normalized_trace
from .errors import ContractError, DimensionError, IntegrityError
from .geometry import PointGeometry
from .jets import (
    SymbolJet,
    SymbolTerm,
    compose,
    d_x,
    d_xi,
    dirac_jets,
    empty_jet,
    eval_x0,
    jet_product,
    laplace_inverse_jets,
    laplace_inverse_pieces,
    multiplier_jet,
    riemann_gamma_pairs,
)
from .scalars import GaussianRational, TPoly

_F0 = Fraction(0)
_F1 = Fraction(1)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_moment(beta, n: int) -> Fraction:
    """Average of xi^beta over the unit sphere, as a multiple of the
    sphere volume: 0 for any odd exponent, else

        prod_i (beta_i - 1)!!  /  prod_{k=0}^{|beta|/2 - 1} (n + 2k).
    """
    if n < 2:
        raise DimensionError(f"sphere moments need n >= 2, got {n}")
    if any(b % 2 for b in beta):
        return _F0
    num = 1
    for b in beta:
        num *= _double_factorial(b - 1)
    den = 1
    for k in range(sum(beta) // 2):
        den *= n + 2 * k
    return Fraction(num, den)


def sphere_moment_oracle(beta, n: int) -> Fraction:
    """Independent route: ratio of Gaussian moments.

    A standard Gaussian factors into radius times a uniform sphere point,
    so the sphere average is E[x^beta] / E[r^|beta|]; both expectations are
    evaluated by their own recursions (1-d integration by parts and the
    chi-square radial recursion).
    """
    if n < 2:
        raise DimensionError(f"sphere moments need n >= 2, got {n}")
    if any(b % 2 for b in beta):
        return _F0
    num = _F1
    for b in beta:
        k = b
        while k >= 2:
            num *= k - 1
            k -= 2
    den = _F1
    k = sum(beta)
    while k >= 2:
        den *= n + k - 2
        k -= 2
    return num / den


class DensityValue:
    """Residue density at the base point: a real t-polynomial in units of
    2^m * Vol(S^(n-1))."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_tpoly(cls, p: TPoly) -> "DensityValue":
        for k, c in enumerate(p.coeffs):
            if c.im:
                raise IntegrityError(
                    f"density has nonzero imaginary part {c.im} at t^{k}"
                )
        return cls(tuple(c.re for c in p.coeffs))

    @classmethod
    def zero(cls) -> "DensityValue":
        return cls(())

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _F0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return DensityValue(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DensityValue(tuple(-c for c in self.coeffs))

    def scale(self, s) -> "DensityValue":
        s = Fraction(s)
        return DensityValue(tuple(s * c for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, DensityValue):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def eval(self, t: GaussianRational) -> GaussianRational:
        return TPoly([GaussianRational(c) for c in self.coeffs]).eval(t)

    def as_strings(self, powers: int = 3):
        return [str(self.coeff(k)) for k in range(powers)]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({c})t^{k}" if k else f"({c})"
            for k, c in enumerate(self.coeffs)
            if c
        )


def integrate_density(jet: SymbolJet) -> DensityValue:
    """Integrate the trace of a degree-(-n) jet over the unit cosphere.

    Contract: the jet must already be evaluated at the base point (no
    x-dependence left) and homogeneous of degree -n.  The result must be
    real; a nonzero imaginary part is a hard integrity error.
    """
    n = jet.n
    if jet.degree != -n:
        raise ContractError(
            f"integrand must be homogeneous of degree {-n}, got {jet.degree}"
        )
    total = TPoly(())
    for t in jet.terms:
        if any(t.x):
            raise ContractError("integrand still carries x-dependence")
        mom = sphere_moment(t.xi, n)
        if mom:
            total = total + normalized_trace(t.coeff).scale(mom)
    return DensityValue.from_tpoly(total)


# --- product symbols of the two first-order factors ----------------------


@lru_cache(maxsize=32)
def _cvw_matrices(g: PointGeometry, gammas):
    gam = tuple(gammas)
    cv = clifford_of([TPoly.constant(c) for c in g.v.value], gam)
    cw = clifford_of([TPoly.constant(c) for c in g.w.value], gam)
    return cv, cw


def transcribed_ab_symbols(g: PointGeometry, gammas):
    """Hand-transcribed product symbols {2, 1, 0} at the base point.

    With the connection coefficients vanishing at x0, the surviving terms
    are: the pure leading product; the fluctuation cross terms; the first
    derivative of the right factor's field coefficients; and the pinned
    curvature term -(1/8) R[j][p][s][t] c(v) g_j c(w) g_p g_s g_t.
    """
    return dict(_transcribed_ab_symbols(g, tuple(gammas)))


@lru_cache(maxsize=16)
def _transcribed_ab_symbols(g: PointGeometry, gammas):
    gam = gammas
    m = g.m
    n = g.n
    cv, cw = _cvw_matrices(g, gammas)
    y0 = g.y.value
    cy = clifford_of([TPoly.constant(c) for c in y0], gam)
    zero_x = (0,) * n
    t1 = TPoly.t_times(1)
    i_gr = GaussianRational(0, 1)

    def xi_mono(*coords):
        xi = [0] * n
        for c in coords:
            xi[c] += 1
        return tuple(xi)

    # degree 2: - c(v) c(xi) c(w) c(xi)
    terms2 = []
    cvf = [cv @ gam[f] for f in range(n)]
    for f in range(n):
        left = cvf[f] @ cw
        for gi in range(n):
            terms2.append(
                SymbolTerm((left @ gam[gi]).scale(Fraction(-1)), zero_x, xi_mono(f, gi), 0)
            )
    sigma2 = SymbolJet(m, 2, 0, terms2)

    # degree 1: i t [c(v) c(xi) c(w) c(Y) + c(v) c(Y) c(w) c(xi)]
    #           + i sum_j c(v) g_j c(d_j w) c(xi)
    terms1 = []
    it = t1.scale(i_gr)
    if any(y0):
        cvy_cw = (cv @ cy) @ cw
        for f in range(n):
            terms1.append(
                SymbolTerm(((cvf[f] @ cw) @ cy).scale(it), zero_x, xi_mono(f), 0)
            )
            terms1.append(
                SymbolTerm((cvy_cw @ gam[f]).scale(it), zero_x, xi_mono(f), 0)
            )
    for j in range(n):
        col = g.w.column(j)
        if any(col):
            cdw = clifford_of([TPoly.constant(c) for c in col], gam)
            base = cvf[j] @ cdw
            for f in range(n):
                terms1.append(
                    SymbolTerm((base @ gam[f]).scale(i_gr), zero_x, xi_mono(f), 0)
                )
    sigma1 = SymbolJet(m, 1, 0, terms1)

    # degree 0: t^2 c(v)c(Y)c(w)c(Y)
    #           - (1/8) sum R[j][p][s][t] c(v) g_j c(w) g_p g_s g_t
    #           + t sum_j c(v) g_j c(d_j w) c(Y) + t sum_j c(v) g_j c(w) c(d_j Y)
    terms0 = []
    if any(y0):
        terms0.append(
            SymbolTerm(
                (((cv @ cy) @ cw) @ cy).scale(TPoly((GaussianRational(0), GaussianRational(0), GaussianRational(1)))),
                zero_x,
                zero_x,
                0,
            )
        )
    inner = riemann_gamma_pairs(g, gammas)
    for j in range(n):
        left = cvf[j] @ cw
        acc = CliffordElement.zero(m)
        for p_ in range(n):
            if not inner[j][p_].is_zero:
                acc = acc + (gam[p_] @ inner[j][p_]).scale(Fraction(-1, 8))
        if not acc.is_zero:
            terms0.append(SymbolTerm(left @ acc, zero_x, zero_x, 0))
        colw = g.w.column(j)
        if any(colw) and any(y0):
            cdw = clifford_of([TPoly.constant(c) for c in colw], gam)
            terms0.append(
                SymbolTerm(((cvf[j] @ cdw) @ cy).scale(t1), zero_x, zero_x, 0)
            )
        coly = g.y.column(j)
        if any(coly):
            cdy = clifford_of([TPoly.constant(c) for c in coly], gam)
            terms0.append(
                SymbolTerm((left @ cdy).scale(t1), zero_x, zero_x, 0)
            )
    sigma0 = SymbolJet(m, 0, 0, terms0)

    return ((2, sigma2), (1, sigma1), (0, sigma0))


def factor_families(g: PointGeometry, gammas):
    """The graded symbol families of the two first-order factors, built as
    multiplication jets times the Dirac jets."""
    dj = dirac_jets(g, gammas)
    mv = multiplier_jet(g.v, gammas)
    mw = multiplier_jet(g.w, gammas)
    a_fam = {1: jet_product(mv, dj[1]), 0: jet_product(mv, dj[0])}
    b_fam = {1: jet_product(mw, dj[1]), 0: jet_product(mw, dj[0])}
    return a_fam, b_fam


def composed_ab_symbols(g: PointGeometry, gammas, out_x_order: int = 0):
    """Product symbols {2, 1, 0} by generic composition (oracle route).

    Composed at the base point (x-order 0) by default: nothing downstream
    differentiates these in x, so higher Taylor terms would be discarded
    unread.
    """
    return dict(_composed_ab_symbols(g, tuple(gammas), out_x_order))


@lru_cache(maxsize=16)
def _composed_ab_symbols(g: PointGeometry, gammas, out_x_order: int):
    a_fam, b_fam = factor_families(g, gammas)
    return tuple(
        (d, compose(a_fam, b_fam, d, max_alpha=2, out_x_order=out_x_order))
        for d in (2, 1, 0)
    )


# --- the residue pieces ---------------------------------------------------


def _require_m(g: PointGeometry):
    if g.m < 2:
        raise DimensionError("residue densities need m >= 2")


def part1_subjets(g: PointGeometry, gammas):
    """The six sub-integrands of the multiplication piece, keyed like the
    inverse-symbol pieces they come from."""
    _require_m(g)
    cv, cw = _cvw_matrices(g, gammas)
    cvw = cv @ cw
    _, pieces = laplace_inverse_pieces(g, g.m - 1, gammas)
    out = {}
    for key, jet in pieces.items():
        out[key] = SymbolJet(
            g.m,
            jet.degree,
            0,
            [SymbolTerm(cvw @ t.coeff, t.x, t.xi, t.norm) for t in jet.terms],
        )
    return out


def part1_subintegrals(g: PointGeometry, gammas):
    return {k: integrate_density(j) for k, j in part1_subjets(g, gammas).items()}


def part1_density(g: PointGeometry, gammas) -> DensityValue:
    """Density of the multiplication piece c(v)c(w) against the inverse
    power one below the full one.  Only the order-zero pairing survives
    because the left symbol is xi-independent."""
    total = DensityValue.zero()
    for v in part1_subintegrals(g, gammas).values():
        total = total + v
    return total


def h_jets(g: PointGeometry, gammas, ab=None):
    """The six graded contributions to the degree-(-n) symbol of the full
    product, as jets evaluated at the base point."""
    _require_m(g)
    m = g.m
    n = g.n
    if ab is None:
        ab = transcribed_ab_symbols(g, gammas)
    lap = laplace_inverse_jets(g, m, gammas)
    j0, j1, j2 = lap[-2 * m], lap[-2 * m - 1], lap[-2 * m - 2]
    minus_i = GaussianRational(0, -1)

    h1 = jet_product(ab[0], eval_x0(j0), out_x_order=0)
    h2 = jet_product(ab[1], eval_x0(j1), out_x_order=0)
    h3 = jet_product(ab[2], j2, out_x_order=0)

    h4 = empty_jet(m, -n, 0)
    for j in range(n):
        left = d_xi(ab[2], j)
        if left.is_zero:
            continue
        right = eval_x0(d_x(j1, j))
        if right.is_zero:
            continue
        h4 = h4 + jet_product(left, right, out_x_order=0).scale(minus_i)

    h5 = empty_jet(m, -n, 0)
    for j in range(n):
        left = d_xi(ab[1], j)
        if left.is_zero:
            continue
        right = eval_x0(d_x(j0, j))
        if right.is_zero:
            continue
        h5 = h5 + jet_product(left, right, out_x_order=0).scale(minus_i)

    h6 = empty_jet(m, -n, 0)
    for j in range(n):
        dj = d_xi(ab[2], j)
        if dj.is_zero:
            continue
        dxj = d_x(j0, j)
        for l in range(n):
            left = d_xi(dj, l)
            if left.is_zero:
                continue
            right = eval_x0(d_x(dxj, l))
            if right.is_zero:
                continue
            h6 = h6 + jet_product(left, right, out_x_order=0).scale(Fraction(-1, 2))

    return [h1, h2, h3, h4, h5, h6]


def h_terms(g: PointGeometry, gammas):
    """The six integrated contributions; the fifth vanishes identically
    because the leading inverse symbol has no x-linear part."""
    return [integrate_density(j) for j in h_jets(g, gammas)]


def part2_density(g: PointGeometry, gammas) -> DensityValue:
    total = DensityValue.zero()
    for v in h_terms(g, gammas):
        total = total + v
    return total


def oracle_part2(g: PointGeometry, gammas) -> DensityValue:
    """Same quantity by generic composition end to end: compose the factor
    families into product symbols, then compose against the inverse-power
    family and integrate."""
    _require_m(g)
    m = g.m
    ab = {d: eval_x0(j) for d, j in composed_ab_symbols(g, gammas).items()}
    lap = laplace_inverse_jets(g, m, gammas)
    full = compose(ab, lap, -2 * m, max_alpha=2, out_x_order=0)
    return integrate_density(eval_x0(full))


def einstein_density(g: PointGeometry, gammas) -> DensityValue:
    """Total density: multiplication piece plus the six graded pieces."""
    return part1_density(g, gammas) + part2_density(g, gammas)


@dataclass
class DensityReport:
    """Per-geometry breakdown: engine values, closed-form counterparts and
    their differences per power of t."""

    m: int
    part1: DensityValue
    part1_breakdown: dict
    h: list
    part2: DensityValue
    total: DensityValue
    oracle_part2_value: DensityValue
    closed_forms: dict = field(default_factory=dict)
    diffs: dict = field(default_factory=dict)
    trace_claims: list = field(default_factory=list)
    internal_checks: list = field(default_factory=list)

    @property
    def internal_pass(self) -> bool:
        return all(ok for _, ok, _ in self.internal_checks)

    @property
    def paper_match(self) -> bool:
        # engine-versus-printed only; keys starting with "printed_" compare
        # the printed pieces among themselves and do not involve the engine
        return all(
            v.is_zero for k, v in self.diffs.items() if not k.startswith("printed_")
        ) and all(diff == 0 for _, _, _, diff in self.trace_claims)
