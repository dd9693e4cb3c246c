"""Truncated pseudodifferential symbol jets at the base point.

A jet is a finite sum of terms

    (matrix coefficient) * x^a * xi^b * ||xi||^(-k)

of one fixed xi-homogeneity (|b| - k), with the x-Taylor order truncated
at 2 globally.  ||xi||-powers stay symbolic; only the sphere integration
step sets ||xi|| = 1.  Jets are immutable and canonical: terms with equal
(x, xi, ||xi||-power) keys are merged and zero terms dropped.

Sign conventions that the whole engine hangs on are centralized here:

* leading Dirac symbol  i * c(xi);
* the x-linear curvature coefficient of the order-zero Dirac symbol is
      -(1/8) sum_{p,s,t} R[b][p][s][t] gamma_p gamma_s gamma_t
  per coordinate b.  This is the unique sign for which the transcribed
  product symbols agree with generic composition AND the worked
  constant-curvature values come out right; see CONVENTIONS.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .clifford import CliffordElement, clifford_of
from .errors import ContractError, DimensionError, TruncationError
from .geometry import PointGeometry, connection_data, ricci
from .scalars import (
    GR_MINUS_I,
    GR_ONE,
    GaussianRational,
    TPoly,
)


class SymbolTerm:
    __slots__ = ("coeff", "x", "xi", "norm")

    def __init__(self, coeff: CliffordElement, x, xi, norm: int):
        self.coeff = coeff
        self.x = tuple(x)
        self.xi = tuple(xi)
        self.norm = norm
        if norm < 0 or norm % 2:
            raise ContractError(f"||xi||-power must be even and >= 0, got {norm}")

    @property
    def homogeneity(self) -> int:
        return sum(self.xi) - self.norm

    @property
    def x_order(self) -> int:
        return sum(self.x)

    def key(self):
        return (self.x, self.xi, self.norm)

    def __repr__(self):
        return f"Term(x={self.x}, xi={self.xi}, |xi|^-{self.norm})"


class SymbolJet:
    """Canonical truncated symbol of one xi-homogeneity."""

    __slots__ = ("m", "n", "degree", "max_x_order", "terms")

    def __init__(self, m: int, degree: int, max_x_order: int, terms=()):
        self.m = m
        self.n = 2 * m
        self.degree = degree
        self.max_x_order = max_x_order
        merged = {}
        for t in terms:
            if len(t.x) != self.n or len(t.xi) != self.n:
                raise DimensionError("term multi-indices must have length n")
            if t.homogeneity != degree:
                raise ContractError(
                    f"term homogeneity {t.homogeneity} != jet degree {degree}"
                )
            if t.x_order > max_x_order:
                continue  # beyond the certified Taylor order: drop by contract
            k = t.key()
            if k in merged:
                merged[k] = merged[k] + t.coeff
            else:
                merged[k] = t.coeff
        canon = []
        for k in sorted(merged):
            c = merged[k]
            if not c.is_zero:
                canon.append(SymbolTerm(c, *k))
        self.terms = tuple(canon)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SymbolJet):
            return NotImplemented
        return (
            self.m == other.m
            and self.degree == other.degree
            and [(t.key(), t.coeff) for t in self.terms]
            == [(t.key(), t.coeff) for t in other.terms]
        )

    def __repr__(self):
        return (
            f"SymbolJet(degree={self.degree}, x<= {self.max_x_order}, "
            f"{len(self.terms)} terms)"
        )

    def scale(self, s) -> "SymbolJet":
        return SymbolJet(
            self.m,
            self.degree,
            self.max_x_order,
            [SymbolTerm(t.coeff.scale(s), t.x, t.xi, t.norm) for t in self.terms],
        )

    def __add__(self, other):
        if self.degree != other.degree and not (self.is_zero or other.is_zero):
            raise ContractError("adding jets of different degree")
        degree = other.degree if self.is_zero else self.degree
        return SymbolJet(
            self.m,
            degree,
            min(self.max_x_order, other.max_x_order),
            list(self.terms) + list(other.terms),
        )

    def __neg__(self):
        return self.scale(Fraction(-1))


def empty_jet(m: int, degree: int, max_x_order: int = 2) -> SymbolJet:
    return SymbolJet(m, degree, max_x_order)


def jet_product(a: SymbolJet, b: SymbolJet, out_x_order: int = 2) -> SymbolJet:
    """Pointwise noncommutative product, truncated at x-order 2.

    Degrees and ||xi||-powers add; matrix coefficients multiply in order
    (left factor first).  Terms whose combined x-order exceeds the cap are
    dropped, per the jet contract.
    """
    if a.m != b.m:
        raise DimensionError("jet product across different spinor dimensions")
    cap = min(2, a.max_x_order + b.max_x_order, out_x_order)
    terms = []
    for ta in a.terms:
        xa = ta.x_order
        for tb in b.terms:
            if xa + tb.x_order > cap:
                continue
            terms.append(
                SymbolTerm(
                    ta.coeff @ tb.coeff,
                    tuple(p + q for p, q in zip(ta.x, tb.x)),
                    tuple(p + q for p, q in zip(ta.xi, tb.xi)),
                    ta.norm + tb.norm,
                )
            )
    return SymbolJet(a.m, a.degree + b.degree, cap, terms)


def d_xi(a: SymbolJet, j: int) -> SymbolJet:
    """xi-derivative along coordinate j; drops the degree by one.

    Leibniz over the xi-monomial and the ||xi||-power, with
    d/dxi_j ||xi||^(-k) = -k xi_j ||xi||^(-k-2).
    """
    terms = []
    for t in a.terms:
        e = t.xi[j]
        if e:
            xi = list(t.xi)
            xi[j] = e - 1
            terms.append(SymbolTerm(t.coeff.scale(Fraction(e)), t.x, xi, t.norm))
        if t.norm:
            xi = list(t.xi)
            xi[j] = xi[j] + 1
            terms.append(
                SymbolTerm(t.coeff.scale(Fraction(-t.norm)), t.x, xi, t.norm + 2)
            )
    return SymbolJet(a.m, a.degree - 1, a.max_x_order, terms)


def d_x(a: SymbolJet, j: int) -> SymbolJet:
    """x-derivative along coordinate j; lowers the certified x-order."""
    terms = []
    for t in a.terms:
        e = t.x[j]
        if e:
            x = list(t.x)
            x[j] = e - 1
            terms.append(SymbolTerm(t.coeff.scale(Fraction(e)), x, t.xi, t.norm))
    return SymbolJet(a.m, a.degree, max(a.max_x_order - 1, 0), terms)


def eval_x0(a: SymbolJet) -> SymbolJet:
    """Keep only the x-independent part (evaluation at the base point)."""
    return SymbolJet(
        a.m, a.degree, 0, [t for t in a.terms if not any(t.x)]
    )


def _multi_indices(n: int, k: int):
    """All multi-indices over n coordinates with total order k."""
    if k == 0:
        yield (0,) * n
        return
    for combo in itertools.combinations_with_replacement(range(n), k):
        alpha = [0] * n
        for c in combo:
            alpha[c] += 1
        yield tuple(alpha)


def _alpha_factorial(alpha) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


def compose(a_family, b_family, target_degree: int, max_alpha: int,
            out_x_order: int = 2) -> SymbolJet:
    """Asymptotic composition, collected at one target homogeneity.

    sigma_target = sum over (i, j, alpha) with i + j - |alpha| = target of
        ((-i)^|alpha| / alpha!) * d_xi^alpha sigma_i(a) * d_x^alpha sigma_j(b),

    truncated and evaluated as jets.  Raises TruncationError when a needed
    x-derivative exceeds the certified Taylor order of the right family.
    """
    items_a = sorted(a_family.items())
    items_b = sorted(b_family.items())
    if not items_a or not items_b:
        raise ContractError("compose needs nonempty graded families")
    m = items_a[0][1].m
    n = items_a[0][1].n
    terms = []
    min_cert = out_x_order
    dxi_cache = {}
    dx_cache = {}

    def dxi_alpha(i, ja, alpha):
        if not any(alpha):
            return ja
        key = (i, alpha)
        if key not in dxi_cache:
            coord = next(c for c, mult in enumerate(alpha) if mult)
            prev = list(alpha)
            prev[coord] -= 1
            prev = tuple(prev)
            base = dxi_alpha(i, ja, prev) if any(prev) else ja
            dxi_cache[key] = d_xi(base, coord)
        return dxi_cache[key]

    def dx_alpha(j, jb, alpha):
        key = (j, alpha)
        if key not in dx_cache:
            # peel one derivative so lower-order results are shared
            coord = next(c for c, mult in enumerate(alpha) if mult)
            prev = list(alpha)
            prev[coord] -= 1
            prev = tuple(prev)
            if any(prev):
                base = dx_alpha(j, jb, prev)
            else:
                base = jb
            dx_cache[key] = d_x(base, coord)
        return dx_cache[key]

    for i, ja in items_a:
        for j, jb in items_b:
            k = i + j - target_degree
            if k < 0 or k > max_alpha:
                continue
            for alpha in _multi_indices(n, k):
                left = dxi_alpha(i, ja, alpha)
                if left.is_zero:
                    continue
                if k > jb.max_x_order:
                    raise TruncationError(
                        f"composition needs {k} x-derivatives of the degree-{j} "
                        f"symbol, but it is certified only to x-order {jb.max_x_order}"
                    )
                right = jb if k == 0 else dx_alpha(j, jb, alpha)
                if right.is_zero:
                    continue
                piece = jet_product(left, right, out_x_order)
                min_cert = min(min_cert, piece.max_x_order)
                if k:
                    factor = (GR_MINUS_I ** k) * GaussianRational(
                        Fraction(1, _alpha_factorial(alpha))
                    )
                    terms.extend(
                        SymbolTerm(t.coeff.scale(factor), t.x, t.xi, t.norm)
                        for t in piece.terms
                    )
                else:
                    terms.extend(piece.terms)
    return SymbolJet(m, target_degree, min_cert, terms)


# --- symbol constructors -------------------------------------------------


def riemann_gamma_pairs(g: PointGeometry, gammas):
    """inner[j][p] = sum_{s,t} R[j][p][s][t] gamma_s gamma_t (cached pairs)."""
    return _riemann_gamma_pairs(g, tuple(gammas))


@lru_cache(maxsize=16)
def _riemann_gamma_pairs(g: PointGeometry, gammas):
    n = g.n
    R = g.riemann.comp
    gam = tuple(gammas)
    pairs = [[gam[s] @ gam[t] for t in range(n)] for s in range(n)]
    inner = []
    for j in range(n):
        row = []
        for p in range(n):
            acc = CliffordElement.zero(g.m)
            for s in range(n):
                for t in range(n):
                    c = R[j][p][s][t]
                    if c:
                        acc = acc + pairs[s][t].scale(Fraction(c))
            row.append(acc)
        inner.append(row)
    return inner


def dirac_jets(g: PointGeometry, gammas):
    """Graded symbols {1: sigma_1, 0: sigma_0} of the fluctuated Dirac
    operator, with x-order 1.

    sigma_1 = i c(xi), x-independent to this order.  sigma_0 carries the
    constant fluctuation part t c(Y(x0)) and the x-linear part: the pinned
    curvature coefficient plus t c(d_b Y) per coordinate.
    """
    return dict(_dirac_jets(g, tuple(gammas)))


@lru_cache(maxsize=16)
def _dirac_jets(g: PointGeometry, gammas):
    n = g.n
    m = g.m
    gam = tuple(gammas)
    zero_x = (0,) * n

    terms1 = []
    for a in range(n):
        xi = [0] * n
        xi[a] = 1
        terms1.append(SymbolTerm(gam[a].scale(GaussianRational(0, 1)), zero_x, xi, 0))
    sigma1 = SymbolJet(m, 1, 1, terms1)

    terms0 = []
    y0 = g.y.value
    if any(y0):
        cy = clifford_of([TPoly.constant(c) for c in y0], gam)
        terms0.append(SymbolTerm(cy.scale(TPoly.t_times(1)), zero_x, zero_x, 0))
    inner = riemann_gamma_pairs(g, gammas)
    for b in range(n):
        coeff = CliffordElement.zero(m)
        for p in range(n):
            if not inner[b][p].is_zero:
                coeff = coeff + (gam[p] @ inner[b][p]).scale(Fraction(-1, 8))
        col = g.y.column(b)
        if any(col):
            cdy = clifford_of([TPoly.constant(c) for c in col], gam)
            coeff = coeff + cdy.scale(TPoly.t_times(1))
        if not coeff.is_zero:
            x = [0] * n
            x[b] = 1
            terms0.append(SymbolTerm(coeff, x, zero_x, 0))
    sigma0 = SymbolJet(m, 0, 1, terms0)
    return ((1, sigma1), (0, sigma0))


def multiplier_jet(f, gammas) -> SymbolJet:
    """Degree-0 symbol of the multiplication operator c(f(x)), x-order 1."""
    gam = tuple(gammas)
    m = gam[0].m
    n = 2 * m
    if f.n != n:
        raise DimensionError("vector jet dimension does not match gammas")
    zero_x = (0,) * n
    terms = []
    if any(f.value):
        terms.append(
            SymbolTerm(
                clifford_of([TPoly.constant(c) for c in f.value], gam),
                zero_x,
                zero_x,
                0,
            )
        )
    for b in range(n):
        col = f.column(b)
        if any(col):
            x = [0] * n
            x[b] = 1
            terms.append(
                SymbolTerm(
                    clifford_of([TPoly.constant(c) for c in col], gam), x, zero_x, 0
                )
            )
    return SymbolJet(m, 0, 1, terms)


def laplace_inverse_jets(g: PointGeometry, p: int, gammas):
    """Transcribed inverse-power symbols of the fluctuated Laplacian.

    Returns {-2p: leading (x-order 2), -2p-1: subleading (x-order 1),
    -2p-2: sub-subleading (x-order 0)}.
    """
    jets, _ = laplace_inverse_pieces(g, p, gammas)
    return jets


def laplace_inverse_pieces(g: PointGeometry, p: int, gammas):
    """Same as laplace_inverse_jets, plus the named sub-subleading pieces.

    Piece keys: ric_xixi, fluct_fluct_xixi, fluct_diag, fluct_jet_xixi,
    riem_xixi, endo.  Their sum is the sub-subleading jet.
    """
    jets, pieces = _laplace_inverse_pieces(g, p, tuple(gammas))
    return dict(jets), dict(pieces)


@lru_cache(maxsize=16)
def _laplace_inverse_pieces(g: PointGeometry, p: int, gammas):
    if p < 1:
        raise DimensionError(f"inverse power p={p} must be >= 1")
    n = g.n
    m = g.m
    gam = tuple(gammas)
    cd = connection_data(g, gam)
    ric = ricci(g.riemann)
    R = g.riemann.comp
    zero_x = (0,) * n
    ident = CliffordElement.identity(m)

    def xi_mono(a, b=None):
        xi = [0] * n
        xi[a] += 1
        if b is not None:
            xi[b] += 1
        return tuple(xi)

    # leading, degree -2p, x-order 2
    lead_terms = []
    for a in range(n):
        lead_terms.append(SymbolTerm(ident, zero_x, xi_mono(a, a), 2 * p + 2))
    quad = {}
    third = Fraction(-p, 3)
    for a in range(n):
        for b in range(n):
            for j in range(n):
                Rajb = R[a][j][b]
                for k in range(n):
                    c = Rajb[k]
                    if c:
                        x = [0] * n
                        x[j] += 1
                        x[k] += 1
                        key = (tuple(x), xi_mono(a, b))
                        quad[key] = quad.get(key, Fraction(0)) + third * c
    for (x, xi), c in quad.items():
        if c:
            lead_terms.append(
                SymbolTerm(CliffordElement.scalar_matrix(m, c), x, xi, 2 * p + 2)
            )
    leading = SymbolJet(m, -2 * p, 2, lead_terms)

    # subleading, degree -2p-1, x-order 1
    sub_terms = []
    minus_2pi = GaussianRational(0, -2 * p)
    for a in range(n):
        for k in range(n):
            c = ric[a][k]
            if c:
                x = [0] * n
                x[k] = 1
                sub_terms.append(
                    SymbolTerm(
                        CliffordElement.scalar_matrix(
                            m, TPoly.constant(GaussianRational(0, Fraction(-2 * p, 3)) * c)
                        ),
                        x,
                        xi_mono(a),
                        2 * p + 2,
                    )
                )
        Ta = cd.T[a]
        if Ta:
            sub_terms.append(
                SymbolTerm(
                    CliffordElement.scalar_matrix(m, Ta.scale(minus_2pi)),
                    zero_x,
                    xi_mono(a),
                    2 * p + 2,
                )
            )
        for b in range(n):
            Tab = cd.Tx[a][b]
            if not Tab.is_zero:
                x = [0] * n
                x[b] = 1
                sub_terms.append(
                    SymbolTerm(Tab.scale(minus_2pi), x, xi_mono(a), 2 * p + 2)
                )
    subleading = SymbolJet(m, -2 * p - 1, 1, sub_terms)

    # sub-subleading, degree -2p-2, x-order 0, in named pieces
    def piece(terms):
        return SymbolJet(m, -2 * p - 2, 0, terms)

    ric_terms = []
    coeff_ric = Fraction(p * (p + 1), 3)
    for a in range(n):
        for b in range(n):
            c = ric[a][b]
            if c:
                ric_terms.append(
                    SymbolTerm(
                        CliffordElement.scalar_matrix(m, coeff_ric * c),
                        zero_x,
                        xi_mono(a, b),
                        2 * p + 4,
                    )
                )

    ff_terms = []
    for a in range(n):
        for b in range(n):
            prod = cd.T[a] * cd.T[b]
            if prod:
                ff_terms.append(
                    SymbolTerm(
                        CliffordElement.scalar_matrix(
                            m, prod.scale(Fraction(-2 * p * (p + 1)))
                        ),
                        zero_x,
                        xi_mono(a, b),
                        2 * p + 4,
                    )
                )

    diag = CliffordElement.zero(m)
    for a in range(n):
        sq = cd.T[a] * cd.T[a]
        if sq:
            diag = diag + CliffordElement.scalar_matrix(m, sq)
        diag = diag - cd.Tx[a][a]
    diag_terms = []
    if not diag.is_zero:
        diag_terms.append(
            SymbolTerm(diag.scale(Fraction(p)), zero_x, zero_x, 2 * p + 2)
        )

    jet_terms = []
    riem_terms = []
    coeff_tab = Fraction(2 * p * (p + 1))
    for a in range(n):
        for b in range(n):
            fl = cd.tx_fluct[a][b]
            if not fl.is_zero:
                jet_terms.append(
                    SymbolTerm(fl.scale(coeff_tab), zero_x, xi_mono(a, b), 2 * p + 4)
                )
            rm = cd.tx_riem[a][b]
            if not rm.is_zero:
                riem_terms.append(
                    SymbolTerm(rm.scale(coeff_tab), zero_x, xi_mono(a, b), 2 * p + 4)
                )

    endo_terms = []
    if not cd.E.is_zero:
        endo_terms.append(
            SymbolTerm(cd.E.scale(Fraction(p)), zero_x, zero_x, 2 * p + 2)
        )

    pieces = {
        "ric_xixi": piece(ric_terms),
        "fluct_fluct_xixi": piece(ff_terms),
        "fluct_diag": piece(diag_terms),
        "fluct_jet_xixi": piece(jet_terms),
        "riem_xixi": piece(riem_terms),
        "endo": piece(endo_terms),
    }
    sub_sub = piece([])
    for key in sorted(pieces):
        sub_sub = sub_sub + pieces[key]

    jets = ((-2 * p, leading), (-2 * p - 1, subleading), (-2 * p - 2, sub_sub))
    return jets, tuple(sorted(pieces.items()))


# --- test-support normal form -------------------------------------------


def radial_expand(jet: SymbolJet):
    """Expand every ||xi||^-k against the maximal power so jets can be
    compared as honest functions: multiply each term by (sum_a xi_a^2)^e
    with e = (K - k)/2, K the maximal ||xi||-power present.

    Returns (K, {(x, xi): coefficient}) with zero coefficients dropped.
    """
    K = max((t.norm for t in jet.terms), default=0)
    n = jet.n
    out = {}
    for t in jet.terms:
        e = (K - t.norm) // 2
        for combo in itertools.combinations_with_replacement(range(n), e):
            counts = {}
            for c in combo:
                counts[c] = counts.get(c, 0) + 1
            mult = factorial(e)
            for c in counts.values():
                mult //= factorial(c)
            xi = list(t.xi)
            for c, cnt in counts.items():
                xi[c] += 2 * cnt
            key = (t.x, tuple(xi))
            add = t.coeff.scale(Fraction(mult))
            out[key] = out[key] + add if key in out else add
    return K, {k: v for k, v in out.items() if not v.is_zero}


def jets_equal_mod_radial(a: SymbolJet, b: SymbolJet) -> bool:
    """Equality as functions, i.e. modulo sum_a xi_a^2 = ||xi||^2."""
    if a.is_zero and b.is_zero:
        return True
    if a.degree != b.degree:
        return False
    diff = a + b.scale(Fraction(-1))
    _, rest = radial_expand(diff)
    return not rest
