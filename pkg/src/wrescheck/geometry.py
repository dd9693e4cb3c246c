"""Pointwise geometric data at the base point in normal coordinates.

Holds an algebraic curvature tensor and first jets of the three vector
fields, plus the derived quantities every later stage consumes.  All
evaluation happens at the single point x0, where the metric is the
identity and the Christoffel symbols vanish; first derivatives of inner
products therefore reduce to jacobian contractions.

Ricci convention (pinned; see CONVENTIONS): Ric_bd = sum_a R_abad, so the
round metric of curvature +1 has Ric = (n-1) delta and s = n(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .clifford import CliffordElement, clifford_of
from .errors import CurvatureIdentityError, DimensionError
from .scalars import GR_ONE, TPoly, as_fraction

_F0 = Fraction(0)


class RiemannTensor:
    """Algebraic curvature tensor R[a][b][c][d] over an orthonormal frame."""

    __slots__ = ("n", "comp", "_violations")

    def __init__(self, n: int, comp):
        if n < 2 or n % 2:
            raise DimensionError(f"n={n} must be even and >= 2")
        self.n = n
        self.comp = tuple(
            tuple(
                tuple(tuple(as_fraction(x) for x in row2) for row2 in row1)
                for row1 in row0
            )
            for row0 in comp
        )
        if len(self.comp) != n or any(
            len(r1) != n or any(len(r2) != n or len(r3) != n for r2 in r1 for r3 in r2)
            for r1 in self.comp
        ):
            raise DimensionError("riemann component array must be n^4")
        self._violations = None

    @classmethod
    def zero(cls, n: int) -> "RiemannTensor":
        z = [[[[0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        return cls(n, z)

    def __getitem__(self, abcd):
        a, b, c, d = abcd
        return self.comp[a][b][c][d]

    def __eq__(self, other):
        return isinstance(other, RiemannTensor) and self.comp == other.comp

    def __hash__(self):
        return hash(self.comp)

    def scale(self, s) -> "RiemannTensor":
        s = as_fraction(s)
        return RiemannTensor(
            self.n,
            [
                [[[s * x for x in r3] for r3 in r2] for r2 in r1]
                for r1 in self.comp
            ],
        )


def kulkarni_nomizu_square(p_rows) -> RiemannTensor:
    """R_abcd = P_ac P_bd - P_ad P_bc for a symmetric matrix P.

    Always an algebraic curvature tensor (pair symmetries and first
    Bianchi hold identically); the identity matrix gives the constant
    curvature +1 tensor.
    """
    p = tuple(tuple(as_fraction(x) for x in row) for row in p_rows)
    n = len(p)
    comp = [[[[_F0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    comp[a][b][c][d] = p[a][c] * p[b][d] - p[a][d] * p[b][c]
    return RiemannTensor(n, comp)


def add_riemann(r1: RiemannTensor, r2: RiemannTensor) -> RiemannTensor:
    if r1.n != r2.n:
        raise DimensionError("adding curvature tensors of different dimension")
    n = r1.n
    return RiemannTensor(
        n,
        [
            [
                [
                    [r1.comp[a][b][c][d] + r2.comp[a][b][c][d] for d in range(n)]
                    for c in range(n)
                ]
                for b in range(n)
            ]
            for a in range(n)
        ],
    )


def validate(r: RiemannTensor):
    """Full list of violated identities, or [] when the tensor is admissible.

    Checks pair antisymmetries, the pair-exchange symmetry and the first
    Bianchi identity on every index combination.  Violations are data, not
    exceptions.
    """
    if r._violations is not None:
        return list(r._violations)
    out = []
    n = r.n
    c = r.comp
    for a in range(n):
        for b in range(n):
            for i in range(n):
                for j in range(n):
                    v = c[a][b][i][j]
                    if c[b][a][i][j] != -v:
                        out.append(
                            (
                                "pair-antisymmetry-first",
                                (a + 1, b + 1, i + 1, j + 1),
                                f"R[{b+1}][{a+1}][{i+1}][{j+1}] != -R[{a+1}][{b+1}][{i+1}][{j+1}]",
                            )
                        )
                    if c[a][b][j][i] != -v:
                        out.append(
                            (
                                "pair-antisymmetry-second",
                                (a + 1, b + 1, i + 1, j + 1),
                                f"R[{a+1}][{b+1}][{j+1}][{i+1}] != -R[{a+1}][{b+1}][{i+1}][{j+1}]",
                            )
                        )
                    if c[i][j][a][b] != v:
                        out.append(
                            (
                                "pair-exchange",
                                (a + 1, b + 1, i + 1, j + 1),
                                f"R[{i+1}][{j+1}][{a+1}][{b+1}] != R[{a+1}][{b+1}][{i+1}][{j+1}]",
                            )
                        )
                    if c[a][b][i][j] + c[a][i][j][b] + c[a][j][b][i] != 0:
                        out.append(
                            (
                                "first-bianchi",
                                (a + 1, b + 1, i + 1, j + 1),
                                "R[abij] + R[aijb] + R[ajbi] != 0",
                            )
                        )
    r._violations = tuple(out)
    return out


def _require_valid(r: RiemannTensor):
    bad = validate(r)
    if bad:
        raise CurvatureIdentityError(
            f"{len(bad)} curvature identity violations; first: {bad[0][2]}"
        )


@lru_cache(maxsize=64)
def ricci(r: RiemannTensor):
    """Ric_bd = sum_a R_abad, as an n x n tuple of Fractions."""
    _require_valid(r)
    n = r.n
    c = r.comp
    return tuple(
        tuple(sum((c[a][b][a][d] for a in range(n)), _F0) for d in range(n))
        for b in range(n)
    )


def scalar(r: RiemannTensor) -> Fraction:
    """Scalar curvature s = sum_b Ric_bb."""
    ric = ricci(r)
    return sum((ric[b][b] for b in range(r.n)), _F0)


class VectorJet:
    """Value and first derivatives of a vector field at x0.

    jacobian[a][b] is the derivative of component a along coordinate b.
    """

    __slots__ = ("value", "jacobian")

    def __init__(self, value, jacobian):
        self.value = tuple(as_fraction(x) for x in value)
        n = len(self.value)
        self.jacobian = tuple(
            tuple(as_fraction(x) for x in row) for row in jacobian
        )
        if len(self.jacobian) != n or any(len(row) != n for row in self.jacobian):
            raise DimensionError("jacobian must be n x n")

    @classmethod
    def zero(cls, n: int) -> "VectorJet":
        return cls((0,) * n, ((0,) * n,) * n)

    @classmethod
    def constant(cls, value) -> "VectorJet":
        n = len(value)
        return cls(value, ((0,) * n,) * n)

    @property
    def n(self) -> int:
        return len(self.value)

    def column(self, j: int):
        """The derivative vector along coordinate j."""
        return tuple(self.jacobian[a][j] for a in range(self.n))

    def scale(self, s) -> "VectorJet":
        s = as_fraction(s)
        return VectorJet(
            tuple(s * x for x in self.value),
            tuple(tuple(s * x for x in row) for row in self.jacobian),
        )

    def __add__(self, other):
        return VectorJet(
            tuple(a + b for a, b in zip(self.value, other.value)),
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.jacobian, other.jacobian)
            ),
        )

    def __eq__(self, other):
        return (
            isinstance(other, VectorJet)
            and self.value == other.value
            and self.jacobian == other.jacobian
        )

    def __hash__(self):
        return hash((self.value, self.jacobian))


@dataclass(frozen=True)
class PointGeometry:
    """All pointwise input data: curvature plus the jets of v, w, Y."""

    m: int
    riemann: RiemannTensor
    v: VectorJet
    w: VectorJet
    y: VectorJet

    def __post_init__(self):
        n = 2 * self.m
        if self.riemann.n != n:
            raise DimensionError(f"riemann has n={self.riemann.n}, expected {n}")
        for name in ("v", "w", "y"):
            if getattr(self, name).n != n:
                raise DimensionError(f"jet {name} has wrong dimension")

    @property
    def n(self) -> int:
        return 2 * self.m

    @classmethod
    def flat(cls, m: int, v=None, w=None, y=None) -> "PointGeometry":
        n = 2 * m
        z = VectorJet.zero(n)
        return cls(m, RiemannTensor.zero(n), v or z, w or z, y or z)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), _F0)


@dataclass(frozen=True)
class PointwiseData:
    """Derived first-order quantities at x0 (flat metric, no Christoffels)."""

    g_vw: Fraction
    div_y: Fraction
    nabla_v_w: tuple
    nabla_v_y: tuple
    nabla_w_y: tuple
    nabla_w_v: tuple
    w_of_g_vy: Fraction
    v_of_g_wy: Fraction
    g_vy: Fraction
    g_wy: Fraction
    y_norm2: Fraction
    div_v: Fraction
    div_w: Fraction


def _directional(x_value, z: VectorJet):
    """nabla_X Z at x0: components sum_b X_b * jacobian_Z[a][b]."""
    n = len(x_value)
    return tuple(
        sum((x_value[b] * z.jacobian[a][b] for b in range(n)), _F0) for a in range(n)
    )


@lru_cache(maxsize=64)
def pointwise_ops(g: PointGeometry) -> PointwiseData:
    v, w, y = g.v, g.w, g.y
    n = g.n
    nabla_v_w = _directional(v.value, w)
    nabla_w_v = _directional(w.value, v)
    nabla_v_y = _directional(v.value, y)
    nabla_w_y = _directional(w.value, y)
    # X(g(u, Y)) at x0 by the product rule with flat metric
    w_of_g_vy = _dot(nabla_w_v, y.value) + _dot(nabla_w_y, v.value)
    v_of_g_wy = _dot(nabla_v_w, y.value) + _dot(nabla_v_y, w.value)
    return PointwiseData(
        g_vw=_dot(v.value, w.value),
        div_y=sum((y.jacobian[a][a] for a in range(n)), _F0),
        nabla_v_w=nabla_v_w,
        nabla_v_y=nabla_v_y,
        nabla_w_y=nabla_w_y,
        nabla_w_v=nabla_w_v,
        w_of_g_vy=w_of_g_vy,
        v_of_g_wy=v_of_g_wy,
        g_vy=_dot(v.value, y.value),
        g_wy=_dot(w.value, y.value),
        y_norm2=_dot(y.value, y.value),
        div_v=sum((v.jacobian[a][a] for a in range(n)), _F0),
        div_w=sum((w.jacobian[a][a] for a in range(n)), _F0),
    )


@dataclass(frozen=True)
class ConnectionData:
    """Laplace-decomposition data of the fluctuated square at x0.

    T:  per-direction scalar part, degree <= 1 in t.
    Tx: per-(row, direction) matrix first derivative, degree <= 1 in t;
        split into its curvature part (tx_riem) and fluctuation-jet part
        (tx_fluct) so per-term breakdowns can keep them apart.
    E:  endomorphism at x0, degree <= 1 in t.
    """

    T: tuple
    Tx: tuple
    E: CliffordElement
    tx_riem: tuple
    tx_fluct: tuple


def connection_data(g: PointGeometry, gammas) -> ConnectionData:
    return _connection_data(g, tuple(gammas))


@lru_cache(maxsize=16)
def _connection_data(g: PointGeometry, gammas) -> ConnectionData:
    _require_valid(g.riemann)
    n = g.n
    m = g.m
    y = g.y
    R = g.riemann.comp
    gam = tuple(gammas)

    # T_a = -t * Y_a(x0), realized as a scalar t-polynomial
    T = tuple(TPoly.t_times(-y.value[a]) for a in range(n))

    # Tx[a][b] = -(1/8) sum_{s,t} R[b][a][t][s] gamma_s gamma_t - t (d_b Y_a) Id
    gam_pairs = [
        [gam[s] @ gam[t] for t in range(n)] for s in range(n)
    ]
    Tx = []
    tx_riem = []
    tx_fluct = []
    for a in range(n):
        row = []
        row_r = []
        row_f = []
        for b in range(n):
            acc_r = CliffordElement.zero(m)
            for s in range(n):
                for t in range(n):
                    coeff = R[b][a][t][s]
                    if coeff:
                        acc_r = acc_r + gam_pairs[s][t].scale(Fraction(-coeff, 8))
            dby_a = y.jacobian[a][b]
            if dby_a:
                acc_f = CliffordElement.scalar_matrix(m, TPoly.t_times(-dby_a))
            else:
                acc_f = CliffordElement.zero(m)
            row_r.append(acc_r)
            row_f.append(acc_f)
            row.append(acc_r + acc_f)
        Tx.append(tuple(row))
        tx_riem.append(tuple(row_r))
        tx_fluct.append(tuple(row_f))

    # E = -(s/4) Id + (t/2) sum_j [ c(d_j Y) gamma_j - gamma_j c(d_j Y) ]
    s_curv = scalar(g.riemann)
    E = CliffordElement.scalar_matrix(m, TPoly.constant(-Fraction(s_curv, 4)))
    half_t = TPoly.t_times(Fraction(1, 2))
    for j in range(n):
        col = y.column(j)
        if any(col):
            cdy = clifford_of([TPoly.constant(c) for c in col], gam)
            E = E + ((cdy @ gam[j]) - (gam[j] @ cdy)).scale(half_t)
    return ConnectionData(
        T=T, Tx=tuple(Tx), E=E, tx_riem=tuple(tx_riem), tx_fluct=tuple(tx_fluct)
    )
