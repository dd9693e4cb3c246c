"""Gamma-matrix realization of the negative-definite Clifford algebra,
with exact trace machinery.

Conventions: gamma_i * gamma_j + gamma_j * gamma_i = -2 delta_ij * Id, so
every gamma squares to -Id and tr(c(X)c(Y)) = -<X,Y> * tr[Id].  The
construction is the standard tensor-product doubling from a fixed 2x2 pair,
so a given m always produces the identical matrices.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DimensionError
from .scalars import (
    GR_I,
    GR_MINUS_I,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    TPOLY_ZERO,
    TPoly,
    _as_tpoly,
)

_UNSET = object()


class CliffordElement:
    """2^m x 2^m matrix of t-polynomials acting on the spinor space."""

    __slots__ = ("m", "dim", "rows", "_scalar")

    def __init__(self, m: int, rows):
        self.m = m
        self.dim = 1 << m
        rows = tuple(tuple(_as_tpoly(e) for e in row) for row in rows)
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise DimensionError(f"matrix must be {self.dim}x{self.dim}")
        self.rows = rows
        self._scalar = _UNSET

    @classmethod
    def _raw(cls, m: int, rows) -> "CliffordElement":
        # internal fast path: rows already a square tuple-of-tuples of TPoly
        e = object.__new__(cls)
        e.m = m
        e.dim = 1 << m
        e.rows = rows
        e._scalar = _UNSET
        return e

    @classmethod
    def zero(cls, m: int) -> "CliffordElement":
        d = 1 << m
        return cls(m, ((TPOLY_ZERO,) * d,) * d)

    @classmethod
    def identity(cls, m: int) -> "CliffordElement":
        return cls.scalar_matrix(m, TPoly((GR_ONE,)))

    @classmethod
    def scalar_matrix(cls, m: int, s) -> "CliffordElement":
        s = _as_tpoly(s)
        d = 1 << m
        rows = [[TPOLY_ZERO] * d for _ in range(d)]
        for i in range(d):
            rows[i][i] = s
        return cls(m, rows)

    def scalar_part(self):
        """The TPoly s if this element equals s*Id, else None (cached)."""
        if self._scalar is _UNSET:
            s = self.rows[0][0]
            ok = True
            for i in range(self.dim):
                row = self.rows[i]
                for j in range(self.dim):
                    if i == j:
                        if row[j] != s:
                            ok = False
                            break
                    elif row[j]:
                        ok = False
                        break
                if not ok:
                    break
            self._scalar = s if ok else None
        return self._scalar

    def __add__(self, other):
        _check_same(self, other)
        return CliffordElement._raw(
            self.m,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other):
        _check_same(self, other)
        return CliffordElement._raw(
            self.m,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self):
        return CliffordElement._raw(
            self.m, tuple(tuple(-a for a in row) for row in self.rows)
        )

    def scale(self, s) -> "CliffordElement":
        s = _as_tpoly(s)
        if not s:
            return CliffordElement.zero(self.m)
        return CliffordElement._raw(
            self.m, tuple(tuple(a * s if a else TPOLY_ZERO for a in row) for row in self.rows)
        )

    def __matmul__(self, other):
        _check_same(self, other)
        sa = self.scalar_part()
        if sa is not None:
            return other.scale(sa)
        sb = other.scalar_part()
        if sb is not None:
            return self.scale(sb)
        d = self.dim
        brows = other.rows
        out = []
        for i in range(d):
            arow = self.rows[i]
            acc = [TPOLY_ZERO] * d
            for k in range(d):
                aik = arow[k]
                if not aik.coeffs:
                    continue
                brow = brows[k]
                for j in range(d):
                    bkj = brow[j]
                    if bkj.coeffs:
                        acc[j] = acc[j] + aik * bkj
            out.append(tuple(acc))
        return CliffordElement._raw(self.m, tuple(out))

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return self @ other
        return self.scale(other)

    __rmul__ = scale

    @property
    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.m == other.m and self.rows == other.rows

    def __hash__(self):
        return hash((self.m, self.rows))

    def __repr__(self):
        return f"CliffordElement(m={self.m}, rows={self.rows!r})"


def _check_same(a: CliffordElement, b: CliffordElement):
    if a.m != b.m:
        raise DimensionError(f"mixed spinor dimensions: m={a.m} vs m={b.m}")


def trace(e: CliffordElement) -> TPoly:
    out = TPOLY_ZERO
    for i in range(e.dim):
        out = out + e.rows[i][i]
    return out


def normalized_trace(e: CliffordElement) -> TPoly:
    return trace(e).scale(Fraction(1, e.dim))


@lru_cache(maxsize=None)
def generate_gammas(m: int):
    """The 2m gamma matrices on the rank-2^m spinor space, for 1 <= m <= 4.

    gamma_1 = diag(i, -i), gamma_2 = [[0, 1], [-1, 0]] at m = 1; each
    doubling embeds the previous family off-diagonally and appends two new
    generators.
    """
    if not isinstance(m, int) or not 1 <= m <= 4:
        raise DimensionError(f"m={m!r} outside supported range 1..4")
    if m == 1:
        g1 = CliffordElement(1, ((GR_I, 0), (0, GR_MINUS_I)))
        g2 = CliffordElement(1, ((0, GR_ONE), (GaussianRational(-1), 0)))
        return (g1, g2)
    prev = generate_gammas(m - 1)
    d = 1 << (m - 1)
    zero = TPOLY_ZERO

    def block(tl, tr, bl, br):
        rows = []
        for i in range(d):
            rows.append(tuple(tl[i]) + tuple(tr[i]))
        for i in range(d):
            rows.append(tuple(bl[i]) + tuple(br[i]))
        return CliffordElement(m, tuple(rows))

    z = [[zero] * d for _ in range(d)]
    ident = [[zero] * d for _ in range(d)]
    pos_i = [[zero] * d for _ in range(d)]
    for i in range(d):
        ident[i][i] = TPoly((GR_ONE,))
        pos_i[i][i] = TPoly((GR_I,))
    neg_ident = [[-e for e in row] for row in ident]
    neg_i = [[-e for e in row] for row in pos_i]

    out = []
    for g in prev:
        out.append(block(z, g.rows, g.rows, z))
    out.append(block(z, ident, neg_ident, z))
    out.append(block(pos_i, z, z, neg_i))
    return tuple(out)


def clifford_of(coeffs, gammas) -> CliffordElement:
    """The Clifford action c(X) = sum_a X_a gamma_a of a coefficient vector."""
    gammas = tuple(gammas)
    if len(coeffs) != len(gammas):
        raise DimensionError(
            f"coefficient vector of length {len(coeffs)} against {len(gammas)} gammas"
        )
    m = gammas[0].m
    out = CliffordElement.zero(m)
    for c, g in zip(coeffs, gammas):
        c = _as_tpoly(c)
        if c:
            out = out + g.scale(c)
    return out


def wick_trace_oracle(vectors) -> TPoly:
    """Normalized trace of c(X_1)...c(X_p) by contraction recursion.

    Uses only the anticommutation relation, never matrices: moving c(X_1)
    through the product and closing with cyclicity gives

        tr^(X_1...X_p) = sum_k (-1)^k (-<X_1, X_k>) tr^(...without 1, k...)

    with tr^(empty) = 1 and any odd-length product traceless.
    """
    vecs = tuple(tuple(_as_tpoly(c) for c in v) for v in vectors)
    if vecs:
        n = len(vecs[0])
        if any(len(v) != n for v in vecs):
            raise DimensionError("vectors of mixed length")
    return _wick(vecs)


def _dot(u, v) -> TPoly:
    out = TPOLY_ZERO
    for a, b in zip(u, v):
        if a and b:
            out = out + a * b
    return out


def _wick(vecs) -> TPoly:
    p = len(vecs)
    if p == 0:
        return TPoly((GR_ONE,))
    if p % 2:
        return TPOLY_ZERO
    first = vecs[0]
    out = TPOLY_ZERO
    for k in range(1, p):
        g = _dot(first, vecs[k])
        if not g:
            continue
        rest = vecs[1:k] + vecs[k + 1 :]
        sign = 1 if (k + 1) % 2 == 0 else -1
        sub = _wick(rest)
        if sub:
            out = out + (g * sub).scale(Fraction(-sign))
    return out
