"""Exact scalars: Gaussian rationals and polynomials in the fluctuation
parameter t.

Everything here is exact rational arithmetic; nothing ever rounds.  The
fluctuation parameter is kept formal so that downstream identities can be
checked coefficient-by-coefficient in powers of t.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    def __add__(self, other):
        other = _as_gr(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gr(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gr(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_gr(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, _F0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gr(other)
        n2 = other.re * other.re + other.im * other.im
        if not n2:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def __pow__(self, k: int):
        out = GR_ONE
        base = self
        for _ in range(k):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = _as_gr(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


def _as_gr(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, str)):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {x!r} to GaussianRational")


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)
GR_MINUS_I = GaussianRational(0, -1)


class TPoly:
    """Polynomial in the formal parameter t over Gaussian rationals.

    Canonical form: no trailing zero coefficients, so the empty tuple is
    the zero polynomial and ``len(coeffs) - 1`` is the degree.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, GaussianRational) else _as_gr(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _mk(cls, cs) -> "TPoly":
        # internal fast path: coefficients already GaussianRational
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c) -> "TPoly":
        return cls((c,))

    @classmethod
    def t_times(cls, c) -> "TPoly":
        """c * t."""
        return cls((GR_ZERO, c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GR_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, TPoly):
            other = _as_tpoly(other)
        a, b = self.coeffs, other.coeffs
        if not a:
            return other
        if not b:
            return self
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return TPoly._mk(out)

    __radd__ = __add__

    def __neg__(self):
        return TPoly._mk([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_tpoly(other))

    def __rsub__(self, other):
        return _as_tpoly(other) - self

    def __mul__(self, other):
        if not isinstance(other, TPoly):
            other = _as_tpoly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TPOLY_ZERO
        out = [GR_ZERO] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if not ci:
                continue
            for j, cj in enumerate(b):
                if cj:
                    out[i + j] = out[i + j] + ci * cj
        return TPoly._mk(out)

    __rmul__ = __mul__

    def scale(self, s) -> "TPoly":
        s = _as_gr(s)
        if not s:
            return TPOLY_ZERO
        return TPoly._mk([c * s for c in self.coeffs])

    def eval(self, t: GaussianRational) -> GaussianRational:
        out = GR_ZERO
        power = GR_ONE
        for c in self.coeffs:
            if c:
                out = out + c * power
            power = power * t
        return out

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            try:
                other = _as_tpoly(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(f"{c!r}")
            elif k == 1:
                parts.append(f"({c!r})*t")
            else:
                parts.append(f"({c!r})*t^{k}")
        return " + ".join(parts)


def _as_tpoly(x) -> TPoly:
    if isinstance(x, TPoly):
        return x
    if isinstance(x, (int, Fraction, str, GaussianRational)):
        return TPoly((_as_gr(x),))
    raise TypeError(f"cannot coerce {x!r} to TPoly")


TPOLY_ZERO = TPoly(())
TPOLY_ONE = TPoly((GR_ONE,))
TPOLY_T = TPoly((GR_ZERO, GR_ONE))
