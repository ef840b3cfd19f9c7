"""Hyperdual numbers for exact forward-mode differentiation.

A HyperDual carries a value and derivative coefficients along two
infinitesimal directions e1, e2 with e1^2 = e2^2 = 0 and e1*e2 = e12:

    x = v + b*e1 + c*e2 + d*e12

Seeding e1 and e2 on the same input variable makes the e12 component of
f(x) the exact second derivative; seeding them on different variables
gives the exact mixed partial.  Coefficients are complex, so the same
arithmetic threads through phase factors, Hermite recurrences, powers
and logarithms without truncation error (rounding only).
"""

from __future__ import annotations

import cmath
import math

_SCALARS = (int, float, complex)


class HyperDual:
    __slots__ = ("v", "e1", "e2", "e12")

    def __init__(self, v, e1=0.0, e2=0.0, e12=0.0):
        self.v = v
        self.e1 = e1
        self.e2 = e2
        self.e12 = e12

    def __repr__(self):
        return f"HyperDual({self.v!r}, {self.e1!r}, {self.e2!r}, {self.e12!r})"

    # -- ring operations -------------------------------------------------

    def __add__(self, o):
        if isinstance(o, HyperDual):
            return HyperDual(self.v + o.v, self.e1 + o.e1, self.e2 + o.e2, self.e12 + o.e12)
        if isinstance(o, _SCALARS):
            return HyperDual(self.v + o, self.e1, self.e2, self.e12)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return HyperDual(-self.v, -self.e1, -self.e2, -self.e12)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, HyperDual):
            return HyperDual(
                self.v * o.v,
                self.v * o.e1 + self.e1 * o.v,
                self.v * o.e2 + self.e2 * o.v,
                self.v * o.e12 + self.e12 * o.v + self.e1 * o.e2 + self.e2 * o.e1,
            )
        if isinstance(o, _SCALARS):
            return HyperDual(self.v * o, self.e1 * o, self.e2 * o, self.e12 * o)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, HyperDual):
            return self * o._reciprocal()
        if isinstance(o, _SCALARS):
            return self * (1.0 / o)
        return NotImplemented

    def __rtruediv__(self, o):
        return self._reciprocal() * o

    def _reciprocal(self):
        iv = 1.0 / self.v
        return self._lift(iv, -iv * iv, 2.0 * iv * iv * iv)

    def __pow__(self, n):
        if isinstance(n, int):
            if n < 0:
                return (self._reciprocal()) ** (-n)
            out = HyperDual(1.0)
            base = self
            k = n
            while k:
                if k & 1:
                    out = out * base
                base = base * base
                k >>= 1
            return out
        return powr(self, n)

    # -- analytic lift ---------------------------------------------------

    def _lift(self, f, fp, fpp):
        """Compose with a scalar analytic function given f, f', f'' at v."""
        return HyperDual(
            f,
            fp * self.e1,
            fp * self.e2,
            fp * self.e12 + fpp * self.e1 * self.e2,
        )

    def conjugate(self):
        # Valid for real seed directions: d/dx conj(f) = conj(df/dx).
        return HyperDual(
            _conj(self.v), _conj(self.e1), _conj(self.e2), _conj(self.e12)
        )


def _conj(x):
    return x.conjugate() if isinstance(x, complex) else x


def seed(value, e1=0.0, e2=0.0) -> HyperDual:
    """Make a hyperdual input variable with the given seed directions."""
    return HyperDual(value, e1, e2, 0.0)


# -- generic math: dispatch on plain scalars vs hyperduals ----------------


def _fn(x, real_f, cplx_f):
    if isinstance(x, complex):
        return cplx_f(x)
    return real_f(x)


def exp(x):
    if isinstance(x, HyperDual):
        e = _fn(x.v, math.exp, cmath.exp)
        return x._lift(e, e, e)
    return _fn(x, math.exp, cmath.exp)


def log(x):
    if isinstance(x, HyperDual):
        iv = 1.0 / x.v
        return x._lift(_fn(x.v, math.log, cmath.log), iv, -iv * iv)
    return _fn(x, math.log, cmath.log)


def sqrt(x):
    if isinstance(x, HyperDual):
        s = _fn(x.v, math.sqrt, cmath.sqrt)
        return x._lift(s, 0.5 / s, -0.25 / (s * x.v))
    return _fn(x, math.sqrt, cmath.sqrt)


def powr(x, p):
    """x**p for real (possibly non-integer) exponent p, x > 0."""
    if isinstance(x, HyperDual):
        f = x.v**p
        return x._lift(f, p * f / x.v, p * (p - 1.0) * f / (x.v * x.v))
    return x**p


def sin(x):
    if isinstance(x, HyperDual):
        s = _fn(x.v, math.sin, cmath.sin)
        c = _fn(x.v, math.cos, cmath.cos)
        return x._lift(s, c, -s)
    return _fn(x, math.sin, cmath.sin)


def cos(x):
    if isinstance(x, HyperDual):
        s = _fn(x.v, math.sin, cmath.sin)
        c = _fn(x.v, math.cos, cmath.cos)
        return x._lift(c, -s, -c)
    return _fn(x, math.cos, cmath.cos)


def norm3(x1, x2, x3):
    """sqrt(x1^2 + x2^2 + x3^2), generic over floats and hyperduals."""
    return sqrt(x1 * x1 + x2 * x2 + x3 * x3)


def value_of(x):
    """Strip derivative parts, returning the underlying scalar."""
    return x.v if isinstance(x, HyperDual) else x
