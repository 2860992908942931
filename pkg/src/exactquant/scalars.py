"""Exact scalars: rationals, Laurent series in hbar, rational functions in hbar.

Rationals are :class:`fractions.Fraction`.  ``Laurent`` is a Laurent polynomial
in hbar, optionally truncated: a truncated value carries an ``order`` N and
says nothing about exponents >= N.  ``QPoly``/``RationalFunction`` give the
field Q(hbar) used for exact linear algebra.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Optional, Tuple

HBAR = "hbar"


class TruncationError(ValueError):
    """Raised when a coefficient at or beyond the truncation order is requested."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Laurent:
    """Laurent polynomial sum c_n hbar^n with optional truncation order.

    ``order=None`` means exact.  Otherwise terms with exponent >= order are
    unknown; they are dropped on construction and every operation propagates
    the order (multiplication by hbar^k shifts it by k).
    """

    __slots__ = ("_c", "order")

    def __init__(self, coeffs: Optional[Dict[int, object]] = None, order: Optional[int] = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            for n, v in coeffs.items():
                v = _frac(v)
                if v and (order is None or n < order):
                    c[int(n)] = v
        self._c = c
        self.order = order

    # construction helpers
    @classmethod
    def const(cls, c, order: Optional[int] = None) -> "Laurent":
        return cls({0: c}, order)

    @classmethod
    def hbar(cls, power: int = 1, coeff=1, order: Optional[int] = None) -> "Laurent":
        return cls({power: coeff}, order)

    @classmethod
    def coerce(cls, x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return cls({0: _frac(x)})

    # inspection
    @property
    def exact(self) -> bool:
        return self.order is None

    def terms(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def exponents(self) -> Tuple[int, ...]:
        return tuple(sorted(self._c))

    def coeff(self, n: int) -> Fraction:
        if self.order is not None and n >= self.order:
            raise TruncationError(f"coefficient of hbar^{n} lies at or beyond the truncation order {self.order}")
        return self._c.get(n, Fraction(0))

    def low(self) -> Optional[int]:
        """Lowest exponent that is possibly nonzero (None for an exact zero)."""
        if self._c:
            return min(self._c)
        return self.order

    def high(self) -> Optional[int]:
        return max(self._c) if self._c else None

    def truncate(self, order: Optional[int]) -> "Laurent":
        return Laurent(self._c, _min_order(self.order, order))

    def is_constant(self) -> bool:
        return all(n == 0 for n in self._c)

    def constant(self) -> Fraction:
        return self._c.get(0, Fraction(0))

    # ring structure
    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        c = dict(self._c)
        for n, v in other._c.items():
            c[n] = c.get(n, 0) + v
        return Laurent(c, _min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return Laurent({n: -v for n, v in self._c.items()}, self.order)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            try:
                f = _frac(other)
            except TypeError:
                return NotImplemented
            return Laurent({n: v * f for n, v in self._c.items()}, self.order if f else None)
        if (not self._c and self.order is None) or (not other._c and other.order is None):
            return Laurent()
        c: Dict[int, Fraction] = {}
        for n, v in self._c.items():
            for k, w in other._c.items():
                c[n + k] = c.get(n + k, 0) + v * w
        order = None
        if self.order is not None:
            order = self.order + other.low()
        if other.order is not None:
            order = _min_order(order, other.order + self.low())
        return Laurent(c, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Laurent.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self, order: Optional[int] = None) -> "Laurent":
        """Multiplicative inverse.

        Exact monomials invert exactly.  Other exact values need an explicit
        ``order``; truncated values invert to the order their data supports.
        """
        if not self._c:
            raise ZeroDivisionError("inverse of zero (or of an O(hbar^N) remainder)")
        lo = min(self._c)
        lead = self._c[lo]
        if len(self._c) == 1 and self.order is None:
            return Laurent({-lo: 1 / lead})
        known = self.order
        if known is None:
            if order is None:
                raise ValueError("exact Laurent polynomial with several terms is not a unit; pass order=")
            rel = order + lo
        else:
            rel = known - lo
            if order is not None:
                rel = min(rel, order + lo)
        # u = self * hbar^-lo = lead*(1 + r); invert termwise up to relative order rel
        u = {n - lo: v / lead for n, v in self._c.items()}
        inv = {0: Fraction(1)}
        for k in range(1, rel):
            s = Fraction(0)
            for j in range(1, k + 1):
                if j in u and (k - j) in inv:
                    s += u[j] * inv[k - j]
            if s:
                inv[k] = -s
        return Laurent({n - lo: v / lead for n, v in inv.items()}, rel - lo)

    def __truediv__(self, other):
        if isinstance(other, Laurent):
            return self * other.inverse()
        f = _frac(other)
        return Laurent({n: v / f for n, v in self._c.items()}, self.order)

    def __rtruediv__(self, other):
        return Laurent.coerce(other) * self.inverse()

    # comparisons only look at the known part
    def __eq__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        return not (self - other)._c

    def __hash__(self):
        if self.order is not None:
            raise TypeError("truncated Laurent series are unhashable")
        if self.is_constant():
            return hash(self.constant())
        return hash(tuple(sorted(self._c.items())))

    # hbar operations
    def reflect(self) -> "Laurent":
        """a(hbar) -> a(-hbar)."""
        return Laurent({n: (-v if n % 2 else v) for n, v in self._c.items()}, self.order)

    def euler(self) -> "Laurent":
        """hbar d/dhbar."""
        return Laurent({n: n * v for n, v in self._c.items()}, self.order)

    def shift(self, k: int) -> "Laurent":
        """Multiply by hbar^k."""
        return Laurent({n + k: v for n, v in self._c.items()},
                       None if self.order is None else self.order + k)

    def render(self) -> str:
        parts = []
        for n in sorted(self._c):
            v = self._c[n]
            if n == 0:
                parts.append(str(v))
                continue
            h = HBAR if n == 1 else f"{HBAR}^{n}"
            if v == 1:
                parts.append(h)
            elif v == -1:
                parts.append("-" + h)
            else:
                parts.append(f"{v}*{h}")
        s = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.order is not None:
            s += f" + O({HBAR}^{self.order})"
        return s

    def __repr__(self):
        return f"Laurent({self.render()})"

    __str__ = render


def hbar_reflect(a):
    """Return a(-hbar) for Laurent, QPoly, RationalFunction; rationals are fixed."""
    if isinstance(a, (Laurent, QPoly, RationalFunction)):
        return a.reflect()
    return _frac(a)


# --------------------------------------------------------------------------
# Q[hbar] and Q(hbar)


class QPoly:
    """Dense univariate polynomial over Q in hbar; coefficients low -> high."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, x) -> "QPoly":
        return cls([x])

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def lead(self) -> Fraction:
        return self.c[-1]

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            try:
                other = QPoly.const(other)
            except TypeError:
                return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if not isinstance(other, QPoly):
            other = QPoly.const(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = other.c + (Fraction(0),) * (n - len(other.c))
        return QPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-x for x in self.c])

    def __sub__(self, other):
        if not isinstance(other, QPoly):
            other = QPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return QPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            f = _frac(other)
            return QPoly([x * f for x in self.c])
        if not self.c or not other.c:
            return QPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(other.c):
                out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "QPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(other.c) + 1, 0)
        lead = other.c[-1]
        dl = len(other.c)
        for k in range(len(r) - dl, -1, -1):
            coef = r[k + dl - 1] / lead
            q[k] = coef
            if coef:
                for j, y in enumerate(other.c):
                    r[k + j] -= coef * y
        return QPoly(q), QPoly(r[: dl - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "QPoly":
        if not self.c:
            return self
        return self * (1 / self.c[-1])

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        from math import gcd

        if not self.c:
            return Fraction(0)
        num = 0
        den = 1
        for x in self.c:
            num = gcd(num, x.numerator)
            den = den * x.denominator // gcd(den, x.denominator)
        return Fraction(num, den)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, QPoly) else QPoly()
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def reflect(self) -> "QPoly":
        return QPoly([(-x if i % 2 else x) for i, x in enumerate(self.c)])

    def render(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for i, x in enumerate(self.c):
            if not x:
                continue
            if i == 0:
                parts.append(str(x))
            else:
                h = HBAR if i == 1 else f"{HBAR}^{i}"
                parts.append(h if x == 1 else ("-" + h if x == -1 else f"{x}*{h}"))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"QPoly({self.render()})"


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd (gcd(0, 0) = 0)."""
    while b:
        a, b = b, a % b
    return a.monic()


class RationalFunction:
    """Reduced fraction num/den in Q(hbar); den is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        if not isinstance(num, QPoly):
            num = QPoly.const(num)
        if den is None:
            den = QPoly.const(1)
        elif not isinstance(den, QPoly):
            den = QPoly.const(den)
        if not den:
            raise ZeroDivisionError("zero denominator in rational function")
        if not _reduced:
            if not num:
                den = QPoly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.lead()
                num, den = num * (1 / lead), den * (1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, QPoly):
            return cls(x)
        if isinstance(x, Laurent):
            return cls.from_laurent(x)
        return cls(QPoly.const(x), _reduced=True)

    @classmethod
    def from_laurent(cls, a: Laurent) -> "RationalFunction":
        if not a.exact:
            raise TypeError("truncated Laurent series do not embed in Q(hbar)")
        if not a:
            return cls(QPoly())
        lo = min(0, a.low())
        num = QPoly([a.coeff(n) for n in range(lo, a.high() + 1)])
        den = QPoly([0] * (-lo) + [1])
        return cls(num, den)

    @classmethod
    def hbar(cls) -> "RationalFunction":
        return cls(QPoly.x(), _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def reflect(self) -> "RationalFunction":
        return RationalFunction(self.num.reflect(), self.den.reflect())

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def render(self) -> str:
        if self.den == 1:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __repr__(self):
        return f"RationalFunction({self.render()})"


def render_scalar(c) -> str:
    if isinstance(c, (Laurent, QPoly, RationalFunction)):
        return c.render()
    return str(c)
