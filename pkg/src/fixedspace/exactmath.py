"""Exact arithmetic: integer polynomials and canonical rational functions in ``l``.

Scalars throughout the package are either :class:`fractions.Fraction` (a
concrete value of ``l``) or :class:`RatFun` (``l`` kept as an indeterminate).
The two never mix: combining them raises :class:`TypeError`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "IntPoly",
    "RatFun",
    "ExactScalar",
    "PoleError",
    "L",
    "poly_gcd",
    "ratfun_arith",
    "eval_at",
    "coerce_ell",
    "format_scalar",
    "parse_scalar",
]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Univariate polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _strip(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"integer coefficients required, got {a!r}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPoly:
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def content(self) -> int:
        """Gcd of the coefficients (0 for the zero polynomial), always nonnegative."""
        c = 0
        for a in self.coeffs:
            c = gcd(c, a)
            if c == 1:
                break
        return c

    def primitive(self) -> IntPoly:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        if c == 1:
            return self
        return IntPoly(a // c for a in self.coeffs)

    def scale(self, k: int) -> IntPoly:
        return IntPoly(a * k for a in self.coeffs)

    def exact_scale_div(self, k: int) -> IntPoly:
        if k == 1:
            return self
        return IntPoly(a // k for a in self.coeffs)

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    def __neg__(self) -> IntPoly:
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = _ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def pseudo_rem(self, other: IntPoly) -> IntPoly:
        """Remainder of ``lead(other)**(deg self - deg other + 1) * self`` by ``other``."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db, lb = len(b) - 1, b[-1]
        while len(r) - 1 >= db and r:
            lr = r[-1]
            shift = len(r) - 1 - db
            r = [lb * v for v in r]
            for j, v in enumerate(b):
                r[shift + j] -= lr * v
            while r and r[-1] == 0:
                r.pop()
        return IntPoly(r)

    def divides_into(self, other: IntPoly) -> IntPoly | None:
        """Return ``other / self`` if the quotient has integer coefficients, else None."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(other.coeffs)
        b = self.coeffs
        db, lb = len(b) - 1, b[-1]
        if len(r) - 1 < db:
            return _ZERO if not r else None
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            top = r[k + db]
            if top % lb:
                return None
            c = top // lb
            q[k] = c
            if c:
                for j, v in enumerate(b):
                    r[k + j] -= c * v
        if any(r[:db]):
            return None
        return IntPoly(q)

    def to_str(self, var: str = "l") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if d == 0:
                body = str(a)
            else:
                mono = var if d == 1 else f"{var}^{d}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({self.to_str()})"

    _TERM = re.compile(r"([+-])?\s*(\d+)?\s*\*?\s*(l(?:\^(\d+))?)?")

    @classmethod
    def parse(cls, text: str, var: str = "l") -> IntPoly:
        s = text.replace(" ", "")
        if var != "l":
            s = s.replace(var, "l")
        if not s:
            raise ValueError("empty polynomial string")
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if pos > 0 and m.group(1) is None:
                raise ValueError(f"missing operator in {text!r}")
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                d = int(m.group(4)) if m.group(4) else 1
            else:
                d = 0
            coeffs[d] = coeffs.get(d, 0) + sign * c
            pos = m.end()
        top = max(coeffs)
        return cls(coeffs.get(i, 0) for i in range(top + 1))


_ZERO = IntPoly()
_ONE = IntPoly((1,))
_X = IntPoly((0, 1))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Gcd over the rationals, returned primitive with positive leading coefficient.

    Primitive remainder sequence; ``poly_gcd(0, 0) == 0``.
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.degree == 0 or b.degree == 0:
        return _ONE
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    q = b.divides_into(a)
    if q is not None:
        return b
    while not b.is_zero():
        if b.degree == 0:
            return _ONE
        a, b = b, a.pseudo_rem(b).primitive()
    return a.primitive()


def _canonical(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Fix the scalar ambiguity of an already coprime pair."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    c = gcd(num.content(), den.content())
    if den.lead < 0:
        c = -c
    if c != 1:
        num, den = num.exact_scale_div(c), den.exact_scale_div(c)
    return num, den


class RatFun:
    """Quotient of integer polynomials in ``l``, kept in canonical form.

    Canonical means: numerator and denominator coprime over Q, the denominator
    has positive leading coefficient, and the coefficients of numerator and
    denominator taken together have gcd 1.  Equal functions therefore have
    identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly | Sequence[int] | int, den: IntPoly | Sequence[int] | int = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.is_zero() and den.degree > 0:
            q = den.divides_into(num)
            if q is not None:
                num, den = q, _ONE
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = _div_exact(num, g), _div_exact(den, g)
        num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, num: IntPoly, den: IntPoly) -> RatFun:
        # Caller guarantees num/den coprime over Q.
        self = object.__new__(cls)
        num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def variable(cls) -> RatFun:
        return cls._raw(_X, _ONE)

    @classmethod
    def constant(cls, c: int | Fraction) -> RatFun:
        c = Fraction(c)
        return cls._raw(IntPoly.constant(c.numerator), IntPoly.constant(c.denominator))

    def normalize(self) -> RatFun:
        return RatFun(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def degree(self) -> int:
        """Numerator degree minus denominator degree (behaviour as ``l`` grows)."""
        if self.is_zero():
            raise ValueError("degree of the zero rational function")
        return self.num.degree - self.den.degree

    def _coerce(self, other) -> RatFun:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return RatFun._raw(IntPoly.constant(other), _ONE)
        raise TypeError(
            f"cannot combine a symbolic value with {type(other).__name__}; "
            "run the whole computation in one evaluation mode"
        )

    def __add__(self, other) -> RatFun:
        o = self._coerce(other)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return RatFun._raw(a + c, _ONE)
        if b == d:
            return RatFun(a + c, b)
        g = poly_gcd(b, d)
        if g.is_one():
            return RatFun._raw(a * d + c * b, b * d)
        bg, dg = _div_exact(b, g), _div_exact(d, g)
        num = a * dg + c * bg
        den = bg * d
        t = poly_gcd(num, g)
        if t.is_one() or num.is_zero():
            return RatFun._raw(num, den) if not num.is_zero() else RatFun._raw(_ZERO, _ONE)
        return RatFun._raw(_div_exact(num, t), _div_exact(den, t))

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other) -> RatFun:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RatFun:
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> RatFun:
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return RatFun._raw(_ZERO, _ONE)
        a, b, c, d = self.num, self.den, o.num, o.den
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_one():
            a, d = _div_exact(a, g1), _div_exact(d, g1)
        if not g2.is_one():
            c, b = _div_exact(c, g2), _div_exact(b, g2)
        return RatFun._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun._raw(self.den, self.num)

    def __truediv__(self, other) -> RatFun:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> RatFun:
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> RatFun:
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun._raw(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = RatFun.constant(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFun", self.num.coeffs, self.den.coeffs))

    def __call__(self, ell) -> Fraction:
        return eval_at(self, ell)

    def to_str(self, var: str = "l") -> str:
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    __str__ = to_str

    def __repr__(self) -> str:
        return f"RatFun({self.to_str()})"

    @classmethod
    def parse(cls, text: str) -> RatFun:
        m = re.fullmatch(r"\s*\(([^()]*)\)\s*/\s*\(([^()]*)\)\s*", text)
        if m:
            return cls(IntPoly.parse(m.group(1)), IntPoly.parse(m.group(2)))
        return cls(IntPoly.parse(text))


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.constant(x)
    return IntPoly(x)


def _div_exact(a: IntPoly, b: IntPoly) -> IntPoly:
    # b is always a primitive gcd here, so the quotient is integral (Gauss).
    q = b.divides_into(a)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


ExactScalar = Union[Fraction, RatFun]

#: The indeterminate ``l``.
L = RatFun.variable()


def ratfun_arith(op: str, x: RatFun, y: RatFun) -> RatFun:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two rational functions."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def eval_at(f: RatFun, ell: int | Fraction) -> Fraction:
    d = f.den(Fraction(ell))
    if d == 0:
        raise PoleError(f"{f} has a pole at l = {ell}")
    return Fraction(f.num(Fraction(ell))) / d


def coerce_ell(ell) -> ExactScalar:
    """Normalize an ``ell`` argument: integers become Fractions, None means symbolic."""
    if ell is None:
        return L
    if isinstance(ell, RatFun):
        return ell
    if isinstance(ell, bool):
        raise TypeError("ell must be an integer, Fraction or RatFun")
    if isinstance(ell, (int, Fraction)):
        return Fraction(ell)
    raise TypeError(f"ell must be an integer, Fraction or RatFun, got {type(ell).__name__}")


def format_scalar(x: ExactScalar) -> str:
    if isinstance(x, RatFun):
        return x.to_str()
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_scalar(text: str) -> ExactScalar:
    if "l" in text or "(" in text:
        return RatFun.parse(text)
    return Fraction(text)
