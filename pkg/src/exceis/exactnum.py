"""Exact univariate rational arithmetic in the parameter s.

Everything here is built on :class:`fractions.Fraction`; no floating point
enters at any stage.  Polynomials are stored dense by degree (degrees in
this project stay below ~30) and rational functions are kept in a canonical
form (coprime numerator/denominator, monic denominator) so that equality is
decidable coefficientwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

Rational = Fraction


class ZeroFunctionError(ValueError):
    """Raised when an operation needs a not-identically-zero function."""


class PoleError(ArithmeticError):
    """Evaluation at a pole.  Carries the pole order."""

    def __init__(self, point: Fraction, order: int):
        self.point = point
        self.order = order
        super().__init__(f"pole of order {order} at s = {point}")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Poly:
    """Dense polynomial over Fraction; coeffs[i] is the s^i coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([_as_fraction(c)])

    @classmethod
    def s(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                     for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        return Poly([c * a for a in self.coeffs])

    def eval(self, s0) -> Fraction:
        s0 = _as_fraction(s0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s0 + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return Poly(q), Poly(rem)

    def root_multiplicity(self, s0) -> int:
        """Multiplicity of s0 as a root (0 if not a root)."""
        s0 = _as_fraction(s0)
        if self.is_zero():
            raise ZeroFunctionError("zero polynomial has no root multiplicity")
        m = 0
        p = self
        while p.eval(s0) == 0:
            p, r = p.divmod(Poly([-s0, 1]))
            assert r.is_zero()
            m += 1
        return m

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                sc = "" if c == 1 else ("-" if c == -1 else str(c))
                term = f"{sc}s" if i == 1 else f"{sc}s^{i}"
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    __repr__ = __str__


def _gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if not a.is_zero() else Poly.const(1)


_AFFINE_TERM = re.compile(r"^([+-]?)([0-9/]*)(s)?(?:/([0-9]+))?$")


class AffineForm:
    """An exact affine form a*s + b."""

    __slots__ = ("slope", "intercept")

    def __init__(self, slope, intercept):
        self.slope = _as_fraction(slope)
        self.intercept = _as_fraction(intercept)

    @classmethod
    def parse(cls, text: str) -> "AffineForm":
        """Parse forms like "s-17", "2s-10", "s/2-7", "1-s", "-4"."""
        t = text.replace(" ", "")
        if not t:
            raise ValueError("empty affine form")
        # split into signed terms
        terms = re.findall(r"[+-]?[^+-]+", t)
        slope = Fraction(0)
        icept = Fraction(0)
        for term in terms:
            m = _AFFINE_TERM.match(term)
            if not m:
                raise ValueError(f"cannot parse affine term {term!r} in {text!r}")
            sign, num, has_s, den = m.groups()
            sgn = -1 if sign == "-" else 1
            if has_s:
                coeff = Fraction(num) if num else Fraction(1)
                if den:
                    coeff /= int(den)
                slope += sgn * coeff
            else:
                if not num:
                    raise ValueError(f"cannot parse affine term {term!r}")
                icept += sgn * Fraction(num)
        return cls(slope, icept)

    def eval(self, s0) -> Fraction:
        return self.slope * _as_fraction(s0) + self.intercept

    def __add__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm(self.slope + other.slope, self.intercept + other.intercept)
        return AffineForm(self.slope, self.intercept + _as_fraction(other))

    def __sub__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm(self.slope - other.slope, self.intercept - other.intercept)
        return AffineForm(self.slope, self.intercept - _as_fraction(other))

    def __neg__(self):
        return AffineForm(-self.slope, -self.intercept)

    def scale(self, c) -> "AffineForm":
        c = _as_fraction(c)
        return AffineForm(c * self.slope, c * self.intercept)

    def shift(self, c) -> "AffineForm":
        return AffineForm(self.slope, self.intercept + _as_fraction(c))

    def as_poly(self) -> Poly:
        return Poly([self.intercept, self.slope])

    def is_constant(self) -> bool:
        return self.slope == 0

    def normalized_sign(self) -> "AffineForm":
        """The form with positive leading coefficient (for sign-insensitive matching)."""
        lead = self.slope if self.slope != 0 else self.intercept
        return self if lead >= 0 else -self

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineForm)
                and self.slope == other.slope and self.intercept == other.intercept)

    def __hash__(self):
        return hash((self.slope, self.intercept))

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        if self.slope == 1:
            head = "s"
        elif self.slope == -1:
            head = "-s"
        elif self.slope.denominator == 1:
            head = f"{self.slope}s"
        else:
            head = f"{self.slope.numerator}s/{self.slope.denominator}" \
                if abs(self.slope.numerator) != 1 else \
                ("s" if self.slope > 0 else "-s") + f"/{self.slope.denominator}"
        if self.intercept == 0:
            return head
        sign = "+" if self.intercept > 0 else "-"
        return f"{head}{sign}{abs(self.intercept)}"

    __repr__ = __str__


class RatFunc:
    """Rational function num/den in canonical form.

    Invariants: gcd(num, den) = 1, den monic and nonzero; the zero function
    is 0/1.  Two RatFuncs built along different arithmetic routes from the
    same function therefore compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly.const(1)):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = _gcd(num, den)
        if g.degree > 0:
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        lc = den.leading()
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly.const(c))

    @classmethod
    def from_affine(cls, a: AffineForm) -> "RatFunc":
        return cls(a.as_poly())

    @classmethod
    def s(cls) -> "RatFunc":
        return cls(Poly.s())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def scale(self, c) -> "RatFunc":
        return RatFunc(self.num.scale(c), self.den)

    def derivative(self) -> "RatFunc":
        """Exact quotient-rule derivative."""
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def order_at(self, s0) -> int:
        """Order of vanishing at s0 (negative = pole of that order).

        Returns k with (s-s0)^(-k) * f finite and nonzero at s0.
        """
        if self.is_zero():
            raise ZeroFunctionError("order_at is undefined for the zero function")
        s0 = _as_fraction(s0)
        return self.num.root_multiplicity(s0) - self.den.root_multiplicity(s0)

    def eval_at(self, s0) -> Fraction:
        s0 = _as_fraction(s0)
        dv = self.den.eval(s0)
        if dv == 0:
            raise PoleError(s0, -self.order_at(s0))
        return self.num.eval(s0) / dv

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def pochhammer(z: AffineForm, n: int) -> RatFunc:
    """Rising factorial z(z+1)...(z+n-1) as a polynomial RatFunc; n=0 gives 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    acc = Poly.const(1)
    for k in range(n):
        acc = acc * z.shift(k).as_poly()
    return RatFunc(acc)


def order_at(f: RatFunc, s0) -> int:
    return f.order_at(s0)


def eval_at(f: RatFunc, s0) -> Fraction:
    return f.eval_at(s0)


def derivative(f: RatFunc) -> RatFunc:
    return f.derivative()
