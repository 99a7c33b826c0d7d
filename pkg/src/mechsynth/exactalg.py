"""Exact rationals, univariate polynomials and rational functions in ``s``.

Scalars are :class:`fractions.Fraction` throughout (exported as ``Rat``).
Polynomials store ascending coefficients with trailing zeros trimmed, and
rational functions are kept coprime with a monic denominator, so two equal
functions always compare equal structurally.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, ParseError, ShapeMismatch, ZeroDenominator

Rat = Fraction
Scalar = Union[int, Fraction]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(value: object) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an ``int`` or a ``Fraction``. Floats are refused."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if not m:
            raise ParseError(f"not an exact rational literal: {value!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {value!r}")
        return Fraction(int(m.group(1)), den)
    raise ParseError(f"not an exact rational: {value!r} ({type(value).__name__})")


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Immutable univariate polynomial with rational coefficients (ascending)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls((c,))

    @classmethod
    def s(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: Scalar, n: int) -> Poly:
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rat(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        return poly_to_str(self)

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: Poly | Scalar) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.lc
        db = other.degree
        for k in range(dq, -1, -1):
            t = r[k + db] / lc
            q[k] = t
            if t:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= t * b
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def scale_var(self, c: Scalar) -> Poly:
        """p(c*s)."""
        return Poly(a * Fraction(c) ** i for i, a in enumerate(self.coeffs))

    def order_at_zero(self) -> int:
        """Multiplicity of the root s = 0 (0 for p(0) != 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no finite order at 0")

    def shift_down(self, n: int) -> Poly:
        """Divide by s**n, assuming the low coefficients are zero."""
        return Poly(self.coeffs[n:])


def _as_poly(x: Poly | Scalar) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def poly_to_str(p: Poly, var: str = "s") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = format_rat(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{format_rat(mag)}{mono}"
            else:
                body = f"({format_rat(mag)}){mono}"
        terms.append(("-" if c < 0 else "+", body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sg, body in terms[1:]:
        out += f" {sg} {body}"
    return out


# -- subresultant GCD over Z[s] ---------------------------------------------


def _to_primitive_ints(p: Poly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    return _primitive(ints)


def _content(a: list[int]) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _primitive(a: list[int]) -> list[int]:
    g = _content(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _prem(a: list[int], b: list[int]) -> list[int]:
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    r = list(a)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for i, bi in enumerate(b):
            r[i + shift] -= lr * bi
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    f = lb**e
    return [x * f for x in r]


def _subresultant_gcd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return _primitive(a)
    a, b = _primitive(a), _primitive(b)
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return [1]
        a = b
        divisor = g * h**delta
        b = [x // divisor for x in r]
        g = a[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
    return _primitive(b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    if a.is_zero() and b.is_zero():
        return Poly()
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return Poly(_subresultant_gcd(_to_primitive_ints(a), _to_primitive_ints(b))).monic()


# ---------------------------------------------------------------------------
# Rational functions


class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Scalar, den: Poly | Scalar = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        if den.degree > 0 and num.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c: Scalar) -> RationalFunction:
        return cls(Poly.const(c))

    @classmethod
    def s(cls) -> RationalFunction:
        return cls(Poly.s())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeff(0)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.num.coeff(0) == other
        if isinstance(other, Poly):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return poly_to_str(self.num)
        return f"{_wrap(self.num)}/{_wrap(self.den)}"

    def __neg__(self) -> RationalFunction:
        out = object.__new__(RationalFunction)
        out.num, out.den = -self.num, self.den
        return out

    def __add__(self, other) -> RationalFunction:
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> RationalFunction:
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> RationalFunction:
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> RationalFunction:
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> RationalFunction:
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> RationalFunction:
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other) -> RationalFunction:
        o = _as_rf(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(Fraction(x))
        if d == 0:
            raise DivisionByZero(f"pole at s = {x}")
        return Fraction(self.num(Fraction(x))) / d

    # behaviour at s = 0 and s = infinity, used by the Foster preamble
    def value_at_zero(self) -> Fraction | None:
        """Y(0), or None when s = 0 is a pole."""
        if self.den.coeff(0) == 0:
            return None
        return self.num.coeff(0) / self.den.coeff(0)

    def value_at_infinity(self) -> Fraction | None:
        """lim Y(s) as s -> infinity, or None when infinity is a pole."""
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return None
        if dn < dd:
            return Fraction(0)
        return self.num.lc / self.den.lc


def _wrap(p: Poly) -> str:
    text = poly_to_str(p)
    return text if sum(1 for c in p.coeffs if c) == 1 and p.coeffs[-1] > 0 else f"({text})"


def _as_rf(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RationalFunction.const(x)
    if isinstance(x, Poly):
        return RationalFunction(x)
    return None


def rf_normalize(num: Poly, den: Poly) -> RationalFunction:
    """Reduce num/den to lowest terms with a monic denominator."""
    return RationalFunction(num, den)


def rf_arith(a: RationalFunction, b: RationalFunction | None, op: str) -> RationalFunction:
    """Field arithmetic by name: add, sub, mul, div or inv (``b`` unused for inv)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Coefficient vectors of the one-port admittance family


@dataclass(frozen=True)
class CoefficientVector:
    """(a3 s^3 + a2 s^2 + a1 s + a0) / (b4 s^4 + b3 s^3 + b2 s^2 + b1 s).

    ``beta4`` is 1 for the monic well-defined form and 0 for the cubic form.
    """

    alpha3: Fraction
    alpha2: Fraction
    alpha1: Fraction
    alpha0: Fraction
    beta3: Fraction
    beta2: Fraction
    beta1: Fraction
    beta4: int = 1

    @classmethod
    def of(cls, alphas: Sequence[Scalar], betas: Sequence[Scalar], beta4: int = 1) -> CoefficientVector:
        a3, a2, a1, a0 = (Fraction(x) for x in alphas)
        b3, b2, b1 = (Fraction(x) for x in betas)
        return cls(a3, a2, a1, a0, b3, b2, b1, beta4)

    @property
    def alphas(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.alpha3, self.alpha2, self.alpha1, self.alpha0)

    @property
    def betas(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.beta3, self.beta2, self.beta1)

    def values(self) -> tuple[Fraction, ...]:
        return self.alphas + self.betas

    def scaled(self, lam: Scalar) -> CoefficientVector:
        """Common rescaling of numerator and denominator (cubic form only)."""
        lam = Fraction(lam)
        return CoefficientVector(*(lam * v for v in self.values()), beta4=self.beta4)

    def numerator(self) -> Poly:
        return Poly((self.alpha0, self.alpha1, self.alpha2, self.alpha3))

    def denominator(self) -> Poly:
        return Poly((0, self.beta1, self.beta2, self.beta3, self.beta4))

    def to_rf(self) -> RationalFunction:
        return RationalFunction(self.numerator(), self.denominator())

    def __str__(self) -> str:
        a = ",".join(format_rat(x) for x in self.alphas)
        b = ",".join(format_rat(x) for x in self.betas)
        return f"({a};{b}|beta4={self.beta4})"


def extract_theorem5_coeffs(Y: RationalFunction) -> CoefficientVector:
    """Read off the monic quartic-denominator form ``num / (s^4 + ... + b1 s)``."""
    num, den = Y.num, Y.den
    if den.degree != 4 or num.degree > 3 or den.coeff(0) != 0:
        raise ShapeMismatch(
            f"expected deg(den)=4 with zero constant term and deg(num)<=3, got {Y}"
        )
    scale = 1 / den.lc
    a = [num.coeff(i) * scale for i in range(4)]
    b = [den.coeff(i) * scale for i in range(4)]
    return CoefficientVector(a[3], a[2], a[1], a[0], b[3], b[2], b[1], beta4=1)


def extract_theorem6_coeffs(Y: RationalFunction) -> CoefficientVector:
    """One representative of the cubic-denominator form (monic denominator)."""
    num, den = Y.num, Y.den
    if den.degree > 3 or num.degree > 3 or den.degree < 1 or den.coeff(0) != 0:
        raise ShapeMismatch(
            f"expected 1<=deg(den)<=3 with zero constant term and deg(num)<=3, got {Y}"
        )
    a = [num.coeff(i) for i in range(4)]
    b = [den.coeff(i) for i in range(4)]
    return CoefficientVector(a[3], a[2], a[1], a[0], b[3], b[2], b[1], beta4=0)


# ---------------------------------------------------------------------------
# Text forms


def parse_poly_list(text: str) -> Poly:
    """``"[2, 2/1, 1, 1]"`` (ascending degree) -> Poly."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"polynomial must be a bracketed coefficient list: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return Poly()
    return Poly(parse_rat(tok) for tok in inner.split(","))


def format_poly_list(p: Poly) -> str:
    return "[" + ", ".join(format_rat(c) for c in p.coeffs) + "]"


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(s)|([-+*/^()]))")


def parse_rational_function(text: str) -> RationalFunction:
    """Parse an expression in ``s`` such as ``"(s^3+2s^2+2s+3)/(s^3+s^2+2s)"``.

    Supports + - * / ^, parentheses, integer literals and implicit
    multiplication (``2s^2``). Decimal literals are rejected.
    """
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        if m.group(1):
            tokens.append(("num", m.group(1)))
        elif m.group(2):
            tokens.append(("s", "s"))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if any(t[0] == "num" for t in tokens) and "." in text:
        raise ParseError("decimal literals are not allowed")
    return _ExprParser(tokens, text).parse()


class _ExprParser:
    def __init__(self, tokens: list[tuple[str, str]], text: str):
        self.toks = tokens
        self.i = 0
        self.text = text

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> tuple[str, str]:
        t = self.peek()
        if t is None:
            raise ParseError(f"unexpected end of expression {self.text!r}")
        self.i += 1
        return t

    def parse(self) -> RationalFunction:
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self) -> RationalFunction:
        acc = self.term()
        while (t := self.peek()) and t[0] == "op" and t[1] in "+-":
            self.take()
            rhs = self.term()
            acc = acc + rhs if t[1] == "+" else acc - rhs
        return acc

    def term(self) -> RationalFunction:
        acc = self.factor()
        while (t := self.peek()) is not None:
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.factor()
                acc = acc * rhs if t[1] == "*" else acc / rhs
            elif t[0] in ("num", "s") or t == ("op", "("):
                acc = acc * self.factor()
            else:
                break
        return acc

    def factor(self) -> RationalFunction:
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.factor()
        if t == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            out = RationalFunction.const(1)
            for _ in range(int(val)):
                out = out * base
            return out
        return base

    def atom(self) -> RationalFunction:
        kind, val = self.take()
        if kind == "num":
            return RationalFunction.const(int(val))
        if kind == "s":
            return RationalFunction.s()
        if val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        raise ParseError(f"unexpected token {val!r}")
