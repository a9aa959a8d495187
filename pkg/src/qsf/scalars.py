"""Exact arithmetic in Q(zeta_8) and in the Laurent ring Q(zeta_8)[pi, 1/pi].

An element of Q(zeta_8) is stored as four rationals (c0, c1, c2, c3) meaning
c0 + c1 z + c2 z^2 + c3 z^3 with z^4 = -1.  So i = z^2 and sqrt(2) = z - z^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Rational)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class CycScalar:
    """Immutable element of Q(zeta_8) in the basis 1, z, z^2, z^3."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (_q(c0), _q(c1), _q(c2), _q(c3))

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def coerce(cls, x) -> "CycScalar":
        if isinstance(x, CycScalar):
            return x
        return cls._raw((_q(x), _ZERO, _ZERO, _ZERO))

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        c0, c1, c2, c3 = self.c
        return bool(c0 or c1 or c2 or c3)

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return self.c == other.c
        if isinstance(other, (int, Rational, type(_ONE))):
            return self.c == (_q(other), _ZERO, _ZERO, _ZERO)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    # -- ring operations --------------------------------------------------
    def __neg__(self):
        a0, a1, a2, a3 = self.c
        return CycScalar._raw((-a0, -a1, -a2, -a3))

    def __add__(self, other):
        if not isinstance(other, CycScalar):
            try:
                other = CycScalar.coerce(other)
            except TypeError:
                return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        return CycScalar._raw((a0 + b0, a1 + b1, a2 + b2, a3 + b3))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CycScalar):
            try:
                other = CycScalar.coerce(other)
            except TypeError:
                return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        return CycScalar._raw((a0 - b0, a1 - b1, a2 - b2, a3 - b3))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a0, a1, a2, a3 = self.c
        if not isinstance(other, CycScalar):
            try:
                r = _q(other)
            except TypeError:
                return NotImplemented
            return CycScalar._raw((a0 * r, a1 * r, a2 * r, a3 * r))
        b0, b1, b2, b3 = other.c
        if not (b1 or b2 or b3):
            return CycScalar._raw((a0 * b0, a1 * b0, a2 * b0, a3 * b0))
        if not (a1 or a2 or a3):
            return CycScalar._raw((a0 * b0, a0 * b1, a0 * b2, a0 * b3))
        return CycScalar._raw((
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        ))

    __rmul__ = __mul__

    def mul_rational(self, r) -> "CycScalar":
        a0, a1, a2, a3 = self.c
        return CycScalar._raw((a0 * r, a1 * r, a2 * r, a3 * r))

    def _mult_matrix(self):
        # column j holds the coordinates of self * z^j
        a0, a1, a2, a3 = self.c
        return [
            [a0, -a3, -a2, -a1],
            [a1, a0, -a3, -a2],
            [a2, a1, a0, -a3],
            [a3, a2, a1, a0],
        ]

    def __truediv__(self, other):
        if not isinstance(other, CycScalar):
            try:
                r = _q(other)
            except TypeError:
                return NotImplemented
            if not r:
                raise ZeroDivisionError("division by zero in Q(zeta_8)")
            return self.mul_rational(1 / r)
        if not other:
            raise ZeroDivisionError("division by zero in Q(zeta_8)")
        if other.is_rational():
            return self.mul_rational(1 / other.c[0])
        # solve other * x = self as a 4x4 rational system
        m = other._mult_matrix()
        rows = [m[i] + [self.c[i]] for i in range(4)]
        for col in range(4):
            piv = next(r for r in range(col, 4) if rows[r][col])
            rows[col], rows[piv] = rows[piv], rows[col]
            inv = 1 / rows[col][col]
            rows[col] = [x * inv for x in rows[col]]
            for r in range(4):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
        return CycScalar._raw(tuple(rows[i][4] for i in range(4)))

    def __rtruediv__(self, other):
        return CycScalar.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else ONE / self
        k = abs(k)
        out = ONE
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CycScalar":
        """Complex conjugate, z -> z^7 = -z^3."""
        a0, a1, a2, a3 = self.c
        return CycScalar._raw((a0, -a3, -a2, -a1))

    # -- output -----------------------------------------------------------
    def to_json(self) -> list[str]:
        return [str(x) for x in self.c]

    @classmethod
    def from_json(cls, data) -> "CycScalar":
        return cls(*[mpq(s) for s in data])

    def __repr__(self):
        parts = []
        for k, x in enumerate(self.c):
            if not x:
                continue
            unit = ("", "z", "z^2", "z^3")[k]
            if not unit:
                parts.append(str(x))
            elif x == 1:
                parts.append(unit)
            elif x == -1:
                parts.append("-" + unit)
            else:
                parts.append(f"{x}*{unit}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


ZERO = CycScalar()
ONE = CycScalar(1)
ZETA = CycScalar(0, 1)
I = CycScalar(0, 0, 1)
SQRT2 = CycScalar(0, 1, 0, -1)
HALF = CycScalar(Fraction(1, 2))

_ZETA_POWERS = tuple(
    CycScalar._raw(tuple(
        (_ONE if k < 4 else -_ONE) if j == k % 4 else _ZERO for j in range(4)
    ))
    for k in range(8)
)


def zeta_pow(k: int) -> CycScalar:
    return _ZETA_POWERS[k % 8]


def i_pow(k: int) -> CycScalar:
    return _ZETA_POWERS[(2 * k) % 8]


def cyc_arith(a, b, kind: str) -> CycScalar:
    a, b = CycScalar.coerce(a), CycScalar.coerce(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


@dataclass(frozen=True)
class BetaChoice:
    """beta = zeta_8^b for a rank n; requires b = n mod 2, i.e. beta^4 = (-1)^n."""

    n: int
    b: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank N must be at least 1")
        object.__setattr__(self, "b", self.b % 8)
        if (self.b - self.n) % 2:
            raise ValueError(
                f"beta = zeta_8^{self.b} violates beta^4 = (-1)^N for N = {self.n}"
            )

    def pow(self, k: int) -> CycScalar:
        return zeta_pow(self.b * k)


def beta_pow(cfg, k: int) -> CycScalar:
    """beta^k for either a BetaChoice or an (n, b) pair."""
    if not isinstance(cfg, BetaChoice):
        cfg = BetaChoice(*cfg)
    return cfg.pow(k)


class LaurentScalar:
    """Finitely supported map pi-exponent -> CycScalar, no zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = CycScalar.coerce(c)
            if c:
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        return cls({0: x})

    @classmethod
    def monomial(cls, coeff, exp: int = 0) -> "LaurentScalar":
        return cls({exp: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentScalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, CycScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return LaurentScalar(out)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        """Single-term elements are the units of the Laurent ring."""
        return len(self.terms) == 1

    def inverse(self) -> "LaurentScalar":
        if not self.is_unit():
            raise ZeroDivisionError("only single-term Laurent scalars are invertible")
        (e, c), = self.terms.items()
        return LaurentScalar({-e: ONE / c})

    def __truediv__(self, other):
        return self * LaurentScalar.coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentScalar({0: ONE})
        for _ in range(k):
            out = out * self
        return out

    def to_json(self) -> dict[str, list[str]]:
        return {str(e): self.terms[e].to_json() for e in sorted(self.terms)}

    @classmethod
    def from_json(cls, data) -> "LaurentScalar":
        return cls({int(e): CycScalar.from_json(c) for e, c in data.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            pe = "" if e == 0 else ("pi" if e == 1 else f"pi^{e}")
            parts.append(f"({c}){'*' + pe if pe else ''}")
        return " + ".join(parts)


PI = LaurentScalar({1: ONE})


def laurent_arith(a, b, kind: str) -> LaurentScalar:
    a, b = LaurentScalar.coerce(a), LaurentScalar.coerce(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")
