"""Exact arithmetic in the rational function field Q(u, q).

Values are reduced fractions of integer polynomials in ``u`` and ``q``.
Polynomial multiplication and gcd are delegated to FLINT (``python-flint``);
this module owns the canonical form, the Laurent input type, specialization
to exact rationals and high-precision complex evaluation.

Canonical form of a :class:`RatFunc`: numerator and denominator are coprime
in Z[u, q] and the denominator's leading coefficient (lex order, ``u`` before
``q``) is positive.  Zero is ``0/1``.  Structural equality is value equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Union

import flint
import mpmath

__all__ = [
    "BadSpecialization",
    "DEFAULT_POINT",
    "FieldDivisionByZero",
    "LaurentPoly",
    "RatFunc",
    "Specialization",
    "arith",
    "eval_complex",
    "principal_root",
    "specialize",
    "U",
    "Q",
    "ONE",
    "ZERO",
]

_CTX = flint.fmpz_mpoly_ctx.get(("u", "q"), "lex")
_U, _Q = _CTX.gens()
_PONE = _CTX.from_dict({(0, 0): 1})
_PZERO = _CTX.from_dict({})

Scalar = Union[int, Fraction]


class FieldDivisionByZero(ZeroDivisionError):
    """Division by the zero element of Q(u, q)."""


class BadSpecialization(ValueError):
    """A denominator vanishes at the requested specialization point."""


class LaurentPoly:
    """Laurent polynomial in u, q with exact rational coefficients.

    ``terms`` maps exponent pairs ``(e_u, e_q)`` (possibly negative) to
    nonzero :class:`~fractions.Fraction` coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(exps[0]), int(exps[1]))] = c
        self.terms = clean

    @classmethod
    def monomial(cls, eu: int = 0, eq: int = 0, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({(eu, eq): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in self.terms.items():
            for (x, y), d in other.terms.items():
                key = (a + x, b + y)
                out[key] = out.get(key, 0) + c * d
        return LaurentPoly(out)

    def __repr__(self):
        return f"LaurentPoly({format_terms({e: c for e, c in self.terms.items()})})"


def _poly_from_laurent(p: LaurentPoly) -> tuple[flint.fmpz_mpoly, flint.fmpz_mpoly]:
    """Write a Laurent polynomial as ``num / den`` with integer polynomials."""
    if not p.terms:
        return _PZERO, _PONE
    mu = min(0, min(e[0] for e in p.terms))
    mq = min(0, min(e[1] for e in p.terms))
    scale = lcm(*(c.denominator for c in p.terms.values()))
    num = _CTX.from_dict(
        {(eu - mu, eq - mq): int(c * scale) for (eu, eq), c in p.terms.items()}
    )
    den = _CTX.from_dict({(-mu, -mq): scale})
    return num, den


class RatFunc:
    """Element of Q(u, q) held in canonical reduced form."""

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1):
        n, d = _coerce_pair(num)
        if not (isinstance(den, int) and den == 1):
            dn, dd = _coerce_pair(den)
            if dn.is_zero():
                raise FieldDivisionByZero("zero denominator")
            n, d = n * dd, d * dn
        self._n, self._d = _canonical(n, d)

    @classmethod
    def _raw(cls, n, d) -> "RatFunc":
        obj = object.__new__(cls)
        obj._n = n
        obj._d = d
        return obj

    # -- structure -----------------------------------------------------
    @property
    def num(self) -> LaurentPoly:
        return LaurentPoly({(int(a), int(b)): int(c) for (a, b), c in self._n.to_dict().items()})

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly({(int(a), int(b)): int(c) for (a, b), c in self._d.to_dict().items()})

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_one(self) -> bool:
        return self._n == self._d

    def is_constant(self) -> bool:
        return self._n.is_constant() and self._d.is_constant()

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self._n.coefficient(0)) if not self._n.is_zero() else 0,
                        int(self._d.coefficient(0)))

    def __bool__(self):
        return not self._n.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((str(self._n), str(self._d)))

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if n1.is_zero():
            return other
        if n2.is_zero():
            return self
        if d1.is_one() and d2.is_one():
            return RatFunc._raw(n1 + n2, _PONE)
        if d1 == d2:
            return RatFunc._raw(*_canonical(n1 + n2, d1))
        g = d1.gcd(d2)
        if g.is_one():
            return RatFunc._raw(*_canonical(n1 * d2 + n2 * d1, d1 * d2))
        a, b = d1 / g, d2 / g
        return RatFunc._raw(*_canonical(n1 * b + n2 * a, a * d2))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self._n, self._d)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if n1.is_zero() or n2.is_zero():
            return ZERO
        if d1.is_one() and d2.is_one():
            return RatFunc._raw(n1 * n2, _PONE)
        g1 = n1.gcd(d2)
        g2 = n2.gcd(d1)
        if not g1.is_one():
            n1, d2 = n1 / g1, d2 / g1
        if not g2.is_one():
            n2, d1 = n2 / g2, d1 / g2
        n, d = n1 * n2, d1 * d2
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self._n.is_zero():
            raise FieldDivisionByZero("inverse of zero")
        n, d = self._d, self._n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(n, d)

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self._n**k, self._d**k)

    # -- substitution --------------------------------------------------
    def subs_u(self, value: Scalar) -> "RatFunc":
        """Substitute ``u = value`` exactly, keeping ``q`` symbolic."""
        value = Fraction(value)
        n = _subs_u_poly(self._n, value)
        d = _subs_u_poly(self._d, value)
        if d.is_zero():
            raise BadSpecialization(f"denominator of {self} vanishes at u={value}")
        return RatFunc(n, d)

    def __call__(self, u0: Scalar, q0: Scalar) -> Fraction:
        d = _eval_poly(self._d, Fraction(u0), Fraction(q0))
        if d == 0:
            raise BadSpecialization(f"bad specialization point u={u0}, q={q0} for {self}")
        return _eval_poly(self._n, Fraction(u0), Fraction(q0)) / d

    # -- text ----------------------------------------------------------
    def __str__(self):
        num = format_terms(self._n.to_dict())
        if self._d.is_one():
            return num
        return f"({num})/({format_terms(self._d.to_dict())})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        """Inverse of ``str``: ``"(num)/(den)"`` or a bare sum of terms."""
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
        if m and _balanced(m.group(1)) and _balanced(m.group(2)):
            return cls(parse_terms(m.group(1)), parse_terms(m.group(2)))
        return cls(parse_terms(text))


def _balanced(s: str) -> bool:
    return "(" not in s and ")" not in s


def _coerce_pair(x):
    if isinstance(x, RatFunc):
        return x._n, x._d
    if isinstance(x, bool):
        raise TypeError("bool is not a field element")
    if isinstance(x, int):
        return _CTX.from_dict({(0, 0): x}) if x else _PZERO, _PONE
    if isinstance(x, Fraction):
        return (_CTX.from_dict({(0, 0): x.numerator}) if x else _PZERO,
                _CTX.from_dict({(0, 0): x.denominator}))
    if isinstance(x, LaurentPoly):
        return _poly_from_laurent(x)
    if isinstance(x, flint.fmpz_mpoly):
        return x, _PONE
    raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")


def _lift(x):
    if isinstance(x, RatFunc):
        return x
    try:
        return RatFunc(x)
    except TypeError:
        return NotImplemented


def _canonical(n, d):
    if n.is_zero():
        return _PZERO, _PONE
    if not d.is_one():
        g = n.gcd(d)
        if not g.is_one():
            n, d = n / g, d / g
        if d.leading_coefficient() < 0:
            n, d = -n, -d
    return n, d


def _subs_u_poly(p, value: Fraction) -> LaurentPoly:
    """p(value, q) as a Laurent polynomial in q with rational coefficients."""
    out: dict[tuple[int, int], Fraction] = {}
    for (eu, eq), c in p.to_dict().items():
        eq = int(eq)
        out[(0, eq)] = out.get((0, eq), 0) + int(c) * value**int(eu)
    return LaurentPoly(out)


def _eval_poly(p, u0: Fraction, q0: Fraction) -> Fraction:
    total = Fraction(0)
    for (eu, eq), c in p.to_dict().items():
        total += int(c) * u0**int(eu) * q0**int(eq)
    return total


# -- canonical text --------------------------------------------------------

def format_terms(terms: Mapping[tuple[int, int], object]) -> str:
    """Render ``{(e_u, e_q): c}`` as e.g. ``2*u^2*q - 3*q^-1 + 1``.

    Terms are sorted by exponent pair, highest first (u before q).
    """
    items = sorted((((int(e[0]), int(e[1])), c if isinstance(c, Fraction) else Fraction(int(c)))
                    for e, c in terms.items() if c), reverse=True)
    if not items:
        return "0"
    parts = []
    for k, ((eu, eq), c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = []
        for name, e in (("u", eu), ("q", eq)):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if c.denominator != 1:
            coeff = f"{c.numerator}/{c.denominator}"
        else:
            coeff = str(c.numerator)
        if factors and coeff == "1":
            body = "*".join(factors)
        else:
            body = "*".join([coeff] + factors)
        if k == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def parse_terms(text: str) -> LaurentPoly:
    """Parse the output of :func:`format_terms` back into a LaurentPoly."""
    src = text.replace(" ", "")
    if src in ("", "0"):
        return LaurentPoly()
    pos = 0
    out: dict[tuple[int, int], Fraction] = {}
    term_re = re.compile(r"([+-]?)(\d+(?:/\d+)?)?((?:\*?[uq](?:\^-?\d+)?)*)")
    while pos < len(src):
        m = term_re.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        sign, coeff, mons = m.groups()
        if not coeff and not mons:
            raise ValueError(f"empty term in {text!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        eu = eq = 0
        for var, exp in re.findall(r"([uq])(?:\^(-?\d+))?", mons):
            e = int(exp) if exp else 1
            if var == "u":
                eu += e
            else:
                eq += e
        out[(eu, eq)] = out.get((eu, eq), 0) + c
        pos = m.end()
    return LaurentPoly(out)


ZERO = RatFunc._raw(_PZERO, _PONE)
ONE = RatFunc._raw(_PONE, _PONE)
U = RatFunc._raw(_U, _PONE)
Q = RatFunc._raw(_Q, _PONE)


def arith(op: str, x: RatFunc, y: RatFunc) -> RatFunc:
    """Field operation by name: ``add``, ``sub``, ``mul`` or ``div``."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# -- specialization --------------------------------------------------------


@dataclass(frozen=True)
class Specialization:
    """A rational point (u0, q0) at which elements of Q(u, q) are evaluated."""

    u0: Fraction = Fraction(1)
    q0: Fraction = Fraction(5, 7)

    def __post_init__(self):
        object.__setattr__(self, "u0", Fraction(self.u0))
        object.__setattr__(self, "q0", Fraction(self.q0))
        if self.u0 == 0:
            raise BadSpecialization("u0 must be nonzero")
        if self.q0 in (0, 1, -1):
            raise BadSpecialization("q0 must avoid 0 and +-1")

    def check(self, n: int) -> None:
        """Guard every denominator 1 - q^k y, y in {+-1, +-u^{+-1}}, |k| <= n+2."""
        ys = {Fraction(1), Fraction(-1), self.u0, -self.u0, 1 / self.u0, -1 / self.u0}
        for k in range(1, n + 3):
            if self.q0**k in (1, -1):
                raise BadSpecialization(f"q0^{k} = +-1")
        for k in range(-(n + 2), n + 3):
            for y in ys:
                if k == 0 and y == 1:
                    continue
                if self.q0**k * y == 1:
                    raise BadSpecialization(f"1 - q0^{k}*{y} vanishes")
        if self.q0 == -1 or self.u0 == -1:
            raise BadSpecialization("u0 + 1 or q0 + 1 vanishes")

    def __str__(self):
        return f"u0={self.u0},q0={self.q0}"


DEFAULT_POINT = Specialization(Fraction(1), Fraction(5, 7))


def specialize(x: RatFunc, s: Specialization) -> Fraction:
    """Exact rational value of ``x`` at ``s``."""
    return _lift(x)(s.u0, s.q0)


def _context(precision_bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = precision_bits
    return ctx


def eval_complex(x: RatFunc, s: Specialization, precision_bits: int = 128):
    """Value of ``x`` at ``s`` as an mpmath complex of the given precision."""
    value = specialize(x, s)
    ctx = _context(precision_bits)
    return ctx.mpc(ctx.mpf(value.numerator) / value.denominator)


def principal_root(z, k: int, precision_bits: int = 128):
    """Principal k-th root, ``exp(log(z)/k)`` with the argument in (-pi, pi]."""
    ctx = _context(precision_bits)
    if isinstance(z, (Fraction, int)):
        z = ctx.mpf(Fraction(z).numerator) / Fraction(z).denominator
    return ctx.root(ctx.mpc(z), k)
