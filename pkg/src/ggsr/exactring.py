"""Laurent polynomials in ``q`` with rational exponents and rational coefficients.

A :class:`Scalar` is a finite sum ``sum c_e q^e`` with ``c_e, e`` in Q.  Values
are immutable and always canonical (no zero coefficients), so equality is plain
map equality.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "Scalar",
    "Q",
    "QHAT",
    "ONE",
    "ZERO",
    "as_rational",
    "monomial",
    "add",
    "mul",
    "neg",
    "invert_q",
    "eval_at_one",
    "d_dh_at_zero",
]

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/5"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError(f"not an exact rational: {x!r}")
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def _canonical(terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c}


class Scalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        else:
            self._terms = _canonical(
                {as_rational(e): as_rational(c) for e, c in dict(terms).items()}
            )
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        # terms must already hold Fraction keys/values with no zeros
        s = object.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def const(cls, c) -> "Scalar":
        c = as_rational(c)
        return cls._raw({Fraction(0): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls.const(x)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms as ``(exponent, coefficient)`` pairs, exponent ascending."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {Fraction(0)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(Fraction(0), Fraction(0))

    def exponents(self):
        return sorted(self._terms)

    # ring operations

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Scalar._raw(_canonical(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Scalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._terms == other._terms
        try:
            return self._terms == Scalar.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # q-specific maps

    def invert_q(self) -> "Scalar":
        return Scalar._raw({-e: c for e, c in self._terms.items()})

    def eval_at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def d_dh_at_zero(self) -> Fraction:
        return sum((c * e for e, c in self._terms.items()), Fraction(0))

    # serialization

    def to_json(self) -> list:
        return [
            [c.numerator, c.denominator, e.numerator, e.denominator]
            for e, c in self.items()
        ]

    @classmethod
    def from_json(cls, data) -> "Scalar":
        terms: dict = {}
        for cn, cd, en, ed in data:
            e = Fraction(en, ed)
            if e in terms:
                raise ValueError(f"duplicate exponent {e} in scalar JSON")
            terms[e] = Fraction(cn, cd)
        return cls(terms)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^({e})"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def monomial(coeff, exp) -> Scalar:
    """``coeff * q**exp``; a zero coefficient gives the zero Scalar."""
    coeff = as_rational(coeff)
    if not coeff:
        return Scalar._raw({})
    return Scalar._raw({as_rational(exp): coeff})


def add(a: Scalar, b: Scalar) -> Scalar:
    return Scalar.coerce(a) + Scalar.coerce(b)


def mul(a: Scalar, b: Scalar) -> Scalar:
    return Scalar.coerce(a) * Scalar.coerce(b)


def neg(a: Scalar) -> Scalar:
    return -Scalar.coerce(a)


def invert_q(a: Scalar) -> Scalar:
    """Substitute ``q -> 1/q``."""
    return Scalar.coerce(a).invert_q()


def eval_at_one(a: Scalar) -> Fraction:
    return Scalar.coerce(a).eval_at_one()


def d_dh_at_zero(a: Scalar) -> Fraction:
    """First derivative at ``h = 0`` of ``a`` under ``q = exp(h)``."""
    return Scalar.coerce(a).d_dh_at_zero()


ZERO = Scalar()
ONE = Scalar.const(1)
Q = monomial(1, 1)
QHAT = Q - monomial(1, -1)
