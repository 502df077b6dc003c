"""Elements of the cyclotomic field Q(w), w = e^{i pi/4}.

An element is c0 + c1*w + c2*w^2 + c3*w^3 with rational coefficients and the
reduction rule w^4 = -1. The powers 1, w, w^2, w^3 form a basis, so equality
is coefficient-wise.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Union

Scalar = Union[int, Fraction]

_SQRT1_2 = math.sqrt(0.5)
# (re, im) of w^k for k = 0..3
_BASIS = ((1.0, 0.0), (_SQRT1_2, _SQRT1_2), (0.0, 1.0), (-_SQRT1_2, _SQRT1_2))

_TERM = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*(?:\*\s*w(?:\^([123]))?)?\s*$")


class Cyclotomic:
    def __init__(self, c0: Scalar = 0, c1: Scalar = 0, c2: Scalar = 0, c3: Scalar = 0) -> None:
        self._c: tuple[Fraction, Fraction, Fraction, Fraction] = (
            Fraction(c0),
            Fraction(c1),
            Fraction(c2),
            Fraction(c3),
        )

    @property
    def coef(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._c

    @classmethod
    def zero(cls) -> Cyclotomic:
        return cls()

    @classmethod
    def one(cls) -> Cyclotomic:
        return cls(1)

    @classmethod
    def sqrt2(cls) -> Cyclotomic:
        # w - w^3 = 2 cos(pi/4)
        return cls(0, 1, 0, -1)

    @classmethod
    def inv_sqrt2(cls) -> Cyclotomic:
        return cls(0, Fraction(1, 2), 0, Fraction(-1, 2))

    @classmethod
    def root_power(cls, k: int) -> Cyclotomic:
        """Return w^k in the basis."""
        k %= 8
        c = [0, 0, 0, 0]
        c[k % 4] = 1 if k < 4 else -1
        return cls(*c)

    @classmethod
    def parse(cls, text: str) -> Cyclotomic:
        """Parse the form produced by ``str``: ``c0 + c1*w + c2*w^2 + c3*w^3``."""
        c = [Fraction(0)] * 4
        for part in text.split(" + "):
            match = _TERM.match(part)
            if match is None:
                raise ValueError(f"cannot parse cyclotomic term {part!r}")
            value, power = match.groups()
            if "*" in part:
                index = int(power) if power else 1
            else:
                index = 0
            c[index] += Fraction(value)
        return cls(*c)

    def __repr__(self) -> str:
        return "Cyclotomic({}, {}, {}, {})".format(*(str(x) for x in self._c))

    def __str__(self) -> str:
        c0, c1, c2, c3 = self._c
        return f"{c0} + {c1}*w + {c2}*w^2 + {c3}*w^3"

    def __hash__(self) -> int:
        return hash(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(other)
        if isinstance(other, Cyclotomic):
            return self._c == other.coef
        return NotImplemented

    def __bool__(self) -> bool:
        return any(self._c)

    def __add__(self, other: Scalar | Cyclotomic) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return Cyclotomic(*(a + b for a, b in zip(self._c, other.coef)))

    def __radd__(self, other: Scalar) -> Cyclotomic:
        return self + other

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(*(-a for a in self._c))

    def __sub__(self, other: Scalar | Cyclotomic) -> Cyclotomic:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: Scalar | Cyclotomic) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(*(a * other for a in self._c))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        out = [Fraction(0)] * 4
        for i, a in enumerate(self._c):
            if not a:
                continue
            for j, b in enumerate(other.coef):
                if not b:
                    continue
                k = i + j
                if k < 4:
                    out[k] += a * b
                else:
                    out[k - 4] -= a * b
        return Cyclotomic(*out)

    def __rmul__(self, other: Scalar) -> Cyclotomic:
        return self * other

    def __pow__(self, exponent: int) -> Cyclotomic:
        if exponent < 0:
            raise ValueError("negative powers need field inversion, which is not provided")
        result = Cyclotomic.one()
        base = self
        while exponent:
            if exponent & 1:
                result *= base
            base *= base
            exponent >>= 1
        return result

    def conj(self) -> Cyclotomic:
        """Complex conjugate: w -> -w^3, w^2 -> -w^2, w^3 -> -w."""
        c0, c1, c2, c3 = self._c
        return Cyclotomic(c0, -c3, -c2, -c1)

    def norm_squared(self) -> Cyclotomic:
        return self * self.conj()

    @property
    def is_real(self) -> bool:
        return self == self.conj()

    @property
    def is_integral(self) -> bool:
        """True when every coefficient is an integer, i.e. the value lies in Z[w]."""
        return all(c.denominator == 1 for c in self._c)

    def bit_length(self) -> int:
        return max(max(c.numerator.bit_length(), c.denominator.bit_length()) for c in self._c)

    @cached_property
    def _complex(self) -> complex:
        re_ = sum(float(c) * b[0] for c, b in zip(self._c, _BASIS))
        im_ = sum(float(c) * b[1] for c, b in zip(self._c, _BASIS))
        return complex(re_, im_)

    def to_complex(self) -> tuple[float, float]:
        value = self._complex
        return value.real, value.imag

    def __complex__(self) -> complex:
        return self._complex

    def __float__(self) -> float:
        return self._complex.real


def add(x: Cyclotomic, y: Cyclotomic) -> Cyclotomic:
    return x + y


def mul(x: Cyclotomic, y: Cyclotomic) -> Cyclotomic:
    return x * y


def conj(x: Cyclotomic) -> Cyclotomic:
    return x.conj()


def root_power(k: int) -> Cyclotomic:
    return Cyclotomic.root_power(k)


def to_complex(x: Cyclotomic) -> tuple[float, float]:
    return x.to_complex()
