"""Exact arithmetic in the ring of integer polynomials in the formal weight.

Every identity this package checks is exact, so coefficients are
arbitrary-precision integers and the weight stays a formal variable ``L``
until a concrete model specializes it to a rational number.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class WeightPoly:
    """Polynomial in the formal weight ``L`` with integer coefficients.

    Terms are kept as a sorted tuple of ``(exponent, coefficient)`` pairs
    with every stored coefficient nonzero, so ``==`` is ring equality.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for exponent, coefficient in self.terms:
            if exponent < 0:
                raise ValueError(f"negative weight exponent {exponent}")
            merged[exponent] = merged.get(exponent, 0) + int(coefficient)
        canonical = tuple(sorted((e, c) for e, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", canonical)

    @staticmethod
    def integer(value: int) -> WeightPoly:
        return WeightPoly(((0, value),))

    @staticmethod
    def weight(power: int = 1, coefficient: int = 1) -> WeightPoly:
        return WeightPoly(((power, coefficient),))

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def as_integer(self) -> int | None:
        """The constant value if this polynomial is constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return self.terms[0][1]
        return None

    def specialize(self, value: Fraction | int) -> Fraction:
        """Evaluate at a rational value of the weight, exactly."""
        v = Fraction(value)
        return sum((Fraction(c) * v**e for e, c in self.terms), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: WeightPoly | int) -> WeightPoly:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return WeightPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> WeightPoly:
        return WeightPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: WeightPoly | int) -> WeightPoly:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> WeightPoly:
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return WeightPoly(tuple(out.items()))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[tuple[str, str]] = []
        for exponent, coefficient in reversed(self.terms):
            if exponent == 0:
                body = str(abs(coefficient))
            else:
                power = "L" if exponent == 1 else f"L^{exponent}"
                body = power if abs(coefficient) == 1 else f"{abs(coefficient)}*{power}"
            pieces.append(("-" if coefficient < 0 else "+", body))
        sign, body = pieces[0]
        out = body if sign == "+" else "-" + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"WeightPoly[{self}]"


def _as_poly(value) -> WeightPoly | None:
    if isinstance(value, WeightPoly):
        return value
    if isinstance(value, int):
        return WeightPoly.integer(value)
    return None


ZERO = WeightPoly()
ONE = WeightPoly.integer(1)
WEIGHT = WeightPoly.weight()
