"""Concrete Rota-Baxter algebras and the evaluation homomorphism.

Two exact models are provided: rational scalars, where the operator is
multiplication by minus the weight, and truncated rational Laurent series,
where the operator projects onto the strictly negative powers (weight -1).
Evaluating a free-algebra element in a model specializes the formal weight
to the model's weight and interprets grafting as the model operator; the
laws it must satisfy are the testable content of freeness.

Analytic weight-0 operators (integration of continuous functions, say) are
Rota-Baxter operators too, but their values are not exactly representable,
so they stay out of scope; the two exact models above fully exercise the
evaluation machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import Element
from .forests import Forest, Letter, Tree


class ModelError(ValueError):
    """Evaluation request that the target model cannot honour."""


# ---------------------------------------------------------------------------
# scalar model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarModel:
    """Rational numbers with the operator r -> -weight * r."""

    weight: Fraction

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def mul(self, u: Fraction, v: Fraction) -> Fraction:
        return u * v

    def add(self, u: Fraction, v: Fraction) -> Fraction:
        return u + v

    def scale(self, c: Fraction, u: Fraction) -> Fraction:
        return c * u

    def rb(self, u: Fraction) -> Fraction:
        return -self.weight * u

    def values_equal(self, u: Fraction, v: Fraction) -> bool:
        return u == v

    def satisfies_rb_identity(self, u: Fraction, v: Fraction) -> bool:
        lhs = self.rb(u) * self.rb(v)
        rhs = (
            self.rb(u * self.rb(v))
            + self.rb(self.rb(u) * v)
            + self.weight * self.rb(u * v)
        )
        return lhs == rhs


# ---------------------------------------------------------------------------
# Laurent series model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentSeries:
    """Rational Laurent series known exactly up to a truncation order.

    ``coeffs`` holds the nonzero coefficients, sorted by exponent.  ``order``
    is the largest exponent whose coefficient this value vouches for;
    ``order=None`` means the series is a Laurent polynomial known exactly.
    Coefficients above a finite order are simply unrepresented, so
    comparisons are only meaningful on the shared known range.
    """

    coeffs: tuple[tuple[int, Fraction], ...] = ()
    order: int | None = None

    def __post_init__(self) -> None:
        canonical: dict[int, Fraction] = {}
        for exponent, value in self.coeffs:
            value = Fraction(value)
            if value:
                canonical[exponent] = canonical.get(exponent, Fraction(0)) + value
        cleaned = tuple(
            (e, c) for e, c in sorted(canonical.items()) if c
        )
        if self.order is not None and cleaned and cleaned[-1][0] > self.order:
            raise ValueError(
                f"coefficient at exponent {cleaned[-1][0]} exceeds order {self.order}"
            )
        object.__setattr__(self, "coeffs", cleaned)

    @staticmethod
    def from_terms(
        terms: Mapping[int, Fraction | int], order: int | None = None
    ) -> LaurentSeries:
        return LaurentSeries(tuple((e, Fraction(c)) for e, c in terms.items()), order)

    @staticmethod
    def zero() -> LaurentSeries:
        return LaurentSeries()

    @staticmethod
    def one() -> LaurentSeries:
        return LaurentSeries(((0, Fraction(1)),))

    @property
    def min_exp(self) -> int:
        """Lower bound for the support; past the order, nothing is claimed."""
        if self.coeffs:
            return self.coeffs[0][0]
        if self.order is not None:
            return self.order + 1
        return 0

    def coefficient(self, exponent: int) -> Fraction:
        for e, c in self.coeffs:
            if e == exponent:
                return c
        return Fraction(0)

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        order = _min_order(self.order, other.order)
        merged: dict[int, Fraction] = dict(self.coeffs)
        for e, c in other.coeffs:
            merged[e] = merged.get(e, Fraction(0)) + c
        kept = {e: c for e, c in merged.items() if order is None or e <= order}
        return LaurentSeries(tuple(kept.items()), order)

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(tuple((e, -c) for e, c in self.coeffs), self.order)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def scaled(self, factor: Fraction) -> LaurentSeries:
        factor = Fraction(factor)
        if not factor:
            return LaurentSeries((), self.order)
        return LaurentSeries(
            tuple((e, factor * c) for e, c in self.coeffs), self.order
        )

    def __str__(self) -> str:
        pieces: list[tuple[str, str]] = []
        for exponent, value in self.coeffs:
            body = str(abs(value)) if exponent == 0 else f"{abs(value)}*t^{exponent}"
            pieces.append(("-" if value < 0 else "+", body))
        if self.order is not None:
            pieces.append(("+", f"O(t^{self.order + 1})"))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        out = body if sign == "+" else "-" + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentSeries[{self}]"


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def laurent_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product with honest truncation bookkeeping.

    Unknown coefficients of one factor start above its order, and the lowest
    exponent they can land on in the product is order + min_exp of the other
    factor plus one; the result's order is the tighter of the two bounds.
    """
    if a.order is None and b.order is None:
        order = None
    elif not a.coeffs and a.order is None:
        order = None  # exact zero annihilates
    elif not b.coeffs and b.order is None:
        order = None
    else:
        bounds = []
        if a.order is not None:
            bounds.append(a.order + b.min_exp)
        if b.order is not None:
            bounds.append(b.order + a.min_exp)
        order = min(bounds)
    out: dict[int, Fraction] = {}
    for e1, c1 in a.coeffs:
        for e2, c2 in b.coeffs:
            e = e1 + e2
            if order is None or e <= order:
                out[e] = out.get(e, Fraction(0)) + c1 * c2
    return LaurentSeries(tuple(out.items()), order)


def pole_projection(a: LaurentSeries) -> LaurentSeries:
    """Keep exactly the strictly negative powers.

    When the input is known at least through exponent -1 the pole part is
    exact; otherwise the result keeps the input's order, honestly recording
    that some negative coefficients may be missing.
    """
    kept = tuple((e, c) for e, c in a.coeffs if e < 0)
    if a.order is None or a.order >= -1:
        return LaurentSeries(kept, None)
    return LaurentSeries(kept, a.order)


def laurent_equal(a: LaurentSeries, b: LaurentSeries) -> bool:
    """Equality of all coefficients both sides actually vouch for."""
    order = _min_order(a.order, b.order)
    if order is None:
        return a.coeffs == b.coeffs
    exponents = {e for e, _ in a.coeffs if e <= order}
    exponents |= {e for e, _ in b.coeffs if e <= order}
    return all(a.coefficient(e) == b.coefficient(e) for e in exponents)


@dataclass(frozen=True)
class LaurentModel:
    """Truncated rational Laurent series with the pole-part operator."""

    @property
    def weight(self) -> Fraction:
        return Fraction(-1)

    @property
    def one(self) -> LaurentSeries:
        return LaurentSeries.one()

    def mul(self, u: LaurentSeries, v: LaurentSeries) -> LaurentSeries:
        return laurent_mul(u, v)

    def add(self, u: LaurentSeries, v: LaurentSeries) -> LaurentSeries:
        return u + v

    def scale(self, c: Fraction, u: LaurentSeries) -> LaurentSeries:
        return u.scaled(c)

    def rb(self, u: LaurentSeries) -> LaurentSeries:
        return pole_projection(u)

    def values_equal(self, u: LaurentSeries, v: LaurentSeries) -> bool:
        return laurent_equal(u, v)

    def satisfies_rb_identity(self, u: LaurentSeries, v: LaurentSeries) -> bool:
        lhs = laurent_mul(self.rb(u), self.rb(v))
        rhs = (
            self.rb(laurent_mul(u, self.rb(v)))
            + self.rb(laurent_mul(self.rb(u), v))
            - self.rb(laurent_mul(u, v))
        )
        return laurent_equal(lhs, rhs)


# ---------------------------------------------------------------------------
# the evaluation homomorphism
# ---------------------------------------------------------------------------


def evaluate_hom(a: Element, assignment: Mapping[Letter, object], model):
    """Evaluate a free-algebra element in a model.

    Coefficients are specialized at the model's weight; a leaf evaluates to
    the model unit, grafting applies the model operator, and a decorated word
    multiplies the factor values with the letters' assigned values between
    them.  Every letter occurring in ``a`` must be assigned.
    """
    total = None
    for forest, poly in a.items():
        value = model.scale(
            poly.specialize(model.weight), _eval_forest(forest, assignment, model)
        )
        total = value if total is None else model.add(total, value)
    if total is None:
        return model.scale(Fraction(0), model.one)
    return total


def _eval_forest(forest: Forest, assignment, model):
    value = _eval_tree(forest.trees[0], assignment, model)
    for letter, tree in zip(forest.letters, forest.trees[1:]):
        try:
            image = assignment[letter]
        except KeyError:
            raise ModelError(f"letter {letter.symbol!r} has no assigned value") from None
        value = model.mul(value, image)
        value = model.mul(value, _eval_tree(tree, assignment, model))
    return value


def _eval_tree(tree: Tree, assignment, model):
    if tree.body is None:
        return model.one
    return model.rb(_eval_forest(tree.body, assignment, model))
