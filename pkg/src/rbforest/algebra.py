"""The free Rota-Baxter algebra of weight ``L`` on angularly decorated forests.

Elements are finite integer-polynomial combinations of forests.  The product
is defined by structural recursion: words of length one multiply through the
grafting operator (with the weight-term cross product), and longer words
concatenate their outer segments around the product of the two boundary
trees.  Grafting itself is the Rota-Baxter operator of the algebra.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping

from .coefficients import ONE, WEIGHT, WeightPoly, _as_poly
from .forests import (
    LEAF_FOREST,
    Forest,
    Letter,
    Tree,
    concat_with_letter,
    forest_key,
)

_TermMap = dict[Forest, WeightPoly]


class Element:
    """Finite linear combination of forests with ``WeightPoly`` coefficients.

    Zero coefficients are never stored, so ``==`` compares canonical forms.
    Instances are immutable by convention: every operation returns a fresh
    element.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: _TermMap = {}
        for forest, coefficient in items:
            poly = _as_poly(coefficient)
            if poly is None:
                raise TypeError(f"bad coefficient {coefficient!r}")
            if forest in data:
                poly = data[forest] + poly
            data[forest] = poly
        self._terms = {f: c for f, c in data.items() if c}

    @staticmethod
    def zero() -> Element:
        return Element()

    @staticmethod
    def one() -> Element:
        """The unit: the single-leaf forest with coefficient 1."""
        return Element({LEAF_FOREST: ONE})

    @staticmethod
    def basis(forest: Forest) -> Element:
        return Element({forest: ONE})

    def items(self):
        return self._terms.items()

    def support(self) -> list[Forest]:
        return sorted(self._terms, key=forest_key)

    def coefficient(self, forest: Forest) -> WeightPoly:
        return self._terms.get(forest, WeightPoly())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        data = dict(self._terms)
        for forest, poly in other._terms.items():
            data[forest] = data.get(forest, WeightPoly()) + poly
        return Element(data)

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __neg__(self) -> Element:
        return Element({f: -c for f, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        poly = _as_poly(other)
        if poly is None:
            return NotImplemented
        return Element({f: poly * c for f, c in self._terms.items()})

    def __rmul__(self, other):
        poly = _as_poly(other)
        if poly is None:
            return NotImplemented
        return Element({f: poly * c for f, c in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        rendered = [
            _render_term(self._terms[forest], str(forest))
            for forest in self.support()
        ]
        sign, body = rendered[0]
        out = body if sign == "+" else "- " + body
        for sign, body in rendered[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Element[{self}]"


def _render_term(poly: WeightPoly, body: str) -> tuple[str, str]:
    value = poly.as_integer()
    if value is not None:
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        return (sign, body if magnitude == 1 else f"{magnitude}*{body}")
    return ("+", f"({poly})*{body}")


def linear_combine(parts: Iterable[tuple[WeightPoly | int, Element]]) -> Element:
    total = Element.zero()
    for coefficient, element in parts:
        total = total + coefficient * element
    return total


# ---------------------------------------------------------------------------
# the product
# ---------------------------------------------------------------------------

_Terms = tuple[tuple[Forest, WeightPoly], ...]
_PRODUCT_CACHE: dict[tuple[Forest, Forest, bool], _Terms] = {}


def _basis_product(left: Forest, right: Forest, weighted: bool) -> _Terms:
    key = (left, right, weighted)
    cached = _PRODUCT_CACHE.get(key)
    if cached is not None:
        return cached
    if left.length == 1 and right.length == 1:
        result = _tree_product(left.trees[0], right.trees[0], weighted)
    else:
        # Concatenate the outer segments around the product of the two
        # boundary trees; that product is always a combination of trees.
        middle = _basis_product(
            Forest.single(left.trees[-1]), Forest.single(right.trees[0]), weighted
        )
        acc: _TermMap = {}
        for forest, coefficient in middle:
            word = Forest(
                left.trees[:-1] + forest.trees + right.trees[1:],
                left.letters + right.letters,
            )
            acc[word] = acc.get(word, WeightPoly()) + coefficient
        result = tuple(acc.items())
    _PRODUCT_CACHE[key] = result
    return result


def _tree_product(left: Tree, right: Tree, weighted: bool) -> _Terms:
    if left.is_leaf and right.is_leaf:
        return ((LEAF_FOREST, ONE),)
    if right.is_leaf:
        return ((Forest.single(left), ONE),)
    if left.is_leaf:
        return ((Forest.single(right), ONE),)
    acc: _TermMap = {}

    def add_grafted(terms: _Terms, scale: WeightPoly) -> None:
        for forest, coefficient in terms:
            grafted = Forest.single(Tree.graft(forest))
            acc[grafted] = acc.get(grafted, WeightPoly()) + scale * coefficient

    add_grafted(_basis_product(Forest.single(left), right.body, weighted), ONE)
    add_grafted(_basis_product(left.body, Forest.single(right), weighted), ONE)
    if weighted:
        add_grafted(_basis_product(left.body, right.body, weighted), WEIGHT)
    return tuple((f, c) for f, c in acc.items() if c)


def basis_product(left: Forest, right: Forest) -> Element:
    """Product of two basis forests."""
    return Element(_basis_product(left, right, True))


def _bilinear(a: Element, b: Element, weighted: bool) -> Element:
    acc: _TermMap = {}
    for fa, ca in a.items():
        for fb, cb in b.items():
            scale = ca * cb
            for forest, coefficient in _basis_product(fa, fb, weighted):
                acc[forest] = acc.get(forest, WeightPoly()) + scale * coefficient
    return Element(acc)


def multiply(a: Element, b: Element) -> Element:
    """The associative product of the free Rota-Baxter algebra."""
    return _bilinear(a, b, True)


def multiply_without_weight_term(a: Element, b: Element) -> Element:
    """Deliberately broken product that drops the weight cross-term.

    Exists only so the verification suite can demonstrate that the
    Rota-Baxter check detects a wrong product; never use it for real work.
    """
    return _bilinear(a, b, False)


def graft(a: Element) -> Element:
    """The Rota-Baxter operator: wrap every basis forest under a new root."""
    return Element({Forest.single(Tree.graft(f)): c for f, c in a.items()})


def concat(a: Element, letter: Letter, b: Element) -> Element:
    """Bilinear extension of juxtaposition with a decorated angle."""
    acc: _TermMap = {}
    for fa, ca in a.items():
        for fb, cb in b.items():
            word = concat_with_letter(fa, letter, fb)
            acc[word] = acc.get(word, WeightPoly()) + ca * cb
    return Element(acc)


def double_product(a: Element, b: Element) -> Element:
    """The product pulled back through grafting.

    Satisfies ``graft(double_product(a, b)) == multiply(graft(a), graft(b))``,
    which is how the grafted product of two trees is actually assembled.
    """
    return (
        multiply(graft(a), b)
        + multiply(a, graft(b))
        + WEIGHT * multiply(a, b)
    )


def check_rb_identity(a: Element, b: Element, product=multiply) -> bool:
    """Whether grafting satisfies the weight-``L`` Rota-Baxter equation.

    ``product`` may be swapped for a deliberately broken multiplication when
    exercising the sensitivity of this check.
    """
    lhs = product(graft(a), graft(b))
    rhs = (
        graft(product(a, graft(b)))
        + graft(product(graft(a), b))
        + WEIGHT * graft(product(a, b))
    )
    return lhs == rhs
