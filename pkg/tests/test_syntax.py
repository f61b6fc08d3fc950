from fractions import Fraction

import pytest

from rbforest.algebra import Element
from rbforest.coefficients import WEIGHT, WeightPoly
from rbforest.forests import LEAF_FOREST, Letter, make_alphabet
from rbforest.models import LaurentSeries
from rbforest.syntax import (
    ParseError,
    parse_element,
    parse_forest,
    parse_laurent_series,
    parse_rational,
    render,
)

from conftest import o, random_element, word


@pytest.fixture
def ab():
    return make_alphabet("a,b")


def test_parse_basis_tree(letters):
    x = letters["x"]
    assert parse_forest("[o x o]", (x,)) == word(word(o, x, o))


def test_parse_element_with_coefficients(ab):
    a = Letter("a")
    got = parse_element("2*[o] + (L)*o a o", ab)
    expected = 2 * Element.basis(word(word(o))) + WEIGHT * Element.basis(word(o, a, o))
    assert got == expected


def test_parse_polynomial_coefficients(ab):
    got = parse_element("(2*L^2 - 3*L + 1)*o", ab)
    poly = WeightPoly(((2, 2), (1, -3), (0, 1)))
    assert got == poly * Element.one()


def test_parse_leading_sign(ab):
    assert parse_element("- o + [o]", ab) == Element.basis(
        word(word(o))
    ) - Element.one()


def test_parse_zero(ab):
    assert parse_element("0", ab) == Element.zero()


def test_unbalanced_bracket_position(ab):
    with pytest.raises(ParseError) as err:
        parse_forest("[o a", ab)
    assert err.value.line == 1
    assert err.value.column == 5


def test_unknown_letter(ab):
    with pytest.raises(ParseError, match="unknown letter 'q'"):
        parse_forest("o q o", ab)


def test_reserved_identifier_as_letter(ab):
    with pytest.raises(ParseError, match="reserved identifier 'L'"):
        parse_forest("o L o", ab)
    with pytest.raises(ParseError, match="reserved identifier 't'"):
        parse_forest("o t o", ab)


def test_trailing_input_rejected(ab):
    with pytest.raises(ParseError, match="trailing"):
        parse_element("o ]", ab)


def test_missing_star_after_coefficient(ab):
    with pytest.raises(ParseError, match="expected '\\*'"):
        parse_element("2 o", ab)


def test_roundtrip_random_elements(ab):
    for seed in range(150):
        element = random_element(seed, ab)
        assert parse_element(str(element), ab) == element


def test_roundtrip_canonical_corner_cases(ab):
    cases = [
        Element.zero(),
        -Element.one(),
        WEIGHT * Element.one() - 2 * Element.basis(word(word(o))),
        WeightPoly(((1, -1), (0, 4))) * Element.one(),
    ]
    for element in cases:
        assert parse_element(str(element), ab) == element


def test_rational_parsing():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-1") == -1
    with pytest.raises(ParseError):
        parse_rational("3/")


def test_laurent_parsing():
    got = parse_laurent_series("1*t^-1 + 2 + 1*t^1")
    assert got == LaurentSeries.from_terms({-1: 1, 0: 2, 1: 1})
    assert parse_laurent_series("t^-2") == LaurentSeries.from_terms({-2: 1})
    assert parse_laurent_series("-1/2*t^3") == LaurentSeries.from_terms(
        {3: Fraction(-1, 2)}
    )


def test_laurent_roundtrip_exact():
    series = LaurentSeries.from_terms({-2: Fraction(1, 3), 0: -2, 4: 5})
    assert parse_laurent_series(str(series)) == series


def test_latex_bullet():
    assert render(Element.one(), "latex") == "\\bullet"
    assert render(LEAF_FOREST, "latex") == "\\bullet"


def test_latex_structures(letters):
    x = letters["x"]
    f = word(word(o, x, o))
    assert render(f, "latex") == "\\lfloor \\bullet x \\bullet \\rfloor"
    assert (
        render(WEIGHT * Element.basis(f), "latex")
        == "\\left(\\lambda\\right) \\lfloor \\bullet x \\bullet \\rfloor"
    )


def test_latex_tensor(letters):
    from rbforest.coalgebra import coproduct

    x = letters["x"]
    rendered = render(coproduct(Element.basis(word(o, x, o))), "latex")
    assert "\\otimes" in rendered


def test_unknown_format():
    with pytest.raises(ValueError):
        render(Element.one(), "html")


def test_plain_render_matches_str(ab):
    element = random_element(3, ab)
    assert render(element) == str(element)
