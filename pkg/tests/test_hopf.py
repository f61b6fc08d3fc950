import pytest

from rbforest.algebra import Element
from rbforest.coefficients import WEIGHT
from rbforest.forests import LEAF_FOREST, degree, enumerate_forests
from rbforest.hopf import (
    antipode,
    antipode_recursive,
    convolution_check,
    reduced_power,
    run_axiom_suite,
)
from rbforest.reporting import report_as_dict

from conftest import o, word


def basis(f):
    return Element.basis(f)


def test_antipode_of_unit():
    assert antipode(Element.one()) == Element.one()
    assert antipode_recursive(Element.one()) == Element.one()


def test_antipode_of_flat_word(letters):
    f = word(o, letters["x"], o)
    assert antipode(basis(f)) == -basis(f)
    assert antipode_recursive(basis(f)) == -basis(f)


def test_antipode_of_decorated_cherry(letters):
    x = letters["x"]
    f = word(word(o, x, o))
    expected = -basis(f) + basis(word(o, x, word(o)))
    assert antipode(basis(f)) == expected
    assert antipode_recursive(basis(f)) == expected


def test_antipode_of_cherry_with_tail(letters):
    x, y = letters["x"], letters["y"]
    f = word(word(o, x, o), y, o)
    expected = basis(word(o, y, word(o, x, o))) - basis(
        word(o, y, o, x, word(o))
    )
    assert antipode(basis(f)) == expected
    assert antipode_recursive(basis(f)) == expected


def test_antipode_is_linear(letters):
    x = letters["x"]
    f = word(word(o, x, o))
    e = 2 * basis(f) + WEIGHT * Element.one()
    assert antipode(e) == 2 * antipode(basis(f)) + WEIGHT * Element.one()


def test_algorithms_agree_on_corpus(letters):
    for forest in enumerate_forests(4, (letters["a"], letters["b"])):
        e = basis(forest)
        assert antipode(e) == antipode_recursive(e)


def test_reduced_power_truncates(letters):
    for forest in enumerate_forests(4, (letters["a"], letters["b"])):
        if forest == LEAF_FOREST:
            continue
        assert not reduced_power(forest, degree(forest) - 1)


def test_reduced_power_rejects_unit():
    with pytest.raises(ValueError):
        reduced_power(LEAF_FOREST, 1)


def test_convolution_identities(letters):
    assert convolution_check(LEAF_FOREST)
    assert convolution_check(word(word(o, letters["x"], o)))
    for forest in enumerate_forests(4, (letters["a"],)):
        assert convolution_check(forest)


def test_suite_small_alphabet(letters):
    report = run_axiom_suite(3, (letters["a"],))
    assert report.all_passed
    assert report.config["singles"] == 8
    assert {law.law for law in report.laws} >= {
        "rota-baxter-identity",
        "product-associativity",
        "product-unit",
        "coassociativity",
        "counit-laws",
        "coproduct-cocycle",
        "coproduct-multiplicativity",
        "filtration-containment",
        "connectedness",
        "antipode-agreement",
        "antipode-convolution",
    }
    for law in report.laws:
        assert law.failed == 0


def test_suite_law_order_matches_contract(letters):
    report = run_axiom_suite(2, (letters["a"],))
    names = [law.law for law in report.laws]
    expected_prefix = [
        "rota-baxter-identity",
        "product-associativity",
        "product-unit",
        "coassociativity",
        "counit-laws",
        "coproduct-cocycle",
        "coproduct-multiplicativity",
        "filtration-containment",
        "connectedness",
        "antipode-agreement",
        "antipode-convolution",
    ]
    assert names[: len(expected_prefix)] == expected_prefix


def test_suite_detects_missing_weight_term(letters):
    report = run_axiom_suite(3, (letters["a"],), mutate="drop-weight-term")
    law = report.law("rota-baxter-identity")
    assert law.failed > 0
    assert law.first_counterexample is not None
    assert law.first_counterexample.lhs != law.first_counterexample.rhs
    assert not report.all_passed


def test_suite_detects_missing_empty_subforest(letters):
    report = run_axiom_suite(3, (letters["a"],), mutate="omit-empty-subforest")
    law = report.law("counit-laws")
    assert law.failed > 0
    assert law.first_counterexample is not None
    assert not report.all_passed


def test_suite_rejects_unknown_mutation(letters):
    with pytest.raises(ValueError):
        run_axiom_suite(2, (letters["a"],), mutate="nonsense")


def _stable(report):
    data = report_as_dict(report)
    for law in data["laws"]:
        law.pop("seconds")
    return data


def test_random_mode_is_reproducible(letters):
    alphabet = (letters["a"], letters["b"])
    first = run_axiom_suite(4, alphabet, samples=20, seed=7)
    second = run_axiom_suite(4, alphabet, samples=20, seed=7)
    assert first.all_passed and second.all_passed
    assert _stable(first) == _stable(second)


def test_advisory_law_does_not_gate(letters):
    report = run_axiom_suite(2, (letters["a"],))
    law = report.law("antipode-antihomomorphism")
    assert law.advisory
