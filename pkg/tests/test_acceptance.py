"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Everything here is exact: comparisons are equalities in the
coefficient ring, never approximate.
"""
import random
import time
from fractions import Fraction

import pytest

from rbforest.algebra import Element, graft, multiply
from rbforest.cli import dispatch
from rbforest.coalgebra import (
    TensorElement,
    coproduct,
    coproduct_factorwise,
    enumerate_subforests,
    subforest_count,
)
from rbforest.forests import (
    LEAF_FOREST,
    Letter,
    degree,
    enumerate_forests,
    make_alphabet,
    random_forest,
)
from rbforest.hopf import (
    antipode,
    antipode_recursive,
    convolution_check,
    run_axiom_suite,
)
from rbforest.models import LaurentModel, LaurentSeries, ScalarModel, evaluate_hom
from rbforest.reporting import report_as_dict
from rbforest.syntax import parse_element

from conftest import o, random_element, word

AB = make_alphabet("a,b")


def basis(f):
    return Element.basis(f)


def tensor(*terms):
    total = TensorElement.zero()
    for left, right in terms:
        total = total + TensorElement.basis(left, right)
    return total


@pytest.fixture(scope="module")
def corpus5():
    return enumerate_forests(5, AB)


def test_criterion_1_worked_examples_bit_exact(letters):
    x, y, x1, x2 = (letters[k] for k in ("x", "y", "x1", "x2"))
    single = word(word(o, x, o))
    nested = word(word(word(o, x1, o), x2, o))
    spread = word(word(o, x1, o), x2, o)

    start = time.perf_counter()
    assert coproduct(basis(single)) == tensor(
        (LEAF_FOREST, single),
        (single, LEAF_FOREST),
        (word(o, x, o), word(word(o))),
    )
    assert coproduct(basis(nested)) == tensor(
        (LEAF_FOREST, nested),
        (word(o, x1, o), word(word(word(o), x2, o))),
        (word(word(o, x1, o)), word(word(o, x2, o))),
        (word(o, x2, o), word(word(word(o, x1, o)))),
        (word(o, x1, o, x2, o), word(word(word(o)))),
        (word(word(o, x1, o), x2, o), word(word(o))),
        (nested, LEAF_FOREST),
    )
    assert coproduct(basis(spread)) == tensor(
        (LEAF_FOREST, spread),
        (word(o, x1, o), word(word(o), x2, o)),
        (word(word(o, x1, o)), word(o, x2, o)),
        (word(o, x2, o), word(word(o, x1, o))),
        (word(o, x1, o, x2, o), word(word(o))),
        (spread, LEAF_FOREST),
    )
    assert time.perf_counter() - start < 1.0

    start = time.perf_counter()
    assert antipode(basis(single)) == -basis(single) + basis(word(o, x, word(o)))
    tail = word(word(o, x, o), y, o)
    assert antipode(basis(tail)) == basis(word(o, y, word(o, x, o))) - basis(
        word(o, y, o, x, word(o))
    )
    assert time.perf_counter() - start < 1.0

    start = time.perf_counter()
    for forest, expected in ((single, 3), (nested, 7), (spread, 6)):
        assert len(enumerate_subforests(forest)) == expected
        assert subforest_count(forest) == expected
    assert time.perf_counter() - start < 1.0
    print("PASS criterion 1: worked examples reproduced bit-exactly")


def test_criterion_2_exhaustive_laws_degree_4():
    start = time.perf_counter()
    report = run_axiom_suite(4, AB)
    elapsed = time.perf_counter() - start

    corpus = enumerate_forests(4, AB)
    expected_pairs = sum(
        1 for a in corpus for b in corpus if degree(a) + degree(b) <= 6
    )
    expected_triples = sum(
        1
        for a in corpus
        for b in corpus
        for c in corpus
        if degree(a) + degree(b) + degree(c) <= 6
    )
    assert report.config["singles"] == len(corpus)
    assert report.config["pairs"] == expected_pairs
    assert report.config["triples"] == expected_triples
    for law in report.laws:
        assert law.failed == 0, law.law
    assert elapsed <= 120.0
    print(
        f"PASS criterion 2: exhaustive law suite, degree <= 4, alphabet {{a,b}} "
        f"({report.config['pairs']} pairs, {report.config['triples']} triples, "
        f"{elapsed:.1f}s)"
    )


def test_criterion_3_randomized_laws_degree_6():
    report = run_axiom_suite(6, AB, samples=500, seed=2024)
    for law in report.laws:
        assert law.failed == 0, law.law

    def stable(r):
        data = report_as_dict(r)
        for law in data["laws"]:
            law.pop("seconds")
        return data

    again = run_axiom_suite(6, AB, samples=500, seed=2024)
    assert stable(report) == stable(again)
    print("PASS criterion 3: 500 seeded random instances, degree <= 6, reproducible")


def test_criterion_4_oracle_equivalences(corpus5):
    for forest in corpus5:
        e = basis(forest)
        assert antipode(e) == antipode_recursive(e)
    for forest in corpus5:
        e = basis(forest)
        assert coproduct(e) == coproduct_factorwise(e)
    for forest in corpus5:
        assert len(enumerate_subforests(forest)) == subforest_count(forest)
    print(
        f"PASS criterion 4: antipode series vs recursion, global vs factorwise "
        f"coproduct, and counting formula agree on {len(corpus5)} forests"
    )


def test_criterion_5_antipode_axiom(corpus5):
    for forest in corpus5:
        assert convolution_check(forest)
    print(
        f"PASS criterion 5: convolution identities hold on all {len(corpus5)} "
        f"forests of degree <= 5"
    )


def test_criterion_6_models():
    rng = random.Random(606)

    def rand_fraction():
        return Fraction(rng.randint(-20, 20), rng.randint(1, 9))

    def rand_series(order=6):
        terms = {
            rng.randint(-3, order): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            for _ in range(rng.randint(0, 5))
        }
        return LaurentSeries.from_terms(terms, order)

    for weight in (0, 1, -1, Fraction(3, 2)):
        model = ScalarModel(Fraction(weight))
        for _ in range(100):
            assert model.satisfies_rb_identity(rand_fraction(), rand_fraction())

    laurent = LaurentModel()
    for _ in range(100):
        assert laurent.satisfies_rb_identity(rand_series(), rand_series())

    checked = 0
    for model, make_value in (
        (ScalarModel(Fraction(3, 2)), rand_fraction),
        (LaurentModel(), rand_series),
    ):
        assignment = {letter: make_value() for letter in AB}
        for _ in range(100):
            a = basis(random_forest(rng.randrange(10**9), 4, AB))
            b = basis(random_forest(rng.randrange(10**9), 4, AB))
            lhs = evaluate_hom(multiply(a, b), assignment, model)
            rhs = model.mul(
                evaluate_hom(a, assignment, model), evaluate_hom(b, assignment, model)
            )
            assert model.values_equal(lhs, rhs)
            assert model.values_equal(
                evaluate_hom(graft(a), assignment, model),
                model.rb(evaluate_hom(a, assignment, model)),
            )
            checked += 1
    assert checked == 200
    print(
        "PASS criterion 6: model identities at weights {0, 1, -1, 3/2} and "
        "the evaluation homomorphism on 200 specialized pairs"
    )


def test_criterion_7_mutation_sensitivity():
    report = run_axiom_suite(3, (Letter("a"),), mutate="drop-weight-term")
    law = report.law("rota-baxter-identity")
    assert law.failed > 0
    assert law.first_counterexample is not None
    assert law.first_counterexample.inputs

    report = run_axiom_suite(3, (Letter("a"),), mutate="omit-empty-subforest")
    law = report.law("counit-laws")
    assert law.failed > 0
    assert law.first_counterexample is not None
    print("PASS criterion 7: both deliberate mutations are detected and reported")


def test_criterion_8_parser(capsys):
    for seed in range(500):
        element = random_element(seed, AB)
        assert parse_element(str(element), AB) == element

    code = dispatch(["mul", "[o x", "o", "--alphabet", "x"])
    captured = capsys.readouterr()
    assert code == 2
    assert "line 1, column 5" in captured.err

    code = dispatch(["antipode", "[o q o]", "--alphabet", "a,b"])
    captured = capsys.readouterr()
    assert code == 2
    assert "line 1" in captured.err and "unknown letter" in captured.err
    print(
        "PASS criterion 8: render/parse identity on 500 random elements; "
        "malformed input exits 2 with positioned diagnostics"
    )
