import random

import pytest

from rbforest.algebra import Element
from rbforest.coefficients import WeightPoly
from rbforest.forests import LEAF, Forest, Letter, Tree, random_forest


@pytest.fixture
def letters():
    return {name: Letter(name) for name in ("a", "b", "x", "y", "x1", "x2")}


def random_element(seed, alphabet, max_terms=4, max_degree=4) -> Element:
    """Deterministic pseudo-random element; may collapse to fewer terms."""
    rng = random.Random(f"element|{seed}")
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        forest = random_forest(rng.randrange(10**9), max_degree, alphabet)
        if rng.random() < 0.5:
            coefficient = WeightPoly.integer(rng.choice([1, -1, 2, -3, 5, -7]))
        else:
            coefficient = WeightPoly(
                tuple(
                    (rng.randint(0, 3), rng.randint(-4, 4))
                    for _ in range(rng.randint(1, 3))
                )
            )
        terms.append((forest, coefficient))
    return Element(terms)


def word(*parts) -> Forest:
    """Build a forest from alternating trees and letters, in display order."""
    trees: list[Tree] = []
    letters: list[Letter] = []
    for part in parts:
        if isinstance(part, Letter):
            letters.append(part)
        elif isinstance(part, Tree):
            trees.append(part)
        elif isinstance(part, Forest):
            trees.append(Tree.graft(part))
        else:
            raise TypeError(part)
    return Forest(tuple(trees), tuple(letters))


o = LEAF
