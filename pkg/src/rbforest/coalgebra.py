"""Subforests, closures, quotients, and the angular coproduct.

One coproduct term corresponds to one *marking* of a forest: a choice of
mutually disjoint non-leaf full subtrees plus angle letters outside them.
The *closure* lists the extracted components left to right, padding lone
letters with leaves and separating adjacent subtrees with the pending-product
symbol; the *quotient* is what remains, with extracted subtrees collapsed to
a word of leaves and extracted letters replaced by the pending product.
Evaluating a marked word turns every pending-product separator into the
algebra multiplication, so both sides of a term become honest elements.

Two independent algorithms produce the coproduct: a global enumeration of
markings and a factorwise recursion over the word decomposition.  They must
agree, and the verification suite checks that they do.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .algebra import Element, _render_term, basis_product, concat, multiply
from .coefficients import ONE, WeightPoly, _as_poly
from .forests import (
    LEAF_FOREST,
    AngleAddr,
    Forest,
    Letter,
    Tree,
    VertexAddr,
    degree,
    forest_key,
    letter_at,
    planar_layout,
    subtree_at,
    vertex_addresses,
    angle_addresses,
)


class MarkingError(ValueError):
    """A subforest marking that does not fit the forest it was applied to."""


@dataclass(frozen=True)
class SubforestMarking:
    """One coproduct term: extracted subtree roots and extracted angles."""

    vertices: frozenset[VertexAddr] = frozenset()
    angles: frozenset[AngleAddr] = frozenset()

    @staticmethod
    def empty() -> SubforestMarking:
        return SubforestMarking()

    def __bool__(self) -> bool:
        return bool(self.vertices) or bool(self.angles)


# ---------------------------------------------------------------------------
# marked words: forests whose separators may still be pending products
# ---------------------------------------------------------------------------

JOIN = None  # separator meaning "apply the product here", rendered as ⊔


@dataclass(frozen=True)
class MarkedTree:
    """A tree whose graft body may still contain pending-product separators."""

    body: MarkedWord | None = None

    @property
    def is_leaf(self) -> bool:
        return self.body is None

    @staticmethod
    def from_tree(tree: Tree) -> MarkedTree:
        if tree.body is None:
            return MarkedTree()
        return MarkedTree(MarkedWord.from_forest(tree.body))

    def __str__(self) -> str:
        return "o" if self.body is None else f"[{self.body}]"


@dataclass(frozen=True)
class MarkedWord:
    """Alternating word of marked trees and separators from X plus ⊔."""

    trees: tuple[MarkedTree, ...]
    seps: tuple[Letter | None, ...] = ()

    def __post_init__(self) -> None:
        if not self.trees:
            raise ValueError("a marked word has at least one tree")
        if len(self.seps) != len(self.trees) - 1:
            raise ValueError("alternation broken in marked word")

    @staticmethod
    def from_forest(forest: Forest) -> MarkedWord:
        return MarkedWord(
            tuple(MarkedTree.from_tree(t) for t in forest.trees), forest.letters
        )

    @staticmethod
    def single(tree: MarkedTree) -> MarkedWord:
        return MarkedWord((tree,))

    def __str__(self) -> str:
        parts = [str(self.trees[0])]
        for sep, tree in zip(self.seps, self.trees[1:]):
            parts.append("⊔" if sep is None else str(sep))
            parts.append(str(tree))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MarkedWord[{self}]"


_MARKED_LEAF = MarkedTree()
_LEAF_WORD = MarkedWord((_MARKED_LEAF,))


def _splice(fragments: list[MarkedWord], seps: list[Letter | None]) -> MarkedWord:
    trees: tuple[MarkedTree, ...] = fragments[0].trees
    out_seps: tuple[Letter | None, ...] = fragments[0].seps
    for sep, fragment in zip(seps, fragments[1:]):
        out_seps = out_seps + (sep,) + fragment.seps
        trees = trees + fragment.trees
    return MarkedWord(trees, out_seps)


def _skeleton(body: Forest) -> MarkedWord:
    """Leaf word left behind by an extracted subtree: one leaf per factor."""
    n = body.length
    return MarkedWord((_MARKED_LEAF,) * n, (JOIN,) * (n - 1))


def evaluate_marked_word(word: MarkedWord) -> Element:
    """Left fold of the word: letters concatenate, ⊔ multiplies."""
    acc = _evaluate_marked_tree(word.trees[0])
    for sep, tree in zip(word.seps, word.trees[1:]):
        element = _evaluate_marked_tree(tree)
        acc = multiply(acc, element) if sep is None else concat(acc, sep, element)
    return acc


def _evaluate_marked_tree(tree: MarkedTree) -> Element:
    if tree.body is None:
        return Element.one()
    inner = evaluate_marked_word(tree.body)
    return Element(
        {Forest.single(Tree.graft(f)): c for f, c in inner.items()}
    )


# ---------------------------------------------------------------------------
# marking enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _candidates(forest: Forest):
    """Extractable components with their planar sort coordinates.

    Ordered innermost-first, then left to right; markings are enumerated as
    increasing bit masks over this order, which also fixes the documented
    output order of `enumerate_subforests`.
    """
    spans, positions = planar_layout(forest)
    entries = []
    for addr in vertex_addresses(forest):
        if subtree_at(forest, addr).is_leaf:
            continue
        nesting = len(addr) - 1
        entries.append((-nesting, 2 * spans[addr][0], "vertex", addr))
    for angle in angle_addresses(forest):
        entries.append((-len(angle.path), 2 * positions[angle] + 1, "angle", angle))
    entries.sort(key=lambda e: (e[0], e[1]))
    components = tuple((kind, payload) for _, _, kind, payload in entries)

    # Conflict masks: a chosen component forbids nested vertices and the
    # angles sitting inside it.
    conflicts = [0] * len(components)
    for i, (kind_i, item_i) in enumerate(components):
        if kind_i != "vertex":
            continue
        for j, (kind_j, item_j) in enumerate(components):
            if i == j:
                continue
            path = item_j if kind_j == "vertex" else item_j.path
            if path[: len(item_i)] == item_i:
                conflicts[i] |= 1 << j
    return components, tuple(conflicts)


def enumerate_subforests(forest: Forest) -> list[SubforestMarking]:
    """Every valid marking of ``forest``, exactly once, in a fixed order."""
    components, conflicts = _candidates(forest)
    out: list[SubforestMarking] = []
    for mask in range(1 << len(components)):
        valid = True
        probe = mask
        while probe:
            i = (probe & -probe).bit_length() - 1
            if conflicts[i] & mask:
                valid = False
                break
            probe &= probe - 1
        if not valid:
            continue
        vertices = []
        angles = []
        for i, (kind, item) in enumerate(components):
            if mask >> i & 1:
                (vertices if kind == "vertex" else angles).append(item)
        out.append(SubforestMarking(frozenset(vertices), frozenset(angles)))
    return out


@lru_cache(maxsize=None)
def _tree_marking_count(tree: Tree) -> int:
    return 1 if tree.body is None else 1 + subforest_count(tree.body)


@lru_cache(maxsize=None)
def subforest_count(forest: Forest) -> int:
    """Closed-form marking count, independent of the enumeration."""
    total = 2 ** (len(forest.letters))
    for tree in forest.trees:
        total *= _tree_marking_count(tree)
    return total


def validate_marking(forest: Forest, marking: SubforestMarking) -> None:
    for addr in marking.vertices:
        try:
            tree = subtree_at(forest, addr)
        except KeyError as exc:
            raise MarkingError(str(exc)) from exc
        if tree.is_leaf:
            raise MarkingError(f"vertex {addr} is a leaf and cannot be extracted")
    for addr in marking.vertices:
        for other in marking.vertices:
            if other != addr and other[: len(addr)] == addr:
                raise MarkingError(
                    f"extracted subtrees overlap: {addr} contains {other}"
                )
    for angle in marking.angles:
        try:
            letter_at(forest, angle)
        except KeyError as exc:
            raise MarkingError(str(exc)) from exc
        for addr in marking.vertices:
            if angle.path[: len(addr)] == addr:
                raise MarkingError(
                    f"angle {angle} lies inside the extracted subtree at {addr}"
                )


def marking_components(
    forest: Forest, marking: SubforestMarking
) -> list[tuple[str, object]]:
    """Extracted components in planar left-to-right order.

    Each entry is ``("tree", Tree)`` or ``("letter", Letter)``.
    """
    spans, positions = planar_layout(forest)
    keyed: list[tuple[int, tuple[str, object]]] = []
    for addr in marking.vertices:
        keyed.append((2 * spans[addr][0], ("tree", subtree_at(forest, addr))))
    for angle in marking.angles:
        keyed.append((2 * positions[angle] + 1, ("letter", letter_at(forest, angle))))
    keyed.sort(key=lambda item: item[0])
    return [component for _, component in keyed]


# ---------------------------------------------------------------------------
# closure and quotient
# ---------------------------------------------------------------------------


def closure(forest: Forest, marking: SubforestMarking) -> MarkedWord:
    """The forest generated by the extracted components.

    Lone letters are padded with leaves on the outside and between two
    letters; two adjacent subtrees are separated by the pending product.  A
    subtree next to a letter needs no padding.  The empty marking closes to
    the single leaf.
    """
    validate_marking(forest, marking)
    components = marking_components(forest, marking)
    if not components:
        return _LEAF_WORD
    trees: list[MarkedTree] = []
    seps: list[Letter | None] = []

    def complete() -> bool:
        return len(trees) == len(seps) + 1

    for kind, item in components:
        if kind == "tree":
            if trees and complete():
                seps.append(JOIN)
            trees.append(MarkedTree.from_tree(item))
        else:
            if not trees or not complete():
                trees.append(_MARKED_LEAF)
            seps.append(item)
    if not complete():
        trees.append(_MARKED_LEAF)
    return MarkedWord(tuple(trees), tuple(seps))


def quotient(forest: Forest, marking: SubforestMarking) -> MarkedWord:
    """What remains of the forest after extraction.

    An extracted subtree collapses to one leaf per factor of its body,
    joined by pending products; an extracted letter becomes a pending
    product in place.
    """
    validate_marking(forest, marking)
    return _quotient_forest(forest, marking, ())


def _quotient_forest(
    forest: Forest, marking: SubforestMarking, path: tuple[int, ...]
) -> MarkedWord:
    fragments = [
        _quotient_tree(tree, marking, path + (i,))
        for i, tree in enumerate(forest.trees)
    ]
    seps: list[Letter | None] = [
        JOIN if AngleAddr(path, slot) in marking.angles else letter
        for slot, letter in enumerate(forest.letters)
    ]
    return _splice(fragments, seps)


def _quotient_tree(
    tree: Tree, marking: SubforestMarking, addr: VertexAddr
) -> MarkedWord:
    if addr in marking.vertices:
        return _skeleton(tree.body)
    if tree.body is None:
        return _LEAF_WORD
    inner = _quotient_forest(tree.body, marking, addr)
    return MarkedWord.single(MarkedTree(inner))


# ---------------------------------------------------------------------------
# tensors
# ---------------------------------------------------------------------------

_Pair = tuple[Forest, Forest]


class TensorElement:
    """Linear combination of forest pairs with ``WeightPoly`` coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()) -> None:
        items = terms.items() if hasattr(terms, "items") else terms
        data: dict[_Pair, WeightPoly] = {}
        for pair, coefficient in items:
            poly = _as_poly(coefficient)
            if poly is None:
                raise TypeError(f"bad coefficient {coefficient!r}")
            if pair in data:
                poly = data[pair] + poly
            data[pair] = poly
        self._terms = {p: c for p, c in data.items() if c}

    @staticmethod
    def zero() -> TensorElement:
        return TensorElement()

    @staticmethod
    def basis(left: Forest, right: Forest) -> TensorElement:
        return TensorElement({(left, right): ONE})

    @staticmethod
    def of(left: Element, right: Element) -> TensorElement:
        out: dict[_Pair, WeightPoly] = {}
        for fl, cl in left.items():
            for fr, cr in right.items():
                out[(fl, fr)] = out.get((fl, fr), WeightPoly()) + cl * cr
        return TensorElement(out)

    def items(self):
        return self._terms.items()

    def support(self) -> list[_Pair]:
        return sorted(self._terms, key=lambda p: (forest_key(p[0]), forest_key(p[1])))

    def coefficient(self, left: Forest, right: Forest) -> WeightPoly:
        return self._terms.get((left, right), WeightPoly())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: TensorElement) -> TensorElement:
        if not isinstance(other, TensorElement):
            return NotImplemented
        data = dict(self._terms)
        for pair, poly in other._terms.items():
            data[pair] = data.get(pair, WeightPoly()) + poly
        return TensorElement(data)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __neg__(self) -> TensorElement:
        return TensorElement({p: -c for p, c in self._terms.items()})

    def __rmul__(self, other):
        poly = _as_poly(other)
        if poly is None:
            return NotImplemented
        return TensorElement({p: poly * c for p, c in self._terms.items()})

    def map_right(self, fn) -> TensorElement:
        """Apply a basis-forest map to the right leg of every term."""
        out: dict[_Pair, WeightPoly] = {}
        for (left, right), coefficient in self._terms.items():
            pair = (left, fn(right))
            out[pair] = out.get(pair, WeightPoly()) + coefficient
        return TensorElement(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        rendered = [
            _render_term(self._terms[pair], f"{pair[0]} (x) {pair[1]}")
            for pair in self.support()
        ]
        sign, body = rendered[0]
        out = body if sign == "+" else "- " + body
        for sign, body in rendered[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"TensorElement[{self}]"


def tensor_multiply(a: TensorElement, b: TensorElement) -> TensorElement:
    """Componentwise product on both tensor legs."""
    acc: dict[_Pair, WeightPoly] = {}
    for (l1, r1), c1 in a.items():
        for (l2, r2), c2 in b.items():
            scale = c1 * c2
            for fl, cl in basis_product(l1, l2).items():
                left_scale = scale * cl
                for fr, cr in basis_product(r1, r2).items():
                    pair = (fl, fr)
                    acc[pair] = acc.get(pair, WeightPoly()) + left_scale * cr
    return TensorElement(acc)


def contract_counit_left(t: TensorElement) -> Element:
    """Apply the counit to the left leg and keep the right."""
    return Element(
        {right: c for (left, right), c in t.items() if left == LEAF_FOREST}
    )


def contract_counit_right(t: TensorElement) -> Element:
    return Element(
        {left: c for (left, right), c in t.items() if right == LEAF_FOREST}
    )


# ---------------------------------------------------------------------------
# the coproduct
# ---------------------------------------------------------------------------

_BASIS_COPRODUCT: dict[Forest, TensorElement] = {}


def _basis_coproduct(forest: Forest) -> TensorElement:
    cached = _BASIS_COPRODUCT.get(forest)
    if cached is not None:
        return cached
    acc: dict[_Pair, WeightPoly] = {}
    for marking in enumerate_subforests(forest):
        left = evaluate_marked_word(closure(forest, marking))
        right = evaluate_marked_word(quotient(forest, marking))
        for fl, cl in left.items():
            for fr, cr in right.items():
                pair = (fl, fr)
                acc[pair] = acc.get(pair, WeightPoly()) + cl * cr
    result = TensorElement(acc)
    _BASIS_COPRODUCT[forest] = result
    return result


def coproduct(a: Element) -> TensorElement:
    """The angular coproduct, extended linearly."""
    total = TensorElement.zero()
    for forest, coefficient in a.items():
        total = total + coefficient * _basis_coproduct(forest)
    return total


def coproduct_omitting_empty_marking(a: Element) -> TensorElement:
    """Deliberately broken coproduct that skips the empty marking.

    Exists only so the verification suite can demonstrate that the counit
    law detects the missing term; never use it for real work.
    """
    total: dict[_Pair, WeightPoly] = {}
    for forest, coefficient in a.items():
        for marking in enumerate_subforests(forest):
            if not marking:
                continue
            left = evaluate_marked_word(closure(forest, marking))
            right = evaluate_marked_word(quotient(forest, marking))
            for fl, cl in left.items():
                for fr, cr in right.items():
                    pair = (fl, fr)
                    total[pair] = (
                        total.get(pair, WeightPoly()) + coefficient * cl * cr
                    )
    return TensorElement(total)


def counit(a: Element) -> WeightPoly:
    """Coefficient of the single-leaf forest."""
    return a.coefficient(LEAF_FOREST)


def reduced_coproduct(forest: Forest) -> TensorElement:
    """The coproduct with both trivial terms removed; rejects the leaf."""
    if forest == LEAF_FOREST:
        raise ValueError("the reduced coproduct is not defined on the unit forest")
    full = _basis_coproduct(forest)
    return (
        full
        - TensorElement.basis(LEAF_FOREST, forest)
        - TensorElement.basis(forest, LEAF_FOREST)
    )


def filtration_degree(a: Element) -> int:
    """Least n with ``a`` in the n-th filtration submodule: max of degree - 1."""
    if not a:
        raise ValueError("the zero element has no filtration degree")
    return max(degree(f) - 1 for f, _ in a.items())


# ---------------------------------------------------------------------------
# factorwise recursion: the independent second route to the coproduct
# ---------------------------------------------------------------------------


def _tree_options(tree: Tree) -> list[tuple[MarkedWord, MarkedWord]]:
    """(subforest word, quotient word) choices for a single tree factor."""
    if tree.body is None:
        return [(_LEAF_WORD, _LEAF_WORD)]
    options = [
        (MarkedWord.single(MarkedTree.from_tree(tree)), _skeleton(tree.body))
    ]
    for sub, quot in _forest_options(tree.body):
        options.append((sub, MarkedWord.single(MarkedTree(quot))))
    return options


def _forest_options(forest: Forest) -> list[tuple[MarkedWord, MarkedWord]]:
    factor_options = [_tree_options(t) for t in forest.trees]
    out: list[tuple[MarkedWord, MarkedWord]] = []
    for chosen in product(*factor_options):
        for extracted in product((True, False), repeat=len(forest.letters)):
            sub_seps = [
                letter if take else JOIN
                for take, letter in zip(extracted, forest.letters)
            ]
            quot_seps = [
                JOIN if take else letter
                for take, letter in zip(extracted, forest.letters)
            ]
            sub = _splice([c[0] for c in chosen], sub_seps)
            quot = _splice([c[1] for c in chosen], quot_seps)
            out.append((sub, quot))
    return out


def coproduct_factorwise(a: Element) -> TensorElement:
    """The coproduct computed by recursion over the word decomposition.

    Must agree with `coproduct`; keeping both routes alive is part of the
    verification story.
    """
    acc: dict[_Pair, WeightPoly] = {}
    for forest, coefficient in a.items():
        for sub, quot in _forest_options(forest):
            left = evaluate_marked_word(sub)
            right = evaluate_marked_word(quot)
            for fl, cl in left.items():
                scale = coefficient * cl
                for fr, cr in right.items():
                    pair = (fl, fr)
                    acc[pair] = acc.get(pair, WeightPoly()) + scale * cr
    return TensorElement(acc)
