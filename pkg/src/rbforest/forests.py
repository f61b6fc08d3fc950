"""Angularly decorated planar rooted trees and forests.

A forest is an alternating word ``T1 x1 T2 ... x_{k-1} Tk`` of planar rooted
trees and decorating letters; a tree is either the single leaf ``o`` or the
graft of a forest under a new root, written ``[ ... ]``.  Decorations sit in
the angles between adjacent leaves, including the gaps between tree factors,
so a forest always carries exactly one letter fewer than it has leaves.

This module owns the canonical representation plus statistics, vertex and
angle addressing, deterministic enumeration, and seeded random generation.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

RESERVED_SYMBOLS = frozenset({"o", "L", "t"})
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

#: Path of tree-slot indices descending through nested graft bodies; the
#: root of tree factor i of a forest is addressed (i,), 0-based.
VertexAddr = tuple[int, ...]


@dataclass(frozen=True)
class Letter:
    """Decoration symbol drawn from a declared alphabet."""

    symbol: str

    def __post_init__(self) -> None:
        if not _IDENT_RE.match(self.symbol):
            raise ValueError(f"invalid letter {self.symbol!r}: not an identifier")
        if self.symbol in RESERVED_SYMBOLS:
            raise ValueError(f"reserved identifier {self.symbol!r} cannot be a letter")

    def __str__(self) -> str:
        return self.symbol

    def __repr__(self) -> str:
        return f"Letter({self.symbol!r})"

    def __lt__(self, other: Letter) -> bool:
        return self.symbol < other.symbol


def make_alphabet(declaration: str) -> tuple[Letter, ...]:
    """Build an alphabet from a comma-separated list like ``"a,b"``.

    An empty string declares the empty alphabet (undecorated forests only).
    """
    declaration = declaration.strip()
    if not declaration:
        return ()
    letters = tuple(Letter(part.strip()) for part in declaration.split(","))
    if len(set(letters)) != len(letters):
        raise ValueError(f"duplicate letters in alphabet {declaration!r}")
    return letters


@dataclass(frozen=True)
class Tree:
    """A planar rooted tree: the leaf (``body is None``) or a grafted forest."""

    body: Forest | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("Tree", self.body)))

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    @property
    def is_leaf(self) -> bool:
        return self.body is None

    @staticmethod
    def graft(body: Forest) -> Tree:
        """Add a new root above every tree factor of ``body``."""
        return Tree(body)

    def __str__(self) -> str:
        return "o" if self.body is None else f"[{self.body}]"

    def __repr__(self) -> str:
        return f"Tree[{self}]"


LEAF = Tree()


@dataclass(frozen=True)
class Forest:
    """Alternating word of trees and letters; always one more tree than letters."""

    trees: tuple[Tree, ...]
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if not self.trees:
            raise ValueError("a forest has at least one tree factor")
        if len(self.letters) != len(self.trees) - 1:
            raise ValueError(
                f"alternation broken: {len(self.trees)} trees need "
                f"{len(self.trees) - 1} letters, got {len(self.letters)}"
            )
        object.__setattr__(self, "_hash", hash(("Forest", self.trees, self.letters)))

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    @staticmethod
    def single(tree: Tree) -> Forest:
        return Forest((tree,))

    @property
    def length(self) -> int:
        """Number of tree factors."""
        return len(self.trees)

    def __str__(self) -> str:
        parts = [str(self.trees[0])]
        for letter, tree in zip(self.letters, self.trees[1:]):
            parts.append(str(letter))
            parts.append(str(tree))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Forest[{self}]"


LEAF_FOREST = Forest((LEAF,))


def concat_with_letter(left: Forest, letter: Letter, right: Forest) -> Forest:
    """Juxtapose two forests with a decorated angle between them."""
    return Forest(left.trees + right.trees, left.letters + (letter,) + right.letters)


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForestStats:
    degree: int
    depth: int
    length: int
    leaf_count: int
    decoration_count: int


@lru_cache(maxsize=None)
def tree_degree(tree: Tree) -> int:
    return 1 if tree.body is None else 1 + degree(tree.body)


@lru_cache(maxsize=None)
def degree(forest: Forest) -> int:
    """Total number of vertices."""
    return sum(tree_degree(t) for t in forest.trees)


@lru_cache(maxsize=None)
def tree_depth(tree: Tree) -> int:
    return 0 if tree.body is None else 1 + depth(tree.body)


@lru_cache(maxsize=None)
def depth(forest: Forest) -> int:
    """Maximal root-to-leaf path length over the tree factors."""
    return max(tree_depth(t) for t in forest.trees)


@lru_cache(maxsize=None)
def _tree_leaves(tree: Tree) -> int:
    return 1 if tree.body is None else leaf_count(tree.body)


@lru_cache(maxsize=None)
def leaf_count(forest: Forest) -> int:
    return sum(_tree_leaves(t) for t in forest.trees)


@lru_cache(maxsize=None)
def decoration_count(forest: Forest) -> int:
    """Letters carried by the forest, including those inside graft bodies."""
    nested = sum(decoration_count(t.body) for t in forest.trees if t.body is not None)
    return len(forest.letters) + nested


def stats(forest: Forest) -> ForestStats:
    return ForestStats(
        degree=degree(forest),
        depth=depth(forest),
        length=forest.length,
        leaf_count=leaf_count(forest),
        decoration_count=decoration_count(forest),
    )


def forest_key(forest: Forest) -> tuple[int, str]:
    """Total order used everywhere output must be deterministic."""
    return (degree(forest), str(forest))


# ---------------------------------------------------------------------------
# addressing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AngleAddr:
    """One angle slot: the vertex path of the enclosing forest plus its index.

    ``path`` is the address of the graft whose body holds the angle, or ``()``
    for the top-level forest; ``slot`` indexes that forest's letters.
    """

    path: tuple[int, ...]
    slot: int


def vertex_addresses(forest: Forest) -> tuple[VertexAddr, ...]:
    """All vertex addresses in planar preorder."""
    out: list[VertexAddr] = []

    def walk(f: Forest, prefix: tuple[int, ...]) -> None:
        for i, tree in enumerate(f.trees):
            addr = prefix + (i,)
            out.append(addr)
            if tree.body is not None:
                walk(tree.body, addr)

    walk(forest, ())
    return tuple(out)


def angle_addresses(forest: Forest) -> tuple[AngleAddr, ...]:
    out: list[AngleAddr] = []

    def walk(f: Forest, prefix: tuple[int, ...]) -> None:
        for slot in range(len(f.letters)):
            out.append(AngleAddr(prefix, slot))
        for i, tree in enumerate(f.trees):
            if tree.body is not None:
                walk(tree.body, prefix + (i,))

    walk(forest, ())
    return tuple(out)


def subtree_at(forest: Forest, addr: VertexAddr) -> Tree:
    """The full subtree rooted at the addressed vertex."""
    if not addr:
        raise KeyError("empty vertex address")
    try:
        tree = forest.trees[addr[0]]
        for index in addr[1:]:
            if tree.body is None:
                raise IndexError
            tree = tree.body.trees[index]
    except IndexError:
        raise KeyError(f"vertex address {addr} does not resolve in {forest}") from None
    return tree


def forest_at(forest: Forest, path: tuple[int, ...]) -> Forest:
    """The forest addressed by ``path``: the top forest or a graft body."""
    if not path:
        return forest
    tree = subtree_at(forest, path)
    if tree.body is None:
        raise KeyError(f"vertex {path} is a leaf and encloses no forest")
    return tree.body


def letter_at(forest: Forest, angle: AngleAddr) -> Letter:
    enclosing = forest_at(forest, angle.path)
    try:
        return enclosing.letters[angle.slot]
    except IndexError:
        raise KeyError(f"angle {angle} does not resolve in {forest}") from None


@lru_cache(maxsize=None)
def planar_layout(
    forest: Forest,
) -> tuple[dict[VertexAddr, tuple[int, int]], dict[AngleAddr, int]]:
    """Leaf spans per vertex and planar positions per angle.

    Leaves are numbered 1..n left to right across the whole forest.  A vertex
    maps to the inclusive span of leaves below it; an angle maps to k when it
    sits between leaves k and k+1.  The returned dicts are shared and must
    not be mutated.
    """
    spans: dict[VertexAddr, tuple[int, int]] = {}
    positions: dict[AngleAddr, int] = {}
    counter = 0

    def walk_tree(tree: Tree, addr: VertexAddr) -> tuple[int, int]:
        nonlocal counter
        if tree.body is None:
            counter += 1
            span = (counter, counter)
        else:
            span = walk_forest(tree.body, addr)
        spans[addr] = span
        return span

    def walk_forest(f: Forest, prefix: tuple[int, ...]) -> tuple[int, int]:
        first = last = None
        for i, tree in enumerate(f.trees):
            if i > 0:
                positions[AngleAddr(prefix, i - 1)] = last[1]
            span = walk_tree(tree, prefix + (i,))
            first = span if first is None else first
            last = span
        return (first[0], last[1])

    walk_forest(forest, ())
    return spans, positions


# ---------------------------------------------------------------------------
# enumeration and random generation
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int):
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def enumerate_forests(
    max_degree: int, alphabet: tuple[Letter, ...]
) -> list[Forest]:
    """Every well-formed forest of degree at most ``max_degree``, exactly once.

    Output is ordered by degree, then lexicographically on the canonical
    rendered text, so corpora are reproducible.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    alphabet = tuple(alphabet)
    trees: dict[int, list[Tree]] = {}
    forests: dict[int, list[Forest]] = {}
    for d in range(1, max_degree + 1):
        trees[d] = [LEAF] if d == 1 else [Tree.graft(f) for f in forests[d - 1]]
        level: list[Forest] = []
        for k in range(1, d + 1):
            for comp in _compositions(d, k):
                for factors in product(*(trees[p] for p in comp)):
                    for letters in product(alphabet, repeat=k - 1):
                        level.append(Forest(factors, letters))
        forests[d] = level
    out: list[Forest] = []
    for d in range(1, max_degree + 1):
        out.extend(sorted(forests[d], key=str))
    return out


def random_forest(
    seed: int, max_degree: int, alphabet: tuple[Letter, ...]
) -> Forest:
    """A forest of degree at most ``max_degree``, a pure function of the inputs."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    alphabet = tuple(alphabet)
    key = f"{seed}|{max_degree}|{','.join(l.symbol for l in alphabet)}"
    rng = random.Random(key)
    return _random_forest(rng, rng.randint(1, max_degree), alphabet)


def _random_forest(
    rng: random.Random, deg: int, alphabet: tuple[Letter, ...]
) -> Forest:
    factors = rng.randint(1, deg) if alphabet else 1
    cuts = sorted(rng.sample(range(1, deg), factors - 1))
    bounds = [0, *cuts, deg]
    parts = [bounds[i + 1] - bounds[i] for i in range(factors)]
    trees = tuple(
        LEAF if p == 1 else Tree.graft(_random_forest(rng, p - 1, alphabet))
        for p in parts
    )
    letters = tuple(rng.choice(alphabet) for _ in range(factors - 1))
    return Forest(trees, letters)
