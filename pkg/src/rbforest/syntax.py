"""Textual grammar: parsing and rendering of elements, forests, and series.

The grammar is token-based and LL(1):

    element := ['+'|'-'] term (('+'|'-') term)*  |  '0'
    term    := coeff '*' forest | forest
    coeff   := int | '(' poly ')'
    poly    := ['-'] mono (('+'|'-') mono)*
    mono    := int ['*' lpart] | lpart
    lpart   := 'L' ['^' int]
    forest  := tree (letter tree)*
    tree    := 'o' | '[' forest ']'

``o`` is the leaf, ``L`` the formal weight, and ``t`` the Laurent variable;
none of the three can be used as a decoration letter.  Rendering is
deterministic (terms ordered by degree, then canonical text) and plain
output re-parses to an equal value.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element
from .coalgebra import MarkedWord, TensorElement
from .coefficients import WeightPoly
from .forests import Forest, Letter, Tree
from .models import LaurentSeries


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


_PUNCT = {
    "[": "LBRACKET",
    "]": "RBRACKET",
    "(": "LPAREN",
    ")": "RPAREN",
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "^": "CARET",
    "/": "SLASH",
}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            column += 1
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line, column))
            column += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, column))
            column += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], line, column))
            column += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, column)
    tokens.append(_Token("EOF", "", line, column))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: tuple[Letter, ...] = ()) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = {letter.symbol: letter for letter in alphabet}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            got = repr(token.text) if token.kind != "EOF" else "end of input"
            raise ParseError(f"expected {what}, got {got}", token.line, token.column)
        return self.advance()

    def fail(self, message: str):
        token = self.peek()
        raise ParseError(message, token.line, token.column)

    def done(self) -> None:
        token = self.peek()
        if token.kind != "EOF":
            raise ParseError(
                f"unexpected trailing input {token.text!r}", token.line, token.column
            )

    # -- forests -----------------------------------------------------

    def tree(self) -> Tree:
        token = self.peek()
        if token.kind == "IDENT" and token.text == "o":
            self.advance()
            return Tree()
        if token.kind == "LBRACKET":
            self.advance()
            body = self.forest()
            self.expect("RBRACKET", "']'")
            return Tree.graft(body)
        return self.fail("expected a tree ('o' or '[')")

    def forest(self) -> Forest:
        trees = [self.tree()]
        letters: list[Letter] = []
        while True:
            token = self.peek()
            if token.kind != "IDENT" or token.text == "o":
                break
            letters.append(self.letter())
            trees.append(self.tree())
        return Forest(tuple(trees), tuple(letters))

    def letter(self) -> Letter:
        token = self.advance()
        if token.text in ("L", "t"):
            raise ParseError(
                f"reserved identifier {token.text!r} used as letter",
                token.line,
                token.column,
            )
        letter = self.alphabet.get(token.text)
        if letter is None:
            declared = ", ".join(sorted(self.alphabet)) or "(empty)"
            raise ParseError(
                f"unknown letter {token.text!r}; declared alphabet: {declared}",
                token.line,
                token.column,
            )
        return letter

    # -- coefficients ------------------------------------------------

    def integer(self) -> int:
        sign = 1
        if self.peek().kind == "MINUS":
            self.advance()
            sign = -1
        token = self.expect("INT", "an integer")
        return sign * int(token.text)

    def weight_poly(self) -> WeightPoly:
        terms: list[tuple[int, int]] = []
        sign = 1
        if self.peek().kind == "MINUS":
            self.advance()
            sign = -1
        terms.append(self.weight_monomial(sign))
        while self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.advance().kind == "PLUS" else -1
            terms.append(self.weight_monomial(sign))
        return WeightPoly(tuple(terms))

    def weight_monomial(self, sign: int) -> tuple[int, int]:
        token = self.peek()
        if token.kind == "INT":
            value = int(self.advance().text)
            if self.peek().kind == "STAR":
                self.advance()
                exponent = self.weight_power()
                return (exponent, sign * value)
            return (0, sign * value)
        if token.kind == "IDENT" and token.text == "L":
            return (self.weight_power(), sign)
        return self.fail("expected an integer or 'L'")

    def weight_power(self) -> int:
        token = self.expect("IDENT", "'L'")
        if token.text != "L":
            raise ParseError(
                f"expected 'L', got {token.text!r}", token.line, token.column
            )
        if self.peek().kind == "CARET":
            self.advance()
            exponent = self.expect("INT", "an exponent")
            return int(exponent.text)
        return 1

    # -- elements ----------------------------------------------------

    def element(self) -> Element:
        if (
            self.peek().kind == "INT"
            and self.peek().text == "0"
            and self.tokens[self.pos + 1].kind == "EOF"
        ):
            self.advance()
            return Element.zero()
        total = Element.zero()
        sign = 1
        if self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.advance().kind == "PLUS" else -1
        total = total + self.term(sign)
        while self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.advance().kind == "PLUS" else -1
            total = total + self.term(sign)
        return total

    def term(self, sign: int) -> Element:
        token = self.peek()
        coefficient = WeightPoly.integer(1)
        if token.kind == "INT":
            coefficient = WeightPoly.integer(int(self.advance().text))
            self.expect("STAR", "'*'")
        elif token.kind == "LPAREN":
            self.advance()
            coefficient = self.weight_poly()
            self.expect("RPAREN", "')'")
            self.expect("STAR", "'*'")
        forest = self.forest()
        return Element({forest: sign * coefficient})

    # -- rationals and Laurent series ---------------------------------

    def rational(self) -> Fraction:
        numerator = self.integer()
        if self.peek().kind == "SLASH":
            self.advance()
            denominator = self.expect("INT", "a denominator")
            return Fraction(numerator, int(denominator.text))
        return Fraction(numerator)

    def laurent(self) -> LaurentSeries:
        terms: dict[int, Fraction] = {}
        sign = 1
        if self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.advance().kind == "PLUS" else -1
        self.laurent_term(terms, sign)
        while self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.advance().kind == "PLUS" else -1
            self.laurent_term(terms, sign)
        return LaurentSeries.from_terms(terms)

    def laurent_term(self, terms: dict[int, Fraction], sign: int) -> None:
        token = self.peek()
        if token.kind == "IDENT" and token.text == "t":
            exponent = self.laurent_power()
            terms[exponent] = terms.get(exponent, Fraction(0)) + sign
            return
        value = self.rational()
        exponent = 0
        if self.peek().kind == "STAR":
            self.advance()
            exponent = self.laurent_power()
        terms[exponent] = terms.get(exponent, Fraction(0)) + sign * value

    def laurent_power(self) -> int:
        token = self.expect("IDENT", "'t'")
        if token.text != "t":
            raise ParseError(
                f"expected 't', got {token.text!r}", token.line, token.column
            )
        if self.peek().kind == "CARET":
            self.advance()
            return self.integer()
        return 1


def parse_forest(text: str, alphabet: tuple[Letter, ...]) -> Forest:
    parser = _Parser(text, alphabet)
    forest = parser.forest()
    parser.done()
    return forest


def parse_element(text: str, alphabet: tuple[Letter, ...]) -> Element:
    parser = _Parser(text, alphabet)
    element = parser.element()
    parser.done()
    return element


def parse_rational(text: str) -> Fraction:
    parser = _Parser(text)
    value = parser.rational()
    parser.done()
    return value


def parse_laurent_series(text: str) -> LaurentSeries:
    parser = _Parser(text)
    series = parser.laurent()
    parser.done()
    return series


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render(value, fmt: str = "plain") -> str:
    """Deterministic text for any value this package computes.

    ``plain`` output of elements and forests re-parses to an equal value;
    ``latex`` output is for inclusion in documents.
    """
    if fmt == "plain":
        return str(value)
    if fmt != "latex":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(value, Element):
        return _latex_terms(
            [(value.coefficient(f), _latex_forest(f)) for f in value.support()]
        )
    if isinstance(value, TensorElement):
        return _latex_terms(
            [
                (
                    value.coefficient(*pair),
                    f"{_latex_forest(pair[0])} \\otimes {_latex_forest(pair[1])}",
                )
                for pair in value.support()
            ]
        )
    if isinstance(value, Forest):
        return _latex_forest(value)
    if isinstance(value, Tree):
        return _latex_tree(value)
    if isinstance(value, MarkedWord):
        return _latex_marked_word(value)
    if isinstance(value, WeightPoly):
        return _latex_poly(value)
    raise TypeError(f"cannot render {type(value).__name__} as latex")


def _latex_tree(tree: Tree) -> str:
    if tree.body is None:
        return "\\bullet"
    return f"\\lfloor {_latex_forest(tree.body)} \\rfloor"


def _latex_forest(forest: Forest) -> str:
    parts = [_latex_tree(forest.trees[0])]
    for letter, tree in zip(forest.letters, forest.trees[1:]):
        parts.append(letter.symbol)
        parts.append(_latex_tree(tree))
    return " ".join(parts)


def _latex_marked_tree(tree) -> str:
    if tree.body is None:
        return "\\bullet"
    return f"\\lfloor {_latex_marked_word(tree.body)} \\rfloor"


def _latex_marked_word(word: MarkedWord) -> str:
    parts = [_latex_marked_tree(word.trees[0])]
    for sep, tree in zip(word.seps, word.trees[1:]):
        parts.append("\\sqcup" if sep is None else sep.symbol)
        parts.append(_latex_marked_tree(tree))
    return " ".join(parts)


def _latex_poly(poly: WeightPoly) -> str:
    if not poly:
        return "0"
    pieces: list[tuple[str, str]] = []
    for exponent, coefficient in reversed(poly.terms):
        if exponent == 0:
            body = str(abs(coefficient))
        else:
            power = "\\lambda" if exponent == 1 else f"\\lambda^{{{exponent}}}"
            body = power if abs(coefficient) == 1 else f"{abs(coefficient)} {power}"
        pieces.append(("-" if coefficient < 0 else "+", body))
    return _join_signed(pieces)


def _latex_terms(terms: list[tuple[WeightPoly, str]]) -> str:
    if not terms:
        return "0"
    pieces: list[tuple[str, str]] = []
    for poly, body in terms:
        value = poly.as_integer()
        if value is not None:
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            prefix = "" if magnitude == 1 else f"{magnitude} \\cdot "
            pieces.append((sign, prefix + body))
        else:
            pieces.append(("+", f"\\left({_latex_poly(poly)}\\right) {body}"))
    return _join_signed(pieces)


def _join_signed(pieces: list[tuple[str, str]]) -> str:
    sign, body = pieces[0]
    out = body if sign == "+" else "- " + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
