"""A small expression language for words, scalars and product applications.

Grammar (whitespace separates tokens; it is optional between single-character
letters and required around indexed letters)::

    expr    := ['-'] product (('+' | '-') product)*
    product := term ('*' term)*            # infix '*' is the stuffle product
    term    := coeff [factor] | factor
    coeff   := rational ['h' ['^' int]] | 'h' ['^' int]
    factor  := word | name '(' expr [',' expr] ')'
    word    := letters...                  # "aab", "e2 e0"; "1" is the empty word
    name    := tau | sigma | stuffle | shuffle | qstuffle | qshuffle | shsh

Parse errors carry the byte offset and the set of expected tokens.  The
printer emits the same canonical form that NCPoly.text() produces, so
parse(print(e)) round-trips.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .laurent import LaurentCoeff, Q_ONE, as_rational
from .poly import NCPoly
from .words import XY, Alphabet, infer_alphabet

FUNCTION_NAMES = ("tau", "sigma", "stuffle", "shuffle", "qstuffle", "qshuffle", "shsh")

_INDEXED = re.compile(r"^[A-Za-z]\d+$")


class ParseError(ValueError):
    """Syntax error with position and expectation information."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class WordNode:
    """A word literal as raw letter tokens ("a", "e2", ...); empty = 1."""
    letters: tuple[str, ...]


@dataclass(frozen=True)
class CallNode:
    """A named product or involution application."""
    name: str
    args: tuple


@dataclass(frozen=True)
class TermNode:
    """coefficient * factor; factor None means the empty word."""
    value: object  # rational magnitude with sign
    hexp: int
    factor: object  # WordNode | CallNode | None


@dataclass(frozen=True)
class SumNode:
    terms: tuple[TermNode, ...]


# -- tokenizer -------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*^(),])
  | (?P<ws>\s+)
  | (?P<bad>.)
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    for match in _TOKEN.finditer(text):
        kind = match.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {match.group()!r}", match.start())
        tokens.append((kind, match.group(), match.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, op: str):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"got {value!r}", offset, expected={op})
        return self.advance()

    # expr := ['-'] product (('+'|'-') product)*
    def parse_expr(self) -> SumNode:
        terms = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            sign = -1
        terms.extend(self.parse_product(sign))
        while True:
            kind, value, offset = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                terms.extend(self.parse_product(1 if value == "+" else -1))
            else:
                break
        return SumNode(tuple(terms))

    # product := term ('*' term)*   -- infix '*' is the stuffle product
    def parse_product(self, sign: int) -> list[TermNode]:
        left = self.parse_term(sign)
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                right = self.parse_term(1)
                call = CallNode("stuffle", (SumNode((left,)), SumNode((right,))))
                left = TermNode(Q_ONE, 0, call)
            else:
                return [left]

    def parse_term(self, sign: int) -> TermNode:
        value = Q_ONE
        hexp = 0
        have_coeff = False
        kind, tok, offset = self.peek()
        if kind == "num":
            self.advance()
            value = as_rational(tok)
            have_coeff = True
            kind, tok, offset = self.peek()
        if kind == "name" and tok == "h":
            self.advance()
            hexp = 1
            have_coeff = True
            kind, tok, offset = self.peek()
            if kind == "op" and tok == "^":
                self.advance()
                hexp = self._parse_int()
            kind, tok, offset = self.peek()
        factor = None
        if kind == "num" and tok == "1":
            # an explicit "1" denotes the empty word ("3/2 1"); a bare "1"
            # was already consumed as the coefficient above, same meaning
            self.advance()
        elif kind == "name":
            factor = self.parse_factor()
        elif not have_coeff:
            raise ParseError(f"got {tok!r}", offset,
                             expected={"number", "letter", "function name", "h"})
        return TermNode(value * sign, hexp, factor)

    def _parse_int(self) -> int:
        sign = 1
        kind, tok, offset = self.peek()
        if kind == "op" and tok == "-":
            self.advance()
            sign = -1
            kind, tok, offset = self.peek()
        if kind != "num" or "/" in tok:
            raise ParseError(f"got {tok!r}", offset, expected={"integer"})
        self.advance()
        return sign * int(tok)

    def parse_factor(self):
        kind, tok, offset = self.peek()
        if kind != "name":
            raise ParseError(f"got {tok!r}", offset, expected={"letter", "function name"})
        nxt = self.tokens[self.pos + 1]
        if tok in FUNCTION_NAMES and nxt[0] == "op" and nxt[1] == "(":
            return self.parse_call()
        return self.parse_word()

    def parse_call(self) -> CallNode:
        _, name, _ = self.advance()
        self.expect_op("(")
        args = [self.parse_expr()]
        kind, tok, _ = self.peek()
        if kind == "op" and tok == ",":
            self.advance()
            args.append(self.parse_expr())
        self.expect_op(")")
        arity = 1 if name in ("tau", "sigma") else 2
        if len(args) != arity:
            raise ParseError(f"{name} takes {arity} argument(s), got {len(args)}",
                             self.peek()[2])
        return CallNode(name, tuple(args))

    def parse_word(self) -> WordNode:
        letters: list[str] = []
        while True:
            kind, tok, offset = self.peek()
            if kind != "name" or tok == "h":
                break
            if tok in FUNCTION_NAMES and self.tokens[self.pos + 1][1] == "(":
                break
            self.advance()
            letters.extend(self._letter_group(tok, offset))
        if not letters:
            _, tok, offset = self.peek()
            raise ParseError(f"got {tok!r}", offset, expected={"letter"})
        return WordNode(tuple(letters))

    def _letter_group(self, tok: str, offset: int) -> list[str]:
        if _INDEXED.match(tok):
            return [tok]
        if tok.isalpha():
            if self.alphabet is not None and not self.alphabet.is_indexed:
                known = set(self.alphabet.symbols)
            else:
                known = set("abcxy")
            bad = [ch for ch in tok if ch not in known]
            if bad:
                raise ParseError(f"unknown letter {bad[0]!r} in {tok!r}", offset,
                                 expected=sorted(known))
            return list(tok)
        raise ParseError(f"invalid letter group {tok!r} "
                         "(indexed letters need surrounding whitespace)", offset,
                         expected={"letter"})


def parse(text: str, alphabet: Alphabet | None = None) -> SumNode:
    """Parse an expression; the optional alphabet restricts the letter set
    (used for user-defined rule files)."""
    parser = _Parser(text, alphabet)
    expr = parser.parse_expr()
    kind, tok, offset = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {tok!r}", offset, expected={"end of input"})
    return expr


# -- evaluation -----------------------------------------------------------------------


def evaluate(expr: SumNode, alphabet: Alphabet | None = None) -> NCPoly:
    """Evaluate an AST to a polynomial.  The alphabet of a sum is inferred
    from its word literals (scalars are alphabet-neutral and default to XY
    for scalar-only expressions)."""
    from .involutions import sigma, tau
    from .products import named_product

    polys: list[NCPoly] = []
    scalars: list[LaurentCoeff] = []
    for term in expr.terms:
        coeff = LaurentCoeff.hbar_power(term.hexp, term.value)
        if term.factor is None:
            scalars.append(coeff)
            continue
        if isinstance(term.factor, WordNode):
            target = alphabet or infer_alphabet(term.factor.letters)
            word = target.word(*term.factor.letters)
            polys.append(NCPoly.from_word(word, coeff))
        else:
            call = term.factor
            args = [evaluate(arg, alphabet) for arg in call.args]
            if call.name == "tau":
                result = tau(args[0])
            elif call.name == "sigma":
                result = sigma(args[0])
            else:
                result = named_product(call.name, args[0], args[1])
            polys.append(result * coeff)
    alphabets = {p.alphabet for p in polys}
    if len(alphabets) > 1:
        names = sorted(a.name for a in alphabets)
        raise ValueError(f"expression mixes alphabets {names}")
    target = alphabets.pop() if alphabets else (alphabet or XY)
    total = NCPoly.zero(target)
    for p in polys:
        total = total + p
    for coeff in scalars:
        total = total + NCPoly(target, ((target.empty_word(), coeff),))
    return total


def poly_from_text(text: str, alphabet: Alphabet | None = None) -> NCPoly:
    """Parse and evaluate in one step."""
    return evaluate(parse(text, alphabet), alphabet)


# -- printing ---------------------------------------------------------------------------


def print_expr(expr: SumNode) -> str:
    """Canonical rendering; parse(print_expr(e)) reproduces the AST."""
    pieces = []
    for i, term in enumerate(expr.terms):
        negative = term.value < 0
        mag = -term.value if negative else term.value
        bits = []
        if mag != 1 or (term.hexp == 0 and term.factor is None):
            bits.append(str(mag))
        if term.hexp == 1:
            bits.append("h")
        elif term.hexp != 0:
            bits.append(f"h^{term.hexp}")
        if isinstance(term.factor, WordNode):
            toks = term.factor.letters
            joiner = "" if all(len(t) == 1 for t in toks) else " "
            bits.append(joiner.join(toks))
        elif isinstance(term.factor, CallNode):
            inner = ", ".join(print_expr(arg) for arg in term.factor.args)
            bits.append(f"{term.factor.name}({inner})")
        body = " ".join(bits)
        if i == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) if pieces else "0"
