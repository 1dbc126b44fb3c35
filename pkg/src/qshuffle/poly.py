"""Noncommutative polynomials with Laurent coefficients, and the structural
maps that take a word apart: first/last letter and the remaining tail.

An :class:`NCPoly` is a finite linear combination of words over one alphabet
with coefficients in Q[h, h^-1].  Terms are kept in canonical order (word
length, then lexicographic letter id) and zero coefficients are never stored,
so equality is equality of term maps.  All values are immutable; every
operation is a pure function, so instances can be shared freely between
threads.
"""

from __future__ import annotations

from .laurent import LaurentCoeff, as_rational, rational_str
from .laurent import ONE as COEFF_ONE
from .words import Alphabet, Letter, Word, infer_alphabet


def _coerce_coeff(value) -> LaurentCoeff:
    if isinstance(value, LaurentCoeff):
        return value
    return LaurentCoeff.from_rational(as_rational(value))


class NCPoly:
    """A finite linear combination of words with LaurentCoeff coefficients."""

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms=(), _sorted: bool = False):
        data: dict[Word, LaurentCoeff] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for word, coeff in items:
            if word.alphabet != alphabet:
                raise ValueError(f"word {word} is not over alphabet {alphabet.name}")
            coeff = _coerce_coeff(coeff)
            if coeff.is_zero:
                continue
            acc = data.get(word)
            total = coeff if acc is None else acc + coeff
            if total.is_zero:
                if word in data:
                    del data[word]
            else:
                data[word] = total
        if not _sorted:
            data = {w: data[w] for w in sorted(data, key=lambda w: w.sort_key)}
        self.alphabet = alphabet
        self._terms = data
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet, ((alphabet.empty_word(), COEFF_ONE),))

    @classmethod
    def from_word(cls, word: Word, coeff=1) -> "NCPoly":
        return cls(word.alphabet, ((word, coeff),))

    @classmethod
    def from_letter(cls, letter: Letter, coeff=1) -> "NCPoly":
        return cls.from_word(Word(letter.alphabet, (letter,)), coeff)

    # -- queries -------------------------------------------------------------

    @property
    def terms(self) -> dict:
        """The term map word -> coefficient (treat as read-only)."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, word: Word) -> LaurentCoeff:
        return self._terms.get(word, LaurentCoeff())

    def words(self):
        return self._terms.keys()

    def max_word_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch in +")
        merged = dict(self._terms)
        for word, coeff in other._terms.items():
            acc = merged.get(word)
            total = coeff if acc is None else acc + coeff
            if total.is_zero:
                if word in merged:
                    del merged[word]
            else:
                merged[word] = total
        return NCPoly(self.alphabet, merged)

    def __neg__(self):
        return NCPoly(self.alphabet,
                      {w: -c for w, c in self._terms.items()}, _sorted=True)

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> "NCPoly":
        coeff = _coerce_coeff(value)
        if coeff.is_zero:
            return NCPoly.zero(self.alphabet)
        return NCPoly(self.alphabet,
                      ((w, c * coeff) for w, c in self._terms.items()))

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.name, frozenset(self._terms.items())))
        return self._hash

    # -- rendering -------------------------------------------------------------

    def text(self) -> str:
        """Grammar-compatible rendering, e.g. ``"2 baa - b a b b"``-style sums.

        Terms are flattened to (word, h-exponent, rational) triples in
        canonical order, so the output is deterministic and parses back to an
        equal polynomial.
        """
        if not self._terms:
            return "0"
        flat = []
        for word in self._terms:
            for exp, value in self._terms[word].items():
                flat.append((word, exp, value))
        pieces = []
        for i, (word, exp, value) in enumerate(flat):
            negative = value < 0
            mag = -value if negative else value
            bits = []
            if mag != 1 or (exp == 0 and word.is_empty):
                bits.append(str(mag))
            if exp == 1:
                bits.append("h")
            elif exp != 0:
                bits.append(f"h^{exp}")
            if not word.is_empty:
                bits.append(word.text())
            body = " ".join(bits)
            if i == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"NCPoly<{self.alphabet.name}>({self.text()})"

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for word, coeff in self._terms.items():
            hpowers = {str(exp): rational_str(val) for exp, val in coeff.items()}
            terms.append({"coeff": {"hpowers": hpowers},
                          "word": [l.text for l in word]})
        return {"terms": terms}

    @classmethod
    def from_json_dict(cls, data: dict, alphabet: Alphabet | None = None) -> "NCPoly":
        tokens = [tok for term in data["terms"] for tok in term["word"]]
        if alphabet is None:
            alphabet = infer_alphabet(tokens)
        terms = []
        for term in data["terms"]:
            word = alphabet.word(*term["word"]) if term["word"] else alphabet.empty_word()
            coeff = LaurentCoeff((int(exp), val)
                                 for exp, val in term["coeff"]["hpowers"].items())
            terms.append((word, coeff))
        return cls(alphabet, terms)


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Concatenation product, extended bilinearly; coefficients multiply in
    Q[h, h^-1].  The empty word is the two-sided unit."""
    if p.alphabet != q.alphabet:
        raise ValueError("alphabet mismatch in nc_mul")
    terms: dict[Word, LaurentCoeff] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            word = w1 + w2
            coeff = c1 * c2
            acc = terms.get(word)
            total = coeff if acc is None else acc + coeff
            if total.is_zero:
                if word in terms:
                    del terms[word]
            else:
                terms[word] = total
    return NCPoly(p.alphabet, terms)


def first(p: NCPoly) -> NCPoly:
    """The linear map sending each word to its first letter and 1 to 1."""
    terms = []
    for word, coeff in p.terms.items():
        image = word if word.is_empty else word[:1]
        terms.append((image, coeff))
    return NCPoly(p.alphabet, terms)


def last(p: NCPoly) -> NCPoly:
    """Mirror of :func:`first`: each word maps to its last letter, 1 to 1."""
    terms = []
    for word, coeff in p.terms.items():
        image = word if word.is_empty else word[-1:]
        terms.append((image, coeff))
    return NCPoly(p.alphabet, terms)


def rest_word(word: Word) -> Word:
    """The word with its first letter removed; single letters and 1 map to 1."""
    if len(word) <= 1:
        return word.alphabet.empty_word()
    return word[1:]


def init_word(word: Word) -> Word:
    """Mirror of :func:`rest_word`: drop the last letter."""
    if len(word) <= 1:
        return word.alphabet.empty_word()
    return word[:-1]


def normalize(p: NCPoly) -> NCPoly:
    """Collect like words, drop zeros, order terms canonically.  Constructors
    already do this, so normalize is idempotent and cheap."""
    return NCPoly(p.alphabet, p.terms)
