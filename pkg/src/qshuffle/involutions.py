"""Dualities and letter encodings.

Two anti-automorphisms live here: the classical duality on Q<x,y> (reverse
the word and swap x <-> y) and the h-twisted duality on C<a,b> (reverse and
send a -> h*b, b -> h^-1*a).  Both are involutions.

The same module owns the bijection between index words (k_1,...,k_r) and
two-letter words: z_k = x^(k-1) y over XY and e_k = a^k b over AB, together
with the subspace membership tests for the admissible words that the
evaluation maps accept.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentCoeff
from .poly import NCPoly
from .words import AB, E, XY, Z, Alphabet, Word


@dataclass(frozen=True)
class IndexWord:
    """A multi-index (k_1,...,k_r) in the z-family (k_i >= 1) or e-family
    (k_i >= 0), corresponding to a word under the encoding below."""

    indices: tuple[int, ...]
    family: str  # "Z" or "E"

    def __post_init__(self):
        if self.family not in ("Z", "E"):
            raise ValueError(f"unknown family {self.family!r}")
        floor = 1 if self.family == "Z" else 0
        for k in self.indices:
            if k < floor:
                raise ValueError(
                    f"index {k} out of domain for family {self.family} (min {floor})")

    @property
    def admissible(self) -> bool:
        """k_1 >= 2 in the z-family, k_1 >= 1 in the e-family; empty is admissible."""
        if not self.indices:
            return True
        return self.indices[0] >= (2 if self.family == "Z" else 1)

    @property
    def depth(self) -> int:
        return len(self.indices)

    def weight(self) -> int:
        if self.family == "Z":
            return sum(self.indices)
        return sum(k + 1 for k in self.indices)

    def letters_word(self) -> Word:
        """The same data as a word over the indexed alphabet Z or E."""
        alphabet = Z if self.family == "Z" else E
        return alphabet.word(*self.indices) if self.indices else alphabet.empty_word()


def encode(iw: IndexWord) -> Word:
    """Expand an index word into the two-letter alphabet: z_k -> x^(k-1) y,
    e_k -> a^k b."""
    if iw.family == "Z":
        alphabet, head, tail = XY, "x", "y"
        reps = [k - 1 for k in iw.indices]
    else:
        alphabet, head, tail = AB, "a", "b"
        reps = list(iw.indices)
    letters = []
    h = alphabet.letter(head)
    t = alphabet.letter(tail)
    for k in reps:
        letters.extend([h] * k)
        letters.append(t)
    return Word(alphabet, tuple(letters))


def decode(word: Word) -> IndexWord:
    """Inverse of :func:`encode`; the word must end in y (resp. b) or be empty."""
    if word.alphabet == Z:
        return IndexWord(tuple(l.index for l in word), "Z")
    if word.alphabet == E:
        return IndexWord(tuple(l.index for l in word), "E")
    if word.alphabet == XY:
        family, tail = "Z", "y"
    elif word.alphabet == AB:
        family, tail = "E", "b"
    else:
        raise ValueError(f"cannot decode words over alphabet {word.alphabet.name}")
    if word.is_empty:
        return IndexWord((), family)
    if word[-1].symbol != tail:
        raise ValueError(f"word {word} does not end with {tail}; not decodable")
    indices = []
    run = 0
    for letter in word:
        if letter.symbol == tail:
            indices.append(run + (0 if family == "E" else 1))
            run = 0
        else:
            run += 1
    return IndexWord(tuple(indices), family)


def encode_poly(p: NCPoly) -> NCPoly:
    """Linear extension of :func:`encode`: polynomials over Z/E become
    polynomials over XY/AB."""
    if p.alphabet == Z:
        target = XY
    elif p.alphabet == E:
        target = AB
    else:
        raise ValueError(f"encode_poly expects a Z- or E-polynomial, got {p.alphabet.name}")
    return NCPoly(target, ((encode(decode(w)), c) for w, c in p.terms.items()))


def decode_poly(p: NCPoly) -> NCPoly:
    """Linear extension of :func:`decode`: every word must end in y/b."""
    if p.alphabet == XY:
        target = Z
    elif p.alphabet == AB:
        target = E
    else:
        raise ValueError(f"decode_poly expects an XY- or AB-polynomial, got {p.alphabet.name}")
    return NCPoly(target, ((decode(w).letters_word(), c) for w, c in p.terms.items()))


def tau(p: NCPoly) -> NCPoly:
    """The duality on Q<x,y>: anti-automorphism with x <-> y, fixing 1.

    Only defined for rational (h-free) coefficients.
    """
    if p.alphabet != XY:
        raise ValueError("tau acts on polynomials over XY")
    x = XY.letter("x")
    y = XY.letter("y")
    swap = {x: y, y: x}
    terms = []
    for word, coeff in p.terms.items():
        if not coeff.is_rational:
            raise ValueError(f"tau requires h-free coefficients, got {coeff}")
        image = Word(XY, tuple(swap[l] for l in reversed(word.letters)))
        terms.append((image, coeff))
    return NCPoly(XY, terms)


def sigma(p: NCPoly) -> NCPoly:
    """The h-twisted duality on C<a,b>: anti-automorphism with a -> h*b and
    b -> h^-1*a.  An involution because h * h^-1 = 1."""
    if p.alphabet != AB:
        raise ValueError("sigma acts on polynomials over AB")
    a = AB.letter("a")
    b = AB.letter("b")
    swap = {a: b, b: a}
    terms = []
    for word, coeff in p.terms.items():
        shift = sum(1 if l == a else -1 for l in word)
        image = Word(AB, tuple(swap[l] for l in reversed(word.letters)))
        terms.append((image, coeff * LaurentCoeff.hbar_power(shift)))
    return NCPoly(AB, terms)


_SPACES = ("H0", "H1", "Hhat0", "Hhat1")


def membership(p: NCPoly, space: str) -> bool:
    """Subspace test: H0 = Q + x*H*y, H1 = Q + H*y over XY, and the a/b
    analogues Hhat0, Hhat1 over AB.  Polynomials over Z/E are tested through
    their index words (H0: first index >= 2, Hhat0: first index >= 1)."""
    if space not in _SPACES:
        raise ValueError(f"unknown space {space!r}; expected one of {_SPACES}")
    hatted = space.startswith("Hhat")
    zero_part = space.endswith("0")
    if p.alphabet in (Z, E):
        if (p.alphabet == E) != hatted:
            raise ValueError(f"alphabet {p.alphabet.name} does not match space {space}")
        if not zero_part:
            return True
        floor = 1 if hatted else 2
        return all(w.is_empty or w[0].index >= floor for w in p.words())
    if p.alphabet == XY:
        if hatted:
            raise ValueError("Hhat spaces live over AB")
        start, end = "x", "y"
    elif p.alphabet == AB:
        if not hatted:
            raise ValueError("H0/H1 live over XY")
        start, end = "a", "b"
    else:
        raise ValueError(f"membership undefined for alphabet {p.alphabet.name}")
    for word in p.words():
        if word.is_empty:
            continue
        if word[-1].symbol != end:
            return False
        if zero_part and word[0].symbol != start:
            return False
    return True
