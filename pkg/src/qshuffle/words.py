"""Alphabets, letters and words of free noncommutative polynomial rings.

An :class:`Alphabet` is either a finite list of single-character symbols or
an indexed family such as z_k (k >= 1) or e_k (k >= 0).  Letters are interned
per alphabet so identity comparison is the common fast path.  Words are
immutable sequences of letters from one alphabet; the empty word is the unit
of concatenation.
"""

from __future__ import annotations

import re
from typing import Iterable

_INDEXED_TOKEN = re.compile(r"^([A-Za-z])(-?\d+)$")


class Alphabet:
    """A named letter set: an explicit symbol tuple or an indexed family."""

    __slots__ = ("name", "symbols", "base", "min_index", "_letters")

    def __init__(self, name: str, symbols: Iterable[str] | None = None,
                 base: str | None = None, min_index: int = 0):
        if (symbols is None) == (base is None):
            raise ValueError("give exactly one of symbols= or base=")
        self.name = name
        self.symbols = tuple(symbols) if symbols is not None else None
        self.base = base
        self.min_index = min_index
        if self.symbols is not None:
            if len(set(self.symbols)) != len(self.symbols):
                raise ValueError(f"alphabet {name}: symbols must be distinct")
            for sym in self.symbols:
                if len(sym) != 1:
                    raise ValueError(f"alphabet {name}: symbols must be single characters")
        self._letters: dict = {}

    @property
    def is_indexed(self) -> bool:
        return self.base is not None

    def letter(self, spec) -> "Letter":
        """The interned letter for a spec: ``"a"``, ``"z3"``, ``("z", 3)`` or an int index."""
        if isinstance(spec, Letter):
            if spec.alphabet != self:
                raise ValueError(f"letter {spec} does not belong to alphabet {self.name}")
            return spec
        if self.is_indexed:
            if isinstance(spec, int):
                index = spec
            elif isinstance(spec, tuple):
                base, index = spec
                if base != self.base:
                    raise ValueError(f"unknown letter base {base!r} for alphabet {self.name}")
            else:
                match = _INDEXED_TOKEN.match(str(spec))
                if not match or match.group(1) != self.base:
                    raise ValueError(f"unknown letter {spec!r} for alphabet {self.name}")
                index = int(match.group(2))
            index = int(index)
            if index < self.min_index:
                raise ValueError(
                    f"index {index} below minimum {self.min_index} of alphabet {self.name}")
            cached = self._letters.get(index)
            if cached is None:
                cached = Letter(self, base=self.base, index=index)
                self._letters[index] = cached
            return cached
        sym = str(spec)
        cached = self._letters.get(sym)
        if cached is None:
            if sym not in self.symbols:
                raise ValueError(f"unknown letter {sym!r} for alphabet {self.name}")
            cached = Letter(self, symbol=sym)
            self._letters[sym] = cached
        return cached

    def letters(self) -> tuple:
        """All letters of a finite alphabet, in declaration order."""
        if self.is_indexed:
            raise ValueError(f"alphabet {self.name} is infinite")
        return tuple(self.letter(s) for s in self.symbols)

    def indexed_letters(self, max_index: int) -> tuple:
        """Letters with index from min_index up to max_index inclusive."""
        if not self.is_indexed:
            raise ValueError(f"alphabet {self.name} is not indexed")
        return tuple(self.letter(i) for i in range(self.min_index, max_index + 1))

    def word(self, *specs) -> "Word":
        """Build a word from letter specs; a single string is split per character
        for finite alphabets (``AB.word("aab")``)."""
        if len(specs) == 1 and isinstance(specs[0], str) and not self.is_indexed:
            specs = tuple(specs[0].replace(" ", ""))
        return Word(self, tuple(self.letter(s) for s in specs))

    def empty_word(self) -> "Word":
        return Word(self, ())

    def __contains__(self, letter) -> bool:
        return isinstance(letter, Letter) and letter.alphabet == self

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Alphabet):
            return NotImplemented
        return (self.name == other.name and self.symbols == other.symbols
                and self.base == other.base and self.min_index == other.min_index)

    def __hash__(self):
        return hash((self.name, self.symbols, self.base, self.min_index))

    def __repr__(self):
        if self.is_indexed:
            return f"Alphabet({self.name}: {self.base}_k, k >= {self.min_index})"
        return f"Alphabet({self.name}: {{{', '.join(self.symbols)}}})"


class Letter:
    """A single letter; construct via :meth:`Alphabet.letter` (interned)."""

    __slots__ = ("alphabet", "symbol", "base", "index", "sort_key", "_hash")

    def __init__(self, alphabet: Alphabet, symbol: str | None = None,
                 base: str | None = None, index: int | None = None):
        self.alphabet = alphabet
        self.symbol = symbol
        self.base = base
        self.index = index
        self.sort_key = (symbol, 0) if symbol is not None else (base, index)
        self._hash = hash((alphabet.name, self.sort_key))

    @property
    def text(self) -> str:
        if self.symbol is not None:
            return self.symbol
        return f"{self.base}{self.index}"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Letter):
            return NotImplemented
        return self.sort_key == other.sort_key and self.alphabet == other.alphabet

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"Letter({self.text})"


class Word:
    """A finite (possibly empty) sequence of letters from one alphabet."""

    __slots__ = ("alphabet", "letters", "_hash", "_skey")

    def __init__(self, alphabet: Alphabet, letters: tuple = ()):
        for letter in letters:
            if letter.alphabet != alphabet:
                raise ValueError(f"letter {letter} is not in alphabet {alphabet.name}")
        self.alphabet = alphabet
        self.letters = tuple(letters)
        self._hash = hash((alphabet.name, tuple(l.sort_key for l in self.letters)))
        self._skey = None

    @property
    def is_empty(self) -> bool:
        return not self.letters

    @property
    def sort_key(self):
        """Canonical order: by length, then lexicographically by letter id."""
        if self._skey is None:
            self._skey = (len(self.letters), tuple(l.sort_key for l in self.letters))
        return self._skey

    def weight(self) -> int:
        """Length for finite alphabets; for indexed families the length of the
        encoded two-letter word (sum of k for z_k, sum of k+1 for e_k)."""
        if not self.alphabet.is_indexed:
            return len(self.letters)
        shift = 1 - self.alphabet.min_index
        return sum(l.index + shift for l in self.letters)

    def text(self) -> str:
        """Grammar-compatible rendering: ``"aab"`` / ``"e2 e0"`` / ``"1"``."""
        if not self.letters:
            return "1"
        if self.alphabet.is_indexed:
            return " ".join(l.text for l in self.letters)
        return "".join(l.text for l in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return self.letters[item]

    def __add__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Word):
            return NotImplemented
        return (self._hash == other._hash and self.alphabet == other.alphabet
                and self.letters == other.letters)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Word({self.text()})"


XY = Alphabet("XY", symbols=("x", "y"))
AB = Alphabet("AB", symbols=("a", "b"))
ABC = Alphabet("ABC", symbols=("a", "b", "c"))
Z = Alphabet("Z", base="z", min_index=1)
E = Alphabet("E", base="e", min_index=0)

BUILTIN_ALPHABETS = {a.name: a for a in (XY, AB, ABC, Z, E)}


def infer_alphabet(letter_tokens: Iterable[str]) -> Alphabet:
    """The smallest built-in alphabet containing all the given letter tokens.

    Tokens are single symbols ("a", "x") or indexed names ("z3", "e0").
    Symbol sets {x,y} map to XY, {a,b} to AB, anything with c to ABC.
    """
    tokens = list(letter_tokens)
    bases = set()
    symbols = set()
    for tok in tokens:
        match = _INDEXED_TOKEN.match(tok)
        if match and match.group(1) in ("z", "e"):
            bases.add(match.group(1))
        else:
            symbols.add(tok)
    if bases and symbols:
        raise ValueError(f"cannot mix indexed letters and plain symbols: {tokens}")
    if len(bases) > 1:
        raise ValueError(f"cannot mix z- and e-letters in one word: {tokens}")
    if bases:
        return Z if bases.pop() == "z" else E
    if symbols <= {"x", "y"}:
        return XY
    if symbols <= {"a", "b"}:
        return AB
    if symbols <= {"a", "b", "c"}:
        return ABC
    raise ValueError(f"letters {sorted(symbols)} fit no built-in alphabet")
