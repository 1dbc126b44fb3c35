"""Bilinear letter products (diamond maps) and their property checkers.

A diamond map sends a pair of letters to a polynomial (possibly a longer
word, possibly zero).  Rules come in two shapes: finite tables over a finite
alphabet, and index-shift rules over an indexed family, where the pair
(letter_i, letter_j) maps to a fixed seed with its first index raised by
i + j.  The checkers decide commutativity, decomposability (all tails of
length->=2 outputs agree on one common word) and the two-condition
associativity criterion that makes the associated quasi-shuffle product
associative.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import HBAR, LaurentCoeff
from .laurent import ONE as COEFF_ONE
from .poly import NCPoly, nc_mul, rest_word
from .words import AB, ABC, E, XY, Z, Alphabet, Letter, Word

DEFAULT_WEIGHT_BOUND = 8


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check; a witness is present iff it failed."""

    property: str  # "commutative" | "decomposable" | "associative"
    holds: bool
    witness: str | None = None
    common_tail: Word | None = None
    note: str = ""

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("witness only allowed on failing reports")
        if not self.holds and self.witness is None:
            raise ValueError("failing reports must carry a witness")


class DiamondRule:
    """Base class; concrete rules implement apply(letter, letter) -> NCPoly."""

    def __init__(self, alphabet: Alphabet, name: str):
        self.alphabet = alphabet
        self.name = name
        # property reports, computed once per (property, bound); writes are
        # idempotent so concurrent readers see a consistent value
        self._reports: dict = {}

    def apply(self, alpha: Letter, beta: Letter) -> NCPoly:
        raise NotImplementedError

    def letters_within(self, weight_bound: int) -> tuple:
        """The letters a bounded check ranges over (all of them when finite)."""
        if self.alphabet.is_indexed:
            return self.alphabet.indexed_letters(weight_bound)
        return self.alphabet.letters()

    def cached_report(self, prop: str, weight_bound: int) -> PropertyReport | None:
        return self._reports.get((prop, weight_bound))

    def _store_report(self, prop: str, weight_bound: int,
                      report: PropertyReport) -> PropertyReport:
        self._reports[(prop, weight_bound)] = report
        return report

    def __repr__(self):
        return f"{type(self).__name__}({self.name} on {self.alphabet.name})"


def _validate_output(alphabet: Alphabet, out: NCPoly, context: str) -> NCPoly:
    if out.alphabet != alphabet:
        raise ValueError(f"{context}: output over {out.alphabet.name}, expected {alphabet.name}")
    for word in out.words():
        if word.is_empty:
            raise ValueError(f"{context}: constant terms are not allowed in diamond outputs")
    return out


class TableDiamondRule(DiamondRule):
    """A diamond map given by a complete table over a finite alphabet."""

    def __init__(self, alphabet: Alphabet, table: dict, name: str = "table"):
        if alphabet.is_indexed:
            raise ValueError("table rules need a finite alphabet")
        super().__init__(alphabet, name)
        letters = alphabet.letters()
        self.table = {}
        for (l1, l2), out in table.items():
            l1 = alphabet.letter(l1)
            l2 = alphabet.letter(l2)
            self.table[(l1, l2)] = _validate_output(alphabet, out, f"{name}({l1},{l2})")
        missing = [(l1.text, l2.text) for l1 in letters for l2 in letters
                   if (l1, l2) not in self.table]
        if missing:
            raise ValueError(f"rule {name}: table is missing pairs {missing}")

    def apply(self, alpha: Letter, beta: Letter) -> NCPoly:
        key = (self.alphabet.letter(alpha), self.alphabet.letter(beta))
        try:
            return self.table[key]
        except KeyError:
            raise ValueError(f"rule {self.name}: no table entry for {key}") from None


class IndexedDiamondRule(DiamondRule):
    """An index-shift rule on an indexed family: the pair (i, j) maps to the
    stored seed terms with the first index raised by i + j.

    The stuffle z_i z_j -> z_{i+j} is the seed ((1, (0,)),) over Z; the
    q-stuffle is the same seed over E.
    """

    def __init__(self, alphabet: Alphabet, seed_terms, name: str = "indexed"):
        if not alphabet.is_indexed:
            raise ValueError("indexed rules need an indexed alphabet")
        super().__init__(alphabet, name)
        terms = []
        for coeff, indices in seed_terms:
            indices = tuple(int(i) for i in indices)
            if not indices:
                raise ValueError(f"rule {name}: seed terms must be nonempty words")
            coeff = coeff if isinstance(coeff, LaurentCoeff) else LaurentCoeff.from_rational(coeff)
            if not coeff.is_zero:
                terms.append((coeff, indices))
        self.seed_terms = tuple(terms)

    def apply(self, alpha: Letter, beta: Letter) -> NCPoly:
        alpha = self.alphabet.letter(alpha)
        beta = self.alphabet.letter(beta)
        shift = alpha.index + beta.index
        out = []
        for coeff, indices in self.seed_terms:
            letters = (self.alphabet.letter(indices[0] + shift),) + tuple(
                self.alphabet.letter(i) for i in indices[1:])
            out.append((Word(self.alphabet, letters), coeff))
        return NCPoly(self.alphabet, out)

    @property
    def seed_tail_indices(self) -> set:
        return {indices[1:] for _, indices in self.seed_terms}


def diamond_apply(rule: DiamondRule, alpha, beta) -> NCPoly:
    """Evaluate the diamond map on a pair of letters (specs accepted)."""
    return rule.apply(rule.alphabet.letter(alpha), rule.alphabet.letter(beta))


# -- built-in rules -----------------------------------------------------------


def _table(alphabet, entries):
    table = {}
    for keys, value in entries:
        for key in keys:
            table[key] = value
    letters = alphabet.letters()
    for l1 in letters:
        for l2 in letters:
            table.setdefault((l1.text, l2.text), NCPoly.zero(alphabet))
    return table


def _w(alphabet, text):
    return NCPoly.from_word(alphabet.word(text))


_BUILTIN_CACHE: dict = {}

BUILTIN_RULE_NAMES = ("stuffle", "shuffle", "qstuffle", "qshuffle", "ex3", "ex4", "shsh")


def builtin_rule(name: str) -> DiamondRule:
    """The named diamond rules: index-addition rules on Z/E, the all-zero rule
    on XY, and the finite tables behind the q-shuffle and its relatives."""
    cached = _BUILTIN_CACHE.get(name)
    if cached is not None:
        return cached
    if name == "stuffle":
        rule = IndexedDiamondRule(Z, ((COEFF_ONE, (0,)),), name)
    elif name == "qstuffle":
        rule = IndexedDiamondRule(E, ((COEFF_ONE, (0,)),), name)
    elif name == "shuffle":
        rule = TableDiamondRule(XY, _table(XY, ()), name)
    elif name == "qshuffle":
        rule = TableDiamondRule(AB, _table(AB, (
            ((("a", "b"), ("b", "a")), -_w(AB, "ab")),
            ((("b", "b"),), -_w(AB, "bb")),
            ((("a", "a"),), _w(AB, "a") * HBAR),
        )), name)
    elif name == "ex3":
        rule = TableDiamondRule(AB, _table(AB, (
            ((("a", "b"), ("b", "a")), -_w(AB, "ab")),
            ((("b", "b"),), -_w(AB, "bb")),
            ((("a", "a"),), -_w(AB, "abb")),
        )), name)
    elif name == "ex4":
        rule = TableDiamondRule(ABC, _table(ABC, (
            ((("b", "b"),), -_w(ABC, "bc")),
            ((("a", "a"),), _w(ABC, "a") * HBAR),
            ((("c", "a"), ("a", "c")), -_w(ABC, "ac")),
            ((("c", "b"), ("b", "c")), -_w(ABC, "bc")),
            ((("c", "c"),), -_w(ABC, "cc")),
        )), name)
    elif name == "shsh":
        rule = TableDiamondRule(XY, _table(XY, (
            ((("x", "y"), ("y", "x")), -_w(XY, "xy")),
            ((("y", "y"),), -_w(XY, "yy")),
            ((("x", "x"),), _w(XY, "xy")),
        )), name)
    else:
        raise ValueError(f"unknown builtin rule {name!r}; expected one of {BUILTIN_RULE_NAMES}")
    _BUILTIN_CACHE[name] = rule
    return rule


# -- property checkers ---------------------------------------------------------


def check_commutative(rule: DiamondRule,
                      weight_bound: int = DEFAULT_WEIGHT_BOUND) -> PropertyReport:
    """alpha<>beta symmetry; finite alphabets are checked exhaustively, index
    rules are symmetric in i+j by construction (plus a bounded spot check)."""
    cached = rule.cached_report("commutative", weight_bound)
    if cached is not None:
        return cached
    note = ""
    if isinstance(rule, IndexedDiamondRule):
        note = "index rule depends only on the index sum; symmetric by construction"
    letters = rule.letters_within(weight_bound)
    for i, l1 in enumerate(letters):
        for l2 in letters[i:]:
            lhs = rule.apply(l1, l2)
            rhs = rule.apply(l2, l1)
            if lhs != rhs:
                witness = f"({l1}, {l2}): {lhs.text()} != {rhs.text()}"
                return rule._store_report("commutative", weight_bound, PropertyReport(
                    "commutative", False, witness=witness))
    return rule._store_report("commutative", weight_bound, PropertyReport(
        "commutative", True, note=note))


def _output_tail(out: NCPoly) -> Word | None:
    """The common tail of all words of one diamond output, or None if the
    output does not factor as (combination of letters) * word."""
    tails = {rest_word(w) for w in out.words()}
    if len(tails) > 1:
        return None
    return tails.pop() if tails else out.alphabet.empty_word()


def check_decomposable(rule: DiamondRule,
                       weight_bound: int = DEFAULT_WEIGHT_BOUND) -> PropertyReport:
    """Collect the tails of all outputs of length >= 2; the rule is
    decomposable iff they all equal one common word (vacuously with tail 1).

    Index-shift rules are decided structurally: shifting the first index
    never touches the tail, so the answer is independent of the bound.
    """
    cached = rule.cached_report("decomposable", weight_bound)
    if cached is not None:
        return cached
    note = ""
    if isinstance(rule, IndexedDiamondRule):
        note = "index rule: tails are the fixed seed tails for every pair"
        tails = rule.seed_tail_indices
        if len(tails) > 1:
            witness = f"seed terms have distinct tails {sorted(tails)}"
            return rule._store_report("decomposable", weight_bound, PropertyReport(
                "decomposable", False, witness=witness))
        tail_indices = tails.pop() if tails else ()
        tail = (rule.alphabet.word(*tail_indices) if tail_indices
                else rule.alphabet.empty_word())
        return rule._store_report("decomposable", weight_bound, PropertyReport(
            "decomposable", True, common_tail=tail, note=note))
    letters = rule.letters_within(weight_bound)
    common: Word | None = None
    for l1 in letters:
        for l2 in letters:
            out = rule.apply(l1, l2)
            tail = _output_tail(out)
            if tail is None:
                witness = f"({l1}, {l2}): {out.text()} has no common tail"
                return rule._store_report("decomposable", weight_bound, PropertyReport(
                    "decomposable", False, witness=witness))
            if tail.is_empty:
                continue  # outputs of length <= 1 impose no constraint
            if common is None:
                common = tail
            elif common != tail:
                witness = (f"({l1}, {l2}): tail {tail.text()} differs from "
                           f"earlier tail {common.text()}")
                return rule._store_report("decomposable", weight_bound, PropertyReport(
                    "decomposable", False, witness=witness))
    if common is None:
        common = rule.alphabet.empty_word()
    return rule._store_report("decomposable", weight_bound, PropertyReport(
        "decomposable", True, common_tail=common, note=note))


def decompose(rule: DiamondRule, alpha, beta) -> tuple[NCPoly, Word]:
    """Split a diamond output as head * tail with head a combination of
    letters and tail the common rest word; (0, 1) for zero outputs."""
    report = check_decomposable(rule)
    if not report.holds:
        raise ValueError(f"rule {rule.name} is not decomposable: {report.witness}")
    out = diamond_apply(rule, alpha, beta)
    if out.is_zero:
        return out, rule.alphabet.empty_word()
    tail = _output_tail(out)
    head = NCPoly(rule.alphabet, ((w[:1], c) for w, c in out.terms.items()))
    return head, tail


def _diamond_on_head(rule: DiamondRule, head: NCPoly, gamma: Letter,
                     head_on_left: bool) -> NCPoly:
    """Bilinear extension of the diamond map over a combination of letters."""
    total = NCPoly.zero(rule.alphabet)
    for word, coeff in head.terms.items():
        if word.is_empty:
            raise ValueError("diamond map is undefined on the empty word")
        letter = word[0]
        out = rule.apply(letter, gamma) if head_on_left else rule.apply(gamma, letter)
        total = total + out * coeff
    return total


def check_associative(rule: DiamondRule,
                      weight_bound: int = DEFAULT_WEIGHT_BOUND) -> PropertyReport:
    """The two-condition criterion for associativity of the generalized
    quasi-shuffle product:

    1. (F(a<>b)<>c) R(a<>b) = (a<>F(b<>c)) R(b<>c) for all letter triples,
       extending the diamond map bilinearly over head combinations;
    2. c <> F(R(a<>b)) = -c F(R(a<>b)) whenever the output a<>b has length >= 2.

    Requires commutativity and decomposability first; failures are reported,
    not raised.
    """
    cached = rule.cached_report("associative", weight_bound)
    if cached is not None:
        return cached
    comm = check_commutative(rule, weight_bound)
    if not comm.holds:
        return rule._store_report("associative", weight_bound, PropertyReport(
            "associative", False, witness=f"not commutative: {comm.witness}"))
    dec = check_decomposable(rule, weight_bound)
    if not dec.holds:
        return rule._store_report("associative", weight_bound, PropertyReport(
            "associative", False, witness=f"not decomposable: {dec.witness}"))
    letters = rule.letters_within(weight_bound)
    note = ""
    if (isinstance(rule, IndexedDiamondRule)
            and all(len(idx) == 1 for _, idx in rule.seed_terms)):
        note = ("index rule with single-letter outputs: both sides shift by the "
                "total index sum, so the bounded check is also structural")

    # condition 2
    for l1 in letters:
        for l2 in letters:
            out = rule.apply(l1, l2)
            if out.is_zero or out.max_word_length() < 2:
                continue
            m = _output_tail(out)[0]  # first letter of the tail
            m_poly = NCPoly.from_letter(m)
            for gamma in letters:
                lhs = rule.apply(gamma, m)
                rhs = -nc_mul(NCPoly.from_letter(gamma), m_poly)
                if lhs != rhs:
                    witness = (f"condition 2 at ({l1}, {l2}), gamma={gamma}: "
                               f"{lhs.text()} != {rhs.text()}")
                    return rule._store_report("associative", weight_bound, PropertyReport(
                        "associative", False, witness=witness))

    # condition 1
    for l1 in letters:
        for l2 in letters:
            head12, tail12 = decompose(rule, l1, l2)
            tail12_poly = NCPoly.from_word(tail12)
            for l3 in letters:
                head23, tail23 = decompose(rule, l2, l3)
                lhs = nc_mul(_diamond_on_head(rule, head12, l3, head_on_left=True),
                             tail12_poly)
                rhs = nc_mul(_diamond_on_head(rule, head23, l1, head_on_left=False),
                             NCPoly.from_word(tail23))
                if lhs != rhs:
                    witness = (f"condition 1 at ({l1}, {l2}, {l3}): "
                               f"{lhs.text()} != {rhs.text()}")
                    return rule._store_report("associative", weight_bound, PropertyReport(
                        "associative", False, witness=witness))
    return rule._store_report("associative", weight_bound, PropertyReport(
        "associative", True, note=note))


# -- dual pairs ------------------------------------------------------------------


def build_dual_pair(seed: NCPoly) -> tuple[IndexedDiamondRule, TableDiamondRule]:
    """From a choice of the base product value (the seed, a fixed-length
    combination of e-words), build the index-shift rule on E that raises the
    first index by the index sum, and its partner table rule on AB whose
    (a, a) entry is h^2 times the dual of the seed.
    """
    from .involutions import decode, sigma  # local import to avoid a cycle

    if seed.alphabet == E:
        e_terms = [(c, tuple(l.index for l in w)) for w, c in seed.terms.items()]
        from .involutions import encode_poly
        seed_ab = encode_poly(seed)
    elif seed.alphabet == AB:
        e_terms = [(c, decode(w).indices) for w, c in seed.terms.items()]
        seed_ab = seed
    else:
        raise ValueError("seed must be a polynomial over AB or E")
    lengths = {len(idx) for _, idx in e_terms}
    if len(lengths) > 1:
        raise ValueError(f"seed terms must all have the same length, got lengths {sorted(lengths)}")
    if lengths == {0}:
        raise ValueError("seed terms must be nonempty words")
    rule_e = IndexedDiamondRule(E, e_terms, name="dual-E")
    a = AB.letter("a")
    b = AB.letter("b")
    aa_value = sigma(seed_ab) * (HBAR * HBAR)
    table = {
        (a, a): aa_value,
        (a, b): -_w(AB, "ab"),
        (b, a): -_w(AB, "ab"),
        (b, b): -_w(AB, "bb"),
    }
    rule_l = TableDiamondRule(AB, table, name="dual-L")
    return rule_e, rule_l


# -- user-defined rules ------------------------------------------------------------


def load_rule(text: str, name: str = "user") -> TableDiamondRule:
    """Parse a declarative rule description::

        alphabet: AB            # or: alphabet: p q r  (custom symbols)
        a a -> h a
        a b -> -1 a b
        ...

    Every letter pair of the alphabet must get a line; right-hand sides use
    the shared expression grammar ("0" for the zero output).
    """
    from .exprparse import poly_from_text
    from .words import BUILTIN_ALPHABETS

    alphabet = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            spec = line[len("alphabet:"):].split()
            if len(spec) == 1 and spec[0] in BUILTIN_ALPHABETS:
                alphabet = BUILTIN_ALPHABETS[spec[0]]
                if alphabet.is_indexed:
                    raise ValueError(f"line {lineno}: table rules need a finite alphabet")
            else:
                alphabet = Alphabet(f"{name}-alphabet", symbols=spec)
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected 'alpha beta -> expression'")
        if alphabet is None:
            raise ValueError("rule file must declare 'alphabet:' before any entries")
        lhs, rhs = line.split("->", 1)
        pair = lhs.split()
        if len(pair) != 2:
            raise ValueError(f"line {lineno}: left side must be two letters")
        value = poly_from_text(rhs.strip(), alphabet=alphabet)
        entries.append(((pair[0], pair[1]), value))
    if alphabet is None:
        raise ValueError("rule file must declare an alphabet")
    return TableDiamondRule(alphabet, dict(entries), name=name)
