"""The recursive product engines.

The generalized quasi-shuffle of two words recurses on first letters:

    x # y = F(x)(R(x) # y) + F(y)(x # R(y)) + (F(x) <> F(y))(R(x) # R(y))

with the empty word as unit; the dual engine runs the mirror recursion on
last letters.  Both extend bilinearly to polynomials.  The diamond term
left-multiplies (right-multiplies, for the dual) the recursive product by the
full diamond output, which may be a multi-term polynomial.

The hot path works on flattened dictionaries keyed by (letter tuple,
h-exponent) with plain rational values, and wraps results into NCPoly only at
the API boundary.  Word-pair results are memoized per handle; for rules known
to be commutative the memo key is order-normalized, which halves the cache
(and is only valid because the product is then commutative).
"""

from __future__ import annotations

from .diamond import DiamondRule, builtin_rule, check_commutative
from .involutions import decode_poly, encode_poly, membership
from .laurent import LaurentCoeff, Q_ONE
from .poly import NCPoly
from .words import AB, E, XY, Z, Word


def _word_key(letters: tuple) -> tuple:
    return (len(letters), tuple(l.sort_key for l in letters))


def _poly_to_flat(p: NCPoly) -> dict:
    flat = {}
    for word, coeff in p.terms.items():
        for exp, value in coeff.raw.items():
            flat[(word.letters, exp)] = value
    return flat


def _flat_to_poly(alphabet, flat: dict) -> NCPoly:
    grouped: dict = {}
    for (letters, exp), value in flat.items():
        grouped.setdefault(letters, []).append((exp, value))
    return NCPoly(alphabet, ((Word(alphabet, letters), LaurentCoeff(items))
                             for letters, items in grouped.items()))


class ProductHandle:
    """A quasi-shuffle engine bound to one diamond rule.

    Memo writes are idempotent (a key always receives the same value), so a
    handle may be shared between threads; results are deterministic either
    way.  Memoized and unmemoized evaluation agree exactly.
    """

    def __init__(self, rule: DiamondRule, memoize: bool = True,
                 symmetric_memo: bool | None = None):
        self.rule = rule
        self.memoize = memoize
        if symmetric_memo is None:
            symmetric_memo = check_commutative(rule).holds
        self.symmetric_memo = symmetric_memo
        self._memo: dict = {}
        self._dual_memo: dict = {}
        self._diamond_cache: dict = {}

    def _diamond_flat(self, l1, l2) -> dict:
        key = (l1, l2)
        hit = self._diamond_cache.get(key)
        if hit is None:
            hit = _poly_to_flat(self.rule.apply(l1, l2))
            self._diamond_cache[key] = hit
        return hit

    # -- first-letter recursion ------------------------------------------------

    def _pair(self, u: tuple, v: tuple) -> dict:
        if not u:
            return {(v, 0): Q_ONE}
        if not v:
            return {(u, 0): Q_ONE}
        if self.symmetric_memo and _word_key(u) > _word_key(v):
            u, v = v, u
        key = (u, v)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        fu, ru = u[0], u[1:]
        fv, rv = v[0], v[1:]
        acc: dict = {}
        for (w, e), c in self._pair(ru, v).items():
            k = ((fu,) + w, e)
            prev = acc.get(k)
            acc[k] = c if prev is None else prev + c
        for (w, e), c in self._pair(u, rv).items():
            k = ((fv,) + w, e)
            prev = acc.get(k)
            acc[k] = c if prev is None else prev + c
        dia = self._diamond_flat(fu, fv)
        if dia:
            sub = self._pair(ru, rv)
            for (dw, de), dc in dia.items():
                for (w, e), c in sub.items():
                    k = (dw + w, de + e)
                    term = dc * c
                    prev = acc.get(k)
                    acc[k] = term if prev is None else prev + term
        acc = {k: c for k, c in acc.items() if c}
        if self.memoize:
            self._memo[key] = acc
        return acc

    # -- last-letter recursion ---------------------------------------------------

    def _pair_dual(self, u: tuple, v: tuple) -> dict:
        if not u:
            return {(v, 0): Q_ONE}
        if not v:
            return {(u, 0): Q_ONE}
        if self.symmetric_memo and _word_key(u) > _word_key(v):
            u, v = v, u
        key = (u, v)
        hit = self._dual_memo.get(key)
        if hit is not None:
            return hit
        lu, iu = u[-1], u[:-1]
        lv, iv = v[-1], v[:-1]
        acc: dict = {}
        for (w, e), c in self._pair_dual(iu, v).items():
            k = (w + (lu,), e)
            prev = acc.get(k)
            acc[k] = c if prev is None else prev + c
        for (w, e), c in self._pair_dual(u, iv).items():
            k = (w + (lv,), e)
            prev = acc.get(k)
            acc[k] = c if prev is None else prev + c
        dia = self._diamond_flat(lu, lv)
        if dia:
            sub = self._pair_dual(iu, iv)
            for (dw, de), dc in dia.items():
                for (w, e), c in sub.items():
                    k = (w + dw, e + de)
                    term = dc * c
                    prev = acc.get(k)
                    acc[k] = term if prev is None else prev + term
        acc = {k: c for k, c in acc.items() if c}
        if self.memoize:
            self._dual_memo[key] = acc
        return acc

    # -- bilinear extension ---------------------------------------------------------

    def _extend(self, u: NCPoly, v: NCPoly, pair_fn) -> NCPoly:
        alphabet = self.rule.alphabet
        if u.alphabet != alphabet or v.alphabet != alphabet:
            raise ValueError(
                f"operands over {u.alphabet.name}/{v.alphabet.name} do not match "
                f"rule alphabet {alphabet.name}")
        acc: dict = {}
        for w1, c1 in u.terms.items():
            for w2, c2 in v.terms.items():
                flat = pair_fn(w1.letters, w2.letters)
                for e1, q1 in c1.raw.items():
                    for e2, q2 in c2.raw.items():
                        scale = q1 * q2
                        shift = e1 + e2
                        for (w, e), c in flat.items():
                            k = (w, e + shift)
                            term = c * scale
                            prev = acc.get(k)
                            acc[k] = term if prev is None else prev + term
        return _flat_to_poly(alphabet, {k: c for k, c in acc.items() if c})

    def product(self, u: NCPoly, v: NCPoly) -> NCPoly:
        """Generalized quasi-shuffle (first-letter recursion)."""
        return self._extend(u, v, self._pair)

    def product_dual(self, u: NCPoly, v: NCPoly) -> NCPoly:
        """Generalized dual product (last-letter recursion); equals product()."""
        return self._extend(u, v, self._pair_dual)


def gqsh(handle: ProductHandle | DiamondRule, u: NCPoly, v: NCPoly) -> NCPoly:
    if isinstance(handle, DiamondRule):
        handle = ProductHandle(handle)
    return handle.product(u, v)


def gqsh_dual(handle: ProductHandle | DiamondRule, u: NCPoly, v: NCPoly) -> NCPoly:
    if isinstance(handle, DiamondRule):
        handle = ProductHandle(handle)
    return handle.product_dual(u, v)


_NAMED_HANDLES: dict = {}

#: product name -> (engine alphabet, partner alphabet reachable by encoding)
_NAMED_ALPHABETS = {
    "stuffle": (Z, XY),
    "shuffle": (XY, Z),
    "qstuffle": (E, AB),
    "qshuffle": (AB, E),
    "shsh": (XY, Z),
}


def named_handle(name: str) -> ProductHandle:
    """The shared memoized engine for a named product."""
    handle = _NAMED_HANDLES.get(name)
    if handle is None:
        if name not in _NAMED_ALPHABETS:
            raise ValueError(f"unknown product {name!r}; expected one of "
                             f"{tuple(_NAMED_ALPHABETS)}")
        handle = ProductHandle(builtin_rule(name))
        _NAMED_HANDLES[name] = handle
    return handle


def named_product(name: str, u: NCPoly, v: NCPoly) -> NCPoly:
    """Apply a named product, converting operands between an indexed family
    and its two-letter encoding when needed (z-words shuffle through their
    x/y expansion, e-words q-shuffle through their a/b expansion, and back).
    """
    handle = named_handle(name)
    home, partner = _NAMED_ALPHABETS[name]
    if u.alphabet != v.alphabet:
        raise ValueError("operands must share an alphabet")
    if u.alphabet == home:
        return handle.product(u, v)
    if u.alphabet != partner:
        raise ValueError(f"product {name} expects operands over "
                         f"{home.name} or {partner.name}, got {u.alphabet.name}")
    if home.is_indexed:
        result = handle.product(decode_poly(u), decode_poly(v))
        return encode_poly(result)
    result = handle.product(encode_poly(u), encode_poly(v))
    return decode_poly(result)


def dpart(u: NCPoly, v: NCPoly) -> NCPoly:
    """The diamond-generated part of the dual-stuffle product over XY:
    D(u, v) = (u #_Sh v) - (u # v)."""
    if u.alphabet != XY or v.alphabet != XY:
        raise ValueError("dpart expects polynomials over XY")
    return named_product("shsh", u, v) - named_product("shuffle", u, v)


def ds(u: NCPoly, v: NCPoly) -> NCPoly:
    """The double-shuffle element shuffle(u, v) - stuffle(u, v) for admissible
    operands (z-polynomials or XY-polynomials, both over the same alphabet)."""
    if u.alphabet != v.alphabet:
        raise ValueError("operands must share an alphabet")
    space = "H0"
    if not (membership(u, space) and membership(v, space)):
        raise ValueError("ds requires admissible operands (H0)")
    return named_product("shuffle", u, v) - named_product("stuffle", u, v)
