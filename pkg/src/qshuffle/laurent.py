"""Exact coefficient arithmetic: rationals and Laurent polynomials in h.

Every coefficient in this package lives in Q[h, h^-1] for a formal variable
h; the q-series evaluator substitutes h -> 1 - q.  Coefficients supported on
exponent 0 only model plain rationals.  No floating point appears here.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as rational
except ImportError:  # pragma: no cover - gmpy2 is a speedup, not a requirement
    rational = Fraction

#: The additive and multiplicative units of the working rational type.
Q_ZERO = rational(0)
Q_ONE = rational(1)


def as_rational(value):
    """Coerce ints, Fractions, mpq and ``"num/den"`` strings to a rational."""
    if isinstance(value, str):
        num, slash, den = value.partition("/")
        return rational(int(num), int(den)) if slash else rational(int(num))
    return rational(value)


def rational_str(value) -> str:
    """Serialize a rational as ``"num/den"`` (denominator always explicit)."""
    return f"{value.numerator}/{value.denominator}"


class LaurentCoeff:
    """An element of Q[h, h^-1], stored as {exponent: nonzero rational}.

    Instances are immutable; all arithmetic returns new objects.  Zero
    rationals are never stored, so equality is equality of term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=()):
        data: dict[int, object] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exp, value in items:
            value = as_rational(value)
            if not value:
                continue
            exp = int(exp)
            acc = data.get(exp)
            total = value if acc is None else acc + value
            if total:
                data[exp] = total
            elif exp in data:
                del data[exp]
        self._terms = data
        self._hash = None

    @classmethod
    def from_rational(cls, value) -> "LaurentCoeff":
        return cls(((0, value),))

    @classmethod
    def hbar_power(cls, exponent: int, value=1) -> "LaurentCoeff":
        """The monomial value * h**exponent."""
        return cls(((exponent, value),))

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_rational(self) -> bool:
        """True iff no h appears (support contained in exponent 0)."""
        return all(e == 0 for e in self._terms)

    def rational_value(self):
        """The underlying rational; raises if the coefficient involves h."""
        if not self._terms:
            return Q_ZERO
        if not self.is_rational:
            raise ValueError(f"coefficient {self} depends on h")
        return self._terms[0]

    def items(self):
        """Term pairs (exponent, rational) in ascending exponent order."""
        return sorted(self._terms.items())

    @property
    def raw(self) -> dict:
        """The underlying {exponent: rational} map (treat as read-only)."""
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentCoeff):
            return NotImplemented
        data = dict(self._terms)
        for exp, value in other._terms.items():
            acc = data.get(exp)
            total = value if acc is None else acc + value
            if total:
                data[exp] = total
            elif exp in data:
                del data[exp]
        result = LaurentCoeff.__new__(LaurentCoeff)
        result._terms = data
        result._hash = None
        return result

    def __neg__(self):
        result = LaurentCoeff.__new__(LaurentCoeff)
        result._terms = {e: -v for e, v in self._terms.items()}
        result._hash = None
        return result

    def __sub__(self, other):
        if not isinstance(other, LaurentCoeff):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentCoeff):
            data: dict[int, object] = {}
            for e1, v1 in self._terms.items():
                for e2, v2 in other._terms.items():
                    exp = e1 + e2
                    prod = v1 * v2
                    acc = data.get(exp)
                    total = prod if acc is None else acc + prod
                    if total:
                        data[exp] = total
                    elif exp in data:
                        del data[exp]
            result = LaurentCoeff.__new__(LaurentCoeff)
            result._terms = data
            result._hash = None
            return result
        scalar = as_rational(other)
        if not scalar:
            return ZERO
        result = LaurentCoeff.__new__(LaurentCoeff)
        result._terms = {e: v * scalar for e, v in self._terms.items()}
        result._hash = None
        return result

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, LaurentCoeff):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exp, value in self.items():
            if exp == 0:
                pieces.append(str(value))
            else:
                hpart = "h" if exp == 1 else f"h^{exp}"
                pieces.append(hpart if value == 1 else f"{value} {hpart}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"LaurentCoeff({self._terms!r})"


ZERO = LaurentCoeff()
ONE = LaurentCoeff.from_rational(1)
HBAR = LaurentCoeff.hbar_power(1)
