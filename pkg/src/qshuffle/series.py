"""Exact truncated power series in q and (q, z), and the evaluation maps.

QSeries truncates at a fixed q-order N (terms of degree <= N are kept and
exact); QZSeries adds a z-order M.  The nested-sum evaluators enumerate the
outer summation index m_1 up to the relevant order, which is exact: each
summand of the q-zeta map has q-order >= k_1 m_1 >= m_1, and the two-variable
polylogarithm carries z^(m_1).

Numeric (floating point) evaluation appears only in mzv_partial, the partial
sum of a classical multiple zeta value.
"""

from __future__ import annotations

import math

import numpy as np

from .involutions import IndexWord, decode, decode_poly, encode, encode_poly, membership
from .laurent import LaurentCoeff, Q_ONE, as_rational, rational, rational_str
from .poly import NCPoly
from .words import AB, E, XY, Z, Word

DEFAULT_ORDER = 30
DEFAULT_CUTOFF = 10 ** 5


def _trim(coeffs: dict, order: int) -> dict:
    return {d: c for d, c in coeffs.items() if c and d <= order}


class QSeries:
    """A truncated power series in q with exact rational coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        self.order = int(order)
        data = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for deg, value in items:
            value = as_rational(value)
            if value and deg <= self.order:
                data[int(deg)] = data.get(int(deg), 0) + value
        self.coeffs = {d: c for d, c in data.items() if c}

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls(order, {0: 1})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, degree: int):
        return self.coeffs.get(degree, rational(0))

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend truncation order {self.order} to {order}")
        return QSeries(order, self.coeffs)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        data = dict(_trim(self.coeffs, order))
        for d, c in other.coeffs.items():
            if d <= order:
                data[d] = data.get(d, 0) + c
        return QSeries(order, data)

    def __neg__(self):
        return QSeries(self.order, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            order = min(self.order, other.order)
            data: dict = {}
            for d1, c1 in self.coeffs.items():
                if d1 > order:
                    continue
                for d2, c2 in other.coeffs.items():
                    d = d1 + d2
                    if d > order:
                        continue
                    data[d] = data.get(d, 0) + c1 * c2
            return QSeries(order, data)
        scalar = as_rational(other)
        return QSeries(self.order, {d: c * scalar for d, c in self.coeffs.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def text(self) -> str:
        pieces = []
        for deg in sorted(self.coeffs):
            value = self.coeffs[deg]
            negative = value < 0
            mag = -value if negative else value
            if deg == 0:
                body = str(mag)
            else:
                qpart = "q" if deg == 1 else f"q^{deg}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        if not pieces:
            pieces.append("0")
        pieces.append(f"+ O(q^{self.order + 1})")
        return " ".join(pieces)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"QSeries({self.text()})"

    def to_json_dict(self) -> dict:
        dense = [rational_str(self.coefficient(d)) for d in range(self.order + 1)]
        return {"order": self.order, "coeffs": dense}

    @classmethod
    def from_json_dict(cls, data: dict) -> "QSeries":
        return cls(data["order"], enumerate(data["coeffs"]))


class QZSeries:
    """A truncated power series in q and z with exact rational coefficients."""

    __slots__ = ("order_q", "order_z", "coeffs")

    def __init__(self, order_q: int, order_z: int, coeffs=()):
        self.order_q = int(order_q)
        self.order_z = int(order_z)
        data = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for (dq, dz), value in items:
            value = as_rational(value)
            if value and dq <= self.order_q and dz <= self.order_z:
                key = (int(dq), int(dz))
                data[key] = data.get(key, 0) + value
        self.coeffs = {k: c for k, c in data.items() if c}

    @classmethod
    def zero(cls, order_q: int, order_z: int) -> "QZSeries":
        return cls(order_q, order_z)

    @classmethod
    def one(cls, order_q: int, order_z: int) -> "QZSeries":
        return cls(order_q, order_z, {(0, 0): 1})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, dq: int, dz: int):
        return self.coeffs.get((dq, dz), rational(0))

    def z_row(self, dz: int) -> QSeries:
        """The coefficient of z^dz as a series in q."""
        return QSeries(self.order_q,
                       {dq: c for (dq, z), c in self.coeffs.items() if z == dz})

    def has_constant_z_row(self) -> bool:
        return any(dz == 0 for (_, dz) in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        oq = min(self.order_q, other.order_q)
        oz = min(self.order_z, other.order_z)
        data = {k: c for k, c in self.coeffs.items() if k[0] <= oq and k[1] <= oz}
        for k, c in other.coeffs.items():
            if k[0] <= oq and k[1] <= oz:
                data[k] = data.get(k, 0) + c
        return QZSeries(oq, oz, data)

    def __neg__(self):
        return QZSeries(self.order_q, self.order_z,
                        {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QZSeries):
            oq = min(self.order_q, other.order_q)
            oz = min(self.order_z, other.order_z)
            data: dict = {}
            for (q1, z1), c1 in self.coeffs.items():
                if q1 > oq or z1 > oz:
                    continue
                for (q2, z2), c2 in other.coeffs.items():
                    q = q1 + q2
                    z = z1 + z2
                    if q > oq or z > oz:
                        continue
                    key = (q, z)
                    data[key] = data.get(key, 0) + c1 * c2
            return QZSeries(oq, oz, data)
        scalar = as_rational(other)
        return QZSeries(self.order_q, self.order_z,
                        {k: c * scalar for k, c in self.coeffs.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def mul_q_series(self, series: QSeries) -> "QZSeries":
        """Multiply by a series in q alone (z-degrees untouched)."""
        oq = min(self.order_q, series.order)
        data: dict = {}
        for (q1, z1), c1 in self.coeffs.items():
            for d, c2 in series.coeffs.items():
                q = q1 + d
                if q > oq:
                    continue
                key = (q, z1)
                data[key] = data.get(key, 0) + c1 * c2
        return QZSeries(oq, self.order_z, data)

    def __eq__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        return (self.order_q == other.order_q and self.order_z == other.order_z
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.order_q, self.order_z, frozenset(self.coeffs.items())))

    def text(self) -> str:
        rows = sorted({dz for (_, dz) in self.coeffs})
        lines = []
        for dz in rows:
            zpart = "1" if dz == 0 else ("z" if dz == 1 else f"z^{dz}")
            lines.append(f"{zpart}: {self.z_row(dz).text()}")
        if not lines:
            lines.append(f"0 + O(q^{self.order_q + 1})")
        lines.append(f"+ O(z^{self.order_z + 1})")
        return "\n".join(lines)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"QZSeries(order_q={self.order_q}, order_z={self.order_z})"

    def to_json_dict(self) -> dict:
        rows = []
        for dz in sorted({dz for (_, dz) in self.coeffs}):
            row = self.z_row(dz)
            rows.append({"z": dz,
                         "coeffs": [rational_str(row.coefficient(d))
                                    for d in range(self.order_q + 1)]})
        return {"order_q": self.order_q, "order_z": self.order_z, "rows": rows}

    @classmethod
    def from_json_dict(cls, data: dict) -> "QZSeries":
        coeffs = {}
        for row in data["rows"]:
            for dq, value in enumerate(row["coeffs"]):
                coeffs[(dq, row["z"])] = value
        return cls(data["order_q"], data["order_z"], coeffs)


# -- h evaluation -------------------------------------------------------------


def hbar_eval(coeff: LaurentCoeff, order: int) -> QSeries:
    """Substitute h -> 1 - q; negative powers expand as geometric series."""
    total = QSeries.zero(order)
    for exp, value in coeff.items():
        total = total + _hbar_power_series(exp, order) * value
    return total


def _hbar_power_series(exp: int, order: int) -> QSeries:
    if exp >= 0:
        data = {k: (-1) ** k * math.comb(exp, k) for k in range(min(exp, order) + 1)}
    else:
        e = -exp
        data = {k: math.comb(k + e - 1, e - 1) for k in range(order + 1)}
    return QSeries(order, data)


# -- the q-zeta map ---------------------------------------------------------------


def _zeta_factor(k: int, m: int, order: int) -> dict:
    """q^(k m) (1-q)^k / (1-q^m)^k as {degree: rational}, truncated."""
    if k == 0:
        return {0: Q_ONE}
    base = k * m
    if base > order:
        return {}
    # 1/(1-q^m)^k = sum_j C(j+k-1, k-1) q^(m j)
    inv = {}
    j = 0
    while base + m * j <= order:
        inv[base + m * j] = rational(math.comb(j + k - 1, k - 1))
        j += 1
    out: dict = {}
    for i in range(0, k + 1):  # (1-q)^k
        if i > order:
            break
        sign = rational((-1) ** i * math.comb(k, i))
        for d, c in inv.items():
            deg = d + i
            if deg <= order:
                out[deg] = out.get(deg, 0) + sign * c
    return {d: c for d, c in out.items() if c}


def _mul_trunc(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            d = d1 + d2
            if d <= order:
                out[d] = out.get(d, 0) + c1 * c2
    return {d: c for d, c in out.items() if c}


def _index_tuple(arg) -> tuple[int, ...]:
    if isinstance(arg, IndexWord):
        return arg.indices
    if isinstance(arg, Word):
        return decode(arg).indices
    return tuple(int(k) for k in arg)


_ZETA_CACHE: dict = {}


def zeta_q(arg, order: int = DEFAULT_ORDER) -> QSeries:
    """The q-analogue evaluation map: an index tuple, an e-word, or a whole
    polynomial over E/AB (extended linearly, h acting as 1 - q) to a series.

    Truncation is exact: every summand with outer index m has q-order
    >= k_1 m >= m, so only m <= order contributes.
    """
    if isinstance(arg, NCPoly):
        poly = decode_poly(arg) if arg.alphabet == AB else arg
        if poly.alphabet != E:
            raise ValueError("zeta_q takes polynomials over E or AB")
        if not membership(poly, "Hhat0"):
            raise ValueError("zeta_q requires admissible words (first index >= 1)")
        total = QSeries.zero(order)
        for word, coeff in poly.terms.items():
            total = total + hbar_eval(coeff, order) * zeta_q(word, order)
        return total
    ks = _index_tuple(arg)
    if not ks:
        return QSeries.one(order)
    if ks[0] < 1 or any(k < 0 for k in ks):
        raise ValueError(f"non-admissible index {ks}: need k_1 >= 1, k_i >= 0")
    key = (ks, order)
    hit = _ZETA_CACHE.get(key)
    if hit is None:
        hit = QSeries(order, _nested_q_sum(ks, order))
        _ZETA_CACHE[key] = hit
    return hit


def _nested_q_sum(ks: tuple[int, ...], order: int) -> dict:
    """Iterated sum over m_1 > ... > m_r >= 1 of the per-index factors,
    computed depth by depth with running prefix sums."""
    r = len(ks)
    # cum[m] = sum over chains below with largest index < m; level r+1 is empty product
    cum = [None] * (order + 2)
    one = {0: Q_ONE}
    for m in range(order + 2):
        cum[m] = one
    for level in range(r, 0, -1):
        k = ks[level - 1]
        new_cum = [dict() for _ in range(order + 2)]
        running: dict = {}
        for m in range(1, order + 1):
            factor = _zeta_factor(k, m, order)
            if factor:
                below = cum[m - 1] if level < r else one
                if below:
                    term = _mul_trunc(factor, below, order)
                    for d, c in term.items():
                        running[d] = running.get(d, 0) + c
            new_cum[m] = dict(running)
        new_cum[order + 1] = dict(running)
        cum = new_cum
    return cum[order + 1]


# -- the two-variable polylogarithm ---------------------------------------------------


def li_q(arg, order_q: int = DEFAULT_ORDER, order_z: int = DEFAULT_ORDER) -> QZSeries:
    """The extended two-variable polylogarithm: sum over m_1 > ... > m_r >= 1
    of z^(m_1) times the per-index factors, truncated in q and z.  Index
    entries may be 0; the empty index gives the constant series 1."""
    ks = _index_tuple(arg)
    if not ks:
        return QZSeries.one(order_q, order_z)
    if any(k < 0 for k in ks):
        raise ValueError(f"negative index in {ks}")
    r = len(ks)
    one = {0: Q_ONE}
    cum = [one] * (order_z + 1)
    for level in range(r, 1, -1):
        k = ks[level - 1]
        new_cum = [dict() for _ in range(order_z + 1)]
        running: dict = {}
        for m in range(1, order_z + 1):
            factor = _zeta_factor(k, m, order_q)
            if factor:
                below = cum[m - 1] if level < r else one
                if below:
                    term = _mul_trunc(factor, below, order_q)
                    for d, c in term.items():
                        running[d] = running.get(d, 0) + c
            new_cum[m] = dict(running)
        cum = new_cum
    coeffs: dict = {}
    for m in range(1, order_z + 1):
        factor = _zeta_factor(ks[0], m, order_q)
        if not factor:
            continue
        below = cum[m - 1] if r > 1 else one
        if not below:
            continue
        row = _mul_trunc(factor, below, order_q)
        for d, c in row.items():
            coeffs[(d, m)] = c
    return QZSeries(order_q, order_z, coeffs)


# -- the letter action ------------------------------------------------------------------


def _act_a(g: QZSeries) -> QZSeries:
    """(1-q) sum_{j>=1} g|_{z -> q^j z}: the monomial q^u z^m picks up
    q^(u+jm) for every j >= 1 (finite at fixed q-order since m >= 1)."""
    if g.has_constant_z_row():
        raise ValueError("the a-action needs a series with zero constant-z row")
    order_q, order_z = g.order_q, g.order_z
    shifted: dict = {}
    for (u, m), c in g.coeffs.items():
        j = 1
        while u + j * m <= order_q:
            key = (u + j * m, m)
            shifted[key] = shifted.get(key, 0) + c
            j += 1
    total = QZSeries(order_q, order_z, shifted)
    return total.mul_q_series(QSeries(order_q, {0: 1, 1: -1}))


def _act_b(g: QZSeries) -> QZSeries:
    """Multiply by z/(1-z) = sum_{j>=1} z^j, truncated."""
    data: dict = {}
    for (u, m), c in g.coeffs.items():
        for j in range(1, g.order_z - m + 1):
            key = (u, m + j)
            data[key] = data.get(key, 0) + c
    return QZSeries(g.order_q, g.order_z, data)


def act(arg, g: QZSeries) -> QZSeries:
    """Apply a letter, word, or polynomial over AB (or E, via its a/b
    expansion) to a two-variable series; words act letter by letter from the
    rightmost letter inward."""
    if isinstance(arg, NCPoly):
        if arg.alphabet == E:
            arg = encode_poly(arg)
        if arg.alphabet != AB:
            raise ValueError("act takes polynomials over AB or E")
        total = QZSeries.zero(g.order_q, g.order_z)
        for word, coeff in arg.terms.items():
            part = act(word, g)
            total = total + part.mul_q_series(hbar_eval(coeff, g.order_q))
        return total
    if isinstance(arg, Word):
        if arg.alphabet == E:
            arg = encode(decode(arg))
        letters = arg.letters
    else:
        letters = (arg,)
    result = g
    for letter in reversed(letters):
        if letter.symbol == "a":
            result = _act_a(result)
        elif letter.symbol == "b":
            result = _act_b(result)
        else:
            raise ValueError(f"action undefined for letter {letter}")
    return result


# -- classical numeric partial sums -----------------------------------------------------


_MZV_CACHE: dict = {}


def mzv_partial(arg, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Double-precision partial sum of a multiple zeta value with outer index
    m_1 <= cutoff, computed depth by depth in O(cutoff * depth); the final
    aggregation is compensated (math.fsum).  Extends linearly over
    polynomials (z- or XY-words) with rational coefficients."""
    if isinstance(arg, NCPoly):
        poly = decode_poly(arg) if arg.alphabet == XY else arg
        if poly.alphabet != Z:
            raise ValueError("mzv_partial takes polynomials over Z or XY")
        parts = []
        for word, coeff in poly.terms.items():
            value = coeff.rational_value()  # raises for h-dependent coefficients
            parts.append(float(value) * mzv_partial(word, cutoff))
        return math.fsum(parts)
    ks = _index_tuple(arg)
    if not ks:
        return 1.0
    if ks[0] < 2 or any(k < 1 for k in ks):
        raise ValueError(f"non-admissible index {ks}: need k_1 >= 2, k_i >= 1")
    key = (ks, cutoff)
    hit = _MZV_CACHE.get(key)
    if hit is None:
        hit = _mzv_sum(ks, cutoff)
        _MZV_CACHE[key] = hit
    return hit


def _mzv_sum(ks: tuple[int, ...], cutoff: int) -> float:
    m = np.arange(1, cutoff + 1, dtype=np.float64)
    inner = np.ones(cutoff, dtype=np.float64)
    for k in reversed(ks[1:]):
        level = m ** float(-k) * inner
        cumulative = np.cumsum(level)
        inner = np.empty(cutoff, dtype=np.float64)
        inner[0] = 0.0
        inner[1:] = cumulative[:-1]  # strict inequality m_j > m_{j+1}
    top = m ** float(-ks[0]) * inner
    return math.fsum(top.tolist())
