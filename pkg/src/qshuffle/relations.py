"""Executable verification of the product identities, dualities, and
double-shuffle relations, plus systematic relation enumeration.

Exact checks compare polynomials or truncated series coefficientwise and
never carry a residual; numeric checks (classical zeta values only) report
the floating-point residual of a partial sum against a tolerance.  Every
check is deterministic: rerunning yields an identical result.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diamond import DiamondRule, builtin_rule, check_associative
from .involutions import decode_poly, encode_poly, membership, sigma, tau
from .poly import NCPoly
from .products import ProductHandle, dpart, ds, named_product
from .series import DEFAULT_CUTOFF, DEFAULT_ORDER, mzv_partial, zeta_q
from .words import AB, E, Z, Alphabet, Word

DEFAULT_TOL = 1e-3


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    inputs: str
    status: str  # "exact-pass" | "numeric-pass" | "fail"
    residual: float | None = None
    witness: str | None = None

    def __post_init__(self):
        if self.status == "exact-pass" and self.residual is not None:
            raise ValueError("exact checks never report residuals")
        if self.status == "fail" and self.witness is None:
            raise ValueError("failing checks must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def text(self) -> str:
        if self.status == "numeric-pass":
            return f"{self.check_id}: numeric-pass(residual={self.residual:.3e})"
        if self.status == "fail":
            return f"{self.check_id}: fail({self.witness})"
        return f"{self.check_id}: exact-pass"

    def to_json_dict(self) -> dict:
        return {"check_id": self.check_id, "inputs": self.inputs,
                "status": self.status, "residual": self.residual,
                "witness": self.witness}


def _exact(check_id: str, inputs: str, lhs: NCPoly, rhs: NCPoly) -> CheckResult:
    if lhs == rhs:
        return CheckResult(check_id, inputs, "exact-pass")
    diff = lhs - rhs
    return CheckResult(check_id, inputs, "fail",
                       witness=f"difference {diff.text()}")


def _numeric(check_id: str, inputs: str, residual: float, tol: float) -> CheckResult:
    residual = abs(residual)
    if residual <= tol:
        return CheckResult(check_id, inputs, "numeric-pass", residual=residual)
    return CheckResult(check_id, inputs, "fail", residual=residual,
                       witness=f"residual {residual:.3e} exceeds tol {tol:.1e}")


# -- word enumeration helpers -------------------------------------------------------


def compositions(total: int, min_part: int = 1):
    """All tuples of integers >= min_part summing to total."""
    if total == 0:
        yield ()
        return
    for head in range(min_part, total + 1):
        for rest in compositions(total - head, min_part):
            yield (head,) + rest


def admissible_z_indices(weight: int):
    """Index tuples (k_1,...,k_r) with k_1 >= 2, k_i >= 1, sum = weight."""
    for head in range(2, weight + 1):
        for rest in compositions(weight - head, 1):
            yield (head,) + rest


def admissible_z_words(max_weight: int) -> list[Word]:
    """Admissible z-words of weight 2..max_weight in (weight, lex) order."""
    out = []
    for weight in range(2, max_weight + 1):
        batch = [Z.word(*ks) for ks in admissible_z_indices(weight)]
        batch.sort(key=lambda w: w.sort_key)
        out.extend(batch)
    return out


def admissible_ab_words(max_weight: int) -> list[Word]:
    """Words over AB starting with a and ending with b, of length <= max_weight."""
    a = AB.letter("a")
    b = AB.letter("b")
    out = []
    for length in range(2, max_weight + 1):
        for middle in itertools.product((a, b), repeat=length - 2):
            out.append(Word(AB, (a,) + middle + (b,)))
    out.sort(key=lambda w: w.sort_key)
    return out


def finite_words(alphabet: Alphabet, max_length: int, min_length: int = 0) -> list[Word]:
    """All words over a finite alphabet with min_length <= length <= max_length."""
    letters = alphabet.letters()
    out = []
    for length in range(min_length, max_length + 1):
        for combo in itertools.product(letters, repeat=length):
            out.append(Word(alphabet, combo))
    return out


def indexed_words_by_weight(alphabet: Alphabet, max_weight: int,
                            include_empty: bool = True) -> list[Word]:
    """Words over an indexed family with weight <= max_weight (weight being
    the length of the two-letter encoding)."""
    shift = 1 - alphabet.min_index
    out = [alphabet.empty_word()] if include_empty else []
    floor = alphabet.min_index
    for weight in range(1, max_weight + 1):
        for ks in compositions(weight, floor + shift):
            indices = tuple(k - shift for k in ks)
            out.append(alphabet.word(*indices))
    out.sort(key=lambda w: w.sort_key)
    return out


def e_index_tuples(max_depth: int, max_weight: int):
    """e-index tuples with 1 <= depth <= max_depth and weight (sum k_i + depth)
    <= max_weight, in (depth, lex) order."""
    for depth in range(1, max_depth + 1):
        budget = max_weight - depth
        if budget < 0:
            break
        for ks in itertools.product(range(budget + 1), repeat=depth):
            if sum(ks) <= budget:
                yield ks


# -- product homomorphisms -------------------------------------------------------------


def verify_product_hom(product: str, u: NCPoly, v: NCPoly,
                       order: int = DEFAULT_ORDER,
                       cutoff: int = DEFAULT_CUTOFF,
                       tol: float = DEFAULT_TOL) -> CheckResult:
    """zeta(u) zeta(v) = zeta(u * v) for the chosen product: exact truncated
    series for the q-products, numeric partial sums for the classical ones."""
    inputs = f"product={product}, u={u.text()}, v={v.text()}"
    check_id = "product-hom"
    if product in ("qstuffle", "qshuffle"):
        lhs = zeta_q(u, order) * zeta_q(v, order)
        rhs = zeta_q(named_product(product, u, v), order)
        if lhs == rhs:
            return CheckResult(check_id, inputs, "exact-pass")
        return CheckResult(check_id, inputs, "fail",
                           witness=f"series differ: {(lhs - rhs).text()}")
    if product in ("stuffle", "shuffle"):
        lhs = mzv_partial(u, cutoff) * mzv_partial(v, cutoff)
        rhs = mzv_partial(named_product(product, u, v), cutoff)
        return _numeric(check_id, inputs, lhs - rhs, tol)
    raise ValueError(f"unknown product {product!r}")


def verify_duality_tau(w: NCPoly, cutoff: int = DEFAULT_CUTOFF,
                       tol: float = DEFAULT_TOL) -> CheckResult:
    """zeta(w) = zeta(tau(w)), as partial sums."""
    wx = encode_poly(w) if w.alphabet == Z else w
    if not membership(wx, "H0"):
        raise ValueError("duality-tau requires admissible input (H0)")
    inputs = f"w={w.text()}"
    residual = mzv_partial(wx, cutoff) - mzv_partial(tau(wx), cutoff)
    return _numeric("duality-tau", inputs, residual, tol)


def verify_ds(u: NCPoly, v: NCPoly, cutoff: int = DEFAULT_CUTOFF,
              tol: float = DEFAULT_TOL) -> CheckResult:
    """zeta applied to the double-shuffle element vanishes (partial sums)."""
    inputs = f"u={u.text()}, v={v.text()}"
    element = ds(u, v)
    if element.is_zero:
        return CheckResult("ds", inputs, "exact-pass")
    return _numeric("ds", inputs, mzv_partial(element, cutoff), tol)


# -- dualities ---------------------------------------------------------------------------


def _as_ab(p: NCPoly) -> NCPoly:
    return encode_poly(p) if p.alphabet == E else p


def _as_xy(p: NCPoly) -> NCPoly:
    return encode_poly(p) if p.alphabet == Z else p


def verify_q_duality(u: NCPoly, v: NCPoly) -> CheckResult:
    """u qshuffle v = sigma(sigma(u) qstuffle sigma(v)), exactly."""
    ua, va = _as_ab(u), _as_ab(v)
    if not (membership(ua, "Hhat0") and membership(va, "Hhat0")):
        raise ValueError("q-duality requires admissible operands (Hhat0)")
    inputs = f"u={u.text()}, v={v.text()}"
    lhs = named_product("qshuffle", ua, va)
    rhs = sigma(named_product("qstuffle", sigma(ua), sigma(va)))
    return _exact("q-duality", inputs, lhs, rhs)


def verify_generalized_dual(seed: NCPoly, weight_bound: int = 4) -> CheckResult:
    """For the dual pair built from a seed: sigma(sigma(w) #_E sigma(v)) =
    w #_L v on admissible words up to the weight bound, exactly."""
    from .diamond import build_dual_pair

    rule_e, rule_l = build_dual_pair(seed)
    handle_e = ProductHandle(rule_e)
    handle_l = ProductHandle(rule_l)
    inputs = f"seed={seed.text()}, weight<={weight_bound}"
    words = admissible_ab_words(weight_bound)
    for w in words:
        for v in words:
            wp = NCPoly.from_word(w)
            vp = NCPoly.from_word(v)
            inner = handle_e.product(decode_poly(sigma(wp)), decode_poly(sigma(vp)))
            lhs = sigma(encode_poly(inner))
            rhs = handle_l.product(wp, vp)
            if lhs != rhs:
                witness = (f"w={w.text()}, v={v.text()}: "
                           f"difference {(lhs - rhs).text()}")
                return CheckResult("generalized-dual", inputs, "fail", witness=witness)
    return CheckResult("generalized-dual", inputs, "exact-pass")


def verify_dual_stuffle(u: NCPoly, v: NCPoly) -> CheckResult:
    """tau(tau(u) * tau(v)) = u #_Sh v, exactly."""
    ux, vx = _as_xy(u), _as_xy(v)
    if not (membership(ux, "H0") and membership(vx, "H0")):
        raise ValueError("dual-stuffle requires admissible operands (H0)")
    inputs = f"u={u.text()}, v={v.text()}"
    lhs = tau(named_product("stuffle", tau(ux), tau(vx)))
    rhs = named_product("shsh", ux, vx)
    return _exact("dual-stuffle", inputs, lhs, rhs)


def verify_ds_identity(u: NCPoly, v: NCPoly) -> CheckResult:
    """ds(u, v) = -tau(D(tau(u), tau(v))), exactly."""
    ux, vx = _as_xy(u), _as_xy(v)
    if not (membership(ux, "H0") and membership(vx, "H0")):
        raise ValueError("ds-identity requires admissible operands (H0)")
    inputs = f"u={u.text()}, v={v.text()}"
    lhs = ds(ux, vx)
    rhs = -tau(dpart(tau(ux), tau(vx)))
    return _exact("ds-identity", inputs, lhs, rhs)


# -- engine-level suites -----------------------------------------------------------------


def _rule_words(rule: DiamondRule, total_bound: int) -> list[Word]:
    if rule.alphabet.is_indexed:
        return indexed_words_by_weight(rule.alphabet, total_bound)
    return finite_words(rule.alphabet, total_bound)


def _word_size(word: Word) -> int:
    return word.weight() if word.alphabet.is_indexed else len(word)


def verify_assoc_comm(rule: DiamondRule | str, length_bound: int = 7,
                      comm_bound: int | None = None) -> CheckResult:
    """Exhaustive associativity over word triples of total length (weight,
    for indexed alphabets) <= length_bound, plus commutativity over pairs
    within comm_bound through a non-symmetrized engine.  Exact."""
    if isinstance(rule, str):
        rule = builtin_rule(rule)
    report = check_associative(rule)
    inputs = f"rule={rule.name}, bound={length_bound}"
    if not report.holds:
        return CheckResult("assoc-comm", inputs, "fail",
                           witness=f"rule fails precondition: {report.witness}")
    if comm_bound is None:
        comm_bound = min(length_bound, 6)
    words = _rule_words(rule, length_bound)
    sizes = {w: _word_size(w) for w in words}
    polys = {w: NCPoly.from_word(w) for w in words}

    plain = ProductHandle(rule, symmetric_memo=False)
    for u in words:
        if sizes[u] * 2 > comm_bound:
            continue
        for v in words:
            if sizes[u] + sizes[v] > comm_bound:
                continue
            if plain.product(polys[u], polys[v]) != plain.product(polys[v], polys[u]):
                return CheckResult("assoc-comm", inputs, "fail",
                                   witness=f"not commutative at ({u.text()}, {v.text()})")

    handle = ProductHandle(rule)
    for u in words:
        su = sizes[u]
        for v in words:
            sv = su + sizes[v]
            if sv > length_bound:
                continue
            uv = handle.product(polys[u], polys[v])
            for w in words:
                if sv + sizes[w] > length_bound:
                    continue
                lhs = handle.product(uv, polys[w])
                rhs = handle.product(polys[u], handle.product(polys[v], polys[w]))
                if lhs != rhs:
                    witness = (f"({u.text()}, {v.text()}, {w.text()}): "
                               f"difference {(lhs - rhs).text()}")
                    return CheckResult("assoc-comm", inputs, "fail", witness=witness)
    return CheckResult("assoc-comm", inputs, "exact-pass")


def verify_dualst(rule: DiamondRule | str, u: NCPoly, v: NCPoly) -> CheckResult:
    """First-letter and last-letter recursions agree: u # v = u #-bar v."""
    if isinstance(rule, str):
        rule = builtin_rule(rule)
    handle = ProductHandle(rule)
    inputs = f"rule={rule.name}, u={u.text()}, v={v.text()}"
    return _exact("dualst", inputs, handle.product(u, v), handle.product_dual(u, v))


# -- relation enumeration ----------------------------------------------------------------


def enumerate_ds_relations(weight: int, cutoff: int = DEFAULT_CUTOFF):
    """All double-shuffle elements ds(u, v) over unordered pairs of admissible
    z-words with wt(u) + wt(v) = weight, paired with the magnitude of their
    numeric partial sum.  Pairs are enumerated in (weight, lex) order."""
    if weight < 4:
        raise ValueError("weight must be at least 4 (two admissible words)")
    out = []
    for wu in range(2, weight - 1):
        wv = weight - wu
        if wv < wu:
            break
        us = [Z.word(*ks) for ks in admissible_z_indices(wu)]
        vs = [Z.word(*ks) for ks in admissible_z_indices(wv)]
        us.sort(key=lambda w: w.sort_key)
        vs.sort(key=lambda w: w.sort_key)
        seen = set()
        for u in us:
            for v in vs:
                pair = (u, v) if u.sort_key <= v.sort_key else (v, u)
                if pair in seen:
                    continue
                seen.add(pair)
                relation = ds(NCPoly.from_word(pair[0]), NCPoly.from_word(pair[1]))
                residual = abs(mzv_partial(relation, cutoff))
                out.append((relation, residual))
    return out
