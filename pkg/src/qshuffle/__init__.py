"""Generalized quasi-shuffle products over noncommutative word algebras,
with diamond-map property checkers, dualities, exact truncated q-series
evaluation and a relation-verification suite."""

from .diamond import (BUILTIN_RULE_NAMES, DiamondRule, IndexedDiamondRule,
                      PropertyReport, TableDiamondRule, build_dual_pair,
                      builtin_rule, check_associative, check_commutative,
                      check_decomposable, decompose, diamond_apply, load_rule)
from .exprparse import ParseError, parse, poly_from_text, print_expr
from .involutions import (IndexWord, decode, decode_poly, encode, encode_poly,
                          membership, sigma, tau)
from .laurent import HBAR, LaurentCoeff, as_rational, rational
from .poly import NCPoly, first, init_word, last, nc_mul, normalize, rest_word
from .products import (ProductHandle, dpart, ds, gqsh, gqsh_dual, named_handle,
                       named_product)
from .relations import (CheckResult, enumerate_ds_relations, verify_assoc_comm,
                        verify_ds, verify_ds_identity, verify_dual_stuffle,
                        verify_dualst, verify_duality_tau,
                        verify_generalized_dual, verify_product_hom,
                        verify_q_duality)
from .series import (QSeries, QZSeries, act, hbar_eval, li_q, mzv_partial,
                     zeta_q)
from .words import AB, ABC, E, XY, Z, Alphabet, Letter, Word

__version__ = "0.1.0"

__all__ = [
    "AB", "ABC", "BUILTIN_RULE_NAMES", "Alphabet", "CheckResult", "DiamondRule",
    "E", "HBAR", "IndexWord", "IndexedDiamondRule", "LaurentCoeff", "Letter",
    "NCPoly", "ParseError", "ProductHandle", "PropertyReport", "QSeries",
    "QZSeries", "TableDiamondRule", "Word", "XY", "Z", "act", "as_rational",
    "build_dual_pair", "builtin_rule", "check_associative", "check_commutative",
    "check_decomposable", "decode", "decode_poly", "decompose", "diamond_apply",
    "dpart", "ds", "encode", "encode_poly", "enumerate_ds_relations", "first",
    "gqsh", "gqsh_dual", "hbar_eval", "init_word", "last", "li_q", "load_rule",
    "membership", "mzv_partial", "named_handle", "named_product", "nc_mul",
    "normalize", "parse", "poly_from_text", "print_expr", "rational",
    "rest_word", "sigma", "tau", "verify_assoc_comm", "verify_ds",
    "verify_ds_identity", "verify_dual_stuffle", "verify_dualst",
    "verify_duality_tau", "verify_generalized_dual", "verify_product_hom",
    "verify_q_duality", "zeta_q",
]
