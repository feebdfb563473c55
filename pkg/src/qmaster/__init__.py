"""Exact computation in the right quantum algebra and machine checks of the
quantum analogue of MacMahon's Master Theorem."""

from .algebra import Biword, Element, biword, concat, content, inversions, is_circuit, mul_trunc
from .quantum import ComponentKey, EchelonStore, generators, im, is_zero_mod_ideal, normal_form, re
from .series import bos, ferm, k_i, s_i, univ
from .verify import VerificationReport, verify

__version__ = "0.1.0"

__all__ = [
    "Biword", "Element", "biword", "concat", "content", "inversions", "is_circuit", "mul_trunc",
    "ComponentKey", "EchelonStore", "generators", "im", "is_zero_mod_ideal", "normal_form", "re",
    "bos", "ferm", "k_i", "s_i", "univ", "VerificationReport", "verify",
]
