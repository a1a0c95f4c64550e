from .local_fields import LocalFieldSpec, LocalElem, FieldSpec, Poly, canonical_reps, teichmuller_digit
from .digit_principle import BasisFamily, certify, span_check, expand, digit_extend, sup_norm, coeff_norm

__version__ = "0.1.0"
