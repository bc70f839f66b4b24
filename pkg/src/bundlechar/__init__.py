"""Exact and numeric computations on SL2(C) character varieties of the
once-punctured torus bundles M_n with tunnel number one.
"""

from .arithmetic import (
    discrete_faithful,
    dilatation,
    filling_characters,
    filling_table,
    fox_calculus_oracle,
    genus_relation,
    trace_field,
    twisted_alexander,
)
from .fibonacci import family, fib, hats, identity_suite, root_set, zero_set
from .laurent import LaurentPoly, trace_rewrite
from .poly import IntPoly, gcd
from .relation import build_F, phi_generators
from .report import report, verify
from .variety import canonical_param, genus, hyperelliptic_model

__version__ = "0.1.0"
