"""Exact newform Dedekind sums, their kernels, and the identities they satisfy."""

__version__ = "0.1.0"

from .cyclotomic import CyclotomicNumber
from .characters import DirichletCharacter, enumerate_primitive, gauss_sum, parse_label
from .modular import UnimodularMatrix
from .dedekind import DedekindSumSpec, IdentityViolation, dedekind_sum, dedekind_sum_matrix
from .kernel import galois_orbits, scan_kernel, scan_with_orbit_dedup

__all__ = [
    "__version__",
    "CyclotomicNumber",
    "DirichletCharacter",
    "enumerate_primitive",
    "gauss_sum",
    "parse_label",
    "UnimodularMatrix",
    "DedekindSumSpec",
    "IdentityViolation",
    "dedekind_sum",
    "dedekind_sum_matrix",
    "galois_orbits",
    "scan_kernel",
    "scan_with_orbit_dedup",
]
