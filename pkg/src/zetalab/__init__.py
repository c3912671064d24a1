"""Regularized determinants, Selberg and Ruelle zeta functions from length
spectra, zeta functions of finite graphs, and a finite-group trace formula check."""
from .graphzeta import Graph, bass_polynomial, divisor, enumerate_primitive_cycles, zeta_polynomial
from .regprod import FiniteSequence, PolynomialSequence, ShiftedLinear, regularized_det
from .selberg import log_ruelle, log_selberg, ruelle_zeta, selberg_zeta
from .spectra import LengthSpectrum, PrimitiveClass, load_spectrum, synth_spectrum
from .tfverify import geometric_side, kernel_trace, verify_trace_formula

__version__ = "0.1.0"

__all__ = [
    "FiniteSequence",
    "Graph",
    "LengthSpectrum",
    "PolynomialSequence",
    "PrimitiveClass",
    "ShiftedLinear",
    "bass_polynomial",
    "divisor",
    "enumerate_primitive_cycles",
    "geometric_side",
    "kernel_trace",
    "load_spectrum",
    "log_ruelle",
    "log_selberg",
    "regularized_det",
    "ruelle_zeta",
    "selberg_zeta",
    "synth_spectrum",
    "verify_trace_formula",
    "zeta_polynomial",
]
