"""Composition-operator symbols and the tools used to build them."""
from .constructions import (Symbol, constant_symbol, f_theta, general_symbol, identity_symbol,
                            lens_symbol, outer_symbol, phi_theta_symbol, wrap)
from .fourier import CosineSeries, conjugate_series, fourier_coefficients, hilbert_periodic
from .profile import ProfileFunction, build_profile_from_sequences

__all__ = [
    "Symbol", "ProfileFunction", "CosineSeries",
    "build_profile_from_sequences", "fourier_coefficients", "conjugate_series", "hilbert_periodic",
    "general_symbol", "phi_theta_symbol", "lens_symbol", "outer_symbol",
    "identity_symbol", "constant_symbol", "f_theta", "wrap",
]
