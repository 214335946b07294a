"""Spectra and measure-of-spectrum bounds for 2D periodic Jacobi operators."""
from .coefficients import (
    CoefficientField,
    example_diagonal_hopping,
    example_shifted_schrodinger,
    random_field,
    relabel,
    validate,
)
from .fiber import assemble_A_hat, assemble_B_hat, assemble_C, assemble_J, assemble_J0, assemble_J1
from .eigen import hermitian_eigenvalues, min_eigenvalue
from .bounds import band_envelope, envelope_sum, norm_bound, r_min, r_value, schrodinger_bound
from .spectrum import IntervalSet, MomentumGrid, band_intervals, spectrum_estimate, sweep_bands
from .oracle import brute_measure, build_torus, verify_direct_integral

__version__ = "0.1.0"
