"""Iterated circuit maps, spectra and Hamiltonian eigenproblems."""

from ._zetadyn import (
    AppendixParams,
    DegenerateDerivative,
    DomainError,
    ElectricalParams,
    Error,
    EvanescentRegime,
    FixedPoint,
    InvalidInput,
    IoError,
    NoConvergence,
    Orbit,
    OrbitAborted,
    Overflow,
    SingularState,
    TooShort,
    attractor_embedding,
    eigensolve,
    energy_series,
    eval_map,
    find_fixed_points,
    generate_orbit,
    lyapunov_exponent,
    pair_correlation_R2,
    pair_correlation_g,
    parameter_scan,
    power_spectrum,
    run_cli,
    von_mangoldt,
)

__version__ = "0.1.0"
