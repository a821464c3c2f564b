"""Wedge diffraction engine: ideal and impedance faces, contour and edge-source forms."""

from ._core import (
    FieldDecomposition,
    QuadratureConfig,
    QuadratureFailure,
    QuadratureReport,
    __version__,
    diffraction_coefficient,
    ideal_diffraction_coefficient,
    ideal_field,
    ideal_kernel,
    impedance_field,
    impedance_kernel,
    run_cli,
    surface_waves,
)

__all__ = [
    "FieldDecomposition",
    "QuadratureConfig",
    "QuadratureFailure",
    "QuadratureReport",
    "__version__",
    "diffraction_coefficient",
    "ideal_diffraction_coefficient",
    "ideal_field",
    "ideal_kernel",
    "impedance_field",
    "impedance_kernel",
    "run_cli",
    "surface_waves",
]
