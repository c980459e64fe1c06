"""Hagedorn wavepackets: evaluation, Wigner/FBI/Husimi transforms, projection
and semiclassical propagation. Thin wrapper over the C++ core."""

from ._hagkit import (
    Basis,
    DataError,
    DomainError,
    Error,
    InternalError,
    IoError,
    NumericalError,
    ParameterSet,
    ResourceError,
    SingularityError,
    StructuralError,
    fbi,
    fourier_dual,
    from_squeeze,
    hermite_fbi,
    hermite_function,
    hermite_husimi,
    hermite_poly,
    hermite_wigner,
    husimi,
    index_set,
    laguerre_kernel_one,
    laguerre_kernel_two,
    laguerre_poly,
    load_params,
    polar_normalize,
    project,
    propagate,
    reconstruct,
    symplectic_embed,
    to_squeeze,
    validate,
    wavepacket,
    wavepackets,
    width_matrix,
    wigner,
    wigner_table,
)

__version__ = "0.1.0"
