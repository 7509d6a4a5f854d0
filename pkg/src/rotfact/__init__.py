"""Factorizations of SU(2)/SO(3) rotations and polarization optics."""

from .errors import ContractError, DomainError, InvalidInputError, RotfactError
from .factorize import (
    FactorizationPattern,
    FactorizationResult,
    PatternKind,
    compose,
    factor,
    factor_three_element,
    factor_two_element,
    recompose,
    verify_substitution_tables,
)
from .group_maps import sl2c_to_lorentz, so3_to_su2, su2_to_sl2c, su2_to_so3
from .polarization import (
    IntAttenuator,
    JonesSpinor,
    PolAttenuator,
    Rotator,
    StokesVector,
    add_incoherent,
    apply_element,
    decompose_rotator,
    degree_of_polarization,
    jones_to_stokes,
    stokes_from_wave,
    stokes_to_jones,
)
from .quaternion import (
    UnitQuaternion,
    canonicalize,
    elementary,
    multiply,
    normalize_angle,
    sample_random,
)

__all__ = [
    "ContractError",
    "DomainError",
    "FactorizationPattern",
    "FactorizationResult",
    "IntAttenuator",
    "InvalidInputError",
    "JonesSpinor",
    "PatternKind",
    "PolAttenuator",
    "Rotator",
    "RotfactError",
    "StokesVector",
    "UnitQuaternion",
    "add_incoherent",
    "apply_element",
    "canonicalize",
    "compose",
    "decompose_rotator",
    "degree_of_polarization",
    "elementary",
    "factor",
    "factor_three_element",
    "factor_two_element",
    "jones_to_stokes",
    "multiply",
    "normalize_angle",
    "recompose",
    "sample_random",
    "sl2c_to_lorentz",
    "so3_to_su2",
    "stokes_from_wave",
    "stokes_to_jones",
    "su2_to_sl2c",
    "su2_to_so3",
    "verify_substitution_tables",
]
