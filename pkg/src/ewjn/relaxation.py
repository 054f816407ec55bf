"""Qubit relaxation rates from the field spectral densities.

rate = (moment^2/hbar^2) chi_ii(z, omega_Z) coth(hbar omega_Z/(2 k_B T))

with chi^E for an electric dipole (moment in C m) and chi^B for a
magnetic one (moment in J/T). The qubit is a point dipole; only the
component along its orientation contributes, and the in-plane symmetry
of the half-space makes x and y identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .materials import HBAR, K_BOLTZMANN, Material
from .quadrature import QuadratureConfig
from .spectral import Model, SpectralDensityTensor, evaluate

_KINDS = ("electric-dipole", "magnetic-dipole")
_ORIENTATIONS = ("x", "y", "z")

_CHI_UNITS = {"E": "(V/m)^2 s", "B": "T^2 s"}


@dataclass(frozen=True)
class QubitSpec:
    """Point dipole: kind, moment (C m electric, J/T magnetic), axis."""

    kind: str
    moment: float
    orientation: str
    level_splitting: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"kind must be one of {_KINDS}")
        if self.orientation not in _ORIENTATIONS:
            raise DomainError(f"orientation must be one of {_ORIENTATIONS}")
        if not (self.moment > 0):
            raise DomainError("moment must be > 0")
        if not (self.level_splitting > 0):
            raise DomainError("level_splitting must be > 0")

    @property
    def field_kind(self) -> str:
        return "E" if self.kind == "electric-dipole" else "B"


@dataclass(frozen=True)
class RelaxationResult:
    rate: float
    t1: float
    chi_component: str
    chi_value: float
    chi_units: str
    thermal_factor: float
    model: Model
    error_estimate: float


def thermal_factor(omega: float, temperature: float) -> float:
    """coth(hbar omega/(2 k_B T)); exactly 1 at T = 0.

    1/tanh is stable at both ends: tanh saturates to 1 for large
    arguments instead of overflowing, and the small-argument growth
    2 k_B T/(hbar omega) comes out of the division untouched.
    """
    if not (omega > 0):
        raise DomainError("omega must be > 0")
    if temperature < 0:
        raise DomainError("temperature must be >= 0")
    if temperature == 0:
        return 1.0
    return 1.0 / math.tanh(HBAR * omega / (2.0 * K_BOLTZMANN * temperature))


def t1(
    material: Material,
    qubit: QubitSpec,
    z: float,
    temperature: float = 0.0,
    model: Model | str = Model.AUTO,
    cfg: QuadratureConfig | None = None,
) -> RelaxationResult:
    """Relaxation time of the qubit at height z above the half-space."""
    omega = qubit.level_splitting
    tensor: SpectralDensityTensor = evaluate(
        material, qubit.field_kind, z, omega, model, cfg
    )
    component = "zz" if qubit.orientation == "z" else "xx"
    chi = tensor.chi_zz if component == "zz" else tensor.chi_xx
    factor = thermal_factor(omega, temperature)
    rate = (qubit.moment / HBAR) ** 2 * chi * factor
    return RelaxationResult(
        rate=rate,
        t1=1.0 / rate if rate > 0 else math.inf,
        chi_component=component,
        chi_value=chi,
        chi_units=_CHI_UNITS[tensor.field_kind],
        thermal_factor=factor,
        model=tensor.model,
        error_estimate=(qubit.moment / HBAR) ** 2 * tensor.error_estimate * factor,
    )
