"""Stokes/Mueller and Jones descriptions of light polarization.

Stokes vectors are ``(S0, S1, S2, S3)`` with ``S0`` the intensity and

    S3 = A^2 - B^2,   S1 = 2AB cos(Delta),   S2 = 2AB sin(Delta)

for a steady wave with amplitudes ``A``, ``B`` and phase lag ``Delta``.
A Jones spinor ``psi = (A e^{i alpha}, B e^{i beta})`` carries the same
information plus an unobservable global phase; its Stokes vector is read off
from

    psi psi^+ = 1/2 [[S0 + S3, S1 - i S2], [S1 + i S2, S0 - S3]].

Mueller elements are kept structural: a polarization attenuator scales the
spatial part by ``exp(-lambda)``, an intensity attenuator scales everything
by ``exp(sigma)``, a rotator applies an SO(3) matrix to the spatial part.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, InvalidInputError
from .factorize import FactorizationPattern, factor
from .group_maps import check_rotation, so3_to_su2, su2_to_so3
from .quaternion import elementary

POLARIZED_TOL = 1e-9
# absolute slack for subnormal rounding in the validity check
_TINY = 4.0 * sys.float_info.min


@dataclass(frozen=True)
class StokesVector:
    s0: float
    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        comps = tuple(self)
        if not all(math.isfinite(c) for c in comps):
            raise InvalidInputError(f"non-finite Stokes component in {comps}")
        if self.s0 < 0.0:
            raise InvalidInputError(f"negative intensity {self.s0!r}")
        if self.s0 < self.polarized_intensity - POLARIZED_TOL * self.s0 - _TINY:
            raise InvalidInputError(
                f"polarized part {self.polarized_intensity!r} exceeds intensity {self.s0!r}"
            )

    def __iter__(self):
        return iter((self.s0, self.s1, self.s2, self.s3))

    @classmethod
    def from_vector(cls, values) -> "StokesVector":
        vals = [float(v) for v in values]
        if len(vals) != 4:
            raise InvalidInputError(f"expected 4 Stokes components, got {len(vals)}")
        return cls(*vals)

    @property
    def intensity(self) -> float:
        return self.s0

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.s1, self.s2, self.s3])

    @property
    def polarized_intensity(self) -> float:
        """Length of the spatial part, ``|(S1, S2, S3)|``."""
        return math.hypot(self.s1, self.s2, self.s3)

    def as_array(self) -> np.ndarray:
        return np.array([self.s0, self.s1, self.s2, self.s3])


@dataclass(frozen=True)
class JonesSpinor:
    psi1: complex
    psi2: complex

    def __post_init__(self):
        for name in ("psi1", "psi2"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise InvalidInputError(f"non-finite Jones amplitude {name}={v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_polar(cls, A: float, alpha: float, B: float, beta: float) -> "JonesSpinor":
        """``(A e^{i alpha}, B e^{i beta})``."""
        return cls(cmath.rect(A, alpha), cmath.rect(B, beta))

    @property
    def amplitudes(self) -> tuple[float, float]:
        return abs(self.psi1), abs(self.psi2)

    @property
    def phases(self) -> tuple[float, float]:
        return cmath.phase(self.psi1), cmath.phase(self.psi2)

    @property
    def intensity(self) -> float:
        return abs(self.psi1) ** 2 + abs(self.psi2) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.psi1, self.psi2])


# -- Mueller elements --------------------------------------------------------


@dataclass(frozen=True)
class PolAttenuator:
    """Scales the degree of polarization by ``exp(-lam)``."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam) or self.lam < 0.0:
            raise InvalidInputError(f"lambda must be finite and >= 0, got {self.lam!r}")

    def to_matrix(self) -> np.ndarray:
        return np.diag([1.0] + [math.exp(-self.lam)] * 3)


@dataclass(frozen=True)
class IntAttenuator:
    """Scales the whole Stokes vector by ``exp(sigma)``."""

    sigma: float

    def __post_init__(self):
        if not math.isfinite(self.sigma):
            raise InvalidInputError(f"sigma must be finite, got {self.sigma!r}")

    def to_matrix(self) -> np.ndarray:
        return math.exp(self.sigma) * np.eye(4)


@dataclass(frozen=True, eq=False)
class Rotator:
    """Pure polarization rotator acting on ``(S1, S2, S3)``.

    ``axis`` and ``angle`` are set for elementary rotators built by
    :meth:`about_axis`; ``angle`` is then the angle of the SU(2) factor
    ``elementary(axis, angle)`` whose image is ``matrix``.
    """

    matrix: np.ndarray
    axis: int | None = None
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_rotation(self.matrix).copy())
        self.matrix.setflags(write=False)

    @classmethod
    def about_axis(cls, axis: int, angle: float) -> "Rotator":
        return cls(su2_to_so3(elementary(axis, angle)), axis, angle)

    def to_matrix(self) -> np.ndarray:
        out = np.eye(4)
        out[1:, 1:] = self.matrix
        return out


MuellerElement = Union[PolAttenuator, IntAttenuator, Rotator]


# -- operations --------------------------------------------------------------


def stokes_from_wave(A: float, B: float, delta: float) -> StokesVector:
    """Stokes vector of a steady wave ``E1 = A cos wt``, ``E2 = B cos(wt + delta)``."""
    if A < 0.0 or B < 0.0:
        raise InvalidInputError(f"amplitudes must be >= 0, got A={A!r}, B={B!r}")
    ab2 = 2.0 * A * B
    return StokesVector(A * A + B * B, ab2 * math.cos(delta), ab2 * math.sin(delta), A * A - B * B)


def add_incoherent(x: StokesVector, y: StokesVector) -> StokesVector:
    return StokesVector(x.s0 + y.s0, x.s1 + y.s1, x.s2 + y.s2, x.s3 + y.s3)


def degree_of_polarization(s: StokesVector) -> float:
    if s.s0 <= 0.0:
        raise InvalidInputError("degree of polarization needs positive intensity")
    return min(s.polarized_intensity / s.s0, 1.0)


def apply_element(element: MuellerElement, s: StokesVector) -> StokesVector:
    match element:
        case PolAttenuator(lam=lam):
            f = math.exp(-lam)
            return StokesVector(s.s0, f * s.s1, f * s.s2, f * s.s3)
        case IntAttenuator(sigma=sigma):
            f = math.exp(sigma)
            return StokesVector(f * s.s0, f * s.s1, f * s.s2, f * s.s3)
        case Rotator():
            v = element.matrix @ s.spatial
            return StokesVector(s.s0, *map(float, v))
    raise InvalidInputError(f"not a Mueller element: {element!r}")


def apply_train(elements, s: StokesVector) -> StokesVector:
    """Apply a train written left to right as a matrix product (last acts first)."""
    for e in reversed(list(elements)):
        s = apply_element(e, s)
    return s


def jones_to_stokes(psi: JonesSpinor) -> StokesVector:
    p1, p2 = psi.psi1, psi.psi2
    i1 = p1.real * p1.real + p1.imag * p1.imag
    i2 = p2.real * p2.real + p2.imag * p2.imag
    cross = p1.conjugate() * p2  # A B e^{i(beta - alpha)}
    return StokesVector(i1 + i2, 2.0 * cross.real, 2.0 * cross.imag, i1 - i2)


def stokes_to_jones(s: StokesVector, gamma: float = 0.0) -> JonesSpinor:
    """Jones spinor of a fully polarized Stokes vector.

    ``gamma`` fixes the global phase, ``psi = e^{i gamma/2} (A e^{-i Delta/2},
    B e^{i Delta/2})``.  Raises :class:`DomainError` for partially polarized
    light, which has no Jones description.
    """
    if s.s0 <= 0.0:
        raise InvalidInputError("Jones conversion needs positive intensity")
    if s.polarized_intensity < (1.0 - POLARIZED_TOL) * s.s0:
        raise DomainError(
            f"degree of polarization {s.polarized_intensity / s.s0:.17g} < 1; "
            "no Jones spinor exists"
        )
    # the smaller amplitude comes from 2AB = |S1 + i S2| to avoid cancellation
    transverse = math.hypot(s.s1, s.s2)
    if s.s3 >= 0.0:
        A = math.sqrt(0.5 * (s.s0 + s.s3))
        B = 0.5 * transverse / A
    else:
        B = math.sqrt(0.5 * (s.s0 - s.s3))
        A = 0.5 * transverse / B
    delta = math.atan2(s.s2, s.s1) if A * B > 0.0 else 0.0
    half = 0.5 * gamma
    return JonesSpinor(cmath.rect(A, half - 0.5 * delta), cmath.rect(B, half + 0.5 * delta))


def decompose_rotator(R, pattern) -> list[Rotator]:
    """Split a rotator into three elementary ones along ``pattern``'s axes.

    The returned matrices multiply left to right back to ``R``, so when the
    train acts on a Stokes vector the last element acts first.
    """
    pattern = FactorizationPattern.parse(pattern)
    result = factor(so3_to_su2(R), pattern)
    return [Rotator.about_axis(ax, ang) for ax, ang in zip(pattern.axes, result.angles)]
