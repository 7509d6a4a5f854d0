"""Unit quaternions over SU(2).

A unit quaternion ``(n0, n1, n2, n3)`` stands for the 2x2 unitary matrix

    U = n0 + i n1 sigma_1 + i n2 sigma_2 + i n3 sigma_3

with the Pauli relations ``sigma_1 sigma_2 = i sigma_3`` (and cyclic).  The
scalar part is always stored first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidInputError

NORM_TOL = 1e-12
# constructor accepts inputs this far off unit norm and renormalizes them
ACCEPT_TOL = 1e-9
# below this drift the components are kept bit-for-bit
RENORM_TOL = 1e-14
# components smaller than this are treated as zero when choosing a sign
SIGN_TOL = 1e-12

TWO_PI = 2.0 * math.pi


def normalize_angle(angle: float) -> float:
    """Map ``angle`` onto (-pi, pi]."""
    r = math.remainder(angle, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r + 0.0


@dataclass(frozen=True)
class UnitQuaternion:
    """SU(2) element ``n0 + i n.sigma`` stored as four reals."""

    n0: float
    n1: float
    n2: float
    n3: float

    def __post_init__(self):
        n0, n1, n2, n3 = comps = (self.n0, self.n1, self.n2, self.n3)
        norm = math.sqrt(n0 * n0 + n1 * n1 + n2 * n2 + n3 * n3)
        # NaN fails this comparison too
        if not abs(norm - 1.0) <= ACCEPT_TOL:
            if not all(math.isfinite(c) for c in comps):
                raise InvalidInputError(f"non-finite quaternion component in {comps}")
            raise InvalidInputError(f"quaternion norm {norm!r} is not 1")
        scale = norm if abs(norm - 1.0) > RENORM_TOL else 1.0
        set_ = object.__setattr__
        set_(self, "n0", float(n0) / scale)
        set_(self, "n1", float(n1) / scale)
        set_(self, "n2", float(n2) / scale)
        set_(self, "n3", float(n3) / scale)

    @classmethod
    def from_vector(cls, values, *, normalize: bool = False) -> "UnitQuaternion":
        """Build from any length-4 sequence; optionally rescale to unit norm."""
        vals = [float(v) for v in values]
        if len(vals) != 4:
            raise InvalidInputError(f"expected 4 components, got {len(vals)}")
        if normalize:
            if not all(math.isfinite(v) for v in vals):
                raise InvalidInputError(f"non-finite quaternion component in {vals}")
            norm = math.sqrt(math.fsum(v * v for v in vals))
            if norm == 0.0:
                raise InvalidInputError("cannot normalize the zero quaternion")
            vals = [v / norm for v in vals]
        return cls(*vals)

    @classmethod
    def identity(cls) -> "UnitQuaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    def __iter__(self) -> Iterator[float]:
        return iter((self.n0, self.n1, self.n2, self.n3))

    def __getitem__(self, i: int) -> float:
        return (self.n0, self.n1, self.n2, self.n3)[i]

    def __neg__(self) -> "UnitQuaternion":
        return UnitQuaternion(-self.n0, -self.n1, -self.n2, -self.n3)

    def __mul__(self, other: "UnitQuaternion") -> "UnitQuaternion":
        if not isinstance(other, UnitQuaternion):
            return NotImplemented
        return multiply(self, other)

    def conjugate(self) -> "UnitQuaternion":
        """Group inverse ``n0 - i n.sigma``."""
        return UnitQuaternion(self.n0, -self.n1, -self.n2, -self.n3)

    def as_array(self) -> np.ndarray:
        return np.array([self.n0, self.n1, self.n2, self.n3])

    def as_matrix(self) -> np.ndarray:
        """The 2x2 complex matrix ``n0 + i n.sigma``."""
        n0, n1, n2, n3 = self
        return np.array(
            [[n0 + 1j * n3, 1j * n1 + n2], [1j * n1 - n2, n0 - 1j * n3]]
        )


def _elementary_components(axis: int, angle: float) -> tuple[float, float, float, float]:
    if axis not in (1, 2, 3):
        raise InvalidInputError(f"axis must be 1, 2 or 3, got {axis!r}")
    if not math.isfinite(angle):
        raise InvalidInputError(f"angle must be finite, got {angle!r}")
    comps = [math.cos(0.5 * angle), 0.0, 0.0, 0.0]
    comps[axis] = math.sin(0.5 * angle)
    return tuple(comps)


def elementary(axis: int, angle: float) -> UnitQuaternion:
    """Rotation factor ``cos(angle/2) + i sin(angle/2) sigma_axis``."""
    return UnitQuaternion(*_elementary_components(axis, angle))


def _product(u, v) -> tuple[float, float, float, float]:
    """Renormalized Pauli-algebra product of two component 4-tuples."""
    a0, a1, a2, a3 = u
    b0, b1, b2, b3 = v
    c0 = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
    c1 = a0 * b1 + b0 * a1 - (a2 * b3 - a3 * b2)
    c2 = a0 * b2 + b0 * a2 - (a3 * b1 - a1 * b3)
    c3 = a0 * b3 + b0 * a3 - (a1 * b2 - a2 * b1)
    norm = math.sqrt(c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3)
    return c0 / norm, c1 / norm, c2 / norm, c3 / norm


def multiply(u: UnitQuaternion, v: UnitQuaternion) -> UnitQuaternion:
    """SU(2) product ``u v``.

    With ``u = a0 + i a.sigma`` and ``v = b0 + i b.sigma`` the Pauli algebra
    gives ``uv = (a0 b0 - a.b) + i (a0 b + b0 a - a x b).sigma``.  The result
    is renormalized to absorb rounding drift.
    """
    return UnitQuaternion(*_product(u, v))


def multiply_all(*factors: UnitQuaternion) -> UnitQuaternion:
    out = UnitQuaternion.identity()
    for f in factors:
        out = multiply(out, f)
    return out


def canonicalize(u: UnitQuaternion) -> UnitQuaternion:
    """Pick the representative of ``{u, -u}`` whose first nonzero entry is positive.

    Entries within :data:`SIGN_TOL` of zero count as zero, so rounding noise
    such as ``cos(pi/2)`` never decides the sign.
    """
    for c in u:
        if c > SIGN_TOL:
            return u
        if c < -SIGN_TOL:
            return -u
    return u  # unreachable for unit norm


def sample_random(seed: int) -> UnitQuaternion:
    """Uniform sample on the 3-sphere, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    return sample_many(rng, 1)[0]


def sample_many(rng: np.random.Generator, count: int) -> list[UnitQuaternion]:
    """``count`` uniform samples drawn from ``rng`` (normalized Gaussians)."""
    raw = rng.standard_normal((count, 4))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return [UnitQuaternion(*map(float, row)) for row in raw]
