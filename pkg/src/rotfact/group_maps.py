"""Vector representations of SU(2) and SL(2,C).

``su2_to_so3`` is the 2-to-1 covering map, written so that it is a group
homomorphism for :func:`rotfact.quaternion.multiply`::

    su2_to_so3(u * v) == su2_to_so3(u) @ su2_to_so3(v)

Concretely ``su2_to_so3(u)`` is the rotation that ``u`` induces on the
spatial Stokes vector when it acts on a Jones spinor, ``psi -> U psi``.  In
entries it is the familiar quadratic-form matrix evaluated at the conjugate
parameters ``(n0, -n1, -n2, -n3)``, equivalently the spinor matrix
``B = n0 - i n.sigma`` applied to ``u``'s own components.

``sl2c_to_lorentz`` builds ``L_b^a`` for ``B(k) = k0 + k_j sigma_j`` from the
closed index formula

    L_b^a = dbar_b^c [ -delta_c^a k^n k*_n + k_c k^a* + k*_c k^a
                       + i eps_c^anm k_n k*_m ]

with ``g = diag(+1, -1, -1, -1)``, ``dbar = g`` and ``eps^0123 = +1``.  The
result acts on covariant components, ``S'_b = L_b^a S_a``.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import InvalidInputError
from .quaternion import UnitQuaternion, canonicalize

ROTATION_TOL = 1e-9
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def _levi_civita_upper() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(
            1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


# eps_c^{anm}: first index lowered from eps^{0123} = +1
_EPS_C_ANM = np.einsum("xanm,xc->canm", _levi_civita_upper(), METRIC)


def _quadratic_rotation(n0, n1, n2, n3) -> np.ndarray:
    return np.array(
        [
            [1 - 2 * (n2 * n2 + n3 * n3), -2 * n0 * n3 + 2 * n1 * n2, 2 * n0 * n2 + 2 * n1 * n3],
            [2 * n0 * n3 + 2 * n1 * n2, 1 - 2 * (n1 * n1 + n3 * n3), -2 * n0 * n1 + 2 * n2 * n3],
            [-2 * n0 * n2 + 2 * n1 * n3, 2 * n0 * n1 + 2 * n2 * n3, 1 - 2 * (n1 * n1 + n2 * n2)],
        ]
    )


def spinor_rotation(n) -> np.ndarray:
    """Rotation block of the spinor matrix ``B(n) = n0 - i n.sigma``.

    This is the quadratic-form matrix in the components of ``n`` as they
    stand.  Since ``B(n)`` is the inverse of ``n0 + i n.sigma``, this equals
    ``su2_to_so3(n).T``.
    """
    n0, n1, n2, n3 = n
    return _quadratic_rotation(n0, n1, n2, n3)


def su2_to_so3(u: UnitQuaternion) -> np.ndarray:
    """Rotation matrix of ``u``; ``u`` and ``-u`` give identical entries."""
    return _quadratic_rotation(u.n0, -u.n1, -u.n2, -u.n3)


def check_rotation(R, tol: float = ROTATION_TOL) -> np.ndarray:
    """Return ``R`` as a float array, raising unless it is in SO(3)."""
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise InvalidInputError(f"rotation must be 3x3, got shape {R.shape}")
    if not np.all(np.isfinite(R)):
        raise InvalidInputError("rotation has non-finite entries")
    if np.abs(R.T @ R - np.eye(3)).max() > tol:
        raise InvalidInputError("matrix is not orthogonal")
    det = float(np.linalg.det(R))
    if abs(det - 1.0) > tol:
        raise InvalidInputError(f"rotation determinant is {det!r}, expected +1")
    return R


def so3_to_su2(R, tol: float = ROTATION_TOL) -> UnitQuaternion:
    """Canonical SU(2) lift of a rotation matrix.

    Of the four quadratic forms ``1 +- R00 +- R11 +- R22`` (each equal to
    ``4 n_k^2``) the largest is square-rooted and the remaining components
    follow from off-diagonal sums and differences, so no division by a small
    number ever happens.
    """
    R = check_rotation(R, tol)
    t = np.trace(R)
    forms = (
        1.0 + t,
        1.0 + R[0, 0] - R[1, 1] - R[2, 2],
        1.0 - R[0, 0] + R[1, 1] - R[2, 2],
        1.0 - R[0, 0] - R[1, 1] + R[2, 2],
    )
    k = int(np.argmax(forms))
    # antisymmetric parts carry -4 n0 n_j; symmetric parts carry 4 n_i n_j
    d1 = R[1, 2] - R[2, 1]
    d2 = R[2, 0] - R[0, 2]
    d3 = R[0, 1] - R[1, 0]
    s12 = R[0, 1] + R[1, 0]
    s13 = R[0, 2] + R[2, 0]
    s23 = R[1, 2] + R[2, 1]
    h = 2.0 * math.sqrt(forms[k])
    if k == 0:
        q = (0.5 * math.sqrt(forms[0]), d1 / h, d2 / h, d3 / h)
    elif k == 1:
        q = (d1 / h, 0.5 * math.sqrt(forms[1]), s12 / h, s13 / h)
    elif k == 2:
        q = (d2 / h, s12 / h, 0.5 * math.sqrt(forms[2]), s23 / h)
    else:
        q = (d3 / h, s13 / h, s23 / h, 0.5 * math.sqrt(forms[3]))
    return canonicalize(UnitQuaternion.from_vector(q, normalize=True))


def su2_to_sl2c(u: UnitQuaternion) -> np.ndarray:
    """Components ``k`` with ``k0 + k_j sigma_j`` equal to ``u``'s matrix."""
    return np.array([u.n0, 1j * u.n1, 1j * u.n2, 1j * u.n3])


def check_kvector(k, tol: float = ROTATION_TOL) -> np.ndarray:
    k = np.asarray(k, dtype=complex)
    if k.shape != (4,):
        raise InvalidInputError(f"k must have 4 components, got shape {k.shape}")
    if not np.all(np.isfinite(k)):
        raise InvalidInputError("k has non-finite components")
    det = k[0] ** 2 - k[1] ** 2 - k[2] ** 2 - k[3] ** 2
    if abs(det - 1.0) > tol:
        raise InvalidInputError(f"k0^2 - k.k = {det!r}, expected 1")
    return k


def sl2c_to_lorentz(k, tol: float = ROTATION_TOL) -> np.ndarray:
    """Lorentz matrix ``L_b^a`` (row ``b``, column ``a``) of ``B = k0 + k_j sigma_j``.

    Parameters
    ----------
    k : sequence of 4 complex
        Covariant components with ``k0^2 - k1^2 - k2^2 - k3^2 = 1``.

    Returns
    -------
    numpy.ndarray
        Real 4x4 matrix.  Raises :class:`InvalidInputError` if the
        imaginary parts fail to cancel (which only happens for invalid k).
    """
    k_lo = check_kvector(k, tol)
    k_up = METRIC @ k_lo
    kc_lo = k_lo.conj()
    kc_up = k_up.conj()
    kk = k_up @ kc_lo
    bracket = (
        -np.eye(4) * kk
        + np.outer(k_lo, kc_up)
        + np.outer(kc_lo, k_up)
        + 1j * np.einsum("canm,n,m->ca", _EPS_C_ANM, k_lo, kc_lo)
    )
    L = METRIC @ bracket
    if np.abs(L.imag).max() > tol:
        raise InvalidInputError("Lorentz matrix has a non-vanishing imaginary part")
    return L.real.copy()
