"""Three-angle factorizations of SU(2) elements.

Every unit quaternion ``u`` can be written as a product of three elementary
rotations ``U_i(a) U_j(b) U_k(c)`` (see :func:`rotfact.quaternion.elementary`)
in twelve axis orders:

* six *two-element* (Euler-type) orders ``i j i``: 121, 212, 131, 313, 232, 323;
* six *three-element* orders over distinct axes: 123, 132, 231, 213, 312, 321.

Two closed-form kernels do the work, one for 121 and one for 123.  The other
orders are reduced to these by a signed relabeling of the quaternion
components.  A relabeling row ``(r1, r2, r3)`` says that the kernel sees the
components ``(n0, sgn(r1) n_|r1|, sgn(r2) n_|r2|, sgn(r3) n_|r3|)``, and that
the angle produced for kernel axis ``j`` is multiplied by ``sgn(r_j)``.

Branch conventions
------------------
* two-element middle angle in ``[0, pi]``; outer angles in ``(-pi, pi]``;
* three-element middle angle in ``[-pi/2, pi/2]``; outer angles in ``(-pi, pi]``.

With these ranges the product of the factors reproduces ``u`` only up to a
global sign; :attr:`FactorizationResult.sign` records which.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, InvalidInputError
from .quaternion import (
    UnitQuaternion,
    _elementary_components,
    _product,
    canonicalize,
    normalize_angle,
    sample_many,
)

_AXES = {
    label: tuple(int(ch) for ch in label)
    for label in ("121", "212", "131", "313", "232", "323", "123", "132", "231", "213", "312", "321")
}

#: degeneracy threshold on the kernel denominators
EPS = 1e-9


class PatternKind(enum.Enum):
    TWO_ELEMENT = "two-element"
    THREE_ELEMENT = "three-element"


class FactorizationPattern(enum.Enum):
    """Axis order of a three-factor product, e.g. ``P121`` for ``U1 U2 U1'``."""

    P121 = "121"
    P212 = "212"
    P131 = "131"
    P313 = "313"
    P232 = "232"
    P323 = "323"
    P123 = "123"
    P132 = "132"
    P231 = "231"
    P213 = "213"
    P312 = "312"
    P321 = "321"

    @classmethod
    def parse(cls, value) -> "FactorizationPattern":
        """Accept a pattern, its string label, an int like 121, or an axis triple."""
        if isinstance(value, cls):
            return value
        if isinstance(value, (tuple, list)):
            value = "".join(str(int(v)) for v in value)
        try:
            return cls(str(value))
        except ValueError:
            valid = ", ".join(p.value for p in cls)
            raise InvalidInputError(
                f"unknown factorization pattern {value!r}; expected one of {valid}"
            ) from None

    @property
    def axes(self) -> tuple[int, int, int]:
        return _AXES[self.value]

    @property
    def kind(self) -> PatternKind:
        a = self.axes
        if a[0] == a[2]:
            return PatternKind.TWO_ELEMENT
        return PatternKind.THREE_ELEMENT

    def __str__(self):
        return self.value


TWO_ELEMENT_PATTERNS = tuple(
    p for p in FactorizationPattern if p.kind is PatternKind.TWO_ELEMENT
)
THREE_ELEMENT_PATTERNS = tuple(
    p for p in FactorizationPattern if p.kind is PatternKind.THREE_ELEMENT
)

_P = FactorizationPattern

# Relabeling rows exactly as originally tabulated.  Rows 213 and 321 repeat
# an index and cannot be right; they are kept for the audit only.
TABULATED_ROWS: dict[FactorizationPattern, tuple[int, int, int]] = {
    _P.P232: (2, 3, 1),
    _P.P323: (3, 2, -1),
    _P.P313: (3, 1, 2),
    _P.P131: (1, 3, -2),
    _P.P121: (1, 2, 3),
    _P.P212: (2, 1, -3),
    _P.P123: (1, 2, 3),
    _P.P132: (-1, 3, 2),
    _P.P231: (2, 3, 1),
    _P.P213: (-2, 2, 3),
    _P.P312: (3, 1, 2),
    _P.P321: (-3, 2, 2),
}

# Rows used by the factorization.  Identical to TABULATED_ROWS except for
# 213 and 321, which were re-derived by expanding those products against
# the 123 template (see verify_substitution_tables).
SUBSTITUTIONS: dict[FactorizationPattern, tuple[int, int, int]] = {
    **TABULATED_ROWS,
    _P.P213: (-2, 1, 3),
    _P.P321: (-3, 2, 1),
}


@dataclass(frozen=True)
class FactorizationResult:
    """Angles ``(first, middle, last)`` of a factorization in radians."""

    pattern: FactorizationPattern
    angles: tuple[float, float, float]
    degenerate: bool = False
    sign: int = 1

    @property
    def first(self) -> float:
        return self.angles[0]

    @property
    def middle(self) -> float:
        return self.angles[1]

    @property
    def last(self) -> float:
        return self.angles[2]


# -- kernels -----------------------------------------------------------------


def _kernel_121(n0, n1, n2, n3):
    """Angles of ``U1(a) U2(b) U1(a')``.

    ``a`` and ``a'`` come from atan2 on the numerators of their cosine and
    sine; the common denominator sqrt(n0^2+n1^2) sqrt(n2^2+n3^2) is positive
    and drops out.  ``sin b`` uses the nonnegative root, so ``b`` is in
    [0, pi].
    """
    r = math.hypot(n0, n1)
    s = math.hypot(n2, n3)
    b = math.atan2(2.0 * r * s, (n0 * n0 + n1 * n1) - (n2 * n2 + n3 * n3))
    if r * s < EPS:
        # only a + a' (b ~ 0) or a - a' (b ~ pi) is determined
        if r >= s:
            a = 2.0 * math.atan2(n1, n0)
        else:
            a = 2.0 * math.atan2(-n3, n2)
        return normalize_angle(a), b, 0.0, True
    a = math.atan2(n1 * n2 - n0 * n3, n0 * n2 + n1 * n3)
    a2 = math.atan2(n0 * n3 + n1 * n2, n0 * n2 - n1 * n3)
    return a, b, a2, False


def _kernel_123(n0, n1, n2, n3):
    """Angles of ``U1(a) U2(b) U3(c)`` with ``cos b >= 0``."""
    cos_a = n0 * n0 + n3 * n3 - n1 * n1 - n2 * n2
    sin_a = 2.0 * (n2 * n3 + n0 * n1)
    cos_c = n0 * n0 - n3 * n3 + n1 * n1 - n2 * n2
    sin_c = 2.0 * (n0 * n3 + n1 * n2)
    sin_b = 2.0 * (n0 * n2 - n1 * n3)
    rho_a = math.hypot(cos_a, sin_a)
    rho_c = math.hypot(cos_c, sin_c)
    # both pair magnitudes equal cos b; average them for the root
    b = math.atan2(sin_b, 0.5 * (rho_a + rho_c))
    if max(rho_a, rho_c) < EPS:
        # |sin b| = 1: only a - c (b = pi/2) or a + c (b = -pi/2) survives
        t = 1.0 if sin_b >= 0.0 else -1.0
        a = 2.0 * math.atan2(n1 - t * n3, n0 + t * n2)
        return normalize_angle(a), b, 0.0, True
    a = math.atan2(sin_a, cos_a)
    c = math.atan2(sin_c, cos_c)
    return a, b, c, False


def _relabel(u: UnitQuaternion, row) -> tuple[float, float, float, float]:
    comps = (u.n0, u.n1, u.n2, u.n3)
    return (u.n0,) + tuple(math.copysign(1.0, r) * comps[abs(r)] for r in row)


def _factor_with_row(u: UnitQuaternion, pattern: FactorizationPattern, row):
    # kernels see one representative of {u, -u} so both give identical angles
    m = _relabel(canonicalize(u), row)
    signs = tuple(1.0 if r > 0 else -1.0 for r in row)
    if pattern.kind is PatternKind.TWO_ELEMENT:
        a, b, c, degenerate = _kernel_121(*m)
        flips = (signs[0], signs[1], signs[0])
    else:
        a, b, c, degenerate = _kernel_123(*m)
        flips = signs
    angles = tuple(normalize_angle(f * x) for f, x in zip(flips, (a, b, c)))
    back = _compose_components(pattern.axes, angles)
    dot = sum(x * y for x, y in zip(back, u))
    return FactorizationResult(pattern, angles, degenerate, 1 if dot >= 0.0 else -1)


# -- public operations -------------------------------------------------------


def factor_two_element(u: UnitQuaternion, pattern) -> FactorizationResult:
    """Euler-type factorization ``U_i(a) U_j(b) U_i(a')``.

    Parameters
    ----------
    u : UnitQuaternion
    pattern : FactorizationPattern or str
        One of 121, 212, 131, 313, 232, 323.

    Returns
    -------
    FactorizationResult
        ``b`` lies in [0, pi].  At gimbal lock (``b`` = 0 or pi within
        :data:`EPS`) the last angle is set to 0 and the first carries the
        whole determined rotation.
    """
    pattern = FactorizationPattern.parse(pattern)
    if pattern.kind is not PatternKind.TWO_ELEMENT:
        raise ContractError(f"pattern {pattern} is not a two-element pattern")
    return _factor_with_row(u, pattern, SUBSTITUTIONS[pattern])


def factor_three_element(u: UnitQuaternion, pattern) -> FactorizationResult:
    """Factorization ``U_i(a) U_j(b) U_k(c)`` over three distinct axes.

    ``b`` lies in [-pi/2, pi/2].  When ``|sin b| = 1`` the last angle is set
    to 0 and the degenerate flag is raised.
    """
    pattern = FactorizationPattern.parse(pattern)
    if pattern.kind is not PatternKind.THREE_ELEMENT:
        raise ContractError(f"pattern {pattern} is not a three-element pattern")
    return _factor_with_row(u, pattern, SUBSTITUTIONS[pattern])


def factor(u: UnitQuaternion, pattern) -> FactorizationResult:
    """Dispatch to the two- or three-element factorization by pattern kind."""
    pattern = FactorizationPattern.parse(pattern)
    return _factor_with_row(u, pattern, SUBSTITUTIONS[pattern])


def compose(pattern, angles) -> UnitQuaternion:
    """Left-to-right product of the elementary factors named by ``pattern``."""
    pattern = FactorizationPattern.parse(pattern)
    if len(angles) != 3:
        raise InvalidInputError(f"expected three angles, got {len(angles)}")
    return UnitQuaternion(*_compose_components(pattern.axes, angles))


def _compose_components(axes, angles):
    (i, j, k), (a, b, c) = axes, angles
    first = _product(_elementary_components(i, a), _elementary_components(j, b))
    return _product(first, _elementary_components(k, c))


def recompose(result: FactorizationResult) -> UnitQuaternion:
    return compose(result.pattern, result.angles)


# -- substitution audit ------------------------------------------------------


@dataclass
class RowCheck:
    pattern: FactorizationPattern
    row: tuple[int, int, int]
    max_error: float
    passed: bool


@dataclass
class PatternAudit:
    pattern: FactorizationPattern
    tabulated: RowCheck
    corrected: RowCheck | None = None

    @property
    def passed(self) -> bool:
        best = self.corrected if self.corrected is not None else self.tabulated
        return best.passed

    @property
    def working_row(self) -> tuple[int, int, int]:
        best = self.corrected if self.corrected is not None else self.tabulated
        return best.row


@dataclass
class SubstitutionReport:
    samples: int
    seed: int
    tolerance: float
    patterns: list[PatternAudit] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.patterns)

    @property
    def failed_tabulated(self) -> list[FactorizationPattern]:
        return [p.pattern for p in self.patterns if not p.tabulated.passed]

    @property
    def corrections(self) -> dict[FactorizationPattern, tuple[int, int, int]]:
        return {p.pattern: p.corrected.row for p in self.patterns if p.corrected}

    def to_dict(self) -> dict:
        def check(c: RowCheck | None):
            if c is None:
                return None
            return {"row": list(c.row), "max_error": c.max_error, "passed": c.passed}

        return {
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "corrections": {k.value: list(v) for k, v in self.corrections.items()},
            "patterns": [
                {
                    "pattern": p.pattern.value,
                    "tabulated": check(p.tabulated),
                    "corrected": check(p.corrected),
                    "passed": p.passed,
                }
                for p in self.patterns
            ],
        }


def _round_trip_error(samples, pattern, row) -> float:
    worst = 0.0
    for u in samples:
        res = _factor_with_row(u, pattern, row)
        back = compose(pattern, res.angles)
        err = min(
            max(abs(x - y) for x, y in zip(back, u)),
            max(abs(x + y) for x, y in zip(back, u)),
        )
        worst = max(worst, err)
    return worst


def _candidate_rows():
    for perm in itertools.permutations((1, 2, 3)):
        for signs in itertools.product((1, -1), repeat=3):
            yield tuple(s * p for s, p in zip(signs, perm))


def derive_row(pattern, samples, tolerance: float = 1e-9, reference=None):
    """Search the 48 signed relabelings for one that round-trips ``pattern``.

    Among the passing rows, the one agreeing with ``reference`` in the most
    positions wins (ties go to the first found).  Returns ``None`` if no row
    passes.
    """
    pattern = FactorizationPattern.parse(pattern)
    reference = reference or TABULATED_ROWS[pattern]
    best, best_score = None, -1
    for row in _candidate_rows():
        if _round_trip_error(samples, pattern, row) >= tolerance:
            continue
        score = sum(x == y for x, y in zip(row, reference))
        if score > best_score:
            best, best_score = row, score
    return best


def verify_substitution_tables(
    samples: int = 1000, seed: int = 0, tolerance: float = 1e-9
) -> SubstitutionReport:
    """Check every relabeling row by a factor-then-recompose round trip.

    Rows that fail as tabulated get a replacement from :func:`derive_row`,
    which is then checked on the full sample set.
    """
    rng = np.random.default_rng(seed)
    qs = sample_many(rng, samples)
    report = SubstitutionReport(samples, seed, tolerance)
    for pattern in FactorizationPattern:
        row = TABULATED_ROWS[pattern]
        err = _round_trip_error(qs, pattern, row)
        audit = PatternAudit(pattern, RowCheck(pattern, row, err, err < tolerance))
        if not audit.tabulated.passed:
            fixed = derive_row(pattern, qs[:32], tolerance)
            if fixed is not None:
                ferr = _round_trip_error(qs, pattern, fixed)
                audit.corrected = RowCheck(pattern, fixed, ferr, ferr < tolerance)
        report.patterns.append(audit)
    return report
