import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from rotfact import (
    ContractError,
    FactorizationPattern,
    InvalidInputError,
    UnitQuaternion,
    compose,
    elementary,
    factor,
    factor_three_element,
    factor_two_element,
    recompose,
    verify_substitution_tables,
)
from rotfact.factorize import (
    EPS,
    SUBSTITUTIONS,
    TABULATED_ROWS,
    THREE_ELEMENT_PATTERNS,
    TWO_ELEMENT_PATTERNS,
    FactorizationResult,
    PatternKind,
    _relabel,
    derive_row,
)
from rotfact.quaternion import sample_many

from .conftest import angles, unit_quaternions
from .oracles import pauli_product

PI = math.pi
R2 = math.sqrt(2) / 2
ALL = list(FactorizationPattern)
patterns = st.sampled_from(ALL)


def signed_error(back, u):
    a = max(abs(x - y) for x, y in zip(back, u))
    b = max(abs(x + y) for x, y in zip(back, u))
    return min(a, b)


def assert_angles(result, expected, tol=1e-12):
    assert result.angles == pytest.approx(expected, abs=tol)


# -- pattern type ------------------------------------------------------------


def test_twelve_patterns():
    assert len(ALL) == 12
    assert {p.value for p in TWO_ELEMENT_PATTERNS} == {"121", "212", "131", "313", "232", "323"}
    assert {p.value for p in THREE_ELEMENT_PATTERNS} == {"123", "132", "231", "213", "312", "321"}


@pytest.mark.parametrize("bad", ["111", "122", "1234", "", "abc", 124, (1, 1, 2)])
def test_pattern_rejects_invalid(bad):
    with pytest.raises(InvalidInputError):
        FactorizationPattern.parse(bad)


def test_pattern_parse_forms():
    p = FactorizationPattern.P313
    assert FactorizationPattern.parse("313") is p
    assert FactorizationPattern.parse(313) is p
    assert FactorizationPattern.parse((3, 1, 3)) is p
    assert p.axes == (3, 1, 3) and p.kind is PatternKind.TWO_ELEMENT


def test_kind_contract():
    u = UnitQuaternion(0.5, 0.5, 0.5, 0.5)
    with pytest.raises(ContractError):
        factor_two_element(u, "123")
    with pytest.raises(ContractError):
        factor_three_element(u, "121")


# -- two-element -------------------------------------------------------------


def test_121_pure_middle_rotation():
    assert_angles(factor_two_element(elementary(2, PI / 2), "121"), (0.0, PI / 2, 0.0))


def test_121_half_quaternion():
    # U2(pi/2) U1(pi/2) = (1 + i s1 + i s2 + i s3)/2
    res = factor_two_element(UnitQuaternion(0.5, 0.5, 0.5, 0.5), "121")
    assert_angles(res, (0.0, PI / 2, PI / 2))
    assert pauli_product(tuple(elementary(2, PI / 2)), tuple(elementary(1, PI / 2))) == pytest.approx(
        [0.5] * 4, abs=1e-15
    )


def test_121_compose_then_factor():
    u = compose("121", (PI / 3, PI / 2, PI / 4))
    res = factor_two_element(u, "121")
    assert_angles(res, (PI / 3, PI / 2, PI / 4))
    assert not res.degenerate and res.sign == 1


def test_121_identity_is_degenerate():
    res = factor_two_element(UnitQuaternion.identity(), "121")
    assert_angles(res, (0.0, 0.0, 0.0), tol=0)
    assert res.degenerate


def test_121_middle_half_angle_assignment():
    # cos(b/2) = sqrt(n0^2 + n1^2), sin(b/2) = sqrt(n2^2 + n3^2)
    for u in sample_many(np.random.default_rng(3), 200):
        b = factor_two_element(u, "121").middle
        assert math.cos(b / 2) == pytest.approx(math.hypot(u.n0, u.n1), abs=1e-12)
        assert math.sin(b / 2) == pytest.approx(math.hypot(u.n2, u.n3), abs=1e-12)


def test_121_alternative_outer_formulas_agree():
    # solve for (x0, x1) from a' through n0, n1 and compare with the returned a
    for u in sample_many(np.random.default_rng(4), 200):
        a, _, a2 = factor_two_element(u, "121").angles
        xp0, xp1 = math.cos(a2 / 2), math.sin(a2 / 2)
        r = math.hypot(u.n0, u.n1)
        x0 = (u.n0 * xp0 + u.n1 * xp1) / r
        x1 = (u.n1 * xp0 - u.n0 * xp1) / r
        alt = 2 * math.atan2(x1, x0)
        assert math.remainder(alt - a, 2 * PI) == pytest.approx(0.0, abs=1e-9)


# -- three-element -----------------------------------------------------------


def test_123_pure_middle_rotation():
    assert_angles(factor_three_element(elementary(2, PI / 3), "123"), (0.0, PI / 3, 0.0))


def test_123_half_quaternion():
    res = factor_three_element(UnitQuaternion(0.5, 0.5, 0.5, 0.5), "123")
    assert_angles(res, (PI / 2, 0.0, PI / 2))


def test_123_branch_absorbs_large_middle_angle():
    res = factor_three_element(elementary(2, 2 * PI / 3), "123")
    assert_angles(res, (PI, PI / 3, PI))
    assert signed_error(recompose(res), elementary(2, 2 * PI / 3)) < 1e-12


@pytest.mark.parametrize("sign", [1, -1])
def test_123_gimbal_lock(sign):
    u = compose("123", (0.7, sign * PI / 2, -0.4))
    res = factor_three_element(u, "123")
    assert res.degenerate
    assert res.last == 0.0
    assert signed_error(recompose(res), u) < 1e-8


# -- recompose ---------------------------------------------------------------


def test_recompose_examples():
    r = FactorizationResult(FactorizationPattern.P121, (0.0, PI / 2, 0.0))
    assert tuple(recompose(r)) == pytest.approx((R2, 0, R2, 0), abs=1e-15)
    r = FactorizationResult(FactorizationPattern.P123, (PI / 2, 0.0, PI / 2))
    assert tuple(recompose(r)) == pytest.approx((0.5, 0.5, 0.5, 0.5), abs=1e-15)


@given(angles, angles, angles)
def test_recompose_123_componentwise(a, b, c):
    x0, x1 = math.cos(a / 2), math.sin(a / 2)
    y0, y2 = math.cos(b / 2), math.sin(b / 2)
    z0, z3 = math.cos(c / 2), math.sin(c / 2)
    expected = (
        x0 * y0 * z0 + x1 * y2 * z3,
        -x0 * y2 * z3 + x1 * y0 * z0,
        x0 * y2 * z0 + x1 * y0 * z3,
        x0 * y0 * z3 - x1 * y2 * z0,
    )
    assert tuple(compose("123", (a, b, c))) == pytest.approx(expected, abs=1e-12)


@given(patterns, angles, angles, angles)
def test_compose_matches_pauli_product(pattern, a, b, c):
    i, j, k = pattern.axes
    ref = pauli_product(tuple(elementary(i, a)), tuple(elementary(j, b)), tuple(elementary(k, c)))
    assert tuple(compose(pattern, (a, b, c))) == pytest.approx(ref, abs=1e-12)


# -- properties --------------------------------------------------------------


@given(unit_quaternions, patterns)
def test_round_trip(u, pattern):
    res = factor(u, pattern)
    back = recompose(res)
    target = u if res.sign == 1 else -u
    # pinning the last angle to 0 inside the lock band costs up to ~2 eps
    tol = 1e-8 if res.degenerate else 1e-9
    assert max(abs(x - y) for x, y in zip(back, target)) < tol


@given(unit_quaternions, patterns)
def test_sign_invariance(u, pattern):
    assert factor(-u, pattern).angles == factor(u, pattern).angles


@given(unit_quaternions, patterns)
def test_branch_ranges(u, pattern):
    a, b, c = factor(u, pattern).angles
    for x in (a, c):
        assert -PI < x <= PI
    if pattern.kind is PatternKind.TWO_ELEMENT:
        assert 0.0 <= b <= PI
    else:
        assert -PI / 2 <= b <= PI / 2


@given(unit_quaternions)
def test_identity_of_pair_magnitudes(u):
    n0, n1, n2, n3 = u
    lhs = (n0**2 + n3**2 - n1**2 - n2**2) ** 2 + (2 * n2 * n3 + 2 * n0 * n1) ** 2
    rhs = (n0**2 - n3**2 + n1**2 - n2**2) ** 2 + (2 * n0 * n3 + 2 * n1 * n2) ** 2
    assert lhs == pytest.approx(rhs, abs=1e-12)


@given(unit_quaternions)
def test_middle_angle_pythagoras(u):
    n0, n1, n2, n3 = u
    cos_b = n0**2 + n1**2 - n2**2 - n3**2
    sin_b = 2 * math.hypot(n0, n1) * math.hypot(n2, n3)
    assert sin_b**2 + cos_b**2 == pytest.approx(1.0, abs=1e-12)


def _near_lock_inputs(rng):
    out = []
    for p in TWO_ELEMENT_PATTERNS:
        i, j, _ = p.axes
        for b in (0.0, 1e-13, PI, PI - 1e-13):
            out.append((p, compose(p, (rng.uniform(-PI, PI), b, rng.uniform(-PI, PI)))))
    for p in THREE_ELEMENT_PATTERNS:
        for b in (PI / 2, -PI / 2, PI / 2 - 1e-13):
            out.append((p, compose(p, (rng.uniform(-PI, PI), b, rng.uniform(-PI, PI)))))
    return out


def test_degenerate_flag_matches_denominator():
    rng = np.random.default_rng(11)
    cases = _near_lock_inputs(rng) + [(p, u) for u in sample_many(rng, 50) for p in ALL]
    for p, u in cases:
        res = factor(u, p)
        assert all(math.isfinite(x) for x in res.angles)
        m0, m1, m2, m3 = _relabel(u, SUBSTITUTIONS[p])
        if p.kind is PatternKind.TWO_ELEMENT:
            denom = math.hypot(m0, m1) * math.hypot(m2, m3)
        else:
            denom = max(
                math.hypot(m0**2 + m3**2 - m1**2 - m2**2, 2 * (m2 * m3 + m0 * m1)),
                math.hypot(m0**2 - m3**2 + m1**2 - m2**2, 2 * (m0 * m3 + m1 * m2)),
            )
        assert res.degenerate == (denom < EPS)
        assert signed_error(recompose(res), u) < 1e-8


# -- substitution tables -----------------------------------------------------


@pytest.fixture(scope="module")
def report():
    return verify_substitution_tables(samples=1000, seed=0)


def test_audit_passes_after_correction(report):
    assert report.passed
    assert len(report.patterns) == 12


def test_audit_flags_exactly_two_rows(report):
    assert {p.value for p in report.failed_tabulated} == {"213", "321"}
    assert {k.value: v for k, v in report.corrections.items()} == {
        "213": (-2, 1, 3),
        "321": (-3, 2, 1),
    }


def test_working_rows_are_the_audited_ones(report):
    for audit in report.patterns:
        assert SUBSTITUTIONS[audit.pattern] == audit.working_row


def test_derive_row_returns_none_without_candidates():
    qs = sample_many(np.random.default_rng(0), 8)
    assert derive_row("123", qs, tolerance=-1.0) is None


# symbolic check: expand the pattern's product and compare with the kernel
# template after relabeling, as polynomial identities in the half-angle
# cosines and sines.
_x0, _x1, _y0, _y1, _z0, _z1 = sp.symbols("x0 x1 y0 y1 z0 z1")
_SIG = [
    None,
    sp.Matrix([[0, 1], [1, 0]]),
    sp.Matrix([[0, -sp.I], [sp.I, 0]]),
    sp.Matrix([[1, 0], [0, -1]]),
]


def _factor_matrix(c, s, axis):
    return c * sp.eye(2) + sp.I * s * _SIG[axis]


def _components(M):
    n0 = sp.expand(M.trace() / 2)
    return [n0] + [sp.expand((M * _SIG[k]).trace() / (2 * sp.I)) for k in (1, 2, 3)]


def _template(kind, X, Y, Z):
    (X0, X1), (Y0, Y1), (Z0, Z1) = X, Y, Z
    if kind is PatternKind.TWO_ELEMENT:
        # U1 U2 U1'
        return [
            Y0 * (X0 * Z0 - X1 * Z1),
            Y0 * (X1 * Z0 + X0 * Z1),
            Y1 * (X0 * Z0 + X1 * Z1),
            Y1 * (-X1 * Z0 + X0 * Z1),
        ]
    # U1 U2 U3
    return [
        X0 * Y0 * Z0 + X1 * Y1 * Z1,
        -X0 * Y1 * Z1 + X1 * Y0 * Z0,
        X0 * Y1 * Z0 + X1 * Y0 * Z1,
        X0 * Y0 * Z1 - X1 * Y1 * Z0,
    ]


def _row_matches_expansion(pattern, row):
    i, j, k = pattern.axes
    M = _factor_matrix(_x0, _x1, i) * _factor_matrix(_y0, _y1, j) * _factor_matrix(_z0, _z1, k)
    n = _components(M)
    s = [1 if r > 0 else -1 for r in row]
    if pattern.kind is PatternKind.TWO_ELEMENT:
        flips = (s[0], s[1], s[0])
    else:
        flips = s
    X, Y, Z = (_x0, flips[0] * _x1), (_y0, flips[1] * _y1), (_z0, flips[2] * _z1)
    t = _template(pattern.kind, X, Y, Z)
    if sp.expand(t[0] - n[0]) != 0:
        return False
    return all(sp.expand(t[m + 1] - s[m] * n[abs(r)]) == 0 for m, r in enumerate(row))


@pytest.mark.parametrize("pattern", ALL, ids=str)
def test_working_row_matches_symbolic_expansion(pattern):
    assert _row_matches_expansion(pattern, SUBSTITUTIONS[pattern])


@pytest.mark.parametrize("label", ["213", "321"])
def test_tabulated_row_fails_symbolic_expansion(label):
    pattern = FactorizationPattern(label)
    assert not _row_matches_expansion(pattern, TABULATED_ROWS[pattern])


def test_templates_match_expansion_directly():
    for kind, axes in ((PatternKind.TWO_ELEMENT, (1, 2, 1)), (PatternKind.THREE_ELEMENT, (1, 2, 3))):
        M = _factor_matrix(_x0, _x1, axes[0]) * _factor_matrix(_y0, _y1, axes[1]) * _factor_matrix(_z0, _z1, axes[2])
        t = _template(kind, (_x0, _x1), (_y0, _y1), (_z0, _z1))
        assert [sp.expand(a - b) for a, b in zip(t, _components(M))] == [0, 0, 0, 0]
