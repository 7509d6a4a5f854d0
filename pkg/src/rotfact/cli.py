"""Command-line front end.

Each invocation reads one JSON document from stdin and writes one JSON
document to stdout.  Exit status is 0 on success, 2 for invalid input (with
``{"code": ..., "message": ...}`` on stderr) and 1 for internal errors.

Examples::

    echo '[0.5,0.5,0.5,0.5]' | rotfact factor --pattern 121
    echo '[0,0,0]' | rotfact compose --pattern 123
    echo '[[1,0],[0,0]]' | rotfact jones-to-stokes
    rotfact verify-tables --samples 1000 --seed 0
"""

from __future__ import annotations

import argparse
import io
import math
import sys

from pydantic import ValidationError

from . import schemas
from .errors import InvalidInputError, RotfactError
from .factorize import (
    FactorizationPattern,
    compose,
    factor,
    verify_substitution_tables,
)
from .group_maps import so3_to_su2, su2_to_so3
from .polarization import (
    IntAttenuator,
    JonesSpinor,
    PolAttenuator,
    Rotator,
    StokesVector,
    apply_element,
    decompose_rotator,
    jones_to_stokes,
    stokes_to_jones,
)
from .quaternion import UnitQuaternion

PATTERNS = [p.value for p in FactorizationPattern]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--degrees", action="store_true", help="read and write angles in degrees"
    )
    common.add_argument(
        "--tolerance",
        type=_finite_float,
        default=1e-9,
        help="tolerance for input validation and table checks (default 1e-9)",
    )
    pattern = _Parser(add_help=False)
    pattern.add_argument("--pattern", required=True, choices=PATTERNS)

    parser = _Parser(prog="rotfact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("factor", parents=[common, pattern], help="quaternion -> angles")
    sub.add_parser("compose", parents=[common, pattern], help="angles -> quaternion")
    sub.add_parser("su2-to-so3", parents=[common], help="quaternion -> rotation matrix")
    sub.add_parser("so3-to-su2", parents=[common], help="rotation matrix -> quaternion")
    sub.add_parser("jones-to-stokes", parents=[common], help="Jones spinor -> Stokes vector")
    s2j = sub.add_parser("stokes-to-jones", parents=[common], help="Stokes vector -> Jones spinor")
    s2j.add_argument("--gamma", type=_finite_float, default=0.0, help="global phase (default 0)")
    sub.add_parser("apply", parents=[common], help="apply a Mueller element to a Stokes vector")
    sub.add_parser(
        "decompose-rotator", parents=[common, pattern], help="rotation -> elementary rotators"
    )
    vt = sub.add_parser("verify-tables", parents=[common], help="audit the relabeling tables")
    vt.add_argument("--seed", type=int, default=0)
    vt.add_argument("--samples", type=int, default=1000)
    return parser


# -- helpers -----------------------------------------------------------------


def _quaternion(raw, tol: float) -> UnitQuaternion:
    comps = schemas.QUATERNION.validate_python(raw)
    norm = math.sqrt(math.fsum(c * c for c in comps))
    if abs(norm - 1.0) > tol:
        raise InvalidInputError(f"quaternion norm {norm!r} differs from 1 by more than {tol!r}")
    return UnitQuaternion.from_vector(comps, normalize=True)


def _angle_out(x: float, degrees: bool) -> float:
    return math.degrees(x) if degrees else x


def _angle_in(x: float, degrees: bool) -> float:
    return math.radians(x) if degrees else x


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


# -- commands ----------------------------------------------------------------


def _cmd_factor(args, raw):
    res = factor(_quaternion(raw, args.tolerance), args.pattern)
    return {
        "first": _angle_out(res.first, args.degrees),
        "middle": _angle_out(res.middle, args.degrees),
        "last": _angle_out(res.last, args.degrees),
        "degenerate": res.degenerate,
        "sign": res.sign,
    }


def _cmd_compose(args, raw):
    angles = schemas.ANGLES.validate_python(raw)
    if isinstance(angles, schemas.AnglesPayload):
        angles = [angles.first, angles.middle, angles.last]
    angles = [_angle_in(a, args.degrees) for a in angles]
    return list(compose(args.pattern, angles))


def _cmd_su2_to_so3(args, raw):
    return su2_to_so3(_quaternion(raw, args.tolerance))


def _cmd_so3_to_su2(args, raw):
    return list(so3_to_su2(schemas.MATRIX.validate_python(raw), args.tolerance))


def _cmd_jones_to_stokes(args, raw):
    (r1, i1), (r2, i2) = schemas.JONES.validate_python(raw)
    return list(jones_to_stokes(JonesSpinor(complex(r1, i1), complex(r2, i2))))


def _cmd_stokes_to_jones(args, raw):
    s = StokesVector.from_vector(schemas.STOKES.validate_python(raw))
    psi = stokes_to_jones(s, _angle_in(args.gamma, args.degrees))
    return [_complex_pair(psi.psi1), _complex_pair(psi.psi2)]


def _cmd_apply(args, raw):
    payload = schemas.APPLY.validate_python(raw)
    el = payload.element
    if isinstance(el, schemas.PolAttenuatorPayload):
        element = PolAttenuator(el.lam)
    elif isinstance(el, schemas.IntAttenuatorPayload):
        element = IntAttenuator(el.sigma)
    else:
        element = Rotator(el.matrix)
    return list(apply_element(element, StokesVector.from_vector(payload.stokes)))


def _cmd_decompose(args, raw):
    R = schemas.MATRIX.validate_python(raw)
    pattern = FactorizationPattern.parse(args.pattern)
    res = factor(so3_to_su2(R, args.tolerance), pattern)
    elements = decompose_rotator(R, pattern)
    return {
        "pattern": pattern.value,
        "degenerate": res.degenerate,
        "elements": [
            {
                "type": "rotator",
                "axis": e.axis,
                "angle": _angle_out(e.angle, args.degrees),
                "matrix": e.matrix,
            }
            for e in elements
        ],
    }


def _cmd_verify(args, raw):
    if args.samples < 1:
        raise InvalidInputError("--samples must be positive")
    report = verify_substitution_tables(args.samples, args.seed, args.tolerance)
    return report.to_dict()


COMMANDS = {
    "factor": _cmd_factor,
    "compose": _cmd_compose,
    "su2-to-so3": _cmd_su2_to_so3,
    "so3-to-su2": _cmd_so3_to_su2,
    "jones-to-stokes": _cmd_jones_to_stokes,
    "stokes-to-jones": _cmd_stokes_to_jones,
    "apply": _cmd_apply,
    "decompose-rotator": _cmd_decompose,
    "verify-tables": _cmd_verify,
}

# commands that take no stdin document
_NO_INPUT = {"verify-tables"}


def _error(stderr, code: str, message: str):
    stderr.write(schemas.dumps({"code": code, "message": message}) + "\n")


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the process exit status."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    if isinstance(stdin, (bytes, str)):
        stdin = io.StringIO(stdin.decode() if isinstance(stdin, bytes) else stdin)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _error(stderr, "usage", str(exc))
        return 2
    raw = None
    if args.command not in _NO_INPUT:
        try:
            raw = schemas.loads(stdin.read())
        except ValueError as exc:
            _error(stderr, "malformed_json", str(exc))
            return 2
    try:
        out = COMMANDS[args.command](args, raw)
        text = schemas.dumps(out)
    except ValidationError as exc:
        _error(stderr, "invalid_payload", str(exc))
        return 2
    except RotfactError as exc:
        _error(stderr, exc.code, str(exc))
        return 2
    except Exception as exc:  # noqa: BLE001
        _error(stderr, "internal_error", f"{type(exc).__name__}: {exc}")
        return 1
    stdout.write(text + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
