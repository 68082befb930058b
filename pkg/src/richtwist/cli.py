"""Command-line interface.

Subcommands: ``twist``, ``ansatz``, ``positroid``, ``verify``,
``fixed-point`` and ``wiring``.  JSON output is sorted and deterministic;
errors are printed as a JSON object on stdout with a nonzero exit status
(1 verification failure, 2 invalid input, 3 precondition).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import Any

from .chamber import ansatz_monomial, ansatz_recover_t, build_wiring, chamber_minor, f_function, render_wiring
from .errors import InputError, ParseError, RichTwistError
from .field import Certificate, RatQ, is_nonneg_canonical, parse_scalar, scalar_str
from .fixedpoint import fixed_point_report
from .matgroup import Mat, lift
from .positroid import musp_twist, plucker_vector, project, verify_musp_cd
from .twist import (
    RichPoint,
    gcap,
    mr_parametrize,
    right_factors,
    twist_left,
    twist_right,
    y0_formula,
    y_left,
    z_elements,
)
from .verify import all_pass, matrix_twist, verify_exhaustive, verify_instance
from .weyl import PdsData, Perm, parse_perm, parse_word, pds

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


# job specs ------------------------------------------------------------------------

def load_spec(args: argparse.Namespace) -> dict[str, Any]:
    """Merge a JSON JobSpec file (``--spec``) with command-line flags."""
    spec: dict[str, Any] = {}
    if getattr(args, "spec", None):
        try:
            with open(args.spec, encoding="utf-8") as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read job spec: {exc}") from exc
        if not isinstance(spec, dict):
            raise ParseError("job spec must be a JSON object")
    for key in ("n", "v", "word", "params", "matrix", "k"):
        value = getattr(args, key, None)
        if value is not None:
            spec[key] = value
    flags = dict(spec.get("flags", {}))
    if getattr(args, "float", False):
        flags["float"] = True
    spec["flags"] = flags
    return spec


def spec_pds(spec: dict[str, Any]) -> PdsData:
    if "word" not in spec:
        raise ParseError("a job needs a reduced word (--word)")
    word = parse_word(spec["word"])
    n = spec.get("n")
    if n is None:
        raise ParseError("a job needs n (--n)")
    n = int(n)
    v = parse_perm(spec.get("v", "id"), n)
    return pds(v, word)


def spec_params(spec: dict[str, Any], P: PdsData) -> dict[int, Any] | None:
    """``None`` means symbolic; otherwise exact (or float with the float flag)."""
    raw = spec.get("params")
    if raw is None or raw == "symbolic":
        return None
    kind = "float" if spec["flags"].get("float") else "exact"
    if isinstance(raw, dict):
        items = list(raw.items())
    elif isinstance(raw, (list, tuple)):
        items = list(zip((f"t{r}" for r in P.jv), raw))
        if len(raw) != len(P.jv):
            raise ParseError(f"expected {len(P.jv)} parameters, got {len(raw)}")
    else:
        text = str(raw).strip()
        if "=" in text:
            items = [tuple(part.split("=", 1)) for part in text.split(",") if part.strip()]
        else:
            values = [part for part in text.split(",") if part.strip()]
            if len(values) != len(P.jv):
                raise ParseError(f"expected {len(P.jv)} parameters, got {len(values)}")
            items = list(zip((f"t{r}" for r in P.jv), values))
    out = {}
    for name, value in items:
        name = str(name).strip()
        if not name.startswith("t") or not name[1:].isdigit():
            raise ParseError(f"bad parameter name {name!r}")
        out[int(name[1:])] = parse_scalar(str(value).strip(), kind)
    return out


def spec_matrix(spec: dict[str, Any]) -> Mat:
    raw = spec["matrix"]
    kind = "float" if spec["flags"].get("float") else "exact"
    if isinstance(raw, str):
        raw = [row.split(",") for row in raw.split(";")]
    return Mat.parse([[str(x).strip() for x in row] for row in raw], kind)


# commands -------------------------------------------------------------------------

def _certificates(m: Mat) -> list[list[str]] | None:
    if not any(isinstance(x, RatQ) for row in m.rows for x in row):
        return None
    return [[is_nonneg_canonical(x).value if isinstance(x, RatQ) else _const_cert(x) for x in row] for row in m.rows]


def _const_cert(x: Any) -> str:
    return Certificate.CERTIFIED_SF.value if x >= 0 else Certificate.INCONCLUSIVE.value


def cmd_twist(spec: dict[str, Any]) -> dict[str, Any]:
    if "matrix" in spec:
        word = parse_word(spec["word"]) if "word" in spec else None
        out = matrix_twist(spec_matrix(spec), word)
        return {key: (val.to_json() if isinstance(val, Mat) else val) for key, val in out.items()}
    P = spec_pds(spec)
    p = mr_parametrize(P, spec_params(spec, P))
    f = right_factors(p)
    gc = gcap(p)
    z, z_ing = z_elements(p)
    right = twist_right(p).rep
    mats = {
        "g": p.g,
        "gcap": gc,
        "udl_u": f.y_plus,
        "udl_d": f.y0,
        "udl_l": f.y_minus,
        "y_right": f.y_plus,
        "vdot_y_right": lift(p.v) @ f.y_plus,
        "twist": right,
        "y_left": y_left(gc, p.w),
        "left_twist": twist_left(p).rep,
        "y0": f.y0,
        "y0_formula": y0_formula(P, p.params),
        "z": z,
        "z_ing": z_ing,
    }
    out: dict[str, Any] = _instance_header(p)
    out.update({name: m.to_json() for name, m in mats.items()})
    if spec["flags"].get("certificates", True):
        certs = {name: _certificates(mats[name]) for name in ("twist", "left_twist", "y_right", "y_left")}
        out["certificates"] = {k: c for k, c in certs.items() if c is not None}
    return out


def _instance_header(p: RichPoint) -> dict[str, Any]:
    return {
        "n": p.n,
        "v": str(p.v),
        "w": str(p.w),
        "word": list(p.pds.word),
        "J": list(p.pds.jv),
        "params": {f"t{r}": scalar_str(x) for r, x in sorted(p.params.items())},
    }


def cmd_ansatz(spec: dict[str, Any], side: str) -> dict[str, Any]:
    P = spec_pds(spec)
    p = mr_parametrize(P, spec_params(spec, P))
    d = build_wiring(P)
    y = right_factors(p).y_plus if side == "right" else y_left(gcap(p), p.w)
    recovered = ansatz_recover_t(P, side, y, d)
    out = _instance_header(p)
    out["side"] = side
    out["y"] = y.to_json()
    out["recovered"] = {f"t{r}": scalar_str(x) for r, x in sorted(recovered.items())}
    out["recovered_matches"] = recovered == p.params
    out["f"] = {
        str(j): {"value": scalar_str(f_function(P, j, side, y)), "monomial": scalar_str(ansatz_monomial(P, side, j, p.params))}
        for j in range(1, P.m + 1)
    }
    out["chambers"] = [{**c.to_json(), "minor": scalar_str(chamber_minor(d, c, side, y))} for c in d.chambers]
    return out


def cmd_positroid(spec: dict[str, Any], k: int, with_pluckers: bool) -> tuple[dict[str, Any], int]:
    P = spec_pds(spec)
    p = mr_parametrize(P, spec_params(spec, P))
    report = verify_musp_cd(p, k)
    x = project(p.flag(), k)
    out = _instance_header(p)
    out.update({"k": k, "M": x.M.to_json(), "musp_right": musp_twist(x, "right").M.to_json()})
    out["musp_left"] = musp_twist(x, "left").M.to_json()
    out["commutes"] = report
    if with_pluckers:
        out["pluckers"] = {"".join(map(str, F)): scalar_str(val) for F, val in plucker_vector(x).items()}
    return out, EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_verify(scope: str, spec: dict[str, Any]) -> tuple[dict[str, Any], int]:
    if scope == "s3_exhaustive":
        report = verify_exhaustive(3)
    elif scope == "s4_exhaustive":
        report = verify_exhaustive(4)
    else:
        report = verify_instance(spec_pds(spec))
        report["scope"] = "instance"
    return report, EXIT_OK if all_pass(report) else EXIT_FAIL


def cmd_fixed_point(n: int, tol: float, starts: int, spread: float, seed: int) -> dict[str, Any]:
    report = fixed_point_report(n, tol, starts=starts, spread=spread, seed=seed)
    report["status"] = "conjecture-consistent" if report["conjecture"]["within_tol"] else "ToleranceNotMet"
    return report


def cmd_wiring(spec: dict[str, Any], fmt: str, labels: str) -> str:
    P = spec_pds(spec)
    d = build_wiring(P)
    if fmt == "json":
        return _dumps({"crossings": [{"r": c.r, "height": c.height, "dotted": c.dotted} for c in d.crossings],
                       "chambers": [c.to_json() for c in d.chambers]})
    g = None
    if labels == "minors":
        g = right_factors(mr_parametrize(P, spec_params(spec, P))).y_plus
    return render_wiring(d, fmt, labels, g)


# plumbing -------------------------------------------------------------------------

def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="richtwist", description="Twist maps of open Richardson varieties in SL_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--spec", help="JSON job spec file")
        p.add_argument("--n", type=int)
        p.add_argument("--v", help="one-line [2,3,1,4], word s1*s2, id or w0")
        p.add_argument("--word", help="reduced word for w, e.g. 2,1,2,3,2,1")
        p.add_argument("--params", help="symbolic (default), t1=2,t3=1/2 or a list in J order")
        p.add_argument("--float", action="store_true", help="evaluate numeric parameters in floating point")

    p = sub.add_parser("twist", help="right and left twists with all auxiliary matrices")
    instance_flags(p)
    p.add_argument("--matrix", help="twist an explicit representative: rows separated by ';'")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("ansatz", help="Chamber Ansatz recovery of the parameters")
    instance_flags(p)
    p.add_argument("--side", choices=["right", "left"], default="right")

    p = sub.add_parser("positroid", help="positroid twists and the projection comparison")
    instance_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pluckers", action="store_true", help="include all Plucker coordinates")

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument("scope", choices=["s3_exhaustive", "s4_exhaustive", "instance"])
    instance_flags(p)

    p = sub.add_parser("fixed-point", help="numeric fixed-point experiments")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--starts", type=int, default=10_000)
    p.add_argument("--spread", type=float, default=3.0, help="half-width of the search box in log coordinates")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("wiring", help="render the wiring diagram")
    instance_flags(p)
    p.add_argument("--format", choices=["ascii", "svg", "json"], default="ascii")
    p.add_argument("--labels", choices=["none", "chamber_sets", "minors"], default="none")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[str, int]:
    """Parse and execute; returns (stdout text, exit status)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fixed-point":
            return _dumps(cmd_fixed_point(args.n, args.tol, args.starts, args.spread, args.seed)), EXIT_OK
        spec = load_spec(args)
        if args.command == "twist":
            return _dumps(cmd_twist(spec)), EXIT_OK
        if args.command == "ansatz":
            return _dumps(cmd_ansatz(spec, args.side)), EXIT_OK
        if args.command == "positroid":
            out, status = cmd_positroid(spec, args.k, args.pluckers)
            return _dumps(out), status
        if args.command == "verify":
            out, status = cmd_verify(args.scope, spec)
            return _dumps(out), status
        return cmd_wiring(spec, args.format, args.labels), EXIT_OK
    except RichTwistError as exc:
        return _dumps(exc.to_json()), exc.status
    except (ValueError, KeyError) as exc:
        err = InputError(str(exc))
        return _dumps(err.to_json()), EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    text, status = run(argv)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
