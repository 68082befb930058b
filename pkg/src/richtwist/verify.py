"""Named identity checks over one instance or an exhaustive family.

Each check returns a list of failures; an empty list means the identity
holds exactly.  A failure records the offending quantity as a canonical
string so that reports are deterministic.

>>> from richtwist.weyl import Perm, pds
>>> report = verify_instance(pds(Perm.identity(3), (1, 2, 1)))
>>> all(entry["pass"] for entry in report["identities"].values())
True
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import Any

from .chamber import (
    ansatz_monomial,
    ansatz_recover_t,
    ansatz_recover_t_cartan,
    build_wiring,
    chamber_minor,
    f_function,
    monomial,
    wedge_exponents,
)
from .errors import PoleAtPoint, WrongCell, ZeroMinor, ZeroParameter
from .field import RatQ, is_nonneg_canonical, scalar_str
from .matgroup import Mat, bruhat_cells, minor, pattern_check, right_aligned_flag_minors, top_aligned_flag_minors
from .positroid import verify_musp_cd
from .twist import (
    FlagPoint,
    RichPoint,
    _nv_rep,
    chiral,
    chiral_inv,
    gcap,
    mr_parametrize,
    right_factors,
    twist_left,
    twist_right,
    y0_formula,
    y_left,
    y_right,
    z_elements,
)
from .weyl import PdsData, bruhat_pairs, grassmannian_check, pds

IDENTITIES = (
    "chiral_positivity",
    "twist_inverse",
    "ansatz_right",
    "ansatz_left",
    "ansatz_chambers",
    "ansatz_z",
    "y0_formula",
    "chamber_duality",
    "positroid_twist",
    "ing_normalization",
)

Failure = dict[str, str]


def _neq(label: str, got: Any, want: Any) -> list[Failure]:
    if got == want:
        return []
    return [{"at": label, "got": _show(got), "want": _show(want)}]


def _show(x: Any) -> str:
    if isinstance(x, dict):
        return "{" + ", ".join(f"t{r}: {scalar_str(v)}" for r, v in sorted(x.items())) + "}"
    if isinstance(x, Mat):
        return str(x.to_strings())
    return scalar_str(x)


def _not_sf(label: str, values: Iterable[Any]) -> list[Failure]:
    out = []
    for x in values:
        ok = is_nonneg_canonical(x) if isinstance(x, RatQ) else x >= 0
        if not ok:
            out.append({"at": label, "got": scalar_str(x), "want": "subtraction-free"})
    return out


def _chiral_positivity(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    gc = ctx["gcap"]
    bad = []
    if not pattern_check(gc, p.v, "NvN"):
        bad.append({"at": "gcap pattern", "got": _show(gc), "want": "N v N"})
    bad += _neq("chiral round trip", chiral(chiral_inv(p.flag(), p.v), p.v), p.flag())
    bad += _not_sf("gcap right-aligned", right_aligned_flag_minors(gc).values())
    bad += _not_sf("gcap top-aligned", top_aligned_flag_minors(gc).values())
    return bad


def _twist_inverse(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    x = p.flag()
    right = twist_right(p)
    bad = _neq("left after right", twist_left(right, p.v, p.w), x)
    bad += _neq("right after left", twist_right(twist_left(p), p.v, p.w), x)
    bad += _not_sf("twist right-aligned", right_aligned_flag_minors(right.rep).values())
    return bad


def _ansatz_side(p: RichPoint, ctx: dict[str, Any], side: str) -> list[Failure]:
    P, t = p.pds, p.params
    y = ctx["y_right"] if side == "right" else ctx["y_left"]
    bad = _neq(f"recover t from {side}", ansatz_recover_t(P, side, y, ctx["diagram"]), t)
    bad += _neq(f"recover t from {side}, generalized minors", ansatz_recover_t_cartan(P, side, y), t)
    for j in range(1, P.m + 1):
        want = ansatz_monomial(P, side, j, t)
        bad += _neq(f"f_{j} ({side})", f_function(P, j, side, y), want)
        bad += _neq(f"wedge vs pairing exponents at {j} ({side})", ansatz_monomial(P, side, j, t, "wedge"), want)
    return bad


def _ansatz_chambers(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    d, t = ctx["diagram"], p.params
    bad = []
    for c in d.chambers:
        bad += _neq(f"right chamber {c.index}", chamber_minor(d, c, "right", ctx["y_right"]), monomial(t, wedge_exponents(d, "right", c)))
        bad += _neq(f"left chamber {c.index}", chamber_minor(d, c, "left", ctx["y_left"]), monomial(t, wedge_exponents(d, "left", c)))
    return bad


def _ansatz_z(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    P, t = p.pds, p.params
    zt = ctx["z"].T
    bad = _neq("recover t from z^T", ansatz_recover_t(P, "left", zt, ctx["diagram"]), t)
    for j in range(1, P.m + 1):
        bad += _neq(f"f_{j} (z^T)", f_function(P, j, "left", zt), ansatz_monomial(P, "left", j, t))
    return bad


def _y0(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    return _neq("y0", ctx["factors"].y0, y0_formula(p.pds, p.params))


def _chamber_duality(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    d, f = ctx["diagram"], ctx["factors"]
    y = f.y_plus @ f.y0
    zt = ctx["z"].T
    bad = []
    for c in d.chambers:
        bad += _neq(f"chamber {c.index}", chamber_minor(d, c, "right", y), chamber_minor(d, c, "left", zt))
    return bad


def _positroid(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    bad = []
    for k in range(1, p.n):
        if grassmannian_check(p.w, k):
            report = verify_musp_cd(p, k)
            for side in ("right", "left"):
                if not report[side]["pass"]:
                    bad.append({"at": f"k={k} {side}", "got": str(report[side].get("witness")), "want": "proportional"})
    return bad


def _ing(p: RichPoint, ctx: dict[str, Any]) -> list[Failure]:
    P = p.pds
    zit = ctx["z_ing"].T
    bad = []
    for r in range(1, P.m + 1):
        bad += _neq(f"f'_{r}", f_function(P, r, "left_prime", zit), f_function(P, r, "right", ctx["y_right"]))
    bad += [{"at": f"z_ing minor {i}", "got": scalar_str(x), "want": "1"} for i, x in ing_minors(p, ctx["z_ing"]).items() if x != 1]
    return bad


def ing_minors(p: RichPoint, z_ing: Mat) -> dict[int, Any]:
    """Minors of z_ing^T on rows w[i+1..n] and columns v[i+1..n], i = 1..n-1."""
    n = p.n
    return {
        i: minor(z_ing.T, sorted(p.w.image(range(i + 1, n + 1))), sorted(p.v.image(range(i + 1, n + 1))))
        for i in range(1, n)
    }


CHECKS: dict[str, Callable[[RichPoint, dict[str, Any]], list[Failure]]] = {
    "chiral_positivity": _chiral_positivity,
    "twist_inverse": _twist_inverse,
    "ansatz_right": lambda p, ctx: _ansatz_side(p, ctx, "right"),
    "ansatz_left": lambda p, ctx: _ansatz_side(p, ctx, "left"),
    "ansatz_chambers": _ansatz_chambers,
    "ansatz_z": _ansatz_z,
    "y0_formula": _y0,
    "chamber_duality": _chamber_duality,
    "positroid_twist": _positroid,
    "ing_normalization": _ing,
}


def _context(p: RichPoint) -> dict[str, Any]:
    factors = right_factors(p)
    gc = gcap(p)
    z, z_ing = z_elements(p)
    return {
        "factors": factors,
        "gcap": gc,
        "y_right": factors.y_plus,
        "y_left": y_left(gc, p.w),
        "z": z,
        "z_ing": z_ing,
        "diagram": build_wiring(p.pds),
    }


def instance_key(P: PdsData) -> str:
    return f"v={P.v} word={','.join(map(str, P.word))}"


def verify_instance(P: PdsData, names: Iterable[str] = IDENTITIES) -> dict[str, Any]:
    """Run the named checks on the symbolic MR point of ``P``."""
    p = mr_parametrize(P)
    ctx = _context(p)
    identities = {}
    for name in names:
        failures = CHECKS[name](p, ctx)
        identities[name] = {"pass": not failures, "failures": failures}
    return {"instance": instance_key(P), "identities": identities}


def verify_exhaustive(n: int, names: Iterable[str] = IDENTITIES) -> dict[str, Any]:
    """All pairs v <= w in S_n, one reduced word each."""
    names = tuple(names)
    summary: dict[str, dict[str, Any]] = {name: {"pass": True, "checked": 0, "failures": []} for name in names}
    count = 0
    for v, w in bruhat_pairs(n):
        P = pds(v, w.reduced_word())
        report = verify_instance(P, names)
        count += 1
        for name, entry in report["identities"].items():
            summary[name]["checked"] += 1
            if not entry["pass"]:
                summary[name]["pass"] = False
                # keep the first witness only
                if not summary[name]["failures"]:
                    summary[name]["failures"] = [{"instance": report["instance"], **entry["failures"][0]}]
    return {"scope": f"s{n}_exhaustive", "instances": count, "identities": summary}


def all_pass(report: dict[str, Any]) -> bool:
    return all(entry["pass"] for entry in report["identities"].values())


def matrix_twist(g: Mat, word: Iterable[int] | None = None) -> dict[str, Any]:
    """Twist an arbitrary representative; (v, w) are read off the Bruhat cells.

    The point is in the open Deodhar stratum of the chosen word iff the
    Chamber Ansatz returns nonzero parameters whose MR point is the same
    coset; otherwise ``deodhar`` is False and only the twists are reported.
    """
    v, w = bruhat_cells(g)
    word = tuple(word) if word is not None else w.reduced_word()
    P = pds(v, word)
    if P.w != w:
        raise WrongCell(f"word {list(word)} does not spell {w}", w=str(w))
    x = FlagPoint(g)
    right, left = twist_right(x, v, w), twist_left(x, v, w)
    out: dict[str, Any] = {"v": str(v), "w": str(w), "word": list(word), "twist": right.rep, "left_twist": left.rep}
    try:
        y = y_right(_nv_rep(g, v), w)
        t = ansatz_recover_t(P, "right", y)
        deodhar = mr_parametrize(P, t).flag() == x
    except (ZeroMinor, ZeroParameter, PoleAtPoint):
        t, deodhar = None, False
    out["deodhar"] = deodhar
    out["params"] = {f"t{r}": scalar_str(val) for r, val in sorted(t.items())} if deodhar and t else None
    return out
