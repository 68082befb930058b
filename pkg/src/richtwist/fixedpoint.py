"""Numeric fixed-point checks for the right twist.

Two experiments run over floats:

* the square-root-binomial upper unitriangular matrix, conjecturally the
  positive fixed point of the twist for v = id, w = w0;
* a Gr(4, 8) positroid cell whose twist has no positive fixed point.  The
  frozen Plucker coordinates are monomials in the parameters, so pinning
  them to 1 cuts out a linear subspace in log coordinates; a multistart
  search over a box in that subspace reports the smallest fixed-point
  residual it finds.  The box matters: the residual decays towards the
  boundary of the cell, so the infimum over the whole subspace is 0.

>>> fixed_point_matrix(3).rows[0]
(1.0, 1.4142135623730951, 1.0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import least_squares

from .errors import IndexOutOfRange
from .matgroup import Mat, right_aligned_flag_minors
from .positroid import independent_set, plucker, plucker_vector, project
from .twist import FlagPoint, mr_parametrize, twist_right
from .weyl import Perm, PdsData, pds

# the (4, 8) positroid example: Plucker coordinates 1234, 3456, 5678, 1278
# vanish on the cell (labels are complements of the column-span labels)
EXAMPLE_V = Perm((1, 3, 2, 5, 4, 7, 6, 8))
EXAMPLE_W = Perm((4, 6, 7, 8, 1, 2, 3, 5))
EXAMPLE_K = 4


def fixed_point_matrix(n: int) -> Mat:
    """``g_ij = sqrt(C(n-i, j-i) C(j-1, j-i))`` for j >= i, zero below."""
    if not 2 <= n <= 8:
        raise IndexOutOfRange(f"n = {n} outside 2..8", n=n)
    return Mat(
        [
            [math.sqrt(math.comb(n - i, j - i) * math.comb(j - 1, j - i)) if j >= i else 0.0 for j in range(1, n + 1)]
            for i in range(1, n + 1)
        ]
    )


def _normalized_minors(g: Mat) -> dict[tuple[tuple[int, ...], int], float]:
    # right-aligned minors of each size, scaled to unit max norm per size
    raw = {key: float(val) for key, val in right_aligned_flag_minors(g).items()}
    out = {}
    for k in range(1, g.ncols + 1):
        block = {key: val for key, val in raw.items() if key[1] == k}
        scale = max(abs(val) for val in block.values())
        pivot = max(block, key=lambda key: abs(block[key]))
        sign = 1.0 if block[pivot] > 0 else -1.0
        out.update({key: sign * val / scale for key, val in block.items()})
    return out


def flag_deviation(a: Mat, b: Mat) -> float:
    """Max difference of normalized right-aligned flag minors of two cosets."""
    na, nb = _normalized_minors(a), _normalized_minors(b)
    return max(abs(na[key] - nb[key]) for key in na)


def check_fixed_point(n: int, tol: float = 1e-9) -> dict[str, Any]:
    g = fixed_point_matrix(n)
    image = twist_right(FlagPoint(g), Perm.identity(n), Perm.longest(n))
    dev = flag_deviation(g, image.rep)
    return {"n": n, "tol": tol, "deviation": dev, "within_tol": dev < tol}


# the Gr(4, 8) example ---------------------------------------------------------

@dataclass(frozen=True)
class PositroidModel:
    """Combinatorial data of the example cell, computed once from an exact point."""

    pds: PdsData
    k: int
    necklace: tuple[tuple[int, ...], ...]
    nonzero: tuple[tuple[int, ...], ...]
    frozen_exponents: np.ndarray = field(repr=False)
    slice_basis: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.slice_basis.shape[1]


@lru_cache(maxsize=None)
def example_model() -> PositroidModel:
    P = pds(EXAMPLE_V, EXAMPLE_W.reduced_word())
    k = EXAMPLE_K
    generic = {r: Fraction(r + 2, r + 1) for r in P.jv}
    x = project(mr_parametrize(P, generic).flag(), k)
    necklace = tuple(tuple(independent_set(x, i, "right")) for i in range(1, x.n + 1))
    nonzero = tuple(F for F, val in plucker_vector(x).items() if val != 0)
    # frozen minors are monomials in t; read off their exponents
    xs = project(mr_parametrize(P).flag(), k)
    rows = []
    for idx in necklace:
        num, den = plucker(xs, idx).num, plucker(xs, idx).den
        if len(num.terms) != 1 or len(den.terms) != 1:
            raise ValueError(f"frozen minor {idx} is not a monomial")
        (e_num,), (e_den,) = num.terms, den.terms
        vec = [0] * P.m
        for pos, e in enumerate(e_num):
            vec[pos] += e
        for pos, e in enumerate(e_den):
            vec[pos] -= e
        rows.append([vec[r - 1] for r in P.jv])
    A = np.array(rows, dtype=float)
    centre = np.eye(len(rows)) - np.full((len(rows), len(rows)), 1.0 / len(rows))
    basis = null_space(centre @ A)
    return PositroidModel(P, k, necklace, nonzero, A, basis)


def _batch_points(model: PositroidModel, log_t: np.ndarray) -> np.ndarray:
    """Column-span matrices for a batch of parameter vectors (rows of log t)."""
    P = model.pds
    B = log_t.shape[0]
    t = np.exp(log_t)
    g = np.tile(np.eye(P.n), (B, 1, 1))
    col = {r: c for c, r in enumerate(P.jv)}
    for r in range(1, P.m + 1):
        i = P.letter(r) - 1
        if r in P.used:
            # right multiplication by sdot_i
            left, right = g[:, :, i].copy(), g[:, :, i + 1].copy()
            g[:, :, i], g[:, :, i + 1] = -right, left
        else:
            g[:, :, i + 1] += t[:, col[r], None] * g[:, :, i]
    return g[:, :, model.k :]


def _batch_twist(model: PositroidModel, M: np.ndarray) -> np.ndarray:
    out = np.empty_like(M)
    for i, idx in enumerate(model.necklace, start=1):
        sub = M[:, [j - 1 for j in idx], :]
        inv = np.linalg.inv(sub)
        out[:, i - 1, :] = inv[:, :, idx.index(i)]
    return out


def _batch_pluckers(model: PositroidModel, M: np.ndarray) -> np.ndarray:
    return np.stack([np.linalg.det(M[:, [j - 1 for j in F], :]) for F in model.nonzero], axis=1)


def log_ratios(model: PositroidModel, s: np.ndarray) -> np.ndarray:
    """``log(Delta_F(tau x) / Delta_F(x))`` for slice coordinates s (batched)."""
    s = np.atleast_2d(s)
    M = _batch_points(model, s @ model.slice_basis.T)
    before = _batch_pluckers(model, M)
    after = _batch_pluckers(model, _batch_twist(model, M))
    ratio = after / before
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(ratio > 0, np.log(np.abs(ratio)), np.inf)


def residual(model: PositroidModel, s: np.ndarray) -> np.ndarray:
    """Half the spread of the log ratios; zero exactly at a fixed point."""
    r = log_ratios(model, s)
    return (r.max(axis=1) - r.min(axis=1)) / 2


def search_no_fixed_point(
    starts: int = 10_000, spread: float = 3.0, refine: int = 10, seed: int = 0
) -> dict[str, Any]:
    """Multistart search for a positive fixed point of the example twist.

    Starts are uniform in the box ``[-spread, spread]^5`` of slice
    coordinates (orthonormal coordinates on the log-parameter subspace) and
    the best ``refine`` of them are polished by bounded least squares.
    """
    model = example_model()
    rng = np.random.default_rng(seed)
    S = rng.uniform(-spread, spread, size=(starts, model.dim))
    res = residual(model, S)
    order = np.argsort(res)[:refine]

    def centred(s: np.ndarray) -> np.ndarray:
        r = log_ratios(model, s)[0]
        return r - r.mean()

    best_s, best = S[order[0]], float(res[order[0]])
    for j in order:
        fit = least_squares(
            centred, S[j], bounds=(-spread, spread), xtol=1e-14, ftol=1e-14, gtol=1e-14, max_nfev=2000
        )
        val = float(residual(model, fit.x)[0])
        if val < best:
            best, best_s = val, fit.x
    # frozen values at the best point, for the report
    M = _batch_points(model, np.atleast_2d(best_s @ model.slice_basis.T))
    frozen = [float(np.linalg.det(M[0][[j - 1 for j in sorted(idx)], :])) for idx in model.necklace]
    return {
        "v": str(EXAMPLE_V),
        "w": str(EXAMPLE_W),
        "k": EXAMPLE_K,
        "slice_dim": model.dim,
        "starts": starts,
        "box": [-spread, spread],
        "seed": seed,
        "multistart_min": float(res.min()),
        "residual_infimum": best,
        "best_point": [float(x) for x in best_s],
        "frozen_values": frozen,
    }


def fixed_point_report(
    n: int, tol: float = 1e-9, starts: int = 10_000, spread: float = 3.0, seed: int = 0
) -> dict[str, Any]:
    """Both experiments; conjecture-consistent numbers are reported, not asserted."""
    search = search_no_fixed_point(starts=starts, spread=spread, seed=seed)
    return {
        "conjecture": check_fixed_point(n, tol),
        "no_fixed_point_example": search,
        "no_positive_solution_found": search["residual_infimum"] > 1e-6,
    }
