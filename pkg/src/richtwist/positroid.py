"""Grassmannian projection and the positroid (row-dual-basis) twists.

A :class:`GrassPoint` is the column span of an ``n x (n-k)`` matrix.  Its
right twist replaces each row ``M_i`` by the vector dual to the forward
independent rows starting at i (indices taken cyclically); the left twist
uses backward scans.

>>> from richtwist.matgroup import Mat
>>> p = GrassPoint(Mat([[1, 0], [0, 1], [0, 0]]), 1)
>>> musp_twist(p, "right").M == p.M
True
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Any

from .errors import NotGrassmannian, RankDeficient, SizeMismatch
from .field import Scalar, is_zero, scalar_str, sdiv
from .matgroup import Mat, minor
from .twist import FlagPoint, RichPoint, twist_left, twist_right
from .weyl import Perm, bruhat_pairs, grassmannian_check


@dataclass(frozen=True, eq=False)
class GrassPoint:
    """Column span of ``M`` in Gr(n-k, n)."""

    M: Mat
    k: int

    @property
    def n(self) -> int:
        return self.M.nrows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassPoint):
            return NotImplemented
        return grass_equal(self, other)

    __hash__ = None  # type: ignore[assignment]


def project(x: FlagPoint, k: int) -> GrassPoint:
    """Columns ``k+1..n`` of a representative of ``g B_-``."""
    n = x.rep.n
    return GrassPoint(x.rep.columns(range(k + 1, n + 1)), k)


def plucker(p: GrassPoint, rows: Iterable[int]) -> Scalar:
    rows = sorted(rows)
    if len(rows) != p.M.ncols:
        raise SizeMismatch(f"Plucker index needs {p.M.ncols} rows", rows=rows)
    return minor(p.M, rows, range(1, p.M.ncols + 1))


def plucker_vector(p: GrassPoint) -> dict[tuple[int, ...], Scalar]:
    return {F: plucker(p, F) for F in itertools.combinations(range(1, p.n + 1), p.M.ncols)}


def proportional(a: dict[Any, Scalar], b: dict[Any, Scalar], tol: float | None = None) -> bool:
    """True iff ``b = c a`` for one nonzero scalar c."""
    keys = list(a)
    if tol is not None:
        sa = max(abs(float(a[F])) for F in keys)
        sb = max(abs(float(b[F])) for F in keys)
        if sa == 0 or sb == 0:
            return sa == sb
        F0 = max(keys, key=lambda F: abs(float(a[F])))
        c = float(b[F0]) / float(a[F0])
        return all(abs(float(b[F]) / sb - c * float(a[F]) / sb) <= tol for F in keys)
    F0 = next((F for F in keys if not is_zero(a[F])), None)
    if F0 is None or is_zero(b[F0]):
        return F0 is None and all(is_zero(b[F]) for F in keys)
    c = sdiv(b[F0], a[F0])
    return all(is_zero(b[F] - c * a[F]) for F in keys)


def grass_equal(p: GrassPoint, q: GrassPoint, tol: float | None = None) -> bool:
    if p.M.shape != q.M.shape:
        return False
    return proportional(plucker_vector(p), plucker_vector(q), tol)


def _scan(n: int, i: int, side: str) -> Iterator[int]:
    # indices i, i+1, ... (right) or i, i-1, ... (left), wrapped into 1..n
    step = 1 if side == "right" else -1
    for s in range(n):
        yield (i - 1 + step * s) % n + 1


def independent_set(p: GrassPoint, i: int, side: str) -> list[int]:
    """The greedy independent index list starting at row i."""
    M = p.M
    need = M.ncols
    chosen: list[int] = []
    seen: list[tuple[Scalar, ...]] = []
    rank = 0
    for j in _scan(p.n, i, side):
        seen.append(M.row(j))
        new_rank = Mat(seen).rank()
        if new_rank > rank:
            chosen.append(j)
            rank = new_rank
            if rank == need:
                break
    if rank < need:
        raise RankDeficient(f"rows have rank {rank} < {need}", rank=rank)
    return chosen


def musp_twist(p: GrassPoint, side: str = "right") -> GrassPoint:
    """Row-wise dual basis twist; row i solves <X, M_j> = delta_ij over the scan set."""
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    M = p.M
    d = M.ncols
    out = []
    for i in range(1, p.n + 1):
        idx = independent_set(p, i, side)
        if i not in idx:
            out.append([0] * d)
            continue
        A = Mat([M.row(j) for j in idx])
        # X solves A X = e_i, i.e. X is the column of A^{-1} at i's position
        inv = A.inverse()
        pos = idx.index(i)
        out.append([inv[r, pos + 1] for r in range(1, d + 1)])
    return GrassPoint(Mat(out), p.k)


def qj_pairs(n: int, k: int) -> Iterator[tuple[Perm, Perm]]:
    """Pairs v <= w with w k-Grassmannian."""
    for v, w in bruhat_pairs(n):
        if grassmannian_check(w, k):
            yield v, w


def verify_musp_cd(p: RichPoint, k: int, tol: float | None = None) -> dict[str, Any]:
    """Compare the projected twists with the positroid twists on both sides."""
    if not grassmannian_check(p.w, k):
        raise NotGrassmannian(f"{p.w} is not {k}-Grassmannian", w=str(p.w), k=k)
    base = project(p.flag(), k)
    report: dict[str, Any] = {"k": k, "v": str(p.v), "w": str(p.w)}
    ok = True
    for side, tw in (("right", twist_right), ("left", twist_left)):
        lhs = project(tw(p), k)
        rhs = musp_twist(base, side)
        good = grass_equal(lhs, rhs, tol)
        ok = ok and good
        entry: dict[str, Any] = {"pass": good}
        if not good:
            pa, pb = plucker_vector(lhs), plucker_vector(rhs)
            entry["witness"] = {",".join(map(str, F)): [scalar_str(pa[F]), scalar_str(pb[F])] for F in pa}
        report[side] = entry
    report["pass"] = ok
    return report
