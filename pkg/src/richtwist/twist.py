"""Twist maps on open Richardson varieties.

Points of ``G/B_-`` are :class:`FlagPoint` (right cosets ``g B_-``) and points
of ``B_-\\G`` are :class:`CoFlagPoint`.  A :class:`RichPoint` is an MR-chart
point: a reduced word with its positive distinguished subexpression and one
parameter ``t_r`` for every index outside the subexpression.

The right twist of ``g B_-`` is computed as

* ``y = [g^T w-dot]_L^+`` (upper factor of the UDL decomposition),
* the left coset ``B_- v-dot y``,
* its unique representative in ``N v-dot  cap  v-dot N``, read as a right coset.

The left twist runs the other way and inverts it.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from .errors import WrongCell, ZeroParameter
from .field import RatQ, Scalar, is_zero, sdiv, var
from .matgroup import Mat, involution, lift, pattern_check, sdot, udl, x_gen
from .weyl import PdsData, Perm


# coset points ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FlagPoint:
    """The right coset ``rep B_-``."""

    rep: Mat
    side: str = field(default="right", init=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagPoint):
            return NotImplemented
        return coset_equal(self, other)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class CoFlagPoint:
    """The left coset ``B_- rep``."""

    rep: Mat
    side: str = field(default="left", init=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoFlagPoint):
            return NotImplemented
        return coset_equal(self, other)

    __hash__ = None  # type: ignore[assignment]


def _lower_within(m: Mat, tol: float | None) -> bool:
    if tol is None:
        return m.is_lower_triangular()
    return all(abs(float(m.rows[i][j])) <= tol for i in range(m.nrows) for j in range(i + 1, m.ncols))


def coset_equal(a: FlagPoint | CoFlagPoint, b: FlagPoint | CoFlagPoint, tol: float | None = None) -> bool:
    """Exact (or, with ``tol``, approximate) equality of cosets mod ``B_-``."""
    if type(a) is not type(b):
        return False
    if isinstance(a, FlagPoint):
        return _lower_within(a.rep.inverse() @ b.rep, tol)
    return _lower_within(b.rep @ a.rep.inverse(), tol)


# MR parametrization --------------------------------------------------------------

@dataclass(frozen=True)
class RichPoint:
    """A point ``g = g_1 ... g_m`` of the MR chart of an open Richardson variety."""

    pds: PdsData
    params: Mapping[int, Scalar]
    g: Mat = field(repr=False)

    @property
    def v(self) -> Perm:
        return self.pds.v

    @property
    def w(self) -> Perm:
        return self.pds.w

    @property
    def n(self) -> int:
        return self.pds.n

    def flag(self) -> FlagPoint:
        return FlagPoint(self.g)


def symbolic_params(pds: PdsData) -> dict[int, RatQ]:
    """The parameters ``t_r = t_r`` (one variable per index in J)."""
    return {r: var(r) for r in pds.jv}


def mr_parametrize(pds: PdsData, t: Mapping[int, Scalar] | None = None) -> RichPoint:
    """Multiply out ``g_r = sdot_{i_r}`` for used r and ``x_{i_r}(t_r)`` otherwise.

    >>> from richtwist.weyl import Perm, pds as make_pds
    >>> p = mr_parametrize(make_pds(Perm.identity(2), (1,)), {1: 3})
    >>> p.g.rows
    ((1, 3), (0, 1))
    """
    if t is None:
        t = symbolic_params(pds)
    t = dict(t)
    missing = [r for r in pds.jv if r not in t]
    if missing:
        raise ZeroParameter(f"missing parameters for indices {missing}", missing=missing)
    extra = [r for r in t if r not in pds.jv]
    if extra:
        raise ZeroParameter(f"parameters given for used indices {extra}", extra=sorted(extra))
    for r in pds.jv:
        if is_zero(t[r]):
            raise ZeroParameter(f"parameter t{r} is zero", index=r)
    n = pds.n
    g = Mat.identity(n)
    for r in range(1, pds.m + 1):
        i = pds.letter(r)
        g = g @ (sdot(i, n) if r in pds.used else x_gen(i, t[r], n))
    return RichPoint(pds, t, g)


# coset normal forms ----------------------------------------------------------------

def _first_nonzero(values: list[Scalar], order: range) -> int | None:
    for k in order:
        if not is_zero(values[k]):
            return k
    return None


def reduce_right_coset(g: Mat, v: Perm | None = None) -> tuple[Mat, Perm]:
    """Representative of ``g B_-`` in ``N v-dot  cap  v-dot N``.

    Columns are processed right to left; the lowest nonzero entry is the pivot
    (or row ``v(j)`` when ``v`` is given).  Returns the representative and v.
    """
    n = g.n
    cols = [list(g.col(j)) for j in range(1, n + 1)]
    piv_rows = [0] * n
    for j in range(n - 1, -1, -1):
        if v is not None:
            r = v(j + 1) - 1
            if is_zero(cols[j][r]):
                raise WrongCell(f"coset is not in the cell of {v}", column=j + 1)
        else:
            found = _first_nonzero(cols[j], range(n - 1, -1, -1))
            if found is None:
                raise WrongCell("singular representative", column=j + 1)
            r = found
        piv_rows[j] = r
        p = cols[j][r]
        for k in range(j):
            c = cols[k][r]
            if not is_zero(c):
                f = sdiv(c, p)
                cols[k] = [x - f * y for x, y in zip(cols[k], cols[j])]
            cols[k][r] = 0
        for i in range(r + 1, n):
            if not is_zero(cols[j][i]):
                raise WrongCell(f"coset is not in the cell of {v}", column=j + 1)
            cols[j][i] = 0
    perm = Perm(tuple(r + 1 for r in piv_rows))
    if v is not None and perm != v:
        raise WrongCell(f"coset lies in the cell of {perm}, not {v}", found=str(perm))
    vdot = lift(perm)
    for j in range(n):
        r = piv_rows[j]
        s = sdiv(vdot.rows[r][j], cols[j][r])
        cols[j] = [x * s for x in cols[j]]
        cols[j][r] = vdot.rows[r][j]
    return Mat(zip(*cols)), perm


def reduce_left_coset(h: Mat, v: Perm | None = None) -> tuple[Mat, Perm]:
    """Representative of ``B_- h`` in ``N v-dot  cap  v-dot N``.

    Rows are processed top to bottom; the leftmost nonzero entry is the pivot
    (or column ``v^{-1}(i)`` when ``v`` is given).
    """
    n = h.n
    rows = [list(r) for r in h.rows]
    vinv = v.inverse() if v is not None else None
    piv_cols = [0] * n
    for i in range(n):
        if vinv is not None:
            c = vinv(i + 1) - 1
            if is_zero(rows[i][c]):
                raise WrongCell(f"coset is not in the cell of {v}", row=i + 1)
        else:
            found = _first_nonzero(rows[i], range(n))
            if found is None:
                raise WrongCell("singular representative", row=i + 1)
            c = found
        piv_cols[i] = c
        p = rows[i][c]
        for k in range(i + 1, n):
            e = rows[k][c]
            if not is_zero(e):
                f = sdiv(e, p)
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
            rows[k][c] = 0
        for j in range(c):
            if not is_zero(rows[i][j]):
                raise WrongCell(f"coset is not in the cell of {v}", row=i + 1)
            rows[i][j] = 0
    perm = Perm(tuple(piv_cols.index(j) + 1 for j in range(n))) if sorted(piv_cols) == list(range(n)) else None
    if perm is None:
        raise WrongCell("pivot columns do not form a permutation")
    if v is not None and perm != v:
        raise WrongCell(f"coset lies in the cell of {perm}, not {v}", found=str(perm))
    vdot = lift(perm)
    for i in range(n):
        c = piv_cols[i]
        s = sdiv(vdot.rows[i][c], rows[i][c])
        rows[i] = [x * s for x in rows[i]]
        rows[i][c] = vdot.rows[i][c]
    return Mat(rows), perm


def gcap(p: RichPoint | Mat, v: Perm | None = None) -> Mat:
    """The representative of ``g B_-`` in ``N v-dot  cap  v-dot N``.

    For ``g`` in ``N v-dot`` it is reached by column operations alone: for each
    column j, entries in rows ``i < v(j)`` whose pivot column ``k = v^{-1}(i)``
    lies to the right are cleared with that column.
    """
    if isinstance(p, RichPoint):
        g, v = p.g, p.v
    else:
        g = p
        if v is None:
            return reduce_right_coset(g)[0]
    if not pattern_check(g, v, "Nv"):
        return reduce_right_coset(g, v)[0]
    n = g.n
    vinv = v.inverse()
    cols = [list(g.col(j)) for j in range(1, n + 1)]
    for j in range(n):
        for i in range(v(j + 1) - 2, -1, -1):
            k = vinv(i + 1) - 1
            if k > j and not is_zero(cols[j][i]):
                f = sdiv(cols[j][i], cols[k][i])
                cols[j] = [x - f * y for x, y in zip(cols[j], cols[k])]
                cols[j][i] = 0
    return Mat(zip(*cols))


# chiral maps -------------------------------------------------------------------------

def chiral(x: CoFlagPoint, v: Perm | None = None) -> FlagPoint:
    """``B_- h  ->  h' B_-`` through the common representative ``h'``."""
    rep, _ = reduce_left_coset(x.rep, v)
    return FlagPoint(rep)


def chiral_inv(x: FlagPoint, v: Perm | None = None) -> CoFlagPoint:
    """``g B_-  ->  B_- g_cap``."""
    rep, _ = reduce_right_coset(x.rep, v)
    return CoFlagPoint(rep)


# pre-twists and twists ---------------------------------------------------------------------

def y_right(g: Mat, w: Perm) -> Mat:
    """``[g^T w-dot]_L^+`` for a representative ``g`` in ``N v-dot``."""
    return udl(g.T @ lift(w), "UDL").u


def y_left(h: Mat, w: Perm) -> Mat:
    """``[w-dot h^T]_R^+`` for a representative ``h`` in ``v-dot N``."""
    return udl(lift(w) @ h.T, "LDU").u


def _nv_rep(g: Mat, v: Perm) -> Mat:
    return g if pattern_check(g, v, "Nv") else reduce_right_coset(g, v)[0]


def _vn_rep(h: Mat, v: Perm) -> Mat:
    return h if pattern_check(h, v, "vN") else reduce_left_coset(h, v)[0]


def pretwist_right(x: FlagPoint, v: Perm, w: Perm) -> CoFlagPoint:
    """``g B_-  ->  B_- v-dot [g^T w-dot]_L^+``."""
    g = _nv_rep(x.rep, v)
    return CoFlagPoint(lift(v) @ y_right(g, w))


def pretwist_left(x: CoFlagPoint, v: Perm, w: Perm) -> FlagPoint:
    """``B_- h  ->  [w-dot h^T]_R^+ v-dot B_-``; inverse of the right pre-twist."""
    h = _vn_rep(x.rep, v)
    return FlagPoint(y_left(h, w) @ lift(v))


def twist_right(p: RichPoint | FlagPoint, v: Perm | None = None, w: Perm | None = None) -> FlagPoint:
    """Right twist; the returned representative lies in ``N v-dot  cap  v-dot N``."""
    if isinstance(p, RichPoint):
        x, v, w = p.flag(), p.v, p.w
    else:
        x = p
    if v is None or w is None:
        raise ValueError("v and w are required for a bare flag point")
    return chiral(pretwist_right(x, v, w), v)


def twist_left(p: RichPoint | FlagPoint, v: Perm | None = None, w: Perm | None = None) -> FlagPoint:
    """Left twist, the inverse of :func:`twist_right`."""
    if isinstance(p, RichPoint):
        x, v, w = p.flag(), p.v, p.w
    else:
        x = p
    if v is None or w is None:
        raise ValueError("v and w are required for a bare flag point")
    return pretwist_left(chiral_inv(x, v), v, w)


# auxiliary elements ------------------------------------------------------------------------

@dataclass(frozen=True)
class RightFactors:
    """``g^T w-dot = y_plus y0 y_minus`` for the MR representative."""

    y_plus: Mat
    y0: Mat
    y_minus: Mat


def right_factors(p: RichPoint) -> RightFactors:
    f = udl(p.g.T @ lift(p.w), "UDL")
    return RightFactors(f.u, f.d, f.l)


def y0_factor(p: RichPoint) -> Mat:
    return right_factors(p).y0


def y0_formula(pds: PdsData, t: Mapping[int, Scalar]) -> Mat:
    """Closed form: product over j in J of ``t_j^{-W^(j) alpha_{i_j}^vee}``."""
    n = pds.n
    diag: list[Scalar] = [1] * n
    for j in pds.jv:
        u = pds.w_suffix[j]
        i = pds.letter(j)
        a, b = u(i) - 1, u(i + 1) - 1
        # exponent vector e_a - e_b, applied with a minus sign
        diag[a] = sdiv(diag[a], t[j])
        diag[b] = diag[b] * t[j]
    return Mat.diag(diag)


def z_elements(p: RichPoint) -> tuple[Mat, Mat]:
    """``z = (w-dot y_- w-dot^{-1})^T`` and ``z_Ing = z w-dot y0 w-dot^{-1}``."""
    f = right_factors(p)
    wd = lift(p.w)
    wdi = wd.T
    z = (wd @ f.y_minus @ wdi).T
    z_ing = z @ wd @ f.y0 @ wdi
    return z, z_ing


# reversal and opposite chiral ---------------------------------------------------------------

def reversal(x: FlagPoint | CoFlagPoint) -> FlagPoint | CoFlagPoint:
    """``g B_- -> g^theta w0-dot B_-`` and ``B_- g -> B_- g^{-iota} w0-dot``."""
    n = x.rep.n
    w0 = lift(Perm.longest(n))
    if isinstance(x, FlagPoint):
        return FlagPoint(involution(x.rep, "theta") @ w0)
    return CoFlagPoint(involution(x.rep, "inv_iota") @ w0)


def _reduce_left_opposite(h: Mat, w: Perm | None) -> tuple[Mat, Perm]:
    # B_- h  ->  representative in N w-dot  cap  w-dot N_-
    n = h.n
    rows = [list(r) for r in h.rows]
    winv = w.inverse() if w is not None else None
    piv = [0] * n
    for i in range(n):
        if winv is not None:
            c = winv(i + 1) - 1
            if is_zero(rows[i][c]):
                raise WrongCell(f"coset is not in the cell of {w}", row=i + 1)
        else:
            found = _first_nonzero(rows[i], range(n - 1, -1, -1))
            if found is None:
                raise WrongCell("singular representative", row=i + 1)
            c = found
        piv[i] = c
        p = rows[i][c]
        for k in range(i + 1, n):
            e = rows[k][c]
            if not is_zero(e):
                f = sdiv(e, p)
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
            rows[k][c] = 0
        for j in range(c + 1, n):
            if not is_zero(rows[i][j]):
                raise WrongCell(f"coset is not in the cell of {w}", row=i + 1)
            rows[i][j] = 0
    if sorted(piv) != list(range(n)):
        raise WrongCell("pivot columns do not form a permutation")
    perm = Perm(tuple(piv.index(j) + 1 for j in range(n)))
    if w is not None and perm != w:
        raise WrongCell(f"coset lies in the cell of {perm}, not {w}", found=str(perm))
    wd = lift(perm)
    for i in range(n):
        c = piv[i]
        s = sdiv(wd.rows[i][c], rows[i][c])
        rows[i] = [x * s for x in rows[i]]
        rows[i][c] = wd.rows[i][c]
    return Mat(rows), perm


def _reduce_right_opposite(g: Mat, w: Perm | None) -> tuple[Mat, Perm]:
    # g B_-  ->  representative in N_- w-dot  cap  w-dot N
    n = g.n
    cols = [list(g.col(j)) for j in range(1, n + 1)]
    piv = [0] * n
    for j in range(n - 1, -1, -1):
        if w is not None:
            r = w(j + 1) - 1
            if is_zero(cols[j][r]):
                raise WrongCell(f"coset is not in the cell of {w}", column=j + 1)
        else:
            found = _first_nonzero(cols[j], range(n))
            if found is None:
                raise WrongCell("singular representative", column=j + 1)
            r = found
        piv[j] = r
        p = cols[j][r]
        for k in range(j):
            c = cols[k][r]
            if not is_zero(c):
                f = sdiv(c, p)
                cols[k] = [x - f * y for x, y in zip(cols[k], cols[j])]
            cols[k][r] = 0
        for i in range(r):
            if not is_zero(cols[j][i]):
                raise WrongCell(f"coset is not in the cell of {w}", column=j + 1)
            cols[j][i] = 0
    perm = Perm(tuple(r + 1 for r in piv))
    if w is not None and perm != w:
        raise WrongCell(f"coset lies in the cell of {perm}, not {w}", found=str(perm))
    wd = lift(perm)
    for j in range(n):
        r = piv[j]
        s = sdiv(wd.rows[r][j], cols[j][r])
        cols[j] = [x * s for x in cols[j]]
        cols[j][r] = wd.rows[r][j]
    return Mat(zip(*cols)), perm


def opposite_chiral(x: CoFlagPoint, w: Perm | None = None) -> FlagPoint:
    """``B_- h^{-T}  ->  h B_-`` for the unique ``h`` in ``N_- w-dot  cap  w-dot N``."""
    rep, _ = _reduce_left_opposite(x.rep, w)
    return FlagPoint(rep.inverse().T)


def opposite_chiral_inv(x: FlagPoint, w: Perm | None = None) -> CoFlagPoint:
    """Inverse of :func:`opposite_chiral`."""
    h, _ = _reduce_right_opposite(x.rep, w)
    return CoFlagPoint(h.inverse().T)


def describe(p: RichPoint) -> dict[str, Any]:
    return {"n": p.n, "v": str(p.v), "w": str(p.w), "word": list(p.pds.word), "J": list(p.pds.jv)}
