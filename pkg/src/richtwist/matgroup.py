"""Matrices over a generic scalar field and the structure of SL_n.

Indices are 1-based everywhere in the public API: ``g[i, j]`` is the entry in
row i and column j, and minors take row and column sets drawn from ``1..n``.
Structural matrices (generators, permutation lifts) are built from Python ints,
which mix freely with :class:`~richtwist.field.RatQ`, ``Fraction`` or ``float``.

>>> from richtwist.weyl import Perm
>>> lift(Perm([2, 3, 1, 4])).rows
((0, 0, 1, 0), (-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 0, 1))
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from .errors import IndexOutOfRange, NonReducedWord, NotInBigCell, SingularMatrix, SizeMismatch
from .field import FLOAT_ZERO_TOL, RatQ, Scalar, is_zero, parse_scalar, scalar_str, sdiv
from .weyl import Perm, is_reduced


class Mat:
    """An immutable dense matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Scalar]]) -> None:
        self.rows: tuple[tuple[Scalar, ...], ...] = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise SizeMismatch("ragged matrix rows")

    # construction --------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Mat:
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> Mat:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], kind: str = "exact") -> Mat:
        """Build from nested lists of strings in the canonical scalar syntax."""
        return cls([[parse_scalar(str(x), kind) if isinstance(x, str) else x for x in r] for r in rows])

    # access --------------------------------------------------------------
    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise SizeMismatch("matrix is not square", shape=[self.nrows, self.ncols])
        return self.nrows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j - 1] for r in self.rows)

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.rows[i - 1]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> Mat:
        rs, cs = sorted(rows), sorted(cols)
        return Mat([[self.rows[i - 1][j - 1] for j in cs] for i in rs])

    def columns(self, cols: Iterable[int]) -> Mat:
        return self.submatrix(range(1, self.nrows + 1), cols)

    def map(self, f: Callable[[Scalar], Scalar]) -> Mat:
        return Mat([[f(x) for x in r] for r in self.rows])

    # algebra -------------------------------------------------------------
    def __matmul__(self, other: Mat) -> Mat:
        if self.ncols != other.nrows:
            raise SizeMismatch("incompatible shapes", left=list(self.shape), right=list(other.shape))
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out_row = []
            for c in cols:
                acc: Scalar = 0
                for a, b in zip(r, c):
                    if not _structural_zero(a) and not _structural_zero(b):
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Mat(out)

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise SizeMismatch("incompatible shapes")
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise SizeMismatch("incompatible shapes")
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Mat:
        return self.map(lambda x: -x)

    def scale(self, c: Scalar) -> Mat:
        return self.map(lambda x: c * x)

    @property
    def T(self) -> Mat:
        return Mat(zip(*self.rows)) if self.rows else Mat([])

    def det(self) -> Scalar:
        return _det([list(r) for r in self.rows])

    def inverse(self) -> Mat:
        """Gauss-Jordan inverse; raises :class:`SingularMatrix`."""
        n = self.n
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for k in range(n):
            p = _choose_pivot(a, k, k)
            if p is None:
                raise SingularMatrix("matrix is singular", column=k + 1)
            a[k], a[p] = a[p], a[k]
            piv = a[k][k]
            a[k] = [sdiv(x, piv) if not _structural_zero(x) else 0 for x in a[k]]
            for i in range(n):
                if i != k and not is_zero(a[i][k]):
                    f = a[i][k]
                    a[i] = [x - f * y if not _structural_zero(y) else x for x, y in zip(a[i], a[k])]
        return Mat([r[n:] for r in a])

    def rank(self) -> int:
        a = [list(r) for r in self.rows]
        rank = 0
        for c in range(self.ncols):
            p = _choose_pivot(a, rank, c)
            if p is None:
                continue
            a[rank], a[p] = a[p], a[rank]
            piv = a[rank][c]
            for i in range(rank + 1, self.nrows):
                if not is_zero(a[i][c]):
                    f = sdiv(a[i][c], piv)
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
            rank += 1
            if rank == self.nrows:
                break
        return rank

    # predicates ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self) -> int:
        return hash(self.rows)

    def max_abs_diff(self, other: Mat) -> float:
        return max(abs(float(a) - float(b)) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def is_lower_triangular(self) -> bool:
        return all(is_zero(self.rows[i][j]) for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_upper_triangular(self) -> bool:
        return all(is_zero(self.rows[i][j]) for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def is_diagonal(self) -> bool:
        return self.is_lower_triangular() and self.is_upper_triangular()

    def has_unit_diagonal(self) -> bool:
        return all(is_zero(self.rows[i][i] - 1) for i in range(min(self.shape)))

    # text ----------------------------------------------------------------
    def to_strings(self) -> list[list[str]]:
        return [[scalar_str(x) for x in r] for r in self.rows]

    def to_json(self) -> dict[str, Any]:
        kind = "float" if any(isinstance(x, float) for r in self.rows for x in r) else "exact"
        return {"rows": self.nrows, "cols": self.ncols, "kind": kind, "entries": self.to_strings()}

    def __repr__(self) -> str:
        return f"Mat({self.to_strings()})"

    def __str__(self) -> str:
        cells = self.to_strings()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def _structural_zero(x: Scalar) -> bool:
    # cheap exact-zero test used to skip work; never tolerance based
    if isinstance(x, RatQ):
        return x.is_zero()
    return x == 0


def _choose_pivot(a: list[list[Scalar]], start: int, col: int) -> int | None:
    best, best_score = None, None
    for i in range(start, len(a)):
        x = a[i][col]
        if is_zero(x):
            continue
        if isinstance(x, float):
            score: Any = -abs(x)
        elif isinstance(x, RatQ):
            score = 0 if x.is_constant() else len(str(x))
        else:
            score = 0
        if best_score is None or score < best_score:
            best, best_score = i, score
            if score == 0 and not isinstance(x, float):
                break
    return best


def _det(a: list[list[Scalar]]) -> Scalar:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    sign = 1
    det: Scalar = 1
    for k in range(n):
        p = _choose_pivot(a, k, k)
        if p is None:
            return 0 * a[0][0]
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        det = det * piv
        for i in range(k + 1, n):
            if not is_zero(a[i][k]):
                f = sdiv(a[i][k], piv)
                a[i] = a[i][:k + 1] + [x - f * y for x, y in zip(a[i][k + 1:], a[k][k + 1:])]
    return det if sign == 1 else -det


# generators and lifts ------------------------------------------------------

def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"index {i} outside 1..{n - 1}", index=i, n=n)


def x_gen(i: int, t: Scalar, n: int) -> Mat:
    """x_i(t) = I + t E_{i,i+1}."""
    _check_index(i, n)
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i - 1][i] = t
    return Mat(rows)


def y_gen(i: int, t: Scalar, n: int) -> Mat:
    """y_i(t) = I + t E_{i+1,i}."""
    _check_index(i, n)
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i][i - 1] = t
    return Mat(rows)


def sdot(i: int, n: int) -> Mat:
    """The lift of s_i: identity with block [[0, 1], [-1, 0]] at rows/cols i, i+1."""
    _check_index(i, n)
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i - 1][i - 1] = 0
    rows[i][i] = 0
    rows[i - 1][i] = 1
    rows[i][i - 1] = -1
    return Mat(rows)


def coweight(i: int, t: Scalar, n: int) -> Mat:
    """t^{alpha_i^vee} = diag(..., t, 1/t, ...) at positions i, i+1."""
    _check_index(i, n)
    if is_zero(t):
        raise IndexOutOfRange("coweight parameter must be nonzero")
    vals: list[Scalar] = [1] * n
    vals[i - 1] = t
    vals[i] = sdiv(1, t)
    return Mat.diag(vals)


def generators(kind: str, i: int, t: Scalar, n: int) -> Mat:
    """Dispatch by name: ``x``, ``y``, ``sdot`` (t ignored) or ``coweight``."""
    if kind == "x":
        return x_gen(i, t, n)
    if kind == "y":
        return y_gen(i, t, n)
    if kind == "sdot":
        return sdot(i, n)
    if kind == "coweight":
        return coweight(i, t, n)
    raise ValueError(f"unknown generator kind {kind!r}")


def _perm_matrix(w: Perm, signs: Sequence[int]) -> Mat:
    n = w.n
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        rows[w(j) - 1][j - 1] = signs[j - 1]
    return Mat(rows)


def _lift_word(word: Sequence[int], n: int, bar: bool) -> Mat:
    # multiply signed permutation matrices symbolically: track (perm, signs)
    perm = list(range(1, n + 1))
    signs = [1] * n
    for i in word:
        _check_index(i, n)
        # right multiplication by sdot_i: col i <- -col(i+1), col i+1 <- col i
        # (for the inverse: col i <- col(i+1), col i+1 <- -col i)
        a, b = i - 1, i
        pa, pb, sa, sb = perm[a], perm[b], signs[a], signs[b]
        if bar:
            perm[a], signs[a] = pb, sb
            perm[b], signs[b] = pa, -sa
        else:
            perm[a], signs[a] = pb, -sb
            perm[b], signs[b] = pa, sa
    return _perm_matrix(Perm(tuple(perm)), signs)


def lift(w: Perm | Sequence[int], n: int | None = None) -> Mat:
    """The lift w-dot = sdot_{i1} ... sdot_{im} along a reduced word.

    Accepts a :class:`Perm` (uses any reduced word; the result does not depend
    on the choice) or a word together with ``n``.
    """
    if isinstance(w, Perm):
        return _lift_word(w.reduced_word(), w.n, bar=False)
    if n is None:
        raise ValueError("lift of a word needs n")
    if not is_reduced(w, n):
        raise NonReducedWord(f"word {list(w)} is not reduced", word=list(w))
    return _lift_word(w, n, bar=False)


def lift_bar(w: Perm | Sequence[int], n: int | None = None) -> Mat:
    """The lift w-bar = sdot_{i1}^{-1} ... sdot_{im}^{-1}."""
    if isinstance(w, Perm):
        return _lift_word(w.reduced_word(), w.n, bar=True)
    if n is None:
        raise ValueError("lift of a word needs n")
    if not is_reduced(w, n):
        raise NonReducedWord(f"word {list(w)} is not reduced", word=list(w))
    return _lift_word(w, n, bar=True)


def perm_lift_inverse(m: Mat) -> Mat:
    """Inverse of a signed permutation matrix (its transpose)."""
    return m.T


# involutions -----------------------------------------------------------------

def _sign_conj(g: Mat) -> Mat:
    # D g D with D = diag(1, -1, 1, ...)
    return Mat([[x if (i + j) % 2 == 0 else -x for j, x in enumerate(r)] for i, r in enumerate(g.rows)])


def involution(g: Mat, kind: str) -> Mat:
    """Apply ``T``, ``iota``, ``theta``, ``inv``, ``inv_T`` or ``inv_iota``.

    ``iota(g) = D g^{-1} D`` and ``theta(g) = D g^{-T} D`` with
    ``D = diag(1, -1, 1, ...)``; ``inv_iota`` is ``(g^iota)^{-1} = D g D``.

    >>> g = x_gen(1, 5, 3)
    >>> involution(g, "iota") == g
    True
    """
    if kind == "T":
        return g.T
    if kind == "inv":
        return g.inverse()
    if kind == "inv_T":
        return g.inverse().T
    if kind == "iota":
        return _sign_conj(g.inverse())
    if kind == "theta":
        return _sign_conj(g.inverse().T)
    if kind == "inv_iota":
        return _sign_conj(g)
    raise ValueError(f"unknown involution {kind!r}")


# minors ------------------------------------------------------------------------

def minor(g: Mat, rows: Iterable[int], cols: Iterable[int]) -> Scalar:
    """Determinant of the submatrix on the given 1-based row and column sets."""
    rs, cs = sorted(set(rows)), sorted(set(cols))
    if len(rs) != len(cs):
        raise SizeMismatch("row and column sets differ in size", rows=rs, cols=cs)
    if any(not 1 <= i <= g.nrows for i in rs) or any(not 1 <= j <= g.ncols for j in cs):
        raise IndexOutOfRange("minor index out of range", rows=rs, cols=cs)
    return _det([[g.rows[i - 1][j - 1] for j in cs] for i in rs])


def generalized_minor(g: Mat, u: Perm, u2: Perm, i: int) -> Scalar:
    """Minor with rows u({1..i}) and columns u2({1..i})."""
    return minor(g, u.image(range(1, i + 1)), u2.image(range(1, i + 1)))


def right_aligned_flag_minors(g: Mat) -> dict[tuple[tuple[int, ...], int], Scalar]:
    """All minors on the last k columns: key ``(rows, k)``."""
    n = g.nrows
    out = {}
    for k in range(1, g.ncols + 1):
        cols = range(g.ncols - k + 1, g.ncols + 1)
        for rows in itertools.combinations(range(1, n + 1), k):
            out[(rows, k)] = minor(g, rows, cols)
    return out


def top_aligned_flag_minors(g: Mat) -> dict[tuple[int, tuple[int, ...]], Scalar]:
    """All minors on the first k rows: key ``(k, cols)``."""
    n = g.ncols
    out = {}
    for k in range(1, g.nrows + 1):
        for cols in itertools.combinations(range(1, n + 1), k):
            out[(k, cols)] = minor(g, range(1, k + 1), cols)
    return out


# UDL / LDU ---------------------------------------------------------------------

@dataclass(frozen=True)
class Udl:
    """Factors of ``g = u d l`` (order ``UDL``) or ``g = l d u`` (order ``LDU``)."""

    u: Mat
    d: Mat
    l: Mat  # noqa: E741
    order: str

    def product(self) -> Mat:
        if self.order == "UDL":
            return self.u @ self.d @ self.l
        return self.l @ self.d @ self.u


def udl(g: Mat, order: str = "UDL") -> Udl:
    """UDL (trailing pivots) or LDU (leading pivots) factorization.

    >>> f = udl(Mat([[2, 3], [1, 2]]))
    >>> f.u.rows, f.d.rows, f.l.rows
    (((1, Fraction(3, 2)), (0, 1)), ((Fraction(1, 2), 0), (0, 2)), ((1, 0), (Fraction(1, 2), 1)))
    """
    n = g.n
    a = [list(r) for r in g.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    lo = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    d: list[Scalar] = [0] * n
    steps = range(n - 1, -1, -1) if order == "UDL" else range(n)
    for k in steps:
        p = a[k][k]
        if is_zero(p):
            idx = list(range(k + 1, n + 1)) if order == "UDL" else list(range(1, k + 2))
            raise NotInBigCell(
                f"{'trailing' if order == 'UDL' else 'leading'} principal minor on {idx} vanishes",
                minor=idx,
                order=order,
            )
        d[k] = p
        rest = range(k) if order == "UDL" else range(k + 1, n)
        for j in rest:
            if not _structural_zero(a[k][j]):
                lo_or_up = sdiv(a[k][j], p)
                if order == "UDL":
                    lo[k][j] = lo_or_up
                else:
                    u[k][j] = lo_or_up
        for i in rest:
            if not _structural_zero(a[i][k]):
                if order == "UDL":
                    u[i][k] = sdiv(a[i][k], p)
                else:
                    lo[i][k] = sdiv(a[i][k], p)
        for i in rest:
            if _structural_zero(a[i][k]):
                continue
            f = sdiv(a[i][k], p)
            for j in rest:
                if not _structural_zero(a[k][j]):
                    a[i][j] = a[i][j] - f * a[k][j]
    return Udl(Mat(u), Mat.diag(d), Mat(lo), order)


# Bruhat cells ----------------------------------------------------------------

def _perm_from_counts(count: Callable[[int, int], int], n: int, which: str) -> Perm:
    # count(i, j) is the number of a >= j with w(a) in a row-range determined by i;
    # the second difference locates the single entry per column.
    vals = [0] * n
    for a in range(1, n + 1):
        for i in range(1, n + 1):
            if which == "upper":  # counts rows 1..i
                d = count(i, a) - count(i - 1, a) - count(i, a + 1) + count(i - 1, a + 1)
            else:  # counts rows i..n
                d = count(i, a) - count(i + 1, a) - count(i, a + 1) + count(i + 1, a + 1)
            if d == 1:
                vals[a - 1] = i
    try:
        return Perm(tuple(vals))
    except Exception as exc:
        raise SingularMatrix("rank data does not determine a permutation") from exc


def bruhat_cells(g: Mat) -> tuple[Perm, Perm]:
    """Return ``(v, w)`` with ``g`` in ``B v B_-`` and in ``B_- w B_-``.

    Uses rank(g[1..i, j..n]) = #{a >= j : w(a) <= i} and
    rank(g[i..n, j..n]) = #{a >= j : v(a) >= i}.
    """
    n = g.n
    if g.rank() < n:
        raise SingularMatrix("matrix is singular")
    top: dict[tuple[int, int], int] = {}
    bottom: dict[tuple[int, int], int] = {}

    def top_rank(i: int, j: int) -> int:
        if i <= 0 or j > n:
            return 0
        if (i, j) not in top:
            top[(i, j)] = g.submatrix(range(1, i + 1), range(j, n + 1)).rank()
        return top[(i, j)]

    def bottom_rank(i: int, j: int) -> int:
        if i > n or j > n:
            return 0
        if (i, j) not in bottom:
            bottom[(i, j)] = g.submatrix(range(i, n + 1), range(j, n + 1)).rank()
        return bottom[(i, j)]

    w = _perm_from_counts(top_rank, n, "upper")
    v = _perm_from_counts(bottom_rank, n, "lower")
    return v, w


# support patterns --------------------------------------------------------------

def _pivot_sign(vdot: Mat, v: Perm, j: int) -> Scalar:
    return vdot[v(j), j]


def pattern_check(g: Mat, v: Perm | None, pattern: str) -> bool:
    """Membership of ``g`` in N v-dot, v-dot N, their intersection, N, N_-, B or B_-.

    Support is tested entrywise; for the v-patterns each pivot must equal the
    corresponding signed entry of v-dot.
    """
    if pattern == "N":
        return g.is_upper_triangular() and g.has_unit_diagonal()
    if pattern == "N-":
        return g.is_lower_triangular() and g.has_unit_diagonal()
    if pattern == "B":
        return g.is_upper_triangular() and all(not is_zero(g[i, i]) for i in range(1, g.n + 1))
    if pattern == "B-":
        return g.is_lower_triangular() and all(not is_zero(g[i, i]) for i in range(1, g.n + 1))
    if v is None:
        raise ValueError(f"pattern {pattern} needs a permutation")
    n = g.n
    vdot = lift(v)
    vinv = v.inverse()
    check_cols = pattern in ("Nv", "NvN")
    check_rows = pattern in ("vN", "NvN")
    if not (check_cols or check_rows):
        raise ValueError(f"unknown pattern {pattern!r}")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            x = g[i, j]
            allowed = True
            if check_cols and i > v(j):
                allowed = False
            if check_rows and j < vinv(i):
                allowed = False
            if not allowed and not is_zero(x):
                return False
        if not is_zero(g[i, vinv(i)] - vdot[i, vinv(i)]):
            return False
    return True


def approx_zero(x: Scalar, tol: float = FLOAT_ZERO_TOL) -> bool:
    return abs(float(x)) < tol if isinstance(x, float) else is_zero(x)
