"""Wiring diagrams, chamber minors and both type A Chamber Ansatz formulas.

Horizontal positions are indexed by ``a = 0..m``: position ``a`` is the stretch
just after crossing ``a`` (``a = 0`` is the left boundary).  Strand levels are
``1..n`` from the bottom.  A chamber of height ``h`` sits between levels h and
h+1 and spans the open interval between two consecutive crossings at height h
(or a boundary); its span is ``(left, right)`` with ``0 <= left < right <= m+1``.

>>> from richtwist.weyl import Perm, pds
>>> d = build_wiring(pds(Perm.from_word([1, 2], 4), (2, 1, 2, 3, 2, 1)))
>>> len(d.crossings), len(d.chambers)
(6, 11)
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from .errors import IndexOutOfRange, ZeroMinor
from .field import Scalar, is_zero, sdiv
from .matgroup import Mat, generalized_minor, minor
from .weyl import PdsData, Perm, pairing, special_elements


@dataclass(frozen=True)
class Crossing:
    r: int
    height: int
    dotted: bool


@dataclass(frozen=True)
class Chamber:
    """A chamber with its four index sets (right/left refer to the twist side)."""

    index: int
    height: int
    left: int
    right: int
    iv_right: frozenset[int]
    iw_right: frozenset[int]
    iv_left: frozenset[int]
    iw_left: frozenset[int]

    def contains(self, x: float) -> bool:
        return self.left < x < self.right

    def to_json(self) -> dict[str, Any]:
        return {
            "height": self.height,
            "span": [self.left, self.right],
            "Iv_right": sorted(self.iv_right),
            "Iw_right": sorted(self.iw_right),
            "Iv_left": sorted(self.iv_left),
            "Iw_left": sorted(self.iw_left),
        }


@dataclass(frozen=True)
class WiringDiagram:
    """Crossings, chambers and strand traversals of a marked reduced word.

    ``w_levels[a][l]`` is the left endpoint of the w-strand at level ``l+1`` at
    position ``a``; ``v_levels`` is the same for v-strands, which pass
    straight through dotted crossings.
    """

    pds: PdsData
    crossings: tuple[Crossing, ...]
    chambers: tuple[Chamber, ...]
    w_levels: tuple[tuple[int, ...], ...] = field(repr=False)
    v_levels: tuple[tuple[int, ...], ...] = field(repr=False)
    neighbors: Mapping[int, Mapping[str, int]] = field(repr=False)

    @property
    def n(self) -> int:
        return self.pds.n

    @property
    def m(self) -> int:
        return self.pds.m

    def chamber(self, r: int, where: str) -> Chamber:
        """Chamber ``left``, ``right``, ``above`` or ``below`` crossing r."""
        if not 1 <= r <= self.m:
            raise IndexOutOfRange(f"crossing {r} outside 1..{self.m}")
        return self.chambers[self.neighbors[r][where]]

    def level_of(self, strand: int, a: int, kind: str = "w") -> int:
        levels = self.w_levels if kind == "w" else self.v_levels
        return levels[a].index(strand) + 1

    def upstream_wedge(self, r: int) -> list[Chamber]:
        """Chambers between the two crossing strands, left of crossing r."""
        i = self.crossings[r - 1].height
        s1, s2 = self.w_levels[r - 1][i - 1], self.w_levels[r - 1][i]
        out = []
        for c in self.chambers:
            if c.right <= r:
                lo, hi = sorted((self.level_of(s1, c.left), self.level_of(s2, c.left)))
                if lo <= c.height < hi:
                    out.append(c)
        return out

    def downstream_wedge(self, r: int) -> list[Chamber]:
        """Chambers between the two crossing strands, right of crossing r."""
        i = self.crossings[r - 1].height
        s1, s2 = self.w_levels[r][i - 1], self.w_levels[r][i]
        out = []
        for c in self.chambers:
            if c.left >= r:
                lo, hi = sorted((self.level_of(s1, c.left), self.level_of(s2, c.left)))
                if lo <= c.height < hi:
                    out.append(c)
        return out


def _trace(word: tuple[int, ...], n: int, swap_at: set[int]) -> list[tuple[int, ...]]:
    levels = [tuple(range(1, n + 1))]
    for r, i in enumerate(word, start=1):
        cur = list(levels[-1])
        if r in swap_at:
            cur[i - 1], cur[i] = cur[i], cur[i - 1]
        levels.append(tuple(cur))
    return levels


def build_wiring(pds: PdsData) -> WiringDiagram:
    """Build the diagram by tracing strands through the crossings."""
    n, m = pds.n, pds.m
    crossings = tuple(Crossing(r, pds.letter(r), pds.is_dotted(r)) for r in range(1, m + 1))
    w_levels = _trace(pds.word, n, set(range(1, m + 1)))
    v_levels = _trace(pds.word, n, set(pds.used))
    w_right = {s: w_levels[m].index(s) + 1 for s in range(1, n + 1)}
    v_right = {s: v_levels[m].index(s) + 1 for s in range(1, n + 1)}

    chambers: list[Chamber] = []
    for h in range(0, n + 1):
        cuts = [0] + [c.r for c in crossings if c.height == h] + [m + 1]
        for a, b in zip(cuts, cuts[1:]):
            wl, vl = w_levels[a], v_levels[a]
            chambers.append(
                Chamber(
                    index=len(chambers),
                    height=h,
                    left=a,
                    right=b,
                    iv_right=frozenset(v_right[s] for s in vl[:h]),
                    iw_right=frozenset(w_right[s] for s in wl[:h]),
                    iv_left=frozenset(vl[h:]),
                    iw_left=frozenset(wl[h:]),
                )
            )

    def find(h: int, x: int) -> int:
        # no crossing at height h sits at x, so exactly one chamber contains it
        return next(c.index for c in chambers if c.height == h and c.contains(x))

    neighbors: dict[int, dict[str, int]] = {}
    for c in crossings:
        h = c.height
        neighbors[c.r] = {
            "left": next(x.index for x in chambers if x.height == h and x.right == c.r),
            "right": next(x.index for x in chambers if x.height == h and x.left == c.r),
            "above": find(h + 1, c.r),
            "below": find(h - 1, c.r),
        }
    return WiringDiagram(pds, crossings, tuple(chambers), tuple(w_levels), tuple(v_levels), neighbors)


# minors --------------------------------------------------------------------------

def chamber_minor(diagram: WiringDiagram, c: Chamber, side: str, g: Mat) -> Scalar:
    """``M_C`` on the right (rows Iv_right, cols Iw_right) or left (rows Iw_left, cols Iv_left)."""
    if side == "right":
        return minor(g, c.iv_right, c.iw_right)
    if side == "left":
        return minor(g, c.iw_left, c.iv_left)
    raise ValueError(f"side must be 'right' or 'left', not {side!r}")


def f_function(pds: PdsData, r: int, kind: str, g: Mat) -> Scalar:
    """``f_r`` for ``kind`` in ``right``, ``left`` or ``left_prime``, from the prefix tables."""
    if not 1 <= r <= pds.m:
        raise IndexOutOfRange(f"index {r} outside 1..{pds.m}")
    i = pds.letter(r)
    n = pds.n
    if kind == "right":
        return generalized_minor(g, pds.v_suffix[r - 1], pds.w_suffix[r - 1], i)
    top = range(i + 1, n + 1)
    if kind == "left":
        return minor(g, pds.w_prefix[r].image(top), pds.v_prefix[r].image(top))
    if kind == "left_prime":
        return minor(g, pds.w_prefix[r - 1].image(top), pds.v_prefix[r - 1].image(top))
    raise ValueError(f"unknown kind {kind!r}")


def f_chamber(diagram: WiringDiagram, r: int, kind: str) -> Chamber:
    """The chamber whose minor equals ``f_r`` of the given kind."""
    if kind == "right":
        return diagram.chamber(r, "left")
    if kind == "left":
        return diagram.chamber(r, "right")
    if kind == "left_prime":
        return diagram.chamber(r, "left")
    raise ValueError(f"unknown kind {kind!r}")


# recovery ----------------------------------------------------------------------------

def ansatz_recover_t(pds: PdsData, side: str, g: Mat, diagram: WiringDiagram | None = None) -> dict[int, Scalar]:
    """``t_r = M(above) M(below) / (M(left) M(right))`` for each r in J."""
    d = diagram or build_wiring(pds)
    out: dict[int, Scalar] = {}
    for r in pds.jv:
        num = chamber_minor(d, d.chamber(r, "above"), side, g) * chamber_minor(d, d.chamber(r, "below"), side, g)
        den = chamber_minor(d, d.chamber(r, "left"), side, g) * chamber_minor(d, d.chamber(r, "right"), side, g)
        if is_zero(den):
            raise ZeroMinor(f"chamber minor next to crossing {r} vanishes", r=r)
        out[r] = sdiv(num, den)
    return out


def ansatz_recover_t_cartan(pds: PdsData, side: str, g: Mat) -> dict[int, Scalar]:
    """Recovery through generalized minors and Cartan exponents (no diagram)."""
    n = pds.n
    se = special_elements(n)
    cartan = se.cartan
    out: dict[int, Scalar] = {}

    def gm(r: int, j: int) -> Scalar:
        if side == "right":
            return generalized_minor(g, pds.v_suffix[r], pds.w_suffix[r], j)
        # w_(r) w0 omega_j <-> w_(r) applied to {n-j+1..n}
        top = range(n - j + 1, n + 1)
        return minor(g, pds.w_prefix[r].image(top), pds.v_prefix[r].image(top))

    for r in pds.jv:
        i = pds.letter(r) if side == "right" else se.i_star[pds.letter(r)]
        num: Scalar = 1
        for j in range(1, n):
            if j != i:
                e = -cartan[j - 1][i - 1]
                if e:
                    num = num * gm(r, j) ** e
        den = gm(r, i) * gm(r - 1, i)
        if is_zero(den):
            raise ZeroMinor(f"minor in the recovery of t{r} vanishes", r=r)
        out[r] = sdiv(num, den)
    return out


# monomial predictions ---------------------------------------------------------------

def _word_product(pds: PdsData, letters: list[int]) -> Perm:
    return Perm.from_word(letters, pds.n)


def ansatz_exponents(pds: PdsData, side: str, j: int) -> dict[int, int]:
    """Exponents e_r with ``f_j(y) = prod t_r^{e_r}`` from the pairing formula."""
    if not 1 <= j <= pds.m:
        raise IndexOutOfRange(f"index {j} outside 1..{pds.m}")
    ij = pds.letter(j)
    out: dict[int, int] = {}
    for r in pds.jv:
        if side == "right" and r >= j:
            u = _word_product(pds, [pds.letter(k) for k in range(j, r)])
        elif side == "left" and r <= j:
            u = _word_product(pds, [pds.letter(k) for k in range(j, r, -1)])
        else:
            continue
        e = -pairing(ij, u, pds.letter(r))
        if e:
            out[r] = e
    return out


def wedge_exponents(diagram: WiringDiagram, side: str, c: Chamber) -> dict[int, int]:
    """Exponents from the wedge form: -1 for every dotted crossing whose wedge holds C."""
    out: dict[int, int] = {}
    for r in diagram.pds.jv:
        wedge = diagram.upstream_wedge(r) if side == "right" else diagram.downstream_wedge(r)
        if any(x.index == c.index for x in wedge):
            out[r] = -1
    return out


def monomial(t: Mapping[int, Scalar], exps: Mapping[int, int]) -> Scalar:
    val: Scalar = 1
    for r, e in sorted(exps.items()):
        val = val * (t[r] ** e if e > 0 else sdiv(1, t[r] ** (-e)))
    return val


def ansatz_monomial(pds: PdsData, side: str, j: int, t: Mapping[int, Scalar], method: str = "pairing") -> Scalar:
    """Predicted value of ``f_j`` at the twist-side matrix (pairing or wedge form)."""
    if method == "pairing":
        return monomial(t, ansatz_exponents(pds, side, j))
    if method == "wedge":
        d = build_wiring(pds)
        c = f_chamber(d, j, side)
        return monomial(t, wedge_exponents(d, side, c))
    raise ValueError(f"unknown method {method!r}")


# rendering ---------------------------------------------------------------------------

def render_wiring(diagram: WiringDiagram, fmt: str = "ascii", labels: str = "none", g: Mat | None = None) -> str:
    """ASCII or SVG picture; dotted crossings are marked, optional chamber labels."""
    if fmt == "ascii":
        return _render_ascii(diagram, labels, g)
    if fmt == "svg":
        return _render_svg(diagram, labels, g)
    raise ValueError(f"unknown format {fmt!r}")


def _chamber_label(d: WiringDiagram, c: Chamber, labels: str, g: Mat | None) -> str:
    if labels == "chamber_sets":
        return (
            f"h={c.height} span=({c.left},{c.right}) "
            f"Iv>={sorted(c.iv_right)} Iw>={sorted(c.iw_right)} "
            f"Iv<={sorted(c.iv_left)} Iw<={sorted(c.iw_left)}"
        )
    if labels == "minors" and g is not None:
        return f"h={c.height} span=({c.left},{c.right}) M>={chamber_minor(d, c, 'right', g)} " \
               f"M<={chamber_minor(d, c, 'left', g)}"
    return ""


def _render_ascii(d: WiringDiagram, labels: str, g: Mat | None) -> str:
    n, m = d.n, d.m
    width = 4
    lines = ["    " + "".join(str(r).center(width) for r in range(1, m + 1))]
    for level in range(n, 0, -1):
        lines.append(f"{level:>2}  " + "-" * (width * m) + f"  {level}")
        if level > 1:
            row = [" " * width for _ in range(m)]
            for c in d.crossings:
                if c.height == level - 1:
                    row[c.r - 1] = ("*" if c.dotted else "X").center(width)
            lines.append("    " + "".join(row))
    if labels != "none":
        lines.append("")
        lines.extend(_chamber_label(d, c, labels, g) for c in d.chambers)
    return "\n".join(lines) + "\n"


def _render_svg(d: WiringDiagram, labels: str, g: Mat | None) -> str:
    n, m = d.n, d.m
    unit = 40
    w, h = (m + 2) * unit, (n + 1) * unit

    def y(level: int) -> int:
        return (n + 1 - level) * unit

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">',
        '<g fill="none" stroke="black" stroke-width="2">',
    ]
    for s in range(1, n + 1):
        pts = [(unit // 2, y(d.level_of(s, 0)))]
        for r in range(1, m + 1):
            before, after = d.level_of(s, r - 1), d.level_of(s, r)
            pts.append((r * unit, y(before)))
            pts.append(((r + 1) * unit, y(after)))
        pts.append(((m + 1) * unit + unit // 2, y(d.level_of(s, m))))
        coords = " ".join(f"{px},{py}" for px, py in pts)
        parts.append(f'<polyline points="{coords}"/>')
    parts.append("</g>")
    for c in d.crossings:
        if c.dotted:
            cx, cy = c.r * unit + unit // 2, (y(c.height) + y(c.height + 1)) // 2
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="black"/>')
            parts.append(f'<text x="{cx + 6}" y="{cy - 6}" font-size="10">t{c.r}</text>')
    for level in range(1, n + 1):
        parts.append(f'<text x="4" y="{y(level) + 4}" font-size="10">{level}</text>')
        parts.append(f'<text x="{w - 12}" y="{y(level) + 4}" font-size="10">{level}</text>')
    if labels != "none":
        for c in d.chambers:
            cx = ((c.left + c.right) / 2) * unit + unit // 2
            cy = y(c.height) - unit // 2 if c.height > 0 else y(1) + unit // 2
            text = _chamber_label(d, c, labels, g).replace("<", "&lt;").replace(">", "&gt;")
            parts.append(f'<text x="{cx:.0f}" y="{cy}" font-size="6" text-anchor="middle">{text}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
