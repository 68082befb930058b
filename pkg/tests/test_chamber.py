from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from conftest import ING, ING_SUBSTITUTION, WORKED
from richtwist.chamber import (
    ansatz_exponents,
    ansatz_monomial,
    ansatz_recover_t,
    ansatz_recover_t_cartan,
    build_wiring,
    chamber_minor,
    f_chamber,
    f_function,
    monomial,
    render_wiring,
    wedge_exponents,
)
from richtwist.errors import IndexOutOfRange, ZeroMinor
from richtwist.field import is_nonneg_canonical, var
from richtwist.matgroup import Mat
from richtwist.twist import gcap, mr_parametrize, right_factors, y_left, z_elements
from richtwist.weyl import Perm, bruhat_pairs, pds


@pytest.fixture(scope="module")
def worked(worked_pds):
    return mr_parametrize(worked_pds)


@pytest.fixture(scope="module")
def diagram(worked_pds):
    return build_wiring(worked_pds)


def twist_side(p):
    return right_factors(p).y_plus, y_left(gcap(p), p.w)


# diagram structure ------------------------------------------------------------

def test_worked_diagram(diagram):
    assert len(diagram.crossings) == 6
    assert [c.dotted for c in diagram.crossings] == [True, False, True, True, False, True]
    # crossing 6 has height 1; the chamber to its left carries f_6
    left6 = diagram.chamber(6, "left")
    assert left6.height == 1
    assert (sorted(left6.iv_right), sorted(left6.iw_right)) == ([1], [2])
    assert f_chamber(diagram, 6, "right") == left6


def test_chamber_set_sizes():
    for v, w in bruhat_pairs(4):
        d = build_wiring(pds(v, w.reduced_word()))
        n = d.n
        # one chamber per gap between crossings at each height, plus the two boundary chambers
        assert len(d.chambers) == d.m + n + 1
        for c in d.chambers:
            assert len(c.iv_right) == len(c.iw_right) == c.height
            assert len(c.iv_left) == len(c.iw_left) == n - c.height
        for r in range(1, d.m + 1):
            h = d.crossings[r - 1].height
            assert d.chamber(r, "left").height == d.chamber(r, "right").height == h
            assert d.chamber(r, "above").height == h + 1
            assert d.chamber(r, "below").height == h - 1


def test_empty_word():
    d = build_wiring(pds(Perm.identity(3), ()))
    assert d.crossings == ()
    assert len(d.chambers) == 4
    assert all((c.left, c.right) == (0, 1) for c in d.chambers)


def test_ing_diagram(ing_pds):
    d = build_wiring(ing_pds)
    assert len(d.crossings) == 8
    assert [c.r for c in d.crossings if c.dotted] == [1, 2, 3, 4, 5, 6, 8]


def test_chamber_errors(diagram):
    with pytest.raises(IndexOutOfRange):
        diagram.chamber(7, "left")
    with pytest.raises(ValueError):
        chamber_minor(diagram, diagram.chambers[0], "up", Mat.identity(4))


# minors and f-functions -------------------------------------------------------

def test_identity_minors(diagram):
    one = Mat.identity(4)
    for c in diagram.chambers:
        if c.iv_right == c.iw_right:
            assert chamber_minor(diagram, c, "right", one) == 1


def test_f6_worked(worked_pds, diagram):
    y = WORKED["y_plus"]
    assert f_function(worked_pds, 6, "right", y) == 1 / var(6)
    assert chamber_minor(diagram, diagram.chamber(6, "left"), "right", y) == 1 / var(6)
    assert ansatz_monomial(worked_pds, "right", 6, {r: var(r) for r in worked_pds.jv}) == 1 / var(6)


def test_f_functions_match_chambers():
    for v, w in bruhat_pairs(4):
        P = pds(v, w.reduced_word())
        p = mr_parametrize(P)
        d = build_wiring(P)
        yr, yl = twist_side(p)
        _, z_ing = z_elements(p)
        for r in range(1, P.m + 1):
            assert f_function(P, r, "right", yr) == chamber_minor(d, f_chamber(d, r, "right"), "right", yr)
            assert f_function(P, r, "left", yl) == chamber_minor(d, f_chamber(d, r, "left"), "left", yl)
            zt = z_ing.T
            assert f_function(P, r, "left_prime", zt) == chamber_minor(d, f_chamber(d, r, "left_prime"), "left", zt)


def test_worked_left_f1(worked_pds, worked):
    t = worked.params
    yl = WORKED["y_left"]
    assert f_function(worked_pds, 1, "left", yl) == ansatz_monomial(worked_pds, "left", 1, t)


# recovery ---------------------------------------------------------------------

def test_recover_worked(worked_pds, worked):
    t = worked.params
    assert ansatz_recover_t(worked_pds, "right", WORKED["y_plus"]) == t
    assert ansatz_recover_t(worked_pds, "left", WORKED["y_left"]) == t
    assert ansatz_recover_t(worked_pds, "left", WORKED["zT"]) == t
    assert ansatz_recover_t_cartan(worked_pds, "right", WORKED["y_plus"]) == t


@pytest.mark.parametrize("n", [3, 4])
def test_recover_exhaustive(n):
    for v, w in bruhat_pairs(n):
        P = pds(v, w.reduced_word())
        p = mr_parametrize(P)
        yr, yl = twist_side(p)
        z, _ = z_elements(p)
        d = build_wiring(P)
        for side, y in (("right", yr), ("left", yl), ("left", z.T)):
            assert ansatz_recover_t(P, side, y, d) == p.params
            assert ansatz_recover_t_cartan(P, side, y) == p.params


def test_recover_ing(ing_pds):
    p = mr_parametrize(ing_pds, ING_SUBSTITUTION)
    assert ansatz_recover_t(ing_pds, "right", ING["y_plus"]) == ING_SUBSTITUTION
    # the cluster-variable labels: f'_r(z_Ing^T) = f_r(y_right)
    for r in range(1, ing_pds.m + 1):
        assert f_function(ing_pds, r, "left_prime", ING["z_ing_T"]) == f_function(ing_pds, r, "right", ING["y_plus"])
    assert right_factors(p).y_plus == ING["y_plus"]


def test_recover_zero_minor(worked_pds):
    with pytest.raises(ZeroMinor):
        ansatz_recover_t(worked_pds, "right", Mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


# monomial predictions ---------------------------------------------------------

def test_monomials_exhaustive_s4():
    for v, w in bruhat_pairs(4):
        P = pds(v, w.reduced_word())
        p = mr_parametrize(P)
        yr, yl = twist_side(p)
        d = build_wiring(P)
        for j in range(1, P.m + 1):
            for side, y in (("right", yr), ("left", yl)):
                want = ansatz_monomial(P, side, j, p.params)
                assert f_function(P, j, side, y) == want
                assert ansatz_monomial(P, side, j, p.params, "wedge") == want
        for c in d.chambers:
            assert chamber_minor(d, c, "right", yr) == monomial(p.params, wedge_exponents(d, "right", c))
            assert chamber_minor(d, c, "left", yl) == monomial(p.params, wedge_exponents(d, "left", c))


def test_exponent_edge_cases(worked_pds):
    # j = 5, r = 6: -<omega_2, s_2 alpha_1^vee> = -<omega_2, alpha_1^vee + alpha_2^vee> = -1
    assert ansatz_exponents(worked_pds, "right", 5) == {6: -1}
    # v = w: no parameters, every prediction is 1
    full = pds(Perm.longest(3), (1, 2, 1))
    assert all(ansatz_monomial(full, side, j, {}) == 1 for side in ("right", "left") for j in (1, 2, 3))
    assert monomial({}, {}) == 1
    with pytest.raises(IndexOutOfRange):
        ansatz_exponents(worked_pds, "right", 0)
    with pytest.raises(ValueError):
        ansatz_monomial(worked_pds, "right", 1, {}, "other")


def test_chamber_minors_subtraction_free(worked, diagram):
    yr, yl = twist_side(worked)
    for c in diagram.chambers:
        assert is_nonneg_canonical(chamber_minor(diagram, c, "right", yr))
        assert is_nonneg_canonical(chamber_minor(diagram, c, "left", yl))


# rendering --------------------------------------------------------------------

def test_render_ascii(diagram):
    text = render_wiring(diagram)
    assert text.count("*") == 4 and text.count("X") == 2
    assert sum(1 for line in text.splitlines() if "----" in line) == 4
    assert render_wiring(diagram) == text


def test_render_empty_and_grassmannian(grass_pds):
    empty = render_wiring(build_wiring(pds(Perm.identity(3), ())))
    assert "*" not in empty and "X" not in empty
    assert sum(1 for line in empty.splitlines() if line.strip().startswith(("1", "2", "3"))) == 3
    text = render_wiring(build_wiring(grass_pds))
    assert text.count("*") + text.count("X") == 5
    assert sum(1 for line in text.splitlines() if "----" in line) == 5


def test_render_svg_and_labels(diagram, worked):
    svg = render_wiring(diagram, "svg", "chamber_sets")
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f".//{ns}polyline")) == 4
    assert len(root.findall(f"{ns}circle")) == 4
    labelled = render_wiring(diagram, "ascii", "minors", WORKED["y_plus"])
    assert "M>=1/t6" in labelled
    with pytest.raises(ValueError):
        render_wiring(diagram, "png")
