from __future__ import annotations

import pytest

from richtwist.field import RatQ
from richtwist.matgroup import Mat
from richtwist.weyl import Perm, pds


def golden(rows: list[list[str]]) -> Mat:
    """Matrix from strings in the canonical scalar syntax."""
    return Mat.parse(rows)


# worked n = 4 example: v = s1 s2, word (2,1,2,3,2,1), J = {1,3,4,6}
WORKED = {
    "g": golden([
        ["0", "-t3", "1", "t3*t4"],
        ["-1", "-t1 - t6", "0", "t1*t4"],
        ["0", "-1", "0", "t4"],
        ["0", "0", "0", "1"],
    ]),
    "gcap": golden([
        ["0", "0", "1", "t3*t4"],
        ["-1", "-t1 - t6", "0", "t1*t4"],
        ["0", "-1", "0", "t4"],
        ["0", "0", "0", "1"],
    ]),
    "gtw": golden([
        ["0", "0", "1", "0"],
        ["0", "-1", "t1 + t6", "-t3"],
        ["0", "0", "0", "1"],
        ["-1", "t4", "-t1*t4", "t3*t4"],
    ]),
    "y_plus": golden([
        ["1", "1/t6", "t3/t1", "0"],
        ["0", "1", "t3*t6/t1", "-1/t4"],
        ["0", "0", "1", "1/(t3*t4)"],
        ["0", "0", "0", "1"],
    ]),
    "y0": golden([
        ["1/(t4*t6)", "0", "0", "0"],
        ["0", "t6/t1", "0", "0"],
        ["0", "0", "t1/t3", "0"],
        ["0", "0", "0", "t3*t4"],
    ]),
    "y_minus": golden([
        ["1", "0", "0", "0"],
        ["-(t1 + t6)/(t4*t6)", "1", "0", "0"],
        ["1/(t1*t4)", "-1/t1", "1", "0"],
        ["-1/(t3*t4)", "1/t3", "-t1/t3", "1"],
    ]),
    "vdot_y": golden([
        ["0", "0", "1", "1/(t3*t4)"],
        ["-1", "-1/t6", "-t3/t1", "0"],
        ["0", "-1", "-t3*t6/t1", "1/t4"],
        ["0", "0", "0", "1"],
    ]),
    "y1": golden([
        ["0", "0", "1", "1/(t3*t4)"],
        ["-1", "-1/t6", "0", "1/(t1*t4)"],
        ["0", "-1", "0", "(t1 + t6)/(t1*t4)"],
        ["0", "0", "0", "1"],
    ]),
    "y_left": golden([
        ["1", "t1/t3", "1/t3", "1/(t3*t4)"],
        ["0", "1", "1/t1", "1/(t1*t4)"],
        ["0", "0", "1", "(t1 + t6)/(t4*t6)"],
        ["0", "0", "0", "1"],
    ]),
    "left_twist": golden([
        ["-t1/t3", "-1/t3", "1", "1/(t3*t4)"],
        ["-1", "-1/t1", "0", "1/(t1*t4)"],
        ["0", "-1", "0", "(t1 + t6)/(t4*t6)"],
        ["0", "0", "0", "1"],
    ]),
    "zT": golden([
        ["1", "t1/t3", "1/t3", "1/(t3*t4)"],
        ["0", "1", "1/t1", "1/(t1*t4)"],
        ["0", "0", "1", "(t1 + t6)/(t4*t6)"],
        ["0", "0", "0", "1"],
    ]),
}

# n = 5, v = s3, word (3,2,1,4,3,2,3,4): MR parameters in terms of cluster variables t_k
ING_SUBSTITUTION = {
    r: RatQ(s)
    for r, s in {
        1: "t2*t4/(t1*t5*t8)",
        2: "t3*t5*t8/(t2*t6)",
        3: "t6/t3",
        4: "t5/t4",
        5: "t6/(t5*t8)",
        6: "t8/t6",
        8: "1/t8",
    }.items()
}
ING = {
    "y_plus": golden([
        ["1", "(t3*t4*t5 + t2*t4 + t1*t6)/(t4*t5*t6)", "(t3*t5 + t2)/t6", "(t1 + t2)*t3/(t2*t8)", "t3"],
        ["0", "1", "t5", "(t1 + t2)*t6/(t2*t8)", "t6"],
        ["0", "0", "1", "(t2*t4 + t1*t6)/(t2*t5*t8)", "0"],
        ["0", "0", "0", "1", "t8"],
        ["0", "0", "0", "0", "1"],
    ]),
    "z_ing_T": golden([
        ["1/t3", "(t3*t5 + t2)/(t2*t6)", "(t1 + t2)/(t1*t8)", "t5/t4", "1"],
        ["0", "t3/t2", "0", "-t1*t6/(t2*t4)", "-(t2*t4 + t1*t6)/(t2*t5)"],
        ["0", "0", "t2/t1", "t5*t8/t4", "t8"],
        ["0", "0", "0", "t1/t4", "0"],
        ["0", "0", "0", "0", "t4"],
    ]),
}

# n = 5, k = 2, v = s4 s2, word (2,1,4,3,2)
MUSP = {
    "g": golden([
        ["1", "0", "t2", "0", "0"],
        ["0", "-t1", "1", "t1*t4", "0"],
        ["0", "-1", "0", "t4", "0"],
        ["0", "0", "0", "0", "1"],
        ["0", "0", "0", "-1", "0"],
    ]),
    "twist": golden([
        ["1", "1/(t1*t2)", "1/t2", "0", "0"],
        ["0", "0", "1", "1/(t1*t4)", "0"],
        ["0", "-1", "0", "1/t4", "0"],
        ["0", "0", "0", "0", "1"],
        ["0", "0", "0", "-1", "0"],
    ]),
    "M_twist": golden([
        ["1/t2", "-1/(t1*t2*t4)", "0"],
        ["1", "0", "0"],
        ["0", "1/t4", "0"],
        ["0", "0", "1"],
        ["0", "-1", "0"],
    ]),
}


@pytest.fixture(scope="session")
def worked_pds():
    """n = 4, v = s1 s2, word (2,1,2,3,2,1)."""
    return pds(Perm.from_word([1, 2], 4), (2, 1, 2, 3, 2, 1))


@pytest.fixture(scope="session")
def ing_pds():
    """n = 5, v = s3, word (3,2,1,4,3,2,3,4)."""
    return pds(Perm.from_word([3], 5), (3, 2, 1, 4, 3, 2, 3, 4))


@pytest.fixture(scope="session")
def grass_pds():
    """n = 5, v = s4 s2, word (2,1,4,3,2); w is 2-Grassmannian."""
    return pds(Perm.from_word([4, 2], 5), (2, 1, 4, 3, 2))


# acceptance criteria report ---------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
