from __future__ import annotations

import itertools
import random

import pytest

from richtwist.errors import IndexOutOfRange, NonReducedWord, NotBruhatBelow, ParseError
from richtwist.weyl import (
    Perm,
    all_perms,
    bruhat_leq,
    bruhat_pairs,
    grassmannian_check,
    is_reduced,
    length_and_bruhat,
    pairing,
    parse_perm,
    parse_word,
    pds,
    special_elements,
)


def reduced_words(w: Perm) -> list[tuple[int, ...]]:
    """All reduced words, by peeling right descents recursively."""
    if w.length() == 0:
        return [()]
    out = []
    for i in range(1, w.n):
        if w.right_descent(i):
            out += [word + (i,) for word in reduced_words(w.times_simple(i))]
    return out


def subword_below(u: Perm, w: Perm) -> bool:
    # u <= w iff some subword of a reduced word of w is a reduced word of u
    word = w.reduced_word()
    for mask in itertools.product((0, 1), repeat=len(word)):
        sub = [i for i, keep in zip(word, mask) if keep]
        if Perm.from_word(sub, w.n) == u:
            return True
    return False


def test_length_examples():
    assert length_and_bruhat(Perm([2, 3, 1, 4]), Perm.longest(4)) == (2, True)
    assert all(bruhat_leq(Perm.identity(4), w) for w in all_perms(4))
    assert bruhat_leq(Perm.from_word([1, 2], 4), Perm.longest(4))


def test_composition_convention():
    # (uv)(j) = u(v(j)); a word acts by its last letter first
    u, v = Perm.simple(1, 3), Perm.simple(2, 3)
    assert (u * v)(3) == u(v(3)) == 1
    assert Perm.from_word([1, 2], 3) == u * v


@pytest.mark.parametrize("n", [3, 4])
def test_bruhat_matches_subword_criterion(n):
    perms = list(all_perms(n))
    for u in perms:
        for w in perms:
            assert bruhat_leq(u, w) == subword_below(u, w)


def test_length_subadditive():
    perms = list(all_perms(4))
    for u in perms:
        for v in perms:
            assert (u * v).length() <= u.length() + v.length()


def test_pds_examples():
    assert pds(Perm.from_word([1, 2], 4), (2, 1, 2, 3, 2, 1)).jv == (1, 3, 4, 6)
    assert pds(Perm.from_word([3], 5), (3, 2, 1, 4, 3, 2, 3, 4)).jv == (1, 2, 3, 4, 5, 6, 8)
    assert pds(Perm.identity(4), (1, 2, 3, 1)).jv == (1, 2, 3, 4)


def test_pds_tables(worked_pds):
    P = worked_pds
    ident = Perm.identity(4)
    assert P.v_prefix[0] == ident and P.v_prefix[-1] == P.v and P.w_prefix[-1] == P.w
    for r in range(P.m + 1):
        assert P.w_suffix[r] == P.w.inverse() * P.w_prefix[r]
        assert P.v_suffix[r] == P.v.inverse() * P.v_prefix[r]


def _check_pds(v: Perm, word: tuple[int, ...]) -> None:
    P = pds(v, word)
    used = [P.word[r - 1] for r in sorted(P.used)]
    assert Perm.from_word(used, v.n) == v
    assert len(P.jv) == P.w.length() - v.length()
    # positivity: along the word, v_(r) never drops in length at an unused step
    for r in range(1, P.m + 1):
        if r in P.jv:
            assert P.v_prefix[r - 1].times_simple(P.letter(r)).length() > P.v_prefix[r - 1].length()


def test_pds_exhaustive_small():
    for n in (2, 3, 4):
        for v, w in bruhat_pairs(n):
            for word in reduced_words(w):
                _check_pds(v, word)


def test_pds_random_n5():
    rng = random.Random(7)
    pairs = list(bruhat_pairs(5))
    for v, w in rng.sample(pairs, 40):
        words = reduced_words(w)
        _check_pds(v, rng.choice(words))


def test_pds_rightmost():
    # any other subexpression for v is to the left of the greedy one
    for v, w in bruhat_pairs(4):
        word = w.reduced_word()
        P = pds(v, word)
        best = sorted(P.used, reverse=True)
        for subset in itertools.combinations(range(1, len(word) + 1), v.length()):
            if Perm.from_word([word[r - 1] for r in subset], 4) == v:
                assert sorted(subset, reverse=True) <= best


def test_pds_errors():
    with pytest.raises(NotBruhatBelow):
        pds(Perm.simple(2, 3), (1,))
    with pytest.raises(NonReducedWord):
        pds(Perm.identity(3), (1, 1))
    with pytest.raises(IndexOutOfRange):
        pds(Perm.identity(3), (3,))


def test_pairing_examples():
    ident = Perm.identity(4)
    for i in range(1, 4):
        for j in range(1, 4):
            assert pairing(i, ident, j) == (1 if i == j else 0)
    assert pairing(1, Perm.simple(1, 3), 1) == -1
    assert pairing(2, Perm.simple(1, 3), 2) == 1


def test_special_elements():
    s = special_elements(4)
    assert s.w0 == Perm([4, 3, 2, 1])
    assert s.i_star[1] == 3
    assert s.cartan[0][1] == -1 and s.cartan[0][2] == 0 and s.cartan[1][1] == 2
    with pytest.raises(IndexOutOfRange):
        special_elements(1)


def test_grassmannian_examples():
    assert grassmannian_check(Perm.from_word([2, 1, 4, 3, 2], 5), 2)
    assert all(grassmannian_check(Perm.identity(4), k) for k in range(1, 4))
    assert not grassmannian_check(Perm.longest(3), 1)


def test_reduced_word_and_lift_helpers():
    for w in all_perms(4):
        assert Perm.from_word(w.reduced_word(), 4) == w
        assert is_reduced(w.reduced_word(), 4)


def test_parsing():
    assert parse_perm("[2,3,1,4]") == Perm([2, 3, 1, 4])
    assert parse_perm("s1*s2", 4) == Perm([2, 3, 1, 4])
    assert parse_perm("w0", 3) == Perm.longest(3)
    assert parse_word("2,1,2,3,2,1") == (2, 1, 2, 3, 2, 1)
    assert parse_word("") == ()
    with pytest.raises(ParseError):
        parse_perm("[1,1,2]")
    with pytest.raises(ParseError):
        parse_word("1,a")
    with pytest.raises(ParseError):
        parse_perm("[1,2]", 3)
