"""The symmetric group S_n: reduced words, Bruhat order and subexpressions.

Permutations are written in one-line notation with values in ``1..n``.
Composition follows ``(uv)(j) = u(v(j))``, so the product of a word
``s_{i1} ... s_{im}`` acts on ``j`` by applying ``s_{im}`` first.

>>> v = Perm.from_word([1, 2], 4)
>>> v
Perm([2, 3, 1, 4])
>>> v.length()
2
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import IndexOutOfRange, NonReducedWord, NotBruhatBelow, ParseError


@dataclass(frozen=True)
class Perm:
    """A permutation of ``1..n`` in one-line notation."""

    oneline: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "oneline", tuple(int(x) for x in self.oneline))
        if sorted(self.oneline) != list(range(1, len(self.oneline) + 1)):
            raise ParseError(f"{list(self.oneline)} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.oneline)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, i: int, n: int) -> Perm:
        """The transposition s_i = (i, i+1)."""
        _check_letter(i, n)
        a = list(range(1, n + 1))
        a[i - 1], a[i] = a[i], a[i - 1]
        return cls(tuple(a))

    @classmethod
    def longest(cls, n: int) -> Perm:
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def from_word(cls, word: Sequence[int], n: int) -> Perm:
        """Product ``s_{i1} s_{i2} ... s_{im}`` (need not be reduced)."""
        a = list(range(1, n + 1))
        for i in word:
            _check_letter(i, n)
            # right multiplication by s_i swaps positions i, i+1
            a[i - 1], a[i] = a[i], a[i - 1]
        return cls(tuple(a))

    def __call__(self, j: int) -> int:
        return self.oneline[j - 1]

    def __mul__(self, other: Perm) -> Perm:
        if self.n != other.n:
            raise ValueError("permutations of different sizes")
        return Perm(tuple(self(other(j)) for j in range(1, self.n + 1)))

    def inverse(self) -> Perm:
        inv = [0] * self.n
        for j, wj in enumerate(self.oneline, start=1):
            inv[wj - 1] = j
        return Perm(tuple(inv))

    def length(self) -> int:
        a = self.oneline
        return sum(1 for x in range(len(a)) for y in range(x + 1, len(a)) if a[x] > a[y])

    def right_descent(self, i: int) -> bool:
        """True iff l(self * s_i) < l(self)."""
        return self(i) > self(i + 1)

    def times_simple(self, i: int) -> Perm:
        a = list(self.oneline)
        a[i - 1], a[i] = a[i], a[i - 1]
        return Perm(tuple(a))

    def image(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self(j) for j in subset)

    def reduced_word(self) -> tuple[int, ...]:
        """Some reduced word, built by peeling off right descents.

        >>> Perm([4, 3, 2, 1]).reduced_word()
        (1, 2, 3, 1, 2, 1)
        """
        word: list[int] = []
        u = self
        while True:
            for i in range(1, self.n):
                if u.right_descent(i):
                    word.append(i)
                    u = u.times_simple(i)
                    break
            else:
                return tuple(reversed(word))

    def __repr__(self) -> str:
        return f"Perm({list(self.oneline)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.oneline)) + "]"


def _check_letter(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"letter {i} outside 1..{n - 1}", letter=i, n=n)


def _rank_table(w: Perm) -> list[list[int]]:
    # r[i][j] = #{a <= i : w(a) >= j}
    n = w.n
    r = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r[i][j] = r[i - 1][j] + (1 if w(i) >= j else 0)
    return r


def bruhat_leq(u: Perm, v: Perm) -> bool:
    """Bruhat order via the rank-table criterion.

    >>> bruhat_leq(Perm([2, 3, 1, 4]), Perm.longest(4))
    True
    >>> bruhat_leq(Perm([2, 1, 3]), Perm([1, 3, 2]))
    False
    """
    if u.n != v.n:
        raise ValueError("permutations of different sizes")
    ru, rv = _rank_table(u), _rank_table(v)
    return all(ru[i][j] <= rv[i][j] for i in range(1, u.n + 1) for j in range(1, u.n + 1))


def length_and_bruhat(u: Perm, v: Perm) -> tuple[int, bool]:
    return u.length(), bruhat_leq(u, v)


def is_reduced(word: Sequence[int], n: int) -> bool:
    return Perm.from_word(word, n).length() == len(word)


def pairing(i: int, u: Perm, j: int) -> int:
    """The integer <omega_i, u alpha_j^vee> in type A.

    ``u`` sends e_j - e_{j+1} to e_{u(j)} - e_{u(j+1)}; omega_i sums the first
    i coordinates.

    >>> pairing(1, Perm.simple(1, 3), 1)
    -1
    >>> pairing(2, Perm.simple(1, 3), 2)
    1
    """
    return int(u(j) <= i) - int(u(j + 1) <= i)


def coroot_image(u: Perm, j: int) -> tuple[int, ...]:
    """Coordinates of u alpha_j^vee = e_{u(j)} - e_{u(j+1)}."""
    vec = [0] * u.n
    vec[u(j) - 1] += 1
    vec[u(j + 1) - 1] -= 1
    return tuple(vec)


@dataclass(frozen=True)
class SpecialElements:
    w0: Perm
    i_star: dict[int, int]
    cartan: tuple[tuple[int, ...], ...]


def special_elements(n: int) -> SpecialElements:
    """Longest element, the involution i -> i* = n - i and the Cartan matrix.

    >>> special_elements(4).i_star[1]
    3
    """
    if n < 2:
        raise IndexOutOfRange("need n >= 2", n=n)
    cartan = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(1, n)) for i in range(1, n)
    )
    return SpecialElements(Perm.longest(n), {i: n - i for i in range(1, n)}, cartan)


def grassmannian_check(w: Perm, k: int) -> bool:
    """True iff w(1) < ... < w(k) and w(k+1) < ... < w(n).

    >>> grassmannian_check(Perm.from_word([2, 1, 4, 3, 2], 5), 2)
    True
    """
    a = w.oneline
    return all(a[x] < a[x + 1] for x in range(k - 1)) and all(a[x] < a[x + 1] for x in range(k, w.n - 1))


@dataclass(frozen=True)
class PdsData:
    """A reduced word for w with the rightmost subexpression for v marked.

    Tables are indexed by r = 0..m:  ``v_prefix[r]`` is v_(r) (product of the
    used letters among the first r), ``w_prefix[r]`` is w_(r), and the suffixes
    ``v_suffix[r] = v^{-1} v_(r)``, ``w_suffix[r] = w^{-1} w_(r)``.
    """

    v: Perm
    w: Perm
    word: tuple[int, ...]
    used: frozenset[int]
    v_prefix: tuple[Perm, ...] = field(repr=False)
    w_prefix: tuple[Perm, ...] = field(repr=False)
    v_suffix: tuple[Perm, ...] = field(repr=False)
    w_suffix: tuple[Perm, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def m(self) -> int:
        return len(self.word)

    @cached_property
    def jv(self) -> tuple[int, ...]:
        return tuple(r for r in range(1, self.m + 1) if r not in self.used)

    def letter(self, r: int) -> int:
        return self.word[r - 1]

    def is_dotted(self, r: int) -> bool:
        return r not in self.used


def pds(v: Perm, word: Sequence[int]) -> PdsData:
    """Positive distinguished subexpression by a right-to-left greedy scan.

    >>> pds(Perm.from_word([1, 2], 4), (2, 1, 2, 3, 2, 1)).jv
    (1, 3, 4, 6)
    """
    n = v.n
    word = tuple(int(i) for i in word)
    for i in word:
        _check_letter(i, n)
    w = Perm.from_word(word, n)
    if w.length() != len(word):
        raise NonReducedWord(f"word {list(word)} is not reduced", word=list(word))
    u = v
    used = set()
    for r in range(len(word), 0, -1):
        i = word[r - 1]
        if u.right_descent(i):
            used.add(r)
            u = u.times_simple(i)
    if u != Perm.identity(n):
        raise NotBruhatBelow(f"{v} is not below {w} in Bruhat order", v=str(v), w=str(w))
    ident = Perm.identity(n)
    v_pre, w_pre = [ident], [ident]
    for r, i in enumerate(word, start=1):
        w_pre.append(w_pre[-1].times_simple(i))
        v_pre.append(v_pre[-1].times_simple(i) if r in used else v_pre[-1])
    vinv, winv = v.inverse(), w.inverse()
    return PdsData(
        v=v,
        w=w,
        word=word,
        used=frozenset(used),
        v_prefix=tuple(v_pre),
        w_prefix=tuple(w_pre),
        v_suffix=tuple(vinv * p for p in v_pre),
        w_suffix=tuple(winv * p for p in w_pre),
    )


def all_perms(n: int) -> Iterator[Perm]:
    for p in itertools.permutations(range(1, n + 1)):
        yield Perm(p)


def bruhat_pairs(n: int) -> Iterator[tuple[Perm, Perm]]:
    """All pairs v <= w in S_n, in a deterministic order."""
    perms = list(all_perms(n))
    for w in perms:
        for v in perms:
            if bruhat_leq(v, w):
                yield v, w


# parsing --------------------------------------------------------------------

def parse_word(text: str | Sequence[int]) -> tuple[int, ...]:
    """Parse ``"2,1,2"`` (or a list) into a word; ``""`` is the empty word."""
    if not isinstance(text, str):
        return tuple(int(i) for i in text)
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in re.split(r"[,\s]+", text) if tok)
    except ValueError as exc:
        raise ParseError(f"cannot parse word {text!r}") from exc


def parse_perm(text: str | Sequence[int], n: int | None = None) -> Perm:
    """Parse one-line notation ``"[2,3,1,4]"`` or a word ``"s1*s2"``.

    >>> parse_perm("s1*s2", 4)
    Perm([2, 3, 1, 4])
    >>> parse_perm("id", 3)
    Perm([1, 2, 3])
    """
    if not isinstance(text, str):
        return Perm(tuple(text))
    s = text.strip()
    if s in ("id", "e", "1") and n is not None:
        return Perm.identity(n)
    if s in ("w0", "w_0") and n is not None:
        return Perm.longest(n)
    if s.startswith("s"):
        if n is None:
            raise ParseError("a word-form permutation needs n")
        letters = re.findall(r"s_?(\d+)", s)
        if "".join(f"s{x}" for x in letters) != re.sub(r"[\s*_]", "", s):
            raise ParseError(f"cannot parse permutation {text!r}")
        return Perm.from_word([int(x) for x in letters], n)
    nums = parse_word(s)
    p = Perm(nums)
    if n is not None and p.n != n:
        raise ParseError(f"permutation {text!r} does not have size {n}")
    return p
