"""Exact scalars: multivariate polynomials and rational functions over Q.

Variables are ``t1, t2, ...`` identified by a positive index.  A :class:`RatQ`
is stored as a pair of coprime integer polynomials ``P/Q`` with the leading
coefficient of ``Q`` positive, so equal functions have identical storage.  The
public canonical form divides both by the content of ``Q``: the denominator is
then primitive and the numerator carries any rational content.

>>> t1, t4, t6 = var(1), var(4), var(6)
>>> (t1 * t4 + t4 * t6) / t4
RatQ('t1 + t6')
>>> 1 / t6 + t1 / (t1 * t6)
RatQ('2/t6')
>>> str((t1 + t6) / (t1 * t4))
'(t1 + t6)/(t1*t4)'

Matrices elsewhere in the package are generic over three scalar kinds:
:class:`RatQ`, :class:`fractions.Fraction` (exact numeric points) and
``float`` (numeric checks).  :func:`is_zero` dispatches on the kind.
"""

from __future__ import annotations

import enum
import math
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Union

import flint

from .errors import DivisionByZero, ParseError, PoleAtPoint, ZeroDenominator

MAX_VARS = 32
FLOAT_ZERO_TOL = 1e-10

# Generators listed in reverse so that flint's "deglex" order is graded
# lexicographic with t1 < t2 < ...; the leading term then follows that order.
_CTX = flint.fmpz_mpoly_ctx.get(tuple(f"t{MAX_VARS - i}" for i in range(MAX_VARS)), "deglex")
_GENS = _CTX.gens()
_ZERO = _CTX.from_dict({})
_ONE = _CTX.from_dict({(0,) * MAX_VARS: 1})

Exponent = tuple[int, ...]


def _ext_to_exp(key: Sequence[int]) -> Exponent:
    """flint exponent tuple (t_MAX first) to ours (t1 first), trailing zeros cut."""
    exp = [int(e) for e in reversed(key)]
    while exp and exp[-1] == 0:
        exp.pop()
    return tuple(exp)


def _exp_to_ext(exp: Exponent) -> tuple[int, ...]:
    if len(exp) > MAX_VARS:
        raise ValueError(f"at most {MAX_VARS} variables are supported")
    full = list(exp) + [0] * (MAX_VARS - len(exp))
    return tuple(reversed(full))


def _grlex_key(exp: Exponent) -> tuple[int, tuple[int, ...]]:
    # graded lex with t1 < t2 < ...: compare degree, then exponents from the
    # highest-index variable down.
    return (sum(exp), tuple(reversed(exp)))


def _display_key(exp: Exponent) -> tuple[int, tuple[int, ...]]:
    # Printing order: higher degree first, then larger powers of t1, t2, ...
    return (-sum(exp), tuple(-e for e in exp))


@dataclass(frozen=True)
class PolyQ:
    """A polynomial with rational coefficients, as a map exponent -> coefficient.

    Exponent tuples list the powers of ``t1, t2, ...`` and carry no trailing
    zeros.  Zero coefficients are never stored.

    >>> PolyQ({(1,): Fraction(1), (0, 0, 0, 0, 0, 1): Fraction(1)})
    PolyQ('t1 + t6')
    """

    terms: Mapping[Exponent, Fraction]

    def __post_init__(self) -> None:
        clean: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            exp = tuple(exp)
            while exp and exp[-1] == 0:
                exp = exp[:-1]
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @property
    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _display_key(kv[0]))

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading term in graded lex order with t1 < t2 < ..."""
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyQ):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return _format_terms(self.sorted_terms())

    def __repr__(self) -> str:
        return f"PolyQ({str(self)!r})"


def _format_monomial(exp: Exponent) -> str:
    parts = []
    for idx, e in enumerate(exp, start=1):
        if e == 1:
            parts.append(f"t{idx}")
        elif e > 1:
            parts.append(f"t{idx}^{e}")
    return "*".join(parts)


def _format_terms(terms: list[tuple[Exponent, Fraction]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (exp, c) in enumerate(terms):
        mono = _format_monomial(exp)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _to_flint_int(p: PolyQ) -> tuple[Any, int]:
    """Clear denominators: return (integer poly, multiplier m) with m*p = poly."""
    m = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator), p.terms.values(), 1)
    return _CTX.from_dict({_exp_to_ext(e): int(c * m) for e, c in p.terms.items()}), m


class Certificate(enum.Enum):
    """Verdict of the subtraction-free test: only a positive answer is decisive."""

    CERTIFIED_SF = "CertifiedSF"
    INCONCLUSIVE = "Inconclusive"

    def __bool__(self) -> bool:
        return self is Certificate.CERTIFIED_SF


class RatQ:
    """A rational function in ``t1, t2, ...`` in canonical reduced form."""

    __slots__ = ("_p", "_q", "_hash")

    def __init__(self, value: Union[str, int, Fraction, "RatQ"] = 0) -> None:
        if isinstance(value, RatQ):
            self._p, self._q = value._p, value._q
        elif isinstance(value, str):
            r = parse_ratq(value)
            self._p, self._q = r._p, r._q
        else:
            f = Fraction(value)
            self._p = _CTX.from_dict({(0,) * MAX_VARS: f.numerator}) if f else _ZERO
            self._q = _CTX.from_dict({(0,) * MAX_VARS: f.denominator})
        self._hash: int | None = None

    @classmethod
    def _raw(cls, p: Any, q: Any) -> "RatQ":
        obj = cls.__new__(cls)
        obj._p, obj._q, obj._hash = p, q, None
        return obj

    @classmethod
    def _reduce(cls, p: Any, q: Any) -> "RatQ":
        if q.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        if p.is_zero():
            return cls._raw(_ZERO, _ONE)
        if not q.is_constant() or q.leading_coefficient() != 1:
            g = p.gcd(q)
            if not g.is_one():
                p, q = p / g, q / g
            # gcd content is positive, so the integer content may still be shared
            c = math.gcd(int(p.content()), int(q.content()))
            if c != 1:
                p, q = p / c, q / c
            if q.leading_coefficient() < 0:
                p, q = -p, -q
        return cls._raw(p, q)

    @classmethod
    def from_polys(cls, num: PolyQ, den: PolyQ) -> "RatQ":
        """Normalize ``num/den``; raises :class:`ZeroDenominator` when ``den = 0``."""
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        p, mp = _to_flint_int(num)
        q, mq = _to_flint_int(den)
        # num/den = (p/mp)/(q/mq) = (p*mq)/(q*mp)
        return cls._reduce(p * mq, q * mp)

    # canonical parts -----------------------------------------------------
    @property
    def num(self) -> PolyQ:
        c = int(self._q.content())
        return PolyQ({_ext_to_exp(k): Fraction(int(v), c) for k, v in self._p.to_dict().items()})

    @property
    def den(self) -> PolyQ:
        c = int(self._q.content())
        return PolyQ({_ext_to_exp(k): Fraction(int(v), c) for k, v in self._q.to_dict().items()})

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant() and self._q.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self._p.leading_coefficient()) if not self._p.is_zero() else 0,
                        int(self._q.leading_coefficient()))

    def variables(self) -> set[int]:
        out: set[int] = set()
        for poly in (self._p, self._q):
            for k in poly.to_dict():
                out.update(i for i, e in enumerate(_ext_to_exp(k), start=1) if e)
        return out

    # arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(x: Any) -> "RatQ | None":
        if isinstance(x, RatQ):
            return x
        if isinstance(x, (int, Fraction)):
            return RatQ(x)
        return None

    def __add__(self, other: Any) -> "RatQ":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._q == o._q:
            return RatQ._reduce(self._p + o._p, self._q)
        return RatQ._reduce(self._p * o._q + o._p * self._q, self._q * o._q)

    __radd__ = __add__

    def __neg__(self) -> "RatQ":
        return RatQ._raw(-self._p, self._q)

    def __pos__(self) -> "RatQ":
        return self

    def __sub__(self, other: Any) -> "RatQ":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "RatQ":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "RatQ":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatQ(0)
        # cross-cancel keeps intermediate sizes down
        g1 = self._p.gcd(o._q)
        g2 = o._p.gcd(self._q)
        p = (self._p / g1) * (o._p / g2)
        q = (self._q / g2) * (o._q / g1)
        return RatQ._reduce(p, q)

    __rmul__ = __mul__

    def inverse(self) -> "RatQ":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatQ._reduce(self._q, self._p)

    def __truediv__(self, other: Any) -> "RatQ":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero", numerator=str(self))
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "RatQ":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "RatQ":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RatQ._raw(self._p ** e, self._q ** e)

    # comparison ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p and self._q == o._q

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((str(self._p), str(self._q)))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # text ----------------------------------------------------------------
    def __str__(self) -> str:
        num, den = self.num, self.den
        nterms = num.sorted_terms()
        dterms = den.sorted_terms()
        ns = _format_terms(nterms)
        if dterms == [((), Fraction(1))]:
            return ns
        simple_num = len(nterms) == 1 and nterms[0][1].denominator == 1 and (
            nterms[0][0] == () or abs(nterms[0][1]) == 1
        )
        ds = _format_terms(dterms)
        simple_den = len(dterms) == 1 and dterms[0][1] == 1 and "*" not in ds
        if not simple_num:
            ns = f"({ns})"
        if not simple_den:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatQ({str(self)!r})"


def var(index: int) -> RatQ:
    """The variable ``t_index`` (1-based)."""
    if not 1 <= index <= MAX_VARS:
        raise ValueError(f"variable index must lie in 1..{MAX_VARS}")
    return RatQ._raw(_GENS[MAX_VARS - index], _ONE)


def ratq_normalize(num: PolyQ, den: PolyQ) -> RatQ:
    """Canonical reduced form of ``num/den``."""
    return RatQ.from_polys(num, den)


def is_nonneg_canonical(x: RatQ) -> Certificate:
    """Sufficient test for subtraction-freeness: all canonical coefficients >= 0.

    >>> is_nonneg_canonical(RatQ("(t1 + t6)/(t1*t4)")).value
    'CertifiedSF'
    >>> is_nonneg_canonical(RatQ("t1 - t6")).value
    'Inconclusive'
    """
    if isinstance(x, (int, Fraction, float)):
        return Certificate.CERTIFIED_SF if x >= 0 else Certificate.INCONCLUSIVE
    coeffs = list(x._p.coeffs()) + list(x._q.coeffs())
    return Certificate.CERTIFIED_SF if all(c >= 0 for c in coeffs) else Certificate.INCONCLUSIVE


def _point_lookup(point: Mapping[int, Any] | Sequence[Any]) -> Any:
    if isinstance(point, Mapping):
        return lambda i: point[i]
    return lambda i: point[i - 1]


def _eval_poly(poly: Any, value_of: Any, one: Any) -> Any:
    total: Any = 0
    cache: dict[int, Any] = {}
    for key, c in poly.to_dict().items():
        term: Any = one * int(c)
        for i, e in enumerate(_ext_to_exp(key), start=1):
            if e:
                if i not in cache:
                    try:
                        cache[i] = value_of(i)
                    except (KeyError, IndexError) as exc:
                        raise ValueError(f"no value supplied for t{i}") from exc
                term = term * cache[i] ** e
        total = total + term
    return total


def ratq_eval(x: RatQ | int | Fraction, point: Mapping[int, Any] | Sequence[Any]) -> Any:
    """Substitute values for the variables.

    ``point`` is either a mapping ``{index: value}`` or a sequence whose entry
    ``k-1`` is the value of ``t_k``.  Values may be ints, Fractions, floats or
    RatQ (the latter gives substitution of rational functions).

    >>> ratq_eval(RatQ("(t1 + t6)/(t1*t4)"), {1: 1, 4: 1, 6: 1})
    Fraction(2, 1)
    """
    if not isinstance(x, RatQ):
        return x
    value_of = _point_lookup(point)
    sample = None
    for i in sorted(x.variables()):
        sample = value_of(i)
        break
    if isinstance(sample, float):
        one: Any = 1.0
    elif isinstance(sample, RatQ):
        one = RatQ(1)
    else:
        one = Fraction(1)
    den = _eval_poly(x._q, value_of, one)
    if is_zero(den):
        raise PoleAtPoint("denominator vanishes at the point", value=str(x))
    num = _eval_poly(x._p, value_of, one)
    return num / den


# generic scalar helpers -----------------------------------------------------

Scalar = Union[RatQ, Fraction, float, int]


def is_zero(x: Scalar) -> bool:
    if isinstance(x, RatQ):
        return x.is_zero()
    if isinstance(x, float):
        return abs(x) < FLOAT_ZERO_TOL
    return x == 0


def sdiv(a: Scalar, b: Scalar) -> Scalar:
    """Exact-aware division: two ints give a Fraction rather than a float."""
    if is_zero(b):
        raise DivisionByZero("division by zero", numerator=scalar_str(a))
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def scalar_kind(x: Scalar) -> str:
    return "float" if isinstance(x, float) else "exact"


def scalar_str(x: Scalar) -> str:
    """Serialize a scalar; floats use ``repr`` for a lossless round trip."""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def to_float(x: Scalar) -> float:
    if isinstance(x, RatQ):
        return float(x.to_fraction())
    return float(x)


# parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][-+]?\d+)?|\d+)|(t\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character in {text!r}", position=pos)
        out.append(m.group(1) or m.group(2) or ("^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*`` and friends."""

    def __init__(self, tokens: list[str]) -> None:
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return tok

    def expr(self) -> RatQ:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatQ:
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero in expression")
                val = val / rhs
        return val

    def unary(self) -> RatQ:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatQ:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be an integer, got {tok!r}")
            e = int(tok)
            base = base ** (-e if neg else e)
        return base

    def atom(self) -> RatQ:
        tok = self.take()
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                raise ParseError("missing closing parenthesis")
            return val
        if tok.startswith("t"):
            idx = int(tok[1:])
            if not 1 <= idx <= MAX_VARS:
                raise ParseError(f"variable {tok} out of range")
            return var(idx)
        if tok[0].isdigit():
            return RatQ(Fraction(tok))
        raise ParseError(f"unexpected token {tok!r}")


def parse_ratq(text: str) -> RatQ:
    """Parse the canonical string form (any arithmetic expression in t_k).

    >>> parse_ratq("(t1 + t6)/(t1*t4)") == (var(1) + var(6)) / (var(1) * var(4))
    True
    """
    parser = _Parser(_tokenize(text))
    if not parser.tokens:
        raise ParseError("empty expression")
    val = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input near {parser.peek()!r}")
    return val


def parse_scalar(text: str, kind: str = "exact") -> Scalar:
    """Parse a scalar literal: ``kind`` is ``"exact"`` (RatQ) or ``"float"``."""
    if kind == "float":
        try:
            return float(text)
        except ValueError:
            return to_float(parse_ratq(text))
    return parse_ratq(text)
