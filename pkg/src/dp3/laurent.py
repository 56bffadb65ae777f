"""Exact sparse Laurent polynomials in the six variables x0..x5.

A :class:`LaurentPolynomial` maps exponent vectors (6-tuples of ints, possibly
negative) to nonzero Python ints. Values are immutable and hashable.

Internally each exponent vector is packed into one Python int, 20 bits per
variable with x0 most significant and a fixed bias, so that exponent addition
is integer addition and lexicographic order is integer order.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

NVARS = 6

_BITS = 20
_OFF = 1 << (_BITS - 1)
_MASK = (1 << _BITS) - 1
_BIAS = sum(_OFF << (_BITS * (NVARS - 1 - k)) for k in range(NVARS))
_LIMIT = _OFF - 1


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def pack(exp: Sequence[int]) -> int:
    key = 0
    for e in exp:
        e = int(e)
        if not -_LIMIT <= e <= _LIMIT:
            raise OverflowError(f"exponent {e} out of range")
        key = (key << _BITS) | (e + _OFF)
    return key


def unpack(key: int) -> tuple:
    out = []
    for _ in range(NVARS):
        out.append((key & _MASK) - _OFF)
        key >>= _BITS
    return tuple(reversed(out))


_ONE_KEY = pack((0,) * NVARS)


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients.

    Parameters
    ----------
    terms : mapping or iterable of (exponent, coefficient) pairs
        Exponents are length-6 integer sequences. Zero coefficients are
        dropped; repeated exponents are summed.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for exp, coeff in items:
            if len(exp) != NVARS:
                raise ValueError(f"exponent vector must have length {NVARS}: {tuple(exp)}")
            k = pack(exp)
            acc[k] = acc.get(k, 0) + int(coeff)
        self._t = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls._raw({_ONE_KEY: 1})

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls._raw({_ONE_KEY: int(c)} if c else {})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "LaurentPolynomial":
        return cls._raw({pack(exponents): int(coeff)} if coeff else {})

    @classmethod
    def var(cls, k: int, power: int = 1) -> "LaurentPolynomial":
        exp = [0] * NVARS
        exp[k] = power
        return cls.monomial(exp)

    # -- basic access -----------------------------------------------------

    @property
    def terms(self) -> dict:
        """Exponent tuple -> coefficient map (a fresh dict)."""
        return {unpack(k): c for k, c in self._t.items()}

    def items(self):
        """(exponent tuple, coefficient) pairs in decreasing lex order."""
        return [(unpack(k), self._t[k]) for k in sorted(self._t, reverse=True)]

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def leading_term(self):
        """Lexicographically largest (exponent, coefficient)."""
        k = max(self._t)
        return unpack(k), self._t[k]

    def trailing_term(self):
        k = min(self._t)
        return unpack(k), self._t[k]

    def has_positive_coefficients(self) -> bool:
        return bool(self._t) and all(c > 0 for c in self._t.values())

    def coefficient_sum(self) -> int:
        return sum(self._t.values())

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._t, other._t
        if len(b) > len(a):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return LaurentPolynomial.zero()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            shift = kb - _BIAS
            return LaurentPolynomial._raw({ka + shift: ca * cb for ka, ca in a.items()})
        out: dict = {}
        get = out.get
        a_items = list(a.items())
        for kb, cb in b.items():
            shift = kb - _BIAS
            for ka, ca in a_items:
                k = ka + shift
                out[k] = get(k, 0) + ca * cb
        return LaurentPolynomial._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            (k, c), = self._t.items()
            if abs(c) != 1:
                raise NotDivisible("monomial coefficient must be a unit to invert")
            exp = unpack(k)
            return LaurentPolynomial.monomial([n * e for e in exp], c ** (-n))
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def div_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact quotient ``self / divisor``; raises :class:`NotDivisible`."""
        return lp_div_exact(self, divisor)

    __truediv__ = div_exact

    def permute(self, perm: Sequence[int]) -> "LaurentPolynomial":
        return lp_permute(self, perm)

    def evaluate(self, point: Sequence) -> Fraction:
        return lp_eval(self, point)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def sort_key(self):
        """Total order used for canonical sorting of clusters."""
        return tuple(sorted(self._t.items(), reverse=True))

    # -- text / json ------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({to_text(self)!r})"

    def to_json(self) -> list:
        return [{"exponents": list(e), "coeff": str(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls((d["exponents"], int(d["coeff"])) for d in data)


def _coerce(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial.constant(x)
    return NotImplemented


LP = LaurentPolynomial


def x(k: int) -> LaurentPolynomial:
    """The initial cluster variable ``x_k``."""
    return LaurentPolynomial.var(k)


def monomial(exponents: Sequence[int]) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(exponents)


def lp_add(p: LP, q: LP) -> LP:
    return p + q


def lp_mul(p: LP, q: LP) -> LP:
    return p * q


def lp_div_exact(p: LP, q: LP) -> LP:
    """Divide ``p`` by ``q`` exactly.

    Single-term divisors are handled by exponent subtraction. Otherwise this
    runs long division in lexicographic term order. Any quotient term is at
    least ``min(p) - min(q)``, so the loop gives up once the remainder's
    leading term drops beneath that bound.
    """
    qt = q._t
    if not qt:
        raise ZeroDivisionError("division by the zero polynomial")
    pt = p._t
    if not pt:
        return LP.zero()
    if len(qt) == 1:
        (kq, cq), = qt.items()
        shift = _BIAS - kq
        out = {}
        for k, c in pt.items():
            quo, rem = divmod(c, cq)
            if rem:
                raise NotDivisible(f"coefficient {c} not divisible by {cq}")
            out[k + shift] = quo
        return LP._raw(out)

    q_lead = max(qt)
    q_lc = qt[q_lead]
    # shift keys are stored with the bias included: key(e) - key(q_lead) + BIAS
    bound = min(pt) - min(qt) + _BIAS
    q_rest = [(k - q_lead, c) for k, c in qt.items() if k != q_lead]
    rem = dict(pt)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quotient: dict = {}
    while rem:
        lead = -heapq.heappop(heap)
        c0 = rem.get(lead)
        if c0 is None:
            continue
        shift = lead - q_lead + _BIAS
        if shift < bound:
            raise NotDivisible("nonzero remainder in Laurent long division")
        c, r = divmod(c0, q_lc)
        if r:
            raise NotDivisible("leading coefficient does not divide")
        quotient[shift] = c
        del rem[lead]
        for dk, ce in q_rest:
            t = lead + dk
            old = rem.get(t)
            if old is None:
                rem[t] = -c * ce
                heapq.heappush(heap, -t)
            else:
                v = old - c * ce
                if v:
                    rem[t] = v
                else:
                    del rem[t]
    return LP._raw(quotient)


def lp_permute(p: LP, perm: Sequence[int]) -> LP:
    """Substitute ``x_k -> x_{perm[k]}`` in every monomial."""
    perm = tuple(perm)
    if sorted(perm) != list(range(NVARS)):
        raise ValueError(f"not a permutation of 0..5: {perm}")
    if perm == IDENTITY:
        return p
    out = {}
    for k, c in p._t.items():
        e = unpack(k)
        ne = [0] * NVARS
        for i in range(NVARS):
            ne[perm[i]] = e[i]
        out[pack(ne)] = c
    return LP._raw(out)


def lp_eval(p: LP, point: Sequence) -> Fraction:
    """Exact rational value of ``p`` at ``point`` (six nonzero numbers)."""
    pt = [Fraction(v) for v in point]
    if len(pt) != NVARS or any(v == 0 for v in pt):
        raise ValueError("evaluation point needs six nonzero coordinates")
    powers: list = [dict() for _ in range(NVARS)]

    def power(i, n):
        cache = powers[i]
        if n not in cache:
            cache[n] = pt[i] ** n
        return cache[n]

    total = Fraction(0)
    for k, c in p._t.items():
        term = Fraction(c)
        for i, n in enumerate(unpack(k)):
            if n:
                term *= power(i, n)
        total += term
    return total


def to_text(p: LP) -> str:
    """Canonical text form, e.g. ``x0^-1*x2*x4 + x0^-1*x3*x5``."""
    if not p._t:
        return "0"
    pieces = []
    for e, c in p.items():
        factors = []
        for k, n in enumerate(e):
            if n == 1:
                factors.append(f"x{k}")
            elif n:
                factors.append(f"x{k}^{n}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_FACTOR = re.compile(r"x([0-5])(?:\^(-?\d+))?")


def parse(text: str) -> LP:
    """Inverse of :func:`to_text` (also accepts ``**`` for powers)."""
    s = text.replace("**", "^").replace(" ", "")
    if s in ("", "0"):
        return LP.zero()
    terms = []
    buf, sign = "", 1
    for i, ch in enumerate(s):
        if ch in "+-" and (i == 0 or s[i - 1] != "^"):
            if buf:
                terms.append((sign, buf))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
    if buf:
        terms.append((sign, buf))
    acc: dict = {}
    for sgn, body in terms:
        coeff = sgn
        exp = [0] * NVARS
        for factor in body.split("*"):
            m = _FACTOR.fullmatch(factor)
            if m:
                exp[int(m.group(1))] += int(m.group(2) or 1)
            elif factor.isdigit():
                coeff *= int(factor)
            else:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
        key = tuple(exp)
        acc[key] = acc.get(key, 0) + coeff
    return LP(acc)


def invert_permutation(perm: Sequence[int]) -> tuple:
    inv = [0] * len(perm)
    for k, v in enumerate(perm):
        inv[v] = k
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``(p o q)[k] = p[q[k]]``."""
    return tuple(p[q[k]] for k in range(len(q)))


def from_cycles(*cycles: Sequence[int], n: int = NVARS) -> tuple:
    """Permutation tuple from cycle notation, e.g. ``from_cycles((0, 1), (2, 3))``."""
    perm = list(range(n))
    for cyc in cycles:
        cyc = tuple(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return tuple(perm)


IDENTITY = tuple(range(NVARS))
SIGMA = from_cycles((0, 1), (2, 3), (4, 5))
RHO = from_cycles((0, 3), (1, 2))
