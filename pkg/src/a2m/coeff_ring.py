"""Exact coefficient ring of the A2(m) operators.

Elements are polynomials over Q in eight generators

    g2, g3, p12, p13, p23, q12, q13, q23

where ``pij`` stands for wp(x_i - x_j) and ``qij`` for wp'(x_i - x_j).
The second derivative is not a generator; it is always written as
``6*pij**2 - g2/2``.  Every stored element is kept in ODE-normal form:
``qij**2`` is rewritten as ``4*pij**3 - g2*pij - g3`` so each q exponent is
0 or 1.

Monomials are packed into a single int (``_BITS`` bits per generator) so
monomial multiplication is integer addition.  This is an internal detail;
the public surface speaks in exponent tuples.

The three p generators are not independent: with u = x1 - x2 and
v = x2 - x3 the addition theorem expresses p13 = wp(u + v) through
p12, p23, q12, q23.  :func:`eliminate` applies that relation and
:func:`is_zero_mod_relations` decides identity of functions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

import gmpy2
from gmpy2 import mpq

VARS = ("g2", "g3", "p12", "p13", "p23", "q12", "q13", "q23")
G2, G3, P12, P13, P23, Q12, Q13, Q23 = range(8)
PAIRS = ((1, 2), (1, 3), (2, 3))
_P_OF_PAIR = {(1, 2): P12, (1, 3): P13, (2, 3): P23}
_Q_OF_PAIR = {(1, 2): Q12, (1, 3): Q13, (2, 3): Q23}

_BITS = 12
_FIELD = (1 << _BITS) - 1
MAX_EXPONENT = _FIELD


def _unit(i: int) -> int:
    return 1 << (_BITS * i)


U = tuple(_unit(i) for i in range(8))
# any q exponent >= 2 sets a bit in this mask
_QHIGH = sum((_FIELD ^ 1) << (_BITS * i) for i in (Q12, Q13, Q23))
_ZERO = mpq(0)


def pack(exps: Iterable[int]) -> int:
    mono = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        mono |= e << (_BITS * i)
    return mono


def unpack(mono: int) -> tuple[int, ...]:
    return tuple((mono >> (_BITS * i)) & _FIELD for i in range(8))


def _exp(mono: int, i: int) -> int:
    return (mono >> (_BITS * i)) & _FIELD


def to_rational(r) -> mpq:
    if isinstance(r, str):
        return mpq(Fraction(r))
    if isinstance(r, float):
        raise TypeError("floats are not allowed in exact coefficients")
    return mpq(r)


# ---------------------------------------------------------------------------
# raw dict kernels: {packed monomial: mpq}
# ---------------------------------------------------------------------------


def _addto(acc: dict, mono: int, c) -> None:
    v = acc.get(mono, _ZERO) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def _reduce_q(terms: dict) -> dict:
    """Rewrite q**2 -> 4p**3 - g2*p - g3 until every q exponent is <= 1."""
    if not any(m & _QHIGH for m in terms):
        return terms
    out: dict = {}
    work = list(terms.items())
    while work:
        mono, c = work.pop()
        if not mono & _QHIGH:
            _addto(out, mono, c)
            continue
        for q, p in ((Q12, P12), (Q13, P13), (Q23, P23)):
            if _exp(mono, q) >= 2:
                base = mono - 2 * U[q]
                work.append((base + 3 * U[p], 4 * c))
                work.append((base + U[p] + U[G2], -c))
                work.append((base + U[G3], -c))
                break
    return out


def _mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            out[m] = get(m, _ZERO) + ca * cb
    out = {m: c for m, c in out.items() if c}
    return _reduce_q(out)


def _add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for m, c in b.items():
        _addto(out, m, c * scale)
    return out


def _scale(a: dict, r) -> dict:
    if not r:
        return {}
    return {m: c * r for m, c in a.items()}


def _derivative_rules() -> dict:
    """rules[i] = list of (p index, q index, sign) for d/dx_i."""
    rules = {}
    for i in (1, 2, 3):
        lst = []
        for pair in PAIRS:
            s = (i == pair[0]) - (i == pair[1])
            if s:
                lst.append((_P_OF_PAIR[pair], _Q_OF_PAIR[pair], s))
        rules[i] = lst
    return rules


_DRULES = _derivative_rules()
_HALF = mpq(1, 2)


def _derive(a: dict, i: int) -> dict:
    out: dict = {}
    for mono, c in a.items():
        for p, q, s in _DRULES[i]:
            ep = _exp(mono, p)
            if ep:
                _addto(out, mono - U[p] + U[q], c * (s * ep))
            if _exp(mono, q):
                base = mono - U[q]
                _addto(out, base + 2 * U[p], c * (6 * s))
                _addto(out, base + U[G2], -c * s * _HALF)
    return _reduce_q(out)


def _graded_lex_key(mono: int):
    # graded-lex, variable order g2 < g3 < ... < q23 (last variable most significant)
    e = unpack(mono)
    return (sum(e), e[::-1])


# ---------------------------------------------------------------------------
# public element type
# ---------------------------------------------------------------------------


class RingElement:
    """Immutable polynomial over Q in the eight generators, in ODE-normal form."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping | None = None, *, _raw: bool = False):
        if _raw:
            self._t = terms
        else:
            t: dict = {}
            for k, c in (terms or {}).items():
                mono = k if isinstance(k, int) else pack(k)
                _addto(t, mono, to_rational(c))
            self._t = _reduce_q(t)
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "RingElement":
        return cls(terms, _raw=True)

    @classmethod
    def const(cls, r) -> "RingElement":
        r = to_rational(r)
        return cls._wrap({0: r} if r else {})

    @classmethod
    def gen(cls, name: str) -> "RingElement":
        return cls._wrap({U[VARS.index(name)]: mpq(1)})

    @property
    def terms(self) -> dict:
        """Exponent tuple -> Fraction mapping (a fresh copy)."""
        return {unpack(m): Fraction(int(c.numerator), int(c.denominator)) for m, c in self._t.items()}

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("element is not a constant")
        c = self._t.get(0, _ZERO)
        return Fraction(int(c.numerator), int(c.denominator))

    def __len__(self) -> int:
        return len(self._t)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RingElement._wrap(_add(self._t, other._t))

    __radd__ = __add__

    def __neg__(self):
        return RingElement._wrap(_scale(self._t, -1))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RingElement._wrap(_add(self._t, other._t, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, type(_ZERO))):
            return RingElement._wrap(_scale(self._t, mpq(other)))
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RingElement._wrap(_mul(self._t, other._t))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = {0: mpq(1)}
        base = self._t
        while n:
            if n & 1:
                result = _mul(result, base)
            n >>= 1
            if n:
                base = _mul(base, base)
        return RingElement._wrap(result)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def derive(self, i: int) -> "RingElement":
        return derive(self, i)

    def variables(self) -> set[str]:
        used = 0
        for m in self._t:
            used |= m
        return {v for k, v in enumerate(VARS) if _exp(used, k)}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], mpq]]:
        return [(unpack(m), self._t[m]) for m in sorted(self._t, key=_graded_lex_key)]

    def to_json(self) -> list[dict]:
        return [{"coeff": _qstr(c), "exp": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "RingElement":
        return cls({tuple(d["exp"]): Fraction(d["coeff"]) for d in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def pretty(self) -> str:
        return format_poly(self)

    def __repr__(self):
        return f"RingElement({self.pretty()})"


def _coerce(x):
    if isinstance(x, RingElement):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(_ZERO):
        return RingElement.const(x)
    return NotImplemented


def _qstr(c) -> str:
    return f"{int(c.numerator)}/{int(c.denominator)}"


_PRETTY = {
    "g2": "g₂", "g3": "g₃",
    "p12": "℘₁₂", "p13": "℘₁₃", "p23": "℘₂₃",
    "q12": "℘′₁₂", "q13": "℘′₁₃", "q23": "℘′₂₃",
}
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_poly(e: RingElement, unicode: bool = True) -> str:
    if e.is_zero():
        return "0"
    pieces = []
    for exps, c in reversed(e.sorted_terms()):
        factors = []
        for name, k in zip(VARS, exps):
            if k:
                sym = _PRETTY[name] if unicode else name
                if k > 1:
                    sym += str(k).translate(_SUP) if unicode else f"^{k}"
                factors.append(sym)
        num, den = int(c.numerator), int(c.denominator)
        mag = f"{abs(num)}" if den == 1 else f"{abs(num)}/{den}"
        sign = "-" if num < 0 else "+"
        if factors:
            body = "".join(factors) if mag == "1" else mag + "".join(factors)
        else:
            body = mag
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# generator shorthands
ONE = RingElement.const(1)
ZERO = RingElement.const(0)
g2, g3, p12, p13, p23, q12, q13, q23 = (RingElement.gen(v) for v in VARS)


def wpp(pair: tuple[int, int]) -> RingElement:
    """wp'' of the pair difference, written as 6p**2 - g2/2."""
    p = RingElement.gen(VARS[_P_OF_PAIR[pair]])
    return 6 * p * p - Fraction(1, 2) * g2


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def normalize(e: RingElement) -> RingElement:
    """Return e with every q exponent reduced to 0 or 1 (idempotent)."""
    return RingElement._wrap(_reduce_q(dict(e._t)))


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def ring_scale(a: RingElement, r) -> RingElement:
    return RingElement._wrap(_scale(a._t, to_rational(r)))


def derive(e: RingElement, i: int) -> RingElement:
    """Partial derivative d/dx_i, i in {1, 2, 3}."""
    if i not in (1, 2, 3):
        raise ValueError(f"direction must be 1, 2 or 3, got {i}")
    return RingElement._wrap(_derive(e._t, i))


def substitute(e: RingElement, values: Mapping[str, object], zero=0):
    """Evaluate e with generator values (any numeric type supporting + and *)."""
    vals = [values[v] for v in VARS]
    total = zero
    for mono, c in e._t.items():
        term = c
        for k in range(8):
            ek = _exp(mono, k)
            if ek:
                term = term * vals[k] ** ek
        total = total + term
    return total


def evaluate_complex(e: RingElement, values: Mapping[str, complex]) -> tuple[complex, float]:
    """Return (value, sum of |term|) for a floating-point evaluation."""
    vals = [complex(values[v]) for v in VARS]
    total = 0j
    mag = 0.0
    for mono, c in e._t.items():
        term = complex(float(c))
        for k in range(8):
            ek = _exp(mono, k)
            if ek:
                term *= vals[k] ** ek
        total += term
        mag += abs(term)
    return total, mag


# ---------------------------------------------------------------------------
# addition-theorem quotient
# ---------------------------------------------------------------------------

# In the reduced ring the generators are g2, g3, p12, p23, q12, q23 only and
# D = p12 - p23 is the elimination denominator.
_D = {U[P12]: mpq(1), U[P23]: mpq(-1)}


def _derive_u(a: dict) -> dict:
    """d/du with u = x1 - x2 and v = x2 - x3 held fixed."""
    out: dict = {}
    for mono, c in a.items():
        ep = _exp(mono, P12)
        if ep:
            _addto(out, mono - U[P12] + U[Q12], c * ep)
        if _exp(mono, Q12):
            base = mono - U[Q12]
            _addto(out, base + 2 * U[P12], c * 6)
            _addto(out, base + U[G2], -c * _HALF)
    return _reduce_q(out)


def _build_substitution():
    # p13 = ((q12 - q23)^2 / 4 - (p12 + p23) D^2) / D^2
    dq = {U[Q12]: mpq(1), U[Q23]: mpq(-1)}
    d2 = _mul(_D, _D)
    num_p = _add(_scale(_mul(dq, dq), _HALF * _HALF), _mul({U[P12]: mpq(1), U[P23]: mpq(1)}, d2), -1)
    # q13 = d/du (num_p / D^2) = (num_p' D - 2 num_p q12) / D^3
    num_q = _add(_mul(_derive_u(num_p), _D), _mul(num_p, {U[Q12]: mpq(2)}), -1)
    return num_p, num_q


_P13_NUM, _Q13_NUM = _build_substitution()
_P13_DEN, _Q13_DEN = 2, 3


class ReducedElement:
    """numerator / (p12 - p23)**denom_power in the eliminated ring.

    The numerator involves only g2, g3, p12, p23, q12, q23 with q exponents
    0 or 1, and is not divisible by (p12 - p23) unless denom_power is 0.
    """

    __slots__ = ("numerator", "denom_power")

    def __init__(self, numerator: RingElement, denom_power: int):
        self.numerator = numerator
        self.denom_power = denom_power

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ReducedElement):
            return NotImplemented
        return self.numerator == other.numerator and self.denom_power == other.denom_power

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denom_power": self.denom_power}

    def pretty(self) -> str:
        num = self.numerator.pretty()
        if self.denom_power == 0:
            return num
        return f"({num}) / (℘₁₂ - ℘₂₃)^{self.denom_power}"

    def __repr__(self):
        return f"ReducedElement({self.pretty()})"


def _eliminated_numerator(a: dict) -> tuple[dict, int]:
    groups: dict[tuple[int, int], dict] = {}
    for mono, c in a.items():
        ea, eb = _exp(mono, P13), _exp(mono, Q13)
        rest = mono - ea * U[P13] - eb * U[Q13]
        groups.setdefault((ea, eb), {})[rest] = c
    if not groups:
        return {}, 0
    K = max(_P13_DEN * ea + _Q13_DEN * eb for ea, eb in groups)

    pow_cache: dict = {}

    def power(base: dict, tag: str, n: int) -> dict:
        key = (tag, n)
        if key not in pow_cache:
            pow_cache[key] = {0: mpq(1)} if n == 0 else _mul(power(base, tag, n - 1), base)
        return pow_cache[key]

    out: dict = {}
    for (ea, eb), coeff in sorted(groups.items()):
        factor = _mul(power(_P13_NUM, "p", ea), power(_Q13_NUM, "q", eb))
        factor = _mul(factor, power(_D, "d", K - _P13_DEN * ea - _Q13_DEN * eb))
        for m, c in _mul(coeff, factor).items():
            _addto(out, m, c)
    return out, K


def _divide_by_d(a: dict) -> dict | None:
    """Exact quotient a / (p12 - p23), or None when not divisible."""
    # group by everything except p12 and p23; each group is f(p12, p23)
    groups: dict[int, dict] = {}
    for mono, c in a.items():
        e1, e3 = _exp(mono, P12), _exp(mono, P23)
        rest = mono - e1 * U[P12] - e3 * U[P23]
        groups.setdefault(rest, {})[(e1, e3)] = c
    out: dict = {}
    for rest, f in groups.items():
        # synthetic division in p12 with coefficients polynomial in p23
        top = max(e1 for e1, _ in f)
        coeffs = [dict() for _ in range(top + 1)]
        for (e1, e3), c in f.items():
            coeffs[e1][e3] = c
        carry: dict = {}
        quotient = []
        for k in range(top, 0, -1):
            b = dict(coeffs[k])
            for e3, c in carry.items():
                _addto(b, e3 + 1, c)
            quotient.append((k - 1, b))
            carry = b
        rem = dict(coeffs[0])
        for e3, c in carry.items():
            _addto(rem, e3 + 1, c)
        if rem:
            return None
        for e1, b in quotient:
            for e3, c in b.items():
                out[rest + e1 * U[P12] + e3 * U[P23]] = c
    return out


def eliminate(e: RingElement) -> ReducedElement:
    """Eliminate p13 and q13 with the addition theorem and cancel (p12 - p23)."""
    num, k = _eliminated_numerator(e._t)
    if not num:
        return ReducedElement(ZERO, 0)
    while k > 0:
        q = _divide_by_d(num)
        if q is None:
            break
        num, k = q, k - 1
    return ReducedElement(RingElement._wrap(num), k)


def is_zero_mod_relations(e: RingElement) -> bool:
    """Decide whether e vanishes identically as a function of x1, x2, x3.

    After elimination p12, p23, q12, q23 obey only their two ODEs, so the
    numerator is canonical; cancelling (p12 - p23) is not needed for the verdict.
    """
    num, _ = _eliminated_numerator(e._t)
    return not num
