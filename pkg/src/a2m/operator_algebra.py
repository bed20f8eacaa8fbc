"""Linear differential operators in d1, d2, d3 with coeff_ring coefficients.

Operators are kept in normal order: every term is ``f * d1**a d2**b d3**c``
with the coefficient on the left.  Composition moves derivatives past
coefficients with the Leibniz rule.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Mapping

from gmpy2 import mpq

from . import coeff_ring as cr
from .coeff_ring import RingElement

Index = tuple[int, int, int]


class NonConstantSymbol(ValueError):
    """A top-order coefficient depends on x, so the symbol is not constant."""


def _sub_indices(alpha: Index):
    a, b, c = alpha
    for i in range(a + 1):
        for j in range(b + 1):
            for k in range(c + 1):
                yield (i, j, k)


def _multi_binom(alpha: Index, gamma: Index) -> int:
    return comb(alpha[0], gamma[0]) * comb(alpha[1], gamma[1]) * comb(alpha[2], gamma[2])


class _DerivCache:
    """Memoized mixed partials of one raw coefficient dict."""

    def __init__(self, f: dict):
        self._c = {(0, 0, 0): f}

    def get(self, gamma: Index) -> dict:
        d = self._c.get(gamma)
        if d is None:
            a, b, c = gamma
            if a:
                d = cr._derive(self.get((a - 1, b, c)), 1)
            elif b:
                d = cr._derive(self.get((a, b - 1, c)), 2)
            else:
                d = cr._derive(self.get((a, b, c - 1)), 3)
            self._c[gamma] = d
        return d


class DiffOperator:
    """Immutable normal-ordered differential operator."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Index, object] | None = None):
        t = {}
        for idx, coeff in (terms or {}).items():
            coeff = coeff if isinstance(coeff, RingElement) else RingElement.const(coeff)
            if not coeff.is_zero():
                t[tuple(idx)] = coeff
        self._t = t

    @classmethod
    def _wrap(cls, raw: dict) -> "DiffOperator":
        op = cls.__new__(cls)
        op._t = {idx: RingElement._wrap(c) for idx, c in raw.items() if c}
        return op

    @classmethod
    def d(cls, a: int = 0, b: int = 0, c: int = 0) -> "DiffOperator":
        return cls({(a, b, c): 1})

    @classmethod
    def mult(cls, f) -> "DiffOperator":
        """Multiplication operator by the coefficient f."""
        return cls({(0, 0, 0): f})

    @property
    def terms(self) -> dict[Index, RingElement]:
        return dict(self._t)

    def coeff(self, idx: Index) -> RingElement:
        return self._t.get(tuple(idx), cr.ZERO)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def order(self) -> int | None:
        """Highest total derivative order; None for the zero operator."""
        if not self._t:
            return None
        return max(sum(i) for i in self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other):
        return op_add(self, _as_op(other))

    __radd__ = __add__

    def __neg__(self):
        return op_scale(self, -1)

    def __sub__(self, other):
        return op_add(self, op_scale(_as_op(other), -1))

    def __rsub__(self, other):
        return op_add(_as_op(other), op_scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return op_scale(self, other)
        return op_mul(self, _as_op(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return op_scale(self, other)
        return op_mul(_as_op(other), self)

    def __pow__(self, n: int):
        out = DiffOperator.mult(1)
        for _ in range(n):
            out = op_mul(out, self)
        return out

    def sorted_items(self) -> list[tuple[Index, RingElement]]:
        # higher order first, then lexicographic in (a, b, c) descending
        return sorted(self._t.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def to_json(self) -> list[dict]:
        return [{"dx": list(idx), "coeff": c.to_json()} for idx, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "DiffOperator":
        return cls({tuple(d["dx"]): RingElement.from_json(d["coeff"]) for d in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def pretty(self) -> str:
        return format_operator(self)

    def __repr__(self):
        return f"DiffOperator({self.pretty()})"


def _as_op(x) -> DiffOperator:
    if isinstance(x, DiffOperator):
        return x
    return DiffOperator.mult(x)


D1 = DiffOperator.d(1, 0, 0)
D2 = DiffOperator.d(0, 1, 0)
D3 = DiffOperator.d(0, 0, 1)
IDENTITY = DiffOperator.mult(1)


def op_add(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    raw = {idx: c._t for idx, c in a._t.items()}
    for idx, c in b._t.items():
        raw[idx] = cr._add(raw[idx], c._t) if idx in raw else c._t
    return DiffOperator._wrap(raw)


def op_scale(a: DiffOperator, r) -> DiffOperator:
    r = cr.to_rational(r)
    return DiffOperator._wrap({idx: cr._scale(c._t, r) for idx, c in a._t.items()})


def op_mul(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Composition a o b, brought to normal order."""
    caches = {beta: _DerivCache(g._t) for beta, g in b._t.items()}
    acc: dict[Index, dict] = {}
    for alpha, f in a._t.items():
        ft = f._t
        for gamma in _sub_indices(alpha):
            k = _multi_binom(alpha, gamma)
            shift = (alpha[0] - gamma[0], alpha[1] - gamma[1], alpha[2] - gamma[2])
            for beta, cache in caches.items():
                dg = cache.get(gamma)
                if not dg:
                    continue
                prod = cr._mul(ft, dg)
                if k != 1:
                    prod = cr._scale(prod, k)
                idx = (shift[0] + beta[0], shift[1] + beta[1], shift[2] + beta[2])
                target = acc.get(idx)
                if target is None:
                    acc[idx] = prod
                else:
                    for m, c in prod.items():
                        cr._addto(target, m, c)
    return DiffOperator._wrap(acc)


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """a o b - b o a; coefficients are not reduced by the addition theorem."""
    return op_add(op_mul(a, b), op_scale(op_mul(b, a), -1))


def adjoint(a: DiffOperator) -> DiffOperator:
    """Formal adjoint for the flat measure: f d^alpha -> (-1)^|alpha| d^alpha o f."""
    acc: dict[Index, dict] = {}
    for alpha, f in a._t.items():
        sign = -1 if sum(alpha) % 2 else 1
        cache = _DerivCache(f._t)
        for gamma in _sub_indices(alpha):
            dg = cache.get(gamma)
            if not dg:
                continue
            k = sign * _multi_binom(alpha, gamma)
            idx = (alpha[0] - gamma[0], alpha[1] - gamma[1], alpha[2] - gamma[2])
            target = acc.setdefault(idx, {})
            for m, c in dg.items():
                cr._addto(target, m, c * k)
    return DiffOperator._wrap(acc)


# x1 <-> x2: p12 even, q12 odd, (13) <-> (23)
_SWAP_PERM = (cr.G2, cr.G3, cr.P12, cr.P23, cr.P13, cr.Q12, cr.Q23, cr.Q13)


def swap_ring(e: RingElement) -> RingElement:
    out = {}
    for mono, c in e._t.items():
        exps = cr.unpack(mono)
        new = [0] * 8
        for i, k in enumerate(exps):
            new[_SWAP_PERM[i]] = k
        out[cr.pack(new)] = -c if exps[cr.Q12] % 2 else c
    return RingElement._wrap(out)


def swap12(a: DiffOperator) -> DiffOperator:
    """Apply the involution x1 <-> x2 (and d1 <-> d2)."""
    return DiffOperator({(b, a_, c): swap_ring(f) for (a_, b, c), f in a._t.items()})


class SymbolPolynomial:
    """Homogeneous polynomial in xi1, xi2, xi3 with rational coefficients."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping[Index, object]):
        t = {tuple(k): Fraction(v) for k, v in terms.items() if v}
        degrees = {sum(k) for k in t}
        if len(degrees) > 1:
            raise ValueError(f"symbol is not homogeneous: degrees {sorted(degrees)}")
        self.terms = t
        self.degree = degrees.pop() if degrees else None

    def __call__(self, xi):
        x1, x2, x3 = xi
        total = 0
        for (a, b, c), v in self.terms.items():
            total += v * x1**a * x2**b * x3**c
        return total

    def gradient(self, xi) -> list:
        x = list(xi)
        grad = []
        for j in range(3):
            g = 0
            for idx, v in self.terms.items():
                if idx[j]:
                    e = list(idx)
                    term = v * e[j]
                    e[j] -= 1
                    for k in range(3):
                        term *= x[k] ** e[k]
                    g += term
            grad.append(g)
        return grad

    def __mul__(self, other: "SymbolPolynomial") -> "SymbolPolynomial":
        out: dict = {}
        for i, u in self.terms.items():
            for j, v in other.terms.items():
                k = (i[0] + j[0], i[1] + j[1], i[2] + j[2])
                out[k] = out.get(k, 0) + u * v
        return SymbolPolynomial(out)

    def __add__(self, other: "SymbolPolynomial") -> "SymbolPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymbolPolynomial(out)

    def scale(self, r) -> "SymbolPolynomial":
        return SymbolPolynomial({k: v * Fraction(r) for k, v in self.terms.items()})

    def swap12(self) -> "SymbolPolynomial":
        return SymbolPolynomial({(b, a, c): v for (a, b, c), v in self.terms.items()})

    @classmethod
    def linear(cls, c1, c2, c3) -> "SymbolPolynomial":
        return cls({(1, 0, 0): c1, (0, 1, 0): c2, (0, 0, 1): c3})

    def __pow__(self, n: int) -> "SymbolPolynomial":
        out = SymbolPolynomial({(0, 0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SymbolPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def pretty(self) -> str:
        return format_symbol(self)

    def __repr__(self):
        return f"SymbolPolynomial({self.pretty()})"


def highest_symbol(a: DiffOperator) -> SymbolPolynomial:
    """Top-degree part with d_j -> xi_j (no factors of i, no sign change)."""
    top = a.order
    if top is None:
        return SymbolPolynomial({})
    out = {}
    for idx, f in a._t.items():
        if sum(idx) != top:
            continue
        if not f.is_constant():
            raise NonConstantSymbol(f"coefficient of d^{idx} is {f.pretty()}")
        out[idx] = f.constant_value()
    return SymbolPolynomial(out)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_SUB = "₁₂₃"
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _monomial(idx: Index, letter: str) -> str:
    parts = []
    for j, k in enumerate(idx):
        if k:
            parts.append(letter + _SUB[j] + (str(k).translate(_SUP) if k > 1 else ""))
    return "".join(parts)


def format_operator(a: DiffOperator) -> str:
    if a.is_zero():
        return "0"
    pieces = []
    for idx, f in a.sorted_items():
        mono = _monomial(idx, "∂")
        if f.is_constant():
            v = f.constant_value()
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            body = (mono if mag == 1 and mono else f"{mag}{mono}")
        else:
            sign = "+"
            text = f.pretty()
            body = f"({text}){mono}" if mono else f"({text})"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_symbol(s: SymbolPolynomial) -> str:
    if not s.terms:
        return "0"
    pieces = []
    for idx in sorted(s.terms, reverse=True):
        v = s.terms[idx]
        mono = _monomial(idx, "ξ")
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        pieces.append((sign, mono if mag == 1 and mono else f"{mag}{mono}"))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
