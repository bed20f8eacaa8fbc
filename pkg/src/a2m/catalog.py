"""Constructors for the operators of the deformed A2(m) problem.

The deformation parameter m enters as an exact rational.  The operator I
(and everything built from it: L13, L23, L4) has numeric coefficients that
are only valid for m = 2.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .coeff_ring import g2, p12, p13, p23, q12, q13, q23, wpp
from .operator_algebra import D1, D2, D3, DiffOperator, adjoint, op_add, op_mul, op_scale, swap12


class InvalidParam(ValueError):
    """The deformation parameter is outside the range a constructor supports."""


def _m(m) -> Fraction:
    m = Fraction(m)
    if m == 0:
        raise InvalidParam("m must be nonzero")
    return m


def _mult(f) -> DiffOperator:
    return DiffOperator.mult(f)


def build_L1(m=2) -> DiffOperator:
    """Hamiltonian -d1^2 - d2^2 - m d3^2 + 2(m+1)(m p12 + p13 + p23)."""
    m = _m(m)
    potential = 2 * (m + 1) * (m * p12 + p13 + p23)
    return DiffOperator({(2, 0, 0): -1, (0, 2, 0): -1, (0, 0, 2): -m, (0, 0, 0): potential})


def build_L2() -> DiffOperator:
    return D1 + D2 + D3


def build_L3(m=2) -> DiffOperator:
    m = _m(m)
    h = (1 - m) / 2
    s = p13 + p23
    out = D1 * D2 * D3 + h * (D1 + D2) * D3**2 + h * (1 - 2 * m) / 3 * D3**3
    out = out + (m + 1) * (_mult(p23) * D1 + _mult(p13) * D2)
    out = out + m * (m + 1) * (_mult(p12) * D3)
    out = out + h * (m + 1) * (_mult(s) * D3 + op_mul(D3, _mult(s)))
    return out


def build_L12(m=2) -> DiffOperator:
    m = _m(m)
    y1 = D1 - m * D3
    y2 = D2 - m * D3
    k = m + 1
    out = y1**2 * y2**2
    out = out - 2 * k**2 * (_mult(p23) * y1**2) - 2 * k**2 * (_mult(p13) * y2**2)
    out = out + 2 * m * k * (_mult(p12 - p13 - p23) * y1 * y2)
    out = out - m * k * (_mult(q12 + m * q13 + 3 * k * q23) * y1)
    out = out - m * k * (_mult(-q12 + m * q23 + 3 * k * q13) * y2)
    tail = (
        -m * k * wpp((1, 2))
        - Fraction(3, 2) * m**2 * k**2 * wpp((1, 3))
        - Fraction(3, 2) * m**2 * k**2 * wpp((2, 3))
        + m**2 * k**2 * (p12**2 + p13**2 + p23**2)
        + 2 * m * k**2 * (p12 * p13 + p12 * p23)
        + 2 * k**2 * (2 * m**2 + 3 * m + 2) * p13 * p23
    )
    return out + _mult(tail)


def _require_m2(m) -> None:
    if Fraction(m) != 2:
        raise InvalidParam(f"the sixth-order integral is only known for m = 2, got m = {m}")


VARIANTS = ("printed", "amended")


def build_I(m=2, *, variant: str = "printed", c414=414) -> DiffOperator:
    """The sixth-order operator I.

    ``variant="printed"`` is the formula exactly as published.  With it,
    I + I* fails to commute with L1 and L3.  ``variant="amended"`` changes two
    zeroth-order coefficients (p12*p13**2: 594 -> -270, g2*p12: 5085/2 -> 5229/2);
    these are the unique sparsest changes that make it commute with L1, L2, L3
    and L12.  ``c414`` exists only for negative controls.
    """
    _require_m2(m)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    c594 = 594 if variant == "printed" else -270
    c5085 = Fraction(5085, 2) if variant == "printed" else Fraction(5229, 2)
    half = Fraction(1, 2)
    d = D1 - D2
    e = D1 - 2 * D3
    d2, d3, d4 = d**2, d**3, d**4
    e2 = e**2

    def term(f, op):
        return _mult(f) * op

    out = half * d4 * e2
    out = out - term(9 * p13, d4) - term(24 * p12, d2 * e2)
    out = out - term(6 * (p12 + p13 - p23), d3 * e)
    out = out + term(
        c414 * p12 * p13 + 18 * p12 * p23 + 18 * p13 * p23
        + 72 * p12**2 + 108 * p13**2 + 36 * p23**2 - Fraction(201, 2) * g2,
        d2,
    )
    out = out + term(
        144 * p12 * p13 - 144 * p12 * p23
        + 432 * p12**2 + 18 * p13**2 - 18 * p23**2 + 33 * g2,
        d * e,
    )
    out = out + term(288 * p12**2 - 69 * g2, e2)
    zeroth = (
        -369 * q12 * q13 + 288 * q12 * q23 + 18 * q13 * q23
        - 5760 * p12**3 - 648 * p13**3 - 288 * p23**3
        - p12**2 * (3834 * p13 + 1350 * p23)
        + p13**2 * (c594 * p12 - 594 * p23)
        - p23**2 * (648 * p12 - 324 * p13)
        + g2 * (c5085 * p12 + Fraction(2061, 2) * p13 + 990 * p23)
    )
    return out + _mult(zeroth)


def build_L13(m=2, **kw) -> DiffOperator:
    i = build_I(m, **kw)
    return op_add(i, adjoint(i))


def build_L23(m=2, **kw) -> DiffOperator:
    return swap12(build_L13(m, **kw))


def build_L4(m=2, **kw) -> DiffOperator:
    l13 = build_L13(m, **kw)
    return op_add(l13, op_scale(swap12(l13), Fraction(1, 2)))


# name -> (builder, m = 2 only)
BUILDERS = {
    "L1": (build_L1, False),
    "L2": (lambda m=None: build_L2(), False),
    "L3": (build_L3, False),
    "L12": (build_L12, False),
}
for _name, _fn in (("I", build_I), ("L13", build_L13), ("L23", build_L23), ("L4", build_L4)):
    BUILDERS[_name] = (_fn, True)
    BUILDERS[_name + "-amended"] = (functools.partial(_fn, variant="amended"), True)
BUILDERS["L13-perturbed"] = (functools.partial(build_L13, variant="amended", c414=415), True)
BUILDERS["L13-printed-perturbed"] = (functools.partial(build_L13, c414=415), True)

SIXTH_ORDER = tuple(n for n, (_, m2) in BUILDERS.items() if m2)


@functools.lru_cache(maxsize=64)
def _build_cached(name: str, m: Fraction) -> DiffOperator:
    builder, _ = BUILDERS[name]
    return builder(m)


def build(name: str, m=2) -> DiffOperator:
    """Look up an operator by its catalog name."""
    if name not in BUILDERS:
        raise KeyError(f"unknown operator {name!r}; choose from {', '.join(BUILDERS)}")
    if BUILDERS[name][1]:
        _require_m2(m)
    return _build_cached(name, _m(m))


__all__ = [
    "BUILDERS", "InvalidParam", "SIXTH_ORDER", "VARIANTS", "build", "build_I", "build_L1",
    "build_L12", "build_L13", "build_L2", "build_L23", "build_L3", "build_L4",
]
