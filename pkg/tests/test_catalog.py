import json
from fractions import Fraction

import pytest

from a2m import catalog
from a2m.catalog import InvalidParam, build, build_I, build_L1, build_L2, build_L3, build_L12
from a2m.cli import GROUPINGS, regroup
from a2m.coeff_ring import ONE, g2, p12, p13, p23
from a2m.operator_algebra import DiffOperator, SymbolPolynomial, adjoint, highest_symbol, swap12

from regen_golden import CASES, path_for

L = SymbolPolynomial.linear


def test_L1_m2():
    op = build_L1(2)
    assert op.coeff((2, 0, 0)) == -ONE
    assert op.coeff((0, 2, 0)) == -ONE
    assert op.coeff((0, 0, 2)) == -2 * ONE
    assert op.coeff((0, 0, 0)) == 12 * p12 + 6 * p13 + 6 * p23
    # three derivative terms plus one potential term (the potential has three monomials)
    assert len(op) == 4
    assert sum(len(c.terms) for c in op.terms.values()) == 6


def test_L1_rejects_m0():
    with pytest.raises(InvalidParam):
        build_L1(0)


@pytest.mark.parametrize("m", [1, 2, 3, Fraction(1, 2)])
def test_L1_symmetries(m):
    op = build_L1(m)
    assert swap12(op) == op
    assert adjoint(op) == op


def test_L3_symbol_m2():
    h = Fraction(1, 2)
    xi3 = L(0, 0, 1)
    expected = L(1, 0, 0) * L(0, 1, 0) * xi3 + (L(1, 1, 0) * xi3**2).scale(-h) + (xi3**3).scale(h)
    assert highest_symbol(build_L3(2)) == expected


def test_L3_m1():
    d1, d2, d3 = DiffOperator.d(1), DiffOperator.d(0, 1), DiffOperator.d(0, 0, 1)
    expected = d1 * d2 * d3 + 2 * (DiffOperator.mult(p23) * d1 + DiffOperator.mult(p13) * d2) + 2 * (DiffOperator.mult(p12) * d3)
    assert build_L3(1) == expected


@pytest.mark.parametrize("m", [1, 2, 3])
def test_L3_swap_invariant(m):
    assert swap12(build_L3(m)) == build_L3(m)


def test_L12_symbol():
    s = highest_symbol(build_L12(2))
    assert s == L(1, 0, -2) ** 2 * L(0, 1, -2) ** 2
    assert s.swap12() == s


def test_L12_p13p23_coefficient():
    m = 2
    zeroth = build_L12(m).coeff((0, 0, 0))
    assert zeroth.terms[(0, 0, 0, 1, 1, 0, 0, 0)] == 2 * (m + 1) ** 2 * (2 * m * m + 3 * m + 2) == 288


def test_L12_contains_derivative_terms():
    first = build_L12(2).coeff((1, 0, 0))
    assert any(exp[5] or exp[7] for exp in first.terms)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_L12_swap_invariant(m):
    # the two first-order groups are exchanged by the swap because q12 is odd
    assert swap12(build_L12(m)) == build_L12(m)


def test_I_414_coefficient():
    labels, forms = GROUPINGS["I"]
    groups = regroup(build_I(), forms)
    assert groups[(2, 0, 0)].terms[(0, 0, 1, 1, 0, 0, 0, 0)] == 414
    assert groups[(4, 2, 0)] == Fraction(1, 2) * ONE
    assert groups[(2, 0, 0)].terms[(1, 0, 0, 0, 0, 0, 0, 0)] == Fraction(-201, 2)
    assert regroup(build_I(c414=415), forms)[(2, 0, 0)].terms[(0, 0, 1, 1, 0, 0, 0, 0)] == 415


def test_I_variants_differ_only_in_zeroth_order():
    a, b = build_I(), build_I(variant="amended")
    diff = a - b
    assert list(diff.terms) == [(0, 0, 0)]
    assert diff.coeff((0, 0, 0)) == 864 * p12 * p13**2 - 72 * g2 * p12


def test_I_rejects_other_m():
    with pytest.raises(InvalidParam):
        build_I(3)
    with pytest.raises(InvalidParam):
        build("L4", 1)
    with pytest.raises(ValueError):
        build_I(variant="nope")


@pytest.mark.parametrize("name", ["L13", "L13-amended"])
def test_L13_symbol(name):
    assert highest_symbol(build(name)) == L(1, -1, 0) ** 4 * L(1, 0, -2) ** 2


@pytest.mark.parametrize("name", ["L4", "L4-amended"])
def test_L4_symbol(name):
    expected = L(1, -1, 0) ** 4 * (L(1, 0, -2) ** 2 + (L(0, 1, -2) ** 2).scale(Fraction(1, 2)))
    assert highest_symbol(build(name)) == expected


@pytest.mark.parametrize(
    "name, order",
    [("L1", 2), ("L2", 1), ("L3", 3), ("L12", 4), ("L13", 6), ("L4", 6), ("L13-amended", 6), ("L4-amended", 6)],
)
def test_orders(name, order):
    assert build(name, 2).order == order


def test_L13_self_adjoint():
    op = build("L13")
    assert adjoint(op) == op


def test_L23_is_swapped_L13():
    assert build("L23") == swap12(build("L13"))


def test_L2():
    assert build_L2() == DiffOperator.d(1) + DiffOperator.d(0, 1) + DiffOperator.d(0, 0, 1)


def test_unknown_name():
    with pytest.raises(KeyError):
        build("L99")


def test_sixth_order_names():
    assert "L4" in catalog.SIXTH_ORDER and "L1" not in catalog.SIXTH_ORDER


@pytest.mark.parametrize("name, m", CASES)
def test_golden(name, m):
    expected = path_for(name, m).read_text(encoding="utf-8")
    op = catalog.build(name, m)
    assert op.dumps() + "\n" == expected
    assert DiffOperator.from_json(json.loads(expected)) == op
