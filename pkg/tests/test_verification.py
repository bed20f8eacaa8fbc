import random
from fractions import Fraction

import pytest

from a2m import catalog
from a2m import verification as vf
from a2m.coeff_ring import g2, p12, p13, p23, q12, q23
from a2m.operator_algebra import D1, D2, DiffOperator, SymbolPolynomial, highest_symbol
from a2m.verification import VerificationReport


def test_report_invariants():
    with pytest.raises(ValueError):
        VerificationReport("x", "fail")
    with pytest.raises(ValueError):
        VerificationReport("x", "pass", witness={"a": 1})
    with pytest.raises(ValueError):
        VerificationReport("x", "maybe")
    rep = VerificationReport("x", "fail", {"a": 1}, 0.5, {"seed": 3, "tolerances": {"eps": 1}, "k": 2}, "fail")
    assert rep.matches_expectation
    data = rep.to_json()
    assert data == {"subject": "x", "verdict": "fail", "expected": "fail", "witness": {"a": 1},
                    "seed": 3, "tolerances": {"eps": 1}, "params": {"k": 2}}
    assert rep.to_json(timing=True)["timing_s"] == 0.5


def test_check_commutes_pass_and_fail():
    assert vf.check_commutes(catalog.build_L2(), catalog.build_L1(2)).passed
    rep = vf.check_commutes(D1, DiffOperator.mult(p12))
    assert not rep.passed
    assert rep.witness["dx"] == [0, 0, 0]
    assert "℘′₁₂" in rep.witness["pretty"]


def test_check_commutes_uses_addition_theorem():
    # a multiplication operator by a relation commutes with nothing trivially, but is zero itself
    rel = 4 * (p13 + p12 + p23) * (p12 - p23) ** 2 - (q12 - q23) ** 2
    rep = vf.check_commutes(D1 + D2, DiffOperator.mult(rel))
    assert rep.passed


def test_numeric_crosscheck_agreement():
    rel = 4 * (p13 + p12 + p23) * (p12 - p23) ** 2 - (q12 - q23) ** 2
    rep = vf.numeric_crosscheck([rel, p12 - p23, g2 * rel], n_samples=5, seed=1)
    assert rep.passed
    assert rep.metadata["n_exact_zero"] == 2
    assert rep.metadata["max_normalized_on_zero"] < 1e-10


def test_numeric_crosscheck_rejects_bad_count():
    with pytest.raises(ValueError):
        vf.numeric_crosscheck(p12, n_samples=0)


def test_sample_admissible_is_seeded():
    a = vf.sample_admissible(random.Random(3))
    b = vf.sample_admissible(random.Random(3))
    assert a[3] == b[3]
    vals = a[3]
    assert abs(vals["p12"] - vals["p23"]) > 1e-3


def test_rational_limit():
    a, b = catalog.build_L1(2), catalog.build_L12(2)
    assert vf.rational_limit_check(a, b, 5).passed
    rep = vf.rational_limit_check(D1, DiffOperator.mult(p12), 2)
    assert not rep.passed and rep.witness["value"] != "0"


def test_rational_values_exact():
    vals = vf.rational_values(Fraction(1, 2), Fraction(1, 3))
    assert vals["p12"] == 4 and vals["p23"] == 9 and vals["p13"] == Fraction(36, 25)
    assert vf.rational_value(p12 + p23, Fraction(1, 2), Fraction(1, 3)) == 13


def test_symbol_independence():
    syms = vf.integrability_symbols(2)
    assert vf.check_symbol_independence(syms).passed
    dependent = (syms[0], syms[1], syms[1] * syms[1])
    assert not vf.check_symbol_independence(dependent).passed


def test_symbol_system_has_six_clean_points():
    c, sols = vf.generic_levels(random.Random(0))
    assert len(sols) == 6
    for s in sols:
        assert max(s.residuals) < vf.FIBER_TOL
    # the fiber is closed under xi1 <-> xi2
    for s in sols:
        x1, x2, x3 = s.xi
        assert any(abs(t.xi[0] - x2) + abs(t.xi[1] - x1) + abs(t.xi[2] - x3) < 1e-6 for t in sols)


def test_separation_L12_fails_on_swap_pair():
    c, sols = vf.generic_levels(random.Random(1))
    rep = vf.check_separation(highest_symbol(catalog.build_L12(2)), sols)
    assert not rep.passed
    (a1, a2, a3), (b1, b2, b3) = [[complex(*z) for z in xi] for xi in rep.witness["xi"]]
    assert abs(a1 - b2) < 1e-6 and abs(a2 - b1) < 1e-6 and abs(a3 - b3) < 1e-6


def test_separation_L4_passes():
    c, sols = vf.generic_levels(random.Random(2))
    assert vf.check_separation(highest_symbol(catalog.build("L4")), sols).passed


def test_degenerate_fiber():
    with pytest.raises(vf.DegenerateFiber):
        vf.solve_symbol_system([0, 0, 0])


def test_separation_study_metadata():
    rep = vf.separation_study("L12", 2, n_levels=2, seeds=(0,))
    assert rep.metadata["fibers"] == 2 and rep.metadata["fibers_failed"] == 2


def test_summary_table():
    reps = [VerificationReport("a", "pass", expected="pass"), VerificationReport("b", "fail", {"x": 1}, expected="pass")]
    text = vf.summary_table(reps)
    assert text.splitlines()[-1] == "2 checks, 1 mismatches"


def test_suites_pass():
    for rep in vf.kernel_suite(0, n=30) + vf.ring_suite(0, n=30) + vf.operator_suite(0, n=30):
        assert rep.passed, rep.subject


def test_full_suite_rejects_variant():
    with pytest.raises(ValueError):
        vf.full_suite([2], variant="other")
