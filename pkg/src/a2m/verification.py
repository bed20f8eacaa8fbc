"""Theorem-checking harness.

Every check returns a :class:`VerificationReport`; a failing verdict is a
result, not an exception.  Randomness always comes from a seeded
``random.Random`` so reports are reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np
import sympy as sp

from . import catalog
from . import coeff_ring as cr
from . import elliptic_kernel as ek
from .coeff_ring import RingElement, eliminate, is_zero_mod_relations
from .operator_algebra import DiffOperator, SymbolPolynomial, commutator, highest_symbol

NUMERIC_TOL = 1e-8
SEPARATION_EPS = 1e-6
FIBER_TOL = 1e-9


class SamplingExhausted(RuntimeError):
    """No admissible evaluation point was found within the retry budget."""


class DegenerateFiber(ValueError):
    """The symbol system at these levels does not have 6 clean solutions."""


@dataclass
class VerificationReport:
    subject: str
    verdict: str
    witness: Any = None
    timing_s: float = 0.0
    metadata: dict = field(default_factory=dict)
    expected: str | None = None

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError(f"verdict must be 'pass' or 'fail', got {self.verdict!r}")
        if (self.verdict == "fail") != (self.witness is not None):
            raise ValueError("a failing report needs a witness and a passing one must not carry one")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def matches_expectation(self) -> bool:
        return self.expected is None or self.expected == self.verdict

    def to_json(self, timing: bool = False) -> dict:
        out = {"subject": self.subject, "verdict": self.verdict}
        if self.expected is not None:
            out["expected"] = self.expected
        if self.witness is not None:
            out["witness"] = self.witness
        if timing:
            out["timing_s"] = round(self.timing_s, 6)
        md = dict(self.metadata)
        out["seed"] = md.pop("seed", None)
        out["tolerances"] = md.pop("tolerances", {})
        out["params"] = md
        return out


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _timed(fn: Callable[[], VerificationReport]) -> VerificationReport:
    t = time.perf_counter()
    rep = fn()
    rep.timing_s = time.perf_counter() - t
    return rep


# ---------------------------------------------------------------------------
# commutators
# ---------------------------------------------------------------------------


def check_commutes(a: DiffOperator, b: DiffOperator, subject: str = "[A,B]") -> VerificationReport:
    """Exact test that [a, b] vanishes modulo the wp relations."""
    t = time.perf_counter()
    c = commutator(a, b)
    witness = None
    for idx, coeff in c.sorted_items():
        if not is_zero_mod_relations(coeff):
            witness = {"dx": list(idx), "reduced": eliminate(coeff).to_json(), "pretty": eliminate(coeff).pretty()}
            break
    return VerificationReport(
        subject,
        _verdict(witness is None),
        witness,
        time.perf_counter() - t,
        {"free_ring_terms": len(c), "method": "exact elimination"},
    )


# ---------------------------------------------------------------------------
# numeric oracle
# ---------------------------------------------------------------------------


def sample_admissible(rng: random.Random, max_tries: int = 1000, rmin: float = 0.2, rmax: float = 0.9):
    """Draw (u, v, params, generator values) away from poles and from p12 = p23."""
    for _ in range(max_tries):
        params = ek.random_params(rng)
        u = ek.random_point(rng, rmin, rmax)
        v = ek.random_point(rng, rmin, rmax)
        if abs(u + v) < rmin:
            continue
        try:
            vals = ek.generator_values(u, v, params)
        except ek.PoleProximity:
            continue
        scale = max(abs(vals["p12"]), abs(vals["p23"]), 1.0)
        if abs(vals["p12"] - vals["p23"]) < 1e-3 * scale:
            continue
        if max(abs(vals[k]) for k in ("p12", "p13", "p23")) > 1e3:
            continue
        return u, v, params, vals
    raise SamplingExhausted(f"no admissible point in {max_tries} tries")


def normalized_value(e: RingElement, vals: dict) -> float:
    value, mag = cr.evaluate_complex(e, vals)
    return abs(value) / mag if mag else 0.0


def numeric_crosscheck(
    e: RingElement | Iterable[RingElement],
    n_samples: int = 10,
    tol: float = NUMERIC_TOL,
    seed: int = 0,
    subject: str = "numeric",
) -> VerificationReport:
    """Compare the exact zero test with floating-point evaluation via the wp kernel.

    ``e`` may be a single element or several (e.g. all coefficients of a
    commutator); they share the sample points.  The verdict is pass iff the
    two oracles agree for every element: exactly zero elements stay below
    ``tol`` at every point and nonzero ones exceed it at some point.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    t = time.perf_counter()
    elems = [e] if isinstance(e, RingElement) else list(e)
    rng = random.Random(seed)
    points = [sample_admissible(rng) for _ in range(n_samples)]
    exact = [is_zero_mod_relations(x) for x in elems]
    witness = None
    worst_zero = 0.0
    for k, x in enumerate(elems):
        values = [normalized_value(x, vals) for _, _, _, vals in points]
        top = max(values)
        if exact[k]:
            worst_zero = max(worst_zero, top)
        numerically_zero = top < tol
        if numerically_zero != exact[k] and witness is None:
            j = values.index(top)
            u, v, params, _ = points[j]
            witness = {
                "element": k,
                "exact_zero": exact[k],
                "max_normalized": top,
                "point": {"u": _cx(u), "v": _cx(v), "g2": _cx(params.g2), "g3": _cx(params.g3)},
            }
    return VerificationReport(
        subject,
        _verdict(witness is None),
        witness,
        time.perf_counter() - t,
        {
            "seed": seed,
            "tolerances": {"numeric": tol},
            "n_samples": n_samples,
            "n_elements": len(elems),
            "n_exact_zero": sum(exact),
            "max_normalized_on_zero": float(f"{worst_zero:.3g}"),
        },
    )


def _cx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# rational limit oracle
# ---------------------------------------------------------------------------


def rational_point(rng: random.Random) -> tuple[Fraction, Fraction]:
    while True:
        u = Fraction(rng.randint(-40, 40), rng.randint(1, 17))
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 17))
        if u and v and u + v and u * u != v * v:
            return u, v


def rational_values(u: Fraction, v: Fraction) -> dict:
    zero = ek.EllipticParams(0, 0)
    a, b, s = ek.wp(u, zero), ek.wp(v, zero), ek.wp(u + v, zero)
    return {"g2": 0, "g3": 0, "p12": a.p, "p13": s.p, "p23": b.p, "q12": a.dp, "q13": s.dp, "q23": b.dp}


def rational_value(e: RingElement, u: Fraction, v: Fraction) -> Fraction:
    val = cr.substitute(e, rational_values(u, v), zero=Fraction(0))
    return Fraction(int(val.numerator), int(val.denominator)) if hasattr(val, "numerator") else Fraction(val)


def rational_limit_check(
    a: DiffOperator, b: DiffOperator, n_samples: int = 10, seed: int = 0, subject: str = "rational limit"
) -> VerificationReport:
    """Exact evaluation of [a, b] at wp = 1/z**2 (g2 = g3 = 0)."""
    t = time.perf_counter()
    c = commutator(a, b)
    rng = random.Random(seed)
    witness = None
    for _ in range(n_samples):
        u, v = rational_point(rng)
        for idx, coeff in c.sorted_items():
            val = rational_value(coeff, u, v)
            if val != 0:
                witness = {"dx": list(idx), "u": str(u), "v": str(v), "value": str(val)}
                break
        if witness:
            break
    return VerificationReport(
        subject,
        _verdict(witness is None),
        witness,
        time.perf_counter() - t,
        {
            "seed": seed,
            "tolerances": {"exact": 0},
            "n_samples": n_samples,
            "blind_spot": "terms carrying g2 or g3 vanish identically in this limit",
        },
    )


# ---------------------------------------------------------------------------
# symbols
# ---------------------------------------------------------------------------


def check_symbol_independence(
    symbols: Sequence[SymbolPolynomial], seed: int = 0, n_samples: int = 10, subject: str = "symbol independence"
) -> VerificationReport:
    """Exact Jacobian determinant of three symbols at random rational points."""
    if len(symbols) != 3:
        raise ValueError("need exactly three symbols")
    rng = random.Random(seed)
    dets = []
    for _ in range(n_samples):
        xi = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
        jac = sp.Matrix([[sp.Rational(g.numerator, g.denominator) for g in s.gradient(xi)] for s in symbols])
        det = jac.det()
        dets.append(str(det))
        if det != 0:
            return VerificationReport(
                subject, "pass", None, 0.0,
                {"seed": seed, "tolerances": {"exact": 0}, "xi": [str(x) for x in xi], "jacobian_det": str(det)},
            )
    return VerificationReport(
        subject, "fail", {"jacobian_dets": dets}, 0.0, {"seed": seed, "tolerances": {"exact": 0}}
    )


@dataclass
class SymbolSystemSolution:
    xi: tuple[complex, complex, complex]
    residuals: tuple[float, float, float]


def integrability_symbols(m=2) -> tuple[SymbolPolynomial, SymbolPolynomial, SymbolPolynomial]:
    return (
        highest_symbol(catalog.build_L1(m)),
        highest_symbol(catalog.build_L2()),
        highest_symbol(catalog.build_L3(m)),
    )


def _to_sympy(s: SymbolPolynomial, xs):
    return sum(sp.Rational(v.numerator, v.denominator) * xs[0] ** a * xs[1] ** b * xs[2] ** c
               for (a, b, c), v in s.terms.items())


def _newton(polys, c, xi, steps: int = 8):
    x = np.array(xi, dtype=complex)
    for _ in range(steps):
        f = np.array([complex(p(x)) - complex(ci) for p, ci in zip(polys, c)])
        jac = np.array([[complex(g) for g in p.gradient(list(x))] for p in polys])
        try:
            dx = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            break
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15 * max(1.0, np.max(np.abs(x))):
            break
    return x


def solve_symbol_system(c: Sequence, m=2, tol: float = FIBER_TOL, symbols=None) -> list[SymbolSystemSolution]:
    """All complex solutions of P_i(xi) = c_i for the three integrability symbols."""
    polys = tuple(symbols or integrability_symbols(m))
    c = [Fraction(x) for x in c]
    s1, s2, s3 = sp.symbols("s1 s2 s3")
    xs = (s1, s2, s3)
    exprs = [_to_sympy(p, xs) - sp.Rational(ci.numerator, ci.denominator) for p, ci in zip(polys, c)]
    # P2 is linear: use it to eliminate s2
    lin = sp.Poly(exprs[1], s2)
    if lin.degree() != 1:
        raise DegenerateFiber("second symbol is not linear in xi2")
    s2_expr = sp.solve(exprs[1], s2)[0]
    f = sp.expand(exprs[0].subs(s2, s2_expr))
    g = sp.expand(exprs[2].subs(s2, s2_expr))
    # xi1 <-> xi2 paired solutions share xi3, so the resultant is taken in xi1
    res = sp.Poly(sp.resultant(f, g, s3), s1)
    coeffs = [complex(sp.N(x, 30)) for x in res.all_coeffs()]
    degree = res.degree()
    roots1 = np.roots(coeffs)
    f_s3 = sp.Poly(f, s3)
    found: list[np.ndarray] = []
    for r1 in roots1:
        cands = np.roots([complex(sp.N(k.subs(s1, r1), 30)) for k in f_s3.all_coeffs()])
        best = min(cands, key=lambda r3: abs(complex(g.subs({s1: r1, s3: r3}))))
        xi = [complex(r1), complex(s2_expr.subs({s1: r1, s3: best})), complex(best)]
        found.append(_newton(polys, c, xi))
    sols: list[SymbolSystemSolution] = []
    for x in found:
        scale = max(1.0, float(np.max(np.abs(x))))
        if any(np.max(np.abs(x - y.xi)) < 1e-6 * scale for y in sols):
            continue
        res_vals = tuple(abs(complex(p(x)) - complex(ci)) / max(1.0, abs(complex(ci))) for p, ci in zip(polys, c))
        sols.append(SymbolSystemSolution(tuple(complex(v) for v in x), res_vals))
    if degree != 6 or len(sols) != 6 or any(max(s.residuals) > tol for s in sols):
        raise DegenerateFiber(f"resultant degree {degree}, {len(sols)} solutions for c = {[str(x) for x in c]}")
    return sols


def check_separation(
    p: SymbolPolynomial, solutions: Sequence[SymbolSystemSolution], eps: float = SEPARATION_EPS,
    subject: str = "separation",
) -> VerificationReport:
    """Pass iff p takes pairwise distinct values on the solutions."""
    vals = [complex(p(s.xi)) for s in solutions]
    scale = max(1.0, max(abs(v) for v in vals))
    witness = None
    for i, j in itertools.combinations(range(len(vals)), 2):
        if abs(vals[i] - vals[j]) <= eps * scale:
            witness = {"pair": [i, j], "values": [_cx(vals[i]), _cx(vals[j])],
                       "xi": [[_cx(z) for z in solutions[i].xi], [_cx(z) for z in solutions[j].xi]]}
            break
    return VerificationReport(subject, _verdict(witness is None), witness, 0.0, {"tolerances": {"eps": eps}})


def generic_levels(rng: random.Random, m=2, symbols=None):
    """Sample random rational levels c until the fiber is a clean 6-point set."""
    for _ in range(100):
        c = [Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(3)]
        try:
            return c, solve_symbol_system(c, m, symbols=symbols)
        except DegenerateFiber:
            continue
    raise SamplingExhausted("could not find generic levels")


def separation_study(
    name: str, m=2, n_levels: int = 5, seeds: Sequence[int] = (0, 1, 2), eps: float = SEPARATION_EPS,
) -> VerificationReport:
    """Aggregate separation over several generic fibers and seeds.

    Pass iff every fiber separates.  ``fibers_failed`` in the metadata makes
    it possible to demand failure on *every* fiber for symmetric symbols.
    """
    t = time.perf_counter()
    sym = highest_symbol(catalog.build(name, m))
    verdicts = []
    witness = None
    for seed in seeds:
        rng = random.Random(seed)
        for _ in range(n_levels):
            c, sols = generic_levels(rng, m)
            rep = check_separation(sym, sols, eps)
            verdicts.append(rep.verdict)
            if not rep.passed and witness is None:
                witness = {"c": [str(x) for x in c], **rep.witness}
    return VerificationReport(
        f"separation sigma({name}) m={m}",
        _verdict(witness is None),
        witness,
        time.perf_counter() - t,
        {
            "seed": list(seeds),
            "tolerances": {"eps": eps, "fiber_residual": FIBER_TOL},
            "m": str(m),
            "fibers": len(verdicts),
            "fibers_failed": verdicts.count("fail"),
            "genericity": "random rational levels, resampled on degenerate fibers",
        },
    )


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def kernel_suite(seed: int = 0, n: int = 100) -> list[VerificationReport]:
    rng = random.Random(seed)
    ode = addition = even = dup = 0.0
    count = 0
    while count < n:
        params = ek.random_params(rng)
        z = ek.random_point(rng)
        u, v = ek.random_point(rng), ek.random_point(rng)
        try:
            w = ek.wp(z, params)
            wm = ek.wp(-z, params)
            w2 = ek.wp(2 * z, params)
            ode = max(ode, ek.ode_residual(z, params))
            addition = max(addition, ek.addition_residual(u, v, params))
        except (ek.PoleProximity, ek.DegenerateConfiguration):
            continue
        even = max(even, abs(w.p - wm.p) / max(1.0, abs(w.p)))
        if abs(w.dp) > 1e-3:
            r = w.ddp / w.dp
            dup = max(dup, abs(w2.p - (-2 * w.p + r * r / 4)) / max(1.0, abs(w2.p)))
        count += 1
    checks = [
        ("kernel ODE residual", ode, 1e-12),
        ("kernel addition residual", addition, 1e-10),
        ("kernel evenness", even, 1e-10),
        ("kernel duplication", dup, 1e-10),
    ]
    out = []
    for subject, val, tol in checks:
        ok = val < tol
        out.append(VerificationReport(
            subject, _verdict(ok), None if ok else {"max_residual": val}, 0.0,
            {"seed": seed, "tolerances": {"residual": tol}, "samples": n, "max_residual": float(f"{val:.3g}")},
        ))
    return out


def random_element(rng: random.Random, n_terms: int = 4, max_deg: int = 2) -> RingElement:
    terms = {}
    for _ in range(n_terms):
        exps = [0] * 8
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(8)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return RingElement(terms)


def ring_suite(seed: int = 0, n: int = 200) -> list[VerificationReport]:
    rng = random.Random(seed)
    failures: dict[str, Any] = {}

    def check(name, ok, info):
        if not ok and name not in failures:
            failures[name] = info

    for k in range(n):
        a, b, c = (random_element(rng) for _ in range(3))
        i, j = rng.randint(1, 3), rng.randint(1, 3)
        check("commutative", a * b == b * a, k)
        check("associative", (a * b) * c == a * (b * c), k)
        check("distributive", a * (b + c) == a * b + a * c, k)
        check("normalize idempotent", cr.normalize(cr.normalize(a)) == cr.normalize(a), k)
        check("leibniz", (a * b).derive(i) == a.derive(i) * b + a * b.derive(i), k)
        check("mixed partials", a.derive(i).derive(j) == a.derive(j).derive(i), k)
        check("translation", (a.derive(1) + a.derive(2) + a.derive(3)).is_zero(), k)
    names = ["commutative", "associative", "distributive", "normalize idempotent",
             "leibniz", "mixed partials", "translation"]
    return [
        VerificationReport(
            f"ring {name}", _verdict(name not in failures),
            None if name not in failures else {"instance": failures[name]}, 0.0,
            {"seed": seed, "tolerances": {"exact": 0}, "instances": n},
        )
        for name in names
    ]


def random_operator(rng: random.Random, max_order: int = 2, n_terms: int = 3) -> DiffOperator:
    terms = {}
    for _ in range(n_terms):
        k = rng.randint(0, max_order)
        idx = [0, 0, 0]
        for _ in range(k):
            idx[rng.randrange(3)] += 1
        terms[tuple(idx)] = random_element(rng, n_terms=2, max_deg=2)
    return DiffOperator(terms)


def random_constant_top_operator(rng: random.Random, order: int = 2) -> DiffOperator:
    """Random operator whose top-order coefficients are rational constants."""
    terms = {}
    for _ in range(2):
        idx = [0, 0, 0]
        for _ in range(order):
            idx[rng.randrange(3)] += 1
        terms[tuple(idx)] = Fraction(rng.randint(1, 5), rng.randint(1, 3))
    low = random_operator(rng, max_order=order - 1, n_terms=2)
    return DiffOperator(terms) + low


def operator_suite(seed: int = 0, n: int = 200) -> list[VerificationReport]:
    from .operator_algebra import adjoint, op_mul, swap12

    rng = random.Random(seed)
    failures: dict[str, Any] = {}

    def check(name, ok, info):
        if not ok and name not in failures:
            failures[name] = info

    for k in range(n):
        a, b, c = (random_operator(rng) for _ in range(3))
        check("associative", op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c)), k)
        check("adjoint involution", adjoint(adjoint(a)) == a, k)
        check("adjoint anti-homomorphism", adjoint(op_mul(a, b)) == op_mul(adjoint(b), adjoint(a)), k)
        check("swap12 involution", swap12(swap12(a)) == a, k)
        check("swap12 automorphism", swap12(op_mul(a, b)) == op_mul(swap12(a), swap12(b)), k)
        check("commutator antisymmetry", commutator(a, b) == -commutator(b, a), k)
        s, t = random_constant_top_operator(rng, rng.randint(1, 2)), random_constant_top_operator(rng, rng.randint(1, 2))
        prod = op_mul(s, t)
        if prod.order == s.order + t.order:
            check("symbol multiplicativity", highest_symbol(prod) == highest_symbol(s) * highest_symbol(t), k)
    names = ["associative", "adjoint involution", "adjoint anti-homomorphism", "swap12 involution",
             "swap12 automorphism", "commutator antisymmetry", "symbol multiplicativity"]
    return [
        VerificationReport(
            f"operator {name}", _verdict(name not in failures),
            None if name not in failures else {"instance": failures[name]}, 0.0,
            {"seed": seed, "tolerances": {"exact": 0}, "instances": n},
        )
        for name in names
    ]


def _pair(name_a: str, name_b: str, m) -> tuple[str, DiffOperator, DiffOperator]:
    return f"[{name_a},{name_b}] m={m}", catalog.build(name_a, m), catalog.build(name_b, m)


def full_suite(m_list: Sequence = (1, 2, 3), seed: int = 0, variant: str = "printed") -> list[VerificationReport]:
    """Run every check in a fixed order; each report carries its expected verdict."""
    if variant not in catalog.VARIANTS:
        raise ValueError(f"variant must be one of {catalog.VARIANTS}")
    sfx = "" if variant == "printed" else "-amended"
    reports: list[VerificationReport] = []

    def add(rep: VerificationReport, expected: str | None = "pass"):
        rep.expected = expected
        reports.append(rep)

    for rep in kernel_suite(seed):
        add(rep)
    for rep in ring_suite(seed):
        add(rep)
    for rep in operator_suite(seed):
        add(rep)

    numeric_pairs = []
    for m in m_list:
        m = Fraction(m)
        for a, b in (("L1", "L2"), ("L1", "L3"), ("L2", "L3"), ("L1", "L12"), ("L2", "L12"), ("L3", "L12")):
            subject, A, B = _pair(a, b, m)
            add(_timed(lambda: check_commutes(A, B, subject)))
            numeric_pairs.append((subject, A, B))
        syms = integrability_symbols(m)
        rep = check_symbol_independence(syms, seed, subject=f"symbol independence (L1,L2,L3) m={m}")
        add(rep)

    if Fraction(2) in {Fraction(m) for m in m_list}:
        for b in ("L13", "L4"):
            for a in ("L1", "L2", "L3"):
                subject, A, B = _pair(a, b + sfx, 2)
                add(_timed(lambda: check_commutes(A, B, subject)))
                numeric_pairs.append((subject, A, B))
        subject, A, B = _pair("L4" + sfx, "L12", 2)
        add(_timed(lambda: check_commutes(A, B, subject)), expected=None)

        subject, A, B = _pair("L1", "L13-perturbed", 2)
        add(_timed(lambda: check_commutes(A, B, subject + " (negative control)")), expected="fail")

        for a, b, m, exp in (("L1", "L13" + sfx, 2, "pass"), ("L1", "L13-perturbed", 2, "fail")):
            subject, A, B = _pair(a, b, m)
            add(_timed(lambda: rational_limit_check(A, B, 10, seed, "rational limit " + subject)), expected=exp)
    if Fraction(1) in {Fraction(m) for m in m_list}:
        subject, A, B = _pair("L1", "L12", 1)
        add(_timed(lambda: rational_limit_check(A, B, 10, seed, "rational limit " + subject)))

    for subject, A, B in numeric_pairs:
        coeffs = list(commutator(A, B).terms.values())
        rep = _timed(lambda: numeric_crosscheck(coeffs, 10, NUMERIC_TOL, seed, "numeric " + subject))
        # the oracles must agree and the coefficients must vanish
        if rep.passed and rep.metadata["n_exact_zero"] != rep.metadata["n_elements"]:
            rep = VerificationReport(rep.subject, "fail", {"nonvanishing": rep.metadata["n_elements"] - rep.metadata["n_exact_zero"]},
                                     rep.timing_s, rep.metadata)
        add(rep)

    if Fraction(2) in {Fraction(m) for m in m_list}:
        add(_timed(lambda: separation_study("L4" + sfx, 2, seeds=(seed, seed + 1, seed + 2))))
        add(_timed(lambda: separation_study("L12", 2, seeds=(seed, seed + 1, seed + 2))), expected="fail")
        add(_timed(lambda: separation_study("L1", 2, n_levels=2, seeds=(seed,))), expected="fail")
    return reports


def summary_table(reports: Sequence[VerificationReport]) -> str:
    width = max(len(r.subject) for r in reports) if reports else 10
    lines = [f"{'subject':<{width}}  verdict  expected  ok"]
    for r in reports:
        ok = "yes" if r.matches_expectation else "NO"
        lines.append(f"{r.subject:<{width}}  {r.verdict:<7}  {r.expected or '-':<8}  {ok}")
    bad = sum(not r.matches_expectation for r in reports)
    lines.append(f"{len(reports)} checks, {bad} mismatches")
    return "\n".join(lines)
