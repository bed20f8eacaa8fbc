"""Double-precision Weierstrass wp evaluation from the invariants g2, g3.

No periods are computed.  The argument is halved until it sits well inside
the disc of convergence of the Laurent series at the origin, the series is
summed there, and the duplication formula climbs back up.  The degenerate
invariants (0, 0) give wp = 1/z**2 and are evaluated in closed form, exactly
when z is a rational.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

MAX_SERIES_TERMS = 64
MAX_HALVINGS = 60


class PoleProximity(ValueError):
    """z is at, or numerically too close to, a lattice point or half-period chain."""


class InvalidParams(ValueError):
    """Invariants describe a singular curve other than the rational limit."""


class DegenerateConfiguration(ValueError):
    """wp(u) and wp(v) coincide so the addition theorem cannot be applied."""


@dataclass(frozen=True)
class EllipticParams:
    g2: complex
    g3: complex

    @property
    def discriminant(self):
        return self.g2**3 - 27 * self.g3**2

    @property
    def is_rational_limit(self) -> bool:
        return self.g2 == 0 and self.g3 == 0

    def validate(self) -> None:
        if not self.is_rational_limit and self.discriminant == 0:
            raise InvalidParams(f"singular curve: g2={self.g2}, g3={self.g3}")


@dataclass(frozen=True)
class WpValue:
    p: complex
    dp: complex
    ddp: complex


@lru_cache(maxsize=256)
def laurent_coefficients(g2: complex, g3: complex, n: int) -> tuple:
    """c_2..c_n of wp(z) = z**-2 + sum_k c_k z**(2k-2); returned with c[0] = c[1] = 0."""
    c = [0j] * (n + 1)
    if n >= 2:
        c[2] = g2 / 20
    if n >= 3:
        c[3] = g3 / 28
    for k in range(4, n + 1):
        s = sum(c[j] * c[k - j] for j in range(2, k - 1))
        c[k] = 3 * s / ((2 * k + 1) * (k - 3))
    return tuple(c)


def _series(z: complex, params: EllipticParams, tol: float, nterms: int | None = None):
    g2, g3 = complex(params.g2), complex(params.g3)
    n = nterms or MAX_SERIES_TERMS
    c = laurent_coefficients(g2, g3, n)
    z2 = z * z
    p = 1 / z2
    dp = -2 / (z2 * z)
    zk = z2  # z**(2k-2)
    small = 0
    for k in range(2, n + 1):
        term = c[k] * zk
        p += term
        dp += (2 * k - 2) * term / z
        # c_k vanishes for every odd k when g3 = 0, so one tiny term is not enough
        small = small + 1 if abs(term) < tol * abs(p) else 0
        if nterms is None and small >= 2 and k > 3:
            return p, dp, True
        zk *= z2
    return p, dp, nterms is not None


def _exact_rational_limit(z):
    z2 = z * z
    return WpValue(1 / z2, -2 / (z2 * z), 6 / (z2 * z2))


def wp(z, params: EllipticParams, tol: float = 1e-16) -> WpValue:
    """wp(z), wp'(z), wp''(z) for the given invariants."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    params.validate()
    if z == 0:
        raise PoleProximity("z = 0 is a pole")
    if params.is_rational_limit:
        if isinstance(z, (int, Fraction)):
            return _exact_rational_limit(Fraction(z))
        return _exact_rational_limit(complex(z))

    g2, g3 = complex(params.g2), complex(params.g3)
    z = complex(z)
    # doubling amplifies rounding error, so halve only as far as the series needs
    n = 0
    w = z
    while True:
        p, dp, converged = _series(w, params, tol)
        if converged:
            break
        w /= 2
        n += 1
        if n > MAX_HALVINGS:
            raise PoleProximity(f"cannot reduce z={z}")
    for _ in range(n):
        if abs(dp) < 1e-9 * max(1.0, abs(p)) ** 1.5:
            raise PoleProximity(f"wp' vanishes near a half period while doubling toward z={z}")
        ddp = 6 * p * p - g2 / 2
        r = ddp / dp
        p, dp = -2 * p + r * r / 4, -dp + r * (12 * p - r * r) / 4
    if not (cmath.isfinite(p) and cmath.isfinite(dp)) or abs(p) > 1e15:
        raise PoleProximity(f"z={z} is too close to a lattice point")
    return WpValue(p, dp, 6 * p * p - g2 / 2)


def wp_series(z: complex, params: EllipticParams, nterms: int = 48) -> WpValue:
    """Direct Laurent sum with a fixed number of terms; no argument reduction."""
    p, dp, _ = _series(complex(z), params, 0.0, nterms)
    return WpValue(p, dp, 6 * p * p - complex(params.g2) / 2)


def ode_residual(z, params: EllipticParams) -> float:
    """|wp'^2 - 4 wp^3 + g2 wp + g3| / max(1, |wp|^3)."""
    w = wp(z, params)
    r = w.dp**2 - 4 * w.p**3 + params.g2 * w.p + params.g3
    if isinstance(r, Fraction):
        return 0.0 if r == 0 else float(abs(r)) / max(1.0, float(abs(w.p)) ** 3)
    return abs(r) / max(1.0, abs(w.p) ** 3)


def addition_residual(u, v, params: EllipticParams, threshold: float = 1e-6) -> float:
    """Normalized defect of the addition theorem at (u, v)."""
    a, b = wp(u, params), wp(v, params)
    gap = a.p - b.p
    if abs(gap) < threshold * max(1.0, abs(a.p), abs(b.p)):
        raise DegenerateConfiguration(f"wp(u) and wp(v) coincide at u={u}, v={v}")
    s = wp(u + v, params)
    rhs = ((a.dp - b.dp) / gap) ** 2 / 4 - a.p - b.p
    r = s.p - rhs
    if isinstance(r, Fraction):
        return 0.0 if r == 0 else float(abs(r))
    return abs(r) / max(1.0, abs(s.p), abs(a.p), abs(b.p))


def generator_values(u, v, params: EllipticParams) -> dict:
    """Values of the eight ring generators at x1 - x2 = u, x2 - x3 = v."""
    a, b, s = wp(u, params), wp(v, params), wp(u + v, params)
    return {
        "g2": params.g2, "g3": params.g3,
        "p12": a.p, "p13": s.p, "p23": b.p,
        "q12": a.dp, "q13": s.dp, "q23": b.dp,
    }


def random_params(rng, min_disc: float = 0.1, bound: float = 4.0) -> EllipticParams:
    """Complex invariants with |g2|, |g3| <= bound and |discriminant| > min_disc."""
    while True:
        g2 = complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound))
        g3 = complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound))
        if abs(g2) <= bound and abs(g3) <= bound and abs(g2**3 - 27 * g3**2) > min_disc:
            return EllipticParams(g2, g3)


def random_point(rng, rmin: float = 0.05, rmax: float = 1.5) -> complex:
    r = rng.uniform(rmin, rmax)
    t = rng.uniform(0, 2 * math.pi)
    return cmath.rect(r, t)
