"""Certified p-adic solubility: one-variable Hensel lifting, a multivariable
Newton-criterion residue search, and rational-witness bookkeeping.

All "yes" answers carry a replayable certificate; "no" answers are sound
because a p-adic solution would reduce to a solution at every finite level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactarith import factor, require_prime, valuation


@dataclass(frozen=True)
class HenselCertificate:
    """Certifies v_p(F(a)) > 2 * v_p(F'(a)), hence a true root in Z_p near a."""
    p: int
    approximation: int
    modulus_exponent: int
    value_valuation: int | None  # None encodes F(a) = 0 exactly
    derivative_valuation: int


def _poly_eval(coeffs, t):
    # coeffs ascending: coeffs[i] multiplies t**i
    total = 0
    for c in reversed(coeffs):
        total = total * t + c
    return total


def _poly_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def hensel_liftable_1var(coeffs, a, p):
    """Newton/Hensel check for a one-variable integer polynomial (ascending
    coefficients) at the integer approximation a.

    Returns a HenselCertificate when v_p(F(a)) > 2 * v_p(F'(a)), else None.
    """
    require_prime(p)
    if not any(coeffs):
        raise ValueError("polynomial must be nonzero")
    fa = _poly_eval(coeffs, a)
    da = _poly_eval(_poly_derivative(coeffs), a)
    if da == 0:
        return None
    dv = valuation(da, p).valuation
    if fa == 0:
        return HenselCertificate(p, a, 2 * dv + 1, None, dv)
    fv = valuation(fa, p).valuation
    if fv > 2 * dv:
        return HenselCertificate(p, a, fv, fv, dv)
    return None


def replay_hensel_certificate(coeffs, cert):
    """Re-check a HenselCertificate from scratch; True iff it is valid."""
    again = hensel_liftable_1var(coeffs, cert.approximation, cert.p)
    return again is not None and again == cert


@dataclass(frozen=True)
class SolubilityAnswer:
    """Verdict of the residue search: 'yes' with a witness class and Newton
    data, 'no' with the exhaustion depth, or 'inconclusive'."""
    verdict: str  # "yes" | "no" | "inconclusive"
    p: int
    depth: int  # level reached (witness level, exhaustion level, or maxdepth)
    witness: tuple | None = None  # residue triple mod p**depth for "yes"
    value_valuation: int | None = None
    derivative_valuation: int | None = None


def _newton_at(f, partials, point, target, p):
    """Newton data at an integer triple: (ok, v(f - target), best v(partial))."""
    val = f.evaluate_int(point) - target
    if val == 0:
        fv = None  # infinite
    else:
        fv = valuation(val, p).valuation
    best = None
    for d in partials:
        dval = d.evaluate_int(point)
        if dval == 0:
            continue
        dvv = valuation(dval, p).valuation
        if best is None or dvv < best:
            best = dvv
    if best is None:
        return False, fv, None
    ok = fv is None or fv > 2 * best
    return ok, fv, best


def padic_solutions_exist(f, target, p, maxdepth=None):
    """Decide whether f(x, y, z) = target has a solution in p-adic integers.

    Breadth-first search over residue triples mod p, p^2, ...; a branch is
    accepted when a single partial derivative satisfies the Newton inequality
    v_p(f - target) > 2 * v_p(partial); it is pruned when f - target is not
    divisible by the level modulus.  Lexicographic traversal, so identical
    inputs always report the identical witness class.
    """
    require_prime(p)
    if maxdepth is None:
        maxdepth = 8 if p == 2 else 4
    if maxdepth < 1:
        raise ValueError("maxdepth must be >= 1")
    partials = [f.partial(i) for i in range(3)]

    level = 1
    mod = p
    frontier = []
    for x in range(p):
        for y in range(p):
            for z in range(p):
                if (f.evaluate_mod((x, y, z), mod) - target) % mod == 0:
                    frontier.append((x, y, z))
    while True:
        for pt in frontier:
            ok, fv, dv = _newton_at(f, partials, pt, target, p)
            if ok:
                return SolubilityAnswer("yes", p, level, witness=pt,
                                        value_valuation=fv,
                                        derivative_valuation=dv)
        if not frontier:
            return SolubilityAnswer("no", p, level)
        if level >= maxdepth:
            return SolubilityAnswer("inconclusive", p, level)
        step = mod
        mod *= p
        level += 1
        nxt = []
        for x, y, z in frontier:
            for dx in range(p):
                x2 = x + dx * step
                for dy in range(p):
                    y2 = y + dy * step
                    for dz in range(p):
                        z2 = z + dz * step
                        if (f.evaluate_mod((x2, y2, z2), mod) - target) % mod == 0:
                            nxt.append((x2, y2, z2))
        nxt.sort()
        frontier = nxt


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of checking a rational witness: the exact value and the primes
    at which the witness fails to be a p-adic integer."""
    matches: bool
    value: Fraction
    bad_primes: frozenset


def verify_rational_witness(w, f, target, factor_bound=100000):
    """Check f(w) = target exactly and report the primes dividing any
    coordinate denominator."""
    w = tuple(Fraction(c) for c in w)
    value = Fraction(f.evaluate(w))
    bad = set()
    for c in w:
        if c.denominator > 1:
            bad.update(factor(c.denominator, factor_bound))
    return WitnessCheck(value == target, value, frozenset(bad))
