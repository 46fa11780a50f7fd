"""Hilbert symbols over Q at every place, quaternion local invariants,
reciprocity checking, and an independent brute-force solubility oracle.

The symbol (a, b)_v is +1 exactly when z^2 = a x^2 + b y^2 has a nontrivial
solution over the completion at v.  Invariants live in (1/2)Z/Z: 0 for split,
1/2 for ramified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactarith import factor, jacobi, require_prime, valuation


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime or the real place."""
    p: int | None  # None encodes the real place

    def __post_init__(self):
        if self.p is not None:
            require_prime(self.p)

    @property
    def is_real(self):
        return self.p is None

    @classmethod
    def real(cls):
        return cls(None)

    @classmethod
    def finite(cls, p):
        return cls(p)

    def __str__(self):
        return "real" if self.p is None else str(self.p)


INV_ZERO = Fraction(0)
INV_HALF = Fraction(1, 2)


def _eps(t):
    # (t - 1)/2 mod 2 for odd t
    return ((t - 1) // 2) % 2


def _omega(t):
    # (t^2 - 1)/8 mod 2 for odd t
    return ((t * t - 1) // 8) % 2


def _to_square_free_pair(a, b):
    """Clear square denominators: (a, b) as Fractions -> integers in the same
    square classes."""
    a = Fraction(a)
    b = Fraction(b)
    return a.numerator * a.denominator, b.numerator * b.denominator


def hilbert_symbol(a, b, place):
    """Hilbert symbol (a, b) at a place of Q; a, b nonzero rationals."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol entries must be nonzero")
    if place.is_real:
        return -1 if a < 0 and b < 0 else 1
    a, b = _to_square_free_pair(a, b)
    p = place.p
    va = valuation(a, p)
    vb = valuation(b, p)
    alpha, u = va.valuation, va.unit_part
    beta, v = vb.valuation, vb.unit_part
    if p == 2:
        exponent = _eps(u) * _eps(v) + alpha * _omega(v) + beta * _omega(u)
        return -1 if exponent % 2 else 1
    sign = 1
    if (alpha * beta * _eps(p)) % 2:
        sign = -sign
    if beta % 2:
        sign *= jacobi(u % p, p)
    if alpha % 2:
        sign *= jacobi(v % p, p)
    return sign


def local_invariant(a, b, place):
    """Invariant of the quaternion algebra (a, b) at a place: 0 or 1/2."""
    return INV_HALF if hilbert_symbol(a, b, place) == -1 else INV_ZERO


def symbol_support(a, b, factor_bound=100000):
    """Places where (a, b) could be ramified: the real place and the primes
    dividing 2 * num * den of either entry."""
    primes = {2}
    for r in (Fraction(a), Fraction(b)):
        for n in (r.numerator, r.denominator):
            primes.update(factor(n, factor_bound))
    return [Place.real()] + [Place.finite(p) for p in sorted(primes)]


def reciprocity_defect(a, b, factor_bound=100000):
    """Sum of local invariants of (a, b) over its support, in (1/2)Z/Z.

    Hilbert reciprocity says this is always 0; a nonzero value indicates a bug.
    """
    if a == 0 or b == 0:
        raise ValueError("entries must be nonzero")
    total = Fraction(0)
    for place in symbol_support(a, b, factor_bound):
        total += local_invariant(a, b, place)
    return total % 1


def _newton_ok(val, derivs, p):
    """Newton criterion: v_p(val) > 2 * v_p(d) for some derivative value d."""
    fv = valuation(val, p)
    for d in derivs:
        if d == 0:
            continue
        dv = valuation(d, p)
        if fv.infinite or fv.valuation > 2 * dv.valuation:
            return True
    return False


def _dehomog_search(a, b, fixed, p, maxdepth):
    """Search for p-adic solutions of z^2 = a x^2 + b y^2 with one coordinate
    fixed to 1 and the other two ranging over Z_p.

    Returns True (Newton certificate found), False (all residue branches died
    at some level <= maxdepth), or None (inconclusive at maxdepth).
    """
    # F(s, t) with the `fixed` coordinate set to 1.
    if fixed == 0:
        F = lambda s, t: a + b * s * s - t * t          # (1, s, t)
        dF = lambda s, t: (2 * b * s, -2 * t)
    elif fixed == 1:
        F = lambda s, t: a * s * s + b - t * t          # (s, 1, t)
        dF = lambda s, t: (2 * a * s, -2 * t)
    else:
        F = lambda s, t: a * s * s + b * t * t - 1      # (s, t, 1)
        dF = lambda s, t: (2 * a * s, 2 * b * t)

    level = 1
    frontier = [(s, t) for s in range(p) for t in range(p)
                if F(s, t) % p == 0]
    while True:
        for s, t in frontier:
            if _newton_ok(F(s, t), dF(s, t), p):
                return True
        if not frontier:
            return False
        if level >= maxdepth:
            return None
        mod = p ** (level + 1)
        step = p ** level
        nxt = []
        for s, t in frontier:
            for ds in range(p):
                s2 = s + ds * step
                for dt in range(p):
                    t2 = t + dt * step
                    if F(s2, t2) % mod == 0:
                        nxt.append((s2, t2))
        frontier = nxt
        level += 1


def default_oracle_depth(a, b, p):
    """2 * v_p(4ab) + 6: comfortably past the Hensel threshold for ternary
    quadratic forms, including p = 2."""
    v = valuation(4 * a * b, p)
    return 2 * v.valuation + 6


def solubility_oracle(a, b, place, depth=None):
    """Independent decision of whether z^2 = a x^2 + b y^2 has a nontrivial
    local solution, by exhaustive residue search with Newton certificates.

    Returns True / False, or None when `depth` was insufficient to certify.
    Never consults the Hilbert symbol formulas.
    """
    if a == 0 or b == 0:
        raise ValueError("entries must be nonzero")
    if place.is_real:
        return not (a < 0 and b < 0)
    a, b = _to_square_free_pair(a, b)
    p = place.p
    if depth is None:
        depth = default_oracle_depth(a, b, p)
    # Any nontrivial Q_p solution scales to a primitive Z_p one, and a unit
    # coordinate can be normalized to 1; three dehomogenizations cover it.
    results = [_dehomog_search(a, b, fixed, p, depth) for fixed in (0, 1, 2)]
    if any(r is True for r in results):
        return True
    if all(r is False for r in results):
        return False
    return None
