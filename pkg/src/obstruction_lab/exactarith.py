"""Exact integer/rational utilities: valuations, Jacobi symbols, k-th powers,
primitive normalization, and bounded trial-division factoring.

Everything here is pure integer arithmetic on Python ints and Fractions;
no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class FactorizationError(Exception):
    """Raised when a cofactor survives trial division and is not certified prime."""


_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    """Miller-Rabin primality test.

    Deterministic for n < 2**64 (fixed base set); for larger n the same bases
    plus the first primes up to 100 are used, which makes the answer
    probabilistic but fully deterministic as a function.
    """
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
             61, 67, 71, 73, 79, 83, 89, 97)
    for p in small:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES_64 if n < 2**64 else small
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p):
    if p < 2 or not is_probable_prime(p):
        raise ValueError("not a prime: %r" % (p,))


@dataclass(frozen=True)
class ValuationResult:
    """p-adic valuation together with the cofactor: n = p**valuation * unit_part.

    ``infinite`` is set exactly when n = 0 (valuation and unit_part are then
    meaningless and stored as 0).
    """
    valuation: int
    unit_part: int
    infinite: bool = False


def valuation(n, p):
    """Return ValuationResult for n at the prime p."""
    require_prime(p)
    if n == 0:
        return ValuationResult(0, 0, infinite=True)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return ValuationResult(v, n)


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi requires odd positive n, got %r" % (n,))
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def primitive_normalize(v):
    """Scale a nonzero triple of rationals to a primitive integer triple.

    The output has gcd 1, is a positive rational multiple of the input, and
    its first nonzero coordinate is positive.
    """
    v = tuple(Fraction(c) for c in v)
    if all(c == 0 for c in v):
        raise ValueError("cannot normalize the zero triple")
    lcm = 1
    for c in v:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    for c in ints:
        if c != 0:
            if c < 0:
                ints = [-t for t in ints]
            break
    return tuple(ints)


def ikth_root(n, k):
    """Floor of the k-th root of a non-negative integer, exact integer arithmetic."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    # Newton iteration on integers, starting above the root.
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_kth_power(n, k):
    """Return r with r**k == n if one exists (non-negative r for even k), else None."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return n
    if n < 0:
        if k % 2 == 0:
            return None
        r = -ikth_root(-n, k)
        return r if r ** k == n else None
    r = ikth_root(n, k)
    return r if r ** k == n else None


def factor(n, bound=100000):
    """Factor |n| into primes by trial division up to ``bound``.

    Returns a dict prime -> exponent.  A cofactor left after trial division is
    accepted only if it is certified prime; otherwise FactorizationError is
    raised (honesty over a silently incomplete factorization).
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d <= bound and d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        if d * d > n or is_probable_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorizationError(
                "composite cofactor %d survived trial division to %d" % (n, bound))
    return out


def sqrt_mod(a, p):
    """A square root of a modulo an odd prime p, or None if a is a non-residue.

    Tonelli-Shanks; deterministic (scans small candidates for a non-residue).
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    m, c, t, r = s, pow(n, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _poly_divmod(out, mod, p)[1]


def _poly_divmod(a, b, p):
    a = list(a)
    binv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * binv % p
        q[i] = c
        if c:
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def poly_roots_mod(coeffs, p):
    """Sorted roots in F_p of a polynomial given by ascending coefficients.

    Equal-degree splitting against z^p - z; deterministic (shift constants are
    tried in increasing order).
    """
    require_prime(p)
    f = _poly_trim([c % p for c in coeffs])
    if not f:
        return list(range(p))  # the zero polynomial
    if len(f) == 1:
        return []
    if p == 2:
        return [r for r in (0, 1) if
                sum(c * r ** i for i, c in enumerate(f)) % 2 == 0]
    # keep only the split part: gcd(f, z^p - z)
    zp = _poly_powmod([0, 1], p, f, p)
    zp = zp + [0] * (2 - len(zp))
    zp[1] = (zp[1] - 1) % p
    g = _poly_gcd(f, _poly_trim(zp), p)
    roots = []

    def split(h, shift):
        if len(h) == 1:
            return
        if len(h) == 2:
            roots.append((-h[0] * pow(h[1], -1, p)) % p)
            return
        # h(z) with distinct roots: split via (z + shift)^((p-1)/2) - 1
        while True:
            w = _poly_powmod([shift % p, 1], (p - 1) // 2, h, p)
            w = _poly_trim([(c - (1 if i == 0 else 0)) % p
                            for i, c in enumerate(w or [0])])
            d = _poly_gcd(h, w, p)
            if 0 < len(d) - 1 < len(h) - 1:
                split(d, shift + 1)
                split(_poly_divmod(h, d, p)[0], shift + 1)
                return
            shift += 1

    if len(g) > 1:
        if g[0] == 0:
            roots.append(0)
            g = _poly_trim(g[1:])
        if len(g) > 1:
            split(g, 1)
    return sorted(roots)


def divisors(n, bound=100000):
    """Sorted positive divisors of n != 0, via the bounded factorization."""
    divs = [1]
    for p, e in factor(n, bound).items():
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)
