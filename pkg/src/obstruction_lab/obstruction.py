"""The obstruction engine: residue sieves, 2-adic invariant tables over
residue classes, local-invariant profiles at points, real and odd-place
scans, finite-field square-certificate sampling, bounded integer search,
and the final verdict.

All randomized steps take explicit seeds; identical inputs always produce
identical (canonically sorted) output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exactarith import (FactorizationError, factor, is_kth_power,
                         is_probable_prime, poly_roots_mod,
                         primitive_normalize)
from .localsymbols import (INV_HALF, INV_ZERO, Place, hilbert_symbol,
                           local_invariant)
from .multipoly import MultiPoly
from .padicsolve import (SolubilityAnswer, hensel_liftable_1var,
                         padic_solutions_exist, verify_rational_witness)

FACTOR_BOUND = 100000


class InternalInconsistencyError(Exception):
    """The engine produced evidence that contradicts Hilbert reciprocity."""


class RamificationLocusError(ValueError):
    """An algebra entry vanishes at the queried point."""


@dataclass(frozen=True)
class QuaternionAlgebraSpec:
    """Ordered pair of even-degree homogeneous polynomials defining a
    quaternion Brauer class on the complement of their zero loci."""
    first: MultiPoly
    second: MultiPoly

    def __post_init__(self):
        for entry in (self.first, self.second):
            d = entry.homogeneous_degree()
            if d is None or d % 2 != 0:
                raise ValueError("algebra entries must be homogeneous of even degree")

    def values_at(self, point):
        return self.first.evaluate_int(point), self.second.evaluate_int(point)


@dataclass(frozen=True)
class ResidueClass:
    modulus: int
    residues: tuple  # (X, Y, Z) each in [0, modulus)

    def __post_init__(self):
        if any(not (0 <= r < self.modulus) for r in self.residues):
            raise ValueError("residues out of range")


def residue_sieve(f, m, target):
    """All residue classes mod m (excluding the all-even-mod-2 ones when m is
    even) where f takes the target value mod m, sorted canonically."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    t = target % m
    out = []
    for x in range(m):
        for y in range(m):
            for z in range(m):
                if m % 2 == 0 and x % 2 == 0 and y % 2 == 0 and z % 2 == 0:
                    continue
                if f.evaluate_mod((x, y, z), m) == t:
                    out.append(ResidueClass(m, (x, y, z)))
    return out


@dataclass(frozen=True)
class InvariantTable:
    """Map from residue class to a certified 2-adic invariant (or None for
    undetermined), with the refinement depth that stabilized it."""
    modulus: int
    entries: tuple  # of (ResidueClass, Fraction | None, depth_used)

    def all_determined(self, value=None):
        for _, inv, _ in self.entries:
            if inv is None:
                return False
            if value is not None and inv != value:
                return False
        return True

    def entry_for(self, cls):
        for c, inv, _ in self.entries:
            if c == cls:
                return inv
        return None


def _lifts(cls, p, level):
    """Integer representatives of all lifts of a class to modulus p**level."""
    m = cls.modulus
    big = p ** level
    steps = big // m
    x0, y0, z0 = cls.residues
    return [(x0 + i * m, y0 + j * m, z0 + k * m)
            for i in range(steps) for j in range(steps) for k in range(steps)]


def _symbols_at_level(alg, cls, p, level):
    """Hilbert symbols at p over all lifts of cls to modulus p**level, or None
    if any lift is unstable (valuation too large to be certified)."""
    cap = level - 3
    if cap < 0:
        return None
    syms = set()
    for pt in _lifts(cls, p, level):
        a, b = alg.values_at(pt)
        for v in (a, b):
            if v == 0:
                return None
            t = v
            w = 0
            while t % p == 0:
                t //= p
                w += 1
            if w > cap:
                return None
        syms.add(hilbert_symbol(a, b, Place.finite(p)))
        if len(syms) > 1:
            return None
    return syms


def class_invariant_table(alg, classes, p=2, max_exponent=8):
    """Certified local invariant of the algebra on each residue class.

    An entry is emitted only when the Hilbert symbol at p is provably constant
    on the class: all lifts at two consecutive refinement levels must have
    stable valuations (v <= level - 3, pinning the unit mod 8) and agree.
    """
    if not classes:
        return InvariantTable(0, ())
    moduli = {c.modulus for c in classes}
    if len(moduli) != 1:
        raise ValueError("classes must share one modulus")
    m = moduli.pop()
    k = 0
    mm = m
    while mm % p == 0:
        mm //= p
        k += 1
    if mm != 1:
        raise ValueError("modulus must be a power of %d" % p)
    entries = []
    for cls in classes:
        inv = None
        depth = 0
        for level in range(max(k + 1, 3), max_exponent):
            s1 = _symbols_at_level(alg, cls, p, level)
            if s1 is None or len(s1) != 1:
                continue
            s2 = _symbols_at_level(alg, cls, p, level + 1)
            if s2 == s1:
                inv = INV_HALF if s1.pop() == -1 else INV_ZERO
                depth = level + 1
                break
        entries.append((cls, inv, depth))
    return InvariantTable(m, tuple(entries))


@dataclass(frozen=True)
class InvariantProfile:
    point: tuple
    values: tuple  # (first(P), second(P))
    invariants: tuple  # of (Place, Fraction)
    total: Fraction


def point_invariant_profile(alg, point, factor_bound=FACTOR_BOUND):
    """Local invariants of the algebra at an integer point, over the real
    place and every prime dividing 2ab, together with their sum in (1/2)Z/Z."""
    a, b = alg.values_at(point)
    if a == 0 or b == 0:
        raise RamificationLocusError(
            "algebra entry vanishes at %r" % (point,))
    primes = {2}
    primes.update(factor(a, factor_bound))
    primes.update(factor(b, factor_bound))
    places = [Place.real()] + [Place.finite(p) for p in sorted(primes)]
    invs = tuple((pl, local_invariant(a, b, pl)) for pl in places)
    total = sum((iv for _, iv in invs), Fraction(0)) % 1
    return InvariantProfile(tuple(point), (a, b), invs, total)


def real_unramified_scan(alg, nsamples, seed):
    """Sample rational points of the plane and flag any where both algebra
    entries are negative (real invariant 1/2).  Signs at rational points are
    exact, so every reported violation is a genuine ramified real point."""
    rng = random.Random(seed)
    violations = []
    done = 0
    while done < nsamples:
        pt = tuple(rng.randint(-1000, 1000) for _ in range(3))
        if pt == (0, 0, 0):
            continue
        a, b = alg.values_at(pt)
        if a == 0 or b == 0:
            continue
        done += 1
        if a < 0 and b < 0:
            violations.append(pt)
    return violations


@dataclass(frozen=True)
class OddPlaceScanResult:
    violations: tuple  # of (point, prime)
    checked: int
    skipped_unfactored: int


def odd_place_scan(f, alg, nsamples, bound, seed, factor_bound=10000):
    """Sample primitive integer triples and check that the algebra is split at
    every odd prime p dividing an entry value but not f (those points reduce
    into the open variety at p).  Also cross-checks reciprocity at each point.

    Samples whose entry values do not factor completely within the trial
    division bound are counted and skipped, never silently assumed split.
    """
    rng = random.Random(seed)
    violations = []
    checked = 0
    skipped = 0
    done = 0
    while done < nsamples:
        pt = tuple(rng.randint(-bound, bound) for _ in range(3))
        if pt == (0, 0, 0):
            continue
        pt = primitive_normalize(pt)
        a, b = alg.values_at(pt)
        if a == 0 or b == 0:
            continue
        done += 1
        try:
            primes = set(factor(a, factor_bound)) | set(factor(b, factor_bound))
        except FactorizationError:
            skipped += 1
            continue
        fval = f.evaluate_int(pt)
        total = local_invariant(a, b, Place.real())
        for p in sorted(primes | {2}):
            inv = local_invariant(a, b, Place.finite(p))
            total += inv
            if p == 2 or fval % p == 0:
                continue
            checked += 1
            if inv != 0:
                violations.append((pt, p))
        if total % 1 != 0:
            raise InternalInconsistencyError(
                "nonzero invariant sum %s at %r" % (total % 1, pt))
    return OddPlaceScanResult(tuple(violations), checked, skipped)


def _random_prime(rng, lo, hi):
    while True:
        n = rng.randint(lo, hi)
        if n % 2 == 0:
            n += 1
        while n <= hi:
            if is_probable_prime(n):
                return n
            n += 2


def _points_on_curve_mod(H, p):
    """All projective points of H = 0 over F_p (enumeration)."""
    pts = []
    for y in range(p):
        for z in range(p):
            if H.evaluate_mod((1, y, z), p) == 0:
                pts.append((1, y, z))
    for z in range(p):
        if H.evaluate_mod((0, 1, z), p) == 0:
            pts.append((0, 1, z))
    if H.evaluate_mod((0, 0, 1), p) == 0:
        pts.append((0, 0, 1))
    return pts


def _random_point_on_curve(H, p, rng, tries=64):
    """A random point of H = 0 over F_p: random x, y, then exact roots of the
    resulting one-variable polynomial in z."""
    zdeg = max(e[2] for _, e in H.terms)
    by_z = [[] for _ in range(zdeg + 1)]
    for c, (ex, ey, ez) in H.terms:
        by_z[ez].append((c, ex, ey))
    for _ in range(tries):
        x = rng.randrange(p)
        y = rng.randrange(p)
        coeffs = [sum(c * pow(x, ex, p) * pow(y, ey, p) for c, ex, ey in grp) % p
                  for grp in by_z]
        roots = poly_roots_mod(coeffs, p)
        if not roots:
            continue
        z = roots[rng.randrange(len(roots))]
        if (x, y, z) != (0, 0, 0):
            return (x, y, z)
    return None


@dataclass(frozen=True)
class SquareSamplingResult:
    accepted: int
    passed: int
    counterexamples: tuple  # of (p, point)
    skipped_primes: tuple

    @property
    def pass_ratio(self):
        return Fraction(self.passed, self.accepted) if self.accepted else None


def square_mod_sampling(F, H, prime_min, prime_max, trials, seed):
    """Sample points on H = 0 over random prime fields and test whether F is
    a square there whenever it does not vanish."""
    if prime_min < 3:
        raise ValueError("prime_min must be >= 3")
    rng = random.Random(seed)
    accepted = 0
    passed = 0
    counterexamples = []
    skipped = []
    point_cache = {}
    while accepted < trials:
        p = _random_prime(rng, prime_min, prime_max)
        if p <= 300:
            if p not in point_cache:
                point_cache[p] = _points_on_curve_mod(H, p)
            pts = point_cache[p]
            if not pts:
                skipped.append(p)
                continue
            q = pts[rng.randrange(len(pts))]
        else:
            q = _random_point_on_curve(H, p, rng)
            if q is None:
                skipped.append(p)
                continue
        fval = F.evaluate_mod(q, p)
        if fval == 0:
            continue
        accepted += 1
        if pow(fval, (p - 1) // 2, p) == 1:
            passed += 1
        else:
            counterexamples.append((p, q))
    return SquareSamplingResult(accepted, passed, tuple(counterexamples),
                                tuple(skipped))


def _solve_variable(f):
    """Variable index appearing in exactly one term of f, preferring pure
    unit-coefficient occurrences; None if there is no such variable."""
    candidates = []
    for i in range(3):
        terms = [(c, e) for c, e in f.terms if e[i] > 0]
        if len(terms) == 1:
            c, e = terms[0]
            others = [e[j] for j in range(3) if j != i]
            purity = (0 if (abs(c) == 1 and all(o == 0 for o in others)) else
                      1 if abs(c) == 1 else 2)
            candidates.append((purity, i))
    if not candidates:
        return None
    return min(candidates)[1]


def _canonical_solutions(f, sols):
    """Primitive representatives, canonically signed when f is invariant under
    the antipodal flip, deduplicated and sorted."""
    flip_invariant = all(sum(e) % 2 == 0 for _, e in f.terms)
    out = set()
    for s in sols:
        if s == (0, 0, 0):
            continue
        g = gcd(gcd(abs(s[0]), abs(s[1])), abs(s[2]))
        if g != 1:
            continue
        if flip_invariant:
            s = primitive_normalize(s)
        out.add(tuple(int(c) for c in s))
    return sorted(out)


def naive_integer_search(f, target, B):
    """Reference oracle: full enumeration of the cube [-B, B]^3."""
    sols = []
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            for z in range(-B, B + 1):
                if f.evaluate_int((x, y, z)) == target:
                    sols.append((x, y, z))
    return _canonical_solutions(f, sols)


def integer_search(f, target, B):
    """All primitive integer solutions of f = target in the cube [-B, B]^3,
    enumerating two coordinates and solving exactly for the third.

    Requires a variable that appears in exactly one term of f, so that
    its pure power can be recovered by exact division and a k-th root.
    """
    i = _solve_variable(f)
    if i is None:
        raise ValueError("no variable of f is confined to a single term")
    others = [j for j in range(3) if j != i]
    term = next((c, e) for c, e in f.terms if e[i] > 0)
    c_lead, exps = term
    k = exps[i]
    a_exps = [exps[j] for j in others]
    rest = MultiPoly((c, e) for c, e in f.terms if e[i] == 0)
    # rest as coefficients of powers of the second free variable, each a
    # polynomial in the first free variable
    w_groups = {}
    for c, e in rest.terms:
        w_groups.setdefault(e[others[1]], []).append((c, e[others[0]]))
    w_degs = sorted(w_groups)

    # exploit sign symmetry per enumerated variable
    u_even = all(e[others[0]] % 2 == 0 for _, e in f.terms)
    w_even = all(e[others[1]] % 2 == 0 for _, e in f.terms)
    u_range = range(0, B + 1) if u_even else range(-B, B + 1)
    w_range_full = list(range(0, B + 1)) if w_even else list(range(-B, B + 1))

    sols = []
    ea, eb = a_exps
    for u in u_range:
        coeffs = [(d, sum(c * u ** eu for c, eu in w_groups[d])) for d in w_degs]
        cu = c_lead * u ** ea
        for w in w_range_full:
            bval = 0
            for d, cc in coeffs:
                bval += cc * w ** d
            aval = cu * w ** eb
            num = target - bval
            if aval == 0:
                if num == 0:
                    for v in range(-B, B + 1):
                        sols.append(_assemble(i, others, v, u, w))
                continue
            if num % aval:
                continue
            r = is_kth_power(num // aval, k)
            if r is None or abs(r) > B:
                continue
            roots = {r, -r} if (k % 2 == 0 and r != 0) else {r}
            for root in roots:
                sols.append(_assemble(i, others, root, u, w))
    expanded = []
    for s in sols:
        mirrors = [s]
        if u_even:
            mirrors += [_flip(t, others[0]) for t in mirrors if t[others[0]] != 0]
        if w_even:
            mirrors += [_flip(t, others[1]) for t in mirrors if t[others[1]] != 0]
        expanded.extend(mirrors)
    return _canonical_solutions(f, expanded)


def _assemble(i, others, vi, u, w):
    out = [0, 0, 0]
    out[i] = vi
    out[others[0]] = u
    out[others[1]] = w
    return tuple(out)


def _flip(s, j):
    out = list(s)
    out[j] = -out[j]
    return tuple(out)


@dataclass(frozen=True)
class SamplingConfig:
    seed: int
    trials: int
    prime_min: int
    prime_max: int


@dataclass(frozen=True)
class PadicWitnessSpec:
    p: int
    kind: str  # "search" | "onevar"
    poly: tuple | None = None  # ascending coefficients, for "onevar"
    start: int | None = None


@dataclass(frozen=True)
class ObstructionInstance:
    name: str
    f: MultiPoly
    targets: tuple
    algebra: QuaternionAlgebraSpec
    sieve_modulus: int
    rational_witness: tuple | None
    padic_witnesses: tuple
    search_bound: int
    sampling: SamplingConfig

    def __post_init__(self):
        if self.f.homogeneous_degree() is None:
            raise ValueError("instance polynomial must be homogeneous")
        if any(t == 0 for t in self.targets):
            raise ValueError("targets must be nonzero")


OBSTRUCTED = "OBSTRUCTED"
NOT_OBSTRUCTED = "NOT_OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class VerdictReport:
    name: str
    verdict: str = INCONCLUSIVE
    flags: list = field(default_factory=list)
    steps: dict = field(default_factory=dict)


def obstruction_verdict(instance, seed=None, depth=None, bound=None,
                        real_samples=10000, odd_samples=10000, odd_bound=1000):
    """Run the full verification pipeline on an instance.

    OBSTRUCTED requires, for every target: a nonempty sieve whose classes all
    have certified 2-adic invariant 1/2, empty real and odd-place scans, and
    an empty integer search.  NOT_OBSTRUCTED means a verified integral
    solution was found.  Anything else is INCONCLUSIVE.
    """
    report = VerdictReport(instance.name)
    root_seed = instance.sampling.seed if seed is None else seed
    B = instance.search_bound if bound is None else bound
    f = instance.f
    alg = instance.algebra

    # 1. rational witness
    if instance.rational_witness is not None:
        chk = verify_rational_witness(instance.rational_witness, f,
                                      instance.targets[0])
        report.steps["rational_witness"] = {
            "witness": [str(Fraction(c)) for c in instance.rational_witness],
            "target": instance.targets[0],
            "value": str(chk.value),
            "matches": chk.matches,
            "bad_primes": sorted(chk.bad_primes),
        }
        witness_ok = chk.matches
        bad_primes = set(chk.bad_primes)
    else:
        report.steps["rational_witness"] = {"witness": None}
        witness_ok = None
        bad_primes = set()

    # 2. p-adic witnesses at the primes the rational witness misses
    padic_records = []
    covered = set()
    for wspec in instance.padic_witnesses:
        rec = {"p": wspec.p, "kind": wspec.kind}
        if wspec.kind == "onevar":
            cert = hensel_liftable_1var(list(wspec.poly), wspec.start, wspec.p)
            rec["poly"] = list(wspec.poly)
            rec["start"] = wspec.start
            rec["certificate"] = None if cert is None else {
                "approximation": cert.approximation,
                "modulus_exponent": cert.modulus_exponent,
                "value_valuation": cert.value_valuation,
                "derivative_valuation": cert.derivative_valuation,
            }
            ok = cert is not None
        elif wspec.kind == "search":
            ans = padic_solutions_exist(f, instance.targets[0], wspec.p, depth)
            rec["answer"] = {"verdict": ans.verdict, "depth": ans.depth,
                             "witness": list(ans.witness) if ans.witness else None}
            ok = ans.verdict == "yes"
        else:
            raise ValueError("unknown p-adic witness kind %r" % (wspec.kind,))
        rec["ok"] = ok
        if ok:
            covered.add(wspec.p)
        padic_records.append(rec)
    report.steps["padic_witnesses"] = {
        "records": padic_records,
        "uncovered_bad_primes": sorted(bad_primes - covered),
    }

    # 3-4. sieve and invariant table, per target
    per_target = {}
    for t in instance.targets:
        classes = residue_sieve(f, instance.sieve_modulus, t)
        table = class_invariant_table(alg, classes)
        per_target[t] = (classes, table)
        report.steps.setdefault("sieve", {})[str(t)] = {
            "modulus": instance.sieve_modulus,
            "count": len(classes),
            "classes": [list(c.residues) for c in classes],
        }
        report.steps.setdefault("invariant_table", {})[str(t)] = {
            "determined": table.all_determined(),
            "all_half": table.all_determined(INV_HALF),
            "entries": [{"class": list(c.residues),
                         "invariant": None if inv is None else str(inv),
                         "depth": d}
                        for c, inv, d in table.entries],
        }

    # 5. real scan
    real_violations = real_unramified_scan(alg, real_samples, root_seed * 7 + 1)
    report.steps["real_scan"] = {"samples": real_samples,
                                 "violations": [list(v) for v in real_violations]}

    # 6. odd-place scan
    odd = odd_place_scan(f, alg, odd_samples, odd_bound, root_seed * 7 + 2)
    report.steps["odd_place_scan"] = {
        "samples": odd_samples,
        "bound": odd_bound,
        "checked_prime_conditions": odd.checked,
        "skipped_unfactored": odd.skipped_unfactored,
        "violations": [[list(p), q] for p, q in odd.violations],
    }

    # 7. square-certificate sampling on the algebra pair
    sm = square_mod_sampling(alg.first, alg.second,
                             instance.sampling.prime_min,
                             instance.sampling.prime_max,
                             instance.sampling.trials,
                             root_seed * 7 + 3)
    report.steps["square_sampling"] = {
        "accepted": sm.accepted,
        "passed": sm.passed,
        "pass_ratio": None if sm.pass_ratio is None else str(sm.pass_ratio),
        "counterexamples": [[p, list(q)] for p, q in sm.counterexamples],
    }

    # 8. integer search, per target
    searches = {}
    for t in instance.targets:
        sols = integer_search(f, t, B)
        searches[t] = sols
        report.steps.setdefault("integer_search", {})[str(t)] = {
            "bound": B,
            "solutions": [list(s) for s in sols],
        }

    # verdict
    found = [(t, s) for t, sols in searches.items() for s in sols]
    for t, s in found:
        classes, table = per_target[t]
        cls = ResidueClass(instance.sieve_modulus,
                           tuple(c % instance.sieve_modulus for c in s))
        if cls in classes and table.entry_for(cls) == INV_HALF:
            raise InternalInconsistencyError(
                "integral solution %r lies in a residue class certified "
                "ramified at 2; this contradicts reciprocity" % (s,))
    if found:
        report.verdict = NOT_OBSTRUCTED
    else:
        obstructed = all(
            per_target[t][0] and per_target[t][1].all_determined(INV_HALF)
            for t in instance.targets
        ) and not real_violations and not odd.violations
        report.verdict = OBSTRUCTED if obstructed else INCONCLUSIVE
    if report.verdict == OBSTRUCTED and {1, -1} <= set(instance.targets):
        report.flags.append("hasse_over_Z")
    if witness_ok is False:
        report.flags.append("rational_witness_mismatch")
    return report
