import random
from fractions import Fraction

import pytest

from obstruction_lab.localsymbols import INV_HALF
from obstruction_lab.multipoly import MultiPoly
from obstruction_lab.obstruction import (NOT_OBSTRUCTED, OBSTRUCTED,
                                         QuaternionAlgebraSpec, ResidueClass,
                                         class_invariant_table, integer_search,
                                         naive_integer_search, odd_place_scan,
                                         obstruction_verdict,
                                         point_invariant_profile,
                                         real_unramified_scan, residue_sieve,
                                         square_mod_sampling)


class TestResidueSieve:
    def test_quartic_mod_16(self, fq):
        classes = residue_sieve(fq, 16, 1)
        assert len(classes) == 512
        assert all(tuple(r % 2 for r in c.residues) == (0, 1, 1)
                   for c in classes)

    def test_cubic_mod_2(self, fc):
        classes = residue_sieve(fc, 2, 1)
        assert [c.residues for c in classes] == [(0, 0, 1), (1, 0, 1)]

    def test_linear(self):
        x = MultiPoly([(1, (1, 0, 0))])
        classes = residue_sieve(x, 2, 1)
        assert len(classes) == 4
        assert all(c.residues[0] == 1 for c in classes)

    def test_symmetry_for_even_degree(self, fq):
        classes = set(c.residues for c in residue_sieve(fq, 16, 1))
        for r in classes:
            assert tuple(-c % 16 for c in r) in classes


class TestInvariantTable:
    def test_quartic_all_half(self, fq, quartic_algebra):
        classes = residue_sieve(fq, 16, 1)
        table = class_invariant_table(quartic_algebra, classes)
        assert table.all_determined(INV_HALF)

    def test_cubic_all_half(self, fc, cubic_algebra):
        classes = residue_sieve(fc, 2, 1)
        table = class_invariant_table(cubic_algebra, classes)
        assert table.all_determined(INV_HALF)

    def test_split_algebra_all_zero(self, fq):
        one = MultiPoly([(1, (0, 0, 0))])
        alg = QuaternionAlgebraSpec(one, one)
        classes = residue_sieve(fq, 16, 1)[:8]
        table = class_invariant_table(alg, classes)
        assert table.all_determined(Fraction(0))

    def test_refinement_stability(self, fq, quartic_algebra):
        classes = residue_sieve(fq, 16, 1)[:16]
        t1 = class_invariant_table(quartic_algebra, classes, max_exponent=8)
        t2 = class_invariant_table(quartic_algebra, classes, max_exponent=9)
        for (c1, i1, _), (c2, i2, _) in zip(t1.entries, t2.entries):
            assert c1 == c2
            if i1 is not None:
                assert i2 == i1

    def test_undetermined_when_valuation_unbounded(self):
        # entries y^2, z^2 on a class with y and z both even: the 2-adic
        # valuation varies over lifts, so no certification is possible
        alg = QuaternionAlgebraSpec(MultiPoly([(1, (0, 2, 0))]),
                                    MultiPoly([(1, (0, 0, 2))]))
        cls = ResidueClass(2, (1, 0, 0))
        table = class_invariant_table(alg, [cls])
        assert table.entries[0][1] is None


class TestPointProfile:
    def test_quartic_at_010(self, quartic_algebra):
        prof = point_invariant_profile(quartic_algebra, (0, 1, 0))
        assert prof.values == (22, 154)
        assert all(iv == 0 for _, iv in prof.invariants)
        assert prof.total == 0

    def test_quartic_at_101(self, quartic_algebra):
        prof = point_invariant_profile(quartic_algebra, (1, 0, 1))
        assert prof.values == (896, -2464)
        assert all(iv == 0 for _, iv in prof.invariants)
        assert prof.total == 0

    def test_cubic_at_111(self, cubic_algebra):
        prof = point_invariant_profile(cubic_algebra, (1, 1, 1))
        assert prof.values == (-128, 3)
        assert prof.total == 0

    def test_scaling_invariance(self, quartic_algebra):
        rng = random.Random(47)
        for _ in range(50):
            pt = tuple(rng.randint(-20, 20) for _ in range(3))
            lam = 2 * rng.randint(1, 10) + 1
            try:
                base = point_invariant_profile(quartic_algebra, pt)
            except ValueError:
                continue
            scaled = point_invariant_profile(
                quartic_algebra, tuple(lam * c for c in pt))
            assert dict(base.invariants) == {
                pl: iv for pl, iv in scaled.invariants if pl in dict(base.invariants)}
            assert scaled.total == base.total == 0

    def test_consistency_triangle(self, fq, quartic_algebra):
        # points congruent to sieve classes have the tabulated 2-adic invariant
        classes = residue_sieve(fq, 16, 1)
        table = class_invariant_table(quartic_algebra, classes[:8])
        from obstruction_lab.localsymbols import Place, local_invariant
        for cls, inv, _ in table.entries:
            assert inv is not None
            pt = cls.residues
            a, b = quartic_algebra.values_at(pt)
            assert local_invariant(a, b, Place.finite(2)) == inv


class TestScans:
    def test_quartic_real_scan_empty(self, quartic_algebra):
        assert real_unramified_scan(quartic_algebra, 10000, 1) == []

    def test_cubic_real_scan_empty(self, cubic_algebra):
        assert real_unramified_scan(cubic_algebra, 10000, 1) == []

    def test_negative_definite_always_violates(self):
        neg = -1 * (MultiPoly([(1, (2, 0, 0)), (1, (0, 2, 0)), (1, (0, 0, 2))])
                    * MultiPoly([(1, (2, 0, 0)), (1, (0, 2, 0)), (1, (0, 0, 2))]))
        alg = QuaternionAlgebraSpec(neg, neg)
        violations = real_unramified_scan(alg, 100, 1)
        assert len(violations) == 100

    def test_quartic_odd_scan_empty(self, fq, quartic_algebra):
        result = odd_place_scan(fq, quartic_algebra, 2000, 1000, 2)
        assert result.violations == ()
        assert result.checked > 0

    def test_cubic_odd_scan_empty(self, fc, cubic_algebra):
        result = odd_place_scan(fc, cubic_algebra, 2000, 1000, 2)
        assert result.violations == ()


class TestSquareSampling:
    def test_fg_square_mod_h(self, fq, gq, hq):
        res = square_mod_sampling(fq * gq, hq, 3, 10000, 500, 5)
        assert res.accepted >= 500
        assert res.pass_ratio == 1

    def test_fh_square_mod_g(self, fq, gq, hq):
        res = square_mod_sampling(fq * hq, gq, 3, 10000, 500, 5)
        assert res.pass_ratio == 1

    def test_negative_control(self):
        conic = MultiPoly([(1, (2, 0, 0)), (1, (0, 2, 0)), (-1, (0, 0, 2))])
        xy = MultiPoly([(1, (1, 1, 0))])
        res = square_mod_sampling(xy, conic, 3, 10000, 500, 5)
        assert res.counterexamples


class TestIntegerSearch:
    def test_quartic_empty(self, fq):
        assert integer_search(fq, 1, 100) == []

    def test_quartic_obvious_point(self, fq):
        assert (0, 1, 0) in integer_search(fq, -1, 2)

    def test_cubic_empty(self, fc):
        assert integer_search(fc, 1, 100) == []

    def test_matches_naive_enumeration(self, fq, fc):
        toy = MultiPoly([(1, (4, 0, 0)), (1, (0, 4, 0)), (-2, (0, 0, 4))])
        cases = [(fq, 1, 12), (fq, -1, 12), (fq, 16, 10), (fc, 1, 8),
                 (fc, -1, 8), (fc, 7, 8), (toy, 0, 10), (toy, 32, 8)]
        for f, target, B in cases:
            assert integer_search(f, target, B) == \
                naive_integer_search(f, target, B)

    def test_no_solvable_variable_rejected(self):
        f = MultiPoly([(1, (2, 1, 0)), (1, (1, 2, 0)), (1, (1, 0, 2)),
                       (1, (0, 2, 1)), (1, (2, 0, 1)), (1, (0, 1, 2))])
        with pytest.raises(ValueError):
            integer_search(f, 1, 5)


class TestVerdict:
    def test_quartic_obstructed(self, quartic_instance):
        report = obstruction_verdict(quartic_instance, real_samples=2000,
                                     odd_samples=500)
        assert report.verdict == OBSTRUCTED
        assert "hasse_over_Z" not in report.flags

    def test_cubic_obstructed_hasse(self, cubic_instance):
        report = obstruction_verdict(cubic_instance, real_samples=2000,
                                     odd_samples=500)
        assert report.verdict == OBSTRUCTED
        assert "hasse_over_Z" in report.flags

    def test_quartic_target_minus_one(self, quartic_instance):
        inst = quartic_instance
        from obstruction_lab.obstruction import ObstructionInstance
        flipped = ObstructionInstance(inst.name, inst.f, (-1,), inst.algebra,
                                      inst.sieve_modulus, None,
                                      (), 10, inst.sampling)
        report = obstruction_verdict(flipped, real_samples=100,
                                     odd_samples=50)
        assert report.verdict == NOT_OBSTRUCTED
        assert [0, 1, 0] in report.steps["integer_search"]["-1"]["solutions"]
