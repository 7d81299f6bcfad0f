import math
import random

import pytest

import quadclass.arith as arith
import quadclass.family as family
import quadclass.forms as forms
import quadclass.kernels as kernels
import quadclass.primes as primes


class TestEnumeration:
    def test_x101(self):
        members = list(family.enumerate_family(101))
        assert [(m.n, m.d) for m in members] == [
            (1, 5), (2, 17), (3, 37), (4, 65), (5, 101),
        ]
        assert all(m.squarefree for m in members)

    def test_n9_excluded(self):
        # 4*81+1 = 325 = 5^2 * 13
        ns = [m.n for m in family.enumerate_family(400)]
        assert 9 not in ns
        assert ns == [1, 2, 3, 4, 5, 6, 7, 8]

    def test_q_filter(self):
        ns = [m.n for m in family.enumerate_family(10**4, q=7)]
        assert all(n % 7 == 0 for n in ns)

    def test_out_of_range_empty(self):
        assert list(family.enumerate_family(10**4, q=30030)) == []

    def test_members_fundamental(self, family_mask_1e4):
        for m in family.enumerate_family(4 * 500 * 500, mask=family_mask_1e4):
            assert m.d % 4 == 1
            assert arith.is_fundamental_discriminant(m.d)


class TestSquarefreeMask:
    def test_vs_factorization_exhaustive(self, family_mask_1e4):
        for n in range(1, 10**4 + 1):
            assert bool(family_mask_1e4[n]) == arith.is_squarefree(4 * n * n + 1), n

    def test_vs_factorization_sampled_1e5(self):
        mask = family.squarefree_mask(10**5)
        rng = random.Random(11)
        small = [int(p) for p in primes.primes_upto(3500)]
        for n in rng.sample(range(10**4, 10**5 + 1), 2000):
            d = 4 * n * n + 1
            sf = True
            c = d
            for p in small:
                while c % (p * p) == 0:
                    sf = False
                    break
                if not sf:
                    break
                if c % p == 0:
                    c //= p
            if sf and c > 1:
                r = math.isqrt(c)
                if r * r == c:
                    sf = False
            assert bool(mask[n]) == sf, n


class TestSplittingAtDivisors:
    def test_small_prime_splitting_exhaustive_1e5(self):
        # chi_d(p) = 1 for every prime p | n, d = 4n^2+1
        lpf = primes.shared_lpf(10**5)
        for n in range(2, 10**5 + 1):
            d = 4 * n * n + 1
            for p, _ in arith.factorize(n, lpf).factors:
                assert kernels.kronecker(d, p) == 1, (n, p)


class TestDensity:
    def test_root_counts(self):
        # rho(25) = 2 (n = +-9 mod 25), rho(9) = 0
        roots25 = [n for n in range(25) if (4 * n * n + 1) % 25 == 0]
        assert sorted(roots25) == [9, 16]
        assert [n for n in range(9) if (4 * n * n + 1) % 9 == 0] == []
        assert family.local_root_count(5) == 2
        assert family.local_root_count(3) == 0
        assert family.local_root_count(2) == 0

    def test_count_matches_enumeration(self):
        rep = family.density_check(10**6, q=3)
        assert rep.count == len(list(family.enumerate_family(10**6, q=3)))

    def test_local_vs_literal(self):
        rep = family.density_check(10**8)
        # the all-primes product underestimates badly; the local one is close
        assert abs(rep.rel_error) < 0.02
        assert rep.main_term_literal < 0.5 * rep.main_term_local


class TestSplittingConstruction:
    def test_post_verified(self):
        members = family.construct_splitting(10**8, 7.0)
        assert len(members) > 0
        ps = [2, 3, 5, 7]
        for m in members:
            assert m.n % (2 * 3 * 5 * 7) == 0
            for p in ps:
                assert kernels.kronecker(m.d, p) == 1

    def test_empty_when_modulus_too_big(self):
        assert family.construct_splitting(10**4, 13.0) == []

    def test_count_lower_bound_shape(self):
        # count >= 0.5 * (sqrt(x)/2q) * local densities on a small grid
        for x, y in ((10**8, 3.0), (10**10, 3.0), (10**10, 7.0)):
            members = family.construct_splitting(x, y)
            q = family.splitting_modulus(y)
            main = family.density_check(x, q).main_term_local
            assert len(members) >= 0.5 * main


class TestExtremeSearch:
    def test_empty_range(self):
        rep = family.extreme_search(10**4, y=13.0)
        assert rep.records == ()

    def test_ranked_descending(self):
        rep = family.extreme_search(10**10, y=7.0)
        stats = [r.statistic for r in rep.records]
        assert stats == sorted(stats, reverse=True)

    def test_h_cross_checked_against_cycles(self):
        # at small x the truncated-L estimate must round to the exact h
        rep = family.extreme_search(4 * 10**6, y=3.0)
        assert len(rep.records) >= 5
        for r in rep.records[:5]:
            assert r.h == forms.class_number(r.d).h

    def test_statistic_formula(self):
        rep = family.extreme_search(10**8, y=7.0)
        for r in rep.records:
            want = r.h_estimate * math.log(r.d) / (
                math.sqrt(r.d) * math.log(math.log(r.d))
            )
            assert abs(r.statistic - want) < 1e-12

    def test_regulator_is_family_unit(self):
        rep = family.extreme_search(10**8, y=7.0)
        for r in rep.records:
            assert abs(r.regulator - math.log(2 * r.n + math.sqrt(r.d))) < 1e-12


class TestStatisticSample:
    def test_deterministic(self):
        a = family.statistic_sample(10**8, 25, seed=123)
        b = family.statistic_sample(10**8, 25, seed=123)
        assert a == b
        c = family.statistic_sample(10**8, 25, seed=124)
        assert a != c

    def test_members_squarefree(self):
        for r in family.statistic_sample(10**8, 25, seed=5):
            assert arith.is_squarefree(r.d)


class TestSplittingFrontier:
    def test_constructed_members_split(self):
        members = family.construct_splitting(10**10, 7.0)
        for m in members[:5]:
            assert family.splitting_frontier(m.d) >= 7
