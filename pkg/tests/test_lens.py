import random
from fractions import Fraction
from math import gcd, prod

import pytest

from contact_surgery import lens
from contact_surgery.diagram import first_homology, linking_matrix
from contact_surgery.invariants import d3, gamma, spin_structures
from contact_surgery.lens import LensSpace
from oracles import d3_oracle, leibniz_det, squares_mod


def brute_prime(n):
    return n >= 2 and all(n % k for k in range(2, n))


def pm_square(a, m):
    sq = squares_mod(m)
    return a % m in sq or -a % m in sq


@pytest.mark.parametrize("p, q, cf", [(3, 1, [3]), (7, 2, [4, 2]), (5, 3, [2, 3]), (2, 1, [2])])
def test_continued_fraction_examples(p, q, cf):
    assert lens.neg_continued_fraction(p, q) == cf


def test_continued_fraction_evaluates_back():
    for p in range(2, 40):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            cf = lens.neg_continued_fraction(p, q)
            assert all(a >= 2 for a in cf)
            v = Fraction(cf[-1])
            for a in reversed(cf[:-1]):
                v = a - 1 / v
            assert v == Fraction(p, q)


def test_lens_space_validation():
    with pytest.raises(ValueError):
        LensSpace(4, 2)
    with pytest.raises(ValueError):
        LensSpace(1, 1)
    assert LensSpace(7, 2).same_space(LensSpace(7, 4))
    assert not LensSpace(7, 2).same_space(LensSpace(7, 3))


@pytest.mark.parametrize("L, count", [(LensSpace(2, 1), 1), (LensSpace(3, 1), 2), (LensSpace(7, 2), 3),
                                      (LensSpace(1, 0), 1)])
def test_tight_structure_counts(L, count):
    assert len(lens.tight_structures(L)) == count


def test_tight_chains_present_the_lens_space():
    for p in range(2, 16):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            L = LensSpace(p, q)
            cf = lens.neg_continued_fraction(p, q)
            ds = lens.tight_structures(L)
            assert len(ds) == prod(a - 1 for a in cf)
            for d in ds[:4]:
                Q = linking_matrix(d)
                assert first_homology(d).invariant_factors == (p,)
                if len(Q) <= 5:
                    assert abs(leibniz_det(Q)) == p
                    assert d3(d) == d3_oracle(Q, d.rotations, d.positive_count)
            assert len({tuple(d.rotations) for d in ds}) == len(ds)


def test_l31_structures():
    ds = lens.tight_structures(LensSpace(3, 1))
    assert [d3(d) for d in ds] == [Fraction(1, 6)] * 2
    gammas = sorted(gamma(d, spin_structures(d)[0]).coords for d in ds)
    assert gammas == [(1,), (2,)]


@pytest.mark.parametrize("q, p, v", [(-1, 5, 1), (2, 7, 1), (3, 7, -1), (7, 7, 0)])
def test_legendre_examples(q, p, v):
    assert lens.legendre(q, p) == v


def test_legendre_rejects_non_primes():
    for p in (2, 9, 1):
        with pytest.raises(ValueError):
            lens.legendre(1, p)


def test_legendre_against_squares_and_properties():
    primes = [p for p in range(3, 200) if brute_prime(p)]
    rng = random.Random(0)
    for p in primes:
        sq = squares_mod(p)
        assert sum(lens.legendre(q, p) for q in range(1, p)) == 0
        for q in range(1, p):
            assert lens.legendre(q, p) == (1 if q in sq else -1)
        for _ in range(10):
            a, b = rng.randrange(1, p), rng.randrange(1, p)
            assert lens.legendre(a * b, p) == lens.legendre(a, p) * lens.legendre(b, p)


@pytest.mark.parametrize("a, m, v", [(1, 1, True), (1, 12, True), (2, 5, False), (4, 6, True)])
def test_square_examples(a, m, v):
    assert lens.is_square_mod(a, m) is v


def test_square_mod_composites():
    for m in range(1, 60):
        sq = {x * x % m for x in range(m)}
        for a in range(-m, 2 * m):
            assert lens.is_square_mod(a, m) == (a % m in sq)
    with pytest.raises(ValueError):
        lens.is_square_mod(1, 0)


def test_is_prime():
    assert [n for n in range(60) if lens.is_prime(n)] == [n for n in range(60) if brute_prime(n)]


def test_integral_obstruction_examples():
    assert lens.integral_obstruction(LensSpace(5, 2), LensSpace(1, 0))
    assert not lens.integral_obstruction(LensSpace(2, 1), LensSpace(3, 1))
    assert not lens.integral_obstruction(LensSpace(7, 3), LensSpace(7, 3))


def test_integral_obstruction_brute():
    spaces = [LensSpace(p, q) for p in range(2, 14) for q in range(1, p) if gcd(p, q) == 1]
    for A in spaces[::3]:
        for B in spaces[::4]:
            expect = not (pm_square(B.p * A.q, A.p) and pm_square(A.p * B.q, B.p))
            assert lens.integral_obstruction(A, B) == expect


def test_pair_check_examples():
    assert isinstance(lens.plamenevskaya_check(LensSpace(3, 2), LensSpace(7, 1)), lens.PairCertificate)
    f = lens.plamenevskaya_check(LensSpace(5, 1), LensSpace(3, 1))
    assert isinstance(f, lens.PairFailure) and 5 in f.failed
    f = lens.plamenevskaya_check(LensSpace(3, 1), LensSpace(6, 1))
    assert 1 in f.failed and f.reason.startswith("condition 1")
    with pytest.raises(ValueError):
        lens.PairCertificate(LensSpace(3, 1), LensSpace(6, 1), (False,) * 5, (True, True))


def brute_conditions(A, B):
    p, q, p2, q2 = A.p, A.q, B.p, B.q
    return (gcd(p, p2) == 1,
            (-p * q2) % p2 in squares_mod(p2),
            (-p2 * q) % p in squares_mod(p),
            (-1) % p2 not in squares_mod(p2),
            (-1) % p not in squares_mod(p))


def test_pair_check_brute():
    spaces = [LensSpace(p, q) for p in range(2, 24) for q in range(1, p) if gcd(p, q) == 1]
    for A in spaces[::5]:
        for B in spaces[::7]:
            r = lens.plamenevskaya_check(A, B)
            assert r.conditions == brute_conditions(A, B)
            assert isinstance(r, lens.PairCertificate) == all(r.conditions)


def test_search_pairs():
    assert lens.search_pairs(3) == []
    certs = lens.search_pairs(7)
    assert [(c.first.p, c.second.p) for c in certs] == [(3, 7)]
    certs = lens.search_pairs(50)
    primes = [p for p in range(3, 51) if brute_prime(p) and p % 4 == 3]
    assert len(certs) == len(primes) * (len(primes) - 1) // 2
    keys = [(c.first.p, c.second.p, c.first.q, c.second.q) for c in certs]
    assert keys == sorted(keys)
    for c in certs:
        assert all(brute_conditions(c.first, c.second))
        assert not lens.integral_obstruction(c.first, c.second)
    with pytest.raises(ValueError):
        lens.search_pairs(2)


def _check_witness(w):
    a, b = w.first, w.second
    for c in (a, b):
        Q = linking_matrix(c.diagram)
        if len(Q) <= 6:
            assert c.d3 == d3_oracle(Q, c.diagram.rotations, c.diagram.positive_count)
    assert a.d3 == b.d3
    assert a.gamma != b.gamma
    assert first_homology(a.diagram).invariant_factors == first_homology(b.diagram).invariant_factors


@pytest.mark.parametrize("p_list", [[3], [4], [2, 2], [5], [2, 3], [3, 3], [2, 2, 2]])
def test_gamma_collision_witness(p_list):
    w = lens.gamma_collision_witness(p_list)
    assert w is not None
    _check_witness(w)


def test_no_witness_for_trivial_and_z2():
    assert lens.gamma_collision_witness([]) is None
    assert lens.gamma_collision_witness([2]) is None
    with pytest.raises(ValueError):
        lens.gamma_collision_witness([1])


def test_l31_witness_is_the_tight_pair():
    w = lens.gamma_collision_witness([3])
    assert w.d3 == Fraction(1, 6)
    assert {w.first.gamma.coords, w.second.gamma.coords} == {(1,), (2,)}


def test_experiment():
    rep = lens.d3_determines_gamma_experiment(LensSpace(2, 1), 50)
    assert len(rep.candidates) >= 50 and rep.holds
    assert rep.pairs_checked == len(rep.candidates) * (len(rep.candidates) - 1) // 2
    for L in (LensSpace(3, 1), LensSpace(4, 1), LensSpace(5, 2)):
        rep = lens.d3_determines_gamma_experiment(L, 50)
        assert len(rep.candidates) >= 50 and not rep.holds
        i, j = rep.counterexamples[0]
        a, b = rep.candidates[i], rep.candidates[j]
        assert (a.d3 - b.d3).denominator == 1 and a.gamma != b.gamma or \
            (a.d3 - b.d3).denominator != 1 and a.gamma == b.gamma


def test_experiment_on_sphere():
    rep = lens.d3_determines_gamma_experiment(LensSpace(1, 0), 10)
    assert rep.holds and len(rep.candidates) == 10
