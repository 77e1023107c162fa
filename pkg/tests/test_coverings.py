import math

import pytest

from knotshift.alexander import BUILTIN_NAMES
from knotshift.coverings import classify_coverings, count_surjective, fixed_subgroup
from knotshift.errors import InputError, RepeatedPrime
from knotshift.oracle import brute_force_coverings
from knotshift.shift_system import knot_pair, knot_system, load_knot
from knotshift.spectra import AbelianGroupSpec, order_of_transfer
from knotshift.zpr import RingParams, zero_module


@pytest.fixture
def trefoil():
    return load_knot("trefoil")


class TestFixedSubgroup:
    def test_d3_full(self, trefoil):
        F = fixed_subgroup(knot_system(trefoil, 2, 1).T, 3)
        assert F.is_full() and F.cardinality == 4

    def test_d1_zero(self, trefoil):
        assert fixed_subgroup(knot_system(trefoil, 2, 1).T, 1).is_zero()

    def test_d6_equals_d3(self, trefoil):
        T = knot_system(trefoil, 2, 1).T
        assert fixed_subgroup(T, 6) == fixed_subgroup(T, 3)

    def test_bad_degree(self, trefoil):
        with pytest.raises(InputError):
            fixed_subgroup(knot_system(trefoil, 2, 1).T, 0)


class TestCountSurjective:
    def test_full_mod2(self, trefoil):
        assert count_surjective(fixed_subgroup(knot_system(trefoil, 2, 1).T, 3)) == 3

    def test_full_mod4(self, trefoil):
        assert count_surjective(fixed_subgroup(knot_system(trefoil, 2, 2).T, 6)) == 12

    def test_zero(self):
        assert count_surjective(zero_module(RingParams(3, 2), 2)) == 0


class TestClassify:
    @pytest.mark.parametrize(
        "sigma,d,total,onto",
        [("2", 3, 4, 3), ("2", 1, 1, 0), ("6", 6, 36, 24), ("4,3", 6, 144, 96)],
    )
    def test_trefoil(self, trefoil, sigma, d, total, onto):
        rep = classify_coverings(trefoil, AbelianGroupSpec.parse(sigma), d)
        assert (rep.total_fixed, rep.surjective_count) == (total, onto)
        assert len(rep.representatives) == onto

    def test_representatives_are_fixed_and_onto(self, trefoil):
        rep = classify_coverings(trefoil, AbelianGroupSpec.parse("6"), 6)
        systems = [knot_system(trefoil, p, r) for p, r in rep.sigma.factors]
        for combo in rep.representatives:
            for sys_, v in zip(systems, combo):
                assert sys_.T**6 @ v == v
                assert any(x % sys_.ring.p for x in v)

    def test_listing_cap(self, trefoil):
        rep = classify_coverings(trefoil, AbelianGroupSpec.parse("6"), 6, listing_cap=10)
        assert rep.representatives is None and rep.surjective_count == 24

    def test_repeated_prime(self, trefoil):
        with pytest.raises(RepeatedPrime):
            classify_coverings(trefoil, AbelianGroupSpec.parse("2,2"), 3)

    def test_bad_degree(self, trefoil):
        with pytest.raises(InputError):
            classify_coverings(trefoil, AbelianGroupSpec.parse("2"), 0)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("sigma", ["2", "3", "4", "5", "6", "9", "20"])
def test_gcd_law(name, sigma):
    knot = load_knot(name)
    spec = AbelianGroupSpec.parse(sigma)
    order = math.lcm(*(order_of_transfer(knot_system(knot, p, r).T) for p, r in spec.factors))
    for d in range(1, min(4 * order, 60) + 1):
        a = classify_coverings(knot, spec, d, listing_cap=0)
        b = classify_coverings(knot, spec, math.gcd(d, order), listing_cap=0)
        assert (a.total_fixed, a.surjective_count) == (b.total_fixed, b.surjective_count)
        assert a.surjective_count <= a.total_fixed


@pytest.mark.parametrize("name", BUILTIN_NAMES)
@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (5, 1)])
def test_fixed_inclusion(name, p, r):
    T = knot_system(load_knot(name), p, r).T
    for d in range(1, 13):
        for k in (2, 3):
            assert fixed_subgroup(T, d) <= fixed_subgroup(T, d * k)


GRID = [(n, p, r) for n in BUILTIN_NAMES for p in (2, 3, 5) for r in (1, 2)]


@pytest.mark.parametrize("name,p,r", GRID)
def test_oracle_equivalence(name, p, r):
    knot = load_knot(name)
    ring = RingParams(p, r)
    pair = knot_pair(knot, p)
    if ring.modulus**pair.size > 10**4:
        pytest.skip("above the enumeration cap")
    system = knot_system(knot, p, r)
    order = order_of_transfer(system.T)
    for d in sorted({1, 2, 3, order, 2 * order}):
        F = fixed_subgroup(system.T, d)
        assert brute_force_coverings(pair, ring, d) == (F.cardinality, count_surjective(F))
