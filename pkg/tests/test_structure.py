import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from locsys.algebra import (block_incidence_algebra, direct_sum, is_ideal, matrix_algebra, null_algebra, quotient,
                            restrict, square, strictly_upper, subspace_product, upper_triangular)
from locsys.errors import CharacteristicError, NotPerfectError, NotSemisimpleError
from locsys.linear import GF, QQ, Subspace
from locsys.structure import (NON_SPLIT, algebra_rank, characters, find_codim1_ideal, is_nilpotent,
                              is_one_perfect, is_perfect, is_residually_nilpotent, maximal_ideals, one_perfect_chain,
                              one_perfect_radical, perfect_core, radical, simple_components, wedderburn_malcev)

from conftest import incidence_algebras

M2 = matrix_algebra(2)
T2 = upper_triangular(2)
F = matrix_algebra(1)


def span(a, *names):
    idx = a.basis_names()
    return a.subspace([a.unit(idx.index(n)) for n in names])


def block(a, start, stop):
    return a.subspace([a.unit(i) for i in range(start, stop)])


class TestRadical:
    def test_examples(self):
        assert radical(M2).is_zero()
        assert radical(T2) == span(T2, "e12")
        assert radical(null_algebra(1)).is_full()

    def test_small_characteristic(self):
        with pytest.raises(CharacteristicError, match="p > 4"):
            radical(matrix_algebra(2, GF(3)))

    def test_zero_dim(self):
        z = null_algebra(0)
        assert radical(z).dim == 0 and is_nilpotent(z) and is_residually_nilpotent(z)

    @given(incidence_algebras(max_dim=4, field=GF(5), null_part=True))
    @settings(max_examples=30)
    def test_matches_exhaustive_search(self, a):
        want = Subspace.span(a.field, a.dim, oracles.nil_radical(a))
        assert radical(a).space == want

    @given(incidence_algebras(null_part=True))
    def test_postcheck(self, a):
        r = radical(a)
        assert r.is_ideal and is_nilpotent(restrict(r)[0])
        q, _ = quotient(a, r)
        assert radical(q).is_zero()


class TestNilpotency:
    def test_examples(self):
        assert is_nilpotent(strictly_upper(3))
        assert not is_nilpotent(M2) and not is_nilpotent(T2)

    def test_perfect_core(self):
        assert perfect_core(matrix_algebra(3)).is_full()
        assert perfect_core(strictly_upper(3)).is_zero()
        a = direct_sum(T2, null_algebra(1))
        assert perfect_core(a) == block(a, 0, 3)

    def test_residual(self):
        assert is_residually_nilpotent(strictly_upper(4))
        assert not is_residually_nilpotent(M2) and not is_residually_nilpotent(T2)

    @given(incidence_algebras(null_part=True))
    def test_collapse(self, a):
        assert is_residually_nilpotent(a) == is_nilpotent(a)
        core = perfect_core(a)
        assert subspace_product(core, core) == core


class TestLevi:
    def test_examples(self):
        s = wedderburn_malcev(M2)
        assert s.levi.is_full() and s.radical.is_zero()
        s = wedderburn_malcev(T2)
        assert s.levi == span(T2, "e11", "e22") and s.radical == span(T2, "e12")
        s = wedderburn_malcev(null_algebra(1))
        assert s.levi.is_zero() and s.radical.is_full()

    @given(incidence_algebras(max_dim=20, null_part=True))
    @settings(max_examples=30)
    def test_postconditions(self, a):
        s = wedderburn_malcev(a)
        assert (s.levi & s.radical).is_zero()
        assert (s.levi + s.radical).is_full()
        assert s.levi.is_subalgebra
        assert radical(restrict(s.levi)[0]).is_zero()


class TestComponents:
    def test_examples(self):
        comps = simple_components(direct_sum(M2, matrix_algebra(3)))
        assert comps.ranks == (2, 3) and [c.dim for c in comps.components] == [4, 9]
        f3 = block_incidence_algebra([1, 1, 1], [(i, i) for i in range(3)])
        assert simple_components(f3).ranks == (1, 1, 1)
        assert simple_components(matrix_algebra(4)).ranks == (4,)

    def test_rejects_radical(self):
        with pytest.raises(NotSemisimpleError):
            simple_components(T2)

    def test_zero_dim(self):
        assert len(simple_components(null_algebra(0))) == 0

    @given(incidence_algebras(max_dim=24))
    @settings(max_examples=30)
    def test_ranks_match_construction(self, a):
        levi, _ = restrict(wedderburn_malcev(a).levi)
        comps = simple_components(levi)
        assert NON_SPLIT not in comps.ranks
        for c, r in zip(comps.components, comps.ranks):
            assert c.dim == r * r and c.is_ideal
        for i, c in enumerate(comps.components):
            for d in comps.components[i + 1:]:
                assert (c & d).is_zero() and subspace_product(c, d).is_zero()
        total = comps.components[0]
        for c in comps.components[1:]:
            total = total + c
        assert total.is_full()

    def test_seed_does_not_change_components(self):
        a = direct_sum(direct_sum(M2, F), matrix_algebra(3))
        base = simple_components(a)
        for seed in range(5):
            other = simple_components(a, seed=seed)
            assert other.components == base.components and other.ranks == base.ranks

    def test_matrix_units(self):
        comps = simple_components(matrix_algebra(3))
        units = comps.matrix_units[0]
        r = 3
        for p in range(r):
            for q in range(r):
                for s in range(r):
                    for t in range(r):
                        prod = matrix_algebra(3).mul(units[p][q], units[s][t])
                        want = units[p][t] if q == s else (0,) * 9
                        assert prod == want


class TestRank:
    def test_examples(self):
        assert algebra_rank(matrix_algebra(3)) == 3
        assert algebra_rank(direct_sum(M2, matrix_algebra(3))) == 2
        assert algebra_rank(direct_sum(matrix_algebra(5), matrix_algebra(5))) == 5

    def test_not_perfect(self):
        with pytest.raises(NotPerfectError):
            algebra_rank(strictly_upper(3))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_matrix_sizes(self, n):
        assert algebra_rank(matrix_algebra(n)) == n


class TestCharacters:
    def test_examples(self):
        assert [c.functional for c in characters(T2)] == [(1, 0, 0), (0, 0, 1)]
        assert characters(M2) == []
        assert len(characters(F)) == 1

    @given(incidence_algebras(null_part=True))
    def test_multiplicative(self, a):
        for ch in characters(a):
            for i in range(a.dim):
                for j in range(a.dim):
                    assert ch(a.basis_product(i, j)) == a.field(ch(a.unit(i)) * ch(a.unit(j)))
            assert ch.kernel(a).is_ideal


class TestCodimOne:
    def test_examples(self):
        assert find_codim1_ideal(M2) is None
        z = find_codim1_ideal(null_algebra(1))
        assert z is not None and z.is_zero()
        assert find_codim1_ideal(T2) == span(T2, "e12", "e22")

    def test_hyperplane_contains_square(self):
        a = direct_sum(M2, null_algebra(2))
        h = find_codim1_ideal(a)
        assert h.dim == a.dim - 1 and square(a) <= h and h.is_ideal


class TestOnePerfect:
    def test_examples(self):
        for n in range(2, 6):
            assert one_perfect_radical(matrix_algebra(n)).is_full()
        assert one_perfect_radical(T2).is_zero()
        fm2 = direct_sum(F, M2)
        assert one_perfect_radical(fm2) == block(fm2, 1, 5)

    def test_chain_for_t2(self):
        chain = one_perfect_chain(T2)
        assert [c.dim for c in chain] == [3, 2, 1, 0]
        assert chain[1] == span(T2, "e12", "e22") and chain[2] == span(T2, "e12")

    def test_predicate(self):
        assert is_one_perfect(M2) and not is_one_perfect(T2)
        assert is_one_perfect(direct_sum(M2, matrix_algebra(3)))

    def test_sum_of_one_perfect_ideals(self):
        a = direct_sum(direct_sum(M2, F), matrix_algebra(3))
        p1, p2 = block(a, 0, 4), block(a, 5, 14)
        s = p1 + p2
        assert s.is_ideal and is_one_perfect(restrict(s)[0])

    @given(incidence_algebras(max_dim=4, field=GF(5), null_part=True))
    @settings(max_examples=30)
    def test_matches_exhaustive_search(self, a):
        want = Subspace.span(a.field, a.dim, oracles.one_perfect_radical(a))
        assert one_perfect_radical(a).space == want

    @given(incidence_algebras(max_dim=16, null_part=True), st.integers(0, 10**6))
    @settings(max_examples=30)
    def test_radical_properties(self, a, seed):
        p = one_perfect_radical(a)
        assert p.is_ideal
        assert subspace_product(p, p) == p
        sub, _ = restrict(p)
        assert one_perfect_radical(sub).is_full()
        q, _ = quotient(a, p)
        assert one_perfect_radical(q).is_zero()
        assert one_perfect_radical(a, seed=seed) == p

    @given(incidence_algebras(max_dim=16, null_part=True))
    @settings(max_examples=20)
    def test_idempotent_ideals_of_ideals(self, a):
        """An idempotent ideal of an ideal is an ideal of the whole algebra."""
        i = perfect_core(a)
        sub, incl = restrict(i)
        j = one_perfect_radical(sub)
        image = a.subspace([incl.apply(v) for v in j.basis])
        assert subspace_product(image, image) == image and is_ideal(a, image)


class TestMaximalIdeals:
    def test_examples(self):
        assert [m.dim for m in maximal_ideals(M2)] == [0]
        a = direct_sum(M2, matrix_algebra(3))
        assert maximal_ideals(a) == [block(a, 4, 13), block(a, 0, 4)]
        assert maximal_ideals(T2) == [span(T2, "e12", "e22"), span(T2, "e11", "e12")]

    def test_not_perfect(self):
        with pytest.raises(NotPerfectError):
            maximal_ideals(strictly_upper(3))

    @given(incidence_algebras(max_dim=4, field=GF(5)))
    @settings(max_examples=25)
    def test_matches_exhaustive_search(self, a):
        assert is_perfect(a)
        want = sorted(Subspace.span(a.field, a.dim, m).basis for m in oracles.maximal_ideals(a))
        assert sorted(m.space.basis for m in maximal_ideals(a)) == want
