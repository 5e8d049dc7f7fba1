import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locsys import fixtures as fx
from locsys.algebra import direct_sum, matrix_algebra, strictly_upper, upper_triangular
from locsys.errors import BudgetError, EmbeddingError, LocsysError, NotPerfectError
from locsys.linear import QQ, Mat
from locsys.structure import perfect_core
from locsys.tower import (FAIL, PASS, UNDETERMINED, Budget, DiagonalSignature, Embedding, LocalSystem,
                          build_diagonal_tower, check_embedding, check_local_system, check_not_residually_nilpotent,
                          conical_from_perfect, diagonal_embedding, ideal_subsystem, is_conical, one_perfect_profile,
                          perfect_core_system, rank_profile, verify_maximal_ideal_avoidance,
                          verify_radical_avoidance)

M2 = matrix_algebra(2)


def sizes(ls):
    return [round(alg.dim ** 0.5) for _, alg in ls.nodes]


def image_of_unit(e, name):
    src, tgt = e.source, e.target
    v = e.apply(src.unit(src.basis_names().index(name)))
    names = tgt.basis_names()
    return sorted(names[i] for i, x in enumerate(v) if x)


class TestEmbeddings:
    def test_identity(self):
        assert check_embedding(Embedding(M2, M2, Mat.identity(QQ, 4))).status == PASS

    def test_block_diagonal(self):
        e = diagonal_embedding(2, DiagonalSignature(2, 0))
        assert check_embedding(e).status == PASS
        assert image_of_unit(e, "e12") == ["e12", "e34"]

    def test_zero_map(self):
        rep = check_embedding(Embedding(M2, matrix_algebra(3), Mat.zeros(QQ, 9, 4)))
        assert rep.status == FAIL and rep.witnesses["rank"] == 0

    def test_not_multiplicative(self):
        # transpose is an anti-homomorphism
        names = M2.basis_names()
        perm = [names.index(f"e{n[2]}{n[1]}") for n in names]
        m = Mat.from_sparse(QQ, 4, 4, [(perm[j], j, 1) for j in range(4)])
        rep = check_embedding(Embedding(M2, M2, m))
        assert rep.status == FAIL and "pair" in rep.witnesses

    def test_corner(self):
        e = diagonal_embedding(1, DiagonalSignature(1, 1))
        assert image_of_unit(e, "e11") == ["e11"] and e.target.dim == 4

    def test_k1_is_identity(self):
        assert diagonal_embedding(2, DiagonalSignature(1, 0)).matrix == Mat.identity(QQ, 4)

    def test_zero_copies(self):
        with pytest.raises(EmbeddingError):
            diagonal_embedding(2, DiagonalSignature(0, 3))

    def test_shape(self):
        with pytest.raises(EmbeddingError):
            check_embedding(Embedding(M2, M2, Mat.identity(QQ, 3)))

    @given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2))
    @settings(max_examples=20)
    def test_diagonal_always_valid(self, n, k, z):
        if k * n + z > 8:
            return
        e = diagonal_embedding(n, DiagonalSignature(k, z))
        assert check_embedding(e).ok
        if z == 0:
            # unpadded copies send the identity to the identity
            eye = tuple(1 if nm[1] == nm[2] else 0 for nm in e.source.basis_names())
            assert e.apply(eye) == tuple(1 if nm[1] == nm[2] else 0 for nm in e.target.basis_names())


class TestDiagonalTowers:
    def test_sizes(self):
        assert sizes(build_diagonal_tower(2, [(2, 0), (2, 4)])) == [2, 4, 12]
        assert sizes(build_diagonal_tower(1, [(1, 1), (1, 1)])) == [1, 2, 3]
        assert sizes(build_diagonal_tower(3, [])) == [3]

    def test_budget(self):
        with pytest.raises(BudgetError):
            build_diagonal_tower(2, [(2, 0), (2, 0), (2, 0)])
        with pytest.raises(BudgetError):
            build_diagonal_tower(2, [(2, 0)], budget=Budget(max_dim=10))

    def test_zero_copies(self):
        with pytest.raises(EmbeddingError):
            build_diagonal_tower(2, [(0, 2)])

    def test_corner_chain_is_exact(self):
        ls = build_diagonal_tower(1, [(1, 1)] * 4)
        for a, b in zip(ls.ids, ls.ids[1:]):
            e = ls.embedding(a, b)
            for name in e.source.basis_names():
                assert image_of_unit(e, name) == [name]

    @given(st.integers(1, 2), st.lists(st.tuples(st.integers(1, 2), st.integers(0, 1)), max_size=2))
    @settings(max_examples=15)
    def test_coherent_and_checked(self, n1, sigs):
        try:
            ls = build_diagonal_tower(n1, sigs)
        except BudgetError:
            return
        assert check_local_system(ls).status == PASS
        n = n1
        for (k, z), size in zip(sigs, sizes(ls)[1:]):
            n = k * n + z
            assert size == n


class TestCheckLocalSystem:
    def test_corrupted(self):
        rep = check_local_system(fx.corrupted_tower())
        assert rep.status == FAIL and rep.witnesses == {"check": "coherence", "triple": ["1", "2", "3"]}

    def test_missing_join(self):
        t2 = upper_triangular(2)
        ls = LocalSystem((("a", t2), ("b", M2)), frozenset(), {}, {})
        rep = check_local_system(ls)
        assert rep.status == FAIL and rep.witnesses["check"] == "directedness"

    def test_probes_find_smallest_host(self):
        ls = build_diagonal_tower(1, [(1, 1)] * 3)
        top = ls.algebra(ls.top())
        names = top.basis_names()
        probes = [[top.unit(names.index("e12"))], [top.unit(names.index("e33")), top.unit(names.index("e11"))]]
        rep = check_local_system(ls, probes=probes)
        assert rep.status == PASS
        hosts = dict(rep.details[-1]["hosts"])
        assert hosts["probe 1"] == "2" and hosts["probe 2"] == "3"
        assert hosts["image of 1"] == "1"

    @pytest.mark.parametrize("name", sorted(set(fx.named_towers()) - {"corrupted"}))
    def test_fixtures_pass(self, name):
        assert check_local_system(fx.named_towers()[name]).status == PASS


class TestInducedSystems:
    def test_perfect_core_of_matrix_tower(self):
        ls = build_diagonal_tower(2, [(2, 0)])
        pc = perfect_core_system(ls)
        assert [a.dim for _, a in pc.nodes] == [4, 16]
        assert all(pc.embedding(*p).matrix == ls.embedding(*p).matrix for p in ls.embeddings)

    def test_perfect_core_of_triangular_chain(self):
        t2 = upper_triangular(2)
        ls = LocalSystem.chain(["1", "2"], [t2, t2], [Mat.identity(QQ, 3)])
        assert [a.dim for _, a in perfect_core_system(ls).nodes] == [3, 3]

    def test_perfect_core_of_nilpotent_chain(self):
        assert [a.dim for _, a in perfect_core_system(fx.nilpotent_chain()).nodes] == [0, 0, 0]

    @pytest.mark.parametrize("name", ["fm2_tower", "adversarial_triangular", "nilpotent_chain", "cond3_fail"])
    def test_core_functorial(self, name):
        ls = fx.named_towers()[name]
        for (a, b), e in ls.embeddings.items():
            assert perfect_core(ls.algebra(a)).space.map(e.matrix) <= perfect_core(ls.algebra(b)).space

    def test_ideal_subsystem_full(self):
        ls = build_diagonal_tower(2, [(2, 0), (2, 0)])
        sub = ideal_subsystem(ls, "1", [M2.unit(1)])
        assert [a.dim for _, a in sub.nodes] == [4, 16, 64]

    def test_ideal_subsystem_proper(self):
        ls = fx.adversarial_triangular()
        t2 = ls.algebra("1")
        sub = ideal_subsystem(ls, "1", [t2.unit(t2.basis_names().index("e12"))])
        # ideal generated by e12 in T_n is span{e_ij : i <= 1 < 2 <= j}
        assert [a.dim for _, a in sub.nodes] == [1, 2, 3]

    def test_ideal_subsystem_top(self):
        ls = build_diagonal_tower(2, [(2, 0)])
        assert ideal_subsystem(ls, "2", [matrix_algebra(4).unit(0)]).ids == ["2"]

    def test_ideal_subsystem_zero(self):
        with pytest.raises(LocsysError):
            ideal_subsystem(build_diagonal_tower(2, []), "1", [(0, 0, 0, 0)])

    def test_ideal_subsystem_nesting(self):
        ls = fx.fm2_tower()
        fm2 = ls.algebra("1")
        sub = ideal_subsystem(ls, "1", [fm2.unit(0)])
        assert check_local_system(sub).status == PASS


class TestConical:
    def test_recipe_on_matrix_tower(self):
        c = conical_from_perfect(build_diagonal_tower(2, [(2, 0), (2, 0)]), "1", 0)
        assert [a.dim for _, a in c.nodes] == [4, 4, 16, 64]
        rep = is_conical(c)
        assert rep.status == PASS and rep.witnesses["rank"] == 2

    def test_recipe_on_block_base(self):
        c = conical_from_perfect(fx.m2m3_tower(), "1", 0)
        assert [a.dim for _, a in c.nodes] == [4, 4, 25]
        assert is_conical(c).status == PASS

    def test_single_node(self):
        c = conical_from_perfect(build_diagonal_tower(3, []), "1", 0)
        assert len(c.ids) == 2 and is_conical(c).status == PASS

    def test_requires_perfect(self):
        with pytest.raises(NotPerfectError):
            conical_from_perfect(fx.nilpotent_chain(), "1", 0)

    def test_condition_three(self):
        rep = is_conical(fx.cond3_fail())
        assert rep.status == FAIL and rep.witnesses == {"condition": 3, "node": "2", "component": 1}
        flags = [(d["node"], d["component"], d["nontrivial"]) for d in rep.details if d.get("condition") == 3]
        assert ("2", 0, True) in flags and ("2", 1, False) in flags

    def test_condition_two(self):
        rep = is_conical(fx.two_node())
        assert rep.status == FAIL and rep.witnesses["condition"] == 2

    @pytest.mark.parametrize("name", ["diag_2_4_8", "diag_2_4_12", "m2m3_tower", "fm2_tower", "fmn_tower"])
    def test_recipe_always_conical(self, name):
        ls = fx.named_towers()[name]
        c = conical_from_perfect(ls, ls.ids[0], 0)
        assert is_conical(c).status == PASS


class TestVerifiers:
    def test_radical_avoidance(self):
        ls = build_diagonal_tower(2, [(2, 0)])
        rep = verify_radical_avoidance(ls, "1")
        assert rep.status == PASS and rep.witnesses["zeta"] == "1"
        rep = verify_radical_avoidance(fx.two_node(), "1")
        assert rep.status == PASS and rep.witnesses["zeta"] == "2"
        rep = verify_radical_avoidance(fx.adversarial_triangular(), "3")
        assert rep.status == UNDETERMINED

    def test_maximal_ideal_avoidance(self):
        rep = verify_maximal_ideal_avoidance(build_diagonal_tower(2, [(2, 0)]), "1")
        assert rep.status == PASS and rep.witnesses["gamma"] == "1" and rep.witnesses["ideal_dim"] == 0
        rep = verify_maximal_ideal_avoidance(fx.fm2_tower(), "1")
        assert rep.status == PASS and rep.witnesses["gamma"] == "2"
        assert verify_maximal_ideal_avoidance(fx.adversarial_diagonal(), "3").status == UNDETERMINED

    @pytest.mark.parametrize("name", sorted(set(fx.named_towers()) - {"corrupted"}))
    def test_existential_never_fail(self, name):
        ls = fx.named_towers()[name]
        for a in ls.ids:
            assert verify_radical_avoidance(ls, a).status != FAIL
            assert verify_maximal_ideal_avoidance(ls, a).status != FAIL

    def test_not_residually_nilpotent(self):
        rep = check_not_residually_nilpotent(build_diagonal_tower(2, [(2, 0)]))
        assert rep.status == PASS and rep.witnesses["node"] == "1"
        assert check_not_residually_nilpotent(fx.nilpotent_chain()).status == FAIL
        n3 = strictly_upper(3)
        mixed = LocalSystem.chain(["1", "2"], [n3, matrix_algebra(3)], [fx._corner(n3, matrix_algebra(3))])
        rep = check_not_residually_nilpotent(mixed)
        assert rep.status == PASS and rep.witnesses["node"] == "2"

    def test_rank_profile(self):
        assert [r for _, r in rank_profile(build_diagonal_tower(2, [(2, 0), (2, 4)]))] == [2, 4, 12]
        assert rank_profile(build_diagonal_tower(1, [])) == [("1", 1)]
        assert rank_profile(fx.m2m3_tower())[0] == ("1", 2)

    def test_one_perfect_profile(self):
        rep = one_perfect_profile(build_diagonal_tower(2, [(2, 0)]))
        assert rep.status == PASS and rep.witnesses["one_perfect_nodes"] == ["1", "2"]
        t2 = upper_triangular(2)
        rep = one_perfect_profile(LocalSystem.chain(["1", "2"], [t2, t2], [Mat.identity(QQ, 3)]))
        assert rep.status == PASS and rep.witnesses["subsystem_dims"] == [["1", 0], ["2", 0]]
        rep = one_perfect_profile(fx.fmn_tower())
        assert rep.status == PASS and rep.witnesses["subsystem_dims"] == [["1", 4], ["2", 16]]
        assert check_local_system(rep.system).status == PASS

    def test_one_perfect_and_conical(self):
        c = conical_from_perfect(build_diagonal_tower(2, [(2, 0)]), "1", 0)
        assert one_perfect_profile(c).status == PASS and is_conical(c).status == PASS
