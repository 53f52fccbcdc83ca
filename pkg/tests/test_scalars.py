import pytest

import dirhom as dh
from dirhom.cubechain import build_complex
from dirhom.exactla import QQ
from dirhom.homology import HomologyTable
from dirhom.precubical import SubsetSpec, sub, tensor
from dirhom.scalars import (
    AlgebraError, SubcomplexExtension, direct_sum, extend_presented,
    extend_subcomplex, free_bimodule, h_morphism, hcompose, path_algebra,
    present_chain_module, present_homology, re_present, restrict, smash,
    unit_bimodule, zero_bimodule,
)


@pytest.fixture(scope="module")
def algK(K):
    return path_algebra(K)


@pytest.fixture(scope="module")
def algD2(D2):
    return path_algebra(D2)


class TestPathAlgebra:
    def test_segment(self, algK):
        assert algK.dim("0", "1") == 1
        assert algK.total_dim() == 3

    def test_disc_two_paths(self, algD2):
        assert algD2.dim("00", "11") == 2

    def test_point(self):
        alg = path_algebra(dh.standard_cube(0))
        assert alg.total_dim() == 1

    def test_counts_match_adjacency_powers(self, D2, S1, domino):
        # independent oracle: path counts from powers of the adjacency matrix
        for x in [D2, S1, domino]:
            alg = path_algebra(x)
            verts = list(x.vertices)
            idx = {v: i for i, v in enumerate(verts)}
            n = len(verts)
            adj = [[0] * n for _ in range(n)]
            for e in x.edges:
                adj[idx[x.edge_source(e)]][idx[x.edge_target(e)]] += 1
            total = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            power = [row[:] for row in total]
            for _ in range(n):
                power = [[sum(power[i][k] * adj[k][j] for k in range(n))
                          for j in range(n)] for i in range(n)]
                total = [[total[i][j] + power[i][j] for j in range(n)]
                         for i in range(n)]
            for s in verts:
                for e in verts:
                    assert alg.dim(s, e) == total[idx[s]][idx[e]]

    def test_path_concatenation_closed(self, algD2):
        for (s, e), paths in algD2.paths.items():
            for p in paths:
                for q in algD2.between(e, e):
                    assert p + q in algD2.between(s, e)


class TestPresentedBimodules:
    def test_unit_dims_are_path_counts(self, K, algK):
        res = unit_bimodule(algK).resolve()
        for s in K.vertices:
            for e in K.vertices:
                assert res.dim(s, e) == algK.dim(s, e)

    def test_free_extension_dims(self, D2, algD2):
        # free rank one at (a, b): dims are #paths(s,a) * #paths(b,e)
        m = free_bimodule(algD2, algD2, [("00", "11")])
        res = m.resolve()
        for s in D2.vertices:
            for e in D2.vertices:
                assert res.dim(s, e) == algD2.dim(s, "00") * algD2.dim("11", e)

    def test_zero_module(self, algK):
        assert zero_bimodule(algK, algK).resolve().total_dim() == 0

    def test_relation_must_be_homogeneous(self, algK):
        gens = [("g", "0", "1")]
        from dirhom.scalars import BimoduleGenerator
        g = [BimoduleGenerator("g", "0", "1")]
        with pytest.raises(AlgebraError):
            from dirhom.scalars import PresentedBimodule
            PresentedBimodule(algK, algK, g,
                              [[(QQ.one, (), "g", ()), (QQ.one, ("a",), "g", ())]])


class TestChainPresentations:
    def test_degree0_matches_paths(self, S1):
        alg = path_algebra(S1)
        res = present_chain_module(S1, 0).resolve()
        for s in S1.vertices:
            for e in S1.vertices:
                assert res.dim(s, e) == alg.dim(s, e)

    def test_degree1_free_on_cores(self, D2):
        pb = present_chain_module(D2, 1)
        assert len(pb.generators) == 1 and not pb.relations
        cx = build_complex(D2)
        res = pb.resolve()
        for s, e in cx.pairs():
            assert res.dim(s, e) == cx.dim(1, (s, e))

    def test_degree0_matches_complex(self, D2):
        cx = build_complex(D2)
        res = present_chain_module(D2, 0).resolve()
        for s, e in cx.pairs():
            assert res.dim(s, e) == cx.dim(0, (s, e))


class TestExtension:
    def test_sphere_in_disc_degree0(self, D2, S1, algD2):
        spec = SubsetSpec(D2, frozenset(S1.all_cells()))
        y, inc = sub(D2, spec)
        res = extend_presented(present_chain_module(y, 0), inc, algD2).resolve()
        cx = build_complex(D2)
        span = extend_subcomplex(cx, spec.selected)
        assert res.dim("00", "11") == 2 == span.dim(0, ("00", "11"))
        assert span.dim(1, ("00", "11")) == 0

    def test_whole_set_extension_is_whole_complex(self, D2, algD2):
        spec = SubsetSpec(D2, frozenset(D2.all_cells()))
        cx = build_complex(D2)
        span = extend_subcomplex(cx, spec.selected)
        for pair in cx.pairs():
            for i in range(cx.top_degree + 1):
                assert span.dim(i, pair) == cx.dim(i, pair)

    def test_single_vertex_extension_counts_paths_through(self, D2, algD2):
        cx = build_complex(D2)
        span = extend_subcomplex(cx, frozenset(["01"]))
        # 0-chains through vertex 01
        assert span.dim(0, ("00", "11")) == 1
        assert span.dim(0, ("00", "01")) == 1
        assert span.dim(0, ("10", "11")) == 0

    def test_zero_module_extends_to_zero(self, D2, S1, algD2):
        spec = SubsetSpec(D2, frozenset(S1.all_cells()))
        y, inc = sub(D2, spec)
        algy = path_algebra(y)
        z = zero_bimodule(algy, algy)
        assert extend_presented(z, inc, algD2).resolve().total_dim() == 0

    def test_extension_span_is_subcomplex(self, D2, domino):
        # construction asserts closure under the boundary; exercise both
        for x, cells in [(D2, frozenset(dh.directed_sphere(1).all_cells())),
                         (domino, dh.face_closure(domino, ["s1"]))]:
            cx = build_complex(x)
            SubcomplexExtension(cx, cells)

    def test_presented_and_span_agree_on_accepted_pair(self, domino):
        left = dh.face_closure(domino, ["s1"])
        spec = SubsetSpec(domino, left)
        y, inc = sub(domino, spec)
        alg = path_algebra(domino)
        cx = build_complex(domino)
        span = extend_subcomplex(cx, left)
        from dirhom.cubechain import max_chain_degree
        for i in range(max_chain_degree(y) + 1):
            res = extend_presented(present_chain_module(y, i), inc, alg).resolve()
            for pair in cx.pairs():
                assert res.dim(*pair) == span.dim(i, pair)

    def test_two_step_extension_matches_one_step(self, D2, S1, algD2):
        # nested: vertex 00 inside the boundary sphere inside the disc
        spec_y = SubsetSpec(D2, frozenset(S1.all_cells()))
        y, inc_y = sub(D2, spec_y)
        spec_z = SubsetSpec(y, frozenset(["00"]))
        z, inc_z = sub(y, spec_z)
        alg_y = path_algebra(y)
        m = present_chain_module(z, 0)
        one_step = extend_presented(
            m, dh.compose(inc_y, inc_z), algD2).resolve()
        mid = extend_presented(m, inc_z, alg_y).resolve()
        again = extend_presented(re_present(mid), inc_y, algD2).resolve()
        for s in D2.vertices:
            for e in D2.vertices:
                assert one_step.dim(s, e) == again.dim(s, e)


class TestRepresent:
    def test_re_present_preserves_dims(self, K, algK):
        res = unit_bimodule(algK).resolve()
        back = re_present(res).resolve()
        assert back.dims_by_pair() == res.dims_by_pair()

    def test_homology_presentation_dims(self, D2):
        cx = build_complex(D2)
        t = HomologyTable(cx, D2)
        pb = present_homology(t, 0)
        res = pb.resolve()
        for s in D2.vertices:
            for e in D2.vertices:
                assert res.dim(s, e) == t.dim(0, s, e)


class TestHCompose:
    def test_unit_law(self, K, algK):
        u = unit_bimodule(algK)
        m = free_bimodule(algK, algK, [("0", "1")])
        assert hcompose(u, m).resolve().dims_by_pair() == m.resolve().dims_by_pair()
        assert hcompose(m, u).resolve().dims_by_pair() == m.resolve().dims_by_pair()

    def test_zero_absorbs(self, algK):
        m = free_bimodule(algK, algK, [("0", "1")])
        z = zero_bimodule(algK, algK)
        assert hcompose(m, z).resolve().total_dim() == 0

    def test_additive_in_first_factor(self, algK):
        m = free_bimodule(algK, algK, [("0", "0")])
        n = free_bimodule(algK, algK, [("0", "1")])
        double = hcompose(direct_sum(m, m), n).resolve()
        single = hcompose(m, n).resolve()
        for pair, d in double.dims_by_pair().items():
            assert d == 2 * single.dims_by_pair().get(pair, 0)

    def test_mismatched_algebras_rejected(self, algK, algD2):
        m = free_bimodule(algK, algK, [("0", "1")])
        n = free_bimodule(algD2, algD2, [("00", "11")])
        with pytest.raises(AlgebraError):
            hcompose(m, n)


class TestComparisonMorphism:
    def test_edge_images(self, K):
        t = tensor(K, K)
        h = h_morphism(t)
        assert h.on_edge("(a,0)") == (("a",), ())
        assert h.on_edge("(0,a)") == ((), ("a",))

    def test_trivial_path(self, K):
        t = tensor(K, K)
        h = h_morphism(t)
        assert h.on_path(()) == ((), ())

    def test_multiplicative_on_all_paths(self, K, S1):
        for x, y in [(K, K), (K, S1)]:
            t = tensor(x, y)
            alg = path_algebra(t)
            for (s, e), paths in alg.paths.items():
                for p in paths:
                    for cut in range(len(p) + 1):
                        left, right = p[:cut], p[cut:]
                        hx1, hy1 = h_morphism(t).on_path(left)
                        hx2, hy2 = h_morphism(t).on_path(right)
                        hx, hy = h_morphism(t).on_path(p)
                        assert hx == hx1 + hx2 and hy == hy1 + hy2


class TestRestrict:
    def test_restrict_along_identity(self, D2):
        cx = build_complex(D2)
        t = HomologyTable(cx, D2)
        rt = restrict(t, dh.PcMorphism.identity(D2))
        for s in D2.vertices:
            for e in D2.vertices:
                assert rt.dim(0, s, e) == t.dim(0, s, e)

    def test_restrict_sphere_into_disc_same_quiver(self, D2, S1):
        spec = SubsetSpec(D2, frozenset(S1.all_cells()))
        y, inc = sub(D2, spec)
        cx = build_complex(D2)
        t = HomologyTable(cx, D2)
        rt = restrict(t, inc)
        # the two quivers coincide, so every pair is preserved
        for s in y.vertices:
            for e in y.vertices:
                assert rt.dim(0, s, e) == t.dim(0, s, e)


class TestSmash:
    def test_total_dim_preserved(self, D2):
        cx = build_complex(D2)
        t = HomologyTable(cx, D2)
        sm = smash(t)
        for i in range(cx.top_degree + 1):
            assert sm.total_dim(i) == sum(
                t.dim(i, s, e) for s in D2.vertices for e in D2.vertices)

    def test_unit_of_segment_total(self, K, algK):
        assert smash(unit_bimodule(algK)).total_dim() == 3

    def test_action_composition_identity(self, domino):
        cx = build_complex(domino)
        t = HomologyTable(cx, domino)
        sm = smash(t)
        # (a' (x) b'-op)(a (x) b-op) acts as (a'a (x) (b b')-op)
        x = domino
        for a in x.edges:
            for b in x.edges:
                s = x.edge_target(a)
                e = x.edge_source(b)
                if t.dim(0, s, e) == 0:
                    continue
                one_shot = sm.act(a, b, 0, s, e)
                sequential = sm.act(a, None, 0, s, x.edge_target(b)) @ \
                    sm.act(None, b, 0, s, e)
                assert one_shot == sequential
