import pytest

from hhskit import (
    Block,
    DomainDecl,
    IntervalComplexConfig,
    TreeOfFlatsConfig,
    bundled_json,
    bundled_structure,
    flat_grid,
    interval_complex,
    toy2_config,
    tree_of_flats,
)
from hhskit.errors import ConfigValidation, SizeLimitExceeded


class TestTreeOfFlatsConfig:
    def test_bad_radius(self):
        with pytest.raises(ConfigValidation):
            TreeOfFlatsConfig(0, 1)

    def test_bad_depth(self):
        with pytest.raises(ConfigValidation):
            TreeOfFlatsConfig(1, -1)

    def test_spawn_outside_flat(self):
        with pytest.raises(ConfigValidation):
            TreeOfFlatsConfig(1, 1, spawn_points=((2, 0),))

    def test_vertex_cap(self):
        with pytest.raises(SizeLimitExceeded):
            tree_of_flats(TreeOfFlatsConfig(1, 1, max_vertices=10))


class TestTreeOfFlats:
    def test_counts(self, toy1_small):
        s = toy1_small
        assert s.total_space.n == 45  # 5 flats of 9 vertices
        assert s.num_domains == 11  # T plus an x and a y domain per flat

    def test_flat_tree_is_a_star(self, toy1_small):
        tree = toy1_small.space_of(0)
        assert tree.n == 5
        assert tree.edges == tuple((0, f, 1) for f in range(1, 5))

    def test_depth_zero(self):
        _, s = tree_of_flats(TreeOfFlatsConfig(2, 0))
        assert s.total_space.n == 25
        assert s.num_domains == 3
        assert s.space_of(0).n == 1

    def test_deterministic(self):
        a = tree_of_flats(TreeOfFlatsConfig(1, 1))[1].to_json()
        b = tree_of_flats(TreeOfFlatsConfig(1, 1))[1].to_json()
        assert a == b

    def test_validates(self, toy1_medium, toy1_deep):
        for s in (toy1_medium, toy1_deep):
            assert s.validate_relation_axioms() == []
            s.check_references()
            s.check_rho_domain()

    def test_axis_domains_share_rho_targets(self, toy1_small):
        # both axis domains of a flat collapse to the same point everywhere
        # else, so their rho entries into any other domain must agree
        s = toy1_small
        for e in range(5):
            fx, fy = 1 + 2 * e, 2 + 2 * e
            assert s.rho[(fx, 0)] == s.rho[(fy, 0)] == e
            for f in range(5):
                if e == f:
                    continue
                for tgt in (1 + 2 * f, 2 + 2 * f):
                    assert s.rho[(fx, tgt)] == s.rho[(fy, tgt)]

    def test_projection_onto_own_flat_is_local(self, toy1_small):
        s = toy1_small
        # vertices of flat 0 project to their own axis coordinates
        for i in range(-1, 2):
            for j in range(-1, 2):
                v = (i + 1) * 3 + (j + 1)
                assert s.projections[1][v] == i + 1
                assert s.projections[2][v] == j + 1


class TestFlatGrid:
    def test_size(self):
        g = flat_grid(3)
        assert g.n == 16
        assert g.label == "flat_grid(3)"

    def test_invalid(self):
        with pytest.raises(ConfigValidation):
            flat_grid(0)


class TestIntervalComplex:
    def test_toy2_counts(self, toy2):
        assert toy2.total_space.n == 35
        assert len(toy2.total_space.edges) == 47
        assert toy2.num_domains == 7
        assert [d.name for d in toy2.domains] == ["R", "G", "B", "O", "P", "Y", "N"]

    def test_deterministic(self):
        a = interval_complex(toy2_config())[1].to_json()
        b = interval_complex(toy2_config())[1].to_json()
        assert a == b

    def test_unknown_gluing_vertex(self):
        cfg = toy2_config()
        bad = IntervalComplexConfig(
            cfg.blocks, ((("spine", (99,)), ("yseg", (0,))),), cfg.domains,
            cfg.nesting, cfg.orthogonal, cfg.rho, cfg.complements,
        )
        with pytest.raises(ConfigValidation):
            interval_complex(bad)

    def test_collapsed_edge(self):
        blocks = (Block("a", (1,)),)
        gluings = ((("a", (0,)), ("a", (1,))),)
        domains = (DomainDecl("R", 1, {"a": 0}, {}),)
        with pytest.raises(ConfigValidation):
            interval_complex(IntervalComplexConfig(blocks, gluings, domains, (), (), ()))

    def test_disconnected(self):
        blocks = (Block("a", (1,)), Block("b", (1,)))
        domains = (DomainDecl("R", 1, {"a": 0}, {"b": 0}),)
        with pytest.raises(ConfigValidation):
            interval_complex(IntervalComplexConfig(blocks, (), domains, (), (), ()))

    def test_inconsistent_projection(self):
        # glued vertex reads coordinate 0 from block a but default 1 from b
        blocks = (Block("a", (2,)), Block("b", (2,)))
        gluings = ((("a", (0,)), ("b", (0,))),)
        domains = (DomainDecl("R", 2, {"a": 0}, {"b": 1}),)
        with pytest.raises(ConfigValidation):
            interval_complex(IntervalComplexConfig(blocks, gluings, domains, (), (), ()))

    def test_block_without_rule(self):
        blocks = (Block("a", (1,)), Block("b", (1,)))
        gluings = ((("a", (1,)), ("b", (0,))),)
        domains = (DomainDecl("R", 1, {"a": 0}, {}),)
        with pytest.raises(ConfigValidation):
            interval_complex(IntervalComplexConfig(blocks, gluings, domains, (), (), ()))

    def test_bad_relations_rejected(self):
        cfg = toy2_config()
        bad = IntervalComplexConfig(
            cfg.blocks, cfg.gluings, cfg.domains,
            cfg.nesting[:-1],  # drop (O, N): breaks a complement requirement
            cfg.orthogonal, cfg.rho, cfg.complements,
        )
        with pytest.raises(ConfigValidation):
            interval_complex(bad)


class TestBundled:
    def test_unknown_name(self):
        with pytest.raises(ConfigValidation):
            bundled_structure("nope")
        with pytest.raises(ConfigValidation):
            bundled_json("nope")

    @pytest.mark.parametrize("name", ["toy1_small", "toy1_medium", "toy2"])
    def test_shipped_json_matches_generator(self, name):
        assert bundled_json(name) == bundled_structure(name).to_json()
