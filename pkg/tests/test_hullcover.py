import pytest

from treecover.geom import ConvexPolygon, convex_hull
from treecover.hullcover import (
    ComponentSet,
    NaiveRayShooter,
    HullStats,
    contained_in,
    hull_cover_fast,
    maximal_regions,
    weakly_disjoint,
)
from treecover.model import Instance, generate
from treecover.phicover import PHI, MergePolicy, naive_phi_cover

from instances import INSTANCE_A, INSTANCE_B, INSTANCE_D, tree

HULL = PHI["hull"]


def make_shooter(obstacles):
    """Standalone shooter with integer-segment obstacles, one component per
    obstacle (ids 0, 1, ...)."""
    comps = ComponentSet(max(len(obstacles), 1))
    shooter = NaiveRayShooter(comps)
    for i, (a, b) in enumerate(obstacles):
        shooter.insert_segment(a, b, i)
    return shooter


class TestShootContract:
    def test_nearer_of_two(self):
        s = make_shooter([((2, -1), (2, 1)), ((5, -1), (5, 1))])
        hit = s.shoot((0, 0), (1, 0))
        assert hit is not None
        assert hit.t == 2
        assert hit.point == (2, 0)
        assert hit.obstacle == 0

    def test_endpoint_on_ray(self):
        s = make_shooter([((3, 0), (3, 5))])
        hit = s.shoot((0, 0), (1, 0))
        assert hit.t == 3
        assert hit.point == (3, 0)

    def test_escape_returns_none(self):
        s = make_shooter([((2, -1), (2, 1)), ((5, -1), (5, 1))])
        assert s.shoot((0, 0), (0, 1)) is None

    def test_shot_ray_becomes_obstacle(self):
        s = make_shooter([((4, -2), (4, 2))])
        first = s.shoot((0, 0), (1, 0), owner=0)  # ray [0,0]..[4,0] inserted
        assert first.point == (4, 0)
        # a later vertical shot crossing the inserted ray stops at it
        second = s.shoot((2, -3), (2, 1))
        assert second is not None
        assert second.point == (2, 0)
        assert second.obstacle == len(s.kinds) - 2  # the inserted ray

    def test_hits_at_t0_excluded(self):
        s = make_shooter([((0, -1), (0, 1))])  # passes through the origin
        hit = s.shoot((0, 0), (1, 0))
        assert hit is None

    def test_point_obstacle_hit_exactly(self):
        comps = ComponentSet(2)
        s = NaiveRayShooter(comps)
        s.insert_point((5, 0), 0)
        hit = s.shoot((0, 0), (1, 0))
        assert hit.t == 5 and hit.point == (5, 0)
        assert s.shoot((0, 0), (1, 1)) is None

    def test_tie_breaks_to_lowest_id(self):
        # two obstacles touching the ray at the same point
        s = make_shooter([((3, 0), (3, 4)), ((3, 0), (5, 4))])
        hit = s.shoot((0, 0), (1, 0))
        assert hit.point == (3, 0)
        assert hit.obstacle == 0


class TestComponentSet:
    def test_union_find(self):
        c = ComponentSet(4)
        assert c.count == 4
        r = c.union(0, 1)
        assert c.count == 3
        assert c.find(0) == c.find(1) == r
        assert c.find(2) != r
        assert c.find(c.find(3)) == c.find(3)

    def test_self_union_rejected(self):
        c = ComponentSet(2)
        c.union(0, 1)
        with pytest.raises(AssertionError):
            c.union(0, 1)


class TestMaximalRegions:
    def test_containment(self):
        square = ConvexPolygon(((0, 0), (10, 0), (10, 10), (0, 10)))
        triangle = ConvexPolygon(((1, 1), (3, 1), (2, 2)))
        assert maximal_regions([square, triangle]) == [0]

    def test_disjoint_all_maximal(self):
        tris = [
            ConvexPolygon(((0, 0), (2, 0), (1, 1))),
            ConvexPolygon(((5, 0), (7, 0), (6, 1))),
            ConvexPolygon(((10, 0), (12, 0), (11, 1))),
        ]
        assert maximal_regions(tris) == [0, 1, 2]

    def test_three_level_nesting(self):
        boxes = [
            ConvexPolygon(((0, 0), (20, 0), (20, 20), (0, 20))),
            ConvexPolygon(((2, 2), (18, 2), (18, 18), (2, 18))),
            ConvexPolygon(((5, 5), (15, 5), (15, 15), (5, 15))),
        ]
        # derived by brute-force pairwise containment
        pairs = [
            (i, j)
            for i in range(3)
            for j in range(3)
            if i != j and contained_in(boxes[i], boxes[j])
        ]
        assert pairs == [(1, 0), (2, 0), (2, 1)]
        assert maximal_regions(boxes) == [0]

    def test_point_region(self):
        square = ConvexPolygon(((0, 0), (10, 0), (10, 10), (0, 10)))
        pt = ConvexPolygon(((5, 5),))
        far = ConvexPolygon(((30, 30),))
        assert maximal_regions([square, pt, far]) == [0, 2]


class TestWeaklyDisjoint:
    def test_two_crossings_true(self):
        p = ConvexPolygon(((0, 0), (4, 0), (4, 4), (0, 4)))
        q = ConvexPolygon(((2, 2), (6, 2), (6, 6), (2, 6)))
        assert weakly_disjoint(p, q)

    def test_four_crossings_false(self):
        # square and rotated square crossing in 8 points
        p = ConvexPolygon(((0, 0), (4, 0), (4, 4), (0, 4)))
        q = ConvexPolygon(((2, -1), (5, 2), (2, 5), (-1, 2)))
        from treecover.geom import boundary_intersection_points

        crossings = boundary_intersection_points(p, q)
        assert len(crossings.points) > 2  # brute-force crossing count
        assert not weakly_disjoint(p, q)

    def test_shared_vertex_false(self):
        p = ConvexPolygon(((0, 0), (4, 0), (4, 4), (0, 4)))
        q = ConvexPolygon(((4, 4), (8, 4), (8, 8), (4, 8)))
        assert not weakly_disjoint(p, q)

    def test_disjoint_true(self):
        p = ConvexPolygon(((0, 0), (4, 0), (4, 4), (0, 4)))
        q = ConvexPolygon(((10, 10), (12, 10), (12, 12)))
        assert weakly_disjoint(p, q)


def assert_budget(inst, stats: HullStats):
    assert stats.merges <= inst.m - 1
    assert stats.rays_shot <= stats.initial_edges + 2 * stats.merges + inst.m


class TestHullCoverFast:
    def test_instance_b_two_segments(self):
        cover, stats = hull_cover_fast(INSTANCE_B)
        assert len(cover.regions) == 2
        assert stats.merges == 0
        assert stats.rays_shot == 4  # two per degenerate segment hull
        assert stats.initial_edges == 4
        oracle, _ = naive_phi_cover(INSTANCE_B, HULL)
        assert cover.canonical() == oracle.canonical()

    def test_instance_a_nested_point_no_merge(self):
        cover, stats = hull_cover_fast(INSTANCE_A)
        assert len(cover.regions) == 1
        assert cover.regions[0] == ConvexPolygon(((0, 0), (10, 0), (10, 10), (0, 10)))
        assert cover.membership == ((0, 1),)
        assert stats.merges == 0  # nesting resolved by maximal-region extraction
        oracle, _ = naive_phi_cover(INSTANCE_A, HULL)
        assert cover.canonical() == oracle.canonical()

    def test_instance_d_single_region(self):
        cover, stats = hull_cover_fast(INSTANCE_D, debug=True)
        assert len(cover.regions) == 1
        assert cover.regions[0] == ConvexPolygon(
            ((-2, 5), (0, 0), (10, 0), (10, 10), (0, 10))
        )
        assert cover.membership == ((0, 1, 2),)
        assert stats.merges == 1  # the interior point is nested, not unioned
        assert_budget(INSTANCE_D, stats)
        oracle, _ = naive_phi_cover(INSTANCE_D, HULL)
        assert cover.canonical() == oracle.canonical()

    def test_own_collinear_vertex_does_not_hide_foreign_blockage(self):
        # T1's vertex (5,0) lies on T1's own hull chord (0,0)-(10,0); the
        # foreign segment crosses that chord farther along at (7,0). The
        # shot must see through its own obstacle and still merge.
        star = tree(
            [(5, 5), (0, 0), (10, 0), (5, 0)], [(0, 1), (0, 2), (0, 3)]
        )
        inst = Instance((star, tree([(7, -3), (7, 1)])))
        from treecover.model import validate_instance, errors_only

        assert errors_only(validate_instance(inst)) == []
        cover, stats = hull_cover_fast(inst, debug=True)
        oracle, _ = naive_phi_cover(inst, HULL)
        assert cover.canonical() == oracle.canonical()
        assert len(cover.regions) == 1
        assert stats.merges == 1

    def test_touching_hulls_merge(self):
        # single vertex exactly on a foreign hull chord (not a tree edge)
        wedge = tree([(0, 0), (5, -5), (10, 0)])
        pt = tree([(5, 0)])
        inst = Instance((wedge, pt))
        cover, stats = hull_cover_fast(inst, debug=True)
        oracle, _ = naive_phi_cover(inst, HULL)
        assert cover.canonical() == oracle.canonical()
        assert len(cover.regions) == 1

    def test_trace_recording(self):
        cover, stats, trace = hull_cover_fast(INSTANCE_D, record_trace=True)
        assert len(trace) == stats.rays_shot
        assert sum(1 for t in trace if t["merge"]) == stats.merges
        for t in trace:
            assert set(t) == {"from", "to", "merge"}

    @pytest.mark.parametrize("kind", ["strips", "combs", "nested"])
    def test_oracle_equivalence_by_kind(self, kind):
        for seed in range(30):
            m = 2 + seed % 5
            size = 3 + seed % 5
            inst = generate(kind, trees=m, size=size, seed=seed)
            cover, stats = hull_cover_fast(inst)
            oracle, _ = naive_phi_cover(inst, HULL)
            assert cover.canonical() == oracle.canonical(), (kind, seed)
            assert_budget(inst, stats)

    def test_oracle_equivalence_debug_mode(self):
        for seed in range(6):
            inst = generate("combs", trees=4, size=4, seed=seed)
            cover, stats = hull_cover_fast(inst, debug=True)
            oracle, _ = naive_phi_cover(inst, HULL)
            assert cover.canonical() == oracle.canonical()

    def test_policy_independence_cross_check(self):
        for seed in range(5):
            inst = generate("combs", trees=5, size=4, seed=seed)
            cover, _ = hull_cover_fast(inst)
            for pseed in range(3):
                ocover, _ = naive_phi_cover(inst, HULL, MergePolicy.random_order(pseed))
                assert cover.canonical() == ocover.canonical()

    def test_single_tree(self):
        inst = Instance((tree([(0, 0), (3, 4), (6, 0)]),))
        cover, stats = hull_cover_fast(inst)
        assert cover.regions == (convex_hull([(0, 0), (3, 4), (6, 0)]),)
        assert stats.merges == 0

    def test_all_point_trees(self):
        inst = Instance((tree([(0, 0)]), tree([(5, 5)]), tree([(9, 1)])))
        cover, stats = hull_cover_fast(inst)
        assert len(cover.regions) == 3
        assert stats.rays_shot == 0
        oracle, _ = naive_phi_cover(inst, HULL)
        assert cover.canonical() == oracle.canonical()
