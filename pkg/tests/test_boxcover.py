import pytest

from treecover.boxcover import (
    DuplicateBoxIdError,
    LinearSegmentRangeIndex,
    boundary_intersects_rect,
    box_cover_fast,
    maximal_boxes,
)
from treecover.geom import AABB
from treecover.model import Instance, generate
from treecover.phicover import PHI, naive_phi_cover

from instances import INSTANCE_A, INSTANCE_B, INSTANCE_E, tree

BOX = PHI["box"]


class TestRangeIndex:
    def test_boundary_query_semantics(self):
        idx = LinearSegmentRangeIndex()
        idx.insert_box(0, AABB(0, 0, 10, 10))
        # rectangle overlapping the boundary
        assert idx.query(AABB(8, 8, 12, 12)) == {0}
        # rectangle strictly inside: no boundary segments in it
        assert idx.query(AABB(3, 3, 4, 4)) == set()
        # rectangle containing the whole box: its segments are inside
        assert idx.query(AABB(-5, -5, 15, 15)) == {0}
        # touching counts (closed semantics)
        assert idx.query(AABB(10, 10, 12, 12)) == {0}
        # disjoint
        assert idx.query(AABB(20, 20, 22, 22)) == set()

    def test_degenerate_boxes(self):
        idx = LinearSegmentRangeIndex()
        idx.insert_box(0, AABB(5, 5, 5, 5))  # point box
        idx.insert_box(1, AABB(0, 7, 4, 7))  # segment box
        assert idx.query(AABB(5, 5, 6, 6)) == {0}
        assert idx.query(AABB(2, 6, 3, 8)) == {1}
        assert idx.query(AABB(4, 7, 5, 8)) == {1}

    def test_insert_delete_inverse(self):
        idx = LinearSegmentRangeIndex()
        idx.insert_box(0, AABB(0, 0, 1, 1))
        assert idx.query(AABB(0, 0, 2, 2)) == {0}
        idx.delete_box(0)
        assert idx.query(AABB(0, 0, 2, 2)) == set()

    def test_duplicate_insert_rejected(self):
        idx = LinearSegmentRangeIndex()
        idx.insert_box(0, AABB(0, 0, 1, 1))
        with pytest.raises(DuplicateBoxIdError):
            idx.insert_box(0, AABB(2, 2, 3, 3))

    def test_missing_delete_rejected(self):
        idx = LinearSegmentRangeIndex()
        with pytest.raises(KeyError):
            idx.delete_box(7)


class TestBoundaryIntersectsRect:
    def test_cases(self):
        box = AABB(0, 0, 10, 10)
        assert boundary_intersects_rect(box, AABB(9, 9, 11, 11))
        assert boundary_intersects_rect(box, AABB(-1, -1, 11, 11))
        assert not boundary_intersects_rect(box, AABB(1, 1, 9, 9))
        assert not boundary_intersects_rect(box, AABB(20, 0, 21, 1))
        # rect touching boundary from inside counts
        assert boundary_intersects_rect(box, AABB(0, 1, 5, 5))


class TestMaximalBoxes:
    def test_nested(self):
        assert maximal_boxes([AABB(0, 0, 10, 10), AABB(2, 2, 3, 3)]) == [0]

    def test_disjoint(self):
        boxes = [AABB(0, 0, 1, 1), AABB(5, 5, 6, 6), AABB(9, 0, 10, 1)]
        assert maximal_boxes(boxes) == [0, 1, 2]

    def test_three_level_nesting(self):
        boxes = [
            AABB(0, 0, 20, 20),
            AABB(2, 2, 18, 18),
            AABB(5, 5, 15, 15),
        ]
        # brute-force pairwise strict containment
        contained = [
            (i, j)
            for i in range(3)
            for j in range(3)
            if i != j and boxes[j].strictly_contains_box(boxes[i])
        ]
        assert contained == [(1, 0), (2, 0), (2, 1)]
        assert maximal_boxes(boxes) == [0]


class TestBoxCoverFast:
    def test_instance_e(self):
        cover, stats = box_cover_fast(INSTANCE_E)
        assert cover.regions == (AABB(0, -1, 5, 2), AABB(10, 10, 11, 12))
        assert cover.membership == ((0, 1), (2,))
        assert stats.merges == 1
        assert stats.queries == 4
        oracle, _ = naive_phi_cover(INSTANCE_E, BOX)
        assert cover.canonical() == oracle.canonical()

    def test_instance_b_disjoint(self):
        cover, stats = box_cover_fast(INSTANCE_B)
        assert len(cover.regions) == 2
        assert stats.merges == 0
        oracle, _ = naive_phi_cover(INSTANCE_B, BOX)
        assert cover.canonical() == oracle.canonical()

    def test_nested_point_box_persists_until_extraction(self):
        cover, stats = box_cover_fast(INSTANCE_A)
        assert cover.regions == (AABB(0, 0, 10, 10),)
        assert cover.membership == ((0, 1),)
        assert stats.merges == 0  # the point box nests, never found by query
        oracle, _ = naive_phi_cover(INSTANCE_A, BOX)
        assert cover.canonical() == oracle.canonical()

    def test_outer_box_absorbs_nested_when_processed_later(self):
        # reversed order: the square is processed after the point, so its
        # query finds the nested point box and absorbs it
        inst = Instance((tree([(5, 5)]), tree([(0, 0), (10, 0), (10, 10), (0, 10)])))
        cover, stats = box_cover_fast(inst)
        assert cover.regions == (AABB(0, 0, 10, 10),)
        assert cover.membership == ((0, 1),)
        assert stats.merges == 1

    @pytest.mark.parametrize("kind", ["strips", "combs", "nested"])
    def test_oracle_equivalence_by_kind(self, kind):
        for seed in range(30):
            m = 2 + seed % 5
            size = 3 + seed % 5
            inst = generate(kind, trees=m, size=size, seed=seed)
            cover, stats = box_cover_fast(inst)
            oracle, _ = naive_phi_cover(inst, BOX)
            assert cover.canonical() == oracle.canonical(), (kind, seed)

    def test_input_order_invariance(self):
        inst = generate("combs", trees=6, size=4, seed=11)
        base, _ = box_cover_fast(inst)
        perm = (5, 2, 0, 4, 1, 3)
        shuffled = Instance(tuple(inst.trees[p] for p in perm))
        cover, _ = box_cover_fast(shuffled)
        assert [r for r in cover.regions] == [r for r in base.regions]
        relabeled = {
            tuple(sorted(perm.index(i) for i in ms)) for ms in base.membership
        }
        assert set(cover.membership) == relabeled

    def test_region_reconstruction(self):
        from treecover.geom import box_of

        for seed in range(10):
            inst = generate("combs", trees=5, size=4, seed=seed)
            cover, _ = box_cover_fast(inst)
            for region, members in zip(cover.regions, cover.membership):
                pts = [v for i in members for v in inst.trees[i].vertices]
                assert region == box_of(pts)

    def test_insert_delete_discipline(self):
        for seed in range(10):
            inst = generate("combs", trees=5, size=4, seed=seed)
            index = LinearSegmentRangeIndex()
            box_cover_fast(inst, index_factory=lambda: index)
            assert all(c == 1 for c in index.insert_count.values())
            assert all(c == 1 for c in index.delete_count.values())
            assert set(index.delete_count) <= set(index.insert_count)
