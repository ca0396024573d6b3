"""Fast box-cover engine.

Processes trees in input order against a dynamic index of stored box
boundaries: the tree's bounding box is queried, every stored box whose
boundary meets the closed query rectangle is deleted and folded into it, and
the grown rectangle is re-queried until nothing is found, then inserted.
The stored boxes end up pairwise boundary-disjoint (possibly nested); the
outermost ones form the cover.

The range index is pluggable; the baseline is an exact linear scan.
`treecover.accel` provides a grid-bucketed drop-in with identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geom import AABB, box_of, box_union, boxes_intersect
from .model import Cover, Instance


class DuplicateBoxIdError(ValueError):
    pass


def boundary_intersects_rect(box: AABB, rect: AABB) -> bool:
    """True iff some boundary segment of ``box`` meets the closed ``rect``;
    equivalently the boxes intersect and the rect is not strictly inside."""
    return boxes_intersect(box, rect) and not box.strictly_contains_box(rect)


class LinearSegmentRangeIndex:
    """Baseline axis-aligned segment range index: linear scan per query.

    Registers each box's boundary segments under its id and answers closed
    rectangle queries with the ids having at least one boundary segment in
    the rectangle. Insert/delete counters enforce the at-most-once
    discipline."""

    def __init__(self):
        self.boxes: dict[int, AABB] = {}
        self.insert_count: dict[int, int] = {}
        self.delete_count: dict[int, int] = {}

    def insert_box(self, box_id: int, box: AABB) -> None:
        if box_id in self.insert_count:
            raise DuplicateBoxIdError(f"box id {box_id} inserted twice")
        self.insert_count[box_id] = 1
        self.boxes[box_id] = box

    def delete_box(self, box_id: int) -> None:
        if box_id not in self.boxes:
            raise KeyError(f"box id {box_id} not stored")
        self.delete_count[box_id] = self.delete_count.get(box_id, 0) + 1
        del self.boxes[box_id]

    def query(self, rect: AABB) -> set[int]:
        return {
            i for i, b in self.boxes.items() if boundary_intersects_rect(b, rect)
        }


@dataclass
class BoxComponent:
    id: int
    box: AABB
    members: list[int]


@dataclass(frozen=True)
class BoxStats:
    queries: int
    merges: int

    def to_obj(self) -> dict:
        return {"queries": self.queries, "merges": self.merges}


def maximal_boxes(boxes: list[AABB]) -> list[int]:
    """Indices of boxes not strictly contained in another; containment is
    strict interval inclusion on both axes (boxes are boundary-disjoint)."""
    out = []
    for i, b in enumerate(boxes):
        if not any(
            j != i and other.strictly_contains_box(b) for j, other in enumerate(boxes)
        ):
            out.append(i)
    return out


def box_cover_fast(instance: Instance, index_factory=LinearSegmentRangeIndex):
    """Compute the box-cover; returns (Cover, BoxStats).

    The cover equals the naive merge-fixpoint box cover exactly.
    """
    index = index_factory()
    store: dict[int, BoxComponent] = {}
    next_id = 0
    queries = 0
    merges = 0

    for i, tree in enumerate(instance.trees):
        q = box_of(tree.vertices)
        members = [i]
        rounds = 0
        while True:
            hits = index.query(q)
            queries += 1
            rounds += 1
            if rounds > instance.m + 1:
                raise AssertionError("box absorption loop exceeded m iterations")
            if not hits:
                break
            grown = q
            for hid in sorted(hits):
                index.delete_box(hid)
                comp = store.pop(hid)
                # adopt the larger member list so accumulation stays linear
                if len(comp.members) > len(members):
                    members, comp.members = comp.members, members
                members.extend(comp.members)
                grown = box_union(grown, comp.box)
            merges += len(hits)
            if not grown.contains_box(q):
                raise AssertionError("query box shrank")
            q = grown
        index.insert_box(next_id, q)
        store[next_id] = BoxComponent(next_id, q, members)
        next_id += 1

    comps = [store[k] for k in sorted(store)]
    boxes = [c.box for c in comps]
    maximal = maximal_boxes(boxes)
    container: dict[int, int] = {}
    for idx, c in enumerate(comps):
        if idx in maximal:
            container[idx] = idx
            continue
        homes = [mi for mi in maximal if boxes[mi].strictly_contains_box(c.box)]
        if len(homes) != 1:
            raise AssertionError(
                f"stored box contained in {len(homes)} outermost boxes"
            )
        container[idx] = homes[0]

    members_by_max: dict[int, list[int]] = {mi: [] for mi in maximal}
    for idx, c in enumerate(comps):
        members_by_max[container[idx]].extend(c.members)

    cover = Cover.build(
        "box", ((boxes[mi], tuple(members_by_max[mi])) for mi in maximal)
    )
    return cover, BoxStats(queries, merges)
