"""Independent brute-force oracles used to derive and check expected values.

These deliberately avoid the library's own algorithms: the hull oracle is a
gift-wrapping march (the library uses a monotone chain), the enclosing-circle
oracle enumerates all pairs and triples, and containment is a half-plane
check written from scratch.
"""

import math
from fractions import Fraction


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def wrap_hull(points):
    """Gift-wrapping convex hull, collinear points dropped, CCW order
    starting at the lexicographically smallest vertex."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) == 1:
        return pts
    if len(pts) == 2:
        return pts
    start = pts[0]
    hull = [start]
    cur = start
    while True:
        cand = None
        for p in pts:
            if p == cur:
                continue
            if cand is None:
                cand = p
                continue
            c = cross(cur, cand, p)
            if c < 0:
                cand = p
            elif c == 0:
                # collinear: keep the farther one
                d_c = (cand[0] - cur[0]) ** 2 + (cand[1] - cur[1]) ** 2
                d_p = (p[0] - cur[0]) ** 2 + (p[1] - cur[1]) ** 2
                if d_p > d_c:
                    cand = p
        if cand == start:
            break
        hull.append(cand)
        cur = cand
    if len(hull) == 2 or all(cross(hull[0], hull[1], p) == 0 for p in pts):
        return [pts[0], pts[-1]]
    return hull


def all_left_of_edges(points, hull_vertices):
    """Half-plane check: every point lies left of (or on) each hull edge."""
    n = len(hull_vertices)
    if n < 3:
        return all(cross(hull_vertices[0], hull_vertices[-1], p) == 0 for p in points)
    for i in range(n):
        a = hull_vertices[i]
        b = hull_vertices[(i + 1) % n]
        if any(cross(a, b, p) < 0 for p in points):
            return False
    return True


def brute_min_circle(points):
    """Smallest enclosing circle by enumerating all pairs and triples."""
    pts = sorted(set(tuple(p) for p in points))
    eps = 1e-7

    def contains_all(cx, cy, r):
        return all(math.dist((cx, cy), p) <= r + eps for p in pts)

    best = None
    if len(pts) == 1:
        return (float(pts[0][0]), float(pts[0][1]), 0.0)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            cx = (pts[i][0] + pts[j][0]) / 2
            cy = (pts[i][1] + pts[j][1]) / 2
            r = math.dist((cx, cy), pts[i])
            if contains_all(cx, cy, r) and (best is None or r < best[2]):
                best = (cx, cy, r)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                a, b, c = pts[i], pts[j], pts[k]
                d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
                if d == 0:
                    continue
                aa = a[0] ** 2 + a[1] ** 2
                bb = b[0] ** 2 + b[1] ** 2
                cc = c[0] ** 2 + c[1] ** 2
                ux = (aa * (b[1] - c[1]) + bb * (c[1] - a[1]) + cc * (a[1] - b[1])) / d
                uy = (aa * (c[0] - b[0]) + bb * (a[0] - c[0]) + cc * (b[0] - a[0])) / d
                r = math.dist((ux, uy), a)
                if contains_all(ux, uy, r) and (best is None or r < best[2]):
                    best = (ux, uy, r)
    return best


def frac_point(x, y):
    return (Fraction(x), Fraction(y))
