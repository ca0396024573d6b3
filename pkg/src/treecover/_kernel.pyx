# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact-arithmetic kernel.

Twin of `treecover._kernelpy` with identical semantics. Inputs are Python
ints that must fit in int64; cross/dot products are computed in int64 (the
per-run coordinate gate in `treecover.kernel` guarantees they fit) and the
fraction comparisons in __int128, so every result is exact.
"""

BACKEND = "compiled"

OB_SEGMENT = 0
OB_POINT = 1
OB_RAY = 2

cdef extern from *:
    ctypedef long long i128 "__int128_t"


cdef inline int _sign_i128(i128 v) noexcept:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


cdef inline int _orient_ll(long long ax, long long ay, long long bx,
                           long long by, long long cx, long long cy) noexcept:
    cdef i128 v = (<i128> (bx - ax)) * (<i128> (cy - ay)) - \
                  (<i128> (by - ay)) * (<i128> (cx - ax))
    return _sign_i128(v)


def orient(ax, ay, bx, by, cx, cy):
    """Sign of the cross product (b - a) x (c - a)."""
    return _orient_ll(ax, ay, bx, by, cx, cy)


cdef inline bint _on_seg_collinear(long long px, long long py, long long ax,
                                   long long ay, long long bx, long long by) noexcept:
    cdef long long lo, hi
    if ax != bx:
        if ax <= bx:
            lo = ax; hi = bx
        else:
            lo = bx; hi = ax
        return lo <= px <= hi
    if ay <= by:
        lo = ay; hi = by
    else:
        lo = by; hi = ay
    return lo <= py <= hi


def point_on_segment(px, py, ax, ay, bx, by):
    """True iff (px, py) lies on the closed segment a-b."""
    if _orient_ll(ax, ay, bx, by, px, py) != 0:
        return False
    return bool(_on_seg_collinear(px, py, ax, ay, bx, by))


cdef int _seg_relation_ll(long long p1x, long long p1y, long long p2x, long long p2y,
                          long long q1x, long long q1y, long long q2x, long long q2y) noexcept:
    cdef int d1 = _orient_ll(q1x, q1y, q2x, q2y, p1x, p1y)
    cdef int d2 = _orient_ll(q1x, q1y, q2x, q2y, p2x, p2y)
    cdef int d3 = _orient_ll(p1x, p1y, p2x, p2y, q1x, q1y)
    cdef int d4 = _orient_ll(p1x, p1y, p2x, p2y, q2x, q2y)
    cdef long long a_lo, a_hi, b_lo, b_hi, lo, hi

    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return 2

    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        if p1x != p2x or q1x != q2x:
            if p1x <= p2x:
                a_lo = p1x; a_hi = p2x
            else:
                a_lo = p2x; a_hi = p1x
            if q1x <= q2x:
                b_lo = q1x; b_hi = q2x
            else:
                b_lo = q2x; b_hi = q1x
        else:
            if p1y <= p2y:
                a_lo = p1y; a_hi = p2y
            else:
                a_lo = p2y; a_hi = p1y
            if q1y <= q2y:
                b_lo = q1y; b_hi = q2y
            else:
                b_lo = q2y; b_hi = q1y
        lo = a_lo if a_lo >= b_lo else b_lo
        hi = a_hi if a_hi <= b_hi else b_hi
        if lo > hi:
            return 0
        return 1 if lo == hi else 2

    if d1 == 0 and _on_seg_collinear(p1x, p1y, q1x, q1y, q2x, q2y):
        return 1
    if d2 == 0 and _on_seg_collinear(p2x, p2y, q1x, q1y, q2x, q2y):
        return 1
    if d3 == 0 and _on_seg_collinear(q1x, q1y, p1x, p1y, p2x, p2y):
        return 1
    if d4 == 0 and _on_seg_collinear(q2x, q2y, p1x, p1y, p2x, p2y):
        return 1
    return 0


def seg_relation(p1x, p1y, p2x, p2y, q1x, q1y, q2x, q2y):
    """Classify two closed segments: 0 disjoint, 1 touching, 2 crossing."""
    return _seg_relation_ll(p1x, p1y, p2x, p2y, q1x, q1y, q2x, q2y)


cdef int _point_in_convex_c(long long px, long long py, long long* poly, Py_ssize_t n) noexcept:
    cdef long long ax, ay, bx, by
    cdef Py_ssize_t i, j
    cdef int o
    cdef bint on_edge = False
    if n == 1:
        return 1 if (px == poly[0] and py == poly[1]) else 0
    if n == 2:
        if _orient_ll(poly[0], poly[1], poly[2], poly[3], px, py) != 0:
            return 0
        return 1 if _on_seg_collinear(px, py, poly[0], poly[1], poly[2], poly[3]) else 0
    for i in range(n):
        ax = poly[2 * i]
        ay = poly[2 * i + 1]
        j = i + 1 if i + 1 < n else 0
        bx = poly[2 * j]
        by = poly[2 * j + 1]
        o = _orient_ll(ax, ay, bx, by, px, py)
        if o < 0:
            return 0
        if o == 0 and _on_seg_collinear(px, py, ax, ay, bx, by):
            on_edge = True
    return 1 if on_edge else 2


from libc.stdlib cimport free, malloc


cdef long long* _unpack_flat(object flat, Py_ssize_t* out_n) except NULL:
    cdef Py_ssize_t ln = len(flat)
    cdef long long* buf = <long long*> malloc(ln * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(ln):
        buf[i] = flat[i]
    out_n[0] = ln // 2
    return buf


def point_in_convex(px, py, poly):
    """Classify an exact point against a canonical convex polygon:
    0 outside, 1 boundary, 2 inside."""
    cdef Py_ssize_t n = 0
    cdef long long* buf = _unpack_flat(poly, &n)
    try:
        return _point_in_convex_c(px, py, buf, n)
    finally:
        free(buf)


def polys_intersect(p, q):
    """Closed-set intersection test for two canonical convex polygons."""
    cdef Py_ssize_t np_ = 0, nq = 0
    cdef long long* pb = _unpack_flat(p, &np_)
    cdef long long* qb = NULL
    cdef Py_ssize_t i, j, i2, j2
    cdef long long pxmin, pymin, pxmax, pymax, qxmin, qymin, qxmax, qymax
    cdef long long ax, ay, bx, by, cx, cy, dx, dy
    try:
        qb = _unpack_flat(q, &nq)

        pxmin = pxmax = pb[0]
        pymin = pymax = pb[1]
        for i in range(1, np_):
            if pb[2 * i] < pxmin: pxmin = pb[2 * i]
            if pb[2 * i] > pxmax: pxmax = pb[2 * i]
            if pb[2 * i + 1] < pymin: pymin = pb[2 * i + 1]
            if pb[2 * i + 1] > pymax: pymax = pb[2 * i + 1]
        qxmin = qxmax = qb[0]
        qymin = qymax = qb[1]
        for i in range(1, nq):
            if qb[2 * i] < qxmin: qxmin = qb[2 * i]
            if qb[2 * i] > qxmax: qxmax = qb[2 * i]
            if qb[2 * i + 1] < qymin: qymin = qb[2 * i + 1]
            if qb[2 * i + 1] > qymax: qymax = qb[2 * i + 1]
        if pxmax < qxmin or qxmax < pxmin or pymax < qymin or qymax < pymin:
            return False

        if np_ == 1:
            return _point_in_convex_c(pb[0], pb[1], qb, nq) != 0
        if nq == 1:
            return _point_in_convex_c(qb[0], qb[1], pb, np_) != 0
        for i in range(np_):
            if _point_in_convex_c(pb[2 * i], pb[2 * i + 1], qb, nq) != 0:
                return True
        for i in range(nq):
            if _point_in_convex_c(qb[2 * i], qb[2 * i + 1], pb, np_) != 0:
                return True
        # edge pair contacts; degenerate 2-vertex polygons have one edge
        for i in range(np_ if np_ >= 3 else 1):
            ax = pb[2 * i]
            ay = pb[2 * i + 1]
            i2 = i + 1 if i + 1 < np_ else 0
            bx = pb[2 * i2]
            by = pb[2 * i2 + 1]
            for j in range(nq if nq >= 3 else 1):
                cx = qb[2 * j]
                cy = qb[2 * j + 1]
                j2 = j + 1 if j + 1 < nq else 0
                dx = qb[2 * j2]
                dy = qb[2 * j2 + 1]
                if _seg_relation_ll(ax, ay, bx, by, cx, cy, dx, dy) != 0:
                    return True
        return False
    finally:
        free(pb)
        if qb != NULL:
            free(qb)


cdef inline long long _uf_find_c(list parent, long long i):
    cdef long long p = parent[i]
    while p != i:
        parent[i] = parent[p]
        i = p
        p = parent[i]
    return i


def scan(ox, oy, tx, ty, kinds, xs1, ys1, xs2, ys2, tns, tds, owners, parent,
         own_root):
    """First-hit scan; see the pure kernel for the full contract."""
    cdef long long c_ox = ox, c_oy = oy
    cdef long long ex = <long long> tx - c_ox
    cdef long long ey = <long long> ty - c_oy
    cdef list l_kinds = kinds, l_xs1 = xs1, l_ys1 = ys1, l_xs2 = xs2
    cdef list l_ys2 = ys2, l_tns = tns, l_tds = tds, l_owners = owners
    cdef list l_parent = parent
    cdef long long c_own = own_root
    cdef Py_ssize_t count = len(l_kinds)
    cdef Py_ssize_t idx
    cdef int kind
    cdef long long x1, y1, wx, wy, vx, vy, den, n, d, sn, n1, n2, tmp
    cdef long long ia = -1, na = 0, da = 0, if_ = -1, nf = 0, df = 0
    cdef i128 lhs, rhs

    for idx in range(count):
        kind = l_kinds[idx]
        x1 = l_xs1[idx]
        y1 = l_ys1[idx]
        wx = x1 - c_ox
        wy = y1 - c_oy
        if kind == OB_POINT:
            if ex * wy - ey * wx != 0:
                continue
            n = ex * wx + ey * wy
            if n <= 0:
                continue
            d = ex * ex + ey * ey
        elif kind == OB_SEGMENT:
            vx = <long long> l_xs2[idx] - x1
            vy = <long long> l_ys2[idx] - y1
            den = ex * vy - ey * vx
            if den == 0:
                if ex * wy - ey * wx != 0:
                    continue
                d = ex * ex + ey * ey
                n1 = ex * wx + ey * wy
                n2 = ex * (<long long> l_xs2[idx] - c_ox) + ey * (<long long> l_ys2[idx] - c_oy)
                if n1 > n2:
                    tmp = n1; n1 = n2; n2 = tmp
                n = n1 if n1 > 0 else n2
                if n <= 0:
                    continue
            else:
                n = wx * vy - wy * vx
                sn = wx * ey - wy * ex
                if den < 0:
                    den = -den; n = -n; sn = -sn
                if n <= 0 or sn < 0 or sn > den:
                    continue
                d = den
        else:  # OB_RAY
            vx = l_xs2[idx]
            vy = l_ys2[idx]
            den = ex * vy - ey * vx
            if den == 0:
                if ex * wy - ey * wx != 0:
                    continue
                n = ex * wx + ey * wy
                if n <= 0:
                    continue
                d = ex * ex + ey * ey
            else:
                n = wx * vy - wy * vx
                sn = wx * ey - wy * ex
                if den < 0:
                    den = -den; n = -n; sn = -sn
                if n <= 0 or sn < 0:
                    continue
                lhs = (<i128> sn) * (<i128> (<long long> l_tds[idx]))
                rhs = (<i128> (<long long> l_tns[idx])) * (<i128> den)
                if lhs > rhs:
                    continue
                d = den
        if ia < 0:
            ia = idx; na = n; da = d
        else:
            lhs = (<i128> n) * (<i128> da)
            rhs = (<i128> na) * (<i128> d)
            if lhs < rhs:
                ia = idx; na = n; da = d
        if c_own >= 0:
            if _uf_find_c(l_parent, <long long> l_owners[idx]) != c_own:
                if if_ < 0:
                    if_ = idx; nf = n; df = d
                else:
                    lhs = (<i128> n) * (<i128> df)
                    rhs = (<i128> nf) * (<i128> d)
                    if lhs < rhs:
                        if_ = idx; nf = n; df = d
    return ia, na, da, if_, nf, df


def find_contacts(sx1, sy1, sx2, sy2, seg_tree):
    """Segment contact check for the validator with an x-interval sweep;
    same sorted output as the pure kernel."""
    cdef Py_ssize_t m = len(sx1)
    cdef long long* ax1 = <long long*> malloc(m * sizeof(long long) * 9 + 8)
    if ax1 == NULL:
        raise MemoryError()
    cdef long long* ay1 = ax1 + m
    cdef long long* ax2 = ax1 + 2 * m
    cdef long long* ay2 = ax1 + 3 * m
    cdef long long* tr = ax1 + 4 * m
    cdef long long* xlo = ax1 + 5 * m
    cdef long long* xhi = ax1 + 6 * m
    cdef long long* ylo = ax1 + 7 * m
    cdef long long* yhi = ax1 + 8 * m
    cdef Py_ssize_t* active = <Py_ssize_t*> malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t i, j, oi, k, n_active, n_keep
    cdef int rel
    cdef bint shared
    out = []
    if active == NULL:
        free(ax1)
        raise MemoryError()
    try:
        for i in range(m):
            ax1[i] = sx1[i]
            ay1[i] = sy1[i]
            ax2[i] = sx2[i]
            ay2[i] = sy2[i]
            tr[i] = seg_tree[i]
            if ax1[i] <= ax2[i]:
                xlo[i] = ax1[i]; xhi[i] = ax2[i]
            else:
                xlo[i] = ax2[i]; xhi[i] = ax1[i]
            if ay1[i] <= ay2[i]:
                ylo[i] = ay1[i]; yhi[i] = ay2[i]
            else:
                ylo[i] = ay2[i]; yhi[i] = ay1[i]
        order = sorted(range(m), key=lambda idx: xlo[<Py_ssize_t> idx])
        n_active = 0
        for oi in range(m):
            i = order[oi]
            n_keep = 0
            for k in range(n_active):
                j = active[k]
                if xhi[j] < xlo[i]:
                    continue
                active[n_keep] = j
                n_keep += 1
                if yhi[j] < ylo[i] or ylo[j] > yhi[i]:
                    continue
                rel = _seg_relation_ll(
                    ax1[i], ay1[i], ax2[i], ay2[i],
                    ax1[j], ay1[j], ax2[j], ay2[j],
                )
                if rel == 0:
                    continue
                if tr[i] == tr[j]:
                    shared = (
                        (ax1[i] == ax1[j] and ay1[i] == ay1[j])
                        or (ax1[i] == ax2[j] and ay1[i] == ay2[j])
                        or (ax2[i] == ax1[j] and ay2[i] == ay1[j])
                        or (ax2[i] == ax2[j] and ay2[i] == ay2[j])
                    )
                    if shared and rel == 1:
                        continue
                out.append((i, j) if i < j else (j, i))
            active[n_keep] = i
            n_active = n_keep + 1
        out.sort()
        return out
    finally:
        free(ax1)
        free(active)


def find_vertex_hits(px, py, sx1, sy1, sx2, sy2):
    """Vertices lying on a segment without being one of its endpoints;
    vertices are binary-searched by x per segment. Sorted output."""
    cdef Py_ssize_t nv = len(px), ns = len(sx1)
    cdef long long* vx = <long long*> malloc((nv * 3 + ns * 4) * sizeof(long long) + 8)
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc((nv + 1) * sizeof(Py_ssize_t))
    if vx == NULL or idx == NULL:
        if vx != NULL:
            free(vx)
        if idx != NULL:
            free(idx)
        raise MemoryError()
    cdef long long* vy = vx + nv
    cdef long long* xs = vx + 2 * nv
    cdef long long* ax = vx + 3 * nv
    cdef long long* ay = ax + ns
    cdef long long* bx = ax + 2 * ns
    cdef long long* by = ax + 3 * ns
    cdef Py_ssize_t i, j, k, lo, hi, mid
    cdef long long xlo, xhi, ylo, yhi, x, y
    out = []
    try:
        for i in range(nv):
            vx[i] = px[i]
            vy[i] = py[i]
        order = sorted(range(nv), key=lambda kk: vx[<Py_ssize_t> kk])
        for i in range(nv):
            idx[i] = order[i]
            xs[i] = vx[idx[i]]
        for j in range(ns):
            ax[j] = sx1[j]
            ay[j] = sy1[j]
            bx[j] = sx2[j]
            by[j] = sy2[j]
        for j in range(ns):
            if ax[j] <= bx[j]:
                xlo = ax[j]; xhi = bx[j]
            else:
                xlo = bx[j]; xhi = ax[j]
            if ay[j] <= by[j]:
                ylo = ay[j]; yhi = by[j]
            else:
                ylo = by[j]; yhi = ay[j]
            # bisect_left(xs, xlo)
            lo = 0; hi = nv
            while lo < hi:
                mid = (lo + hi) // 2
                if xs[mid] < xlo:
                    lo = mid + 1
                else:
                    hi = mid
            k = lo
            while k < nv and xs[k] <= xhi:
                i = idx[k]
                k += 1
                x = vx[i]
                y = vy[i]
                if y < ylo or y > yhi:
                    continue
                if (x == ax[j] and y == ay[j]) or (x == bx[j] and y == by[j]):
                    continue
                if (bx[j] - ax[j]) * (y - ay[j]) - (by[j] - ay[j]) * (x - ax[j]) == 0:
                    out.append((i, j))
        out.sort()
        return out
    finally:
        free(vx)
        free(idx)
