"""Quadtree over a 2D matrix, with pending update values.

The four-way analogue of the 1D tree: the root covers the whole matrix, a
node over ``[x0,x1] x [y0,y1]`` splits at the midpoints of both axes into up
to four children (two when one axis is already a single cell, none for a
single cell).  Nodes keep a cached fold ``val`` and a pending update value
``laz`` with the same semantics as :mod:`uqtrees.seg1d`; updates stamp
contained nodes' ``laz`` and repair partially overlapped folds from the
children, queries accumulate pending values on the way up and never mutate.

The catch, and the reason this structure exists mostly as a measuring stick:
nodes are square-ish, so a skinny box -- a single row or column, say --
decomposes into THETA(N) cells.  Operations are O(N) in the worst case over
an N x N matrix rather than polylog, which :meth:`QuadTree.max_probe_visits`
makes observable via the shared visit counters.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .algebra import OperatorPair
from .boxes import Box, check_box
from .counters import OpCounters
from .dense import DenseTensor


def probe_visit_bound(k: int) -> int:
    """Visit budget for any one op on a 2^k x 2^k quadtree (k >= 2)."""
    return 5 * (2 ** (k + 5) + 3)


class QuadTree:
    def __init__(self, tensor: DenseTensor, pair: OperatorPair, *,
                 counters: Optional[OpCounters] = None):
        if len(tensor.dims) != 2:
            raise ValueError(f"need a 2D tensor, got extents {tensor.dims}")
        self.dims = tensor.dims
        self.pair = pair
        self._own = counters is None
        self.counters = counters if counters is not None else OpCounters()
        n, m = tensor.dims
        data = tensor.data
        q = pair.query_op
        u_id = pair.update_identity
        self.x0: List[int] = []
        self.x1: List[int] = []
        self.y0: List[int] = []
        self.y1: List[int] = []
        self.area: List[int] = []
        self.val: list = []
        self.laz: list = []
        self.kids: List[List[int]] = []
        self.last_lazy_nodes: List[int] = []

        def build(x0, x1, y0, y1) -> int:
            i = len(self.x0)
            self.x0.append(x0)
            self.x1.append(x1)
            self.y0.append(y0)
            self.y1.append(y1)
            self.area.append((x1 - x0 + 1) * (y1 - y0 + 1))
            self.val.append(None)
            self.laz.append(u_id)
            self.kids.append([])
            if x0 == x1 and y0 == y1:
                self.val[i] = data[x0 * m + y0]
            else:
                xs = [(x0, x1)] if x0 == x1 else [(x0, (x0 + x1) // 2), ((x0 + x1) // 2 + 1, x1)]
                ys = [(y0, y1)] if y0 == y1 else [(y0, (y0 + y1) // 2), ((y0 + y1) // 2 + 1, y1)]
                ks = [build(a, b, c, d) for a, b in xs for c, d in ys]
                self.kids[i] = ks
                acc = self.val[ks[0]]
                for k in ks[1:]:
                    acc = q(acc, self.val[k])
                self.val[i] = acc
            return i

        build(0, n - 1, 0, m - 1)
        self.counters.visits_total += len(self.x0)

    @property
    def node_count(self) -> int:
        return len(self.x0)

    def update(self, box: Box, value) -> None:
        check_box(box, self.dims)
        (bx0, bx1), (by0, by1) = box
        x0, x1, y0, y1 = self.x0, self.x1, self.y0, self.y1
        val, laz, area, kids = self.val, self.laz, self.area, self.kids
        u = self.pair.update_op
        q = self.pair.query_op
        agg = self.pair.aggregator
        touched: List[int] = []
        visits = 0

        def un(i):
            nonlocal visits
            visits += 1
            ix0 = x0[i]; ix1 = x1[i]; iy0 = y0[i]; iy1 = y1[i]
            if bx0 <= ix0 and ix1 <= bx1 and by0 <= iy0 and iy1 <= by1:
                laz[i] = u(laz[i], value)
                touched.append(i)
            elif ix0 <= bx1 and bx0 <= ix1 and iy0 <= by1 and by0 <= iy1:
                ks = kids[i]
                for k in ks:
                    un(k)
                acc = agg(val[ks[0]], laz[ks[0]], area[ks[0]])
                for k in ks[1:]:
                    acc = q(acc, agg(val[k], laz[k], area[k]))
                val[i] = acc

        un(0)
        self.last_lazy_nodes = touched
        self.counters.visits_total += visits
        if self._own:
            self.counters.note_update(visits)

    def query(self, box: Box):
        check_box(box, self.dims)
        (bx0, bx1), (by0, by1) = box
        x0, x1, y0, y1 = self.x0, self.x1, self.y0, self.y1
        val, laz, area, kids = self.val, self.laz, self.area, self.kids
        q = self.pair.query_op
        q_id = self.pair.query_identity
        agg = self.pair.aggregator
        visits = 0

        def qn(i):
            nonlocal visits
            visits += 1
            ix0 = x0[i]; ix1 = x1[i]; iy0 = y0[i]; iy1 = y1[i]
            if bx0 <= ix0 and ix1 <= bx1 and by0 <= iy0 and iy1 <= by1:
                return agg(val[i], laz[i], area[i])
            if ix0 > bx1 or ix1 < bx0 or iy0 > by1 or iy1 < by0:
                return q_id
            acc = q_id
            for k in kids[i]:
                acc = q(acc, qn(k))
            ox = (ix1 if ix1 < bx1 else bx1) - (ix0 if ix0 > bx0 else bx0) + 1
            oy = (iy1 if iy1 < by1 else by1) - (iy0 if iy0 > by0 else by0) + 1
            return agg(acc, laz[i], ox * oy)

        out = qn(0)
        self.counters.visits_total += visits
        if self._own:
            self.counters.note_query(visits)
        return out

    def probe_family(self, extra: int = 200, seed: int = 0) -> List[Box]:
        """All single rows, all single columns, and ``extra`` seeded boxes."""
        n, m = self.dims
        boxes: List[Box] = [((x, x), (0, m - 1)) for x in range(n)]
        boxes += [((0, n - 1), (y, y)) for y in range(m)]
        rng = random.Random(seed)
        for _ in range(extra):
            a, b = rng.randrange(n), rng.randrange(n)
            c, d = rng.randrange(m), rng.randrange(m)
            boxes.append(((min(a, b), max(a, b)), (min(c, d), max(c, d))))
        return boxes

    def max_probe_visits(self, boxes: Optional[List[Box]] = None, *,
                         extra: int = 200, seed: int = 0) -> int:
        """Max visits for any single update or query over the probe family.

        Requires a square matrix with power-of-two side >= 4, the shape the
        :func:`probe_visit_bound` budget is stated for.  Updates are probed
        with the identity value, which walks the exact same nodes as any real
        update without changing observable state.
        """
        n, m = self.dims
        if n != m or n < 4 or n & (n - 1):
            raise ValueError(f"probe bounds need a square power-of-two side >= 4, got {n}x{m}")
        if boxes is None:
            boxes = self.probe_family(extra=extra, seed=seed)
        c = self.counters
        worst = 0
        for box in boxes:
            before = c.visits_total
            self.update(box, self.pair.update_identity)
            worst = max(worst, c.visits_total - before)
            before = c.visits_total
            self.query(box)
            worst = max(worst, c.visits_total - before)
        return worst
